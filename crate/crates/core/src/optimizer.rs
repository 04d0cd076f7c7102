//! Numerical oracle: minimize the triangle density of a fixed topology
//! subject to prescribed edge densities, and globally over the small
//! topologies that can attain the minimum.
//!
//! The feasible set is a nonconvex algebraic variety, so the minimizer
//! runs derivative-free local descent (Nelder–Mead on the free weights)
//! under an escalating quadratic penalty on the density residual, from
//! multiple deterministic starts, and finishes with a Gauss–Newton
//! projection onto the density constraints.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{h6_weighting, h7_prime_weighting, h7_weighting, make_named, GraphName};
use crate::graph::{Class, TripartiteGraph, Vertex};
use crate::regions::{classify_region, tmin_closed_form, RegionLabel};
use crate::rng::SplitMix64;
use crate::sample::random_triple_in;
use crate::weighted::{DensityTriple, WeightedGraph};

#[derive(Clone, Copy, Debug)]
pub struct MinimizeOptions {
    /// Random starts per topology, in addition to the uniform start and
    /// any caller-provided seed weightings.
    pub restarts: usize,
    pub seed: u64,
    /// Nelder–Mead iteration cap per penalty round.
    pub nm_iters: usize,
    /// Residual below which a witness counts as density-feasible.
    pub feasibility_tol: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        MinimizeOptions {
            restarts: 12,
            seed: 0x7121,
            nm_iters: 400,
            feasibility_tol: 1e-7,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizeOutcome {
    pub feasible: bool,
    /// Triangle density at the witness (best found; approximate minimum).
    pub value: f64,
    pub witness: WeightedGraph<f64>,
    /// Max-norm density residual at the witness.
    pub residual: f64,
    /// Whether the winning descent met its internal tolerance.
    pub converged: bool,
}

/// Free-variable view of the weightings of one topology: the last weight
/// of each class is dependent (one minus the rest).
struct Space {
    graph: TripartiteGraph,
    sizes: [usize; 3],
    dims: usize,
}

impl Space {
    fn new(graph: &TripartiteGraph) -> Space {
        let sizes = graph.sizes();
        Space {
            graph: graph.clone(),
            sizes,
            dims: sizes.iter().map(|s| s - 1).sum(),
        }
    }

    fn weights_of(&self, x: &[f64]) -> [Vec<f64>; 3] {
        let mut out: [Vec<f64>; 3] = [vec![], vec![], vec![]];
        let mut k = 0;
        for c in 0..3 {
            let n = self.sizes[c];
            let mut sum = 0.0;
            for _ in 0..n - 1 {
                out[c].push(x[k]);
                sum += x[k];
                k += 1;
            }
            out[c].push(1.0 - sum);
        }
        out
    }

    fn vars_of(&self, w: &WeightedGraph<f64>) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dims);
        for c in 0..3 {
            for i in 0..self.sizes[c] - 1 {
                x.push(w.weights[c][i]);
            }
        }
        x
    }

    fn densities(&self, weights: &[Vec<f64>; 3]) -> [f64; 3] {
        let wg = WeightedGraph {
            graph: self.graph.clone(),
            weights: weights.clone(),
        };
        wg.edge_densities()
    }

    fn triangle(&self, weights: &[Vec<f64>; 3]) -> f64 {
        let mut t = 0.0;
        self.graph.for_each_triangle(|a, b, c| {
            t += weights[0][a] * weights[1][b] * weights[2][c];
        });
        t
    }

    /// Square residual, triangle term, and negativity penalty basis.
    fn parts(&self, x: &[f64], target: [f64; 3]) -> (f64, f64, f64) {
        let w = self.weights_of(x);
        let d = self.densities(&w);
        let r2 = (0..3)
            .map(|i| (d[i] - target[i]) * (d[i] - target[i]))
            .sum();
        let neg: f64 = w
            .iter()
            .flat_map(|cw| cw.iter())
            .map(|&v| if v < 0.0 { -v } else { 0.0 })
            .sum();
        (r2, self.triangle(&w), neg)
    }

    fn residual_inf(&self, x: &[f64], target: [f64; 3]) -> f64 {
        let w = self.weights_of(x);
        let d = self.densities(&w);
        (0..3).fold(0.0f64, |m, i| m.max((d[i] - target[i]).abs()))
    }
}

fn clamp01(x: &mut [f64]) {
    for v in x.iter_mut() {
        *v = v.clamp(0.0, 1.0);
    }
}

/// Bounded Nelder–Mead on the unit box.
fn nelder_mead(
    f: &mut impl FnMut(&[f64]) -> f64,
    start: &[f64],
    step: f64,
    iters: usize,
    tol: f64,
) -> (Vec<f64>, f64, bool) {
    let n = start.len();
    if n == 0 {
        return (Vec::new(), f(start), true);
    }
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] = if p[i] + step <= 1.0 {
            p[i] + step
        } else {
            p[i] - step
        };
        clamp01(&mut p);
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut converged = false;
    for _ in 0..iters {
        // Order best to worst.
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
        let reindex: Vec<Vec<f64>> = order.iter().map(|&i| simplex[i].clone()).collect();
        let revalue: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        simplex = reindex;
        values = revalue;
        if (values[n] - values[0]).abs() <= tol * (1.0 + values[0].abs()) {
            converged = true;
            break;
        }
        let centroid: Vec<f64> = (0..n)
            .map(|d| simplex[..n].iter().map(|p| p[d]).sum::<f64>() / n as f64)
            .collect();
        let at = |coef: f64| -> Vec<f64> {
            let mut p: Vec<f64> = (0..n)
                .map(|d| centroid[d] + coef * (centroid[d] - simplex[n][d]))
                .collect();
            clamp01(&mut p);
            p
        };
        let refl = at(1.0);
        let f_refl = f(&refl);
        if f_refl < values[0] {
            let exp = at(2.0);
            let f_exp = f(&exp);
            if f_exp < f_refl {
                simplex[n] = exp;
                values[n] = f_exp;
            } else {
                simplex[n] = refl;
                values[n] = f_refl;
            }
        } else if f_refl < values[n - 1] {
            simplex[n] = refl;
            values[n] = f_refl;
        } else {
            let con = at(-0.5);
            let f_con = f(&con);
            if f_con < values[n] {
                simplex[n] = con;
                values[n] = f_con;
            } else {
                // Shrink toward the best point.
                for i in 1..=n {
                    for d in 0..n {
                        simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
                    }
                    values[i] = f(&simplex[i]);
                }
            }
        }
    }
    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best], converged)
}

/// Gauss–Newton steps onto the density manifold; returns the final
/// max-norm residual. Coordinates pinned against the unit box get their
/// Jacobian columns dropped on a retry, so boundary witnesses still
/// converge instead of stalling at a partial step.
fn project_to_densities(space: &Space, x: &mut Vec<f64>, target: [f64; 3]) -> f64 {
    let n = space.dims;
    for _ in 0..60 {
        let w = space.weights_of(x);
        let d = space.densities(&w);
        let r: [f64; 3] = [d[0] - target[0], d[1] - target[1], d[2] - target[2]];
        let rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if rn < 1e-14 {
            break;
        }
        // Numerical Jacobian of the residual (central differences).
        let h = 1e-6;
        let mut jac = vec![[0.0f64; 3]; n];
        for k in 0..n {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[k] += h;
            xm[k] -= h;
            let dp = space.densities(&space.weights_of(&xp));
            let dm = space.densities(&space.weights_of(&xm));
            for i in 0..3 {
                jac[k][i] = (dp[i] - dm[i]) / (2.0 * h);
            }
        }
        let attempt = |jac: &[[f64; 3]]| -> Option<Vec<f64>> {
            // Solve (J J^T) y = -r, step = J^T y (least-norm correction).
            let mut jjt = [[0.0f64; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    jjt[i][j] = (0..n).map(|k| jac[k][i] * jac[k][j]).sum();
                }
                // Light damping keeps near-singular systems stable.
                jjt[i][i] += 1e-12;
            }
            let y = solve3x3(jjt, [-r[0], -r[1], -r[2]])?;
            let mut scale = 1.0;
            for _ in 0..10 {
                let mut nx = x.clone();
                for k in 0..n {
                    nx[k] += scale * (0..3).map(|i| jac[k][i] * y[i]).sum::<f64>();
                }
                clamp01(&mut nx);
                if space.residual_inf(&nx, target) < rn {
                    return Some(nx);
                }
                scale *= 0.5;
            }
            None
        };
        let stepped = attempt(&jac).or_else(|| {
            // Retry with pinned coordinates frozen out.
            let mut reduced = jac.clone();
            for k in 0..n {
                if x[k] <= 1e-12 || x[k] >= 1.0 - 1e-12 {
                    reduced[k] = [0.0; 3];
                }
            }
            attempt(&reduced)
        });
        match stepped {
            Some(nx) => *x = nx,
            None => break,
        }
    }
    space.residual_inf(x, target)
}

fn solve3x3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if det.abs() < 1e-300 {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut x = [0.0; 3];
    for i in 0..3 {
        let mut m = a;
        for r in 0..3 {
            m[r][i] = b[r];
        }
        let di = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        x[i] = di * inv_det;
    }
    Some(x)
}

/// Cleans tiny negative dust from a dependent weight and renormalizes.
fn sanitize_weights(weights: &mut [Vec<f64>; 3]) {
    for cw in weights.iter_mut() {
        let mut sum = 0.0;
        for v in cw.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
            sum += *v;
        }
        if sum > 0.0 {
            for v in cw.iter_mut() {
                *v /= sum;
            }
        }
    }
}

fn lex_less(a: &[Vec<f64>; 3], b: &[Vec<f64>; 3]) -> bool {
    for c in 0..3 {
        for (x, y) in a[c].iter().zip(b[c].iter()) {
            if x < y {
                return true;
            }
            if x > y {
                return false;
            }
        }
    }
    false
}

/// Minimizes the triangle density of `g` over weightings with edge
/// densities `d`. Infeasibility is a result, not an error; `converged`
/// is false when no descent met its tolerance.
pub fn min_triangle_density(
    g: &TripartiteGraph,
    d: DensityTriple,
    opts: &MinimizeOptions,
    seeds: &[WeightedGraph<f64>],
) -> MinimizeOutcome {
    let space = Space::new(g);
    let target = d.as_array();
    let mut rng = SplitMix64::new(opts.seed);

    let mut starts: Vec<Vec<f64>> = Vec::new();
    for s in seeds {
        if s.graph == space.graph {
            starts.push(space.vars_of(s));
        }
    }
    starts.push(space.vars_of(&WeightedGraph::<f64>::uniform(space.graph.clone())));
    for _ in 0..opts.restarts {
        starts.push((0..space.dims).map(|_| rng.next_f64()).collect());
    }

    let lambdas = [1e3, 1e5, 1e7, 1e9];
    let mut best: Option<(f64, f64, [Vec<f64>; 3], bool)> = None; // (t, residual, weights, converged)
    let mut best_infeasible: Option<(f64, f64, [Vec<f64>; 3])> = None; // (residual, t, weights)

    for start in starts {
        let mut x = start;
        let mut converged = false;
        for &lambda in &lambdas {
            let mut f = |p: &[f64]| {
                let (r2, t, neg) = space.parts(p, target);
                t + lambda * r2 + lambda * 100.0 * neg * neg
            };
            let (nx, _, conv) = nelder_mead(&mut f, &x, 0.12, opts.nm_iters, 1e-13);
            x = nx;
            converged = conv;
        }
        let _ = project_to_densities(&space, &mut x, target);
        // A meaningfully negative dependent weight gets cleaned up and the
        // point re-projected, so the final clamp only removes dust.
        if space.weights_of(&x).iter().flatten().any(|&v| v < -1e-10) {
            let mut w = space.weights_of(&x);
            sanitize_weights(&mut w);
            x = space.vars_of(&WeightedGraph {
                graph: space.graph.clone(),
                weights: w,
            });
            let _ = project_to_densities(&space, &mut x, target);
        }
        let mut weights = space.weights_of(&x);
        sanitize_weights(&mut weights);
        let wg = WeightedGraph {
            graph: space.graph.clone(),
            weights: weights.clone(),
        };
        let dd = wg.edge_densities();
        let res = (0..3).fold(0.0f64, |m, i| m.max((dd[i] - target[i]).abs()));
        let t = wg.triangle_density();
        if res < opts.feasibility_tol {
            let better = match &best {
                None => true,
                Some((bt, _, bw, _)) => t < *bt || (t == *bt && lex_less(&weights, bw)),
            };
            if better {
                best = Some((t, res, weights, converged));
            }
        } else {
            let better = match &best_infeasible {
                None => true,
                Some((br, _, _)) => res < *br,
            };
            if better {
                best_infeasible = Some((res, t, weights));
            }
        }
    }

    match best {
        Some((t, res, weights, converged)) => MinimizeOutcome {
            feasible: true,
            value: t,
            witness: WeightedGraph {
                graph: space.graph.clone(),
                weights,
            },
            residual: res,
            converged,
        },
        None => {
            let (res, t, weights) = best_infeasible.expect("at least one start ran");
            MinimizeOutcome {
                feasible: false,
                value: t,
                witness: WeightedGraph {
                    graph: space.graph.clone(),
                    weights,
                },
                residual: res,
                converged: false,
            }
        }
    }
}

/// An exact triangle-free witness for a triple outside the forcing region.
///
/// After permuting classes so that `alpha*beta + gamma <= 1`, one of two
/// closed-form constructions applies; both place the weight so that the
/// two C-attachment sets meet only at vertices whose A-B pairs are
/// non-edges. All densities are met exactly (up to rounding).
pub fn zero_witness(d: DensityTriple) -> Option<WeightedGraph<f64>> {
    if classify_region(d) != RegionLabel::OutsideR {
        return None;
    }
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let src = d.as_array();
    let (perm, [a, b, g]) = perms
        .iter()
        .find_map(|p| {
            let v = [src[p[0]], src[p[1]], src[p[2]]];
            // Components land as (alpha, beta, gamma) = v after applying
            // the inverse permutation to classes below.
            if v[0] * v[1] + v[2] <= 1.0 {
                Some((*p, v))
            } else {
                None
            }
        })
        .expect("outside R some cyclic inequality fails");

    let mut graph = TripartiteGraph::new([2, 2, 3]).expect("static sizes");
    let e = |gr: &mut TripartiteGraph, x: Vertex, y: Vertex| gr.set_edge(x, y, true);
    let (a1, a2) = (Vertex::new(Class::A, 0), Vertex::new(Class::A, 1));
    let (b1, b2) = (Vertex::new(Class::B, 0), Vertex::new(Class::B, 1));
    let (c1, c2, c3) = (
        Vertex::new(Class::C, 0),
        Vertex::new(Class::C, 1),
        Vertex::new(Class::C, 2),
    );
    // A-B: everything except a1 b1, so gamma = 1 - w(a1) w(b1).
    e(&mut graph, a1, b2);
    e(&mut graph, a2, b1);
    e(&mut graph, a2, b2);

    let (u, v, wc) = if a + b <= 1.0 {
        // A attaches to c1 (weight beta), B to c2 (weight alpha).
        e(&mut graph, a1, c1);
        e(&mut graph, a2, c1);
        e(&mut graph, b1, c2);
        e(&mut graph, b2, c2);
        let s = libm::sqrt(1.0 - g);
        (s, s, [b, a, 1.0 - a - b])
    } else {
        // Overlapping attachment: a1 also reaches c2, b1 reaches c2 and c3.
        e(&mut graph, a1, c1);
        e(&mut graph, a1, c2);
        e(&mut graph, a2, c1);
        e(&mut graph, b1, c2);
        e(&mut graph, b1, c3);
        e(&mut graph, b2, c3);
        // Solve (b + t(1-b))(a + t(1-a)) = 1 - g on t in [0,1].
        let q2 = (1.0 - a) * (1.0 - b);
        let q1 = b * (1.0 - a) + a * (1.0 - b);
        let q0 = a * b - (1.0 - g);
        let t = if q2.abs() < 1e-14 {
            if q1.abs() < 1e-14 {
                0.0
            } else {
                (-q0 / q1).clamp(0.0, 1.0)
            }
        } else {
            ((-q1 + libm::sqrt((q1 * q1 - 4.0 * q2 * q0).max(0.0))) / (2.0 * q2)).clamp(0.0, 1.0)
        };
        let u = b + t * (1.0 - b);
        let v = a + t * (1.0 - a);
        let s2 = if u + v - 1.0 > 1e-14 {
            (a + b - 1.0) / (u + v - 1.0)
        } else {
            1.0
        };
        let s1 = (b - u * s2).max(0.0);
        let s3 = (a - v * s2).max(0.0);
        (u, v, [s1, s2, s3])
    };

    let w = WeightedGraph {
        graph,
        weights: [vec![u, 1.0 - u], vec![v, 1.0 - v], wc.to_vec()],
    };
    debug_assert_eq!(w.triangle_density(), 0.0);
    // Undo the component permutation on the classes.
    Some(crate::constructions::relabel_classes(&w, perm))
}

#[derive(Clone, Debug)]
pub struct GlobalTmin {
    pub region: RegionLabel,
    pub closed_form: f64,
    pub value: f64,
    /// Name of the topology attaining the reported value.
    pub topology: String,
    pub witness: WeightedGraph<f64>,
    /// Set when the numeric value lands measurably below the conjectured
    /// closed form on R2; such runs must be surfaced, never suppressed.
    pub conjecture_violation: bool,
}

/// Seeds `sup` with the weights of `sub_w` placed on an induced copy of
/// its graph, zeros elsewhere.
pub fn embed_weighting(
    sub_w: &WeightedGraph<f64>,
    sup: &TripartiteGraph,
) -> Option<WeightedGraph<f64>> {
    let sub = &sub_w.graph;
    let sub_sizes = sub.sizes();
    let sup_sizes = sup.sizes();
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for cp in perms {
        if (0..3).any(|c| sub_sizes[c] > sup_sizes[cp[c]]) {
            continue;
        }
        // Injections per class: ordered choices of target indices.
        let choices: [Vec<Vec<usize>>; 3] =
            [0, 1, 2].map(|c| injections(sub_sizes[c], sup_sizes[cp[c]]));
        for ma in &choices[0] {
            for mb in &choices[1] {
                for mc in &choices[2] {
                    let maps: [&Vec<usize>; 3] = [ma, mb, mc];
                    let ok = pairs_match(sub, sup, cp, &maps);
                    if !ok {
                        continue;
                    }
                    let mut weights: [Vec<f64>; 3] = [0, 1, 2].map(|c| vec![0.0; sup_sizes[c]]);
                    for c in 0..3 {
                        for i in 0..sub_sizes[c] {
                            weights[cp[c]][maps[c][i]] = sub_w.weights[c][i];
                        }
                    }
                    return Some(WeightedGraph {
                        graph: sup.clone(),
                        weights,
                    });
                }
            }
        }
    }
    None
}

fn injections(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !cur.contains(&i) {
                cur.push(i);
                rec(k, n, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, n, &mut Vec::new(), &mut out);
    out
}

fn pairs_match(
    sub: &TripartiteGraph,
    sup: &TripartiteGraph,
    cp: [usize; 3],
    maps: &[&Vec<usize>; 3],
) -> bool {
    for cx in 0..3usize {
        for cy in cx + 1..3 {
            for i in 0..sub.sizes()[cx] {
                for j in 0..sub.sizes()[cy] {
                    let s = sub.has_edge(
                        Vertex::new(Class::from_index(cx), i),
                        Vertex::new(Class::from_index(cy), j),
                    );
                    let t = sup.has_edge(
                        Vertex::new(Class::from_index(cp[cx]), maps[cx][i]),
                        Vertex::new(Class::from_index(cp[cy]), maps[cy][j]),
                    );
                    if s != t {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Global minimal triangle density for the prescribed densities. Outside
/// the forcing region the exact triangle-free witness certifies zero; in
/// the region the minimum is attained on the nine-vertex graph (or the
/// named subgraphs it contains), which are minimized directly with the
/// closed-form weightings as warm starts.
pub fn global_tmin(d: DensityTriple, opts: &MinimizeOptions) -> GlobalTmin {
    let region = classify_region(d);
    let closed = tmin_closed_form(d);
    if region == RegionLabel::OutsideR {
        let witness = zero_witness(d).expect("region checked");
        return GlobalTmin {
            region,
            closed_form: closed,
            value: 0.0,
            topology: String::from("triangle-free witness"),
            witness,
            conjecture_violation: false,
        };
    }

    let h9 = make_named(GraphName::H9).graph;
    let mut candidates: Vec<(&'static str, TripartiteGraph, Vec<WeightedGraph<f64>>)> = Vec::new();
    match region {
        RegionLabel::R1 => {
            let w6 = h6_weighting(d).expect("region checked");
            let h9_seed = embed_weighting(&w6, &h9);
            candidates.push(("H6", w6.graph.clone(), vec![w6]));
            candidates.push(("H9", h9.clone(), h9_seed.into_iter().collect()));
        }
        RegionLabel::R2 => {
            let w7 = h7_weighting(d).expect("region checked");
            let w7p = h7_prime_weighting(d).expect("region checked");
            let h9_seed = embed_weighting(&w7, &h9);
            candidates.push(("H7", w7.graph.clone(), vec![w7]));
            candidates.push(("H7'", w7p.graph.clone(), vec![w7p]));
            candidates.push(("H9", h9.clone(), h9_seed.into_iter().collect()));
        }
        RegionLabel::OutsideR => unreachable!(),
    }

    let mut best: Option<(f64, &'static str, MinimizeOutcome)> = None;
    for (name, graph, seeds) in &candidates {
        let out = min_triangle_density(graph, d, opts, seeds);
        if !out.feasible {
            continue;
        }
        // Ties within numerical noise go to the earlier candidate; the
        // margin exceeds what a residual-tolerant witness can shave off.
        if best
            .as_ref()
            .map_or(true, |(bv, _, _)| out.value < *bv - 1e-8)
        {
            best = Some((out.value, name, out));
        }
    }
    let (value, name, out) = best.expect("the closed-form seeds are feasible");
    GlobalTmin {
        region,
        closed_form: closed,
        value,
        topology: String::from(name),
        witness: out.witness,
        conjecture_violation: region == RegionLabel::R2 && value < closed - 1e-3,
    }
}

#[derive(Clone, Debug)]
pub struct EvidenceSample {
    pub d: DensityTriple,
    pub closed_form: f64,
    pub h9_min: f64,
    pub h7p_min: f64,
    pub violation: bool,
}

#[derive(Clone, Debug)]
pub struct EvidenceReport {
    pub samples: Vec<EvidenceSample>,
    pub violations: usize,
}

/// Samples R2 triples and checks that minimizing over the nine-vertex
/// graph never lands below the closed form (tolerance 1e-5), and that the
/// seven-vertex variant matches it. Violations are reported, never
/// suppressed: a reproducible one would falsify the conjecture.
pub fn conjecture_evidence(samples: usize, seed: u64, opts: &MinimizeOptions) -> EvidenceReport {
    let mut rng = SplitMix64::new(seed);
    let h9 = make_named(GraphName::H9).graph;
    let mut out = Vec::with_capacity(samples);
    let mut violations = 0;
    for k in 0..samples {
        let d = random_triple_in(&mut rng, RegionLabel::R2);
        let closed = tmin_closed_form(d);
        let w7 = h7_weighting(d).expect("sampled in R2");
        let w7p = h7_prime_weighting(d).expect("sampled in R2");
        let h9_seeds: Vec<_> = embed_weighting(&w7, &h9).into_iter().collect();
        let mut o = *opts;
        o.seed = opts.seed.wrapping_add(k as u64);
        let h9_min = min_triangle_density(&h9, d, &o, &h9_seeds).value;
        let h7p_min = min_triangle_density(&w7p.graph.clone(), d, &o, &[w7p]).value;
        let violation = h9_min < closed - 1e-5;
        if violation {
            violations += 1;
        }
        out.push(EvidenceSample {
            d,
            closed_form: closed,
            h9_min,
            h7p_min,
            violation,
        });
    }
    EvidenceReport {
        samples: out,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(restarts: usize, seed: u64) -> MinimizeOptions {
        MinimizeOptions {
            restarts,
            seed,
            ..MinimizeOptions::default()
        }
    }

    #[test]
    fn h6_at_r1_symmetric_point() {
        let g = make_named(GraphName::H6).graph;
        let d = DensityTriple::new(0.9, 0.9, 0.9);
        let seed = h6_weighting(d).unwrap();
        let out = min_triangle_density(&g, d, &opts(4, 1), &[seed]);
        assert!(out.feasible);
        assert!((out.value - 0.7).abs() < 1e-6, "value {}", out.value);
    }

    #[test]
    fn h6_is_infeasible_in_r2() {
        let g = make_named(GraphName::H6).graph;
        let d = DensityTriple::new(0.7, 0.7, 0.7);
        let out = min_triangle_density(&g, d, &opts(10, 2), &[]);
        assert!(!out.feasible);
        assert!(out.residual > 1e-4, "residual {}", out.residual);
    }

    #[test]
    fn h7_matches_closed_form() {
        let g = make_named(GraphName::H7).graph;
        let d = DensityTriple::new(0.7, 0.7, 0.7);
        let seed = h7_weighting(d).unwrap();
        let out = min_triangle_density(&g, d, &opts(4, 3), &[seed]);
        assert!(out.feasible);
        let expect = tmin_closed_form(d);
        assert!((out.value - expect).abs() < 1e-4, "value {}", out.value);
    }

    #[test]
    fn zero_witness_is_exact() {
        for d in [
            DensityTriple::new(0.5, 0.5, 0.5),
            DensityTriple::new(0.9, 0.9, 0.1),
            DensityTriple::new(0.2, 0.8, 0.9),
            DensityTriple::new(1.0, 0.3, 0.2),
            DensityTriple::new(0.0, 1.0, 0.5),
        ] {
            assert_eq!(classify_region(d), RegionLabel::OutsideR);
            let w = zero_witness(d).unwrap();
            assert!(w.validate().is_ok());
            assert_eq!(w.triangle_density(), 0.0);
            let got = w.density_triple();
            assert!((got.alpha - d.alpha).abs() < 1e-12, "{:?} -> {:?}", d, got);
            assert!((got.beta - d.beta).abs() < 1e-12);
            assert!((got.gamma - d.gamma).abs() < 1e-12);
        }
    }

    #[test]
    fn global_outside_r_is_zero() {
        let g = global_tmin(DensityTriple::new(0.5, 0.5, 0.5), &opts(2, 4));
        assert_eq!(g.value, 0.0);
        assert_eq!(g.witness.triangle_density(), 0.0);
    }

    #[test]
    fn global_r1_matches_linear_form() {
        let g = global_tmin(DensityTriple::new(0.9, 0.9, 0.9), &opts(4, 5));
        assert!((g.value - 0.7).abs() < 1e-4, "value {}", g.value);
    }

    #[test]
    fn global_r2_within_conjecture_band() {
        let d = DensityTriple::new(0.7, 0.7, 0.7);
        let g = global_tmin(d, &opts(4, 6));
        let closed = tmin_closed_form(d);
        assert!(g.value <= closed + 1e-6);
        assert!(g.value >= closed - 1e-3);
        assert!(!g.conjecture_violation);
    }

    #[test]
    fn embedding_carries_densities() {
        let d = DensityTriple::new(0.72, 0.7, 0.74);
        let w7 = h7_weighting(d).unwrap();
        let h9 = make_named(GraphName::H9).graph;
        let emb = embed_weighting(&w7, &h9).expect("H7 embeds into H9");
        assert!(emb.validate().is_ok());
        let (a, b) = (emb.density_triple(), w7.density_triple());
        assert!((a.alpha - b.alpha).abs() < 1e-12);
        assert!((a.beta - b.beta).abs() < 1e-12);
        assert!((a.gamma - b.gamma).abs() < 1e-12);
        assert!((emb.triangle_density() - w7.triangle_density()).abs() < 1e-12);
    }
}
