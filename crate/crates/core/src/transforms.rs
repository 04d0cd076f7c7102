//! Density-preserving graph surgery: Split, Merge, Reduce, and the loop
//! that removes all partial edges from a doubly-weighted graph.
//!
//! Split and Merge preserve both edge and triangle densities exactly;
//! Reduce preserves edge densities and never increases the triangle
//! density while cutting a class down to at most three positively
//! weighted vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Class, Vertex, MAX_CLASS};
use crate::weighted::{DoublyWeightedGraph, Scalar, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("pair is not an edge")]
    NotAnEdge,
    #[error("edge is not partial (p = 1)")]
    NotPartial,
    #[error("vertices must be distinct and in the same class")]
    BadVertexPair,
    #[error("no class with matching neighborhoods and unit edge map")]
    NoWitnessClass,
    #[error("combined weight of the merged pair is zero")]
    ZeroCombinedWeight,
    #[error("class would exceed the library bound")]
    ClassTooLarge,
    #[error("reduce requires more than three vertices in the class")]
    ClassTooSmall,
}

/// Splits `x` along the partial edge `xy`: `x0` keeps the neighborhood
/// minus `y` with weight `w(x)(1 - p(xy))` and stays at `x`'s index; `x1`
/// keeps the full neighborhood with weight `w(x) p(xy)`, gets `p(x1 y) = 1`,
/// and is appended at the end of the class. Densities are unchanged.
pub fn split<T: Scalar>(
    g: &DoublyWeightedGraph<T>,
    x: Vertex,
    y: Vertex,
) -> Result<DoublyWeightedGraph<T>, TransformError> {
    if !g.base.graph.has_edge(x, y) {
        return Err(TransformError::NotAnEdge);
    }
    if g.p_value(x, y) >= T::one() {
        return Err(TransformError::NotPartial);
    }
    let cls = x.class;
    let old_size = g.base.graph.size(cls);
    if old_size + 1 > MAX_CLASS {
        return Err(TransformError::ClassTooLarge);
    }
    let p_xy = g.p_value(x, y);
    let w_x = g.base.weight(x);

    let (o1, o2) = cls.others();
    let x1_nb = [g.base.graph.neighbors(x, o1), g.base.graph.neighbors(x, o2)];
    let mut graph = g.base.graph.add_vertex(cls, x1_nb[0], x1_nb[1]);
    // x0 = x's slot loses the edge to y.
    graph.set_edge(x, y, false);

    let mut weights = g.base.weights.clone();
    weights[cls.index()][x.index] = w_x.clone() * (T::one() - p_xy.clone());
    weights[cls.index()].push(w_x * p_xy);

    let base = WeightedGraph { graph, weights };
    let mut out = DoublyWeightedGraph::from_weighted(base);
    // Copy the edge map: untouched edges keep their values, both copies of
    // x inherit x's values, and the new edge x1–y gets one.
    let x1 = Vertex::new(cls, old_size);
    for (u, v) in g.base.graph.edges() {
        let value = g.p_value(u, v);
        if u != x && v != x {
            out.set_p(u, v, value);
        } else {
            let other = if u == x { v } else { u };
            if other != y {
                out.set_p(x, other, value.clone());
            }
            out.set_p(x1, other, if other == y { T::one() } else { value });
        }
    }
    Ok(out)
}

/// Merges same-class vertices `x1`, `x2` into one vertex at the smaller
/// index. Requires a witness class `Y` with `Γ_Y(x1) = Γ_Y(x2)` and `p = 1`
/// on those edges, and positive combined weight. Densities are unchanged.
pub fn merge<T: Scalar>(
    g: &DoublyWeightedGraph<T>,
    x1: Vertex,
    x2: Vertex,
) -> Result<DoublyWeightedGraph<T>, TransformError> {
    if x1.class != x2.class || x1.index == x2.index {
        return Err(TransformError::BadVertexPair);
    }
    let cls = x1.class;
    let (w1, w2) = (g.base.weight(x1), g.base.weight(x2));
    let w = w1.clone() + w2.clone();
    if w <= T::zero() {
        return Err(TransformError::ZeroCombinedWeight);
    }
    let witness_ok = |y_class: Class| {
        let n1 = g.base.graph.neighbors(x1, y_class);
        if n1 != g.base.graph.neighbors(x2, y_class) {
            return false;
        }
        (0..g.base.graph.size(y_class)).all(|j| {
            n1 >> j & 1 == 0
                || (g.p_value(x1, Vertex::new(y_class, j)) == T::one()
                    && g.p_value(x2, Vertex::new(y_class, j)) == T::one())
        })
    };
    let (o1, o2) = cls.others();
    if !witness_ok(o1) && !witness_ok(o2) {
        return Err(TransformError::NoWitnessClass);
    }

    let keep = x1.index.min(x2.index);
    let drop = x1.index.max(x2.index);
    let merged = Vertex::new(cls, keep);

    let mut graph = g.base.graph.delete_vertex(cls, drop);
    for other in [o1, o2] {
        let union = g.base.graph.neighbors(x1, other) | g.base.graph.neighbors(x2, other);
        for j in 0..g.base.graph.size(other) {
            graph.set_edge(merged, Vertex::new(other, j), union >> j & 1 == 1);
        }
    }

    let mut weights = g.base.weights.clone();
    weights[cls.index()][keep] = w.clone();
    weights[cls.index()].remove(drop);

    let base = WeightedGraph { graph, weights };
    let mut out = DoublyWeightedGraph::from_weighted(base);
    let shift = |v: Vertex| {
        if v.class == cls && v.index > drop {
            Vertex::new(cls, v.index - 1)
        } else {
            v
        }
    };
    for (u, v) in g.base.graph.edges() {
        if u.index == x1.index && u.class == cls {
            continue;
        }
        if v.index == x1.index && v.class == cls {
            continue;
        }
        if (u.class == cls && u.index == x2.index) || (v.class == cls && v.index == x2.index) {
            continue;
        }
        out.set_p(shift(u), shift(v), g.p_value(u, v));
    }
    // Weight-averaged edge map on the merged vertex.
    for other in [o1, o2] {
        for j in 0..g.base.graph.size(other) {
            let v = Vertex::new(other, j);
            let e1 = g.base.graph.has_edge(x1, v);
            let e2 = g.base.graph.has_edge(x2, v);
            let num = match (e1, e2) {
                (true, false) => w1.clone() * g.p_value(x1, v),
                (false, true) => w2.clone() * g.p_value(x2, v),
                (true, true) => w1.clone() * g.p_value(x1, v) + w2.clone() * g.p_value(x2, v),
                (false, false) => continue,
            };
            out.set_p(merged, shift(v), num / w.clone());
        }
    }
    Ok(out)
}

/// Per-vertex profile used by `reduce`: weight reaching the two other
/// classes (in label order) and the triangle weight through the vertex.
/// For a class-A vertex these are `gamma_i`, `beta_i`, `t_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint<T: Scalar> {
    pub edge_first: T,
    pub edge_second: T,
    pub tri: T,
}

pub fn profile_points<T: Scalar>(g: &WeightedGraph<T>, cls: Class) -> Vec<ProfilePoint<T>> {
    let (o1, o2) = cls.others();
    (0..g.graph.size(cls))
        .map(|i| {
            let v = Vertex::new(cls, i);
            let mask1 = g.graph.neighbors(v, o1);
            let mask2 = g.graph.neighbors(v, o2);
            let sum = |other: Class, mask: u16| {
                let mut s = T::zero();
                for j in 0..g.graph.size(other) {
                    if mask >> j & 1 == 1 {
                        s = s + g.weights[other.index()][j].clone();
                    }
                }
                s
            };
            let mut tri = T::zero();
            for j in 0..g.graph.size(o1) {
                if mask1 >> j & 1 == 0 {
                    continue;
                }
                let y = Vertex::new(o1, j);
                for k in 0..g.graph.size(o2) {
                    if mask2 >> k & 1 == 1 && g.graph.has_edge(y, Vertex::new(o2, k)) {
                        tri = tri
                            + g.weights[o1.index()][j].clone() * g.weights[o2.index()][k].clone();
                    }
                }
            }
            ProfilePoint {
                edge_first: sum(o1, mask1),
                edge_second: sum(o2, mask2),
                tri,
            }
        })
        .collect()
}

/// Solution of the support-restricted reweighting problem.
struct Candidate<T: Scalar> {
    objective: T,
    support: Vec<usize>,
    values: Vec<T>,
}

/// Reweights class `cls` to minimize the triangle density subject to both
/// incident edge densities staying fixed. Solved exactly by enumerating all
/// supports of size at most three; a basic optimal solution has at most
/// three positive coordinates, so this is exhaustive. Zero-weight vertices
/// of the class are removed from the output.
pub fn reduce<T: Scalar>(
    g: &WeightedGraph<T>,
    cls: Class,
) -> Result<WeightedGraph<T>, TransformError> {
    let n = g.graph.size(cls);
    if n <= 3 {
        return Err(TransformError::ClassTooSmall);
    }
    let profile = profile_points(g, cls);
    let w = &g.weights[cls.index()];
    let target1 = (0..n).fold(T::zero(), |acc, i| {
        acc + w[i].clone() * profile[i].edge_first.clone()
    });
    let target2 = (0..n).fold(T::zero(), |acc, i| {
        acc + w[i].clone() * profile[i].edge_second.clone()
    });

    let mut best: Option<Candidate<T>> = None;
    let mut offer = |support: Vec<usize>, raw: Vec<T>| {
        // Clamp negative rounding dust; reject genuinely negative values.
        let mut values = Vec::with_capacity(raw.len());
        for x in raw {
            if x < T::zero() {
                if (T::zero() - x.clone()).is_negligible() {
                    values.push(T::zero());
                } else {
                    return;
                }
            } else {
                values.push(x);
            }
        }
        let objective = support
            .iter()
            .zip(values.iter())
            .fold(T::zero(), |acc, (&i, x)| {
                acc + x.clone() * profile[i].tri.clone()
            });
        let better = match &best {
            None => true,
            Some(b) => objective < b.objective || (objective == b.objective && support < b.support),
        };
        if better {
            best = Some(Candidate {
                objective,
                support,
                values,
            });
        }
    };

    let negligible = |x: &T| x.is_negligible();

    for i in 0..n {
        let r1 = profile[i].edge_first.clone() - target1.clone();
        let r2 = profile[i].edge_second.clone() - target2.clone();
        if negligible(&r1) && negligible(&r2) {
            offer(vec![i], vec![T::one()]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d1 = profile[i].edge_first.clone() - profile[j].edge_first.clone();
            let d2 = profile[i].edge_second.clone() - profile[j].edge_second.clone();
            let xi = if !negligible(&d1) {
                (target1.clone() - profile[j].edge_first.clone()) / d1
            } else if !negligible(&d2) {
                (target2.clone() - profile[j].edge_second.clone()) / d2
            } else {
                // Both constraint rows coincide; any optimum on the segment
                // is matched by a single-vertex support handled above.
                continue;
            };
            let xj = T::one() - xi.clone();
            let e1 = xi.clone() * profile[i].edge_first.clone()
                + xj.clone() * profile[j].edge_first.clone()
                - target1.clone();
            let e2 = xi.clone() * profile[i].edge_second.clone()
                + xj.clone() * profile[j].edge_second.clone()
                - target2.clone();
            if negligible(&e1) && negligible(&e2) {
                offer(vec![i, j], vec![xi, xj]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if let Some(x) = solve3(
                    [
                        [T::one(), T::one(), T::one()],
                        [
                            profile[i].edge_first.clone(),
                            profile[j].edge_first.clone(),
                            profile[k].edge_first.clone(),
                        ],
                        [
                            profile[i].edge_second.clone(),
                            profile[j].edge_second.clone(),
                            profile[k].edge_second.clone(),
                        ],
                    ],
                    [T::one(), target1.clone(), target2.clone()],
                ) {
                    offer(vec![i, j, k], x.to_vec());
                }
            }
        }
    }

    let best = best.expect("the current weighting is feasible, so a basic optimum exists");
    let mut weights = g.weights.clone();
    weights[cls.index()] = vec![T::zero(); n];
    for (&i, x) in best.support.iter().zip(best.values.iter()) {
        weights[cls.index()][i] = x.clone();
    }
    let mut keep = [0u16; 3];
    for c in 0..3 {
        keep[c] = crate::weighted::full_mask(g.graph.sizes()[c]);
    }
    keep[cls.index()] = 0;
    for (i, x) in weights[cls.index()].iter().enumerate() {
        if *x != T::zero() {
            keep[cls.index()] |= 1 << i;
        }
    }
    let graph = g.graph.induced(keep);
    let reduced: Vec<T> = weights[cls.index()]
        .iter()
        .filter(|x| **x != T::zero())
        .cloned()
        .collect();
    weights[cls.index()] = reduced;
    Ok(WeightedGraph { graph, weights })
}

/// Gaussian elimination on a 3x3 system; `None` when singular.
fn solve3<T: Scalar>(mut a: [[T; 3]; 3], mut b: [T; 3]) -> Option<[T; 3]> {
    let zero = |x: &T| x.is_negligible();
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !zero(&a[r][col]))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in 0..3 {
            if r != col && !zero(&a[r][col]) {
                let f = a[r][col].clone() / a[col][col].clone();
                for c2 in 0..3 {
                    a[r][c2] = a[r][c2].clone() - f.clone() * a[col][c2].clone();
                }
                b[r] = b[r].clone() - f * b[col].clone();
            }
        }
    }
    Some([
        b[0].clone() / a[0][0].clone(),
        b[1].clone() / a[1][1].clone(),
        b[2].clone() / a[2][2].clone(),
    ])
}

/// Number of incident partial edges of `v`.
pub fn partial_degree<T: Scalar>(g: &DoublyWeightedGraph<T>, v: Vertex) -> u32 {
    let (o1, o2) = v.class.others();
    let mut d = 0;
    for other in [o1, o2] {
        for j in 0..g.base.graph.size(other) {
            if g.is_partial_edge(v, Vertex::new(other, j)) {
                d += 1;
            }
        }
    }
    d
}

/// Split potential of one class: `sum over v of 3^(partial degree of v)`.
/// Each split of a class vertex strictly decreases it, which bounds the
/// number of splits the elimination loop can make.
pub fn z_potential<T: Scalar>(g: &DoublyWeightedGraph<T>, cls: Class) -> u64 {
    (0..g.base.graph.size(cls))
        .map(|i| 3u64.pow(partial_degree(g, Vertex::new(cls, i))))
        .sum()
}

/// Removes every partial edge by repeated splits, taking classes in
/// `priority` order and always splitting the endpoint in the current class.
/// Edge and triangle densities are unchanged.
pub fn eliminate_partial_edges_with_priority<T: Scalar>(
    g: &DoublyWeightedGraph<T>,
    priority: [Class; 3],
) -> WeightedGraph<T> {
    let mut cur = g.clone();
    for cls in priority {
        loop {
            let next = cur.partial_edges().into_iter().find_map(|(u, v)| {
                if u.class == cls {
                    Some((u, v))
                } else if v.class == cls {
                    Some((v, u))
                } else {
                    None
                }
            });
            match next {
                Some((x, y)) => {
                    cur = split(&cur, x, y).expect("partial edge implies split applies");
                }
                None => break,
            }
        }
    }
    debug_assert!(cur.partial_edges().is_empty());
    cur.into_weighted()
}

/// `eliminate_partial_edges_with_priority` with the default A, B, C order.
pub fn eliminate_partial_edges<T: Scalar>(g: &DoublyWeightedGraph<T>) -> WeightedGraph<T> {
    eliminate_partial_edges_with_priority(g, Class::ALL)
}
