//! Vertex weightings, edge maps, and density computations.
//!
//! Everything is generic over a [`Scalar`] so identity-style contracts
//! (transform preservation, blow-up equality) can run in exact rational
//! arithmetic while the optimizer uses `f64`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{low_mask, Class, TripartiteGraph, Vertex};
use crate::rat::Rat;

/// Arithmetic shared by `f64` and [`Rat`].
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + core::ops::Add<Output = Self>
    + core::ops::Sub<Output = Self>
    + core::ops::Mul<Output = Self>
    + core::ops::Div<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Whether a per-class weight sum counts as exactly one.
    fn sums_to_one(&self) -> bool;
    /// Whether a residual counts as zero (exact for rationals, a small
    /// tolerance for floats).
    fn is_negligible(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> f64 {
        0.0
    }
    fn one() -> f64 {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sums_to_one(&self) -> bool {
        let d = *self - 1.0;
        d.max(-d) <= 1e-12
    }
    fn is_negligible(&self) -> bool {
        self.max(-self) <= 1e-9
    }
}

impl Scalar for Rat {
    fn zero() -> Rat {
        Rat::ZERO
    }
    fn one() -> Rat {
        Rat::ONE
    }
    fn from_ratio(num: i64, den: i64) -> Rat {
        Rat::new(num as i128, den as i128)
    }
    fn to_f64(&self) -> f64 {
        Rat::to_f64(self)
    }
    fn sums_to_one(&self) -> bool {
        *self == Rat::ONE
    }
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

/// Edge densities `(alpha, beta, gamma)`; each component is named after the
/// class it is opposite to (alpha = B–C, beta = A–C, gamma = A–B).
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct DensityTriple {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DensityTriple {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> DensityTriple {
        DensityTriple { alpha, beta, gamma }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn from_array(d: [f64; 3]) -> DensityTriple {
        DensityTriple::new(d[0], d[1], d[2])
    }

    pub fn in_unit_cube(&self) -> bool {
        self.as_array().iter().all(|x| (0.0..=1.0).contains(x))
    }

    pub fn min_component(&self) -> f64 {
        self.alpha.min(self.beta).min(self.gamma)
    }

    /// Density triple of the graph relabeled by the class permutation that
    /// sends class `i` to `perm[i]`: component `i` moves to slot `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> DensityTriple {
        let src = self.as_array();
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[perm[i]] = src[i];
        }
        DensityTriple::from_array(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("weight vector length does not match class size")]
    BadLength,
    #[error("weight outside [0,1]")]
    WeightRange,
    #[error("class weights do not sum to one")]
    BadSum,
    #[error("edge map value outside (0,1]")]
    EdgeMapRange,
    #[error("blow-up scale does not make every weight integral")]
    NonIntegralBlowUp,
    #[error("blow-up class size outside library bounds")]
    BlowUpTooLarge,
}

/// A tripartite graph together with a weighting `w : V -> [0,1]` summing to
/// one within each class (the pair `(G, w)`).
#[derive(Clone, PartialEq, Debug)]
pub struct WeightedGraph<T: Scalar> {
    pub graph: TripartiteGraph,
    pub weights: [Vec<T>; 3],
}

impl<T: Scalar> WeightedGraph<T> {
    pub fn new(graph: TripartiteGraph, weights: [Vec<T>; 3]) -> Result<Self, WeightError> {
        let g = WeightedGraph { graph, weights };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        for c in 0..3 {
            if self.weights[c].len() != self.graph.sizes()[c] {
                return Err(WeightError::BadLength);
            }
            let mut sum = T::zero();
            for w in &self.weights[c] {
                if *w < T::zero() || *w > T::one() {
                    return Err(WeightError::WeightRange);
                }
                sum = sum + w.clone();
            }
            if !sum.sums_to_one() {
                return Err(WeightError::BadSum);
            }
        }
        Ok(())
    }

    /// Uniform weighting `1/|X|` per class.
    pub fn uniform(graph: TripartiteGraph) -> Self {
        let sizes = graph.sizes();
        let weights = [0, 1, 2].map(|c| {
            let n = sizes[c] as i64;
            vec![T::from_ratio(1, n); sizes[c]]
        });
        WeightedGraph { graph, weights }
    }

    pub fn weight(&self, v: Vertex) -> T {
        self.weights[v.class.index()][v.index].clone()
    }

    /// Sum of `w(x) w(y)` over present edges between `x_class` and `y_class`.
    fn pair_density(&self, x_class: Class, y_class: Class) -> T {
        let mut total = T::zero();
        let nx = self.graph.size(x_class);
        for i in 0..nx {
            let nb = self.graph.neighbors(Vertex::new(x_class, i), y_class);
            let mut row = T::zero();
            for j in 0..self.graph.size(y_class) {
                if nb >> j & 1 == 1 {
                    row = row + self.weights[y_class.index()][j].clone();
                }
            }
            total = total + self.weights[x_class.index()][i].clone() * row;
        }
        total
    }

    /// `(alpha, beta, gamma)` = densities of the (B,C), (A,C), (A,B) pairs.
    pub fn edge_densities(&self) -> [T; 3] {
        [
            self.pair_density(Class::B, Class::C),
            self.pair_density(Class::A, Class::C),
            self.pair_density(Class::A, Class::B),
        ]
    }

    pub fn density_triple(&self) -> DensityTriple {
        let [a, b, g] = self.edge_densities();
        DensityTriple::new(a.to_f64(), b.to_f64(), g.to_f64())
    }

    /// Total weight `w(a) w(b) w(c)` of triangles.
    pub fn triangle_density(&self) -> T {
        let mut total = T::zero();
        self.graph.for_each_triangle(|a, b, c| {
            total = total.clone()
                + self.weights[0][a].clone()
                    * self.weights[1][b].clone()
                    * self.weights[2][c].clone();
        });
        total
    }

    /// Drops zero-weight vertices, keeping at least one vertex per class
    /// (class sums are one, so a positive vertex always remains).
    pub fn remove_zero_weight_vertices(&self) -> Self {
        let mut keep = [0u16; 3];
        for c in 0..3 {
            for (i, w) in self.weights[c].iter().enumerate() {
                if *w != T::zero() {
                    keep[c] |= 1 << i;
                }
            }
        }
        let graph = self.graph.induced(keep);
        let weights = [0, 1, 2].map(|c| {
            self.weights[c]
                .iter()
                .filter(|w| **w != T::zero())
                .cloned()
                .collect::<Vec<_>>()
        });
        WeightedGraph { graph, weights }
    }
}

impl WeightedGraph<Rat> {
    /// Clone-expands each vertex of weight `x` into `n*x` vertices; the
    /// uniform weighting of the result has identical densities, exactly.
    pub fn blow_up(&self, n: usize) -> Result<TripartiteGraph, WeightError> {
        if n == 0 || n > crate::graph::MAX_CLASS {
            return Err(WeightError::BlowUpTooLarge);
        }
        let scale = Rat::from_int(n as i128);
        let mut counts: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for c in 0..3 {
            for w in &self.weights[c] {
                let m = *w * scale;
                if !m.is_integer() {
                    return Err(WeightError::NonIntegralBlowUp);
                }
                counts[c].push(m.numer() as usize);
            }
        }
        let mut g = TripartiteGraph::new([n, n, n]).expect("n checked");
        // offsets[c][i] = first clone index of vertex i
        let offsets: [Vec<usize>; 3] = [0, 1, 2].map(|c| {
            let mut acc = 0;
            counts[c]
                .iter()
                .map(|&k| {
                    let o = acc;
                    acc += k;
                    o
                })
                .collect()
        });
        for (x, y) in self.graph.edges() {
            let (cx, cy) = (x.class.index(), y.class.index());
            for dx in 0..counts[cx][x.index] {
                for dy in 0..counts[cy][y.index] {
                    g.set_edge(
                        Vertex::new(x.class, offsets[cx][x.index] + dx),
                        Vertex::new(y.class, offsets[cy][y.index] + dy),
                        true,
                    );
                }
            }
        }
        Ok(g)
    }
}

/// A weighted graph together with an edge map `p : E -> (0,1]` (the triple
/// `(G, w, p)`). An edge with `p < 1` is a partial edge.
#[derive(Clone, PartialEq, Debug)]
pub struct DoublyWeightedGraph<T: Scalar> {
    pub base: WeightedGraph<T>,
    /// Row-major per pair matrix, aligned with the adjacency layout; entries
    /// at non-edges are ignored (kept at one).
    p: [Vec<T>; 3],
}

const PAIR_CLASSES: [(Class, Class); 3] = [
    (Class::A, Class::B),
    (Class::A, Class::C),
    (Class::B, Class::C),
];

fn pair_of(x: Class, y: Class) -> (usize, bool) {
    match (x.index(), y.index()) {
        (0, 1) => (0, false),
        (1, 0) => (0, true),
        (0, 2) => (1, false),
        (2, 0) => (1, true),
        (1, 2) => (2, false),
        (2, 1) => (2, true),
        _ => panic!("pair within one class"),
    }
}

impl<T: Scalar> DoublyWeightedGraph<T> {
    /// Embeds `(G, w)` with `p` identically one.
    pub fn from_weighted(base: WeightedGraph<T>) -> Self {
        let sizes = base.graph.sizes();
        let p = [0, 1, 2].map(|k| {
            let (rc, cc) = PAIR_CLASSES[k];
            vec![T::one(); sizes[rc.index()] * sizes[cc.index()]]
        });
        DoublyWeightedGraph { base, p }
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        self.base.validate()?;
        for (x, y) in self.base.graph.edges() {
            let v = self.p_value(x, y);
            if v <= T::zero() || v > T::one() {
                return Err(WeightError::EdgeMapRange);
            }
        }
        Ok(())
    }

    fn slot(&self, x: Vertex, y: Vertex) -> (usize, usize) {
        let (k, t) = pair_of(x.class, y.class);
        let (i, j) = if t {
            (y.index, x.index)
        } else {
            (x.index, y.index)
        };
        let cols = self.base.graph.size(PAIR_CLASSES[k].1);
        (k, i * cols + j)
    }

    pub fn p_value(&self, x: Vertex, y: Vertex) -> T {
        let (k, s) = self.slot(x, y);
        self.p[k][s].clone()
    }

    pub fn set_p(&mut self, x: Vertex, y: Vertex, value: T) {
        debug_assert!(self.base.graph.has_edge(x, y));
        let (k, s) = self.slot(x, y);
        self.p[k][s] = value;
    }

    pub fn is_partial_edge(&self, x: Vertex, y: Vertex) -> bool {
        self.base.graph.has_edge(x, y) && self.p_value(x, y) < T::one()
    }

    /// All partial edges in (AB, AC, BC) row-major order.
    pub fn partial_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.base
            .graph
            .edges()
            .into_iter()
            .filter(|&(x, y)| self.p_value(x, y) < T::one())
            .collect()
    }

    fn pair_density(&self, x_class: Class, y_class: Class) -> T {
        let mut total = T::zero();
        for i in 0..self.base.graph.size(x_class) {
            for j in 0..self.base.graph.size(y_class) {
                let (x, y) = (Vertex::new(x_class, i), Vertex::new(y_class, j));
                if self.base.graph.has_edge(x, y) {
                    total = total + self.base.weight(x) * self.base.weight(y) * self.p_value(x, y);
                }
            }
        }
        total
    }

    /// Densities with edge weight `lambda(xy) = w(xy) p(xy)`; the triangle
    /// term multiplies all three `p` values.
    pub fn dtri_densities(&self) -> ([T; 3], T) {
        let d = [
            self.pair_density(Class::B, Class::C),
            self.pair_density(Class::A, Class::C),
            self.pair_density(Class::A, Class::B),
        ];
        let mut t = T::zero();
        self.base.graph.for_each_triangle(|a, b, c| {
            let (va, vb, vc) = (
                Vertex::new(Class::A, a),
                Vertex::new(Class::B, b),
                Vertex::new(Class::C, c),
            );
            t = t.clone()
                + self.p_value(va, vb)
                    * self.p_value(va, vc)
                    * self.p_value(vb, vc)
                    * self.base.weight(va)
                    * self.base.weight(vb)
                    * self.base.weight(vc);
        });
        (d, t)
    }

    /// Turns the triple back into `(G, w)`; callers must have removed all
    /// partial edges first (see `transforms::eliminate_partial_edges`).
    pub fn into_weighted(self) -> WeightedGraph<T> {
        debug_assert!(self.partial_edges().is_empty());
        self.base
    }
}

/// Convenience mask of all vertices of a class.
pub fn full_mask(n: usize) -> u16 {
    low_mask(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Class;

    fn h6() -> TripartiteGraph {
        TripartiteGraph::parse("t[2,2,2]AB=1101;AC=1011;BC=1101").unwrap()
    }

    fn half() -> Rat {
        Rat::new(1, 2)
    }

    #[test]
    fn k111_densities() {
        let g = TripartiteGraph::complete([1, 1, 1]).unwrap();
        let w = WeightedGraph::<f64>::uniform(g);
        assert_eq!(w.edge_densities(), [1.0, 1.0, 1.0]);
        assert_eq!(w.triangle_density(), 1.0);
    }

    #[test]
    fn h6_densities_at_half() {
        let w =
            WeightedGraph::new(h6(), [vec![half(); 2], vec![half(); 2], vec![half(); 2]]).unwrap();
        let d = w.edge_densities();
        assert_eq!(d, [Rat::new(3, 4), Rat::new(3, 4), Rat::new(3, 4)]);
        assert_eq!(w.triangle_density(), Rat::new(1, 4));
    }

    #[test]
    fn empty_graph_zero_densities() {
        let g = TripartiteGraph::new([2, 3, 2]).unwrap();
        let w = WeightedGraph::<f64>::uniform(g);
        assert_eq!(w.edge_densities(), [0.0, 0.0, 0.0]);
        assert_eq!(w.triangle_density(), 0.0);
    }

    #[test]
    fn dtri_with_unit_p_matches_plain() {
        let w =
            WeightedGraph::new(h6(), [vec![half(); 2], vec![half(); 2], vec![half(); 2]]).unwrap();
        let plain = (w.edge_densities(), w.triangle_density());
        let d = DoublyWeightedGraph::from_weighted(w);
        let (dd, dt) = d.dtri_densities();
        assert_eq!((dd, dt), plain);
    }

    #[test]
    fn single_partial_edge_density() {
        let mut g = TripartiteGraph::new([1, 1, 1]).unwrap();
        g.set_edge(Vertex::new(Class::A, 0), Vertex::new(Class::B, 0), true);
        let w = WeightedGraph::new(g, [vec![1.0], vec![1.0], vec![1.0]]).unwrap();
        let mut d = DoublyWeightedGraph::from_weighted(w);
        d.set_p(Vertex::new(Class::A, 0), Vertex::new(Class::B, 0), 0.4);
        let (dens, t) = d.dtri_densities();
        assert_eq!(dens, [0.0, 0.0, 0.4]);
        assert_eq!(t, 0.0);
    }

    #[test]
    fn triangle_with_half_p() {
        let g = TripartiteGraph::complete([1, 1, 1]).unwrap();
        let w = WeightedGraph::new(g, [vec![1.0], vec![1.0], vec![1.0]]).unwrap();
        let mut d = DoublyWeightedGraph::from_weighted(w);
        d.set_p(Vertex::new(Class::A, 0), Vertex::new(Class::B, 0), 0.5);
        d.set_p(Vertex::new(Class::A, 0), Vertex::new(Class::C, 0), 0.5);
        d.set_p(Vertex::new(Class::B, 0), Vertex::new(Class::C, 0), 0.5);
        let (_, t) = d.dtri_densities();
        assert_eq!(t, 0.125);
    }

    #[test]
    fn blow_up_preserves_densities_exactly() {
        let w = WeightedGraph::new(
            h6(),
            [
                vec![Rat::new(1, 3), Rat::new(2, 3)],
                vec![Rat::new(2, 3), Rat::new(1, 3)],
                vec![Rat::new(1, 3), Rat::new(2, 3)],
            ],
        )
        .unwrap();
        let big = w.blow_up(3).unwrap();
        assert_eq!(big.sizes(), [3, 3, 3]);
        let u = WeightedGraph::<Rat>::uniform(big);
        assert_eq!(u.edge_densities(), w.edge_densities());
        assert_eq!(u.triangle_density(), w.triangle_density());
    }

    #[test]
    fn blow_up_identity_for_single_vertices() {
        let g = TripartiteGraph::complete([1, 1, 1]).unwrap();
        let w = WeightedGraph::<Rat>::uniform(g.clone());
        assert_eq!(w.blow_up(1).unwrap(), g);
    }

    #[test]
    fn blow_up_rejects_non_integral() {
        let w = WeightedGraph::new(
            h6(),
            [
                vec![Rat::new(1, 3), Rat::new(2, 3)],
                vec![half(), half()],
                vec![half(), half()],
            ],
        )
        .unwrap();
        assert_eq!(w.blow_up(2), Err(WeightError::NonIntegralBlowUp));
    }

    #[test]
    fn removes_zero_weight_vertices() {
        let w = WeightedGraph::new(
            h6(),
            [
                vec![Rat::ONE, Rat::ZERO],
                vec![half(), half()],
                vec![Rat::ZERO, Rat::ONE],
            ],
        )
        .unwrap();
        let r = w.remove_zero_weight_vertices();
        assert_eq!(r.graph.sizes(), [1, 2, 1]);
        assert_eq!(r.edge_densities(), w.edge_densities());
        assert_eq!(r.triangle_density(), w.triangle_density());
    }
}
