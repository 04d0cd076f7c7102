//! Catalog of named graphs and their explicit optimal weightings.
//!
//! The six-, seven- and nine-vertex graphs here are pinned by their density
//! equations where those are available in closed form; the remaining edge
//! sets (H7', H9, F9) are frozen from the exhaustive search output and
//! validated by structural checks (reduction to H7, the 9-cycle complement,
//! induced-subgraph containment).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::TripartiteGraph;
use crate::regions::{classify_region, discriminant, RegionLabel};
use crate::weighted::{DensityTriple, WeightedGraph};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GraphName {
    H6,
    H7,
    H7Prime,
    H9,
    F6,
    F7,
    F9,
    G14,
}

impl GraphName {
    pub const ALL: [GraphName; 8] = [
        GraphName::H6,
        GraphName::H7,
        GraphName::H7Prime,
        GraphName::H9,
        GraphName::F6,
        GraphName::F7,
        GraphName::F9,
        GraphName::G14,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GraphName::H6 => "H6",
            GraphName::H7 => "H7",
            GraphName::H7Prime => "H7'",
            GraphName::H9 => "H9",
            GraphName::F6 => "F6",
            GraphName::F7 => "F7",
            GraphName::F9 => "F9",
            GraphName::G14 => "G14",
        }
    }

    pub fn parse(s: &str) -> Option<GraphName> {
        match s.to_ascii_uppercase().as_str() {
            "H6" => Some(GraphName::H6),
            "H7" => Some(GraphName::H7),
            "H7'" | "H7P" | "H7PRIME" => Some(GraphName::H7Prime),
            "H9" => Some(GraphName::H9),
            "F6" => Some(GraphName::F6),
            "F7" => Some(GraphName::F7),
            "F9" => Some(GraphName::F9),
            "G14" => Some(GraphName::G14),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: GraphName,
    pub graph: TripartiteGraph,
    /// How the edge set was fixed.
    pub provenance: &'static str,
}

/// Bit-exact encodings of the catalog.
///
/// H6: complement is the perfect matching {a2b1, a1c2, b2c1}.
/// H7: complement is {a2b1, a1c2, a1c3, b2c1, b2c2}; two triangles.
/// H7': complement is {a2b1, a1c2, b2c1, b3c1, b3c2}; merging b2,b3 and
///      splitting c2 recovers H7.
/// H9: complement is the 9-cycle a1 b1 a2 c1 a3 c2 b2 c3 b3.
/// F6: complement is {a1b1, a1c1, a2c2, b1c1, b2c2}; a single triangle.
/// F7: complement is {a1b1, a2b3, a1c1, a2c2, b1c1, b2c2, b3c2};
///     removing b3 leaves F6.
/// F9: three triangles in a cyclic pattern; frozen from the search.
/// G14: complete tripartite minus three vertex-disjoint triangles.
const CATALOG: [(GraphName, &str, &str); 8] = [
    (
        GraphName::H6,
        "t[2,2,2]AB=1101;AC=1011;BC=1101",
        "edge set solved from its three density equations",
    ),
    (
        GraphName::H7,
        "t[2,2,3]AB=1101;AC=100111;BC=111001",
        "edge set solved from the optimal seven-vertex density equations",
    ),
    (
        GraphName::H7Prime,
        "t[2,3,2]AB=111011;AC=1011;BC=110100",
        "frozen from the search output; validated by the merge-split reduction to H7",
    ),
    (
        GraphName::H9,
        "t[3,3,3]AB=010011111;AC=111011001;BC=111100110",
        "frozen from the search output; complement is a 9-cycle and H6, H7, H7' embed as induced subgraphs",
    ),
    (
        GraphName::F6,
        "t[2,2,2]AB=0111;AC=0110;BC=0110",
        "edge set solved from its density and triangle equations",
    ),
    (
        GraphName::F7,
        "t[2,3,2]AB=011110;AC=0110;BC=011010",
        "edge set pinned by its weight-shift elimination argument; deleting b3 leaves F6",
    ),
    (
        GraphName::F9,
        "t[3,3,3]AB=001011110;AC=011001110;BC=101001110",
        "frozen from the search output; validated against its vertex-split elimination argument",
    ),
    (
        GraphName::G14,
        "t[3,3,3]AB=011101110;AC=011101110;BC=011101110",
        "complete tripartite graph minus three vertex-disjoint triangles",
    ),
];

/// Returns a catalog graph by name.
pub fn make_named(name: GraphName) -> NamedGraph {
    let (n, enc, provenance) = CATALOG
        .iter()
        .find(|(n, _, _)| *n == name)
        .expect("catalog covers every name");
    NamedGraph {
        name: *n,
        graph: TripartiteGraph::parse(enc).expect("catalog encodings are valid"),
        provenance,
    }
}

pub fn catalog() -> Vec<NamedGraph> {
    GraphName::ALL.iter().map(|&n| make_named(n)).collect()
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConstructionError {
    #[error("density triple {0:?} is not in region {1}")]
    NotInRegion(DensityTriple, &'static str),
}

fn clamp01(x: f64) -> f64 {
    x.clamp(0.0, 1.0)
}

/// Weights for H6 in label order `(a1, b1, c1)` solving the three
/// density equations; the positive square root keeps every weight in [0,1]
/// throughout R1.
fn h6_weights(d: DensityTriple) -> (f64, f64, f64) {
    let (a, b, g) = (d.alpha, d.beta, d.gamma);
    if a == 1.0 {
        (g, 1.0, (b + g - 1.0) / g)
    } else if b == 1.0 {
        ((a + g - 1.0) / a, a, 1.0)
    } else if g == 1.0 {
        (1.0, (a + b - 1.0) / b, b)
    } else {
        let s = libm::sqrt(discriminant(d).max(0.0));
        (
            (a - b + g + s) / (2.0 * a),
            (a + b - g + s) / (2.0 * b),
            (-a + b + g + s) / (2.0 * g),
        )
    }
}

/// The H6 weighting attaining `alpha + beta + gamma - 2` for a triple in R1.
pub fn h6_weighting(d: DensityTriple) -> Result<WeightedGraph<f64>, ConstructionError> {
    if classify_region(d) != RegionLabel::R1 {
        return Err(ConstructionError::NotInRegion(d, "R1"));
    }
    let (a1, b1, c1) = h6_weights(d);
    let (a1, b1, c1) = (clamp01(a1), clamp01(b1), clamp01(c1));
    Ok(WeightedGraph {
        graph: make_named(GraphName::H6).graph,
        weights: [vec![a1, 1.0 - a1], vec![b1, 1.0 - b1], vec![c1, 1.0 - c1]],
    })
}

/// H7 weights in label order for a triple already arranged so that
/// `gamma` is the minimum component.
fn h7_weights(d: DensityTriple) -> ([f64; 2], [f64; 2], [f64; 3]) {
    let (a, b, g) = (d.alpha, d.beta, d.gamma);
    let a1 = 1.0 - libm::sqrt(b * (1.0 - g) / a);
    let a2 = 1.0 - a1;
    let b1 = (1.0 - g) / (1.0 - a1);
    let b2 = 1.0 - b1;
    let c1 = 1.0 - (1.0 - b) / a1;
    let c3 = 1.0 - (1.0 - a) * (1.0 - a1) / (g - a1);
    let c2 = 1.0 - c1 - c3;
    ([a1, a2], [b1, b2], [c1, c2, c3])
}

/// Permutation sending the minimum component of `d` to the gamma slot;
/// ties prefer the later slot so an already-minimal gamma stays put.
fn min_to_gamma_perm(d: DensityTriple) -> [usize; 3] {
    let v = d.as_array();
    let mut m = 0;
    for i in 1..3 {
        if v[i] <= v[m] {
            m = i;
        }
    }
    // Slot m goes to 2; the others keep their relative order.
    let mut perm = [0usize; 3];
    perm[m] = 2;
    let mut next = 0;
    for i in 0..3 {
        if i != m {
            perm[i] = next;
            next += 1;
        }
    }
    perm
}

/// The H7 weighting attaining `2 sqrt(ab(1-g)) + 2g - 2` (with `g` the
/// minimum component) for a triple in R2. The returned graph is H7 with its
/// classes permuted so the densities come out in the caller's order.
pub fn h7_weighting(d: DensityTriple) -> Result<WeightedGraph<f64>, ConstructionError> {
    if classify_region(d) != RegionLabel::R2 {
        return Err(ConstructionError::NotInRegion(d, "R2"));
    }
    let perm = min_to_gamma_perm(d);
    let dp = d.permuted(perm);
    let (wa, wb, wc) = h7_weights(dp);
    let base = WeightedGraph {
        graph: make_named(GraphName::H7).graph,
        weights: [wa.to_vec(), wb.to_vec(), wc.to_vec()],
    };
    // Undo the density permutation by relabeling classes with its inverse.
    let mut inv = [0usize; 3];
    for i in 0..3 {
        inv[perm[i]] = i;
    }
    Ok(relabel_classes(&base, inv))
}

/// The H7' weighting with the same densities and triangle density as the H7
/// weighting; used as an optimizer seed and in the conjecture harness.
pub fn h7_prime_weighting(d: DensityTriple) -> Result<WeightedGraph<f64>, ConstructionError> {
    if classify_region(d) != RegionLabel::R2 {
        return Err(ConstructionError::NotInRegion(d, "R2"));
    }
    let perm = min_to_gamma_perm(d);
    let dp = d.permuted(perm);
    let (wa, wb, wc) = h7_weights(dp);
    let (c2, c3) = (wc[1], wc[2]);
    // Reverse of the merge-split reduction: b2 splits in the ratio c3 : c2,
    // c2 and c3 merge.
    let b2 = wb[1] * c3 / (c2 + c3);
    let b3 = wb[1] * c2 / (c2 + c3);
    let base = WeightedGraph {
        graph: make_named(GraphName::H7Prime).graph,
        weights: [wa.to_vec(), vec![wb[0], b2, b3], vec![wc[0], c2 + c3]],
    };
    let mut inv = [0usize; 3];
    for i in 0..3 {
        inv[perm[i]] = i;
    }
    Ok(relabel_classes(&base, inv))
}

/// Relabels classes of a weighted graph: class `i` becomes class `perm[i]`.
pub fn relabel_classes(w: &WeightedGraph<f64>, perm: [usize; 3]) -> WeightedGraph<f64> {
    let sizes = w.graph.sizes();
    let identity: [Vec<usize>; 3] = [0, 1, 2].map(|c| (0..sizes[c]).collect());
    let graph = w
        .graph
        .relabel(perm, [&identity[0][..], &identity[1][..], &identity[2][..]]);
    let mut weights: [Vec<f64>; 3] = [vec![], vec![], vec![]];
    for c in 0..3 {
        weights[perm[c]] = w.weights[c].clone();
    }
    WeightedGraph { graph, weights }
}

/// True when `sub` is strongly-isomorphic to an induced subgraph of `sup`.
pub fn embeds_induced(sub: &TripartiteGraph, sup: &TripartiteGraph) -> bool {
    use crate::iso::are_strongly_isomorphic;
    let target: Vec<usize> = {
        let mut v = sub.sizes().to_vec();
        v.sort_unstable();
        v
    };
    let sup_sizes = sup.sizes();
    // All ways of keeping the right number of vertices per class, allowing
    // the kept sizes to land on the classes in any order.
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for p in perms {
        let want = [target[p[0]], target[p[1]], target[p[2]]];
        if want.iter().zip(sup_sizes.iter()).any(|(w, s)| w > s) {
            continue;
        }
        let masks: [Vec<u16>; 3] = [0, 1, 2].map(|c| subsets_of_size(sup_sizes[c], want[c]));
        for &ma in &masks[0] {
            for &mb in &masks[1] {
                for &mc in &masks[2] {
                    if are_strongly_isomorphic(&sup.induced([ma, mb, mc]), sub) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u16> {
    (0u16..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

/// Human-readable complement edge list, e.g. `a2b1`.
pub fn complement_edge_names(g: &TripartiteGraph) -> Vec<String> {
    g.complement()
        .edges()
        .into_iter()
        .map(|(x, y)| {
            format!(
                "{}{}{}{}",
                x.class.name().to_ascii_lowercase(),
                x.index + 1,
                y.class.name().to_ascii_lowercase(),
                y.index + 1
            )
        })
        .collect()
}
