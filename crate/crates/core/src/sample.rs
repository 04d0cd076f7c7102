//! Deterministic random instances: graphs, weightings, edge maps, and
//! density triples from a given region.

use alloc::vec::Vec;

use crate::graph::{Class, TripartiteGraph, Vertex};
use crate::rat::Rat;
use crate::regions::{classify_region, RegionLabel};
use crate::rng::SplitMix64;
use crate::weighted::{DensityTriple, DoublyWeightedGraph, WeightedGraph};

pub fn random_sizes(rng: &mut SplitMix64, lo: usize, hi: usize) -> [usize; 3] {
    let span = (hi - lo + 1) as u64;
    [0; 3].map(|_| lo + rng.next_below(span) as usize)
}

pub fn random_graph(rng: &mut SplitMix64, sizes: [usize; 3]) -> TripartiteGraph {
    let mut g = TripartiteGraph::new(sizes).expect("caller passes valid sizes");
    for (x, y) in TripartiteGraph::complete(sizes).unwrap().edges() {
        if rng.next_bool() {
            g.set_edge(x, y, true);
        }
    }
    g
}

/// Random rational weighting with per-class denominators at most
/// `granularity`; zero weights are possible.
pub fn random_weighting_rat(
    rng: &mut SplitMix64,
    graph: TripartiteGraph,
    granularity: u64,
) -> WeightedGraph<Rat> {
    let sizes = graph.sizes();
    let weights = [0, 1, 2].map(|c| {
        let n = sizes[c];
        loop {
            let nums: Vec<i128> = (0..n)
                .map(|_| rng.next_below(granularity) as i128)
                .collect();
            let total: i128 = nums.iter().sum();
            if total > 0 {
                break nums
                    .into_iter()
                    .map(|k| Rat::new(k, total))
                    .collect::<Vec<_>>();
            }
        }
    });
    WeightedGraph { graph, weights }
}

pub fn random_weighting_f64(rng: &mut SplitMix64, graph: TripartiteGraph) -> WeightedGraph<f64> {
    let sizes = graph.sizes();
    let weights = [0, 1, 2].map(|c| {
        let n = sizes[c];
        let raw: Vec<f64> = (0..n).map(|_| rng.next_f64().max(1e-9)).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect::<Vec<_>>()
    });
    WeightedGraph { graph, weights }
}

/// Random edge map with values `k/granularity` in (0,1].
pub fn random_edge_map_rat(
    rng: &mut SplitMix64,
    base: WeightedGraph<Rat>,
    granularity: u64,
) -> DoublyWeightedGraph<Rat> {
    let edges = base.graph.edges();
    let mut d = DoublyWeightedGraph::from_weighted(base);
    for (x, y) in edges {
        let k = 1 + rng.next_below(granularity) as i128;
        d.set_p(x, y, Rat::new(k, granularity as i128));
    }
    d
}

/// Edge map with at most `max_partial` edges made partial. Splitting
/// duplicates a vertex's remaining partial edges, so callers that go on to
/// eliminate them keep this small to stay within the class-size bound.
pub fn random_sparse_edge_map_rat(
    rng: &mut SplitMix64,
    base: WeightedGraph<Rat>,
    granularity: u64,
    max_partial: usize,
) -> DoublyWeightedGraph<Rat> {
    let edges = base.graph.edges();
    let mut d = DoublyWeightedGraph::from_weighted(base);
    if edges.is_empty() {
        return d;
    }
    for _ in 0..max_partial {
        let (x, y) = edges[rng.next_below(edges.len() as u64) as usize];
        let k = 1 + rng.next_below(granularity - 1) as i128;
        d.set_p(x, y, Rat::new(k, granularity as i128));
    }
    d
}

/// Uniform triple from the unit cube.
pub fn random_triple(rng: &mut SplitMix64) -> DensityTriple {
    DensityTriple::new(rng.next_f64(), rng.next_f64(), rng.next_f64())
}

/// Rejection-samples a triple with the requested region label.
pub fn random_triple_in(rng: &mut SplitMix64, label: RegionLabel) -> DensityTriple {
    loop {
        let d = random_triple(rng);
        if classify_region(d) == label {
            return d;
        }
    }
}

/// Plants a same-class pair with equal neighborhoods toward `witness` so a
/// merge applies; the pair is (0, 1) of `cls`.
pub fn plant_merge_pair(g: &mut TripartiteGraph, cls: Class, witness: Class) {
    let row = g.neighbors(Vertex::new(cls, 0), witness);
    for j in 0..g.size(witness) {
        g.set_edge(
            Vertex::new(cls, 1),
            Vertex::new(witness, j),
            row >> j & 1 == 1,
        );
    }
}
