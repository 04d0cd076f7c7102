//! Weighted tripartite graphs and the minimal density of triangles they must contain.
//!
//! The crate models tripartite graphs with per-vertex weightings (and an
//! optional per-edge map into `(0,1]`), computes edge and triangle densities
//! in exact rational or `f64` arithmetic, classifies density triples into the
//! regions where the minimum is zero, linear, or a square-root expression,
//! and reproduces the exhaustive elimination search that narrows the
//! extremal vertex-minimal candidates down to fourteen graphs.
//!
//! The crate is `no_std` (with `alloc`); all IO, file formats and the CLI
//! live in the companion `tripartite-cli` crate.
//!
//! ```
//! use tripartite_core::{classify_region, tmin_closed_form, DensityTriple, RegionLabel};
//! use tripartite_core::constructions::h7_weighting;
//!
//! // Inside the forcing region with negative discriminant, an explicit
//! // seven-vertex weighting attains the closed-form value.
//! let d = DensityTriple::new(0.7, 0.7, 0.7);
//! assert_eq!(classify_region(d), RegionLabel::R2);
//! let w = h7_weighting(d).unwrap();
//! assert!((w.triangle_density() - tmin_closed_form(d)).abs() < 1e-12);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod constructions;
pub mod elimination;
pub mod graph;
pub mod iso;
pub mod optimizer;
pub mod rat;
pub mod regions;
pub mod rng;
pub mod sample;
pub mod search;
pub mod transforms;
pub mod weighted;

pub use graph::{Class, GraphError, TripartiteGraph, Vertex, MAX_CLASS};
pub use iso::{are_strongly_isomorphic, canonical_form, canonical_graph, CanonicalForm};
pub use rat::Rat;
pub use regions::{
    classify_region, cyclic_upper_bound, discriminant, in_region_r, tmin_closed_form, RegionLabel,
};
pub use rng::SplitMix64;
pub use weighted::{DensityTriple, DoublyWeightedGraph, Scalar, WeightedGraph};
