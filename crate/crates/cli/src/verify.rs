//! Seeded verification batches behind `tripartite verify`.
//!
//! Each suite runs a batch of randomized checks and reports the count and
//! the first counterexample, if any; a nonzero process exit signals
//! failure so scripts can gate on it.

use serde::Serialize;

use tripartite_core::graph::{Class, Vertex};
use tripartite_core::optimizer::{conjecture_evidence, MinimizeOptions};
use tripartite_core::regions::{
    classify_region, cyclic_upper_bound, tmin_closed_form, RegionLabel,
};
use tripartite_core::rng::SplitMix64;
use tripartite_core::sample::{
    plant_merge_pair, random_graph, random_sizes, random_sparse_edge_map_rat, random_triple,
    random_triple_in, random_weighting_f64, random_weighting_rat,
};
use tripartite_core::transforms::{eliminate_partial_edges, merge, reduce, split};

#[derive(Serialize)]
pub struct SuiteOutcome {
    pub format: u32,
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: &str, seed: u64, samples: usize) -> SuiteOutcome {
        SuiteOutcome {
            format: 1,
            suite: suite.into(),
            seed,
            samples,
            checks: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }
}

pub fn run_suite(suite: &str, seed: u64, samples: usize) -> Option<SuiteOutcome> {
    match suite {
        "transforms" => Some(transforms_suite(seed, samples)),
        "formulas" => Some(formulas_suite(seed, samples)),
        "bounds" => Some(bounds_suite(seed, samples)),
        "conjecture" => Some(conjecture_suite(seed, samples)),
        _ => None,
    }
}

fn transforms_suite(seed: u64, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("transforms", seed, samples);
    let mut rng = SplitMix64::new(seed);
    let mut done = 0;
    while done < samples {
        let sizes = random_sizes(&mut rng, 2, 3);
        let mut g = random_graph(&mut rng, sizes);
        let cls = Class::ALL[rng.next_below(3) as usize];
        let (o1, o2) = cls.others();
        let witness = if rng.next_bool() { o1 } else { o2 };
        plant_merge_pair(&mut g, cls, witness);
        let w = random_weighting_rat(&mut rng, g, 12);
        if (w.weight(Vertex::new(cls, 0)) + w.weight(Vertex::new(cls, 1))).is_zero() {
            continue;
        }
        let d = random_sparse_edge_map_rat(&mut rng, w, 6, 2);
        let reference = d.dtri_densities();

        if let Some(&(x, y)) = d.partial_edges().first() {
            match split(&d, x, y) {
                Ok(s) => out.check(s.dtri_densities() == reference, || {
                    format!("split changed densities on {}", d.base.graph.encode())
                }),
                Err(e) => out.check(false, || format!("split failed: {e}")),
            }
        }
        // The planted pair keeps p = 1 toward the witness class only if the
        // sparse map did not touch those edges; skip quietly otherwise.
        if let Ok(m) = merge(&d, Vertex::new(cls, 0), Vertex::new(cls, 1)) {
            out.check(m.dtri_densities() == reference, || {
                format!("merge changed densities on {}", d.base.graph.encode())
            });
        }

        let flat = eliminate_partial_edges(&d);
        out.check(
            (flat.edge_densities(), flat.triangle_density()) == reference,
            || {
                format!(
                    "eliminate_partial_edges changed densities on {}",
                    d.base.graph.encode()
                )
            },
        );

        // Reduce on an enlarged class.
        let cls2 = Class::ALL[rng.next_below(3) as usize];
        let mut sizes2 = random_sizes(&mut rng, 2, 3);
        sizes2[cls2.index()] = 4 + rng.next_below(3) as usize;
        let g2 = random_graph(&mut rng, sizes2);
        let w2 = random_weighting_rat(&mut rng, g2, 8);
        match reduce(&w2, cls2) {
            Ok(r) => out.check(
                r.edge_densities() == w2.edge_densities()
                    && r.triangle_density() <= w2.triangle_density()
                    && r.graph.size(cls2) <= 3,
                || format!("reduce broke its contract on {}", w2.graph.encode()),
            ),
            Err(e) => out.check(false, || format!("reduce failed: {e}")),
        }
        done += 1;
    }
    out
}

fn formulas_suite(seed: u64, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("formulas", seed, samples);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let d = random_triple_in(&mut rng, RegionLabel::R1);
        match tripartite_core::constructions::h6_weighting(d) {
            Ok(w) => {
                let got = w.density_triple();
                let ok = w.validate().is_ok()
                    && (got.alpha - d.alpha).abs() <= 1e-12
                    && (got.beta - d.beta).abs() <= 1e-12
                    && (got.gamma - d.gamma).abs() <= 1e-12
                    && (w.triangle_density() - (d.alpha + d.beta + d.gamma - 2.0)).abs() <= 1e-12;
                out.check(ok, || format!("six-vertex weighting off at {d:?}"));
            }
            Err(e) => out.check(false, || format!("h6_weighting failed: {e}")),
        }

        let d = random_triple_in(&mut rng, RegionLabel::R2);
        match tripartite_core::constructions::h7_weighting(d) {
            Ok(w) => {
                let got = w.density_triple();
                let interior = w.weights.iter().flatten().all(|&x| x > 0.0 && x < 1.0);
                let t = w.triangle_density();
                let ok = interior
                    && (got.alpha - d.alpha).abs() <= 1e-12
                    && (got.beta - d.beta).abs() <= 1e-12
                    && (got.gamma - d.gamma).abs() <= 1e-12
                    && (t - tmin_closed_form(d)).abs() <= 1e-12
                    && t < cyclic_upper_bound(d);
                out.check(ok, || format!("seven-vertex weighting off at {d:?}"));
            }
            Err(e) => out.check(false, || format!("h7_weighting failed: {e}")),
        }
    }
    out
}

fn bounds_suite(seed: u64, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("bounds", seed, samples);
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let sizes = random_sizes(&mut rng, 1, 4);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_f64(&mut rng, g);
        let [a, b, g] = w.edge_densities();
        let t = w.triangle_density();
        out.check(
            t >= a + b + g - 2.0 - 1e-12 && t <= a.min(b).min(g) + 1e-12,
            || format!("density bounds violated on {}", w.graph.encode()),
        );
        let d = random_triple(&mut rng);
        if classify_region(d) == RegionLabel::R2 {
            out.check(tmin_closed_form(d) < cyclic_upper_bound(d), || {
                format!("cyclic bound not strict at {d:?}")
            });
        }
    }
    out
}

fn conjecture_suite(seed: u64, samples: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new("conjecture", seed, samples);
    let opts = MinimizeOptions {
        restarts: 6,
        seed,
        ..MinimizeOptions::default()
    };
    let report = conjecture_evidence(samples, seed, &opts);
    for s in &report.samples {
        out.check(!s.violation, || {
            format!(
                "nine-vertex minimum {} below closed form {} at {:?}",
                s.h9_min, s.closed_form, s.d
            )
        });
        out.check((s.h7p_min - s.closed_form).abs() <= 1e-5, || {
            format!(
                "seven-vertex variant {} differs from closed form {} at {:?}",
                s.h7p_min, s.closed_form, s.d
            )
        });
    }
    out
}
