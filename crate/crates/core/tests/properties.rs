//! Property batches: density bounds, transform preservation in exact
//! arithmetic, region invariants, and canonicalization invariance.

use proptest::prelude::*;

use tripartite_core::graph::{Class, TripartiteGraph, Vertex};
use tripartite_core::iso::canonical_form;
use tripartite_core::rat::Rat;
use tripartite_core::regions::{
    classify_region, cyclic_upper_bound, discriminant, in_region_r, tmin_closed_form, RegionLabel,
};
use tripartite_core::rng::SplitMix64;
use tripartite_core::sample::{
    random_edge_map_rat, random_graph, random_sizes, random_sparse_edge_map_rat, random_triple,
    random_triple_in, random_weighting_f64, random_weighting_rat,
};
use tripartite_core::transforms::{
    eliminate_partial_edges, merge, partial_degree, reduce, split, z_potential,
};
use tripartite_core::weighted::{DensityTriple, DoublyWeightedGraph, WeightedGraph};

fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b}");
}

#[test]
fn triangle_density_bounds_hold_everywhere() {
    // t >= alpha + beta + gamma - 2 and t <= min(alpha, beta, gamma).
    let mut rng = SplitMix64::new(0xB0);
    for _ in 0..10_000 {
        let sizes = random_sizes(&mut rng, 1, 4);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_f64(&mut rng, g);
        let [a, b, c] = w.edge_densities();
        let t = w.triangle_density();
        assert!(t >= a + b + c - 2.0 - 1e-12);
        assert!(t <= a.min(b).min(c) + 1e-12);
    }
}

#[test]
fn split_preserves_densities_exactly() {
    let mut rng = SplitMix64::new(0x51);
    let mut done = 0;
    while done < 1000 {
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_rat(&mut rng, g, 12);
        let d = random_edge_map_rat(&mut rng, w, 6);
        let partial = d.partial_edges();
        if partial.is_empty() {
            continue;
        }
        let (x, y) = partial[rng.next_below(partial.len() as u64) as usize];
        // Either endpoint may be split; both must preserve densities.
        let (x, y) = if rng.next_bool() { (x, y) } else { (y, x) };
        let s = split(&d, x, y).unwrap();
        assert_eq!(s.dtri_densities(), d.dtri_densities());
        done += 1;
    }
}

#[test]
fn merge_preserves_densities_exactly() {
    let mut rng = SplitMix64::new(0x52);
    let mut done = 0;
    while done < 1000 {
        let sizes = random_sizes(&mut rng, 2, 3);
        let mut g = random_graph(&mut rng, sizes);
        let cls = Class::ALL[rng.next_below(3) as usize];
        let (o1, o2) = cls.others();
        let witness = if rng.next_bool() { o1 } else { o2 };
        tripartite_core::sample::plant_merge_pair(&mut g, cls, witness);
        let w = random_weighting_rat(&mut rng, g, 12);
        if (w.weight(Vertex::new(cls, 0)) + w.weight(Vertex::new(cls, 1))).is_zero() {
            continue;
        }
        // Edge maps stay one toward the witness class; randomize the rest.
        let mut d = DoublyWeightedGraph::from_weighted(w);
        for (x, y) in d.base.graph.edges() {
            let toward_witness =
                (x.class == cls && y.class == witness) || (y.class == cls && x.class == witness);
            if !toward_witness {
                let k = 1 + rng.next_below(6) as i128;
                d.set_p(x, y, Rat::new(k, 6));
            }
        }
        let m = merge(&d, Vertex::new(cls, 0), Vertex::new(cls, 1)).unwrap();
        assert_eq!(m.dtri_densities(), d.dtri_densities());
        done += 1;
    }
}

#[test]
fn reduce_preserves_edges_and_never_increases_triangles() {
    let mut rng = SplitMix64::new(0x53);
    for _ in 0..1000 {
        let cls = Class::ALL[rng.next_below(3) as usize];
        let mut sizes = random_sizes(&mut rng, 1, 3);
        sizes[cls.index()] = 4 + rng.next_below(3) as usize;
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_rat(&mut rng, g, 8);
        let r = reduce(&w, cls).unwrap();
        assert!(r.graph.size(cls) <= 3);
        assert_eq!(r.edge_densities(), w.edge_densities());
        assert!(r.triangle_density() <= w.triangle_density());
        assert!(r.weights[cls.index()].iter().all(|x| !x.is_zero()));
    }
}

#[test]
fn reduce_in_floats_matches_tolerances() {
    let mut rng = SplitMix64::new(0x54);
    for _ in 0..200 {
        let cls = Class::ALL[rng.next_below(3) as usize];
        let mut sizes = random_sizes(&mut rng, 1, 3);
        sizes[cls.index()] = 4 + rng.next_below(3) as usize;
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_f64(&mut rng, g);
        let r = reduce(&w, cls).unwrap();
        let (before, after) = (w.edge_densities(), r.edge_densities());
        for i in 0..3 {
            assert_close(before[i], after[i], 1e-12, "edge density");
        }
        assert!(r.triangle_density() <= w.triangle_density() + 1e-12);
    }
}

#[test]
fn eliminate_partial_edges_round_trip() {
    let mut rng = SplitMix64::new(0x55);
    for _ in 0..500 {
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_rat(&mut rng, g, 10);
        // Plain embedding with p = 1 comes back with identical densities
        // and an unchanged graph.
        let d = DoublyWeightedGraph::from_weighted(w.clone());
        let back = eliminate_partial_edges(&d);
        assert_eq!(back, w);

        let d = random_sparse_edge_map_rat(&mut rng, w, 5, 2);
        let (dens, tri) = d.dtri_densities();
        let flat = eliminate_partial_edges(&d);
        assert_eq!(flat.edge_densities(), dens);
        assert_eq!(flat.triangle_density(), tri);
        assert!(flat.validate().is_ok());
    }
}

#[test]
fn z_potential_strictly_decreases_per_split() {
    let mut rng = SplitMix64::new(0x56);
    let mut done = 0;
    while done < 300 {
        let sizes = random_sizes(&mut rng, 2, 3);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_rat(&mut rng, g, 10);
        let mut d = random_sparse_edge_map_rat(&mut rng, w, 4, 2);
        // Drive the A-phase by hand and watch the potential.
        loop {
            let next = d.partial_edges().into_iter().find_map(|(u, v)| {
                if u.class == Class::A {
                    Some((u, v))
                } else if v.class == Class::A {
                    Some((v, u))
                } else {
                    None
                }
            });
            let Some((x, y)) = next else { break };
            let before = z_potential(&d, Class::A);
            let expected_drop = 3u64.pow(partial_degree(&d, x) - 1);
            d = split(&d, x, y).unwrap();
            let after = z_potential(&d, Class::A);
            assert_eq!(before - after, expected_drop);
            done += 1;
        }
    }
}

#[test]
fn region_partition_and_bounds() {
    let mut rng = SplitMix64::new(0x57);
    for _ in 0..10_000 {
        let d = random_triple(&mut rng);
        // Exactly one label.
        let label = classify_region(d);
        match label {
            RegionLabel::OutsideR => assert!(!in_region_r(d)),
            RegionLabel::R1 => assert!(in_region_r(d) && discriminant(d) >= 0.0),
            RegionLabel::R2 => assert!(in_region_r(d) && discriminant(d) < 0.0),
        }
    }
    for _ in 0..10_000 {
        let d = random_triple_in(&mut rng, RegionLabel::R2);
        let t = tmin_closed_form(d);
        // Strictly below the cyclic bound and strictly above the linear
        // expression when the discriminant is negative.
        assert!(t < cyclic_upper_bound(d));
        assert!(t > d.alpha + d.beta + d.gamma - 2.0 + 1e-12);
    }
}

#[test]
fn closed_form_symmetric_and_monotone() {
    let mut rng = SplitMix64::new(0x58);
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for _ in 0..2000 {
        let d = random_triple(&mut rng);
        let reference = tmin_closed_form(d);
        let v = d.as_array();
        for p in perms {
            let q = DensityTriple::new(v[p[0]], v[p[1]], v[p[2]]);
            assert_close(
                tmin_closed_form(q),
                reference,
                1e-13,
                "permutation symmetry",
            );
        }
    }
    // Swapping which component plays the minimum can only increase the
    // square-root expression, consistently with the ordering test.
    for _ in 0..10_000 {
        let d = random_triple_in(&mut rng, RegionLabel::R2);
        let (a, b, g) = (d.alpha, d.beta, d.gamma);
        let with_gamma = 2.0 * (a * b * (1.0 - g)).sqrt() + 2.0 * g - 2.0;
        let with_beta = 2.0 * (a * g * (1.0 - b)).sqrt() + 2.0 * b - 2.0;
        if b >= g {
            assert!(with_beta >= with_gamma - 1e-13);
        } else {
            assert!(with_beta <= with_gamma + 1e-13);
        }
    }
}

#[test]
fn g14_complement_identity() {
    use tripartite_core::constructions::{make_named, GraphName};
    let g14 = make_named(GraphName::G14).graph;
    let comp = g14.complement();
    let mut rng = SplitMix64::new(0x59);
    let half = Rat::new(1, 2);
    let mut done = 0;
    while done < 1000 {
        let w = random_weighting_rat(&mut rng, g14.clone(), 9);
        if w.weights.iter().flatten().any(|x| *x > half) {
            continue;
        }
        let mapped: [Vec<Rat>; 3] = [0, 1, 2].map(|c| {
            w.weights[c]
                .iter()
                .map(|x| Rat::ONE - Rat::new(2, 1) * *x)
                .collect()
        });
        let wc = WeightedGraph::new(comp.clone(), mapped).unwrap();
        let (d, dc) = (w.edge_densities(), wc.edge_densities());
        for i in 0..3 {
            assert_eq!(dc[i], Rat::new(3, 1) - Rat::new(4, 1) * d[i]);
        }
        assert_eq!(
            wc.triangle_density(),
            Rat::ONE - Rat::new(4, 1) * w.triangle_density()
        );
        done += 1;
    }
}

#[test]
fn h6_h7_weightings_reproduce_triples() {
    let mut rng = SplitMix64::new(0x5A);
    for _ in 0..2000 {
        let d = random_triple_in(&mut rng, RegionLabel::R1);
        let w = tripartite_core::constructions::h6_weighting(d).unwrap();
        assert!(w.validate().is_ok());
        let got = w.density_triple();
        assert_close(got.alpha, d.alpha, 1e-12, "alpha");
        assert_close(got.beta, d.beta, 1e-12, "beta");
        assert_close(got.gamma, d.gamma, 1e-12, "gamma");
        assert_close(
            w.triangle_density(),
            d.alpha + d.beta + d.gamma - 2.0,
            1e-12,
            "triangle density",
        );
    }
    for _ in 0..2000 {
        let d = random_triple_in(&mut rng, RegionLabel::R2);
        let w = tripartite_core::constructions::h7_weighting(d).unwrap();
        assert!(w.validate().is_ok());
        for c in 0..3 {
            for &x in &w.weights[c] {
                assert!(x > 0.0 && x < 1.0, "weight {x} not interior");
            }
        }
        let got = w.density_triple();
        assert_close(got.alpha, d.alpha, 1e-12, "alpha");
        assert_close(got.beta, d.beta, 1e-12, "beta");
        assert_close(got.gamma, d.gamma, 1e-12, "gamma");
        let t = w.triangle_density();
        assert_close(t, tmin_closed_form(d), 1e-12, "triangle density");
        assert!(t < cyclic_upper_bound(d));
    }
}

proptest! {
    #[test]
    fn encoding_round_trips(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let sizes = random_sizes(&mut rng, 1, 9.min(4));
        let g = random_graph(&mut rng, sizes);
        let enc = g.encode();
        prop_assert_eq!(TripartiteGraph::parse(&enc).unwrap(), g);
    }

    #[test]
    fn complement_is_involution(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let sizes = random_sizes(&mut rng, 1, 4);
        let g = random_graph(&mut rng, sizes);
        prop_assert_eq!(g.complement().complement(), g);
    }

    #[test]
    fn dtri_with_unit_p_equals_plain(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        let w = random_weighting_rat(&mut rng, g, 10);
        let (dens, tri) = DoublyWeightedGraph::from_weighted(w.clone()).dtri_densities();
        prop_assert_eq!(dens, w.edge_densities());
        prop_assert_eq!(tri, w.triangle_density());
    }

    #[test]
    fn blow_up_preserves_densities(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        // Denominators divide 4, so blowing up by 4 is always integral.
        let w = random_weighting_rat(&mut rng, g, 4);
        let scale = 4;
        prop_assume!(w.weights.iter().flatten().all(|x| (Rat::new(scale, 1) * *x).is_integer()));
        let big = w.blow_up(scale as usize).unwrap();
        let u = WeightedGraph::<Rat>::uniform(big);
        prop_assert_eq!(u.edge_densities(), w.edge_densities());
        prop_assert_eq!(u.triangle_density(), w.triangle_density());
    }
}

#[test]
fn canonical_form_invariant_under_relabelings() {
    let mut rng = SplitMix64::new(0x5B);
    let perms6: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    for _ in 0..100 {
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        let reference = canonical_form(&g);
        for _ in 0..100 {
            let admissible: Vec<[usize; 3]> = perms6
                .iter()
                .filter(|p| (0..3).all(|c| sizes[p[c]] == sizes[c]))
                .copied()
                .collect();
            let cp = admissible[rng.next_below(admissible.len() as u64) as usize];
            let vp: [Vec<usize>; 3] = [0, 1, 2].map(|c| {
                let mut idx: Vec<usize> = (0..sizes[c]).collect();
                for i in (1..idx.len()).rev() {
                    let j = rng.next_below((i + 1) as u64) as usize;
                    idx.swap(i, j);
                }
                idx
            });
            let relabeled = g.relabel(cp, [&vp[0][..], &vp[1][..], &vp[2][..]]);
            assert_eq!(canonical_form(&relabeled), reference);
        }
    }
}

#[test]
fn canonicalize_commutes_with_complement() {
    let mut rng = SplitMix64::new(0x5C);
    for _ in 0..300 {
        let sizes = random_sizes(&mut rng, 1, 3);
        let g = random_graph(&mut rng, sizes);
        let via_graph = canonical_form(&g.complement());
        let canon = tripartite_core::iso::canonical_graph(&g);
        let via_canon = canonical_form(&canon.complement());
        assert_eq!(via_graph, via_canon);
    }
}
