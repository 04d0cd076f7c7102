//! Exhaustive search for extremal vertex-minimal candidates.
//!
//! Every tripartite graph with class sizes in {2,3} is enumerated as a
//! packed bit code, run through the cheap elimination rules, and the
//! survivors are deduplicated by canonical form. The two special graphs
//! and the eight-graph replacement covering are then applied to a fixed
//! point on the (small) deduplicated set.
//!
//! The enumeration is chunked so a driver can fan chunks out to worker
//! threads; per-chunk outcomes merge deterministically, and the fixed
//! point itself is sequential.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::constructions::{make_named, GraphName};
use crate::elimination::{
    replace_family, replace_patterns, rule_collapse_class, rule_duplicate_full_neighborhood,
    rule_no_triangle, rule_opposite_class_3, rule_order_subset,
};
use crate::graph::{low_mask, TripartiteGraph};
use crate::iso::CanonicalForm;

/// The four size profiles covering {2,3}^3 up to class permutation.
pub const PROFILES: [[usize; 3]; 4] = [[2, 2, 2], [2, 2, 3], [2, 3, 3], [3, 3, 3]];

/// Bit lengths of the (AB, AC, BC) sections of the packed code.
pub fn section_bits(profile: [usize; 3]) -> [usize; 3] {
    let [a, b, c] = profile;
    [a * b, a * c, b * c]
}

pub fn code_count(profile: [usize; 3]) -> u64 {
    let [ab, ac, bc] = section_bits(profile);
    1u64 << (ab + ac + bc)
}

/// Decodes an integer code: AB occupies the low bits (row-major), then AC,
/// then BC. Increasing code order is the enumeration order.
pub fn graph_from_code(profile: [usize; 3], code: u64) -> TripartiteGraph {
    let [na, nb, nc] = profile;
    let mut ab = [0u16; 3];
    let mut ac = [0u16; 3];
    let mut bc = [0u16; 3];
    for i in 0..na {
        ab[i] = (code >> (i * nb)) as u16 & low_mask(nb);
    }
    let base = na * nb;
    for i in 0..na {
        ac[i] = (code >> (base + i * nc)) as u16 & low_mask(nc);
    }
    let base = base + na * nc;
    for i in 0..nb {
        bc[i] = (code >> (base + i * nc)) as u16 & low_mask(nc);
    }
    TripartiteGraph::from_rows(profile, &ab[..na], &ac[..na], &bc[..nb])
        .expect("profile sizes are valid")
}

/// Packs a graph back into its integer code.
pub fn code_of_graph(g: &TripartiteGraph) -> u64 {
    let [na, nb, nc] = g.sizes();
    let mut code = 0u64;
    let mut push = |bit: bool, pos: usize| {
        if bit {
            code |= 1 << pos;
        }
    };
    use crate::graph::{Class, Vertex};
    for i in 0..na {
        for j in 0..nb {
            push(
                g.has_edge(Vertex::new(Class::A, i), Vertex::new(Class::B, j)),
                i * nb + j,
            );
        }
    }
    let base = na * nb;
    for i in 0..na {
        for j in 0..nc {
            push(
                g.has_edge(Vertex::new(Class::A, i), Vertex::new(Class::C, j)),
                base + i * nc + j,
            );
        }
    }
    let base = base + na * nc;
    for i in 0..nb {
        for j in 0..nc {
            push(
                g.has_edge(Vertex::new(Class::B, i), Vertex::new(Class::C, j)),
                base + i * nc + j,
            );
        }
    }
    code
}

/// All graphs of a profile in increasing integer-encoding order.
pub fn enumerate_candidates(profile: [usize; 3]) -> impl Iterator<Item = TripartiteGraph> {
    (0..code_count(profile)).map(move |code| graph_from_code(profile, code))
}

pub const CHEAP_RULE_NAMES: [&str; 5] = [
    "no_triangle",
    "duplicate_neighborhood",
    "collapse_class",
    "opposite_class_three",
    "order_subset",
];

/// First cheap rule that eliminates `g`, if any, as an index into
/// `CHEAP_RULE_NAMES`.
pub fn cheap_rule_filter(g: &TripartiteGraph) -> Option<usize> {
    if rule_no_triangle(g) {
        Some(0)
    } else if rule_duplicate_full_neighborhood(g) {
        Some(1)
    } else if rule_collapse_class(g) {
        Some(2)
    } else if rule_opposite_class_3(g) {
        Some(3)
    } else if rule_order_subset(g) {
        Some(4)
    } else {
        None
    }
}

/// Precomputed bit-permutation tables realizing every admissible
/// relabeling of a profile; the canonical key of a code is the minimum of
/// its images. Key bit order matches the text encoding (first encoded
/// character in the most significant bit), so smaller key means
/// lexicographically smaller encoding.
pub struct Canonicalizer {
    profile: [usize; 3],
    len: usize,
    tables: Vec<Vec<u8>>,
}

fn permutations_of(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

impl Canonicalizer {
    pub fn new(profile: [usize; 3]) -> Canonicalizer {
        debug_assert!(profile.windows(2).all(|w| w[0] <= w[1]), "profile sorted");
        let [na, nb, nc] = profile;
        let len = na * nb + na * nc + nb * nc;
        let class_perms: Vec<[usize; 3]> = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ]
        .into_iter()
        .filter(|p| (0..3).all(|c| profile[p[c]] == profile[c]))
        .collect();
        let vperms: [Vec<Vec<usize>>; 3] = [0, 1, 2].map(|c| permutations_of(profile[c]));

        // Slot layout shared by codes and keys.
        let pair_of = |u: usize, v: usize| -> (usize, bool) {
            match (u, v) {
                (0, 1) => (0, false),
                (1, 0) => (0, true),
                (0, 2) => (1, false),
                (2, 0) => (1, true),
                (1, 2) => (2, false),
                (2, 1) => (2, true),
                _ => unreachable!(),
            }
        };
        let offsets = [0, na * nb, na * nb + na * nc];
        let cols = [nb, nc, nc];
        let pair_row_class = [0usize, 0, 1];
        let pair_col_class = [1usize, 2, 2];

        let mut tables = Vec::new();
        for cp in &class_perms {
            for pa in &vperms[0] {
                for pb in &vperms[1] {
                    for pc in &vperms[2] {
                        let vp: [&Vec<usize>; 3] = [pa, pb, pc];
                        let mut table = alloc::vec![0u8; len];
                        for k in 0..3usize {
                            let (rc, cc) = (pair_row_class[k], pair_col_class[k]);
                            let (nr, ncl) = (profile[rc], profile[cc]);
                            for i in 0..nr {
                                for j in 0..ncl {
                                    let s = offsets[k] + i * cols[k] + j;
                                    let (iu, iv) = (vp[rc][i], vp[cc][j]);
                                    let (cu, cv) = (cp[rc], cp[cc]);
                                    let (k2, transposed) = pair_of(cu, cv);
                                    let (ri, cj) = if transposed { (iv, iu) } else { (iu, iv) };
                                    let s2 = offsets[k2] + ri * cols[k2] + cj;
                                    table[s] = (len - 1 - s2) as u8;
                                }
                            }
                        }
                        tables.push(table);
                    }
                }
            }
        }
        Canonicalizer {
            profile,
            len,
            tables,
        }
    }

    pub fn profile(&self) -> [usize; 3] {
        self.profile
    }

    /// Minimum key over all relabelings.
    pub fn key(&self, code: u64) -> u64 {
        let mut best = u64::MAX;
        for table in &self.tables {
            let mut k = 0u64;
            let mut bits = code;
            while bits != 0 {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                k |= 1 << table[s];
            }
            if k < best {
                best = k;
            }
        }
        best
    }

    /// The canonical representative graph for a canonical key.
    pub fn graph_of_key(&self, key: u64) -> TripartiteGraph {
        let mut code = 0u64;
        for s in 0..self.len {
            if key >> (self.len - 1 - s) & 1 == 1 {
                code |= 1 << s;
            }
        }
        graph_from_code(self.profile, code)
    }
}

/// Canonical identity `(sorted profile, key)` of an arbitrary graph with
/// class sizes at most three.
pub fn canonical_id_with(
    canons: &mut BTreeMap<[usize; 3], Canonicalizer>,
    g: &TripartiteGraph,
) -> ([usize; 3], u64) {
    let sizes = g.sizes();
    let mut sorted = sizes;
    sorted.sort_unstable();
    // Any class ordering that sorts the sizes works; the canonicalizer
    // covers the rest.
    let mut perm = [0usize; 3];
    let mut used = [false; 3];
    for c in 0..3 {
        for slot in 0..3 {
            if !used[slot] && sorted[slot] == sizes[c] {
                perm[c] = slot;
                used[slot] = true;
                break;
            }
        }
    }
    let identity: [Vec<usize>; 3] = [0, 1, 2].map(|c| (0..sizes[c]).collect());
    let sorted_graph = g.relabel(perm, [&identity[0][..], &identity[1][..], &identity[2][..]]);
    let canon = canons
        .entry(sorted)
        .or_insert_with(|| Canonicalizer::new(sorted));
    (sorted, canon.key(code_of_graph(&sorted_graph)))
}

/// Outcome of scanning one code range of one profile.
#[derive(Clone, Debug, Default)]
pub struct ChunkOutcome {
    pub scanned: u64,
    pub eliminated: [u64; 5],
    /// canonical key -> smallest surviving representative code
    pub survivors: BTreeMap<u64, u64>,
}

impl ChunkOutcome {
    pub fn merge(mut self, other: ChunkOutcome) -> ChunkOutcome {
        self.scanned += other.scanned;
        for i in 0..5 {
            self.eliminated[i] += other.eliminated[i];
        }
        for (k, v) in other.survivors {
            self.survivors
                .entry(k)
                .and_modify(|cur| {
                    if v < *cur {
                        *cur = v;
                    }
                })
                .or_insert(v);
        }
        self
    }
}

/// Applies the cheap rules to `codes` of one profile and canonicalizes the
/// survivors.
pub fn scan_chunk(
    profile: [usize; 3],
    codes: core::ops::Range<u64>,
    canon: &Canonicalizer,
) -> ChunkOutcome {
    let mut out = ChunkOutcome::default();
    for code in codes {
        out.scanned += 1;
        let g = graph_from_code(profile, code);
        match cheap_rule_filter(&g) {
            Some(rule) => out.eliminated[rule] += 1,
            None => {
                let key = canon.key(code);
                out.survivors.entry(key).or_insert(code);
            }
        }
    }
    out
}

/// How the eight-graph covering drops candidates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rb8Semantics {
    /// Drop a candidate while a non-isomorphic member of one of its
    /// families is still a live candidate (the replacement reading; kept
    /// for comparison, does not reproduce the published survivor set).
    Replacement,
    /// Drop a candidate once an entire family is already known to be
    /// eliminated. Seeded by the two special graphs this cascades to
    /// exactly the published fourteen survivor classes, so it is the
    /// default.
    Contradiction,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub semantics: Rb8Semantics,
    /// Apply the two special-graph eliminations (normally on; exposed so
    /// exploration can inspect the pre-special candidate set).
    pub special_rules: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            semantics: Rb8Semantics::Contradiction,
            special_rules: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Survivor {
    pub profile: [usize; 3],
    pub canonical: CanonicalForm,
    pub graph: TripartiteGraph,
    /// Catalog graphs this survivor is strongly isomorphic to.
    pub names: Vec<&'static str>,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub profiles: Vec<[usize; 3]>,
    pub scanned: u64,
    pub eliminated: [u64; 5],
    /// Canonical classes left after the cheap rules.
    pub candidate_classes: usize,
    pub special_removed: usize,
    pub replace_removed: usize,
    pub survivors: Vec<Survivor>,
}

impl SearchReport {
    pub fn survivor_named(&self, name: GraphName) -> Option<&Survivor> {
        self.survivors
            .iter()
            .find(|s| s.names.contains(&name.as_str()))
    }
}

/// Locates the survivor matching a catalog graph; absence is an error.
pub fn identify_survivor(
    report: &SearchReport,
    name: GraphName,
) -> Result<&Survivor, crate::graph::GraphError> {
    report.survivor_named(name).ok_or_else(|| {
        crate::graph::GraphError::UnknownName(alloc::string::String::from(name.as_str()))
    })
}

/// Second phase: special graphs, then the covering fixed point, then the
/// final report. `per_profile` holds the merged scan outcome per profile.
pub fn finish_search(
    profiles: &[[usize; 3]],
    per_profile: Vec<ChunkOutcome>,
    opts: SearchOptions,
) -> SearchReport {
    let mut canons: BTreeMap<[usize; 3], Canonicalizer> = BTreeMap::new();
    let mut scanned = 0;
    let mut eliminated = [0u64; 5];
    // Live candidate set keyed by canonical identity.
    let mut live: BTreeSet<([usize; 3], u64)> = BTreeSet::new();
    for (profile, outcome) in profiles.iter().zip(per_profile.iter()) {
        scanned += outcome.scanned;
        for i in 0..5 {
            eliminated[i] += outcome.eliminated[i];
        }
        for &key in outcome.survivors.keys() {
            live.insert((*profile, key));
        }
    }
    let candidate_classes = live.len();

    let mut special_removed = 0;
    if opts.special_rules {
        for name in [GraphName::F7, GraphName::F9] {
            let id = canonical_id_with(&mut canons, &make_named(name).graph);
            if live.remove(&id) {
                special_removed += 1;
            }
        }
    }

    // Covering fixed point, deterministic scan order.
    let mut replace_removed = 0;
    loop {
        let snapshot: Vec<([usize; 3], u64)> = live.iter().copied().collect();
        let mut changed = false;
        for id in snapshot {
            if !live.contains(&id) {
                continue;
            }
            let canon = canons
                .entry(id.0)
                .or_insert_with(|| Canonicalizer::new(id.0));
            let g = canon.graph_of_key(id.1);
            let fire = match opts.semantics {
                Rb8Semantics::Replacement => {
                    let mut fired = false;
                    'pattern: for pat in replace_patterns(&g) {
                        for h in replace_family(&g, &pat) {
                            let hid = canonical_id_with(&mut canons, &h);
                            if hid != id && live.contains(&hid) {
                                fired = true;
                                break 'pattern;
                            }
                        }
                    }
                    fired
                }
                Rb8Semantics::Contradiction => {
                    let mut fired = false;
                    'pattern2: for pat in replace_patterns(&g) {
                        let mut all_gone = true;
                        for h in replace_family(&g, &pat) {
                            let hid = canonical_id_with(&mut canons, &h);
                            if live.contains(&hid) {
                                all_gone = false;
                                break;
                            }
                        }
                        if all_gone {
                            fired = true;
                            break 'pattern2;
                        }
                    }
                    fired
                }
            };
            if fire {
                live.remove(&id);
                replace_removed += 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    // Name the survivors against the catalog.
    let catalog_ids: Vec<(&'static str, ([usize; 3], u64))> = GraphName::ALL
        .iter()
        .map(|&n| {
            (
                n.as_str(),
                canonical_id_with(&mut canons, &make_named(n).graph),
            )
        })
        .collect();
    let survivors = live
        .iter()
        .map(|&(profile, key)| {
            let canon = canons
                .entry(profile)
                .or_insert_with(|| Canonicalizer::new(profile));
            let graph = canon.graph_of_key(key);
            let names = catalog_ids
                .iter()
                .filter(|(_, cid)| *cid == (profile, key))
                .map(|(n, _)| *n)
                .collect();
            Survivor {
                profile,
                canonical: CanonicalForm(graph.encode()),
                graph,
                names,
            }
        })
        .collect();

    SearchReport {
        profiles: profiles.to_vec(),
        scanned,
        eliminated,
        candidate_classes,
        special_removed,
        replace_removed,
        survivors,
    }
}

/// Serial search over the given profiles (the CLI provides a parallel
/// driver with the same per-chunk pieces).
pub fn run_search_profiles(profiles: &[[usize; 3]], opts: SearchOptions) -> SearchReport {
    let per_profile: Vec<ChunkOutcome> = profiles
        .iter()
        .map(|&p| {
            let canon = Canonicalizer::new(p);
            scan_chunk(p, 0..code_count(p), &canon)
        })
        .collect();
    finish_search(profiles, per_profile, opts)
}

/// Full serial search over all profiles.
pub fn run_search(opts: SearchOptions) -> SearchReport {
    run_search_profiles(&PROFILES, opts)
}

/// Post-hoc verification that every survivor still defeats every rule.
pub fn verify_survivors(report: &SearchReport) -> bool {
    let mut canons: BTreeMap<[usize; 3], Canonicalizer> = BTreeMap::new();
    let live: BTreeSet<([usize; 3], u64)> = report
        .survivors
        .iter()
        .map(|s| canonical_id_with(&mut canons, &s.graph))
        .collect();
    report.survivors.iter().all(|s| {
        let g = &s.graph;
        let sizes_ok = g.sizes().iter().all(|&n| (2..=3).contains(&n));
        let cheap_ok = cheap_rule_filter(g).is_none();
        let special_ok = !crate::elimination::rule_special_graphs(g);
        let rb8_ok = !crate::elimination::rule_replace_by_8(g, |h| {
            live.contains(&canonical_id_with(&mut canons, h))
        });
        sizes_ok && cheap_ok && special_ok && rb8_ok
    })
}
