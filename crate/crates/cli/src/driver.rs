//! Parallel search driver and the machine-readable report.
//!
//! The enumeration range of each profile is partitioned into independent
//! chunks mapped across the worker pool; per-chunk outcomes merge with a
//! commutative reduce, so the report is identical for any chunking or
//! thread count. The isomorphism and covering fixed point runs
//! single-threaded on the merged candidate set.

use rayon::prelude::*;
use serde::Serialize;

use tripartite_core::constructions::complement_edge_names;
use tripartite_core::search::{
    code_count, finish_search, scan_chunk, Canonicalizer, ChunkOutcome, SearchOptions,
    SearchReport, CHEAP_RULE_NAMES, PROFILES,
};

const CHUNK_CODES: u64 = 1 << 20;

pub fn run_search_parallel(profiles: &[[usize; 3]], opts: SearchOptions) -> SearchReport {
    let per_profile: Vec<ChunkOutcome> = profiles
        .iter()
        .map(|&profile| {
            let canon = Canonicalizer::new(profile);
            let total = code_count(profile);
            let chunks: Vec<(u64, u64)> = (0..total)
                .step_by(CHUNK_CODES as usize)
                .map(|start| (start, (start + CHUNK_CODES).min(total)))
                .collect();
            chunks
                .into_par_iter()
                .map(|(lo, hi)| scan_chunk(profile, lo..hi, &canon))
                .reduce(ChunkOutcome::default, |a, b| a.merge(b))
        })
        .collect();
    finish_search(profiles, per_profile, opts)
}

#[derive(Serialize)]
pub struct SurvivorRecord {
    pub index: usize,
    pub profile: [usize; 3],
    pub encoding: String,
    pub complement_edges: Vec<String>,
    pub triangles: usize,
    pub names: Vec<&'static str>,
}

#[derive(Serialize)]
pub struct EliminationTallies {
    pub no_triangle: u64,
    pub duplicate_neighborhood: u64,
    pub collapse_class: u64,
    pub opposite_class_three: u64,
    pub order_subset: u64,
}

#[derive(Serialize)]
pub struct SearchReportDoc {
    pub format: u32,
    pub profiles: Vec<[usize; 3]>,
    pub scanned: u64,
    pub eliminated: EliminationTallies,
    pub candidate_classes: usize,
    pub special_graphs_removed: usize,
    pub replace_by_eight_removed: usize,
    pub survivor_count: usize,
    pub survivors: Vec<SurvivorRecord>,
}

pub fn report_doc(report: &SearchReport) -> SearchReportDoc {
    debug_assert_eq!(CHEAP_RULE_NAMES[0], "no_triangle");
    SearchReportDoc {
        format: 1,
        profiles: report.profiles.clone(),
        scanned: report.scanned,
        eliminated: EliminationTallies {
            no_triangle: report.eliminated[0],
            duplicate_neighborhood: report.eliminated[1],
            collapse_class: report.eliminated[2],
            opposite_class_three: report.eliminated[3],
            order_subset: report.eliminated[4],
        },
        candidate_classes: report.candidate_classes,
        special_graphs_removed: report.special_removed,
        replace_by_eight_removed: report.replace_removed,
        survivor_count: report.survivors.len(),
        survivors: report
            .survivors
            .iter()
            .enumerate()
            .map(|(index, s)| SurvivorRecord {
                index,
                profile: s.profile,
                encoding: s.canonical.0.clone(),
                complement_edges: complement_edge_names(&s.graph),
                triangles: s.graph.triangles().len(),
                names: s.names.clone(),
            })
            .collect(),
    }
}

/// Parses `2,2,3`-style profile arguments; sizes are sorted ascending
/// since other orderings are reachable by class permutation.
pub fn parse_profile(text: &str) -> Result<[usize; 3], String> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| format!("bad profile `{text}`: expected three integers"))?;
    if parts.len() != 3 {
        return Err(format!("bad profile `{text}`: expected three integers"));
    }
    let mut profile = [parts[0], parts[1], parts[2]];
    profile.sort_unstable();
    if !PROFILES.contains(&profile) {
        return Err(format!("profile `{text}` outside the searched sizes 2..3"));
    }
    Ok(profile)
}
