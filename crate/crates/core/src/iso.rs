//! Strong-isomorphism canonicalization.
//!
//! A strong isomorphism maps vertex classes onto vertex classes, so it
//! preserves the multiset of class sizes. The canonical form is the
//! lexicographically smallest text encoding over all admissible
//! relabelings: classes are first sorted by size, then classes of equal
//! size may be permuted and vertices permuted within each class. At the
//! largest instance, (3,3,3), that is 6 * 6^3 = 1296 relabelings; instance
//! sizes make anything cleverer counterproductive.

use alloc::string::String;
use alloc::vec::Vec;

use crate::graph::{Class, TripartiteGraph, MAX_CLASS};

/// Canonical text encoding; equal forms hold exactly for strongly
/// isomorphic graphs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(pub String);

const PERMS3: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// All permutations of `0..n` in lexicographic order (n <= MAX_CLASS).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        out.push(idx.clone());
        // next_permutation
        let mut i = n.wrapping_sub(1);
        while i > 0 && idx[i - 1] >= idx[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = n - 1;
        while idx[j] <= idx[i - 1] {
            j -= 1;
        }
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
    out
}

/// Key that orders exactly like the text encoding: header sizes, then the
/// three bit sections with the first character in the most significant bit.
type Key = ([usize; 3], [u128; 3]);

fn encode_key(g: &TripartiteGraph) -> Key {
    let sizes = g.sizes();
    let dims = [
        (sizes[0], sizes[1], Class::A, Class::B),
        (sizes[0], sizes[2], Class::A, Class::C),
        (sizes[1], sizes[2], Class::B, Class::C),
    ];
    let mut words = [0u128; 3];
    for (k, &(nr, nc, rc, cc)) in dims.iter().enumerate() {
        let mut w = 0u128;
        for i in 0..nr {
            for j in 0..nc {
                w <<= 1;
                if g.has_edge(
                    crate::graph::Vertex::new(rc, i),
                    crate::graph::Vertex::new(cc, j),
                ) {
                    w |= 1;
                }
            }
        }
        words[k] = w;
    }
    (sizes, words)
}

/// Class permutations that sort sizes ascending; only classes of equal size
/// may trade places beyond the fixed sort.
fn admissible_class_perms(sizes: [usize; 3]) -> Vec<[usize; 3]> {
    let mut sorted = sizes;
    sorted.sort_unstable();
    PERMS3
        .iter()
        .filter(|p| (0..3).all(|c| sizes[c] == sorted[p[c]]))
        .copied()
        .collect()
}

/// Canonical representative graph (classes sorted by size ascending).
pub fn canonical_graph(g: &TripartiteGraph) -> TripartiteGraph {
    let sizes = g.sizes();
    let class_perms = admissible_class_perms(sizes);
    let vertex_perms: [Vec<Vec<usize>>; 3] = [0, 1, 2].map(|c| permutations(sizes[c]));
    let mut best: Option<(Key, TripartiteGraph)> = None;
    for cp in &class_perms {
        for pa in &vertex_perms[0] {
            for pb in &vertex_perms[1] {
                for pc in &vertex_perms[2] {
                    let cand = g.relabel(*cp, [&pa[..], &pb[..], &pc[..]]);
                    let key = encode_key(&cand);
                    if best.as_ref().map_or(true, |(bk, _)| key < *bk) {
                        best = Some((key, cand));
                    }
                }
            }
        }
    }
    best.expect("at least the identity relabeling exists").1
}

/// Lexicographically smallest text encoding over admissible relabelings.
pub fn canonical_form(g: &TripartiteGraph) -> CanonicalForm {
    CanonicalForm(canonical_graph(g).encode())
}

pub fn are_strongly_isomorphic(g: &TripartiteGraph, h: &TripartiteGraph) -> bool {
    let (mut sg, mut sh) = (g.sizes(), h.sizes());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    canonical_graph(g) == canonical_graph(h)
}

/// Number of relabelings the canonicalizer considers for these sizes.
pub fn relabeling_count(sizes: [usize; 3]) -> usize {
    let fact = |n: usize| (1..=n).product::<usize>();
    debug_assert!(sizes.iter().all(|&s| s <= MAX_CLASS));
    admissible_class_perms(sizes).len() * sizes.iter().map(|&s| fact(s)).product::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    fn h6() -> TripartiteGraph {
        TripartiteGraph::parse("t[2,2,2]AB=1101;AC=1011;BC=1101").unwrap()
    }

    #[test]
    fn swap_within_class_preserves_form() {
        let g = h6();
        let swapped = g.relabel([0, 1, 2], [&[1, 0], &[0, 1], &[0, 1]]);
        assert_eq!(canonical_form(&g), canonical_form(&swapped));
        assert!(are_strongly_isomorphic(&g, &swapped));
    }

    #[test]
    fn h6_matches_other_matching_complement() {
        // Complement = matching {a1b2, a2c1, b1c2}.
        let mut comp = TripartiteGraph::new([2, 2, 2]).unwrap();
        comp.set_edge(Vertex::new(Class::A, 0), Vertex::new(Class::B, 1), true);
        comp.set_edge(Vertex::new(Class::A, 1), Vertex::new(Class::C, 0), true);
        comp.set_edge(Vertex::new(Class::B, 0), Vertex::new(Class::C, 1), true);
        let other = comp.complement();
        assert_eq!(canonical_form(&h6()), canonical_form(&other));
    }

    #[test]
    fn h6_differs_from_f6() {
        let f6 = TripartiteGraph::parse("t[2,2,2]AB=0111;AC=0110;BC=0110").unwrap();
        assert_ne!(canonical_form(&h6()), canonical_form(&f6));
        assert!(!are_strongly_isomorphic(&h6(), &f6));
    }

    #[test]
    fn size_multiset_mismatch_is_never_isomorphic() {
        let g = TripartiteGraph::complete([2, 2, 2]).unwrap();
        let h = TripartiteGraph::complete([2, 2, 3]).unwrap();
        assert!(!are_strongly_isomorphic(&g, &h));
    }

    #[test]
    fn class_order_is_not_an_obstruction() {
        // A (2,3,2) graph and its (2,2,3) relabeling canonicalize equally.
        let g = TripartiteGraph::parse("t[2,3,2]AB=111011;AC=1011;BC=110100").unwrap();
        let moved = g.relabel([0, 2, 1], [&[0, 1], &[0, 1, 2], &[0, 1]]);
        assert_eq!(moved.sizes(), [2, 2, 3]);
        assert_eq!(canonical_form(&g), canonical_form(&moved));
    }

    #[test]
    fn relabeling_counts() {
        assert_eq!(relabeling_count([3, 3, 3]), 6 * 6 * 6 * 6);
        assert_eq!(relabeling_count([2, 2, 2]), 6 * 8);
        assert_eq!(relabeling_count([2, 2, 3]), 2 * 2 * 2 * 6);
    }
}
