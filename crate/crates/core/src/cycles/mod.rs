//! Short cycles through the identity and their canonical label sequences.
//!
//! A cycle is written as the flip indices met along it. The same cycle can
//! be read from any of its vertices and in either direction; the canonical
//! form is the lexicographically largest of those `2L` readings. By vertex
//! transitivity every cycle shape occurs through the identity, so the
//! census only looks there.

mod census;
pub mod families;

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use census::{
    match_form, verify_classification, CensusReport, FamilyMatch, FamilyTally, FormTally, UnmatchedForm,
    UnrealizedInstance, MAX_CLASSIFIED_LENGTH, REPORT_FORMAT_VERSION,
};

use crate::graph::{GraphError, GraphKind, Kind, Vertex};
use crate::perm::{Perm, Rank, SignedPerm};

pub const MIN_LENGTH: usize = 3;
pub const MAX_LENGTH: usize = 12;

/// Upper bound on DFS nodes before an enumeration is refused.
pub const NODE_BUDGET: u64 = 2_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("cycle length {0} is outside {MIN_LENGTH}..={MAX_LENGTH}")]
    Length(usize),
    #[error("no classification of {length}-cycles is known for the {kind} graph")]
    UnsupportedLength { kind: Kind, length: usize },
    #[error("enumerating {length}-cycles of {graph} could visit about {estimate} nodes (budget {NODE_BUDGET})")]
    Infeasible { graph: GraphKind, length: usize, estimate: u64 },
    #[error("{graph} is too large to rank its vertices")]
    TooLarge { graph: GraphKind },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Flip indices along a closed walk, in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CycleLabel(pub Vec<usize>);

/// A [`CycleLabel`] that is lexicographically maximal among all rotations
/// of itself and of its reversal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CanonicalForm(Vec<usize>);

impl CanonicalForm {
    pub fn labels(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| format!("r{i}")).collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn canonicalize(c: &CycleLabel) -> CanonicalForm {
    canonical_labels(&c.0)
}

pub(crate) fn canonical_labels(labels: &[usize]) -> CanonicalForm {
    let len = labels.len();
    let reversed: Vec<usize> = labels.iter().rev().copied().collect();
    let mut best: Vec<usize> = labels.to_vec();
    for seq in [labels, &reversed[..]] {
        for start in 0..len {
            let rotated = seq[start..].iter().chain(&seq[..start]);
            if rotated.clone().cmp(best.iter()) == std::cmp::Ordering::Greater {
                best = rotated.copied().collect();
            }
        }
    }
    CanonicalForm(best)
}

/// A simple cycle through the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cycle {
    pub labels: CycleLabel,
    /// Vertex ranks in traversal order, starting with the identity.
    pub vertices: Vec<Rank>,
    pub canonical: CanonicalForm,
}

fn estimate_nodes(g: GraphKind, length: usize) -> u64 {
    let d = g.degree() as u64;
    (0..length.saturating_sub(2)).fold(d, |acc, _| acc.saturating_mul(d.saturating_sub(1)))
}

/// Every simple cycle of exactly `length` vertices through the identity,
/// once each, sorted by canonical form and then by vertex ranks.
pub fn enumerate_cycles(g: GraphKind, length: usize) -> Result<Vec<Cycle>, CensusError> {
    if !(MIN_LENGTH..=MAX_LENGTH).contains(&length) {
        return Err(CensusError::Length(length));
    }
    if g.order().is_none() || g.n > crate::perm::MAX_SIGNED_RANK_N {
        return Err(CensusError::TooLarge { graph: g });
    }
    let estimate = estimate_nodes(g, length);
    if estimate > NODE_BUDGET {
        return Err(CensusError::Infeasible { graph: g, length, estimate });
    }
    let mut cycles = match g.kind {
        Kind::Plain => cycles_of::<Perm>(g.n, length),
        Kind::Burnt => cycles_of::<SignedPerm>(g.n, length),
    };
    cycles.sort_by(|a, b| (&a.canonical, &a.vertices).cmp(&(&b.canonical, &b.vertices)));

    // Each cycle has one traversal per direction; keep one per vertex set.
    let mut seen = BTreeSet::new();
    cycles.retain(|c| {
        let mut key = c.vertices.clone();
        key.sort_unstable();
        seen.insert((c.canonical.clone(), key))
    });
    Ok(cycles)
}

fn cycles_of<V: Vertex>(n: usize, length: usize) -> Vec<Cycle> {
    let identity = V::identity(n);
    let flips: Vec<usize> = identity.graph().flips().collect();
    flips
        .par_iter()
        .flat_map_iter(|&first| {
            let mut out = Vec::new();
            let mut walk = Walk {
                flips: &flips,
                length,
                path: vec![identity.clone(), identity.flip(first)],
                labels: vec![first],
                out: &mut out,
            };
            walk.extend();
            out
        })
        .collect()
}

struct Walk<'a, V> {
    flips: &'a [usize],
    length: usize,
    path: Vec<V>,
    labels: Vec<usize>,
    out: &'a mut Vec<Cycle>,
}

impl<V: Vertex> Walk<'_, V> {
    fn extend(&mut self) {
        let last = self.path.last().expect("walk starts at the identity").clone();
        let previous = *self.labels.last().expect("walk has a first flip");
        for &i in self.flips {
            if i == previous {
                continue;
            }
            let next = last.flip(i);
            if self.path.len() == self.length {
                if next == self.path[0] {
                    self.close(i);
                }
                continue;
            }
            if self.path.contains(&next) {
                continue;
            }
            self.path.push(next);
            self.labels.push(i);
            self.extend();
            self.labels.pop();
            self.path.pop();
        }
    }

    fn close(&mut self, closing: usize) {
        let ranks: Vec<Rank> = self.path.iter().map(Vertex::vertex_rank).collect();
        // The reverse traversal is found too; keep the one whose second
        // vertex has the smaller rank.
        if ranks[1] > ranks[self.length - 1] {
            return;
        }
        let mut labels = self.labels.clone();
        labels.push(closing);
        let canonical = canonical_labels(&labels);
        self.out.push(Cycle { labels: CycleLabel(labels), vertices: ranks, canonical });
    }
}

/// Applies `labels` from the identity and checks that the walk visits
/// `labels.len()` distinct vertices and ends where it started.
pub fn closes_simply(g: GraphKind, labels: &[usize]) -> bool {
    if labels.iter().any(|i| !g.flips().contains(i)) {
        return false;
    }
    fn check<V: Vertex>(n: usize, labels: &[usize]) -> bool {
        let mut v = V::identity(n);
        let mut seen = vec![v.clone()];
        for &i in labels {
            v = v.flip(i);
            seen.push(v.clone());
        }
        let end = seen.pop();
        let distinct: BTreeSet<&V> = seen.iter().collect();
        end.as_ref() == seen.first() && distinct.len() == labels.len()
    }
    match g.kind {
        Kind::Plain => check::<Perm>(g.n, labels),
        Kind::Burnt => check::<SignedPerm>(g.n, labels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(v: &[usize]) -> CycleLabel {
        CycleLabel(v.to_vec())
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&label(&[2, 3, 2, 3, 2, 3])).labels(), &[3, 2, 3, 2, 3, 2]);
        assert_eq!(canonicalize(&label(&[3, 2, 3, 2, 3, 2])).labels(), &[3, 2, 3, 2, 3, 2]);
        assert_eq!(canonicalize(&label(&[4, 1, 4, 1, 4, 1, 4, 1])).labels(), &[4, 1, 4, 1, 4, 1, 4, 1]);
        // Only the reversal reaches the maximum here.
        assert_eq!(canonicalize(&label(&[1, 3, 2])).labels(), &[3, 2, 1]);
        assert_eq!(canonicalize(&label(&[1, 2, 3])).labels(), &[3, 2, 1]);
    }

    #[test]
    fn enumeration_examples() {
        let p3 = GraphKind::plain(3).unwrap();
        let six = enumerate_cycles(p3, 6).unwrap();
        assert_eq!(six.len(), 1);
        assert_eq!(six[0].canonical.labels(), &[3, 2, 3, 2, 3, 2]);
        assert!(enumerate_cycles(p3, 7).unwrap().is_empty());

        let b2 = GraphKind::burnt(2).unwrap();
        let eight = enumerate_cycles(b2, 8).unwrap();
        assert_eq!(eight.len(), 1);
        assert_eq!(eight[0].canonical.labels(), &[2, 1, 2, 1, 2, 1, 2, 1]);
    }

    #[test]
    fn girths() {
        for n in 3..=5 {
            let g = GraphKind::plain(n).unwrap();
            for len in 3..6 {
                assert!(enumerate_cycles(g, len).unwrap().is_empty(), "P_{n} length {len}");
            }
        }
        for n in 2..=4 {
            let g = GraphKind::burnt(n).unwrap();
            for len in 3..8 {
                assert!(enumerate_cycles(g, len).unwrap().is_empty(), "BP_{n} length {len}");
            }
        }
    }

    #[test]
    fn cycles_close_and_are_distinct() {
        let g = GraphKind::plain(5).unwrap();
        let cycles = enumerate_cycles(g, 8).unwrap();
        assert!(!cycles.is_empty());
        let mut sets = BTreeSet::new();
        for c in &cycles {
            assert!(closes_simply(g, &c.labels.0));
            assert_eq!(c.vertices[0], 0);
            let mut key = c.vertices.clone();
            key.sort_unstable();
            assert!(sets.insert(key));
        }
    }

    #[test]
    fn rejects_bad_lengths_and_huge_graphs() {
        let g = GraphKind::plain(4).unwrap();
        assert_eq!(enumerate_cycles(g, 2), Err(CensusError::Length(2)));
        assert_eq!(enumerate_cycles(g, 13), Err(CensusError::Length(13)));
        let big = GraphKind::plain(16).unwrap();
        assert!(matches!(enumerate_cycles(big, 12), Err(CensusError::Infeasible { .. })));
    }

    #[test]
    fn closes_simply_rejects_non_cycles() {
        let g = GraphKind::plain(4).unwrap();
        assert!(closes_simply(g, &[3, 2, 3, 2, 3, 2]));
        assert!(!closes_simply(g, &[3, 2, 3, 2]));
        assert!(!closes_simply(g, &[3, 2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 2]));
        assert!(!closes_simply(g, &[1, 2]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn canonical_form_is_invariant(labels in prop::collection::vec(1usize..6, 3..10), shift in 0usize..10, flip: bool) {
                let c = canonical_labels(&labels);
                let mut moved = labels.clone();
                let len = moved.len();
                moved.rotate_left(shift % len);
                if flip {
                    moved.reverse();
                }
                prop_assert_eq!(canonical_labels(&moved), c.clone());
                prop_assert_eq!(canonical_labels(c.labels()), c.clone());
                prop_assert!(c.labels() >= &labels[..]);
            }
        }
    }
}
