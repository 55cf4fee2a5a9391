//! Matching enumerated cycles against the family table.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::families::{families_for, Family, Params};
use super::{canonical_labels, closes_simply, enumerate_cycles, CanonicalForm, CensusError, MIN_LENGTH};
use crate::graph::{GraphKind, Kind};

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// Longest cycles with a known classification.
pub const MAX_CLASSIFIED_LENGTH: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum FamilyMatch {
    Matched { family: u8, params: Params },
    Unmatched,
}

impl FamilyMatch {
    pub fn family(&self) -> Option<u8> {
        match self {
            FamilyMatch::Matched { family, .. } => Some(*family),
            FamilyMatch::Unmatched => None,
        }
    }
}

struct Candidate {
    family: &'static Family,
    params: Params,
    literal: Vec<usize>,
    canonical: CanonicalForm,
}

fn check_length(kind: Kind, length: usize) -> Result<(), CensusError> {
    if (MIN_LENGTH..=MAX_CLASSIFIED_LENGTH).contains(&length) {
        Ok(())
    } else {
        Err(CensusError::UnsupportedLength { kind, length })
    }
}

fn candidates(g: GraphKind, length: usize) -> Vec<Candidate> {
    families_for(g.kind, length)
        .flat_map(|family| {
            family.instances(g.n).into_iter().map(move |params| {
                let literal = family.instantiate(params);
                let canonical = canonical_labels(&literal);
                Candidate { family, params, literal, canonical }
            })
        })
        .collect()
}

fn best_match<'a>(pool: &'a [Candidate], f: &CanonicalForm) -> Option<&'a Candidate> {
    let mut hits = pool.iter().filter(|c| &c.canonical == f);
    let first = hits.next()?;
    if first.literal == f.labels() {
        return Some(first);
    }
    Some(hits.find(|c| c.literal == f.labels()).unwrap_or(first))
}

/// Finds the family instance (with `k <= n`) whose template, brought to
/// canonical form, equals `f`. An instance whose template is literally `f`
/// wins over one that only agrees after canonicalization; otherwise the
/// first in family and scan order is reported.
pub fn match_form(f: &CanonicalForm, g: GraphKind) -> Result<FamilyMatch, CensusError> {
    check_length(g.kind, f.len())?;
    let pool = candidates(g, f.len());
    Ok(match best_match(&pool, f) {
        Some(c) => FamilyMatch::Matched { family: c.family.id, params: c.params },
        None => FamilyMatch::Unmatched,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormTally {
    pub params: Params,
    pub canonical: CanonicalForm,
    pub cycles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyTally {
    pub family: u8,
    pub count: usize,
    pub instances: Vec<FormTally>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnmatchedForm {
    pub canonical: CanonicalForm,
    pub cycles: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnrealizedInstance {
    pub family: u8,
    pub params: Params,
    pub canonical: CanonicalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub format_version: u32,
    pub graph: String,
    pub kind: Kind,
    pub n: usize,
    pub length: usize,
    pub total: usize,
    pub per_family: Vec<FamilyTally>,
    pub unmatched: Vec<UnmatchedForm>,
    /// In-range instances that no cycle through the identity realizes.
    pub unrealized: Vec<UnrealizedInstance>,
    /// Enumerated label sequences that failed the independent closure check.
    pub closure_failures: usize,
}

impl CensusReport {
    pub fn unmatched_cycles(&self) -> usize {
        self.unmatched.iter().map(|u| u.cycles).sum()
    }

    pub fn matched_cycles(&self) -> usize {
        self.per_family.iter().map(|f| f.count).sum()
    }

    pub fn is_confirmed(&self) -> bool {
        self.unmatched.is_empty() && self.closure_failures == 0
    }

    pub fn family_count(&self, id: u8) -> usize {
        self.per_family.iter().find(|f| f.family == id).map_or(0, |f| f.count)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Enumerates every `length`-cycle through the identity and attributes each
/// one to a family.
pub fn verify_classification(g: GraphKind, length: usize) -> Result<CensusReport, CensusError> {
    check_length(g.kind, length)?;
    let cycles = enumerate_cycles(g, length)?;
    let pool = candidates(g, length);

    let mut by_form: BTreeMap<&CanonicalForm, usize> = BTreeMap::new();
    let mut closure_failures = 0;
    for c in &cycles {
        if !closes_simply(g, &c.labels.0) {
            closure_failures += 1;
        }
        *by_form.entry(&c.canonical).or_default() += 1;
    }

    let mut per_family: Vec<FamilyTally> =
        families_for(g.kind, length).map(|f| FamilyTally { family: f.id, count: 0, instances: Vec::new() }).collect();
    let mut unmatched = Vec::new();
    for (&form, &count) in &by_form {
        match best_match(&pool, form) {
            Some(hit) => {
                let tally = per_family
                    .iter_mut()
                    .find(|t| t.family == hit.family.id)
                    .expect("candidate families come from the same table");
                tally.count += count;
                tally.instances.push(FormTally { params: hit.params, canonical: form.clone(), cycles: count });
            }
            None => unmatched.push(UnmatchedForm { canonical: form.clone(), cycles: count }),
        }
    }
    for tally in &mut per_family {
        tally.instances.sort_by_key(|t| t.params);
    }

    let found: BTreeSet<&CanonicalForm> = by_form.keys().copied().collect();
    let unrealized = pool
        .iter()
        .filter(|c| !found.contains(&c.canonical))
        .map(|c| UnrealizedInstance { family: c.family.id, params: c.params, canonical: c.canonical.clone() })
        .collect();

    Ok(CensusReport {
        format_version: REPORT_FORMAT_VERSION,
        graph: g.to_string(),
        kind: g.kind,
        n: g.n,
        length,
        total: cycles.len(),
        per_family,
        unmatched,
        unrealized,
        closure_failures,
    })
}
