//! Closed forms for `R_k(n)` and `R_k^B(n)`, checked against layer counts.
//!
//! Every value is computed with arbitrary-precision integers. A formula is a
//! polynomial with integer coefficients over a single positive denominator;
//! if the division is not exact the evaluation fails instead of rounding.

mod identities;
mod newton;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

pub use identities::{
    check_gregory_newton_con63, check_recurrence_cor62, sweep_con63, sweep_cor62, CellCheck, IdentityCheck,
    IdentityReport, Variant,
};
pub use newton::{difference_table, fit_newton, FitError, NewtonPoly};
pub use poly::{binomial, Inexact, IntPoly, RationalPoly};

use crate::graph::Kind;
use crate::search::LayerProfile;

pub const REPORT_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unknown formula {0:?}")]
    Unknown(String),
    #[error("{name} at n = {n}: {numerator} is not divisible by {denominator}")]
    Inexact { name: &'static str, n: i64, numerator: BigInt, denominator: BigInt },
    #[error("{name} describes the {expected} graph but the data is for the {found} graph")]
    KindMismatch { name: &'static str, expected: Kind, found: Kind },
    #[error("the recurrence is only stated for k <= 6 (got k = {0})")]
    RecurrenceOrder(usize),
    #[error("no value for R_{k}^B({n}) in the table")]
    MissingValue { k: usize, n: usize },
    #[error("the identity needs k >= 1 and n >= 1 (got k = {k}, n = {n})")]
    BadIndex { k: usize, n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Conjectured,
    /// Derived from another author's computation, not proved here.
    PublishedElsewhere,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proved => "proved",
            Status::Conjectured => "conjectured",
            Status::PublishedElsewhere => "published-elsewhere",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct FormulaSpec {
    pub name: &'static str,
    pub kind: Kind,
    pub k: usize,
    pub status: Status,
    /// Smallest `n` the polynomial covers.
    pub min_n: usize,
    /// Values that override the polynomial or extend below `min_n`.
    pub exceptions: BTreeMap<usize, u64>,
    pub poly: RationalPoly,
}

struct Def {
    name: &'static str,
    kind: Kind,
    k: usize,
    status: Status,
    min_n: usize,
    exceptions: &'static [(usize, u64)],
    factors: &'static [&'static [i64]],
    den: i64,
}

const N: &[i64] = &[1, 0];
const N_1: &[i64] = &[1, -1];
const N_2: &[i64] = &[1, -2];
const N_3: &[i64] = &[1, -3];
const N_4: &[i64] = &[1, -4];

use Kind::{Burnt, Plain};
use Status::{Conjectured, Proved, PublishedElsewhere};

#[rustfmt::skip]
const DEFS: &[Def] = &[
    Def { name: "R1_plain", kind: Plain, k: 1, status: Proved, min_n: 1, exceptions: &[],
          factors: &[N_1], den: 1 },
    Def { name: "R2_plain", kind: Plain, k: 2, status: Proved, min_n: 3, exceptions: &[],
          factors: &[N_1, N_2], den: 1 },
    // (n - 1)(n - 2)^2 - 1, expanded.
    Def { name: "R3_plain", kind: Plain, k: 3, status: Proved, min_n: 3, exceptions: &[],
          factors: &[&[1, -5, 8, -5]], den: 1 },
    Def { name: "R4_plain", kind: Plain, k: 4, status: Proved, min_n: 4, exceptions: &[],
          factors: &[&[2, -15, 29, 6, -34]], den: 2 },
    Def { name: "R5_plain", kind: Plain, k: 5, status: PublishedElsewhere, min_n: 5, exceptions: &[],
          factors: &[&[6, -65, 173, 296, -1724, 1590]], den: 6 },
    Def { name: "R6_plain", kind: Plain, k: 6, status: PublishedElsewhere, min_n: 6, exceptions: &[],
          factors: &[&[60, -883, 3140, 10775, -91400, 171068, -58020]], den: 60 },
    Def { name: "R7_plain", kind: Plain, k: 7, status: PublishedElsewhere, min_n: 8,
          exceptions: &[(6, 2), (7, 1016)],
          factors: &[&[240, -4619, 21881, 109275, -1372445, 4476344, -4550196, -850320]], den: 240 },
    Def { name: "R8_plain", kind: Plain, k: 8, status: PublishedElsewhere, min_n: 8,
          exceptions: &[(7, 35)],
          factors: &[&[5040, -122683, 759857, 4519067, -79101715, 364661948, -561161062, -267373812,
                       844945920]], den: 5040 },
    Def { name: "R1_burnt", kind: Burnt, k: 1, status: Proved, min_n: 1, exceptions: &[],
          factors: &[N], den: 1 },
    Def { name: "R2_burnt", kind: Burnt, k: 2, status: Proved, min_n: 1, exceptions: &[],
          factors: &[N, N_1], den: 1 },
    Def { name: "R3_burnt", kind: Burnt, k: 3, status: Proved, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_1], den: 1 },
    Def { name: "R4_burnt", kind: Burnt, k: 4, status: Proved, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_1, &[2, -3]], den: 2 },
    Def { name: "R5_burnt_conj", kind: Burnt, k: 5, status: Conjectured, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_2, &[6, -17, 3]], den: 6 },
    Def { name: "R6_burnt_conj", kind: Burnt, k: 6, status: Conjectured, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_2, &[60, -343, 401, 284]], den: 60 },
    Def { name: "R7_burnt_conj", kind: Burnt, k: 7, status: Conjectured, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_2, N_3, &[240, -1499, 925, 5104]], den: 240 },
    Def { name: "R8_burnt_conj", kind: Burnt, k: 8, status: Conjectured, min_n: 1, exceptions: &[],
          factors: &[N, N_1, N_2, N_3, &[5040, -52123, 113415, 314716, -1027242]], den: 5040 },
    Def { name: "R9_burnt_conj", kind: Burnt, k: 9, status: Conjectured, min_n: 1, exceptions: &[],
          factors: &[N_1, N_2, N_3, N_4, &[40320, -444061, 644746, 6638777, -18991470, 0]], den: 40320 },
];

/// Every registered formula.
pub fn formulas() -> &'static [FormulaSpec] {
    static REGISTRY: OnceLock<Vec<FormulaSpec>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        DEFS.iter()
            .map(|d| {
                let num = d.factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(&IntPoly::from_descending(f)));
                FormulaSpec {
                    name: d.name,
                    kind: d.kind,
                    k: d.k,
                    status: d.status,
                    min_n: d.min_n,
                    exceptions: d.exceptions.iter().copied().collect(),
                    poly: RationalPoly::new(num, d.den),
                }
            })
            .collect()
    })
}

/// Looks a formula up by name, ignoring case, accepting `-` for `_` and
/// allowing the `_conj` suffix to be left out.
pub fn lookup(name: &str) -> Result<&'static FormulaSpec, FormulaError> {
    let key = name.trim().to_ascii_lowercase().replace('-', "_");
    formulas()
        .iter()
        .find(|f| {
            let canonical = f.name.to_ascii_lowercase();
            canonical == key || canonical.strip_suffix("_conj") == Some(key.as_str())
        })
        .ok_or_else(|| FormulaError::Unknown(name.to_string()))
}

pub fn for_kind(kind: Kind, k: usize) -> Option<&'static FormulaSpec> {
    formulas().iter().find(|f| f.kind == kind && f.k == k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Value {
    Polynomial {
        #[serde(with = "serde_big")]
        value: BigInt,
    },
    Exception {
        #[serde(with = "serde_big")]
        value: BigInt,
    },
    OutOfValidity,
}

impl Value {
    pub fn value(&self) -> Option<&BigInt> {
        match self {
            Value::Polynomial { value } | Value::Exception { value } => Some(value),
            Value::OutOfValidity => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub name: &'static str,
    pub n: usize,
    pub status: Status,
    #[serde(flatten)]
    pub value: Value,
}

impl FormulaSpec {
    pub fn eval(&self, n: usize) -> Result<Value, FormulaError> {
        if let Some(&v) = self.exceptions.get(&n) {
            return Ok(Value::Exception { value: BigInt::from(v) });
        }
        if n < self.min_n {
            return Ok(Value::OutOfValidity);
        }
        self.poly.eval(n as i64).map(|value| Value::Polynomial { value }).map_err(|e| FormulaError::Inexact {
            name: self.name,
            n: n as i64,
            numerator: e.numerator,
            denominator: e.denominator,
        })
    }

    /// The raw polynomial, ignoring validity and exceptions.
    pub fn polynomial_at(&self, n: i64) -> Result<BigInt, FormulaError> {
        self.poly.eval(n).map_err(|e| FormulaError::Inexact {
            name: self.name,
            n,
            numerator: e.numerator,
            denominator: e.denominator,
        })
    }
}

pub fn eval_formula(name: &str, n: usize) -> Result<Evaluation, FormulaError> {
    let spec = lookup(name)?;
    Ok(Evaluation { name: spec.name, n, status: spec.status, value: spec.eval(n)? })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equal,
    Mismatch,
    OutOfValidity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckRow {
    pub n: usize,
    #[serde(with = "serde_big::option")]
    pub formula: Option<BigInt>,
    pub observed: u64,
    pub exception: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub format_version: u32,
    pub formula: &'static str,
    pub kind: Kind,
    pub k: usize,
    pub status: Status,
    pub rows: Vec<CrosscheckRow>,
    pub mismatches: usize,
    /// "verified" for proved formulas, "consistent with data" otherwise,
    /// "mismatch" if any compared value differs, "no data" if nothing compared.
    pub summary: String,
}

impl CrosscheckReport {
    pub fn compared(&self) -> usize {
        self.rows.iter().filter(|r| r.verdict != Verdict::OutOfValidity).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Compares a formula with layer counts from complete searches.
pub fn crosscheck(name: &str, profiles: &[LayerProfile]) -> Result<CrosscheckReport, FormulaError> {
    let spec = lookup(name)?;
    if let Some(p) = profiles.iter().find(|p| p.graph.kind != spec.kind) {
        return Err(FormulaError::KindMismatch { name: spec.name, expected: spec.kind, found: p.graph.kind });
    }
    crosscheck_values(spec, profiles.iter().map(|p| (p.graph.n, p.count(spec.k))))
}

/// Compares a formula with observed `(n, R_k(n))` pairs.
pub fn crosscheck_values(
    spec: &'static FormulaSpec,
    observed: impl IntoIterator<Item = (usize, u64)>,
) -> Result<CrosscheckReport, FormulaError> {
    let mut rows = Vec::new();
    for (n, seen) in observed {
        let value = spec.eval(n)?;
        let exception = matches!(value, Value::Exception { .. });
        let (formula, verdict) = match value.value() {
            None => (None, Verdict::OutOfValidity),
            Some(v) if *v == BigInt::from(seen) => (Some(v.clone()), Verdict::Equal),
            Some(v) => (Some(v.clone()), Verdict::Mismatch),
        };
        rows.push(CrosscheckRow { n, formula, observed: seen, exception, verdict });
    }
    let mismatches = rows.iter().filter(|r| r.verdict == Verdict::Mismatch).count();
    let compared = rows.iter().filter(|r| r.verdict != Verdict::OutOfValidity).count();
    let summary = if mismatches > 0 {
        "mismatch"
    } else if compared == 0 {
        "no data"
    } else if spec.status == Status::Proved {
        "verified"
    } else {
        "consistent with data"
    };
    Ok(CrosscheckReport {
        format_version: REPORT_FORMAT_VERSION,
        formula: spec.name,
        kind: spec.kind,
        k: spec.k,
        status: spec.status,
        rows,
        mismatches,
        summary: summary.to_string(),
    })
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corrected" => Ok(Variant::Corrected),
            "as-printed" | "as_printed" => Ok(Variant::AsPrinted),
            other => Err(format!("unknown variant {other:?} (expected corrected or as-printed)")),
        }
    }
}

/// Serializes big integers as JSON numbers when they fit in 128 bits and
/// as decimal strings otherwise.
pub(crate) mod serde_big {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i128() {
            Some(x) => s.serialize_i128(x),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => super::serialize(v, s),
                None => s.serialize_none(),
            }
        }
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                match x.to_i128() {
                    Some(x) => seq.serialize_element(&x)?,
                    None => seq.serialize_element(&x.to_string())?,
                }
            }
            seq.end()
        }
    }
}
