//! Summation identities between table entries.
//!
//! The recurrence `R_k(n) = sum_{i=1}^{k+1} (-1)^(i+1) C(k+1, i) R_k(n-i)`
//! is the vanishing of the `(k+1)`-st difference of a degree-`k` polynomial,
//! stated for `k <= 6` whenever the `k + 1` earlier entries are positive.
//!
//! The burnt identity rebuilds `R_k^B(n)` from `R_k^B(1..=k)` by
//! Gregory-Newton interpolation of a polynomial vanishing at `0`:
//!
//! ```text
//! R_k^B(n) = sum_{j=1}^{k} ( sum_{i=0}^{k-j} (-1)^i c(i, j) C(n, i+j) ) R_k^B(j)
//! ```
//!
//! with `c(i, j) = C(i+j, i)`. The [`Variant::AsPrinted`] reading uses
//! `c(i, j) = C(i+j-1, i)` instead; it disagrees with the data from `k = 3`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::poly::binomial;
use super::{serde_big, FormulaError, REPORT_FORMAT_VERSION};
use crate::graph::Kind;
use crate::tables::CountTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Corrected,
    AsPrinted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IdentityCheck {
    Holds {
        #[serde(with = "serde_big")]
        lhs: BigInt,
        #[serde(with = "serde_big")]
        rhs: BigInt,
    },
    Fails {
        #[serde(with = "serde_big")]
        lhs: BigInt,
        #[serde(with = "serde_big")]
        rhs: BigInt,
    },
    InsufficientData {
        reason: String,
    },
}

impl IdentityCheck {
    fn compare(lhs: BigInt, rhs: BigInt) -> Self {
        if lhs == rhs {
            IdentityCheck::Holds { lhs, rhs }
        } else {
            IdentityCheck::Fails { lhs, rhs }
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, IdentityCheck::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, IdentityCheck::Fails { .. })
    }
}

fn require_kind(table: &CountTable, kind: Kind, name: &'static str) -> Result<(), FormulaError> {
    match table.kind {
        Some(found) if found != kind => Err(FormulaError::KindMismatch { name, expected: kind, found }),
        _ => Ok(()),
    }
}

pub fn check_recurrence_cor62(k: usize, n: usize, table: &CountTable) -> Result<IdentityCheck, FormulaError> {
    if k > 6 {
        return Err(FormulaError::RecurrenceOrder(k));
    }
    require_kind(table, Kind::Plain, "cor62")?;
    let insufficient = |reason: String| Ok(IdentityCheck::InsufficientData { reason });
    let Some(lhs) = table.get(k, n) else {
        return insufficient(format!("R_{k}({n}) is unknown"));
    };
    let mut rhs = BigInt::zero();
    for i in 1..=k + 1 {
        let Some(m) = n.checked_sub(i).filter(|&m| m >= 1) else {
            return insufficient(format!("R_{k}(n - {i}) would need n - {i} >= 1"));
        };
        match table.get(k, m) {
            None => return insufficient(format!("R_{k}({m}) is unknown")),
            Some(0) => return insufficient(format!("R_{k}({m}) = 0 is not positive")),
            Some(v) => {
                let term = binomial((k + 1) as i64, i) * BigInt::from(v);
                if i % 2 == 1 {
                    rhs += term;
                } else {
                    rhs -= term;
                }
            }
        }
    }
    Ok(IdentityCheck::compare(BigInt::from(lhs), rhs))
}

pub fn check_gregory_newton_con63(
    k: usize,
    n: usize,
    table: &CountTable,
    variant: Variant,
) -> Result<IdentityCheck, FormulaError> {
    if k == 0 || n == 0 {
        return Err(FormulaError::BadIndex { k, n });
    }
    require_kind(table, Kind::Burnt, "con63")?;
    let lhs = table.get(k, n).ok_or(FormulaError::MissingValue { k, n })?;
    let mut rhs = BigInt::zero();
    for j in 1..=k {
        let mut coeff = BigInt::zero();
        for i in 0..=k - j {
            let c = match variant {
                Variant::Corrected => binomial((i + j) as i64, i),
                Variant::AsPrinted => binomial((i + j - 1) as i64, i),
            };
            let term = c * binomial(n as i64, i + j);
            if i % 2 == 0 {
                coeff += term;
            } else {
                coeff -= term;
            }
        }
        // Bases multiplied by zero are not needed, so k > n still works.
        if coeff.is_zero() {
            continue;
        }
        let base = table.get(k, j).ok_or(FormulaError::MissingValue { k, n: j })?;
        rhs += coeff * BigInt::from(base);
    }
    Ok(IdentityCheck::compare(BigInt::from(lhs), rhs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub k: usize,
    pub n: usize,
    #[serde(flatten)]
    pub check: IdentityCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub format_version: u32,
    pub identity: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub holds: usize,
    pub fails: usize,
    pub insufficient: usize,
    pub cells: Vec<CellCheck>,
}

impl IdentityReport {
    fn new(identity: &'static str, variant: Option<Variant>, cells: Vec<CellCheck>) -> Self {
        let count = |f: fn(&IdentityCheck) -> bool| cells.iter().filter(|c| f(&c.check)).count();
        let holds = count(IdentityCheck::holds);
        let fails = count(IdentityCheck::fails);
        IdentityReport {
            format_version: REPORT_FORMAT_VERSION,
            identity,
            variant,
            holds,
            fails,
            insufficient: cells.len() - holds - fails,
            cells,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks the recurrence at every known cell with `k <= 6`, optionally
/// restricted to the given `k` and `n`.
pub fn sweep_cor62(table: &CountTable, k: Option<usize>, n: Option<usize>) -> Result<IdentityReport, FormulaError> {
    let mut cells = Vec::new();
    for (ck, cn, _) in table.cells() {
        if ck > 6 || k.is_some_and(|k| k != ck) || n.is_some_and(|n| n != cn) {
            continue;
        }
        cells.push(CellCheck { k: ck, n: cn, check: check_recurrence_cor62(ck, cn, table)? });
    }
    Ok(IdentityReport::new("cor62", None, cells))
}

/// Checks the burnt identity at every known cell with `k, n >= 1`. Cells
/// whose base values are missing count as insufficient data.
pub fn sweep_con63(
    table: &CountTable,
    variant: Variant,
    k: Option<usize>,
    n: Option<usize>,
) -> Result<IdentityReport, FormulaError> {
    let mut cells = Vec::new();
    for (ck, cn, _) in table.cells() {
        if ck == 0 || cn == 0 || k.is_some_and(|k| k != ck) || n.is_some_and(|n| n != cn) {
            continue;
        }
        let check = match check_gregory_newton_con63(ck, cn, table, variant) {
            Err(FormulaError::MissingValue { k, n }) => {
                IdentityCheck::InsufficientData { reason: format!("R_{k}^B({n}) is unknown") }
            }
            other => other?,
        };
        cells.push(CellCheck { k: ck, n: cn, check });
    }
    Ok(IdentityReport::new("con63", Some(variant), cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain() -> CountTable {
        CountTable::published(Kind::Plain)
    }

    fn burnt() -> CountTable {
        CountTable::published(Kind::Burnt)
    }

    /// Direct alternating sum, written out without the helper.
    fn naive_cor62(k: usize, n: usize, t: &CountTable) -> i128 {
        let mut choose = 1i128;
        let mut sum = 0i128;
        for i in 1..=k + 1 {
            choose = choose * (k + 2 - i) as i128 / i as i128;
            let sign = if i % 2 == 1 { 1 } else { -1 };
            sum += sign * choose * t.get(k, n - i).unwrap() as i128;
        }
        sum
    }

    #[test]
    fn recurrence_examples() {
        let t = plain();
        let c = check_recurrence_cor62(4, 10, &t).unwrap();
        assert!(c.holds(), "{c:?}");
        assert_eq!(c, IdentityCheck::Holds { lhs: 3963.into(), rhs: naive_cor62(4, 10, &t).into() });
        let c = check_recurrence_cor62(4, 20, &t).unwrap();
        assert_eq!(c, IdentityCheck::Holds { lhs: 105843.into(), rhs: naive_cor62(4, 20, &t).into() });
        assert!(check_recurrence_cor62(6, 13, &t).unwrap().holds());
        assert!(matches!(check_recurrence_cor62(4, 8, &t).unwrap(), IdentityCheck::InsufficientData { .. }));
        assert_eq!(check_recurrence_cor62(7, 12, &t), Err(FormulaError::RecurrenceOrder(7)));
    }

    #[test]
    fn recurrence_detects_a_wrong_value() {
        let mut t = plain();
        t.insert(4, 10, 105844);
        assert!(check_recurrence_cor62(4, 10, &t).unwrap().fails());
    }

    #[test]
    fn gregory_newton_examples() {
        let t = burnt();
        for (k, n) in [(4, 10), (2, 5), (7, 9)] {
            let c = check_gregory_newton_con63(k, n, &t, Variant::Corrected).unwrap();
            assert!(c.holds(), "k={k} n={n}: {c:?}");
        }
        // The printed coefficient already fails at k = 3, n = 3.
        assert_eq!(
            check_gregory_newton_con63(3, 3, &t, Variant::AsPrinted).unwrap(),
            IdentityCheck::Fails { lhs: 12.into(), rhs: 14.into() }
        );
        // Both readings agree for k <= 2.
        assert!(check_gregory_newton_con63(2, 5, &t, Variant::AsPrinted).unwrap().holds());
    }

    #[test]
    fn gregory_newton_on_a_known_polynomial() {
        // p(n) = n(n-1)(n-2) has degree 3 and vanishes at 0.
        let mut t = CountTable::new(Kind::Burnt);
        for n in 1..=12u64 {
            t.insert(3, n as usize, n * (n - 1) * n.saturating_sub(2));
        }
        for n in 1..=12 {
            assert!(check_gregory_newton_con63(3, n, &t, Variant::Corrected).unwrap().holds());
        }
    }

    #[test]
    fn gregory_newton_errors() {
        let t = burnt();
        assert_eq!(
            check_gregory_newton_con63(0, 3, &t, Variant::Corrected),
            Err(FormulaError::BadIndex { k: 0, n: 3 })
        );
        let mut sparse = CountTable::new(Kind::Burnt);
        sparse.insert(4, 9, 1);
        assert!(matches!(
            check_gregory_newton_con63(4, 9, &sparse, Variant::Corrected),
            Err(FormulaError::MissingValue { .. })
        ));
        assert!(matches!(check_recurrence_cor62(4, 10, &t), Err(FormulaError::KindMismatch { .. })));
    }

    #[test]
    fn sweeps_cover_the_published_tables() {
        let cor = sweep_cor62(&plain(), None, None).unwrap();
        assert_eq!(cor.fails, 0);
        assert!(cor.holds > 50);
        let con = sweep_con63(&burnt(), Variant::Corrected, None, None).unwrap();
        assert_eq!((con.fails, con.insufficient), (0, 0));
        let printed = sweep_con63(&burnt(), Variant::AsPrinted, None, None).unwrap();
        assert!(printed.fails > 0);
    }
}
