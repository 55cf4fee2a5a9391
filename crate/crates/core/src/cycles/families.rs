//! Published canonical forms of the short cycles, one template per family.
//!
//! Numbering: (1) the 6-cycle of `P_n`, (2) its 7-cycles, (3)-(10) its
//! 8-cycles, (11)-(20) its 9-cycles, (23)-(26) the 8-cycles of `BP_n` and
//! (27)-(28) the 9-cycles of `BP_n`.

use std::fmt;

use serde::Serialize;

use crate::graph::Kind;

/// Bound variables of a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
}

impl Params {
    pub const NONE: Params = Params { k: None, i: None, j: None };

    pub fn k(k: usize) -> Self {
        Params { k: Some(k), ..Params::NONE }
    }

    pub fn ki(k: usize, i: usize) -> Self {
        Params { k: Some(k), i: Some(i), j: None }
    }

    pub fn kij(k: usize, i: usize, j: usize) -> Self {
        Params { k: Some(k), i: Some(i), j: Some(j) }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = [("k", self.k), ("i", self.i), ("j", self.j)]
            .iter()
            .filter_map(|(name, v)| v.map(|v| format!("{name}={v}")))
            .collect();
        if parts.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Fixed,
    K,
    KI,
    KIJ,
}

type Template = fn(usize, usize, usize) -> Vec<usize>;
type Admits = fn(usize, usize, usize) -> bool;

pub struct Family {
    pub id: u8,
    pub kind: Kind,
    pub length: usize,
    pub shape: Shape,
    /// Smallest `k` (or, for fixed forms, smallest `n`) for which the form exists.
    pub min_k: usize,
    template: Template,
    admits: Admits,
}

impl Family {
    /// Label sequence for an instance; `params` must be admissible.
    pub fn instantiate(&self, params: Params) -> Vec<usize> {
        let (k, i, j) = (params.k.unwrap_or(0), params.i.unwrap_or(0), params.j.unwrap_or(0));
        (self.template)(k, i, j)
    }

    pub fn admits(&self, params: Params) -> bool {
        let (k, i, j) = (params.k.unwrap_or(0), params.i.unwrap_or(0), params.j.unwrap_or(0));
        match self.shape {
            Shape::Fixed => params == Params::NONE,
            Shape::K => params.k.is_some() && params.i.is_none() && k >= self.min_k && (self.admits)(k, 0, 0),
            Shape::KI => params.j.is_none() && params.i.is_some() && k >= self.min_k && (self.admits)(k, i, 0),
            Shape::KIJ => params.i.is_some() && params.j.is_some() && k >= self.min_k && (self.admits)(k, i, j),
        }
    }

    /// All admissible parameter sets with `k <= n`, in scan order
    /// (k, then i, then j ascending).
    pub fn instances(&self, n: usize) -> Vec<Params> {
        let mut out = Vec::new();
        if self.shape == Shape::Fixed {
            if n >= self.min_k {
                out.push(Params::NONE);
            }
            return out;
        }
        for k in self.min_k..=n {
            match self.shape {
                Shape::K => out.push(Params::k(k)),
                Shape::KI => out.extend((1..k).map(|i| Params::ki(k, i))),
                Shape::KIJ => out.extend((1..k).flat_map(|i| (1..k).map(move |j| Params::kij(k, i, j)))),
                Shape::Fixed => unreachable!(),
            }
        }
        out.retain(|&p| self.admits(p));
        out
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family({})", self.id)
    }
}

macro_rules! family {
    ($id:expr, $kind:ident, $len:expr, $shape:ident, $min:expr,
     |$k:ident, $i:ident, $j:ident| $admits:expr => [$($e:expr),+ $(,)?]) => {
        Family {
            id: $id,
            kind: Kind::$kind,
            length: $len,
            shape: Shape::$shape,
            min_k: $min,
            #[allow(unused_variables)]
            template: |$k, $i, $j| vec![$($e),+],
            #[allow(unused_variables)]
            admits: |$k, $i, $j| $admits,
        }
    };
}

// Bounds keep the `j <= k - 1` form in which the families are usually stated.
#[allow(clippy::int_plus_one)]
pub static FAMILIES: &[Family] = &[
    // 6-cycles of P_n, n >= 3.
    family!(1, Plain, 6, Fixed, 3, |k, i, j| true => [3, 2, 3, 2, 3, 2]),
    // 7-cycles of P_n.
    family!(2, Plain, 7, K, 4, |k, i, j| true => [k, k - 1, k, k - 1, k - 2, k, 2]),
    // 8-cycles of P_n.
    family!(3, Plain, 8, KIJ, 4, |k, i, j| 2 <= i && i < j && j <= k - 1
        => [k, j, i, j, k, k - j + i, i, k - j + i]),
    family!(4, Plain, 8, K, 4, |k, i, j| true => [k, k - 1, 2, k - 1, k, 2, 3, 2]),
    family!(5, Plain, 8, KI, 4, |k, i, j| 2 <= i && i <= k - 2
        => [k, k - i, k - 1, i, k, k - i, k - 1, i]),
    family!(6, Plain, 8, KI, 5, |k, i, j| 3 <= i && i <= k - 2
        => [k, k - i + 1, k, i, k, k - i, k - 1, i - 1]),
    family!(7, Plain, 8, KI, 5, |k, i, j| 3 <= i && i <= k - 2
        => [k, k - 1, i - 1, k, k - i + 1, k - i, k, i]),
    family!(8, Plain, 8, KI, 5, |k, i, j| 2 <= i && i <= k - 3
        => [k, k - 1, k, k - i, k - i - 1, k, i, i + 1]),
    family!(9, Plain, 8, KIJ, 4, |k, i, j| 2 <= i && i < j && j <= k - 1
        => [k, k - j + 1, k, i, k, k - j + 1, k, i]),
    family!(10, Plain, 8, Fixed, 4, |k, i, j| true => [4, 3, 4, 3, 4, 3, 4, 3]),
    // 9-cycles of P_n.
    family!(11, Plain, 9, KI, 5, |k, i, j| 3 <= i && i <= k - 2
        => [k, k - 1, i, k - 1, k, i, i - 1, i + 1, 2]),
    family!(12, Plain, 9, KI, 5, |k, i, j| 4 <= i && i <= k - 1
        => [2, k - i + 2, k, i - 2, i - 1, i, i - 1, k, k - i + 2]),
    family!(13, Plain, 9, KIJ, 5, |k, i, j| 2 <= i && i < j && j <= k - 2
        => [k, k - i, k - 1, k - j + i - 1, k - j, k, j - i + 1, j, i]),
    family!(14, Plain, 9, KI, 5, |k, i, j| 3 <= i && i <= k - 2
        => [k, k - 1, i, i - 1, k - 1, k, i, i + 1, 2]),
    family!(15, Plain, 9, K, 4, |k, i, j| true
        => [k, k - 1, k - 2, k - 1, k - 2, k, 3, k, k - 2]),
    family!(16, Plain, 9, KI, 5, |k, i, j| 2 <= i && i <= k - 3
        => [k, k - 1, k - 2, i, k, 2, k, i, k - 1]),
    family!(17, Plain, 9, KIJ, 6, |k, i, j| 2 <= i && i + 2 <= j && j <= k - 2
        => [k, k - j + i, k, j, i, k, k - j, k - i, j - i]),
    family!(18, Plain, 9, KIJ, 6, |k, i, j| 2 <= i && i + 2 <= j && j <= k - 2
        => [k, k - j + i, k - j, k, j, i, k, k - i, j - i]),
    family!(19, Plain, 9, KIJ, 4, |k, i, j| 2 <= i && i < j && j <= k - 1
        => [k, k - j + i, k - j + 1, k, j, i, k, k - i + 1, j - i + 1]),
    family!(20, Plain, 9, K, 5, |k, i, j| true
        => [k, k - 1, k, k - 1, k, k - 1, k - 3, k, 3]),
    // 8-cycles of BP_n.
    family!(23, Burnt, 8, KIJ, 3, |k, i, j| 1 <= i && i < j && j <= k - 1
        => [k, j, i, j, k, k - j + i, i, k - j + i]),
    family!(24, Burnt, 8, KIJ, 4, |k, i, j| 2 <= i && i <= k - 2 && 2 <= j && j <= k - 2 && i + j <= k
        => [k, j, k, i, k, j, k, i]),
    family!(25, Burnt, 8, KI, 3, |k, i, j| 2 <= i && i <= k - 1 => [k, i, k, 1, k, i, k, 1]),
    family!(26, Burnt, 8, K, 2, |k, i, j| true => [k, 1, k, 1, k, 1, k, 1]),
    // 9-cycles of BP_n.
    family!(27, Burnt, 9, KIJ, 3,
        |k, i, j| 1 <= i && i <= k - 2 && 1 <= j && j <= k - 2 && i + j <= k - 1
        => [k, k - i, k, k - j, k - i - j, k, j, i + j, i]),
    family!(28, Burnt, 9, KIJ, 3,
        |k, i, j| 1 <= i && i <= k - 2 && 1 <= j && j <= k - 2 && i + j <= k - 1
        => [k, i + j, i, k, k - i, j, k, k - j, k - i - j]),
];

pub fn family(id: u8) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.id == id)
}

/// Families describing cycles of the given length in the given graph.
pub fn families_for(kind: Kind, length: usize) -> impl Iterator<Item = &'static Family> {
    FAMILIES.iter().filter(move |f| f.kind == kind && f.length == length)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn numbering_is_unique_and_grouped() {
        let ids: Vec<u8> = FAMILIES.iter().map(|f| f.id).collect();
        let unique: HashSet<_> = ids.iter().collect();
        assert_eq!(unique.len(), ids.len());
        assert_eq!(families_for(Kind::Plain, 8).count(), 8);
        assert_eq!(families_for(Kind::Plain, 9).count(), 10);
        assert_eq!(families_for(Kind::Burnt, 8).map(|f| f.id).collect::<Vec<_>>(), vec![23, 24, 25, 26]);
        assert_eq!(families_for(Kind::Burnt, 9).map(|f| f.id).collect::<Vec<_>>(), vec![27, 28]);
    }

    #[test]
    fn templates_have_declared_length_and_valid_flips() {
        for f in FAMILIES {
            for p in f.instances(8) {
                let labels = f.instantiate(p);
                assert_eq!(labels.len(), f.length, "family {} {p}", f.id);
                let k = p.k.unwrap_or(4);
                let lo = f.kind.min_flip();
                assert!(labels.iter().all(|&x| (lo..=k).contains(&x)), "family {} {p}: {labels:?}", f.id);
                assert!(
                    labels.iter().zip(labels.iter().cycle().skip(1)).all(|(a, b)| a != b),
                    "family {} {p} repeats a flip: {labels:?}",
                    f.id
                );
            }
        }
    }

    #[test]
    fn worked_instances() {
        assert_eq!(family(2).unwrap().instantiate(Params::k(4)), vec![4, 3, 4, 3, 2, 4, 2]);
        assert_eq!(family(26).unwrap().instantiate(Params::k(3)), vec![3, 1, 3, 1, 3, 1, 3, 1]);
        assert_eq!(family(2).unwrap().instances(5), vec![Params::k(4), Params::k(5)]);
        assert!(family(1).unwrap().instances(2).is_empty());
        assert_eq!(family(10).unwrap().instances(4), vec![Params::NONE]);
        // 1 <= i, j <= k - 2 and i + j <= k - 1 leave only i = j = 1 at k = 3.
        assert_eq!(family(27).unwrap().instances(3), vec![Params::kij(3, 1, 1)]);
    }

    #[test]
    fn literal_templates_are_injective() {
        for f in FAMILIES {
            let instances = f.instances(6);
            let distinct: HashSet<Vec<usize>> = instances.iter().map(|&p| f.instantiate(p)).collect();
            assert_eq!(distinct.len(), instances.len(), "family {}", f.id);
        }
    }
}
