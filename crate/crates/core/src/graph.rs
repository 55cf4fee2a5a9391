//! The pancake graph `P_n` and burnt pancake graph `BP_n` as implicit
//! Cayley graphs: vertices are stacks, edges are single flips.

use std::fmt;
use std::hash::Hash;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{self, AnyPerm, Perm, PermError, Rank, SignedPerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Plain,
    Burnt,
}

impl Kind {
    pub fn min_flip(self) -> usize {
        match self {
            Kind::Plain => 2,
            Kind::Burnt => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Plain => "plain",
            Kind::Burnt => "burnt",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "plain" | "p" | "pancake" => Ok(Kind::Plain),
            "burnt" | "b" | "signed" => Ok(Kind::Burnt),
            _ => Err(GraphError::UnknownKind(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("stack size {0} is not supported")]
    BadSize(usize),
    #[error("expected a {expected} stack of size {n}, got `{got}`")]
    Mismatch { expected: Kind, n: usize, got: String },
    #[error("copies are only defined for n >= 2")]
    NoCopies,
    #[error("unknown graph kind `{0}` (expected plain or burnt)")]
    UnknownKind(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Which graph, and on how many pancakes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphKind {
    pub kind: Kind,
    pub n: usize,
}

impl GraphKind {
    pub fn new(kind: Kind, n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > perm::MAX_N {
            return Err(GraphError::BadSize(n));
        }
        Ok(GraphKind { kind, n })
    }

    pub fn plain(n: usize) -> Result<Self, GraphError> {
        GraphKind::new(Kind::Plain, n)
    }

    pub fn burnt(n: usize) -> Result<Self, GraphError> {
        GraphKind::new(Kind::Burnt, n)
    }

    pub fn degree(&self) -> usize {
        degree(*self)
    }

    pub fn flips(&self) -> RangeInclusive<usize> {
        self.kind.min_flip()..=self.n
    }

    /// Vertex count, `n!` or `2^n n!`, if it fits in a rank.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            Kind::Plain => perm::factorial(self.n),
            Kind::Burnt => perm::signed_order(self.n),
        }
    }

    pub fn identity(&self) -> AnyPerm {
        match self.kind {
            Kind::Plain => AnyPerm::Plain(Perm::identity(self.n).expect("validated size")),
            Kind::Burnt => AnyPerm::Burnt(SignedPerm::identity(self.n).expect("validated size")),
        }
    }

    /// Checks that `v` is a vertex of this graph.
    pub fn check(&self, v: &AnyPerm) -> Result<(), GraphError> {
        let ok = v.len() == self.n
            && matches!((self.kind, v), (Kind::Plain, AnyPerm::Plain(_)) | (Kind::Burnt, AnyPerm::Burnt(_)));
        if ok {
            Ok(())
        } else {
            Err(GraphError::Mismatch { expected: self.kind, n: self.n, got: v.to_string() })
        }
    }

    pub fn rank(&self, v: &AnyPerm) -> Result<Rank, GraphError> {
        self.check(v)?;
        Ok(match v {
            AnyPerm::Plain(p) => p.rank()?,
            AnyPerm::Burnt(s) => s.rank()?,
        })
    }

    pub fn unrank(&self, rank: Rank) -> Result<AnyPerm, GraphError> {
        Ok(match self.kind {
            Kind::Plain => AnyPerm::Plain(Perm::unrank(self.n, rank)?),
            Kind::Burnt => AnyPerm::Burnt(SignedPerm::unrank(self.n, rank)?),
        })
    }

    pub fn apply_flip(&self, v: &AnyPerm, i: usize) -> Result<AnyPerm, GraphError> {
        self.check(v)?;
        Ok(match v {
            AnyPerm::Plain(p) => AnyPerm::Plain(p.apply_flip(i)?),
            AnyPerm::Burnt(s) => AnyPerm::Burnt(s.apply_flip(i)?),
        })
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Plain => write!(f, "P_{}", self.n),
            Kind::Burnt => write!(f, "BP_{}", self.n),
        }
    }
}

/// Number of generators: `n - 1` flips `r_2..r_n`, or `n` burnt flips.
pub fn degree(g: GraphKind) -> usize {
    g.n + 1 - g.kind.min_flip()
}

/// One neighbour per generator, in ascending flip index.
pub fn neighbors(g: GraphKind, v: &AnyPerm) -> Result<Vec<AnyPerm>, GraphError> {
    g.check(v)?;
    g.flips().map(|i| g.apply_flip(v, i)).collect()
}

/// Identifies the copy `P_{n-1}(q)` / `BP_{n-1}(q)` holding a vertex by its
/// last window entry `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CopyLabel {
    pub last: i64,
}

pub fn copy_of(v: &AnyPerm) -> Result<CopyLabel, GraphError> {
    if v.len() < 2 {
        return Err(GraphError::NoCopies);
    }
    let last = match v {
        AnyPerm::Plain(p) => p.entries()[p.len() - 1] as i64,
        AnyPerm::Burnt(s) => s.entries()[s.len() - 1] as i64,
    };
    Ok(CopyLabel { last })
}

/// A vertex type of one of the two graphs, used by generic traversals.
pub trait Vertex: Clone + Eq + Hash + Ord + fmt::Debug + fmt::Display + Send + Sync {
    const KIND: Kind;

    fn identity(n: usize) -> Self;
    fn size(&self) -> usize;
    /// Applies flip `i`; `i` must lie in `graph().flips()`.
    fn flip(&self, i: usize) -> Self;
    fn vertex_rank(&self) -> Rank;
    fn into_any(self) -> AnyPerm;

    fn graph(&self) -> GraphKind {
        GraphKind { kind: Self::KIND, n: self.size() }
    }
}

impl Vertex for Perm {
    const KIND: Kind = Kind::Plain;

    fn identity(n: usize) -> Self {
        Perm::identity(n).expect("valid size")
    }

    fn size(&self) -> usize {
        self.len()
    }

    fn flip(&self, i: usize) -> Self {
        let mut entries = self.entries().to_vec();
        entries[..i].reverse();
        Perm::from_raw(entries)
    }

    fn vertex_rank(&self) -> Rank {
        self.rank().expect("rankable size")
    }

    fn into_any(self) -> AnyPerm {
        AnyPerm::Plain(self)
    }
}

impl Vertex for SignedPerm {
    const KIND: Kind = Kind::Burnt;

    fn identity(n: usize) -> Self {
        SignedPerm::identity(n).expect("valid size")
    }

    fn size(&self) -> usize {
        self.len()
    }

    fn flip(&self, i: usize) -> Self {
        let mut entries = self.entries().to_vec();
        perm::signed_flip(&mut entries, i);
        SignedPerm::from_raw(entries)
    }

    fn vertex_rank(&self) -> Rank {
        self.rank().expect("rankable size")
    }

    fn into_any(self) -> AnyPerm {
        AnyPerm::Burnt(self)
    }
}
