//! Unsigned and signed permutations acted on by prefix reversals.
//!
//! A [`Perm`] is a stack of pancakes in one-line notation; a [`SignedPerm`]
//! is a stack of burnt pancakes in window notation, where a negative entry
//! is a pancake lying burnt side up. Flips act on the right, i.e. they
//! reverse a prefix of the stored sequence.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Index of a vertex in lexicographic (Lehmer) order.
pub type Rank = u64;

/// Largest stack size representable with one byte per entry.
pub const MAX_N: usize = 127;

/// Largest `n` whose `n!` fits in a [`Rank`].
pub const MAX_RANK_N: usize = 20;

/// Largest `n` whose `2^n * n!` fits in a [`Rank`].
pub const MAX_SIGNED_RANK_N: usize = 16;

const FACTORIALS: [u64; MAX_RANK_N + 1] = {
    let mut table = [1u64; MAX_RANK_N + 1];
    let mut i = 1;
    while i <= MAX_RANK_N {
        table[i] = table[i - 1] * i as u64;
        i += 1;
    }
    table
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("a stack must hold at least one pancake")]
    Empty,
    #[error("stack size {0} exceeds the supported maximum of {MAX_N}")]
    TooLarge(usize),
    #[error("value {value} is outside 1..={n}")]
    OutOfRange { value: i64, n: usize },
    #[error("duplicate value {0}")]
    Duplicate(i64),
    #[error("negative entry {0} in an unsigned permutation")]
    Negative(i64),
    #[error("flip index {i} is outside {min}..={n}")]
    FlipOutOfRange { i: usize, min: usize, n: usize },
    #[error("rank {rank} is outside 0..{order} for n = {n}")]
    RankOutOfRange { rank: u64, n: usize, order: u64 },
    #[error("n = {0} is too large for a 64-bit rank")]
    RankCapacity(usize),
    #[error("malformed token `{0}`")]
    Malformed(String),
    #[error("unbalanced brackets in `{0}`")]
    Brackets(String),
}

/// `n!`, or `None` when it overflows a [`Rank`].
pub fn factorial(n: usize) -> Option<u64> {
    FACTORIALS.get(n).copied()
}

/// Number of vertices of the burnt pancake graph, `2^n * n!`.
pub fn signed_order(n: usize) -> Option<u64> {
    factorial(n)?.checked_mul(1u64.checked_shl(n as u32)?)
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    entries: Vec<u8>,
}

/// A signed permutation of `[±n]` in window notation `[w(1) ... w(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    entries: Vec<i8>,
}

fn check_len(n: usize) -> Result<(), PermError> {
    match n {
        0 => Err(PermError::Empty),
        n if n > MAX_N => Err(PermError::TooLarge(n)),
        _ => Ok(()),
    }
}

fn check_bijection<I: IntoIterator<Item = i64>>(n: usize, abs_values: I) -> Result<(), PermError> {
    let mut seen = vec![false; n + 1];
    for v in abs_values {
        let slot =
            usize::try_from(v).ok().filter(|&u| (1..=n).contains(&u)).ok_or(PermError::OutOfRange { value: v, n })?;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(PermError::Duplicate(v));
        }
    }
    Ok(())
}

impl Perm {
    pub fn identity(n: usize) -> Result<Self, PermError> {
        check_len(n)?;
        Ok(Perm { entries: (1..=n as u8).collect() })
    }

    pub fn new(entries: Vec<u8>) -> Result<Self, PermError> {
        check_len(entries.len())?;
        check_bijection(entries.len(), entries.iter().map(|&v| v as i64))?;
        Ok(Perm { entries })
    }

    /// Builds a permutation from arbitrary integers, rejecting negatives.
    pub fn from_values(values: &[i64]) -> Result<Self, PermError> {
        check_len(values.len())?;
        if let Some(&v) = values.iter().find(|&&v| v < 0) {
            return Err(PermError::Negative(v));
        }
        check_bijection(values.len(), values.iter().copied())?;
        Ok(Perm { entries: values.iter().map(|&v| v as u8).collect() })
    }

    pub(crate) fn from_raw(entries: Vec<u8>) -> Self {
        debug_assert!(Perm::new(entries.clone()).is_ok());
        Perm { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// The permutation `r_i`: `i (i-1) ... 1 (i+1) ... n`.
    pub fn reversal(n: usize, i: usize) -> Result<Self, PermError> {
        Perm::identity(n)?.apply_flip(i)
    }

    /// Reverses the first `i` entries (`self * r_i`).
    pub fn apply_flip(&self, i: usize) -> Result<Self, PermError> {
        let n = self.len();
        if !(2..=n).contains(&i) {
            return Err(PermError::FlipOutOfRange { i, min: 2, n });
        }
        let mut out = self.clone();
        out.entries[..i].reverse();
        Ok(out)
    }

    /// Lexicographic index among all `n!` permutations.
    pub fn rank(&self) -> Result<Rank, PermError> {
        if self.len() > MAX_RANK_N {
            return Err(PermError::RankCapacity(self.len()));
        }
        Ok(lehmer_rank(&self.entries))
    }

    pub fn unrank(n: usize, rank: Rank) -> Result<Self, PermError> {
        check_len(n)?;
        let order = factorial(n).ok_or(PermError::RankCapacity(n))?;
        if rank >= order {
            return Err(PermError::RankOutOfRange { rank, n, order });
        }
        let mut entries = vec![0u8; n];
        lehmer_unrank(rank, &mut entries);
        Ok(Perm { entries })
    }
}

impl SignedPerm {
    pub fn identity(n: usize) -> Result<Self, PermError> {
        check_len(n)?;
        Ok(SignedPerm { entries: (1..=n as i8).collect() })
    }

    pub fn new(entries: Vec<i8>) -> Result<Self, PermError> {
        check_len(entries.len())?;
        check_bijection(entries.len(), entries.iter().map(|&v| (v as i64).abs()))?;
        Ok(SignedPerm { entries })
    }

    pub fn from_values(values: &[i64]) -> Result<Self, PermError> {
        check_len(values.len())?;
        check_bijection(values.len(), values.iter().map(|v| v.abs()))?;
        Ok(SignedPerm { entries: values.iter().map(|&v| v as i8).collect() })
    }

    pub(crate) fn from_raw(entries: Vec<i8>) -> Self {
        debug_assert!(SignedPerm::new(entries.clone()).is_ok());
        SignedPerm { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, &v)| v as i64 == i as i64 + 1)
    }

    /// The underlying unsigned arrangement `|w(1)| ... |w(n)|`.
    pub fn unsigned(&self) -> Perm {
        Perm { entries: self.entries.iter().map(|v| v.unsigned_abs()).collect() }
    }

    /// The signed reversal `r_i^B`: `[-i ... -1 (i+1) ... n]`.
    pub fn reversal(n: usize, i: usize) -> Result<Self, PermError> {
        SignedPerm::identity(n)?.apply_flip(i)
    }

    /// Reverses and negates the first `i` window entries (`self * r_i^B`).
    pub fn apply_flip(&self, i: usize) -> Result<Self, PermError> {
        let n = self.len();
        if !(1..=n).contains(&i) {
            return Err(PermError::FlipOutOfRange { i, min: 1, n });
        }
        let mut out = self.clone();
        signed_flip(&mut out.entries, i);
        Ok(out)
    }

    /// Unsigned rank in the high part, sign bit of `w(i)` at bit `i - 1`.
    pub fn rank(&self) -> Result<Rank, PermError> {
        let n = self.len();
        if n > MAX_SIGNED_RANK_N {
            return Err(PermError::RankCapacity(n));
        }
        let abs: Vec<u8> = self.entries.iter().map(|v| v.unsigned_abs()).collect();
        Ok((lehmer_rank(&abs) << n) | sign_bits(&self.entries))
    }

    pub fn unrank(n: usize, rank: Rank) -> Result<Self, PermError> {
        check_len(n)?;
        let order = signed_order(n).ok_or(PermError::RankCapacity(n))?;
        if rank >= order {
            return Err(PermError::RankOutOfRange { rank, n, order });
        }
        let mut abs = vec![0u8; n];
        lehmer_unrank(rank >> n, &mut abs);
        let entries =
            abs.iter().enumerate().map(|(i, &v)| if rank >> i & 1 == 1 { -(v as i8) } else { v as i8 }).collect();
        Ok(SignedPerm { entries })
    }
}

pub(crate) fn signed_flip(entries: &mut [i8], i: usize) {
    entries[..i].reverse();
    for v in &mut entries[..i] {
        *v = -*v;
    }
}

pub(crate) fn sign_bits(entries: &[i8]) -> u64 {
    entries.iter().enumerate().fold(0, |acc, (i, &v)| acc | ((v < 0) as u64) << i)
}

/// Lehmer rank of a permutation of `1..=n`, `n <= 20`.
///
/// Digit `j` counts the values smaller than `entries[j]` that have not
/// appeared yet, found with one popcount over a used-value mask.
pub(crate) fn lehmer_rank(entries: &[u8]) -> u64 {
    let n = entries.len();
    let mut used = 0u32;
    let mut rank = 0u64;
    for (j, &v) in entries.iter().enumerate() {
        let below = (1u32 << v) - 2;
        let digit = (v as u32 - 1) - (used & below).count_ones();
        rank += digit as u64 * FACTORIALS[n - 1 - j];
        used |= 1 << v;
    }
    rank
}

/// Writes the permutation of `1..=out.len()` with the given Lehmer rank.
pub(crate) fn lehmer_unrank(mut rank: u64, out: &mut [u8]) {
    let n = out.len();
    let mut available = ((1u32 << n) - 1) << 1;
    for (j, slot) in out.iter_mut().enumerate() {
        let f = FACTORIALS[n - 1 - j];
        let mut digit = rank / f;
        rank %= f;
        let mut bits = available;
        while digit > 0 {
            bits &= bits - 1;
            digit -= 1;
        }
        let v = bits.trailing_zeros();
        available &= !(1 << v);
        *slot = v as u8;
    }
}

/// Either kind of stack, as produced by the text parser.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AnyPerm {
    Plain(Perm),
    Burnt(SignedPerm),
}

impl AnyPerm {
    pub fn len(&self) -> usize {
        match self {
            AnyPerm::Plain(p) => p.len(),
            AnyPerm::Burnt(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for AnyPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyPerm::Plain(p) => p.fmt(f),
            AnyPerm::Burnt(s) => s.fmt(f),
        }
    }
}

fn tokenize(text: &str) -> Result<(bool, Vec<i64>), PermError> {
    let trimmed = text.trim();
    let opens = trimmed.starts_with('[');
    let closes = trimmed.ends_with(']');
    if opens != closes {
        return Err(PermError::Brackets(text.to_string()));
    }
    let body = if opens { &trimmed[1..trimmed.len() - 1] } else { trimmed };
    if body.contains(['[', ']']) {
        return Err(PermError::Brackets(text.to_string()));
    }
    let values = body
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| PermError::Malformed(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((opens, values))
}

/// Parses window notation. Brackets or any negative entry make the result
/// signed; otherwise it is an ordinary permutation.
pub fn parse_perm(text: &str) -> Result<AnyPerm, PermError> {
    let (bracketed, values) = tokenize(text)?;
    if bracketed || values.iter().any(|&v| v < 0) {
        SignedPerm::from_values(&values).map(AnyPerm::Burnt)
    } else {
        Perm::from_values(&values).map(AnyPerm::Plain)
    }
}

pub fn format_perm(p: &AnyPerm) -> String {
    p.to_string()
}

impl FromStr for Perm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (_, values) = tokenize(s)?;
        Perm::from_values(&values)
    }
}

impl FromStr for SignedPerm {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (_, values) = tokenize(s)?;
        SignedPerm::from_values(&values)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Display for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm({self})")
    }
}
