//! Published values of `R_k(n)` and `R_k^B(n)` for `0 <= k <= 11`.
//!
//! Row `n - 1` holds the values for `n`, starting at `k = 0`. Rows stop at the
//! last known column; cells beyond it are unknown, not zero.

use std::collections::BTreeMap;

use crate::graph::{GraphKind, Kind};

/// Columns `k = 0..=MAX_K` are printed.
pub const MAX_K: usize = 11;

/// `R_k(n)` for `n = 1..=21`.
pub const PLAIN: &[&[u64]] = &[
    /* n =  1 */ &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    /* n =  2 */ &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    /* n =  3 */ &[1, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    /* n =  4 */ &[1, 3, 6, 11, 3, 0, 0, 0, 0, 0, 0, 0],
    /* n =  5 */ &[1, 4, 12, 35, 48, 20, 0, 0, 0, 0, 0, 0],
    /* n =  6 */ &[1, 5, 20, 79, 199, 281, 133, 2, 0, 0, 0, 0],
    /* n =  7 */ &[1, 6, 30, 149, 543, 1357, 1903, 1016, 35, 0, 0, 0],
    /* n =  8 */ &[1, 7, 42, 251, 1191, 4281, 10561, 15011, 8520, 455, 0, 0],
    /* n =  9 */ &[1, 8, 56, 391, 2278, 10666, 38015, 93585, 132697, 79379, 5804, 0],
    /* n = 10 */ &[1, 9, 72, 575, 3963, 22825, 106461, 377863, 919365, 1309756, 814678, 73232],
    /* n = 11 */ &[1, 10, 90, 809, 6429, 43891, 252737, 1174766, 4126515, 9981073, 14250471, 9123648],
    /* n = 12 */ &[1, 11, 110, 1099, 9883, 77937, 533397, 3064788, 14141929, 49337252, 118420043, 169332213],
    /* n = 13 */
    &[1, 12, 132, 1451, 14556, 130096, 1030505, 7046318, 40309555, 184992275, 639783475, 1525125357],
    /* n = 14 */ &[1, 13, 156, 1871, 20703, 206681, 1858149, 14721545, 100464346, 572626637],
    /* n = 15 */ &[1, 14, 182, 2365, 28603, 315305, 3169675, 28528986, 226016576],
    /* n = 16 */ &[1, 15, 210, 2939, 38559, 465001, 5165641, 52027677, 468966948],
    /* n = 17 */ &[1, 16, 240, 3599, 50898, 666342, 8102491, 90238067, 911274131],
    /* n = 18 */ &[1, 17, 272, 4351, 65971, 931561, 12301949, 150044655, 1677036683],
    /* n = 19 */ &[1, 18, 306, 5201, 84153, 1274671, 18161133, 240665410, 2947991637],
    /* n = 20 */ &[1, 19, 342, 6155, 105843, 1711585, 26163389, 374193014, 4982872347],
    /* n = 21 */ &[1, 20, 380, 7219, 131464, 2260236, 36889845, 566212968, 8141208511],
];

/// `R_k^B(n)` for `n = 1..=25`.
pub const BURNT: &[&[u64]] = &[
    /* n =  1 */ &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    /* n =  2 */ &[1, 2, 2, 2, 1, 0, 0, 0, 0, 0, 0, 0],
    /* n =  3 */ &[1, 3, 6, 12, 18, 6, 2, 0, 0, 0, 0, 0],
    /* n =  4 */ &[1, 4, 12, 36, 90, 124, 96, 18, 3, 0, 0, 0],
    /* n =  5 */ &[1, 5, 20, 80, 280, 680, 1214, 1127, 389, 40, 4, 0],
    /* n =  6 */ &[1, 6, 30, 150, 675, 2340, 6604, 12795, 15519, 6957, 959, 43],
    /* n =  7 */ &[1, 7, 42, 252, 1386, 6230, 24024, 71568, 159326, 222995, 136301, 21951],
    /* n =  8 */ &[1, 8, 56, 392, 2548, 14056, 68656, 276136, 901970, 2195663, 3531887, 2743477],
    /* n =  9 */ &[1, 9, 72, 576, 4320, 28224, 166740, 843822, 3636954, 12675375, 33773653, 60758618],
    /* n = 10 */ &[1, 10, 90, 810, 6885, 51960, 359928, 2193534, 11738418, 53257425, 198586153],
    /* n = 11 */ &[1, 11, 110, 1100, 10450, 89430, 710358, 5060220, 32328648, 180577749],
    /* n = 12 */ &[1, 12, 132, 1452, 15246, 145860, 1306448, 10645866, 79016157],
    /* n = 13 */ &[1, 13, 156, 1872, 21528, 227656, 2269410, 20812077, 175905015],
    /* n = 14 */ &[1, 14, 182, 2366, 29575, 342524, 3760484, 38319281, 363216425],
    /* n = 15 */ &[1, 15, 210, 2940, 39690, 499590, 5988892, 67117596],
    /* n = 16 */ &[1, 16, 240, 3600, 52200, 709520, 9220512, 112694400],
    /* n = 17 */ &[1, 17, 272, 4352, 67456, 984640, 13787272, 182483644],
    /* n = 18 */ &[1, 18, 306, 5202, 85833, 1339056, 20097264, 286341948],
    /* n = 19 */ &[1, 19, 342, 6156, 107730, 1788774, 28645578],
    /* n = 20 */ &[1, 20, 380, 7220, 133570, 2351820, 40025856],
    /* n = 21 */ &[1, 21, 420, 8400, 163800, 3048360, 54942566],
    /* n = 22 */ &[1, 22, 462, 9702, 198891, 3900820, 74223996],
    /* n = 23 */ &[1, 23, 506, 11132, 239338, 4934006, 98835968],
    /* n = 24 */ &[1, 24, 552, 12696, 285660, 6175224, 129896272],
    /* n = 25 */ &[1, 25, 600, 14400, 338400, 7654400, 168689820],
];

pub fn rows(kind: Kind) -> &'static [&'static [u64]] {
    match kind {
        Kind::Plain => PLAIN,
        Kind::Burnt => BURNT,
    }
}

/// The published value of `R_k(n)` (or `R_k^B(n)`), if the cell is filled.
pub fn published(kind: Kind, k: usize, n: usize) -> Option<u64> {
    let row = rows(kind).get(n.checked_sub(1)?)?;
    row.get(k).copied()
}

pub fn max_n(kind: Kind) -> usize {
    rows(kind).len()
}

/// Known `R_k(n)` values, keyed by `(k, n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountTable {
    pub kind: Option<Kind>,
    cells: BTreeMap<(usize, usize), u64>,
}

impl CountTable {
    pub fn new(kind: Kind) -> Self {
        CountTable { kind: Some(kind), cells: BTreeMap::new() }
    }

    pub fn published(kind: Kind) -> Self {
        let mut t = CountTable::new(kind);
        for (idx, row) in rows(kind).iter().enumerate() {
            for (k, &v) in row.iter().enumerate() {
                t.insert(k, idx + 1, v);
            }
        }
        t
    }

    /// Layer counts from a complete search are exact for every `k`,
    /// including the zeros past the diameter.
    pub fn from_profiles<'a>(
        kind: Kind,
        profiles: impl IntoIterator<Item = (GraphKind, &'a [u64])>,
        max_k: usize,
    ) -> Self {
        let mut t = CountTable::new(kind);
        for (g, counts) in profiles {
            for k in 0..=max_k {
                t.insert(k, g.n, counts.get(k).copied().unwrap_or(0));
            }
        }
        t
    }

    pub fn insert(&mut self, k: usize, n: usize, value: u64) {
        self.cells.insert((k, n), value);
    }

    pub fn get(&self, k: usize, n: usize) -> Option<u64> {
        self.cells.get(&(k, n)).copied()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.cells.iter().map(|(&(k, n), &v)| (k, n, v))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}
