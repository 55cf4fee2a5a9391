//! Fixed-size bit array with lock-free concurrent bit setting.

use std::sync::atomic::{AtomicU64, Ordering};

pub struct AtomicBitSet {
    words: Vec<AtomicU64>,
    len: u64,
}

pub fn words_for(len: u64) -> usize {
    len.div_ceil(64) as usize
}

impl AtomicBitSet {
    pub fn new(len: u64) -> Self {
        let words = (0..words_for(len)).map(|_| AtomicU64::new(0)).collect();
        AtomicBitSet { words, len }
    }

    /// Wraps raw words, clearing any bits at or beyond `len`.
    pub fn from_words(mut raw: Vec<u64>, len: u64) -> Option<Self> {
        if raw.len() != words_for(len) {
            return None;
        }
        if let Some(last) = raw.last_mut() {
            let tail = len % 64;
            if tail != 0 {
                *last &= (1u64 << tail) - 1;
            }
        }
        Some(AtomicBitSet { words: raw.into_iter().map(AtomicU64::new).collect(), len })
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[AtomicU64] {
        &self.words
    }

    pub fn word(&self, w: usize) -> u64 {
        self.words[w].load(Ordering::Relaxed)
    }

    pub fn get(&self, bit: u64) -> bool {
        self.word((bit / 64) as usize) >> (bit % 64) & 1 == 1
    }

    /// Sets `bit`; returns whether it was previously clear.
    pub fn set(&self, bit: u64) -> bool {
        let mask = 1u64 << (bit % 64);
        self.words[(bit / 64) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.load(Ordering::Relaxed).count_ones() as u64).sum()
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w.get_mut() = 0;
        }
    }

    pub fn to_words(&self) -> Vec<u64> {
        self.words.iter().map(|w| w.load(Ordering::Relaxed)).collect()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(w, word)| {
            let mut bits = word.load(Ordering::Relaxed);
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                Some(w as u64 * 64 + b)
            })
        })
    }
}
