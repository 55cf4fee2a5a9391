//! Layered breadth-first search from the identity over bit arrays indexed
//! by vertex rank.
//!
//! Each layer is expanded by scanning the set bits of the current frontier,
//! unranking, applying every flip and ranking the neighbours. Workers own
//! disjoint word ranges of the frontier and race only on idempotent
//! `fetch_or`s into the visited and next-frontier arrays, so the resulting
//! layer sets do not depend on the worker count. Counting happens between
//! layers on a single thread.

mod checkpoint;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use checkpoint::{Checkpoint, CheckpointError, FORMAT_VERSION, MAGIC};

use crate::bitset::{words_for, AtomicBitSet};
use crate::graph::{GraphError, GraphKind, Kind};
use crate::perm::{self, AnyPerm, Rank, MAX_RANK_N};

pub const DEFAULT_MEMORY_LIMIT: u64 = 4 << 30;

/// Words of the frontier handed to a worker at a time.
const CHUNK_WORDS: usize = 1024;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("{graph} needs {required} bytes of bit arrays, above the {limit}-byte memory limit")]
    MemoryLimit { graph: GraphKind, required: u64, limit: u64 },
    #[error("{0} has too many vertices to rank in 64 bits")]
    Capacity(GraphKind),
    #[error("checkpoint holds {found}, expected {expected}")]
    GraphMismatch { expected: GraphKind, found: GraphKind },
    #[error(transparent)]
    Checkpoint(#[from] CheckpointError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub memory_limit: u64,
    pub workers: usize,
    /// Written after every completed layer when set.
    pub checkpoint: Option<PathBuf>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            memory_limit: DEFAULT_MEMORY_LIMIT,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            checkpoint: None,
        }
    }
}

impl SearchConfig {
    pub fn with_workers(workers: usize) -> Self {
        SearchConfig { workers, ..SearchConfig::default() }
    }
}

/// Sizes of the distance layers around the identity: `counts[k]` is
/// `R_k(n)` (plain) or `R_k^B(n)` (burnt).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerProfile {
    pub graph: GraphKind,
    pub counts: Vec<u64>,
    pub total_visited: u64,
}

impl LayerProfile {
    /// Eccentricity of the identity, i.e. the graph diameter.
    pub fn diameter(&self) -> usize {
        self.counts.len() - 1
    }

    /// `counts[k]`, or 0 past the last layer.
    pub fn count(&self, k: usize) -> u64 {
        self.counts.get(k).copied().unwrap_or(0)
    }
}

/// Bytes taken by `arrays` bit arrays over the vertices of `g`.
pub fn bit_array_bytes(g: GraphKind, arrays: u64) -> Option<u64> {
    let words = words_for(g.order()?) as u64;
    words.checked_mul(8)?.checked_mul(arrays)
}

/// Memory needed by [`layer_profile`]: visited, frontier and next frontier.
pub fn required_memory(g: GraphKind) -> Option<u64> {
    bit_array_bytes(g, 3)
}

fn check_memory(g: GraphKind, arrays: u64, limit: u64) -> Result<(), SearchError> {
    if g.kind == Kind::Plain && g.n > MAX_RANK_N || g.kind == Kind::Burnt && g.n > perm::MAX_SIGNED_RANK_N {
        return Err(SearchError::Capacity(g));
    }
    let required = bit_array_bytes(g, arrays).ok_or(SearchError::Capacity(g))?;
    if required > limit {
        return Err(SearchError::MemoryLimit { graph: g, required, limit });
    }
    Ok(())
}

/// A search paused between layers.
pub struct LayerSearch {
    graph: GraphKind,
    order: u64,
    visited: AtomicBitSet,
    frontier: AtomicBitSet,
    next: AtomicBitSet,
    counts: Vec<u64>,
    pool: rayon::ThreadPool,
}

impl LayerSearch {
    /// Starts a search at layer 0 (the identity alone).
    pub fn new(graph: GraphKind, config: &SearchConfig) -> Result<Self, SearchError> {
        check_memory(graph, 3, config.memory_limit)?;
        let order = graph.order().ok_or(SearchError::Capacity(graph))?;
        let visited = AtomicBitSet::new(order);
        let frontier = AtomicBitSet::new(order);
        visited.set(0);
        frontier.set(0);
        Ok(LayerSearch {
            graph,
            order,
            visited,
            frontier,
            next: AtomicBitSet::new(order),
            counts: vec![1],
            pool: build_pool(config.workers)?,
        })
    }

    /// Restores a search from a checkpoint file, optionally insisting on a
    /// particular graph.
    pub fn from_checkpoint(
        path: &Path,
        expected: Option<GraphKind>,
        config: &SearchConfig,
    ) -> Result<Self, SearchError> {
        let cp = Checkpoint::read_from(path)?;
        if let Some(expected) = expected {
            if expected != cp.graph {
                return Err(SearchError::GraphMismatch { expected, found: cp.graph });
            }
        }
        Self::from_checkpoint_data(cp, config)
    }

    pub fn from_checkpoint_data(cp: Checkpoint, config: &SearchConfig) -> Result<Self, SearchError> {
        let graph = cp.graph;
        check_memory(graph, 3, config.memory_limit)?;
        let order = graph.order().ok_or(SearchError::Capacity(graph))?;
        let shape = |what: &str| CheckpointError::Shape(format!("{what} array has the wrong length"));
        Ok(LayerSearch {
            graph,
            order,
            visited: AtomicBitSet::from_words(cp.visited, order).ok_or_else(|| shape("visited"))?,
            frontier: AtomicBitSet::from_words(cp.frontier, order).ok_or_else(|| shape("frontier"))?,
            next: AtomicBitSet::new(order),
            counts: cp.counts,
            pool: build_pool(config.workers)?,
        })
    }

    pub fn graph(&self) -> GraphKind {
        self.graph
    }

    pub fn completed_layer(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn visited_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// No further layer can be non-empty.
    pub fn is_complete(&self) -> bool {
        self.visited_count() == self.order || self.frontier.count_ones() == 0
    }

    /// Whether `rank` lies in the last completed layer.
    pub fn frontier_contains(&self, rank: Rank) -> bool {
        self.frontier.get(rank)
    }

    pub fn frontier(&self) -> &AtomicBitSet {
        &self.frontier
    }

    /// Expands one layer. Returns the size of the new layer, or `None` when
    /// the search was already complete.
    pub fn step(&mut self) -> Option<u64> {
        if self.is_complete() {
            return None;
        }
        let (graph, visited, frontier, next) = (self.graph, &self.visited, &self.frontier, &self.next);
        self.pool.install(|| {
            frontier.words().par_chunks(CHUNK_WORDS).enumerate().for_each(|(chunk, words)| {
                let base = (chunk * CHUNK_WORDS) as u64 * 64;
                expand_words(graph, base, words, visited, next)
            })
        });
        let found = self.next.count_ones();
        std::mem::swap(&mut self.frontier, &mut self.next);
        self.next.clear();
        if found == 0 {
            return None;
        }
        self.counts.push(found);
        Some(found)
    }

    pub fn profile(&self) -> LayerProfile {
        LayerProfile { graph: self.graph, counts: self.counts.clone(), total_visited: self.visited_count() }
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            graph: self.graph,
            completed_layer: self.completed_layer() as u32,
            counts: self.counts.clone(),
            visited: self.visited.to_words(),
            frontier: self.frontier.to_words(),
        }
    }

    pub fn save_checkpoint(&self, path: &Path) -> Result<(), SearchError> {
        Ok(self.checkpoint().write_to(path)?)
    }

    /// Expands until complete, checkpointing after every layer if asked.
    pub fn run(&mut self, checkpoint: Option<&Path>) -> Result<LayerProfile, SearchError> {
        while self.step().is_some() {
            if let Some(path) = checkpoint {
                self.save_checkpoint(path)?;
            }
        }
        if let Some(path) = checkpoint {
            self.save_checkpoint(path)?;
        }
        Ok(self.profile())
    }
}

fn build_pool(workers: usize) -> Result<rayon::ThreadPool, SearchError> {
    rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| SearchError::Pool(e.to_string()))
}

fn expand_words(
    graph: GraphKind,
    base: u64,
    words: &[std::sync::atomic::AtomicU64],
    visited: &AtomicBitSet,
    next: &AtomicBitSet,
) {
    let discover = |r: Rank| {
        if visited.set(r) {
            next.set(r);
        }
    };
    let n = graph.n;
    let mut plain = [0u8; MAX_RANK_N];
    let mut signed = [0i8; perm::MAX_SIGNED_RANK_N];
    let mut abs = [0u8; perm::MAX_SIGNED_RANK_N];
    for (offset, word) in words.iter().enumerate() {
        let mut bits = word.load(std::sync::atomic::Ordering::Relaxed);
        while bits != 0 {
            let rank = base + offset as u64 * 64 + bits.trailing_zeros() as u64;
            bits &= bits - 1;
            match graph.kind {
                Kind::Plain => {
                    let p = &mut plain[..n];
                    perm::lehmer_unrank(rank, p);
                    for i in 2..=n {
                        p[..i].reverse();
                        discover(perm::lehmer_rank(p));
                        p[..i].reverse();
                    }
                }
                Kind::Burnt => {
                    let (s, a) = (&mut signed[..n], &mut abs[..n]);
                    perm::lehmer_unrank(rank >> n, a);
                    for (j, (slot, &v)) in s.iter_mut().zip(a.iter()).enumerate() {
                        *slot = if rank >> j & 1 == 1 { -(v as i8) } else { v as i8 };
                    }
                    for i in 1..=n {
                        perm::signed_flip(s, i);
                        for (x, &v) in a.iter_mut().zip(s.iter()) {
                            *x = v.unsigned_abs();
                        }
                        discover(perm::lehmer_rank(a) << n | perm::sign_bits(s));
                        perm::signed_flip(s, i);
                    }
                }
            }
        }
    }
}

/// Full layer profile of `g`, resuming from `config.checkpoint` when that
/// file already exists.
pub fn layer_profile(g: GraphKind, config: &SearchConfig) -> Result<LayerProfile, SearchError> {
    let path = config.checkpoint.as_deref();
    let mut search = match path {
        Some(p) if p.exists() => LayerSearch::from_checkpoint(p, Some(g), config)?,
        _ => LayerSearch::new(g, config)?,
    };
    search.run(path)
}

/// Finishes a search from a checkpoint file. Further checkpoints go to the
/// same file unless `config.checkpoint` names another.
pub fn resume(path: &Path, config: &SearchConfig) -> Result<LayerProfile, SearchError> {
    let mut search = LayerSearch::from_checkpoint(path, None, config)?;
    let out = config.checkpoint.as_deref().unwrap_or(path);
    if search.is_complete() {
        return Ok(search.profile());
    }
    search.run(Some(out))
}

/// Number of flips needed to sort `target`.
pub fn distance(g: GraphKind, target: &AnyPerm, config: &SearchConfig) -> Result<usize, SearchError> {
    let rank = g.rank(target)?;
    let mut search = LayerSearch::new(g, &SearchConfig { checkpoint: None, ..config.clone() })?;
    loop {
        if search.frontier_contains(rank) {
            return Ok(search.completed_layer());
        }
        if search.step().is_none() {
            unreachable!("the pancake graphs are connected");
        }
    }
}

/// Two bits per vertex: 0 for unseen, otherwise `layer % 3 + 1`.
struct LayerResidues {
    low: Vec<u64>,
    high: Vec<u64>,
}

impl LayerResidues {
    fn record(&mut self, frontier: &AtomicBitSet, layer: usize) {
        let code = layer % 3 + 1;
        for w in 0..frontier.words().len() {
            let bits = frontier.word(w);
            if code & 1 != 0 {
                self.low[w] |= bits;
            }
            if code & 2 != 0 {
                self.high[w] |= bits;
            }
        }
    }

    fn layer_is(&self, rank: Rank, layer: usize) -> bool {
        let (w, b) = ((rank / 64) as usize, rank % 64);
        let code = (self.low[w] >> b & 1) | (self.high[w] >> b & 1) << 1;
        code as usize == layer % 3 + 1
    }
}

/// Memory needed by [`sort_sequence`]: the search arrays plus two residue
/// arrays.
pub fn sort_memory(g: GraphKind) -> Option<u64> {
    bit_array_bytes(g, 5)
}

/// Optimal flip sequence sorting `target`; among optimal sequences, the
/// lexicographically smallest one.
///
/// Built greedily from `target`: at each step take the smallest flip
/// reaching the previous layer. Adjacent vertices differ by at most one
/// layer, so residues mod 3 identify that layer.
pub fn sort_sequence(g: GraphKind, target: &AnyPerm, config: &SearchConfig) -> Result<Vec<usize>, SearchError> {
    check_memory(g, 5, config.memory_limit)?;
    let rank = g.rank(target)?;
    let mut search = LayerSearch::new(g, &SearchConfig { checkpoint: None, ..config.clone() })?;
    let words = words_for(g.order().ok_or(SearchError::Capacity(g))?);
    let mut residues = LayerResidues { low: vec![0; words], high: vec![0; words] };
    residues.record(search.frontier(), 0);
    while !search.frontier_contains(rank) {
        search.step().expect("the pancake graphs are connected");
        residues.record(search.frontier(), search.completed_layer());
    }
    let mut layer = search.completed_layer();
    drop(search);

    let mut flips = Vec::with_capacity(layer);
    let mut current = target.clone();
    while layer > 0 {
        let (i, closer) = g
            .flips()
            .map(|i| (i, g.apply_flip(&current, i).expect("valid flip")))
            .find(|(_, v)| residues.layer_is(g.rank(v).expect("rankable"), layer - 1))
            .expect("a vertex at layer k > 0 has a neighbour at layer k - 1");
        flips.push(i);
        current = closer;
        layer -= 1;
    }
    Ok(flips)
}
