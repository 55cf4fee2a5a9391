//! Binary checkpoint of a layered search.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "PKLS" | version u32 | kind u8 | n u8 | completed_layer u32 | layers u32
//! | layers x u64 counts | visited words (u64) | frontier words (u64) | crc32c u32
//! ```
//!
//! Bit `b` of word `w` stands for rank `64 w + b`. The CRC-32C covers every
//! byte before it.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bitset::words_for;
use crate::graph::{GraphKind, Kind};

pub const MAGIC: [u8; 4] = *b"PKLS";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 1 + 1 + 4 + 4;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint is truncated ({0} bytes)")]
    Truncated(usize),
    #[error("not a checkpoint file (bad magic)")]
    BadMagic,
    #[error("unsupported checkpoint version {found} (expected {FORMAT_VERSION})")]
    Version { found: u32 },
    #[error("checkpoint shape mismatch: {0}")]
    Shape(String),
    #[error("checksum mismatch (stored {stored:#010x}, computed {computed:#010x})")]
    Checksum { stored: u32, computed: u32 },
    #[error("checkpoint is inconsistent: {0}")]
    Inconsistent(String),
    #[error("checkpoint I/O error on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub graph: GraphKind,
    pub completed_layer: u32,
    pub counts: Vec<u64>,
    pub visited: Vec<u64>,
    pub frontier: Vec<u64>,
}

struct CrcWriter<W> {
    inner: W,
    crc: u32,
}

impl<W: Write> Write for CrcWriter<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.crc = crc32c::crc32c_append(self.crc, &buf[..n]);
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

fn write_words<W: Write>(out: &mut W, words: &[u64]) -> io::Result<()> {
    for chunk in words.chunks(4096) {
        let bytes: Vec<u8> = chunk.iter().flat_map(|w| w.to_le_bytes()).collect();
        out.write_all(&bytes)?;
    }
    Ok(())
}

impl Checkpoint {
    pub fn encode<W: Write>(&self, out: W) -> io::Result<()> {
        let mut out = CrcWriter { inner: out, crc: 0 };
        out.write_all(&MAGIC)?;
        out.write_all(&FORMAT_VERSION.to_le_bytes())?;
        out.write_all(&[match self.graph.kind {
            Kind::Plain => 0,
            Kind::Burnt => 1,
        }])?;
        out.write_all(&[self.graph.n as u8])?;
        out.write_all(&self.completed_layer.to_le_bytes())?;
        out.write_all(&(self.counts.len() as u32).to_le_bytes())?;
        write_words(&mut out, &self.counts)?;
        write_words(&mut out, &self.visited)?;
        write_words(&mut out, &self.frontier)?;
        let crc = out.crc;
        out.inner.write_all(&crc.to_le_bytes())?;
        out.flush()
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.encode(&mut buf).expect("writing to a Vec cannot fail");
        buf
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, CheckpointError> {
        if bytes.len() < HEADER_LEN + 4 {
            return Err(CheckpointError::Truncated(bytes.len()));
        }
        if bytes[..4] != MAGIC {
            return Err(CheckpointError::BadMagic);
        }
        let u32_at = |at: usize| u32::from_le_bytes(bytes[at..at + 4].try_into().unwrap());
        let version = u32_at(4);
        if version != FORMAT_VERSION {
            return Err(CheckpointError::Version { found: version });
        }
        let kind = match bytes[8] {
            0 => Kind::Plain,
            1 => Kind::Burnt,
            other => return Err(CheckpointError::Shape(format!("unknown graph kind byte {other}"))),
        };
        let n = bytes[9] as usize;
        let graph = GraphKind::new(kind, n).map_err(|e| CheckpointError::Shape(e.to_string()))?;
        let order = graph.order().ok_or_else(|| CheckpointError::Shape(format!("{graph} is too large to rank")))?;
        let completed_layer = u32_at(10);
        let layers = u32_at(14) as usize;
        let words = words_for(order);
        let expected =
            layers.checked_add(2 * words).and_then(|w| w.checked_mul(8)).and_then(|b| b.checked_add(HEADER_LEN + 4));
        if expected != Some(bytes.len()) {
            return Err(CheckpointError::Shape(format!(
                "header describes {graph} with {layers} layers ({} bytes) but the file has {} bytes",
                expected.map_or("overflowing".to_string(), |e| e.to_string()),
                bytes.len()
            )));
        }
        let body_end = bytes.len() - 4;
        let stored = u32_at(body_end);
        let computed = crc32c::crc32c(&bytes[..body_end]);
        if stored != computed {
            return Err(CheckpointError::Checksum { stored, computed });
        }
        let mut words_iter =
            bytes[HEADER_LEN..body_end].chunks_exact(8).map(|c| u64::from_le_bytes(c.try_into().unwrap()));
        let counts: Vec<u64> = words_iter.by_ref().take(layers).collect();
        let visited: Vec<u64> = words_iter.by_ref().take(words).collect();
        let frontier: Vec<u64> = words_iter.take(words).collect();
        let cp = Checkpoint { graph, completed_layer, counts, visited, frontier };
        cp.validate()?;
        Ok(cp)
    }

    fn validate(&self) -> Result<(), CheckpointError> {
        let bad = |msg: String| Err(CheckpointError::Inconsistent(msg));
        if self.counts.len() != self.completed_layer as usize + 1 {
            return bad(format!("{} layer counts for completed layer {}", self.counts.len(), self.completed_layer));
        }
        if self.counts.first() != Some(&1) {
            return bad("layer 0 must hold exactly the identity".into());
        }
        let order = self.graph.order().unwrap_or(u64::MAX);
        let tail = order % 64;
        let spill = |words: &[u64]| tail != 0 && words.last().is_some_and(|w| w >> tail != 0);
        if spill(&self.visited) || spill(&self.frontier) {
            return bad("bits set beyond the last rank".into());
        }
        let popcount = |words: &[u64]| words.iter().map(|w| w.count_ones() as u64).sum::<u64>();
        let total: u64 = self.counts.iter().sum();
        if popcount(&self.visited) != total {
            return bad(format!("visited popcount {} differs from the sum of counts {total}", popcount(&self.visited)));
        }
        if self.frontier.iter().zip(&self.visited).any(|(f, v)| f & !v != 0) {
            return bad("frontier contains unvisited ranks".into());
        }
        let frontier_size = popcount(&self.frontier);
        if frontier_size != 0 && frontier_size != *self.counts.last().unwrap() {
            return bad(format!(
                "frontier holds {frontier_size} ranks but the last layer counts {}",
                self.counts.last().unwrap()
            ));
        }
        Ok(())
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn write_to(&self, path: &Path) -> Result<(), CheckpointError> {
        let io_err = |source| CheckpointError::Io { path: path.to_path_buf(), source };
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        let file = File::create(&tmp).map_err(io_err)?;
        let mut out = BufWriter::new(file);
        self.encode(&mut out).map_err(io_err)?;
        out.into_inner().map_err(|e| io_err(e.into_error()))?.sync_all().map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    }

    pub fn read_from(path: &Path) -> Result<Self, CheckpointError> {
        let bytes = fs::read(path).map_err(|source| CheckpointError::Io { path: path.to_path_buf(), source })?;
        Checkpoint::decode(&bytes)
    }
}
