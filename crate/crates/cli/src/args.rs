use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pancake::formula::Variant;
use pancake::Kind;

/// Distance layers, short cycles and counting formulas for the pancake and
/// burnt pancake graphs.
///
/// Signed stacks are written in window notation inside brackets and must be
/// quoted, e.g. `pancake sort --graph burnt "[-2 1 3]"`, because a bare
/// negative number would be read as a flag.
#[derive(Parser, Debug)]
#[command(name = "pancake", version, about, long_about = None)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Memory budget for the search bit arrays (e.g. 512M, 4GiB, 1073741824)
    #[arg(long, global = true, env = "PANCAKE_MEM_LIMIT", default_value = "4GiB", value_parser = parse_size)]
    pub mem_limit: u64,
    /// Worker threads (default: available cores)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Output format; each command has its own default
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Breadth-first search
    Bfs,
    /// Published tables
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Layer sizes R_k(n) for each n in a range
    Table {
        #[arg(long)]
        graph: Kind,
        /// A single n or an inclusive range such as 1..10
        #[arg(long)]
        n: NRange,
        /// Print columns k = 0..=MAX_K, padding with zeros or truncating
        #[arg(long)]
        max_k: Option<usize>,
        /// Save progress after each layer and resume from this file if it exists
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Number of flips needed to sort a stack
    Distance {
        #[arg(long)]
        graph: Kind,
        /// The stack, e.g. 2 1 3 4 or "[-2 1 3]"
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        perm: Vec<String>,
    },
    /// An optimal flip sequence and the stacks it passes through
    Sort {
        #[arg(long)]
        graph: Kind,
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        perm: Vec<String>,
    },
    /// Classify every cycle of one length through the identity
    Cycles {
        #[arg(long)]
        graph: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        length: usize,
    },
    /// Evaluate and check the counting formulas
    #[command(subcommand)]
    Formulas(FormulaCommand),
}

#[derive(Subcommand, Debug)]
pub enum FormulaCommand {
    /// Registered formulas with their status and range of validity
    List,
    /// Evaluate a formula
    Eval {
        #[arg(long)]
        which: String,
        #[arg(long)]
        n: NRange,
    },
    /// Compare a formula with data, or check cor62 / con63 on a table
    Check {
        /// A formula name, cor62 (plain recurrence) or con63 (burnt identity)
        #[arg(long)]
        which: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<NRange>,
        /// Data source; formulas default to bfs, identities to table
        #[arg(long, value_enum)]
        source: Option<Source>,
        /// Coefficient used by con63
        #[arg(long, default_value = "corrected")]
        variant: Variant,
    },
    /// Fit a polynomial to R_k(n) by forward differences
    Fit {
        #[arg(long)]
        graph: Kind,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: NRange,
        #[arg(long, value_enum, default_value = "table")]
        source: Source,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub start: usize,
    pub end: usize,
}

impl NRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.start..=self.end
    }

    pub fn len(self) -> usize {
        self.end - self.start + 1
    }

    pub fn contains(self, n: usize) -> bool {
        (self.start..=self.end).contains(&n)
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("`{t}` is not a non-negative integer"));
        let (start, end) = match s.split_once("..") {
            None => {
                let n = num(s)?;
                (n, n)
            }
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        };
        if start > end {
            return Err(format!("empty range {s}"));
        }
        Ok(NRange { start, end })
    }
}

impl fmt::Display for NRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

/// Byte counts with optional K/M/G/T suffixes, binary multiples either way.
pub fn parse_size(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let split = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
    let (digits, suffix) = t.split_at(split);
    let value: u64 = digits.parse().map_err(|_| format!("invalid size `{s}`"))?;
    let shift = match suffix.trim().to_ascii_lowercase().as_str() {
        "" | "b" => 0,
        "k" | "kb" | "kib" => 10,
        "m" | "mb" | "mib" => 20,
        "g" | "gb" | "gib" => 30,
        "t" | "tb" | "tib" => 40,
        other => return Err(format!("unknown size suffix `{other}` in `{s}`")),
    };
    value.checked_mul(1 << shift).ok_or_else(|| format!("size `{s}` overflows"))
}
