//! Distance layers, short cycles and counting formulas for the pancake
//! graph `P_n` and the burnt pancake graph `BP_n`.

pub mod bitset;
pub mod cycles;
pub mod formula;
pub mod graph;
pub mod perm;
pub mod search;
pub mod tables;

pub use graph::{GraphKind, Kind};
pub use perm::{parse_perm, AnyPerm, Perm, SignedPerm};
pub use search::{layer_profile, LayerProfile, SearchConfig};
