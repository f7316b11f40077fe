//! Finite semigroup and monoid engine.
//!
//! Enumeration from generators, congruence closure, quotients, bounded
//! enumeration of finitely presented monoids and presentation checking.

mod congruence;
mod presentation;
mod table;
mod todd_coxeter;
mod verify;

pub use congruence::{closure_under_maps, congruence_closure, CongruencePartition, Side};
pub use presentation::{shortlex_cmp, Kind, Presentation, Word};
pub use table::{
    closure_from_generators, from_multiplication, isomorphic_via_gens, table_presentation,
    CayleyTable,
};
pub use todd_coxeter::{enumerate_presentation, enumerate_presentation_with, EnumConfig};
pub use verify::{verify_presentation, verify_presentation_with, SizeVerdict, VerificationReport};

use thiserror::Error;

/// Default cap on enumerated elements and Todd–Coxeter nodes.
pub const DEFAULT_NODE_CAP: usize = 5_000_000;
/// Tables up to this size carry a full product table.
pub const FULL_TABLE_CAP: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FmError {
    #[error("enumeration exceeded the element cap of {cap}")]
    SizeBoundExceeded { cap: usize },
    #[error("presented monoid not enumerated within bounds ({nodes} nodes defined{})",
        .completed_size.map(|s| format!(", completed with {s} elements")).unwrap_or_default())]
    BoundExceeded {
        nodes: usize,
        completed_size: Option<usize>,
    },
    #[error("partition is not a congruence: classes of {0} and {1} are not preserved")]
    NotACongruence(usize, usize),
    #[error("invalid input: {0}")]
    BadInput(String),
}
