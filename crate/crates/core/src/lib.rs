//! Exact computer algebra for groupoid graded rings and modules over prime fields.
//!
//! The crate is organized around a small exact linear algebra kernel
//! ([`exactla`]), finite groupoids ([`groupoid`]), structure-constant graded
//! rings ([`ring`]) and graded modules ([`module`]), and the analyses built on
//! top of them: graded Jacobson radical and socle engines ([`radical`]),
//! composition series, semisimplicity and Fitting decompositions
//! ([`structure`]), and symbolic chain-condition classification ([`chains`]).

pub mod chains;
pub mod exactla;
pub mod groupoid;
pub mod module;
pub mod poset;
pub mod radical;
pub mod ring;
pub mod structure;

mod error;

pub use error::{Error, Result};

/// Resource limits for the enumeration-based oracles.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    /// Maximum number of (projective) homogeneous vectors an oracle may
    /// enumerate in one call.
    pub enum_limit: u64,
    /// Cap on the size of a submodule lattice before giving up.
    pub lattice_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enum_limit: 1 << 16,
            lattice_limit: 1 << 16,
        }
    }
}

impl Budget {
    pub fn with_enum_limit(limit: u64) -> Self {
        Budget {
            enum_limit: limit,
            ..Budget::default()
        }
    }
}
