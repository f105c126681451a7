//! Membership in the polynomial closure of a base class of regular languages.
//!
//! Given a regular language `L` and a base class `C` (a quotienting lattice
//! presented as an oracle for membership and separation), this crate decides
//! whether `L` belongs to `Pol(C)`, `co-Pol(C)` or `UPol(C)` by evaluating
//! equations over the syntactic ordered monoid of `L`, parameterized by the
//! `C`-pair relation. On positive answers it synthesizes an explicit `Pol(C)`
//! expression for `L` and verifies it by compiling the expression back to an
//! automaton.
//!
//! The crate is organized around the pipeline:
//!
//! - [`automata`]: regexes, NFAs, canonical minimal DFAs, boolean operations,
//!   quotients, comparisons, and the scattered-superword closure.
//! - [`algebra`]: finite ordered monoids and the syntactic morphism/order.
//! - [`baseclass`]: the pluggable base class `C` (ST, AT, finite lattices),
//!   lattice saturation, the canonical preorder and its period.
//! - [`pairs`]: the `C`-pair and saturated `C`-pair relations.
//! - [`decide`]: the equation checks for `Pol(C)`, `co-Pol(C)`, `UPol(C)`.
//! - [`witness`]: `K_e` separator languages and synthesis of the expression
//!   `⋃_{s∈F} H_{s,h}`, with per-level soundness checks.
//! - [`forest`]: factorization forests of height at most `3|M| - 1`.
//! - [`laws`]: seeded suites exercising the algebraic laws end to end.
//! - [`cli`]: the `polc` command-line front end.

pub mod algebra;
pub mod automata;
pub mod baseclass;
mod bits;
pub mod cli;
pub mod decide;
pub mod forest;
pub mod laws;
pub mod pairs;
pub mod witness;

use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
///
/// The CLI maps these onto its exit-code contract: input and resource
/// problems exit with 2, violated internal self-checks (statements the
/// decision procedures rely on) exit with 4.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed regex or word; `offset` is a byte offset into the input.
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// Malformed DFA file, lattice manifest, or other structured input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Two operands were built over different alphabets.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A configurable resource cap was exceeded.
    #[error("{what} exceeds the configured cap of {cap}")]
    Resource { what: String, cap: usize },

    /// An oracle broke its separation contract; treated as a bug, not user error.
    #[error("oracle contract violation: {0}")]
    OracleContract(String),

    /// An internal self-check tripped; the decision procedures cross-assert
    /// equivalent formulations, and a disagreement signals a bug.
    #[error("internal invariant failure: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
