//! Exact verification engine for q-supercongruences, terminating basic
//! hypergeometric identities and p-adic supercongruences modulo `p^3`.
//!
//! Layers, bottom up:
//! - [`arith`]: Laurent polynomials and canonical rational functions in `q`.
//! - [`cyclotomic`]: `Phi_n(q)` and congruences modulo `Phi_n(q)^e`.
//! - [`pit`]: degree bounds and deterministic evaluation grids.
//! - [`qhyper`]: q-shifted factorials, truncated series and every q-side check.
//! - [`padic`]: residues mod `p^k`, Morita's `Gamma_p` and the mod `p^3` checks.
//! - [`harness`]: suites, reports and the `verify` command line.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod harness;
pub mod padic;
pub mod pit;
pub mod qhyper;
mod verdict;

pub use arith::{LaurentPoly, RationalFunc};
pub use error::{Error, Result};
pub use verdict::{Status, Verdict};
