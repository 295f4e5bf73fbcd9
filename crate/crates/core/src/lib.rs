//! Rational quartic reciprocity workbench.
//!
//! Constructs the parameter triples of the Williams–Hardy–Friesen law,
//! evaluates both sides of the classical rational quartic reciprocity
//! formulas (including Burde's, Gosset's and Fröhlich's pair laws and the
//! prime-splitting chain behind them), and verifies them exhaustively over
//! prime ranges with machine-readable counterexample reports.
//!
//! Layers, bottom up:
//! - [`arith`]: exact modular primitives (Jacobi symbols, Tonelli–Shanks
//!   square roots, quartic residue symbols, multiplicative orders,
//!   deterministic primality, segmented prime streams).
//! - [`quadfield`]: exact arithmetic in Z[√m] and the rational surd symbol.
//! - [`represent`]: two-squares decompositions and reciprocity triples under
//!   each sign convention.
//! - [`laws`]: evaluators returning structured [`laws::LawReport`] verdicts.
//! - [`harness`]: sweep campaigns, cross-law consistency checks, JSONL/CSV/
//!   text serialization.
//!
//! Everything is pure and deterministic; campaigns parallelize internally
//! but always merge results in canonical order.

pub mod arith;
pub mod error;
pub mod harness;
pub mod laws;
pub mod quadfield;
pub mod represent;

pub use arith::SymbolValue;
pub use error::{Error, Result};
