//! A workbench for finite universal algebra and the calculus of binary
//! relations, centred on congruence n-permutability.
//!
//! The library operates on finite algebras given by full operation tables
//! and provides:
//!
//! - term evaluation and exhaustive identity checking ([`algebra`]);
//! - binary relation calculus: composition, converse, powers, closures,
//!   compatibility with an algebra, congruence generation ([`relcalc`]);
//! - n-permutability tests: pairwise permutation of congruences, the
//!   Hagemann relation conditions, and Hagemann-Mitschke term search via
//!   clone generation ([`maltsev`]);
//! - finite internal categories in sets: axiom validation, thinness,
//!   preorder/category conversion, and constructive groupoidification
//!   ([`catfin`]);
//! - a catalog of worked example structures with re-verification of every
//!   claim about them ([`paperlab`]);
//! - a bounded brute-force model finder for equational theories
//!   ([`search`]).
//!
//! Everything is pure and deterministic: the same inputs produce the same
//! outputs, including witness choices, regardless of worker counts.

pub mod algebra;
pub mod catfin;
mod exec;
pub mod maltsev;
pub mod paperlab;
pub mod relcalc;
pub mod report;
pub mod search;

pub use algebra::{Algebra, FiniteMap, Identity, Signature, Term};
pub use relcalc::BinRelation;
pub use report::{CheckItem, Report, Status};
