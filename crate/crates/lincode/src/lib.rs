//! Workbench for binary linear codes.
//!
//! The crate is organized around four capabilities:
//!
//! * [`gf2`] — bit-packed words and generator matrices: RREF, duals,
//!   self-duality, weight enumerators.
//! * [`gray`] — constant-weight (revolving-door) Gray sequences: iteration,
//!   swap deltas, rank/unrank, resumable mid-sequence state.
//! * [`mindist`] — minimum distance by exhaustive enumeration, either the
//!   direct per-subset method or the Gray-delta method (two row XORs per
//!   codeword), with a deterministic parallel driver.
//! * [`equiv`] + [`design`] — permutation equivalence of codes, and
//!   deduplication of code collections scheduled by the blocks of a
//!   2-(v,k,1) design so only a block's worth of sets is ever in memory.
//!
//! Each capability has a runnable demo under `examples/`; the thin `lincode`
//! binary exposes the same functionality as subcommands.

pub mod cli;
pub mod design;
pub mod equiv;
pub mod error;
pub mod gf2;
pub mod gray;
pub mod mindist;
pub mod synth;

pub use error::{Error, Result};
pub use gf2::{Codeword, GeneratorMatrix, WeightEnumerator};
