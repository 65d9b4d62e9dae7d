//! Binary locally repairable codes built as the m-fold direct product of
//! [r+1, r] single-parity-check codes.
//!
//! The code places symbols on the grid `Z_{r+1}^m`. Information symbols
//! occupy the `r^m` points with every digit below r; each remaining point
//! stores one parity. Every axis-aligned line of r+1 symbols sums to
//! zero, giving each symbol locality r and m pairwise disjoint repair
//! groups. Repairing erasures one at a time, in the right order, succeeds
//! for every pattern of at most `2^m − 1` erasures, which is what this
//! crate constructs, plans, executes, and independently verifies.
//!
//! # Example
//!
//! ```
//! use lrc::{CodeParams, MaskedWord, PlanOutcome};
//!
//! let code = CodeParams::new(2, 3)?;
//! assert_eq!((code.n(), code.k(), code.t()), (27, 8, 7));
//!
//! let word = code.encode(&"10110100".parse()?)?;
//! let erasures = code.parse_pattern("020 120 010 110 021 121 011")?;
//! let masked = MaskedWord::new(&word, erasures.ranks())?;
//!
//! let PlanOutcome::Complete(plan) = code.plan_sequential(&erasures) else {
//!     panic!("patterns of at most 2^m - 1 erasures always complete");
//! };
//! assert_eq!(code.execute_plan(&masked, &plan)?, word);
//! # Ok::<(), lrc::Error>(())
//! ```

pub mod analysis;
pub mod bounds;
mod code;
mod coord;
mod error;
pub mod gf2;
mod params;
mod repair;
mod word;

pub use code::ParityCheckMatrix;
pub use coord::Coord;
pub use error::{Error, Result};
pub use params::{CodeParams, DEFAULT_SYMBOL_LIMIT};
pub use repair::{ErasurePattern, ParallelCheck, PlanOutcome, RepairPlan, RepairStep};
pub use word::{BitWord, MaskedWord};
