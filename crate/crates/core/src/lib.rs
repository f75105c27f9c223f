//! Algorithmic complexity of short binary strings by the Coding Theorem
//! Method: run every small Turing machine from a blank tape, count how often
//! each output appears, and read complexity off as `-log2` of that frequency.
//!
//! The crate also produces comparison distributions from cellular automata
//! and tag systems, and measures rank agreement between them.

pub mod analysis;
pub mod bounds;
pub mod ca;
pub mod distribution;
pub mod error;
pub mod sweep;
pub mod tag;
pub mod tm;
pub mod word;

pub use distribution::{ComplexityEstimate, FrequencyDistribution};
pub use error::{Error, Result};
