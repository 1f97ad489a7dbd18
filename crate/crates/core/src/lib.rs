//! P-positions of three-heap Nim with a finite set of forbidden positions.
//!
//! * [`rules`]: positions, moves and forbidden sets.
//! * [`oracle`]: brute-force backward induction over a bounded box.
//! * [`engine`]: the word-parallel exclusion sieve and its on-disk cache.
//! * [`analysis`]: the point sets `S`, `U`, `Ubar`, `S_n` and the counting
//!   functions built on them, with checkers for the structural statements about them.
//! * [`emit`]: figure, curve and series writers.

pub mod analysis;
pub mod emit;
pub mod engine;
mod error;
pub mod oracle;
pub mod rules;

pub use engine::{solve, PairTable, PiCounts};
pub use error::{Error, Result};
pub use oracle::{solve_box, BoxSolution, Status};
pub use rules::{
    canonicalize, children, misere_forbidden, parse_forbidden, ForbiddenSet, Position,
};
