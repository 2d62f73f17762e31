//! Exact and heuristic halfspace (Tukey) depth.
//!
//! The depth of `p` with respect to a finite set `S` is the smallest number
//! of points of `S` in a closed halfspace whose boundary passes through
//! `p`. Writing `a_j = q_j − p`, it is the size of a minimum set of rows
//! whose removal makes `a_j·x > 0` feasible. This crate solves that problem
//! as a big-M mixed-integer program with a branch-and-cut engine built on
//! its own simplex code, and checks results against brute-force oracles.

pub mod anova;
pub mod binsearch;
pub mod bnc;
pub mod cuts;
pub mod elastic;
pub mod error;
pub mod instance;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod random;

pub use binsearch::binary_search_depth;
pub use bnc::{heuristic_depth, solve_depth, DepthResult, SearchStats, Status};
pub use error::{DepthError, Result};
pub use instance::{build_instance, DepthInstance, PointSet, SolverParams};
pub use oracle::{oracle_depth, sweep_depth_2d};
