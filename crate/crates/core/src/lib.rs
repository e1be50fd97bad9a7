//! Coefficient-functional bounds for the bounded-turning, starlike and
//! convex classes of normalized analytic functions.
//!
//! The crate is organized bottom-up:
//!
//! * [`series`]: truncated power series over complex or exact rational fields
//! * [`caratheodory`]: coefficient charts for functions with positive real part
//! * [`class_maps`]: recurrences from `c_k` to `a_k` per class
//! * [`functionals`]: Hankel determinants and related functionals
//! * [`proof_trace`]: the reduced `F(c, rho)` majorants and their audit
//! * [`extremal`]: series expansions of the extremal functions
//! * [`optimizer`]: derivative-free search for functional maxima
//! * [`cli`]: the `h3audit` command-line front end

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod caratheodory;
pub mod class_maps;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod functionals;
pub mod optimizer;
pub mod proof_trace;
pub mod report;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
