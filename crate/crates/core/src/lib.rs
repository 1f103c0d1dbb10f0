// guards like `!(x > 0.0)` are meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod functions;
pub mod geometry;
pub mod regularization;
pub mod rng;
pub mod sweeping;
pub mod tolerances;
pub mod verification;

pub use error::{Error, Result};
