//! Learners as abduction: each learner minimizes an explanation criterion
//! built from alignments, deviations and aggregations, using basic training
//! with or without a wrapper loop.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod agg;
pub mod del;
pub mod error;
pub mod learners;
pub mod oracle;
pub mod selftest;
pub mod synth;
pub mod train;

pub use error::{Error, Result};
