//! Digamma, cosine-integral and W₁ integral numerics, with several
//! independent evaluation routes per quantity so each can be cross-checked.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod arith;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod identity;
pub mod quad;
pub mod specfun;
