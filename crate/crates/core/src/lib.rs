// negated comparisons deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clifford;
pub mod error;
pub mod exec;
pub mod quadrature;
pub mod special;
pub mod submonogenic;
pub mod kernels;
pub mod reconstruction;
pub mod report;
pub mod suites;
