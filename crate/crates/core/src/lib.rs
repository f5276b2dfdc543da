//! Exact verification of
//! `sum_G |G|^{-u} |Aut(G)|^{-1} = prod_{j>u} (1 - p^{-j})^{-1}`
//! over finite abelian p-groups `G`, through integer partitions, truncated
//! q-series, automorphism-order formulas and a stacked Durfee square
//! bijection.

pub mod bijection;
pub mod cli;
pub mod error;
pub mod groups;
pub mod identity;
pub mod partitions;
pub mod qseries;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use partitions::{BoxBound, Partition};
pub use qseries::QSeries;
pub use rational::ExactRational;
pub use report::VerificationReport;
