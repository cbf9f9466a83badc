//! zetalab: a numerical laboratory for zeta mean values, S1 moments,
//! reverse ladder iterations, Dirichlet series mean values, and exact
//! Fermat-rational arithmetic, with limit functionals built on top.

pub mod config;
pub mod dirichlet;
pub mod error;
pub mod fermat;
pub mod functionals;
pub mod ladders;
pub mod quadrature;
pub mod report;
pub mod s_one;
pub mod zeta_kernel;

pub use error::{Error, Result};
