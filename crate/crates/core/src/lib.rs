#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod oracle;
pub mod potentials;
pub mod report;
pub mod roots;
pub mod scattering;
pub mod specfun;
pub mod spectra;
pub mod validate;

pub use error::{Error, Result};
