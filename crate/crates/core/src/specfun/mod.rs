//! Special functions: Bessel J/Y of real order, Hankel functions, modified
//! Bessel functions of imaginary order and the complex gamma function.
//!
//! Everything here is pure and allocation-free, so it can be called from any
//! number of threads.

mod bessel_imag;
mod bessel_j;
mod gamma;
pub mod selftest;

pub use bessel_imag::{
    bessel_i_imag, bessel_i_imag_pair, bessel_k_imag, bessel_k_imag_connection,
    bessel_k_imag_scaled, MAX_IMAG_ORDER,
};
pub use bessel_j::{
    bessel_j, bessel_j_series, bessel_jy, bessel_y, hankel, BesselJY, HankelKind, MAX_ARG,
    MAX_ORDER,
};
pub use gamma::{gamma_complex, ln_gamma_complex};

pub(crate) use bessel_j::sin_cos_pi;

/// Complex numbers used for amplitudes and Hankel values.
pub type ComplexValue = num_complex::Complex64;
