//! Bessel-free verification path: Numerov integration of psi'' = (V - E) psi,
//! shooting for eigenvalues, the cubic hybrid levels, and moment quadrature.

mod cubic;
mod moments;
mod numerov;
mod shooting;

pub use cubic::{cubic_levels, cubic_wavefunction, CubicOptions};
pub use moments::{moments, Moment, Observable};
pub use numerov::{numerov_integrate, numerov_integrate_fn};
pub use shooting::{
    decaying_profile, eigen_shoot, shoot_levels, Matching, ShootingProblem,
};
