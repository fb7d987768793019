//! Surfaces `(𝔻, ω|dz|²)`: grids and curvature, the weights `ω₁` and `ω₀`,
//! and the metric potential.

pub mod curvature;
pub mod grid;
pub mod mpot;
pub mod weights;

pub use curvature::{
    curvature_density, curvature_density_with_step, curvature_isothermal, parse_family, CurvatureData,
    CurvatureFamily,
};
pub use grid::{brioschi_curvature, grid_isothermal_curvature, laplace_beltrami_apply, GridField, GridSpec, MetricGrid};
pub use mpot::{
    boundary_normal_derivative, metric_potential, normal_derivative_fd, verify_mpot_system, MpotOptions, MpotReport,
};
pub use weights::{
    omega0_construct, omega1_from_mu, polynomial_kernel, ExtremalWeight, KernelFn, Omega1, PolynomialKernel, WeightFn,
};
