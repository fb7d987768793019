//! Reproducing kernels of weighted Bergman spaces and of their zero-based
//! invariant subspaces.

mod bergman;
mod linear;
mod multiplicity;
mod recursive;
mod toy;
mod transform;
mod weight;
mod zeroset;

pub use bergman::{bergman_kernel, blaschke_product, extremal_derivative, extremal_function, one_point_kernel};
pub use linear::{kernel_eval_coeffs, kernel_linear_system, CoeffDoc, KernelRep, KernelRepDoc};
pub use multiplicity::{kernel_multipoint_closed, kernel_with_multiplicity, ZeroKernel};
pub use recursive::kernel_recursive;
pub use toy::{has_disk_zero, radial_power_kernel, toy_kernel, toy_kernel_full, toy_weight, toy_zero};
pub use transform::{mobius_kernel_transform, scale_kernel, weighted_kernel_from_zero_kernel, Mobius};
pub use weight::{lambda_omega, TabulatedWeight, WeightKind, WeightSpec};
pub use zeroset::{PointDoc, ZeroPoint, ZeroSet, ZeroSetDoc};
