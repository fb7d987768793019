//! Multiprecision scalars, special coefficients and the dense Hermitian
//! solver the kernel computations run on.

mod coeff;
mod complex;
mod linalg;
mod real;

pub use coeff::{pochhammer_coeff, rising_factorial};
pub use complex::HpComplex;
pub use linalg::{hermitian_solve, HermitianMatrix, Solve};
pub use real::{Precision, Real};
