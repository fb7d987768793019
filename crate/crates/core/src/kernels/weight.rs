use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};

use super::bergman::{bergman_kernel, blaschke_product, check_alpha, check_closed_disk};
use super::multiplicity::ZeroKernel;
use super::toy::{toy_kernel_full, toy_weight};
use super::zeroset::{ZeroPoint, ZeroSet};

/// Positive weight sampled on the uniform grid over `[-1, 1]²`.
#[derive(Clone, Debug)]
pub struct TabulatedWeight {
    nx: usize,
    ny: usize,
    /// Row-major, `values[j * nx + i]` sits at `(x_i, y_j)`.
    values: Vec<Real>,
}

impl TabulatedWeight {
    pub fn new(nx: usize, ny: usize, values: Vec<Real>) -> Result<Self> {
        if nx < 2 || ny < 2 || values.len() != nx * ny {
            return Err(Error::InvalidInput(format!(
                "tabulated weight needs an {nx}x{ny} grid, got {} values",
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| !v.is_positive()) {
            return Err(Error::NonPositive(format!("tabulated weight entry {k} is {:.6}", values[k])));
        }
        Ok(TabulatedWeight { nx, ny, values })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Bilinear interpolation.
    pub fn value(&self, z: &HpComplex) -> Result<Real> {
        let locate = |t: &Real, n: usize| -> Result<(usize, Real)> {
            if t < &-1.0 || t > &1.0 {
                return Err(Error::Domain(format!("{t:.8} is outside the tabulated range")));
            }
            let s = (t + 1.0) * ((n - 1) as f64 / 2.0);
            let i = (s.to_f64().floor() as usize).min(n - 2);
            let frac = s - i as f64;
            Ok((i, frac))
        };
        let (i, fx) = locate(&z.re, self.nx)?;
        let (j, fy) = locate(&z.im, self.ny)?;
        let at = |i: usize, j: usize| &self.values[j * self.nx + i];
        let gx = 1.0 - &fx;
        let gy = 1.0 - &fy;
        let bottom = at(i, j) * &gx + at(i + 1, j) * &fx;
        let top = at(i, j + 1) * &gx + at(i + 1, j + 1) * &fx;
        Ok(bottom * gy + top * fy)
    }
}

#[derive(Clone, Debug)]
pub enum WeightKind {
    /// `ω_α = (α+1)(1 - |z|²)^α`.
    Standard { alpha: Real },
    /// `ω_α Π |(z - a_k)/(1 - ā_k z)|^{ρ_k}` with `ρ_k = 2 · mult(a_k)`.
    ZeroWeighted { kernel: Arc<ZeroKernel> },
    /// `|(z - λ)/(1 - λ̄ z)|^θ`.
    Toy { lambda: HpComplex, theta: Real },
    Tabulated(TabulatedWeight),
}

/// A weight `t · ω` on the disk.
#[derive(Clone, Debug)]
pub struct WeightSpec {
    kind: WeightKind,
    normalization: Real,
}

impl WeightSpec {
    pub fn standard(alpha: Real) -> Result<Self> {
        check_alpha(&alpha)?;
        let normalization = alpha.one_like();
        Ok(WeightSpec {
            kind: WeightKind::Standard { alpha },
            normalization,
        })
    }

    pub fn zero_weighted(zeros: &ZeroSet) -> Result<Self> {
        let kernel = ZeroKernel::new(zeros)?;
        Ok(WeightSpec {
            normalization: zeros.alpha().one_like(),
            kind: WeightKind::ZeroWeighted {
                kernel: Arc::new(kernel),
            },
        })
    }

    /// Accepts exponents `ρ_k`; each must be an even positive integer.
    pub fn zero_weighted_with_exponents(alpha: Real, points: &[(HpComplex, u32)]) -> Result<Self> {
        let mut pts = Vec::with_capacity(points.len());
        for (a, rho) in points {
            if *rho == 0 || rho % 2 != 0 {
                return Err(Error::InvalidInput(format!(
                    "exponent {rho} at {a:.8}: only even positive exponents are supported"
                )));
            }
            pts.push(ZeroPoint {
                location: a.clone(),
                multiplicity: rho / 2,
            });
        }
        WeightSpec::zero_weighted(&ZeroSet::new(alpha, pts)?)
    }

    pub fn toy(lambda: HpComplex, theta: Real) -> Result<Self> {
        toy_weight(&lambda.zero_like(), &lambda, &theta)?;
        Ok(WeightSpec {
            normalization: theta.one_like(),
            kind: WeightKind::Toy { lambda, theta },
        })
    }

    pub fn tabulated(table: TabulatedWeight) -> Self {
        let normalization = table.values[0].one_like();
        WeightSpec {
            kind: WeightKind::Tabulated(table),
            normalization,
        }
    }

    pub fn with_normalization(mut self, t: Real) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::InvalidInput(format!("normalization must be positive, got {t:.10}")));
        }
        self.normalization = t;
        Ok(self)
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn normalization(&self) -> &Real {
        &self.normalization
    }

    pub fn has_kernel_access(&self) -> bool {
        !matches!(self.kind, WeightKind::Tabulated(_))
    }

    /// `ω(z)` including the normalization.
    pub fn value(&self, z: &HpComplex) -> Result<Real> {
        let base = match &self.kind {
            WeightKind::Standard { alpha } => standard_value(z, alpha)?,
            WeightKind::ZeroWeighted { kernel } => {
                let b = blaschke_product(kernel.zeros(), z)?;
                standard_value(z, kernel.alpha())? * b.norm_sqr()
            }
            WeightKind::Toy { lambda, theta } => toy_weight(z, lambda, theta)?,
            WeightKind::Tabulated(t) => t.value(z)?,
        };
        Ok(base * &self.normalization)
    }

    /// `K_ω(z, w)`.
    pub fn kernel(&self, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
        let base = match &self.kind {
            WeightKind::Standard { alpha } => bergman_kernel(z, w, alpha)?,
            WeightKind::ZeroWeighted { kernel } => kernel.weighted_eval(z, w)?,
            WeightKind::Toy { lambda, theta } => toy_kernel_full(z, w, lambda, theta)?,
            WeightKind::Tabulated(_) => return Err(no_kernel()),
        };
        Ok(base / &self.normalization)
    }

    /// `|K_ω(z, 0)|² ω(z) / K_ω(0, 0)`.
    ///
    /// For zero-weighted data the Blaschke factors cancel, so this stays
    /// finite and exact at the prescribed zeros.
    pub fn extremal_density(&self, z: &HpComplex) -> Result<Real> {
        let origin = z.zero_like();
        match &self.kind {
            WeightKind::ZeroWeighted { kernel } => {
                let k00 = kernel.eval(&origin, &origin)?.re;
                if !k00.is_positive() {
                    return Err(Error::Degenerate(
                        "K_A(0,0) vanishes (the origin is a prescribed zero)".into(),
                    ));
                }
                let kz = kernel.eval(z, &origin)?;
                Ok(kz.norm_sqr() / k00 * standard_value(z, kernel.alpha())?)
            }
            WeightKind::Tabulated(_) => Err(no_kernel()),
            _ => {
                let k00 = self.kernel(&origin, &origin)?.re;
                let kz = self.kernel(z, &origin)?;
                Ok(kz.norm_sqr() / k00 * self.value(z)?)
            }
        }
    }
}

fn no_kernel() -> Error {
    Error::Unsupported("tabulated weights carry no kernel".into())
}

fn standard_value(z: &HpComplex, alpha: &Real) -> Result<Real> {
    check_closed_disk(z, "z")?;
    let gap = 1.0 - z.norm_sqr();
    let gap = if gap.is_negative() { gap.zero_like() } else { gap };
    Ok((alpha + 1.0) * gap.powf(alpha))
}

/// `Λ_ω(z) = |K_ω(z,0)|² / K_ω(0,0) · ω(z) / (2(1 - |z|²))`.
pub fn lambda_omega(z: &HpComplex, weight: &WeightSpec) -> Result<Real> {
    let gap = 1.0 - z.norm_sqr();
    if !gap.is_positive() {
        return Err(Error::Domain(format!("Λ_ω needs |z| < 1, got {z:.12}")));
    }
    Ok(weight.extremal_density(z)? / (gap * 2.0))
}
