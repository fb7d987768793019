use std::fmt;

use crate::error::{Error, Result};
use crate::green::poisson_kernel;
use crate::hp::{HpComplex, Precision, Real};
use crate::kernels::{extremal_function, lambda_omega, WeightSpec};

use super::disk::{integrate_disk, integrate_disk_many, integrate_disk_real, DiskRule};

/// Harmonic functions used to probe the mean value property.
#[derive(Clone, Debug)]
pub enum HarmonicTest {
    One,
    ReZ,
    ImZ,
    ReZ2,
    ImZ2,
    ReZ3,
    /// `P(·, ζ)` for a boundary point `ζ`.
    Poisson(HpComplex),
}

impl HarmonicTest {
    /// `{1, Re z, Im z, Re z², Im z², Re z³}`.
    pub fn polynomial_set() -> Vec<HarmonicTest> {
        use HarmonicTest::*;
        vec![One, ReZ, ImZ, ReZ2, ImZ2, ReZ3]
    }

    /// The polynomial set plus Poisson kernels at `count` equispaced boundary points.
    pub fn full_set(ctx: Precision, count: usize) -> Vec<HarmonicTest> {
        let mut set = Self::polynomial_set();
        let step = ctx.pi() * 2.0 / (count.max(1) as f64);
        for j in 0..count {
            // offset by half a step so no sample lands on the real axis
            let t = &step * (j as f64 + 0.5);
            set.push(HarmonicTest::Poisson(ctx.cis(&t)));
        }
        set
    }

    pub fn eval(&self, z: &HpComplex) -> Result<Real> {
        use HarmonicTest::*;
        Ok(match self {
            One => z.re.one_like(),
            ReZ => z.re.clone(),
            ImZ => z.im.clone(),
            ReZ2 => z.re.square() - z.im.square(),
            ImZ2 => &z.re * &z.im * 2.0,
            ReZ3 => z.powi(3).re,
            Poisson(zeta) => poisson_kernel(z, zeta)?,
        })
    }

    /// `h(0)`.
    pub fn at_origin(&self, ctx: Precision) -> Real {
        match self {
            HarmonicTest::One | HarmonicTest::Poisson(_) => ctx.one(),
            _ => ctx.zero(),
        }
    }
}

impl fmt::Display for HarmonicTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarmonicTest::One => write!(f, "1"),
            HarmonicTest::ReZ => write!(f, "Re z"),
            HarmonicTest::ImZ => write!(f, "Im z"),
            HarmonicTest::ReZ2 => write!(f, "Re z^2"),
            HarmonicTest::ImZ2 => write!(f, "Im z^2"),
            HarmonicTest::ReZ3 => write!(f, "Re z^3"),
            HarmonicTest::Poisson(z) => write!(f, "P(., {z:.6})"),
        }
    }
}

/// `|∫ h ω dΣ - h(0)|`.
///
/// Poisson tests integrate the kernel analytically in angle, see
/// [`DiskRule::poisson_integral`].
pub fn mvp_check<W>(rule: &DiskRule, weight: W, h: &HarmonicTest) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let ctx = rule.precision();
    let integral = match h {
        HarmonicTest::Poisson(zeta) => rule.poisson_integral(&weight, zeta)?,
        _ => integrate_disk_real(rule, |z| Ok(h.eval(z)? * weight(z)?))?,
    };
    Ok((integral - h.at_origin(ctx)).abs())
}

/// Defects for a whole test set, evaluating the weight once per node for
/// the polynomial members.
pub fn mvp_battery<W>(rule: &DiskRule, weight: W, tests: &[HarmonicTest]) -> Result<Vec<Real>>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let ctx = rule.precision();
    let polys: Vec<&HarmonicTest> = tests
        .iter()
        .filter(|t| !matches!(t, HarmonicTest::Poisson(_)))
        .collect();
    let mut poly_values = integrate_disk_many(rule, polys.len(), |z| {
        let w = weight(z)?;
        polys.iter().map(|h| Ok(h.eval(z)? * &w)).collect()
    })?
    .into_iter();
    let mut out = Vec::with_capacity(tests.len());
    for h in tests {
        let integral = match h {
            HarmonicTest::Poisson(zeta) => rule.poisson_integral(&weight, zeta)?,
            _ => poly_values.next().expect("one value per polynomial test"),
        };
        out.push((integral - h.at_origin(ctx)).abs());
    }
    Ok(out)
}

/// `(∫ |f|² ω_α dΣ)^{1/2}`.
pub fn weighted_norm<F>(rule: &DiskRule, f: F, alpha: &Real) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<HpComplex>,
{
    let weight = WeightSpec::standard(alpha.clone())?;
    Ok(integrate_disk_real(rule, |z| Ok(f(z)?.norm_sqr() * weight.value(z)?))?.sqrt())
}

/// `|∫ f conj(K_ω(·, w)) ω dΣ - f(w)|`.
pub fn reproducing_check<F>(rule: &DiskRule, weight: &WeightSpec, f: F, w: &HpComplex) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<HpComplex>,
{
    if !w.in_open_disk() {
        return Err(Error::Domain(format!("w = {w:.12} is not in the open unit disk")));
    }
    let integral = integrate_disk(rule, |z| {
        let k = weight.kernel(z, w)?;
        Ok((f(z)? * k.conj()).scale(&weight.value(z)?))
    })?;
    Ok((integral - f(w)?).abs())
}

/// Multipliers with the expansive property against `2(1 - |z|²) dΣ`.
#[derive(Clone, Debug)]
pub enum Multiplier {
    /// `|φ_λ|²` for the extremal function in `A²_α`.
    Extremal { lambda: HpComplex, alpha: Real },
    /// `Λ_ω`.
    Lambda(WeightSpec),
}

impl Multiplier {
    pub fn eval(&self, z: &HpComplex) -> Result<Real> {
        match self {
            Multiplier::Extremal { lambda, alpha } => Ok(extremal_function(z, lambda, alpha)?.norm_sqr()),
            Multiplier::Lambda(weight) => lambda_omega(z, weight),
        }
    }
}

/// `∫ m u 2(1 - |z|²) dΣ - ∫ u 2(1 - |z|²) dΣ`; nonnegative for subharmonic `u`.
pub fn expansive_check<U>(rule: &DiskRule, u: U, multiplier: &Multiplier) -> Result<Real>
where
    U: Fn(&HpComplex) -> Result<Real>,
{
    let parts = integrate_disk_many(rule, 2, |z| {
        let base = u(z)? * (1.0 - z.norm_sqr()) * 2.0;
        let m = multiplier.eval(z)?;
        Ok(vec![&base * &m, base])
    })?;
    Ok(&parts[0] - &parts[1])
}
