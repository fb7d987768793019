use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fd::{laplacian, single_step};
use crate::hp::{HpComplex, Precision, Real};

use super::grid::{GridField, GridSpec};

/// Built-in curvature densities `μ` (against `dΣ`).
#[derive(Clone, Debug)]
pub enum CurvatureFamily {
    /// `μ ≡ 0`.
    Zero,
    /// `μ = s Re z`.
    ReZ { scale: Real },
    /// `μ_r = 2 r² α / (1 - r²|z|²)²`, `0 < r < 1`.
    DilatedHyperbolic { r: Real, alpha: Real },
    /// `μ = 2α / (1 - |z|²)²`; not integrable, used through closed forms only.
    Hyperbolic { alpha: Real },
    /// `μ = -θ δ_λ`; closed forms only.
    PointMass { lambda: HpComplex, theta: Real },
    /// Values on a grid, bilinearly interpolated.
    Tabulated(GridField),
}

/// A curvature density with the smallest `α*` such that
/// `μ ≤ 2α*/(1 - |z|²)²` on a test grid.
#[derive(Clone, Debug)]
pub struct CurvatureData {
    family: CurvatureFamily,
    alpha_margin: Real,
}

impl CurvatureData {
    pub fn new(ctx: Precision, family: CurvatureFamily) -> Result<CurvatureData> {
        if let CurvatureFamily::DilatedHyperbolic { r, .. } = &family {
            if !(r.is_positive() && r < &1.0) {
                return Err(Error::Domain(format!("dilation r must lie in (0, 1), got {r:.10}")));
            }
        }
        if let CurvatureFamily::PointMass { lambda, .. } = &family {
            if !lambda.in_open_disk() {
                return Err(Error::Domain(format!("point mass at {lambda:.10} is outside the disk")));
            }
        }
        let alpha_margin = margin(ctx, &family)?;
        Ok(CurvatureData { family, alpha_margin })
    }

    pub fn zero(ctx: Precision) -> CurvatureData {
        CurvatureData::new(ctx, CurvatureFamily::Zero).expect("zero data is valid")
    }

    pub fn family(&self) -> &CurvatureFamily {
        &self.family
    }

    /// `sup μ (1 - |z|²)² / 2` over the test grid.
    pub fn alpha_margin(&self) -> &Real {
        &self.alpha_margin
    }

    /// Whether `μ + ½ K_H ≤ 0` holds on the test grid.
    pub fn certifies_main_hypothesis(&self) -> bool {
        self.alpha_margin <= 1.0
    }

    /// Whether `μ` has a pointwise density that quadrature can integrate.
    pub fn is_integrable(&self) -> bool {
        !matches!(self.family, CurvatureFamily::Hyperbolic { .. } | CurvatureFamily::PointMass { .. })
    }

    /// `μ(z)`; point masses contribute nothing away from `λ`.
    pub fn mu(&self, z: &HpComplex) -> Result<Real> {
        let zero = z.re.zero_like();
        match &self.family {
            CurvatureFamily::Zero => Ok(zero),
            CurvatureFamily::ReZ { scale } => Ok(&z.re * scale),
            CurvatureFamily::DilatedHyperbolic { r, alpha } => {
                let r2 = r.square();
                Ok(&r2 * alpha * 2.0 / (1.0 - &r2 * &z.norm_sqr()).square())
            }
            CurvatureFamily::Hyperbolic { alpha } => {
                let gap = 1.0 - z.norm_sqr();
                if !gap.is_positive() {
                    return Err(Error::Domain(format!("hyperbolic density is singular at {z:.10}")));
                }
                Ok(alpha * 2.0 / gap.square())
            }
            CurvatureFamily::PointMass { lambda, .. } => {
                if z == lambda {
                    Err(Error::Domain(format!("point mass sits at {z:.10}")))
                } else {
                    Ok(zero)
                }
            }
            CurvatureFamily::Tabulated(field) => field.value(z),
        }
    }
}

fn infinity(ctx: Precision) -> Real {
    Real::from_float(rug::Float::with_val(ctx.bits(), rug::float::Special::Infinity))
}

fn margin(ctx: Precision, family: &CurvatureFamily) -> Result<Real> {
    match family {
        CurvatureFamily::Zero => return Ok(ctx.zero()),
        CurvatureFamily::Hyperbolic { alpha } => return Ok(alpha.clone()),
        CurvatureFamily::PointMass { theta, .. } => {
            return Ok(if theta.is_negative() { infinity(ctx) } else { ctx.zero() })
        }
        _ => {}
    }
    let data = CurvatureData {
        family: family.clone(),
        alpha_margin: ctx.zero(),
    };
    let spec = GridSpec::new(65, 65)?;
    let mut best = ctx.zero();
    for (_, _, z) in spec.nodes_within(ctx, 1.0) {
        if !z.in_open_disk() {
            continue;
        }
        let v = data.mu(&z)? * (1.0 - z.norm_sqr()).square() / 2.0;
        best = best.max_of(v);
    }
    Ok(best)
}

impl fmt::Display for CurvatureFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvatureFamily::Zero => write!(f, "zero"),
            CurvatureFamily::ReZ { scale } => write!(f, "rez:{scale}"),
            CurvatureFamily::DilatedHyperbolic { r, alpha } => write!(f, "dilated:{r},{alpha}"),
            CurvatureFamily::Hyperbolic { alpha } => write!(f, "hyperbolic:{alpha}"),
            CurvatureFamily::PointMass { lambda, theta } => {
                write!(f, "toy:{},{},{theta}", lambda.re, lambda.im)
            }
            CurvatureFamily::Tabulated(field) => write!(f, "tabulated:{}x{}", field.spec().nx, field.spec().ny),
        }
    }
}

/// Parses `zero`, `rez[:s]`, `dilated:r,alpha`, `hyperbolic:alpha`,
/// `toy:re,im,theta` at the default precision; see [`parse_family`].
impl FromStr for CurvatureFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_family(Precision::default(), s)
    }
}

/// Parses a named family with decimal parameters.
pub fn parse_family(ctx: Precision, text: &str) -> Result<CurvatureFamily> {
    let (name, args) = text.split_once(':').unwrap_or((text, ""));
    let nums = |want: usize| -> Result<Vec<Real>> {
        let parts: Vec<&str> = args.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
        if parts.len() != want {
            return Err(Error::Parse(format!("{name} takes {want} parameter(s), got {:?}", args)));
        }
        parts.iter().map(|p| ctx.parse_real(p)).collect()
    };
    Ok(match name.trim() {
        "zero" => CurvatureFamily::Zero,
        "rez" if args.is_empty() => CurvatureFamily::ReZ { scale: ctx.one() },
        "rez" => CurvatureFamily::ReZ { scale: nums(1)?.remove(0) },
        "dilated" => {
            let mut v = nums(2)?;
            let alpha = v.pop().expect("two values");
            CurvatureFamily::DilatedHyperbolic { r: v.pop().expect("two values"), alpha }
        }
        "hyperbolic" => CurvatureFamily::Hyperbolic { alpha: nums(1)?.remove(0) },
        "toy" => {
            let mut v = nums(3)?;
            let theta = v.pop().expect("three values");
            let im = v.pop().expect("three values");
            let re = v.pop().expect("three values");
            CurvatureFamily::PointMass { lambda: HpComplex::new(re, im), theta }
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown curvature family {other:?} (zero, rez, dilated, hyperbolic, toy)"
            )))
        }
    })
}

/// Curvature density `-2 Δ log ω` by centered differences at step `h`.
pub fn curvature_density_with_step<W>(omega: W, z: &HpComplex, h: &Real) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let log = |p: &HpComplex| {
        let v = omega(p)?;
        if !v.is_positive() {
            return Err(Error::NonPositive(format!("omega({p:.8}) = {v:.6}")));
        }
        Ok(v.ln())
    };
    Ok(-laplacian(log, z, h)? * 2.0)
}

/// `-2 Δ log ω` at the working-precision step `10^{-digits/3}`.
pub fn curvature_density<W>(omega: W, z: &HpComplex) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let ctx = Precision::new(z.re.precision_digits())?;
    curvature_density_with_step(omega, z, &single_step(ctx))
}

/// Gaussian curvature `κ = -(2/ω) Δ log ω` of `ω |dz|²`.
pub fn curvature_isothermal<W>(omega: W, z: &HpComplex) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let w = omega(z)?;
    if !w.is_positive() {
        return Err(Error::NonPositive(format!("omega({z:.8}) = {w:.6}")));
    }
    Ok(curvature_density(omega, z)? / w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn isothermal_examples() {
        let c = ctx();
        let z = c.complex(0.3, -0.45);
        let flat = curvature_isothermal(|p| Ok(p.re.one_like()), &z).unwrap();
        assert!(flat.abs() < 1e-20);
        let poincare = |p: &HpComplex| Ok((1.0 - p.norm_sqr()).square().recip() * 4.0);
        let k = curvature_isothermal(poincare, &z).unwrap();
        assert!((k + 1.0).abs() < 1e-12);
        let alpha = c.parse_real("1.5").unwrap();
        let standard = |p: &HpComplex| Ok((1.0 - p.norm_sqr()).powf(&alpha));
        let d = curvature_density(standard, &z).unwrap();
        let expected = &alpha * 2.0 / (1.0 - z.norm_sqr()).square();
        assert!((d - expected).abs() < 1e-12);
    }

    #[test]
    fn margins() {
        let c = ctx();
        assert!(CurvatureData::zero(c).certifies_main_hypothesis());
        let r = c.parse_real("0.9").unwrap();
        let data =
            CurvatureData::new(c, CurvatureFamily::DilatedHyperbolic { r: r.clone(), alpha: c.one() }).unwrap();
        // sup at the origin: r² α
        assert!((data.alpha_margin() - r.square()).abs() < 1e-30);
        assert!(data.certifies_main_hypothesis());
        let hyper = CurvatureData::new(c, CurvatureFamily::Hyperbolic { alpha: c.real(1.5) }).unwrap();
        assert!(!hyper.certifies_main_hypothesis());
        let toy = CurvatureData::new(
            c,
            CurvatureFamily::PointMass { lambda: c.complex(0.9, 0.0), theta: c.real(-1.5) },
        )
        .unwrap();
        assert!(!toy.certifies_main_hypothesis());
        assert!(!toy.is_integrable());
    }

    #[test]
    fn parse_families() {
        let c = ctx();
        assert!(matches!(parse_family(c, "zero").unwrap(), CurvatureFamily::Zero));
        match parse_family(c, "dilated:0.9,1").unwrap() {
            CurvatureFamily::DilatedHyperbolic { r, alpha } => {
                assert_eq!(r, c.parse_real("0.9").unwrap());
                assert_eq!(alpha, c.one());
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_family(c, "toy:0.9,0,-1.5").unwrap(), CurvatureFamily::PointMass { .. }));
        assert!(parse_family(c, "dilated:0.9").is_err());
        assert!(parse_family(c, "sphere").is_err());
        assert!(CurvatureData::new(c, parse_family(c, "dilated:1.2,1").unwrap()).is_err());
    }
}
