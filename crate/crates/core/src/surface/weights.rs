use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hp::{hermitian_solve, HermitianMatrix, HpComplex, Precision, Real};
use crate::kernels::{toy_kernel, toy_weight};
use crate::quadrature::{integrate_disk_many, DiskRule, PotentialRule, PreparedDensity};

use super::curvature::{CurvatureData, CurvatureFamily};

/// Shared pointwise weight.
pub type WeightFn = Arc<dyn Fn(&HpComplex) -> Result<Real> + Send + Sync>;
/// Shared pointwise `K(·, 0)`.
pub type KernelFn = Arc<dyn Fn(&HpComplex) -> Result<HpComplex> + Send + Sync>;

/// The solution `ω₁ = exp(-∫ log|(z-w)/(1-zw̄)| μ(w) dΣ(w))` of `-2Δ log ω = μ`,
/// in closed form where one is available.
pub struct Omega1 {
    repr: Omega1Repr,
}

type Density = Box<dyn Fn(&HpComplex) -> Result<Real> + Send + Sync>;

enum Omega1Repr {
    Flat,
    Closed(WeightFn),
    Quadrature(PreparedDensity<Density>),
}

impl Omega1 {
    /// `rule` is used only for data without a closed form.
    pub fn new(mu: &CurvatureData, rule: &PotentialRule) -> Result<Omega1> {
        let repr = match mu.family() {
            CurvatureFamily::Zero => Omega1Repr::Flat,
            CurvatureFamily::Hyperbolic { alpha } => {
                let alpha = alpha.clone();
                Omega1Repr::Closed(Arc::new(move |z: &HpComplex| {
                    let gap = 1.0 - z.norm_sqr();
                    let gap = if gap.is_negative() { gap.zero_like() } else { gap };
                    Ok(gap.powf(&alpha))
                }))
            }
            CurvatureFamily::PointMass { lambda, theta } => {
                let (lambda, theta) = (lambda.clone(), theta.clone());
                Omega1Repr::Closed(Arc::new(move |z: &HpComplex| toy_weight(z, &lambda, &theta)))
            }
            // log ω₁ = (s/4) x (1 - |z|²)
            CurvatureFamily::ReZ { scale } => {
                let s = scale.clone() / 4.0;
                Omega1Repr::Closed(Arc::new(move |z: &HpComplex| Ok((&s * &z.re * (1.0 - z.norm_sqr())).exp())))
            }
            // ω₁ = ((1 - r²|z|²) / (1 - r²))^α
            CurvatureFamily::DilatedHyperbolic { r, alpha } => {
                let (r2, alpha) = (r.square(), alpha.clone());
                Omega1Repr::Closed(Arc::new(move |z: &HpComplex| {
                    Ok(((1.0 - &r2 * z.norm_sqr()) / (1.0 - &r2)).powf(&alpha))
                }))
            }
            CurvatureFamily::Tabulated(_) => return Omega1::by_quadrature(mu, rule),
        };
        Ok(Omega1 { repr })
    }

    /// The Green potential route, closed forms or not; needs integrable `μ`.
    pub fn by_quadrature(mu: &CurvatureData, rule: &PotentialRule) -> Result<Omega1> {
        if !mu.is_integrable() {
            return Err(Error::Unsupported("μ has no integrable density".into()));
        }
        if let CurvatureFamily::Zero = mu.family() {
            return Ok(Omega1 { repr: Omega1Repr::Flat });
        }
        let data = mu.clone();
        let density: Density = Box::new(move |w: &HpComplex| data.mu(w));
        Ok(Omega1 { repr: Omega1Repr::Quadrature(rule.prepare(density)?) })
    }

    /// `log ω₁(z)`.
    pub fn log_value(&self, z: &HpComplex) -> Result<Real> {
        match &self.repr {
            Omega1Repr::Flat => Ok(z.re.zero_like()),
            Omega1Repr::Closed(f) => {
                let v = f(z)?;
                if !v.is_positive() {
                    return Err(Error::NonPositive(format!("omega1({z:.8}) vanishes")));
                }
                Ok(v.ln())
            }
            // log|(z-w)/(1-zw̄)| = G/2
            Omega1Repr::Quadrature(p) => Ok(-p.potential(z)? / 2.0),
        }
    }

    pub fn value(&self, z: &HpComplex) -> Result<Real> {
        match &self.repr {
            Omega1Repr::Closed(f) => f(z),
            _ => Ok(self.log_value(z)?.exp()),
        }
    }

    pub fn into_weight(self) -> WeightFn {
        Arc::new(move |z: &HpComplex| self.value(z))
    }
}

/// `ω₁(z)` evaluated by quadrature of the Green potential of `μ`.
pub fn omega1_from_mu(mu: &CurvatureData, rule: &PotentialRule, z: &HpComplex) -> Result<Real> {
    if !z.in_open_disk() {
        return Err(Error::Domain(format!("z = {z:.12} is not in the open disk")));
    }
    Omega1::by_quadrature(mu, rule)?.value(z)
}

/// `K_ω(z, 0) = Σ c_j z^j` from the Gram matrix of `1, z, …, z^n` against
/// `ω dΣ`, the reproducing kernel of the polynomials of degree `≤ n`.
#[derive(Clone, Debug)]
pub struct PolynomialKernel {
    coeffs: Vec<HpComplex>,
    residual: Real,
}

impl PolynomialKernel {
    pub fn coeffs(&self) -> &[HpComplex] {
        &self.coeffs
    }

    /// `max |G c - e₀|` after the solve.
    pub fn residual(&self) -> &Real {
        &self.residual
    }

    pub fn eval(&self, z: &HpComplex) -> HpComplex {
        let mut acc = z.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }
}

/// Builds the degree-`n` polynomial kernel at the origin for `omega`.
pub fn polynomial_kernel<W>(rule: &DiskRule, omega: W, degree: usize) -> Result<PolynomialKernel>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    let ctx = rule.precision();
    let order = degree + 1;
    if 2 * degree >= rule.angular_count() {
        return Err(Error::InvalidInput(format!(
            "degree {degree} needs more than {} angles",
            2 * degree
        )));
    }
    // moments m_{jk} = ∫ z^j z̄^k ω dΣ, j ≤ k, real and imaginary parts
    let pairs: Vec<(usize, usize)> = (0..order).flat_map(|i| (i..order).map(move |j| (i, j))).collect();
    let values = integrate_disk_many(rule, 2 * pairs.len(), |z| {
        let w = omega(z)?;
        let mut powers = vec![z.one_like()];
        for _ in 0..degree {
            let next = powers.last().expect("nonempty") * z;
            powers.push(next);
        }
        let mut out = Vec::with_capacity(2 * pairs.len());
        for &(i, j) in &pairs {
            // G_ij = <z^j, z^i> = ∫ z^j conj(z^i) ω
            let m = (&powers[j] * &powers[i].conj()).scale(&w);
            out.push(m.re);
            out.push(m.im);
        }
        Ok(out)
    })?;
    let mut entries = std::collections::HashMap::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        entries.insert((i, j), HpComplex::new(values[2 * k].clone(), values[2 * k + 1].clone()));
    }
    let gram = HermitianMatrix::from_upper(order, |i, j| Ok(entries[&(i, j)].clone()))?;
    let mut rhs = vec![ctx.czero(); order];
    rhs[0] = ctx.cone();
    let solve = hermitian_solve(&gram, &rhs)?;
    Ok(PolynomialKernel {
        coeffs: solve.solution,
        residual: solve.residual_norm,
    })
}

/// `ω₀ = |K_{ω₁}(z,0)|² / K_{ω₁}(0,0) · ω₁`.
#[derive(Clone)]
pub struct ExtremalWeight {
    ctx: Precision,
    omega1: WeightFn,
    kernel: KernelFn,
    k00: Real,
}

impl std::fmt::Debug for ExtremalWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtremalWeight").field("k00", &self.k00).finish_non_exhaustive()
    }
}

/// Assembles `ω₀` from `ω₁` and its kernel at the origin.
pub fn omega0_construct(ctx: Precision, omega1: WeightFn, kernel: KernelFn) -> Result<ExtremalWeight> {
    let k00 = kernel(&ctx.czero())?;
    if !k00.re.is_positive() || k00.im.abs() > k00.re.abs() * ctx.ten_pow(10 - ctx.digits() as i32) {
        return Err(Error::Degenerate(format!("K(0,0) = {k00:.10} is not positive")));
    }
    Ok(ExtremalWeight {
        ctx,
        omega1,
        kernel,
        k00: k00.re,
    })
}

impl ExtremalWeight {
    /// `ω₀ ≡ 1`.
    pub fn flat(ctx: Precision) -> ExtremalWeight {
        let omega1: WeightFn = Arc::new(|z: &HpComplex| Ok(z.re.one_like()));
        let kernel: KernelFn = Arc::new(|z: &HpComplex| Ok(z.one_like()));
        omega0_construct(ctx, omega1, kernel).expect("flat weight")
    }

    /// The extremal weight for curvature data.
    ///
    /// Closed forms cover `μ ≡ 0`, the hyperbolic family (`ω₀ = ω_α`) and
    /// point masses; other data get `ω₁` by quadrature and the kernel from
    /// a polynomial Gram system of degree `degree`.
    pub fn from_curvature(
        mu: &CurvatureData,
        prule: &PotentialRule,
        drule: &DiskRule,
        degree: usize,
    ) -> Result<ExtremalWeight> {
        let ctx = prule.precision();
        match mu.family() {
            CurvatureFamily::Zero => Ok(ExtremalWeight::flat(ctx)),
            CurvatureFamily::Hyperbolic { alpha } => {
                let omega1 = Omega1::new(mu, prule)?.into_weight();
                let a1 = alpha + 1.0;
                let kernel: KernelFn = Arc::new(move |z: &HpComplex| Ok(HpComplex::from_real(a1.clone()) + &z.zero_like()));
                omega0_construct(ctx, omega1, kernel)
            }
            CurvatureFamily::PointMass { lambda, theta } => {
                let omega1 = Omega1::new(mu, prule)?.into_weight();
                let (lambda, theta) = (lambda.clone(), theta.clone());
                let kernel: KernelFn = Arc::new(move |z: &HpComplex| toy_kernel(z, &lambda, &theta));
                omega0_construct(ctx, omega1, kernel)
            }
            _ => {
                let omega1_exact = Omega1::new(mu, prule)?.into_weight();
                let poly = polynomial_kernel(drule, |z| omega1_exact(z), degree)?;
                let kernel: KernelFn = Arc::new(move |z: &HpComplex| Ok(poly.eval(z)));
                omega0_construct(ctx, omega1_exact, kernel)
            }
        }
    }

    pub fn k00(&self) -> &Real {
        &self.k00
    }

    pub fn omega1(&self) -> &WeightFn {
        &self.omega1
    }

    pub fn kernel_at(&self, z: &HpComplex) -> Result<HpComplex> {
        (self.kernel)(z)
    }

    pub fn value(&self, z: &HpComplex) -> Result<Real> {
        let k = (self.kernel)(z)?;
        Ok(k.norm_sqr() / &self.k00 * (self.omega1)(z)?)
    }

    pub fn as_weight(&self) -> WeightFn {
        let me = self.clone();
        Arc::new(move |z: &HpComplex| me.value(z))
    }

    /// Zeros of `K(·, 0)` in the open disk, counted by the winding number
    /// of `K(ζ, 0)` along `samples` points of the circle.
    pub fn kernel_zero_count(&self, samples: usize) -> Result<i64> {
        let ctx = self.ctx;
        let n = samples.max(8);
        let step = ctx.pi() * 2.0 / (n as f64);
        let at = |j: usize| (self.kernel)(&ctx.cis(&(&step * (j as f64))));
        let first = at(0)?;
        let mut prev = first.clone();
        let mut turn = ctx.zero();
        for j in 1..=n {
            let cur = if j == n { first.clone() } else { at(j)? };
            if cur.is_zero() {
                return Err(Error::NonPositive(format!("K(ζ,0) vanishes on the circle at sample {j}")));
            }
            turn += (&cur / &prev).arg();
            prev = cur;
        }
        let winding = (turn / (ctx.pi() * 2.0)).to_f64();
        Ok(winding.round() as i64)
    }

    /// Errors with `NonPositive` when `ω₀` vanishes somewhere in the disk.
    pub fn ensure_positive(&self, samples: usize) -> Result<()> {
        match self.kernel_zero_count(samples)? {
            0 => Ok(()),
            k => Err(Error::NonPositive(format!(
                "K_ω₁(·,0) has {k} zero(s) in the disk, so ω₀ vanishes there"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::single_step;
    use crate::quadrature::{build_disk_rule, integrate_disk_real, mvp_battery, HarmonicTest};
    use crate::surface::curvature::curvature_density_with_step;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn flat_data_gives_flat_weight() {
        let c = ctx();
        let rule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let v = omega1_from_mu(&CurvatureData::zero(c), &rule, &c.complex(0.3, 0.2)).unwrap();
        assert_eq!(v, c.one());
        let w = ExtremalWeight::flat(c);
        assert_eq!(w.value(&c.complex(0.5, -0.5)).unwrap(), c.one());
    }

    #[test]
    fn dilated_hyperbolic_matches_closed_form() {
        let c = ctx();
        let rule = PotentialRule::new(c, 40, 40, 8).unwrap();
        let r = c.parse_real("0.9").unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::DilatedHyperbolic { r: r.clone(), alpha: c.one() }).unwrap();
        let quad = Omega1::by_quadrature(&mu, &rule).unwrap();
        let closed = Omega1::new(&mu, &rule).unwrap();
        let r2 = r.square();
        for (x, y) in [(0.0, 0.0), (0.4, 0.3), (-0.7, 0.6)] {
            let z = c.complex(x, y);
            // the poles at |z| = 1/r cap the radial Gauss convergence near 1e-21 at 40 nodes
            let exact = ((1.0 - &r2 * &z.norm_sqr()) / (1.0 - &r2)).ln();
            assert!((quad.log_value(&z).unwrap() - &exact).abs() < 1e-18);
            assert!((closed.log_value(&z).unwrap() - &exact).abs() < 1e-38);
        }
        let z = c.complex(0.2, -0.5);
        let rt = curvature_density_with_step(|p| quad.value(p), &z, &single_step(c)).unwrap();
        assert!((rt - mu.mu(&z).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn rez_quadrature_matches_closed_form() {
        let c = ctx();
        let rule = PotentialRule::new(c, 24, 24, 16).unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::ReZ { scale: c.real(2.0) }).unwrap();
        let quad = Omega1::by_quadrature(&mu, &rule).unwrap();
        let closed = Omega1::new(&mu, &rule).unwrap();
        for (x, y) in [(0.0, 0.0), (0.4, 0.3), (-0.7, 0.6), (0.9, -0.1)] {
            let z = c.complex(x, y);
            let exact = &z.re * (1.0 - z.norm_sqr()) / 2.0;
            assert!((quad.log_value(&z).unwrap() - &exact).abs() < 1e-25);
            assert!((closed.log_value(&z).unwrap() - &exact).abs() < 1e-38);
        }
    }

    #[test]
    fn quadrature_route_needs_a_density() {
        let c = ctx();
        let rule = PotentialRule::new(c, 4, 4, 4).unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::Hyperbolic { alpha: c.one() }).unwrap();
        assert!(Omega1::by_quadrature(&mu, &rule).is_err());
    }

    #[test]
    fn hyperbolic_extremal_weight_is_standard() {
        let c = ctx();
        let prule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let drule = build_disk_rule(c, 20, 32).unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::Hyperbolic { alpha: c.one() }).unwrap();
        let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, 4).unwrap();
        let z = c.complex(0.3, 0.6);
        assert!((w0.value(&z).unwrap() - (1.0 - z.norm_sqr()) * 2.0).abs() < 1e-38);
        w0.ensure_positive(256).unwrap();
    }

    #[test]
    fn toy_weight_is_flagged() {
        let c = ctx();
        let prule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let drule = build_disk_rule(c, 20, 32).unwrap();
        let lambda = c.parse_complex("0.9", "0").unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::PointMass { lambda, theta: c.parse_real("-1.5").unwrap() })
            .unwrap();
        let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, 4).unwrap();
        assert_eq!(w0.kernel_zero_count(512).unwrap(), 1);
        assert!(matches!(w0.ensure_positive(512), Err(Error::NonPositive(_))));

        let mild = CurvatureData::new(
            c,
            CurvatureFamily::PointMass { lambda: c.complex(0.5, 0.2), theta: c.parse_real("1.5").unwrap() },
        )
        .unwrap();
        let ok = ExtremalWeight::from_curvature(&mild, &prule, &drule, 4).unwrap();
        ok.ensure_positive(512).unwrap();
    }

    #[test]
    fn polynomial_kernel_of_standard_weight() {
        let c = ctx();
        let drule = build_disk_rule(c, 20, 32).unwrap();
        let poly = polynomial_kernel(&drule, |z| Ok((1.0 - z.norm_sqr()) * 2.0), 5).unwrap();
        // K(z, 0) = 1 for ω₁ = 2(1 - |z|²)
        assert!((poly.eval(&c.complex(0.4, 0.1)) - c.cone()).abs() < 1e-30);
        assert!(polynomial_kernel(&drule, |z| Ok(z.re.one_like()), 16).is_err());
    }

    #[test]
    fn non_radial_data_gives_mvp_weight() {
        let c = ctx();
        let prule = PotentialRule::new(c, 16, 16, 8).unwrap();
        let drule = build_disk_rule(c, 24, 48).unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::ReZ { scale: c.one() }).unwrap();
        let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, 12).unwrap();
        w0.ensure_positive(256).unwrap();
        let weight = w0.as_weight();
        let mass = integrate_disk_real(&drule, |z| weight(z)).unwrap();
        assert!((mass - 1.0).abs() < 1e-8);
        let defects = mvp_battery(&drule, |z| weight(z), &HarmonicTest::polynomial_set()).unwrap();
        assert!(defects.iter().all(|d| *d < 1e-8), "{defects:?}");
    }
}
