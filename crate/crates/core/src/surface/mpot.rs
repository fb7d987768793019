//! The metric potential `Φ = ∫ G(·, w) ω(w) dΣ(w)` and the boundary value
//! system `Δ log ΔΦ₀ = -μ/2`, `Φ₀ = 0` and `∂Φ₀/∂n = 2` on the circle.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fd::{laplacian, nested_step};
use crate::hp::{HpComplex, Precision, Real};
use crate::quadrature::{DiskRule, PotentialRule};

use super::curvature::CurvatureData;
use super::grid::GridSpec;
use super::weights::ExtremalWeight;

/// `Φ(z) = ∫ G(z, w) ω(w) dΣ(w)`.
pub fn metric_potential<W>(omega: W, rule: &PotentialRule, z: &HpComplex) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    rule.prepare(omega)?.potential(z)
}

/// `∂Φ/∂n(ζ) = 2 ∫ P(w, ζ) ω(w) dΣ(w)`.
pub fn boundary_normal_derivative<W>(omega: W, rule: &DiskRule, zeta: &HpComplex) -> Result<Real>
where
    W: Fn(&HpComplex) -> Result<Real>,
{
    Ok(rule.poisson_integral(omega, zeta)? * 2.0)
}

/// One-sided second-order radial difference `(3Φ(ζ) - 4Φ((1-h)ζ) + Φ((1-2h)ζ)) / 2h`.
pub fn normal_derivative_fd<P>(potential: P, zeta: &HpComplex, h: &Real) -> Result<Real>
where
    P: Fn(&HpComplex) -> Result<Real>,
{
    if !zeta.on_circle() {
        return Err(Error::Domain(format!("zeta = {zeta:.12} is not on the unit circle")));
    }
    let at = |t: Real| potential(&zeta.scale(&(1.0 - t)));
    let f0 = at(h.zero_like())?;
    let f1 = at(h.clone())?;
    let f2 = at(h * 2.0)?;
    Ok((f0 * 3.0 - f1 * 4.0 + f2) / (h * 2.0))
}

/// Sampling and rules for [`verify_mpot_system`].
#[derive(Clone, Debug)]
pub struct MpotOptions {
    /// Interior nodes of the grid with `|z| ≤ interior_radius` are checked.
    pub interior_radius: f64,
    /// Equispaced boundary points.
    pub boundary_points: usize,
    /// Circle samples for the winding-number positivity test.
    pub winding_samples: usize,
}

impl Default for MpotOptions {
    fn default() -> Self {
        MpotOptions {
            interior_radius: 0.8,
            boundary_points: 16,
            winding_samples: 512,
        }
    }
}

/// The three defects of the boundary value system.
#[derive(Clone, Debug, Serialize)]
pub struct MpotReport {
    /// `max |Δ log ΔΦ₀ + μ/2|` over interior nodes.
    pub interior: String,
    /// `max |Φ₀|` over boundary points.
    pub boundary_value: String,
    /// `max |∂Φ₀/∂n - 2|` over boundary points.
    pub normal_derivative: String,
    /// The same from one-sided differences of `Φ₀`, for cross-checking.
    pub normal_derivative_fd: String,
    pub interior_nodes: usize,
    pub boundary_points: usize,
    #[serde(skip)]
    pub values: [f64; 4],
}

impl MpotReport {
    pub fn interior(&self) -> f64 {
        self.values[0]
    }

    pub fn boundary_value(&self) -> f64 {
        self.values[1]
    }

    pub fn normal_derivative(&self) -> f64 {
        self.values[2]
    }

    pub fn normal_derivative_fd(&self) -> f64 {
        self.values[3]
    }
}

/// Checks `Φ₀` against the system on the grid nodes and boundary points.
/// Fails with `NonPositive` when `ω₀` (equivalently `ΔΦ₀`) vanishes in the
/// disk, where `log ΔΦ₀` is undefined.
pub fn verify_mpot_system(
    omega0: &ExtremalWeight,
    mu: &CurvatureData,
    grid: &GridSpec,
    prule: &PotentialRule,
    drule: &DiskRule,
    options: &MpotOptions,
) -> Result<MpotReport> {
    let ctx: Precision = prule.precision();
    omega0.ensure_positive(options.winding_samples)?;
    let weight = omega0.as_weight();
    let phi = prule.prepare(move |z: &HpComplex| weight(z))?;
    let potential = |z: &HpComplex| phi.potential(z);

    let h = nested_step(ctx);
    let lap_phi = |z: &HpComplex| {
        let v = laplacian(potential, z, &h)?;
        if !v.is_positive() {
            return Err(Error::NonPositive(format!("ΔΦ₀({z:.8}) = {v:.6} is not positive")));
        }
        Ok(v.ln())
    };
    let nodes = grid.nodes_within(ctx, options.interior_radius);
    let mut interior = ctx.zero();
    for (_, _, z) in &nodes {
        let defect = (laplacian(lap_phi, z, &h)? + mu.mu(z)? / 2.0).abs();
        interior = interior.max_of(defect);
    }

    let n = options.boundary_points.max(1);
    let step = ctx.pi() * 2.0 / (n as f64);
    let fd_h = ctx.ten_pow(-(ctx.digits() as i32) / 3);
    let mut boundary = ctx.zero();
    let mut normal = ctx.zero();
    let mut normal_fd = ctx.zero();
    for j in 0..n {
        let zeta = ctx.cis(&(&step * (j as f64)));
        boundary = boundary.max_of(potential(&zeta)?.abs());
        let d = boundary_normal_derivative(|z| omega0.value(z), drule, &zeta)?;
        normal = normal.max_of((d - 2.0).abs());
        let dfd = normal_derivative_fd(potential, &zeta, &fd_h)?;
        normal_fd = normal_fd.max_of((dfd - 2.0).abs());
    }
    Ok(MpotReport {
        values: [interior.to_f64(), boundary.to_f64(), normal.to_f64(), normal_fd.to_f64()],
        interior: interior.to_string_digits(6),
        boundary_value: boundary.to_string_digits(6),
        normal_derivative: normal.to_string_digits(6),
        normal_derivative_fd: normal_fd.to_string_digits(6),
        interior_nodes: nodes.len(),
        boundary_points: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::build_disk_rule;
    use crate::surface::curvature::CurvatureFamily;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn flat_potential() {
        let c = ctx();
        let rule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let z = c.complex(0.25, -0.6);
        let phi = metric_potential(|p| Ok(p.re.one_like()), &rule, &z).unwrap();
        assert!((phi - (z.norm_sqr() - 1.0)).abs() < 1e-38);
    }

    #[test]
    fn normal_derivatives() {
        let c = ctx();
        let drule = build_disk_rule(c, 30, 32).unwrap();
        let zeta = c.cis(&c.parse_real("0.4").unwrap());
        let flat = boundary_normal_derivative(|p| Ok(p.re.one_like()), &drule, &zeta).unwrap();
        assert!((flat - 2.0).abs() < 1e-30);
        let std = boundary_normal_derivative(|p| Ok((1.0 - p.norm_sqr()) * 2.0), &drule, &zeta).unwrap();
        assert!((std - 2.0).abs() < 1e-30);

        // ω = |φ'(z)|² with φ the involution at λ has the MVP at λ.
        let lambda = c.complex(0.3, -0.2);
        let moved = |p: &HpComplex| {
            let d = 1.0 - &lambda.conj() * p;
            Ok((1.0 - lambda.norm_sqr()).square() / d.norm_sqr().square())
        };
        let drule = build_disk_rule(c, 40, 128).unwrap();
        let got = boundary_normal_derivative(moved, &drule, &zeta).unwrap();
        let expected = (1.0 - lambda.norm_sqr()) * 2.0 / (&lambda - &zeta).norm_sqr();
        assert!((got - expected).abs() < 1e-20);

        let prule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let phi = prule.prepare(|p: &HpComplex| Ok(p.re.one_like())).unwrap();
        let h = c.ten_pow(-13);
        let fd = normal_derivative_fd(|p| phi.potential(p), &zeta, &h).unwrap();
        assert!((fd - 2.0).abs() < 1e-12);
    }

    #[test]
    fn system_for_flat_and_hyperbolic_weights() {
        let c = ctx();
        let prule = PotentialRule::new(c, 12, 12, 8).unwrap();
        let drule = build_disk_rule(c, 20, 32).unwrap();
        let grid = GridSpec::new(9, 9).unwrap();
        let options = MpotOptions::default();
        let flat = verify_mpot_system(&ExtremalWeight::flat(c), &CurvatureData::zero(c), &grid, &prule, &drule, &options)
            .unwrap();
        assert!(flat.interior() < 1e-6 && flat.boundary_value() < 1e-8 && flat.normal_derivative() < 1e-6);

        let mu = CurvatureData::new(c, CurvatureFamily::Hyperbolic { alpha: c.one() }).unwrap();
        let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, 4).unwrap();
        let hyper = verify_mpot_system(&w0, &mu, &grid, &prule, &drule, &options).unwrap();
        assert!(hyper.interior() < 1e-6, "{hyper:?}");
        assert!(hyper.boundary_value() < 1e-8);
        assert!(hyper.normal_derivative() < 1e-6);
        assert!(hyper.normal_derivative_fd() < 1e-6);
    }

    #[test]
    fn toy_weight_is_rejected() {
        let c = ctx();
        let prule = PotentialRule::new(c, 8, 8, 8).unwrap();
        let drule = build_disk_rule(c, 20, 32).unwrap();
        let lambda = c.parse_complex("0.9", "0").unwrap();
        let mu = CurvatureData::new(c, CurvatureFamily::PointMass { lambda, theta: c.parse_real("-1.5").unwrap() })
            .unwrap();
        let w0 = ExtremalWeight::from_curvature(&mu, &prule, &drule, 4).unwrap();
        let grid = GridSpec::new(5, 5).unwrap();
        let r = verify_mpot_system(&w0, &mu, &grid, &prule, &drule, &MpotOptions::default());
        assert!(matches!(r, Err(Error::NonPositive(_))));
    }
}
