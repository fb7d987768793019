//! Green potentials `∫ G(z, w) f(w) dΣ(w)` by polar Fourier splitting.
//!
//! With `z = r e^{iθ}`, `w = ρ e^{iφ}` the Green function expands as
//!
//! `G = 2 log max(r, ρ) - Σ_{k≥1} (2/k) [(min/max)^k - (rρ)^k] cos k(θ - φ)`,
//!
//! so the potential reduces to radial integrals of the angular Fourier
//! coefficients `f̂_k(ρ)` of the density, split at `ρ = r`. The logarithm
//! in the `k = 0` term is integrated by a Gauss rule for the weight `-ln s`.
//! The result is a smooth function of `z`, exact for polynomial densities
//! of moderate degree, which keeps finite differences of potentials
//! meaningful.

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

use super::gauss::{gauss_legendre, log_gauss, GaussRule};

#[derive(Clone, Debug)]
pub struct PotentialRule {
    ctx: Precision,
    legendre: GaussRule,
    log_rule: GaussRule,
    directions: Vec<HpComplex>,
}

impl PotentialRule {
    /// `m` Legendre nodes per radial piece, `n_log` log-weighted nodes,
    /// `n_angles` samples per circle.
    pub fn new(ctx: Precision, m: usize, n_log: usize, n_angles: usize) -> Result<PotentialRule> {
        if n_angles < 4 {
            return Err(Error::InvalidInput(format!("need at least 4 angles, got {n_angles}")));
        }
        let step = ctx.pi() * 2.0 / (n_angles as f64);
        let directions = (0..n_angles).map(|j| ctx.cis(&(&step * (j as f64)))).collect();
        Ok(PotentialRule {
            ctx,
            legendre: gauss_legendre(ctx, m)?,
            log_rule: log_gauss(ctx, n_log)?,
            directions,
        })
    }

    /// 40 × 40 radial nodes and 32 angles.
    pub fn standard(ctx: Precision) -> Result<PotentialRule> {
        PotentialRule::new(ctx, 40, 40, 32)
    }

    pub fn precision(&self) -> Precision {
        self.ctx
    }

    fn max_mode(&self) -> usize {
        self.directions.len() / 2 - 1
    }

    /// `f̂_k(ρ)` for `k = 0..=K`.
    fn coefficients<F>(&self, f: &F, rho: &Real) -> Result<Vec<HpComplex>>
    where
        F: Fn(&HpComplex) -> Result<Real>,
    {
        let n = self.directions.len();
        let samples: Vec<Real> = self
            .directions
            .iter()
            .map(|d| f(&d.scale(rho)))
            .collect::<Result<_>>()?;
        let inv_n = self.ctx.one() / (n as f64);
        Ok((0..=self.max_mode())
            .map(|k| {
                let mut acc = self.ctx.czero();
                for (j, s) in samples.iter().enumerate() {
                    acc += self.directions[(j * k) % n].conj().scale(s);
                }
                acc.scale(&inv_n)
            })
            .collect())
    }

    /// Precomputes the `z`-independent parts for a density.
    pub fn prepare<F>(&self, f: F) -> Result<PreparedDensity<F>>
    where
        F: Fn(&HpComplex) -> Result<Real>,
    {
        // I = ∫₀¹ ρ ln ρ f̂₀(ρ) dρ
        let mut full_log = self.ctx.zero();
        for (s, w) in self.log_rule.nodes.iter().zip(&self.log_rule.weights) {
            let c0 = self.coefficients(&f, s)?.swap_remove(0);
            full_log -= w * s * &c0.re;
        }
        // T_k = ∫₀¹ ρ^{k+1} f̂_k(ρ) dρ
        let mut tails = vec![self.ctx.czero(); self.max_mode() + 1];
        for (rho, w) in self.legendre.nodes.iter().zip(&self.legendre.weights) {
            let coeffs = self.coefficients(&f, rho)?;
            let mut p = rho * w;
            for (k, c) in coeffs.iter().enumerate() {
                if k > 0 {
                    p *= rho;
                    tails[k] += c.scale(&p);
                }
            }
        }
        Ok(PreparedDensity {
            rule: self.clone(),
            f,
            full_log,
            tails,
        })
    }
}

/// A density with its fixed radial integrals cached.
pub struct PreparedDensity<F> {
    rule: PotentialRule,
    f: F,
    full_log: Real,
    tails: Vec<HpComplex>,
}

impl<F> PreparedDensity<F>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    /// `∫ G(z, w) f(w) dΣ(w)` on the closed disk.
    pub fn potential(&self, z: &HpComplex) -> Result<Real> {
        if !z.in_closed_disk() {
            return Err(Error::Domain(format!("z = {z:.12} lies outside the closed unit disk")));
        }
        let rule = &self.rule;
        let ctx = rule.ctx;
        let r = z.abs().min_of(ctx.one());
        let kmax = rule.max_mode();

        // r² ∫₀¹ (-ln s) s f̂₀(rs) ds
        let mut inner_log = ctx.zero();
        if !r.is_zero() {
            for (s, w) in rule.log_rule.nodes.iter().zip(&rule.log_rule.weights) {
                let c0 = rule.coefficients(&self.f, &(&r * s))?.swap_remove(0);
                inner_log += w * s * &c0.re;
            }
            inner_log *= r.square();
        }
        let mut total = (&self.full_log + &inner_log) * 4.0;
        if r.is_zero() || kmax == 0 {
            return Ok(total);
        }

        // J_k = ∫₀^r ρ (ρ/r)^k f̂_k + ∫_r^1 ρ (r/ρ)^k f̂_k - r^k T_k
        let mut inner = vec![ctx.czero(); kmax + 1];
        for (t, w) in rule.legendre.nodes.iter().zip(&rule.legendre.weights) {
            // ρ = r t on [0, r]: ρ (ρ/r)^k dρ = r² t^{k+1} w
            let coeffs = rule.coefficients(&self.f, &(&r * t))?;
            let mut p = t * w * r.square();
            for (k, c) in coeffs.iter().enumerate().skip(1) {
                p *= t;
                inner[k] += c.scale(&p);
            }
        }
        let one = ctx.one();
        if r < one {
            for (rho, w) in rule.legendre.mapped(&r, &one) {
                let coeffs = rule.coefficients(&self.f, &rho)?;
                let q = &r / &rho;
                let mut p = &rho * &w;
                for (k, c) in coeffs.iter().enumerate().skip(1) {
                    p *= &q;
                    inner[k] += c.scale(&p);
                }
            }
        }
        let unit = z.scale(&r.recip());
        let mut rk = ctx.one();
        let mut phase = ctx.cone();
        for k in 1..=kmax {
            rk *= &r;
            phase *= &unit;
            let jk = &inner[k] - &self.tails[k].scale(&rk);
            total -= (&phase * &jk).re * 4.0 / (k as f64);
        }
        Ok(total)
    }
}

/// `∫ G(z, w) f(w) dΣ(w)`.
pub fn potential_via_green<F>(rule: &PotentialRule, f: F, z: &HpComplex) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    rule.prepare(f)?.potential(z)
}

/// `∫ f dΣ` in polar coordinates centred at an interior point `z`.
///
/// `w = z + t ρ(θ) e^{iθ}` with `ρ(θ)` the distance to the circle, so
/// integrands with a singularity at `w = z` of type `|z - w|^{2} log|z - w|`
/// become smooth in the angle and mildly singular only at `t = 0`.
pub fn integrate_centered<F>(ctx: Precision, z: &HpComplex, m: usize, n: usize, f: F) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    if !z.in_open_disk() {
        return Err(Error::Domain(format!("z = {z:.12} is not in the open unit disk")));
    }
    if n < 4 {
        return Err(Error::InvalidInput(format!("need at least 4 angles, got {n}")));
    }
    let g = gauss_legendre(ctx, m)?;
    let step = ctx.pi() * 2.0 / (n as f64);
    let gap = 1.0 - z.norm_sqr();
    let mut total = ctx.zero();
    for j in 0..n {
        let e = ctx.cis(&(&step * (j as f64)));
        let b = (z.conj() * &e).re;
        let reach = (&gap + &b.square()).sqrt() - &b;
        let mut ray = ctx.zero();
        for (t, w) in g.nodes.iter().zip(&g.weights) {
            let point = z + &e.scale(&(t * &reach));
            ray += f(&point)? * t * w;
        }
        total += ray * reach.square();
    }
    Ok(total * 2.0 / (n as f64))
}
