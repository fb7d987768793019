use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

use super::gauss::gauss_legendre;

/// Tensor rule on the disk for `dΣ = dxdy/π`: Gauss–Legendre in the radius
/// (weights carry the `2r` Jacobian) times the trapezoid rule in angle.
#[derive(Clone, Debug)]
pub struct DiskRule {
    ctx: Precision,
    radii: Vec<Real>,
    radial_weights: Vec<Real>,
    angles: Vec<Real>,
    directions: Vec<HpComplex>,
}

/// Decimal-string export of a rule.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiskRuleDoc {
    pub digits: u32,
    pub radial_nodes: Vec<String>,
    pub radial_weights: Vec<String>,
    pub angular_count: usize,
}

/// Gauss–Legendre × trapezoid rule with `m_r` radii and `n_theta` angles.
pub fn build_disk_rule(ctx: Precision, m_r: usize, n_theta: usize) -> Result<DiskRule> {
    if m_r < 2 || n_theta < 4 {
        return Err(Error::InvalidInput(format!(
            "disk rule needs M_r >= 2 and N_theta >= 4, got {m_r} x {n_theta}"
        )));
    }
    let g = gauss_legendre(ctx, m_r)?;
    let radial_weights = g.nodes.iter().zip(&g.weights).map(|(r, w)| r * w * 2.0).collect();
    let step = ctx.pi() * 2.0 / (n_theta as f64);
    let angles: Vec<Real> = (0..n_theta).map(|j| &step * (j as f64)).collect();
    let directions = angles.iter().map(|t| ctx.cis(t)).collect();
    Ok(DiskRule {
        ctx,
        radii: g.nodes,
        radial_weights,
        angles,
        directions,
    })
}

impl DiskRule {
    pub fn precision(&self) -> Precision {
        self.ctx
    }

    pub fn radial_count(&self) -> usize {
        self.radii.len()
    }

    pub fn angular_count(&self) -> usize {
        self.directions.len()
    }

    pub fn radii(&self) -> &[Real] {
        &self.radii
    }

    pub fn radial_weights(&self) -> &[Real] {
        &self.radial_weights
    }

    pub fn angles(&self) -> &[Real] {
        &self.angles
    }

    /// All nodes with their weights, radius-major.
    pub fn nodes(&self) -> impl Iterator<Item = (HpComplex, Real)> + '_ {
        let n = self.angular_count() as f64;
        self.radii.iter().zip(&self.radial_weights).flat_map(move |(r, w)| {
            let w = w / n;
            self.directions.iter().map(move |d| (d.scale(r), w.clone()))
        })
    }

    /// `Σ weights`, equal to one up to rounding.
    pub fn total_weight(&self) -> Real {
        self.radial_weights.iter().fold(self.ctx.zero(), |acc, w| acc + w)
    }

    pub fn to_doc(&self) -> DiskRuleDoc {
        DiskRuleDoc {
            digits: self.ctx.digits(),
            radial_nodes: self.radii.iter().map(Real::to_decimal_string).collect(),
            radial_weights: self.radial_weights.iter().map(Real::to_decimal_string).collect(),
            angular_count: self.angular_count(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    /// `∫ P(w, ζ) f(w) dΣ(w)` with the Poisson kernel integrated exactly in
    /// angle against the trigonometric interpolant of `f` on each circle.
    ///
    /// The plain tensor rule cannot resolve the kernel's peak near `ζ`; the
    /// product weights below are the Poisson kernel truncated to the
    /// frequencies the angular grid represents.
    pub fn poisson_integral<F>(&self, f: F, zeta: &HpComplex) -> Result<Real>
    where
        F: Fn(&HpComplex) -> Result<Real>,
    {
        if !zeta.on_circle() {
            return Err(Error::Domain(format!("zeta = {zeta:.12} is not on the unit circle")));
        }
        let n = self.angular_count();
        let k_max = (n - 1) / 2;
        let mut total = self.ctx.zero();
        for (r, wr) in self.radii.iter().zip(&self.radial_weights) {
            let mut ring = self.ctx.zero();
            for d in &self.directions {
                let q = (zeta * &d.conj()).scale(r);
                ring += f(&d.scale(r))? * truncated_poisson(&q, k_max);
            }
            total += ring * wr / (n as f64);
        }
        Ok(total)
    }
}

/// `1 + 2 Re Σ_{k=1}^{K} q^k`.
fn truncated_poisson(q: &HpComplex, k_max: usize) -> Real {
    let one = q.one_like();
    let tail = q.powi(k_max as i64 + 1);
    let sum = (q - &tail) / (&one - q);
    sum.re * 2.0 + 1.0
}

/// `∫ f dΣ` for a complex integrand.
pub fn integrate_disk<F>(rule: &DiskRule, f: F) -> Result<HpComplex>
where
    F: Fn(&HpComplex) -> Result<HpComplex>,
{
    let n = rule.angular_count() as f64;
    let mut total = rule.ctx.czero();
    for (r, w) in rule.radii.iter().zip(&rule.radial_weights) {
        let mut ring = rule.ctx.czero();
        for d in &rule.directions {
            ring += f(&d.scale(r))?;
        }
        total += ring.scale(&(w / n));
    }
    Ok(total)
}

/// `∫ f dΣ` for a real integrand.
pub fn integrate_disk_real<F>(rule: &DiskRule, f: F) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    let n = rule.angular_count() as f64;
    let mut total = rule.ctx.zero();
    for (r, w) in rule.radii.iter().zip(&rule.radial_weights) {
        let mut ring = rule.ctx.zero();
        for d in &rule.directions {
            ring += f(&d.scale(r))?;
        }
        total += ring * w / n;
    }
    Ok(total)
}

/// Integrates several real integrands sharing one pointwise evaluation.
pub fn integrate_disk_many<F>(rule: &DiskRule, count: usize, f: F) -> Result<Vec<Real>>
where
    F: Fn(&HpComplex) -> Result<Vec<Real>>,
{
    let n = rule.angular_count() as f64;
    let mut total = vec![rule.ctx.zero(); count];
    for (r, w) in rule.radii.iter().zip(&rule.radial_weights) {
        let mut ring = vec![rule.ctx.zero(); count];
        for d in &rule.directions {
            let values = f(&d.scale(r))?;
            if values.len() != count {
                return Err(Error::InvalidInput(format!(
                    "integrand returned {} values, expected {count}",
                    values.len()
                )));
            }
            for (acc, v) in ring.iter_mut().zip(values) {
                *acc += v;
            }
        }
        let scale = w / n;
        for (acc, v) in total.iter_mut().zip(ring) {
            *acc += v * &scale;
        }
    }
    Ok(total)
}
