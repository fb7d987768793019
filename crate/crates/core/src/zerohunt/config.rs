use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};
use crate::kernels::ZeroSet;

/// Parameters of the two-ray zero configuration.
#[derive(Clone, Debug)]
pub struct HuntConfig {
    pub alpha: Real,
    /// Number of points; even, and `0` gives the empty set.
    pub n: usize,
    /// Angle parameter in `(0, π/2)`.
    pub theta: Real,
    /// Geometric ratio, `d > 1`.
    pub d: Real,
    pub ctx: Precision,
}

impl HuntConfig {
    pub fn new(ctx: Precision, alpha: Real, n: usize, theta: Real, d: Real) -> Result<HuntConfig> {
        if !(alpha > -1.0) {
            return Err(Error::InvalidInput(format!("alpha must exceed -1, got {alpha:.10}")));
        }
        if n % 2 != 0 {
            return Err(Error::InvalidInput(format!("n must be even, got {n}")));
        }
        if !(theta.is_positive() && theta < ctx.pi() / 2.0) {
            return Err(Error::InvalidInput(format!("theta must lie in (0, pi/2), got {theta:.10}")));
        }
        if !(d > 1.0) {
            return Err(Error::InvalidInput(format!("d must exceed 1, got {d:.10}")));
        }
        Ok(HuntConfig { alpha, n, theta, d, ctx })
    }

    /// Parses decimal parameters at the precision of `ctx`.
    pub fn parse(ctx: Precision, alpha: &str, n: usize, theta: &str, d: &str) -> Result<HuntConfig> {
        HuntConfig::new(ctx, ctx.parse_real(alpha)?, n, ctx.parse_real(theta)?, ctx.parse_real(d)?)
    }

    /// Same configuration at another working precision, re-parsed from the
    /// decimal strings so that the points are the correctly rounded ones.
    pub fn with_digits(&self, digits: u32) -> Result<HuntConfig> {
        let ctx = Precision::new(digits)?;
        let doc = self.to_doc();
        HuntConfig::parse(ctx, &doc.alpha, self.n, &doc.theta, &doc.d)
    }

    pub fn with_alpha(&self, alpha: Real) -> Result<HuntConfig> {
        HuntConfig::new(self.ctx, alpha, self.n, self.theta.clone(), self.d.clone())
    }

    pub fn to_doc(&self) -> HuntConfigDoc {
        HuntConfigDoc {
            alpha: self.alpha.to_shortest_string(),
            n: self.n,
            theta: self.theta.to_shortest_string(),
            d: self.d.to_shortest_string(),
            digits: self.ctx.digits(),
        }
    }

    pub fn from_doc(doc: &HuntConfigDoc) -> Result<HuntConfig> {
        HuntConfig::parse(Precision::new(doc.digits)?, &doc.alpha, doc.n, &doc.theta, &doc.d)
    }
}

/// Serialized form with decimal-string parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntConfigDoc {
    pub alpha: String,
    pub n: usize,
    pub theta: String,
    pub d: String,
    pub digits: u32,
}

/// `a_k = exp(3(i - θ) d^{k - n/2})` for `k = 1..n/2`, followed by the
/// conjugates `a_{k + n/2} = ā_k`.
pub fn generate_configuration(cfg: &HuntConfig) -> Result<ZeroSet> {
    let half = cfg.n / 2;
    let ctx = cfg.ctx;
    let exponent = HpComplex::new(-(&cfg.theta * 3.0), ctx.int(3));
    let mut upper = Vec::with_capacity(half);
    for k in 1..=half {
        let scale = cfg.d.powi(k as i32 - half as i32);
        upper.push(exponent.scale(&scale).exp());
    }
    let lower: Vec<HpComplex> = upper.iter().map(HpComplex::conj).collect();
    upper.extend(lower);
    ZeroSet::simple(cfg.alpha.clone(), upper)
}
