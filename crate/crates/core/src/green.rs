//! Green functions of `Δ`, `Δ²` and `Δ(1-|z|²)^{-1}Δ` on the unit disk,
//! and the Poisson kernel.

use std::io::Write;

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};

fn check_closed(z: &HpComplex, name: &str) -> Result<()> {
    if z.in_closed_disk() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {z:.12} lies outside the closed disk")))
    }
}

fn check_open(z: &HpComplex, name: &str) -> Result<()> {
    if z.in_open_disk() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {z:.12} is not in the open disk")))
    }
}

/// `|1 - z w̄|²`, rejecting the pair when it vanishes.
fn denom_sq(z: &HpComplex, w: &HpComplex) -> Result<Real> {
    let d = (1.0 - z * &w.conj()).norm_sqr();
    if d.is_zero() {
        return Err(Error::Domain(format!("1 - z w̄ vanishes at ({z:.8}, {w:.8})")));
    }
    Ok(d)
}

/// `log |(z-w)/(1-z w̄)|²`, or `None` at `z = w`.
fn log_pseudo(z: &HpComplex, w: &HpComplex) -> Result<Option<Real>> {
    let num = (z - w).norm_sqr();
    if num.is_zero() {
        return Ok(None);
    }
    Ok(Some((num / denom_sq(z, w)?).ln()))
}

/// `G(z, w) = log |(z-w)/(1-z w̄)|²`.
pub fn green_g(z: &HpComplex, w: &HpComplex) -> Result<Real> {
    check_closed(z, "z")?;
    check_closed(w, "w")?;
    log_pseudo(z, w)?.ok_or_else(|| Error::Domain(format!("G is singular at z = w = {z:.12}")))
}

/// `Γ(z, w) = |z-w|² G(z, w) + (1-|z|²)(1-|w|²)`, with the limit at `z = w`.
pub fn biharmonic_gamma(z: &HpComplex, w: &HpComplex) -> Result<Real> {
    check_closed(z, "z")?;
    check_closed(w, "w")?;
    let tail = (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr());
    Ok(match log_pseudo(z, w)? {
        Some(g) => (z - w).norm_sqr() * g + tail,
        None => tail,
    })
}

/// Green function `Γ₁` of `Δ(1-|z|²)^{-1}Δ` with vanishing boundary value
/// and normal derivative.
pub fn weighted_gamma1(z: &HpComplex, w: &HpComplex) -> Result<Real> {
    check_closed(z, "z")?;
    check_closed(w, "w")?;
    let (zz, ww) = (z.norm_sqr(), w.norm_sqr());
    let zw = z * &w.conj();
    let zw_abs2 = zw.norm_sqr();
    let gz = 1.0 - &zz;
    let gw = 1.0 - &ww;
    let log_part = match log_pseudo(z, w)? {
        Some(g) => {
            let diff2 = (z * z - w * w).norm_sqr();
            ((z - w).norm_sqr() - diff2 / 4.0) * g
        }
        None => z.re.zero_like(),
    };
    let ratio = (1.0 - &zw_abs2) / denom_sq(z, w)?;
    let bracket = 7.0 - &zz - &ww - &zw_abs2 - &zw.re * 4.0 - &gz * &gw * ratio * 2.0;
    Ok(log_part + gz * gw * bracket / 8.0)
}

/// Two-sided estimate `lower ≤ Γ₁(z, w) ≤ upper`.
pub fn gamma1_bounds(z: &HpComplex, w: &HpComplex) -> Result<(Real, Real)> {
    check_open(z, "z")?;
    check_open(w, "w")?;
    let d2 = denom_sq(z, w)?;
    let cube = ((1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr())).powi(3) / 8.0;
    let lower = &cube / &d2;
    let upper = cube * (&d2 + 4.0 - (z + w).norm_sqr()) / d2.square();
    Ok((lower, upper))
}

/// Harmonic companion `H₁(·, w)` with `Δ_z Γ₁ = (1-|z|²)(G + H₁)`.
pub fn h1_harmonic(z: &HpComplex, w: &HpComplex) -> Result<Real> {
    check_open(z, "z")?;
    check_open(w, "w")?;
    let ww = w.norm_sqr();
    let gw = 1.0 - &ww;
    let zw = z * &w.conj();
    let one_minus = 1.0 - &zw;
    let first = (3.0 - &ww) * (1.0 - zw.norm_sqr()) / (one_minus.norm_sqr() * 2.0);
    let second = (&zw / &(&one_minus * &one_minus)).re * &gw;
    Ok(gw * (first + second))
}

/// `P(w, ζ) = (1-|w|²)/|ζ-w|²` for `|w| < 1`, `|ζ| = 1`.
pub fn poisson_kernel(w: &HpComplex, zeta: &HpComplex) -> Result<Real> {
    check_open(w, "w")?;
    if !zeta.on_circle() {
        return Err(Error::Domain(format!("zeta = {zeta:.12} is not on the unit circle")));
    }
    Ok((1.0 - w.norm_sqr()) / (zeta - w).norm_sqr())
}

/// `r/2 - 1/(2r) < log r < -3/2 + 2r - r²/2` on `0 < r < 1`.
pub fn log_estimate(r: &Real) -> Result<(Real, Real)> {
    if !(r > &0.0 && r < &1.0) {
        return Err(Error::Domain(format!("log estimate needs 0 < r < 1, got {r:.10}")));
    }
    let lower = r / 2.0 - r.recip() / 2.0;
    let upper = r * 2.0 - 1.5 - r.square() / 2.0;
    Ok((lower, upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreenKind {
    G,
    Gamma,
    Gamma1,
}

impl GreenKind {
    pub fn eval(self, z: &HpComplex, w: &HpComplex) -> Result<Real> {
        match self {
            GreenKind::G => green_g(z, w),
            GreenKind::Gamma => biharmonic_gamma(z, w),
            GreenKind::Gamma1 => weighted_gamma1(z, w),
        }
    }
}

impl std::str::FromStr for GreenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "g" => Ok(GreenKind::G),
            "gamma" => Ok(GreenKind::Gamma),
            "gamma1" => Ok(GreenKind::Gamma1),
            _ => Err(Error::InvalidInput(format!("unknown Green function {s:?} (g, gamma, gamma1)"))),
        }
    }
}

/// Writes `x,y,value` rows for the nodes of an `m × n` grid over `[-1, 1]²`
/// that lie in the closed disk. The pole of `G` is skipped.
pub fn write_grid_csv<W: Write>(
    out: W,
    kind: GreenKind,
    w: &HpComplex,
    m: usize,
    n: usize,
) -> Result<usize> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidInput("grid needs at least 2x2 nodes".into()));
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["x", "y", "value"])?;
    let mut rows = 0;
    let one = w.re.one_like();
    for j in 0..n {
        for i in 0..m {
            let x = &one * (2.0 * i as f64) / (m - 1) as f64 - 1.0;
            let y = &one * (2.0 * j as f64) / (n - 1) as f64 - 1.0;
            let z = HpComplex::new(x, y);
            if !z.in_closed_disk() || (kind == GreenKind::G && z == *w) {
                continue;
            }
            let v = kind.eval(&z, w)?;
            writer.write_record([
                z.re.to_decimal_string(),
                z.im.to_decimal_string(),
                v.to_decimal_string(),
            ])?;
            rows += 1;
        }
    }
    writer.flush()?;
    Ok(rows)
}
