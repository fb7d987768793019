use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};
use crate::kernels::{kernel_linear_system, weighted_kernel_from_zero_kernel, KernelRep, ZeroSet};

use super::config::{generate_configuration, HuntConfig};

/// Default signal-to-residual factor for a verdict.
pub const DEFAULT_MARGIN: f64 = 1e3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ExtraneousZeroFound,
    NoneFound,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ExtraneousZeroFound => "extraneous_zero_found",
            Verdict::NoneFound => "none_found",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of [`boundary_value_scan`].
#[derive(Clone, Debug)]
pub struct HuntResult {
    /// `Re K_A(1, 0)`.
    pub boundary_value: Real,
    /// `|Im K_A(1, 0)|`, pure rounding for symmetric sets.
    pub boundary_imag: Real,
    /// `max_j |K_A(a_j, 0)|`.
    pub zero_residual: Real,
    pub verdict: Verdict,
    pub located_zero: Option<Real>,
    /// Set when the linear system could not be solved.
    pub failure: Option<String>,
    rep: Option<KernelRep>,
}

impl HuntResult {
    /// The solved coefficient form, absent for an inconclusive solve.
    pub fn kernel(&self) -> Option<&KernelRep> {
        self.rep.as_ref()
    }

    pub fn to_doc(&self) -> HuntResultDoc {
        HuntResultDoc {
            boundary_value: self.boundary_value.to_decimal_string(),
            boundary_imag: self.boundary_imag.to_string_digits(6),
            zero_residual: self.zero_residual.to_string_digits(6),
            verdict: self.verdict,
            located_zero: self.located_zero.as_ref().map(Real::to_decimal_string),
            failure: self.failure.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HuntResultDoc {
    pub boundary_value: String,
    pub boundary_imag: String,
    pub zero_residual: String,
    pub verdict: Verdict,
    pub located_zero: Option<String>,
    pub failure: Option<String>,
}

/// Verdict from a boundary value and the residual at the prescribed zeros:
/// the sign counts only when it exceeds `margin` times the residual.
pub fn classify(boundary_value: &Real, zero_residual: &Real, margin: f64) -> Verdict {
    let bar = zero_residual * margin;
    if boundary_value.abs() < bar || boundary_value.is_zero() {
        Verdict::Inconclusive
    } else if boundary_value.is_negative() {
        Verdict::ExtraneousZeroFound
    } else {
        Verdict::NoneFound
    }
}

/// Evaluates `K_A(1, 0)` for an explicit zero set.
pub fn scan_zero_set(zeros: &ZeroSet, margin: f64) -> Result<HuntResult> {
    let one = match zeros.points().first() {
        Some(p) => p.location.one_like(),
        None => {
            let one = zeros.alpha().one_like();
            return Ok(HuntResult {
                verdict: classify(&one, &one.zero_like(), margin),
                boundary_imag: one.zero_like(),
                zero_residual: one.zero_like(),
                boundary_value: one,
                located_zero: None,
                failure: None,
                rep: kernel_linear_system(zeros).ok(),
            });
        }
    };
    let rep = match kernel_linear_system(zeros) {
        Ok(rep) => rep,
        Err(e @ Error::Singular { .. }) => {
            let nan = zeros.alpha().zero_like();
            return Ok(HuntResult {
                boundary_value: nan.clone(),
                boundary_imag: nan.clone(),
                zero_residual: nan,
                verdict: Verdict::Inconclusive,
                located_zero: None,
                failure: Some(e.to_string()),
                rep: None,
            });
        }
        Err(e) => return Err(e),
    };
    let k1 = rep.eval(&one)?;
    Ok(HuntResult {
        verdict: classify(&k1.re, rep.zero_residual(), margin),
        boundary_value: k1.re,
        boundary_imag: k1.im.abs(),
        zero_residual: rep.zero_residual().clone(),
        located_zero: None,
        failure: None,
        rep: Some(rep),
    })
}

/// Builds the configuration, solves for the coefficient form and classifies
/// the sign of `K_A(1, 0)`.
pub fn boundary_value_scan(cfg: &HuntConfig) -> Result<HuntResult> {
    boundary_value_scan_with(cfg, DEFAULT_MARGIN)
}

pub fn boundary_value_scan_with(cfg: &HuntConfig, margin: f64) -> Result<HuntResult> {
    scan_zero_set(&generate_configuration(cfg)?, margin)
}

/// Bisection of a real function on `[lo, hi]` down to `width`, or until the
/// midpoint no longer differs from an endpoint.
pub fn bisect<F>(f: F, lo: &Real, hi: &Real, width: &Real) -> Result<Real>
where
    F: Fn(&Real) -> Result<Real>,
{
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let fa = f(&a)?;
    let fb = f(&b)?;
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if fa.is_negative() == fb.is_negative() {
        return Err(Error::NoSignChange {
            lo: lo.to_string_digits(12),
            hi: hi.to_string_digits(12),
        });
    }
    let left_negative = fa.is_negative();
    while (&b - &a) > *width {
        let mid = (&a + &b) / 2.0;
        if mid == a || mid == b {
            break;
        }
        let fm = f(&mid)?;
        if fm.is_zero() {
            return Ok(mid);
        }
        if fm.is_negative() == left_negative {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((a + b) / 2.0)
}

/// A zero of `K_A(·, 0)` on `(0, 1)` with the checks made on it.
#[derive(Clone, Debug)]
pub struct ZeroLocation {
    pub x0: Real,
    /// `|K_A(x₀, 0)|`.
    pub kernel_value: Real,
    /// `max |Im K_A(x, 0)|` over 100 samples of `[0, 1]` and `x₀`.
    pub imag_defect: Real,
    /// `min_j |x₀ - a_j|`; positive means `x₀ ∉ A`.
    pub distance_to_zero_set: Real,
    /// `|K_A(x₀, 0) / B_A(x₀)|`, the kernel of `ω_α |B_A|²` at `(x₀, 0)`.
    pub weighted_kernel_value: Real,
}

/// Bisects `x ↦ Re K_A(x, 0)` on `[0, 1]` to width `min(10^-20, 10^-digits)`.
/// The kernel is steep near the circle, so stopping at `10^-20` would leave
/// `|K_A(x₀, 0)|` far above the residual at the prescribed zeros.
pub fn locate_extraneous_zero(result: &HuntResult) -> Result<ZeroLocation> {
    let rep = result
        .kernel()
        .ok_or_else(|| Error::InvalidInput("no kernel to bisect: the scan was inconclusive".into()))?;
    let zeros = rep.zeros();
    if !zeros.is_conjugate_symmetric() {
        return Err(Error::InvalidInput(
            "bisection along [0, 1] needs a set symmetric under conjugation".into(),
        ));
    }
    let ctx = result.boundary_value.zero_like();
    let on_axis = |x: &Real| HpComplex::new(x.clone(), ctx.zero_like());
    let re = |x: &Real| Ok(rep.eval(&on_axis(x))?.re);
    let digits = ctx.precision_digits().max(20) as i32;
    let width = Real::from_float(rug::Float::with_val(ctx.prec(), 10)).powi(-digits);
    let x0 = bisect(re, &ctx.zero_like(), &ctx.one_like(), &width)?;

    let value = rep.eval(&on_axis(&x0))?;
    let mut imag = value.im.abs();
    for k in 0..100 {
        let x = ctx.with_value_i64(k) / 99.0;
        imag = imag.max_of(rep.eval(&on_axis(&x))?.im.abs());
    }
    let z0 = on_axis(&x0);
    let distance = zeros
        .points()
        .iter()
        .map(|p| (&z0 - &p.location).abs())
        .reduce(Real::min_of)
        .unwrap_or_else(|| ctx.one_like());
    let weighted = weighted_kernel_from_zero_kernel(zeros, &z0, &z0.zero_like())?.abs();
    Ok(ZeroLocation {
        x0,
        kernel_value: value.abs(),
        imag_defect: imag,
        distance_to_zero_set: distance,
        weighted_kernel_value: weighted,
    })
}

/// [`boundary_value_scan`] followed by [`locate_extraneous_zero`] when the
/// verdict is positive.
pub fn hunt(cfg: &HuntConfig) -> Result<(HuntResult, Option<ZeroLocation>)> {
    let mut result = boundary_value_scan(cfg)?;
    if result.verdict != Verdict::ExtraneousZeroFound {
        return Ok((result, None));
    }
    let loc = locate_extraneous_zero(&result)?;
    result.located_zero = Some(loc.x0.clone());
    Ok((result, Some(loc)))
}
