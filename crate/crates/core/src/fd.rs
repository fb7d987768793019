//! Centered finite differences on closures, used for PDE checks and
//! curvature evaluation of closed-form data.
//!
//! `Δ` is the normalized Laplacian `∂∂̄ = ¼(∂²_x + ∂²_y)`, the operator for
//! which `log|z|²` is the fundamental solution against `dΣ = dxdy/π`.

use crate::error::Result;
use crate::hp::{HpComplex, Precision, Real};

/// Step `10^{-digits/3}` for a single second-order difference: truncation
/// `h²` and roundoff `ε/h²` balance.
pub fn single_step(ctx: Precision) -> Real {
    ctx.ten_pow(-(ctx.digits() as i32) / 3)
}

/// Step `10^{-digits/6}` for a second-order difference applied to a
/// second-order difference.
pub fn nested_step(ctx: Precision) -> Real {
    ctx.ten_pow(-(ctx.digits() as i32) / 6)
}

fn shifted(z: &HpComplex, dx: &Real, dy: &Real) -> HpComplex {
    HpComplex::new(&z.re + dx, &z.im + dy)
}

/// Five-point normalized Laplacian.
pub fn laplacian<F>(f: F, z: &HpComplex, h: &Real) -> Result<Real>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    let zero = h.zero_like();
    let mh = -h;
    let sum = f(&shifted(z, h, &zero))?
        + f(&shifted(z, &mh, &zero))?
        + f(&shifted(z, &zero, h))?
        + f(&shifted(z, &zero, &mh))?;
    let centre = f(z)? * 4.0;
    Ok((sum - centre) / (h.square() * 4.0))
}

/// `(∂_x f, ∂_y f)`.
pub fn gradient<F>(f: F, z: &HpComplex, h: &Real) -> Result<(Real, Real)>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    let zero = h.zero_like();
    let mh = -h;
    let two_h = h * 2.0;
    let fx = (f(&shifted(z, h, &zero))? - f(&shifted(z, &mh, &zero))?) / &two_h;
    let fy = (f(&shifted(z, &zero, h))? - f(&shifted(z, &zero, &mh))?) / &two_h;
    Ok((fx, fy))
}

/// Second partials `(f_xx, f_xy, f_yy)`.
pub fn hessian<F>(f: F, z: &HpComplex, h: &Real) -> Result<(Real, Real, Real)>
where
    F: Fn(&HpComplex) -> Result<Real>,
{
    let zero = h.zero_like();
    let mh = -h;
    let h2 = h.square();
    let c = f(z)? * 2.0;
    let fxx = (f(&shifted(z, h, &zero))? + f(&shifted(z, &mh, &zero))? - &c) / &h2;
    let fyy = (f(&shifted(z, &zero, h))? + f(&shifted(z, &zero, &mh))? - &c) / &h2;
    let fxy = (f(&shifted(z, h, h))? - f(&shifted(z, h, &mh))? - f(&shifted(z, &mh, h))?
        + f(&shifted(z, &mh, &mh))?)
        / (h2 * 4.0);
    Ok((fxx, fxy, fyy))
}
