//! Closed forms for the weight `|(z - λ)/(1 - λ̄ z)|^θ`.

use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};

use super::bergman::{check_closed_disk, check_open_disk, check_pair};

fn check_theta(theta: &Real) -> Result<()> {
    if theta > &-2.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta must exceed -2, got {theta:.10}")))
    }
}

/// Kernel of the radial weight `|z|^θ`: `1/(1 - z w̄)² + (θ/2)/(1 - z w̄)`.
pub fn radial_power_kernel(z: &HpComplex, w: &HpComplex, theta: &Real) -> Result<HpComplex> {
    check_theta(theta)?;
    check_pair(z, w)?;
    let u = (1.0 - z * &w.conj()).recip();
    Ok(&u * &u + u.scale(&(theta / 2.0)))
}

/// Full two-variable kernel of the toy weight.
pub fn toy_kernel_full(z: &HpComplex, w: &HpComplex, lambda: &HpComplex, theta: &Real) -> Result<HpComplex> {
    check_theta(theta)?;
    check_open_disk(lambda, "lambda")?;
    check_pair(z, w)?;
    let lbar = lambda.conj();
    let u = (1.0 - z * &w.conj()).recip();
    let den = (1.0 - &lbar * z) * (1.0 - lambda * &w.conj());
    let gain = (1.0 - lambda.norm_sqr()) * (theta / 2.0);
    Ok(&u * &u + (u / den).scale(&gain))
}

/// `K(z, 0) = 1 + (θ/2)(1 - |λ|²)/(1 - λ̄ z)`.
pub fn toy_kernel(z: &HpComplex, lambda: &HpComplex, theta: &Real) -> Result<HpComplex> {
    check_theta(theta)?;
    check_open_disk(lambda, "lambda")?;
    check_closed_disk(z, "z")?;
    let gain = (1.0 - lambda.norm_sqr()) * (theta / 2.0);
    let den = 1.0 - &lambda.conj() * z;
    Ok(HpComplex::from_real(gain) / den + 1.0)
}

/// The weight itself.
pub fn toy_weight(z: &HpComplex, lambda: &HpComplex, theta: &Real) -> Result<Real> {
    check_theta(theta)?;
    check_open_disk(lambda, "lambda")?;
    check_closed_disk(z, "z")?;
    let m = ((z - lambda) / (1.0 - &lambda.conj() * z)).abs();
    Ok(m.powf(theta))
}

/// Whether `K(·, 0)` vanishes somewhere in the open disk:
/// `-2 < θ < -2/(1 + |λ|)`.
pub fn has_disk_zero(lambda: &HpComplex, theta: &Real) -> bool {
    if !(theta > &-2.0) || !lambda.in_open_disk() {
        return false;
    }
    let bound = -2.0 / (lambda.abs() + 1.0);
    theta < &bound
}

/// The root `z₀ = (1 + (θ/2)(1 - |λ|²)) / λ̄` of `K(·, 0)` when it lies in
/// the open disk.
pub fn toy_zero(lambda: &HpComplex, theta: &Real) -> Result<Option<HpComplex>> {
    check_theta(theta)?;
    check_open_disk(lambda, "lambda")?;
    if lambda.is_zero() {
        return Ok(None);
    }
    let num = (1.0 - lambda.norm_sqr()) * (theta / 2.0) + 1.0;
    let root = HpComplex::from_real(num) / lambda.conj();
    Ok(root.in_open_disk().then_some(root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;
    use proptest::prelude::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn unweighted_case_is_one() {
        let c = ctx();
        let k = toy_kernel(&c.complex(0.7, 0.3), &c.complex(0.2, 0.5), &c.zero()).unwrap();
        assert_eq!(k, c.cone());
    }

    #[test]
    fn zero_for_lambda_point_nine() {
        let c = ctx();
        let lambda = c.parse_complex("0.9", "0").unwrap();
        let theta = c.parse_real("-1.5").unwrap();
        assert!(has_disk_zero(&lambda, &theta));
        let z0 = toy_zero(&lambda, &theta).unwrap().expect("zero inside");
        // 1 - 0.75 * 0.19 = 0.8575, divided by 0.9
        let expected = c.parse_real("0.8575").unwrap() / c.parse_real("0.9").unwrap();
        assert!((&z0.re - &expected).abs() < 1e-38);
        assert!((z0.re.to_f64() - 0.952_777_8).abs() < 1e-6);
        assert!(toy_kernel(&z0, &lambda, &theta).unwrap().abs() < 1e-37);

        let mild = c.parse_real("-1.0").unwrap();
        assert!(!has_disk_zero(&lambda, &mild));
        assert!(toy_zero(&lambda, &mild).unwrap().is_none());
    }

    #[test]
    fn full_form_restricts_to_origin_form() {
        let c = ctx();
        let lambda = c.complex(-0.3, 0.6);
        let theta = c.parse_real("2.5").unwrap();
        let z = c.complex(0.4, 0.4);
        let a = toy_kernel_full(&z, &c.czero(), &lambda, &theta).unwrap();
        let b = toy_kernel(&z, &lambda, &theta).unwrap();
        assert!((a - b).abs() < 1e-38);
    }

    proptest! {
        #[test]
        fn predicate_matches_root_location(r in 0.01f64..0.99, t in 0.0f64..6.28, th in -1.99f64..3.0) {
            let c = ctx();
            let lambda = c.complex(r * t.cos(), r * t.sin());
            let theta = c.real(th);
            let root = toy_zero(&lambda, &theta).unwrap();
            prop_assert_eq!(root.is_some(), has_disk_zero(&lambda, &theta));
        }

        #[test]
        fn hermitian(zr in -0.7f64..0.7, zi in -0.7f64..0.7, wr in -0.7f64..0.7, wi in -0.7f64..0.7) {
            let c = ctx();
            let lambda = c.complex(0.5, -0.1);
            let theta = c.real(-0.8);
            let (z, w) = (c.complex(zr, zi), c.complex(wr, wi));
            let a = toy_kernel_full(&z, &w, &lambda, &theta).unwrap();
            let b = toy_kernel_full(&w, &z, &lambda, &theta).unwrap().conj();
            prop_assert!((a - b).abs() < 1e-36);
        }
    }
}
