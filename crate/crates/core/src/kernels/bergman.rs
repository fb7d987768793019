use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};

use super::zeroset::ZeroSet;

pub(crate) fn check_alpha(alpha: &Real) -> Result<()> {
    if alpha > &-1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("alpha must exceed -1, got {alpha:.10}")))
    }
}

pub(crate) fn check_closed_disk(z: &HpComplex, name: &str) -> Result<()> {
    if z.in_closed_disk() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {z:.12} lies outside the closed unit disk")))
    }
}

pub(crate) fn check_open_disk(z: &HpComplex, name: &str) -> Result<()> {
    if z.in_open_disk() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {z:.12} is not in the open unit disk")))
    }
}

/// Checks that at most one of the two arguments sits on the circle.
pub(crate) fn check_pair(z: &HpComplex, w: &HpComplex) -> Result<()> {
    check_closed_disk(z, "z")?;
    check_closed_disk(w, "w")?;
    if !z.in_open_disk() && !w.in_open_disk() {
        return Err(Error::Domain(format!(
            "kernel evaluated with both arguments on the unit circle ({z:.8}, {w:.8})"
        )));
    }
    Ok(())
}

/// `(1 - z conj(w))^{-p}` on the principal branch.
pub(crate) fn inv_pow(z: &HpComplex, w: &HpComplex, p: &Real) -> Result<HpComplex> {
    let base = 1.0 - z * &w.conj();
    base.cpow_real(&-p)
}

/// Standard weighted Bergman kernel `1 / (1 - z w̄)^{α+2}` of `A^2_α`.
pub fn bergman_kernel(z: &HpComplex, w: &HpComplex, alpha: &Real) -> Result<HpComplex> {
    check_alpha(alpha)?;
    check_pair(z, w)?;
    inv_pow(z, w, &(alpha + 2.0))
}

/// Kernel of the functions vanishing at `λ`.
pub fn one_point_kernel(
    z: &HpComplex,
    w: &HpComplex,
    lambda: &HpComplex,
    alpha: &Real,
) -> Result<HpComplex> {
    check_open_disk(lambda, "lambda")?;
    let k = bergman_kernel(z, w, alpha)?;
    let kzl = bergman_kernel(z, lambda, alpha)?;
    let klw = bergman_kernel(lambda, w, alpha)?;
    let kll = bergman_kernel(lambda, lambda, alpha)?.re;
    Ok(k - (&kzl * &klw) / &kll)
}

fn extremal_normalizer(lambda: &HpComplex, alpha: &Real) -> Result<Real> {
    check_alpha(alpha)?;
    check_open_disk(lambda, "lambda")?;
    let beta = alpha + 2.0;
    let t = (1.0 - lambda.norm_sqr()).powf(&beta);
    let gap = 1.0 - t;
    if !gap.is_positive() {
        return Err(Error::Degenerate(format!(
            "extremal normalizer vanishes at lambda = {lambda:.12}"
        )));
    }
    Ok(gap)
}

/// The extremal function `φ_λ` for the one-point problem (unit norm,
/// vanishing at `λ`, `φ_λ(0) > 0`).
pub fn extremal_function(z: &HpComplex, lambda: &HpComplex, alpha: &Real) -> Result<HpComplex> {
    let gap = extremal_normalizer(lambda, alpha)?;
    check_closed_disk(z, "z")?;
    let beta = alpha + 2.0;
    let t = (1.0 - lambda.norm_sqr()).powf(&beta);
    let tail = inv_pow(z, lambda, &beta)?.scale(&t);
    Ok((1.0 - tail).scale(&gap.sqrt().recip()))
}

/// `φ_λ'(z)`.
pub fn extremal_derivative(z: &HpComplex, lambda: &HpComplex, alpha: &Real) -> Result<HpComplex> {
    let gap = extremal_normalizer(lambda, alpha)?;
    check_closed_disk(z, "z")?;
    let beta = alpha + 2.0;
    let t = (1.0 - lambda.norm_sqr()).powf(&beta);
    let d = inv_pow(z, lambda, &(&beta + 1.0))? * &lambda.conj();
    Ok(d.scale(&(-(&t * &beta) / gap.sqrt())))
}

/// Finite Blaschke product `Π ((z - a)/(1 - ā z))^m`.
pub fn blaschke_product(zeros: &ZeroSet, z: &HpComplex) -> Result<HpComplex> {
    check_closed_disk(z, "z")?;
    let mut acc = z.one_like();
    for p in zeros.points() {
        let a = &p.location;
        let factor = (z - a) / (1.0 - &a.conj() * z);
        acc *= factor.powi(i64::from(p.multiplicity));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;
    use proptest::prelude::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    fn close(a: &HpComplex, b: &HpComplex, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn trivial_values() {
        let c = ctx();
        let alpha = c.parse_real("1.3").unwrap();
        assert_eq!(bergman_kernel(&c.czero(), &c.czero(), &alpha).unwrap(), c.cone());
        let z = c.complex(0.3, -0.7);
        assert_eq!(bergman_kernel(&z, &c.czero(), &alpha).unwrap(), c.cone());
    }

    #[test]
    fn half_half_alpha_one() {
        let c = ctx();
        let half = c.complex(0.5, 0.0);
        let k = bergman_kernel(&half, &half, &c.one()).unwrap();
        let expected = HpComplex::from_real(c.ratio(64, 27));
        assert!(close(&k, &expected, 1e-38));
    }

    #[test]
    fn diagonal_boundary_pair_rejected() {
        let c = ctx();
        let one = c.cone();
        assert!(matches!(bergman_kernel(&one, &one, &c.one()), Err(Error::Domain(_))));
        assert!(bergman_kernel(&one, &c.complex(0.5, 0.0), &c.one()).is_ok());
        assert!(bergman_kernel(&c.complex(1.1, 0.0), &c.czero(), &c.one()).is_err());
    }

    #[test]
    fn one_point_kernel_at_origin_matches_closed_form() {
        let c = ctx();
        let alpha = c.parse_real("2.5").unwrap();
        let lambda = c.complex(0.4, 0.3);
        let z = c.complex(-0.2, 0.6);
        let got = one_point_kernel(&z, &c.czero(), &lambda, &alpha).unwrap();
        let beta = &alpha + 2.0;
        let num = (1.0 - lambda.norm_sqr()).powf(&beta);
        let den = (1.0 - &z * &lambda.conj()).ln().scale(&beta).exp();
        let expected = 1.0 - HpComplex::from_real(num) / den;
        assert!(close(&got, &expected, 1e-37));
        assert!(one_point_kernel(&lambda, &z, &lambda, &alpha).unwrap().abs() < 1e-38);
    }

    #[test]
    fn extremal_values() {
        let c = ctx();
        let alpha = c.one();
        let half = c.complex(0.5, 0.0);
        let at0 = extremal_function(&c.czero(), &half, &alpha).unwrap();
        let expected = (1.0 - c.ratio(27, 64)).sqrt();
        assert!((&at0.re - &expected).abs() < 1e-38);
        assert!(at0.re < 1.0 && at0.im.is_zero());
        assert!(extremal_function(&half, &half, &alpha).unwrap().abs() < 1e-38);
        assert!(matches!(
            extremal_function(&half, &c.czero(), &alpha),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn extremal_derivative_matches_difference_quotient() {
        let c = ctx();
        let alpha = c.parse_real("0.7").unwrap();
        let lambda = c.complex(-0.3, 0.5);
        let z = c.complex(0.1, 0.2);
        let h = HpComplex::from_real(c.ten_pow(-13));
        let fp = extremal_function(&(&z + &h), &lambda, &alpha).unwrap();
        let fm = extremal_function(&(&z - &h), &lambda, &alpha).unwrap();
        let fd = (fp - fm) / (&h + &h);
        let d = extremal_derivative(&z, &lambda, &alpha).unwrap();
        assert!(close(&fd, &d, 1e-24));
    }

    #[test]
    fn blaschke_values() {
        let c = ctx();
        let empty = ZeroSet::empty(c.one()).unwrap();
        assert_eq!(blaschke_product(&empty, &c.complex(0.3, 0.1)).unwrap(), c.cone());
        let a = c.complex(0.2, -0.5);
        let zs = ZeroSet::new(
            c.one(),
            vec![super::super::ZeroPoint { location: a.clone(), multiplicity: 2 }],
        )
        .unwrap();
        assert!(blaschke_product(&zs, &a).unwrap().is_zero());
        let t = c.parse_real("2.1").unwrap();
        let on_circle = c.cis(&t);
        let m = blaschke_product(&zs, &on_circle).unwrap().abs();
        assert!((m - 1.0).abs() < c.ten_pow(5 - 40));
    }

    proptest! {
        #[test]
        fn hermitian_symmetry(zr in -0.6f64..0.6, zi in -0.6f64..0.6, wr in -0.6f64..0.6,
                              wi in -0.6f64..0.6, a in -0.9f64..4.0) {
            let c = ctx();
            let (z, w, alpha) = (c.complex(zr, zi), c.complex(wr, wi), c.real(a));
            let k1 = bergman_kernel(&z, &w, &alpha).unwrap();
            let k2 = bergman_kernel(&w, &z, &alpha).unwrap().conj();
            prop_assert!(close(&k1, &k2, 1e-36));
            let lambda = c.complex(0.1, -0.2);
            let l1 = one_point_kernel(&z, &w, &lambda, &alpha).unwrap();
            let l2 = one_point_kernel(&w, &z, &lambda, &alpha).unwrap().conj();
            prop_assert!(close(&l1, &l2, 1e-35));
        }

        #[test]
        fn diagonal_is_positive(zr in -0.7f64..0.7, zi in -0.7f64..0.7, a in -0.9f64..4.0) {
            let c = ctx();
            let z = c.complex(zr, zi);
            let lambda = c.complex(-0.35, 0.25);
            let alpha = c.real(a);
            let d = one_point_kernel(&z, &z, &lambda, &alpha).unwrap();
            prop_assert!(!d.re.is_negative());
        }
    }
}
