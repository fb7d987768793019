use crate::error::{Error, Result};
use crate::hp::{HpComplex, Real};

use super::bergman::{bergman_kernel, check_pair};
use super::zeroset::ZeroSet;

/// `K_A(z, w)` by folding the one-point update over the points of `A` in
/// input order.
///
/// Works on the table `T[r][c] = K(x_r, y_c)` with rows `x = (z, a_1, …)`
/// and columns `y = (w, a_1, …)`. Folding `a_p` only touches the rows and
/// columns still needed, so the cost is cubic in `n`.
pub fn kernel_recursive(zeros: &ZeroSet, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
    if !zeros.is_simple() {
        return Err(Error::InvalidInput(
            "kernel_recursive needs simple points; use kernel_with_multiplicity".into(),
        ));
    }
    check_pair(z, w)?;
    let alpha = zeros.alpha();
    let pts: Vec<&HpComplex> = zeros.points().iter().map(|p| &p.location).collect();
    let m = pts.len() + 1;
    let row_node = |r: usize| if r == 0 { z } else { pts[r - 1] };
    let col_node = |c: usize| if c == 0 { w } else { pts[c - 1] };

    let mut t = Vec::with_capacity(m * m);
    for r in 0..m {
        for c in 0..m {
            t.push(bergman_kernel(row_node(r), col_node(c), alpha)?);
        }
    }

    for p in 1..m {
        let lam = pts[p - 1];
        let unreduced = bergman_kernel(lam, lam, alpha)?.re;
        let pivot = t[p * m + p].re.clone();
        if pivot <= &unreduced * &noise_floor(&unreduced) {
            return Err(Error::Degenerate(format!(
                "division by zero: K_A(λ,λ) vanished at λ = {lam:.12} (duplicated point?)"
            )));
        }
        let live: Vec<usize> = std::iter::once(0).chain(p + 1..m).collect();
        let col: Vec<HpComplex> = live.iter().map(|&r| &t[r * m + p] / &pivot).collect();
        for (&r, factor) in live.iter().zip(&col) {
            for &c in &live {
                let delta = factor * &t[p * m + c];
                t[r * m + c] -= delta;
            }
        }
    }
    Ok(t.swap_remove(0))
}

/// Relative threshold below which a reduced diagonal value counts as zero.
pub(crate) fn noise_floor(like: &Real) -> Real {
    let bits = like.prec();
    Real::from_float(rug::Float::with_val(bits, 1u32) >> bits.saturating_sub(8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;
    use crate::kernels::bergman::one_point_kernel;
    use proptest::prelude::*;

    fn ctx() -> Precision {
        Precision::default()
    }

    fn rel(a: &HpComplex, b: &HpComplex) -> f64 {
        let scale = a.abs().max_of(b.abs()).to_f64().max(1e-300);
        (a - b).abs().to_f64() / scale
    }

    #[test]
    fn empty_set_is_bergman() {
        let c = ctx();
        let alpha = c.parse_real("1.5").unwrap();
        let zs = ZeroSet::empty(alpha.clone()).unwrap();
        let (z, w) = (c.complex(0.2, 0.3), c.complex(-0.4, 0.1));
        assert_eq!(
            kernel_recursive(&zs, &z, &w).unwrap(),
            bergman_kernel(&z, &w, &alpha).unwrap()
        );
    }

    #[test]
    fn single_point_is_one_point_kernel() {
        let c = ctx();
        let alpha = c.int(3);
        let lambda = c.complex(0.5, -0.25);
        let zs = ZeroSet::simple(alpha.clone(), vec![lambda.clone()]).unwrap();
        let (z, w) = (c.complex(0.1, 0.7), c.complex(-0.3, -0.3));
        let a = kernel_recursive(&zs, &z, &w).unwrap();
        let b = one_point_kernel(&z, &w, &lambda, &alpha).unwrap();
        assert!(rel(&a, &b) < 1e-36);
    }

    #[test]
    fn duplicated_point_is_division_by_zero() {
        let c = ctx();
        let a = c.complex(0.3, 0.2);
        let zs = ZeroSet::simple(c.one(), vec![a.clone(), a]).unwrap();
        let err = kernel_recursive(&zs, &c.czero(), &c.czero()).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn vanishes_at_every_point() {
        let c = ctx();
        let pts = vec![c.complex(0.5, 0.1), c.complex(-0.3, 0.6), c.complex(0.0, -0.7)];
        let zs = ZeroSet::simple(c.parse_real("2.2").unwrap(), pts.clone()).unwrap();
        let w = c.complex(0.25, 0.25);
        for a in &pts {
            assert!(kernel_recursive(&zs, a, &w).unwrap().abs() < 1e-35);
        }
    }

    fn point() -> impl Strategy<Value = (f64, f64)> {
        (0.0f64..0.85, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| (r * t.cos(), r * t.sin()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn fold_order_does_not_matter(p in proptest::collection::vec(point(), 3),
                                      z in point(), w in point(), a in -0.5f64..4.0) {
            let c = ctx();
            let pts: Vec<_> = p.iter().map(|&(x, y)| c.complex(x, y)).collect();
            let zs = ZeroSet::simple(c.real(a), pts).unwrap();
            let z = c.complex(z.0, z.1);
            let w = c.complex(w.0, w.1);
            let k1 = kernel_recursive(&zs, &z, &w).unwrap();
            let k2 = kernel_recursive(&zs.permuted(&[2, 0, 1]).unwrap(), &z, &w).unwrap();
            prop_assert!((&k1 - &k2).abs() <= k1.abs().max_of(k2.abs()) * 1e-30 + 1e-34);
        }

        #[test]
        fn hermitian_and_conjugation(p in proptest::collection::vec(point(), 1..5),
                                     z in point(), w in point()) {
            let c = ctx();
            let pts: Vec<_> = p.iter().map(|&(x, y)| c.complex(x, y)).collect();
            let zs = ZeroSet::simple(c.parse_real("1.25").unwrap(), pts).unwrap();
            let z = c.complex(z.0, z.1);
            let w = c.complex(w.0, w.1);
            let k = kernel_recursive(&zs, &z, &w).unwrap();
            let swapped = kernel_recursive(&zs, &w, &z).unwrap().conj();
            prop_assert!((&k - &swapped).abs() < 1e-30);
            let mirrored = kernel_recursive(&zs.conjugated(), &z.conj(), &w.conj()).unwrap();
            prop_assert!((&k.conj() - &mirrored).abs() < 1e-30);
            let diag = kernel_recursive(&zs, &z, &z).unwrap();
            prop_assert!(diag.re > -1e-30);
        }
    }
}
