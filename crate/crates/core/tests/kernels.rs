use mvsurf::hp::{hermitian_solve, HermitianMatrix, HpComplex, Precision, Real};
use mvsurf::kernels::{
    bergman_kernel, kernel_linear_system, kernel_recursive, kernel_with_multiplicity, ZeroPoint, ZeroSet,
};
use proptest::prelude::*;

fn ctx() -> Precision {
    Precision::default()
}

fn point(r: f64, t: f64) -> (f64, f64) {
    (r * t.cos(), r * t.sin())
}

fn points() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..0.9, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| point(r, t)), 1..=8)
}

fn zero_set(alpha: f64, pts: &[(f64, f64)]) -> ZeroSet {
    let c = ctx();
    ZeroSet::simple(c.real(alpha), pts.iter().map(|&(x, y)| c.complex(x, y)).collect()).unwrap()
}

fn distinct(pts: &[(f64, f64)]) -> bool {
    pts.iter()
        .enumerate()
        .all(|(i, p)| pts[..i].iter().all(|q| (p.0 - q.0).hypot(p.1 - q.1) > 1e-3))
}

fn rel(a: &HpComplex, b: &HpComplex) -> Real {
    (a - b).abs() / a.abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn three_methods_agree(pts in points(), alpha in 0.0f64..4.0, zr in 0.0f64..0.95, zt in 0.0f64..6.28) {
        prop_assume!(distinct(&pts));
        let c = ctx();
        let zeros = zero_set(alpha, &pts);
        let (x, y) = point(zr, zt);
        let z = c.complex(x, y);
        let origin = c.czero();
        let a = kernel_recursive(&zeros, &z, &origin).unwrap();
        let b = kernel_linear_system(&zeros).unwrap().eval(&z).unwrap();
        let m = kernel_with_multiplicity(&zeros, &z, &origin).unwrap();
        prop_assert!(rel(&a, &b) < 1e-25);
        prop_assert!(rel(&a, &m) < 1e-25);
    }

    #[test]
    fn kernels_vanish_at_prescribed_zeros(pts in points(), alpha in 0.0f64..4.0, wr in 0.0f64..0.9, wt in 0.0f64..6.28) {
        prop_assume!(distinct(&pts));
        let c = ctx();
        let zeros = zero_set(alpha, &pts);
        let (x, y) = point(wr, wt);
        let w = c.complex(x, y);
        let scale = kernel_recursive(&zeros, &w, &w).unwrap().abs();
        for p in zeros.points() {
            prop_assert!(kernel_recursive(&zeros, &p.location, &w).unwrap().abs() < scale.clone() * 1e-30);
            prop_assert!(kernel_with_multiplicity(&zeros, &p.location, &w).unwrap().abs() < scale.clone() * 1e-30);
        }
    }

    #[test]
    fn diagonal_is_positive_off_the_zero_set(pts in points(), mult in 1u32..=3, alpha in 0.0f64..3.0, zr in 0.0f64..0.95, zt in 0.0f64..6.28) {
        let c = ctx();
        let mut set: Vec<ZeroPoint> = pts.iter().map(|&(x, y)| ZeroPoint { location: c.complex(x, y), multiplicity: 1 }).collect();
        set[0].multiplicity = mult;
        prop_assume!(distinct(&pts));
        let zeros = ZeroSet::new(c.real(alpha), set).unwrap();
        let (x, y) = point(zr, zt);
        let z = c.complex(x, y);
        prop_assume!(zeros.points().iter().all(|p| (&z - &p.location).abs() > 1e-3));
        let k = kernel_with_multiplicity(&zeros, &z, &z).unwrap();
        prop_assert!(k.re.is_positive());
        prop_assert!(k.im.abs() <= k.re.clone() * 1e-35);
    }

    #[test]
    fn gram_solve_residual_is_at_rounding_level(pts in points(), alpha in 0.0f64..3.0) {
        prop_assume!(distinct(&pts));
        let c = ctx();
        let a: Vec<HpComplex> = pts.iter().map(|&(x, y)| c.complex(x, y)).collect();
        let alpha = c.real(alpha);
        let m = HermitianMatrix::from_upper(a.len(), |i, j| bergman_kernel(&a[i], &a[j], &alpha)).unwrap();
        let rhs: Vec<HpComplex> = (0..a.len()).map(|k| c.complex(1.0, k as f64)).collect();
        let solve = hermitian_solve(&m, &rhs).unwrap();
        let bound = c.ten_pow(5 - c.digits() as i32) * (a.len() as f64) * m.max_abs_entry().unwrap();
        // backward stability bounds the residual relative to the solution size;
        // clustered points give huge coefficients
        let size = solve.solution.iter().map(HpComplex::abs).fold(c.one(), Real::max_of);
        prop_assert!(solve.residual_norm <= bound * &size);
    }
}
