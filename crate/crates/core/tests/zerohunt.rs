use mvsurf::hp::Precision;
use mvsurf::kernels::{bergman_kernel, weighted_kernel_from_zero_kernel};
use mvsurf::zerohunt::{
    boundary_value_scan, generate_configuration, hunt, scan_zero_set, HuntConfig, Verdict, DEFAULT_MARGIN, TABLE1,
};
use proptest::prelude::*;

fn ctx() -> Precision {
    Precision::default()
}

fn config(alpha: f64, n: usize, theta: f64, d: f64) -> HuntConfig {
    let c = ctx();
    HuntConfig::new(c, c.real(alpha), n, c.real(theta), c.real(d)).unwrap()
}

#[test]
fn verdicts_survive_reordering_and_conjugation_on_table_rows() {
    let c = ctx();
    for row in &TABLE1[..5] {
        let cfg = HuntConfig::parse(c, row.alpha, row.n, row.theta, row.d).unwrap();
        let zeros = generate_configuration(&cfg).unwrap();
        let base = scan_zero_set(&zeros, DEFAULT_MARGIN).unwrap();
        let reversed: Vec<usize> = (0..zeros.points().len()).rev().collect();
        let shuffled = scan_zero_set(&zeros.permuted(&reversed).unwrap(), DEFAULT_MARGIN).unwrap();
        let conjugated = scan_zero_set(&zeros.conjugated(), DEFAULT_MARGIN).unwrap();
        assert_eq!(base.verdict, Verdict::ExtraneousZeroFound);
        assert_eq!(shuffled.verdict, base.verdict);
        assert_eq!(conjugated.verdict, base.verdict);
        let diff = (&base.boundary_value - &shuffled.boundary_value).abs();
        assert!(diff < base.zero_residual.clone() * 1e3);
        let (result, location) = hunt(&cfg).unwrap();
        let bound = result.zero_residual.clone() * 10.0;
        assert!(result.boundary_imag.clone().abs() <= bound);
        assert!(location.unwrap().imag_defect <= bound);
    }
}

#[test]
fn precision_scaling_on_the_first_row() {
    let cfg = config(3.0, 6, 0.51, 10.0);
    let low = boundary_value_scan(&cfg).unwrap();
    let cfg60 = HuntConfig::parse(ctx(), "3", 6, "0.51", "10").unwrap().with_digits(60).unwrap();
    let high = boundary_value_scan(&cfg60).unwrap();
    assert_eq!(low.verdict, high.verdict);
    assert!(high.zero_residual.clone() * 1e10 <= low.zero_residual);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Im K(x, 0) is rounding noise; for small sets with α near 1 it can exceed ten
    // times the residual, itself rounding noise, so the floor includes the
    // rounding scale of 1 - Σ c_j k(x, a_j)
    #[test]
    fn symmetric_configurations_have_real_kernels(
        alpha in 1.0f64..4.0, half in 1usize..=4, theta in 0.2f64..1.2, d in 1.5f64..12.0
    ) {
        let cfg = config(alpha, 2 * half, theta, d);
        let (result, location) = hunt(&cfg).unwrap();
        let rep = result.kernel().unwrap();
        let one = ctx().cone();
        let mut terms = ctx().one();
        for (c, p) in rep.coeffs().iter().zip(rep.zeros().points()) {
            terms += c.abs() * bergman_kernel(&one, &p.location, rep.alpha()).unwrap().abs();
        }
        let bound = (terms * ctx().epsilon() * 1e3).max_of(result.zero_residual.clone()) * 10.0;
        prop_assert!(result.boundary_imag.clone().abs() <= bound);
        if let Some(loc) = location {
            prop_assert_eq!(result.verdict, Verdict::ExtraneousZeroFound);
            prop_assert!(loc.imag_defect <= bound);
            prop_assert!(loc.distance_to_zero_set.is_positive());
            // the kernel of ω_α|B_A|² is K_A / B_A, so it vanishes at x₀ as well
            let zeros = generate_configuration(&cfg).unwrap();
            let origin = ctx().czero();
            let scale = weighted_kernel_from_zero_kernel(&zeros, &origin, &origin).unwrap().abs();
            prop_assert!(loc.weighted_kernel_value <= scale * 1e-25);
        }
    }

    #[test]
    fn verdict_is_order_and_conjugation_invariant(
        alpha in 1.0f64..4.0, half in 1usize..=4, theta in 0.2f64..1.2, d in 2.0f64..12.0, seed in 0usize..1000
    ) {
        let cfg = config(alpha, 2 * half, theta, d);
        let zeros = generate_configuration(&cfg).unwrap();
        let n = zeros.points().len();
        let mut order: Vec<usize> = (0..n).collect();
        order.rotate_left(seed % n);
        if seed % 2 == 1 {
            order.reverse();
        }
        let base = scan_zero_set(&zeros, DEFAULT_MARGIN).unwrap();
        prop_assert_eq!(scan_zero_set(&zeros.permuted(&order).unwrap(), DEFAULT_MARGIN).unwrap().verdict, base.verdict);
        prop_assert_eq!(scan_zero_set(&zeros.conjugated(), DEFAULT_MARGIN).unwrap().verdict, base.verdict);
    }
}
