use super::real::Real;
use crate::error::{Error, Result};

/// `C_{α,j} = Γ(α+2+j) / (Γ(α+2) j!)`, evaluated as the rising factorial
/// `(α+2)(α+3)…(α+1+j) / j!`.
pub fn pochhammer_coeff(alpha: &Real, j: u32) -> Result<Real> {
    if !(alpha > &-1.0) {
        return Err(Error::Domain(format!("alpha must exceed -1, got {alpha:.10}")));
    }
    let mut c = alpha.one_like();
    for k in 0..j {
        c = c * (alpha + f64::from(k + 2)) / f64::from(k + 1);
    }
    Ok(c)
}

/// Rising factorial `(x)_k = x (x+1) … (x+k-1)`.
pub fn rising_factorial(x: &Real, k: u32) -> Real {
    let mut acc = x.one_like();
    for i in 0..k {
        acc *= x + f64::from(i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;
    use proptest::prelude::*;

    #[test]
    fn small_values() {
        let ctx = Precision::default();
        let a = ctx.parse_real("0.37").unwrap();
        assert_eq!(pochhammer_coeff(&a, 0).unwrap(), ctx.one());
        assert_eq!(pochhammer_coeff(&ctx.int(3), 1).unwrap(), ctx.int(5));
        assert_eq!(pochhammer_coeff(&ctx.int(1), 2).unwrap(), ctx.int(6));
        assert!(pochhammer_coeff(&ctx.int(-1), 2).is_err());
    }

    #[test]
    fn integer_alpha_is_a_binomial() {
        // C_{α,j} = binom(α+1+j, j) for integer α.
        let ctx = Precision::default();
        assert_eq!(pochhammer_coeff(&ctx.int(2), 4).unwrap(), ctx.int(35));
    }

    proptest! {
        #[test]
        fn recurrence_holds(alpha in -0.99f64..8.0, j in 0u32..40) {
            let ctx = Precision::default();
            let a = ctx.real(alpha);
            let cj = pochhammer_coeff(&a, j).unwrap();
            let next = pochhammer_coeff(&a, j + 1).unwrap();
            let step = cj * (&a + f64::from(j + 2)) / f64::from(j + 1);
            prop_assert_eq!(next, step);
        }
    }
}
