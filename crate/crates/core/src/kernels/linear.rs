use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hp::{hermitian_solve, HermitianMatrix, HpComplex, Real};

use super::bergman::{check_alpha, check_closed_disk, inv_pow};
use super::zeroset::{ZeroSet, ZeroSetDoc};

/// Coefficient form `K_A(z, 0) = 1 - Σ c_j / (1 - z ā_j)^{α+2}`.
#[derive(Clone, Debug)]
pub struct KernelRep {
    alpha: Real,
    zeros: ZeroSet,
    coeffs: Vec<HpComplex>,
    solve_residual: Real,
    zero_residual: Real,
}

impl KernelRep {
    pub fn alpha(&self) -> &Real {
        &self.alpha
    }

    pub fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    pub fn coeffs(&self) -> &[HpComplex] {
        &self.coeffs
    }

    /// `max |M c - 1|`.
    pub fn solve_residual(&self) -> &Real {
        &self.solve_residual
    }

    /// `max_j |K_A(a_j, 0)|` by re-substitution into the coefficient form.
    pub fn zero_residual(&self) -> &Real {
        &self.zero_residual
    }

    /// Evaluates the coefficient form; finite on the whole closed disk.
    pub fn eval(&self, z: &HpComplex) -> Result<HpComplex> {
        check_closed_disk(z, "z")?;
        let beta = &self.alpha + 2.0;
        let mut acc = z.one_like();
        for (c, p) in self.coeffs.iter().zip(self.zeros.points()) {
            acc -= c * &inv_pow(z, &p.location, &beta)?;
        }
        Ok(acc)
    }

    pub fn to_doc(&self) -> Result<KernelRepDoc> {
        let zeros: ZeroSetDoc = serde_json::from_str(&self.zeros.to_json()?)?;
        Ok(KernelRepDoc {
            alpha: self.alpha.to_decimal_string(),
            zeros,
            coeffs: self
                .coeffs
                .iter()
                .map(|c| CoeffDoc {
                    re: c.re.to_decimal_string(),
                    im: c.im.to_decimal_string(),
                })
                .collect(),
            solve_residual: self.solve_residual.to_decimal_string(),
            zero_residual: self.zero_residual.to_decimal_string(),
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc()?)?)
    }
}

/// Export form of [`KernelRep`]; all numbers are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KernelRepDoc {
    pub alpha: String,
    pub zeros: ZeroSetDoc,
    pub coeffs: Vec<CoeffDoc>,
    pub solve_residual: String,
    pub zero_residual: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffDoc {
    pub re: String,
    pub im: String,
}

/// Solves `M c = 1` with `M_ij = (1 - a_i ā_j)^{-(α+2)}`.
pub fn kernel_linear_system(zeros: &ZeroSet) -> Result<KernelRep> {
    if !zeros.is_simple() {
        return Err(Error::InvalidInput(
            "the linear system needs simple points; use the multiplicity recursion".into(),
        ));
    }
    let alpha = zeros.alpha().clone();
    check_alpha(&alpha)?;
    let beta = &alpha + 2.0;
    let pts: Vec<&HpComplex> = zeros.points().iter().map(|p| &p.location).collect();
    let n = pts.len();
    let m = HermitianMatrix::from_upper(n, |i, j| inv_pow(pts[i], pts[j], &beta))?;
    let ones: Vec<HpComplex> = pts.iter().map(|p| p.one_like()).collect();
    let zero = alpha.zero_like();
    let solve = hermitian_solve(&m, &ones)?;
    let mut rep = KernelRep {
        alpha,
        zeros: zeros.clone(),
        coeffs: solve.solution,
        solve_residual: if n == 0 { zero.clone() } else { solve.residual_norm },
        zero_residual: zero,
    };
    let mut worst = rep.zero_residual.clone();
    for p in &pts {
        worst = worst.max_of(rep.eval(p)?.abs());
    }
    rep.zero_residual = worst;
    Ok(rep)
}

/// `K_A(z, 0)` from the coefficient form.
pub fn kernel_eval_coeffs(rep: &KernelRep, z: &HpComplex) -> Result<HpComplex> {
    rep.eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;
    use crate::kernels::recursive::kernel_recursive;

    fn ctx() -> Precision {
        Precision::default()
    }

    #[test]
    fn empty_set() {
        let c = ctx();
        let rep = kernel_linear_system(&ZeroSet::empty(c.one()).unwrap()).unwrap();
        assert!(rep.coeffs().is_empty());
        assert_eq!(rep.eval(&c.complex(0.3, 0.9)).unwrap(), c.cone());
    }

    #[test]
    fn single_point_coefficient() {
        let c = ctx();
        let alpha = c.parse_real("1.5").unwrap();
        let lambda = c.complex(0.3, -0.6);
        let rep = kernel_linear_system(&ZeroSet::simple(alpha.clone(), vec![lambda.clone()]).unwrap())
            .unwrap();
        let expected = (1.0 - lambda.norm_sqr()).powf(&(&alpha + 2.0));
        assert!((&rep.coeffs()[0].re - &expected).abs() < 1e-38);
        assert!(rep.coeffs()[0].im.abs() < 1e-38);
        let z = c.complex(-0.5, 0.2);
        let a = rep.eval(&z).unwrap();
        let b = crate::kernels::one_point_kernel(&z, &c.czero(), &lambda, &alpha).unwrap();
        assert!((&a - &b).abs() < 1e-37);
    }

    #[test]
    fn origin_value_and_boundary() {
        let c = ctx();
        let zs = ZeroSet::simple(
            c.int(2),
            vec![c.complex(0.5, 0.2), c.complex(0.5, -0.2), c.complex(-0.7, 0.0)],
        )
        .unwrap();
        let rep = kernel_linear_system(&zs).unwrap();
        let mut sum = c.czero();
        for cj in rep.coeffs() {
            sum += cj;
        }
        assert!((rep.eval(&c.czero()).unwrap() - (1.0 - sum)).abs() < 1e-38);
        let at_one = rep.eval(&c.cone()).unwrap();
        assert!(at_one.im.abs() <= rep.zero_residual() * 10.0 + 1e-38);
        for p in zs.points() {
            assert!(rep.eval(&p.location).unwrap().abs() <= *rep.zero_residual());
        }
        let z = c.complex(0.1, 0.3);
        let rec = kernel_recursive(&zs, &z, &c.czero()).unwrap();
        assert!((rep.eval(&z).unwrap() - rec).abs() < 1e-33);
    }

    #[test]
    fn duplicate_points_are_singular() {
        let c = ctx();
        let a = c.complex(0.25, 0.5);
        let zs = ZeroSet::simple(c.one(), vec![a.clone(), a]).unwrap();
        assert!(matches!(kernel_linear_system(&zs), Err(Error::Singular { .. })));
    }

    #[test]
    fn export_uses_decimal_strings() {
        let c = ctx();
        let zs = ZeroSet::simple(c.one(), vec![c.complex(0.5, 0.0)]).unwrap();
        let json = kernel_linear_system(&zs).unwrap().to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["coeffs"][0]["re"].is_string());
        assert!(v["zero_residual"].is_string());
        assert!(v["zeros"]["alpha"].is_string());
    }
}
