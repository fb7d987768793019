use super::complex::HpComplex;
use super::real::Real;
use crate::error::{Error, Result};

/// Dense Hermitian matrix stored in full.
///
/// Built from the upper triangle; the lower triangle is the conjugate
/// mirror and the diagonal is forced real, so `entry(i, j) ==
/// conj(entry(j, i))` holds bit for bit.
#[derive(Clone, Debug)]
pub struct HermitianMatrix {
    order: usize,
    entries: Vec<HpComplex>,
}

impl HermitianMatrix {
    /// Calls `upper(i, j)` for `i <= j` only.
    pub fn from_upper<F>(order: usize, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<HpComplex>,
    {
        let mut slots: Vec<Option<HpComplex>> = vec![None; order * order];
        for i in 0..order {
            for j in i..order {
                let v = upper(i, j)?;
                if i == j {
                    let re = v.re;
                    slots[i * order + i] = Some(HpComplex::from_real(re));
                } else {
                    slots[j * order + i] = Some(v.conj());
                    slots[i * order + j] = Some(v);
                }
            }
        }
        let entries = slots.into_iter().map(|e| e.expect("filled")).collect();
        Ok(HermitianMatrix { order, entries })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entry(&self, i: usize, j: usize) -> &HpComplex {
        &self.entries[i * self.order + j]
    }

    pub fn max_abs_entry(&self) -> Option<Real> {
        self.entries
            .iter()
            .map(HpComplex::abs)
            .reduce(Real::max_of)
    }

    pub fn mul_vec(&self, x: &[HpComplex]) -> Vec<HpComplex> {
        (0..self.order)
            .map(|i| {
                let mut acc = self.entries[i * self.order].zero_like();
                for (j, xj) in x.iter().enumerate() {
                    acc += self.entry(i, j) * xj;
                }
                acc
            })
            .collect()
    }
}

/// Solution of `M c = rhs` together with the re-substituted residual.
#[derive(Clone, Debug)]
pub struct Solve {
    pub solution: Vec<HpComplex>,
    /// `max_i |(M c - rhs)_i|`, measured after the solve.
    pub residual_norm: Real,
}

/// Solves `M c = rhs` by LU factorization with partial pivoting.
///
/// A pivot at or below the rounding floor `2^-bits * n * max|M_ij|` is
/// treated as zero, which is what a duplicated point in a Gram matrix
/// produces.
pub fn hermitian_solve(m: &HermitianMatrix, rhs: &[HpComplex]) -> Result<Solve> {
    let n = m.order();
    if rhs.len() != n {
        return Err(Error::InvalidInput(format!(
            "right-hand side has length {}, matrix order is {n}",
            rhs.len()
        )));
    }
    if n == 0 {
        return Ok(Solve {
            solution: Vec::new(),
            residual_norm: Real::from_float(rug::Float::new(64)),
        });
    }
    let mut a: Vec<HpComplex> = m.entries.clone();
    let mut b: Vec<HpComplex> = rhs.to_vec();
    let scale = m.max_abs_entry().expect("non-empty");
    let bits = scale.prec();
    let ulp = Real::from_float(rug::Float::with_val(bits, 1u32) >> bits);
    let floor = ulp * &scale * (n as f64);

    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, a[r * n + col].abs()))
            .reduce(|best, cand| if cand.1 > best.1 { cand } else { best })
            .expect("non-empty range");
        if pivot_abs <= floor {
            return Err(Error::Singular {
                column: col,
                pivot: pivot_abs.to_string_digits(6),
            });
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * n + col].clone();
        for r in (col + 1)..n {
            let factor = &a[r * n + col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for k in (col + 1)..n {
                let delta = &factor * &a[col * n + k];
                a[r * n + k] -= delta;
            }
            let delta = &factor * &b[col];
            b[r] -= delta;
            a[r * n + col] = factor;
        }
    }

    let mut x = vec![b[0].zero_like(); n];
    for i in (0..n).rev() {
        let mut acc = b[i].clone();
        for k in (i + 1)..n {
            acc -= &a[i * n + k] * &x[k];
        }
        x[i] = &acc / &a[i * n + i];
    }

    let residual_norm = m
        .mul_vec(&x)
        .iter()
        .zip(rhs)
        .map(|(mx, r)| (mx - r).abs())
        .reduce(Real::max_of)
        .expect("non-empty");
    Ok(Solve {
        solution: x,
        residual_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::Precision;

    #[test]
    fn identity_solve_is_exact() {
        let ctx = Precision::default();
        let m = HermitianMatrix::from_upper(4, |i, j| {
            Ok(if i == j { ctx.cone() } else { ctx.czero() })
        })
        .unwrap();
        let rhs = vec![ctx.cone(); 4];
        let s = hermitian_solve(&m, &rhs).unwrap();
        assert!(s.solution.iter().all(|c| *c == ctx.cone()));
        assert!(s.residual_norm.is_zero());
    }

    #[test]
    fn hermitian_symmetry_is_exact() {
        let ctx = Precision::default();
        let m = HermitianMatrix::from_upper(3, |i, j| Ok(ctx.complex(i as f64 + 0.5, j as f64 - 1.25)))
            .unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(*m.entry(i, j), m.entry(j, i).conj());
            }
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let ctx = Precision::default();
        let m = HermitianMatrix::from_upper(2, |_, _| Ok(ctx.complex(2.0, 0.0))).unwrap();
        let err = hermitian_solve(&m, &[ctx.cone(), ctx.cone()]).unwrap_err();
        assert!(matches!(err, Error::Singular { column: 1, .. }));
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let ctx = Precision::default();
        let m = HermitianMatrix::from_upper(2, |_, _| Ok(ctx.cone())).unwrap();
        assert!(matches!(hermitian_solve(&m, &[ctx.cone()]), Err(Error::InvalidInput(_))));
    }
}
