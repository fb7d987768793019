use crate::error::{Error, Result};
use crate::hp::{pochhammer_coeff, rising_factorial, HpComplex, Real};

use super::bergman::{bergman_kernel, check_alpha, check_open_disk, check_pair, inv_pow};
use super::recursive::noise_floor;
use super::zeroset::ZeroSet;

/// `e(z) = z^order / (1 - z ā)^{β + order}`; the representer of
/// `f ↦ f^{(order)}(a)` is `(β)_order · e`.
#[derive(Clone, Debug)]
struct Atom {
    point: HpComplex,
    order: u32,
}

#[derive(Clone, Debug)]
struct Representer {
    /// Coefficients over the first `coeffs.len()` atoms.
    coeffs: Vec<HpComplex>,
    norm: Real,
}

/// Reproducing kernel of the functions vanishing on `A` (with
/// multiplicity), prepared once and evaluated many times.
///
/// The orthogonal complement of `I_A` is spanned by the representers of
/// `f ↦ f^{(j)}(a)`, `j < mult(a)`. They are orthogonalized in the order
/// the points appear; a repeated location contributes the next derivative
/// order, which for a double point is exactly the derivative form of the
/// one-point update. Then `K_A = K - Σ g_i(z) conj(g_i(w)) / ‖g_i‖²`.
/// Every derivative is evaluated analytically.
#[derive(Clone, Debug)]
pub struct ZeroKernel {
    zeros: ZeroSet,
    beta: Real,
    atoms: Vec<Atom>,
    basis: Vec<Representer>,
}

impl ZeroKernel {
    pub fn new(zeros: &ZeroSet) -> Result<ZeroKernel> {
        let alpha = zeros.alpha();
        check_alpha(alpha)?;
        let beta = alpha + 2.0;
        let mut kernel = ZeroKernel {
            zeros: zeros.clone(),
            beta,
            atoms: Vec::new(),
            basis: Vec::new(),
        };
        let sequence = zeros.expanded();
        for (k, xi) in sequence.iter().enumerate() {
            let q = sequence[..k].iter().filter(|p| *p == xi).count() as u32;
            kernel.push(xi, q)?;
        }
        Ok(kernel)
    }

    pub fn zeros(&self) -> &ZeroSet {
        &self.zeros
    }

    pub fn alpha(&self) -> &Real {
        self.zeros.alpha()
    }

    fn push(&mut self, xi: &HpComplex, q: u32) -> Result<()> {
        let new_atom = Atom {
            point: xi.clone(),
            order: q,
        };
        self.atoms.push(new_atom);
        let d = self.atom_values(xi, q)?;
        let lead = rising_factorial(&self.beta, q);

        let mut coeffs = vec![xi.zero_like(); self.atoms.len()];
        *coeffs.last_mut().expect("just pushed") = HpComplex::from_real(lead.clone());
        for g in &self.basis {
            let dg = dot(&g.coeffs, &d);
            let factor = dg.conj() / &g.norm;
            for (slot, c) in coeffs.iter_mut().zip(&g.coeffs) {
                *slot -= &factor * c;
            }
        }
        let norm = dot(&coeffs, &d).re;
        let unreduced = &lead * &d.last().expect("non-empty").re;
        if norm <= &unreduced * &noise_floor(&unreduced) {
            return Err(Error::Degenerate(format!(
                "division by zero: derivative of order {q} is already forced to vanish at {xi:.12}"
            )));
        }
        self.basis.push(Representer { coeffs, norm });
        Ok(())
    }

    /// `D^r e_p(z)` for every atom.
    fn atom_values(&self, z: &HpComplex, r: u32) -> Result<Vec<HpComplex>> {
        self.atoms.iter().map(|a| self.atom_derivative(a, z, r)).collect()
    }

    fn atom_derivative(&self, atom: &Atom, z: &HpComplex, r: u32) -> Result<HpComplex> {
        let j = atom.order;
        let abar = atom.point.conj();
        let u = 1.0 - z * &abar;
        let base_exp = &self.beta + f64::from(j);
        // u^{-(β+j+k)} for k = 0..=r
        let mut pows = Vec::with_capacity(r as usize + 1);
        pows.push(u.cpow_real(&-&base_exp)?);
        if r > 0 {
            let inv = u.recip();
            for k in 1..=r as usize {
                let next = &pows[k - 1] * &inv;
                pows.push(next);
            }
        }
        let mut acc = z.zero_like();
        let mut binom = base_exp.one_like();
        let mut falling = base_exp.one_like();
        for s in 0..=r.min(j) {
            if s > 0 {
                binom = binom * f64::from(r - s + 1) / f64::from(s);
                falling *= f64::from(j - s + 1);
            }
            let k = r - s;
            let coef = &binom * &falling * rising_factorial(&base_exp, k);
            let term = z.powi(i64::from(j - s)) * abar.powi(i64::from(k)) * &pows[k as usize];
            acc += term.scale(&coef);
        }
        Ok(acc)
    }

    fn basis_values(&self, z: &HpComplex, r: u32) -> Result<Vec<HpComplex>> {
        let d = self.atom_values(z, r)?;
        Ok(self.basis.iter().map(|g| dot(&g.coeffs, &d)).collect())
    }

    /// `K_A(z, w)`.
    pub fn eval(&self, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
        self.derivative_z(0, z, w)
    }

    /// `∂_z^r K_A(z, w)`.
    pub fn derivative_z(&self, r: u32, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
        check_pair(z, w)?;
        let wbar = w.conj();
        let full = inv_pow(z, w, &(&self.beta + f64::from(r)))?
            * wbar.powi(i64::from(r))
            * HpComplex::from_real(rising_factorial(&self.beta, r));
        let gz = self.basis_values(z, r)?;
        let gw = self.basis_values(w, 0)?;
        let mut acc = full;
        for ((g, a), b) in self.basis.iter().zip(&gz).zip(&gw) {
            acc -= (a * &b.conj()) / &g.norm;
        }
        Ok(acc)
    }
}

fn dot(coeffs: &[HpComplex], values: &[HpComplex]) -> HpComplex {
    let mut acc = values[0].zero_like();
    for (c, v) in coeffs.iter().zip(values) {
        acc += c * v;
    }
    acc
}

/// `K_A(z, w)` for a zero set with multiplicities.
pub fn kernel_with_multiplicity(zeros: &ZeroSet, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
    ZeroKernel::new(zeros)?.eval(z, w)
}

/// Closed form of `K_A` when `A` is `n` copies of `a`.
pub fn kernel_multipoint_closed(
    a: &HpComplex,
    n: u32,
    z: &HpComplex,
    w: &HpComplex,
    alpha: &Real,
) -> Result<HpComplex> {
    if n == 0 {
        return Err(Error::InvalidInput("multiplicity must be at least 1".into()));
    }
    check_open_disk(a, "a")?;
    let k = bergman_kernel(z, w, alpha)?;
    let beta = alpha + 2.0;
    let abar = a.conj();
    let wbar = w.conj();
    let front = inv_pow(z, a, &beta)? * inv_pow(a, w, &beta)?;
    let front = front.scale(&(1.0 - a.norm_sqr()).powf(&beta));
    let phi_z = (z - a) / (1.0 - z * &abar);
    let phi_w = (&wbar - &abar) / (1.0 - a * &wbar);
    let ratio = &phi_z * &phi_w;
    let mut sum = z.zero_like();
    let mut power = z.one_like();
    for j in 0..n {
        sum += power.scale(&pochhammer_coeff(alpha, j)?);
        power *= &ratio;
    }
    Ok(k - front * sum)
}
