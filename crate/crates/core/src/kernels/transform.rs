use crate::error::{Error, Result};
use crate::hp::{HpComplex, Precision, Real};

use super::bergman::{blaschke_product, check_open_disk};
use super::multiplicity::ZeroKernel;
use super::recursive::noise_floor;
use super::zeroset::ZeroSet;

/// Disk automorphism `φ(z) = γ (z - ζ) / (1 - ζ̄ z)` with `|γ| = 1`.
#[derive(Clone, Debug)]
pub struct Mobius {
    gamma: HpComplex,
    zeta: HpComplex,
}

impl Mobius {
    pub fn new(gamma: HpComplex, zeta: HpComplex) -> Result<Mobius> {
        check_open_disk(&zeta, "zeta")?;
        let defect = (gamma.norm_sqr() - 1.0).abs();
        let tol = Real::from_float(rug::Float::with_val(gamma.prec(), 1u32) >> gamma.prec().saturating_sub(16));
        if defect > tol {
            return Err(Error::InvalidInput(format!("|gamma| must be 1, got {:.12}", gamma.abs())));
        }
        Ok(Mobius { gamma, zeta })
    }

    pub fn identity(ctx: Precision) -> Mobius {
        Mobius {
            gamma: ctx.cone(),
            zeta: ctx.czero(),
        }
    }

    /// The involution `z ↦ (λ - z) / (1 - λ̄ z)`.
    pub fn involution(lambda: &HpComplex) -> Result<Mobius> {
        Mobius::new(-lambda.one_like(), lambda.clone())
    }

    pub fn gamma(&self) -> &HpComplex {
        &self.gamma
    }

    pub fn zeta(&self) -> &HpComplex {
        &self.zeta
    }

    pub fn apply(&self, z: &HpComplex) -> HpComplex {
        &self.gamma * &((z - &self.zeta) / (1.0 - &self.zeta.conj() * z))
    }

    /// `φ'(z) = γ (1 - |ζ|²) / (1 - ζ̄ z)²`.
    pub fn derivative(&self, z: &HpComplex) -> HpComplex {
        let den = 1.0 - &self.zeta.conj() * z;
        self.gamma.scale(&(1.0 - self.zeta.norm_sqr())) / (&den * &den)
    }
}

/// `K_{ω∘φ}(z, w) = φ'(z) conj(φ'(w)) K_ω(φ(z), φ(w))`.
pub fn mobius_kernel_transform<F>(kernel: F, phi: &Mobius, z: &HpComplex, w: &HpComplex) -> Result<HpComplex>
where
    F: Fn(&HpComplex, &HpComplex) -> Result<HpComplex>,
{
    let k = kernel(&phi.apply(z), &phi.apply(w))?;
    Ok(phi.derivative(z) * phi.derivative(w).conj() * k)
}

/// `K_{tω} = K_ω / t`.
pub fn scale_kernel(value: &HpComplex, t: &Real) -> Result<HpComplex> {
    if !t.is_positive() {
        return Err(Error::InvalidInput(format!("weight scale must be positive, got {t:.10}")));
    }
    Ok(value / t)
}

impl ZeroKernel {
    /// Kernel of the weight `ω_α |B_A|²`: `K_A(z, w) / (B_A(z) conj(B_A(w)))`.
    pub fn weighted_eval(&self, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
        let bz = blaschke_product(self.zeros(), z)?;
        let bw = blaschke_product(self.zeros(), w)?;
        for (b, name, p) in [(&bz, "z", z), (&bw, "w", w)] {
            let m = b.abs();
            if m <= noise_floor(&m) {
                return Err(Error::Domain(format!(
                    "{name} = {p:.12} is a prescribed zero; the weighted kernel divides by B_A({name})"
                )));
            }
        }
        Ok(self.eval(z, w)? / (bz * bw.conj()))
    }
}

/// Kernel of the weight `ω_α |B_A|²` attached to `A`.
pub fn weighted_kernel_from_zero_kernel(zeros: &ZeroSet, z: &HpComplex, w: &HpComplex) -> Result<HpComplex> {
    ZeroKernel::new(zeros)?.weighted_eval(z, w)
}
