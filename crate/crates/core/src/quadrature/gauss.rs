use crate::error::{Error, Result};
use crate::hp::{Precision, Real};

/// One-dimensional rule `∫₀¹ f(t) w(t) dt ≈ Σ weights_i f(nodes_i)`.
#[derive(Clone, Debug)]
pub struct GaussRule {
    pub nodes: Vec<Real>,
    pub weights: Vec<Real>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes and weights for `∫_a^b`, valid for the unweighted rule.
    pub fn mapped(&self, a: &Real, b: &Real) -> impl Iterator<Item = (Real, Real)> + '_ {
        let len = b - a;
        let a = a.clone();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(t, w)| (&a + &(t * &len), w * &len))
    }
}

/// Gauss–Legendre on `[0, 1]`, nodes ascending.
pub fn gauss_legendre(ctx: Precision, n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidInput("Gauss rule needs at least one node".into()));
    }
    let tol = ctx.epsilon() * 64.0;
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in (1..=n).rev() {
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut x = ctx.real(guess);
        let mut deriv = ctx.one();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(&x, n);
            let dx = &p / &dp;
            x -= &dx;
            deriv = dp;
            if dx.abs() <= tol {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(&x, n);
        if !dp.is_zero() {
            deriv = dp;
        }
        let w = 2.0 / ((1.0 - x.square()) * deriv.square());
        nodes.push((x + 1.0) / 2.0);
        weights.push(w / 2.0);
    }
    Ok(GaussRule { nodes, weights })
}

fn legendre_with_derivative(x: &Real, n: usize) -> (Real, Real) {
    let mut p_prev = x.one_like();
    let mut p = x.clone();
    if n == 0 {
        return (p_prev, x.zero_like());
    }
    for k in 1..n {
        let kf = k as f64;
        let next = (x * &p * (2.0 * kf + 1.0) - &p_prev * kf) / (kf + 1.0);
        p_prev = std::mem::replace(&mut p, next);
    }
    let dp = (x * &p - &p_prev) * (n as f64) / (x.square() - 1.0);
    (p, dp)
}

/// Gauss rule for the weight `-ln t` on `[0, 1]`.
///
/// The recurrence coefficients come from modified moments against the
/// monic shifted Legendre polynomials (Gautschi's modified Chebyshev
/// algorithm), computed with guard digits; nodes are the Jacobi matrix
/// eigenvalues located by Sturm bisection.
pub fn log_gauss(ctx: Precision, n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::InvalidInput("Gauss rule needs at least one node".into()));
    }
    let work = Precision::new(ctx.digits() + 20)?;
    let (alpha, beta) = log_weight_recurrence(work, n);
    let nodes: Vec<Real> = (0..n).map(|j| sturm_eigenvalue(work, &alpha, &beta, j)).collect();
    let mut out_nodes = Vec::with_capacity(n);
    let mut out_weights = Vec::with_capacity(n);
    for x in nodes {
        // Christoffel number 1 / Σ p_k(x)² over the orthonormal polynomials.
        let mut p_prev = work.zero();
        let mut p = beta[0].sqrt().recip();
        let mut sum = p.square();
        for k in 0..n - 1 {
            let next = ((&x - &alpha[k]) * &p - beta[k].sqrt() * &p_prev) / beta[k + 1].sqrt();
            p_prev = std::mem::replace(&mut p, next);
            sum += p.square();
        }
        out_weights.push(round_to(ctx, &sum.recip()));
        out_nodes.push(round_to(ctx, &x));
    }
    Ok(GaussRule {
        nodes: out_nodes,
        weights: out_weights,
    })
}

fn round_to(ctx: Precision, x: &Real) -> Real {
    Real::from_float(rug::Float::with_val(ctx.bits(), x.as_float()))
}

/// `(α_k, β_k)`, `k < n`, of the monic orthogonal polynomials for `-ln t`.
fn log_weight_recurrence(ctx: Precision, n: usize) -> (Vec<Real>, Vec<Real>) {
    let m = 2 * n;
    // Monic shifted Legendre recurrence: a_k = 1/2, b_k = k² / (4(4k² - 1)).
    let a = ctx.ratio(1, 2);
    let b = |k: usize| -> Real {
        let k = k as i64;
        ctx.ratio(k * k, 4 * (4 * k * k - 1))
    };
    // ν_l = ∫ (-ln t) p_l(t) dt = (-1)^l (l!)² / ((2l)! l (l+1)), ν_0 = 1.
    let mut nu = Vec::with_capacity(m);
    nu.push(ctx.one());
    let mut ratio = ctx.one(); // (l!)² / (2l)!
    for l in 1..m {
        let lf = l as i64;
        ratio = ratio * ctx.ratio(lf * lf, (2 * lf) * (2 * lf - 1));
        let v = &ratio / ctx.int(lf * (lf + 1));
        nu.push(if l % 2 == 1 { -v } else { v });
    }

    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    alpha.push(&a + &(&nu[1] / &nu[0]));
    beta.push(nu[0].clone());
    let mut sigma_prev: Vec<Real> = vec![ctx.zero(); m];
    let mut sigma: Vec<Real> = nu.clone();
    for k in 1..n {
        let mut next = vec![ctx.zero(); m];
        for l in k..(m - k) {
            let mut v = &sigma[l + 1] - &((&alpha[k - 1] - &a) * &sigma[l]) - &beta[k - 1] * &sigma_prev[l];
            v += b(l) * &sigma[l - 1];
            next[l] = v;
        }
        alpha.push(&a + &(&next[k + 1] / &next[k]) - &(&sigma[k] / &sigma[k - 1]));
        beta.push(&next[k] / &sigma[k - 1]);
        sigma_prev = std::mem::replace(&mut sigma, next);
    }
    (alpha, beta)
}

/// Number of eigenvalues of the Jacobi matrix below `x`.
fn sturm_count(alpha: &[Real], beta: &[Real], x: &Real, tiny: &Real) -> usize {
    let mut count = 0;
    let mut q = &alpha[0] - x;
    for k in 0..alpha.len() {
        if k > 0 {
            q = &alpha[k] - x - &beta[k] / &q;
        }
        if q.abs() < *tiny {
            q = -tiny.clone();
        }
        if q.is_negative() {
            count += 1;
        }
    }
    count
}

fn sturm_eigenvalue(ctx: Precision, alpha: &[Real], beta: &[Real], j: usize) -> Real {
    let tiny = ctx.ten_pow(-(ctx.digits() as i32) * 2);
    let mut lo = ctx.zero();
    let mut hi = ctx.one();
    for _ in 0..(ctx.bits() + 4) {
        let mid = (&lo + &hi) / 2.0;
        if sturm_count(alpha, beta, &mid, &tiny) > j {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_integrates_polynomials() {
        let ctx = Precision::default();
        let rule = gauss_legendre(ctx, 12).unwrap();
        for k in 0..24 {
            let s = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .fold(ctx.zero(), |acc, (t, w)| acc + w * t.powi(k));
            assert!((s - ctx.ratio(1, i64::from(k) + 1)).abs() < 1e-38, "k={k}");
        }
        assert!(rule.nodes.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn log_rule_moments() {
        let ctx = Precision::default();
        let n = 16;
        let rule = log_gauss(ctx, n).unwrap();
        assert!(rule.weights.iter().all(Real::is_positive));
        for k in 0..(2 * n as i64) {
            let s = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .fold(ctx.zero(), |acc, (t, w)| acc + w * t.powi(k as i32));
            let exact = ctx.ratio(1, (k + 1) * (k + 1));
            assert!((s - exact).abs() < 1e-36, "k={k}");
        }
    }

    #[test]
    fn log_rule_integrates_log_times_smooth() {
        // ∫₀¹ -ln t · e^t dt = Σ 1/((n+1)² n!)
        let ctx = Precision::default();
        let rule = log_gauss(ctx, 20).unwrap();
        let s = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .fold(ctx.zero(), |acc, (t, w)| acc + w * t.exp());
        assert!((s.to_f64() - 1.317_902_151_454_403_9).abs() < 1e-15);
    }

    #[test]
    fn mapped_interval() {
        let ctx = Precision::default();
        let rule = gauss_legendre(ctx, 8).unwrap();
        let (a, b) = (ctx.ratio(1, 4), ctx.ratio(3, 4));
        let s = rule.mapped(&a, &b).fold(ctx.zero(), |acc, (t, w)| acc + w * t.square());
        assert!((s - ctx.ratio(13, 96)).abs() < 1e-38);
    }
}
