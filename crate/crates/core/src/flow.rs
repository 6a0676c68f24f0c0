//! The ℝ-action `α_t = Ad((N+1)^{it/2})` on truncated shift algebras, the
//! compact perturbation `Ψ_t = α_t(S_j) − S_j` with its tail analysis, and
//! the quotient-symbol probe on vector-power states.

use std::sync::Arc;

use num_complex::Complex64;

use crate::fock::{vector_power_state, FockBasis};
use crate::funcalc::complex_power;
use crate::linop::{identity, interior_projector, number, operator_norm, shift, Op};
use crate::{Error, Result};

/// Flow time together with the basis it acts on.
#[derive(Debug, Clone)]
pub struct FlowParams {
    pub t: f64,
    pub basis: Arc<FockBasis>,
}

impl FlowParams {
    pub fn new(t: f64, basis: &Arc<FockBasis>) -> Self {
        Self {
            t,
            basis: Arc::clone(basis),
        }
    }

    pub fn alpha(&self, op: &Op) -> Result<Op> {
        alpha(op, self.t)
    }

    pub fn psi(&self, j: usize) -> Result<Op> {
        psi(j, self.t, &self.basis)
    }

    pub fn tail_report(&self, j: usize, cutoffs: &[usize]) -> Result<TailReport> {
        tail_report(j, self.t, &self.basis, cutoffs)
    }
}

/// `α_t(T) = (N+1)^{it/2} T (N+1)^{−it/2}`; `α_0 = id` and
/// `α_t ∘ α_s = α_{t+s}`. Conjugation by a degree-diagonal unitary preserves
/// the degree band of `T`.
pub fn alpha(op: &Op, t: f64) -> Result<Op> {
    let basis = op.basis();
    let n1 = number(basis).add(&identity(basis))?;
    let u = complex_power(&n1, Complex64::new(0.0, t / 2.0))?;
    let conjugated = u.compose(op)?.compose(&u.adjoint())?;
    Ok(Op::from_matrix(basis, conjugated.matrix().clone(), op.degree_shift()))
}

/// `Ψ_t = α_t(S_j) − S_j`.
pub fn psi(j: usize, t: f64, basis: &Arc<FockBasis>) -> Result<Op> {
    let s = shift(j, basis)?;
    alpha(&s, t)?.sub(&s)
}

/// Modulus of the degree-`k` column phase gap,
/// `|((k+2)/(k+1))^{it/2} − 1|`.
pub fn phase_gap(t: f64, k: usize) -> f64 {
    let theta = t / 2.0 * ((k as f64 + 2.0) / (k as f64 + 1.0)).ln();
    (Complex64::new(0.0, theta).exp() - Complex64::new(1.0, 0.0)).norm()
}

/// `sup_{k > n} |((k+2)/(k+1))^{it/2} − 1|`, basis-free. The phase angles
/// decrease monotonically in `k`, so the sup is attained within a finite
/// window past any `k` whose angle drops below π.
pub fn scalar_tail_norm(t: f64, n: usize) -> f64 {
    let window = 64 + (16.0 * t.abs()).ceil() as usize;
    (n + 1..=n + window)
        .map(|k| phase_gap(t, k))
        .fold(0.0, f64::max)
}

/// Tail comparison between the matrix truncation norms
/// `‖Ψ_t − Ψ_t^{(n)}‖` and the scalar sup formula.
#[derive(Debug, Clone)]
pub struct TailReport {
    pub cutoffs: Vec<usize>,
    /// Matrix norms, present for cutoffs below the truncation degree.
    pub matrix_norms: Vec<Option<f64>>,
    /// Scalar formula values; these extend past the truncation.
    pub formula_norms: Vec<f64>,
    /// Log-log regression slope of the formula column against the cutoff,
    /// when at least two positive values exist.
    pub fitted_slope: Option<f64>,
}

/// Computes both tail-norm columns for the given cutoffs. `Ψ_t^{(n)}` keeps
/// the columns of degree ≤ n, so the matrix norm is
/// `‖Ψ_t (Id − P_{≤n})‖`; it is computed only for `n < n_max`.
pub fn tail_report(
    j: usize,
    t: f64,
    basis: &Arc<FockBasis>,
    cutoffs: &[usize],
) -> Result<TailReport> {
    if cutoffs.is_empty() {
        return Err(Error::EmptyCutoffs);
    }
    let psi_t = psi(j, t, basis)?;
    let mut matrix_norms = Vec::with_capacity(cutoffs.len());
    let mut formula_norms = Vec::with_capacity(cutoffs.len());
    for &n in cutoffs {
        formula_norms.push(scalar_tail_norm(t, n));
        if n < basis.n_max() {
            let keep_low = interior_projector(basis, basis.n_max() - n)?;
            let tail = psi_t.compose(&identity(basis).sub(&keep_low)?)?;
            matrix_norms.push(Some(operator_norm(&tail)));
        } else {
            matrix_norms.push(None);
        }
    }
    let fitted_slope = log_log_slope(
        cutoffs.iter().map(|&n| n as f64),
        formula_norms.iter().copied(),
    );
    Ok(TailReport {
        cutoffs: cutoffs.to_vec(),
        matrix_norms,
        formula_norms,
        fitted_slope,
    })
}

/// Least-squares slope of `ln y` against `ln x`, ignoring non-positive
/// values; `None` with fewer than two usable points.
pub fn log_log_slope(
    xs: impl Iterator<Item = f64>,
    ys: impl Iterator<Item = f64>,
) -> Option<f64> {
    let points: Vec<(f64, f64)> = xs
        .zip(ys)
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Matrix element `⟨T u_n(ζ), u_{n+raise}(ζ)⟩` of a degree-raising word
/// against normalized vector-power states.
pub fn symbol_probe(op: &Op, zeta: &[Complex64], n: usize, raise: usize) -> Result<Complex64> {
    let basis = op.basis();
    let low = vector_power_state(zeta, n, basis)?;
    let high = vector_power_state(zeta, n + raise, basis)?;
    Ok(high.coeffs().dotc(&(op.matrix() * low.coeffs())))
}

/// The quotient-symbol probe `⟨S_v ζ^n, ζ^{n+1}⟩` on normalized states; it
/// equals the Hermitian pairing `⟨v, ζ⟩ = Σ v_j ζ̄_j` independently of `n`.
pub fn quotient_symbol(
    v: &[Complex64],
    zeta: &[Complex64],
    n: usize,
    basis: &Arc<FockBasis>,
) -> Result<Complex64> {
    if v.len() != basis.d() {
        return Err(Error::LengthMismatch {
            got: v.len(),
            want: basis.d(),
        });
    }
    if n + 1 > basis.n_max() {
        return Err(Error::DegreeOverflow {
            n: n + 1,
            n_max: basis.n_max(),
        });
    }
    let s_v = shift_combination(v, basis)?;
    symbol_probe(&s_v, zeta, n, 1)
}

/// `S_v = Σ_j v_j S_j`.
pub fn shift_combination(v: &[Complex64], basis: &Arc<FockBasis>) -> Result<Op> {
    if v.len() != basis.d() {
        return Err(Error::LengthMismatch {
            got: v.len(),
            want: basis.d(),
        });
    }
    let mut acc = crate::linop::zero(basis);
    for (idx, &coeff) in v.iter().enumerate() {
        acc = acc.add(&shift(idx + 1, basis)?.scale(coeff))?;
    }
    Ok(acc)
}

/// Hermitian pairing `⟨v, ζ⟩ = Σ v_j ζ̄_j`.
pub fn hermitian_pairing(v: &[Complex64], zeta: &[Complex64]) -> Complex64 {
    v.iter().zip(zeta).map(|(a, b)| a * b.conj()).sum()
}
