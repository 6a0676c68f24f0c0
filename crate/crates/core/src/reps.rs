//! Representations of the Heisenberg Lie algebra on the truncated Fock
//! space, characters, evaluation of enveloping-algebra elements, and
//! continuous-field section checks along a λ-grid.
//!
//! For λ > 0 the complex frame acts by `W_j ↦ i√λ A_j*`, `W̄_j ↦ i√λ A_j`,
//! `Z ↦ iλ`. For λ < 0 the creation and annihilation roles of the frame
//! swap with `√|λ|` scaling and `Z ↦ iλ` is kept; this is the unique
//! assignment with both the central character and bracket fidelity. The
//! Darboux images are recovered from the frame:
//! `X_j = (W_j + W̄_j)/√2`, `Y_j = (W_j − W̄_j)/(i√2)`.

use std::sync::Arc;

use num_complex::Complex64;

use crate::flow::symbol_probe;
use crate::fock::FockBasis;
use crate::funcalc::complex_power;
use crate::linop::{
    annihilation, creation, identity, interior_projector, operator_norm, shift, zero, Op,
};
use crate::ualg::{delta_plus, UeaElement};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Infinite-dimensional fiber with central character `iλ`, `λ ≠ 0`.
#[derive(Debug, Clone)]
pub struct FockRep {
    lambda: f64,
    basis: Arc<FockBasis>,
    w: Vec<Op>,
    wbar: Vec<Op>,
    x: Vec<Op>,
    y: Vec<Op>,
}

/// One-dimensional representation killing the center: `X_j ↦ iμ_{X_j}`,
/// `Y_j ↦ iμ_{Y_j}`, `Z ↦ 0`.
#[derive(Debug, Clone)]
pub struct CharacterRep {
    mu: Vec<f64>,
}

/// A representation datum: generator images are operators (Fock kind) or
/// purely imaginary scalars (character kind).
#[derive(Debug, Clone)]
pub enum Rep {
    Fock(FockRep),
    Character(CharacterRep),
}

/// Value of an evaluated enveloping-algebra element.
#[derive(Debug, Clone)]
pub enum Evaluated {
    Operator(Op),
    Scalar(Complex64),
}

impl Evaluated {
    pub fn into_operator(self) -> Op {
        match self {
            Evaluated::Operator(op) => op,
            Evaluated::Scalar(_) => panic!("expected operator value"),
        }
    }

    pub fn into_scalar(self) -> Complex64 {
        match self {
            Evaluated::Scalar(z) => z,
            Evaluated::Operator(_) => panic!("expected scalar value"),
        }
    }
}

/// Builds the fiber representation `π_λ` on the given truncation; `λ = 0`
/// is refused (use [`rep_character`]).
pub fn rep_fock(lambda: f64, basis: &Arc<FockBasis>) -> Result<FockRep> {
    if lambda == 0.0 {
        return Err(Error::ZeroCentralParameter);
    }
    let d = basis.d();
    let scale = I * lambda.abs().sqrt();
    let mut w = Vec::with_capacity(d);
    let mut wbar = Vec::with_capacity(d);
    for j in 1..=d {
        let up = creation(j, basis)?.scale(scale);
        let down = annihilation(j, basis)?.scale(scale);
        if lambda > 0.0 {
            w.push(up);
            wbar.push(down);
        } else {
            w.push(down);
            wbar.push(up);
        }
    }
    let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
    let mut x = Vec::with_capacity(d);
    let mut y = Vec::with_capacity(d);
    for j in 0..d {
        x.push(w[j].add(&wbar[j])?.scale(inv_sqrt2));
        y.push(w[j].sub(&wbar[j])?.scale(inv_sqrt2 / I));
    }
    Ok(FockRep {
        lambda,
        basis: Arc::clone(basis),
        w,
        wbar,
        x,
        y,
    })
}

impl FockRep {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn d(&self) -> usize {
        self.basis.d()
    }

    /// `π(W_j)`, 1-based.
    pub fn w(&self, j: usize) -> &Op {
        &self.w[j - 1]
    }

    pub fn w_bar(&self, j: usize) -> &Op {
        &self.wbar[j - 1]
    }

    pub fn x(&self, j: usize) -> &Op {
        &self.x[j - 1]
    }

    pub fn y(&self, j: usize) -> &Op {
        &self.y[j - 1]
    }

    /// `π(Z) = iλ`.
    pub fn z_scalar(&self) -> Complex64 {
        I * self.lambda
    }
}

/// Builds the character `π_μ`; `mu` lists `μ_{X_1}..μ_{X_d}` then
/// `μ_{Y_1}..μ_{Y_d}`.
pub fn rep_character(mu: &[f64]) -> Result<CharacterRep> {
    if !mu.len().is_multiple_of(2) || mu.is_empty() {
        return Err(Error::LengthMismatch {
            got: mu.len(),
            want: mu.len() + mu.len() % 2,
        });
    }
    Ok(CharacterRep { mu: mu.to_vec() })
}

impl CharacterRep {
    pub fn d(&self) -> usize {
        self.mu.len() / 2
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn x_scalar(&self, j: usize) -> Complex64 {
        I * self.mu[j - 1]
    }

    pub fn y_scalar(&self, j: usize) -> Complex64 {
        I * self.mu[self.d() + j - 1]
    }

    /// `½|μ|²`.
    pub fn half_mu_norm_sq(&self) -> f64 {
        0.5 * self.mu.iter().map(|m| m * m).sum::<f64>()
    }
}

/// Multiplicative extension of the generator images over PBW words.
pub fn evaluate(e: &UeaElement, rep: &Rep) -> Result<Evaluated> {
    match rep {
        Rep::Fock(fr) => evaluate_fock(e, fr).map(Evaluated::Operator),
        Rep::Character(cr) => evaluate_character(e, cr).map(Evaluated::Scalar),
    }
}

fn evaluate_fock(e: &UeaElement, rep: &FockRep) -> Result<Op> {
    if e.d() != rep.d() {
        return Err(Error::LengthMismatch {
            got: e.d(),
            want: rep.d(),
        });
    }
    let basis = rep.basis();
    let mut acc = zero(basis);
    for (word, coeff) in e.terms() {
        let mut m = identity(basis);
        for (j, &a) in word.x.iter().enumerate() {
            for _ in 0..a {
                m = m.compose(&rep.x[j])?;
            }
        }
        for (j, &b) in word.y.iter().enumerate() {
            for _ in 0..b {
                m = m.compose(&rep.y[j])?;
            }
        }
        let scalar = coeff.to_c64() * rep.z_scalar().powu(u32::from(word.z));
        acc = acc.add(&m.scale(scalar))?;
    }
    Ok(acc)
}

fn evaluate_character(e: &UeaElement, rep: &CharacterRep) -> Result<Complex64> {
    if e.d() != rep.d() {
        return Err(Error::LengthMismatch {
            got: e.d(),
            want: rep.d(),
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (word, coeff) in e.terms() {
        if word.z > 0 {
            continue; // π(Z) = 0
        }
        let mut value = coeff.to_c64();
        for (j, &a) in word.x.iter().enumerate() {
            value *= rep.x_scalar(j + 1).powu(u32::from(a));
        }
        for (j, &b) in word.y.iter().enumerate() {
            value *= rep.y_scalar(j + 1).powu(u32::from(b));
        }
        acc += value;
    }
    Ok(acc)
}

/// Residual `‖π_λ(−iW_j)·π_λ(Δ₊)^{−1/2} − S_j‖` on degrees ≤ n_max − 2.
/// The `√λ` factors cancel, so the residual is λ-independent; this
/// constancy is what lets the shift multipliers extend continuously to the
/// λ = 0 fiber.
pub fn shift_multiplier_identity(j: usize, lambda: f64, basis: &Arc<FockBasis>) -> Result<f64> {
    if lambda <= 0.0 {
        return Err(Error::NonPositiveCentralParameter);
    }
    let rep = rep_fock(lambda, basis)?;
    let minus_i_w = rep.w(j).scale(-I);
    let delta = evaluate_fock(&delta_plus(basis.d())?, &rep)?;
    let inv_sqrt = complex_power(&delta, Complex64::new(-0.5, 0.0))?;
    let candidate = minus_i_w.compose(&inv_sqrt)?;
    let p2 = interior_projector(basis, 2)?;
    let s = shift(j, basis)?;
    Ok(operator_norm(&candidate.sub(&s)?.compose(&p2)?))
}

/// A finite sample of a continuous-field section: fiber operators along a
/// strictly positive, strictly decreasing λ-grid, probe directions on the
/// unit sphere, and optionally the expected symbol samples at λ = 0.
#[derive(Debug, Clone)]
pub struct Section {
    grid: Vec<f64>,
    fiber_ops: Vec<Op>,
    probe_dirs: Vec<Vec<Complex64>>,
    probe_degree: usize,
    symbol_at_zero: Option<Vec<Complex64>>,
}

impl Section {
    pub fn new(
        grid: Vec<f64>,
        fiber_ops: Vec<Op>,
        probe_dirs: Vec<Vec<Complex64>>,
        probe_degree: usize,
        symbol_at_zero: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if grid.iter().any(|&l| l <= 0.0) || grid.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::BadGrid);
        }
        if fiber_ops.len() != grid.len() {
            return Err(Error::LengthMismatch {
                got: fiber_ops.len(),
                want: grid.len(),
            });
        }
        if let Some(first) = fiber_ops.first() {
            if !fiber_ops
                .iter()
                .all(|op| op.basis().same_shape(first.basis()))
            {
                return Err(Error::BasisMismatch);
            }
        }
        if let Some(sym) = &symbol_at_zero {
            if sym.len() != probe_dirs.len() {
                return Err(Error::LengthMismatch {
                    got: sym.len(),
                    want: probe_dirs.len(),
                });
            }
        }
        Ok(Self {
            grid,
            fiber_ops,
            probe_dirs,
            probe_degree,
            symbol_at_zero,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn fiber_ops(&self) -> &[Op] {
        &self.fiber_ops
    }
}

/// Sup over the grid of fiber operator norms.
pub fn section_sup_norm(s: &Section) -> f64 {
    s.fiber_ops
        .iter()
        .map(operator_norm)
        .fold(0.0, f64::max)
}

/// Result of the λ → 0 trend check of the probe functionals.
#[derive(Debug, Clone)]
pub struct ZeroLimitReport {
    /// Deviation of the smallest-λ probe values from the λ = 0 symbol
    /// samples, max over probe directions; absent without samples.
    pub max_deviation: Option<f64>,
    /// Max over directions of successive probe increments along the grid.
    pub cauchy_increments: Vec<f64>,
    /// Log-log slope of the increments against λ; `None` when converged
    /// below tolerance.
    pub fitted_decay_order: Option<f64>,
    /// All increments at or below the tolerance.
    pub converged: bool,
}

/// Tracks the designated scalar functionals (vector-power probes) along the
/// grid and reports their Cauchy decay toward λ = 0.
pub fn section_zero_limit_check(s: &Section, tol: f64) -> Result<ZeroLimitReport> {
    let mut values: Vec<Vec<Complex64>> = Vec::with_capacity(s.grid.len());
    for op in &s.fiber_ops {
        let row: Result<Vec<Complex64>> = s
            .probe_dirs
            .iter()
            .map(|dir| symbol_probe(op, dir, s.probe_degree, 1))
            .collect();
        values.push(row?);
    }
    let mut cauchy = Vec::with_capacity(values.len().saturating_sub(1));
    for w in values.windows(2) {
        let inc = w[0]
            .iter()
            .zip(&w[1])
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        cauchy.push(inc);
    }
    let converged = cauchy.iter().all(|&v| v <= tol);
    let fitted_decay_order = if converged {
        None
    } else {
        // Increment between grid points k and k+1 is attributed to λ_{k+1}.
        crate::flow::log_log_slope(
            s.grid.iter().skip(1).copied(),
            cauchy.iter().copied(),
        )
    };
    let max_deviation = s.symbol_at_zero.as_ref().map(|sym| {
        values
            .last()
            .expect("grid nonempty")
            .iter()
            .zip(sym)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    });
    Ok(ZeroLimitReport {
        max_deviation,
        cauchy_increments: cauchy,
        fitted_decay_order,
        converged,
    })
}

/// Affine fit of a degree-block spectrum: eigenvalues on the interior blocks
/// against `|λ|(n + c)` with a single integer `c`, plus the kernel dimension
/// found on the interior.
#[derive(Debug, Clone)]
pub struct AffineSpectrumReport {
    pub c: i64,
    pub max_deviation: f64,
    pub kernel_dim: usize,
}

/// Fits the block spectrum of a degree-preserving operator. The operator is
/// examined block by block on degrees `≤ n_max − margin`.
pub fn affine_spectrum_report(
    op: &Op,
    lambda: f64,
    margin: usize,
) -> Result<AffineSpectrumReport> {
    let basis = op.basis();
    if margin > basis.n_max() {
        return Err(Error::MarginOverflow {
            margin,
            n_max: basis.n_max(),
        });
    }
    let abs = lambda.abs();
    let mut offsets: Vec<(u32, f64)> = Vec::new();
    for n in 0..=(basis.n_max() - margin) {
        let range = basis.block_range(n);
        let block = op
            .matrix()
            .view((range.start, range.start), (range.len(), range.len()))
            .into_owned();
        let deviation = (&block - block.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > 1e-10 {
            return Err(Error::NotHermitian { deviation });
        }
        let eig = nalgebra::SymmetricEigen::new(block);
        for &value in eig.eigenvalues.iter() {
            offsets.push((n as u32, value));
        }
    }
    let mean_c: f64 = offsets
        .iter()
        .map(|&(n, eig)| eig / abs - f64::from(n))
        .sum::<f64>()
        / offsets.len() as f64;
    let c = mean_c.round() as i64;
    let mut max_deviation = 0.0f64;
    let mut kernel_dim = 0usize;
    for &(n, eig) in &offsets {
        let expected = abs * (f64::from(n) + c as f64);
        max_deviation = max_deviation.max((eig - expected).abs());
        if eig.abs() <= 1e-8 {
            kernel_dim += 1;
        }
    }
    Ok(AffineSpectrumReport {
        c,
        max_deviation,
        kernel_dim,
    })
}
