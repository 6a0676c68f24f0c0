//! Polynomial Weyl quantization by full symmetrization, its linear
//! inversion, and the induced noncommutative symbol products.
//!
//! The position/momentum convention `Q_j = (A_j + A_j*)/√2`,
//! `P_j = i(A_j* − A_j)/√2` is fixed so that quantizing `½|μ|²` yields
//! `N + d/2`. Dequantization solves a least-squares system on interior
//! degree blocks only, excluding the top `2·max_degree` degrees where
//! compression biases coefficients; a clean interior therefore needs
//! roughly `n_max ≥ 3·max_degree`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::fock::FockBasis;
use crate::linop::{annihilation, creation, Op};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Monomial `q^a p^b t^c` in the phase-space variables and the central
/// variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PhaseMono {
    pub q: Vec<u8>,
    pub p: Vec<u8>,
    pub t: u8,
}

impl PhaseMono {
    fn unit(d: usize) -> Self {
        Self {
            q: vec![0; d],
            p: vec![0; d],
            t: 0,
        }
    }

    /// Degree under the inhomogeneous weights `q, p ↦ 1`, `t ↦ 2`; for
    /// `t`-free monomials this is the plain total degree.
    pub fn delta_weight(&self) -> u32 {
        let base: u32 = self.q.iter().chain(self.p.iter()).map(|&e| u32::from(e)).sum();
        base + 2 * u32::from(self.t)
    }
}

/// Polynomial on phase space (optionally with the central variable) with
/// complex coefficients; zero coefficients are pruned.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySymbol {
    d: usize,
    coeffs: BTreeMap<PhaseMono, Complex64>,
}

/// Sign selecting one of the two distinguished quadratic symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl PolySymbol {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, value: Complex64) -> Self {
        let mut s = Self::zero(d);
        s.insert(PhaseMono::unit(d), value);
        s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coeffs(&self) -> &BTreeMap<PhaseMono, Complex64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn insert(&mut self, mono: PhaseMono, value: Complex64) {
        use std::collections::btree_map::Entry;
        assert_eq!(mono.q.len(), self.d);
        assert_eq!(mono.p.len(), self.d);
        match self.coeffs.entry(mono) {
            Entry::Vacant(v) => {
                if value != Complex64::new(0.0, 0.0) {
                    v.insert(value);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + value;
                if sum == Complex64::new(0.0, 0.0) {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.insert(m.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.coeffs {
            out.insert(m.clone(), c * z);
        }
        out
    }

    /// Pointwise polynomial product.
    pub fn mul_pointwise(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.d);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                let mono = PhaseMono {
                    q: ma.q.iter().zip(&mb.q).map(|(a, b)| a + b).collect(),
                    p: ma.p.iter().zip(&mb.p).map(|(a, b)| a + b).collect(),
                    t: ma.t + mb.t,
                };
                out.insert(mono, ca * cb);
            }
        }
        out
    }

    /// Value at `(μ, t)` with `μ = (q_1..q_d, p_1..p_d)`.
    pub fn eval(&self, mu: &[f64], t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.coeffs {
            let mut v = *c;
            for (j, &e) in m.q.iter().enumerate() {
                v *= Complex64::new(mu[j], 0.0).powu(u32::from(e));
            }
            for (j, &e) in m.p.iter().enumerate() {
                v *= Complex64::new(mu[self.d + j], 0.0).powu(u32::from(e));
            }
            v *= Complex64::new(t, 0.0).powu(u32::from(m.t));
            acc += v;
        }
        acc
    }

    /// Substitutes `t = value`, producing a `t`-free polynomial.
    pub fn restrict_t(&self, value: f64) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.coeffs {
            let scale = value.powi(i32::from(m.t));
            let mono = PhaseMono {
                q: m.q.clone(),
                p: m.p.clone(),
                t: 0,
            };
            out.insert(mono, c * scale);
        }
        out
    }

    pub fn has_central_variable(&self) -> bool {
        self.coeffs.keys().any(|m| m.t > 0)
    }

    /// Max δ-weighted degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(PhaseMono::delta_weight).max()
    }

    /// Max degree among monomials with `|coeff| > eps`, for tolerance-aware
    /// degree-drop checks.
    pub fn degree_above(&self, eps: f64) -> Option<u32> {
        self.coeffs
            .iter()
            .filter(|(_, c)| c.norm() > eps)
            .map(|(m, _)| m.delta_weight())
            .max()
    }

    /// Uniform δ-degree, or `None` when mixed or zero.
    pub fn delta_degree(&self) -> Option<u32> {
        let mut weights = self.coeffs.keys().map(PhaseMono::delta_weight);
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    /// Leading δ-homogeneous part.
    pub fn leading_part(&self) -> Self {
        let Some(top) = self.degree() else {
            return Self::zero(self.d);
        };
        let mut out = Self::zero(self.d);
        for (m, c) in &self.coeffs {
            if m.delta_weight() == top {
                out.insert(m.clone(), *c);
            }
        }
        out
    }

    /// Largest coefficient distance to `other`.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (m, c) in &self.coeffs {
            let oc = other.coeffs.get(m).copied().unwrap_or_default();
            worst = worst.max((c - oc).norm());
        }
        for (m, c) in &other.coeffs {
            if !self.coeffs.contains_key(m) {
                worst = worst.max(c.norm());
            }
        }
        worst
    }

    /// Deterministic plain-text rendering with sorted monomials.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.coeffs {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            write!(out, "({:.6}{:+.6}i)", c.re, c.im).unwrap();
            for (j, &e) in m.q.iter().enumerate() {
                if e == 1 {
                    write!(out, "*q{}", j + 1).unwrap();
                } else if e > 1 {
                    write!(out, "*q{}^{}", j + 1, e).unwrap();
                }
            }
            for (j, &e) in m.p.iter().enumerate() {
                if e == 1 {
                    write!(out, "*p{}", j + 1).unwrap();
                } else if e > 1 {
                    write!(out, "*p{}^{}", j + 1, e).unwrap();
                }
            }
            if m.t == 1 {
                out.push_str("*t");
            } else if m.t > 1 {
                write!(out, "*t^{}", m.t).unwrap();
            }
        }
        out
    }
}

/// The quadratic symbols `(μ, t) ↦ ½|μ|² ± t(1 − d/2)`, δ-homogeneous of
/// degree 2.
pub fn delta_symbol(sign: Sign, d: usize) -> PolySymbol {
    let mut s = PolySymbol::zero(d);
    let half = Complex64::new(0.5, 0.0);
    for j in 0..d {
        let mut q = PhaseMono::unit(d);
        q.q[j] = 2;
        s.insert(q, half);
        let mut p = PhaseMono::unit(d);
        p.p[j] = 2;
        s.insert(p, half);
    }
    let coeff = Complex64::new(1.0 - d as f64 / 2.0, 0.0);
    let coeff = match sign {
        Sign::Plus => coeff,
        Sign::Minus => -coeff,
    };
    let mut t = PhaseMono::unit(d);
    t.t = 1;
    s.insert(t, coeff);
    s
}

/// Position/momentum matrices on a Fock truncation.
#[derive(Debug, Clone)]
pub struct QuantizationFrame {
    basis: Arc<FockBasis>,
    q: Vec<Op>,
    p: Vec<Op>,
}

impl QuantizationFrame {
    pub fn new(basis: &Arc<FockBasis>) -> Result<Self> {
        let d = basis.d();
        let inv_sqrt2 = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        let mut q = Vec::with_capacity(d);
        let mut p = Vec::with_capacity(d);
        for j in 1..=d {
            let up = creation(j, basis)?;
            let down = annihilation(j, basis)?;
            q.push(down.add(&up)?.scale(inv_sqrt2));
            p.push(up.sub(&down)?.scale(I * inv_sqrt2));
        }
        Ok(Self {
            basis: Arc::clone(basis),
            q,
            p,
        })
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn position(&self, j: usize) -> &Op {
        &self.q[j - 1]
    }

    pub fn momentum(&self, j: usize) -> &Op {
        &self.p[j - 1]
    }

    fn letter(&self, idx: usize) -> &Op {
        if idx < self.q.len() {
            &self.q[idx]
        } else {
            &self.p[idx - self.q.len()]
        }
    }
}

/// Memoized full symmetrization: the average over all orderings of the word
/// with `expo[i]` copies of letter `i` satisfies
/// `sym(M) = Σ_i (mult_i/|M|) · letter_i · sym(M − i)`.
fn symmetrized_word(
    expo: &[u8],
    frame: &QuantizationFrame,
    memo: &mut HashMap<Vec<u8>, DMatrix<Complex64>>,
) -> DMatrix<Complex64> {
    let total: u32 = expo.iter().map(|&e| u32::from(e)).sum();
    if total == 0 {
        return DMatrix::identity(frame.basis.dim(), frame.basis.dim());
    }
    if let Some(hit) = memo.get(expo) {
        return hit.clone();
    }
    let dim = frame.basis.dim();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (i, &e) in expo.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut rest = expo.to_vec();
        rest[i] -= 1;
        let tail = symmetrized_word(&rest, frame, memo);
        let weight = Complex64::new(f64::from(e) / f64::from(total), 0.0);
        acc += (frame.letter(i).matrix() * tail) * weight;
    }
    memo.insert(expo.to_vec(), acc.clone());
    acc
}

/// Weyl quantization of a `t`-free polynomial: each monomial `q^a p^b` maps
/// to the average over all orderings of the corresponding word in the
/// position/momentum operators. Linear, and Hermitian for real symbols on
/// the interior.
pub fn weyl_quantize(a: &PolySymbol, frame: &QuantizationFrame) -> Result<Op> {
    let mut memo = HashMap::new();
    weyl_quantize_with(a, frame, &mut memo)
}

fn weyl_quantize_with(
    a: &PolySymbol,
    frame: &QuantizationFrame,
    memo: &mut HashMap<Vec<u8>, DMatrix<Complex64>>,
) -> Result<Op> {
    if a.d() != frame.basis.d() {
        return Err(Error::LengthMismatch {
            got: a.d(),
            want: frame.basis.d(),
        });
    }
    if a.has_central_variable() {
        return Err(Error::CentralVariableInQuantization);
    }
    if let Some(deg) = a.degree() {
        if deg as usize + 2 > frame.basis.n_max() {
            return Err(Error::DegreeOverflow {
                n: deg as usize,
                n_max: frame.basis.n_max(),
            });
        }
    }
    let dim = frame.basis.dim();
    let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
    for (m, c) in a.coeffs() {
        let expo: Vec<u8> = m.q.iter().chain(m.p.iter()).copied().collect();
        acc += symmetrized_word(&expo, frame, memo) * *c;
    }
    Ok(Op::from_matrix(&frame.basis, acc, None))
}

fn monomials_up_to(d: usize, max_degree: u32) -> Vec<PhaseMono> {
    let mut out = Vec::new();
    let mut expo = vec![0u8; 2 * d];
    fn fill(expo: &mut Vec<u8>, pos: usize, budget: u32, d: usize, out: &mut Vec<PhaseMono>) {
        if pos == expo.len() {
            out.push(PhaseMono {
                q: expo[..d].to_vec(),
                p: expo[d..].to_vec(),
                t: 0,
            });
            return;
        }
        for e in 0..=budget {
            expo[pos] = e as u8;
            fill(expo, pos + 1, budget - e, d, out);
        }
        expo[pos] = 0;
    }
    fill(&mut expo, 0, max_degree, d, &mut out);
    out.sort();
    out
}

/// Cached linear inversion of [`weyl_quantize`] on the span of monomials of
/// degree ≤ `max_degree`: the quantized monomial family and the factorized
/// least-squares system are built once and reused. The solve runs over the
/// entries of the interior compression, excluding the top `2·max_degree`
/// degree blocks.
pub struct Dequantizer {
    basis: Arc<FockBasis>,
    corner_dim: usize,
    monomials: Vec<PhaseMono>,
    quantized: Vec<DMatrix<Complex64>>,
    column_norms: Vec<f64>,
    svd: nalgebra::SVD<Complex64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Dequantizer {
    pub fn new(frame: &QuantizationFrame, max_degree: u32) -> Result<Self> {
        let basis = &frame.basis;
        let margin = 2 * max_degree as usize;
        if margin > basis.n_max() || basis.n_max() - margin < max_degree as usize {
            return Err(Error::RankDeficient);
        }
        let corner_levels = basis.n_max() - margin;
        let corner_dim = basis.block_range(corner_levels).end;

        let monomials = monomials_up_to(basis.d(), max_degree);
        let mut memo = HashMap::new();
        let mut quantized = Vec::with_capacity(monomials.len());
        let rows = corner_dim * corner_dim;
        let mut design = DMatrix::<Complex64>::zeros(rows, monomials.len());
        for (col, mono) in monomials.iter().enumerate() {
            let expo: Vec<u8> = mono.q.iter().chain(mono.p.iter()).copied().collect();
            let op = symmetrized_word(&expo, frame, &mut memo);
            for r in 0..corner_dim {
                for c in 0..corner_dim {
                    design[(r * corner_dim + c, col)] = op[(r, c)];
                }
            }
            quantized.push(op);
        }

        // Column equilibration keeps the solve well conditioned across the
        // wide range of monomial scales.
        let mut column_norms = Vec::with_capacity(monomials.len());
        for col in 0..monomials.len() {
            let norm = design.column(col).norm();
            if norm == 0.0 {
                return Err(Error::RankDeficient);
            }
            let scale = Complex64::new(1.0 / norm, 0.0);
            design.column_mut(col).iter_mut().for_each(|z| *z *= scale);
            column_norms.push(norm);
        }

        let svd = design.svd(true, true);
        let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let smin = svd
            .singular_values
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if smax == 0.0 || smin / smax < 1e-10 {
            return Err(Error::RankDeficient);
        }
        Ok(Self {
            basis: Arc::clone(basis),
            corner_dim,
            monomials,
            quantized,
            column_norms,
            svd,
        })
    }

    /// Quantization as a linear combination of the cached monomial family;
    /// the symbol must stay within the family's degree.
    pub fn quantize(&self, a: &PolySymbol) -> Result<Op> {
        if a.has_central_variable() {
            return Err(Error::CentralVariableInQuantization);
        }
        let dim = self.basis.dim();
        let mut acc = DMatrix::<Complex64>::zeros(dim, dim);
        for (m, c) in a.coeffs() {
            let idx = self
                .monomials
                .binary_search(m)
                .map_err(|_| Error::DegreeOverflow {
                    n: m.delta_weight() as usize,
                    n_max: self.basis.n_max(),
                })?;
            acc += &self.quantized[idx] * *c;
        }
        Ok(Op::from_matrix(&self.basis, acc, None))
    }

    pub fn dequantize(&self, t: &Op) -> Result<PolySymbol> {
        if !t.basis().same_shape(&self.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut target = DVector::<Complex64>::zeros(self.corner_dim * self.corner_dim);
        for r in 0..self.corner_dim {
            for c in 0..self.corner_dim {
                target[r * self.corner_dim + c] = t.matrix()[(r, c)];
            }
        }
        let solution = self
            .svd
            .solve(&target, 0.0)
            .map_err(|_| Error::RankDeficient)?;
        let mut out = PolySymbol::zero(self.basis.d());
        for (idx, mono) in self.monomials.iter().enumerate() {
            out.insert(mono.clone(), solution[idx] / self.column_norms[idx]);
        }
        Ok(out)
    }
}

/// One-shot inversion; see [`Dequantizer`] for the reusable form.
pub fn weyl_dequantize(
    t: &Op,
    max_degree: u32,
    frame: &QuantizationFrame,
) -> Result<PolySymbol> {
    Dequantizer::new(frame, max_degree)?.dequantize(t)
}

/// The operator-product symbol `a # b = dequantize(quantize(a)·quantize(b))`.
/// Bilinear; its leading δ-part is the pointwise product.
pub fn weyl_product(
    a: &PolySymbol,
    b: &PolySymbol,
    frame: &QuantizationFrame,
) -> Result<PolySymbol> {
    let deg = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
    if deg as usize + 4 > frame.basis.n_max() {
        return Err(Error::DegreeOverflow {
            n: deg as usize,
            n_max: frame.basis.n_max(),
        });
    }
    let deq = Dequantizer::new(frame, deg)?;
    let qa = deq.quantize(a)?;
    let qb = deq.quantize(b)?;
    deq.dequantize(&qa.compose(&qb)?)
}

/// Restrictions of the two distinguished quadratic symbols to the
/// hyperplanes `t = ±1`, and whether the two restrictions differ only in
/// δ-degree ≤ 0 — the equator gluing condition.
#[derive(Debug, Clone)]
pub struct HemisphereReport {
    pub plus_upper: PolySymbol,
    pub plus_lower: PolySymbol,
    pub minus_upper: PolySymbol,
    pub minus_lower: PolySymbol,
    pub plus_difference_degree: Option<u32>,
    pub minus_difference_degree: Option<u32>,
    pub gluing_ok: bool,
}

pub fn hemisphere_compatibility(d: usize) -> HemisphereReport {
    let plus = delta_symbol(Sign::Plus, d);
    let minus = delta_symbol(Sign::Minus, d);
    let plus_upper = plus.restrict_t(1.0);
    let plus_lower = plus.restrict_t(-1.0);
    let minus_upper = minus.restrict_t(1.0);
    let minus_lower = minus.restrict_t(-1.0);
    let plus_difference_degree = plus_upper.sub(&plus_lower).degree();
    let minus_difference_degree = minus_upper.sub(&minus_lower).degree();
    let gluing_ok = plus_difference_degree.unwrap_or(0) == 0
        && minus_difference_degree.unwrap_or(0) == 0;
    HemisphereReport {
        plus_upper,
        plus_lower,
        minus_upper,
        minus_lower,
        plus_difference_degree,
        minus_difference_degree,
        gluing_ok,
    }
}
