//! Exact model of the complexified Heisenberg Lie algebra and its universal
//! enveloping algebra.
//!
//! Generators are a Darboux frame `X_1..X_d, Y_1..Y_d` and the central `Z`,
//! with `[X_j, Y_k] = δ_{jk} Z`. The complex frame `W_j = (X_j + iY_j)/√2`
//! and its conjugate expand into the Darboux generators, so all arithmetic
//! stays in ℚ(i, √2). Elements are kept in PBW normal form with the
//! generator order `X < Y < Z`; the only nontrivial rewrite is
//! `Y_k X_j = X_j Y_k − δ_{jk} Z`.

pub mod coeff;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};
pub use coeff::{Coeff, GaussRat};

/// Generator symbols; coordinates are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    X(usize),
    Y(usize),
    Z,
    /// Complex frame vector `W_j = (X_j + iY_j)/√2`.
    W(usize),
    /// Conjugate frame vector `W̄_j = (X_j − iY_j)/√2`.
    WBar(usize),
}

/// Darboux-frame letters, 0-based, in PBW order `X_0 < … < Y_0 < … < Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    X(usize),
    Y(usize),
    Z,
}

impl Letter {
    fn key(self, d: usize) -> usize {
        match self {
            Letter::X(j) => j,
            Letter::Y(j) => d + j,
            Letter::Z => 2 * d,
        }
    }
}

/// PBW word `X^x Y^y Z^z`, ordered lexicographically for deterministic
/// term order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PbwWord {
    pub x: Vec<u16>,
    pub y: Vec<u16>,
    pub z: u16,
}

impl PbwWord {
    fn unit(d: usize) -> Self {
        Self {
            x: vec![0; d],
            y: vec![0; d],
            z: 0,
        }
    }

    /// Weight under the inhomogeneous grading: `Σx + Σy + 2z`.
    pub fn graded_weight(&self) -> u32 {
        let first: u32 = self.x.iter().chain(self.y.iter()).map(|&e| u32::from(e)).sum();
        first + 2 * u32::from(self.z)
    }

    fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::new();
        for (j, &e) in self.x.iter().enumerate() {
            out.extend(std::iter::repeat_n(Letter::X(j), e as usize));
        }
        for (j, &e) in self.y.iter().enumerate() {
            out.extend(std::iter::repeat_n(Letter::Y(j), e as usize));
        }
        out.extend(std::iter::repeat_n(Letter::Z, self.z as usize));
        out
    }
}

/// Element of the enveloping algebra in PBW normal form with exact
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeaElement {
    d: usize,
    terms: BTreeMap<PbwWord, Coeff>,
}

/// Uniform graded weight of an element, or `Mixed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradedDegree {
    Zero,
    Uniform(u32),
    Mixed,
}

impl UeaElement {
    pub fn zero(d: usize) -> Self {
        Self {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<PbwWord, Coeff> {
        &self.terms
    }

    fn insert(&mut self, word: PbwWord, coeff: Coeff) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                if !coeff.is_zero() {
                    v.insert(coeff);
                }
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::LengthMismatch {
                got: other.d,
                want: self.d,
            });
        }
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Coeff::from_int(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut out = Self::zero(self.d);
        if c.is_zero() {
            return out;
        }
        for (w, k) in &self.terms {
            out.insert(w.clone(), k.mul(c));
        }
        out
    }

    /// Noncommutative product, renormalized.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::LengthMismatch {
                got: other.d,
                want: self.d,
            });
        }
        let mut out = Self::zero(self.d);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                let mut word = wa.letters();
                word.extend(wb.letters());
                reduce_word(self.d, ca.mul(cb), word, &mut out, &mut leftmost);
            }
        }
        Ok(out)
    }

    /// `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Largest coefficient distance to `other` in the complex embedding.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (w, c) in &self.terms {
            let oc = other.terms.get(w).cloned().unwrap_or_else(Coeff::zero);
            worst = worst.max((c.to_c64() - oc.to_c64()).norm());
        }
        for (w, c) in &other.terms {
            if !self.terms.contains_key(w) {
                worst = worst.max(c.to_c64().norm());
            }
        }
        worst
    }

    /// Deterministic plain-text rendering, highest PBW word first.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (word, coeff) in self.terms.iter().rev() {
            let w = render_word(word);
            let c = coeff.to_string();
            // Suppress unit coefficients in front of nonempty words.
            let body = match (c.as_str(), w.is_empty()) {
                ("1", false) => w.clone(),
                ("-1", false) => format!("-{w}"),
                (_, false) => format!("{c}*{w}"),
                (_, true) => c.clone(),
            };
            if out.is_empty() {
                out.push_str(&body);
            } else if let Some(tail) = body.strip_prefix('-') {
                write!(out, " - {tail}").unwrap();
            } else {
                write!(out, " + {body}").unwrap();
            }
        }
        out
    }
}

fn render_word(word: &PbwWord) -> String {
    let mut parts = Vec::new();
    for (j, &e) in word.x.iter().enumerate() {
        if e == 1 {
            parts.push(format!("X{}", j + 1));
        } else if e > 1 {
            parts.push(format!("X{}^{}", j + 1, e));
        }
    }
    for (j, &e) in word.y.iter().enumerate() {
        if e == 1 {
            parts.push(format!("Y{}", j + 1));
        } else if e > 1 {
            parts.push(format!("Y{}^{}", j + 1, e));
        }
    }
    if word.z == 1 {
        parts.push("Z".into());
    } else if word.z > 1 {
        parts.push(format!("Z^{}", word.z));
    }
    parts.join("*")
}

/// Production rewrite strategy: always reduce the leftmost inversion.
fn leftmost(_candidates: &[usize]) -> usize {
    0
}

/// Rewrites `word` into the accumulator. `pick` selects which inversion to
/// reduce next, given the list of inversion positions; normal forms are
/// independent of that choice.
fn reduce_word(
    d: usize,
    coeff: Coeff,
    word: Vec<Letter>,
    acc: &mut UeaElement,
    pick: &mut impl FnMut(&[usize]) -> usize,
) {
    let mut work = vec![(coeff, word)];
    while let Some((c, w)) = work.pop() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| w[i].key(d) > w[i + 1].key(d))
            .collect();
        if inversions.is_empty() {
            acc.insert(word_from_sorted(d, &w), c);
            continue;
        }
        let i = inversions[pick(&inversions)];
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        if let (Letter::Y(k), Letter::X(j)) = (w[i], w[i + 1]) {
            if k == j {
                // Y_j X_j = X_j Y_j − Z
                let mut contracted: Vec<Letter> = Vec::with_capacity(w.len() - 1);
                contracted.extend_from_slice(&w[..i]);
                contracted.push(Letter::Z);
                contracted.extend_from_slice(&w[i + 2..]);
                work.push((c.neg(), contracted));
            }
        }
        work.push((c, swapped));
    }
}

fn word_from_sorted(d: usize, letters: &[Letter]) -> PbwWord {
    let mut word = PbwWord::unit(d);
    for &l in letters {
        match l {
            Letter::X(j) => word.x[j] += 1,
            Letter::Y(j) => word.y[j] += 1,
            Letter::Z => word.z += 1,
        }
    }
    word
}

fn check_coordinate(j: usize, d: usize) -> Result<()> {
    if j == 0 || j > d {
        Err(Error::CoordinateOutOfRange { j, d })
    } else {
        Ok(())
    }
}

/// Expands a generator into Darboux letters with exact coefficients.
fn expand_gen(g: Gen, d: usize) -> Result<Vec<(Coeff, Letter)>> {
    Ok(match g {
        Gen::X(j) => {
            check_coordinate(j, d)?;
            vec![(Coeff::one(), Letter::X(j - 1))]
        }
        Gen::Y(j) => {
            check_coordinate(j, d)?;
            vec![(Coeff::one(), Letter::Y(j - 1))]
        }
        Gen::Z => vec![(Coeff::one(), Letter::Z)],
        Gen::W(j) => {
            check_coordinate(j, d)?;
            let s = Coeff::inv_sqrt2();
            vec![
                (s.clone(), Letter::X(j - 1)),
                (Coeff::i().mul(&s), Letter::Y(j - 1)),
            ]
        }
        Gen::WBar(j) => {
            check_coordinate(j, d)?;
            let s = Coeff::inv_sqrt2();
            vec![
                (s.clone(), Letter::X(j - 1)),
                (Coeff::i().mul(&s).neg(), Letter::Y(j - 1)),
            ]
        }
    })
}

/// Normal form of a formal sum of words over the generators, complex frames
/// included.
pub fn pbw_normal_form(d: usize, terms: &[(Coeff, Vec<Gen>)]) -> Result<UeaElement> {
    pbw_normal_form_with(d, terms, &mut leftmost)
}

/// Same as [`pbw_normal_form`] with an explicit rewrite strategy; used to
/// verify confluence.
pub fn pbw_normal_form_with(
    d: usize,
    terms: &[(Coeff, Vec<Gen>)],
    pick: &mut impl FnMut(&[usize]) -> usize,
) -> Result<UeaElement> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut out = UeaElement::zero(d);
    for (coeff, gens) in terms {
        // Distribute complex-frame expansions into plain Darboux words.
        let mut expanded: Vec<(Coeff, Vec<Letter>)> = vec![(coeff.clone(), Vec::new())];
        for &g in gens {
            let options = expand_gen(g, d)?;
            let mut next = Vec::with_capacity(expanded.len() * options.len());
            for (c, w) in &expanded {
                for (oc, ol) in &options {
                    let mut w2 = w.clone();
                    w2.push(*ol);
                    next.push((c.mul(oc), w2));
                }
            }
            expanded = next;
        }
        for (c, w) in expanded {
            reduce_word(d, c, w, &mut out, pick);
        }
    }
    Ok(out)
}

/// Single generator as an element.
pub fn generator(d: usize, g: Gen) -> Result<UeaElement> {
    pbw_normal_form(d, &[(Coeff::one(), vec![g])])
}

/// The Darboux frame data: dimension plus the bracket table
/// `[X_j, Y_k] = δ_{jk} Z` with `Z` central, and the complex frame.
#[derive(Debug, Clone, Copy)]
pub struct HeisFrame {
    d: usize,
}

impl HeisFrame {
    pub fn new(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn x(&self, j: usize) -> Result<UeaElement> {
        generator(self.d, Gen::X(j))
    }

    pub fn y(&self, j: usize) -> Result<UeaElement> {
        generator(self.d, Gen::Y(j))
    }

    pub fn z(&self) -> UeaElement {
        generator(self.d, Gen::Z).expect("Z always valid")
    }

    pub fn w(&self, j: usize) -> Result<UeaElement> {
        generator(self.d, Gen::W(j))
    }

    pub fn w_bar(&self, j: usize) -> Result<UeaElement> {
        generator(self.d, Gen::WBar(j))
    }

    /// Bracket of two basic generators, from the table.
    pub fn bracket(&self, a: Gen, b: Gen) -> Result<UeaElement> {
        generator(self.d, a)?.commutator(&generator(self.d, b)?)
    }
}

/// `Δ_± = −½ Σ_j (X_j² + Y_j²) ∓ i(1 − d/2) Z`, in normal form; graded
/// weight 2.
pub fn delta_plus(d: usize) -> Result<UeaElement> {
    delta_signed(d, true)
}

/// See [`delta_plus`].
pub fn delta_minus(d: usize) -> Result<UeaElement> {
    delta_signed(d, false)
}

fn delta_signed(d: usize, plus: bool) -> Result<UeaElement> {
    let mut terms = Vec::new();
    let minus_half = Coeff::from_ratio(-1, 2);
    for j in 1..=d {
        terms.push((minus_half.clone(), vec![Gen::X(j), Gen::X(j)]));
        terms.push((minus_half.clone(), vec![Gen::Y(j), Gen::Y(j)]));
    }
    // ∓ i(1 − d/2) = ∓ i(2 − d)/2
    let mut z_coeff = Coeff::imag_ratio(-(2 - d as i64), 2);
    if !plus {
        z_coeff = z_coeff.neg();
    }
    terms.push((z_coeff, vec![Gen::Z]));
    pbw_normal_form(d, &terms)
}

/// The quadratic element `−½ Σ_j (X_j² + Y_j²)`, whose positive-fiber image
/// is `|λ|(N + d/2)`.
pub fn harmonic_oscillator(d: usize) -> Result<UeaElement> {
    let mut terms = Vec::new();
    let minus_half = Coeff::from_ratio(-1, 2);
    for j in 1..=d {
        terms.push((minus_half.clone(), vec![Gen::X(j), Gen::X(j)]));
        terms.push((minus_half.clone(), vec![Gen::Y(j), Gen::Y(j)]));
    }
    pbw_normal_form(d, &terms)
}

/// Uniform graded weight `Σa + Σb + 2c` of an element, or `Mixed`.
pub fn graded_degree_of(e: &UeaElement) -> GradedDegree {
    let mut weights = e.terms.keys().map(PbwWord::graded_weight);
    match weights.next() {
        None => GradedDegree::Zero,
        Some(first) => {
            if weights.all(|w| w == first) {
                GradedDegree::Uniform(first)
            } else {
                GradedDegree::Mixed
            }
        }
    }
}

/// Inhomogeneous dilation weight `λ`: `X, Y ↦ λ·`, `Z ↦ λ²·`.
#[derive(Debug, Clone)]
pub struct DilationWeight {
    lambda: BigRational,
}

impl DilationWeight {
    pub fn new(lambda: BigRational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NonPositiveDilation);
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn apply(&self, e: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(e.d);
        for (w, c) in &e.terms {
            let mut factor = BigRational::from_integer(1.into());
            for _ in 0..w.graded_weight() {
                factor *= &self.lambda;
            }
            out.insert(w.clone(), c.scale_rational(&factor));
        }
        out
    }

    /// `δ_λ ∘ δ_μ = δ_{λμ}`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            lambda: &self.lambda * &other.lambda,
        }
    }
}

/// Generator substitution `X, Y ↦ λ·`, `Z ↦ λ²·`; on a PBW word this is
/// multiplication by `λ^{graded weight}`, so no renormalization is needed.
pub fn dilate(e: &UeaElement, lambda: &BigRational) -> Result<UeaElement> {
    Ok(DilationWeight::new(lambda.clone())?.apply(e))
}

/// Frame change by a unitary `U`: the complex frame `W'_j = Σ_k U_{kj} W_k`
/// induces the Darboux substitution
/// `X'_j = Σ_k Re(U_{kj}) X_k − Im(U_{kj}) Y_k`,
/// `Y'_j = Σ_k Im(U_{kj}) X_k + Re(U_{kj}) Y_k`, `Z' = Z`.
/// Float entries are embedded losslessly, so the computation stays exact in
/// the given matrix.
pub fn frame_change(u: &DMatrix<Complex64>, e: &UeaElement) -> Result<UeaElement> {
    let d = e.d;
    if u.nrows() != d || u.ncols() != d {
        return Err(Error::LengthMismatch {
            got: u.nrows(),
            want: d,
        });
    }
    let gram = u.adjoint() * u;
    let id = DMatrix::<Complex64>::identity(d, d);
    let deviation = (&gram - &id).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if deviation > 1e-12 {
        return Err(Error::NotUnitary { deviation });
    }
    let entries: Vec<Vec<GaussRat>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| {
                    let z = u[(r, c)];
                    GaussRat::new(
                        BigRational::from_float(z.re).expect("finite entry"),
                        BigRational::from_float(z.im).expect("finite entry"),
                    )
                })
                .collect()
        })
        .collect();
    frame_change_substitution(&entries, e)
}

/// Frame change with exact Gaussian-rational entries; unitarity is checked
/// exactly.
pub fn frame_change_exact(u: &[Vec<GaussRat>], e: &UeaElement) -> Result<UeaElement> {
    let d = e.d;
    if u.len() != d || u.iter().any(|row| row.len() != d) {
        return Err(Error::LengthMismatch {
            got: u.len(),
            want: d,
        });
    }
    // (U*U)_{jk} = Σ_m conj(U_{mj}) U_{mk} must be exactly δ_{jk}.
    for (j, k) in (0..d).flat_map(|j| (0..d).map(move |k| (j, k))) {
        let mut acc = GaussRat::zero();
        for row in u.iter().take(d) {
            acc = acc.add(&row[j].conj().mul(&row[k]));
        }
        let expected = if j == k {
            GaussRat::new(BigRational::from_integer(1.into()), BigRational::zero())
        } else {
            GaussRat::zero()
        };
        if acc != expected {
            return Err(Error::NotUnitary { deviation: f64::NAN });
        }
    }
    frame_change_substitution(u, e)
}

fn frame_change_substitution(u: &[Vec<GaussRat>], e: &UeaElement) -> Result<UeaElement> {
    let d = e.d;
    // Per-generator linear substitutions in the Darboux letters.
    let mut x_sub: Vec<Vec<(Coeff, Letter)>> = Vec::with_capacity(d);
    let mut y_sub: Vec<Vec<(Coeff, Letter)>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for (k, row) in u.iter().enumerate() {
            let re = Coeff::from_gauss(GaussRat::new(row[j].re.clone(), BigRational::zero()));
            let im = Coeff::from_gauss(GaussRat::new(row[j].im.clone(), BigRational::zero()));
            if !re.is_zero() {
                xs.push((re.clone(), Letter::X(k)));
                ys.push((re, Letter::Y(k)));
            }
            if !im.is_zero() {
                xs.push((im.neg(), Letter::Y(k)));
                ys.push((im, Letter::X(k)));
            }
        }
        x_sub.push(xs);
        y_sub.push(ys);
    }

    let mut out = UeaElement::zero(d);
    for (word, coeff) in &e.terms {
        let mut expanded: Vec<(Coeff, Vec<Letter>)> = vec![(coeff.clone(), Vec::new())];
        for letter in word.letters() {
            let options: Vec<(Coeff, Letter)> = match letter {
                Letter::X(j) => x_sub[j].clone(),
                Letter::Y(j) => y_sub[j].clone(),
                Letter::Z => vec![(Coeff::one(), Letter::Z)],
            };
            let mut next = Vec::with_capacity(expanded.len() * options.len());
            for (c, w) in &expanded {
                for (oc, ol) in &options {
                    let mut w2 = w.clone();
                    w2.push(*ol);
                    next.push((c.mul(oc), w2));
                }
            }
            expanded = next;
        }
        for (c, w) in expanded {
            reduce_word(d, c, w, &mut out, &mut leftmost);
        }
    }
    Ok(out)
}
