//! Multi-index bookkeeping for the truncated symmetric Fock space.
//!
//! The basis of the degree-`n` component is indexed by multi-indices
//! `α ∈ ℕ^d` with `|α| = n`. The unnormalized pure tensors `e^α` satisfy
//! `‖e^α‖² = α!/|α|!`; the corresponding normalized vectors are written
//! `|α⟩`. All combinatorics here are exact rationals, converted to floating
//! point only when matrices or coordinate vectors are produced.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linop::Op;
use crate::{Error, Result};

/// Exponent vector `α` of a symmetric-tensor basis element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total degree `|α| = Σ α_j`.
    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `α + e_j` (0-based coordinate).
    pub fn raised(&self, j: usize) -> MultiIndex {
        let mut e = self.entries.clone();
        e[j] += 1;
        MultiIndex::new(e)
    }

    /// `α − e_j`, or `None` if `α_j = 0`.
    pub fn lowered(&self, j: usize) -> Option<MultiIndex> {
        if self.entries[j] == 0 {
            return None;
        }
        let mut e = self.entries.clone();
        e[j] -= 1;
        Some(MultiIndex::new(e))
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=u64::from(n) {
        acc *= k;
    }
    acc
}

/// `α! = ∏ α_j!`.
pub fn multi_factorial(alpha: &MultiIndex) -> BigInt {
    alpha.entries().iter().map(|&a| factorial(a)).product()
}

/// Squared norm of the unnormalized pure tensor `e^α`, exactly `α!/|α|!`.
pub fn pure_tensor_norm_sq(alpha: &MultiIndex) -> BigRational {
    BigRational::new(multi_factorial(alpha), factorial(alpha.degree()))
}

/// Enumerated basis of the Fock space truncated at total degree `n_max`.
///
/// Indices are ordered by degree, and within a degree block
/// lexicographically with the first coordinate most significant and largest
/// first, so `|n,0,…⟩` heads every block.
#[derive(Debug, Clone)]
pub struct FockBasis {
    d: usize,
    n_max: usize,
    indices: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
    block_offsets: Vec<usize>,
}

/// Builds the basis of all `|α| ≤ n_max`; rejects `d = 0`.
pub fn enumerate_basis(d: usize, n_max: usize) -> Result<FockBasis> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut indices = Vec::new();
    let mut block_offsets = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        block_offsets.push(indices.len());
        push_degree_block(d, n as u32, &mut indices);
    }
    let positions = indices
        .iter()
        .enumerate()
        .map(|(i, a)| (a.clone(), i))
        .collect();
    Ok(FockBasis {
        d,
        n_max,
        indices,
        positions,
        block_offsets,
    })
}

fn push_degree_block(d: usize, n: u32, out: &mut Vec<MultiIndex>) {
    let mut current = vec![0u32; d];
    fill(&mut current, 0, n, out);

    fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
        if pos + 1 == current.len() {
            current[pos] = remaining;
            out.push(MultiIndex::new(current.clone()));
            current[pos] = 0;
            return;
        }
        for a in (0..=remaining).rev() {
            current[pos] = a;
            fill(current, pos + 1, remaining - a, out);
        }
        current[pos] = 0;
    }
}

impl FockBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Total dimension `C(d + n_max, d)`.
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn multi_index(&self, pos: usize) -> &MultiIndex {
        &self.indices[pos]
    }

    /// Position of `α` in the ordering, if `|α| ≤ n_max`.
    pub fn position(&self, alpha: &MultiIndex) -> Option<usize> {
        self.positions.get(alpha).copied()
    }

    /// Start offset of each degree block `0..=n_max`.
    pub fn block_offsets(&self) -> &[usize] {
        &self.block_offsets
    }

    /// Index range of the degree-`n` block.
    pub fn block_range(&self, n: usize) -> std::ops::Range<usize> {
        let start = self.block_offsets[n];
        let end = if n < self.n_max {
            self.block_offsets[n + 1]
        } else {
            self.dim()
        };
        start..end
    }

    pub fn same_shape(&self, other: &FockBasis) -> bool {
        self.d == other.d && self.n_max == other.n_max
    }
}

/// Coordinates of a Fock-space element in the normalized basis `|α⟩`.
#[derive(Debug, Clone)]
pub struct FockVector {
    basis: Arc<FockBasis>,
    coeffs: DVector<Complex64>,
}

impl FockVector {
    pub fn new(basis: &Arc<FockBasis>, coeffs: DVector<Complex64>) -> Result<Self> {
        if coeffs.len() != basis.dim() {
            return Err(Error::LengthMismatch {
                got: coeffs.len(),
                want: basis.dim(),
            });
        }
        Ok(Self {
            basis: Arc::clone(basis),
            coeffs,
        })
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &DVector<Complex64> {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.norm()
    }
}

const UNIT_TOLERANCE: f64 = 1e-10;

/// Coordinates of the vector power `ζ^n` in the normalized basis: the
/// coefficient at `|α⟩` is `√(n!/α!) ∏ ζ_j^{α_j}`. Requires `ζ` unit and
/// `n ≤ n_max`; the output has norm 1 up to rounding.
pub fn vector_power_state(
    zeta: &[Complex64],
    n: usize,
    basis: &Arc<FockBasis>,
) -> Result<FockVector> {
    if zeta.len() != basis.d() {
        return Err(Error::LengthMismatch {
            got: zeta.len(),
            want: basis.d(),
        });
    }
    if n > basis.n_max() {
        return Err(Error::DegreeOverflow {
            n,
            n_max: basis.n_max(),
        });
    }
    let norm: f64 = zeta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let deviation = (norm - 1.0).abs();
    if deviation > UNIT_TOLERANCE {
        return Err(Error::NonUnitVector { deviation });
    }

    let mut coeffs = DVector::<Complex64>::zeros(basis.dim());
    let n_fact = factorial(n as u32);
    for pos in basis.block_range(n) {
        let alpha = basis.multi_index(pos);
        let ratio = BigRational::new(n_fact.clone(), multi_factorial(alpha));
        let scale = ratio.to_f64().expect("factorial ratio fits in f64").sqrt();
        let mut z = Complex64::new(scale, 0.0);
        for (j, &a) in alpha.entries().iter().enumerate() {
            z *= zeta[j].powu(a);
        }
        coeffs[pos] = z;
    }
    FockVector::new(basis, coeffs)
}

/// Change of coordinates from the normalized Fock basis `|α⟩` to the
/// normalized monomial basis `z^α/√(α!)` of the weighted-L² holomorphic
/// model. Both normalizations cancel exactly, so the matrix is the identity
/// relabeling; it is built from the two norm constants so the cancellation
/// is verified rather than assumed.
pub fn bargmann_matrix(basis: &Arc<FockBasis>) -> Op {
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for pos in 0..dim {
        let alpha = basis.multi_index(pos);
        // e^α ↦ z^α/√(|α|!), so |α⟩ = e^α/‖e^α‖ ↦ (‖e^α‖ √(|α|!))⁻¹ z^α,
        // and against z^α/√(α!) the coefficient is √(α!) / (‖e^α‖ √(|α|!)).
        let norm_sq = pure_tensor_norm_sq(alpha);
        let ratio = BigRational::new(multi_factorial(alpha), factorial(alpha.degree()));
        let entry = (ratio / norm_sq).to_f64().expect("rational fits").sqrt();
        m[(pos, pos)] = Complex64::new(entry, 0.0);
    }
    Op::from_matrix(basis, m, Some(0))
}

/// The lowering operator `∂/∂z_j` of the holomorphic model, realized on
/// normalized-monomial coefficients: `z^β/√(β!) ↦ β_j z^{β−e_j}/√(β!)`
/// re-expressed in the normalized monomials.
pub fn bargmann_annihilation(j: usize, basis: &Arc<FockBasis>) -> Result<Op> {
    let d = basis.d();
    if j == 0 || j > d {
        return Err(Error::CoordinateOutOfRange { j, d });
    }
    let col = j - 1;
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for pos in 0..dim {
        let beta = basis.multi_index(pos);
        if let Some(lower) = beta.lowered(col) {
            let target = basis.position(&lower).expect("lowered index in basis");
            let ratio = BigRational::new(multi_factorial(&lower), multi_factorial(beta));
            let entry = f64::from(beta.entries()[col]) * ratio.to_f64().expect("fits").sqrt();
            m[(target, pos)] = Complex64::new(entry, 0.0);
        }
    }
    Ok(Op::from_matrix(basis, m, Some(-1)))
}

/// `C(n, k)` as an exact integer, for block-size checks.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Brute-force oracle: `⟨Sym(e^α), Sym(e^α)⟩` by averaging pure-tensor
    /// inner products over all permutations of the `|α|` tensor slots.
    fn permutation_average_norm_sq(alpha: &MultiIndex) -> BigRational {
        let word: Vec<usize> = alpha
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat_n(j, a as usize))
            .collect();
        let n = word.len();
        if n == 0 {
            return BigRational::one();
        }
        let mut matches = 0u64;
        let mut total = 0u64;
        for perm in (0..n).permutations(n) {
            total += 1;
            if perm.iter().enumerate().all(|(k, &p)| word[p] == word[k]) {
                matches += 1;
            }
        }
        BigRational::new(BigInt::from(matches), BigInt::from(total))
    }

    #[test]
    fn enumerate_basis_examples() {
        let b = enumerate_basis(1, 2).unwrap();
        let entries: Vec<_> = b.indices().iter().map(|a| a.entries().to_vec()).collect();
        assert_eq!(entries, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(b.dim(), 3);

        // Oracle: brute-force count of α with |α| ≤ 2 in two variables.
        let mut count = 0;
        for a in 0..=2u32 {
            for b2 in 0..=2u32 {
                if a + b2 <= 2 {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 6);
        assert_eq!(enumerate_basis(2, 2).unwrap().dim(), 6);

        let b = enumerate_basis(3, 0).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.multi_index(0).entries(), &[0, 0, 0]);

        assert!(matches!(enumerate_basis(0, 3), Err(Error::ZeroDimension)));
    }

    #[test]
    fn basis_block_structure() {
        for d in 1..=3usize {
            for n_max in 0..=6usize {
                let b = enumerate_basis(d, n_max).unwrap();
                let dim = binomial(d + n_max, d).to_usize().unwrap();
                assert_eq!(b.dim(), dim);
                for n in 1..=n_max {
                    let size = b.block_range(n).len();
                    assert_eq!(BigInt::from(size), binomial(d + n - 1, d - 1));
                }
                // Degree blocks are contiguous and the position map is a bijection.
                for (pos, alpha) in b.indices().iter().enumerate() {
                    assert!(b.block_range(alpha.degree() as usize).contains(&pos));
                    assert_eq!(b.position(alpha), Some(pos));
                }
            }
        }
    }

    #[test]
    fn norm_formula_examples() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(pure_tensor_norm_sq(&MultiIndex::new(vec![1, 1])), half);
        for n in 0..6 {
            assert!(pure_tensor_norm_sq(&MultiIndex::new(vec![n])).is_one());
        }
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(pure_tensor_norm_sq(&MultiIndex::new(vec![2, 1])), third);
    }

    #[test]
    fn norm_formula_matches_permutation_average() {
        for d in 1..=3usize {
            let b = enumerate_basis(d, 5).unwrap();
            for alpha in b.indices() {
                assert_eq!(
                    pure_tensor_norm_sq(alpha),
                    permutation_average_norm_sq(alpha),
                    "α = {:?}",
                    alpha.entries()
                );
            }
        }
    }

    /// Brute-force oracle in the full tensor space: coefficient of the
    /// normalized `|α⟩` in `ζ^{⊗n}`, with `|α⟩` itself built by averaging
    /// permutations and normalizing by a brute-force inner product.
    fn tensor_power_coefficient(zeta: &[Complex64], n: usize, alpha: &MultiIndex) -> Complex64 {
        let d = zeta.len();
        let words: Vec<Vec<usize>> = (0..n).map(|_| 0..d).multi_cartesian_product().collect();
        let words = if n == 0 { vec![vec![]] } else { words };
        // ζ^{⊗n} over tensor words.
        let power: Vec<Complex64> = words
            .iter()
            .map(|w| w.iter().map(|&j| zeta[j]).product())
            .collect();
        // Sym(e^α) over tensor words.
        let base: Vec<usize> = alpha
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(j, &a)| std::iter::repeat_n(j, a as usize))
            .collect();
        let mut sym = vec![Complex64::new(0.0, 0.0); words.len()];
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let perms = if n == 0 { vec![vec![]] } else { perms };
        let total = perms.len() as f64;
        for perm in &perms {
            let word: Vec<usize> = perm.iter().map(|&p| base[p]).collect();
            let idx = words.iter().position(|w| *w == word).unwrap();
            sym[idx] += Complex64::new(1.0 / total, 0.0);
        }
        let sym_norm: f64 = sym.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let dot: Complex64 = power
            .iter()
            .zip(&sym)
            .map(|(a, b)| a * b.conj())
            .sum();
        dot / sym_norm
    }

    #[test]
    fn vector_power_examples() {
        let basis = Arc::new(enumerate_basis(3, 4).unwrap());
        let e1 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let v = vector_power_state(&e1, 3, &basis).unwrap();
        let top = basis.position(&MultiIndex::new(vec![3, 0, 0])).unwrap();
        assert!((v.coeffs()[top] - c(1.0, 0.0)).norm() < 1e-15);
        assert!(
            v.coeffs()
                .iter()
                .enumerate()
                .all(|(i, z)| i == top || z.norm() == 0.0)
        );

        let basis2 = Arc::new(enumerate_basis(2, 3).unwrap());
        let s = 1.0 / 2.0_f64.sqrt();
        let diag = [c(s, 0.0), c(s, 0.0)];
        let v1 = vector_power_state(&diag, 1, &basis2).unwrap();
        let block: Vec<_> = basis2.block_range(1).map(|i| v1.coeffs()[i]).collect();
        assert!((block[0] - c(s, 0.0)).norm() < 1e-15);
        assert!((block[1] - c(s, 0.0)).norm() < 1e-15);

        let v2 = vector_power_state(&diag, 2, &basis2).unwrap();
        let block: Vec<_> = basis2.block_range(2).map(|i| v2.coeffs()[i]).collect();
        // Ordered |2,0⟩, |1,1⟩, |0,2⟩.
        assert!((block[0] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((block[1] - c(s, 0.0)).norm() < 1e-15);
        assert!((block[2] - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vector_power_matches_tensor_expansion_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 1..=3usize {
            let basis = Arc::new(enumerate_basis(d, 4).unwrap());
            for n in 0..=4usize {
                let mut zeta: Vec<Complex64> = (0..d)
                    .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                let norm: f64 = zeta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                zeta.iter_mut().for_each(|z| *z /= norm);
                let v = vector_power_state(&zeta, n, &basis).unwrap();
                for pos in basis.block_range(n) {
                    let expected = tensor_power_coefficient(&zeta, n, basis.multi_index(pos));
                    assert!(
                        (v.coeffs()[pos] - expected).norm() < 1e-12,
                        "d={d} n={n} α={:?}",
                        basis.multi_index(pos).entries()
                    );
                }
            }
        }
    }

    #[test]
    fn vector_power_rejects_bad_input() {
        let basis = Arc::new(enumerate_basis(2, 3).unwrap());
        let not_unit = [c(1.0, 0.0), c(0.1, 0.0)];
        assert!(matches!(
            vector_power_state(&not_unit, 1, &basis),
            Err(Error::NonUnitVector { .. })
        ));
        let e1 = [c(1.0, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            vector_power_state(&e1, 4, &basis),
            Err(Error::DegreeOverflow { .. })
        ));
    }

    #[test]
    fn bargmann_matrix_is_unitary_diagonal_relabeling() {
        let basis = Arc::new(enumerate_basis(2, 4).unwrap());
        let t = bargmann_matrix(&basis);
        let m = t.matrix();
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                if i == j {
                    assert!(m[(i, j)].im == 0.0 && m[(i, j)].re > 0.0);
                } else {
                    assert!(m[(i, j)].norm() == 0.0);
                }
            }
        }
        let tt = t.compose(&t.adjoint()).unwrap();
        let id = crate::linop::identity(&basis);
        assert!(tt.sub(&id).unwrap().max_abs_entry() < 1e-12);

        // Vacuum goes to the constant monomial with coefficient 1.
        assert!((m[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);

        // e_1 e_2 (unnormalized, norm² = 1/2) maps to z_1 z_2 / √2: the
        // normalized |1,1⟩ column carries coefficient 1 against z^α/√(α!),
        // so the unnormalized tensor picks up exactly ‖e^α‖ = 1/√2.
        let pos = basis.position(&MultiIndex::new(vec![1, 1])).unwrap();
        let norm = pure_tensor_norm_sq(&MultiIndex::new(vec![1, 1]))
            .to_f64()
            .unwrap()
            .sqrt();
        let coeff_of_z1z2 = m[(pos, pos)].re * norm; // against z^α/√(α!) = z_1 z_2
        assert!((coeff_of_z1z2 - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn bargmann_annihilation_matches_fock_annihilation() {
        for d in 1..=3usize {
            let basis = Arc::new(enumerate_basis(d, 5).unwrap());
            let t = bargmann_matrix(&basis);
            for j in 1..=d {
                let tilde = bargmann_annihilation(j, &basis).unwrap();
                let conj = t.compose(&tilde).unwrap().compose(&t.adjoint()).unwrap();
                let a = crate::linop::annihilation(j, &basis).unwrap();
                assert!(conj.sub(&a).unwrap().max_abs_entry() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn vector_power_states_are_unit(seed in 0u64..1000, n in 0usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = 1 + (seed as usize) % 3;
            let basis = Arc::new(enumerate_basis(d, 6).unwrap());
            let mut zeta: Vec<Complex64> = (0..d)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = zeta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            prop_assume!(norm > 1e-3);
            zeta.iter_mut().for_each(|z| *z /= norm);
            let v = vector_power_state(&zeta, n, &basis).unwrap();
            prop_assert!((v.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn block_sizes_follow_binomial_recursion(d in 1usize..4, n_max in 1usize..7) {
            let big = enumerate_basis(d, n_max).unwrap();
            let small = enumerate_basis(d, n_max - 1).unwrap();
            let diff = big.dim() - small.dim();
            prop_assert_eq!(BigInt::from_usize(diff).unwrap(), binomial(d + n_max - 1, d - 1));
        }
    }
}
