//! Dense complex operators on a truncated Fock basis.
//!
//! Every operator here is the compression `P T P` of its infinite-dimensional
//! counterpart to the degrees `|α| ≤ n_max`. Compression commutes with
//! adjoints, so `shift_adjoint` is exactly the conjugate transpose of
//! `shift`, but words in several operators acquire artifacts in the top
//! degree blocks; identities are asserted against [`interior_projector`].

use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::fock::FockBasis;
use crate::{Error, Result};

/// Dense operator on a [`FockBasis`], with an optional degree-band tag:
/// `degree_shift = Some(k)` asserts the operator maps the degree-`n` block
/// into the degree-`(n+k)` block.
#[derive(Debug, Clone)]
pub struct Op {
    basis: Arc<FockBasis>,
    matrix: DMatrix<Complex64>,
    degree_shift: Option<i64>,
}

impl Op {
    pub fn from_matrix(
        basis: &Arc<FockBasis>,
        matrix: DMatrix<Complex64>,
        degree_shift: Option<i64>,
    ) -> Self {
        assert_eq!(matrix.nrows(), basis.dim(), "matrix size matches basis");
        assert_eq!(matrix.ncols(), basis.dim(), "matrix size matches basis");
        Self {
            basis: Arc::clone(basis),
            matrix,
            degree_shift,
        }
    }

    pub fn basis(&self) -> &Arc<FockBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn degree_shift(&self) -> Option<i64> {
        self.degree_shift
    }

    fn check_same_basis(&self, other: &Op) -> Result<()> {
        if self.basis.same_shape(&other.basis) {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn compose(&self, other: &Op) -> Result<Op> {
        self.check_same_basis(other)?;
        let tag = match (self.degree_shift, other.degree_shift) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(Op::from_matrix(&self.basis, &self.matrix * &other.matrix, tag))
    }

    pub fn add(&self, other: &Op) -> Result<Op> {
        self.check_same_basis(other)?;
        let tag = match (self.degree_shift, other.degree_shift) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        };
        Ok(Op::from_matrix(&self.basis, &self.matrix + &other.matrix, tag))
    }

    pub fn sub(&self, other: &Op) -> Result<Op> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Op {
        Op::from_matrix(&self.basis, &self.matrix * c, self.degree_shift)
    }

    pub fn adjoint(&self) -> Op {
        Op::from_matrix(&self.basis, self.matrix.adjoint(), self.degree_shift.map(|k| -k))
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Op) -> Result<Op> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Largest absolute entry; cheap surrogate for entrywise comparisons.
    pub fn max_abs_entry(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest absolute entry outside the declared degree band; exactly 0
    /// when the tag is consistent, and 0 by convention when untagged.
    pub fn degree_band_violation(&self) -> f64 {
        let Some(k) = self.degree_shift else {
            return 0.0;
        };
        let mut worst = 0.0f64;
        for row in 0..self.dim() {
            let row_degree = i64::from(self.basis.multi_index(row).degree());
            for col in 0..self.dim() {
                let col_degree = i64::from(self.basis.multi_index(col).degree());
                if row_degree != col_degree + k {
                    worst = worst.max(self.matrix[(row, col)].norm());
                }
            }
        }
        worst
    }
}

/// The identity operator.
pub fn identity(basis: &Arc<FockBasis>) -> Op {
    Op::from_matrix(basis, DMatrix::identity(basis.dim(), basis.dim()), Some(0))
}

/// The zero operator.
pub fn zero(basis: &Arc<FockBasis>) -> Op {
    Op::from_matrix(basis, DMatrix::zeros(basis.dim(), basis.dim()), Some(0))
}

/// Diagonal operator with entry `f(|α|)` at `|α⟩`.
pub fn degree_diagonal(basis: &Arc<FockBasis>, f: impl Fn(u32) -> Complex64) -> Op {
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for pos in 0..dim {
        m[(pos, pos)] = f(basis.multi_index(pos).degree());
    }
    Op::from_matrix(basis, m, Some(0))
}

/// Rank-one operator `|to⟩⟨from|`.
pub fn matrix_unit(basis: &Arc<FockBasis>, to: usize, from: usize) -> Op {
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    m[(to, from)] = Complex64::new(1.0, 0.0);
    let tag = i64::from(basis.multi_index(to).degree()) - i64::from(basis.multi_index(from).degree());
    Op::from_matrix(basis, m, Some(tag))
}

fn check_coordinate(j: usize, d: usize) -> Result<usize> {
    if j == 0 || j > d {
        Err(Error::CoordinateOutOfRange { j, d })
    } else {
        Ok(j - 1)
    }
}

/// The d-shift `S_j |α⟩ = √((α_j+1)/(|α|+1)) |α+e_j⟩`, compressed so the top
/// degree block maps to zero. Coordinates are 1-based.
pub fn shift(j: usize, basis: &Arc<FockBasis>) -> Result<Op> {
    let col = check_coordinate(j, basis.d())?;
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for pos in 0..dim {
        let alpha = basis.multi_index(pos);
        if (alpha.degree() as usize) >= basis.n_max() {
            continue;
        }
        let raised = alpha.raised(col);
        let target = basis.position(&raised).expect("raised index in basis");
        let num = f64::from(alpha.entries()[col] + 1);
        let den = f64::from(alpha.degree() + 1);
        m[(target, pos)] = Complex64::new((num / den).sqrt(), 0.0);
    }
    Ok(Op::from_matrix(basis, m, Some(1)))
}

/// The adjoint shift `S_j* |α⟩ = √(α_j/|α|) |α−e_j⟩` (zero when `α_j = 0`);
/// equals the conjugate transpose of [`shift`] exactly.
pub fn shift_adjoint(j: usize, basis: &Arc<FockBasis>) -> Result<Op> {
    Ok(shift(j, basis)?.adjoint())
}

/// The creation operator `A_j* |α⟩ = √(α_j+1) |α+e_j⟩`, compressed at the
/// top block.
pub fn creation(j: usize, basis: &Arc<FockBasis>) -> Result<Op> {
    let col = check_coordinate(j, basis.d())?;
    let dim = basis.dim();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for pos in 0..dim {
        let alpha = basis.multi_index(pos);
        if (alpha.degree() as usize) >= basis.n_max() {
            continue;
        }
        let raised = alpha.raised(col);
        let target = basis.position(&raised).expect("raised index in basis");
        m[(target, pos)] = Complex64::new(f64::from(alpha.entries()[col] + 1).sqrt(), 0.0);
    }
    Ok(Op::from_matrix(basis, m, Some(1)))
}

/// The annihilation operator `A_j |α⟩ = √(α_j) |α−e_j⟩`; the conjugate
/// transpose of [`creation`].
pub fn annihilation(j: usize, basis: &Arc<FockBasis>) -> Result<Op> {
    Ok(creation(j, basis)?.adjoint())
}

/// The number operator `N |α⟩ = |α| |α⟩`.
pub fn number(basis: &Arc<FockBasis>) -> Op {
    degree_diagonal(basis, |n| Complex64::new(f64::from(n), 0.0))
}

/// Orthogonal projector onto the degree blocks `0..=n_max − margin`, the
/// subspace free of truncation artifacts for words raising total degree by
/// at most `margin`.
pub fn interior_projector(basis: &Arc<FockBasis>, margin: usize) -> Result<Op> {
    if margin > basis.n_max() {
        return Err(Error::MarginOverflow {
            margin,
            n_max: basis.n_max(),
        });
    }
    let keep = (basis.n_max() - margin) as u32;
    Ok(degree_diagonal(basis, |n| {
        if n <= keep {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Operator norm (largest singular value), computed from the Hermitian
/// eigendecomposition of `T*T`.
pub fn operator_norm(t: &Op) -> f64 {
    let gram = t.matrix().adjoint() * t.matrix();
    let eig = SymmetricEigen::new(gram);
    eig.eigenvalues
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.max(0.0)))
        .sqrt()
}

/// Smallest singular value, for kernel checks.
pub fn smallest_singular_value(t: &Op) -> f64 {
    let gram = t.matrix().adjoint() * t.matrix();
    let eig = SymmetricEigen::new(gram);
    eig.eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v.max(0.0)))
        .sqrt()
}
