//! Functional calculus for Hermitian operators: `f(H)` and complex powers
//! `H^z` through the spectral decomposition.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::linop::{operator_norm, Op};
use crate::{Error, Result};

const HERMITIAN_TOLERANCE: f64 = 1e-10;
const POSITIVITY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues within this gap are treated as one degenerate cluster and the
/// function is applied to the cluster mean; the number operator's degree
/// blocks are exactly degenerate and must not be split by rounding.
const CLUSTER_GAP: f64 = 1e-9;

/// Spectral decomposition `H = U Λ U*` of a Hermitian operator, eigenvalues
/// ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
    source: Op,
}

impl SpectralDecomp {
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }

    pub fn source(&self) -> &Op {
        &self.source
    }

    /// Eigenvalues with members of each near-degenerate cluster replaced by
    /// the cluster mean.
    pub fn clustered_eigenvalues(&self) -> Vec<f64> {
        let n = self.eigenvalues.len();
        let mut out = Vec::with_capacity(n);
        let mut start = 0;
        while start < n {
            let mut end = start + 1;
            while end < n && self.eigenvalues[end] - self.eigenvalues[end - 1] < CLUSTER_GAP {
                end += 1;
            }
            let mean =
                self.eigenvalues.rows(start, end - start).sum() / (end - start) as f64;
            out.extend(std::iter::repeat_n(mean, end - start));
            start = end;
        }
        out
    }
}

/// Decomposes a Hermitian operator; rejects inputs with `‖H − H*‖ > 1e-10`.
pub fn hermitian_decompose(h: &Op) -> Result<SpectralDecomp> {
    let deviation = operator_norm(&h.sub(&h.adjoint())?);
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian { deviation });
    }
    let eig = SymmetricEigen::new(h.matrix().clone());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = DVector::from_iterator(
        order.len(),
        order.iter().map(|&i| eig.eigenvalues[i]),
    );
    let columns: Vec<_> = order.iter().map(|&i| eig.eigenvectors.column(i)).collect();
    let eigenvectors = DMatrix::from_columns(&columns);
    Ok(SpectralDecomp {
        eigenvalues,
        eigenvectors,
        source: h.clone(),
    })
}

/// `f(H) = U f(Λ) U*`, with `f` evaluated at clustered eigenvalues; rejects
/// non-finite values of `f` on the spectrum.
pub fn apply_function(
    decomp: &SpectralDecomp,
    f: impl Fn(f64) -> Complex64,
) -> Result<Op> {
    let clustered = decomp.clustered_eigenvalues();
    let mut values = Vec::with_capacity(clustered.len());
    for &lambda in &clustered {
        let value = f(lambda);
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::NonFiniteValue { value: lambda });
        }
        values.push(value);
    }
    let u = decomp.eigenvectors();
    let scaled = DMatrix::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)] * values[c]);
    let matrix = scaled * u.adjoint();
    Ok(Op::from_matrix(decomp.source().basis(), matrix, None))
}

/// `H^z = U exp(z log Λ) U*` for Hermitian `H` with strictly positive
/// spectrum; unitary when `Re z = 0`. Refuses non-positive operators.
pub fn complex_power(h: &Op, z: Complex64) -> Result<Op> {
    let decomp = hermitian_decompose(h)?;
    let min = decomp
        .eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v));
    if min <= POSITIVITY_TOLERANCE {
        return Err(Error::NotPositive { value: min });
    }
    apply_function(&decomp, |lambda| (z * lambda.ln()).exp())
}
