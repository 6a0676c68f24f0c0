//! Dense computational models of Toeplitz shift algebras on truncated
//! symmetric Fock spaces, together with the surrounding machinery they are
//! usually studied with: creation/annihilation operators, Hermitian
//! functional calculus, the complexified Heisenberg enveloping algebra in
//! exact arithmetic, its Fock-space and character representations, the
//! modulation flow by imaginary powers of the number operator, and
//! polynomial Weyl quantization.
//!
//! Everything lives on a finite truncation `|α| ≤ n_max` of the symmetric
//! Fock space. Operators are compressions to that truncation, so algebraic
//! identities hold exactly only away from the top degree blocks; the
//! [`linop::interior_projector`] isolates the artifact-free subspace and
//! every identity in the test suites is asserted there.

pub mod flow;
pub mod fock;
pub mod funcalc;
pub mod linop;
pub mod reps;
pub mod ualg;
pub mod weyl;

use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension d must be at least 1")]
    ZeroDimension,
    #[error("coordinate index {j} out of range 1..={d}")]
    CoordinateOutOfRange { j: usize, d: usize },
    #[error("degree {n} exceeds truncation degree {n_max}")]
    DegreeOverflow { n: usize, n_max: usize },
    #[error("margin {margin} exceeds truncation degree {n_max}")]
    MarginOverflow { margin: usize, n_max: usize },
    #[error("expected length {want}, got {got}")]
    LengthMismatch { got: usize, want: usize },
    #[error("vector norm deviates from 1 by {deviation:.3e}")]
    NonUnitVector { deviation: f64 },
    #[error("operators live on different bases")]
    BasisMismatch,
    #[error("operator is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("not a positive operator (eigenvalue {value:.3e})")]
    NotPositive { value: f64 },
    #[error("function value is not finite at eigenvalue {value:.6e}")]
    NonFiniteValue { value: f64 },
    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("central parameter must be nonzero; use a character instead")]
    ZeroCentralParameter,
    #[error("central parameter must be positive here")]
    NonPositiveCentralParameter,
    #[error("empty cutoff list")]
    EmptyCutoffs,
    #[error("empty grid")]
    EmptyGrid,
    #[error("grid must be strictly positive and strictly decreasing")]
    BadGrid,
    #[error("symbol contains the central variable; restrict it first")]
    CentralVariableInQuantization,
    #[error("quantized monomial family is rank deficient at this truncation")]
    RankDeficient,
}

/// Toolkit-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
