//! Verification suites: each executes a module's checks over the configured
//! parameter grids and returns report records. Checks run in a work pool;
//! records are merged in a fixed order and every check derives its RNG from
//! the config seed and its own id, so reports are deterministic.

pub mod flow;
pub mod reps;
pub mod toeplitz;
pub mod ualg;
pub mod weyl;

use std::sync::Arc;

use anyhow::bail;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fockalg::fock::{enumerate_basis, FockBasis};
use fockalg::linop::Op;

use crate::config::SuiteConfig;
use crate::report::{Record, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Toeplitz,
    Reps,
    Flow,
    Ualg,
    Weyl,
    All,
}

impl SuiteName {
    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Toeplitz => "toeplitz",
            SuiteName::Reps => "reps",
            SuiteName::Flow => "flow",
            SuiteName::Ualg => "ualg",
            SuiteName::Weyl => "weyl",
            SuiteName::All => "all",
        }
    }
}

impl std::str::FromStr for SuiteName {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Self> {
        match s {
            "toeplitz" => Ok(Self::Toeplitz),
            "reps" => Ok(Self::Reps),
            "flow" => Ok(Self::Flow),
            "ualg" => Ok(Self::Ualg),
            "weyl" => Ok(Self::Weyl),
            "all" => Ok(Self::All),
            other => bail!("unknown suite `{other}` (expected toeplitz|reps|flow|ualg|weyl|all)"),
        }
    }
}

pub type Check = fn(&SuiteConfig) -> anyhow::Result<Vec<Record>>;

fn checks_for(name: SuiteName) -> Vec<Check> {
    match name {
        SuiteName::Toeplitz => toeplitz::checks(),
        SuiteName::Reps => reps::checks(),
        SuiteName::Flow => flow::checks(),
        SuiteName::Ualg => ualg::checks(),
        SuiteName::Weyl => weyl::checks(),
        SuiteName::All => {
            let mut all = toeplitz::checks();
            all.extend(reps::checks());
            all.extend(flow::checks());
            all.extend(ualg::checks());
            all.extend(weyl::checks());
            all
        }
    }
}

/// Runs the named suite's checks over the configured grids. Records come
/// back in the fixed check order regardless of scheduling.
pub fn run_suite(name: SuiteName, config: &SuiteConfig) -> anyhow::Result<Report> {
    config.validate()?;
    let checks = checks_for(name);
    let results: anyhow::Result<Vec<Vec<Record>>> =
        checks.par_iter().map(|check| check(config)).collect();
    let records = results?.into_iter().flatten().collect();
    Ok(Report::new(name.as_str(), config, records))
}

/// Deterministic per-check RNG: the seed is mixed with the check label.
pub(crate) fn rng_for(seed: u64, label: &str) -> ChaCha8Rng {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ hash)
}

pub(crate) fn basis(d: usize, n_max: usize) -> Arc<FockBasis> {
    Arc::new(enumerate_basis(d, n_max).expect("valid basis parameters"))
}

/// Max absolute entry of the interior corner (both degrees ≤ n_max − margin).
pub(crate) fn interior_max_abs(op: &Op, margin: usize) -> f64 {
    let b = op.basis();
    let keep = b.block_range(b.n_max() - margin).end;
    op.matrix()
        .view((0, 0), (keep, keep))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Frobenius norm of the interior corner: a cheap upper bound on the
/// interior operator norm, so bounds checked against it are conservative.
pub(crate) fn interior_frobenius(op: &Op, margin: usize) -> f64 {
    let b = op.basis();
    let keep = b.block_range(b.n_max() - margin).end;
    op.matrix()
        .view((0, 0), (keep, keep))
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Operator norm of the interior corner.
pub(crate) fn interior_operator_norm(op: &Op, margin: usize) -> f64 {
    let b = op.basis();
    let keep = b.block_range(b.n_max() - margin).end;
    let corner = op.matrix().view((0, 0), (keep, keep)).into_owned();
    let gram = corner.adjoint() * &corner;
    nalgebra::SymmetricEigen::new(gram)
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, &v| acc.max(v.max(0.0)))
        .sqrt()
}

pub(crate) fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub(crate) fn random_unit_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..d).map(|_| random_complex(rng)).collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in ["toeplitz", "reps", "flow", "ualg", "weyl", "all"] {
            let parsed: SuiteName = name.parse().unwrap();
            assert_eq!(parsed.as_str(), name);
        }
        assert!("nope".parse::<SuiteName>().is_err());
    }

    #[test]
    fn rng_is_label_dependent_and_stable() {
        let mut a = rng_for(7, "x");
        let mut b = rng_for(7, "x");
        let mut c = rng_for(7, "y");
        let va: f64 = a.gen();
        assert_eq!(va, b.gen::<f64>());
        assert_ne!(va, c.gen::<f64>());
    }
}
