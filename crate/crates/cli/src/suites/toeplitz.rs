//! Shift-algebra checks: basis combinatorics, the displayed shift
//! relations, functional-calculus recovery of the number operator, and the
//! Bargmann coefficient correspondence.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use fockalg::fock::{
    bargmann_annihilation, bargmann_matrix, binomial, enumerate_basis, pure_tensor_norm_sq,
    MultiIndex,
};
use fockalg::funcalc::{apply_function, hermitian_decompose};
use fockalg::linop::{
    annihilation, creation, identity, number, operator_norm, shift, zero, Op,
};

use crate::config::SuiteConfig;
use crate::report::{Record, PLUMBING};

use super::{basis, interior_max_abs, Check};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn checks() -> Vec<Check> {
    vec![
        basis_dimensions,
        norms_exact,
        coburn_relation,
        commutator_relation,
        shift_commute,
        d1_isometry,
        unitality,
        shift_norms,
        ccr,
        number_sum,
        bargmann,
        commutator_block_decay,
        shift_injective,
        degree_bands,
    ]
}

fn basis_dimensions(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut mismatches = 0u32;
    for &d in &cfg.d_list {
        let b = enumerate_basis(d, cfg.n_max)?;
        if BigInt::from(b.dim()) != binomial(d + cfg.n_max, d) {
            mismatches += 1;
        }
        for n in 1..=cfg.n_max {
            if BigInt::from(b.block_range(n).len()) != binomial(d + n - 1, d - 1) {
                mismatches += 1;
            }
        }
    }
    Ok(vec![Record::le(
        "toeplitz.basis_dims",
        PLUMBING,
        format!("d={:?};n_max={}", cfg.d_list, cfg.n_max),
        f64::from(mismatches),
        0.0,
    )])
}

/// Brute-force permutation-average oracle for the pure-tensor norms.
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
    let mut indices: Vec<usize> = (0..n).collect();
    let mut matches = 0u64;
    let mut total = 0u64;
    permute(&mut indices, 0, &mut |perm| {
        total += 1;
        if perm.iter().enumerate().all(|(k, &p)| word[p] == word[k]) {
            matches += 1;
        }
    });
    return BigRational::new(BigInt::from(matches), BigInt::from(total));

    fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
        if k == items.len() {
            visit(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            permute(items, k + 1, visit);
            items.swap(k, i);
        }
    }
}

fn norms_exact(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut mismatches = 0u32;
    let mut checked = 0u32;
    for d in 1..=3usize {
        let b = enumerate_basis(d, 5)?;
        for alpha in b.indices() {
            checked += 1;
            if pure_tensor_norm_sq(alpha) != permutation_average_norm_sq(alpha) {
                mismatches += 1;
            }
        }
    }
    Ok(vec![Record::le(
        "toeplitz.norms_exact",
        "||e^alpha||^2 = alpha!/|alpha|!",
        format!("d<=3;|alpha|<=5;checked={checked}"),
        f64::from(mismatches),
        0.0,
    )])
}

fn coburn_relation(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        let mut sum = zero(&b);
        for j in 1..=d {
            let s = shift(j, &b)?;
            sum = sum.add(&s.adjoint().compose(&s)?)?;
        }
        let rhs = fockalg::linop::degree_diagonal(&b, |n| {
            c64((d as f64 + f64::from(n)) / (1.0 + f64::from(n)), 0.0)
        });
        let dev = interior_max_abs(&sum.sub(&rhs)?, 2);
        out.push(Record::le(
            "toeplitz.coburn",
            "sum_j S_j* S_j = (d+N)(1+N)^-1",
            format!("d={d};n_max={}", cfg.n_max),
            dev,
            cfg.bound("toeplitz.coburn", 1e-12),
        ));
    }
    Ok(out)
}

fn commutator_relation(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        let inv = fockalg::linop::degree_diagonal(&b, |n| c64(1.0 / (1.0 + f64::from(n)), 0.0));
        let mut worst = 0.0f64;
        for i in 1..=d {
            for j in 1..=d {
                let si = shift(i, &b)?;
                let sj = shift(j, &b)?;
                let lhs = sj.adjoint().commutator(&si)?;
                let delta = if i == j { identity(&b) } else { zero(&b) };
                let rhs = inv.compose(&delta.sub(&si.compose(&sj.adjoint())?)?)?;
                worst = worst.max(interior_max_abs(&lhs.sub(&rhs)?, 2));
            }
        }
        out.push(Record::le(
            "toeplitz.commutator",
            "[S_j*, S_i] = (1+N)^-1 (delta_ij - S_i S_j*)",
            format!("d={d};n_max={}", cfg.n_max),
            worst,
            cfg.bound("toeplitz.commutator", 1e-12),
        ));
    }
    Ok(out)
}

fn shift_commute(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        for i in 1..=d {
            for j in (i + 1)..=d {
                let comm = shift(i, &b)?.commutator(&shift(j, &b)?)?;
                worst = worst.max(comm.max_abs_entry());
            }
        }
    }
    Ok(vec![Record::le(
        "toeplitz.shift_commute",
        "[S_j, S_i] = 0",
        format!("d={:?}", cfg.d_list),
        worst,
        cfg.bound("toeplitz.shift_commute", 1e-14),
    )])
}

fn d1_isometry(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, cfg.n_max);
    let s = shift(1, &b)?;
    let dev = interior_max_abs(&s.adjoint().compose(&s)?.sub(&identity(&b))?, 1);
    Ok(vec![Record::le(
        "toeplitz.d1_isometry",
        "S_1* S_1 = Id (d = 1)",
        format!("n_max={}", cfg.n_max),
        dev,
        cfg.bound("toeplitz.d1_isometry", 1e-15),
    )])
}

fn unitality(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for &d in cfg.d_list.iter().filter(|&&d| d >= 2) {
        let b = basis(d, cfg.n_max);
        let mut sum = zero(&b);
        for j in 1..=d {
            let s = shift(j, &b)?;
            sum = sum.add(&s.adjoint().compose(&s)?)?;
        }
        let decomp = hermitian_decompose(&sum)?;
        let df = d as f64;
        let f = apply_function(&decomp, |x| c64((df - x) / (x - 1.0), 0.0))?;
        let dev = interior_max_abs(&f.sub(&number(&b))?, 1);
        out.push(Record::le(
            "toeplitz.unitality",
            "f(sum_j S_j* S_j) = N with f(x) = (d-x)/(x-1)",
            format!("d={d};n_max={}", cfg.n_max),
            dev,
            cfg.bound("toeplitz.unitality", 1e-10),
        ));
    }
    Ok(out)
}

fn shift_norms(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        for j in 1..=d {
            worst = worst.max((operator_norm(&shift(j, &b)?) - 1.0).abs());
        }
    }
    Ok(vec![Record::le(
        "toeplitz.shift_norm",
        "||S_j|| = 1",
        format!("d={:?}", cfg.d_list),
        worst,
        cfg.bound("toeplitz.shift_norm", 1e-12),
    )])
}

fn ccr(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        for j in 1..=d {
            for k in 1..=d {
                let a = annihilation(j, &b)?;
                let ac = creation(k, &b)?;
                let delta = if j == k { identity(&b) } else { zero(&b) };
                let dev = interior_max_abs(&a.commutator(&ac)?.sub(&delta)?, 2);
                worst = worst.max(dev);
            }
        }
    }
    Ok(vec![Record::le(
        "toeplitz.ccr",
        "[A_j, A_k*] = delta_jk Id",
        format!("d={:?};n_max={}", cfg.d_list, cfg.n_max),
        worst,
        cfg.bound("toeplitz.ccr", 1e-12),
    )])
}

fn number_sum(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        let mut sum = zero(&b);
        for j in 1..=d {
            sum = sum.add(&creation(j, &b)?.compose(&annihilation(j, &b)?)?)?;
        }
        worst = worst.max(sum.sub(&number(&b))?.max_abs_entry());
    }
    Ok(vec![Record::le(
        "toeplitz.number_sum",
        "N = sum_j A_j* A_j",
        format!("d={:?}", cfg.d_list),
        worst,
        cfg.bound("toeplitz.number_sum", 1e-12),
    )])
}

fn bargmann(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut unit_dev = 0.0f64;
    let mut conj_dev = 0.0f64;
    let mut off_diag = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        let t = bargmann_matrix(&b);
        unit_dev = unit_dev.max(
            t.compose(&t.adjoint())?
                .sub(&identity(&b))?
                .max_abs_entry(),
        );
        for r in 0..b.dim() {
            for c in 0..b.dim() {
                if r != c {
                    off_diag = off_diag.max(t.matrix()[(r, c)].norm());
                }
            }
        }
        for j in 1..=d {
            let tilde = bargmann_annihilation(j, &b)?;
            let conj = t.compose(&tilde)?.compose(&t.adjoint())?;
            conj_dev = conj_dev.max(conj.sub(&annihilation(j, &b)?)?.max_abs_entry());
        }
    }
    Ok(vec![
        Record::le(
            "toeplitz.bargmann_unitary",
            "T T* = Id, T diagonal with positive entries",
            format!("d={:?};off_diag={off_diag:.1e}", cfg.d_list),
            unit_dev.max(off_diag),
            cfg.bound("toeplitz.bargmann_unitary", 1e-12),
        ),
        Record::le(
            "toeplitz.bargmann_conjugation",
            "T (d/dz_j) T* = A_j",
            format!("d={:?}", cfg.d_list),
            conj_dev,
            cfg.bound("toeplitz.bargmann_conjugation", 1e-12),
        ),
    ])
}

fn commutator_block_decay(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    // Fitted C in ||[S_i, S_j*]|_block n|| <= C/(n+1), over degrees below
    // the top block (where compression is inert).
    let mut fitted = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        for i in 1..=d {
            for j in 1..=d {
                let comm = shift(i, &b)?.commutator(&shift(j, &b)?.adjoint())?;
                for n in 0..b.n_max() {
                    let range = b.block_range(n);
                    let block = comm
                        .matrix()
                        .view((range.start, range.start), (range.len(), range.len()))
                        .into_owned();
                    let gram = block.adjoint() * &block;
                    let norm = nalgebra::SymmetricEigen::new(gram)
                        .eigenvalues
                        .iter()
                        .fold(0.0f64, |acc, &v| acc.max(v.max(0.0)))
                        .sqrt();
                    fitted = fitted.max(norm * (n as f64 + 1.0));
                }
            }
        }
    }
    Ok(vec![Record::le(
        "toeplitz.commutator_block_decay",
        "||[S_i, S_j*]| degree block n|| <= C/(n+1)",
        format!("d={:?};fitted_C={fitted:.3}", cfg.d_list),
        fitted,
        cfg.bound("toeplitz.commutator_block_decay", 2.0),
    )])
}

fn shift_injective(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    // The interior columns of S_j are orthogonal with norms down to
    // sqrt(1/n_max); the kernel on the interior is trivial.
    let mut smallest = f64::INFINITY;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        for j in 1..=d {
            let s = shift(j, &b)?;
            let interior: Vec<usize> = (0..b.dim())
                .filter(|&pos| (b.multi_index(pos).degree() as usize) < b.n_max())
                .collect();
            let cols = nalgebra::DMatrix::from_fn(b.dim(), interior.len(), |r, k| {
                s.matrix()[(r, interior[k])]
            });
            let gram = cols.adjoint() * &cols;
            let sigma = nalgebra::SymmetricEigen::new(gram)
                .eigenvalues
                .iter()
                .fold(f64::INFINITY, |acc, &v| acc.min(v.max(0.0)))
                .sqrt();
            smallest = smallest.min(sigma);
        }
    }
    let floor = (1.0 / cfg.n_max as f64).sqrt() - 1e-12;
    Ok(vec![Record::ge(
        "toeplitz.shift_injective",
        "S_j x = 0 with deg x <= n_max-1 implies x = 0",
        format!("d={:?};sigma_min={smallest:.4}", cfg.d_list),
        smallest,
        cfg.bound("toeplitz.shift_injective", floor),
    )])
}

fn degree_bands(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in &cfg.d_list {
        let b = basis(d, cfg.n_max);
        let ops: Vec<Op> = vec![
            shift(1, &b)?,
            shift(1, &b)?.adjoint(),
            creation(d, &b)?,
            annihilation(d, &b)?,
            number(&b),
            shift(1, &b)?.compose(&creation(d, &b)?)?,
        ];
        for op in &ops {
            worst = worst.max(op.degree_band_violation());
        }
    }
    Ok(vec![Record::le(
        "toeplitz.degree_bands",
        PLUMBING,
        format!("d={:?}", cfg.d_list),
        worst,
        0.0,
    )])
}
