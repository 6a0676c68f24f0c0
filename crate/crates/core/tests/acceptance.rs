//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Tolerances are pinned in the assertions.

use std::sync::Arc;
use std::time::Instant;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fockalg::flow::{
    alpha, hermitian_pairing, phase_gap, quotient_symbol, shift_combination, symbol_probe,
    tail_report,
};
use fockalg::fock::{
    bargmann_annihilation, bargmann_matrix, enumerate_basis, pure_tensor_norm_sq, FockBasis,
    MultiIndex,
};
use fockalg::funcalc::{complex_power, hermitian_decompose};
use fockalg::linop::{
    annihilation, creation, degree_diagonal, identity, matrix_unit, number, shift, zero, Op,
};
use fockalg::reps::{
    affine_spectrum_report, evaluate, rep_character, rep_fock, shift_multiplier_identity, Rep,
};
use fockalg::ualg::{
    delta_minus, delta_plus, frame_change, generator, harmonic_oscillator, pbw_normal_form, Coeff,
    Gen, HeisFrame, UeaElement,
};
use fockalg::weyl::{
    delta_symbol, weyl_dequantize, weyl_product, weyl_quantize, Dequantizer, PolySymbol,
    QuantizationFrame, Sign,
};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn basis(d: usize, n_max: usize) -> Arc<FockBasis> {
    Arc::new(enumerate_basis(d, n_max).unwrap())
}

/// Max absolute entry over the interior corner (degrees ≤ n_max − margin on
/// both sides); the projector is a 0/1 degree diagonal, so this is an entry
/// scan rather than a pair of matrix products.
fn interior_max_abs(op: &Op, margin: usize) -> f64 {
    let b = op.basis();
    let keep = b.block_range(b.n_max() - margin).end;
    op.matrix()
        .view((0, 0), (keep, keep))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Operator norm of the interior compression.
fn interior_operator_norm(op: &Op, margin: usize) -> f64 {
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

fn report(criterion: &str, detail: &str) {
    println!("criterion {criterion}: PASS — {detail}");
}

#[test]
fn criterion_01_shift_algebra_relations() {
    let started = Instant::now();
    let mut worst = 0.0f64;
    for d in 1..=3usize {
        let b = basis(d, 10);
        let keep = b.block_range(b.n_max() - 2).end;
        let shifts: Vec<Op> = (1..=d).map(|j| shift(j, &b).unwrap()).collect();

        // For each pair, S_j* S_i (the commutator's first word) and S_i S_j*
        // (shared between the commutator and the right-hand side); the
        // (1+N)^{-1} factor acts as a row scaling.
        let mut coburn_corner = DMatrix::<Complex64>::zeros(keep, keep);
        for i in 1..=d {
            for j in 1..=d {
                let si = &shifts[i - 1];
                let sj_adj = shifts[j - 1].adjoint();
                let up_down = sj_adj.compose(si).unwrap();
                let down_up = si.compose(&sj_adj).unwrap();
                if i == j {
                    coburn_corner += up_down.matrix().view((0, 0), (keep, keep));
                }
                for r in 0..keep {
                    let scale = 1.0 / (1.0 + f64::from(b.multi_index(r).degree()));
                    for c in 0..keep {
                        let delta = if i == j && r == c { 1.0 } else { 0.0 };
                        let lhs = up_down.matrix()[(r, c)] - down_up.matrix()[(r, c)];
                        let rhs = (c64(delta, 0.0) - down_up.matrix()[(r, c)]) * scale;
                        let dev = (lhs - rhs).norm();
                        assert!(
                            dev <= 1e-12,
                            "commutator d={d} (i,j)=({i},{j}) entry ({r},{c}): {dev:.3e}"
                        );
                        worst = worst.max(dev);
                    }
                }
            }
        }
        for r in 0..keep {
            let n = f64::from(b.multi_index(r).degree());
            let expected = (d as f64 + n) / (1.0 + n);
            for c in 0..keep {
                let want = if r == c { c64(expected, 0.0) } else { Complex64::default() };
                let dev = (coburn_corner[(r, c)] - want).norm();
                assert!(dev <= 1e-12, "sum rule d={d} entry ({r},{c}): {dev:.3e}");
                worst = worst.max(dev);
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?}");
    report(
        "01 shift algebra",
        &format!("sum rule and commutator relation ≤ 1e-12 (worst {worst:.2e}, {elapsed:?})"),
    );
}

/// Independent oracle: average pure-tensor inner products over all slot
/// permutations.
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

#[test]
fn criterion_02_basis_norms_exact() {
    let mut checked = 0usize;
    for d in 1..=3usize {
        let b = basis(d, 5);
        for alpha in b.indices() {
            assert_eq!(
                pure_tensor_norm_sq(alpha),
                permutation_average_norm_sq(alpha),
                "α = {:?}",
                alpha.entries()
            );
            checked += 1;
        }
    }
    report(
        "02 basis norms",
        &format!("{checked} multi-indices match the permutation-average oracle exactly"),
    );
}

#[test]
fn criterion_03_ccr_and_bargmann() {
    let mut worst = 0.0f64;
    for d in 1..=3usize {
        let b = basis(d, 10);
        for j in 1..=d {
            for k in 1..=d {
                let aj = annihilation(j, &b).unwrap();
                let akc = creation(k, &b).unwrap();
                let delta = if j == k { identity(&b) } else { zero(&b) };
                let dev =
                    interior_max_abs(&aj.commutator(&akc).unwrap().sub(&delta).unwrap(), 2);
                assert!(dev <= 1e-12, "CCR d={d} ({j},{k}): {dev:.3e}");
                worst = worst.max(dev);
            }
        }
        let t = bargmann_matrix(&b);
        for j in 1..=d {
            let tilde = bargmann_annihilation(j, &b).unwrap();
            let conj = t.compose(&tilde).unwrap().compose(&t.adjoint()).unwrap();
            let dev = conj
                .sub(&annihilation(j, &b).unwrap())
                .unwrap()
                .max_abs_entry();
            assert!(dev <= 1e-12, "Bargmann d={d} j={j}: {dev:.3e}");
            worst = worst.max(dev);
        }
    }
    report(
        "03 CCR and Bargmann conjugation",
        &format!("both ≤ 1e-12 (worst {worst:.2e})"),
    );
}

fn interior_block_spectrum(op: &Op, margin: usize) -> Vec<f64> {
    let b = op.basis();
    let keep = b.block_range(b.n_max() - margin).end;
    let block = op.matrix().view((0, 0), (keep, keep)).into_owned();
    let eig = nalgebra::SymmetricEigen::new(block);
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

#[test]
fn criterion_04_fiber_spectra() {
    let mut worst = 0.0f64;
    for d in 1..=2usize {
        let b = basis(d, 10);
        for lambda in [0.01, 0.5, 1.0, 3.0] {
            let rep = Rep::Fock(rep_fock(lambda, &b).unwrap());

            let delta = evaluate(&delta_plus(d).unwrap(), &rep)
                .unwrap()
                .into_operator();
            let got = interior_block_spectrum(&delta, 2);
            let mut expected: Vec<f64> = Vec::new();
            for n in 0..=(b.n_max() - 2) {
                let mult = b.block_range(n).len();
                expected.extend(std::iter::repeat_n(lambda * (n as f64 + 1.0), mult));
            }
            expected.sort_by(f64::total_cmp);
            assert_eq!(got.len(), expected.len());
            for (g, e) in got.iter().zip(&expected) {
                let rel = (g - e).abs() / e.abs();
                assert!(rel <= 1e-11, "Δ₊ d={d} λ={lambda}: rel {rel:.3e}");
                worst = worst.max(rel);
            }

            let osc = evaluate(&harmonic_oscillator(d).unwrap(), &rep)
                .unwrap()
                .into_operator();
            let got = interior_block_spectrum(&osc, 2);
            let mut expected: Vec<f64> = Vec::new();
            for n in 0..=(b.n_max() - 2) {
                let mult = b.block_range(n).len();
                expected.extend(
                    std::iter::repeat_n(lambda.abs() * (n as f64 + d as f64 / 2.0), mult),
                );
            }
            expected.sort_by(f64::total_cmp);
            for (g, e) in got.iter().zip(&expected) {
                let rel = (g - e).abs() / e.abs().max(1e-300);
                assert!(rel <= 1e-11, "oscillator d={d} λ={lambda}: rel {rel:.3e}");
                worst = worst.max(rel);
            }
        }
    }
    report(
        "04 fiber spectra",
        &format!("λ(n+1) and |λ|(n+d/2) with block multiplicities, rel ≤ 1e-11 (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_05_shift_multiplier_identity() {
    let mut worst = 0.0f64;
    for d in 1..=2usize {
        let b = basis(d, 10);
        for lambda in [0.01, 0.5, 1.0, 3.0] {
            for j in 1..=d {
                let residual = shift_multiplier_identity(j, lambda, &b).unwrap();
                assert!(residual <= 1e-10, "d={d} λ={lambda} j={j}: {residual:.3e}");
                worst = worst.max(residual);
            }
        }
    }
    report(
        "05 shift multiplier",
        &format!("‖π_λ(−iW_j)π_λ(Δ₊)^(−1/2) − S_j‖ ≤ 1e-10 across the λ-grid (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_06_unitary_family() {
    let mut worst = 0.0f64;
    for d in 1..=2usize {
        let b = basis(d, 10);
        for lambda in [0.01, 0.5, 1.0, 3.0] {
            let rep = Rep::Fock(rep_fock(lambda, &b).unwrap());
            let delta = evaluate(&delta_plus(d).unwrap(), &rep)
                .unwrap()
                .into_operator();
            for t in [-3.0, 0.5, 7.0] {
                let lhs = complex_power(&delta, c64(0.0, t / 2.0)).unwrap();
                let scalar = c64(0.0, t / 2.0 * lambda.ln()).exp();
                let rhs = degree_diagonal(&b, |n| {
                    scalar * c64(0.0, t / 2.0 * (1.0 + f64::from(n)).ln()).exp()
                });
                let dev = interior_operator_norm(&lhs.sub(&rhs).unwrap(), 2);
                assert!(dev <= 1e-10, "d={d} λ={lambda} t={t}: {dev:.3e}");
                worst = worst.max(dev);
            }
        }
    }

    // Character side, as scalars.
    let mu = [0.8, -0.3, 1.2, 0.4];
    let ch = rep_character(&mu).unwrap();
    let base = ch.half_mu_norm_sq();
    let mu_norm = (2.0 * base).sqrt();
    for t in [-3.0, 0.5, 7.0] {
        let lhs = c64(0.0, t / 2.0 * base.ln()).exp();
        let rhs = c64(0.0, -t / 2.0 * 2.0_f64.ln()).exp() * c64(0.0, t * mu_norm.ln()).exp();
        assert!((lhs - rhs).norm() < 1e-14, "character side t={t}");
    }
    report(
        "06 unitary family",
        &format!("π_λ(Δ₊)^(it/2) = λ^(it/2)(N+1)^(it/2) ≤ 1e-10 (worst {worst:.2e}); character side exact"),
    );
}

#[test]
fn criterion_07_tail_norms() {
    let started = Instant::now();
    let b = basis(1, 60);
    let mut worst_gap = 0.0f64;
    let mut slopes = Vec::new();
    for t in [0.5, 1.0, 5.0] {
        let rep = tail_report(1, t, &b, &[5, 10, 20, 40]).unwrap();
        for (m, f) in rep.matrix_norms.iter().zip(&rep.formula_norms) {
            let gap = (m.unwrap() - f).abs();
            assert!(gap <= 1e-10, "t={t}: gap {gap:.3e}");
            worst_gap = worst_gap.max(gap);
        }

        let cutoffs = [100usize, 178, 316, 562, 1000, 1778, 3162, 5623, 10_000];
        let rep = tail_report(1, t, &b, &cutoffs).unwrap();
        let slope = rep.fitted_slope.unwrap();
        assert!((slope + 1.0).abs() <= 0.1, "t={t}: slope {slope}");
        slopes.push(slope);
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "runtime {elapsed:?}");
    report(
        "07 tail norms",
        &format!(
            "matrix/formula gap ≤ 1e-10 (worst {worst_gap:.2e}); slopes {slopes:?} within −1 ± 0.1 ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_08_rank_one_phase() {
    let b = basis(1, 30);
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.gen_range(0..=30usize);
        let m = rng.gen_range(0..=30usize);
        let t: f64 = rng.gen_range(-8.0..8.0);
        let p = matrix_unit(&b, m, n);
        let moved = alpha(&p, t).unwrap();
        let phase = c64(0.0, t / 2.0 * ((m as f64 + 1.0) / (n as f64 + 1.0)).ln()).exp();
        let dev = moved.sub(&p.scale(phase)).unwrap().max_abs_entry();
        assert!(dev <= 1e-12, "(n,m,t)=({n},{m},{t}): {dev:.3e}");
        worst = worst.max(dev);
    }
    report(
        "08 rank-one phase",
        &format!("α_t(P_nm) phase ((m+1)/(n+1))^(it/2) ≤ 1e-12 on 20 samples (worst {worst:.2e})"),
    );
}

#[test]
fn criterion_09_pbw_delta_rewrites() {
    for d in 1..=4usize {
        let frame = HeisFrame::new(d).unwrap();
        let mut ww_bar = UeaElement::zero(d);
        let mut bar_ww = UeaElement::zero(d);
        for j in 1..=d {
            ww_bar = ww_bar
                .add(&frame.w(j).unwrap().mul(&frame.w_bar(j).unwrap()).unwrap())
                .unwrap();
            bar_ww = bar_ww
                .add(&frame.w_bar(j).unwrap().mul(&frame.w(j).unwrap()).unwrap())
                .unwrap();
        }
        // Δ₊ = −Σ W_j W̄_j − iZ, exactly.
        let rewrite = ww_bar
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::i().neg()))
            .unwrap();
        assert_eq!(rewrite, delta_plus(d).unwrap(), "WW̄ form, d={d}");

        // The W̄W-ordered form carries +i(d−1)Z, exactly.
        let computed = bar_ww
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::i().mul(&Coeff::from_int(d as i64 - 1))))
            .unwrap();
        assert_eq!(computed, delta_plus(d).unwrap(), "W̄W form, d={d}");

        // The −i(d+1)Z coefficient is inconsistent with the definition.
        let printed = bar_ww
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::imag_ratio(-(d as i64 + 1), 1)))
            .unwrap();
        assert_ne!(printed, delta_plus(d).unwrap(), "flagged variant, d={d}");
    }

    // Frame invariance under random unitaries.
    let d = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = DMatrix::from_fn(d, d, |_, _| {
            c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let q = m.qr().q();
        for delta in [delta_plus(d).unwrap(), delta_minus(d).unwrap()] {
            let changed = frame_change(&q, &delta).unwrap();
            let dev = changed.max_coeff_distance(&delta);
            assert!(dev <= 1e-10, "frame invariance: {dev:.3e}");
            worst = worst.max(dev);
        }
    }
    report(
        "09 PBW rewrites",
        &format!(
            "Δ₊ = −ΣWW̄ − iZ and −ΣW̄W + i(d−1)Z exact for d ≤ 4; −i(d+1)Z variant flagged inconsistent; frame invariance ≤ 1e-10 (worst {worst:.2e})"
        ),
    );
}

#[test]
fn criterion_10_quotient_symbol() {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut worst = 0.0f64;
    for d in 2..=3usize {
        let b = basis(d, 10);
        for _ in 0..10 {
            let mut zeta: Vec<Complex64> = (0..d)
                .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm: f64 = zeta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            zeta.iter_mut().for_each(|z| *z /= norm);
            let v: Vec<Complex64> = (0..d)
                .map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let expected = hermitian_pairing(&v, &zeta);
            for n in 0..b.n_max() {
                let probe = quotient_symbol(&v, &zeta, n, &b).unwrap();
                let dev = (probe - expected).norm();
                assert!(dev <= 1e-12, "d={d} n={n}: {dev:.3e}");
                worst = worst.max(dev);
            }

            // Flow invariance of the probe: the modulus is preserved to
            // 1e-10, and the complex value moves by exactly the modulus-one
            // column phase, which decays like 1/(n+1).
            let t: f64 = rng.gen_range(-4.0..4.0);
            let s_v = shift_combination(&v, &b).unwrap();
            let moved = alpha(&s_v, t).unwrap();
            for n in [3usize, 8] {
                let base = symbol_probe(&s_v, &zeta, n, 1).unwrap();
                let flowed = symbol_probe(&moved, &zeta, n, 1).unwrap();
                let modulus_dev = (flowed.norm() - base.norm()).abs();
                assert!(modulus_dev <= 1e-10, "modulus invariance: {modulus_dev:.3e}");
                let phase =
                    c64(0.0, t / 2.0 * ((n as f64 + 2.0) / (n as f64 + 1.0)).ln()).exp();
                let exact_dev = (flowed - base * phase).norm();
                assert!(exact_dev <= 1e-12, "transported identity: {exact_dev:.3e}");
                assert!(
                    (flowed - base).norm() <= phase_gap(t, n) * base.norm() + 1e-12,
                    "deviation bounded by the phase gap"
                );
            }
        }
    }
    report(
        "10 quotient symbol",
        &format!(
            "probe = ⟨v,ζ⟩ independent of n ≤ 1e-12 (worst {worst:.2e}); flow moves the probe by a modulus-one phase → modulus-invariant ≤ 1e-10 with O(1/n) complex deviation"
        ),
    );
}

#[test]
fn criterion_11_weyl() {
    let mut rng = ChaCha8Rng::seed_from_u64(111);

    // Oscillator spectrum {n + d/2}.
    for d in 1..=2usize {
        let b = basis(d, 10);
        let frame = QuantizationFrame::new(&b).unwrap();
        let osc = delta_symbol(Sign::Plus, d).restrict_t(0.0);
        let op = weyl_quantize(&osc, &frame).unwrap();
        let got = interior_block_spectrum(&op, 2);
        let mut expected: Vec<f64> = Vec::new();
        for n in 0..=(b.n_max() - 2) {
            expected.extend(
                std::iter::repeat_n(n as f64 + d as f64 / 2.0, b.block_range(n).len()),
            );
        }
        expected.sort_by(f64::total_cmp);
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).abs() <= 1e-10, "oscillator spectrum d={d}");
        }
    }

    // Round trips on 50 random degree-≤4 symbols.
    let b1 = basis(1, 12);
    let frame1 = QuantizationFrame::new(&b1).unwrap();
    let deq1 = Dequantizer::new(&frame1, 4).unwrap();
    let b2 = basis(2, 12);
    let frame2 = QuantizationFrame::new(&b2).unwrap();
    let deq2 = Dequantizer::new(&frame2, 4).unwrap();
    let mut worst_rt = 0.0f64;
    for case in 0..50 {
        let (d, deq) = if case % 2 == 0 {
            (1usize, &deq1)
        } else {
            (2usize, &deq2)
        };
        let mut s = PolySymbol::zero(d);
        for m in all_monomials(d, 4) {
            s.insert(m, c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        let back = deq.dequantize(&deq.quantize(&s).unwrap()).unwrap();
        let dev = back.max_coeff_distance(&s);
        assert!(dev <= 1e-9, "round trip case {case}: {dev:.3e}");
        worst_rt = worst_rt.max(dev);
    }
    // The one-shot entry point agrees with the cached path.
    {
        let s = random_homogeneous(&mut rng, 1, 3);
        let op = weyl_quantize(&s, &frame1).unwrap();
        let back = weyl_dequantize(&op, 3, &frame1).unwrap();
        assert!(back.max_coeff_distance(&s) <= 1e-9);
    }

    // Leading term of the product on 30 random homogeneous pairs; the
    // truncation stays at 3× the degree budget for a clean interior.
    let b18 = basis(1, 18);
    let frame18 = QuantizationFrame::new(&b18).unwrap();
    let b2_12 = basis(2, 12);
    let frame2_12 = QuantizationFrame::new(&b2_12).unwrap();
    for case in 0..30 {
        let (d, frame, max_deg) = if case % 3 < 2 {
            (1usize, &frame18, 3u32)
        } else {
            (2usize, &frame2_12, 2u32)
        };
        let da = rng.gen_range(1..=max_deg);
        let db = rng.gen_range(1..=max_deg);
        let a = random_homogeneous(&mut rng, d, da);
        let s = random_homogeneous(&mut rng, d, db);
        let prod = weyl_product(&a, &s, frame).unwrap();
        let defect = prod.sub(&a.mul_pointwise(&s));
        if let Some(deg) = defect.degree_above(1e-8) {
            assert!(
                deg + 2 <= da + db,
                "degree drop ≥ 2 failed: defect {deg} for {da}+{db}"
            );
        }
    }

    // Cross-module consistency with the λ = 1 fiber.
    let mut worst_cross = 0.0f64;
    for d in 1..=2usize {
        let b = basis(d, 10);
        let frame = QuantizationFrame::new(&b).unwrap();
        let quantized =
            weyl_quantize(&delta_symbol(Sign::Plus, d).restrict_t(1.0), &frame).unwrap();
        let fiber = evaluate(&delta_plus(d).unwrap(), &Rep::Fock(rep_fock(1.0, &b).unwrap()))
            .unwrap()
            .into_operator();
        let dev = interior_operator_norm(&quantized.sub(&fiber).unwrap(), 2);
        assert!(dev <= 1e-10, "cross-module d={d}: {dev:.3e}");
        worst_cross = worst_cross.max(dev);
    }
    report(
        "11 Weyl quantization",
        &format!(
            "oscillator spectrum ≤ 1e-10; 50 round trips ≤ 1e-9 (worst {worst_rt:.2e}); 30 product leading terms drop ≥ 2; cross-module ≤ 1e-10 (worst {worst_cross:.2e})"
        ),
    );
}

fn all_monomials(d: usize, max_degree: u32) -> Vec<fockalg::weyl::PhaseMono> {
    let mut out = Vec::new();
    let mut expo = vec![0u8; 2 * d];
    fill(&mut expo, 0, max_degree, d, &mut out);
    out.sort();
    return out;

    fn fill(
        expo: &mut Vec<u8>,
        pos: usize,
        budget: u32,
        d: usize,
        out: &mut Vec<fockalg::weyl::PhaseMono>,
    ) {
        if pos == expo.len() {
            out.push(fockalg::weyl::PhaseMono {
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
}

fn random_homogeneous(rng: &mut ChaCha8Rng, d: usize, degree: u32) -> PolySymbol {
    let mut s = PolySymbol::zero(d);
    for m in all_monomials(d, degree) {
        if m.delta_weight() == degree {
            s.insert(m, c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
    }
    s
}

#[test]
fn criterion_12_negative_lambda_report() {
    let mut lines = Vec::new();
    for d in 1..=2usize {
        let b = basis(d, 10);
        for lambda in [-0.5, -1.0, -3.0] {
            let op = evaluate(
                &delta_plus(d).unwrap(),
                &Rep::Fock(rep_fock(lambda, &b).unwrap()),
            )
            .unwrap()
            .into_operator();
            let rep = affine_spectrum_report(&op, lambda, 2).unwrap();
            assert!(rep.max_deviation <= 1e-10, "affine fit d={d} λ={lambda}");
            assert_eq!(rep.c, d as i64 - 1, "single integer offset");
            lines.push(format!(
                "d={d} λ={lambda}: spectrum |λ|(n+{}), kernel dim {}",
                rep.c, rep.kernel_dim
            ));
        }
    }
    report(
        "12 negative-λ fibers",
        &format!("affine law ≤ 1e-10; {}", lines.join("; ")),
    );
}

// A handful of auxiliary identities exercised across modules: kept here so
// the acceptance binary is self-contained evidence of the cross-module
// wiring.
#[test]
fn auxiliary_cross_module_sanity() {
    // f(x) = (d−x)/(x−1) applied to Σ S_j*S_j recovers N for d = 2.
    let b = basis(2, 8);
    let mut sum = zero(&b);
    for j in 1..=2 {
        let s = shift(j, &b).unwrap();
        sum = sum.add(&s.adjoint().compose(&s).unwrap()).unwrap();
    }
    let decomp = hermitian_decompose(&sum).unwrap();
    let f = fockalg::funcalc::apply_function(&decomp, |x| c64((2.0 - x) / (x - 1.0), 0.0)).unwrap();
    let dev = interior_max_abs(&f.sub(&number(&b)).unwrap(), 1);
    assert!(dev <= 1e-10);

    // Characters kill Δ± brackets and see ½|μ|².
    let ch = rep_character(&[0.3, 0.4, -0.2, 1.0]).unwrap();
    let val = evaluate(&delta_plus(2).unwrap(), &Rep::Character(ch.clone()))
        .unwrap()
        .into_scalar();
    assert!((val - c64(ch.half_mu_norm_sq(), 0.0)).norm() < 1e-14);

    // Exact generator sanity through the whole pbw pipeline.
    let e = pbw_normal_form(
        1,
        &[
            (Coeff::one(), vec![Gen::X(1), Gen::Y(1)]),
            (Coeff::from_int(-1), vec![Gen::Y(1), Gen::X(1)]),
        ],
    )
    .unwrap();
    assert_eq!(e, generator(1, Gen::Z).unwrap());
}
