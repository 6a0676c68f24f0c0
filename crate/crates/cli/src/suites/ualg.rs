//! Exact enveloping-algebra checks: the Δ± rewrites and the inconsistent
//! printed coefficient, PBW confluence, Jacobi, dilations, and frame
//! invariance.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fockalg::ualg::{
    delta_minus, delta_plus, dilate, frame_change, frame_change_exact, generator,
    graded_degree_of, pbw_normal_form, pbw_normal_form_with, Coeff, DilationWeight, GaussRat, Gen,
    GradedDegree, HeisFrame, UeaElement,
};

use crate::config::SuiteConfig;
use crate::report::{Record, PLUMBING};

use super::{rng_for, Check};

pub fn checks() -> Vec<Check> {
    vec![
        basic_brackets,
        delta_rewrites,
        graded_degrees,
        jacobi,
        confluence,
        dilations,
        frame_invariance,
        render_golden,
    ]
}

fn bool_to_mismatch(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        1.0
    }
}

fn basic_brackets(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut mismatches = 0.0;
    // X1 Y1 − Y1 X1 = Z.
    let e = pbw_normal_form(
        1,
        &[
            (Coeff::one(), vec![Gen::X(1), Gen::Y(1)]),
            (Coeff::from_int(-1), vec![Gen::Y(1), Gen::X(1)]),
        ],
    )?;
    mismatches += bool_to_mismatch(e == generator(1, Gen::Z)?);

    for &d in &cfg.d_list {
        let frame = HeisFrame::new(d)?;
        for j in 1..=d {
            // [W_j, W̄_j] = −iZ.
            let comm = frame.bracket(Gen::W(j), Gen::WBar(j))?;
            mismatches += bool_to_mismatch(comm == frame.z().scale(&Coeff::i().neg()));
            // [X_j, Y_j] = Z, commuting strata.
            mismatches +=
                bool_to_mismatch(frame.bracket(Gen::X(j), Gen::Y(j))? == frame.z());
        }
        if d >= 2 {
            mismatches += bool_to_mismatch(frame.bracket(Gen::X(1), Gen::X(2))?.is_zero());
            mismatches += bool_to_mismatch(frame.bracket(Gen::X(1), Gen::Y(2))?.is_zero());
        }
    }
    Ok(vec![Record::le(
        "ualg.brackets",
        "[X_j, Y_k] = delta_jk Z, [W_j, Wbar_j] = -iZ, Z central",
        format!("d={:?}", cfg.d_list),
        mismatches,
        0.0,
    )])
}

fn delta_rewrites(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rewrite_mismatches = 0.0;
    let mut bookkeeping_mismatches = 0.0;
    let mut printed_distance = f64::INFINITY;
    for d in 1..=4usize {
        let frame = HeisFrame::new(d)?;
        let mut ww_bar = UeaElement::zero(d);
        let mut bar_ww = UeaElement::zero(d);
        for j in 1..=d {
            ww_bar = ww_bar.add(&frame.w(j)?.mul(&frame.w_bar(j)?)?)?;
            bar_ww = bar_ww.add(&frame.w_bar(j)?.mul(&frame.w(j)?)?)?;
        }
        // Δ₊ = −Σ W_j W̄_j − iZ and Δ₋ = −Σ W̄_j W_j + iZ, exactly.
        let plus = ww_bar
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::i().neg()))?;
        rewrite_mismatches += bool_to_mismatch(plus == delta_plus(d)?);
        let minus = bar_ww
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::i()))?;
        rewrite_mismatches += bool_to_mismatch(minus == delta_minus(d)?);

        // Σ W̄W = Σ WW̄ + i d Z, so the W̄W-ordered form of Δ₊ carries
        // +i(d−1)Z.
        let id_z = frame.z().scale(&Coeff::i().mul(&Coeff::from_int(d as i64)));
        bookkeeping_mismatches += bool_to_mismatch(bar_ww == ww_bar.add(&id_z)?);
        let wbar_form = bar_ww
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::i().mul(&Coeff::from_int(d as i64 - 1))))?;
        rewrite_mismatches += bool_to_mismatch(wbar_form == delta_plus(d)?);

        // The −i(d+1)Z variant does not reproduce Δ₊ for any d.
        let printed = bar_ww
            .scale(&Coeff::from_int(-1))
            .add(&frame.z().scale(&Coeff::imag_ratio(-(d as i64 + 1), 1)))?;
        printed_distance = printed_distance.min(printed.max_coeff_distance(&delta_plus(d)?));
    }
    Ok(vec![
        Record::le(
            "ualg.delta_rewrite",
            "Delta_+ = -sum W_j Wbar_j - iZ = -sum Wbar_j W_j + i(d-1)Z (and the Delta_- mirror)",
            "d<=4, exact".into(),
            rewrite_mismatches,
            0.0,
        ),
        Record::le(
            "ualg.wbar_bookkeeping",
            "sum_j Wbar_j W_j = sum_j W_j Wbar_j + i d Z",
            "d<=4, exact".into(),
            bookkeeping_mismatches,
            0.0,
        ),
        Record::ge(
            "ualg.delta_printed_variant",
            "the -i(d+1)Z coefficient is inconsistent with Delta_+",
            format!("min coefficient distance over d<=4 = {printed_distance:.1}"),
            printed_distance,
            1.0,
        ),
    ])
}

fn graded_degrees(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut mismatches = 0.0;
    for &d in &cfg.d_list {
        mismatches +=
            bool_to_mismatch(graded_degree_of(&delta_plus(d)?) == GradedDegree::Uniform(2));
        mismatches +=
            bool_to_mismatch(graded_degree_of(&delta_minus(d)?) == GradedDegree::Uniform(2));
    }
    let mixed = generator(1, Gen::X(1))?.add(&generator(1, Gen::Z)?)?;
    mismatches += bool_to_mismatch(graded_degree_of(&mixed) == GradedDegree::Mixed);
    let z3 = pbw_normal_form(1, &[(Coeff::one(), vec![Gen::Z, Gen::Z, Gen::Z])])?;
    mismatches += bool_to_mismatch(graded_degree_of(&z3) == GradedDegree::Uniform(6));
    Ok(vec![Record::le(
        "ualg.graded_degree",
        "Delta_pm have uniform graded weight 2 (weights 1,1,2)",
        format!("d={:?}", cfg.d_list),
        mismatches,
        0.0,
    )])
}

fn jacobi(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let d = 2;
    let gens = [Gen::X(1), Gen::X(2), Gen::Y(1), Gen::Y(2), Gen::Z];
    let mut failures = 0.0;
    for &a in &gens {
        for &b in &gens {
            for &c in &gens {
                let ea = generator(d, a)?;
                let eb = generator(d, b)?;
                let ec = generator(d, c)?;
                let total = ea
                    .commutator(&eb.commutator(&ec)?)?
                    .add(&eb.commutator(&ec.commutator(&ea)?)?)?
                    .add(&ec.commutator(&ea.commutator(&eb)?)?)?;
                failures += bool_to_mismatch(total.is_zero());
            }
        }
    }
    Ok(vec![Record::le(
        "ualg.jacobi",
        "[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0 on generator triples",
        "d=2, all 125 triples, exact".into(),
        failures,
        0.0,
    )])
}

fn random_word(rng: &mut ChaCha8Rng, d: usize, max_len: usize) -> Vec<Gen> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| match rng.gen_range(0..5) {
            0 => Gen::X(rng.gen_range(1..=d)),
            1 => Gen::Y(rng.gen_range(1..=d)),
            2 => Gen::Z,
            3 => Gen::W(rng.gen_range(1..=d)),
            _ => Gen::WBar(rng.gen_range(1..=d)),
        })
        .collect()
}

fn confluence(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "ualg.confluence");
    let mut mismatches = 0.0;
    for case in 0..100u64 {
        let d = rng.gen_range(1..=3);
        let word = random_word(&mut rng, d, 6);
        let coeff = Coeff::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4));
        let terms = vec![(coeff, word)];
        let reference = pbw_normal_form(d, &terms)?;
        for round in 0..3u64 {
            let mut chooser = rng_for(cfg.seed, &format!("ualg.confluence.{case}.{round}"));
            let scrambled = pbw_normal_form_with(d, &terms, &mut |cands: &[usize]| {
                chooser.gen_range(0..cands.len())
            })?;
            mismatches += bool_to_mismatch(scrambled == reference);
        }
    }
    Ok(vec![Record::le(
        "ualg.confluence",
        "normal form is independent of the rewrite order",
        "100 random degree<=6 words x 3 scrambles".into(),
        mismatches,
        0.0,
    )])
}

fn dilations(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "ualg.dilations");
    let mut mismatches = 0.0;

    // dilate(Δ₊, λ) = λ² Δ₊.
    for &d in &cfg.d_list {
        let lam = BigRational::new(BigInt::from(3), BigInt::from(2));
        let scaled = dilate(&delta_plus(d)?, &lam)?;
        let expected = delta_plus(d)?.scale(&Coeff::from_rational(&lam * &lam));
        mismatches += bool_to_mismatch(scaled == expected);
    }

    // Semigroup law and the algebra-map property on random elements.
    for _ in 0..20 {
        let d = rng.gen_range(1..=3);
        let e = pbw_normal_form(
            d,
            &[
                (
                    Coeff::from_ratio(rng.gen_range(-4..=4), 3),
                    random_word(&mut rng, d, 4),
                ),
                (Coeff::i(), random_word(&mut rng, d, 4)),
            ],
        )?;
        let two = DilationWeight::new(BigRational::from_integer(BigInt::from(2)))?;
        let three = DilationWeight::new(BigRational::from_integer(BigInt::from(3)))?;
        mismatches +=
            bool_to_mismatch(two.apply(&three.apply(&e)) == two.compose(&three).apply(&e));

        let other = pbw_normal_form(
            d,
            &[(
                Coeff::imag_ratio(rng.gen_range(-3..=3), 5),
                random_word(&mut rng, d, 3),
            )],
        )?;
        let lam = BigRational::new(
            BigInt::from(rng.gen_range(1..=5)),
            BigInt::from(rng.gen_range(1..=3)),
        );
        let lhs = dilate(&e.mul(&other)?, &lam)?;
        let rhs = dilate(&e, &lam)?.mul(&dilate(&other, &lam)?)?;
        mismatches += bool_to_mismatch(lhs == rhs);
    }
    Ok(vec![Record::le(
        "ualg.dilations",
        "dilate is the algebra map X,Y -> lambda, Z -> lambda^2; dilate(Delta_+) = lambda^2 Delta_+",
        format!("d={:?};20 random elements, exact", cfg.d_list),
        mismatches,
        0.0,
    )])
}

fn frame_invariance(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "ualg.frame_invariance");
    let mut worst = 0.0f64;
    for &d in cfg.d_list.iter().filter(|&&d| d <= 3) {
        for _ in 0..20 {
            let m = DMatrix::from_fn(d, d, |_, _| {
                Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
            });
            let q = m.qr().q();
            for delta in [delta_plus(d)?, delta_minus(d)?] {
                let changed = frame_change(&q, &delta)?;
                worst = worst.max(changed.max_coeff_distance(&delta));
            }
        }
    }

    // Exact path: diagonal phases with rational cosine/sine fix Σ W W̄
    // exactly.
    let d = 2;
    let frame = HeisFrame::new(d)?;
    let phase = GaussRat::new(
        BigRational::new(BigInt::from(3), BigInt::from(5)),
        BigRational::new(BigInt::from(4), BigInt::from(5)),
    );
    let u: Vec<Vec<GaussRat>> = (0..d)
        .map(|r| {
            (0..d)
                .map(|c| if r == c { phase.clone() } else { GaussRat::zero() })
                .collect()
        })
        .collect();
    let mut sum = UeaElement::zero(d);
    for j in 1..=d {
        sum = sum.add(&frame.w(j)?.mul(&frame.w_bar(j)?)?)?;
    }
    let exact_ok = frame_change_exact(&u, &sum)? == sum
        && frame_change_exact(&u, &delta_plus(d)?)? == delta_plus(d)?;

    Ok(vec![
        Record::le(
            "ualg.frame_invariance",
            "Delta_pm are invariant under unitary changes of the complex frame",
            format!("d={:?};20 random U(d)", cfg.d_list),
            worst,
            cfg.bound("ualg.frame_invariance", 1e-10),
        ),
        Record::le(
            "ualg.frame_exact_phase",
            "diagonal frame phases cancel exactly in sum_j W_j Wbar_j",
            "U = diag((3+4i)/5)".into(),
            bool_to_mismatch(exact_ok),
            0.0,
        ),
    ])
}

fn render_golden(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let golden_ok = delta_plus(1)?.render() == "-1/2*X1^2 - 1/2*Y1^2 - 1/2i*Z"
        && delta_minus(1)?.render() == "-1/2*X1^2 - 1/2*Y1^2 + 1/2i*Z"
        && UeaElement::zero(2).render() == "0";
    Ok(vec![Record::le(
        "ualg.render_golden",
        PLUMBING,
        "deterministic term order".into(),
        bool_to_mismatch(golden_ok),
        0.0,
    )])
}
