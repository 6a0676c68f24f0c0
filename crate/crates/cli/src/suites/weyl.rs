//! Weyl-quantization checks: symbol values and homogeneity, the oscillator
//! spectrum, round trips, the # products, hemisphere gluing, and the
//! cross-module fiber consistency.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fockalg::linop::identity;
use fockalg::reps::{evaluate, rep_fock, Rep};
use fockalg::ualg::delta_plus;
use fockalg::weyl::{
    delta_symbol, hemisphere_compatibility, weyl_product, weyl_quantize, Dequantizer, PhaseMono,
    PolySymbol, QuantizationFrame, Sign,
};

use crate::config::SuiteConfig;
use crate::report::Record;

use super::{basis, interior_max_abs, interior_operator_norm, rng_for, Check};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn checks() -> Vec<Check> {
    vec![
        symbol_values,
        homogeneity,
        canonical_commutators,
        oscillator_spectrum,
        quantize_hermitian,
        roundtrip,
        product_unit_and_commutator,
        product_leading,
        hemisphere,
        cross_module,
    ]
}

fn monomial(_d: usize, q: &[u8], p: &[u8], t: u8) -> PhaseMono {
    PhaseMono {
        q: q.to_vec(),
        p: p.to_vec(),
        t,
    }
}

fn all_monomials(d: usize, max_degree: u32) -> Vec<PhaseMono> {
    let mut out = Vec::new();
    let mut expo = vec![0u8; 2 * d];
    fill(&mut expo, 0, max_degree, d, &mut out);
    out.sort();
    return out;

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
}

fn random_symbol(rng: &mut ChaCha8Rng, d: usize, max_degree: u32) -> PolySymbol {
    let mut s = PolySymbol::zero(d);
    for m in all_monomials(d, max_degree) {
        s.insert(m, c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    }
    s
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

fn symbol_values(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut mismatches = 0.0;
    let s1 = delta_symbol(Sign::Plus, 1);
    for (mono, want) in [
        (monomial(1, &[2], &[0], 0), c64(0.5, 0.0)),
        (monomial(1, &[0], &[2], 0), c64(0.5, 0.0)),
        (monomial(1, &[0], &[0], 1), c64(0.5, 0.0)),
    ] {
        if s1.coeffs().get(&mono) != Some(&want) {
            mismatches += 1.0;
        }
    }
    let m1 = delta_symbol(Sign::Minus, 1);
    if m1.coeffs().get(&monomial(1, &[0], &[0], 1)) != Some(&c64(-0.5, 0.0)) {
        mismatches += 1.0;
    }
    // At d = 2 the central coefficient vanishes.
    if delta_symbol(Sign::Plus, 2).has_central_variable() {
        mismatches += 1.0;
    }
    if delta_symbol(Sign::Plus, 3).delta_degree() != Some(2) {
        mismatches += 1.0;
    }
    Ok(vec![Record::le(
        "weyl.symbol_values",
        "delta symbols are |mu|^2/2 ± t(1 - d/2), delta-degree 2",
        String::new(),
        mismatches,
        0.0,
    )])
}

fn homogeneity(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "weyl.homogeneity");
    let mut worst = 0.0f64;
    for &d in cfg.d_list.iter().filter(|&&d| d <= 3) {
        for sign in [Sign::Plus, Sign::Minus] {
            let s = delta_symbol(sign, d);
            for _ in 0..10 {
                let mu: Vec<f64> = (0..2 * d).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let t = rng.gen_range(-2.0..2.0);
                let lam: f64 = rng.gen_range(0.1..3.0);
                let scaled: Vec<f64> = mu.iter().map(|&m| lam * m).collect();
                let lhs = s.eval(&scaled, lam * lam * t);
                let rhs = s.eval(&mu, t) * lam.powi(2);
                worst = worst.max((lhs - rhs).norm());
            }
        }
    }
    Ok(vec![Record::le(
        "weyl.homogeneity",
        "a(lambda mu, lambda^2 t) = lambda^2 a(mu, t)",
        format!("d={:?};10 random points each", cfg.d_list),
        worst,
        cfg.bound("weyl.homogeneity", 1e-12),
    )])
}

fn canonical_commutators(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in cfg.d_list.iter().filter(|&&d| d <= 2) {
        let b = basis(d, cfg.n_max);
        let frame = QuantizationFrame::new(&b)?;
        for j in 1..=d {
            for k in 1..=d {
                let comm = frame.position(j).commutator(frame.momentum(k))?;
                let expected = if j == k { I } else { c64(0.0, 0.0) };
                let dev = comm.sub(&identity(&b).scale(expected))?;
                worst = worst.max(interior_max_abs(&dev, 2));
            }
            let q = frame.position(j);
            worst = worst.max(q.sub(&q.adjoint())?.max_abs_entry());
        }
    }
    Ok(vec![Record::le(
        "weyl.canonical_commutators",
        "[Q_j, P_k] = i delta_jk Id; Q, P Hermitian",
        "d<=2".into(),
        worst,
        cfg.bound("weyl.canonical_commutators", 1e-13),
    )])
}

fn oscillator_spectrum(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in cfg.d_list.iter().filter(|&&d| d <= 2) {
        let b = basis(d, cfg.n_max);
        let frame = QuantizationFrame::new(&b)?;
        let op = weyl_quantize(&delta_symbol(Sign::Plus, d).restrict_t(0.0), &frame)?;
        let keep = b.block_range(b.n_max() - 2).end;
        let corner = op.matrix().view((0, 0), (keep, keep)).into_owned();
        let mut got: Vec<f64> = nalgebra::SymmetricEigen::new(corner)
            .eigenvalues
            .iter()
            .copied()
            .collect();
        got.sort_by(f64::total_cmp);
        let mut expected: Vec<f64> = (0..keep)
            .map(|pos| f64::from(b.multi_index(pos).degree()) + d as f64 / 2.0)
            .collect();
        expected.sort_by(f64::total_cmp);
        for (g, e) in got.iter().zip(&expected) {
            worst = worst.max((g - e).abs());
        }
    }
    Ok(vec![Record::le(
        "weyl.oscillator_spectrum",
        "quantize(|mu|^2/2) has spectrum {n + d/2} with block multiplicities",
        format!("d<=2;n_max={}", cfg.n_max),
        worst,
        cfg.bound("weyl.oscillator_spectrum", 1e-10),
    )])
}

fn quantize_hermitian(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "weyl.quantize_hermitian");
    let b = basis(2, cfg.n_max);
    let frame = QuantizationFrame::new(&b)?;
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let mut s = PolySymbol::zero(2);
        for m in all_monomials(2, 3) {
            s.insert(m, c64(rng.gen_range(-1.0..1.0), 0.0));
        }
        let op = weyl_quantize(&s, &frame)?;
        worst = worst.max(interior_max_abs(&op.sub(&op.adjoint())?, 3));
    }
    Ok(vec![Record::le(
        "weyl.quantize_hermitian",
        "real symbols quantize to Hermitian operators",
        "d=2;5 random degree<=3 real symbols".into(),
        worst,
        cfg.bound("weyl.quantize_hermitian", 1e-10),
    )])
}

fn roundtrip(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "weyl.roundtrip");
    let mut worst = 0.0f64;
    for d in 1..=2usize {
        let b = basis(d, 12);
        let frame = QuantizationFrame::new(&b)?;
        let deq = Dequantizer::new(&frame, 4)?;
        let cases = if d == 1 { 30 } else { 20 };
        for _ in 0..cases {
            let s = random_symbol(&mut rng, d, 4);
            let back = deq.dequantize(&deq.quantize(&s)?)?;
            worst = worst.max(back.max_coeff_distance(&s));
        }
    }
    Ok(vec![Record::le(
        "weyl.roundtrip",
        "dequantize(quantize(a)) = a on degree<=4 symbols",
        "50 random symbols, d in {1,2}".into(),
        worst,
        cfg.bound("weyl.roundtrip", 1e-9),
    )])
}

fn product_unit_and_commutator(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "weyl.product_unit");
    let b = basis(1, 12);
    let frame = QuantizationFrame::new(&b)?;

    let a = random_symbol(&mut rng, 1, 3);
    let one = PolySymbol::constant(1, c64(1.0, 0.0));
    let unit_dev = weyl_product(&a, &one, &frame)?.max_coeff_distance(&a);

    let mut q = PolySymbol::zero(1);
    q.insert(monomial(1, &[1], &[0], 0), c64(1.0, 0.0));
    let mut p = PolySymbol::zero(1);
    p.insert(monomial(1, &[0], &[1], 0), c64(1.0, 0.0));
    let qp = weyl_product(&q, &p, &frame)?;
    let pq = weyl_product(&p, &q, &frame)?;
    let comm = qp.sub(&pq);
    let constant = comm
        .coeffs()
        .get(&monomial(1, &[0], &[0], 0))
        .copied()
        .unwrap_or_default();
    let residual = comm
        .sub(&PolySymbol::constant(1, constant))
        .max_coeff_distance(&PolySymbol::zero(1));

    Ok(vec![
        Record::le(
            "weyl.product_unit",
            "a # 1 = a",
            "d=1;random degree<=3 symbol".into(),
            unit_dev,
            cfg.bound("weyl.product_unit", 1e-9),
        ),
        Record::le(
            "weyl.qp_commutator",
            "q # p - p # q is a constant of modulus 1 (empirically +i here)",
            format!("constant=({:.6},{:.6});residual={residual:.1e}", constant.re, constant.im),
            (constant - I).norm().max(residual),
            cfg.bound("weyl.qp_commutator", 1e-9),
        ),
    ])
}

fn product_leading(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "weyl.product_leading");
    let b1 = basis(1, 18);
    let frame1 = QuantizationFrame::new(&b1)?;
    let b2 = basis(2, 12);
    let frame2 = QuantizationFrame::new(&b2)?;
    let mut lead_dev = 0.0f64;
    let mut drop_failures = 0.0;
    for case in 0..30 {
        let (d, frame, max_deg) = if case % 3 < 2 {
            (1usize, &frame1, 3u32)
        } else {
            (2usize, &frame2, 2u32)
        };
        let da = rng.gen_range(1..=max_deg);
        let db = rng.gen_range(1..=max_deg);
        let a = random_homogeneous(&mut rng, d, da);
        let s = random_homogeneous(&mut rng, d, db);
        let prod = weyl_product(&a, &s, frame)?;
        let pointwise = a.mul_pointwise(&s);
        lead_dev = lead_dev.max(
            prod.leading_part()
                .max_coeff_distance(&pointwise.leading_part()),
        );
        if let Some(deg) = prod.sub(&pointwise).degree_above(1e-8) {
            if deg + 2 > da + db {
                drop_failures += 1.0;
            }
        }
    }
    Ok(vec![
        Record::le(
            "weyl.product_leading",
            "leading delta-part of a # b is the pointwise product",
            "30 random homogeneous pairs".into(),
            lead_dev,
            cfg.bound("weyl.product_leading", 1e-9),
        ),
        Record::le(
            "weyl.product_degree_drop",
            "a # b - a b has delta-degree at most deg a + deg b - 2",
            "30 random homogeneous pairs".into(),
            drop_failures,
            0.0,
        ),
    ])
}

fn hemisphere(_cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        let report = hemisphere_compatibility(d);
        let plus_diff = report.plus_upper.sub(&report.plus_lower);
        let expected = PolySymbol::constant(d, c64(2.0 * (1.0 - d as f64 / 2.0), 0.0));
        let dev = plus_diff.max_coeff_distance(&expected);
        let ok = report.gluing_ok
            && report.plus_difference_degree.unwrap_or(0) == 0
            && report.minus_difference_degree.unwrap_or(0) == 0;
        out.push(Record::le(
            "weyl.hemisphere",
            "restrictions at t = ±1 share the leading part |mu|^2/2 and differ by a constant",
            format!(
                "d={d};difference={};gluing_ok={ok}",
                plus_diff.render()
            ),
            dev + if ok { 0.0 } else { 1.0 },
            0.0,
        ));
    }
    Ok(out)
}

fn cross_module(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut worst = 0.0f64;
    for &d in cfg.d_list.iter().filter(|&&d| d <= 2) {
        let b = basis(d, cfg.n_max);
        let frame = QuantizationFrame::new(&b)?;
        let quantized = weyl_quantize(&delta_symbol(Sign::Plus, d).restrict_t(1.0), &frame)?;
        let fiber = evaluate(&delta_plus(d)?, &Rep::Fock(rep_fock(1.0, &b)?))?.into_operator();
        worst = worst.max(interior_operator_norm(&quantized.sub(&fiber)?, 2));
    }
    Ok(vec![Record::le(
        "weyl.cross_module",
        "quantize(delta_symbol(+)|_{t=1}) = pi_1(Delta_+)",
        format!("d<=2;n_max={}", cfg.n_max),
        worst,
        cfg.bound("weyl.cross_module", 1e-10),
    )])
}
