//! Flow checks: the action law, rank-one phases, tail-norm convergence
//! tables, and the quotient-symbol probe.

use num_complex::Complex64;
use rand::Rng;

use fockalg::flow::{
    alpha, hermitian_pairing, log_log_slope, phase_gap, psi, quotient_symbol, scalar_tail_norm,
    shift_combination, symbol_probe, tail_report,
};
use fockalg::linop::{identity, interior_projector, number, operator_norm, shift};

use crate::config::SuiteConfig;
use crate::report::Record;

use super::{basis, random_complex, random_unit_vector, rng_for, Check};

const TAIL_TRUNCATION: usize = 60;
const TAIL_T_SET: [f64; 3] = [0.5, 1.0, 5.0];

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn checks() -> Vec<Check> {
    vec![
        action_laws,
        fixes_number,
        rank_one_phase,
        shift_column_phase,
        psi_at_zero,
        tail_match,
        tail_rows,
        tail_slope,
        psi_outer_decay,
        quotient_probe,
        quotient_flow,
        probe_products,
    ]
}

fn action_laws(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "flow.action_laws");
    let b = basis(2, cfg.n_max.min(8));
    let words = [
        shift(1, &b)?,
        shift(2, &b)?.adjoint(),
        shift(1, &b)?.compose(&shift(2, &b)?.adjoint())?,
    ];
    let mut group_dev = 0.0f64;
    let mut mult_dev = 0.0f64;
    for _ in 0..5 {
        let t: f64 = rng.gen_range(-4.0..4.0);
        let s: f64 = rng.gen_range(-4.0..4.0);
        for a in &words {
            let lhs = alpha(&alpha(a, s)?, t)?;
            let rhs = alpha(a, t + s)?;
            group_dev = group_dev.max(operator_norm(&lhs.sub(&rhs)?));
        }
        let lhs = alpha(&words[0].compose(&words[1])?, t)?;
        let rhs = alpha(&words[0], t)?.compose(&alpha(&words[1], t)?)?;
        mult_dev = mult_dev.max(operator_norm(&lhs.sub(&rhs)?));
    }
    let id_dev = operator_norm(&alpha(&words[0], 0.0)?.sub(&words[0])?);
    Ok(vec![
        Record::le(
            "flow.group_law",
            "alpha_t . alpha_s = alpha_{t+s}, alpha_0 = id",
            format!("5 random (t,s);alpha_0 dev={id_dev:.1e}"),
            group_dev.max(id_dev),
            cfg.bound("flow.group_law", 1e-10),
        ),
        Record::le(
            "flow.multiplicative",
            "alpha_t(AB) = alpha_t(A) alpha_t(B)",
            "5 random t".into(),
            mult_dev,
            cfg.bound("flow.multiplicative", 1e-10),
        ),
    ])
}

fn fixes_number(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, cfg.n_max);
    let n = number(&b);
    let mut worst = 0.0f64;
    for &t in &cfg.t_grid {
        worst = worst.max(alpha(&n, t)?.sub(&n)?.max_abs_entry());
    }
    Ok(vec![Record::le(
        "flow.fixes_number",
        "alpha_t(N) = N",
        format!("t_grid={:?}", cfg.t_grid),
        worst,
        cfg.bound("flow.fixes_number", 1e-12),
    )])
}

fn rank_one_phase(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "flow.rank_one_phase");
    let n_max = cfg.n_max.max(20);
    let b = basis(1, n_max);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let n = rng.gen_range(0..=n_max);
        let m = rng.gen_range(0..=n_max);
        let t: f64 = rng.gen_range(-8.0..8.0);
        let p = fockalg::linop::matrix_unit(&b, m, n);
        let phase = c64(0.0, t / 2.0 * ((m as f64 + 1.0) / (n as f64 + 1.0)).ln()).exp();
        let dev = alpha(&p, t)?.sub(&p.scale(phase))?.max_abs_entry();
        worst = worst.max(dev);
    }
    Ok(vec![Record::le(
        "flow.rank_one_phase",
        "alpha_t(P_nm) = ((m+1)/(n+1))^(it/2) P_nm",
        "20 random (n,m,t)".into(),
        worst,
        cfg.bound("flow.rank_one_phase", 1e-12),
    )])
}

fn shift_column_phase(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(2, cfg.n_max.min(8));
    let mut worst = 0.0f64;
    for &t in &cfg.t_grid {
        for j in 1..=2 {
            let s = shift(j, &b)?;
            let moved = alpha(&s, t)?;
            for pos in 0..b.dim() {
                let n = f64::from(b.multi_index(pos).degree());
                let phase = c64(0.0, t / 2.0 * ((n + 2.0) / (n + 1.0)).ln()).exp();
                let expected = s.matrix().column(pos) * phase;
                worst = worst.max((moved.matrix().column(pos) - expected).norm());
            }
        }
    }
    Ok(vec![Record::le(
        "flow.shift_column_phase",
        "alpha_t(S_j)|a> = ((|a|+2)/(|a|+1))^(it/2) S_j|a>",
        format!("t_grid={:?}", cfg.t_grid),
        worst,
        cfg.bound("flow.shift_column_phase", 1e-12),
    )])
}

fn psi_at_zero(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, cfg.n_max);
    let p = psi(1, 0.0, &b)?;
    Ok(vec![Record::le(
        "flow.psi_zero",
        "Psi_0 = 0",
        String::new(),
        p.max_abs_entry(),
        cfg.bound("flow.psi_zero", 1e-15),
    )])
}

fn tail_match(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, TAIL_TRUNCATION);
    let mut worst = 0.0f64;
    for t in TAIL_T_SET {
        let report = tail_report(1, t, &b, &[5, 10, 20, 40])?;
        for (m, f) in report.matrix_norms.iter().zip(&report.formula_norms) {
            if let Some(m) = m {
                worst = worst.max((m - f).abs());
            }
        }
    }
    Ok(vec![Record::le(
        "flow.tail_match",
        "||Psi_t - Psi_t^(n)|| = sup_{k>n} |((k+2)/(k+1))^(it/2) - 1|",
        format!("n_max={TAIL_TRUNCATION};t in {TAIL_T_SET:?};cutoffs 5,10,20,40"),
        worst,
        cfg.bound("flow.tail_match", 1e-10),
    )])
}

fn tail_rows(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    // Convergence-table rows over the configured cutoffs; the scalar column
    // is basis-free so cutoffs past the truncation still report.
    let b = basis(1, cfg.n_max.max(20));
    let t = 1.0;
    let report = tail_report(1, t, &b, &cfg.cutoffs)?;
    let mut records = Vec::with_capacity(report.cutoffs.len());
    let mut previous = f64::INFINITY;
    for (idx, &n) in report.cutoffs.iter().enumerate() {
        let matrix = report.matrix_norms[idx]
            .map(|m| format!("{m:.6e}"))
            .unwrap_or_else(|| "na".into());
        let bound = if idx == 0 {
            report.formula_norms[0]
        } else {
            previous
        };
        records.push(Record::le(
            "flow.tail_row",
            "sup_{k>n} |((k+2)/(k+1))^(it/2) - 1| is nonincreasing in n",
            format!("t={t};n={n};matrix_norm={matrix}"),
            report.formula_norms[idx],
            bound,
        ));
        previous = report.formula_norms[idx];
    }
    Ok(records)
}

fn tail_slope(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, 4); // the scalar column is basis-free
    let cutoffs = [100usize, 178, 316, 562, 1000, 1778, 3162, 5623, 10_000];
    let mut out = Vec::new();
    for t in TAIL_T_SET {
        let report = tail_report(1, t, &b, &cutoffs)?;
        let slope = report.fitted_slope.unwrap_or(0.0);
        out.push(Record::le(
            "flow.tail_slope",
            "sup-formula tail is O(1/k): log-log slope -1",
            format!("t={t};k in [1e2,1e4];slope={slope:.4}"),
            (slope + 1.0).abs(),
            cfg.bound("flow.tail_slope", 0.1),
        ));
    }
    Ok(out)
}

fn psi_outer_decay(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let b = basis(1, 40);
    let mut fitted = 0.0f64;
    let mut monotone_violation = 0.0f64;
    for t in [0.5, 1.0] {
        let psi_t = psi(1, t, &b)?;
        let mut previous = f64::INFINITY;
        for n in [5usize, 10, 20, 30] {
            let keep_low = interior_projector(&b, b.n_max() - n)?;
            let outer = identity(&b).sub(&keep_low)?;
            let norm = operator_norm(&outer.compose(&psi_t)?.compose(&outer)?);
            monotone_violation = monotone_violation.max(norm - previous);
            previous = norm;
            fitted = fitted.max(norm * n as f64 / t.abs());
        }
    }
    Ok(vec![Record::le(
        "flow.psi_outer_decay",
        "||(1-P_n) Psi_t (1-P_n)|| <= C|t|/n, nonincreasing",
        format!("fitted_C={fitted:.3};monotone_violation={monotone_violation:.1e}"),
        fitted,
        cfg.bound("flow.psi_outer_decay", 1.0),
    )])
}

fn quotient_probe(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "flow.quotient_probe");
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        let b = basis(d, cfg.n_max);
        for _ in 0..10 {
            let zeta = random_unit_vector(&mut rng, d);
            let v: Vec<Complex64> = (0..d).map(|_| random_complex(&mut rng)).collect();
            let expected = hermitian_pairing(&v, &zeta);
            for n in 0..b.n_max() {
                let probe = quotient_symbol(&v, &zeta, n, &b)?;
                worst = worst.max((probe - expected).norm());
            }
        }
    }
    Ok(vec![Record::le(
        "flow.quotient_probe",
        "<S_v zeta^n, zeta^{n+1}> = <v, zeta> independent of n",
        format!("d in {{2,3}};10 random (v,zeta);n<{}", cfg.n_max),
        worst,
        cfg.bound("flow.quotient_probe", 1e-12),
    )])
}

fn quotient_flow(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    // The flow multiplies the probe by the modulus-one column phase: the
    // modulus is invariant, the complex deviation equals the phase gap and
    // decays like 1/(n+1).
    let mut rng = rng_for(cfg.seed, "flow.quotient_flow");
    let d = 2;
    let b = basis(d, cfg.n_max.max(16));
    let mut modulus_dev = 0.0f64;
    let mut phase_dev = 0.0f64;
    let mut gap_excess = 0.0f64;
    for _ in 0..5 {
        let zeta = random_unit_vector(&mut rng, d);
        let v: Vec<Complex64> = (0..d).map(|_| random_complex(&mut rng)).collect();
        let t: f64 = rng.gen_range(-4.0..4.0);
        let s_v = shift_combination(&v, &b)?;
        let moved = alpha(&s_v, t)?;
        for n in [3usize, 7, b.n_max() - 2] {
            let base = symbol_probe(&s_v, &zeta, n, 1)?;
            let flowed = symbol_probe(&moved, &zeta, n, 1)?;
            modulus_dev = modulus_dev.max((flowed.norm() - base.norm()).abs());
            let phase = c64(0.0, t / 2.0 * ((n as f64 + 2.0) / (n as f64 + 1.0)).ln()).exp();
            phase_dev = phase_dev.max((flowed - base * phase).norm());
            gap_excess = gap_excess
                .max((flowed - base).norm() - phase_gap(t, n) * base.norm());
        }
    }
    Ok(vec![
        Record::le(
            "flow.quotient_flow_modulus",
            "|probe(alpha_t(S_v))| = |probe(S_v)|",
            "5 random (v,zeta,t)".into(),
            modulus_dev,
            cfg.bound("flow.quotient_flow_modulus", 1e-10),
        ),
        Record::le(
            "flow.quotient_flow_phase",
            "probe(alpha_t(S_v)) = ((n+2)/(n+1))^(it/2) probe(S_v)",
            format!("gap_excess={gap_excess:.1e}"),
            phase_dev,
            cfg.bound("flow.quotient_flow_phase", 1e-12),
        ),
    ])
}

fn probe_products(cfg: &SuiteConfig) -> anyhow::Result<Vec<Record>> {
    let mut rng = rng_for(cfg.seed, "flow.probe_products");
    let d = 2;
    let b = basis(d, cfg.n_max.max(24));
    let zeta = random_unit_vector(&mut rng, d);

    // Raising words are exactly multiplicative.
    let v: Vec<Complex64> = (0..d).map(|_| random_complex(&mut rng)).collect();
    let w: Vec<Complex64> = (0..d).map(|_| random_complex(&mut rng)).collect();
    let product = shift_combination(&v, &b)?.compose(&shift_combination(&w, &b)?)?;
    let target = hermitian_pairing(&v, &zeta) * hermitian_pairing(&w, &zeta);
    let mut exact_dev = 0.0f64;
    for n in [3usize, 9, b.n_max() - 3] {
        let probe = symbol_probe(&product, &zeta, n, 2)?;
        exact_dev = exact_dev.max((probe - target).norm());
    }

    // Mixed words deviate by exactly (delta_ij - zeta_j conj(zeta_i))/(n+1).
    let word = shift(1, &b)?.adjoint().compose(&shift(2, &b)?)?;
    let symbol_product = zeta[0] * zeta[1].conj();
    let mut points = Vec::new();
    let mut formula_dev = 0.0f64;
    for n in [3usize, 7, 15, b.n_max() - 1] {
        let probe = symbol_probe(&word, &zeta, n, 0)?;
        let defect = (probe - symbol_product).norm();
        let expected = (c64(0.0, 0.0) - symbol_product).norm() / (n as f64 + 1.0);
        formula_dev = formula_dev.max((defect - expected).abs());
        points.push((n as f64 + 1.0, defect));
    }
    let slope = log_log_slope(points.iter().map(|p| p.0), points.iter().map(|p| p.1))
        .unwrap_or(0.0);

    // The scalar tail formula bounds the probe movement at every degree.
    let mut tail_consistency = 0.0f64;
    for t in [0.5, 1.0] {
        let s_v = shift_combination(&v, &b)?;
        let moved = alpha(&s_v, t)?;
        for n in [4usize, 12] {
            let base = symbol_probe(&s_v, &zeta, n, 1)?;
            let flowed = symbol_probe(&moved, &zeta, n, 1)?;
            tail_consistency = tail_consistency
                .max((flowed - base).norm() - scalar_tail_norm(t, n.saturating_sub(1)) * base.norm());
        }
    }

    Ok(vec![
        Record::le(
            "flow.probe_product_exact",
            "probe of S_v S_w equals <v,zeta><w,zeta> at every degree",
            "degree-2 raise".into(),
            exact_dev,
            cfg.bound("flow.probe_product_exact", 1e-12),
        ),
        Record::le(
            "flow.probe_mixed_first_order",
            "probe of S_1* S_2 deviates by (0 - zeta_1 conj(zeta_2))/(n+1)",
            format!("fitted slope={slope:.3}"),
            formula_dev,
            cfg.bound("flow.probe_mixed_first_order", 1e-12),
        ),
        Record::le(
            "flow.probe_mixed_slope",
            "mixed-word probe defect decays at first order in n+1",
            format!("slope={slope:.4}"),
            (slope + 1.0).abs(),
            cfg.bound("flow.probe_mixed_slope", 0.05),
        ),
        Record::le(
            "flow.probe_tail_bound",
            "probe movement under alpha_t is within the scalar tail bound",
            "t in {0.5,1}".into(),
            tail_consistency.max(0.0),
            cfg.bound("flow.probe_tail_bound", 1e-12),
        ),
    ])
}
