//! Acceptance gate: one PASS/FAIL line per criterion. Runs without the libtest
//! harness so the lines always reach the output.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opineq::bounds::operand_scale;
use opineq::harness::suite::gaussian_matrix;
use opineq::harness::{worked_examples, run_paper_checks, run_random_suite, SuiteConfig, Verdict};
use opineq::linalg::hermitian_norm;
use opineq::{
    block_identity_check, evaluate_bound, evaluate_on_tuple, numerical_radius, operator_norm,
    pairwise_sum_identity_check, radius_sampling_oracle, singular_value_bounds, BoundId, BoundReport, ComplexMatrix,
    ToleranceConfig,
};

type Outcome = Result<String, String>;

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn operands(id: &str) -> Vec<ComplexMatrix> {
    worked_examples()
        .into_iter()
        .find(|e| e.id == id)
        .unwrap_or_else(|| panic!("registry entry {id}"))
        .operands
        .into_iter()
        .map(|(_, m)| m)
        .collect()
}

fn eval(bound: BoundId, id: &str) -> Result<BoundReport, String> {
    evaluate_on_tuple(bound, &operands(id), &cfg()).map_err(|e| e.to_string())
}

fn near(what: &str, value: f64, target: f64, tol: f64) -> Result<(), String> {
    if (value - target).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what} = {value:.12} not within {tol:e} of {target}"))
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_tuple(r: &mut ChaCha8Rng, dims: (usize, usize), count: (usize, usize)) -> Vec<ComplexMatrix> {
    let d = r.random_range(dims.0..=dims.1);
    let n = r.random_range(count.0..=count.1);
    (0..n).map(|_| gaussian_matrix(r, d, d)).collect()
}

fn c1() -> Outcome {
    let b5 = eval(BoundId::B5, "rem-2.3")?;
    near("B5 lhs", b5.lhs, 40.0, 1e-9)?;
    near("B5 rhs", b5.rhs, 40.0, 1e-9)?;
    let tri = eval(BoundId::BaseTri, "rem-2.3")?;
    near("(|T1|+|T2|)^2", tri.rhs, 59.4117, 5e-5)?;
    let w2 = eval(BoundId::Base2W, "rem-2.3")?;
    near("(2w(T1+T2))^2", w2.rhs, 91.2676, 5e-5)?;
    Ok(format!(
        "lhs={} rhs={} tri={:.6} 2w={:.6}",
        b5.lhs, b5.rhs, tri.rhs, w2.rhs
    ))
}

fn c2() -> Outcome {
    let b6 = eval(BoundId::B6, "eq-ned-001")?;
    near("||Re T||^2", b6.lhs, 4.0, 1e-12)?;
    near("B6 rhs", b6.rhs, 5.31843, 5e-6)?;
    let t = &operands("eq-ned-001")[0];
    let w = numerical_radius(t, &cfg()).map_err(|e| e.to_string())?;
    near("w^2 (lower)", w.lower * w.lower, 11.3143, 5e-5)?;
    near("w^2 (upper)", w.upper * w.upper, 11.3143, 5e-5)?;
    Ok(format!(
        "||Re T||^2={} rhs={:.8} w^2={:.8}",
        b6.lhs,
        b6.rhs,
        w.upper * w.upper
    ))
}

fn c3() -> Outcome {
    let b7 = eval(BoundId::B7, "eq-ned-01")?;
    near("B7 lhs", b7.lhs, 25.0, 1e-8)?;
    near("B7 rhs", b7.rhs, 25.0, 1e-8)?;
    Ok(format!("lhs={} rhs={}", b7.lhs, b7.rhs))
}

fn c4() -> Outcome {
    let b10 = eval(BoundId::B10, "cor-4-sharp")?;
    near("B10 lhs", b10.lhs, 16.0, 1e-8)?;
    near("B10 rhs", b10.rhs, 16.0, 1e-8)?;
    let tri = eval(BoundId::BaseTri, "cor-4-sharp")?;
    near("triangle", tri.rhs, 26.2462, 5e-5)?;
    Ok(format!("lhs={} rhs={} tri={:.6}", b10.lhs, b10.rhs, tri.rhs))
}

fn c5() -> Outcome {
    let b11 = eval(BoundId::B11, "cor-block-two")?;
    near("B11 lhs", b11.lhs, 12.0635, 5e-5)?;
    near("B11 rhs", b11.rhs, 13.1313, 5e-5)?;
    let base = eval(BoundId::BaseEq15, "cor-block-two")?;
    near("block norm baseline", base.rhs, 19.2498, 5e-5)?;
    Ok(format!(
        "lhs={:.6} rhs={:.6} baseline={:.6}",
        b11.lhs, b11.rhs, base.rhs
    ))
}

fn c6() -> Outcome {
    let b8 = eval(BoundId::B8, "eq-ned-02")?;
    near("B8 lhs", b8.lhs, 5.15604, 5e-6)?;
    let base = eval(BoundId::BaseEq15, "eq-ned-02")?;
    near("block norm baseline", base.rhs, 6.66228, 5e-6)?;
    if b8.rhs < b8.lhs - 1e-7 {
        return Err(format!("recomputed rhs {} below lhs {}", b8.rhs, b8.lhs));
    }
    let report = run_paper_checks(&cfg()).map_err(|e| e.to_string())?;
    let row = report.row("eq-ned-02", "B8.rhs").ok_or("no B8.rhs row")?;
    if row.verdict != Verdict::Discrepancy || row.printed != 2.25 {
        return Err(format!("printed 2.25 not flagged: {row:?}"));
    }
    Ok(format!(
        "lhs={:.7} rhs={:.7} (printed 2.25 flagged) baseline={:.7}",
        b8.lhs, b8.rhs, base.rhs
    ))
}

fn c7() -> Outcome {
    let mut r = rng(7);
    let mut worst_gap: f64 = 0.0;
    for i in 0..1000 {
        let d = r.random_range(2..=4);
        let t1 = gaussian_matrix(&mut r, d, d);
        let t2 = gaussian_matrix(&mut r, d, d);
        let rep = block_identity_check(&t1, &t2, &cfg()).map_err(|e| e.to_string())?;
        if !rep.agree {
            return Err(format!("block identity pair {i} disagrees: {rep:?}"));
        }
        worst_gap = worst_gap.max((rep.omega_block.midpoint() - rep.half_sup.midpoint()).abs());
    }
    let mut worst_dev: f64 = 0.0;
    for i in 0..1000 {
        let ops = random_tuple(&mut r, (2, 5), (1, 5));
        let scale: f64 = ops.iter().map(operator_norm).sum::<f64>().powi(2);
        let dev = pairwise_sum_identity_check(&ops).map_err(|e| e.to_string())?;
        if dev > 1e-10 * scale {
            return Err(format!(
                "pairwise identity tuple {i}: deviation {dev:e} > 1e-10 * {scale}"
            ));
        }
        worst_dev = worst_dev.max(dev / scale.max(f64::MIN_POSITIVE));
    }
    Ok(format!(
        "1000 pairs agree (max midpoint gap {worst_gap:.2e}); 1000 tuples, max relative deviation {worst_dev:.2e}"
    ))
}

fn c8() -> Outcome {
    let suite = SuiteConfig {
        trials: 10_000,
        dim_range: (2, 5),
        tuple_range: (1, 5),
        seed: 42,
        tolerances: cfg(),
    };
    let report = run_random_suite(&suite).map_err(|e| e.to_string())?;
    if !report.passed() {
        let bad: Vec<String> = report
            .summaries
            .iter()
            .filter(|s| s.violations > 0 || s.errors > 0)
            .map(|s| format!("{}: {} violations, {} errors", s.bound, s.violations, s.errors))
            .collect();
        return Err(bad.join("; "));
    }
    let worst = report
        .summaries
        .iter()
        .map(|s| s.worst_normalized_slack)
        .fold(f64::INFINITY, f64::min);
    Ok(format!(
        "10000 trials x {} bounds, 0 violations (smallest normalized slack {worst:.2e})",
        report.summaries.len()
    ))
}

fn c9() -> Outcome {
    let mut r = rng(9);
    let tol = cfg();
    let mut widest: f64 = 0.0;
    for i in 0..1000 {
        let d = r.random_range(2..=6);
        let t = gaussian_matrix(&mut r, d, d);
        let est = numerical_radius(&t, &tol).map_err(|e| e.to_string())?;
        let rel = est.width() / (1.0 + est.lower);
        widest = widest.max(rel);
        if rel > 1e-8 {
            return Err(format!("matrix {i}: width {:e} exceeds 1e-8 (1 + w)", est.width()));
        }
        let oracle = radius_sampling_oracle(&t, 2000, i).map_err(|e| e.to_string())?;
        if oracle > est.upper + 1e-9 {
            return Err(format!("matrix {i}: oracle {oracle} above enclosure {est:?}"));
        }
        let n = operator_norm(&t);
        if n / 2.0 > est.lower * (1.0 + 1e-12) || est.upper > n * (1.0 + 1e-9) {
            return Err(format!("matrix {i}: norm sandwich fails, ||T||={n}, {est:?}"));
        }
        let k = hermitian_norm(&(&t.gram() + &(&t * &t.adjoint()))).map_err(|e| e.to_string())?;
        let slack = tol.slack_tol * k;
        if 0.25 * k > est.upper.powi(2) + slack || est.lower.powi(2) > 0.5 * k + slack {
            return Err(format!("matrix {i}: quadratic sandwich fails, k={k}, {est:?}"));
        }
    }
    Ok(format!("1000 matrices, widest relative certificate {widest:.2e}"))
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut worst: f64 = 0.0;
    for i in 0..300 {
        let d = r.random_range(1..=6);
        let ops = vec![gaussian_matrix(&mut r, d, d)];
        let scale = operand_scale(&ops).powi(2);
        let mut reports = vec![
            evaluate_bound(BoundId::B4, &ops, &cfg()).map_err(|e| e.to_string())?,
            evaluate_bound(BoundId::B9, &ops, &cfg()).map_err(|e| e.to_string())?,
        ];
        reports.extend(singular_value_bounds(&ops, &cfg()).map_err(|e| e.to_string())?);
        for rep in reports {
            let rel = rep.slack.abs() / scale;
            worst = worst.max(rel);
            if rel > 1e-10 {
                return Err(format!(
                    "operand {i}: {} slack {:e} with scale {scale}",
                    rep.label(),
                    rep.slack
                ));
            }
        }
    }
    Ok(format!("300 single operands, max |slack| / scale {worst:.2e}"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "sharp two-term bound and comparators",
            limit: Some(Duration::from_secs(1)),
            run: c1,
        },
        Criterion {
            id: 2,
            title: "real-part bound",
            limit: None,
            run: c2,
        },
        Criterion {
            id: 3,
            title: "Cartesian bound sharpness",
            limit: None,
            run: c3,
        },
        Criterion {
            id: 4,
            title: "absolute-value bound sharpness",
            limit: None,
            run: c4,
        },
        Criterion {
            id: 5,
            title: "block bound via absolute values",
            limit: None,
            run: c5,
        },
        Criterion {
            id: 6,
            title: "block bound, recomputed right side",
            limit: None,
            run: c6,
        },
        Criterion {
            id: 7,
            title: "block and pairwise-sum identities",
            limit: Some(Duration::from_secs(60)),
            run: c7,
        },
        Criterion {
            id: 8,
            title: "soundness sweep",
            limit: Some(Duration::from_secs(600)),
            run: c8,
        },
        Criterion {
            id: 9,
            title: "certified radius quality",
            limit: None,
            run: c9,
        },
        Criterion {
            id: 10,
            title: "single-operand collapse",
            limit: None,
            run: c10,
        },
    ];
    let mut failed = 0;
    for c in criteria {
        let start = Instant::now();
        let mut outcome = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(msg), Some(limit)) = (&outcome, c.limit) {
            if elapsed > limit {
                outcome = Err(format!("{msg}; took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        let (tag, detail) = match &outcome {
            Ok(m) => ("PASS", m.as_str()),
            Err(m) => ("FAIL", m.as_str()),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("criterion {:>2} {tag} {} [{elapsed:.2?}]: {detail}", c.id, c.title);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
