//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use xicor::oracle::{self, VerifyOptions};
use xicor::sims::{self, NullKind, PowerTest, ScenarioKind, ScenarioSpec};
use xicor::xi::XiRatio;
use xicor::{rng, PairedSample, DEFAULT_SEED};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn within_budget(elapsed: Duration, seconds: f64) -> bool {
    elapsed.as_secs_f64() < seconds
}

fn exact_extremes() -> Result<Outcome, String> {
    let n = 20;
    let ids: Vec<f64> = (1..=n).map(f64::from).collect();
    let identity = PairedSample::new(ids.clone(), ids).map_err(|e| e.to_string())?;
    let top = xicor::xi(&identity, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let alternating = PairedSample::new(vec![1.0, 2.0, 3.0, 4.0], vec![2.0, 4.0, 1.0, 3.0])
        .map_err(|e| e.to_string())?;
    let low = xicor::xi(&alternating, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let ok = top.exact() == XiRatio::new(18, 21)
        && low.exact() == XiRatio::new(-2, 5)
        && low.value == -0.4;
    Ok(outcome(
        ok,
        format!("identity = {}, alternating = {}", top.exact(), low.exact()),
    ))
}

fn oracle_equivalence() -> Result<Outcome, String> {
    let start = Instant::now();
    let report = oracle::verify(&VerifyOptions {
        sweep_size: 1000,
        max_n: 200,
        seed: DEFAULT_SEED,
        inject_fault: false,
    });
    let elapsed = start.elapsed();
    let summary: Vec<String> = report
        .sweeps
        .iter()
        .map(|s| format!("{} {}/{}", s.name, s.cases - s.failures, s.cases))
        .collect();
    Ok(outcome(
        report.passed && within_budget(elapsed, 30.0),
        format!("{}; {:.1}s", summary.join(", "), elapsed.as_secs_f64()),
    ))
}

fn null_variance() -> Result<Outcome, String> {
    let start = Instant::now();
    let study = sims::null_distribution_study(NullKind::Uniform, 1000, 10_000, DEFAULT_SEED)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let ok = (0.37..=0.43).contains(&study.variance)
        && study.ks_distance < 0.03
        && within_budget(elapsed, 120.0);
    Ok(outcome(
        ok,
        format!(
            "var(sqrt(n) xi) = {:.4}, KS = {:.4}; {:.1}s",
            study.variance,
            study.ks_distance,
            elapsed.as_secs_f64()
        ),
    ))
}

fn discrete_null() -> Result<Outcome, String> {
    let start = Instant::now();
    let n = 100_000;
    let mut r = rng::stream(DEFAULT_SEED);
    let coins: Vec<f64> = (0..n)
        .map(|_| if r.random_bool(0.5) { 1.0 } else { 0.0 })
        .collect();
    let uniforms: Vec<f64> = (0..n).map(|_| rng::uniform(&mut r, 0.0, 1.0)).collect();
    let tau_coin = xicor::tau_squared_hat(&coins)
        .map_err(|e| e.to_string())?
        .value;
    let tau_unif = xicor::tau_squared_hat(&uniforms)
        .map_err(|e| e.to_string())?
        .value;
    let elapsed = start.elapsed();
    let ok = (0.98..=1.02).contains(&tau_coin)
        && (0.38..=0.42).contains(&tau_unif)
        && within_budget(elapsed, 10.0);
    Ok(outcome(
        ok,
        format!(
            "Bernoulli(1/2) tau^2 = {tau_coin:.4}, U[0,1] tau^2 = {tau_unif:.4}; {:.2}s",
            elapsed.as_secs_f64()
        ),
    ))
}

fn dependent_bernoulli() -> Result<Outcome, String> {
    let start = Instant::now();
    let study = sims::bernoulli_dependence_study(0.4, 0.5, 1000, 10_000, DEFAULT_SEED)
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let ok = (0.370..=0.380).contains(&study.mean)
        && (0.036..=0.044).contains(&study.sd)
        && within_budget(elapsed, 180.0);
    Ok(outcome(
        ok,
        format!(
            "mean = {:.4}, sd = {:.4}; {:.1}s",
            study.mean,
            study.sd,
            elapsed.as_secs_f64()
        ),
    ))
}

fn population_formula() -> Result<Outcome, String> {
    let exact = xicor::population_xi_bernoulli_product(0.4, 0.5).map_err(|e| e.to_string())?;
    let model = ScenarioSpec::bernoulli_product(0.4, 0.5, 10_000).map_err(|e| e.to_string())?;
    let mc =
        oracle::xi_population_mc(&model, 10_000, 200, DEFAULT_SEED).map_err(|e| e.to_string())?;
    let ok = exact == 0.375 && (mc.estimate - 0.375).abs() <= 3.0 * mc.stderr;
    Ok(outcome(
        ok,
        format!(
            "formula = {exact}, MC = {:.5} +/- {:.5}",
            mc.estimate, mc.stderr
        ),
    ))
}

fn size_calibration() -> Result<Outcome, String> {
    let rate = |test| -> Result<f64, String> {
        let curve = sims::power_curve(
            ScenarioKind::IndependentUniform,
            &[0.0],
            100,
            2000,
            0.05,
            test,
            DEFAULT_SEED,
        )
        .map_err(|e| e.to_string())?;
        Ok(curve.points[0].rate)
    };
    let asymptotic = rate(PowerTest::AsymptoticContinuous)?;
    let permutation = rate(PowerTest::Permutation {
        n_permutations: 199,
    })?;
    let band = 0.03..=0.07;
    Ok(outcome(
        band.contains(&asymptotic) && band.contains(&permutation),
        format!("asymptotic = {asymptotic:.4}, permutation = {permutation:.4}"),
    ))
}

fn power_sanity() -> Result<Outcome, String> {
    let grid: Vec<f64> = (0..=10).map(|i| f64::from(i) / 10.0).collect();
    let mut ok = true;
    let mut notes = Vec::new();
    for kind in ScenarioKind::ALTERNATIVES {
        let curve = sims::power_curve(
            kind,
            &grid,
            100,
            500,
            0.05,
            PowerTest::AsymptoticContinuous,
            DEFAULT_SEED,
        )
        .map_err(|e| e.to_string())?;
        let pts = &curve.points;
        let mut monotone = true;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let se = (pts[i].stderr.powi(2) + pts[j].stderr.powi(2)).sqrt();
                if pts[j].rate - pts[i].rate > 2.0 * se + 1e-12 {
                    monotone = false;
                }
            }
        }
        let full = matches!(kind, ScenarioKind::Sinusoid | ScenarioKind::WShape);
        let noiseless_ok = !full || pts[0].rate == 1.0;
        ok &= monotone && noiseless_ok;
        notes.push(format!(
            "{kind} {:.2}->{:.2}",
            pts[0].rate,
            pts[pts.len() - 1].rate
        ));
    }
    Ok(outcome(ok, notes.join(", ")))
}

fn performance() -> Result<Outcome, String> {
    let report = sims::runtime_benchmark(&[1_000, 10_000, 100_000], 21, DEFAULT_SEED)
        .map_err(|e| e.to_string())?;
    let median = report.points[1].median_seconds;
    let ratios: Vec<String> = report.ratios.iter().map(|r| format!("{r:.1}")).collect();
    Ok(outcome(
        median < 0.1 && report.scaling_ok,
        format!(
            "median at 1e4 = {:.4}s, ratios = [{}]",
            median,
            ratios.join(", ")
        ),
    ))
}

fn determinism() -> Result<Outcome, String> {
    let max_threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .max(4);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for g in common::goldens() {
        let expected =
            std::fs::read(common::golden_path(g.name)).map_err(|e| format!("{}: {e}", g.name))?;
        let runs = [None, None, Some(1), Some(max_threads)];
        for threads in runs {
            let out = common::run(&g.args, threads);
            if !out.status.success() || out.stdout != expected {
                mismatches.push(format!("{} (threads {:?})", g.name, threads));
            }
        }
        checked += 1;
    }
    let ok = mismatches.is_empty();
    let detail = if ok {
        format!("{checked} fixtures x 4 runs, threads in {{default, 1, {max_threads}}}")
    } else {
        format!("mismatch: {}", mismatches.join(", "))
    };
    Ok(outcome(ok, detail))
}

type Check = fn() -> Result<Outcome, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 10] = [
        ("exact extremes", exact_extremes),
        ("oracle equivalence", oracle_equivalence),
        ("null variance", null_variance),
        ("discrete null", discrete_null),
        ("dependent Bernoulli", dependent_bernoulli),
        ("population formula", population_formula),
        ("size calibration", size_calibration),
        ("power sanity", power_sanity),
        ("performance", performance),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        let tag = if result.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!result.passed);
        println!("{tag} {:>2} {name}: {}", i + 1, result.detail);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
