use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use xicor::inference::{self, NullVariance, Statistic};
use xicor::oracle::{self, VerifyOptions};
use xicor::sims::{self, NullKind, PowerTest, ScenarioKind};
use xicor::{xi, xi_symmetrized, xi_tie_averaged};

use crate::cli::*;
use crate::error::CliError;
use crate::input::{read_sample, read_source};

pub const SCHEMA_VERSION: u32 = 1;

pub fn resolve_seed(raw: &str) -> Result<u64, CliError> {
    if raw == "random" {
        return Ok(rand::rng().random());
    }
    raw.parse().map_err(|_| {
        CliError::Usage(format!(
            "--seed must be an unsigned integer or 'random', got '{raw}'"
        ))
    })
}

/// Top-level document: `{"schema": 1, "command": ..., ...body}`.
fn document(command: &str, body: impl Serialize) -> Result<Value, CliError> {
    let mut doc = json!({ "schema": SCHEMA_VERSION, "command": command });
    let body = serde_json::to_value(body).map_err(|e| CliError::Io(e.to_string()))?;
    if let (Some(doc), Value::Object(fields)) = (doc.as_object_mut(), body) {
        doc.extend(fields);
    }
    Ok(doc)
}

pub fn compute(args: &ComputeArgs, seed: u64) -> Result<Value, CliError> {
    let bytes = read_source(&args.input.input)?;
    let sample = read_sample(&bytes, args.input.delimiter, &args.input.x, &args.input.y)?;
    let res = xi(&sample, seed)?;
    let mut body = json!({
        "xi": res.value,
        "n": res.n,
        "x_had_ties": res.x_had_ties,
        "y_had_ties": res.y_had_ties,
        "seed": seed,
        "seed_used": res.seed_used.is_some(),
        "formula": res.formula,
    });
    if args.symmetrize {
        let sym = xi_symmetrized(&sample, seed)?;
        body["symmetrized"] = json!({
            "value": sym.value,
            "xi_xy": sym.forward.value,
            "xi_yx": sym.backward.value,
        });
    }
    if let Some(draws) = args.tie_average {
        body["tie_average"] = serde_json::to_value(xi_tie_averaged(&sample, draws, seed)?)
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    document("compute", body)
}

pub fn test(args: &TestArgs, seed: u64) -> Result<Value, CliError> {
    let bytes = read_source(&args.input.input)?;
    let sample = read_sample(&bytes, args.input.delimiter, &args.input.x, &args.input.y)?;
    let statistic = match args.statistic {
        StatisticArg::Xi => Statistic::Xi,
        StatisticArg::Symmetrized => Statistic::XiSymmetrized,
    };
    let result = match args.method {
        MethodArg::Asymptotic => {
            if statistic == Statistic::XiSymmetrized {
                return Err(CliError::Usage(
                    "the symmetrized statistic is only available with --method permutation".into(),
                ));
            }
            let variance = match (args.y_continuous, args.force_continuous) {
                (false, _) => NullVariance::Estimated,
                (true, false) => NullVariance::Continuous,
                (true, true) => NullVariance::ForceContinuous,
            };
            inference::test_asymptotic(&sample, variance, seed)?
        }
        MethodArg::Permutation => {
            inference::test_permutation(&sample, statistic, args.n_perms, seed)?
        }
    };
    let mut body = serde_json::to_value(&result).map_err(|e| CliError::Io(e.to_string()))?;
    body["statistic_kind"] = serde_json::to_value(statistic).unwrap_or(Value::Null);
    document("test", body)
}

pub struct SimulateOutput {
    pub doc: Value,
    pub csv: Option<Vec<u8>>,
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| CliError::Io(e.to_string()))
}

pub fn simulate(args: &SimulateArgs, seed: u64) -> Result<SimulateOutput, CliError> {
    let (doc, csv) = match args.study {
        StudyArg::Null => {
            let kind = match args.y_kind {
                NullArg::Uniform => NullKind::Uniform,
                NullArg::Binomial => NullKind::Binomial,
            };
            let study = sims::null_distribution_study(kind, args.n, args.reps, seed)?;
            let csv = to_csv(&study.histogram.bins)?;
            (
                document("simulate", json!({ "study": "null", "result": study }))?,
                csv,
            )
        }
        StudyArg::Bernoulli => {
            let study = sims::bernoulli_dependence_study(args.p, args.pp, args.n, args.reps, seed)?;
            let csv = to_csv(std::slice::from_ref(&study))?;
            (
                document("simulate", json!({ "study": "bernoulli", "result": study }))?,
                csv,
            )
        }
        StudyArg::Power => {
            let kind: ScenarioKind = args.scenario.parse()?;
            if !ScenarioKind::ALTERNATIVES.contains(&kind) {
                return Err(CliError::Usage(format!(
                    "power studies take one of the six noisy scenarios, got '{kind}'"
                )));
            }
            let test = match args.test {
                PowerTestArg::Asymptotic => PowerTest::AsymptoticContinuous,
                PowerTestArg::Permutation => PowerTest::Permutation {
                    n_permutations: args.n_perms,
                },
            };
            let curve = sims::power_curve(
                kind,
                &args.lambda,
                args.n,
                args.reps,
                args.alpha,
                test,
                seed,
            )?;
            let csv = to_csv(&curve.points)?;
            (
                document("simulate", json!({ "study": "power", "result": curve }))?,
                csv,
            )
        }
    };
    Ok(SimulateOutput {
        doc,
        csv: args.csv.is_some().then_some(csv),
    })
}

pub fn bench(args: &BenchArgs, seed: u64) -> Result<Value, CliError> {
    let report = sims::runtime_benchmark(&args.n_grid, args.reps, seed)?;
    document("bench", json!({ "seed": seed, "result": report }))
}

/// Returns the report and whether every sweep passed.
pub fn verify(args: &VerifyArgs, seed: u64) -> Result<(Value, bool), CliError> {
    let report = oracle::verify(&VerifyOptions {
        sweep_size: args.sweep_size,
        max_n: args.max_n,
        seed,
        inject_fault: args.inject_fault,
    });
    let passed = report.passed;
    Ok((
        document("verify", json!({ "seed": seed, "result": report }))?,
        passed,
    ))
}
