#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixture(name: &str) -> String {
    manifest_dir()
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir()
        .join("tests/golden")
        .join(format!("{name}.json"))
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Runs the binary with `XICOR_THREADS` set when `threads` is given.
pub fn run(args: &[String], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_xicor"));
    cmd.args(args).env_remove("XICOR_THREADS");
    if let Some(t) = threads {
        cmd.env("XICOR_THREADS", t.to_string());
    }
    cmd.output().expect("binary runs")
}

pub fn args(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

pub struct Golden {
    pub name: &'static str,
    pub args: Vec<String>,
}

/// Invocations whose standard output is committed under `tests/golden`.
pub fn goldens() -> Vec<Golden> {
    let independent = fixture("independent.csv");
    let tied = fixture("tied.tsv");
    let g = |name, a: &[&str]| Golden {
        name,
        args: args(a),
    };
    vec![
        g(
            "compute_independent",
            &["compute", "-i", &independent, "--symmetrize"],
        ),
        g(
            "compute_tied",
            &[
                "compute",
                "-i",
                &tied,
                "-d",
                "tab",
                "-x",
                "group",
                "-y",
                "response",
                "--tie-average",
                "500",
                "--seed",
                "11",
            ],
        ),
        g(
            "test_independent_asymptotic",
            &["test", "-i", &independent, "--seed", "5"],
        ),
        g(
            "test_independent_permutation",
            &[
                "test",
                "-i",
                &independent,
                "--method",
                "permutation",
                "--n-perms",
                "499",
                "--seed",
                "5",
            ],
        ),
        g(
            "test_tied_symmetrized",
            &[
                "test",
                "-i",
                &tied,
                "-d",
                "tab",
                "--method",
                "permutation",
                "--statistic",
                "symmetrized",
                "--n-perms",
                "199",
            ],
        ),
        g(
            "simulate_null",
            &[
                "simulate", "--study", "null", "--n", "50", "--reps", "400", "--seed", "3",
            ],
        ),
        g(
            "simulate_null_binomial",
            &[
                "simulate", "--study", "null", "--y", "binomial", "--n", "30", "--reps", "200",
                "--seed", "3",
            ],
        ),
        g(
            "simulate_bernoulli",
            &[
                "simulate",
                "--study",
                "bernoulli",
                "--n",
                "200",
                "--reps",
                "300",
                "--seed",
                "1",
            ],
        ),
        g(
            "simulate_power",
            &[
                "simulate",
                "--study",
                "power",
                "--scenario",
                "w_shape",
                "--n",
                "60",
                "--reps",
                "100",
                "--lambda",
                "0,0.5,1",
                "--seed",
                "2",
            ],
        ),
        g(
            "simulate_power_permutation",
            &[
                "simulate",
                "--study",
                "power",
                "--scenario",
                "circular",
                "--test",
                "permutation",
                "--n-perms",
                "99",
                "--n",
                "50",
                "--reps",
                "40",
                "--lambda",
                "0,0.5",
                "--seed",
                "2",
            ],
        ),
    ]
}
