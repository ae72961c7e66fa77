use rand::Rng;
use xicor::oracle::{
    sweep_sample, verify, xi_naive, xi_population_mc, FnModel, SweepFamily, VerifyOptions,
};
use xicor::rng;
use xicor::sims::{ScenarioKind, ScenarioSpec};
use xicor::{xi, PairedSample};

#[test]
fn fast_xi_equals_naive_on_random_samples() {
    let mut gen = rng::stream(1_000);
    for case in 0..1_000u64 {
        let family = SweepFamily::ALL[case as usize % SweepFamily::ALL.len()];
        let n = gen.random_range(2..=200);
        let s = sweep_sample(family, n, &mut gen);
        assert_eq!(
            xi(&s, case).unwrap().exact(),
            xi_naive(&s, case).unwrap(),
            "{family:?} n={n} case {case}"
        );
    }
}

#[test]
fn naive_xi_hand_examples() {
    let v: Vec<f64> = (1..=20).map(f64::from).collect();
    let s = PairedSample::new(v.clone(), v).unwrap();
    assert_eq!(xi_naive(&s, 0).unwrap(), xi(&s, 0).unwrap().exact());
}

#[test]
fn default_verification_passes() {
    let report = verify(&VerifyOptions {
        sweep_size: 300,
        max_n: 120,
        seed: 7,
        inject_fault: false,
    });
    for sweep in &report.sweeps {
        assert!(sweep.passed, "{sweep:?}");
        assert!(sweep.cases > 0);
    }
    assert!(report.passed);
}

#[test]
fn population_bernoulli_product() {
    let model = ScenarioSpec::bernoulli_product(0.4, 0.5, 10_000).unwrap();
    let est = xi_population_mc(&model, 10_000, 50, 1).unwrap();
    assert!((est.estimate - 0.375).abs() <= 3.0 * est.stderr, "{est:?}");
}

#[test]
fn population_independence() {
    let model = ScenarioSpec::new(ScenarioKind::IndependentUniform, 0.0, 10_000).unwrap();
    let est = xi_population_mc(&model, 10_000, 50, 2).unwrap();
    assert!(est.estimate.abs() <= 3.0 * est.stderr, "{est:?}");
}

#[test]
fn population_square_is_near_one() {
    let n = 10_000;
    let model = FnModel::new("Y = X^2, X ~ U[-1,1]", |r: &mut rng::StreamRng| {
        let x = rng::uniform(r, -1.0, 1.0);
        (x, x * x)
    });
    let est = xi_population_mc(&model, n, 20, 3).unwrap();
    let ceiling = (n as f64 - 2.0) / (n as f64 + 1.0);
    assert!(est.estimate <= ceiling);
    assert!(ceiling - est.estimate <= 3.0 * est.stderr + 1e-3, "{est:?}");
}

#[test]
fn stderr_shrinks_like_inverse_root_reps() {
    let model = ScenarioSpec::new(ScenarioKind::Linear, 0.5, 500).unwrap();
    let small = xi_population_mc(&model, 500, 100, 4).unwrap();
    let large = xi_population_mc(&model, 500, 200, 5).unwrap();
    let ratio = small.stderr / large.stderr;
    let expected = 2f64.sqrt();
    assert!((ratio / expected - 1.0).abs() <= 0.3, "ratio {ratio}");
}
