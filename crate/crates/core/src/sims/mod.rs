//! Simulation studies: null distributions, a dependent discrete model, power
//! curves over noise levels, and runtime scaling.

pub mod bench;
pub mod scenario;
pub mod studies;
pub mod summary;

pub use bench::{runtime_benchmark, BenchPoint, BenchReport};
pub use scenario::{generate, ScenarioKind, ScenarioSpec};
pub use studies::{
    bernoulli_dependence_study, null_distribution_study, power_curve, BernoulliStudy, NullKind,
    NullStudy, PowerCurve, PowerPoint, PowerTest,
};
