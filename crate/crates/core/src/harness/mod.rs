//! Instance generators, ratio experiments and the sampled arithmetic checks.

pub mod experiment;
pub mod generators;
pub mod lemmas;

pub use experiment::{run_ratio_experiment, GeneratorKind, RatioConfig, RatioReport, RatioRow};
pub use generators::{gen_random_instance, gen_safe_tree_family, gen_two_vc_instance, mix_seed, row_rng, RandomConfig, TwoVcConfig};
pub use lemmas::{check_arithmetic_lemmas, LemmaReport};
