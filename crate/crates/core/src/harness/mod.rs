//! Theorem instantiation: generate parameter configurations that satisfy a
//! comparison theorem's hypothesis, confirm it on the parameter layer, and
//! certify the implied stochastic order numerically.

mod ai_tail;
mod explore;
mod identities;
mod scenario;
mod verify;

pub use ai_tail::{check_ai_tail, TailComparison};
pub use explore::{examine_candidate, explore_counterexamples, Candidate};
pub use identities::{
    gamma_mix_more_residual, gamma_pair_residual, gamma_single_residual, nb_mix_more_residual, nb_mixture_residual,
    nb_pair_residual, pair_latent_success, IdentityResidual, IDENTITY_GRID_POINTS,
};
pub use scenario::{
    generate_instance, worked_example, CoupledPair, Instance, Order, Scenario, ScenarioKind, MAX_COMPONENTS,
};
pub use verify::{
    numeric_check, parameter_check, parameter_pairs, run_scenario, verify_instance, verify_theorem_instance,
    write_reports, Agreement, NumericEvidence, Report, VerifyOptions, REPORT_VERSION,
};
