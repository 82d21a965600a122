//! Seeded instance generators, a brute-force oracle over tiny fields, and
//! campaigns that run every property check and keep failing inputs.

mod campaign;
mod exhaustive;
mod gen;

pub use campaign::{
    counterexample_file_name, evaluate, generate_input, instance_rng, replay_counterexample, run_campaign,
    write_counterexample, CampaignConfig, CampaignReport, Check, CheckInput, Counterexample, Evaluation,
    FailureSummary, Tally,
};
pub use exhaustive::{exhaustive_parameter_count, exhaustive_solvability, EXHAUSTIVE_MAX_PARAMETERS};
pub use gen::{
    gen_dual_array, gen_element, gen_invertible, gen_low_rank, gen_matrix, gen_quaternity, gen_random_instance,
    gen_solvable_instance, gen_structured, gen_unknowns, instance_from_unknowns, DimBounds,
};
