//! Verdict pipelines built on the slope and flop invariants.

mod assess;
mod pipelines;
mod ranges;
mod report;

pub(crate) use assess::assess;
pub use assess::{reduced_at, sample_at};
pub use pipelines::{
    flop_destabilize, flop_verdict, futaki_long_eq, maeda_bound, maeda_closed_form, maeda_destabilize, maeda_epsilon,
    restrict_eq_bound, theorem_check, TheoremOptions,
};
pub use ranges::{unstable_beta_range, BetaRanges};
pub use report::{CRule, SmallBeta, StabilityReport, Verdict, Witness};
