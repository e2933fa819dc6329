//! Ranking alternatives from panels of intuitionistic fuzzy judgments.
//!
//! Each expert's judgments of an alternative are weighted by how typical
//! they are within the expert's own group, experts are weighted by
//! agreement and information content, and a soft likelihood turns the
//! support values into one estimation per alternative.

pub mod credibility;
pub mod error;
pub mod group;
pub mod ifs;
pub mod io;
pub mod pipeline;
pub mod slf;

pub use credibility::Panel;
pub use error::{Error, Result};
pub use group::GroupAssessment;
pub use ifs::{Ifn, SplitStrategy};
pub use pipeline::{
    compare_configs, evaluate_all, evaluate_round, first_matching_config, EvaluationConfig,
    RoundInput, RoundReport,
};
pub use slf::DpSource;
