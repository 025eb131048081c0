//! Correlation with significance, run summaries and the lexical predictor table.

mod correlation;
mod predictors;
mod special;
mod summary;

pub use correlation::{pearson, CorrelationResult};
pub use predictors::{build_predictor_table, PredictorRow, PredictorTable, PREDICTORS};
pub use special::{ln_gamma, regularized_incomplete_beta, student_t_two_tailed};
pub use summary::{run_summary, RunSummary};
