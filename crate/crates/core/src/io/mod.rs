//! Input files (initial values, votes) and report documents.

mod input;
mod report;

pub use input::{parse_initial_values, parse_votes};
pub use report::{
    format_value, render_csv, render_table, valuation_map, ConfigEcho, EnhancedRoundDocument, FrameworkSummary,
    OutputFormat, RunReportDocument,
};
