//! Profile documents, reports and the embedded fixture suite.

pub mod fixtures;
pub mod parse;
pub mod report;

pub use fixtures::{fixtures, run_fixtures, Fixture, FixtureResult};
pub use parse::{parse_profile, serialize_profile, ParseError};
pub use report::{format_analysis, format_report, ReportFormat};
