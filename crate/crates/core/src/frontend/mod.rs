//! File format, exports and machine-readable reports.

pub mod document;
pub mod dot;
pub mod report;

pub use document::{parse_document, serialize_document};
pub use dot::{export_dot, DotOptions};
pub use report::{FrameworkSummary, Report, REPORT_VERSION};
