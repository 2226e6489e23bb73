//! Text formats: number and lottery literals, model documents, reports.

pub mod literal;
pub mod model;
pub mod report;

pub use literal::{parse_lottery, parse_nsreal, render_nsreal};
pub use model::{parse_model, parse_model_as, Alternative, AuditOptions, ModelDocument};
pub use report::{render_report, OutputMode};
