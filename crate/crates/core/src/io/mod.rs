//! File formats: judgment input, reports, traces and plot data.

pub mod judgments;
pub mod report;
pub mod trace;

pub use judgments::{parse_config, parse_judgments, write_judgments, SCHEMA_VERSION};
pub use report::{
    emit_comparisons, emit_report, emit_reports, parse_report_json, plot_data, Format,
};
pub use trace::{
    format_value, parse_trace_csv, trace_records, write_trace_csv, Stage, TraceRecord,
};
