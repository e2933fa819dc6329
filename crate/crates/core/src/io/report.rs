//! Rendering of round reports, config comparisons and plot data.

use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::trace::{format_value, trace_records, write_trace_csv, TraceRecord};
use crate::pipeline::{ConfigComparison, Degeneracy, RoundReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "human" => Ok(Format::Human),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Schema {
                location: "format".into(),
                message: format!("unknown format {other:?}"),
            }),
        }
    }
}

fn human(report: &RoundReport, out: &mut String) {
    let c = &report.config;
    let _ = writeln!(
        out,
        "Round {} ({}, credibility floor {}, tie epsilon {:e})",
        report.round_label,
        c.describe(),
        c.credibility_floor,
        c.tie_epsilon
    );
    let _ = writeln!(out, "{}", report.ranking.order.join(" > "));
    let width = report
        .alternatives
        .iter()
        .map(|a| a.alternative.len())
        .max()
        .unwrap_or(0)
        .max("alternative".len());
    let _ = writeln!(out, "{:<width$}  {:>10}", "alternative", "GE");
    for alt in &report.alternatives {
        let _ = writeln!(
            out,
            "{:<width$}  {:>10.4}",
            alt.alternative, alt.gross_estimation
        );
    }
    for d in &report.degeneracies {
        let note = match d {
            Degeneracy::DegenerateGroup {
                alternative,
                expert,
            } => {
                format!("{alternative}/{expert}: identical criteria, uniform weights used")
            }
            Degeneracy::AllTies {
                alternative,
                expert,
            } => {
                format!("{alternative}/{expert}: all similarities tied, uniform weights used")
            }
            Degeneracy::TiedRanking => "equal estimations ordered by label".to_string(),
        };
        let _ = writeln!(out, "note: {note}");
    }
}

/// Render one report.
pub fn emit_report(report: &RoundReport, format: Format) -> String {
    emit_reports(std::slice::from_ref(report), format)
}

/// Render several reports: human blocks separated by blank lines, a JSON
/// array, or one CSV trace table.
pub fn emit_reports(reports: &[RoundReport], format: Format) -> String {
    match format {
        Format::Human => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                human(r, &mut out);
            }
            out
        }
        Format::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let records: Vec<TraceRecord> = reports.iter().flat_map(trace_records).collect();
            write_trace_csv(&records)
        }
    }
}

pub fn parse_report_json(text: &str) -> Result<RoundReport> {
    serde_json::from_str(text).map_err(crate::io::judgments::parse_error)
}

/// One line per configuration and round, marking agreement with the
/// reference ranking.
pub fn emit_comparisons(comparisons: &[ConfigComparison], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(comparisons).expect("comparisons always serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            w.write_record(["round", "config", "ranking", "matches_reference"])
                .expect("writing to memory");
            for c in comparisons {
                for o in &c.outcomes {
                    let m = o.matches_reference.map_or(String::new(), |b| b.to_string());
                    w.write_record([
                        c.round_label.as_str(),
                        &o.config.describe(),
                        &o.ranking.join(" > "),
                        &m,
                    ])
                    .expect("writing to memory");
                }
            }
            String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8")
        }
        Format::Human => {
            let mut out = String::new();
            for c in comparisons {
                let _ = writeln!(out, "Round {}", c.round_label);
                if let Some(r) = &c.reference_ranking {
                    let _ = writeln!(out, "  reference              {}", r.join(" > "));
                }
                for o in &c.outcomes {
                    let mark = match o.matches_reference {
                        Some(true) => "match",
                        Some(false) => "differs",
                        None => "",
                    };
                    let _ = writeln!(
                        out,
                        "  {:<22} {}  {mark}",
                        o.config.describe(),
                        o.ranking.join(" > ")
                    );
                }
            }
            out
        }
    }
}

/// Long-format CSV of gross estimations, one row per round and alternative.
pub fn plot_data(reports: &[RoundReport]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(["round", "alternative", "ge", "rank"])
        .expect("writing to memory");
    for r in reports {
        for alt in &r.alternatives {
            let pos = r
                .ranking
                .order
                .iter()
                .position(|l| *l == alt.alternative)
                .map_or(0, |p| p + 1);
            w.write_record([
                r.round_label.as_str(),
                &alt.alternative,
                &format_value(alt.gross_estimation),
                &pos.to_string(),
            ])
            .expect("writing to memory");
        }
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("UTF-8")
}
