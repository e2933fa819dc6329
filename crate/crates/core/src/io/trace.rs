//! Flat audit records of every intermediate quantity in a report.
//!
//! Slot conventions in the `criterion` column:
//! - `x1` for per-criterion values, `x1:mu` / `x1:nu` / `x1:reliability`
//!   for the parts of a pair,
//! - `x1|x2` for a within-group distance (upper triangle only),
//! - `#1` for a sorted position, `#1:x3` when the position came from `x3`.
//!
//! A group distance puts both experts in the `expert` column as
//! `Expert_1|Expert_3`, perspective first.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::pipeline::RoundReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Reliability,
    Z,
    Combined,
    Distance,
    Similarity,
    Points,
    Weights,
    GroupDistance,
    Divergence,
    Credibility,
    Ivf,
    IvfNorm,
    Alpha,
    Sharpness,
    OwaWeight,
    Dp,
    Dslf,
    Ge,
    Rank,
}

impl Stage {
    pub const ALL: [Stage; 19] = [
        Stage::Reliability,
        Stage::Z,
        Stage::Combined,
        Stage::Distance,
        Stage::Similarity,
        Stage::Points,
        Stage::Weights,
        Stage::GroupDistance,
        Stage::Divergence,
        Stage::Credibility,
        Stage::Ivf,
        Stage::IvfNorm,
        Stage::Alpha,
        Stage::Sharpness,
        Stage::OwaWeight,
        Stage::Dp,
        Stage::Dslf,
        Stage::Ge,
        Stage::Rank,
    ];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub round: String,
    pub alternative: String,
    pub stage: Stage,
    pub expert: Option<String>,
    pub criterion: Option<String>,
    #[serde(serialize_with = "serialize_value")]
    pub value: f64,
}

/// Shortest representation that parses back to the same `f64`, padded to at
/// least four decimals.
pub fn format_value(v: f64) -> String {
    let mut s = format!("{v}");
    if !v.is_finite() {
        return s;
    }
    let decimals = match s.find('.') {
        Some(dot) => s.len() - dot - 1,
        None => {
            s.push('.');
            0
        }
    };
    for _ in decimals..4 {
        s.push('0');
    }
    s
}

fn serialize_value<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_value(*v))
}

struct Builder<'a> {
    round: &'a str,
    records: Vec<TraceRecord>,
}

impl Builder<'_> {
    fn push(
        &mut self,
        alt: &str,
        stage: Stage,
        expert: Option<&str>,
        criterion: Option<String>,
        value: f64,
    ) {
        self.records.push(TraceRecord {
            round: self.round.to_string(),
            alternative: alt.to_string(),
            stage,
            expert: expert.map(str::to_string),
            criterion,
            value,
        });
    }
}

/// Every intermediate value of a report, in a fixed order.
pub fn trace_records(report: &RoundReport) -> Vec<TraceRecord> {
    let crit = &report.criteria_labels;
    let mut b = Builder {
        round: &report.round_label,
        records: Vec::new(),
    };
    for alt in &report.alternatives {
        let a = alt.alternative.as_str();
        for ex in &alt.experts {
            let e = Some(ex.expert.as_str());
            for (z, c) in ex.z.iter().zip(crit) {
                b.push(a, Stage::Reliability, e, Some(c.clone()), z.reliability);
            }
            for (z, c) in ex.z.iter().zip(crit) {
                b.push(a, Stage::Z, e, Some(format!("{c}:mu")), z.ifn.mu());
                b.push(a, Stage::Z, e, Some(format!("{c}:nu")), z.ifn.nu());
                b.push(
                    a,
                    Stage::Z,
                    e,
                    Some(format!("{c}:reliability")),
                    z.reliability,
                );
            }
            for (x, c) in ex.combined.iter().zip(crit) {
                b.push(a, Stage::Combined, e, Some(format!("{c}:mu")), x.mu());
                b.push(a, Stage::Combined, e, Some(format!("{c}:nu")), x.nu());
            }
            for i in 0..crit.len() {
                for j in (i + 1)..crit.len() {
                    let slot = format!("{}|{}", crit[i], crit[j]);
                    b.push(a, Stage::Distance, e, Some(slot), ex.distances.get(i, j));
                }
            }
            if let Some(sm) = &ex.similarity {
                for (v, c) in sm.iter().zip(crit) {
                    b.push(a, Stage::Similarity, e, Some(c.clone()), *v);
                }
            }
            for (v, c) in ex.points.iter().zip(crit) {
                b.push(a, Stage::Points, e, Some(c.clone()), *v as f64);
            }
            for (v, c) in ex.weights.weights.iter().zip(crit) {
                b.push(a, Stage::Weights, e, Some(c.clone()), *v);
            }
        }
        for (i, ex) in alt.experts.iter().enumerate() {
            for (k, other) in alt.experts.iter().enumerate() {
                if i != k {
                    let pair = format!("{}|{}", ex.expert, other.expert);
                    b.push(
                        a,
                        Stage::GroupDistance,
                        Some(&pair),
                        None,
                        ex.group_distances[k],
                    );
                }
            }
        }
        let per_expert = [
            (Stage::Divergence, &alt.divergence),
            (Stage::Credibility, &alt.credibility.values),
            (Stage::Ivf, &alt.info_volume.raw),
            (Stage::IvfNorm, &alt.info_volume.normalized),
            (Stage::Alpha, &alt.attitude.values),
        ];
        for (stage, values) in per_expert {
            for (ex, v) in alt.experts.iter().zip(values) {
                b.push(a, stage, Some(&ex.expert), None, *v);
            }
        }
        for (ex, s) in alt.experts.iter().zip(&alt.sharpness) {
            b.push(a, Stage::Sharpness, Some(&ex.expert), None, s.p);
        }
        for ex in &alt.experts {
            let e = Some(ex.expert.as_str());
            for (j, w) in ex.owa.w.iter().enumerate() {
                b.push(a, Stage::OwaWeight, e, Some(format!("#{}", j + 1)), *w);
            }
            let series = &ex.likelihood;
            for (j, (d, &src)) in series.dp.iter().zip(&series.order).enumerate() {
                b.push(
                    a,
                    Stage::Dp,
                    e,
                    Some(format!("#{}:{}", j + 1, crit[src])),
                    *d,
                );
            }
            b.push(a, Stage::Dslf, e, None, ex.dslf);
        }
        b.push(a, Stage::Ge, None, None, alt.gross_estimation);
    }
    for (pos, label) in report.ranking.order.iter().enumerate() {
        b.push(label, Stage::Rank, None, None, (pos + 1) as f64);
    }
    b.records
}

const HEADER: [&str; 6] = [
    "round",
    "alternative",
    "stage",
    "expert",
    "criterion",
    "value",
];

/// Render records as CSV with a header row and LF line endings.
pub fn write_trace_csv(records: &[TraceRecord]) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(HEADER).expect("writing to memory");
    for r in records {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is UTF-8")
}

pub fn parse_trace_csv(text: &str) -> Result<Vec<TraceRecord>> {
    let mut reader = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.iter().ne(HEADER) {
        return Err(Error::Schema {
            location: "trace header".into(),
            message: format!("expected {}", HEADER.join(",")),
        });
    }
    reader.deserialize().map(|r| r.map_err(csv_error)).collect()
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        column: 0,
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(0.25), "0.2500");
        assert_eq!(format_value(4.0), "4.0000");
        assert_eq!(format_value(-0.2), "-0.2000");
        assert_eq!(format_value(7.748512345678), "7.748512345678");
        let tiny = 1.234e-20;
        assert_eq!(format_value(tiny).parse::<f64>().unwrap(), tiny);
        let third = 1.0 / 3.0;
        assert_eq!(format_value(third).parse::<f64>().unwrap(), third);
    }

    #[test]
    fn empty_trace_is_header_only() {
        assert_eq!(
            write_trace_csv(&[]),
            "round,alternative,stage,expert,criterion,value\n"
        );
        assert!(parse_trace_csv(&write_trace_csv(&[])).unwrap().is_empty());
    }

    #[test]
    fn record_round_trip() {
        let records = vec![
            TraceRecord {
                round: "1".into(),
                alternative: "Supplier, 1".into(),
                stage: Stage::GroupDistance,
                expert: Some("E1|E2".into()),
                criterion: None,
                value: 0.1 + 0.2,
            },
            TraceRecord {
                round: "1".into(),
                alternative: "S".into(),
                stage: Stage::Rank,
                expert: None,
                criterion: None,
                value: 1.0,
            },
        ];
        let text = write_trace_csv(&records);
        assert!(text.contains("\"Supplier, 1\",group_distance,E1|E2,,0.30000000000000004\n"));
        assert_eq!(parse_trace_csv(&text).unwrap(), records);
    }

    #[test]
    fn bad_header() {
        assert!(matches!(
            parse_trace_csv("a,b\n"),
            Err(Error::Schema { .. })
        ));
        let bad_stage = "round,alternative,stage,expert,criterion,value\n1,A,bogus,,,1.0\n";
        assert!(matches!(
            parse_trace_csv(bad_stage),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
