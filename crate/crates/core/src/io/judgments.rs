//! The judgment file: a JSON document holding one or more rounds.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "rounds": [
//!     {
//!       "round_label": "1",
//!       "criteria_labels": ["x1", "x2"],
//!       "experts": ["Expert_1", "Expert_2"],
//!       "alternatives": {
//!         "Supplier_1": [[[0.6, 0.2], [0.3, 0.5]], [[0.3, 0.4], [0.4, 0.4]]]
//!       },
//!       "reference_ranking": ["Supplier_1"]
//!     }
//!   ]
//! }
//! ```
//!
//! Each alternative holds one row per expert and one `[mu, nu]` pair per
//! criterion. `reference_ranking` is optional.

use std::fmt;
use std::marker::PhantomData;

use indexmap::IndexMap;
use serde::de::{Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::credibility::Panel;
use crate::error::{Error, Result};
use crate::group::GroupAssessment;
use crate::ifs::Ifn;
use crate::pipeline::{EvaluationConfig, RoundInput};

pub const SCHEMA_VERSION: &str = "1";

/// A JSON object whose keys must be unique; serde's maps keep the last
/// duplicate silently.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
struct UniqueMap<V>(IndexMap<String, V>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for UniqueMap<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct UniqueVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for UniqueVisitor<V> {
            type Value = UniqueMap<V>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object with unique keys")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut access: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut map = IndexMap::new();
                while let Some((key, value)) = access.next_entry::<String, V>()? {
                    if map.contains_key(&key) {
                        return Err(serde::de::Error::custom(format!("duplicate label {key:?}")));
                    }
                    map.insert(key, value);
                }
                Ok(UniqueMap(map))
            }
        }

        d.deserialize_map(UniqueVisitor(PhantomData))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    schema_version: String,
    rounds: Vec<RoundRepr>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RoundRepr {
    round_label: String,
    criteria_labels: Vec<String>,
    experts: Vec<String>,
    alternatives: UniqueMap<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    reference_ranking: Option<Vec<String>>,
}

pub(crate) fn parse_error(e: serde_json::Error) -> Error {
    // the position is carried separately, so drop serde_json's own suffix
    let text = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
    }
}

/// Parse and validate a judgment file.
pub fn parse_judgments(bytes: &[u8]) -> Result<Vec<RoundInput>> {
    let file: FileRepr = serde_json::from_slice(bytes).map_err(parse_error)?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema {
            location: "schema_version".into(),
            message: format!(
                "unsupported version {:?}, expected {SCHEMA_VERSION:?}",
                file.schema_version
            ),
        });
    }
    if file.rounds.is_empty() {
        return Err(Error::Schema {
            location: "rounds".into(),
            message: "no rounds".into(),
        });
    }
    let rounds: Vec<RoundInput> = file
        .rounds
        .into_iter()
        .map(build_round)
        .collect::<Result<_>>()?;
    if let Some(i) = (1..rounds.len()).find(|&i| {
        rounds[..i]
            .iter()
            .any(|r| r.round_label == rounds[i].round_label)
    }) {
        return Err(Error::Schema {
            location: format!("round {}", rounds[i].round_label),
            message: "duplicate round label".into(),
        });
    }
    Ok(rounds)
}

fn build_round(repr: RoundRepr) -> Result<RoundInput> {
    let round = &repr.round_label;
    let schema = |location: String, message: String| Error::Schema { location, message };
    let e = repr.experts.len();
    let m = repr.criteria_labels.len();
    if e < 2 {
        return Err(schema(
            format!("round {round}"),
            format!("need at least 2 experts, got {e}"),
        ));
    }
    if m < 2 {
        return Err(schema(
            format!("round {round}"),
            format!("need at least 2 criteria, got {m}"),
        ));
    }
    if repr.alternatives.0.is_empty() {
        return Err(schema(format!("round {round}"), "no alternatives".into()));
    }

    let mut alternatives = IndexMap::new();
    for (alt, rows) in repr.alternatives.0 {
        let at = format!("round {round}, alternative {alt}");
        if rows.len() != e {
            return Err(schema(
                at,
                format!("expected {e} expert rows, got {}", rows.len()),
            ));
        }
        let mut groups = Vec::with_capacity(e);
        for (expert, row) in repr.experts.iter().zip(rows) {
            let at = format!("{at}, expert {expert}");
            if row.len() != m {
                return Err(schema(
                    at,
                    format!("expected {m} criteria, got {}", row.len()),
                ));
            }
            let items = row
                .iter()
                .zip(&repr.criteria_labels)
                .map(|(&[mu, nu], criterion)| {
                    Ifn::new(mu, nu)
                        .map_err(|err| err.located(format!("{at}, criterion {criterion}")))
                })
                .collect::<Result<Vec<_>>>()?;
            groups.push(GroupAssessment::new(items).map_err(|err| err.located(at.clone()))?);
        }
        alternatives.insert(alt, Panel::new(groups)?);
    }

    let mut input = RoundInput::new(
        round.clone(),
        repr.criteria_labels,
        repr.experts,
        alternatives,
    )?;
    if let Some(reference) = repr.reference_ranking {
        let mut sorted_ref = reference.clone();
        sorted_ref.sort();
        let mut labels: Vec<String> = input.alternatives.keys().cloned().collect();
        labels.sort();
        if sorted_ref != labels {
            return Err(schema(
                format!("round {round}, reference_ranking"),
                "must list every alternative exactly once".into(),
            ));
        }
        input = input.with_reference(reference);
    }
    Ok(input)
}

/// Serialize rounds back into the judgment file format.
pub fn write_judgments(rounds: &[RoundInput]) -> String {
    let file = FileRepr {
        schema_version: SCHEMA_VERSION.into(),
        rounds: rounds
            .iter()
            .map(|r| RoundRepr {
                round_label: r.round_label.clone(),
                criteria_labels: r.criteria_labels.clone(),
                experts: r.expert_labels.clone(),
                alternatives: UniqueMap(
                    r.alternatives
                        .iter()
                        .map(|(label, panel)| {
                            let rows = panel
                                .groups()
                                .iter()
                                .map(|g| g.items().iter().map(|x| [x.mu(), x.nu()]).collect())
                                .collect();
                            (label.clone(), rows)
                        })
                        .collect(),
                ),
                reference_ranking: r.reference_ranking.clone(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("judgments always serialize");
    out.push('\n');
    out
}

/// Parse an evaluation config; omitted fields take their defaults.
pub fn parse_config(bytes: &[u8]) -> Result<EvaluationConfig> {
    let config: EvaluationConfig = serde_json::from_slice(bytes).map_err(parse_error)?;
    config.validate()?;
    Ok(config)
}
