//! End-to-end evaluation of a round: group analysis per expert, credibility
//! and attitude per alternative, soft likelihood, estimation and ranking.

use indexmap::IndexMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::credibility::{
    attitude_characters, credibility, group_distance_matrix, group_information_volume,
    modified_info_volume, AttitudeVector, CredibilityVector, InfoVolumeVector, Panel,
};
use crate::error::{Error, Result};
use crate::group::{
    closeness_similarity, criterion_weights, pairwise_distances, points, preference_matrix,
    CriterionWeights, DistanceMatrix, PreferenceMatrix, DEFAULT_TIE_EPSILON,
};
use crate::ifs::{combine, to_z, Ifn, SplitStrategy, ZJudgment};
use crate::slf::{
    dp_values, dslf, gross_estimation, owa_weights, rank, DpSource, LikelihoodSeries, OwaWeights,
    Ranking, Sharpness,
};

/// One round of judgments: every alternative assessed by the same experts
/// on the same criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundInput {
    pub round_label: String,
    pub criteria_labels: Vec<String>,
    pub expert_labels: Vec<String>,
    pub alternatives: IndexMap<String, Panel>,
    /// Expected ranking, when known; only used for comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_ranking: Option<Vec<String>>,
}

impl RoundInput {
    pub fn new(
        round_label: impl Into<String>,
        criteria_labels: Vec<String>,
        expert_labels: Vec<String>,
        alternatives: IndexMap<String, Panel>,
    ) -> Result<Self> {
        let input = RoundInput {
            round_label: round_label.into(),
            criteria_labels,
            expert_labels,
            alternatives,
            reference_ranking: None,
        };
        input.check()?;
        Ok(input)
    }

    pub fn with_reference(mut self, ranking: Vec<String>) -> Self {
        self.reference_ranking = Some(ranking);
        self
    }

    /// Shape checks that a `Panel` cannot make on its own.
    pub fn check(&self) -> Result<()> {
        let schema = |message: String| Error::Schema {
            location: format!("round {}", self.round_label),
            message,
        };
        if self.alternatives.is_empty() {
            return Err(schema("no alternatives".into()));
        }
        if let Some(dup) = first_duplicate(&self.criteria_labels) {
            return Err(schema(format!("duplicate criterion label {dup:?}")));
        }
        if let Some(dup) = first_duplicate(&self.expert_labels) {
            return Err(schema(format!("duplicate expert label {dup:?}")));
        }
        for (label, panel) in &self.alternatives {
            if panel.criteria() != self.criteria_labels.len() {
                return Err(schema(format!(
                    "alternative {label:?} has {} criteria, expected {}",
                    panel.criteria(),
                    self.criteria_labels.len()
                )));
            }
            if panel.experts() != self.expert_labels.len() {
                return Err(schema(format!(
                    "alternative {label:?} has {} experts, expected {}",
                    panel.experts(),
                    self.expert_labels.len()
                )));
            }
        }
        Ok(())
    }
}

fn first_duplicate(labels: &[String]) -> Option<&str> {
    labels
        .iter()
        .enumerate()
        .find(|(i, l)| labels[..*i].contains(l))
        .map(|(_, l)| l.as_str())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvaluationConfig {
    pub split_strategy: SplitStrategy,
    pub dp_source: DpSource,
    /// Credibility floor, relative to the largest divergence in the panel.
    pub credibility_floor: f64,
    pub tie_epsilon: f64,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            split_strategy: SplitStrategy::Equal,
            dp_source: DpSource::Original,
            credibility_floor: 3.85,
            tie_epsilon: DEFAULT_TIE_EPSILON,
        }
    }
}

impl EvaluationConfig {
    /// Every split/source combination, in enumeration order, with default
    /// floor and tie tolerance.
    pub fn grid() -> Vec<EvaluationConfig> {
        SplitStrategy::ALL
            .iter()
            .flat_map(|&split_strategy| {
                DpSource::ALL
                    .iter()
                    .map(move |&dp_source| EvaluationConfig {
                        split_strategy,
                        dp_source,
                        ..EvaluationConfig::default()
                    })
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.credibility_floor.is_finite() && self.credibility_floor >= 0.0) {
            return Err(Error::OutOfRange {
                name: "credibility_floor",
                value: self.credibility_floor,
                expected: "finite and non-negative",
            });
        }
        if !(self.tie_epsilon.is_finite() && self.tie_epsilon > 0.0) {
            return Err(Error::OutOfRange {
                name: "tie_epsilon",
                value: self.tie_epsilon,
                expected: "finite and positive",
            });
        }
        Ok(())
    }

    pub fn describe(&self) -> String {
        let split = match self.split_strategy {
            SplitStrategy::Equal => "equal",
            SplitStrategy::Proportional => "proportional",
            SplitStrategy::None => "none",
        };
        let source = match self.dp_source {
            DpSource::Original => "original",
            DpSource::Combined => "combined",
        };
        format!("{split}/{source}")
    }
}

/// Conditions that were handled by a fallback instead of an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Degeneracy {
    /// Some criterion sits at distance zero from all others, so similarity
    /// is undefined; weights fell back to uniform.
    DegenerateGroup { alternative: String, expert: String },
    /// Every similarity tied; weights fell back to uniform.
    AllTies { alternative: String, expert: String },
    /// Two alternatives share a gross estimation; their order is by label.
    TiedRanking,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpertReport {
    pub expert: String,
    pub z: Vec<ZJudgment>,
    pub combined: Vec<Ifn>,
    pub distances: DistanceMatrix,
    /// Absent for a degenerate group.
    pub similarity: Option<Vec<f64>>,
    pub preference: PreferenceMatrix,
    pub points: Vec<usize>,
    pub weights: CriterionWeights,
    /// Weighted distance to each expert of the panel, zero for itself.
    pub group_distances: Vec<f64>,
    pub owa: OwaWeights,
    pub likelihood: LikelihoodSeries,
    pub dslf: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeReport {
    pub alternative: String,
    pub experts: Vec<ExpertReport>,
    pub divergence: Vec<f64>,
    pub credibility: CredibilityVector,
    pub info_volume: InfoVolumeVector,
    pub attitude: AttitudeVector,
    pub sharpness: Vec<Sharpness>,
    pub gross_estimation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundReport {
    pub round_label: String,
    pub criteria_labels: Vec<String>,
    pub expert_labels: Vec<String>,
    pub config: EvaluationConfig,
    pub alternatives: Vec<AlternativeReport>,
    pub ranking: Ranking,
    pub degeneracies: Vec<Degeneracy>,
}

impl RoundReport {
    pub fn alternative(&self, label: &str) -> Option<&AlternativeReport> {
        self.alternatives.iter().find(|a| a.alternative == label)
    }

    pub fn gross_estimations(&self) -> IndexMap<String, f64> {
        self.alternatives
            .iter()
            .map(|a| (a.alternative.clone(), a.gross_estimation))
            .collect()
    }
}

struct GroupStage {
    z: Vec<ZJudgment>,
    combined: Vec<Ifn>,
    distances: DistanceMatrix,
    similarity: Option<Vec<f64>>,
    preference: PreferenceMatrix,
    points: Vec<usize>,
    weights: CriterionWeights,
}

fn analyse_group(items: &[Ifn], tie_epsilon: f64) -> GroupStage {
    let z: Vec<ZJudgment> = items.iter().map(to_z).collect();
    let combined: Vec<Ifn> = z.iter().map(combine).collect();
    let distances = pairwise_distances(&combined);
    let m = items.len();
    match closeness_similarity(&distances) {
        Ok(sm) => {
            let preference = preference_matrix(&sm, tie_epsilon);
            let points = points(&preference);
            let weights = criterion_weights(&points);
            GroupStage {
                z,
                combined,
                distances,
                similarity: Some(sm),
                preference,
                points,
                weights,
            }
        }
        Err(_) => GroupStage {
            z,
            combined,
            distances,
            similarity: None,
            preference: PreferenceMatrix {
                values: vec![vec![0; m]; m],
            },
            points: vec![0; m],
            weights: CriterionWeights::uniform(m),
        },
    }
}

fn evaluate_alternative(
    label: &str,
    panel: &Panel,
    expert_labels: &[String],
    config: &EvaluationConfig,
) -> Result<(AlternativeReport, Vec<Degeneracy>)> {
    let stages: Vec<GroupStage> = panel
        .groups()
        .iter()
        .map(|g| analyse_group(g.items(), config.tie_epsilon))
        .collect();

    let mut flags = Vec::new();
    for (stage, expert) in stages.iter().zip(expert_labels) {
        let ids = || (label.to_string(), expert.clone());
        if stage.similarity.is_none() {
            let (alternative, expert) = ids();
            flags.push(Degeneracy::DegenerateGroup {
                alternative,
                expert,
            });
        } else if stage.weights.degenerate {
            let (alternative, expert) = ids();
            flags.push(Degeneracy::AllTies {
                alternative,
                expert,
            });
        }
    }

    let combined: Vec<Vec<Ifn>> = stages.iter().map(|s| s.combined.clone()).collect();
    let weights: Vec<CriterionWeights> = stages.iter().map(|s| s.weights.clone()).collect();
    let distance_rows = group_distance_matrix(&combined, &weights)?;
    let divergence: Vec<f64> = distance_rows.iter().map(|r| r.iter().sum()).collect();
    let cr = credibility(&divergence, config.credibility_floor);

    let raw_iv: Vec<f64> = panel
        .groups()
        .iter()
        .map(|g| group_information_volume(g.items()))
        .collect();
    let iv = modified_info_volume(&raw_iv);
    let attitude = attitude_characters(&iv.normalized, &cr.values)?;
    let sharpness = attitude
        .values
        .iter()
        .map(|&a| {
            Sharpness::from_alpha(a).map_err(|_| {
                Error::Degenerate(format!("attitude character {a} for {label} leaves (0, 1)"))
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut experts = Vec::with_capacity(stages.len());
    let mut dslf_values = Vec::with_capacity(stages.len());
    for (((stage, group), s), (expert, group_distances)) in stages
        .into_iter()
        .zip(panel.groups())
        .zip(&sharpness)
        .zip(expert_labels.iter().zip(distance_rows))
    {
        let likelihood = dp_values(group.items(), config.split_strategy, config.dp_source);
        let owa = owa_weights(likelihood.len(), *s);
        let value = dslf(&likelihood, &owa)?;
        dslf_values.push(value);
        experts.push(ExpertReport {
            expert: expert.clone(),
            z: stage.z,
            combined: stage.combined,
            distances: stage.distances,
            similarity: stage.similarity,
            preference: stage.preference,
            points: stage.points,
            weights: stage.weights,
            group_distances,
            owa,
            likelihood,
            dslf: value,
        });
    }

    let report = AlternativeReport {
        alternative: label.to_string(),
        experts,
        divergence,
        credibility: cr,
        info_volume: iv,
        attitude,
        sharpness,
        gross_estimation: gross_estimation(&dslf_values),
    };
    Ok((report, flags))
}

/// Evaluate one round. Alternatives are processed in parallel; the report
/// keeps input order and is identical across runs.
pub fn evaluate_round(input: &RoundInput, config: &EvaluationConfig) -> Result<RoundReport> {
    input.check()?;
    config.validate()?;
    let entries: Vec<(&String, &Panel)> = input.alternatives.iter().collect();
    let results = entries
        .par_iter()
        .map(|(label, panel)| evaluate_alternative(label, panel, &input.expert_labels, config))
        .collect::<Result<Vec<_>>>()?;

    let mut alternatives = Vec::with_capacity(results.len());
    let mut degeneracies = Vec::new();
    for (report, flags) in results {
        alternatives.push(report);
        degeneracies.extend(flags);
    }
    let ranking = rank(
        alternatives
            .iter()
            .map(|a| (a.alternative.as_str(), a.gross_estimation)),
    );
    if ranking.tied {
        degeneracies.push(Degeneracy::TiedRanking);
    }
    Ok(RoundReport {
        round_label: input.round_label.clone(),
        criteria_labels: input.criteria_labels.clone(),
        expert_labels: input.expert_labels.clone(),
        config: *config,
        alternatives,
        ranking,
        degeneracies,
    })
}

/// Evaluate independent rounds; a failing round does not stop the others.
pub fn evaluate_all(inputs: &[RoundInput], config: &EvaluationConfig) -> Vec<Result<RoundReport>> {
    inputs.iter().map(|i| evaluate_round(i, config)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigOutcome {
    pub config: EvaluationConfig,
    pub ranking: Vec<String>,
    pub gross_estimations: IndexMap<String, f64>,
    /// `None` when the round carries no reference ranking.
    pub matches_reference: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigComparison {
    pub round_label: String,
    pub reference_ranking: Option<Vec<String>>,
    pub outcomes: Vec<ConfigOutcome>,
}

pub fn compare_configs(
    input: &RoundInput,
    configs: &[EvaluationConfig],
) -> Result<ConfigComparison> {
    if configs.is_empty() {
        return Err(Error::LengthMismatch {
            expected: 1,
            actual: 0,
            context: Some("at least one configuration is required".into()),
        });
    }
    let outcomes = configs
        .iter()
        .map(|config| {
            let report = evaluate_round(input, config)?;
            let matches_reference = input
                .reference_ranking
                .as_ref()
                .map(|r| *r == report.ranking.order);
            Ok(ConfigOutcome {
                config: *config,
                gross_estimations: report.gross_estimations(),
                ranking: report.ranking.order,
                matches_reference,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConfigComparison {
        round_label: input.round_label.clone(),
        reference_ranking: input.reference_ranking.clone(),
        outcomes,
    })
}

/// First configuration, in the given order, whose ranking matches the
/// reference of every round that has one.
pub fn first_matching_config(
    inputs: &[RoundInput],
    configs: &[EvaluationConfig],
) -> Result<Option<EvaluationConfig>> {
    let comparisons = inputs
        .iter()
        .map(|i| compare_configs(i, configs))
        .collect::<Result<Vec<_>>>()?;
    Ok(configs
        .iter()
        .enumerate()
        .find(|(k, _)| {
            comparisons
                .iter()
                .all(|c| c.outcomes[*k].matches_reference != Some(false))
        })
        .map(|(_, c)| *c))
}
