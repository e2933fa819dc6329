//! Soft likelihood aggregation of one expert's support values, and the
//! final estimation and ranking across alternatives.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ifs::{combine, split_hesitancy, to_z, Ifn, SplitStrategy};

/// OWA exponent derived from an attitude character.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sharpness {
    pub p: f64,
}

impl Sharpness {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                expected: "strictly between 0 and 1",
            });
        }
        Ok(Sharpness {
            p: (1.0 - alpha) / alpha,
        })
    }
}

pub fn sharpness(alpha: f64) -> Result<Sharpness> {
    Sharpness::from_alpha(alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OwaWeights {
    pub w: Vec<f64>,
}

/// `w_j = (j/k)^P - ((j-1)/k)^P`, which telescopes to a unit sum.
pub fn owa_weights(k: usize, s: Sharpness) -> OwaWeights {
    let kf = k as f64;
    let w = (1..=k)
        .map(|j| (j as f64 / kf).powf(s.p) - ((j - 1) as f64 / kf).powf(s.p))
        .collect();
    OwaWeights { w }
}

/// Which form of the judgments the support values are read from.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum DpSource {
    #[default]
    Original,
    /// The reliability-scaled pairs.
    Combined,
}

impl DpSource {
    pub const ALL: [DpSource; 2] = [DpSource::Original, DpSource::Combined];
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodSeries {
    /// Support values sorted descending.
    pub dp: Vec<f64>,
    /// `order[a]` is the criterion index that supplied `dp[a]`.
    pub order: Vec<usize>,
    pub partials: Vec<f64>,
}

impl LikelihoodSeries {
    /// Build from unsorted support values; ties keep criterion order.
    pub fn from_unsorted(values: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(Ordering::Equal));
        let dp: Vec<f64> = order.iter().map(|&i| values[i]).collect();
        let partials = dp
            .iter()
            .scan(1.0, |acc, &d| {
                *acc *= d;
                Some(*acc)
            })
            .collect();
        LikelihoodSeries {
            dp,
            order,
            partials,
        }
    }

    pub fn len(&self) -> usize {
        self.dp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dp.is_empty()
    }
}

/// Support values `mu' - nu'` of a group after splitting hesitancy.
pub fn dp_values(items: &[Ifn], strategy: SplitStrategy, source: DpSource) -> LikelihoodSeries {
    let values: Vec<f64> = items
        .iter()
        .map(|x| {
            let form = match source {
                DpSource::Original => *x,
                DpSource::Combined => combine(&to_z(x)),
            };
            let (mu, nu) = split_hesitancy(&form, strategy);
            mu - nu
        })
        .collect();
    LikelihoodSeries::from_unsorted(&values)
}

/// Soft likelihood: OWA-weighted sum of the cumulative products.
pub fn dslf(series: &LikelihoodSeries, w: &OwaWeights) -> Result<f64> {
    if series.len() != w.w.len() {
        return Err(Error::LengthMismatch {
            expected: series.len(),
            actual: w.w.len(),
            context: Some("OWA weights vs support values".into()),
        });
    }
    Ok(series.partials.iter().zip(&w.w).map(|(p, w)| p * w).sum())
}

/// Scaled average of the experts' soft likelihoods.
pub fn gross_estimation(dslf_per_expert: &[f64]) -> f64 {
    let e = dslf_per_expert.len() as f64;
    dslf_per_expert.iter().sum::<f64>() / (0.01 * e)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ranking {
    pub order: Vec<String>,
    /// Set when two alternatives share a gross estimation and the order
    /// between them came from their labels.
    pub tied: bool,
}

/// Sort labels by estimation, highest first; equal values fall back to label order.
pub fn rank<'a>(ge: impl IntoIterator<Item = (&'a str, f64)>) -> Ranking {
    let mut entries: Vec<(&str, f64)> = ge.into_iter().collect();
    entries.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let tied = entries.windows(2).any(|p| p[0].1 == p[1].1);
    Ranking {
        order: entries.into_iter().map(|(l, _)| l.to_string()).collect(),
        tied,
    }
}
