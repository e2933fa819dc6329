//! Cross-expert quantities for one alternative: how far each expert's group
//! sits from the others, how much it can be trusted, how much information it
//! carries, and the resulting attitude character.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CriterionWeights, GroupAssessment};
use crate::ifs::{eifn, js_distance, Ifn};

/// All experts' assessments of one alternative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    groups: Vec<GroupAssessment>,
}

impl Panel {
    pub fn new(groups: Vec<GroupAssessment>) -> Result<Self> {
        if groups.len() < 2 {
            return Err(Error::LengthMismatch {
                expected: 2,
                actual: groups.len(),
                context: Some("a panel needs at least two experts".into()),
            });
        }
        let m = groups[0].len();
        if let Some(bad) = groups.iter().find(|g| g.len() != m) {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: bad.len(),
                context: Some("every expert must judge the same criteria".into()),
            });
        }
        Ok(Panel { groups })
    }

    pub fn groups(&self) -> &[GroupAssessment] {
        &self.groups
    }

    pub fn experts(&self) -> usize {
        self.groups.len()
    }

    pub fn criteria(&self) -> usize {
        self.groups[0].len()
    }
}

/// Weighted distance between two groups, seen from `a` (whose weights are `w`).
pub fn group_distance(a: &[Ifn], b: &[Ifn], w: &CriterionWeights) -> Result<f64> {
    if a.len() != b.len() || a.len() != w.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            actual: if a.len() != b.len() { b.len() } else { w.len() },
            context: Some("group distance".into()),
        });
    }
    Ok(a.iter()
        .zip(b)
        .zip(&w.weights)
        .map(|((x, y), wi)| wi * js_distance(x, y))
        .sum())
}

/// Matrix of directed group distances; entry `[e][f]` uses expert `e`'s weights.
pub fn group_distance_matrix(
    groups: &[Vec<Ifn>],
    weights: &[CriterionWeights],
) -> Result<Vec<Vec<f64>>> {
    if groups.len() != weights.len() {
        return Err(Error::LengthMismatch {
            expected: groups.len(),
            actual: weights.len(),
            context: Some("one weight vector per expert".into()),
        });
    }
    let n = groups.len();
    let mut out = vec![vec![0.0; n]; n];
    for e in 0..n {
        for f in 0..n {
            if e != f {
                out[e][f] = group_distance(&groups[e], &groups[f], &weights[e])?;
            }
        }
    }
    Ok(out)
}

/// Each expert's total weighted distance to every other expert.
pub fn expert_divergence(groups: &[Vec<Ifn>], weights: &[CriterionWeights]) -> Result<Vec<f64>> {
    Ok(group_distance_matrix(groups, weights)?
        .iter()
        .map(|row| row.iter().sum())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredibilityVector {
    /// Before normalization.
    pub raw: Vec<f64>,
    pub values: Vec<f64>,
}

/// Credibility `max(div) - div[e] + floor`, normalized to sum to one.
///
/// The floor is `floor_rel * max(div) + 1e-12`; it keeps the most divergent
/// expert's credibility strictly positive. All-zero divergence gives
/// uniform credibility.
pub fn credibility(div: &[f64], floor_rel: f64) -> CredibilityVector {
    let max = div.iter().copied().fold(0.0, f64::max);
    let floor = max * floor_rel + 1e-12;
    let raw: Vec<f64> = div.iter().map(|d| max - d + floor).collect();
    let total: f64 = raw.iter().sum();
    let values = raw.iter().map(|r| r / total).collect();
    CredibilityVector { raw, values }
}

/// Total information volume of a group's items.
pub fn group_information_volume(items: &[Ifn]) -> f64 {
    items.iter().map(eifn).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoVolumeVector {
    pub raw: Vec<f64>,
    /// `exp(raw)`; never zero, unlike a raw volume.
    pub modified: Vec<f64>,
    pub normalized: Vec<f64>,
}

pub fn modified_info_volume(raw: &[f64]) -> InfoVolumeVector {
    let modified = raw.iter().map(|v| v.exp()).collect();
    // softmax, shifted by the max for stability
    let top = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shifted: Vec<f64> = raw.iter().map(|v| (v - top).exp()).collect();
    let total: f64 = shifted.iter().sum();
    InfoVolumeVector {
        raw: raw.to_vec(),
        modified,
        normalized: shifted.iter().map(|v| v / total).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttitudeVector {
    pub values: Vec<f64>,
}

/// Attitude character per expert: normalized product of normalized
/// information volume and credibility.
pub fn attitude_characters(iv: &[f64], cr: &[f64]) -> Result<AttitudeVector> {
    if iv.len() != cr.len() {
        return Err(Error::LengthMismatch {
            expected: iv.len(),
            actual: cr.len(),
            context: Some("attitude characters".into()),
        });
    }
    let products: Vec<f64> = iv.iter().zip(cr).map(|(a, b)| a * b).collect();
    let total: f64 = products.iter().sum();
    if total <= 0.0 || !total.is_finite() {
        return Err(Error::Degenerate(
            "every credibility x information-volume product is zero".into(),
        ));
    }
    Ok(AttitudeVector {
        values: products.iter().map(|p| p / total).collect(),
    })
}
