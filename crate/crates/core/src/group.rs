//! Structure inside one expert's assessment of one alternative.
//!
//! The items of a group are compared pairwise; items close to the rest of
//! their group score a high closeness similarity, win more pairwise
//! preference contests and end up with a larger criterion weight.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ifs::{js_distance, Ifn};

/// Similarities closer than this are treated as tied.
pub const DEFAULT_TIE_EPSILON: f64 = 1e-12;

/// One expert's judgments of one alternative, ordered by criterion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupAssessment {
    items: Vec<Ifn>,
}

impl GroupAssessment {
    pub fn new(items: Vec<Ifn>) -> Result<Self> {
        if items.len() < 2 {
            return Err(Error::LengthMismatch {
                expected: 2,
                actual: items.len(),
                context: Some("a group needs at least two criteria".into()),
            });
        }
        Ok(GroupAssessment { items })
    }

    pub fn items(&self) -> &[Ifn] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// Symmetric matrix of within-group distances with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMatrix {
    pub values: Vec<Vec<f64>>,
}

impl DistanceMatrix {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }
}

pub fn pairwise_distances(items: &[Ifn]) -> DistanceMatrix {
    let m = items.len();
    let mut values = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in (i + 1)..m {
            let d = js_distance(&items[i], &items[j]);
            values[i][j] = d;
            values[j][i] = d;
        }
    }
    DistanceMatrix { values }
}

/// Closeness centrality of each item: `(M - 1) / sum of its distances`.
pub fn closeness_similarity(d: &DistanceMatrix) -> Result<Vec<f64>> {
    let m = d.size();
    (0..m)
        .map(|i| {
            let total: f64 = (0..m).filter(|&k| k != i).map(|k| d.get(i, k)).sum();
            if total > 0.0 {
                Ok((m as f64 - 1.0) / total)
            } else {
                Err(Error::DegenerateGroup { index: i })
            }
        })
        .collect()
}

/// 0/1 preference relation over a group; `values[i][j] == 1` when item `i`
/// beats item `j`. Ties leave both directions at zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceMatrix {
    pub values: Vec<Vec<u8>>,
}

/// Compare similarities pairwise.
///
/// Comparing the normalized pair `sm_i / (sm_i + sm_j)` against
/// `sm_j / (sm_i + sm_j)` shares a denominator, so the direct comparison
/// of `sm_i` and `sm_j` decides the same way.
pub fn preference_matrix(sm: &[f64], tie_epsilon: f64) -> PreferenceMatrix {
    let m = sm.len();
    let mut values = vec![vec![0u8; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j && sm[i] > sm[j] + tie_epsilon {
                values[i][j] = 1;
            }
        }
    }
    PreferenceMatrix { values }
}

/// Row sums of the preference relation.
pub fn points(pm: &PreferenceMatrix) -> Vec<usize> {
    pm.values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v as usize)
                .sum()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionWeights {
    pub weights: Vec<f64>,
    /// Set when the weights are the uniform fallback rather than normalized points.
    pub degenerate: bool,
}

impl CriterionWeights {
    pub fn uniform(m: usize) -> Self {
        CriterionWeights {
            weights: vec![1.0 / m as f64; m],
            degenerate: true,
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

pub fn criterion_weights(po: &[usize]) -> CriterionWeights {
    let total: usize = po.iter().sum();
    if total == 0 {
        return CriterionWeights::uniform(po.len());
    }
    CriterionWeights {
        weights: po.iter().map(|&p| p as f64 / total as f64).collect(),
        degenerate: false,
    }
}
