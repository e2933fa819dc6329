//! Intuitionistic fuzzy numbers and the scalar measures defined on them.
//!
//! An [`Ifn`] is a (membership, non-membership) pair with `mu + nu <= 1`;
//! the residual `1 - mu - nu` is the hesitancy. Everything here is a pure
//! function of its arguments.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack on `mu + nu <= 1` to absorb decimal input rounding.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Cardinality used by the information volume of an intuitionistic fuzzy set.
const IFS_CARDINALITY: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawIfn", into = "RawIfn")]
pub struct Ifn {
    mu: f64,
    nu: f64,
}

#[derive(Serialize, Deserialize)]
struct RawIfn {
    mu: f64,
    nu: f64,
}

impl TryFrom<RawIfn> for Ifn {
    type Error = Error;

    fn try_from(raw: RawIfn) -> Result<Self> {
        Ifn::new(raw.mu, raw.nu)
    }
}

impl From<Ifn> for RawIfn {
    fn from(ifn: Ifn) -> Self {
        RawIfn {
            mu: ifn.mu,
            nu: ifn.nu,
        }
    }
}

impl Ifn {
    /// Validate a (mu, nu) pair.
    pub fn new(mu: f64, nu: f64) -> Result<Self> {
        let fail = |reason| {
            Err(Error::Domain {
                mu,
                nu,
                reason,
                location: None,
            })
        };
        if !mu.is_finite() || !nu.is_finite() {
            return fail("components must be finite");
        }
        if !(0.0..=1.0).contains(&mu) {
            return fail("membership outside [0, 1]");
        }
        if !(0.0..=1.0).contains(&nu) {
            return fail("non-membership outside [0, 1]");
        }
        if mu + nu > 1.0 + SUM_TOLERANCE {
            return fail("membership + non-membership exceeds 1");
        }
        Ok(Ifn { mu, nu })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `1 - mu - nu`, clamped at zero so that pairs like (0.7, 0.3) do not
    /// produce a tiny negative value.
    pub fn hesitancy(&self) -> f64 {
        (1.0 - self.mu - self.nu).max(0.0)
    }

    /// The (mu, nu, hesitancy) triple.
    pub fn triple(&self) -> [f64; 3] {
        [self.mu, self.nu, self.hesitancy()]
    }
}

/// Same as [`Ifn::new`].
pub fn validate(mu: f64, nu: f64) -> Result<Ifn> {
    Ifn::new(mu, nu)
}

/// Reliability of a judgment: `(1 + mu)(1 - nu) / 2`.
///
/// This is the measure the decision pipeline uses to weight judgments.
pub fn reliability(ifn: &Ifn) -> f64 {
    0.5 * (1.0 + ifn.mu) * (1.0 - ifn.nu)
}

/// Classical IFS score `(1 + hesitancy)(1 - mu) / 2`. Not used by the pipeline.
pub fn score(ifn: &Ifn) -> f64 {
    0.5 * (1.0 + ifn.hesitancy()) * (1.0 - ifn.mu)
}

/// A judgment paired with the reliability of that judgment (Z-number form).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZJudgment {
    pub ifn: Ifn,
    pub reliability: f64,
}

impl ZJudgment {
    pub fn new(ifn: Ifn, reliability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&reliability) {
            return Err(Error::OutOfRange {
                name: "reliability",
                value: reliability,
                expected: "[0, 1]",
            });
        }
        Ok(ZJudgment { ifn, reliability })
    }
}

pub fn to_z(ifn: &Ifn) -> ZJudgment {
    ZJudgment {
        ifn: *ifn,
        reliability: reliability(ifn),
    }
}

/// Scale both components by the judgment's reliability.
pub fn combine(z: &ZJudgment) -> Ifn {
    // reliability <= 1 keeps the result inside the IFS triangle
    Ifn {
        mu: z.ifn.mu * z.reliability,
        nu: z.ifn.nu * z.reliability,
    }
}

fn x_log2(x: f64, denom: f64) -> f64 {
    if x > 0.0 {
        x * (x / denom).log2()
    } else {
        0.0
    }
}

/// First-order information volume (bits) with hesitancy spread over the
/// three-element cardinality of an intuitionistic fuzzy set.
///
/// Maximal at (0.2, 0.2) where it equals `log2(5)`.
pub fn eifn(ifn: &Ifn) -> f64 {
    let [mu, nu, h] = ifn.triple();
    -(x_log2(mu, 1.0) + x_log2(nu, 1.0) + x_log2(h, IFS_CARDINALITY))
}

/// `x ln(2x / (x + y)) + y ln(2y / (x + y))`, with `0 ln 0 = 0`.
fn js_pair(x: f64, y: f64) -> f64 {
    let s = x + y;
    if s <= 0.0 {
        return 0.0;
    }
    let term = |v: f64| if v > 0.0 { v * (2.0 * v / s).ln() } else { 0.0 };
    term(x) + term(y)
}

/// Jensen–Shannon divergence distance between two IFNs over their
/// (mu, nu, hesitancy) triples.
///
/// Logarithms are natural, which bounds the result by `sqrt(ln 2)`.
/// Symmetric bit-for-bit: every pairwise term is summed in a fixed
/// component order and `js_pair` is symmetric in its arguments.
pub fn js_distance(a: &Ifn, b: &Ifn) -> f64 {
    let [am, an, ah] = a.triple();
    let [bm, bn, bh] = b.triple();
    let sum = sym(am, bm) + sym(an, bn) + sym(ah, bh);
    (0.5 * sum).max(0.0).sqrt()
}

fn sym(x: f64, y: f64) -> f64 {
    // order the arguments so that js_pair(x, y) and js_pair(y, x) share one evaluation path
    if x <= y {
        js_pair(x, y)
    } else {
        js_pair(y, x)
    }
}

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum SplitStrategy {
    /// Half of the hesitancy goes to each side.
    #[default]
    Equal,
    /// Hesitancy is shared in proportion to mu and nu.
    Proportional,
    /// Leave the pair untouched.
    None,
}

impl SplitStrategy {
    pub const ALL: [SplitStrategy; 3] = [
        SplitStrategy::Equal,
        SplitStrategy::Proportional,
        SplitStrategy::None,
    ];
}

/// Redistribute hesitancy into membership and non-membership.
pub fn split_hesitancy(ifn: &Ifn, strategy: SplitStrategy) -> (f64, f64) {
    let h = ifn.hesitancy();
    let equal = (ifn.mu + 0.5 * h, ifn.nu + 0.5 * h);
    match strategy {
        SplitStrategy::None => (ifn.mu, ifn.nu),
        SplitStrategy::Equal => equal,
        SplitStrategy::Proportional => {
            let s = ifn.mu + ifn.nu;
            if s > 0.0 {
                (ifn.mu + h * ifn.mu / s, ifn.nu + h * ifn.nu / s)
            } else {
                equal
            }
        }
    }
}
