//! Finite joint distributions of two random variables.
//!
//! Under comonotonicity, the CDF of the pointwise maximum (minimum) of two
//! random variables is the FOSD join (meet) of their CDFs; without it, the
//! join and meet only bound those CDFs. [`comonotone_coupling`] realizes
//! any two CDFs as marginals of a comonotone pair via their quantile
//! functions.

use serde::{Deserialize, Serialize};

use crate::cdf::{merge_sorted, normalize_zero, StepCdf};
use crate::error::{Error, Result};
use crate::exact::exact_sum;
use crate::quantiles::lower_quantile_unchecked;

/// One outcome: probability and the values of `X` and `Y`.
pub type Outcome = (f64, f64, f64);

/// Finite probability space carrying two random variables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawJoint")]
pub struct FiniteJoint {
    outcomes: Vec<Outcome>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJoint {
    outcomes: Vec<Outcome>,
}

impl TryFrom<RawJoint> for FiniteJoint {
    type Error = Error;
    fn try_from(raw: RawJoint) -> Result<Self> {
        FiniteJoint::new(raw.outcomes)
    }
}

/// Which coordinate of a [`FiniteJoint`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Marginal {
    X,
    Y,
}

impl FiniteJoint {
    /// Probabilities must be positive and sum to 1 within `1e-12`; they are
    /// renormalized when the sum is not exactly 1.
    pub fn new(outcomes: Vec<Outcome>) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, &(p, x, y)) in outcomes.iter().enumerate() {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::NonFinite { field: "outcomes", index: i });
            }
            if !(p.is_finite() && p > 0.0) {
                return Err(Error::BadWeights(format!(
                    "outcome {i} has non-positive probability {p}"
                )));
            }
        }
        let total = exact_sum(outcomes.iter().map(|o| o.0));
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::BadWeights(format!("probabilities sum to {total}, not 1")));
        }
        let outcomes = outcomes
            .into_iter()
            .map(|(p, x, y)| {
                let p = if total == 1.0 { p } else { p / total };
                (p, normalize_zero(x), normalize_zero(y))
            })
            .collect();
        Ok(FiniteJoint { outcomes })
    }

    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    /// `(X(w) - X(w')) (Y(w) - Y(w')) >= 0` for every pair of outcomes.
    pub fn is_comonotonic(&self) -> bool {
        let o = &self.outcomes;
        (0..o.len()).all(|i| {
            (i + 1..o.len()).all(|j| (o[i].1 - o[j].1) * (o[i].2 - o[j].2) >= 0.0)
        })
    }

    fn cdf_of(&self, value: impl Fn(&Outcome) -> f64) -> StepCdf {
        let mut atoms: Vec<(f64, f64)> = self.outcomes.iter().map(|o| (value(o), o.0)).collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        StepCdf::from_atoms(&atoms)
    }

    /// CDF of `X` or `Y`.
    pub fn marginal_cdf(&self, which: Marginal) -> StepCdf {
        match which {
            Marginal::X => self.cdf_of(|o| o.1),
            Marginal::Y => self.cdf_of(|o| o.2),
        }
    }

    /// CDF of `max(X, Y)`.
    pub fn rv_join_cdf(&self) -> StepCdf {
        self.cdf_of(|o| o.1.max(o.2))
    }

    /// CDF of `min(X, Y)`.
    pub fn rv_meet_cdf(&self) -> StepCdf {
        self.cdf_of(|o| o.1.min(o.2))
    }
}

/// Whether the CDFs of `max(X, Y)` and `min(X, Y)` relate to the lattice
/// operations on the marginals as they must.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeCommutation {
    /// `F_{max(X,Y)} >=_FOSD F_X join F_Y`.
    pub ineq_join: bool,
    /// `F_X meet F_Y >=_FOSD F_{min(X,Y)}`.
    pub ineq_meet: bool,
    /// Not comonotonic, or both equalities hold exactly.
    pub eq_if_comonotone: bool,
}

impl LatticeCommutation {
    pub fn all(&self) -> bool {
        self.ineq_join && self.ineq_meet && self.eq_if_comonotone
    }
}

pub fn check_lattice_commutation(joint: &FiniteJoint) -> LatticeCommutation {
    let fx = joint.marginal_cdf(Marginal::X);
    let fy = joint.marginal_cdf(Marginal::Y);
    let lattice_join = fx.join(&fy);
    let lattice_meet = fx.meet(&fy);
    let rv_join = joint.rv_join_cdf();
    let rv_meet = joint.rv_meet_cdf();
    LatticeCommutation {
        ineq_join: rv_join.fosd_ge(&lattice_join),
        ineq_meet: lattice_meet.fosd_ge(&rv_meet),
        eq_if_comonotone: !joint.is_comonotonic()
            || (rv_join == lattice_join && rv_meet == lattice_meet),
    }
}

/// Quantile coupling of `f` and `g`: one outcome per cell `(l_{i-1}, l_i]`
/// of the merged level partitions, carrying the two lower quantiles on that
/// cell.
///
/// Cell masses are chosen so that every prefix sum, correctly rounded, is
/// exactly `l_i`. The marginals and the CDFs of the max and min are built
/// from such prefix sums, so they reproduce the input levels bit for bit
/// even when `l_i - l_{i-1}` is not representable. When the prefix before a
/// cell sits on a rounding tie that no single float can resolve towards
/// `l_i`, the cell carries a second, tiny atom at the same point.
pub fn comonotone_coupling(f: &StepCdf, g: &StepCdf) -> FiniteJoint {
    let levels = merge_sorted(f.levels(), g.levels());
    let mut masses: Vec<f64> = Vec::with_capacity(levels.len());
    let mut outcomes = Vec::with_capacity(levels.len());
    for &l in &levels {
        let x = lower_quantile_unchecked(f, l);
        let y = lower_quantile_unchecked(g, l);
        for _ in 0..4 {
            let prefix = |extra: f64| exact_sum(masses.iter().copied().chain(std::iter::once(extra)));
            let mut m = exact_sum(std::iter::once(l).chain(masses.iter().map(|&m| -m)));
            if prefix(m) != l {
                // keep the remainder positive for the correction atom
                if exact_sum(masses.iter().copied().chain([m, -l])) > 0.0 {
                    m = m.next_down();
                }
            }
            if m <= 0.0 {
                break;
            }
            masses.push(m);
            outcomes.push((m, x, y));
            if exact_sum(masses.iter().copied()) == l {
                break;
            }
        }
    }
    FiniteJoint { outcomes }
}
