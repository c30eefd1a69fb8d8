//! Step distribution functions and their FOSD lattice.
//!
//! A [`StepCdf`] is a right-continuous, nondecreasing step function with
//! finitely many jumps that reaches exactly 1 at its last breakpoint. All
//! operations are exact on the finite representation: two step functions
//! are constant between the points of the union of their breakpoints, so
//! pointwise comparisons, minima and maxima only need to look there.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::exact_sum;

/// A value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Probability(f64);

impl Probability {
    pub const ZERO: Probability = Probability(0.0);
    pub const ONE: Probability = Probability(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(Probability(value))
        } else {
            Err(Error::LevelOutOfRange { index: 0, value })
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Probability> for f64 {
    fn from(p: Probability) -> f64 {
        p.0
    }
}

/// Right-continuous step distribution function with finitely many jumps.
///
/// `F(x) = 0` below the first breakpoint, `F(x) = levels[j]` on
/// `[breakpoints[j], breakpoints[j + 1])`, and `F(x) = 1` from the last
/// breakpoint on. The representation is canonical: breakpoints and levels
/// are both strictly increasing, so equality of values is equality of
/// functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawStepCdf")]
pub struct StepCdf {
    breakpoints: Vec<f64>,
    levels: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStepCdf {
    breakpoints: Vec<f64>,
    levels: Vec<f64>,
}

impl TryFrom<RawStepCdf> for StepCdf {
    type Error = Error;

    fn try_from(raw: RawStepCdf) -> Result<Self> {
        StepCdf::from_canonical(raw.breakpoints, raw.levels)
    }
}

/// Maps `-0.0` to `0.0` so that reflected and pushed-forward values compare
/// bit-for-bit with directly constructed ones.
#[inline]
pub(crate) fn normalize_zero(x: f64) -> f64 {
    x + 0.0
}

fn validate_parts(breakpoints: &[f64], levels: &[f64]) -> Result<()> {
    if breakpoints.is_empty() || levels.is_empty() {
        return Err(Error::EmptyInput);
    }
    if breakpoints.len() != levels.len() {
        return Err(Error::LengthMismatch {
            left: "breakpoints",
            left_len: breakpoints.len(),
            right: "levels",
            right_len: levels.len(),
        });
    }
    for (index, &x) in breakpoints.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFinite { field: "breakpoints", index });
        }
    }
    for (index, &v) in levels.iter().enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite { field: "levels", index });
        }
        if v <= 0.0 || v > 1.0 {
            return Err(Error::LevelOutOfRange { index, value: v });
        }
    }
    if let Some(index) = breakpoints.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::NonMonotoneBreakpoints { index: index + 1 });
    }
    if let Some(index) = levels.windows(2).position(|w| w[0] > w[1]) {
        return Err(Error::NonMonotoneLevels { index: index + 1 });
    }
    let last = *levels.last().unwrap();
    if last != 1.0 {
        return Err(Error::TerminalLevelNotOne { value: last });
    }
    Ok(())
}

impl StepCdf {
    /// Builds a step CDF from jump locations and the value taken at each.
    ///
    /// Consecutive equal levels are merged (the later breakpoint carries no
    /// jump and is dropped).
    pub fn new(breakpoints: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        validate_parts(&breakpoints, &levels)?;
        let breakpoints: Vec<f64> = breakpoints.into_iter().map(normalize_zero).collect();
        Ok(Self::from_steps(breakpoints.into_iter().zip(levels)))
    }

    /// Like [`StepCdf::new`] but rejects representations that are not
    /// already canonical. Used when reading serialized values.
    pub fn from_canonical(breakpoints: Vec<f64>, levels: Vec<f64>) -> Result<Self> {
        validate_parts(&breakpoints, &levels)?;
        if let Some(i) = levels.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::NonCanonical {
                what: "StepCdf",
                reason: format!("levels {} and {} are equal", i, i + 1),
            });
        }
        let breakpoints = breakpoints.into_iter().map(normalize_zero).collect();
        Ok(StepCdf { breakpoints, levels })
    }

    /// Degenerate distribution at `x`.
    pub fn point_mass(x: f64) -> Self {
        assert!(x.is_finite(), "point mass location must be finite");
        StepCdf {
            breakpoints: vec![normalize_zero(x)],
            levels: vec![1.0],
        }
    }

    /// Empirical distribution of `samples`, optionally weighted.
    ///
    /// Weights must be positive and sum to 1 within `1e-12`; they are then
    /// renormalized. Duplicate sample values are merged by summing their
    /// weights.
    pub fn from_samples(samples: &[f64], weights: Option<&[f64]>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { field: "samples", index });
        }
        let n = samples.len();
        let weights: Vec<f64> = match weights {
            None => vec![1.0 / n as f64; n],
            Some(w) => {
                if w.len() != n {
                    return Err(Error::BadWeights(format!(
                        "{} weights for {} samples",
                        w.len(),
                        n
                    )));
                }
                if let Some(i) = w.iter().position(|&p| !(p.is_finite() && p > 0.0)) {
                    return Err(Error::BadWeights(format!(
                        "weight {} at index {} is not positive",
                        w[i], i
                    )));
                }
                let total = exact_sum(w.iter().copied());
                if (total - 1.0).abs() > 1e-12 {
                    return Err(Error::BadWeights(format!("weights sum to {total}, not 1")));
                }
                if total == 1.0 {
                    w.to_vec()
                } else {
                    w.iter().map(|p| p / total).collect()
                }
            }
        };

        let mut atoms: Vec<(f64, f64)> = samples
            .iter()
            .map(|&x| normalize_zero(x))
            .zip(weights)
            .collect();
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self::from_atoms(&atoms))
    }

    /// Builds the CDF of a discrete distribution given `(value, mass)` pairs
    /// sorted by value (duplicates allowed). Each level is the correctly
    /// rounded total mass at or below the breakpoint, so the result depends
    /// only on the multiset of atoms.
    pub(crate) fn from_atoms(sorted_atoms: &[(f64, f64)]) -> Self {
        debug_assert!(!sorted_atoms.is_empty());
        debug_assert!(sorted_atoms.windows(2).all(|w| w[0].0 <= w[1].0));
        let mut steps = Vec::new();
        let mut i = 0;
        while i < sorted_atoms.len() {
            let x = sorted_atoms[i].0;
            let mut j = i;
            while j < sorted_atoms.len() && sorted_atoms[j].0 == x {
                j += 1;
            }
            let level = if j == sorted_atoms.len() {
                1.0
            } else {
                exact_sum(sorted_atoms[..j].iter().map(|a| a.1)).min(1.0)
            };
            steps.push((x, level));
            i = j;
        }
        Self::from_steps(steps)
    }

    /// Canonicalizes a sequence of `(x, F(x))` samples taken at every jump
    /// of a step CDF, with `x` nondecreasing and the final level 1. Points
    /// where the level does not strictly increase are dropped; a repeated
    /// `x` keeps the larger (later) level.
    pub(crate) fn from_steps<I>(steps: I) -> Self
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut breakpoints: Vec<f64> = Vec::new();
        let mut levels: Vec<f64> = Vec::new();
        for (x, level) in steps {
            let prev = levels.last().copied().unwrap_or(0.0);
            if level <= prev {
                continue;
            }
            match breakpoints.last() {
                Some(&last_x) if last_x == x => {
                    *levels.last_mut().unwrap() = level;
                }
                _ => {
                    breakpoints.push(x);
                    levels.push(level);
                }
            }
        }
        debug_assert_eq!(levels.last().copied(), Some(1.0));
        StepCdf { breakpoints, levels }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Number of jumps.
    pub fn len(&self) -> usize {
        self.breakpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_support(&self) -> f64 {
        self.breakpoints[0]
    }

    pub fn max_support(&self) -> f64 {
        *self.breakpoints.last().unwrap()
    }

    /// `(value, mass)` pairs. Masses are level differences and may carry
    /// rounding error; use [`StepCdf::levels`] for exact cumulative values.
    pub fn atoms(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let mut prev = 0.0;
        self.breakpoints.iter().zip(&self.levels).map(move |(&x, &v)| {
            let mass = v - prev;
            prev = v;
            (x, mass)
        })
    }

    pub fn is_point_mass(&self) -> bool {
        self.breakpoints.len() == 1
    }

    #[inline]
    pub(crate) fn level_at(&self, x: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b <= x);
        if i == 0 {
            0.0
        } else {
            self.levels[i - 1]
        }
    }

    #[inline]
    pub(crate) fn level_below(&self, x: f64) -> f64 {
        let i = self.breakpoints.partition_point(|&b| b < x);
        if i == 0 {
            0.0
        } else {
            self.levels[i - 1]
        }
    }

    /// `F(x)`.
    pub fn eval(&self, x: f64) -> Probability {
        Probability(self.level_at(x))
    }

    /// `F(x-) = sup_{y < x} F(y)`.
    pub fn eval_left(&self, x: f64) -> Probability {
        Probability(self.level_below(x))
    }

    /// Sorted, deduplicated union of the breakpoints of both functions.
    pub(crate) fn union_breakpoints(&self, other: &StepCdf) -> Vec<f64> {
        merge_sorted(&self.breakpoints, &other.breakpoints)
    }

    /// `self >=_FOSD other`, i.e. `self(x) <= other(x)` for every `x`.
    pub fn fosd_ge(&self, other: &StepCdf) -> bool {
        self.union_breakpoints(other)
            .into_iter()
            .all(|x| self.level_at(x) <= other.level_at(x))
    }

    /// Least upper bound in the FOSD order: the pointwise minimum.
    pub fn join(&self, other: &StepCdf) -> StepCdf {
        let xs = self.union_breakpoints(other);
        StepCdf::from_steps(
            xs.into_iter()
                .map(|x| (x, self.level_at(x).min(other.level_at(x)))),
        )
    }

    /// Greatest lower bound in the FOSD order: the pointwise maximum.
    pub fn meet(&self, other: &StepCdf) -> StepCdf {
        let xs = self.union_breakpoints(other);
        StepCdf::from_steps(
            xs.into_iter()
                .map(|x| (x, self.level_at(x).max(other.level_at(x)))),
        )
    }

    /// Distribution of `X + shift`.
    pub fn translate(&self, shift: f64) -> StepCdf {
        self.push_forward(|x| x + shift)
    }

    /// Distribution of `scale * X + shift` for `scale > 0`.
    pub fn affine_push(&self, scale: f64, shift: f64) -> Result<StepCdf> {
        if scale.is_nan() || scale <= 0.0 {
            return Err(Error::NonPositiveScale(scale));
        }
        Ok(self.push_forward(|x| scale * x + shift))
    }

    fn push_forward(&self, g: impl Fn(f64) -> f64) -> StepCdf {
        // g is increasing, but rounding may collapse neighbouring points;
        // from_steps then keeps the later (larger) level.
        StepCdf::from_steps(
            self.breakpoints
                .iter()
                .map(|&x| normalize_zero(g(x)))
                .zip(self.levels.iter().copied()),
        )
    }

    /// Distribution of `-X`: `x -> 1 - F((-x)-)`.
    ///
    /// The level at `-x_j` is `1 - v_{j-1}` (with `v_0 = 0`). Reflecting
    /// twice reproduces the input bit-for-bit whenever each level's
    /// complement `1 - v` is exactly representable, which holds for levels
    /// at or above one half and for dyadic levels.
    pub fn reflect(&self) -> StepCdf {
        let k = self.breakpoints.len();
        StepCdf::from_steps((0..k).rev().map(|j| {
            let below = if j == 0 { 0.0 } else { self.levels[j - 1] };
            (normalize_zero(-self.breakpoints[j]), 1.0 - below)
        }))
    }
}

pub(crate) fn merge_sorted(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => match x.total_cmp(&y) {
                Ordering::Less => {
                    i += 1;
                    x
                }
                Ordering::Greater => {
                    j += 1;
                    y
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    x
                }
            },
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.last() != Some(&next) {
            out.push(next);
        }
    }
    out
}

const LEVY_TOLERANCE: f64 = 1e-9;

/// Whether `F(x - eps) - eps <= G(x) <= F(x + eps) + eps` for all `x`.
fn levy_band_holds(f: &StepCdf, g: &StepCdf, eps: f64) -> bool {
    // Both sides are right-continuous steps in x; their extremal differences
    // are attained at a jump of either function.
    let upper = g
        .breakpoints
        .iter()
        .all(|&x| g.level_at(x) <= f.level_at(x + eps) + eps)
        && f.breakpoints
            .iter()
            .zip(&f.levels)
            .all(|(&y, &fy)| g.level_at(y - eps) <= fy + eps);
    let lower = g
        .breakpoints
        .iter()
        .all(|&x| f.level_at(x - eps) - eps <= g.level_at(x))
        && f.breakpoints
            .iter()
            .zip(&f.levels)
            .all(|(&y, &fy)| fy - eps <= g.level_at(y + eps));
    upper && lower
}

/// Lévy distance between two step CDFs, by bisection on `eps` to `1e-9`.
pub fn levy_distance(f: &StepCdf, g: &StepCdf) -> f64 {
    if levy_band_holds(f, g, 0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    while hi - lo > LEVY_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if levy_band_holds(f, g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cdf(xs: &[f64], vs: &[f64]) -> StepCdf {
        StepCdf::new(xs.to_vec(), vs.to_vec()).unwrap()
    }

    #[test]
    fn construction_examples() {
        let f = cdf(&[0.0], &[1.0]);
        assert_eq!(f, StepCdf::point_mass(0.0));

        let f = cdf(&[1.0, 2.0], &[0.5, 1.0]);
        assert_eq!(f.eval(1.5).value(), 0.5);

        assert_eq!(
            StepCdf::new(vec![0.0, 0.0], vec![0.5, 1.0]),
            Err(Error::NonMonotoneBreakpoints { index: 1 })
        );
    }

    #[test]
    fn construction_errors() {
        assert_eq!(StepCdf::new(vec![], vec![]), Err(Error::EmptyInput));
        assert_eq!(
            StepCdf::new(vec![0.0, 1.0], vec![0.7, 0.6]),
            Err(Error::NonMonotoneLevels { index: 1 })
        );
        assert_eq!(
            StepCdf::new(vec![0.0, 1.0], vec![0.2, 0.9]),
            Err(Error::TerminalLevelNotOne { value: 0.9 })
        );
        assert!(matches!(
            StepCdf::new(vec![0.0, 1.0], vec![0.0, 1.0]),
            Err(Error::LevelOutOfRange { index: 0, .. })
        ));
        assert!(matches!(
            StepCdf::new(vec![0.0], vec![1.0, 1.0]),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            StepCdf::new(vec![f64::NAN], vec![1.0]),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn merges_redundant_breakpoints() {
        let f = cdf(&[1.0, 2.0, 3.0], &[0.5, 0.5, 1.0]);
        assert_eq!(f.breakpoints(), &[1.0, 3.0]);
        assert_eq!(f.levels(), &[0.5, 1.0]);
        assert!(matches!(
            StepCdf::from_canonical(vec![1.0, 2.0, 3.0], vec![0.5, 0.5, 1.0]),
            Err(Error::NonCanonical { .. })
        ));
    }

    #[test]
    fn from_samples_examples() {
        let f = StepCdf::from_samples(&[3.0, 1.0, 2.0, 2.0], None).unwrap();
        assert_eq!(f.breakpoints(), &[1.0, 2.0, 3.0]);
        assert_eq!(f.levels(), &[0.25, 0.75, 1.0]);

        assert_eq!(
            StepCdf::from_samples(&[5.0], None).unwrap(),
            StepCdf::point_mass(5.0)
        );

        let f = StepCdf::from_samples(&[1.0, 2.0], Some(&[0.3, 0.7])).unwrap();
        assert_eq!(f.levels(), &[0.3, 1.0]);
    }

    #[test]
    fn from_samples_errors() {
        assert_eq!(StepCdf::from_samples(&[], None), Err(Error::EmptyInput));
        assert!(matches!(
            StepCdf::from_samples(&[1.0, 2.0], Some(&[0.5, 0.6])),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            StepCdf::from_samples(&[1.0, 2.0], Some(&[1.5, -0.5])),
            Err(Error::BadWeights(_))
        ));
        assert!(matches!(
            StepCdf::from_samples(&[1.0], Some(&[0.5, 0.5])),
            Err(Error::BadWeights(_))
        ));
    }

    #[test]
    fn from_samples_renormalizes_near_unit_weights() {
        let f = StepCdf::from_samples(&[0.0, 1.0], Some(&[0.5, 0.5 + 1e-13])).unwrap();
        assert_eq!(f.levels().last(), Some(&1.0));
        assert!((f.levels()[0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn point_mass_eval() {
        let f = StepCdf::point_mass(0.0);
        assert_eq!(f.eval(-0.1).value(), 0.0);
        assert_eq!(f.eval(0.0).value(), 1.0);
        assert_eq!(f.eval_left(0.0).value(), 0.0);
        assert_eq!(StepCdf::point_mass(7.0).eval(7.0).value(), 1.0);
    }

    #[test]
    fn eval_examples() {
        let f = cdf(&[1.0, 2.0], &[0.5, 1.0]);
        assert_eq!(f.eval(2.0).value(), 1.0);
        assert_eq!(f.eval_left(2.0).value(), 0.5);
        assert_eq!(f.eval_left(1.0).value(), 0.0);
        let g = cdf(&[0.0, 1.0], &[0.4, 1.0]);
        assert_eq!(g.eval(0.5).value(), 0.4);
    }

    #[test]
    fn fosd_examples() {
        let f1 = StepCdf::point_mass(1.0);
        let f0 = StepCdf::point_mass(0.0);
        assert!(f1.fosd_ge(&f0));
        assert!(!f0.fosd_ge(&f1));
        assert!(f0.fosd_ge(&f0));
        let a = cdf(&[0.0, 1.0], &[0.5, 1.0]);
        let b = cdf(&[0.0, 1.0], &[0.6, 1.0]);
        assert!(a.fosd_ge(&b));
        assert!(!b.fosd_ge(&a));
    }

    #[test]
    fn lattice_examples() {
        let f0 = StepCdf::point_mass(0.0);
        let f1 = StepCdf::point_mass(1.0);
        assert_eq!(f0.join(&f1), f1);
        assert_eq!(f0.meet(&f1), f0);
        assert_eq!(f0.join(&f0), f0);

        let f = cdf(&[0.0, 2.0], &[0.5, 1.0]);
        let g = cdf(&[1.0], &[1.0]);
        let j = f.join(&g);
        assert_eq!(j.eval(0.0).value(), 0.0);
        assert_eq!(j.eval(1.0).value(), 0.5);
        assert_eq!(j.eval(2.0).value(), 1.0);
        assert_eq!(j, cdf(&[1.0, 2.0], &[0.5, 1.0]));
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(
            StepCdf::point_mass(0.0).translate(3.0),
            StepCdf::point_mass(3.0)
        );
        let f = cdf(&[1.0, 2.0], &[0.5, 1.0]);
        assert_eq!(f.affine_push(2.0, 1.0).unwrap(), cdf(&[3.0, 5.0], &[0.5, 1.0]));
        assert_eq!(f.affine_push(-1.0, 0.0), Err(Error::NonPositiveScale(-1.0)));
        assert_eq!(f.affine_push(0.0, 0.0), Err(Error::NonPositiveScale(0.0)));
    }

    #[test]
    fn pushforward_collapse_keeps_upper_level() {
        let f = cdf(&[0.0, 1e-300], &[0.5, 1.0]);
        let g = f.translate(1.0);
        assert_eq!(g, StepCdf::point_mass(1.0));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(
            StepCdf::point_mass(2.5).reflect(),
            StepCdf::point_mass(-2.5)
        );
        assert_eq!(StepCdf::point_mass(0.0).reflect(), StepCdf::point_mass(0.0));
        assert!(StepCdf::point_mass(0.0).reflect().breakpoints()[0].is_sign_positive());

        let f = cdf(&[1.0, 2.0], &[0.5, 1.0]);
        assert_eq!(f.reflect(), cdf(&[-2.0, -1.0], &[0.5, 1.0]));
        assert_eq!(f.reflect().reflect(), f);

        let g = cdf(&[-1.0, 0.0, 3.0], &[0.25, 0.625, 1.0]);
        let rr = g.reflect().reflect();
        assert_eq!(rr.breakpoints(), g.breakpoints());
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(rr.levels()), bits(g.levels()));
    }

    #[test]
    fn reflect_non_dyadic_levels_round_trip_within_ulp() {
        let g = cdf(&[0.0, 1.0, 2.0], &[0.1, 0.3, 1.0]);
        let rr = g.reflect().reflect();
        assert_eq!(rr.breakpoints(), g.breakpoints());
        for (a, b) in rr.levels().iter().zip(g.levels()) {
            assert!((a - b).abs() <= 1e-16);
        }
    }

    #[test]
    fn reflect_matches_cdf_of_negation() {
        let f = cdf(&[-1.0, 0.5, 2.0], &[0.25, 0.75, 1.0]);
        let r = f.reflect();
        for &x in &[-3.0, -2.0, -1.5, -0.5, 0.0, 0.99, 1.0, 1.5] {
            assert_eq!(r.eval(x).value(), 1.0 - f.eval_left(-x).value());
        }
    }

    #[test]
    fn levy_examples() {
        let f = cdf(&[0.0, 1.0], &[0.5, 1.0]);
        assert_eq!(levy_distance(&f, &f), 0.0);
        let d = levy_distance(&StepCdf::point_mass(0.0), &StepCdf::point_mass(0.3));
        assert!((d - 0.3).abs() < 2e-9, "{d}");
        let d = levy_distance(&StepCdf::point_mass(0.0), &StepCdf::point_mass(5.0));
        assert!((d - 1.0).abs() < 2e-9, "{d}");
    }

    fn levy_grid_oracle(f: &StepCdf, g: &StepCdf) -> f64 {
        let lo = f.min_support().min(g.min_support()) - 2.0;
        let hi = f.max_support().max(g.max_support()) + 2.0;
        let band = |eps: f64| {
            let n = ((hi - lo) / 1e-3) as usize;
            (0..=n).all(|i| {
                let x = lo + i as f64 * 1e-3;
                f.level_at(x - eps) - eps <= g.level_at(x) + 1e-12
                    && g.level_at(x) <= f.level_at(x + eps) + eps + 1e-12
            })
        };
        (0..=10_000)
            .map(|k| k as f64 * 1e-4)
            .find(|&eps| band(eps))
            .unwrap_or(1.0)
    }

    #[test]
    fn levy_against_grid_oracle() {
        let cases = [
            (StepCdf::point_mass(0.0), StepCdf::point_mass(0.05)),
            (cdf(&[0.0, 1.0], &[0.5, 1.0]), cdf(&[0.0, 1.0], &[0.7, 1.0])),
            (cdf(&[0.0, 0.1], &[0.5, 1.0]), StepCdf::point_mass(0.0)),
        ];
        for (f, g) in &cases {
            let d = levy_distance(f, g);
            let oracle = levy_grid_oracle(f, g);
            assert!((d - oracle).abs() <= 1.1e-3, "{d} vs {oracle}");
            assert!((levy_distance(g, f) - d).abs() < 1e-9);
        }
    }
}
