//! Step templates that parametrize the adjusted-quantile statistics.
//!
//! * [`ShapeFn`]: a sub-unit, nondecreasing, right-continuous step `phi`
//!   that is 0 far left and positive somewhere.
//! * [`HandicapFn`]: a nondecreasing, left-continuous step `c` on `(0, 1)`
//!   that is `+inf` above a threshold `beta < 1`.
//! * [`DualShapeFn`]: a nondecreasing, right-continuous step `psi` that is
//!   1 from some point on, below 1 somewhere, and bounded away from 0 on
//!   the left.
//! * [`DualHandicapFn`]: a nondecreasing, right-continuous step `d` on
//!   `(0, 1)` that is `-inf` below a threshold in `(0, 1)`.
//!
//! Probabilities stored in templates must be at least [`MIN_LEVEL`], so the
//! complement `1 - p` taken by the duality maps is always a probability
//! strictly below 1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest probability a template may carry (`2^-53`).
pub const MIN_LEVEL: f64 = f64::EPSILON / 2.0;

fn violation(class: &'static str, reason: impl Into<String>) -> Error {
    Error::ClassViolation {
        class,
        reason: reason.into(),
    }
}

fn check_lengths(class: &'static str, a: &[f64], b: &[f64], names: (&'static str, &'static str)) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput);
    }
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: names.0,
            left_len: a.len(),
            right: names.1,
            right_len: b.len(),
        });
    }
    for (field, xs) in [(names.0, a), (names.1, b)] {
        if let Some(index) = xs.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { field, index });
        }
    }
    let _ = class;
    Ok(())
}

fn check_strictly_increasing(class: &'static str, field: &str, xs: &[f64]) -> Result<()> {
    match xs.windows(2).position(|w| w[0] >= w[1]) {
        Some(i) => Err(violation(
            class,
            format!("{field} must be strictly increasing (index {})", i + 1),
        )),
        None => Ok(()),
    }
}

fn check_nondecreasing(class: &'static str, field: &str, xs: &[f64]) -> Result<()> {
    match xs.windows(2).position(|w| w[0] > w[1]) {
        Some(i) => Err(violation(
            class,
            format!("{field} must be nondecreasing (index {})", i + 1),
        )),
        None => Ok(()),
    }
}

fn check_open_unit(class: &'static str, field: &str, xs: &[f64]) -> Result<()> {
    for (i, &p) in xs.iter().enumerate() {
        if p >= 1.0 {
            return Err(violation(class, format!("{field}[{i}] = {p} must be below 1")));
        }
        if p < MIN_LEVEL {
            return Err(violation(
                class,
                format!("{field}[{i}] = {p} must be positive (at least 2^-53)"),
            ));
        }
    }
    Ok(())
}

/// Keeps, for each run of equal values, the element at `keep_last ? end : start`.
fn dedup_runs(points: Vec<f64>, values: Vec<f64>, keep_last: bool) -> (Vec<f64>, Vec<f64>) {
    let mut out_p: Vec<f64> = Vec::with_capacity(points.len());
    let mut out_v: Vec<f64> = Vec::with_capacity(values.len());
    for (p, v) in points.into_iter().zip(values) {
        if out_v.last() == Some(&v) {
            if keep_last {
                *out_p.last_mut().unwrap() = p;
            }
            continue;
        }
        out_p.push(p);
        out_v.push(v);
    }
    (out_p, out_v)
}

/// Shape template `phi` (class Phi): 0 below the first jump point,
/// `jump_levels[j]` on `[jump_points[j], jump_points[j + 1])`, and the last
/// level (strictly below 1) from the last jump point on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShape")]
pub struct ShapeFn {
    jump_points: Vec<f64>,
    jump_levels: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShape {
    jump_points: Vec<f64>,
    jump_levels: Vec<f64>,
}

impl TryFrom<RawShape> for ShapeFn {
    type Error = Error;
    fn try_from(raw: RawShape) -> Result<Self> {
        ShapeFn::new(raw.jump_points, raw.jump_levels)
    }
}

impl ShapeFn {
    const CLASS: &'static str = "ShapeFn";

    /// Validates the class invariants. Consecutive equal levels are merged
    /// (the later jump point carries no jump).
    pub fn new(jump_points: Vec<f64>, jump_levels: Vec<f64>) -> Result<Self> {
        check_lengths(Self::CLASS, &jump_points, &jump_levels, ("jump_points", "jump_levels"))?;
        check_strictly_increasing(Self::CLASS, "jump_points", &jump_points)?;
        check_open_unit(Self::CLASS, "jump_levels", &jump_levels)?;
        check_nondecreasing(Self::CLASS, "jump_levels", &jump_levels)?;
        let (jump_points, jump_levels) = dedup_runs(jump_points, jump_levels, false);
        Ok(ShapeFn {
            jump_points,
            jump_levels,
        })
    }

    pub(crate) fn from_parts_unchecked(jump_points: Vec<f64>, jump_levels: Vec<f64>) -> Self {
        let (jump_points, jump_levels) = dedup_runs(jump_points, jump_levels, false);
        debug_assert!(Self::new(jump_points.clone(), jump_levels.clone()).is_ok());
        ShapeFn {
            jump_points,
            jump_levels,
        }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    pub fn jump_levels(&self) -> &[f64] {
        &self.jump_levels
    }

    /// `lim_{x -> inf} phi(x)`.
    pub fn sup_level(&self) -> f64 {
        *self.jump_levels.last().unwrap()
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.jump_points.partition_point(|&u| u <= x);
        if i == 0 {
            0.0
        } else {
            self.jump_levels[i - 1]
        }
    }

    /// `phi(x-) = sup_{y < x} phi(y)`.
    pub fn eval_left(&self, x: f64) -> f64 {
        let i = self.jump_points.partition_point(|&u| u < x);
        if i == 0 {
            0.0
        } else {
            self.jump_levels[i - 1]
        }
    }
}

/// Handicap schedule `c` (class C): `values[i]` on
/// `(cut_points[i - 1], cut_points[i]]` (with an implicit cut at 0) and
/// `+inf` above the last cut point.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawHandicap")]
pub struct HandicapFn {
    cut_points: Vec<f64>,
    values: Vec<f64>,
}

/// A JSON array entry: a number or one of the `"inf"` / `"-inf"` tokens.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum Entry {
    Num(f64),
    Token(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHandicap {
    cut_points: Vec<f64>,
    values: Vec<Entry>,
}

fn finite_entries(
    class: &'static str,
    entries: Vec<Entry>,
    token: &str,
    token_at_end: bool,
) -> Result<Vec<f64>> {
    let n = entries.len();
    let mut out = Vec::with_capacity(n);
    for (i, e) in entries.into_iter().enumerate() {
        match e {
            Entry::Num(v) => out.push(v),
            Entry::Token(t) if t == token => {
                let allowed = if token_at_end { i + 1 == n } else { i == 0 };
                if !allowed {
                    return Err(violation(
                        class,
                        format!(
                            "\"{token}\" may only appear as the {} entry of values",
                            if token_at_end { "last" } else { "first" }
                        ),
                    ));
                }
            }
            Entry::Token(t) => {
                return Err(violation(class, format!("unexpected token \"{t}\" in values")));
            }
        }
    }
    Ok(out)
}

impl TryFrom<RawHandicap> for HandicapFn {
    type Error = Error;
    fn try_from(raw: RawHandicap) -> Result<Self> {
        let values = finite_entries(Self::CLASS, raw.values, "inf", true)?;
        HandicapFn::new(raw.cut_points, values)
    }
}

impl Serialize for HandicapFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut values: Vec<Entry> = self.values.iter().map(|&v| Entry::Num(v)).collect();
        values.push(Entry::Token("inf".into()));
        let mut st = s.serialize_struct("HandicapFn", 2)?;
        st.serialize_field("cut_points", &self.cut_points)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

impl HandicapFn {
    const CLASS: &'static str = "HandicapFn";

    /// Validates the class invariants. A run of equal consecutive values is
    /// merged into one cell ending at the run's last cut point.
    pub fn new(cut_points: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_lengths(Self::CLASS, &cut_points, &values, ("cut_points", "values"))?;
        check_strictly_increasing(Self::CLASS, "cut_points", &cut_points)?;
        check_open_unit(Self::CLASS, "cut_points", &cut_points)?;
        check_nondecreasing(Self::CLASS, "values", &values)?;
        let (cut_points, values) = dedup_runs(cut_points, values, true);
        Ok(HandicapFn { cut_points, values })
    }

    pub(crate) fn from_parts_unchecked(cut_points: Vec<f64>, values: Vec<f64>) -> Self {
        let (cut_points, values) = dedup_runs(cut_points, values, true);
        debug_assert!(Self::new(cut_points.clone(), values.clone()).is_ok());
        HandicapFn { cut_points, values }
    }

    pub fn cut_points(&self) -> &[f64] {
        &self.cut_points
    }

    /// Finite values, one per cut point.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `beta`: `c` is `+inf` on `(beta, 1)`.
    pub fn threshold(&self) -> f64 {
        *self.cut_points.last().unwrap()
    }

    /// `c(alpha)`, `+inf` above the threshold. `alpha` must lie in `(0, 1)`.
    pub fn eval(&self, alpha: f64) -> f64 {
        let i = self.cut_points.partition_point(|&a| a < alpha);
        self.values.get(i).copied().unwrap_or(f64::INFINITY)
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }
}

/// Dual shape template `psi` (class Psi): `levels_below[j]` on
/// `[jump_points[j - 1], jump_points[j])` (the first level extends to
/// `-inf`) and 1 from the last jump point on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDualShape")]
pub struct DualShapeFn {
    jump_points: Vec<f64>,
    levels_below: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDualShape {
    jump_points: Vec<f64>,
    levels_below: Vec<f64>,
}

impl TryFrom<RawDualShape> for DualShapeFn {
    type Error = Error;
    fn try_from(raw: RawDualShape) -> Result<Self> {
        DualShapeFn::new(raw.jump_points, raw.levels_below)
    }
}

impl DualShapeFn {
    const CLASS: &'static str = "DualShapeFn";

    /// Validates the class invariants. Consecutive equal levels are merged
    /// (the earlier jump point carries no jump).
    pub fn new(jump_points: Vec<f64>, levels_below: Vec<f64>) -> Result<Self> {
        check_lengths(Self::CLASS, &jump_points, &levels_below, ("jump_points", "levels_below"))?;
        check_strictly_increasing(Self::CLASS, "jump_points", &jump_points)?;
        check_open_unit(Self::CLASS, "levels_below", &levels_below)?;
        check_nondecreasing(Self::CLASS, "levels_below", &levels_below)?;
        let (jump_points, levels_below) = dedup_runs(jump_points, levels_below, true);
        Ok(DualShapeFn {
            jump_points,
            levels_below,
        })
    }

    pub(crate) fn from_parts_unchecked(jump_points: Vec<f64>, levels_below: Vec<f64>) -> Self {
        let (jump_points, levels_below) = dedup_runs(jump_points, levels_below, true);
        debug_assert!(Self::new(jump_points.clone(), levels_below.clone()).is_ok());
        DualShapeFn {
            jump_points,
            levels_below,
        }
    }

    pub fn jump_points(&self) -> &[f64] {
        &self.jump_points
    }

    pub fn levels_below(&self) -> &[f64] {
        &self.levels_below
    }

    /// `lim_{x -> -inf} psi(x)`.
    pub fn inf_level(&self) -> f64 {
        self.levels_below[0]
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.jump_points.partition_point(|&w| w <= x);
        self.levels_below.get(i).copied().unwrap_or(1.0)
    }
}

/// Dual handicap schedule `d` (class D): `-inf` below the first cut point
/// and `values[i]` on `[cut_points[i], cut_points[i + 1])` (the last cell
/// extends to 1).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "RawDualHandicap")]
pub struct DualHandicapFn {
    cut_points: Vec<f64>,
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDualHandicap {
    cut_points: Vec<f64>,
    values: Vec<Entry>,
}

impl TryFrom<RawDualHandicap> for DualHandicapFn {
    type Error = Error;
    fn try_from(raw: RawDualHandicap) -> Result<Self> {
        let values = finite_entries(Self::CLASS, raw.values, "-inf", false)?;
        DualHandicapFn::new(raw.cut_points, values)
    }
}

impl Serialize for DualHandicapFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut values = vec![Entry::Token("-inf".into())];
        values.extend(self.values.iter().map(|&v| Entry::Num(v)));
        let mut st = s.serialize_struct("DualHandicapFn", 2)?;
        st.serialize_field("cut_points", &self.cut_points)?;
        st.serialize_field("values", &values)?;
        st.end()
    }
}

impl DualHandicapFn {
    const CLASS: &'static str = "DualHandicapFn";

    /// Validates the class invariants. A run of equal consecutive values is
    /// merged into one cell starting at the run's first cut point.
    pub fn new(cut_points: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_lengths(Self::CLASS, &cut_points, &values, ("cut_points", "values"))?;
        check_strictly_increasing(Self::CLASS, "cut_points", &cut_points)?;
        check_open_unit(Self::CLASS, "cut_points", &cut_points)?;
        check_nondecreasing(Self::CLASS, "values", &values)?;
        let (cut_points, values) = dedup_runs(cut_points, values, false);
        Ok(DualHandicapFn { cut_points, values })
    }

    pub(crate) fn from_parts_unchecked(cut_points: Vec<f64>, values: Vec<f64>) -> Self {
        let (cut_points, values) = dedup_runs(cut_points, values, false);
        debug_assert!(Self::new(cut_points.clone(), values.clone()).is_ok());
        DualHandicapFn { cut_points, values }
    }

    pub fn cut_points(&self) -> &[f64] {
        &self.cut_points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `d` is `-inf` on `(0, threshold)`.
    pub fn threshold(&self) -> f64 {
        self.cut_points[0]
    }

    /// `d(alpha)`, `-inf` below the threshold. `alpha` must lie in `(0, 1)`.
    pub fn eval(&self, alpha: f64) -> f64 {
        let i = self.cut_points.partition_point(|&b| b <= alpha);
        if i == 0 {
            f64::NEG_INFINITY
        } else {
            self.values[i - 1]
        }
    }

    pub fn max_value(&self) -> f64 {
        *self.values.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_validation() {
        assert!(ShapeFn::new(vec![0.0], vec![0.5]).is_ok());
        assert!(matches!(ShapeFn::new(vec![0.0], vec![1.0]), Err(Error::ClassViolation { .. })));
        assert!(matches!(ShapeFn::new(vec![0.0], vec![0.0]), Err(Error::ClassViolation { .. })));
        assert!(matches!(
            ShapeFn::new(vec![1.0, 0.0], vec![0.2, 0.5]),
            Err(Error::ClassViolation { .. })
        ));
        assert!(matches!(
            ShapeFn::new(vec![0.0, 1.0], vec![0.5, 0.2]),
            Err(Error::ClassViolation { .. })
        ));
        assert_eq!(ShapeFn::new(vec![], vec![]), Err(Error::EmptyInput));
        let merged = ShapeFn::new(vec![0.0, 1.0, 2.0], vec![0.2, 0.2, 0.5]).unwrap();
        assert_eq!(merged.jump_points(), &[0.0, 2.0]);
    }

    #[test]
    fn shape_eval() {
        let phi = ShapeFn::new(vec![0.0, 2.0], vec![0.3, 0.6]).unwrap();
        assert_eq!(phi.eval(-1.0), 0.0);
        assert_eq!(phi.eval(0.0), 0.3);
        assert_eq!(phi.eval(1.9), 0.3);
        assert_eq!(phi.eval(2.0), 0.6);
        assert_eq!(phi.eval(1e9), 0.6);
        assert_eq!(phi.eval_left(2.0), 0.3);
    }

    #[test]
    fn handicap_validation_and_eval() {
        let c = HandicapFn::new(vec![0.5, 0.9], vec![0.0, 5.0]).unwrap();
        assert_eq!(c.eval(0.1), 0.0);
        assert_eq!(c.eval(0.5), 0.0);
        assert_eq!(c.eval(0.6), 5.0);
        assert_eq!(c.eval(0.9), 5.0);
        assert_eq!(c.eval(0.95), f64::INFINITY);
        assert_eq!(c.threshold(), 0.9);

        let merged = HandicapFn::new(vec![0.2, 0.5, 0.9], vec![1.0, 1.0, 2.0]).unwrap();
        assert_eq!(merged.cut_points(), &[0.5, 0.9]);
        assert_eq!(merged.values(), &[1.0, 2.0]);

        assert!(matches!(
            HandicapFn::new(vec![0.5, 1.0], vec![0.0, 1.0]),
            Err(Error::ClassViolation { .. })
        ));
        assert!(matches!(
            HandicapFn::new(vec![0.2, 0.5], vec![3.0, 1.0]),
            Err(Error::ClassViolation { .. })
        ));
    }

    #[test]
    fn dual_shape_eval() {
        let psi = DualShapeFn::new(vec![0.0], vec![0.25]).unwrap();
        assert_eq!(psi.eval(-5.0), 0.25);
        assert_eq!(psi.eval(-1e-9), 0.25);
        assert_eq!(psi.eval(0.0), 1.0);
        assert_eq!(psi.inf_level(), 0.25);
        assert!(matches!(DualShapeFn::new(vec![0.0], vec![1.0]), Err(Error::ClassViolation { .. })));
        assert!(matches!(DualShapeFn::new(vec![0.0], vec![0.0]), Err(Error::ClassViolation { .. })));
    }

    #[test]
    fn dual_handicap_eval() {
        let d = DualHandicapFn::new(vec![0.1, 0.5], vec![-5.0, 0.0]).unwrap();
        assert_eq!(d.eval(0.05), f64::NEG_INFINITY);
        assert_eq!(d.eval(0.1), -5.0);
        assert_eq!(d.eval(0.49), -5.0);
        assert_eq!(d.eval(0.5), 0.0);
        assert_eq!(d.eval(0.99), 0.0);
        let merged = DualHandicapFn::new(vec![0.1, 0.5, 0.7], vec![-1.0, -1.0, 0.0]).unwrap();
        assert_eq!(merged.cut_points(), &[0.1, 0.7]);
    }

    #[test]
    fn json_tokens() {
        let c: HandicapFn =
            serde_json::from_str(r#"{"cut_points":[0.5,0.9],"values":[0,5,"inf"]}"#).unwrap();
        assert_eq!(c.values(), &[0.0, 5.0]);
        let c2: HandicapFn =
            serde_json::from_str(r#"{"cut_points":[0.5,0.9],"values":[0,5]}"#).unwrap();
        assert_eq!(c, c2);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"cut_points":[0.5,0.9],"values":[0.0,5.0,"inf"]}"#
        );
        assert!(serde_json::from_str::<HandicapFn>(
            r#"{"cut_points":[0.5,0.9],"values":["inf",0,5]}"#
        )
        .is_err());

        let d: DualHandicapFn =
            serde_json::from_str(r#"{"cut_points":[0.1,0.5],"values":["-inf",-5,0]}"#).unwrap();
        assert_eq!(d.values(), &[-5.0, 0.0]);
        assert_eq!(
            serde_json::to_string(&d).unwrap(),
            r#"{"cut_points":[0.1,0.5],"values":["-inf",-5.0,0.0]}"#
        );
    }
}
