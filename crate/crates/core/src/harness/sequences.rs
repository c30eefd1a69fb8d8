//! Weakly convergent sequences of step CDFs for semicontinuity probes.
//!
//! A lower semicontinuous statistic satisfies `s(F) <= liminf s(F_n)`
//! whenever `F_n -> F` weakly. A probe evaluates `s(F_n)` over the tail
//! `n = N/2 ..= N` and compares `s(F)` with the supremum there (the
//! infimum for upper semicontinuity). Displacements shrink like `n^-3` so
//! the truncation error at the tail is far below [`PROBE_TOL`], and escaping
//! masses stay below every level on the generator grid once `n >= 64`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::cdf::{levy_distance, StepCdf};

use super::StatisticHandle;

/// Index of the last probed sequence element.
pub const PROBE_N: u32 = 1000;
/// Slack allowed for sequence truncation.
pub const PROBE_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lsc,
    Usc,
}

type Generator = Arc<dyn Fn(u32) -> StepCdf + Send + Sync>;

/// `n -> F_n` with its weak limit and the direction being probed.
#[derive(Clone)]
pub struct SequenceSpec {
    pub name: String,
    generator: Generator,
    pub limit: StepCdf,
    pub direction: Direction,
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceSpec")
            .field("name", &self.name)
            .field("limit", &self.limit)
            .field("direction", &self.direction)
            .finish_non_exhaustive()
    }
}

impl SequenceSpec {
    pub fn new(
        name: impl Into<String>,
        generator: impl Fn(u32) -> StepCdf + Send + Sync + 'static,
        limit: StepCdf,
        direction: Direction,
    ) -> Self {
        SequenceSpec {
            name: name.into(),
            generator: Arc::new(generator),
            limit,
            direction,
        }
    }

    /// `F_n`, for `n >= 1`.
    pub fn element(&self, n: u32) -> StepCdf {
        (self.generator)(n)
    }

    /// Lévy distance to the limit strictly decreases over
    /// `n = 1, 10, 100, 1000` and ends below `1e-2`.
    pub fn converges(&self) -> bool {
        let d: Vec<f64> = [1, 10, 100, 1000]
            .iter()
            .map(|&n| levy_distance(&self.element(n), &self.limit))
            .collect();
        d.windows(2).all(|w| w[1] < w[0]) && d[3] < 1e-2
    }
}

/// `n^-3`.
fn rate(n: u32) -> f64 {
    (n as f64).powi(-3)
}

/// Two atoms at 0 and `y` with the given mass at 0.
fn two_atoms(y: f64, first_level: f64) -> StepCdf {
    StepCdf::from_canonical(vec![0.0, y], vec![first_level, 1.0]).expect("valid two-atom CDF")
}

/// The curated families: point masses collapsing onto 0 from either side,
/// a small mass escaping to `+inf` or `-inf`, an atom merging into its
/// neighbour, a level approaching each of `levels` from below and from
/// above, and `base` shifted back to itself from either side.
pub fn curated_families(levels: &[f64], base: &StepCdf, direction: Direction) -> Vec<SequenceSpec> {
    let delta0 = StepCdf::point_mass(0.0);
    let mut specs = vec![
        SequenceSpec::new(
            "point_mass_from_right",
            |n| StepCdf::point_mass(rate(n)),
            delta0.clone(),
            direction,
        ),
        SequenceSpec::new(
            "point_mass_from_left",
            |n| StepCdf::point_mass(-rate(n)),
            delta0.clone(),
            direction,
        ),
        SequenceSpec::new(
            "mass_escape_right",
            |n| two_atoms(n as f64, 1.0 - 1.0 / (n as f64 + 1.0)),
            delta0.clone(),
            direction,
        ),
        SequenceSpec::new(
            "mass_escape_left",
            |n| {
                StepCdf::from_canonical(vec![-(n as f64), 0.0], vec![1.0 / (n as f64 + 1.0), 1.0])
                    .expect("valid two-atom CDF")
            },
            delta0.clone(),
            direction,
        ),
        SequenceSpec::new(
            "atom_merge",
            |n| two_atoms(rate(n), 0.5),
            delta0,
            direction,
        ),
    ];
    for &alpha in levels {
        let gap = alpha.min(1.0 - alpha);
        specs.push(SequenceSpec::new(
            format!("level_from_below_{alpha}"),
            move |n| two_atoms(1.0, alpha - gap * rate(n + 1)),
            two_atoms(1.0, alpha),
            direction,
        ));
        specs.push(SequenceSpec::new(
            format!("level_from_above_{alpha}"),
            move |n| two_atoms(1.0, alpha + gap * rate(n + 1)),
            two_atoms(1.0, alpha),
            direction,
        ));
    }
    let shifted = base.clone();
    specs.push(SequenceSpec::new(
        "translate_from_right",
        move |n| shifted.translate(rate(n)),
        base.clone(),
        direction,
    ));
    let shifted = base.clone();
    specs.push(SequenceSpec::new(
        "translate_from_left",
        move |n| shifted.translate(-rate(n)),
        base.clone(),
        direction,
    ));
    specs
}

/// Compares `s(limit)` with the supremum (lsc) or infimum (usc) of
/// `s(F_n)` over the tail `n = PROBE_N / 2 ..= PROBE_N`.
pub fn probe_semicontinuity(s: &StatisticHandle, spec: &SequenceSpec) -> bool {
    let tail = (PROBE_N / 2..=PROBE_N).map(|n| s.eval(&spec.element(n)));
    let at_limit = s.eval(&spec.limit);
    match spec.direction {
        Direction::Lsc => at_limit <= tail.fold(f64::NEG_INFINITY, f64::max) + PROBE_TOL,
        Direction::Usc => at_limit >= tail.fold(f64::INFINITY, f64::min) - PROBE_TOL,
    }
}
