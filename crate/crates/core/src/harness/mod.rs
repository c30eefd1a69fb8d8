//! Executable versions of the axioms characterizing adjusted quantiles.
//!
//! A statistic is any deterministic map from step CDFs to reals, wrapped in a
//! [`StatisticHandle`]. The checks below test one axiom on one instance;
//! [`run_suite`] drives them over seeded random instances. The mean and the
//! midrange are included as statistics that violate some of the axioms.

mod generators;
mod sequences;
mod suite;

pub use generators::{
    enumerate_joints, random_dual_handicap, random_dual_handicap_from, random_dual_shape,
    random_dual_shape_from, random_handicap, random_handicap_from, random_joint,
    random_joint_from, random_level, random_scale, random_shape, random_shape_from, random_shift,
    random_step_cdf, random_step_cdf_from, rng_from_seed, LEVEL_GRID, VALUE_STEP,
};
pub use sequences::{
    curated_families, probe_semicontinuity, Direction, SequenceSpec, PROBE_N, PROBE_TOL,
};
pub use suite::{run_suite, trial_seed, CheckReport, Trial, SEMICONTINUITY_TRIALS};

use std::fmt;
use std::sync::Arc;

use crate::adjusted::{rho_c, HandicapFn, Statistic};
use crate::cdf::StepCdf;
use crate::error::{Error, Result};
use crate::exact::exact_sum;

/// Tolerance for separability and equivariance checks.
pub const CHECK_TOL: f64 = 1e-9;

/// A named statistic.
#[derive(Clone)]
pub struct StatisticHandle {
    name: String,
    f: Arc<dyn Fn(&StepCdf) -> f64 + Send + Sync>,
}

impl fmt::Debug for StatisticHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StatisticHandle({})", self.name)
    }
}

impl StatisticHandle {
    pub fn new(name: impl Into<String>, f: impl Fn(&StepCdf) -> f64 + Send + Sync + 'static) -> Self {
        StatisticHandle {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn from_statistic(stat: Statistic) -> Self {
        StatisticHandle::new(stat.name(), move |f| stat.evaluate(f))
    }

    /// Expectation of the distribution.
    pub fn mean() -> Self {
        StatisticHandle::new("mean", |f: &StepCdf| exact_sum(f.atoms().map(|(x, p)| x * p)))
    }

    /// Midpoint of the smallest and largest atoms.
    pub fn midrange() -> Self {
        StatisticHandle::new("midrange", |f: &StepCdf| (f.min_support() + f.max_support()) / 2.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, f: &StepCdf) -> f64 {
        (self.f)(f)
    }
}

/// Probability levels at which `stat` can jump: the sequence families probe
/// each of them.
pub fn critical_levels(stat: &Statistic) -> Vec<f64> {
    match stat {
        Statistic::Quantile(a) | Statistic::UpperQuantile(a) => vec![*a],
        Statistic::Shape(phi) => phi.jump_levels().to_vec(),
        Statistic::Handicap(c) => c.cut_points().to_vec(),
        Statistic::DualShape(psi) => psi.levels_below().to_vec(),
        Statistic::DualHandicap(d) => d.cut_points().to_vec(),
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CHECK_TOL
}

/// `s(F join G) = max(s(F), s(G))`.
pub fn check_join_sep(s: &StatisticHandle, f: &StepCdf, g: &StepCdf) -> bool {
    close(s.eval(&f.join(g)), s.eval(f).max(s.eval(g)))
}

/// `s(F meet G) = min(s(F), s(G))`.
pub fn check_meet_sep(s: &StatisticHandle, f: &StepCdf, g: &StepCdf) -> bool {
    close(s.eval(&f.meet(g)), s.eval(f).min(s.eval(g)))
}

/// `s(F shifted by b) = s(F) + b`.
pub fn check_translation_equiv(s: &StatisticHandle, f: &StepCdf, shift: f64) -> bool {
    close(s.eval(&f.translate(shift)), s.eval(f) + shift)
}

/// `s(F pushed through x -> a x + b) = a s(F) + b`.
pub fn check_affine_equiv(s: &StatisticHandle, f: &StepCdf, scale: f64, shift: f64) -> Result<bool> {
    let pushed = f.affine_push(scale, shift)?;
    Ok(close(s.eval(&pushed), scale * s.eval(f) + shift))
}

/// `s(F) >= s(G)` whenever `F` dominates `G`.
pub fn check_fosd_monotone(s: &StatisticHandle, f: &StepCdf, g: &StepCdf) -> Result<bool> {
    if !f.fosd_ge(g) {
        return Err(Error::PreconditionNotDominated);
    }
    Ok(s.eval(f) >= s.eval(g) - CHECK_TOL)
}

/// An instance on which a statistic fails affine equivariance with zero
/// shift.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineWitness {
    pub cdf: StepCdf,
    pub scale: f64,
}

/// Searches point masses at 0 and 1 and two-atom CDFs with their jump at a
/// cut point of `c`, under scales 1/2 and 2, for a failure of affine
/// equivariance of `rho_c(., c)`.
pub fn find_affine_witness(c: &HandicapFn) -> Option<AffineWitness> {
    let s = StatisticHandle::new("handicap", {
        let c = c.clone();
        move |f| rho_c(f, &c)
    });
    let reach = 2.0 * c.values().iter().map(|v| v.abs()).sum::<f64>() + 1.0;
    let mut heights = vec![1.0];
    while *heights.last().unwrap() <= reach {
        heights.push(heights.last().unwrap() * 2.0);
    }
    let mut candidates = vec![StepCdf::point_mass(0.0), StepCdf::point_mass(1.0)];
    for &a in c.cut_points() {
        for &y in &heights {
            candidates.push(StepCdf::from_canonical(vec![0.0, y], vec![a, 1.0]).unwrap());
        }
    }
    for cdf in candidates {
        for scale in [0.5, 2.0] {
            if !check_affine_equiv(&s, &cdf, scale, 0.0).expect("positive scale") {
                return Some(AffineWitness { cdf, scale });
            }
        }
    }
    None
}
