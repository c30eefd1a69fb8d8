//! Seeded random instances.
//!
//! Every probability is a multiple of 1/64 and every value a multiple of
//! 1/4, so reflections, couplings and the affine maps used by the checks
//! stay exact in binary floating point. Bounds above what that grid can
//! hold are rejected with `BadBounds`.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjusted::{DualHandicapFn, DualShapeFn, HandicapFn, ShapeFn};
use crate::cdf::StepCdf;
use crate::comonotone::FiniteJoint;
use crate::error::{Error, Result};

/// Probabilities are drawn from `k / LEVEL_GRID`.
pub const LEVEL_GRID: u32 = 64;
/// Values are drawn from `k * VALUE_STEP`.
pub const VALUE_STEP: f64 = 0.25;

const MAX_ATOMS: usize = LEVEL_GRID as usize;
const MAX_JUMPS: usize = LEVEL_GRID as usize - 1;
// Template values live on the quarter grid in [-8, 8].
const TEMPLATE_SPAN: i64 = 32;
// Joint values live on the quarter grid in [-2, 2], so ties are common.
const JOINT_SPAN: i64 = 8;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_count(name: &str, value: usize, max: usize) -> Result<()> {
    if value == 0 || value > max {
        Err(Error::BadBounds(format!("{name} must be in 1..={max}, got {value}")))
    } else {
        Ok(())
    }
}

/// `count` distinct integers from `lo..=hi`, sorted.
fn distinct_sorted<R: Rng + ?Sized>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<i64> {
    let span = (hi - lo + 1) as usize;
    let mut out: Vec<i64> = sample(rng, span, count).into_iter().map(|i| lo + i as i64).collect();
    out.sort_unstable();
    out
}

fn interior_levels<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    distinct_sorted(rng, count, 1, LEVEL_GRID as i64 - 1)
        .into_iter()
        .map(|k| k as f64 / LEVEL_GRID as f64)
        .collect()
}

fn grid_values<R: Rng + ?Sized>(rng: &mut R, count: usize, lo: i64, hi: i64) -> Vec<f64> {
    distinct_sorted(rng, count, lo, hi).into_iter().map(|k| k as f64 * VALUE_STEP).collect()
}

pub fn random_step_cdf(seed: u64, max_atoms: usize, value_range: (f64, f64)) -> Result<StepCdf> {
    random_step_cdf_from(&mut rng_from_seed(seed), max_atoms, value_range)
}

/// Between 1 and `max_atoms` atoms on the quarter grid inside
/// `value_range`, fewer if the range holds fewer grid points.
pub fn random_step_cdf_from<R: Rng + ?Sized>(
    rng: &mut R,
    max_atoms: usize,
    value_range: (f64, f64),
) -> Result<StepCdf> {
    check_count("max_atoms", max_atoms, MAX_ATOMS)?;
    let (lo, hi) = value_range;
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::BadBounds(format!("invalid value range [{lo}, {hi}]")));
    }
    let k_lo = (lo / VALUE_STEP).ceil() as i64;
    let k_hi = (hi / VALUE_STEP).floor() as i64;
    if k_lo > k_hi {
        return Err(Error::BadBounds(format!(
            "value range [{lo}, {hi}] contains no multiple of {VALUE_STEP}"
        )));
    }
    let n = rng.random_range(1..=max_atoms).min((k_hi - k_lo + 1) as usize);
    let values = grid_values(rng, n, k_lo, k_hi);
    let mut levels = interior_levels(rng, n - 1);
    levels.push(1.0);
    Ok(StepCdf::from_canonical(values, levels).expect("generator builds canonical CDFs"))
}

pub fn random_shape(seed: u64, max_jumps: usize) -> Result<ShapeFn> {
    random_shape_from(&mut rng_from_seed(seed), max_jumps)
}

pub fn random_shape_from<R: Rng + ?Sized>(rng: &mut R, max_jumps: usize) -> Result<ShapeFn> {
    check_count("max_jumps", max_jumps, MAX_JUMPS)?;
    let n = rng.random_range(1..=max_jumps);
    let points = grid_values(rng, n, -TEMPLATE_SPAN, TEMPLATE_SPAN);
    ShapeFn::new(points, interior_levels(rng, n))
}

pub fn random_handicap(seed: u64, max_cuts: usize) -> Result<HandicapFn> {
    random_handicap_from(&mut rng_from_seed(seed), max_cuts)
}

pub fn random_handicap_from<R: Rng + ?Sized>(rng: &mut R, max_cuts: usize) -> Result<HandicapFn> {
    check_count("max_cuts", max_cuts, MAX_JUMPS)?;
    let n = rng.random_range(1..=max_cuts);
    let cuts = interior_levels(rng, n);
    HandicapFn::new(cuts, grid_values(rng, n, -TEMPLATE_SPAN, TEMPLATE_SPAN))
}

pub fn random_dual_shape(seed: u64, max_jumps: usize) -> Result<DualShapeFn> {
    random_dual_shape_from(&mut rng_from_seed(seed), max_jumps)
}

pub fn random_dual_shape_from<R: Rng + ?Sized>(
    rng: &mut R,
    max_jumps: usize,
) -> Result<DualShapeFn> {
    check_count("max_jumps", max_jumps, MAX_JUMPS)?;
    let n = rng.random_range(1..=max_jumps);
    let points = grid_values(rng, n, -TEMPLATE_SPAN, TEMPLATE_SPAN);
    DualShapeFn::new(points, interior_levels(rng, n))
}

pub fn random_dual_handicap(seed: u64, max_cuts: usize) -> Result<DualHandicapFn> {
    random_dual_handicap_from(&mut rng_from_seed(seed), max_cuts)
}

pub fn random_dual_handicap_from<R: Rng + ?Sized>(
    rng: &mut R,
    max_cuts: usize,
) -> Result<DualHandicapFn> {
    check_count("max_cuts", max_cuts, MAX_JUMPS)?;
    let n = rng.random_range(1..=max_cuts);
    let cuts = interior_levels(rng, n);
    DualHandicapFn::new(cuts, grid_values(rng, n, -TEMPLATE_SPAN, TEMPLATE_SPAN))
}

pub fn random_joint(seed: u64, max_outcomes: usize, comonotone: bool) -> Result<FiniteJoint> {
    random_joint_from(&mut rng_from_seed(seed), max_outcomes, comonotone)
}

/// With `comonotone` the `x` and `y` columns are sorted separately and
/// paired in order.
pub fn random_joint_from<R: Rng + ?Sized>(
    rng: &mut R,
    max_outcomes: usize,
    comonotone: bool,
) -> Result<FiniteJoint> {
    check_count("max_outcomes", max_outcomes, MAX_ATOMS)?;
    let n = rng.random_range(1..=max_outcomes);
    let mut cuts = interior_levels(rng, n - 1);
    cuts.push(1.0);
    let mut prev = 0.0;
    let masses: Vec<f64> = cuts
        .into_iter()
        .map(|c| {
            let m = c - prev;
            prev = c;
            m
        })
        .collect();
    let draw = |rng: &mut R| {
        (0..n)
            .map(|_| rng.random_range(-JOINT_SPAN..=JOINT_SPAN) as f64 * VALUE_STEP)
            .collect::<Vec<f64>>()
    };
    let mut xs = draw(rng);
    let mut ys = draw(rng);
    if comonotone {
        xs.sort_by(f64::total_cmp);
        ys.sort_by(f64::total_cmp);
    }
    let outcomes = masses.into_iter().zip(xs).zip(ys).map(|((p, x), y)| (p, x, y)).collect();
    FiniteJoint::new(outcomes)
}

/// A level on the generator grid, uniformly from `1/64 ..= 63/64`.
pub fn random_level<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(1..LEVEL_GRID) as f64 / LEVEL_GRID as f64
}

/// A shift on the quarter grid in `[-4, 4]`.
pub fn random_shift<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(-16i64..=16) as f64 * VALUE_STEP
}

/// A positive scale on the quarter grid in `(0, 4]`.
pub fn random_scale<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(1i64..=16) as f64 * VALUE_STEP
}

/// Every joint with between 1 and `max_outcomes` outcomes, coordinates in
/// `values`, and probabilities positive multiples of `1 / denominator`.
pub fn enumerate_joints(max_outcomes: usize, values: &[f64], denominator: u32) -> Vec<FiniteJoint> {
    let pairs: Vec<(f64, f64)> =
        values.iter().flat_map(|&x| values.iter().map(move |&y| (x, y))).collect();
    let mut out = Vec::new();
    for n in 1..=max_outcomes.min(denominator as usize) {
        for parts in compositions(denominator, n) {
            let mut idx = vec![0usize; n];
            loop {
                let outcomes = parts
                    .iter()
                    .zip(&idx)
                    .map(|(&k, &i)| (k as f64 / denominator as f64, pairs[i].0, pairs[i].1))
                    .collect();
                out.push(FiniteJoint::new(outcomes).expect("fractions sum to one"));
                // odometer over pair assignments
                let mut pos = 0;
                while pos < n {
                    idx[pos] += 1;
                    if idx[pos] < pairs.len() {
                        break;
                    }
                    idx[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
    out
}

/// Ordered ways to write `total` as `parts` positive integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts as u32 - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        for seed in 0..20 {
            assert_eq!(random_step_cdf(seed, 8, (-4.0, 4.0)), random_step_cdf(seed, 8, (-4.0, 4.0)));
            assert_eq!(random_shape(seed, 5), random_shape(seed, 5));
            assert_eq!(random_handicap(seed, 5), random_handicap(seed, 5));
            assert_eq!(random_joint(seed, 6, false), random_joint(seed, 6, false));
        }
    }

    #[test]
    fn handicaps_are_in_class() {
        for seed in 0..500 {
            let c = random_handicap(seed, 5).unwrap();
            assert!(c.threshold() < 1.0);
            assert!(c.values().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn comonotone_joints() {
        for seed in 0..500 {
            assert!(random_joint(seed, 8, true).unwrap().is_comonotonic());
        }
    }

    #[test]
    fn bad_bounds() {
        assert!(matches!(random_step_cdf(0, 0, (0.0, 1.0)), Err(Error::BadBounds(_))));
        assert!(matches!(random_step_cdf(0, 65, (0.0, 1.0)), Err(Error::BadBounds(_))));
        assert!(matches!(random_step_cdf(0, 3, (1.0, 0.0)), Err(Error::BadBounds(_))));
        assert!(matches!(random_step_cdf(0, 3, (0.1, 0.2)), Err(Error::BadBounds(_))));
        assert!(matches!(random_shape(0, 0), Err(Error::BadBounds(_))));
        assert!(matches!(random_handicap(0, 64), Err(Error::BadBounds(_))));
        assert!(matches!(random_joint(0, 0, true), Err(Error::BadBounds(_))));
    }

    #[test]
    fn narrow_range_limits_atoms() {
        for seed in 0..50 {
            let f = random_step_cdf(seed, 8, (0.0, 0.5)).unwrap();
            assert!(f.len() <= 3);
            assert!(f.min_support() >= 0.0 && f.max_support() <= 0.5);
        }
    }

    #[test]
    fn composition_counts() {
        // C(total - 1, parts - 1)
        assert_eq!(compositions(5, 1).len(), 1);
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(5, 3).len(), 6);
        assert_eq!(compositions(5, 4).len(), 4);
        assert_eq!(enumerate_joints(2, &[0.0, 1.0], 5).len(), 4 + 4 * 16);
    }
}
