//! Maps between the four template classes.
//!
//! `phi_to_c` and `c_to_phi` are mutually inverse on canonical forms: a step
//! shape jumping to `lambda_j` at `u_j` corresponds to the handicap taking
//! value `u_j` on `(lambda_{j-1}, lambda_j]`. The dual maps mirror a
//! template through `x -> -x` (and `alpha -> 1 - alpha`), matching the
//! reflection of distribution functions.

use super::templates::{DualHandicapFn, DualShapeFn, HandicapFn, ShapeFn};
use crate::cdf::normalize_zero;
use crate::error::Result;
use crate::quantiles::check_alpha;

/// `c(alpha) = inf { x : phi(x) >= alpha }`, with `inf {} = +inf`.
pub fn phi_to_c(phi: &ShapeFn) -> HandicapFn {
    HandicapFn::from_parts_unchecked(phi.jump_levels().to_vec(), phi.jump_points().to_vec())
}

/// `phi(x) = sup { alpha : c(alpha) <= x }`, with `sup {} = 0`.
pub fn c_to_phi(c: &HandicapFn) -> ShapeFn {
    ShapeFn::from_parts_unchecked(c.values().to_vec(), c.cut_points().to_vec())
}

/// `d(alpha) = sup { x : psi(x) <= alpha }` restricted to the levels `psi`
/// takes: the dual handicap with the same statistic as `psi`.
pub fn psi_to_d(psi: &DualShapeFn) -> DualHandicapFn {
    DualHandicapFn::from_parts_unchecked(psi.levels_below().to_vec(), psi.jump_points().to_vec())
}

/// Inverse of [`psi_to_d`].
pub fn d_to_psi(d: &DualHandicapFn) -> DualShapeFn {
    DualShapeFn::from_parts_unchecked(d.values().to_vec(), d.cut_points().to_vec())
}

/// `psi(x) = 1 - phi((-x)-)`.
pub fn dual_shape_of(phi: &ShapeFn) -> DualShapeFn {
    let points = phi.jump_points().iter().rev().map(|&u| normalize_zero(-u)).collect();
    let levels = phi.jump_levels().iter().rev().map(|&l| 1.0 - l).collect();
    DualShapeFn::from_parts_unchecked(points, levels)
}

/// Inverse of [`dual_shape_of`]: `phi(x) = 1 - psi((-x)-)`.
pub fn shape_of_dual(psi: &DualShapeFn) -> ShapeFn {
    let points = psi.jump_points().iter().rev().map(|&w| normalize_zero(-w)).collect();
    let levels = psi.levels_below().iter().rev().map(|&m| 1.0 - m).collect();
    ShapeFn::from_parts_unchecked(points, levels)
}

/// `d(alpha) = -c(1 - alpha)`.
pub fn dual_handicap_of(c: &HandicapFn) -> DualHandicapFn {
    let cuts = c.cut_points().iter().rev().map(|&a| 1.0 - a).collect();
    let values = c.values().iter().rev().map(|&v| normalize_zero(-v)).collect();
    DualHandicapFn::from_parts_unchecked(cuts, values)
}

/// Inverse of [`dual_handicap_of`]: `c(alpha) = -d(1 - alpha)`.
pub fn handicap_of_dual(d: &DualHandicapFn) -> HandicapFn {
    let cuts = d.cut_points().iter().rev().map(|&b| 1.0 - b).collect();
    let values = d.values().iter().rev().map(|&v| normalize_zero(-v)).collect();
    HandicapFn::from_parts_unchecked(cuts, values)
}

/// The handicap whose statistic is the lower `alpha`-quantile: 0 on
/// `(0, alpha]`, `+inf` above.
pub fn quantile_handicap(alpha: f64) -> Result<HandicapFn> {
    check_alpha(alpha)?;
    HandicapFn::new(vec![alpha], vec![0.0])
}

/// The dual handicap whose statistic is the upper `alpha`-quantile: `-inf`
/// below `alpha`, 0 on `[alpha, 1)`.
pub fn upper_quantile_dual_handicap(alpha: f64) -> Result<DualHandicapFn> {
    check_alpha(alpha)?;
    DualHandicapFn::new(vec![alpha], vec![0.0])
}
