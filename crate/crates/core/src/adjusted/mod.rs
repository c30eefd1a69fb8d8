//! Maximal and minimal adjusted quantiles.
//!
//! For a step CDF `F` the four statistics reduce to finite maxima and minima:
//!
//! * `rho_phi(F) = min { t : F(x) >= phi(x - t) for all x }`
//!   `= max_j (q_{lambda_j}(F) - u_j)` over the jumps `(u_j, lambda_j)` of `phi`.
//! * `rho_c(F) = sup_alpha (q_alpha(F) - c(alpha))`, a maximum over the cells
//!   of the common refinement of `F`'s levels and `c`'s cut points.
//! * `rho_psi(F) = max { t : F(x) <= psi(x - t) for all x }`
//!   `= min_j (q+_{mu_j}(F) - w_j)` over the jumps `w_j` of `psi` with level
//!   `mu_j` just below.
//! * `rho_d(F) = inf_alpha (q+_alpha(F) - d(alpha))`, a minimum over cells.
//!
//! `q` and `q+` are the lower and upper quantiles.

mod convert;
mod templates;

pub use convert::{
    c_to_phi, d_to_psi, dual_handicap_of, dual_shape_of, handicap_of_dual, phi_to_c, psi_to_d,
    quantile_handicap, shape_of_dual, upper_quantile_dual_handicap,
};
pub use templates::{DualHandicapFn, DualShapeFn, HandicapFn, ShapeFn, MIN_LEVEL};

use serde::Serialize;

use crate::cdf::{merge_sorted, StepCdf};
use crate::error::Result;
use crate::quantiles::{check_alpha, lower_quantile_unchecked, upper_quantile_unchecked};

/// Envelope statistic of a shape template, by the finite reduction over the
/// jumps of `phi`.
pub fn rho_phi(f: &StepCdf, phi: &ShapeFn) -> f64 {
    phi.jump_points()
        .iter()
        .zip(phi.jump_levels())
        .map(|(&u, &lambda)| lower_quantile_unchecked(f, lambda) - u)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Dual envelope statistic, by the finite reduction over the jumps of `psi`.
pub fn rho_psi(f: &StepCdf, psi: &DualShapeFn) -> f64 {
    psi.jump_points()
        .iter()
        .zip(psi.levels_below())
        .map(|(&w, &mu)| upper_quantile_unchecked(f, mu) - w)
        .fold(f64::INFINITY, f64::min)
}

/// `rho_psi` computed through the reflection: `-rho_phi(reflect(F), phi)`
/// where `psi` is the dual shape of `phi`.
pub fn rho_psi_via_duality(f: &StepCdf, psi: &DualShapeFn) -> f64 {
    -rho_phi(&f.reflect(), &shape_of_dual(psi))
}

/// One cell of the quantile-level partition on which both the quantile and
/// the adjustment are constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cell {
    /// Left end of the cell.
    pub alpha_low: f64,
    /// Right end of the cell.
    pub alpha_high: f64,
    /// The quantile on the cell.
    pub quantile: f64,
    /// The handicap (or dual handicap) on the cell.
    pub adjustment: f64,
    /// `quantile - adjustment`.
    pub adjusted: f64,
}

impl Cell {
    /// The representative level at which the cell value is attained: the
    /// right end for left-continuous schedules, the left end otherwise.
    pub fn representative(&self, right_end: bool) -> f64 {
        if right_end {
            self.alpha_high
        } else {
            self.alpha_low
        }
    }
}

/// Cells `(p, q]` with `q` ranging over `F`'s levels up to the threshold and
/// `c`'s cut points. Cells where `c = +inf` are omitted.
pub fn handicap_cells(f: &StepCdf, c: &HandicapFn) -> Vec<Cell> {
    let beta = c.threshold();
    let levels: Vec<f64> = f.levels().iter().copied().take_while(|&v| v <= beta).collect();
    let ends = merge_sorted(&levels, c.cut_points());
    let mut prev = 0.0;
    ends.into_iter()
        .map(|q| {
            let quantile = lower_quantile_unchecked(f, q);
            let adjustment = c.eval(q);
            let cell = Cell {
                alpha_low: prev,
                alpha_high: q,
                quantile,
                adjustment,
                adjusted: quantile - adjustment,
            };
            prev = q;
            cell
        })
        .collect()
}

/// Cells `[p, q)` with `p` ranging over `d`'s cut points and `F`'s levels
/// above the threshold. Cells where `d = -inf` are omitted.
pub fn dual_handicap_cells(f: &StepCdf, d: &DualHandicapFn) -> Vec<Cell> {
    let b1 = d.threshold();
    let levels: Vec<f64> = f.levels().iter().copied().filter(|&v| v >= b1 && v < 1.0).collect();
    let starts = merge_sorted(&levels, d.cut_points());
    let mut cells: Vec<Cell> = Vec::with_capacity(starts.len());
    for (i, &p) in starts.iter().enumerate() {
        let quantile = upper_quantile_unchecked(f, p);
        let adjustment = d.eval(p);
        cells.push(Cell {
            alpha_low: p,
            alpha_high: starts.get(i + 1).copied().unwrap_or(1.0),
            quantile,
            adjustment,
            adjusted: quantile - adjustment,
        });
    }
    cells
}

/// Value of a sup/inf over cells together with the cell that attains it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Binding {
    pub value: f64,
    /// Representative level of the first (smallest-alpha) attaining cell.
    pub alpha: f64,
    /// Quantile of `F` at that level.
    pub quantile: f64,
}

fn first_extreme(cells: &[Cell], better: impl Fn(f64, f64) -> bool, right_end: bool) -> Binding {
    let mut best = &cells[0];
    for cell in &cells[1..] {
        if better(cell.adjusted, best.adjusted) {
            best = cell;
        }
    }
    Binding {
        value: best.adjusted,
        alpha: best.representative(right_end),
        quantile: best.quantile,
    }
}

/// `sup_alpha (q_alpha(F) - c(alpha))` with its binding level.
pub fn rho_c_binding(f: &StepCdf, c: &HandicapFn) -> Binding {
    first_extreme(&handicap_cells(f, c), |a, b| a > b, true)
}

/// `inf_alpha (q+_alpha(F) - d(alpha))` with its binding level.
pub fn rho_d_binding(f: &StepCdf, d: &DualHandicapFn) -> Binding {
    first_extreme(&dual_handicap_cells(f, d), |a, b| a < b, false)
}

/// Maximal adjusted quantile with handicap `c`.
pub fn rho_c(f: &StepCdf, c: &HandicapFn) -> f64 {
    rho_c_binding(f, c).value
}

/// Minimal adjusted quantile with dual handicap `d`.
pub fn rho_d(f: &StepCdf, d: &DualHandicapFn) -> f64 {
    rho_d_binding(f, d).value
}

/// Any of the statistics this crate computes, as a value.
#[derive(Debug, Clone, PartialEq)]
pub enum Statistic {
    /// Lower quantile at the given level.
    Quantile(f64),
    /// Upper quantile at the given level.
    UpperQuantile(f64),
    Shape(ShapeFn),
    Handicap(HandicapFn),
    DualShape(DualShapeFn),
    DualHandicap(DualHandicapFn),
}

impl Statistic {
    pub fn quantile(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Statistic::Quantile(alpha))
    }

    pub fn upper_quantile(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(Statistic::UpperQuantile(alpha))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::Quantile(_) => "quantile",
            Statistic::UpperQuantile(_) => "upper_quantile",
            Statistic::Shape(_) => "shape",
            Statistic::Handicap(_) => "handicap",
            Statistic::DualShape(_) => "dual_shape",
            Statistic::DualHandicap(_) => "dual_handicap",
        }
    }

    /// Whether the statistic is a maximal (join-separable) adjusted
    /// quantile rather than a minimal (meet-separable) one.
    pub fn is_maximal(&self) -> bool {
        matches!(
            self,
            Statistic::Quantile(_) | Statistic::Shape(_) | Statistic::Handicap(_)
        )
    }

    pub fn evaluate(&self, f: &StepCdf) -> f64 {
        match self {
            Statistic::Quantile(a) => lower_quantile_unchecked(f, *a),
            Statistic::UpperQuantile(a) => upper_quantile_unchecked(f, *a),
            Statistic::Shape(phi) => rho_phi(f, phi),
            Statistic::Handicap(c) => rho_c(f, c),
            Statistic::DualShape(psi) => rho_psi(f, psi),
            Statistic::DualHandicap(d) => rho_d(f, d),
        }
    }

    /// Value by an independent second route: the other representation of
    /// the same statistic, or the reflection for the dual classes.
    pub fn evaluate_alternate(&self, f: &StepCdf) -> f64 {
        match self {
            Statistic::Quantile(a) => rho_c(f, &HandicapFn::from_parts_unchecked(vec![*a], vec![0.0])),
            Statistic::UpperQuantile(a) => {
                rho_d(f, &DualHandicapFn::from_parts_unchecked(vec![*a], vec![0.0]))
            }
            Statistic::Shape(phi) => rho_c(f, &phi_to_c(phi)),
            Statistic::Handicap(c) => rho_phi(f, &c_to_phi(c)),
            Statistic::DualShape(psi) => rho_psi_via_duality(f, psi),
            Statistic::DualHandicap(d) => -rho_c(&f.reflect(), &handicap_of_dual(d)),
        }
    }

    /// Per-cell breakdown of the defining sup (or inf).
    pub fn cells(&self, f: &StepCdf) -> Vec<Cell> {
        match self {
            Statistic::Quantile(a) => {
                handicap_cells(f, &HandicapFn::from_parts_unchecked(vec![*a], vec![0.0]))
            }
            Statistic::UpperQuantile(a) => {
                dual_handicap_cells(f, &DualHandicapFn::from_parts_unchecked(vec![*a], vec![0.0]))
            }
            Statistic::Shape(phi) => handicap_cells(f, &phi_to_c(phi)),
            Statistic::Handicap(c) => handicap_cells(f, c),
            Statistic::DualShape(psi) => dual_handicap_cells(f, &psi_to_d(psi)),
            Statistic::DualHandicap(d) => dual_handicap_cells(f, d),
        }
    }

    /// Statistic value with the level that attains it.
    pub fn binding(&self, f: &StepCdf) -> Binding {
        let cells = self.cells(f);
        if self.is_maximal() {
            first_extreme(&cells, |a, b| a > b, true)
        } else {
            first_extreme(&cells, |a, b| a < b, false)
        }
    }
}
