//! The six commands. Each returns its JSON report.

use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::adjusted::{
    c_to_phi, d_to_psi, dual_handicap_of, dual_shape_of, handicap_of_dual, phi_to_c, psi_to_d,
    quantile_handicap, shape_of_dual, DualHandicapFn, DualShapeFn, HandicapFn, ShapeFn, Statistic,
};
use crate::cdf::StepCdf;
use crate::comonotone::{check_lattice_commutation, comonotone_coupling, FiniteJoint, Marginal};
use crate::harness::{run_suite, CHECK_TOL};

use super::input::{load_cdf, load_json, parse_json, read_text};
use super::{CliError, RunConfig};

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize to JSON")
}

fn template_flags(config: &RunConfig) -> Vec<&'static str> {
    let mut given = Vec::new();
    if config.shape.is_some() {
        given.push("--shape");
    }
    if config.handicap.is_some() {
        given.push("--handicap");
    }
    if config.quantile.is_some() {
        given.push("--quantile");
    }
    if config.dual_shape.is_some() {
        given.push("--dual-shape");
    }
    if config.dual_handicap.is_some() {
        given.push("--dual-handicap");
    }
    given
}

/// The single statistic named on the command line.
fn statistic_spec(config: &RunConfig) -> Result<Statistic, CliError> {
    let given = template_flags(config);
    if given.len() != 1 {
        return Err(CliError::Validation(format!(
            "exactly one of --shape, --handicap, --quantile, --dual-shape, --dual-handicap is \
             required, got {}",
            if given.is_empty() { "none".to_string() } else { given.join(", ") }
        )));
    }
    Ok(if let Some(p) = &config.shape {
        Statistic::Shape(load_json::<ShapeFn>(p)?)
    } else if let Some(p) = &config.handicap {
        Statistic::Handicap(load_json::<HandicapFn>(p)?)
    } else if let Some(a) = config.quantile {
        Statistic::quantile(a).map_err(|e| CliError::Validation(format!("--quantile: {e}")))?
    } else if let Some(p) = &config.dual_shape {
        Statistic::DualShape(load_json::<DualShapeFn>(p)?)
    } else {
        Statistic::DualHandicap(load_json::<DualHandicapFn>(config.dual_handicap.as_ref().unwrap())?)
    })
}

fn inputs(config: &RunConfig, count: usize) -> Result<&[std::path::PathBuf], CliError> {
    if config.input.len() != count {
        return Err(CliError::Validation(format!(
            "expected {count} --input file(s), got {}",
            config.input.len()
        )));
    }
    Ok(&config.input)
}

fn single_cdf(config: &RunConfig) -> Result<StepCdf, CliError> {
    load_cdf(&inputs(config, 1)?[0], config.format)
}

/// `{statistic_value, binding_alpha, binding_quantile,
/// representation_crosscheck}`.
pub fn cmd_stat(config: &RunConfig) -> Result<Value, CliError> {
    let f = single_cdf(config)?;
    let stat = statistic_spec(config)?;
    let binding = stat.binding(&f);
    let direct = stat.evaluate(&f);
    let alternate = stat.evaluate_alternate(&f);
    let agree = (direct - alternate).abs() <= CHECK_TOL && (direct - binding.value).abs() <= CHECK_TOL;
    Ok(json!({
        "statistic_value": binding.value,
        "binding_alpha": binding.alpha,
        "binding_quantile": binding.quantile,
        "representation_crosscheck": if agree { "pass" } else { "fail" },
    }))
}

/// Per-cell breakdown of the sup (or inf) defining the statistic.
pub fn cmd_explain(config: &RunConfig) -> Result<Value, CliError> {
    let f = single_cdf(config)?;
    let stat = statistic_spec(config)?;
    let binding = stat.binding(&f);
    let cells: Vec<Value> = stat
        .cells(&f)
        .iter()
        .map(|cell| {
            let mut v = to_value(cell);
            v["binding"] = json!(cell.adjusted == binding.value
                && cell.representative(stat.is_maximal()) == binding.alpha);
            v
        })
        .collect();
    Ok(json!({
        "statistic": stat.name(),
        "kind": if stat.is_maximal() { "maximal" } else { "minimal" },
        "cdf": to_value(&f),
        "cells": cells,
        "statistic_value": binding.value,
        "binding_alpha": binding.alpha,
        "binding_quantile": binding.quantile,
    }))
}

enum Template {
    Shape(ShapeFn),
    Handicap(HandicapFn),
    DualShape(DualShapeFn),
    DualHandicap(DualHandicapFn),
}

impl Template {
    fn class(&self) -> &'static str {
        match self {
            Template::Shape(_) => "shape",
            Template::Handicap(_) => "handicap",
            Template::DualShape(_) => "dual_shape",
            Template::DualHandicap(_) => "dual_handicap",
        }
    }

    fn value(&self) -> Value {
        match self {
            Template::Shape(t) => to_value(t),
            Template::Handicap(t) => to_value(t),
            Template::DualShape(t) => to_value(t),
            Template::DualHandicap(t) => to_value(t),
        }
    }

    /// The converted template and whether mapping it back recovers `self`.
    fn convert(&self, dual: bool) -> (Template, bool) {
        match (self, dual) {
            (Template::Shape(phi), false) => {
                let c = phi_to_c(phi);
                let ok = c_to_phi(&c) == *phi;
                (Template::Handicap(c), ok)
            }
            (Template::Shape(phi), true) => {
                let psi = dual_shape_of(phi);
                let ok = shape_of_dual(&psi) == *phi;
                (Template::DualShape(psi), ok)
            }
            (Template::Handicap(c), false) => {
                let phi = c_to_phi(c);
                let ok = phi_to_c(&phi) == *c;
                (Template::Shape(phi), ok)
            }
            (Template::Handicap(c), true) => {
                let d = dual_handicap_of(c);
                let ok = handicap_of_dual(&d) == *c;
                (Template::DualHandicap(d), ok)
            }
            (Template::DualShape(psi), false) => {
                let d = psi_to_d(psi);
                let ok = d_to_psi(&d) == *psi;
                (Template::DualHandicap(d), ok)
            }
            (Template::DualShape(psi), true) => {
                let phi = shape_of_dual(psi);
                let ok = dual_shape_of(&phi) == *psi;
                (Template::Shape(phi), ok)
            }
            (Template::DualHandicap(d), false) => {
                let psi = d_to_psi(d);
                let ok = psi_to_d(&psi) == *d;
                (Template::DualShape(psi), ok)
            }
            (Template::DualHandicap(d), true) => {
                let c = handicap_of_dual(d);
                let ok = dual_handicap_of(&c) == *d;
                (Template::Handicap(c), ok)
            }
        }
    }
}

/// Reads a template from `--input` by its keys: `jump_levels` (shape),
/// `levels_below` (dual shape), or `cut_points` with a leading `"-inf"`
/// (dual handicap) or without one (handicap).
fn detect_template(path: &Path) -> Result<Template, CliError> {
    let text = read_text(path)?;
    let source = path.display().to_string();
    let raw: Value = parse_json(&text, &source)?;
    let has = |k: &str| raw.get(k).is_some();
    if has("jump_levels") {
        Ok(Template::Shape(parse_json(&text, &source)?))
    } else if has("levels_below") {
        Ok(Template::DualShape(parse_json(&text, &source)?))
    } else if has("cut_points") {
        let leading_neg_inf = raw["values"].get(0).and_then(Value::as_str) == Some("-inf");
        if leading_neg_inf {
            Ok(Template::DualHandicap(parse_json(&text, &source)?))
        } else {
            Ok(Template::Handicap(parse_json(&text, &source)?))
        }
    } else {
        Err(CliError::Validation(format!(
            "{source}: not a template (expected jump_levels, levels_below or cut_points)"
        )))
    }
}

/// Converts the template given by a statistic flag (or `--input`) to its
/// other representation, or with `dual` to the dual class.
pub fn cmd_convert(config: &RunConfig, dual: bool) -> Result<Value, CliError> {
    let given = template_flags(config);
    let template = match (given.len(), config.input.len()) {
        (0, 1) => detect_template(&config.input[0])?,
        (1, 0) => match statistic_spec(config)? {
            Statistic::Shape(t) => Template::Shape(t),
            Statistic::Handicap(t) => Template::Handicap(t),
            Statistic::DualShape(t) => Template::DualShape(t),
            Statistic::DualHandicap(t) => Template::DualHandicap(t),
            Statistic::Quantile(a) => Template::Handicap(quantile_handicap(a)?),
            Statistic::UpperQuantile(_) => unreachable!("no flag selects the upper quantile"),
        },
        _ => {
            return Err(CliError::Validation(
                "convert takes exactly one template: a statistic flag or a single --input"
                    .to_string(),
            ))
        }
    };
    let (converted, round_trip) = template.convert(dual);
    Ok(json!({
        "input": { "class": template.class(), "value": template.value() },
        "output": { "class": converted.class(), "value": converted.value() },
        "round_trip": round_trip,
    }))
}

pub fn cmd_lattice(config: &RunConfig) -> Result<Value, CliError> {
    let paths = inputs(config, 2)?;
    let f = load_cdf(&paths[0], config.format)?;
    let g = load_cdf(&paths[1], config.format)?;
    Ok(json!({
        "join": to_value(&f.join(&g)),
        "meet": to_value(&f.meet(&g)),
        "first_dominates_second": f.fosd_ge(&g),
        "second_dominates_first": g.fosd_ge(&f),
    }))
}

/// With two CDF inputs, their comonotone coupling and its checks. With one
/// joint-distribution input, how its max and min relate to the lattice
/// operations on its marginals.
pub fn cmd_coupling(config: &RunConfig) -> Result<Value, CliError> {
    match config.input.len() {
        1 => {
            let joint: FiniteJoint = load_json(&config.input[0])?;
            let check = check_lattice_commutation(&joint);
            Ok(json!({
                "comonotonic": joint.is_comonotonic(),
                "marginal_x": to_value(&joint.marginal_cdf(Marginal::X)),
                "marginal_y": to_value(&joint.marginal_cdf(Marginal::Y)),
                "max_cdf": to_value(&joint.rv_join_cdf()),
                "min_cdf": to_value(&joint.rv_meet_cdf()),
                "max_dominates_join": check.ineq_join,
                "meet_dominates_min": check.ineq_meet,
                "equalities_if_comonotonic": check.eq_if_comonotone,
            }))
        }
        _ => {
            let paths = inputs(config, 2)?;
            let f = load_cdf(&paths[0], config.format)?;
            let g = load_cdf(&paths[1], config.format)?;
            let joint = comonotone_coupling(&f, &g);
            Ok(json!({
                "coupling": to_value(&joint),
                "comonotonic": joint.is_comonotonic(),
                "marginal_x_reproduced": joint.marginal_cdf(Marginal::X) == f,
                "marginal_y_reproduced": joint.marginal_cdf(Marginal::Y) == g,
                "max_cdf_is_join": joint.rv_join_cdf() == f.join(&g),
                "min_cdf_is_meet": joint.rv_meet_cdf() == f.meet(&g),
            }))
        }
    }
}

/// The per-check reports and whether every check passed.
pub fn cmd_check(config: &RunConfig, inject_mean: bool) -> Result<(Value, bool), CliError> {
    if config.trials == 0 {
        return Err(CliError::Validation("--trials must be at least 1".to_string()));
    }
    let reports = run_suite(config.seed, config.trials, inject_mean);
    let passed = reports.iter().all(|r| r.failures == 0);
    Ok((to_value(&reports), passed))
}
