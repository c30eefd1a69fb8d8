//! Seeded property suite over all statistics.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::adjusted::{
    c_to_phi, dual_handicap_of, dual_shape_of, phi_to_c, psi_to_d, quantile_handicap, rho_c,
    rho_d, rho_phi, rho_psi, DualHandicapFn, DualShapeFn, HandicapFn, ShapeFn, Statistic,
};
use crate::cdf::StepCdf;
use crate::comonotone::{check_lattice_commutation, comonotone_coupling, FiniteJoint, Marginal};
use crate::quantiles::lower_quantile_unchecked;

use super::generators::*;
use super::sequences::{curated_families, probe_semicontinuity, Direction};
use super::{
    check_affine_equiv, check_fosd_monotone, check_join_sep, check_meet_sep,
    check_translation_equiv, critical_levels, find_affine_witness, StatisticHandle, CHECK_TOL,
};

/// Semicontinuity checks run on the first this-many trials only.
pub const SEMICONTINUITY_TRIALS: usize = 200;

/// Seed for one trial, derived from the master seed and the trial index.
pub fn trial_seed(master: u64, trial: usize) -> u64 {
    master ^ (trial as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Everything one trial needs, generated from a single seed.
#[derive(Debug, Clone)]
pub struct Trial {
    pub seed: u64,
    pub f: StepCdf,
    pub g: StepCdf,
    pub shape: ShapeFn,
    pub handicap: HandicapFn,
    pub two_value_handicap: HandicapFn,
    pub dual_shape: DualShapeFn,
    pub dual_handicap: DualHandicapFn,
    pub alpha: f64,
    pub shift: f64,
    pub scale: f64,
    pub joint: FiniteJoint,
    pub comonotone_joint: FiniteJoint,
}

impl Trial {
    pub fn generate(seed: u64) -> Trial {
        let rng = &mut rng_from_seed(seed);
        let range = (-4.0, 4.0);
        let f = random_step_cdf_from(rng, 8, range).unwrap();
        let g = random_step_cdf_from(rng, 8, range).unwrap();
        let shape = random_shape_from(rng, 5).unwrap();
        let handicap = random_handicap_from(rng, 5).unwrap();
        let two_value_handicap = loop {
            let c = random_handicap_from(rng, 2).unwrap();
            if c.values().len() == 2 {
                break c;
            }
        };
        let mixed: bool = rng.random();
        Trial {
            seed,
            f,
            g,
            shape,
            handicap,
            two_value_handicap,
            dual_shape: random_dual_shape_from(rng, 5).unwrap(),
            dual_handicap: random_dual_handicap_from(rng, 5).unwrap(),
            alpha: random_level(rng),
            shift: random_shift(rng),
            scale: random_scale(rng),
            joint: random_joint_from(rng, 6, mixed).unwrap(),
            comonotone_joint: random_joint_from(rng, 6, true).unwrap(),
        }
    }
}

/// Per-check tally.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub trials: usize,
    pub failures: usize,
    pub first_failure_seed: Option<u64>,
}

struct CheckDef {
    name: &'static str,
    semicontinuity: bool,
    run: fn(&Trial) -> bool,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= CHECK_TOL
}

fn handle(stat: Statistic) -> StatisticHandle {
    StatisticHandle::from_statistic(stat)
}

fn probes_pass(stat: Statistic, base: &StepCdf, direction: Direction) -> bool {
    let levels = critical_levels(&stat);
    let s = handle(stat);
    curated_families(&levels, base, direction)
        .iter()
        .all(|spec| spec.converges() && probe_semicontinuity(&s, spec))
}

fn coupling_exact(f: &StepCdf, g: &StepCdf) -> bool {
    let joint = comonotone_coupling(f, g);
    joint.is_comonotonic()
        && joint.marginal_cdf(Marginal::X) == *f
        && joint.marginal_cdf(Marginal::Y) == *g
        && joint.rv_join_cdf() == f.join(g)
        && joint.rv_meet_cdf() == f.meet(g)
}

const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "representation_shape_to_handicap",
        semicontinuity: false,
        run: |t| close(rho_phi(&t.f, &t.shape), rho_c(&t.f, &phi_to_c(&t.shape))),
    },
    CheckDef {
        name: "representation_handicap_to_shape",
        semicontinuity: false,
        run: |t| close(rho_c(&t.f, &t.handicap), rho_phi(&t.f, &c_to_phi(&t.handicap))),
    },
    CheckDef {
        name: "representation_dual_shape_to_dual_handicap",
        semicontinuity: false,
        run: |t| close(rho_psi(&t.f, &t.dual_shape), rho_d(&t.f, &psi_to_d(&t.dual_shape))),
    },
    CheckDef {
        name: "join_separability_shape",
        semicontinuity: false,
        run: |t| check_join_sep(&handle(Statistic::Shape(t.shape.clone())), &t.f, &t.g),
    },
    CheckDef {
        name: "join_separability_handicap",
        semicontinuity: false,
        run: |t| check_join_sep(&handle(Statistic::Handicap(t.handicap.clone())), &t.f, &t.g),
    },
    CheckDef {
        name: "translation_shape",
        semicontinuity: false,
        run: |t| check_translation_equiv(&handle(Statistic::Shape(t.shape.clone())), &t.f, t.shift),
    },
    CheckDef {
        name: "translation_handicap",
        semicontinuity: false,
        run: |t| {
            check_translation_equiv(&handle(Statistic::Handicap(t.handicap.clone())), &t.f, t.shift)
        },
    },
    CheckDef {
        name: "fosd_monotone_shape",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::Shape(t.shape.clone()));
            check_fosd_monotone(&s, &t.g.join(&t.f), &t.g).unwrap()
        },
    },
    CheckDef {
        name: "fosd_monotone_handicap",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::Handicap(t.handicap.clone()));
            check_fosd_monotone(&s, &t.g.join(&t.f), &t.g).unwrap()
        },
    },
    CheckDef {
        name: "meet_separability_dual_shape",
        semicontinuity: false,
        run: |t| check_meet_sep(&handle(Statistic::DualShape(t.dual_shape.clone())), &t.f, &t.g),
    },
    CheckDef {
        name: "meet_separability_dual_handicap",
        semicontinuity: false,
        run: |t| {
            check_meet_sep(&handle(Statistic::DualHandicap(t.dual_handicap.clone())), &t.f, &t.g)
        },
    },
    CheckDef {
        name: "translation_dual_shape",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::DualShape(t.dual_shape.clone()));
            check_translation_equiv(&s, &t.f, t.shift)
        },
    },
    CheckDef {
        name: "translation_dual_handicap",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::DualHandicap(t.dual_handicap.clone()));
            check_translation_equiv(&s, &t.f, t.shift)
        },
    },
    CheckDef {
        name: "duality_shape",
        semicontinuity: false,
        run: |t| {
            close(rho_psi(&t.f, &dual_shape_of(&t.shape)), -rho_phi(&t.f.reflect(), &t.shape))
        },
    },
    CheckDef {
        name: "duality_handicap",
        semicontinuity: false,
        run: |t| {
            close(
                rho_d(&t.f, &dual_handicap_of(&t.handicap)),
                -rho_c(&t.f.reflect(), &t.handicap),
            )
        },
    },
    CheckDef {
        name: "reflect_involution",
        semicontinuity: false,
        run: |t| t.f.reflect().reflect() == t.f,
    },
    CheckDef {
        name: "quantile_specialization",
        semicontinuity: false,
        run: |t| {
            rho_c(&t.f, &quantile_handicap(t.alpha).unwrap())
                == lower_quantile_unchecked(&t.f, t.alpha)
        },
    },
    CheckDef {
        name: "affine_lower_quantile",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::Quantile(t.alpha));
            check_affine_equiv(&s, &t.f, t.scale, t.shift).unwrap()
        },
    },
    CheckDef {
        name: "affine_upper_quantile",
        semicontinuity: false,
        run: |t| {
            let s = handle(Statistic::UpperQuantile(t.alpha));
            check_affine_equiv(&s, &t.f, t.scale, t.shift).unwrap()
        },
    },
    CheckDef {
        name: "affine_witness_two_value_handicap",
        semicontinuity: false,
        run: |t| find_affine_witness(&t.two_value_handicap).is_some(),
    },
    CheckDef {
        name: "comonotone_coupling",
        semicontinuity: false,
        run: |t| coupling_exact(&t.f, &t.g),
    },
    CheckDef {
        name: "lattice_commutation_random_joint",
        semicontinuity: false,
        run: |t| check_lattice_commutation(&t.joint).all(),
    },
    CheckDef {
        name: "lattice_commutation_comonotone_joint",
        semicontinuity: false,
        run: |t| check_lattice_commutation(&t.comonotone_joint).all(),
    },
    CheckDef {
        name: "lsc_probes_shape",
        semicontinuity: true,
        run: |t| probes_pass(Statistic::Shape(t.shape.clone()), &t.f, Direction::Lsc),
    },
    CheckDef {
        name: "lsc_probes_handicap",
        semicontinuity: true,
        run: |t| probes_pass(Statistic::Handicap(t.handicap.clone()), &t.f, Direction::Lsc),
    },
    CheckDef {
        name: "usc_probes_dual_shape",
        semicontinuity: true,
        run: |t| probes_pass(Statistic::DualShape(t.dual_shape.clone()), &t.f, Direction::Usc),
    },
    CheckDef {
        name: "usc_probes_dual_handicap",
        semicontinuity: true,
        run: |t| {
            probes_pass(Statistic::DualHandicap(t.dual_handicap.clone()), &t.f, Direction::Usc)
        },
    },
];

const MEAN_CHECK: CheckDef = CheckDef {
    name: "join_separability_mean",
    semicontinuity: false,
    run: |t| check_join_sep(&StatisticHandle::mean(), &t.f, &t.g),
};

/// Runs every check on `trials` seeded trials (semicontinuity probes on at
/// most [`SEMICONTINUITY_TRIALS`] of them). With `inject_mean` the mean is
/// added as a join-separability candidate, which is expected to fail.
pub fn run_suite(seed: u64, trials: usize, inject_mean: bool) -> Vec<CheckReport> {
    let mut checks: Vec<&CheckDef> = CHECKS.iter().collect();
    if inject_mean {
        checks.push(&MEAN_CHECK);
    }
    let outcomes: Vec<Vec<Option<bool>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let trial = Trial::generate(trial_seed(seed, i));
            checks
                .iter()
                .map(|c| {
                    (!c.semicontinuity || i < SEMICONTINUITY_TRIALS).then(|| (c.run)(&trial))
                })
                .collect()
        })
        .collect();
    checks
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut report = CheckReport {
                check: c.name.to_string(),
                trials: 0,
                failures: 0,
                first_failure_seed: None,
            };
            for (i, row) in outcomes.iter().enumerate() {
                match row[k] {
                    Some(true) => report.trials += 1,
                    Some(false) => {
                        report.trials += 1;
                        report.failures += 1;
                        report.first_failure_seed.get_or_insert(trial_seed(seed, i));
                    }
                    None => {}
                }
            }
            report
        })
        .collect()
}
