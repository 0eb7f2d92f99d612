//! The individual property checks.
//!
//! Every check derives per-trial randomness from `(seed, trial index)`
//! and keeps the earliest witness among ties, so reports are
//! reproducible and schedule-independent.

use rand::Rng;

use crate::error::{Error, Result};
use crate::norms::{empirical_lip_seminorm, empirical_op_norm};
use crate::operators::{ConeOperator, KernelOperator};
use crate::sampling::{cone_function, stream_rng};
use crate::space::SampledFunction;
use crate::tolerances::ALGEBRAIC_TOL;
use crate::verify::{PropertyReport, PropertyWitness};

fn require_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        Err(Error::InvalidArgument(
            "property checks need at least one trial".into(),
        ))
    } else {
        Ok(())
    }
}

/// Largest coordinate of `max(0, f - g)`.
fn positive_excess(f: &SampledFunction, g: &SampledFunction) -> Result<f64> {
    Ok(f.sub(g)?
        .values()
        .iter()
        .fold(0.0_f64, |acc, &v| acc.max(v)))
}

/// Order preservation: `f <= g` implies `Af <= Ag`.
///
/// Ordered pairs are built as `g = f + noise` with nonnegative noise;
/// the violation is the largest coordinate of `max(0, Af - Ag)`.
pub fn check_monotone(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let domain = op.domain();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for trial in 0..trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let f = cone_function(&domain, &mut rng, 1.0);
        let noise = cone_function(&domain, &mut rng, 1.0);
        let g = f.add(&noise)?;
        let violation = positive_excess(&op.apply(&f)?, &op.apply(&g)?)?;
        if violation > worst {
            worst = violation;
            witness = Some(PropertyWitness::Pair { lhs: f, rhs: g });
        }
    }
    Ok(PropertyReport::from_violation(
        "monotone",
        trials,
        worst,
        ALGEBRAIC_TOL,
        witness.expect("at least one trial"),
        seed,
    ))
}

/// Subadditivity: `A(f + g) <= Af + Ag` on the cone.
///
/// The violation is relative to `max(1, ||Af||, ||Ag||)`.
pub fn check_subadditive(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let domain = op.domain();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for trial in 0..trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let f = cone_function(&domain, &mut rng, 1.0);
        let g = cone_function(&domain, &mut rng, 1.0);
        let af = op.apply(&f)?;
        let ag = op.apply(&g)?;
        let a_sum = op.apply(&f.add(&g)?)?;
        let raw = positive_excess(&a_sum, &af.add(&ag)?)?;
        let scale = 1.0_f64.max(af.sup_norm()).max(ag.sup_norm());
        let violation = raw / scale;
        if violation > worst {
            worst = violation;
            witness = Some(PropertyWitness::Pair { lhs: f, rhs: g });
        }
    }
    Ok(PropertyReport::from_violation(
        "subadditive",
        trials,
        worst,
        ALGEBRAIC_TOL,
        witness.expect("at least one trial"),
        seed,
    ))
}

/// Positive homogeneity: `A(t f) = t A(f)` for `t >= 0`.
///
/// Each trial tests the scalars `0, 0.5, 1, 2` and one uniform draw
/// from `[0, 10)`; the violation is `||A(t f) - t A(f)||` relative to
/// `max(1, t ||Af||)`.
pub fn check_homogeneous(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let domain = op.domain();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for trial in 0..trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let f = cone_function(&domain, &mut rng, 1.0);
        let af = op.apply(&f)?;
        let af_norm = af.sup_norm();
        let random_t = 10.0 * rng.gen::<f64>();
        for t in [0.0, 0.5, 1.0, 2.0, random_t] {
            let lhs = op.apply(&f.scale(t))?;
            let rhs = af.scale(t);
            let violation = lhs.sub(&rhs)?.sup_norm() / 1.0_f64.max(t * af_norm);
            if violation > worst {
                worst = violation;
                witness = Some(PropertyWitness::Scaled { f: f.clone(), t });
            }
        }
    }
    Ok(PropertyReport::from_violation(
        "positively_homogeneous",
        trials,
        worst,
        ALGEBRAIC_TOL,
        witness.expect("at least one trial"),
        seed,
    ))
}

/// The fundamental inequality `|Af - Ag| <= A|f - g|`, which holds for
/// every subadditive and monotone mapping.
pub fn check_fundamental_inequality(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let domain = op.domain();
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for trial in 0..trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let f = cone_function(&domain, &mut rng, 1.0);
        let g = cone_function(&domain, &mut rng, 1.0);
        let lhs = op.apply(&f)?.sub(&op.apply(&g)?)?.abs();
        let rhs = op.apply(&f.sub(&g)?.abs())?;
        let violation = positive_excess(&lhs, &rhs)?;
        if violation > worst {
            worst = violation;
            witness = Some(PropertyWitness::Pair { lhs: f, rhs: g });
        }
    }
    Ok(PropertyReport::from_violation(
        "fundamental_inequality",
        trials,
        worst,
        ALGEBRAIC_TOL,
        witness.expect("at least one trial"),
        seed,
    ))
}

/// Boundedness implies Lipschitz: the empirical Lipschitz seminorm
/// stays below `c` times the exact operator norm, `c` being the
/// normality constant of the cone (1 for the sup norm).
pub fn check_lipschitz_from_bounded(
    op: &KernelOperator,
    trials: usize,
    seed: u64,
    c: f64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let exact = op.exact_norm();
    let op_estimate = empirical_op_norm(op, trials, seed)?;
    let lip_estimate = empirical_lip_seminorm(op, trials, seed)?;
    let violation = (lip_estimate.value - c * exact).max(0.0);
    Ok(PropertyReport::from_violation(
        "lipschitz_from_bounded",
        trials,
        violation,
        ALGEBRAIC_TOL,
        PropertyWitness::Norms {
            exact,
            op_norm: op_estimate.value,
            lip_seminorm: lip_estimate.value,
        },
        seed,
    ))
}

/// The norm sandwich `||A|| <= ||A||_LIP <= c ||A||`, plus agreement
/// of both empirical estimates with the exact formula. With `c == 1`
/// the sandwich forces equality of all three values.
pub fn check_sandwich(
    op: &KernelOperator,
    trials: usize,
    seed: u64,
    c: f64,
) -> Result<PropertyReport> {
    require_trials(trials)?;
    let exact = op.exact_norm();
    let op_estimate = empirical_op_norm(op, trials, seed)?.value;
    let lip_estimate = empirical_lip_seminorm(op, trials, seed)?.value;
    let mut violation = (op_estimate - lip_estimate).max(0.0);
    violation = violation.max((lip_estimate - c * op_estimate).max(0.0));
    violation = violation.max((op_estimate - exact).abs());
    if c == 1.0 {
        violation = violation.max((lip_estimate - exact).abs());
    }
    Ok(PropertyReport::from_violation(
        "sandwich",
        trials,
        violation,
        ALGEBRAIC_TOL,
        PropertyWitness::Norms {
            exact,
            op_norm: op_estimate,
            lip_seminorm: lip_estimate,
        },
        seed,
    ))
}

/// Pointwise scalar lemma: `||x - p| - p| <= 3x` for all `x, p >= 0`.
///
/// The bound is closed under floating point, so the check is exact:
/// pass iff the violation is zero. Equality of the bound can only
/// occur at `x = 0`.
pub fn check_pointwise_lemma(samples: &[(f64, f64)]) -> Result<PropertyReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument(
            "pointwise lemma needs at least one sample".into(),
        ));
    }
    for &(x, p) in samples {
        if !(x.is_finite() && p.is_finite()) || x < 0.0 || p < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "pointwise lemma samples must be nonnegative reals, got ({x}, {p})"
            )));
        }
    }
    let mut worst = f64::NEG_INFINITY;
    let mut witness = None;
    for &(x, p) in samples {
        let value = ((x - p).abs() - p).abs();
        let violation = (value - 3.0 * x).max(0.0);
        if violation > worst {
            worst = violation;
            witness = Some(PropertyWitness::Scalars { x, p });
        }
    }
    Ok(PropertyReport::from_violation(
        "pointwise_lemma",
        samples.len(),
        worst,
        0.0,
        witness.expect("at least one sample"),
        0,
    ))
}

/// Evaluate `||x - p| - p|`; used by tests asserting where the bound
/// `3x` is attained.
pub fn pointwise_lemma_value(x: f64, p: f64) -> f64 {
    ((x - p).abs() - p).abs()
}
