//! Operator norms and Lipschitz seminorms: exact closed forms for the
//! two kernel operator classes, and seeded empirical estimators that
//! sample the defining suprema.
//!
//! For both classes the operator norm and the Lipschitz seminorm
//! coincide with the largest (admissible) kernel entry, and the
//! deterministic probes — the all-ones function for the norm, the
//! pair (ones, zero) for the seminorm — attain that supremum. The
//! estimators always include the probe, which turns a Monte-Carlo
//! lower bound into the exact value with a checkable witness; the
//! random trials exercise the estimator away from the probe.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{AdmissibleMask, ConeOperator, ContinuousKernelSpec, FiniteKernel};
use crate::sampling::{cone_function, stream_rng, unit_cone_function};
use crate::space::SampledFunction;

/// Input (or input pair) attaining an empirical estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NormWitness {
    /// Unit-norm cone function attaining an operator-norm estimate.
    Point(SampledFunction),
    /// Cone pair at sup-distance one attaining a seminorm estimate.
    Pair(SampledFunction, SampledFunction),
}

/// Result of an empirical norm or seminorm estimation.
///
/// The value is exactly reproducible from `(seed, trials)`, and
/// re-evaluating the operator on `witness` reproduces `value`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    pub trials: usize,
    pub seed: u64,
    pub witness: NormWitness,
}

impl NormEstimate {
    /// Re-evaluate the operator on the stored witness.
    pub fn replay(&self, op: &dyn ConeOperator) -> Result<f64> {
        match &self.witness {
            NormWitness::Point(f) => Ok(op.apply(f)?.sup_norm()),
            NormWitness::Pair(f, g) => Ok(op.apply(f)?.sub(&op.apply(g)?)?.sup_norm()),
        }
    }
}

/// Exact norm of a finite sup-kernel operator: the largest matrix
/// entry. Equals both the operator norm and the Lipschitz seminorm;
/// the all-ones function is a norm witness.
pub fn exact_norm_finite(kernel: &FiniteKernel) -> f64 {
    kernel.max_entry()
}

/// Exact norm of a masked continuous max-kernel operator: the largest
/// kernel entry over the admissible set.
pub fn exact_norm_continuous(spec: &ContinuousKernelSpec, mask: &AdmissibleMask) -> f64 {
    spec.masked_max(mask)
}

/// Empirical operator norm `sup { ||Af|| : f in cone, ||f|| = 1 }`.
///
/// Samples `trials` unit-sup-norm cone functions plus the
/// deterministic all-ones probe (stream index 0). Ties between trials
/// keep the earliest witness.
pub fn empirical_op_norm(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "norm estimation needs at least one trial".into(),
        ));
    }
    let domain = op.domain();
    let probe = SampledFunction::ones(domain.clone());
    let mut best = op.apply(&probe)?.sup_norm();
    let mut witness = probe;
    for trial in 1..=trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let f = unit_cone_function(&domain, &mut rng);
        let value = op.apply(&f)?.sup_norm();
        if value > best {
            best = value;
            witness = f;
        }
    }
    Ok(NormEstimate {
        value: best,
        trials,
        seed,
        witness: NormWitness::Point(witness),
    })
}

/// Empirical Lipschitz seminorm
/// `sup { ||Af - Ag|| : f, g in cone, ||f - g|| = 1 }`.
///
/// Samples `trials` cone pairs rescaled to sup-distance one plus the
/// deterministic probe pair (ones, zero). A degenerate draw with
/// `f == g` is rejected and redrawn from the same stream.
pub fn empirical_lip_seminorm(
    op: &dyn ConeOperator,
    trials: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "seminorm estimation needs at least one trial".into(),
        ));
    }
    let domain = op.domain();
    let ones = SampledFunction::ones(domain.clone());
    let zero = SampledFunction::zero(domain.clone());
    let mut best = op.apply(&ones)?.sub(&op.apply(&zero)?)?.sup_norm();
    let mut witness = (ones, zero);
    for trial in 1..=trials as u64 {
        let mut rng = stream_rng(seed, trial);
        let (f, g) = loop {
            let f = cone_function(&domain, &mut rng, 1.0);
            let g = cone_function(&domain, &mut rng, 1.0);
            let spread = f.sub(&g)?.sup_norm();
            if spread > 0.0 {
                break (f.scale(1.0 / spread), g.scale(1.0 / spread));
            }
        };
        let value = op.apply(&f)?.sub(&op.apply(&g)?)?.sup_norm();
        if value > best {
            best = value;
            witness = (f, g);
        }
    }
    Ok(NormEstimate {
        value: best,
        trials,
        seed,
        witness: NormWitness::Pair(witness.0, witness.1),
    })
}
