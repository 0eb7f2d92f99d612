//! Uniform-boundedness experiment over generated operator families.
//!
//! The experiment checks the pointwise-boundedness hypothesis on a
//! finite probe set, computes the family supremum of exact Lipschitz
//! seminorms, and certifies a uniform bound from the all-ones probe:
//! for both kernel operator classes `||A 1||` equals `||A||_LIP`
//! exactly, so the certified bound `C * M_1` is tight.

use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{
    ConeOperator, ContinuousKernelSpec, FiniteKernel, KernelOperator,
};
use crate::sampling::{cone_function, derive_seed, stream_rng};
use crate::space::{Domain, SampledFunction};
use crate::tolerances::ESTIMATE_TOL;
use crate::verify::{PropertyReport, PropertyWitness};

/// Number of random cone probes checked in addition to the all-ones
/// probe.
pub const RANDOM_PROBES: usize = 4;

/// Named family generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyGenerator {
    /// Random finite kernels with entries uniform on `[0, bound_cap)`,
    /// sizes cycling through 2..=8, and a maximal entry planted in
    /// member 0 so the cap is attained exactly.
    Uniform,
    /// All-zero kernels (the zero operators).
    Zero,
    /// Alternating finite kernels and continuous specs with random
    /// admissible intervals, all entries clipped to the cap.
    Mixed,
}

impl FromStr for FamilyGenerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(FamilyGenerator::Uniform),
            "zero" => Ok(FamilyGenerator::Zero),
            "mixed" => Ok(FamilyGenerator::Mixed),
            other => Err(Error::InvalidArgument(format!(
                "unknown family generator {other:?}; expected uniform, zero, or mixed"
            ))),
        }
    }
}

/// A generated family of operators: `count` members produced
/// deterministically from `base_seed`, with kernel entries clipped to
/// `[0, bound_cap]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub count: usize,
    pub generator: FamilyGenerator,
    pub base_seed: u64,
    pub bound_cap: f64,
}

impl FamilySpec {
    pub fn new(
        count: usize,
        generator: FamilyGenerator,
        base_seed: u64,
        bound_cap: f64,
    ) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidArgument("family must be nonempty".into()));
        }
        if !bound_cap.is_finite() || bound_cap <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "bound cap must be a positive finite real, got {bound_cap}"
            )));
        }
        Ok(FamilySpec {
            count,
            generator,
            base_seed,
            bound_cap,
        })
    }
}

/// Generate the family. Member `i` depends only on `(base_seed, i)`,
/// so growing `count` extends the family without changing existing
/// members.
pub fn generate_family(spec: &FamilySpec) -> Result<Vec<KernelOperator>> {
    if spec.count == 0 {
        return Err(Error::InvalidArgument("family must be nonempty".into()));
    }
    let member_seed = derive_seed(spec.base_seed, 1);
    (0..spec.count)
        .map(|i| generate_member(spec, member_seed, i))
        .collect()
}

fn generate_member(spec: &FamilySpec, member_seed: u64, index: usize) -> Result<KernelOperator> {
    let mut rng = stream_rng(member_seed, index as u64);
    let cap = spec.bound_cap;
    match spec.generator {
        FamilyGenerator::Uniform => {
            let m = rng.gen_range(2..=8);
            Ok(KernelOperator::finite(random_kernel(
                m, cap, index == 0, &mut rng,
            )?))
        }
        FamilyGenerator::Zero => {
            let m = rng.gen_range(2..=8);
            Ok(KernelOperator::finite(FiniteKernel::zero(m)?))
        }
        FamilyGenerator::Mixed => {
            if index.is_multiple_of(2) {
                let m = rng.gen_range(2..=8);
                Ok(KernelOperator::finite(random_kernel(
                    m, cap, index == 0, &mut rng,
                )?))
            } else {
                let n = rng.gen_range(5..=12);
                Ok(KernelOperator::continuous(random_continuous_spec(
                    n, cap, &mut rng,
                )?))
            }
        }
    }
}

fn random_kernel(
    m: usize,
    cap: f64,
    plant_max: bool,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<FiniteKernel> {
    let mut entries: Vec<f64> = (0..m * m)
        .map(|_| (cap * rng.gen::<f64>()).clamp(0.0, cap))
        .collect();
    if plant_max {
        entries[0] = cap;
    }
    FiniteKernel::from_rows_flat(m, entries)
}

fn random_continuous_spec(
    n: usize,
    cap: f64,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<ContinuousKernelSpec> {
    let grid = Domain::grid(n, 1.0)?;
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        alpha.push(u.min(v));
        beta.push(u.max(v));
    }
    let kernel: Vec<f64> = (0..n * n)
        .map(|_| (cap * rng.gen::<f64>()).clamp(0.0, cap))
        .collect();
    ContinuousKernelSpec::new(
        grid.clone(),
        SampledFunction::new(grid.clone(), alpha)?,
        SampledFunction::new(grid, beta)?,
        kernel,
    )
}

/// Run the uniform-boundedness experiment.
///
/// Probe 0 is the all-ones function; probes 1..=[`RANDOM_PROBES`] are
/// random cone functions instantiated on each operator's domain from
/// the probe's own stream (operators sharing a domain see identical
/// probe values). The experiment records `M_p = max_A ||A p||` per
/// probe, the family supremum of exact Lipschitz seminorms, and
/// passes iff `sup ||A||_LIP <= c * M_1` up to tolerance, `c` being
/// the normality constant.
pub fn ubp_experiment(spec: &FamilySpec, c: f64) -> Result<PropertyReport> {
    let operators = generate_family(spec)?;
    let probe_seed = derive_seed(spec.base_seed, 2);
    let mut probe_bounds = vec![0.0_f64; 1 + RANDOM_PROBES];
    for op in &operators {
        let domain = op.domain();
        for (p, bound) in probe_bounds.iter_mut().enumerate() {
            let probe = if p == 0 {
                SampledFunction::ones(domain.clone())
            } else {
                let mut rng = stream_rng(probe_seed, p as u64);
                cone_function(&domain, &mut rng, 1.0)
            };
            *bound = bound.max(op.apply(&probe)?.sup_norm());
        }
    }
    let sup_lip = operators
        .iter()
        .map(KernelOperator::exact_norm)
        .fold(0.0_f64, f64::max);
    let certified = c * probe_bounds[0];
    let violation = (sup_lip - certified).max(0.0);
    Ok(PropertyReport::from_violation(
        "uniform_boundedness",
        spec.count,
        violation,
        ESTIMATE_TOL,
        PropertyWitness::Family {
            probe_bounds,
            certified_bound: certified,
            sup_lip_seminorm: sup_lip,
        },
        spec.base_seed,
    ))
}
