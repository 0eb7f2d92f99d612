//! Concrete max-type kernel operator classes and the common interface
//! the norm estimators and the verification harness program against.
//!
//! Both classes are monotone, subadditive, and positively homogeneous
//! on the cone, which is exactly what the harness checks.

mod continuous;
mod finite;
pub mod maxplus;

pub use continuous::{AdmissibleMask, ContinuousKernelOperator, ContinuousKernelSpec};
pub use finite::FiniteKernel;
pub use maxplus::{maxplus_apply, MaxPlusVector, BOTTOM};

use crate::error::Result;
use crate::space::{Domain, SampledFunction};

/// A cone-preserving operator on sampled functions.
///
/// Implemented by both kernel operator classes and by the harness's
/// deliberately broken test doubles; the estimators and property
/// checks only ever see this surface.
pub trait ConeOperator {
    /// Domain the operator acts on.
    fn domain(&self) -> Domain;

    /// Apply to a cone function on the matching domain.
    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction>;

    /// Short human-readable description for reports.
    fn descriptor(&self) -> String;
}

impl ConeOperator for FiniteKernel {
    fn domain(&self) -> Domain {
        FiniteKernel::domain(self)
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        FiniteKernel::apply(self, f)
    }

    fn descriptor(&self) -> String {
        format!("finite sup-kernel ({0}x{0})", self.size())
    }
}

impl ConeOperator for ContinuousKernelOperator {
    fn domain(&self) -> Domain {
        self.grid().clone()
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        ContinuousKernelOperator::apply(self, f)
    }

    fn descriptor(&self) -> String {
        format!("continuous max-kernel ({} grid points)", self.grid().size())
    }
}

/// Either kernel operator class, for code that needs the exact norm
/// formulas alongside the generic [`ConeOperator`] surface.
#[derive(Debug, Clone, PartialEq)]
pub enum KernelOperator {
    Finite(FiniteKernel),
    Continuous(ContinuousKernelOperator),
}

impl KernelOperator {
    pub fn finite(kernel: FiniteKernel) -> Self {
        KernelOperator::Finite(kernel)
    }

    pub fn continuous(spec: ContinuousKernelSpec) -> Self {
        KernelOperator::Continuous(ContinuousKernelOperator::new(spec))
    }

    /// Exact operator norm == Lipschitz seminorm: the largest kernel
    /// entry (over the admissible set, for the continuous class).
    pub fn exact_norm(&self) -> f64 {
        match self {
            KernelOperator::Finite(k) => k.max_entry(),
            KernelOperator::Continuous(op) => op.spec().masked_max(op.mask()),
        }
    }
}

impl ConeOperator for KernelOperator {
    fn domain(&self) -> Domain {
        match self {
            KernelOperator::Finite(k) => ConeOperator::domain(k),
            KernelOperator::Continuous(op) => ConeOperator::domain(op),
        }
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        match self {
            KernelOperator::Finite(k) => ConeOperator::apply(k, f),
            KernelOperator::Continuous(op) => ConeOperator::apply(op, f),
        }
    }

    fn descriptor(&self) -> String {
        match self {
            KernelOperator::Finite(k) => k.descriptor(),
            KernelOperator::Continuous(op) => op.descriptor(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_interval_continuous_operator_matches_finite_kernel() {
        // With alpha = 0 and beta = a the mask is all-true and the
        // masked max-kernel application is the same row-wise max of
        // products as the finite class on the same table.
        let n = 4;
        let grid = Domain::grid(n, 1.0).unwrap();
        let table: Vec<f64> = (0..n * n).map(|i| (i as f64 * 0.37) % 3.0).collect();
        let spec = ContinuousKernelSpec::new(
            grid.clone(),
            SampledFunction::constant(grid.clone(), 0.0).unwrap(),
            SampledFunction::constant(grid.clone(), 1.0).unwrap(),
            table.clone(),
        )
        .unwrap();
        let continuous = ContinuousKernelOperator::new(spec);
        let finite = FiniteKernel::from_rows_flat(n, table).unwrap();

        let values: Vec<f64> = (0..n).map(|i| 0.1 + i as f64 * 0.4).collect();
        let on_grid = SampledFunction::new(grid, values.clone()).unwrap();
        let on_set = SampledFunction::new(Domain::finite(n).unwrap(), values).unwrap();

        let a = continuous.apply(&on_grid).unwrap();
        let b = finite.apply(&on_set).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn exact_norm_dispatches_per_class() {
        let k = FiniteKernel::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(KernelOperator::finite(k).exact_norm(), 4.0);

        let grid = Domain::grid(3, 1.0).unwrap();
        let spec = ContinuousKernelSpec::new(
            grid.clone(),
            SampledFunction::constant(grid.clone(), 0.0).unwrap(),
            SampledFunction::constant(grid, 1.0).unwrap(),
            vec![0.5; 9],
        )
        .unwrap();
        assert_eq!(KernelOperator::continuous(spec).exact_norm(), 0.5);
    }
}
