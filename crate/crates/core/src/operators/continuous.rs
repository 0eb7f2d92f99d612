//! Discretized continuous max-type kernel operators
//! `(Af)(s) = max_{t in [alpha(s), beta(s)]} k(s,t) f(t)` on a uniform
//! grid, with the state-dependent interval realized as a boolean
//! admissible mask over grid indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Domain, SampledFunction};
use crate::tolerances::GRID_SNAP_FACTOR;

/// Sampled data of a continuous max-type kernel operator: interval
/// bounds `alpha <= beta` with values in `[0, a]`, and an `n x n`
/// nonnegative kernel table `k(s_i, t_j)` over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousKernelSpec {
    grid: Domain,
    alpha: SampledFunction,
    beta: SampledFunction,
    kernel: Vec<f64>,
}

impl ContinuousKernelSpec {
    pub fn new(
        grid: Domain,
        alpha: SampledFunction,
        beta: SampledFunction,
        kernel: Vec<f64>,
    ) -> Result<Self> {
        let endpoint = match grid {
            Domain::Grid { endpoint, .. } => endpoint,
            Domain::Finite { .. } => {
                return Err(Error::InvalidArgument(
                    "continuous kernel spec requires a grid domain".into(),
                ))
            }
        };
        grid.check_compatible(alpha.domain())?;
        grid.check_compatible(beta.domain())?;
        let n = grid.size();
        if kernel.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "kernel table needs {} entries for a {n}-point grid, got {}",
                n * n,
                kernel.len()
            )));
        }
        for i in 0..n {
            let (a_i, b_i) = (alpha.values()[i], beta.values()[i]);
            if a_i < 0.0 || b_i > endpoint {
                return Err(Error::InvalidArgument(format!(
                    "interval bounds at grid point {i} leave [0, {endpoint}]: [{a_i}, {b_i}]"
                )));
            }
            if a_i > b_i {
                return Err(Error::InvalidArgument(format!(
                    "alpha({i}) = {a_i} exceeds beta({i}) = {b_i}"
                )));
            }
        }
        for (index, &value) in kernel.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    context: "kernel table entry",
                    index,
                    value,
                });
            }
            if value < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "kernel table entry at ({}, {}) is negative: {value}",
                    index / n,
                    index % n
                )));
            }
        }
        Ok(ContinuousKernelSpec {
            grid,
            alpha,
            beta,
            kernel,
        })
    }

    pub fn grid(&self) -> &Domain {
        &self.grid
    }

    pub fn size(&self) -> usize {
        self.grid.size()
    }

    pub fn alpha(&self) -> &SampledFunction {
        &self.alpha
    }

    pub fn beta(&self) -> &SampledFunction {
        &self.beta
    }

    pub fn kernel_entry(&self, i: usize, j: usize) -> f64 {
        self.kernel[i * self.size() + j]
    }

    /// Build the admissible mask: `mask[i][j]` iff `t_j` lies in
    /// `[alpha(s_i) - tau, beta(s_i) + tau]` with the grid-snap
    /// tolerance `tau = mesh * GRID_SNAP_FACTOR`. A row that would
    /// come out empty (only possible through rounding) gets the single
    /// grid index nearest to the interval midpoint forced on.
    pub fn build_mask(&self) -> AdmissibleMask {
        let n = self.size();
        let endpoint = match self.grid {
            Domain::Grid { endpoint, .. } => endpoint,
            Domain::Finite { .. } => unreachable!("spec construction requires a grid"),
        };
        let mesh = self.grid.mesh().expect("grid domain has a mesh");
        let tau = mesh * GRID_SNAP_FACTOR;
        let mut mask = vec![false; n * n];
        for i in 0..n {
            let lo = self.alpha.values()[i] - tau;
            let hi = self.beta.values()[i] + tau;
            let row = &mut mask[i * n..(i + 1) * n];
            let mut any = false;
            for (j, slot) in row.iter_mut().enumerate() {
                let t = self.grid.point(j).expect("grid point");
                if lo <= t && t <= hi {
                    *slot = true;
                    any = true;
                }
            }
            if !any {
                let mid = (self.alpha.values()[i] + self.beta.values()[i]) / 2.0;
                let j = ((mid * (n - 1) as f64 / endpoint).round() as usize).min(n - 1);
                row[j] = true;
            }
        }
        AdmissibleMask { size: n, mask }
    }

    /// Apply the operator: `result(s_i) = max over admissible j of
    /// k(s_i, t_j) f(t_j)`. Requires a cone input on the spec's grid.
    pub fn apply_masked(
        &self,
        mask: &AdmissibleMask,
        f: &SampledFunction,
    ) -> Result<SampledFunction> {
        let n = self.size();
        if mask.size != n {
            return Err(Error::InvalidArgument(format!(
                "mask size {} does not match grid size {n}",
                mask.size
            )));
        }
        self.grid.check_compatible(f.domain())?;
        if let Some((index, value)) = f.first_negative() {
            return Err(Error::ConeViolation { index, value });
        }
        let values = (0..n)
            .map(|i| {
                let krow = &self.kernel[i * n..(i + 1) * n];
                let mrow = &mask.mask[i * n..(i + 1) * n];
                krow.iter()
                    .zip(mrow)
                    .zip(f.values())
                    .filter(|((_, &m), _)| m)
                    .map(|((&k, _), &v)| k * v)
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        SampledFunction::new(self.grid.clone(), values)
    }

    /// Largest kernel entry over the admissible set; the exact
    /// operator norm and Lipschitz seminorm of the masked operator.
    pub fn masked_max(&self, mask: &AdmissibleMask) -> f64 {
        self.kernel
            .iter()
            .zip(&mask.mask)
            .filter(|(_, &m)| m)
            .map(|(&k, _)| k)
            .fold(0.0, f64::max)
    }
}

/// Boolean `n x n` table marking which grid pairs `(s_i, t_j)` are
/// admissible; every row has at least one true entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleMask {
    size: usize,
    mask: Vec<bool>,
}

impl AdmissibleMask {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_admissible(&self, i: usize, j: usize) -> bool {
        self.mask[i * self.size + j]
    }

    /// Number of admissible indices in row `i`.
    pub fn row_count(&self, i: usize) -> usize {
        self.mask[i * self.size..(i + 1) * self.size]
            .iter()
            .filter(|&&m| m)
            .count()
    }
}

/// A continuous kernel spec bundled with its admissible mask; the
/// ready-to-apply operator.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuousKernelOperator {
    spec: ContinuousKernelSpec,
    mask: AdmissibleMask,
}

impl ContinuousKernelOperator {
    pub fn new(spec: ContinuousKernelSpec) -> Self {
        let mask = spec.build_mask();
        ContinuousKernelOperator { spec, mask }
    }

    pub fn spec(&self) -> &ContinuousKernelSpec {
        &self.spec
    }

    pub fn mask(&self) -> &AdmissibleMask {
        &self.mask
    }

    pub fn grid(&self) -> &Domain {
        self.spec.grid()
    }

    pub fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        self.spec.apply_masked(&self.mask, f)
    }
}
