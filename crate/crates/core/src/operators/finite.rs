//! Finite sup-kernel (max-times) operators: `(Af)(i) = max_j k(i,j) f(j)`
//! for a nonnegative square matrix `k`. The finite case of sup-kernel
//! operators on bounded functions, and the classical max-algebra
//! matrix-vector product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Domain, SampledFunction};

/// Nonnegative `m x m` kernel matrix, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FiniteKernelRepr")]
pub struct FiniteKernel {
    size: usize,
    entries: Vec<f64>,
}

#[derive(Deserialize)]
struct FiniteKernelRepr {
    size: usize,
    entries: Vec<f64>,
}

impl TryFrom<FiniteKernelRepr> for FiniteKernel {
    type Error = Error;

    fn try_from(repr: FiniteKernelRepr) -> Result<Self> {
        FiniteKernel::from_rows_flat(repr.size, repr.entries)
    }
}

impl FiniteKernel {
    /// Build from a row-major flat vector of `size * size` entries.
    /// Entries must be finite and nonnegative.
    pub fn from_rows_flat(size: usize, entries: Vec<f64>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument(
                "kernel must have at least one row".into(),
            ));
        }
        if entries.len() != size * size {
            return Err(Error::InvalidArgument(format!(
                "kernel of size {size} needs {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        for (index, &value) in entries.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    context: "kernel entry",
                    index,
                    value,
                });
            }
            if value < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "kernel entry at ({}, {}) is negative: {value}",
                    index / size,
                    index % size
                )));
            }
        }
        Ok(FiniteKernel { size, entries })
    }

    /// Build from nested rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
        }
        Self::from_rows_flat(size, rows.into_iter().flatten().collect())
    }

    /// Max-times identity: diagonal 1, off-diagonal 0.
    pub fn identity(size: usize) -> Result<Self> {
        let mut entries = vec![0.0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1.0;
        }
        Self::from_rows_flat(size, entries)
    }

    /// All-zero kernel (the zero operator).
    pub fn zero(size: usize) -> Result<Self> {
        Self::from_rows_flat(size, vec![0.0; size * size])
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Largest entry; the exact operator norm and Lipschitz seminorm.
    pub fn max_entry(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }

    /// The domain this kernel acts on.
    pub fn domain(&self) -> Domain {
        Domain::Finite { size: self.size }
    }

    /// Apply the operator to a cone function: `(Af)(i) = max_j k(i,j) f(j)`.
    ///
    /// `f` must live on the matching finite domain and in the positive
    /// cone; differences of cone elements are only ever exercised
    /// through the verification harness.
    pub fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        self.domain().check_compatible(f.domain())?;
        if let Some((index, value)) = f.first_negative() {
            return Err(Error::ConeViolation { index, value });
        }
        let values = (0..self.size)
            .map(|i| {
                let row = &self.entries[i * self.size..(i + 1) * self.size];
                row.iter()
                    .zip(f.values())
                    .map(|(&k, &v)| k * v)
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        SampledFunction::new(self.domain(), values)
    }
}
