//! Max-plus conjugate of the finite sup-kernel operator.
//!
//! Taking logarithms turns max-times into max-plus:
//! `log((Af)(i)) = max_j (log k(i,j) + log f(j))`. Zero kernel entries
//! and zero function values map to the tropical bottom element
//! (negative infinity), which is absorbing under `+` and neutral
//! under `max`.

use crate::error::{Error, Result};
use crate::operators::FiniteKernel;
use crate::space::SampledFunction;

/// Tropical bottom: the additive identity of the max-plus semiring.
pub const BOTTOM: f64 = f64::NEG_INFINITY;

/// A vector over the max-plus semiring: entries in `R ∪ {-inf}`.
/// NaN and `+inf` are rejected at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MaxPlusVector {
    values: Vec<f64>,
}

impl MaxPlusVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (index, &value) in values.iter().enumerate() {
            if value.is_nan() || value == f64::INFINITY {
                return Err(Error::NonFinite {
                    context: "max-plus vector",
                    index,
                    value,
                });
            }
        }
        Ok(MaxPlusVector { values })
    }

    /// Coordinate-wise logarithm of a cone function; zeros become bottom.
    pub fn log_of(f: &SampledFunction) -> Result<Self> {
        if let Some((index, value)) = f.first_negative() {
            return Err(Error::ConeViolation { index, value });
        }
        Ok(MaxPlusVector {
            values: f
                .values()
                .iter()
                .map(|&v| if v == 0.0 { BOTTOM } else { v.ln() })
                .collect(),
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Max-plus application: `result(i) = max_j (log k(i,j) + g(j))`.
///
/// A zero kernel entry contributes bottom; a row whose contributions
/// are all bottom yields bottom at that coordinate. For strictly
/// positive `f` this satisfies the conjugation identity
/// `maxplus_apply(k, log f) == log(apply(k, f))`.
pub fn maxplus_apply(kernel: &FiniteKernel, g: &MaxPlusVector) -> Result<MaxPlusVector> {
    let m = kernel.size();
    if g.len() != m {
        return Err(Error::InvalidArgument(format!(
            "max-plus vector of length {} does not match kernel size {m}",
            g.len()
        )));
    }
    let values = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let k = kernel.entry(i, j);
                    let log_k = if k == 0.0 { BOTTOM } else { k.ln() };
                    // bottom + anything = bottom, handled by IEEE -inf
                    log_k + g.values[j]
                })
                .fold(BOTTOM, f64::max)
        })
        .collect();
    Ok(MaxPlusVector { values })
}
