//! Discrete stand-ins for the function spaces the operators act on:
//! sampled functions under the sup norm, the positive cone, and the
//! partial order it induces.
//!
//! A [`Domain`] is either a finite index set `{0..m-1}` or a uniform
//! grid on `[0, a]`. A [`SampledFunction`] is a domain plus one real
//! value per domain point. Values are validated to be finite at
//! construction; NaN or infinity would silently poison every
//! max-reduction downstream.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Carrier set for sampled functions.
///
/// Two domains are compatible for arithmetic iff kind, size, and
/// endpoint are all equal (endpoint compared exactly).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[serde(try_from = "DomainRepr")]
pub enum Domain {
    /// Finite index set `{0..size-1}`.
    Finite { size: usize },
    /// Uniform endpoint-inclusive grid `s_i = i*endpoint/(size-1)`.
    Grid { size: usize, endpoint: f64 },
}

/// Raw serde shape of [`Domain`]; invariants are enforced in `TryFrom`.
#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum DomainRepr {
    Finite { size: usize },
    Grid { size: usize, endpoint: f64 },
}

impl TryFrom<DomainRepr> for Domain {
    type Error = Error;

    fn try_from(repr: DomainRepr) -> Result<Self> {
        match repr {
            DomainRepr::Finite { size } => Domain::finite(size),
            DomainRepr::Grid { size, endpoint } => Domain::grid(size, endpoint),
        }
    }
}

impl Domain {
    /// Finite index set of `size` points; `size` must be at least 1.
    pub fn finite(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument(
                "finite domain needs at least one point".into(),
            ));
        }
        Ok(Domain::Finite { size })
    }

    /// Uniform grid of `size >= 2` points on `[0, endpoint]`, `endpoint > 0`.
    pub fn grid(size: usize, endpoint: f64) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidArgument(
                "grid domain needs at least two points".into(),
            ));
        }
        if !endpoint.is_finite() || endpoint <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "grid endpoint must be a positive finite real, got {endpoint}"
            )));
        }
        Ok(Domain::Grid { size, endpoint })
    }

    pub fn size(&self) -> usize {
        match *self {
            Domain::Finite { size } | Domain::Grid { size, .. } => size,
        }
    }

    /// Grid coordinate of point `i` (grids only).
    pub fn point(&self, i: usize) -> Option<f64> {
        match *self {
            Domain::Finite { .. } => None,
            Domain::Grid { size, endpoint } => {
                Some(i as f64 * endpoint / (size - 1) as f64)
            }
        }
    }

    /// Mesh width `endpoint/(size-1)` (grids only).
    pub fn mesh(&self) -> Option<f64> {
        match *self {
            Domain::Finite { .. } => None,
            Domain::Grid { size, endpoint } => Some(endpoint / (size - 1) as f64),
        }
    }

    pub fn is_grid(&self) -> bool {
        matches!(self, Domain::Grid { .. })
    }

    /// Compatibility check used by every binary operation.
    pub fn check_compatible(&self, other: &Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                expected: self.clone(),
                found: other.clone(),
            })
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Domain::Finite { size } => write!(f, "finite({size})"),
            Domain::Grid { size, endpoint } => write!(f, "grid({size} points on [0, {endpoint}])"),
        }
    }
}

/// A real-valued function sampled on a [`Domain`].
///
/// Values are always finite; construction rejects NaN and infinities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SampledFunctionRepr")]
pub struct SampledFunction {
    domain: Domain,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct SampledFunctionRepr {
    domain: Domain,
    values: Vec<f64>,
}

impl TryFrom<SampledFunctionRepr> for SampledFunction {
    type Error = Error;

    fn try_from(repr: SampledFunctionRepr) -> Result<Self> {
        SampledFunction::new(repr.domain, repr.values)
    }
}

impl SampledFunction {
    pub fn new(domain: Domain, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.size() {
            return Err(Error::InvalidArgument(format!(
                "expected {} values for {domain}, got {}",
                domain.size(),
                values.len()
            )));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite {
                    context: "sampled function",
                    index,
                    value,
                });
            }
        }
        Ok(SampledFunction { domain, values })
    }

    /// The constant function with the given value.
    pub fn constant(domain: Domain, value: f64) -> Result<Self> {
        let size = domain.size();
        SampledFunction::new(domain, vec![value; size])
    }

    /// The zero function.
    pub fn zero(domain: Domain) -> Self {
        let size = domain.size();
        SampledFunction {
            domain,
            values: vec![0.0; size],
        }
    }

    /// The all-ones function; the deterministic norm probe.
    pub fn ones(domain: Domain) -> Self {
        let size = domain.size();
        SampledFunction {
            domain,
            values: vec![1.0; size],
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
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

    /// Sup norm `max_i |f(i)|`; zero iff `f` is identically zero.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    /// Pointwise absolute value. Lands in the cone and preserves the
    /// sup norm exactly.
    pub fn abs(&self) -> SampledFunction {
        SampledFunction {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| v.abs()).collect(),
        }
    }

    /// True iff every value is `>= 0` (exact comparison, no tolerance).
    pub fn is_in_cone(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    /// Index and value of the first strictly negative entry, if any.
    pub(crate) fn first_negative(&self) -> Option<(usize, f64)> {
        self.values
            .iter()
            .enumerate()
            .find(|(_, &v)| v < 0.0)
            .map(|(i, &v)| (i, v))
    }

    /// Partial order induced by the cone: `self <= other` iff
    /// `other - self` is pointwise nonnegative.
    pub fn partial_le(&self, other: &SampledFunction) -> Result<bool> {
        self.domain.check_compatible(&other.domain)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a <= b))
    }

    /// Pointwise sum.
    pub fn add(&self, other: &SampledFunction) -> Result<SampledFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &SampledFunction) -> Result<SampledFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise scaling by `t`.
    pub fn scale(&self, t: f64) -> SampledFunction {
        SampledFunction {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| t * v).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &SampledFunction,
        op: impl Fn(f64, f64) -> f64,
    ) -> Result<SampledFunction> {
        self.domain.check_compatible(&other.domain)?;
        Ok(SampledFunction {
            domain: self.domain.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }
}

/// Largest ratio `||phi|| / ||psi||` over ordered cone pairs
/// `0 <= phi <= psi`. For the sup norm the exact normality constant is
/// 1, so this estimator is a cross-check; it also supports estimating
/// the constant on restricted subcones.
///
/// Every pair must satisfy: both in the cone, `phi <= psi`, and
/// `||psi|| > 0`. The first offending pair is reported by index.
/// An empty list yields 0 (supremum over the empty set of
/// nonnegative ratios).
pub fn estimate_normality_constant(pairs: &[(SampledFunction, SampledFunction)]) -> Result<f64> {
    let mut best: f64 = 0.0;
    for (index, (phi, psi)) in pairs.iter().enumerate() {
        if !phi.is_in_cone() || !psi.is_in_cone() {
            return Err(Error::InvalidPair {
                index,
                reason: "both functions must lie in the cone".into(),
            });
        }
        let le = phi.partial_le(psi).map_err(|e| Error::InvalidPair {
            index,
            reason: e.to_string(),
        })?;
        if !le {
            return Err(Error::InvalidPair {
                index,
                reason: "pair is not ordered (phi <= psi fails)".into(),
            });
        }
        let denom = psi.sup_norm();
        if denom == 0.0 {
            return Err(Error::InvalidPair {
                index,
                reason: "psi has zero sup norm".into(),
            });
        }
        best = best.max(phi.sup_norm() / denom);
    }
    Ok(best)
}
