//! Deliberately broken operators used to falsify the harness itself.
//!
//! Each double is designed to make exactly one named check fail
//! robustly on random inputs; a harness that passes them would be
//! vacuous. They are compiled unconditionally so integration tests
//! and the CLI's debug-only injection flag can reach them.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::operators::{ConeOperator, FiniteKernel};
use crate::space::{Domain, SampledFunction};

/// Negation of a sup-kernel operator: `Af = -(Kf)`. Reverses order,
/// so the monotonicity check fails on any pair with `Kf != Kg`.
#[derive(Debug, Clone)]
pub struct NegatedKernel(pub FiniteKernel);

impl ConeOperator for NegatedKernel {
    fn domain(&self) -> Domain {
        self.0.domain()
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        Ok(self.0.apply(f)?.scale(-1.0))
    }

    fn descriptor(&self) -> String {
        format!("negated {} [test double]", self.0.descriptor())
    }
}

/// Pointwise square: `(Af)(i) = f(i)^2`. Monotone on the cone but not
/// subadditive: `(f + g)^2` exceeds `f^2 + g^2` wherever `f g > 0`.
#[derive(Debug, Clone)]
pub struct PointwiseSquare {
    pub domain: Domain,
}

impl ConeOperator for PointwiseSquare {
    fn domain(&self) -> Domain {
        self.domain.clone()
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        self.domain.check_compatible(f.domain())?;
        SampledFunction::new(
            self.domain.clone(),
            f.values().iter().map(|v| v * v).collect(),
        )
    }

    fn descriptor(&self) -> String {
        "pointwise square [test double]".to_string()
    }
}

/// Affine shift: `Af = f + 1`. Monotone and subadditive but not
/// positively homogeneous; already `A(0) = 1 != 0`.
#[derive(Debug, Clone)]
pub struct AffineShift {
    pub domain: Domain,
}

impl ConeOperator for AffineShift {
    fn domain(&self) -> Domain {
        self.domain.clone()
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        self.domain.check_compatible(f.domain())?;
        SampledFunction::new(
            self.domain.clone(),
            f.values().iter().map(|v| v + 1.0).collect(),
        )
    }

    fn descriptor(&self) -> String {
        "affine shift [test double]".to_string()
    }
}

/// Min-kernel operator: `(Af)(i) = min_j k(i,j) f(j)`. Monotone and
/// positively homogeneous but superadditive, which breaks the
/// fundamental inequality `|Af - Ag| <= A|f - g|`.
#[derive(Debug, Clone)]
pub struct MinKernel(pub FiniteKernel);

impl ConeOperator for MinKernel {
    fn domain(&self) -> Domain {
        self.0.domain()
    }

    fn apply(&self, f: &SampledFunction) -> Result<SampledFunction> {
        self.0.domain().check_compatible(f.domain())?;
        if let Some((index, value)) = f.first_negative() {
            return Err(Error::ConeViolation { index, value });
        }
        let m = self.0.size();
        let values = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| self.0.entry(i, j) * f.values()[j])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        SampledFunction::new(self.0.domain(), values)
    }

    fn descriptor(&self) -> String {
        format!("min-kernel {} [test double]", self.0.descriptor())
    }
}

/// Which axiom check a double is designed to break.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadOperatorKind {
    Monotone,
    Subadditive,
    Homogeneous,
    Fundamental,
}

impl BadOperatorKind {
    pub const ALL: [BadOperatorKind; 4] = [
        BadOperatorKind::Monotone,
        BadOperatorKind::Subadditive,
        BadOperatorKind::Homogeneous,
        BadOperatorKind::Fundamental,
    ];

    /// Name of the check this double is designed to fail.
    pub fn target_property(self) -> &'static str {
        match self {
            BadOperatorKind::Monotone => "monotone",
            BadOperatorKind::Subadditive => "subadditive",
            BadOperatorKind::Homogeneous => "positively_homogeneous",
            BadOperatorKind::Fundamental => "fundamental_inequality",
        }
    }

    /// Build the designated double on a finite domain of size `m`.
    pub fn build(self, m: usize) -> Result<Box<dyn ConeOperator>> {
        let domain = Domain::finite(m)?;
        Ok(match self {
            BadOperatorKind::Monotone => Box::new(NegatedKernel(FiniteKernel::identity(m)?)),
            BadOperatorKind::Subadditive => Box::new(PointwiseSquare { domain }),
            BadOperatorKind::Homogeneous => Box::new(AffineShift { domain }),
            BadOperatorKind::Fundamental => Box::new(MinKernel(FiniteKernel::from_rows_flat(
                m,
                vec![1.0; m * m],
            )?)),
        })
    }
}

impl FromStr for BadOperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monotone" => Ok(BadOperatorKind::Monotone),
            "subadditive" => Ok(BadOperatorKind::Subadditive),
            "homogeneous" => Ok(BadOperatorKind::Homogeneous),
            "fundamental" => Ok(BadOperatorKind::Fundamental),
            other => Err(Error::InvalidArgument(format!(
                "unknown test double {other:?}; expected monotone, subadditive, homogeneous, or fundamental"
            ))),
        }
    }
}
