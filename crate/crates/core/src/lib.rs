//! Max-type kernel operators on cones of sampled functions.
//!
//! The crate provides:
//!
//! - [`space`]: sampled functions under the sup norm, the positive
//!   cone and its partial order, and normality-constant estimation;
//! - [`operators`]: finite sup-kernel (max-times) operators,
//!   discretized continuous max-type kernel operators with
//!   state-dependent intervals, and the max-plus conjugate form;
//! - [`norms`]: exact closed-form operator norms and reproducible
//!   empirical estimators for the operator norm and the Lipschitz
//!   seminorm;
//! - [`verify`]: a property harness checking monotonicity,
//!   subadditivity, positive homogeneity, the fundamental inequality
//!   `|Af - Ag| <= A|f - g|`, the norm sandwich, a pointwise scalar
//!   lemma, and a uniform-boundedness experiment over generated
//!   operator families;
//! - [`formats`]: kernel CSV and spec JSON file formats with named
//!   generators, shared with the command-line front end.

pub mod error;
pub mod formats;
pub mod norms;
pub mod operators;
pub mod sampling;
pub mod space;
pub mod tolerances;
pub mod verify;

pub use error::{Error, Result};
pub use operators::{
    AdmissibleMask, ConeOperator, ContinuousKernelOperator, ContinuousKernelSpec, FiniteKernel,
    KernelOperator, MaxPlusVector,
};
pub use space::{estimate_normality_constant, Domain, SampledFunction};
