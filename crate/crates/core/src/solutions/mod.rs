//! Constructors, validators, evaluators and analytic gradients for the
//! closed-form solution families of the complex eikonal equation.
//!
//! Every family reports its gradient in Cartesian components; the chain rule
//! from the family's natural coordinates lives inside each evaluator. The ±
//! branches of the closed forms are resolved by a single per-spec sign flag.

mod composite;
mod cyl;
mod elliptic_string;
mod hedgehog;
mod massive;

pub use composite::CompositeSpec;
pub use cyl::{radial_profile, radial_profile_deriv, CylComponent, CylStringSpec};
pub use elliptic_string::{solve_elliptic_lambda, EllipticStringSpec};
pub use hedgehog::{HedgehogComponent, HedgehogSpec};
pub use massive::MassiveCylSpec;

use crate::{Error, FieldSample, Point3, Result};
use serde::{Deserialize, Serialize};

/// Validate a ±1 branch flag.
pub(crate) fn check_sign(sign: i8) -> Result<()> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("sign must be +1 or -1, got {sign}")))
    }
}

/// Tagged union over the five analytic solution families.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SolutionSpec {
    CylString(CylStringSpec),
    MassiveCyl(MassiveCylSpec),
    EllipticString(EllipticStringSpec),
    Hedgehog(HedgehogSpec),
    Composite(CompositeSpec),
}

impl SolutionSpec {
    /// Re-run every construction invariant; used after deserialization.
    pub fn validate(&self) -> Result<()> {
        match self {
            SolutionSpec::CylString(s) => s.validate(),
            SolutionSpec::MassiveCyl(s) => s.validate(),
            SolutionSpec::EllipticString(s) => s.validate(),
            SolutionSpec::Hedgehog(s) => s.validate(),
            SolutionSpec::Composite(s) => s.validate(),
        }
    }

    /// Field value and analytic Cartesian gradient at `p`.
    pub fn evaluate(&self, p: &Point3) -> Result<FieldSample> {
        match self {
            SolutionSpec::CylString(s) => s.evaluate(p),
            SolutionSpec::MassiveCyl(s) => s.evaluate(p),
            SolutionSpec::EllipticString(s) => s.evaluate(p),
            SolutionSpec::Hedgehog(s) => s.evaluate(p),
            SolutionSpec::Composite(s) => s.evaluate(p),
        }
    }
}
