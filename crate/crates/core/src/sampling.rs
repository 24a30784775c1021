//! Seeded point sampling for residual reports.
//!
//! Sampling is deterministic given a seed, uniform inside a family-appropriate
//! coordinate box, and excludes collars around the singular loci (the
//! cylindrical axis, the spherical poles, the elliptic focal segment).

use crate::solutions::SolutionSpec;
use crate::{Point3, Real};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

/// Coordinate box a report samples from.
#[derive(Debug, Clone, Copy)]
pub enum SampleRegion {
    /// ρ ∈ [rho.0, rho.1], φ ∈ [0, 2π), z ∈ [z.0, z.1].
    Cylindrical { rho: (Real, Real), z: (Real, Real) },
    /// r ∈ [r.0, r.1], θ ∈ [collar, π − collar], φ ∈ [0, 2π).
    Spherical { r: (Real, Real), theta_collar: Real },
    /// η ∈ [eta.0, eta.1], φ ∈ [0, 2π), z ∈ [z.0, z.1]; focal parameter a.
    Elliptic { eta: (Real, Real), z: (Real, Real), a: Real },
}

/// Region a family is sampled in by default: ρ ∈ [0.1, 5] × z ∈ [−5, 5] for
/// the cylindrical families, r ∈ [0.5, 3] with 0.05-rad polar collars for
/// hedgehogs, η ∈ [0.3, 2] for elliptic strings (off the focal segment, where the coordinate map degenerates). Composites inherit their
/// base's region.
pub fn default_region(spec: &SolutionSpec) -> SampleRegion {
    match spec {
        SolutionSpec::CylString(_) | SolutionSpec::MassiveCyl(_) => {
            SampleRegion::Cylindrical { rho: (0.1, 5.0), z: (-5.0, 5.0) }
        }
        SolutionSpec::EllipticString(s) => {
            SampleRegion::Elliptic { eta: (0.3, 2.0), z: (-5.0, 5.0), a: s.focal }
        }
        // The collar keeps second-order finite-difference stencils away from
        // the polar defects, where their truncation error grows like
        // h²/(r²·θ_distance); 0.05 rad holds Laplacian residuals below 1e-7.
        SolutionSpec::Hedgehog(_) => SampleRegion::Spherical { r: (0.5, 3.0), theta_collar: 5e-2 },
        SolutionSpec::Composite(c) => default_region(&c.base),
    }
}

/// Draw `count` deterministic points inside `region`.
pub fn sample_points(region: &SampleRegion, count: usize, seed: u64) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(count);
    for _ in 0..count {
        let p = match *region {
            SampleRegion::Cylindrical { rho, z } => Point3::Cylindrical {
                rho: rng.gen_range(rho.0..rho.1),
                phi: rng.gen_range(0.0..TAU),
                z: rng.gen_range(z.0..z.1),
            },
            SampleRegion::Spherical { r, theta_collar } => Point3::Spherical {
                r: rng.gen_range(r.0..r.1),
                theta: rng.gen_range(theta_collar..(PI - theta_collar)),
                phi: rng.gen_range(0.0..TAU),
            },
            SampleRegion::Elliptic { eta, z, a } => Point3::EllipticCylindrical {
                eta: rng.gen_range(eta.0..eta.1),
                phi: rng.gen_range(0.0..TAU),
                z: rng.gen_range(z.0..z.1),
                a,
            },
        };
        points.push(p);
    }
    points
}
