//! Topological charge computation, defect-string locus prediction and
//! tracing, and braid-closure classification.

mod braid;
mod charge;
mod loci;

pub use braid::{braid_closure, BraidClosure};
pub use charge::{monopole_degree, winding_number, winding_number_about, ChargeReport};
pub use loci::{
    locate_strings, predict_strings_n1, predict_strings_n2, string_position_vector,
    trace_string_curves, N2Prediction, PhiLine, SearchBox, StringPrediction, TraceOptions,
};

use crate::{Point3, Real};
use serde::{Deserialize, Serialize};

/// Ordered polyline tracing one defect string through a z-range.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StringCurve {
    /// Branch index l, ordered by angular position in the first slice.
    pub branch_index: u32,
    /// Cartesian points, one per z-slice.
    pub points: Vec<Point3>,
    pub z_range: (Real, Real),
}

impl StringCurve {
    /// Cylindrical radii of all points.
    pub fn radii(&self) -> impl Iterator<Item = Real> + '_ {
        self.points.iter().map(|p| p.to_cylindrical().0)
    }

    /// Unwrapped azimuthal angle along the curve; consecutive slices are
    /// assumed closer than π in φ.
    pub fn unwrapped_phi(&self) -> Vec<Real> {
        let mut out = Vec::with_capacity(self.points.len());
        let mut prev: Option<Real> = None;
        for p in &self.points {
            let (_, phi, _) = p.to_cylindrical();
            let unwrapped = match prev {
                None => phi,
                Some(q) => {
                    let mut d = (phi - q) % std::f64::consts::TAU;
                    if d > std::f64::consts::PI {
                        d -= std::f64::consts::TAU;
                    } else if d < -std::f64::consts::PI {
                        d += std::f64::consts::TAU;
                    }
                    q + d
                }
            };
            out.push(unwrapped);
            prev = Some(unwrapped);
        }
        out
    }

    /// Total azimuthal advance from first to last point.
    pub fn total_phi_advance(&self) -> Real {
        let phis = self.unwrapped_phi();
        match (phis.first(), phis.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}
