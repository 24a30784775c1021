//! Closure analysis of traced string curves: endpoint permutation over one
//! z-period and torus-link identification from the common angular advance.

use super::StringCurve;
use crate::{Error, Real, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const MATCH_TOL: Real = 1e-6;

/// Result of closing a braid of string curves over one period.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidClosure {
    /// Number of strands in the braid.
    pub strands: usize,
    /// The z-period over which the closure was taken.
    pub period: Real,
    /// permutation[i] is the strand whose start point the end of strand i
    /// lands on after one period.
    pub permutation: Vec<usize>,
    /// Common signed angular advance Δφ of each strand over one period.
    pub total_rotation: Real,
    /// Signed torus-link parameter q = strands·Δφ/(2π).
    pub q: i64,
    /// Torus-link label, e.g. "T(2,3)"; "unknot" or "unlink" for the trivial
    /// cases.
    pub link_label: String,
}

/// Close a set of traced curves over `period` in z: verify the end slice maps
/// onto the start slice by a rigid rotation, extract the strand permutation,
/// and identify the closure as a torus link T(s, |q|).
pub fn braid_closure(curves: &[StringCurve], period: Real) -> Result<BraidClosure> {
    if curves.is_empty() {
        return Err(Error::NotClosed("no curves to close".into()));
    }
    if !(period > 0.0) {
        return Err(Error::InvalidParameter(format!("period must be positive, got {period}")));
    }
    let strands = curves.len();

    let mut starts = Vec::with_capacity(strands);
    let mut ends = Vec::with_capacity(strands);
    let mut rotations = Vec::with_capacity(strands);
    for (i, curve) in curves.iter().enumerate() {
        let first = curve.points.first().ok_or_else(|| Error::NotClosed(format!("curve {i} is empty")))?;
        let last = curve.points.last().expect("nonempty");
        let (x0, y0, z0) = first.to_cartesian();
        let (x1, y1, z1) = last.to_cartesian();
        let dz = z1 - z0;
        if (dz - period).abs() > MATCH_TOL * (1.0 + period) {
            return Err(Error::NotClosed(format!(
                "curve {i} spans Δz = {dz}, expected the period {period}"
            )));
        }
        starts.push((x0, y0));
        ends.push((x1, y1));
        rotations.push(curve.total_phi_advance());
    }

    // The closure requires every strand to rotate by the same angle.
    let rotation = rotations[0];
    for (i, r) in rotations.iter().enumerate() {
        if (r - rotation).abs() > MATCH_TOL {
            return Err(Error::NotClosed(format!(
                "strand {i} advances by {r} rad but strand 0 advances by {rotation} rad"
            )));
        }
    }

    // q = s·Δφ/2π must be an integer for the braid to close at all.
    let q_real = strands as Real * rotation / TAU;
    let q = q_real.round();
    if (q_real - q).abs() > MATCH_TOL {
        return Err(Error::NonCommensurate { rotation, strands });
    }
    let q = q as i64;

    // Match each endpoint to the start point it lands on.
    let mut permutation = vec![usize::MAX; strands];
    let mut taken = vec![false; strands];
    for (i, &(ex, ey)) in ends.iter().enumerate() {
        let scale = 1.0 + ex.hypot(ey);
        let hit = starts.iter().enumerate().find(|&(j, &(sx, sy))| {
            !taken[j] && (ex - sx).hypot(ey - sy) < MATCH_TOL * scale
        });
        match hit {
            Some((j, _)) => {
                permutation[i] = j;
                taken[j] = true;
            }
            None => {
                return Err(Error::NotClosed(format!(
                    "end of strand {i} at ({ex}, {ey}) matches no start point"
                )));
            }
        }
    }

    let link_label = if q == 0 {
        if strands > 1 { "unlink".to_string() } else { "unknot".to_string() }
    } else if q.unsigned_abs() == 1 || strands == 1 {
        "unknot".to_string()
    } else {
        format!("T({},{})", strands, q.unsigned_abs())
    };

    Ok(BraidClosure { strands, period, permutation, total_rotation: rotation, q, link_label })
}
