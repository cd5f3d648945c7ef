//! Y-shaped string networks for three quarks.
//!
//! The confinement potential of a baryon is the minimal total length of
//! three strings joining the quarks to a common junction. For a triangle
//! whose angles are all below 120 degrees the junction is the interior
//! Fermat point, seen from which every side subtends 120 degrees; when some
//! angle reaches 120 degrees the junction collapses onto that vertex and the
//! network degenerates to the two adjacent sides.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Vec3;

/// Angular slack (radians) below 120 degrees at which the junction is
/// treated as collapsed onto a vertex.
pub const COLLAPSE_TOLERANCE: f64 = 1e-9;

const TWO_THIRDS_PI: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// Triangle described by its vertices together with derived side lengths and
/// interior angles. Side `sides[i]` is opposite vertex `i`, and `angles[i]`
/// is the interior angle at vertex `i` (radians).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Triangle {
    pub v1: Vec3,
    pub v2: Vec3,
    pub v3: Vec3,
    pub sides: [f64; 3],
    pub angles: [f64; 3],
}

impl Triangle {
    /// Builds the triangle spanned by three points. Degenerate (collinear or
    /// coincident) points are admitted; the affected angles are reported as
    /// their limiting values.
    pub fn from_points(v1: Vec3, v2: Vec3, v3: Vec3) -> Triangle {
        let a1 = v2.distance(v3);
        let a2 = v1.distance(v3);
        let a3 = v1.distance(v2);
        let angles = [
            vertex_angle(v1, v2, v3),
            vertex_angle(v2, v3, v1),
            vertex_angle(v3, v1, v2),
        ];
        Triangle { v1, v2, v3, sides: [a1, a2, a3], angles }
    }

    pub fn vertices(&self) -> [Vec3; 3] {
        [self.v1, self.v2, self.v3]
    }
}

/// Interior angle at `at`, spanned by the directions towards `b` and `c`.
/// Returns 0 when `at` coincides with one of the other points.
fn vertex_angle(at: Vec3, b: Vec3, c: Vec3) -> f64 {
    let u = b - at;
    let w = c - at;
    let nu = u.norm();
    let nw = w.norm();
    if nu == 0.0 || nw == 0.0 {
        return 0.0;
    }
    (u.dot(w) / (nu * nw)).clamp(-1.0, 1.0).acos()
}

/// Which branch produced a junction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FermatBranch {
    /// All angles below 120 degrees; the junction is interior.
    Interior,
    /// The angle at vertex `i` (0-based: 0 ↔ v1) reaches 120 degrees and the
    /// junction sits on that vertex.
    CollapsedToVertex(usize),
}

/// Junction point of the minimal Y network together with its legs.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct FermatResult {
    /// Junction position.
    pub junction: Vec3,
    /// Distances from the junction to v1, v2, v3.
    pub legs: [f64; 3],
    /// Total network length (the three-quark potential).
    pub total: f64,
    pub branch: FermatBranch,
}

/// Minimal total length of three segments joining `v1`, `v2`, `v3` to a
/// common point, i.e. the three-quark confinement potential.
///
/// This is a total function: coincident or collinear points return their
/// limiting networks (for collinear points the junction is the middle
/// point).
pub fn fermat_point(v1: Vec3, v2: Vec3, v3: Vec3) -> FermatResult {
    let vs = [v1, v2, v3];

    // Coincident pairs first: the junction sits on the repeated point.
    for i in 0..3 {
        for j in (i + 1)..3 {
            if vs[i] == vs[j] {
                return collapsed(vs, i);
            }
        }
    }

    let tri = Triangle::from_points(v1, v2, v3);
    for i in 0..3 {
        if tri.angles[i] >= TWO_THIRDS_PI - COLLAPSE_TOLERANCE {
            return collapsed(vs, i);
        }
    }

    // Interior branch: barycentric weights a_i / sin(alpha_i + 60 deg) of the
    // first isogonic point. Every sine is positive here because all angles
    // lie strictly inside (0, 120) degrees.
    let mut weights = [0.0; 3];
    for (w, (&side, &angle)) in weights.iter_mut().zip(tri.sides.iter().zip(&tri.angles)) {
        *w = side / (angle + std::f64::consts::FRAC_PI_3).sin();
    }
    let sum: f64 = weights.iter().sum();
    let junction = (weights[0] * v1 + weights[1] * v2 + weights[2] * v3) / sum;
    let legs = [junction.distance(v1), junction.distance(v2), junction.distance(v3)];
    FermatResult {
        junction,
        legs,
        total: legs.iter().sum(),
        branch: FermatBranch::Interior,
    }
}

fn collapsed(vs: [Vec3; 3], i: usize) -> FermatResult {
    let junction = vs[i];
    let legs = [junction.distance(vs[0]), junction.distance(vs[1]), junction.distance(vs[2])];
    FermatResult {
        junction,
        legs,
        total: legs.iter().sum(),
        branch: FermatBranch::CollapsedToVertex(i),
    }
}

/// Three-quark potential from the side lengths alone. On the interior
/// branch (all angles < 120 degrees):
///
/// V3^2 = [a1^2 + a2^2 + a3^2
///         + sqrt(3 (a1+a2+a3)(-a1+a2+a3)(a1-a2+a3)(a1+a2-a3))] / 2
///
/// The product under the square root is 16 times the squared Heron area, so
/// the second term is 4*sqrt(3) times the triangle area. When the angle
/// opposite the largest side c reaches 120 degrees (c^2 >= a^2 + a b + b^2),
/// the junction collapses onto that vertex and V3 = a + b; the two branches
/// join continuously. Degenerate (collinear) side triples are admitted and
/// reproduce the collapsed limit; triples violating the triangle inequality
/// are rejected.
pub fn v3_closed_form(a1: f64, a2: f64, a3: f64) -> Result<f64> {
    if !(a1.is_finite() && a2.is_finite() && a3.is_finite()) || a1 < 0.0 || a2 < 0.0 || a3 < 0.0 {
        return Err(Error::NonFinite { context: "v3_closed_form" });
    }
    let heron = (a1 + a2 + a3) * (-a1 + a2 + a3) * (a1 - a2 + a3) * (a1 + a2 - a3);
    if heron < -1e-12 * (a1 + a2 + a3).powi(4).max(f64::MIN_POSITIVE) {
        return Err(Error::TriangleInequality { a1, a2, a3 });
    }
    let mut s = [a1, a2, a3];
    s.sort_by(f64::total_cmp);
    let [a, b, c] = s;
    if c * c >= a * a + a * b + b * b {
        // Wide-angle branch: the junction sits on the vertex opposite c.
        return Ok(a + b);
    }
    let sum_sq = a1 * a1 + a2 * a2 + a3 * a3;
    Ok(((sum_sq + (3.0 * heron.max(0.0)).sqrt()) * 0.5).sqrt())
}

/// The two apexes of equilateral triangles erected on both sides of the
/// segment `v1 v2`, inside the plane through the segment with normal
/// `plane_normal`.
///
/// Returned in the order (`m + d`, `m - d`) where `m` is the segment
/// midpoint and `d = (sqrt(3)/2) |v1 v2|` points along
/// `normalize(plane_normal × (v2 - v1))`.
pub fn napoleon_points(v1: Vec3, v2: Vec3, plane_normal: Vec3) -> Result<(Vec3, Vec3)> {
    let seg = v2 - v1;
    if seg.norm() == 0.0 {
        return Err(Error::CoincidentPoints { context: "napoleon_points" });
    }
    let perp = plane_normal.cross(seg);
    let dir = match perp.normalized() {
        Some(d) => d,
        None => return Err(Error::DegenerateNormal),
    };
    // Guard against a normal almost parallel to the segment, which would
    // leave the construction plane ill-conditioned.
    let nn = plane_normal.norm();
    if nn == 0.0 || perp.norm() < 1e-12 * nn * seg.norm() {
        return Err(Error::DegenerateNormal);
    }
    let m = v1.midpoint(v2);
    let offset = dir * (3f64.sqrt() / 2.0 * seg.norm());
    Ok((m + offset, m - offset))
}
