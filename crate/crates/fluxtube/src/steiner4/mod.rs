//! String networks for two quarks and two antiquarks.
//!
//! The tetraquark confinement potential is
//!
//! ```text
//! U = min( d13 + d24,  d14 + d23,  V4 )
//! ```
//!
//! where the first two terms are the "flip-flop" pairings into two mesons
//! and `V4` is the minimal length of a connected network with two junctions:
//! quarks tied to `s1`, antiquarks tied to `s2`, and a bridge `s1 s2`.
//!
//! Three solvers compute `V4` through the Melzak circle construction
//! ([`v4_spatial_iterative`], [`v4_spatial_rubinstein`],
//! [`v4_spatial_polynomial`]); they are fast and exact when a genuine
//! two-junction tree exists, and report a degenerate kind otherwise. The
//! multistart descent [`v4_bruteforce`] minimizes the five-edge length
//! directly and serves as ground truth in every case.

mod bruteforce;
mod iterative;
mod melzak;
mod planar;
mod rubinstein;

pub use bruteforce::v4_bruteforce;
pub use iterative::v4_spatial_iterative;
pub use melzak::{
    stationary_points, MelzakCircle, MelzakData, StationaryPoint,
};
pub use planar::v4_planar;
pub use rubinstein::v4_spatial_rubinstein;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{TetraConfig, Vec3};

/// Junction angles may deviate from 120 degrees by this much (radians) and
/// still count as a genuine Steiner topology.
pub const GENUINE_ANGLE_TOLERANCE: f64 = 1e-6;

/// Junctions closer than this fraction of the configuration diameter are
/// treated as merged.
pub const MERGE_TOLERANCE: f64 = 1e-9;

const TWO_THIRDS_PI: f64 = 2.0 * std::f64::consts::FRAC_PI_3;

/// Topology of a computed four-terminal network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SteinerKind {
    /// Two distinct junctions, every edge meeting at 120 degrees.
    Genuine,
    /// Degenerate network with at most one free junction: the junctions
    /// merge into a single point (then `length` is the 4-leg star total) or
    /// one of them collapses onto a terminal.
    SingleJunction,
    /// The recovered junctions do not form an admissible tree (typically
    /// they come out interchanged along the Melzak line). `length` is the
    /// distance between the two selected apex points — the straightened-path
    /// value of the construction — which is always a lower bound on the true
    /// `V4`. Whenever both junctions lie between the apex points it equals
    /// the formal combination
    /// `|v1 s1| + |v2 s1| - |s1 s2| + |v3 s2| + |v4 s2|`.
    FormalNegativeEdge,
}

/// A two-junction string network (possibly degenerate, see [`SteinerKind`]).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SteinerTree {
    /// Junction tied to the quarks `v1`, `v2`.
    pub s1: Vec3,
    /// Junction tied to the antiquarks `v3`, `v4`.
    pub s2: Vec3,
    /// Network length; its exact meaning per topology is documented on
    /// [`SteinerKind`].
    pub length: f64,
    pub kind: SteinerKind,
}

impl SteinerTree {
    /// Sum of the five edges `v1 s1`, `v2 s1`, `s1 s2`, `s2 v3`, `s2 v4`.
    pub fn five_leg_length(&self, config: &TetraConfig) -> f64 {
        config.v1.distance(self.s1)
            + config.v2.distance(self.s1)
            + self.s1.distance(self.s2)
            + self.s2.distance(config.v3)
            + self.s2.distance(config.v4)
    }
}

/// Which of the three competing networks realizes the potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    /// Meson pairing (v1 v3) + (v2 v4).
    FlipFlopA,
    /// Meson pairing (v1 v4) + (v2 v3).
    FlipFlopB,
    /// Connected two-junction network.
    Connected,
}

/// Full evaluation of the tetraquark potential.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PotentialBreakdown {
    /// Flip-flop length d13 + d24.
    pub ff13_24: f64,
    /// Flip-flop length d14 + d23.
    pub ff14_23: f64,
    /// Connected-network length.
    pub v4: f64,
    /// `min(ff13_24, ff14_23, v4)`.
    pub u: f64,
    pub winner: Winner,
}

/// The two flip-flop lengths `(d13 + d24, d14 + d23)`.
pub fn flip_flop(config: &TetraConfig) -> (f64, f64) {
    (
        config.v1.distance(config.v3) + config.v2.distance(config.v4),
        config.v1.distance(config.v4) + config.v2.distance(config.v3),
    )
}

/// Tetraquark potential `U = min(flip-flops, V4)`.
///
/// `V4` comes from the iterative solver, falling back to the Rubinstein and
/// polynomial solvers and finally to the multistart descent whenever a
/// faster solver fails to produce a genuine two-junction tree.
pub fn u_potential(config: &TetraConfig) -> PotentialBreakdown {
    breakdown(config, v4_via_chain(config))
}

/// Tetraquark potential with `V4` taken from one specific solver.
///
/// Unlike [`u_potential`], an explicitly requested Melzak solver is trusted
/// as-is: for degenerate configurations the reported `v4` is then its
/// construction length rather than the true connected minimum.
pub fn u_potential_with_solver(config: &TetraConfig, solver: SolverChoice) -> Result<PotentialBreakdown> {
    let v4 = match solver {
        SolverChoice::Iterative => v4_spatial_iterative(config)?.length,
        SolverChoice::Rubinstein => v4_spatial_rubinstein(config)?.length,
        SolverChoice::Polynomial => v4_spatial_polynomial(config)?.length,
        SolverChoice::BruteForce => v4_bruteforce(config).length,
    };
    Ok(breakdown(config, v4))
}

/// Selector for [`u_potential_with_solver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverChoice {
    Iterative,
    Rubinstein,
    Polynomial,
    BruteForce,
}

fn breakdown(config: &TetraConfig, v4: f64) -> PotentialBreakdown {
    let (ff13_24, ff14_23) = flip_flop(config);
    let (u, winner) = if ff13_24 <= ff14_23 && ff13_24 <= v4 {
        (ff13_24, Winner::FlipFlopA)
    } else if ff14_23 <= v4 {
        (ff14_23, Winner::FlipFlopB)
    } else {
        (v4, Winner::Connected)
    };
    PotentialBreakdown { ff13_24, ff14_23, v4, u, winner }
}

/// True connected-network length: fast solvers first, descent as the
/// authoritative fallback. Only a `Genuine` result from a Melzak solver is
/// trusted, because for degenerate configurations those constructions yield
/// a formal lower bound instead of the admissible minimum.
pub(crate) fn v4_via_chain(config: &TetraConfig) -> f64 {
    if let Ok(tree) = v4_spatial_iterative(config) {
        if tree.kind == SteinerKind::Genuine {
            return tree.length;
        }
    }
    if let Ok(tree) = v4_spatial_rubinstein(config) {
        if tree.kind == SteinerKind::Genuine {
            return tree.length;
        }
    }
    if let Ok(tree) = v4_spatial_polynomial(config) {
        if tree.kind == SteinerKind::Genuine {
            return tree.length;
        }
    }
    v4_bruteforce(config).length
}

/// Connected-network length via the polynomial (resultant) solver.
pub fn v4_spatial_polynomial(config: &TetraConfig) -> Result<SteinerTree> {
    melzak::v4_polynomial_with_data(config).map(|(tree, _)| tree)
}

/// Polynomial solver variant that also exposes the selected Melzak points.
pub fn v4_polynomial_with_data(config: &TetraConfig) -> Result<(SteinerTree, MelzakData)> {
    melzak::v4_polynomial_with_data(config)
}

/// True of three unit directions pairwise separated by 120 degrees within
/// `tol`; degenerate (zero-length) edges fail.
fn junction_is_steiner(s: Vec3, neighbors: [Vec3; 3], scale: f64, tol: f64) -> bool {
    let mut dirs = [Vec3::ZERO; 3];
    for (d, n) in dirs.iter_mut().zip(neighbors) {
        let e = n - s;
        let len = e.norm();
        if len < 1e-12 * scale {
            return false;
        }
        *d = e / len;
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            let angle = dirs[i].dot(dirs[j]).clamp(-1.0, 1.0).acos();
            if (angle - TWO_THIRDS_PI).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Classifies a junction pair produced by a direct minimization (junctions
/// anywhere in space, length = admissible network length).
pub(crate) fn classify_free_junctions(config: &TetraConfig, s1: Vec3, s2: Vec3) -> SteinerTree {
    let scale = config.diameter().max(f64::MIN_POSITIVE);
    if s1.distance(s2) <= MERGE_TOLERANCE * scale {
        let s = s1.midpoint(s2);
        let length = star_length(config, s);
        return SteinerTree { s1: s, s2: s, length, kind: SteinerKind::SingleJunction };
    }
    let genuine = junction_is_steiner(s1, [config.v1, config.v2, s2], scale, GENUINE_ANGLE_TOLERANCE)
        && junction_is_steiner(s2, [config.v3, config.v4, s1], scale, GENUINE_ANGLE_TOLERANCE);
    let tree = SteinerTree { s1, s2, length: 0.0, kind: SteinerKind::Genuine };
    let length = tree.five_leg_length(config);
    if genuine {
        SteinerTree { s1, s2, length, kind: SteinerKind::Genuine }
    } else {
        // Distinct junctions without the full 120-degree structure: one of
        // them has collapsed onto a terminal. The network is still
        // admissible, so keep its exact length.
        SteinerTree { s1, s2, length, kind: SteinerKind::SingleJunction }
    }
}

fn star_length(config: &TetraConfig, s: Vec3) -> f64 {
    config.v1.distance(s) + config.v2.distance(s) + config.v3.distance(s) + config.v4.distance(s)
}

/// Recovers the junction pair from a pair of Melzak points and classifies
/// the resulting network.
///
/// Each junction is the second intersection of the line `w12 w34` with the
/// circumcircle erected over the corresponding terminal pair (the circle
/// through `v1`, `v2`, `w12` has its center at the equilateral-triangle
/// centroid). Seen from any point of the far arc of that circle, the chord
/// subtends 120 degrees, which is exactly the junction condition.
pub(crate) fn finish_tree(config: &TetraConfig, w12: Vec3, w34: Vec3) -> SteinerTree {
    let scale = config.diameter().max(f64::MIN_POSITIVE);
    let line = w34 - w12;
    let len = line.norm();
    if len < 1e-12 * scale {
        // Both Melzak points coincide; the whole construction collapses.
        let s = w12.midpoint(w34);
        return SteinerTree { s1: s, s2: s, length: star_length(config, s), kind: SteinerKind::SingleJunction };
    }
    let dir = line / len;

    // Second circle intersections: a line through a point of a circle of
    // center c meets it again after a parameter step -2 dir.(w - c).
    let c12 = (config.v1 + config.v2 + w12) / 3.0;
    let t1 = -2.0 * dir.dot(w12 - c12);
    let s1 = w12 + dir * t1;

    let c34 = (config.v3 + config.v4 + w34) / 3.0;
    let t2 = 2.0 * dir.dot(w34 - c34);
    let s2 = w34 - dir * t2;

    let pos1 = t1;
    let pos2 = len - t2;
    let delta = pos2 - pos1;

    if delta.abs() <= MERGE_TOLERANCE * scale {
        let s = s1.midpoint(s2);
        let length = star_length(config, s);
        return SteinerTree { s1: s, s2: s, length, kind: SteinerKind::SingleJunction };
    }

    let genuine = delta > 0.0
        && junction_is_steiner(s1, [config.v1, config.v2, s2], scale, GENUINE_ANGLE_TOLERANCE)
        && junction_is_steiner(s2, [config.v3, config.v4, s1], scale, GENUINE_ANGLE_TOLERANCE);
    if genuine {
        let length = config.v1.distance(s1)
            + config.v2.distance(s1)
            + s1.distance(s2)
            + s2.distance(config.v3)
            + s2.distance(config.v4);
        SteinerTree { s1, s2, length, kind: SteinerKind::Genuine }
    } else {
        // Report the apex-to-apex distance: it is the straightened-path value
        // of the construction and a certified lower bound on V4, whereas the
        // five-leg sum through misplaced junctions can exceed V4.
        SteinerTree { s1, s2, length: len, kind: SteinerKind::FormalNegativeEdge }
    }
}

/// Validates the quark and antiquark separations, returning them on success.
pub(crate) fn segment_lengths(config: &TetraConfig) -> Result<(f64, f64)> {
    if !config.is_finite() {
        return Err(Error::NonFinite { context: "TetraConfig" });
    }
    let d12 = config.v1.distance(config.v2);
    if d12 == 0.0 {
        return Err(Error::DegenerateSegment { which: "v1v2" });
    }
    let d34 = config.v3.distance(config.v4);
    if d34 == 0.0 {
        return Err(Error::DegenerateSegment { which: "v3v4" });
    }
    Ok((d12, d34))
}
