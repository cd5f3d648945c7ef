//! Planar solver: for coplanar configurations the apex circles meet the
//! configuration plane in the two equilateral-triangle apexes of each
//! terminal pair, so the four candidate apex pairs can be written down in
//! closed form with complex coordinates.
//!
//! Identifying the configuration plane with the complex plane, the apexes
//! over a segment `z1 z2` are `-(j z1 + j^2 z2)` and `-(j^2 z1 + j z2)`
//! with `j = exp(2 pi i / 3)`. The pair maximizing the apex distance is the
//! planar analogue of the maximal stationary point used by the spatial
//! solvers; the junction recovery is shared with them.
//!
//! The construction stays inside the plane: configurations whose maximal
//! stationary apex pair leaves the plane (possible when the terminal
//! segments cross, for instance) simply end up classified as degenerate
//! here, while the spatial solvers can still find the genuine tree.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::geometry::{TetraConfig, Vec3};

use super::{finish_tree, segment_lengths, SteinerKind, SteinerTree};

/// Out-of-plane deviation above this fraction of the diameter disqualifies
/// a configuration from the planar construction.
const PLANARITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct Cx {
    re: f64,
    im: f64,
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

impl Cx {
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Both equilateral apexes over the segment `z1 z2`.
fn apexes(z1: Cx, z2: Cx) -> [Cx; 2] {
    let j = Cx { re: -0.5, im: 3f64.sqrt() / 2.0 };
    let j2 = Cx { re: -0.5, im: -3f64.sqrt() / 2.0 };
    [-(j * z1 + j2 * z2), -(j2 * z1 + j * z2)]
}

/// Orthonormal in-plane basis and unit normal of the configuration plane.
///
/// Collinear configurations are embedded in an arbitrary containing plane.
/// Returns `(origin, e1, e2, normal)`.
fn plane_frame(config: &TetraConfig) -> Result<(Vec3, Vec3, Vec3, Vec3)> {
    let centroid = (config.v1 + config.v2 + config.v3 + config.v4) / 4.0;
    let pts = config.points();
    let mut diffs = Vec::with_capacity(6);
    for i in 0..4 {
        for k in (i + 1)..4 {
            diffs.push(pts[k] - pts[i]);
        }
    }
    let longest = diffs
        .iter()
        .copied()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .unwrap();
    let e1 = longest
        .normalized()
        .ok_or(Error::DegenerateSegment { which: "v1v2" })?;

    let mut best_cross = Vec3::ZERO;
    let mut best_sine = 0.0;
    for d in &diffs {
        let n = d.norm();
        if n == 0.0 {
            continue;
        }
        let cross = e1.cross(*d / n);
        if cross.norm() > best_sine {
            best_sine = cross.norm();
            best_cross = cross;
        }
    }
    let normal = if best_sine > 1e-9 {
        best_cross.normalized().unwrap()
    } else {
        // All terminals collinear: any plane through the line works.
        super::melzak::orthobasis(e1).0
    };
    let e2 = normal.cross(e1);
    Ok((centroid, e1, e2, normal))
}

/// Connected-network length for coplanar configurations via the complex
/// closed form. Succeeds only when the construction yields a genuine
/// two-junction tree; degenerate outcomes are reported as
/// [`Error::NonGenuine`] carrying the formal construction length.
pub fn v4_planar(config: &TetraConfig) -> Result<SteinerTree> {
    segment_lengths(config)?;
    let (origin, e1, e2, normal) = plane_frame(config)?;
    let extent = config.diameter();
    let deviation = config
        .points()
        .iter()
        .map(|p| (*p - origin).dot(normal).abs())
        .fold(0.0f64, f64::max);
    if deviation > PLANARITY_TOLERANCE * extent {
        return Err(Error::NonPlanar { deviation: deviation / extent });
    }

    let project = |p: Vec3| Cx { re: (p - origin).dot(e1), im: (p - origin).dot(e2) };
    let lift = |z: Cx| origin + e1 * z.re + e2 * z.im;

    let quark_apexes = apexes(project(config.v1), project(config.v2));
    let anti_apexes = apexes(project(config.v3), project(config.v4));
    let mut best: Option<(Cx, Cx, f64)> = None;
    for wa in quark_apexes {
        for wb in anti_apexes {
            let d = (wa - wb).abs();
            if best.is_none_or(|(_, _, bd)| d > bd) {
                best = Some((wa, wb, d));
            }
        }
    }
    let (w12, w34, _) = best.unwrap();
    let tree = finish_tree(config, lift(w12), lift(w34));
    if tree.kind == SteinerKind::Genuine {
        Ok(tree)
    } else {
        Err(Error::NonGenuine { length: tree.length })
    }
}
