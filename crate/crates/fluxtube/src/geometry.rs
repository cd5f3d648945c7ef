//! Basic 3-D vector algebra, cluster configurations and Jacobi coordinates.
//!
//! A four-body configuration is stored as the positions of the two quarks
//! (`v1`, `v2`) followed by the two antiquarks (`v3`, `v4`). The internal
//! Jacobi coordinates are the quark separation `x = v2 - v1`, the antiquark
//! separation `y = v4 - v3` and the vector `z` joining the midpoint of the
//! quark pair to the midpoint of the antiquark pair.

use std::ops::{Add, Div, Mul, Neg, Sub};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Plain Cartesian vector with `f64` components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", from = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    /// Unit vector in the same direction, or `None` for (near-)zero input.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn midpoint(self, other: Vec3) -> Vec3 {
        (self + other) * 0.5
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Positions of the two quarks (`v1`, `v2`) and the two antiquarks
/// (`v3`, `v4`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TetraConfig {
    pub v1: Vec3,
    pub v2: Vec3,
    pub v3: Vec3,
    pub v4: Vec3,
}

/// Internal coordinates of a four-body configuration: quark separation `x`,
/// antiquark separation `y`, midpoint-to-midpoint vector `z`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiCoords {
    pub x: Vec3,
    pub y: Vec3,
    pub z: Vec3,
}

impl TetraConfig {
    /// Builds a configuration, rejecting NaN or infinite coordinates.
    pub fn new(v1: Vec3, v2: Vec3, v3: Vec3, v4: Vec3) -> Result<Self> {
        let cfg = TetraConfig { v1, v2, v3, v4 };
        if !cfg.is_finite() {
            return Err(Error::NonFinite { context: "TetraConfig" });
        }
        Ok(cfg)
    }

    pub fn is_finite(&self) -> bool {
        self.v1.is_finite() && self.v2.is_finite() && self.v3.is_finite() && self.v4.is_finite()
    }

    pub fn points(&self) -> [Vec3; 4] {
        [self.v1, self.v2, self.v3, self.v4]
    }

    /// Largest pairwise distance between the four points.
    pub fn diameter(&self) -> f64 {
        let p = self.points();
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                d = d.max(p[i].distance(p[j]));
            }
        }
        d
    }

    /// Jacobi coordinates of the configuration.
    pub fn jacobi(&self) -> JacobiCoords {
        JacobiCoords {
            x: self.v2 - self.v1,
            y: self.v4 - self.v3,
            z: (self.v3 + self.v4 - self.v1 - self.v2) * 0.5,
        }
    }

    /// Reconstructs the configuration with the stated Jacobi coordinates and
    /// the (equal-weight) centroid at the origin.
    pub fn from_jacobi(jc: &JacobiCoords) -> Self {
        let a = jc.z * -0.5; // quark-pair midpoint
        let b = jc.z * 0.5; // antiquark-pair midpoint
        TetraConfig {
            v1: a - jc.x * 0.5,
            v2: a + jc.x * 0.5,
            v3: b - jc.y * 0.5,
            v4: b + jc.y * 0.5,
        }
    }

    /// Same configuration rescaled so that its diameter is one. Returns the
    /// configuration unchanged when all four points coincide.
    pub fn normalized_to_unit_diameter(&self) -> TetraConfig {
        let d = self.diameter();
        if d <= 0.0 {
            return *self;
        }
        self.scaled(1.0 / d)
    }

    pub fn scaled(&self, s: f64) -> TetraConfig {
        TetraConfig {
            v1: self.v1 * s,
            v2: self.v2 * s,
            v3: self.v3 * s,
            v4: self.v4 * s,
        }
    }

    pub fn translated(&self, t: Vec3) -> TetraConfig {
        TetraConfig {
            v1: self.v1 + t,
            v2: self.v2 + t,
            v3: self.v3 + t,
            v4: self.v4 + t,
        }
    }

    /// Parses a configuration from JSON of the form
    /// `{"v1":[x,y,z],"v2":[...],"v3":[...],"v4":[...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: TetraConfig = serde_json::from_str(text)?;
        if !cfg.is_finite() {
            return Err(Error::NonFinite { context: "TetraConfig JSON" });
        }
        Ok(cfg)
    }
}

/// Jacobi coordinates of four points given directly.
pub fn jacobi(config: &TetraConfig) -> JacobiCoords {
    config.jacobi()
}

/// Draws four points independently and uniformly from the cube
/// `[-scale, scale]^3` using a deterministic ChaCha8 stream.
///
/// Coordinates are consumed in the fixed order v1.x, v1.y, v1.z, v2.x, ...,
/// so a given seed always reproduces the same configuration.
pub fn random_config(seed: u64, scale: f64) -> Result<TetraConfig> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::InvalidScale(scale));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_config(&mut rng, scale))
}

/// Draws one configuration from an existing RNG stream (same coordinate
/// order as [`random_config`]).
pub fn sample_config<R: Rng>(rng: &mut R, scale: f64) -> TetraConfig {
    let point = |rng: &mut R| {
        Vec3::new(
            rng.gen_range(-scale..=scale),
            rng.gen_range(-scale..=scale),
            rng.gen_range(-scale..=scale),
        )
    };
    let v1 = point(rng);
    let v2 = point(rng);
    let v3 = point(rng);
    let v4 = point(rng);
    TetraConfig { v1, v2, v3, v4 }
}

/// Draws configurations until the points are pairwise separated by at least
/// `min_sep` times the diameter; used by benchmarks and sweeps that need
/// non-degenerate geometry.
pub fn sample_nondegenerate<R: Rng>(rng: &mut R, scale: f64, min_sep: f64) -> TetraConfig {
    loop {
        let cfg = sample_config(rng, scale);
        let d = cfg.diameter();
        if d == 0.0 {
            continue;
        }
        let p = cfg.points();
        let mut ok = true;
        'pairs: for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i].distance(p[j]) < min_sep * d {
                    ok = false;
                    break 'pairs;
                }
            }
        }
        if ok {
            return cfg;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64, z: f64) -> Vec3 {
        Vec3::new(x, y, z)
    }

    #[test]
    fn jacobi_of_unit_square() {
        // Quarks on the left edge of the unit square, antiquarks on the right.
        let cfg = TetraConfig {
            v1: v(0.0, 0.0, 0.0),
            v2: v(0.0, 1.0, 0.0),
            v3: v(1.0, 0.0, 0.0),
            v4: v(1.0, 1.0, 0.0),
        };
        let jc = cfg.jacobi();
        assert_eq!(jc.x, v(0.0, 1.0, 0.0));
        assert_eq!(jc.y, v(0.0, 1.0, 0.0));
        assert_eq!(jc.z, v(1.0, 0.0, 0.0));
    }

    #[test]
    fn jacobi_swapping_quarks_flips_x() {
        let cfg = TetraConfig {
            v1: v(0.3, -0.2, 1.1),
            v2: v(-0.4, 0.9, 0.5),
            v3: v(1.0, 0.0, -0.7),
            v4: v(0.1, 0.2, 0.3),
        };
        let swapped = TetraConfig { v1: cfg.v2, v2: cfg.v1, ..cfg };
        let a = cfg.jacobi();
        let b = swapped.jacobi();
        // The summation order inside z differs after the swap, so allow
        // round-off of a few ulps.
        assert!(b.x.distance(-a.x) < 1e-15);
        assert!(b.y.distance(a.y) < 1e-15);
        assert!(b.z.distance(a.z) < 1e-15);
    }

    #[test]
    fn jacobi_round_trip_recenters() {
        let cfg = TetraConfig {
            v1: v(1.0, 2.0, 3.0),
            v2: v(-0.5, 0.25, 1.0),
            v3: v(0.0, -1.0, 2.0),
            v4: v(4.0, 0.5, -2.0),
        };
        let jc = cfg.jacobi();
        let rebuilt = TetraConfig::from_jacobi(&jc);
        // Same internal coordinates...
        let jc2 = rebuilt.jacobi();
        assert!((jc.x - jc2.x).norm() < 1e-15);
        assert!((jc.y - jc2.y).norm() < 1e-15);
        assert!((jc.z - jc2.z).norm() < 1e-15);
        // ...and the centroid sits at the origin.
        let centroid = (rebuilt.v1 + rebuilt.v2 + rebuilt.v3 + rebuilt.v4) * 0.25;
        assert!(centroid.norm() < 1e-15);
    }

    #[test]
    fn random_config_is_deterministic_per_seed() {
        let a = random_config(42, 1.0).unwrap();
        let b = random_config(42, 1.0).unwrap();
        assert_eq!(a, b);
        let c = random_config(43, 1.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn random_config_respects_scale() {
        let cfg = random_config(7, 2.5).unwrap();
        for p in cfg.points() {
            for c in [p.x, p.y, p.z] {
                assert!(c.abs() <= 2.5);
            }
        }
    }

    #[test]
    fn random_config_rejects_bad_scale() {
        assert!(matches!(random_config(1, 0.0), Err(Error::InvalidScale(_))));
        assert!(matches!(random_config(1, -1.0), Err(Error::InvalidScale(_))));
        assert!(matches!(random_config(1, f64::NAN), Err(Error::InvalidScale(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"v1":[0,0,0],"v2":[0,1,0],"v3":[1,0,0],"v4":[1,1,0]}"#;
        let cfg = TetraConfig::from_json(text).unwrap();
        assert_eq!(cfg.v2, v(0.0, 1.0, 0.0));
        let emitted = serde_json::to_string(&cfg).unwrap();
        let back = TetraConfig::from_json(&emitted).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn json_rejects_non_finite() {
        let text = r#"{"v1":[0,0,null],"v2":[0,1,0],"v3":[1,0,0],"v4":[1,1,0]}"#;
        assert!(TetraConfig::from_json(text).is_err());
    }

    #[test]
    fn diameter_of_unit_square_is_diagonal() {
        let cfg = TetraConfig {
            v1: v(0.0, 0.0, 0.0),
            v2: v(0.0, 1.0, 0.0),
            v3: v(1.0, 0.0, 0.0),
            v4: v(1.0, 1.0, 0.0),
        };
        assert!((cfg.diameter() - 2f64.sqrt()).abs() < 1e-15);
        let n = cfg.normalized_to_unit_diameter();
        assert!((n.diameter() - 1.0).abs() < 1e-15);
    }
}
