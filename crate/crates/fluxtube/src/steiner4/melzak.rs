//! Resultant-based solver: the bridge endpoints of the connected network
//! are found by locating stationary points of the distance between the two
//! apex circles.
//!
//! For a terminal pair `(a, b)` the apex of an equilateral triangle erected
//! on the segment `ab` sweeps a circle: center at the midpoint, radius
//! `(sqrt(3)/2) |ab|`, axis along `ab`. A straightened five-edge network has
//! total length equal to the distance between one apex point per circle, and
//! the admissible tree corresponds to the maximal stationary point of that
//! distance. Parametrizing the circles by angles `(theta, phi)`, the squared
//! distance is
//!
//! ```text
//! D = c0 + a1 cos(th) + a2 sin(th) + b1 cos(ph) + b2 sin(ph)
//!        + m11 cos(th)cos(ph) + m12 cos(th)sin(ph)
//!        + m21 sin(th)cos(ph) + m22 sin(th)sin(ph)
//! ```
//!
//! Both stationarity conditions are linear in `(cos th, sin th)` with
//! coefficients linear in `(cos ph, sin ph)`. The tan-half-angle
//! substitution turns them into two quadratics in `t = tan(th/2)` whose
//! resultant — a degree-8 polynomial in `u = tan(ph/2)` — must vanish.
//! Scanning the compactified real line (including `u = infinity`, i.e.
//! `ph = pi`) for its real roots, recovering `th` from the shared quadratic
//! root, and polishing with a two-dimensional Newton iteration yields the
//! complete stationary set.
//!
//! Coaxial circles make the distance depend only on the angle difference,
//! so the resultant vanishes identically; that case is handled by an exact
//! closed form.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geometry::{TetraConfig, Vec3};

use super::{finish_tree, segment_lengths, SteinerTree};

/// Number of scan nodes over half a period of the root-counting function.
const SCAN_NODES: usize = 256;

/// Final stationarity requirement on the scale-normalized squared-distance
/// gradient.
const RESIDUAL_TOLERANCE: f64 = 1e-9;

/// Stationary angle pairs closer than this (radians, per coordinate) are
/// considered the same point.
const DEDUPE_TOLERANCE: f64 = 1e-6;

/// Circle swept by the equilateral-triangle apexes over a terminal pair.
#[derive(Debug, Clone, Copy)]
pub struct MelzakCircle {
    center: Vec3,
    axis: Vec3,
    radius: f64,
    u: Vec3,
    w: Vec3,
}

impl MelzakCircle {
    /// Circle with the given center, axis direction (any nonzero length) and
    /// positive radius.
    pub fn new(center: Vec3, axis: Vec3, radius: f64) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::NonFinite { context: "MelzakCircle center" });
        }
        if !radius.is_finite() || radius <= 0.0 {
            return Err(Error::InvalidScale(radius));
        }
        let axis = axis.normalized().ok_or(Error::DegenerateNormal)?;
        let (u, w) = orthobasis(axis);
        Ok(MelzakCircle { center, axis, radius, u, w })
    }

    /// Apex circle of the terminal pair `(a, b)`; `which` labels the pair in
    /// the degenerate-segment error.
    pub fn from_pair(a: Vec3, b: Vec3, which: &'static str) -> Result<Self> {
        let seg = b - a;
        let len = seg.norm();
        if !len.is_finite() || len == 0.0 {
            return Err(Error::DegenerateSegment { which });
        }
        Self::new(a.midpoint(b), seg, 3f64.sqrt() / 2.0 * len)
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    /// Unit normal of the circle plane.
    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// The fixed orthonormal basis `(u, w)` of the circle plane used by
    /// [`Self::point`].
    pub fn basis(&self) -> (Vec3, Vec3) {
        (self.u, self.w)
    }

    /// Point at the given angle: `center + radius (u cos + w sin)`.
    pub fn point(&self, angle: f64) -> Vec3 {
        let (s, c) = angle.sin_cos();
        self.center + (self.u * c + self.w * s) * self.radius
    }
}

/// Deterministic orthonormal basis of the plane normal to `axis` (unit).
pub(crate) fn orthobasis(axis: Vec3) -> (Vec3, Vec3) {
    let (ax, ay, az) = (axis.x.abs(), axis.y.abs(), axis.z.abs());
    let seed = if ax <= ay && ax <= az {
        Vec3::new(1.0, 0.0, 0.0)
    } else if ay <= az {
        Vec3::new(0.0, 1.0, 0.0)
    } else {
        Vec3::new(0.0, 0.0, 1.0)
    };
    let u = (seed - axis * seed.dot(axis))
        .normalized()
        .expect("least-aligned coordinate axis cannot be parallel to the circle axis");
    (u, axis.cross(u))
}

/// One stationary pair of circle angles and the corresponding distance.
#[derive(Debug, Clone, Copy)]
pub struct StationaryPoint {
    /// Angle on the first circle, in `[0, 2 pi)`.
    pub theta: f64,
    /// Angle on the second circle, in `[0, 2 pi)`.
    pub phi: f64,
    /// Distance between the two circle points.
    pub distance: f64,
}

/// Geometry the polynomial solver worked with, for inspection and testing.
#[derive(Debug, Clone, Copy)]
pub struct MelzakData {
    /// Apex circle over the quark pair.
    pub c12: MelzakCircle,
    /// Apex circle over the antiquark pair.
    pub c34: MelzakCircle,
    /// Selected apex point on `c12`.
    pub w12: Vec3,
    /// Selected apex point on `c34`.
    pub w34: Vec3,
}

/// Squared distance between points of two circles as a function on the
/// torus, with coefficients normalized by the overall length scale.
struct TorusDistance {
    c0: f64,
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
    m11: f64,
    m12: f64,
    m21: f64,
    m22: f64,
    /// Length scale divided out of all coordinates.
    scale: f64,
}

impl TorusDistance {
    fn new(a: &MelzakCircle, b: &MelzakCircle) -> Self {
        let scale = (a.center - b.center).norm() + a.radius + b.radius;
        let delta = (a.center - b.center) / scale;
        let r1 = a.radius / scale;
        let r2 = b.radius / scale;
        let (u1, w1) = a.basis();
        let (u2, w2) = b.basis();
        TorusDistance {
            c0: delta.norm_squared() + r1 * r1 + r2 * r2,
            a1: 2.0 * r1 * delta.dot(u1),
            a2: 2.0 * r1 * delta.dot(w1),
            b1: -2.0 * r2 * delta.dot(u2),
            b2: -2.0 * r2 * delta.dot(w2),
            m11: -2.0 * r1 * r2 * u1.dot(u2),
            m12: -2.0 * r1 * r2 * u1.dot(w2),
            m21: -2.0 * r1 * r2 * w1.dot(u2),
            m22: -2.0 * r1 * r2 * w1.dot(w2),
            scale,
        }
    }

    /// Normalized squared distance.
    fn value(&self, theta: f64, phi: f64) -> f64 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        self.c0
            + self.a1 * ct
            + self.a2 * st
            + self.b1 * cp
            + self.b2 * sp
            + self.m11 * ct * cp
            + self.m12 * ct * sp
            + self.m21 * st * cp
            + self.m22 * st * sp
    }

    fn grad(&self, theta: f64, phi: f64) -> (f64, f64) {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let alpha = self.a2 + self.m21 * cp + self.m22 * sp;
        let beta = -(self.a1 + self.m11 * cp + self.m12 * sp);
        let big_e = self.b1 + self.m11 * ct + self.m21 * st;
        let big_c = self.b2 + self.m12 * ct + self.m22 * st;
        (alpha * ct + beta * st, big_c * cp - big_e * sp)
    }

    fn hessian(&self, theta: f64, phi: f64) -> (f64, f64, f64) {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let alpha = self.a2 + self.m21 * cp + self.m22 * sp;
        let beta = -(self.a1 + self.m11 * cp + self.m12 * sp);
        let big_e = self.b1 + self.m11 * ct + self.m21 * st;
        let big_c = self.b2 + self.m12 * ct + self.m22 * st;
        let htt = -alpha * st + beta * ct;
        let hpp = -big_e * cp - big_c * sp;
        let htp = ct * (self.m22 * cp - self.m21 * sp) + st * (self.m11 * sp - self.m12 * cp);
        (htt, htp, hpp)
    }

    /// Physical distance at the given angles.
    fn distance(&self, theta: f64, phi: f64) -> f64 {
        self.scale * self.value(theta, phi).max(0.0).sqrt()
    }
}

/// Linear form `k + c cos(ph) + s sin(ph)`.
#[derive(Clone, Copy)]
struct Lin {
    k: f64,
    c: f64,
    s: f64,
}

impl Lin {
    fn eval(&self, cp: f64, sp: f64) -> f64 {
        self.k + self.c * cp + self.s * sp
    }

    /// Numerator polynomial in `u = tan(ph/2)` after clearing `(1 + u^2)`.
    fn upoly(&self) -> [f64; 3] {
        [self.k + self.c, 2.0 * self.s, self.k - self.c]
    }
}

/// Tan-half-angle quadratic coefficients `(delta, eta, eps)` of both
/// stationarity conditions, as linear forms in `(cos ph, sin ph)`:
/// the condition `alpha cos th + beta sin th + gamma = 0` becomes
/// `(gamma - alpha) t^2 + 2 beta t + (gamma + alpha) = 0` for `t = tan(th/2)`.
fn half_angle_quadratics(d: &TorusDistance) -> [Lin; 6] {
    let d1 = Lin { k: -d.a2, c: -d.m21, s: -d.m22 };
    let h1 = Lin { k: -2.0 * d.a1, c: -2.0 * d.m11, s: -2.0 * d.m12 };
    let e1 = Lin { k: d.a2, c: d.m21, s: d.m22 };
    let d2 = Lin { k: 0.0, c: d.b2 - d.m12, s: d.m11 - d.b1 };
    let h2 = Lin { k: 0.0, c: 2.0 * d.m22, s: -2.0 * d.m21 };
    let e2 = Lin { k: 0.0, c: d.b2 + d.m12, s: -d.b1 - d.m11 };
    [d1, h1, e1, d2, h2, e2]
}

fn conv3(a: [f64; 3], b: [f64; 3]) -> [f64; 5] {
    let mut out = [0.0; 5];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn conv5(a: [f64; 5], b: [f64; 5]) -> [f64; 9] {
    let mut out = [0.0; 9];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn sub<const N: usize>(a: [f64; N], b: [f64; N]) -> [f64; N] {
    let mut out = a;
    for (o, x) in out.iter_mut().zip(b) {
        *o -= x;
    }
    out
}

/// Degree-8 resultant (in `u = tan(ph/2)`) of the two half-angle quadratics.
fn resultant_coeffs(d: &TorusDistance) -> [f64; 9] {
    let [d1, h1, e1, d2, h2, e2] = half_angle_quadratics(d);
    let wdh = sub(conv3(d1.upoly(), h2.upoly()), conv3(d2.upoly(), h1.upoly()));
    let whe = sub(conv3(h1.upoly(), e2.upoly()), conv3(h2.upoly(), e1.upoly()));
    let wde = sub(conv3(d1.upoly(), e2.upoly()), conv3(d2.upoly(), e1.upoly()));
    sub(conv5(wdh, whe), conv5(wde, wde))
}

/// Homogenized resultant `R(psi) = sum_k c_k sin^k(psi) cos^(8-k)(psi)`,
/// the numerator of the resultant at `u = tan(psi)`. It is pi-periodic and
/// finite everywhere, including the compactification point `u = infinity`
/// at `psi = pi/2`.
fn eval_homogeneous(coeffs: &[f64; 9], psi: f64) -> f64 {
    let (s, c) = psi.sin_cos();
    let mut sp = 1.0;
    let mut acc = 0.0;
    let mut cp = [0.0; 9];
    cp[0] = 1.0;
    for k in 1..9 {
        cp[k] = cp[k - 1] * c;
    }
    for (k, ck) in coeffs.iter().enumerate() {
        acc += ck * sp * cp[8 - k];
        sp *= s;
    }
    acc
}

fn bisect_root(coeffs: &[f64; 9], mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let sign_lo = flo > 0.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-14 {
            return mid;
        }
        let fm = eval_homogeneous(coeffs, mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Real roots of `a t^2 + b t + c` (with graceful degeneration to the
/// linear case), using the numerically stable split.
fn real_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let m = a.abs().max(b.abs()).max(c.abs());
    if m == 0.0 {
        return Vec::new();
    }
    let (a, b, c) = (a / m, b / m, c / m);
    if a.abs() < 1e-12 {
        if b.abs() < 1e-12 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc > -1e-12 {
            return vec![-b / (2.0 * a)];
        }
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = vec![q / a];
    if q.abs() > 1e-300 {
        roots.push(c / q);
    } else {
        roots.push(0.0);
    }
    roots
}

fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(TAU);
    if w == TAU {
        0.0
    } else {
        w
    }
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Newton refinement toward a stationary point of the torus distance.
/// Returns the polished angles only if the gradient ends below the
/// stationarity tolerance.
fn polish(d: &TorusDistance, mut theta: f64, mut phi: f64) -> Option<(f64, f64)> {
    for _ in 0..80 {
        let (gt, gp) = d.grad(theta, phi);
        if gt.abs().max(gp.abs()) < 1e-14 {
            break;
        }
        let (htt, htp, hpp) = d.hessian(theta, phi);
        let det = htt * hpp - htp * htp;
        let hscale = htt.abs().max(htp.abs()).max(hpp.abs()).max(1e-300);
        if det.abs() < 1e-12 * hscale * hscale {
            break;
        }
        let mut dt = -(gt * hpp - gp * htp) / det;
        let mut dp = -(gp * htt - gt * htp) / det;
        let step = dt.abs().max(dp.abs());
        if step > 0.5 {
            dt *= 0.5 / step;
            dp *= 0.5 / step;
        }
        theta += dt;
        phi += dp;
        if step < 1e-15 {
            break;
        }
    }
    let (gt, gp) = d.grad(theta, phi);
    if gt.abs().max(gp.abs()) < RESIDUAL_TOLERANCE {
        Some((wrap_angle(theta), wrap_angle(phi)))
    } else {
        None
    }
}

/// Candidate `theta` values at a fixed `phi`: the shared quadratic root via
/// both resultant cofactor ratios, the point at infinity when both leading
/// coefficients vanish, and all individual quadratic roots as a fallback.
fn theta_candidates(quads: &[Lin; 6], cp: f64, sp: f64) -> Vec<f64> {
    let [d1, h1, e1, d2, h2, e2] = quads.map(|l| l.eval(cp, sp));
    let wdh = d1 * h2 - d2 * h1;
    let whe = h1 * e2 - h2 * e1;
    let wde = d1 * e2 - d2 * e1;
    let mut out = Vec::with_capacity(7);
    if wdh.abs() > 1e-12 {
        out.push(2.0 * (-wde / wdh).atan());
    }
    if wde.abs() > 1e-12 {
        out.push(2.0 * (-whe / wde).atan());
    }
    if d1.abs() < 1e-9 && d2.abs() < 1e-9 {
        out.push(PI);
    }
    for t in real_quadratic_roots(d1, h1, e1) {
        out.push(2.0 * t.atan());
    }
    for t in real_quadratic_roots(d2, h2, e2) {
        out.push(2.0 * t.atan());
    }
    out
}

/// Exact stationary set for coaxial circles, where the distance depends
/// only on the angle difference. The stationary set is then two whole
/// one-parameter families (radial directions aligned or anti-aligned); one
/// representative per family is returned, at `theta = 0`.
fn coaxial_stationary(a: &MelzakCircle, b: &MelzakCircle) -> Result<Vec<StationaryPoint>> {
    let delta = a.center - b.center;
    let scale = delta.norm() + a.radius + b.radius;
    let parallel = a.axis.cross(b.axis).norm() <= 1e-6;
    let radial_offset = delta - a.axis * a.axis.dot(delta);
    if !parallel || radial_offset.norm() > 1e-6 * scale {
        return Err(Error::RootFindingFailure(
            "stationarity resultant vanished identically for circles that are not coaxial",
        ));
    }
    let gap2 = delta.norm_squared();
    let (u1, _) = a.basis();
    let (u2, w2) = b.basis();
    let phi_aligned = u1.dot(w2).atan2(u1.dot(u2));
    let near = (gap2 + (a.radius - b.radius).powi(2)).sqrt();
    let far = (gap2 + (a.radius + b.radius).powi(2)).sqrt();
    let mut points = vec![
        StationaryPoint { theta: 0.0, phi: wrap_angle(phi_aligned), distance: near },
        StationaryPoint { theta: 0.0, phi: wrap_angle(phi_aligned + PI), distance: far },
    ];
    points.sort_by(|p, q| p.distance.total_cmp(&q.distance));
    Ok(points)
}

/// All stationary points of the distance between two circles, sorted by
/// ascending distance.
///
/// The maximal entry realizes the largest circle-to-circle distance; for
/// apex circles of a tetraquark configuration it selects the Melzak points
/// of the connected network.
pub fn stationary_points(a: &MelzakCircle, b: &MelzakCircle) -> Result<Vec<StationaryPoint>> {
    let td = TorusDistance::new(a, b);
    let coeffs = resultant_coeffs(&td);
    let scale_r: f64 = coeffs.iter().map(|c| c.abs()).sum();
    if scale_r < 1e-10 {
        return coaxial_stationary(a, b);
    }

    // Scan the half-period in psi = ph/2. Three kinds of root candidates:
    // exact zeros at nodes, sign-change brackets, and local minima of |R|
    // small enough to hide a tangential (double) root between nodes.
    let step = PI / SCAN_NODES as f64;
    let mut vals = [0.0; SCAN_NODES + 1];
    for (i, v) in vals.iter_mut().enumerate() {
        *v = eval_homogeneous(&coeffs, i as f64 * step);
    }
    let zero_tol = 1e-13 * scale_r;
    let dip_tol = 2e-3 * scale_r;
    let mut psi_roots: Vec<f64> = Vec::new();
    for i in 0..SCAN_NODES {
        if vals[i].abs() <= zero_tol {
            psi_roots.push(i as f64 * step);
            continue;
        }
        if vals[i + 1].abs() > zero_tol && vals[i] * vals[i + 1] < 0.0 {
            psi_roots.push(bisect_root(&coeffs, i as f64 * step, (i + 1) as f64 * step, vals[i]));
        }
        let prev = vals[(i + SCAN_NODES - 1) % SCAN_NODES].abs();
        let next = vals[(i + 1) % SCAN_NODES].abs();
        let here = vals[i].abs();
        if here <= dip_tol && here <= prev && here <= next {
            psi_roots.push(i as f64 * step);
        }
    }
    psi_roots.sort_by(f64::total_cmp);
    psi_roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);

    let quads = half_angle_quadratics(&td);
    let mut found: Vec<(f64, f64)> = Vec::new();
    for &psi in &psi_roots {
        let phi = 2.0 * psi;
        let (sp, cp) = phi.sin_cos();
        for theta in theta_candidates(&quads, cp, sp) {
            let Some((t, p)) = polish(&td, theta, phi) else {
                continue;
            };
            let duplicate = found
                .iter()
                .any(|&(ft, fp)| angle_distance(ft, t) < DEDUPE_TOLERANCE && angle_distance(fp, p) < DEDUPE_TOLERANCE);
            if !duplicate {
                found.push((t, p));
            }
        }
    }
    if found.is_empty() {
        return Err(Error::RootFindingFailure("no stationary point survived Newton refinement"));
    }

    let mut out: Vec<StationaryPoint> = found
        .into_iter()
        .map(|(theta, phi)| StationaryPoint { theta, phi, distance: td.distance(theta, phi) })
        .collect();
    out.sort_by(|p, q| {
        p.distance
            .total_cmp(&q.distance)
            .then(p.theta.total_cmp(&q.theta))
            .then(p.phi.total_cmp(&q.phi))
    });
    Ok(out)
}

/// Connected-network length via the resultant solver, together with the
/// circle geometry it selected.
pub(crate) fn v4_polynomial_with_data(config: &TetraConfig) -> Result<(SteinerTree, MelzakData)> {
    segment_lengths(config)?;
    let c12 = MelzakCircle::from_pair(config.v1, config.v2, "v1v2")?;
    let c34 = MelzakCircle::from_pair(config.v3, config.v4, "v3v4")?;
    let points = stationary_points(&c12, &c34)?;
    let best = points
        .last()
        .ok_or(Error::RootFindingFailure("empty stationary set"))?;
    let w12 = c12.point(best.theta);
    let w34 = c34.point(best.phi);
    let tree = finish_tree(config, w12, w34);
    Ok((tree, MelzakData { c12, c34, w12, w34 }))
}
