//! Spectral machinery for the four-body flux-tube system.
//!
//! Everything here reduces to one building block: the ground state of a
//! particle in a linear radial potential, `-u'' + r u = e0 u`, whose lowest
//! eigenvalue `e0 ≈ 2.3381` is the negative of the first Airy-function zero.
//! It is computed by shooting ([`airy_e0`]) rather than taken from a table,
//! so the constant is verified independently.
//!
//! On top of that sit closed-form energy levels for the system of two heavy
//! quarks (mass `M`) and two light antiquarks (mass 1) tied together by
//! strings of unit tension:
//!
//! * [`bound_e_prime`] — upper bound obtained by replacing the connection
//!   potential with the sum of the three Jacobi-coordinate string lengths
//!   (junctions pinned at pair midpoints). The Hamiltonian separates into
//!   three independent linear-potential problems.
//! * [`bound_e_double_prime`] — sharper upper bound from the two-junction
//!   tree inequality: the `x` and `y` strings enter with effective tension
//!   `√3/2`, which lowers their share by `(3/4)^(1/3)`.
//! * [`threshold`] — energy of two separated heavy-light mesons, the
//!   dissociation threshold the bound states compete against.
//!
//! The four-body state is certainly stable once `bound_e_double_prime`
//! drops below `threshold`; [`crossover_mass`] locates that mass ratio
//! (near 6400). [`bound_curve`] tabulates all three energies on a log grid
//! for plotting, and [`write_curve_csv`] emits the table as CSV.

use std::io::Write;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Discretization knobs for the radial shooting solver.
///
/// The defaults put the outer boundary at `r = 15` natural lengths: the
/// ground state decays like `exp(-(2/3) r^(3/2))`, so the truncation error
/// at 15 is many orders of magnitude below the `1e-10` bisection tolerance.
#[derive(Debug, Clone, Copy)]
pub struct ShootingParams {
    /// Outer boundary in units of the natural length `(alpha/beta)^(1/3)`.
    pub r_max: f64,
    /// Number of fixed Runge-Kutta steps between 0 and `r_max`.
    pub steps: usize,
    /// Bisection width target in units of the natural energy
    /// `alpha^(1/3) beta^(2/3)`.
    pub tolerance: f64,
}

impl Default for ShootingParams {
    fn default() -> Self {
        Self { r_max: 15.0, steps: 30_000, tolerance: 1e-10 }
    }
}

/// Lowest eigenvalue of `-alpha u'' + beta r u = E u` on `r >= 0` with
/// `u(0) = 0`, computed by shooting with default [`ShootingParams`].
///
/// By scaling, the exact answer is `alpha^(1/3) beta^(2/3)` times the
/// constant returned by [`airy_e0`]; solving at the given parameters instead
/// of rescaling keeps the solver itself under test.
pub fn linear_ground_state(alpha: f64, beta: f64) -> Result<f64> {
    shoot_ground_state(ShootingParams::default(), alpha, beta, 0.0)
}

/// Lowest eigenvalue of `-alpha u'' + (beta r + offset) u = E u`.
///
/// Shifting the potential by a constant shifts every eigenvalue by the same
/// constant; exposing the offset lets callers check that property against
/// the solver directly.
pub fn offset_linear_ground_state(alpha: f64, beta: f64, offset: f64) -> Result<f64> {
    shoot_ground_state(ShootingParams::default(), alpha, beta, offset)
}

/// [`linear_ground_state`] with explicit discretization parameters.
pub fn linear_ground_state_with(params: ShootingParams, alpha: f64, beta: f64) -> Result<f64> {
    shoot_ground_state(params, alpha, beta, 0.0)
}

/// Ground-state constant `e0` of `-u'' + r u = e u`: the negative of the
/// first Airy-function zero, `2.33810741...`. Computed once by shooting and
/// cached.
pub fn airy_e0() -> f64 {
    static E0: OnceLock<f64> = OnceLock::new();
    *E0.get_or_init(|| {
        linear_ground_state(1.0, 1.0)
            .expect("the fixed bracket [2, 3] straddles the lowest eigenvalue")
    })
}

fn shoot_ground_state(params: ShootingParams, alpha: f64, beta: f64, offset: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidScale(alpha));
    }
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidScale(beta));
    }
    if !offset.is_finite() {
        return Err(Error::NonFinite { context: "potential offset" });
    }
    let params_valid = params.steps >= 2
        && params.r_max.is_finite()
        && params.r_max > 0.0
        && params.tolerance.is_finite()
        && params.tolerance > 0.0;
    if !params_valid {
        return Err(Error::InvalidScale(params.r_max));
    }

    // Natural units of the problem: length (alpha/beta)^(1/3), energy
    // alpha^(1/3) beta^(2/3). The lowest eigenvalue sits at ~2.34 energy
    // units above the offset, safely inside [2, 3].
    let energy_unit = alpha.cbrt() * (beta * beta).cbrt();
    let r_end = params.r_max * (alpha / beta).cbrt();

    let mut lo = 2.0 * energy_unit + offset;
    let mut hi = 3.0 * energy_unit + offset;
    let f_lo = shoot_endpoint(params.steps, alpha, beta, offset, r_end, lo);
    let f_hi = shoot_endpoint(params.steps, alpha, beta, offset, r_end, hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::BracketFailure { lo, hi });
    }

    let width_target = params.tolerance * energy_unit;
    for _ in 0..200 {
        if hi - lo <= width_target {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let f_mid = shoot_endpoint(params.steps, alpha, beta, offset, r_end, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Integrates `u'' = ((beta r + offset - energy) / alpha) u` from
/// `u(0) = 0, u'(0) = 1` with fixed-step RK4 and returns `u(r_end)` up to a
/// positive rescaling (only the sign matters to the bisection).
fn shoot_endpoint(
    steps: usize,
    alpha: f64,
    beta: f64,
    offset: f64,
    r_end: f64,
    energy: f64,
) -> f64 {
    const RENORM: f64 = 1e250;
    let h = r_end / steps as f64;
    let rate = |r: f64, u: f64| (beta * r + offset - energy) / alpha * u;

    let mut u = 0.0f64;
    let mut v = 1.0f64;
    for i in 0..steps {
        let r = i as f64 * h;
        let (k1u, k1v) = (v, rate(r, u));
        let (k2u, k2v) = (v + 0.5 * h * k1v, rate(r + 0.5 * h, u + 0.5 * h * k1u));
        let (k3u, k3v) = (v + 0.5 * h * k2v, rate(r + 0.5 * h, u + 0.5 * h * k2u));
        let (k4u, k4v) = (v + h * k3v, rate(r + h, u + h * k3u));
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        // The classically forbidden tail grows exponentially; rescale to
        // keep the integration inside f64 range without touching the sign.
        if u.abs() > RENORM || v.abs() > RENORM {
            u /= RENORM;
            v /= RENORM;
        }
    }
    u
}

/// Heavy-to-light mass ratio `M` and the derived heavy-light reduced mass
/// `mu = M / (1 + M)` (light mass set to 1 by scaling).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassParams {
    m: f64,
    mu: f64,
}

impl MassParams {
    /// Validates the ratio; `mu` then lands in `(0, 1)` by construction.
    pub fn new(ratio: f64) -> Result<Self> {
        if !(ratio.is_finite() && ratio > 0.0) {
            return Err(Error::InvalidMass(ratio));
        }
        Ok(Self { m: ratio, mu: ratio / (1.0 + ratio) })
    }

    /// The heavy-to-light mass ratio `M`.
    pub fn ratio(&self) -> f64 {
        self.m
    }

    /// Reduced mass of one heavy-light pair, `M / (1 + M)`.
    pub fn reduced(&self) -> f64 {
        self.mu
    }
}

/// Midpoint-tree upper bound on the four-body ground energy:
/// `e0 * (M^(-1/3) + 1 + (4 mu)^(-1/3))`.
///
/// Pinning the junctions at the pair midpoints bounds the connection
/// potential by `|x| + |y| + |z|`, and the Hamiltonian splits into three
/// independent linear-potential problems (reduced masses `M/2`, `1/2`, and
/// `2 mu` for the `x`, `y`, `z` motions).
pub fn bound_e_prime(mass_ratio: f64) -> Result<f64> {
    bound_e_prime_with_light_mass(mass_ratio, 1.0)
}

/// Two-junction-tree upper bound on the four-body ground energy:
/// `e0 * ((3/4)^(1/3) (M^(-1/3) + 1) + (4 mu)^(-1/3))`.
///
/// The connection potential never exceeds `(sqrt(3)/2)(|x| + |y|) + |z|`,
/// so the `x` and `y` strings carry effective tension `sqrt(3)/2`; energies
/// scale with tension to the power 2/3, giving the `(3/4)^(1/3)` factor.
pub fn bound_e_double_prime(mass_ratio: f64) -> Result<f64> {
    bound_e_double_prime_with_light_mass(mass_ratio, 1.0)
}

/// Dissociation threshold: twice the heavy-light meson ground energy,
/// `2 e0 (2 mu)^(-1/3)`.
pub fn threshold(mass_ratio: f64) -> Result<f64> {
    threshold_with_light_mass(mass_ratio, 1.0)
}

/// [`bound_e_prime`] with an explicit light-quark mass instead of 1.
///
/// All masses scale inversely cubed-rooted into the energy, so doubling
/// both masses multiplies every level by `2^(-1/3)` while leaving all
/// level crossings in place.
pub fn bound_e_prime_with_light_mass(mass_ratio: f64, light_mass: f64) -> Result<f64> {
    let (p, light) = checked_masses(mass_ratio, light_mass)?;
    let heavy = p.ratio() * light;
    Ok(airy_e0() * (heavy.cbrt().recip() + light.cbrt().recip() + pair_term(p, light)))
}

/// [`bound_e_double_prime`] with an explicit light-quark mass instead of 1.
pub fn bound_e_double_prime_with_light_mass(mass_ratio: f64, light_mass: f64) -> Result<f64> {
    let (p, light) = checked_masses(mass_ratio, light_mass)?;
    let heavy = p.ratio() * light;
    let soft = 0.75f64.cbrt() * (heavy.cbrt().recip() + light.cbrt().recip());
    Ok(airy_e0() * (soft + pair_term(p, light)))
}

/// [`threshold`] with an explicit light-quark mass instead of 1.
pub fn threshold_with_light_mass(mass_ratio: f64, light_mass: f64) -> Result<f64> {
    let (p, light) = checked_masses(mass_ratio, light_mass)?;
    Ok(2.0 * airy_e0() / (2.0 * light * p.reduced()).cbrt())
}

fn checked_masses(mass_ratio: f64, light_mass: f64) -> Result<(MassParams, f64)> {
    let p = MassParams::new(mass_ratio)?;
    if !(light_mass.is_finite() && light_mass > 0.0) {
        return Err(Error::InvalidMass(light_mass));
    }
    Ok((p, light_mass))
}

/// Relative-motion term `(4 mu m_light)^(-1/3)` shared by both bounds.
fn pair_term(p: MassParams, light_mass: f64) -> f64 {
    (4.0 * light_mass * p.reduced()).cbrt().recip()
}

/// Mass ratio at which the sharper upper bound crosses the two-meson
/// threshold, i.e. the point past which the four-body system is certainly
/// stable. Bisection on `log M` over `[1e2, 1e6]` to relative width 1e-8.
///
/// The bracket failing to straddle a sign change indicates a bug in the
/// bound formulas, not bad input, hence the error.
pub fn crossover_mass() -> Result<f64> {
    crossover_mass_with_light_mass(1.0)
}

/// [`crossover_mass`] with an explicit light-quark mass. The crossing point
/// is a ratio of equally-rescaled energies, so it must not depend on the
/// light mass.
pub fn crossover_mass_with_light_mass(light_mass: f64) -> Result<f64> {
    let gap = |ln_m: f64| -> Result<f64> {
        let m = ln_m.exp();
        Ok(bound_e_double_prime_with_light_mass(m, light_mass)?
            - threshold_with_light_mass(m, light_mass)?)
    };
    let mut lo = 1e2f64.ln();
    let mut hi = 1e6f64.ln();
    let g_lo = gap(lo)?;
    let g_hi = gap(hi)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::BracketFailure { lo: lo.exp(), hi: hi.exp() });
    }
    for _ in 0..200 {
        if hi - lo <= 1e-8 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if gap(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi)).exp())
}

/// One row of the stability plot: the three energies at mass ratio `m`,
/// all divided by `e0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCurvePoint {
    /// Heavy-to-light mass ratio.
    pub m: f64,
    /// Midpoint-tree bound over `e0`.
    pub e_prime: f64,
    /// Two-junction-tree bound over `e0`.
    pub e_double_prime: f64,
    /// Two-meson threshold over `e0`.
    pub e_threshold: f64,
}

/// Tabulates the three energies (in units of `e0`) on a log-spaced mass
/// grid with exact endpoints.
pub fn bound_curve(m_min: f64, m_max: f64, n_points: usize) -> Result<Vec<BoundCurvePoint>> {
    if !(m_min.is_finite() && m_max.is_finite() && m_min > 0.0 && m_min < m_max) || n_points < 2 {
        return Err(Error::InvalidRange { min: m_min, max: m_max, points: n_points });
    }
    let e0 = airy_e0();
    let ln_min = m_min.ln();
    let ln_max = m_max.ln();
    (0..n_points)
        .into_par_iter()
        .map(|i| {
            let m = if i == 0 {
                m_min
            } else if i == n_points - 1 {
                m_max
            } else {
                let t = i as f64 / (n_points - 1) as f64;
                (ln_min + t * (ln_max - ln_min)).exp()
            };
            Ok(BoundCurvePoint {
                m,
                e_prime: bound_e_prime(m)? / e0,
                e_double_prime: bound_e_double_prime(m)? / e0,
                e_threshold: threshold(m)? / e0,
            })
        })
        .collect()
}

/// Writes a bound curve as CSV with the fixed header
/// `M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0`.
pub fn write_curve_csv<W: Write + ?Sized>(out: &mut W, points: &[BoundCurvePoint]) -> Result<()> {
    writeln!(out, "M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0")?;
    for p in points {
        writeln!(out, "{},{},{},{}", p.m, p.e_prime, p.e_double_prime, p.e_threshold)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn airy_constant_matches_first_airy_zero() {
        let e0 = airy_e0();
        assert!((2.33810..=2.33811).contains(&e0), "e0 = {e0}");
    }

    #[test]
    fn constant_potential_offset_shifts_the_level() {
        let shifted = offset_linear_ground_state(1.0, 1.0, 0.7).unwrap();
        assert!((shifted - (airy_e0() + 0.7)).abs() < 1e-8, "shifted = {shifted}");
        let lowered = offset_linear_ground_state(1.0, 1.0, -1.5).unwrap();
        assert!((lowered - (airy_e0() - 1.5)).abs() < 1e-8, "lowered = {lowered}");
    }

    #[test]
    fn scaled_operator_follows_the_cube_root_law() {
        let direct = linear_ground_state(2.0, 3.0).unwrap();
        let scaled = 2f64.cbrt() * 9f64.cbrt() * airy_e0();
        assert!(
            (direct - scaled).abs() < 1e-8 * scaled,
            "direct {direct} vs scaled {scaled}"
        );
        let direct = linear_ground_state(1.0, 8.0).unwrap();
        assert!((direct - 4.0 * airy_e0()).abs() < 1e-7, "direct {direct}");
    }

    #[test]
    fn shooting_rejects_bad_coefficients() {
        assert!(matches!(linear_ground_state(0.0, 1.0), Err(Error::InvalidScale(_))));
        assert!(matches!(linear_ground_state(1.0, -2.0), Err(Error::InvalidScale(_))));
        assert!(matches!(linear_ground_state(f64::NAN, 1.0), Err(Error::InvalidScale(_))));
        assert!(matches!(
            offset_linear_ground_state(1.0, 1.0, f64::INFINITY),
            Err(Error::NonFinite { .. })
        ));
    }

    #[test]
    fn reduced_mass_has_documented_range() {
        assert!((MassParams::new(1.0).unwrap().reduced() - 0.5).abs() < 1e-15);
        assert!((MassParams::new(1e15).unwrap().reduced() - 1.0).abs() < 1e-14);
        for &m in &[1e-3, 0.1, 1.0, 42.0, 1e6] {
            let mu = MassParams::new(m).unwrap().reduced();
            assert!(mu > 0.0 && mu < 1.0, "mu({m}) = {mu}");
        }
        assert!(matches!(MassParams::new(0.0), Err(Error::InvalidMass(_))));
        assert!(matches!(MassParams::new(-1.0), Err(Error::InvalidMass(_))));
        assert!(matches!(MassParams::new(f64::NAN), Err(Error::InvalidMass(_))));
    }

    #[test]
    fn equal_mass_levels_match_hand_computation() {
        let e0 = airy_e0();
        // M = 1: mu = 1/2, so the relative-motion factor is 2^(-1/3).
        assert!((bound_e_prime(1.0).unwrap() / e0 - 2.7937005).abs() < 1e-6);
        assert!((bound_e_double_prime(1.0).unwrap() / e0 - 2.6108211).abs() < 1e-6);
        assert!((threshold(1.0).unwrap() - 2.0 * e0).abs() < 1e-12);
    }

    #[test]
    fn heavy_mass_limit_matches_hand_computation() {
        let e0 = airy_e0();
        let m = 1e30;
        assert!((bound_e_prime(m).unwrap() / e0 - 1.6299605).abs() < 1e-6);
        assert!((bound_e_double_prime(m).unwrap() / e0 - 1.5385208).abs() < 1e-6);
        assert!((threshold(m).unwrap() / e0 - 1.5874011).abs() < 1e-6);
    }

    #[test]
    fn bounds_reject_nonpositive_mass() {
        assert!(matches!(bound_e_prime(0.0), Err(Error::InvalidMass(_))));
        assert!(matches!(bound_e_double_prime(-3.0), Err(Error::InvalidMass(_))));
        assert!(matches!(threshold(f64::NAN), Err(Error::InvalidMass(_))));
        assert!(matches!(
            bound_e_prime_with_light_mass(1.0, 0.0),
            Err(Error::InvalidMass(_))
        ));
    }

    /// Log grid over the whole tested mass range.
    fn mass_grid() -> Vec<f64> {
        let (lo, hi) = (1e-3f64.ln(), 1e6f64.ln());
        (0..400).map(|i| (lo + (hi - lo) * i as f64 / 399.0).exp()).collect()
    }

    #[test]
    fn level_ordering_holds_across_the_mass_range() {
        for m in mass_grid() {
            let prime = bound_e_prime(m).unwrap();
            let double = bound_e_double_prime(m).unwrap();
            let th = threshold(m).unwrap();
            assert!(double < prime, "ordering failed at M = {m}");
            assert!(prime > th, "midpoint bound dipped below threshold at M = {m}");
        }
    }

    #[test]
    fn all_levels_decrease_with_mass_ratio() {
        let grid = mass_grid();
        for pair in grid.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            assert!(bound_e_prime(b).unwrap() < bound_e_prime(a).unwrap());
            assert!(bound_e_double_prime(b).unwrap() < bound_e_double_prime(a).unwrap());
            assert!(threshold(b).unwrap() < threshold(a).unwrap());
        }
    }

    #[test]
    fn crossover_sits_in_the_expected_window() {
        let m_star = crossover_mass().unwrap();
        assert!((6350.0..=6450.0).contains(&m_star), "M* = {m_star}");
        // Just past the crossover the sharper bound certifies stability.
        let above = m_star * 1.01;
        assert!(bound_e_double_prime(above).unwrap() < threshold(above).unwrap());
        let below = m_star / 1.01;
        assert!(bound_e_double_prime(below).unwrap() > threshold(below).unwrap());
    }

    #[test]
    fn doubling_both_masses_rescales_levels_by_cube_root_of_half() {
        let factor = 0.5f64.cbrt();
        for &m in &[0.3, 1.0, 17.0, 6402.0] {
            let scaled = bound_e_prime_with_light_mass(m, 2.0).unwrap();
            assert!((scaled - factor * bound_e_prime(m).unwrap()).abs() < 1e-12);
            let scaled = bound_e_double_prime_with_light_mass(m, 2.0).unwrap();
            assert!((scaled - factor * bound_e_double_prime(m).unwrap()).abs() < 1e-12);
            let scaled = threshold_with_light_mass(m, 2.0).unwrap();
            assert!((scaled - factor * threshold(m).unwrap()).abs() < 1e-12);
        }
        let m_star = crossover_mass().unwrap();
        let m_star_scaled = crossover_mass_with_light_mass(2.0).unwrap();
        assert!(
            (m_star_scaled - m_star).abs() < 1e-6 * m_star,
            "{m_star_scaled} vs {m_star}"
        );
    }

    #[test]
    fn curve_spans_the_range_and_crosses_once() {
        let curve = bound_curve(1e2, 1e6, 200).unwrap();
        assert_eq!(curve.len(), 200);
        assert_eq!(curve[0].m, 1e2);
        assert_eq!(curve[199].m, 1e6);
        let e0 = airy_e0();
        assert!((curve[0].e_prime - bound_e_prime(1e2).unwrap() / e0).abs() < 1e-15);
        assert!((curve[199].e_threshold - threshold(1e6).unwrap() / e0).abs() < 1e-15);
        let mut sign_changes = 0;
        for pair in curve.windows(2) {
            assert!(pair[0].e_double_prime < pair[0].e_prime);
            let a = pair[0].e_double_prime - pair[0].e_threshold;
            let b = pair[1].e_double_prime - pair[1].e_threshold;
            if a.signum() != b.signum() {
                sign_changes += 1;
            }
        }
        assert_eq!(sign_changes, 1, "the sharper bound must cross threshold exactly once");
    }

    #[test]
    fn curve_rejects_bad_ranges() {
        assert!(matches!(bound_curve(0.0, 10.0, 5), Err(Error::InvalidRange { .. })));
        assert!(matches!(bound_curve(-1.0, 10.0, 5), Err(Error::InvalidRange { .. })));
        assert!(matches!(bound_curve(10.0, 10.0, 5), Err(Error::InvalidRange { .. })));
        assert!(matches!(bound_curve(20.0, 10.0, 5), Err(Error::InvalidRange { .. })));
        assert!(matches!(bound_curve(1.0, 10.0, 1), Err(Error::InvalidRange { .. })));
        assert!(matches!(bound_curve(1.0, f64::NAN, 5), Err(Error::InvalidRange { .. })));
    }

    #[test]
    fn csv_has_fixed_header_and_one_row_per_point() {
        let curve = bound_curve(1.0, 100.0, 4).unwrap();
        let mut buffer = Vec::new();
        write_curve_csv(&mut buffer, &curve).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("1,"), "first row: {}", lines[1]);
        let last: Vec<f64> = lines[4].split(',').map(|t| t.parse().unwrap()).collect();
        assert_eq!(last[0], 100.0);
        assert!(last[2] < last[1], "columns out of order: {}", lines[4]);
    }
}
