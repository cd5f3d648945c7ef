//! Empirical certification of the connection-potential inequalities.
//!
//! The analytic energy bounds in [`crate::spectrum`] rest on pointwise
//! comparisons of the tetraquark potential `U` with separable surrogates:
//!
//! * the pair-apex bound `U <= (sqrt(3)/2)(|x| + |y|) + |z|`
//!   ([`u_upper_bound`]). Whenever the optimal connected network is a
//!   genuine two-junction tree its length equals the farthest distance
//!   between the two pair circles, which the triangle inequality caps at
//!   `|z|` plus the two radii — exactly this bound. It is *not* universal,
//!   though: shrink one pair to a near-point placed between the other
//!   pair's endpoints and every admissible network (both flip-flops and the
//!   connected tree, whose junctions collapse there) must run two nearly
//!   antipodal strings, beating the bound's `sqrt(3)/2` rate for the long
//!   pair. [`find_u_bound_violation`] reproduces that corner explicitly.
//! * the midpoint chain `U <= V4 <= |x| + |y| + |z|`
//!   ([`midpoint_upper_bound`]): junctions pinned at the two pair midpoints
//!   are always admissible, so this holds for every configuration.
//!
//! The sharper bound also fails for the connected length *alone* on
//! elongated rectangles — `V4 > B` while the flip-flop minimum rescues
//! `U <= B` — and [`find_v4_bound_violation`] reproduces that family.
//!
//! [`certify_u_bound`] and [`certify_midpoint_bound`] sweep seeded uniform
//! random configurations plus adversarial families placed where the bounds
//! are provably valid yet tightest: elongated and near-tangency rectangles,
//! double clusters, and near-collinear and coplanar quartets with
//! comparable pair lengths. Clean sweeps report zero violations, with the
//! worst margin attained on the near-planar, near-symmetric tight families.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{sample_config, TetraConfig, Vec3};
use crate::steiner4::{flip_flop, u_potential, v4_bruteforce};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Margin below which a sample counts as a violation. Configurations are
/// normalized to unit diameter first, so this is an absolute tolerance that
/// absorbs solver round-off without hiding a genuine counterexample.
pub const VIOLATION_TOLERANCE: f64 = 1e-9;

/// Two-junction-tree upper bound `(sqrt(3)/2)(|x| + |y|) + |z|` on `U`.
///
/// Attained exactly by genuine trees whose pair circles are antipodally
/// aligned (for instance rectangles with both pairs perpendicular to the
/// pair-to-pair offset), and an upper bound on `U` whenever the optimal
/// connected network is genuine. Strongly pair-asymmetric configurations
/// with the short pair inside the long pair's junction-collapse zone
/// exceed it — see [`find_u_bound_violation`].
pub fn u_upper_bound(config: &TetraConfig) -> f64 {
    let jc = config.jacobi();
    0.75f64.sqrt() * (jc.x.norm() + jc.y.norm()) + jc.z.norm()
}

/// Midpoint-junction upper bound `|x| + |y| + |z|` on the connected length
/// `V4` (junctions pinned at the two pair midpoints).
pub fn midpoint_upper_bound(config: &TetraConfig) -> f64 {
    let jc = config.jacobi();
    jc.x.norm() + jc.y.norm() + jc.z.norm()
}

/// Outcome of one certification sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    /// Number of configurations evaluated.
    pub samples: usize,
    /// Samples whose margin fell below `-`[`VIOLATION_TOLERANCE`].
    pub violations: usize,
    /// Smallest `bound - potential` margin seen (signed; negative would be
    /// a violation candidate).
    pub worst_margin: f64,
    /// The configuration attaining `worst_margin`, unit-diameter normalized.
    pub worst_config: TetraConfig,
    /// Seed the sweep was generated from.
    pub seed: u64,
}

/// Sweeps `n` adversarial plus `n` random configurations and certifies
/// `U <= (sqrt(3)/2)(|x| + |y|) + |z|` on every one of them.
///
/// The adversarial families (enumerated first, so a regression failure
/// points at a stable index) are elongated rectangles with aspect ratios
/// log-spaced in `[1, 1000]`, near-degenerate configurations (double
/// clusters, near-collinear quartets, near-tangency rectangles), and
/// coplanar configurations. The degenerate families keep the two pair
/// lengths comparable: that is where the bound is simultaneously valid and
/// tight, whereas strongly pair-asymmetric collapse leaves its domain of
/// validity altogether ([`find_u_bound_violation`]).
pub fn certify_u_bound(n: usize, seed: u64) -> Result<InequalityReport> {
    sweep(n, seed, |config| u_upper_bound(config) - u_potential(config).u)
}

/// Sweeps the same families as [`certify_u_bound`] and certifies the chain
/// `U <= V4 <= |x| + |y| + |z|`; the reported margin is the smaller of the
/// two gaps.
pub fn certify_midpoint_bound(n: usize, seed: u64) -> Result<InequalityReport> {
    sweep(n, seed, |config| {
        let breakdown = u_potential(config);
        let upper = midpoint_upper_bound(config) - breakdown.v4;
        let lower = breakdown.v4 - breakdown.u;
        upper.min(lower)
    })
}

/// Searches elongated rectangles for a configuration where the connected
/// length alone breaks the two-junction-tree bound, `V4 > B`, while the full
/// potential still obeys it, `U <= B` (the flip-flop pairing wins there).
///
/// Such configurations always exist — long thin rectangles have
/// `V4 ~ |x| + |y|` which outgrows `B ~ (sqrt(3)/2)(|x| + |y|)` — so coming
/// up empty signals a bug and returns [`Error::NoViolationFound`].
pub fn find_v4_bound_violation(seed: u64) -> Result<TetraConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..128 {
        let aspect = 10f64.powf(f64::log10(2.0) + (3.0 - f64::log10(2.0)) * i as f64 / 127.0);
        // Small seeded jitter keeps the family generic without disturbing
        // the elongated-rectangle mechanism.
        let mut jitter = || rng.gen_range(-1e-3..1e-3) * aspect;
        let config = TetraConfig {
            v1: Vec3::new(jitter(), jitter(), jitter()),
            v2: Vec3::new(aspect + jitter(), jitter(), jitter()),
            v3: Vec3::new(jitter(), 1.0 + jitter(), jitter()),
            v4: Vec3::new(aspect + jitter(), 1.0 + jitter(), jitter()),
        };
        let norm = config.normalized_to_unit_diameter();
        // Re-evaluate with the descent oracle, not the construction used to
        // motivate the family.
        let v4 = v4_bruteforce(&norm).length;
        let bound = u_upper_bound(&norm);
        let (fa, fb) = flip_flop(&norm);
        let u = fa.min(fb).min(v4);
        if v4 - bound > 0.1 && u <= bound + VIOLATION_TOLERANCE {
            return Ok(norm);
        }
    }
    Err(Error::NoViolationFound)
}

/// Searches the pair-collapse corner for a configuration whose *full*
/// potential exceeds the sharper bound `(sqrt(3)/2)(|x| + |y|) + |z|`:
/// one pair shrunk to a near-point sitting between the other pair's
/// endpoints. There the three-terminal junction collapses onto the small
/// cluster, so the connected network and both flip-flop pairings all run
/// two nearly antipodal strings of combined length close to the long pair
/// separation, while the bound only budgets `sqrt(3)/2` per unit of it.
///
/// The limiting family is fully explicit: endpoints at `(0,0,0)` and
/// `(1,0,0)` with the other pair coincident at `(1/2, h, 0)` give
/// `U = 2*sqrt(1/4 + h^2)` against a bound of `sqrt(3)/2 + h`, and the
/// squared comparison reduces to `3*(h - 1/(2*sqrt(3)))^2 > 0`: every
/// height below the tangency `h = 1/(2*sqrt(3))` violates the bound, by
/// `1 - sqrt(3)/2 ≈ 0.134` at `h = 0`. The certification sweeps therefore
/// probe tightness on pair-symmetric families instead, where the bound is
/// provable; this finder documents the corner they deliberately exclude.
///
/// The returned configuration is unit-diameter normalized and re-verified
/// through [`u_potential`]; failure to find one within the attempt budget
/// signals a solver bug via [`Error::NoViolationFound`].
pub fn find_u_bound_violation(seed: u64) -> Result<TetraConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let height = rng.gen_range(0.02..0.12);
        let cluster_size = 10f64.powf(rng.gen_range(-6.0..-3.0));
        let center = Vec3::new(rng.gen_range(0.42..0.58), height, 0.0);
        let spread = random_unit(&mut rng) * (cluster_size / 2.0);
        let config = TetraConfig {
            v1: Vec3::ZERO,
            v2: Vec3::new(1.0, 0.0, 0.0),
            v3: center - spread,
            v4: center + spread,
        }
        .normalized_to_unit_diameter();
        if u_potential(&config).u - u_upper_bound(&config) > 0.01 {
            return Ok(config);
        }
    }
    Err(Error::NoViolationFound)
}

/// Margin accumulator: violation count plus the (margin, index) minimum.
/// Merging is associative and picks the lower index on exact ties, so the
/// result does not depend on how rayon partitions the range.
#[derive(Clone, Copy)]
struct SweepStats {
    violations: usize,
    worst_margin: f64,
    worst_index: usize,
}

impl SweepStats {
    const EMPTY: SweepStats =
        SweepStats { violations: 0, worst_margin: f64::INFINITY, worst_index: usize::MAX };

    fn merge(self, other: SweepStats) -> SweepStats {
        let worse = (other.worst_margin, other.worst_index) < (self.worst_margin, self.worst_index);
        SweepStats {
            violations: self.violations + other.violations,
            worst_margin: if worse { other.worst_margin } else { self.worst_margin },
            worst_index: if worse { other.worst_index } else { self.worst_index },
        }
    }
}

fn sweep(n: usize, seed: u64, margin: impl Fn(&TetraConfig) -> f64 + Sync) -> Result<InequalityReport> {
    if n == 0 {
        return Err(Error::InvalidRange { min: 1.0, max: f64::INFINITY, points: 0 });
    }
    let total = 2 * n;
    let stats = (0..total)
        .into_par_iter()
        .map(|i| {
            let m = margin(&sweep_config(seed, i, n));
            SweepStats {
                violations: usize::from(m < -VIOLATION_TOLERANCE),
                worst_margin: m,
                worst_index: i,
            }
        })
        .reduce(|| SweepStats::EMPTY, SweepStats::merge);
    Ok(InequalityReport {
        samples: total,
        violations: stats.violations,
        worst_margin: stats.worst_margin,
        worst_config: sweep_config(seed, stats.worst_index, n),
        seed,
    })
}

/// Deterministic sample `i` of the sweep: adversarial families for
/// `i < n_adversarial`, uniform random cubes afterwards. Every sample is
/// unit-diameter normalized.
fn sweep_config(seed: u64, i: usize, n_adversarial: usize) -> TetraConfig {
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    let config = if i < n_adversarial {
        match i % 3 {
            0 => {
                let frac = i as f64 / n_adversarial.max(1) as f64;
                elongated_rectangle(10f64.powf(3.0 * frac))
            }
            1 => near_degenerate(&mut rng),
            _ => coplanar(&mut rng),
        }
    } else {
        sample_config(&mut rng, 1.0)
    };
    config.normalized_to_unit_diameter()
}

/// Quark pair along the long side, antiquark pair parallel at unit offset.
fn elongated_rectangle(aspect: f64) -> TetraConfig {
    TetraConfig {
        v1: Vec3::new(0.0, 0.0, 0.0),
        v2: Vec3::new(aspect, 0.0, 0.0),
        v3: Vec3::new(0.0, 1.0, 0.0),
        v4: Vec3::new(aspect, 1.0, 0.0),
    }
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        );
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// Largest admitted imbalance between the two pair lengths in the
/// degenerate stress families. The sharper bound stops being a theorem
/// once one pair shrinks below roughly 0.155 of the other *and* sits in
/// its junction-collapse zone ([`find_u_bound_violation`]); a factor-3
/// clamp keeps the families inside the provable tight regime with margin.
const PAIR_RATIO_CLAMP: f64 = 3.0;

fn pair_lengths_comparable(config: &TetraConfig) -> bool {
    let lx = config.v1.distance(config.v2);
    let ly = config.v3.distance(config.v4);
    lx >= ly / PAIR_RATIO_CLAMP && ly >= lx / PAIR_RATIO_CLAMP
}

/// Configurations approaching the degeneracies where the bound stays valid
/// but gets tight and solver round-off is worst: both pairs shrunk toward
/// points, all four points nearly on one line, and rectangles near the
/// aspect where the connected tree meets the bound exactly.
fn near_degenerate(rng: &mut ChaCha8Rng) -> TetraConfig {
    match rng.gen_range(0..3) {
        0 => double_cluster(rng),
        1 => near_collinear(rng),
        _ => near_tangency_rectangle(rng),
    }
}

/// Both pairs shrunk toward single points well separated from each other:
/// the connected network approaches the lone cluster-to-cluster string and
/// the bound is tight up to terms of the order of the pair sizes. Keeping
/// the clusters far apart relative to their sizes keeps each pair outside
/// the other's junction-collapse zone, where the bound is provable.
fn double_cluster(rng: &mut ChaCha8Rng) -> TetraConfig {
    let cube = |rng: &mut ChaCha8Rng| {
        Vec3::new(
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        )
    };
    let (center12, center34) = loop {
        let a = cube(rng);
        let b = cube(rng);
        if a.distance(b) >= 0.5 {
            break (a, b);
        }
    };
    let half12 = random_unit(rng) * (10f64.powf(rng.gen_range(-6.0..-1.0)) / 2.0);
    let half34 = random_unit(rng) * (10f64.powf(rng.gen_range(-6.0..-1.0)) / 2.0);
    TetraConfig {
        v1: center12 - half12,
        v2: center12 + half12,
        v3: center34 - half34,
        v4: center34 + half34,
    }
}

/// All four points on one line up to a tiny transverse jitter, with the two
/// pair lengths kept comparable (a nested much-shorter pair would leave the
/// bound's domain of validity — see [`find_u_bound_violation`]).
fn near_collinear(rng: &mut ChaCha8Rng) -> TetraConfig {
    let dir = random_unit(rng);
    let jitter = 10f64.powf(rng.gen_range(-9.0..-3.0));
    loop {
        let t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        let config = TetraConfig {
            v1: dir * t[0] + random_unit(rng) * (jitter * rng.gen_range(-1.0..=1.0)),
            v2: dir * t[1] + random_unit(rng) * (jitter * rng.gen_range(-1.0..=1.0)),
            v3: dir * t[2] + random_unit(rng) * (jitter * rng.gen_range(-1.0..=1.0)),
            v4: dir * t[3] + random_unit(rng) * (jitter * rng.gen_range(-1.0..=1.0)),
        };
        let lx = (t[1] - t[0]).abs();
        let ly = (t[3] - t[2]).abs();
        if lx.min(ly) >= 0.05 && pair_lengths_comparable(&config) {
            return config;
        }
    }
}

/// Rectangles just below the tangency aspect `1/sqrt(3)`, where the genuine
/// connected tree equals the bound exactly; a small jitter perturbs the
/// antipodal circle alignment and leaves a microscopic positive margin.
/// These are the near-planar, near-symmetric configurations on which a
/// sweep's worst margin is expected to land.
fn near_tangency_rectangle(rng: &mut ChaCha8Rng) -> TetraConfig {
    let aspect = rng.gen_range(0.15..0.55);
    let jitter = 10f64.powf(rng.gen_range(-4.0..-2.0));
    let j = |rng: &mut ChaCha8Rng| rng.gen_range(-1.0..=1.0) * jitter;
    TetraConfig {
        v1: Vec3::new(j(rng), j(rng), j(rng)),
        v2: Vec3::new(aspect + j(rng), j(rng), j(rng)),
        v3: Vec3::new(j(rng), 1.0 + j(rng), j(rng)),
        v4: Vec3::new(aspect + j(rng), 1.0 + j(rng), j(rng)),
    }
}

/// Random planar quartets with comparable pair lengths (see
/// [`PAIR_RATIO_CLAMP`] for why strongly pair-asymmetric planar shapes are
/// excluded).
fn coplanar(rng: &mut ChaCha8Rng) -> TetraConfig {
    let point = |rng: &mut ChaCha8Rng| {
        Vec3::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0), 0.0)
    };
    loop {
        let config =
            TetraConfig { v1: point(rng), v2: point(rng), v3: point(rng), v4: point(rng) };
        if pair_lengths_comparable(&config) {
            return config;
        }
    }
}
