//! Rotation numbers and rotation intervals of degree-one circle maps,
//! Arnold-tongue rasters, orbit rotation sampling for the fattened annulus
//! maps, and the boundary-push variant whose boundary circles rotate at the
//! interval endpoints.

use crate::families::FamilyParam;
use crate::geometry::{reduce_angle, AmbientPoint, ManifoldModel};
use crate::numeric::newton2;
use crate::suspension::{CarrierMap, FattenedMap};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Default resolution of envelope grids.
pub const DEFAULT_ENVELOPE_RES: usize = 1 << 12;

/// A lift of a circle map to the line.
pub trait Lift {
    fn value(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Lift for F {
    fn value(&self, x: f64) -> f64 {
        self(x)
    }
}

/// A rotation-number estimate with its a-priori half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationEstimate {
    pub value: f64,
    pub half_width: f64,
}

/// `(lift^n(x0) - x0) / n` for a nondecreasing degree-one lift, with the
/// classical two-sided error `1/n` (independent of `x0`).
///
/// Monotonicity and the degree-one identity are spot-checked on a sample;
/// failing lifts are rejected. Iteration happens in reduced coordinates
/// with an explicit winding count, so precision does not degrade with `n`.
pub fn rotation_number_monotone(lift: &impl Lift, x0: f64, n: usize) -> Result<RotationEstimate> {
    if n == 0 {
        return Err(Error::domain("iteration count n", 0.0, "[1, inf)"));
    }
    const PROBES: usize = 256;
    let mut prev = lift.value(0.0);
    for i in 1..=PROBES {
        let x = i as f64 / PROBES as f64;
        let v = lift.value(x);
        if v < prev - 1e-10 {
            return Err(Error::NonMonotone { at: x });
        }
        prev = v;
    }
    for x in [0.0, 0.37, 0.62] {
        if (lift.value(x + 1.0) - lift.value(x) - 1.0).abs() > 1e-9 {
            return Err(Error::NonMonotone { at: x });
        }
    }
    let u0 = reduce_angle(x0);
    let mut u = u0;
    let mut winding = 0.0f64;
    for _ in 0..n {
        let v = lift.value(u);
        let k = v.floor();
        winding += k;
        u = v - k;
        if u >= 1.0 {
            u -= 1.0;
            winding += 1.0;
        }
    }
    Ok(RotationEstimate {
        value: (winding + u - u0) / n as f64,
        half_width: 1.0 / n as f64,
    })
}

/// Monotone lower/upper hull of a degree-one lift.
///
/// For `b <= 1` the standard lift is already nondecreasing and *is* its own
/// envelope, kept exact; otherwise the hulls are cumulative min/max over a
/// period grid with linear interpolation, degree-one by construction.
#[derive(Debug, Clone)]
pub enum EnvelopeLift {
    Exact(FamilyParam),
    Grid { vals: Vec<f64> },
}

impl EnvelopeLift {
    pub fn grid_res(&self) -> Option<usize> {
        match self {
            EnvelopeLift::Exact(_) => None,
            EnvelopeLift::Grid { vals } => Some(vals.len() - 1),
        }
    }
}

impl Lift for EnvelopeLift {
    fn value(&self, x: f64) -> f64 {
        match self {
            EnvelopeLift::Exact(p) => p.lift_eval_unchecked(x),
            EnvelopeLift::Grid { vals } => {
                let n = (vals.len() - 1) as f64;
                let k = x.floor();
                let t = (x - k) * n;
                let j = (t as usize).min(vals.len() - 2);
                let frac = t - j as f64;
                vals[j] + frac * (vals[j + 1] - vals[j]) + k
            }
        }
    }
}

/// Lower and upper monotone envelopes of the standard-family lift.
pub fn envelopes(p: &FamilyParam, grid_res: usize) -> Result<(EnvelopeLift, EnvelopeLift)> {
    let b = match p {
        FamilyParam::Standard { b, .. } => *b,
        _ => {
            return Err(Error::WrongFamily {
                required: "standard",
            })
        }
    };
    if !(16..=1 << 20).contains(&grid_res) {
        return Err(Error::domain(
            "envelope grid resolution",
            grid_res as f64,
            "[16, 2^20]",
        ));
    }
    if b <= 1.0 {
        return Ok((EnvelopeLift::Exact(*p), EnvelopeLift::Exact(*p)));
    }
    let n = grid_res;
    // one Lipschitz cell of padding keeps the interpolated hulls true
    // majorants/minorants between grid nodes; it stays inside the reported
    // grid modulus
    let pad = (1.0 + b) / n as f64;
    let vals: Vec<f64> = (0..=n)
        .map(|j| p.lift_eval_unchecked(j as f64 / n as f64))
        .collect();
    // upper hull: sup over y <= x equals the max over the trailing period
    // window [x-1, x]; on grid samples that is
    // max(prefix_max[j], suffix_max[j+1] - 1)
    let mut prefix = vals.clone();
    for j in 1..=n {
        prefix[j] = prefix[j].max(prefix[j - 1]);
    }
    let mut suffix = vals.clone();
    for j in (0..n).rev() {
        suffix[j] = suffix[j].max(suffix[j + 1]);
    }
    let upper: Vec<f64> = (0..=n)
        .map(|j| {
            let ahead = if j < n {
                suffix[j + 1] - 1.0
            } else {
                f64::NEG_INFINITY
            };
            prefix[j].max(ahead) + pad
        })
        .collect();
    // lower hull: inf over y >= x, window [x, x+1]
    let mut sufmin = vals.clone();
    for j in (0..n).rev() {
        sufmin[j] = sufmin[j].min(sufmin[j + 1]);
    }
    let mut premin = vals.clone();
    for j in 1..=n {
        premin[j] = premin[j].min(premin[j - 1]);
    }
    let lower: Vec<f64> = (0..=n)
        .map(|j| {
            let behind = if j >= 1 {
                premin[j - 1] + 1.0
            } else {
                f64::INFINITY
            };
            sufmin[j].min(behind) - pad
        })
        .collect();
    Ok((
        EnvelopeLift::Grid { vals: lower },
        EnvelopeLift::Grid { vals: upper },
    ))
}

/// Closed interval of rotation numbers with its reported error half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationInterval {
    pub lo: f64,
    pub hi: f64,
    pub half_width: f64,
}

impl RotationInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains_with_tol(&self, r: f64, tol: f64) -> bool {
        r >= self.lo - tol && r <= self.hi + tol
    }
}

/// `[rho(lower envelope), rho(upper envelope)]` of a standard-family
/// member. The half-width accounts for `1/n` plus the envelope grid
/// modulus `(1 + b)/grid_res` (zero on the exact path).
pub fn rotation_interval(p: &FamilyParam, n: usize, grid_res: usize) -> Result<RotationInterval> {
    let b = match p {
        FamilyParam::Standard { b, .. } => *b,
        _ => {
            return Err(Error::WrongFamily {
                required: "standard",
            })
        }
    };
    let (lower, upper) = envelopes(p, grid_res)?;
    let x0 = 0.0;
    let lo_est = rotation_number_monotone(&lower, x0, n)?;
    let (lo, hi, grid_mod) = match (&lower, &upper) {
        (EnvelopeLift::Exact(_), EnvelopeLift::Exact(_)) => (lo_est.value, lo_est.value, 0.0),
        _ => {
            let hi_est = rotation_number_monotone(&upper, x0, n)?;
            // padding plus interpolation wobble, one Lipschitz cell each
            (
                lo_est.value.min(hi_est.value),
                lo_est.value.max(hi_est.value),
                2.0 * (1.0 + b) / grid_res as f64,
            )
        }
    };
    Ok(RotationInterval {
        lo,
        hi,
        half_width: 1.0 / n as f64 + grid_mod,
    })
}

/// Arnold-tongue raster: per-cell rotation intervals and membership bits for
/// a fixed rotation number `r` over a `(b, omega)` grid (cell centers).
#[derive(Debug, Clone)]
pub struct TongueRaster {
    pub r: f64,
    pub b_max: f64,
    pub omega_range: (f64, f64),
    pub res_b: usize,
    pub res_omega: usize,
    pub cells: Vec<RotationInterval>,
    pub member: Vec<bool>,
}

impl TongueRaster {
    pub fn b_center(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.b_max / self.res_b as f64
    }

    pub fn omega_center(&self, j: usize) -> f64 {
        let (lo, hi) = self.omega_range;
        lo + (j as f64 + 0.5) * (hi - lo) / self.res_omega as f64
    }

    pub fn idx(&self, i: usize, j: usize) -> usize {
        i * self.res_omega + j
    }
}

/// Rasterize tongue membership `r in [lo - tol, hi + tol]` with
/// `tol = 1/n + grid modulus`, over cell centers.
pub fn tongue_raster(
    r: f64,
    b_max: f64,
    res_b: usize,
    omega_range: (f64, f64),
    res_omega: usize,
    n: usize,
    grid_res: usize,
) -> Result<TongueRaster> {
    if res_b == 0 || res_omega == 0 {
        return Err(Error::EmptySet);
    }
    if !(b_max > 0.0 && b_max <= crate::families::STANDARD_B_MAX) {
        return Err(Error::domain("raster b_max", b_max, "(0, b*]"));
    }
    let mut raster = TongueRaster {
        r,
        b_max,
        omega_range,
        res_b,
        res_omega,
        cells: Vec::new(),
        member: Vec::new(),
    };
    let cells: Vec<RotationInterval> = (0..res_b * res_omega)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / res_omega, k % res_omega);
            let p = FamilyParam::standard(raster.b_center(i), raster.omega_center(j))
                .expect("grid centers in range");
            rotation_interval(&p, n, grid_res).expect("standard family")
        })
        .collect();
    raster.member = cells
        .iter()
        .map(|iv| iv.contains_with_tol(r, iv.half_width))
        .collect();
    raster.cells = cells;
    Ok(raster)
}

/// How an orbit sample was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    Random,
    EndpointLo,
    EndpointHi,
}

#[derive(Debug, Clone, Copy)]
pub struct OrbitSample {
    pub kind: OrbitKind,
    pub rotation: f64,
}

/// Report of [`annulus_rotation_check`].
#[derive(Debug, Clone)]
pub struct RotationCheckReport {
    pub interval: RotationInterval,
    pub samples: Vec<OrbitSample>,
    /// Smallest gap between a sample and each interval endpoint.
    pub lo_gap: f64,
    pub hi_gap: f64,
    /// Diagnostics for endpoint orbits that could not be pinned down.
    pub endpoint_failures: Vec<String>,
}

impl RotationCheckReport {
    /// Every sample inside the interval fattened by `tol`.
    pub fn all_inside(&self, tol: f64) -> bool {
        self.samples
            .iter()
            .all(|s| self.interval.contains_with_tol(s.rotation, tol))
    }
}

fn orbit_rotation(map: &FattenedMap, theta0: f64, r0: f64, transient: usize, n: usize) -> f64 {
    let mut p = AmbientPoint::new(reduce_angle(theta0), r0);
    for _ in 0..transient {
        p = map.apply(p);
    }
    let mut disp = 0.0f64;
    for _ in 0..n {
        let (t, r) = map.apply_lift(p.x, p.y);
        disp += t - p.x;
        p = AmbientPoint::new(reduce_angle(t), r);
    }
    disp / n as f64
}

/// Small-denominator rationals `p/q` close to an interval endpoint.
///
/// The hull rotation numbers lock on low-period cycles across wide
/// parameter regions, so the endpoints are typically small-`q` rationals
/// themselves; small `q` also keeps the orbit multiplier `(1+b)^q` within
/// Newton's numerical reach. Ordered by denominator, gap-capped.
fn endpoint_rationals(
    lo: f64,
    hi: f64,
    half_width: f64,
    endpoint: f64,
    q_max: u32,
    gap_cap: f64,
) -> Vec<(i64, u32)> {
    let mut cands: Vec<(u32, f64, i64)> = Vec::new();
    for q in 1..=q_max {
        let qf = q as f64;
        for p in [
            (endpoint * qf).round(),
            (endpoint * qf).floor(),
            (endpoint * qf).ceil(),
        ] {
            let v = p / qf;
            let gap = (v - endpoint).abs();
            if gap <= gap_cap && v >= lo - half_width && v <= hi + half_width {
                cands.push((q, gap, p as i64));
            }
        }
    }
    cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    cands.dedup_by(|a, b| a.2 == b.2 && a.0 == b.0);
    cands.truncate(10);
    cands.into_iter().map(|(q, _, p)| (p, q)).collect()
}

/// Sign-change seeds of `lift^q(x) - x - p` on a fine grid.
fn circle_periodic_seeds(p: &FamilyParam, pp: i64, q: u32) -> Vec<f64> {
    let res = 4096;
    let g = |x: f64| {
        let mut v = x;
        for _ in 0..q {
            v = p.lift_eval_unchecked(v);
        }
        v - x - pp as f64
    };
    let mut seeds = Vec::new();
    let mut prev = g(0.0);
    for i in 1..=res {
        let x = i as f64 / res as f64;
        let cur = g(x);
        if prev == 0.0 || prev.signum() != cur.signum() {
            let (mut a, mut b) = ((i - 1) as f64 / res as f64, x);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                if g(a).signum() == g(m).signum() {
                    a = m;
                } else {
                    b = m;
                }
            }
            seeds.push(0.5 * (a + b));
            if seeds.len() >= 4 {
                break;
            }
        }
        prev = cur;
    }
    seeds
}

/// Newton-polish a `(p, q)`-periodic point of the fattened annulus map in
/// lift coordinates; returns it with the achieved residual.
fn fattened_periodic_orbit(
    map: &FattenedMap,
    pp: i64,
    q: u32,
    theta_seed: f64,
) -> Option<([f64; 2], f64)> {
    let g = |z: [f64; 2]| {
        let (mut t, mut r) = (z[0], z[1]);
        for _ in 0..q {
            let (nt, nr) = map.apply_lift(t, r);
            t = nt;
            r = nr;
        }
        [t - z[0] - pp as f64, r - z[1]]
    };
    newton2(g, [theta_seed, 0.0], 1e-10, 80)
}

/// Sample orbit rotation numbers of a fattened annulus map.
///
/// `seeds` random orbits are measured over `n` lift steps. When the
/// rotation interval is nondegenerate, one periodic orbit per endpoint is
/// pinned down by Newton iteration from small-denominator rationals near
/// the endpoint (random orbits alone can mode-lock away from the
/// endpoints); their rotation numbers join the sample set.
pub fn annulus_rotation_check(
    map: &FattenedMap,
    seeds: usize,
    n: usize,
    rng_seed: u64,
) -> Result<RotationCheckReport> {
    let param = *map.param();
    if !param.is_circle() {
        return Err(Error::WrongModel {
            required: "annulus",
        });
    }
    let interval = rotation_interval(&param, n, DEFAULT_ENVELOPE_RES)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let inits: Vec<(f64, f64)> = (0..seeds)
        .map(|_| (rng.random_range(0.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let mut samples: Vec<OrbitSample> = inits
        .par_iter()
        .map(|&(t0, r0)| OrbitSample {
            kind: OrbitKind::Random,
            rotation: orbit_rotation(map, t0, r0, 1024, n),
        })
        .collect();
    let mut endpoint_failures = Vec::new();
    if interval.width() > 2.0 * interval.half_width {
        for (kind, endpoint) in [
            (OrbitKind::EndpointLo, interval.lo),
            (OrbitKind::EndpointHi, interval.hi),
        ] {
            let mut pinned = false;
            'cands: for (pp, q) in endpoint_rationals(
                interval.lo,
                interval.hi,
                interval.half_width,
                endpoint,
                24,
                0.018,
            ) {
                // skip denominators whose orbit multiplier is beyond
                // Newton's numerical reach
                if param.lipschitz().powi(q as i32) > 1e9 {
                    continue;
                }
                for seed in circle_periodic_seeds(&param, pp, q) {
                    if let Some((z, _res)) = fattened_periodic_orbit(map, pp, q, seed) {
                        // the pinned orbit is periodic, so one period of
                        // lift displacement measures its rotation number
                        // (a saddle orbit cannot be averaged forward)
                        let (mut t, mut r) = (z[0], z[1]);
                        for _ in 0..q {
                            let (nt, nr) = map.apply_lift(t, r);
                            t = nt;
                            r = nr;
                        }
                        samples.push(OrbitSample {
                            kind,
                            rotation: (t - z[0]) / q as f64,
                        });
                        pinned = true;
                        break 'cands;
                    }
                }
            }
            if !pinned {
                endpoint_failures.push(format!(
                    "no periodic orbit pinned near endpoint {endpoint:.6}"
                ));
            }
        }
    }
    let lo_gap = samples
        .iter()
        .map(|s| (s.rotation - interval.lo).abs())
        .fold(f64::INFINITY, f64::min);
    let hi_gap = samples
        .iter()
        .map(|s| (s.rotation - interval.hi).abs())
        .fold(f64::INFINITY, f64::min);
    Ok(RotationCheckReport {
        interval,
        samples,
        lo_gap,
        hi_gap,
        endpoint_failures,
    })
}

/// A fattened annulus map blended, inside boundary collars, with the rigid
/// rotations by the rotation-interval endpoints.
///
/// The blend bump is 1 on each boundary circle and 0 outside the collars,
/// so the boundary circles become invariant and rotate rigidly by
/// `interval.lo` (at `r = -1`) and `interval.hi` (at `r = +1`) while the
/// core dynamics is untouched.
#[derive(Debug, Clone)]
pub struct PushedMap {
    base: FattenedMap,
    pub lo: f64,
    pub hi: f64,
    pub collar_width: f64,
}

impl PushedMap {
    /// Piecewise-cubic bump: 1 on the boundary, 0 outside the collar, zero
    /// derivative at both collar edges.
    pub fn bump(&self, r: f64) -> f64 {
        let w = self.collar_width;
        let u = if r >= 1.0 - w {
            (r - (1.0 - w)) / w
        } else if r <= -1.0 + w {
            ((-1.0 + w) - r) / w
        } else {
            return 0.0;
        };
        let u = u.clamp(0.0, 1.0);
        u * u * (3.0 - 2.0 * u)
    }

    /// Lift-coordinate step.
    pub fn apply_lift(&self, theta: f64, r: f64) -> (f64, f64) {
        let chi = self.bump(r);
        let (bt, br) = self.base.apply_lift(theta, r);
        if chi == 0.0 {
            return (bt, br);
        }
        let rho = if r < 0.0 { self.lo } else { self.hi };
        (
            (1.0 - chi) * bt + chi * (theta + rho),
            (1.0 - chi) * br + chi * r,
        )
    }
}

impl CarrierMap for PushedMap {
    fn model(&self) -> ManifoldModel {
        ManifoldModel::Annulus
    }

    fn apply(&self, p: AmbientPoint) -> AmbientPoint {
        let (t, r) = self.apply_lift(p.x, p.y);
        AmbientPoint::new(reduce_angle(t), r)
    }
}

/// Compose a fattened annulus map with the lateral boundary push.
pub fn boundary_push(
    map: &FattenedMap,
    interval: &RotationInterval,
    collar_width: f64,
) -> Result<PushedMap> {
    if !map.param().is_circle() {
        return Err(Error::WrongModel {
            required: "annulus",
        });
    }
    if !(collar_width > 0.0 && collar_width < 1.0) {
        return Err(Error::domain("collar width", collar_width, "(0, 1)"));
    }
    Ok(PushedMap {
        base: *map,
        lo: interval.lo,
        hi: interval.hi,
        collar_width,
    })
}

/// Rotation average of a pushed-map orbit in lift coordinates.
pub fn pushed_orbit_rotation(map: &PushedMap, theta0: f64, r0: f64, n: usize) -> f64 {
    let mut t = theta0;
    let mut r = r0;
    let mut disp = 0.0;
    for _ in 0..n {
        let (nt, nr) = map.apply_lift(reduce_angle(t), r);
        disp += nt - reduce_angle(t);
        t = nt;
        r = nr;
    }
    disp / n as f64
}
