//! Concrete injective self-maps of the disk and annulus whose attractors
//! carry the backward-orbit dynamics of a 1-D family, plus the measurement
//! kit around them: attractor clouds, nested box covers, Hausdorff
//! distances, the spine semiconjugacy residual, periodic-point matching,
//! and parameter continuity scans.

use crate::families::{self, FamilyParam};
use crate::geometry::{circle_dist, reduce_angle, AmbientPoint, ManifoldModel};
use crate::numeric::newton2;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Default recorder phase for the annulus (kept off the symmetric loci of
/// the standard family).
pub const DEFAULT_THETA0: f64 = 0.17;

const TWO_PI: f64 = std::f64::consts::TAU;

/// A self-map of a carrier surface.
pub trait CarrierMap: Sync {
    fn model(&self) -> ManifoldModel;
    fn apply(&self, p: AmbientPoint) -> AmbientPoint;
}

/// The fattened realization of a family member as a carrier self-map.
///
/// Disk (tent/quadratic, phase interval normalized to `[0,1]`): the spine
/// dynamics runs in the window `[delta, 1 - delta]` through the affine
/// chart `l(u) = delta + (1 - 2 delta) u`, and
///
/// ```text
/// (x, y) -> ( l(f(u(x))) + delta * y * w(x),  epsilon * (2x - 1) )
/// ```
///
/// with `u(x)` the clamped inverse chart and the fiber weight
/// `w(x) = 4x(1-x)`. The second coordinate recovers `x` and then the first
/// recovers `y`, so the map is injective away from the two degenerate edge
/// fibers `x = 0, 1` where `w` vanishes; the image stays inside the
/// carrier, and the map converges uniformly to `(f(x), 0)` at rate
/// `O(delta) + epsilon`. The `y`-coupling must be zero-centered: a
/// constant-sign bias leaves no fixed point near a phase-interval endpoint
/// with expanding slope, so the endpoint periodic orbits of the spine map
/// would have no counterparts here.
///
/// Annulus (standard family):
/// `(theta, r) -> (f(theta) + delta r mod 1, epsilon cos(2 pi (theta - theta0)))`.
/// Injectivity of the recorder coordinate is audited rather than guaranteed;
/// `theta0` is configurable for that reason.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FattenedMap {
    model: ManifoldModel,
    param: FamilyParam,
    delta: f64,
    epsilon: f64,
    theta0: f64,
}

impl FattenedMap {
    /// Suspend a family member, choosing the carrier by family kind.
    pub fn new(param: FamilyParam, delta: f64, epsilon: f64) -> Result<Self> {
        Self::with_theta0(param, delta, epsilon, DEFAULT_THETA0)
    }

    pub fn with_theta0(param: FamilyParam, delta: f64, epsilon: f64, theta0: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 0.25) {
            return Err(Error::domain("spine offset delta", delta, "(0, 1/4)"));
        }
        if !(epsilon > 0.0 && epsilon < 0.25) {
            return Err(Error::domain("thickness epsilon", epsilon, "(0, 1/4)"));
        }
        let model = if param.is_circle() {
            ManifoldModel::Annulus
        } else {
            ManifoldModel::Disk
        };
        Ok(FattenedMap {
            model,
            param,
            delta,
            epsilon,
            theta0: reduce_angle(theta0),
        })
    }

    pub fn param(&self) -> &FamilyParam {
        &self.param
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    /// The family map on the unit phase coordinate (quadratic phases are
    /// affinely rescaled from `[-beta, beta]` onto `[0, 1]`).
    pub fn unit_family_map(&self, u: f64) -> f64 {
        match self.param {
            FamilyParam::Quadratic { .. } => {
                let pb = self.param.phase_interval();
                (self.param.eval_clamped(pb.lo + u.clamp(0.0, 1.0) * pb.width()) - pb.lo)
                    / pb.width()
            }
            _ => self.param.eval_clamped(u),
        }
    }

    /// Chart from the unit phase coordinate into the carrier spine window
    /// `[delta, 1 - delta]` (identity on the annulus).
    pub fn carrier_coord(&self, u: f64) -> f64 {
        match self.model {
            ManifoldModel::Disk => self.delta + (1.0 - 2.0 * self.delta) * u,
            ManifoldModel::Annulus => u,
        }
    }

    /// Clamped inverse chart: unit phase coordinate of a carrier point.
    pub fn unit_coord(&self, x: f64) -> f64 {
        match self.model {
            ManifoldModel::Disk => {
                ((x - self.delta) / (1.0 - 2.0 * self.delta)).clamp(0.0, 1.0)
            }
            ManifoldModel::Annulus => reduce_angle(x),
        }
    }

    /// The spine dynamics in carrier coordinates.
    pub fn spine_map(&self, x: f64) -> f64 {
        match self.model {
            ManifoldModel::Disk => self.carrier_coord(self.unit_family_map(self.unit_coord(x))),
            ManifoldModel::Annulus => self.param.eval_clamped(x),
        }
    }

    /// Carrier coordinate of a family phase point.
    pub fn spine_from_phase(&self, x: f64) -> f64 {
        match self.param {
            FamilyParam::Quadratic { .. } => {
                let pb = self.param.phase_interval();
                self.carrier_coord((x - pb.lo) / pb.width())
            }
            _ => self.carrier_coord(x),
        }
    }

    /// Family phase point of a carrier coordinate.
    pub fn phase_from_spine(&self, x: f64) -> f64 {
        let u = self.unit_coord(x);
        match self.param {
            FamilyParam::Quadratic { .. } => {
                let pb = self.param.phase_interval();
                pb.lo + u * pb.width()
            }
            _ => u,
        }
    }

    /// Lipschitz constant of the spine map in unit coordinates.
    pub fn spine_lipschitz(&self) -> f64 {
        self.param.lipschitz()
    }

    /// Fiber weight of the disk `y`-coupling; vanishes exactly on the
    /// degenerate edge fibers.
    fn fiber_weight(x: f64) -> f64 {
        4.0 * x * (1.0 - x)
    }

    /// Annulus step in lift coordinates (`theta` unreduced).
    pub fn apply_lift(&self, theta: f64, r: f64) -> (f64, f64) {
        debug_assert!(matches!(self.model, ManifoldModel::Annulus));
        (
            self.param.lift_eval_unchecked(theta) + self.delta * r,
            self.epsilon * (TWO_PI * (theta - self.theta0)).cos(),
        )
    }
}

impl CarrierMap for FattenedMap {
    fn model(&self) -> ManifoldModel {
        self.model
    }

    fn apply(&self, p: AmbientPoint) -> AmbientPoint {
        match self.model {
            ManifoldModel::Disk => AmbientPoint::new(
                self.spine_map(p.x) + self.delta * p.y * Self::fiber_weight(p.x),
                self.epsilon * (2.0 * p.x - 1.0),
            ),
            ManifoldModel::Annulus => {
                let (t, r) = self.apply_lift(p.x, p.y);
                AmbientPoint::new(reduce_angle(t), r)
            }
        }
    }
}

/// Settings for attractor cloud sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CloudSettings {
    pub seeds: usize,
    pub transient: usize,
    pub keep: usize,
    pub rng_seed: u64,
}

/// A sampled attractor approximation: `keep` post-transient iterates from
/// each of `seeds` seeded orbits, seed-major order.
#[derive(Debug, Clone)]
pub struct AttractorCloud {
    pub model: ManifoldModel,
    pub points: Vec<AmbientPoint>,
    pub settings: CloudSettings,
}

impl AttractorCloud {
    /// `(seed_index, iterate_index)` of the `i`-th point.
    pub fn index_of(&self, i: usize) -> (usize, usize) {
        (i / self.settings.keep, i % self.settings.keep)
    }

    /// Upper bound on the cloud diameter from the bounding box.
    pub fn diameter_bound(&self) -> f64 {
        bbox_diag(self.model, &self.points)
    }
}

fn bbox_diag(model: ManifoldModel, points: &[AmbientPoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
    for p in points {
        xmin = xmin.min(p.x);
        xmax = xmax.max(p.x);
        ymin = ymin.min(p.y);
        ymax = ymax.max(p.y);
    }
    let dx = match model {
        ManifoldModel::Disk => xmax - xmin,
        // conservative on the circle
        ManifoldModel::Annulus => (xmax - xmin).min(1.0),
    };
    (dx * dx + (ymax - ymin) * (ymax - ymin)).sqrt()
}

/// Iterate seeded random initial points, discard transients, and collect
/// `keep` iterates per seed. Deterministic given `rng_seed`.
pub fn attract_cloud(map: &impl CarrierMap, s: &CloudSettings) -> Result<AttractorCloud> {
    if s.transient < 100 {
        return Err(Error::domain(
            "transient length",
            s.transient as f64,
            "[100, inf)",
        ));
    }
    if s.seeds == 0 || s.keep == 0 {
        return Err(Error::EmptySet);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.rng_seed);
    let inits: Vec<AmbientPoint> = (0..s.seeds)
        .map(|_| AmbientPoint::new(rng.random_range(0.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let per_seed: Vec<Vec<AmbientPoint>> = inits
        .into_par_iter()
        .map(|p0| {
            let mut p = p0;
            for _ in 0..s.transient {
                p = map.apply(p);
            }
            let mut kept = Vec::with_capacity(s.keep);
            for _ in 0..s.keep {
                p = map.apply(p);
                kept.push(p);
            }
            kept
        })
        .collect();
    Ok(AttractorCloud {
        model: map.model(),
        points: per_seed.into_iter().flatten().collect(),
        settings: *s,
    })
}

/// Cap on box-cover resolution.
pub const MAX_COVER_RESOLUTION: usize = 4096;

/// An outer approximation of the attractor by occupied grid cells,
/// `resolution x resolution` over the carrier.
#[derive(Debug, Clone)]
pub struct BoxCover {
    model: ManifoldModel,
    resolution: usize,
    bits: Vec<u64>,
}

impl BoxCover {
    fn full(model: ManifoldModel, resolution: usize) -> Self {
        let n = resolution * resolution;
        let mut bits = vec![u64::MAX; n.div_ceil(64)];
        for i in (n / 64) * 64..bits.len() * 64 {
            if i >= n {
                bits[i / 64] &= !(1u64 << (i % 64));
            }
        }
        BoxCover {
            model,
            resolution,
            bits,
        }
    }

    fn empty(model: ManifoldModel, resolution: usize) -> Self {
        let n = resolution * resolution;
        BoxCover {
            model,
            resolution,
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn model(&self) -> ManifoldModel {
        self.model
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        j * self.resolution + i
    }

    pub fn is_occupied(&self, i: usize, j: usize) -> bool {
        let k = self.idx(i, j);
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        let k = self.idx(i, j);
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn occupied_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BoxCover) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & !b == 0)
    }

    fn intersect(&mut self, other: &BoxCover) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a &= *b;
        }
    }

    /// Cell of a carrier point.
    pub fn cell_of(&self, p: AmbientPoint) -> (usize, usize) {
        let r = self.resolution as f64;
        let i = match self.model {
            ManifoldModel::Disk => ((p.x * r) as isize).clamp(0, self.resolution as isize - 1),
            ManifoldModel::Annulus => (reduce_angle(p.x) * r) as isize,
        };
        let j = (((p.y + 1.0) * 0.5 * r) as isize).clamp(0, self.resolution as isize - 1);
        (i as usize % self.resolution, j as usize)
    }

    /// Lower-left corner of a cell (disk/annulus coordinates).
    pub fn cell_corner(&self, i: usize, j: usize) -> (f64, f64) {
        let r = self.resolution as f64;
        (i as f64 / r, j as f64 * 2.0 / r - 1.0)
    }
}

/// Nested outer cover: start from the full carrier, map a corner/edge/center
/// sample of every occupied cell, occupy hit cells dilated by one cell, and
/// intersect with the previous cover. Returns the step-`n` cover.
pub fn attract_cover(map: &impl CarrierMap, resolution: usize, n: usize) -> Result<BoxCover> {
    if resolution == 0 || resolution > MAX_COVER_RESOLUTION {
        return Err(Error::ResolutionCap {
            resolution,
            max: MAX_COVER_RESOLUTION,
        });
    }
    let model = map.model();
    let mut cover = BoxCover::full(model, resolution);
    let res = resolution as isize;
    let offsets = [
        (0.0, 0.0),
        (0.5, 0.0),
        (1.0, 0.0),
        (0.0, 0.5),
        (0.5, 0.5),
        (1.0, 0.5),
        (0.0, 1.0),
        (0.5, 1.0),
        (1.0, 1.0),
    ];
    for _ in 0..n {
        let mut next = BoxCover::empty(model, resolution);
        let cw = 1.0 / resolution as f64;
        let ch = 2.0 / resolution as f64;
        for j in 0..resolution {
            for i in 0..resolution {
                if !cover.is_occupied(i, j) {
                    continue;
                }
                let (cx, cy) = cover.cell_corner(i, j);
                for (ox, oy) in offsets {
                    let q = map.apply(AmbientPoint::new(
                        cx + ox * cw,
                        (cy + oy * ch).clamp(-1.0, 1.0),
                    ));
                    let (hi, hj) = next.cell_of(q);
                    for di in -1..=1isize {
                        for dj in -1..=1isize {
                            let jj = hj as isize + dj;
                            if jj < 0 || jj >= res {
                                continue;
                            }
                            let ii = match model {
                                ManifoldModel::Disk => {
                                    let v = hi as isize + di;
                                    if v < 0 || v >= res {
                                        continue;
                                    }
                                    v
                                }
                                ManifoldModel::Annulus => (hi as isize + di).rem_euclid(res),
                            };
                            next.set(ii as usize, jj as usize);
                        }
                    }
                }
            }
        }
        next.intersect(&cover);
        cover = next;
    }
    Ok(cover)
}

// ---------------------------------------------------------------------------
// Hausdorff distance with a uniform bucket grid

struct GridIndex {
    cell_x: f64,
    cell_y: f64,
    nx: i64,
    wrap: bool,
    buckets: HashMap<(i64, i64), Vec<u32>>,
    pts: Vec<(f64, f64)>,
    y_min: f64,
}

impl GridIndex {
    fn build(pts: Vec<(f64, f64)>, wrap: bool) -> Self {
        let (mut xmin, mut xmax) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in &pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let diag = if wrap {
            (1.0f64.powi(2) + (ymax - ymin).powi(2)).sqrt()
        } else {
            ((xmax - xmin).powi(2) + (ymax - ymin).powi(2)).sqrt()
        };
        let target = (diag / 512.0).max(1e-6);
        let (nx, cell_x) = if wrap {
            let n = (1.0 / target).ceil().max(1.0) as i64;
            (n, 1.0 / n as f64)
        } else {
            (0, target)
        };
        let cell_y = target;
        let mut g = GridIndex {
            cell_x,
            cell_y,
            nx,
            wrap,
            buckets: HashMap::new(),
            pts,
            y_min: ymin,
        };
        for k in 0..g.pts.len() {
            let key = g.key(g.pts[k]);
            g.buckets.entry(key).or_default().push(k as u32);
        }
        g
    }

    fn key(&self, p: (f64, f64)) -> (i64, i64) {
        let ix = if self.wrap {
            ((reduce_angle(p.0) / self.cell_x) as i64).min(self.nx - 1)
        } else {
            (p.0 / self.cell_x).floor() as i64
        };
        (ix, ((p.1 - self.y_min) / self.cell_y).floor() as i64)
    }

    fn dist(&self, a: (f64, f64), b: (f64, f64)) -> f64 {
        let dx = if self.wrap {
            circle_dist(a.0, b.0)
        } else {
            a.0 - b.0
        };
        let dy = a.1 - b.1;
        (dx * dx + dy * dy).sqrt()
    }

    /// Exact nearest distance via expanding ring search. The grid only
    /// prunes; every candidate is measured with the true metric.
    fn nearest(&self, q: (f64, f64)) -> f64 {
        let (qx, qy) = self.key(q);
        let mut best = f64::INFINITY;
        let cell_min = self.cell_x.min(self.cell_y);
        let mut ring = 0i64;
        loop {
            for dy in -ring..=ring {
                for dx in -ring..=ring {
                    if dx.abs() != ring && dy.abs() != ring {
                        continue;
                    }
                    let kx = if self.wrap {
                        (qx + dx).rem_euclid(self.nx)
                    } else {
                        qx + dx
                    };
                    if let Some(ids) = self.buckets.get(&(kx, qy + dy)) {
                        for &i in ids {
                            best = best.min(self.dist(q, self.pts[i as usize]));
                        }
                    }
                }
            }
            // any unscanned point sits in a cell ring beyond `ring`, hence
            // farther than ring * min cell size
            if best <= ring as f64 * cell_min {
                return best;
            }
            ring += 1;
            // once the ring area outgrows the occupied cells, a full scan
            // is cheaper than walking empty rings
            let area = (2 * ring + 1) * (2 * ring + 1);
            if ring > 64 || area as usize > 9 * self.buckets.len() {
                return self
                    .pts
                    .iter()
                    .map(|&p| self.dist(q, p))
                    .fold(best, f64::min);
            }
        }
    }
}

fn directed_hausdorff(from: &[(f64, f64)], to: &[(f64, f64)], wrap: bool) -> f64 {
    if from.len() * to.len() <= 1 << 16 {
        let dist = |a: (f64, f64), b: (f64, f64)| {
            let dx = if wrap { circle_dist(a.0, b.0) } else { a.0 - b.0 };
            let dy = a.1 - b.1;
            (dx * dx + dy * dy).sqrt()
        };
        return from
            .iter()
            .map(|&a| {
                to.iter()
                    .map(|&b| dist(a, b))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
    }
    let grid = GridIndex::build(to.to_vec(), wrap);
    from.par_iter()
        .map(|&a| grid.nearest(a))
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between point sets on a carrier.
pub fn hausdorff(model: ManifoldModel, a: &[AmbientPoint], b: &[AmbientPoint]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let wrap = matches!(model, ManifoldModel::Annulus);
    let ta: Vec<(f64, f64)> = a.iter().map(|p| (p.x, p.y)).collect();
    let tb: Vec<(f64, f64)> = b.iter().map(|p| (p.x, p.y)).collect();
    Ok(directed_hausdorff(&ta, &tb, wrap).max(directed_hausdorff(&tb, &ta, wrap)))
}

/// Hausdorff distance between plane point sets (no wrap).
pub fn hausdorff_plane(a: &[(f64, f64)], b: &[(f64, f64)]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(directed_hausdorff(a, b, false).max(directed_hausdorff(b, a, false)))
}

/// Sup over the cloud of `d(f(g(z)), g(F(z)))` where `g` retracts to the
/// spine and reads off the unit phase coordinate; `O(delta + epsilon)` by
/// construction.
pub fn semiconjugacy_residual(map: &FattenedMap, cloud: &AttractorCloud) -> f64 {
    cloud
        .points
        .iter()
        .map(|p| {
            let q = map.apply(*p);
            match map.model() {
                ManifoldModel::Disk => {
                    (map.unit_family_map(map.unit_coord(p.x)) - map.unit_coord(q.x)).abs()
                }
                ManifoldModel::Annulus => {
                    circle_dist(map.param().eval_clamped(p.x), q.x)
                }
            }
        })
        .fold(0.0, f64::max)
}

/// Per-period outcome of [`periodic_match`].
#[derive(Debug, Clone)]
pub struct PeriodReport {
    pub period: usize,
    pub expected: usize,
    pub matched: usize,
    pub unconverged: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone)]
pub struct PeriodicMatchReport {
    pub per_period: Vec<PeriodReport>,
}

impl PeriodicMatchReport {
    pub fn all_matched(&self) -> bool {
        self.per_period
            .iter()
            .all(|r| r.matched == r.expected && r.unconverged == 0)
    }
}

/// Match the fattened disk map's periodic points against the exact tent
/// enumeration, period by period.
///
/// Every exact periodic point is lifted to the spine and used to seed a
/// damped Newton search for the nearby periodic point of the fattened map;
/// the report counts converged, pairwise-distinct points per period.
pub fn periodic_match(map: &FattenedMap, max_period: usize, tol: f64) -> Result<PeriodicMatchReport> {
    let s = match map.param() {
        FamilyParam::Tent { s } => *s,
        _ => return Err(Error::WrongFamily { required: "tent" }),
    };
    if !(s > 1.0 && s <= 2.0) {
        return Err(Error::domain("tent slope s", s, "(1, 2]"));
    }
    if max_period == 0 || max_period > 8 {
        return Err(Error::domain("max period", max_period as f64, "[1, 8]"));
    }
    let mut per_period = Vec::with_capacity(max_period);
    for n in 1..=max_period {
        let exact = families::tent_periodic_points(s, n)?;
        let iter_n = |z: [f64; 2]| {
            let mut p = AmbientPoint::new(z[0], z[1]);
            for _ in 0..n {
                p = map.apply(p);
            }
            [p.x - z[0], p.y - z[1]]
        };
        let mut found: Vec<([f64; 2], f64)> = Vec::new();
        let mut unconverged = 0usize;
        for (x_star, _) in &exact {
            // predecessor along the exact orbit fixes the recorder seed
            let mut prev = *x_star;
            for _ in 0..n.saturating_sub(1) {
                prev = map.param().eval_clamped(prev);
            }
            let seed = [
                map.spine_from_phase(*x_star),
                map.epsilon() * (2.0 * map.spine_from_phase(prev) - 1.0),
            ];
            match newton2(iter_n, seed, tol, 120) {
                Some((z, r)) => found.push((z, r)),
                None => unconverged += 1,
            }
        }
        found.sort_by(|a, b| a.0[0].total_cmp(&b.0[0]));
        let mut distinct: Vec<([f64; 2], f64)> = Vec::new();
        for (z, r) in found {
            let dup = distinct.iter().any(|(w, _)| {
                (w[0] - z[0]).abs().max((w[1] - z[1]).abs()) < 1e-8
            });
            if !dup {
                distinct.push((z, r));
            }
        }
        per_period.push(PeriodReport {
            period: n,
            expected: exact.len(),
            matched: distinct.len(),
            unconverged,
            max_residual: distinct.iter().map(|(_, r)| *r).fold(0.0, f64::max),
        });
    }
    Ok(PeriodicMatchReport { per_period })
}

/// Result of a parameter continuity scan: consecutive Hausdorff distances
/// between same-seed attractor clouds, plus the parameters that failed the
/// common-stabilization precheck.
#[derive(Debug, Clone)]
pub struct ContinuityScan {
    pub rows: Vec<(f64, f64)>,
    pub unstabilized: Vec<f64>,
}

impl ContinuityScan {
    pub fn max_distance(&self) -> f64 {
        self.rows.iter().map(|r| r.1).fold(0.0, f64::max)
    }
}

/// Hausdorff distances between attractor clouds at consecutive parameters
/// of a family curve, all clouds sharing the rng seed.
pub fn continuity_scan(
    curve: &[(f64, FamilyParam)],
    delta: f64,
    epsilon: f64,
    cloud: &CloudSettings,
) -> Result<ContinuityScan> {
    if curve.is_empty() {
        return Err(Error::EmptySet);
    }
    let unstabilized = curve
        .iter()
        .filter(|(_, p)| families::stabilization_index(p, 64, 1e-9).is_none())
        .map(|(t, _)| *t)
        .collect();
    let mut rows = Vec::with_capacity(curve.len().saturating_sub(1));
    let mut prev: Option<(f64, AttractorCloud)> = None;
    for (t, param) in curve {
        let map = FattenedMap::new(*param, delta, epsilon)?;
        let c = attract_cloud(&map, cloud)?;
        if let Some((t_prev, c_prev)) = prev.take() {
            let d = hausdorff(c.model, &c_prev.points, &c.points)?;
            rows.push((t_prev, d));
        }
        prev = Some((*t, c));
    }
    Ok(ContinuityScan { rows, unstabilized })
}

/// One step of the plane quadratic map `(x, y) -> (a - x^2 + b y, x)`.
pub fn henon_apply(a: f64, b: f64, p: (f64, f64)) -> (f64, f64) {
    (a - p.0 * p.0 + b * p.1, p.0)
}

const HENON_ESCAPE_RADIUS: f64 = 8.0;

/// Attractor cloud of the plane quadratic map. Orbit escape (norm beyond
/// the configured radius) is an error, reported with the offending seed.
pub fn henon_cloud(a: f64, b: f64, s: &CloudSettings) -> Result<Vec<(f64, f64)>> {
    if !(-0.5..=2.2).contains(&a) || b.abs() > 0.6 {
        return Err(Error::domain("henon parameters", a, "a in [-1/2, 2.2], |b| <= 0.6"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.rng_seed);
    let inits: Vec<(f64, f64)> = (0..s.seeds)
        .map(|_| {
            (
                rng.random_range(-0.25..0.25),
                rng.random_range(-0.25..0.25),
            )
        })
        .collect();
    let mut out = Vec::with_capacity(s.seeds * s.keep);
    for (seed, &p0) in inits.iter().enumerate() {
        let mut p = p0;
        for _ in 0..s.transient {
            p = henon_apply(a, b, p);
            if p.0.hypot(p.1) > HENON_ESCAPE_RADIUS {
                return Err(Error::OrbitEscape { seed });
            }
        }
        for _ in 0..s.keep {
            p = henon_apply(a, b, p);
            if p.0.hypot(p.1) > HENON_ESCAPE_RADIUS {
                return Err(Error::OrbitEscape { seed });
            }
            out.push(p);
        }
    }
    Ok(out)
}

/// Max vertical spread of the cloud over a spine-coordinate binning;
/// small values certify that the cloud is a single-valued graph.
pub fn graph_spread(points: &[AmbientPoint], bins: usize) -> f64 {
    let mut lo = vec![f64::INFINITY; bins];
    let mut hi = vec![f64::NEG_INFINITY; bins];
    for p in points {
        let b = ((reduce_angle(p.x) * bins as f64) as usize).min(bins - 1);
        lo[b] = lo[b].min(p.y);
        hi[b] = hi[b].max(p.y);
    }
    (0..bins)
        .filter(|&b| hi[b] >= lo[b])
        .map(|b| hi[b] - lo[b])
        .fold(0.0, f64::max)
}
