//! Truncated backward-orbit threads, the damped product metric on them, the
//! natural-extension shift, slice-preserving fat maps, empirical
//! epsilon-map audits, and finite-stage projection approximants.

use crate::families::{self, FamilyParam, Symbol};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Default truncation length for generated threads.
pub const DEFAULT_THREAD_LEN: usize = 32;

/// A truncated backward orbit `(x_0, ..., x_k)` of a family member:
/// `f(x_{i+1})` reproduces `x_i` within `tol` in the phase metric.
#[derive(Debug, Clone, PartialEq)]
pub struct Thread {
    family: FamilyParam,
    entries: Vec<f64>,
    tol: f64,
}

impl Thread {
    pub fn new(family: FamilyParam, entries: Vec<f64>, tol: f64) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySet);
        }
        let t = Thread {
            family,
            entries,
            tol,
        };
        t.validate()?;
        Ok(t)
    }

    /// Constant thread at a fixed point candidate `x`.
    pub fn constant(family: FamilyParam, x: f64, len: usize, tol: f64) -> Result<Self> {
        Thread::new(family, vec![x; len], tol)
    }

    /// Check the backward-consistency certificate.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.entries.len().saturating_sub(1) {
            let gap = self
                .family
                .phase_dist(self.family.eval_clamped(self.entries[i + 1]), self.entries[i]);
            if gap > self.tol {
                return Err(Error::InvalidThread { index: i, gap });
            }
        }
        Ok(())
    }

    pub fn family(&self) -> &FamilyParam {
        &self.family
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coordinate projection `pi_k`.
    pub fn project(&self, k: usize) -> Option<f64> {
        self.entries.get(k).copied()
    }

    /// Natural-extension step: prepend `f(x_0)` and drop the last entry so
    /// the truncation length is preserved.
    pub fn shift(&self) -> Thread {
        let mut entries = Vec::with_capacity(self.entries.len());
        entries.push(self.family.eval_clamped(self.entries[0]));
        entries.extend_from_slice(&self.entries[..self.entries.len() - 1]);
        Thread {
            family: self.family,
            entries,
            tol: self.tol,
        }
    }

    /// Append a preimage of the last entry, chosen by `policy`, searching
    /// inside the stabilized image interval.
    pub fn extend_backward(&self, policy: PreimagePolicy) -> Result<Thread> {
        let last = *self.entries.last().ok_or(Error::EmptySet)?;
        let core = families::stabilized_core(&self.family);
        let mut cands: Vec<f64> = families::preimages(&self.family, last)
            .into_iter()
            .filter(|x| {
                self.family.is_circle() || (*x >= core.lo - 1e-12 && *x <= core.hi + 1e-12)
            })
            .collect();
        if cands.is_empty() {
            return Err(Error::NoPreimage { value: last });
        }
        let pick = match policy {
            PreimagePolicy::Leftmost | PreimagePolicy::Branch(Symbol::L) => cands.remove(0),
            PreimagePolicy::Rightmost | PreimagePolicy::Branch(Symbol::R) => {
                cands.pop().unwrap()
            }
            PreimagePolicy::Branch(Symbol::C) => {
                return Err(Error::Unsupported("branch policy takes L or R"))
            }
            PreimagePolicy::Random(seed) => {
                let mut rng =
                    ChaCha8Rng::seed_from_u64(seed.wrapping_add(self.entries.len() as u64));
                cands[rng.random_range(0..cands.len())]
            }
        };
        let mut entries = self.entries.clone();
        entries.push(pick);
        Thread::new(self.family, entries, self.tol)
    }

    /// Damped product metric
    /// `max_i min(d(x_i, y_i), 1) / (i + 1)` over matching indices.
    ///
    /// On truncated threads this lower-bounds the metric on full backward
    /// orbits and is exact whenever the (implicit) tails agree.
    pub fn d_infty(&self, other: &Thread) -> Result<f64> {
        if self.entries.len() != other.entries.len() {
            return Err(Error::LengthMismatch {
                left: self.entries.len(),
                right: other.entries.len(),
            });
        }
        Ok(d_infty_with(&self.entries, &other.entries, |a, b| {
            self.family.phase_dist(*a, *b)
        }))
    }
}

/// The damped product metric over explicit coordinates with a caller-chosen
/// entry metric.
pub fn d_infty_with<T>(xs: &[T], ys: &[T], d: impl Fn(&T, &T) -> f64) -> f64 {
    xs.iter()
        .zip(ys)
        .enumerate()
        .map(|(i, (x, y))| d(x, y).min(1.0) / (i + 1) as f64)
        .fold(0.0, f64::max)
}

/// Preimage choice for backward extensions. `f` is non-injective, so the
/// space of backward orbits is sampled through these policies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PreimagePolicy {
    Leftmost,
    Rightmost,
    /// Seeded uniform choice; deterministic per `(seed, thread length)`.
    Random(u64),
    /// Explicit branch selector: `L` leftmost, `R` rightmost preimage.
    Branch(Symbol),
}

/// A random valid thread: forward point drawn in the stabilized interval,
/// then extended backward with seeded random branch choices.
pub fn random_thread(
    family: FamilyParam,
    len: usize,
    tol: f64,
    rng: &mut impl Rng,
) -> Result<Thread> {
    let core = families::stabilized_core(&family);
    let x0 = if core.width() > 0.0 {
        rng.random_range(core.lo..core.hi)
    } else {
        core.lo
    };
    let mut t = Thread::new(family, vec![x0], tol)?;
    while t.len() < len {
        t = t.extend_backward(PreimagePolicy::Random(rng.random()))?;
    }
    Ok(t)
}

/// A point of the parameterized phase space `(x, t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FatPoint {
    pub x: f64,
    pub param: FamilyParam,
}

/// One step of the slice-preserving fat map `(x, t) -> (f_t(x), t)`.
/// The parameter coordinate is returned bit-identical.
pub fn fat_apply(fp: &FatPoint) -> FatPoint {
    FatPoint {
        x: fp.param.eval_clamped(fp.x),
        param: fp.param,
    }
}

/// Finite-stage approximant of the limit homeomorphism: project the
/// thread to its `j`-th coordinate and pass it through the slice
/// homeomorphism.
///
/// These stages are the computable stand-ins for the non-constructive
/// limit; stage `j` is an empirical `1/(j+2)`-map, which
/// [`epsilon_map_audit`] can certify on samples.
pub fn stage_projection(
    j: usize,
    slice_homeo: impl Fn(f64, &FamilyParam) -> f64,
    thread: &Thread,
) -> Result<FatPoint> {
    let x = thread.project(j).ok_or(Error::StageBeyondThread {
        stage: j,
        len: thread.len(),
    })?;
    Ok(FatPoint {
        x: slice_homeo(x, thread.family()),
        param: *thread.family(),
    })
}

/// Empirical epsilon-map certificate: the largest domain distance among
/// sample pairs whose images collide within `collision_tol`.
///
/// `image_embed` must be plane-dominated by the image metric
/// (`|embed(a) - embed(b)| <= image_dist(a, b)`); it only buckets
/// candidates, every reported pair is checked with `image_dist` itself.
pub fn epsilon_map_audit<T: Sync, U: Send + Sync>(
    sample: &[T],
    map: impl Fn(&T) -> U + Sync,
    domain_dist: impl Fn(&T, &T) -> f64 + Sync,
    image_dist: impl Fn(&U, &U) -> f64 + Sync,
    image_embed: impl Fn(&U) -> (f64, f64) + Sync,
    collision_tol: f64,
) -> f64 {
    if sample.len() < 2 {
        return 0.0;
    }
    let images: Vec<U> = sample.par_iter().map(&map).collect();
    let cell = collision_tol.max(1e-12);
    let key = |u: &U| -> (i64, i64) {
        let (ex, ey) = image_embed(u);
        ((ex / cell).floor() as i64, (ey / cell).floor() as i64)
    };
    let mut buckets: HashMap<(i64, i64), Vec<u32>> = HashMap::new();
    for (i, u) in images.iter().enumerate() {
        buckets.entry(key(u)).or_default().push(i as u32);
    }
    (0..sample.len())
        .into_par_iter()
        .map(|i| {
            let (kx, ky) = key(&images[i]);
            let mut worst = 0.0f64;
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(ids) = buckets.get(&(kx + dx, ky + dy)) {
                        for &j in ids {
                            let j = j as usize;
                            if j <= i {
                                continue;
                            }
                            if image_dist(&images[i], &images[j]) < collision_tol {
                                worst = worst.max(domain_dist(&sample[i], &sample[j]));
                            }
                        }
                    }
                }
            }
            worst
        })
        .reduce(|| 0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyParam;

    fn tent(s: f64) -> FamilyParam {
        FamilyParam::tent(s).unwrap()
    }

    #[test]
    fn thread_validation() {
        let t2 = tent(2.0);
        assert!(Thread::new(t2, vec![0.0, 1.0, 0.5], 1e-9).is_ok());
        let err = Thread::new(t2, vec![0.0, 0.3, 0.5], 1e-9).unwrap_err();
        assert!(matches!(err, Error::InvalidThread { index: 0, .. }));
    }

    #[test]
    fn d_infty_examples() {
        let t2 = tent(2.0);
        let u = Thread::new(t2, vec![0.0, 1.0, 0.5], 1e-9).unwrap();
        assert_eq!(u.d_infty(&u).unwrap(), 0.0);

        // agree through index 2, full separation afterwards
        let a = Thread::new(t2, vec![0.0; 6], 1e-9).unwrap();
        let mut entries = vec![0.0; 6];
        entries[3] = 1.0;
        entries[4] = 0.5;
        entries[5] = 0.25;
        let b = Thread::new(t2, entries, 1e-9).unwrap();
        assert_eq!(a.d_infty(&b).unwrap(), 0.25);

        // head term dominates
        let a = Thread::new(t2, vec![0.3, 0.15], 1e-9).unwrap();
        let b = Thread::new(t2, vec![0.6, 0.3], 1e-9).unwrap();
        assert!((a.d_infty(&b).unwrap() - 0.3).abs() < 1e-15);

        let short = Thread::new(t2, vec![0.0], 1e-9).unwrap();
        assert!(a.d_infty(&short).is_err());
    }

    #[test]
    fn shift_examples() {
        let t2 = tent(2.0);
        let fixed = Thread::constant(t2, 2.0 / 3.0, 3, 1e-9).unwrap();
        let sh = fixed.shift();
        for (a, b) in sh.entries().iter().zip(fixed.entries()) {
            assert!((a - b).abs() < 1e-12);
        }

        let u = Thread::new(t2, vec![0.0, 1.0, 0.5], 1e-9).unwrap();
        assert_eq!(u.shift().entries(), &[0.0, 0.0, 1.0]);

        let rot = FamilyParam::standard(0.0, 0.25).unwrap();
        let u = Thread::new(rot, vec![0.25, 0.0, 0.75], 1e-9).unwrap();
        let sh = u.shift();
        assert!((sh.entries()[0] - 0.5).abs() < 1e-12);
        assert_eq!(&sh.entries()[1..], &[0.25, 0.0]);
    }

    #[test]
    fn shift_preserves_validity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in [1.4, 1.9] {
            for _ in 0..50 {
                let t = random_thread(tent(s), 12, 1e-9, &mut rng).unwrap();
                t.shift().validate().unwrap();
            }
        }
    }

    #[test]
    fn extend_backward_examples() {
        let t2 = tent(2.0);
        let u = Thread::new(t2, vec![1.0, 0.5], 1e-9).unwrap();
        let left = u.extend_backward(PreimagePolicy::Leftmost).unwrap();
        assert!((left.entries()[2] - 0.25).abs() < 1e-12);
        let right = u.extend_backward(PreimagePolicy::Rightmost).unwrap();
        assert!((right.entries()[2] - 0.75).abs() < 1e-12);

        let rot = FamilyParam::standard(0.0, 0.25).unwrap();
        let u = Thread::new(rot, vec![0.0], 1e-9).unwrap();
        let v = u.extend_backward(PreimagePolicy::Leftmost).unwrap();
        assert!((v.entries()[1] - 0.75).abs() < 1e-10);

        // 0.9 has no tent-1.5 preimage
        let t = tent(1.5);
        let u = Thread::new(t, vec![0.9], 1e-9).unwrap();
        assert!(matches!(
            u.extend_backward(PreimagePolicy::Leftmost),
            Err(Error::NoPreimage { .. })
        ));
    }

    #[test]
    fn extend_then_shift_recovers_the_thread() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let u = random_thread(tent(1.7), 10, 1e-9, &mut rng).unwrap();
            for policy in [
                PreimagePolicy::Leftmost,
                PreimagePolicy::Rightmost,
                PreimagePolicy::Random(rng.random()),
            ] {
                let v = u.extend_backward(policy).unwrap();
                let w = v.shift();
                // the appended preimage is consumed by the shift, so the
                // original thread sits at indices 1..
                assert_eq!(&w.entries()[1..], u.entries());
            }
        }
    }

    #[test]
    fn quadratic_threads_extend_through_square_roots() {
        let q = FamilyParam::quadratic(1.8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let t = random_thread(q, 12, 1e-9, &mut rng).unwrap();
            t.validate().unwrap();
            t.shift().validate().unwrap();
        }
        // both square-root branches are offered
        let t = Thread::new(q, vec![1.0], 1e-9).unwrap();
        let left = t.extend_backward(PreimagePolicy::Leftmost).unwrap();
        let right = t.extend_backward(PreimagePolicy::Rightmost).unwrap();
        assert!((left.entries()[1] + right.entries()[1]).abs() < 1e-12);
        assert!((left.entries()[1] + 0.8f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn circle_threads_respect_the_arc_metric() {
        let p = FamilyParam::standard(2.0, 0.3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..30 {
            let t = random_thread(p, 10, 1e-9, &mut rng).unwrap();
            t.validate().unwrap();
            for x in t.entries() {
                assert!((0.0..1.0).contains(x));
            }
        }
        // entries that straddle the wrap point compare through the arc
        let a = Thread::new(p, vec![0.99], 1e-9).unwrap();
        let b = Thread::new(p, vec![0.01], 1e-9).unwrap();
        assert!((a.d_infty(&b).unwrap() - 0.02).abs() < 1e-12);
    }

    #[test]
    fn projection_semiconjugacy_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = random_thread(tent(1.9), 8, 1e-9, &mut rng).unwrap();
            let lhs = u.shift().project(0).unwrap();
            let rhs = u.family().eval_clamped(u.project(0).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fat_apply_examples() {
        let fp = FatPoint {
            x: 2.0 / 3.0,
            param: tent(2.0),
        };
        let out = fat_apply(&fp);
        assert!((out.x - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(out.param, fp.param);

        let fp = FatPoint {
            x: 0.5,
            param: tent(1.5),
        };
        assert!((fat_apply(&fp).x - 0.75).abs() < 1e-15);

        let fp = FatPoint {
            x: 0.0,
            param: FamilyParam::standard(1.0, 0.3).unwrap(),
        };
        assert!((fat_apply(&fp).x - 0.3).abs() < 1e-15);
    }

    #[test]
    fn stage_projection_examples() {
        let t2 = tent(2.0);
        let u = Thread::new(t2, vec![0.25, 0.125, 0.0625, 0.03125, 0.015625], 1e-9).unwrap();
        let s0 = stage_projection(0, |x, _| x, &u).unwrap();
        assert_eq!(s0.x, 0.25);
        assert!(stage_projection(8, |x, _| x, &u).is_err());

        // threads agreeing through index 3 give equal stage-3 outputs
        let mut e = u.entries().to_vec();
        e[4] = 1.0 - e[4];
        let v = Thread::new(t2, e, 1e-9).unwrap();
        assert_eq!(
            stage_projection(3, |x, _| x, &u).unwrap().x,
            stage_projection(3, |x, _| x, &v).unwrap().x
        );
    }

    #[test]
    fn audit_identity_and_constant() {
        let pts: Vec<f64> = (0..100).map(|i| i as f64 / 100.0).collect();
        let id = epsilon_map_audit(
            &pts,
            |x| *x,
            |a, b| (a - b).abs(),
            |a, b| (a - b).abs(),
            |u| (*u, 0.0),
            1e-9,
        );
        assert_eq!(id, 0.0);

        let pts: Vec<f64> = vec![0.0, 0.25, 0.5, 1.0];
        let c = epsilon_map_audit(
            &pts,
            |_| 0.0f64,
            |a: &f64, b: &f64| (a - b).abs(),
            |a: &f64, b: &f64| (a - b).abs(),
            |u| (*u, 0.0),
            1e-9,
        );
        assert_eq!(c, 1.0);
    }

    #[test]
    fn audit_projection_respects_stage_bound() {
        // pairs sharing entries 0..=2 collide under pi_2 and sit within
        // 1/4 of each other in the damped metric
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut threads = Vec::new();
        for _ in 0..60 {
            let base = random_thread(tent(1.9), 3, 1e-9, &mut rng).unwrap();
            let a = base
                .extend_backward(PreimagePolicy::Leftmost)
                .and_then(|t| t.extend_backward(PreimagePolicy::Leftmost));
            let b = base
                .extend_backward(PreimagePolicy::Rightmost)
                .and_then(|t| t.extend_backward(PreimagePolicy::Rightmost));
            if let (Ok(a), Ok(b)) = (a, b) {
                threads.push(a);
                threads.push(b);
            }
        }
        let eps = epsilon_map_audit(
            &threads,
            |t| t.project(2).unwrap(),
            |a, b| a.d_infty(b).unwrap(),
            |a, b| (a - b).abs(),
            |u| (*u, 0.0),
            1e-9,
        );
        assert!(eps <= 0.25 + 1e-6, "eps = {eps}");
    }
}
