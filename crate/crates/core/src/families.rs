//! The three one-parameter endomorphism families (tent, quadratic, Arnold
//! standard), their lifts and image-interval dynamics, stabilization
//! detection, and exact periodic-orbit / entropy analysis for the tent
//! family.

use crate::{Error, Result};
use std::fmt;

/// Cap on the standard-family coupling `b`.
pub const STANDARD_B_MAX: f64 = 8.0;

/// Snap tolerance deciding when an itinerary symbol is `C`.
pub const CRITICAL_SNAP_TOL: f64 = 1e-9;

/// Deepest period admitted by the tent branch enumeration (2^n branches).
pub const MAX_BRANCH_DEPTH: usize = 20;

const TWO_PI: f64 = std::f64::consts::TAU;

/// A point in parameter space for one of the three families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyParam {
    /// `T_s(x) = min(s x, s (1 - x))` on `[0,1]`, `s in [0,2]`.
    Tent { s: f64 },
    /// `f_a(x) = a - x^2` on `[-beta, beta]`, `a in [-1/2, 2]`.
    Quadratic { a: f64 },
    /// Degree-one circle map with lift
    /// `x + omega + (b / 2 pi) sin(2 pi x)`, `b >= 0`, `omega in [0,1]`.
    Standard { b: f64, omega: f64 },
}

impl FamilyParam {
    pub fn tent(s: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&s) {
            return Err(Error::domain("tent slope s", s, "[0, 2]"));
        }
        Ok(FamilyParam::Tent { s })
    }

    pub fn quadratic(a: f64) -> Result<Self> {
        if !(-0.5..=2.0).contains(&a) {
            return Err(Error::domain("quadratic parameter a", a, "[-1/2, 2]"));
        }
        Ok(FamilyParam::Quadratic { a })
    }

    pub fn standard(b: f64, omega: f64) -> Result<Self> {
        if !(0.0..=STANDARD_B_MAX).contains(&b) {
            return Err(Error::domain("standard coupling b", b, "[0, b*]"));
        }
        if !(0.0..=1.0).contains(&omega) {
            return Err(Error::domain("standard offset omega", omega, "[0, 1]"));
        }
        Ok(FamilyParam::Standard { b, omega })
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, FamilyParam::Standard { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyParam::Tent { .. } => "tent",
            FamilyParam::Quadratic { .. } => "quadratic",
            FamilyParam::Standard { .. } => "standard",
        }
    }

    /// Canonical phase interval: `[0,1]` for the tent family, the forward
    /// invariant `[-beta, beta]` for the quadratic family (`beta` the
    /// positive fixed point of `-f_a`, floored at `1/2` where none exists),
    /// and a full turn for the standard family.
    pub fn phase_interval(&self) -> IntervalBox {
        match self {
            FamilyParam::Tent { .. } => IntervalBox { lo: 0.0, hi: 1.0 },
            FamilyParam::Quadratic { a } => {
                let beta = quadratic_beta(*a);
                IntervalBox { lo: -beta, hi: beta }
            }
            FamilyParam::Standard { .. } => IntervalBox { lo: 0.0, hi: 1.0 },
        }
    }

    /// Metric on the phase space: absolute value for interval families, arc
    /// distance for the circle.
    pub fn phase_dist(&self, a: f64, b: f64) -> f64 {
        if self.is_circle() {
            crate::geometry::circle_dist(a, b)
        } else {
            (a - b).abs()
        }
    }

    /// A Lipschitz constant of the map on its phase interval.
    pub fn lipschitz(&self) -> f64 {
        match self {
            FamilyParam::Tent { s } => *s,
            FamilyParam::Quadratic { a } => 2.0 * quadratic_beta(*a),
            FamilyParam::Standard { b, .. } => 1.0 + b,
        }
    }

    /// Critical point of the interval families.
    pub fn critical_point(&self) -> Option<f64> {
        match self {
            FamilyParam::Tent { .. } => Some(0.5),
            FamilyParam::Quadratic { .. } => Some(0.0),
            FamilyParam::Standard { .. } => None,
        }
    }

    /// Evaluate the map. Interval families reject points outside the phase
    /// interval; circle values are reduced mod 1.
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            FamilyParam::Tent { .. } => {
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::domain("tent phase point", x, "[0, 1]"));
                }
            }
            FamilyParam::Quadratic { .. } => {
                let pb = self.phase_interval();
                if !pb.contains_point(x) {
                    return Err(Error::domain("quadratic phase point", x, "[-beta, beta]"));
                }
            }
            FamilyParam::Standard { .. } => {}
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            FamilyParam::Tent { s } => (s * x).min(s * (1.0 - x)),
            FamilyParam::Quadratic { a } => a - x * x,
            FamilyParam::Standard { .. } => {
                crate::geometry::reduce_angle(self.lift_eval_unchecked(x))
            }
        }
    }

    /// Evaluate after clamping into the phase interval (absorbs rounding
    /// drift in long orbits).
    pub(crate) fn eval_clamped(&self, x: f64) -> f64 {
        let pb = self.phase_interval();
        self.eval_unchecked(x.clamp(pb.lo, pb.hi))
    }

    /// The degree-one lift of the standard family. The sine argument is
    /// reduced mod 1 first, so `lift(x + k) = lift(x) + k` holds exactly for
    /// moderate integers `k`.
    pub fn lift_eval(&self, x: f64) -> Result<f64> {
        match self {
            FamilyParam::Standard { .. } => Ok(self.lift_eval_unchecked(x)),
            _ => Err(Error::WrongFamily {
                required: "standard",
            }),
        }
    }

    pub(crate) fn lift_eval_unchecked(&self, x: f64) -> f64 {
        match self {
            FamilyParam::Standard { b, omega } => {
                let k = x.floor();
                let frac = x - k;
                frac + omega + (b / TWO_PI) * (TWO_PI * frac).sin() + k
            }
            _ => unreachable!("lift of an interval family"),
        }
    }

    /// Interior critical points of the standard lift on `[0,1]`
    /// (`1 + b cos(2 pi x) = 0`), ascending. Empty for `b <= 1`.
    pub fn lift_critical_points(&self) -> Vec<f64> {
        match self {
            FamilyParam::Standard { b, .. } if *b > 1.0 => {
                let c = (-1.0 / b).acos() / TWO_PI;
                vec![c, 1.0 - c]
            }
            _ => Vec::new(),
        }
    }
}

pub(crate) fn quadratic_beta(a: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 4.0 * a).max(0.0).sqrt())
}

/// A closed subinterval of a family's phase interval. For the standard
/// family boxes live in lift coordinates with width at most 1; a full turn
/// is canonically `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalBox {
    pub lo: f64,
    pub hi: f64,
}

impl IntervalBox {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        // NaN-rejecting comparison
        if hi >= lo {
            Ok(IntervalBox { lo, hi })
        } else {
            Err(Error::domain("interval width", hi - lo, "[0, inf)"))
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains_point(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

/// Hausdorff distance between two intervals in the same coordinate.
pub fn interval_hausdorff(a: &IntervalBox, b: &IntervalBox) -> f64 {
    (a.lo - b.lo).abs().max((a.hi - b.hi).abs())
}

/// Exact forward image of a box.
///
/// Tent and quadratic images come from endpoint plus critical values. The
/// standard family works through the monotone-piece decomposition of the
/// lift and returns the full circle once the image spans a turn. Quadratic
/// images are clipped into the phase interval (see [`image_escapes`]).
pub fn image_interval(p: &FamilyParam, b: &IntervalBox) -> IntervalBox {
    image_interval_raw(p, b).0
}

/// True when the raw quadratic image left the phase interval and had to be
/// clipped (possible for `a < -1/4`, where orbits escape).
pub fn image_escapes(p: &FamilyParam, b: &IntervalBox) -> bool {
    image_interval_raw(p, b).1
}

fn image_interval_raw(p: &FamilyParam, b: &IntervalBox) -> (IntervalBox, bool) {
    match p {
        FamilyParam::Tent { .. } => {
            let mut lo = p.eval_unchecked(b.lo).min(p.eval_unchecked(b.hi));
            let mut hi = p.eval_unchecked(b.lo).max(p.eval_unchecked(b.hi));
            if b.contains_point(0.5) {
                let v = p.eval_unchecked(0.5);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            (IntervalBox { lo, hi }, false)
        }
        FamilyParam::Quadratic { a } => {
            let mut lo = p.eval_unchecked(b.lo).min(p.eval_unchecked(b.hi));
            let mut hi = p.eval_unchecked(b.lo).max(p.eval_unchecked(b.hi));
            if b.contains_point(0.0) {
                lo = lo.min(*a);
                hi = hi.max(*a);
            }
            let phase = p.phase_interval();
            let clipped = lo < phase.lo - 1e-15 || hi > phase.hi + 1e-15;
            (
                IntervalBox {
                    lo: lo.clamp(phase.lo, phase.hi),
                    hi: hi.clamp(phase.lo, phase.hi),
                },
                clipped,
            )
        }
        FamilyParam::Standard { .. } => {
            if b.width() >= 1.0 {
                return (IntervalBox { lo: 0.0, hi: 1.0 }, false);
            }
            let mut vals = vec![
                p.lift_eval_unchecked(b.lo),
                p.lift_eval_unchecked(b.hi),
            ];
            for c in p.lift_critical_points() {
                // translate each critical point into the box's window
                let mut cc = c + (b.lo - c).ceil();
                while cc <= b.hi {
                    if cc >= b.lo {
                        vals.push(p.lift_eval_unchecked(cc));
                    }
                    cc += 1.0;
                }
            }
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            if hi - lo >= 1.0 {
                (IntervalBox { lo: 0.0, hi: 1.0 }, false)
            } else {
                let base = crate::geometry::reduce_angle(lo);
                (
                    IntervalBox {
                        lo: base,
                        hi: base + (hi - lo),
                    },
                    false,
                )
            }
        }
    }
}

/// Least `m <= m_max` with `f^m(X)` and `f^{m+1}(X)` Hausdorff-closer than
/// `tol`, or `None`.
///
/// The tolerance is measured relative to the current image width, so a
/// geometric collapse (width shrinking to zero at a fixed ratio) is never
/// mistaken for stabilization; proximity to an exactly invariant interval of
/// positive width is detected.
pub fn stabilization_index(p: &FamilyParam, m_max: usize, tol: f64) -> Option<usize> {
    let mut cur = p.phase_interval();
    for m in 0..=m_max {
        let next = image_interval(p, &cur);
        let d = interval_hausdorff(&cur, &next);
        if cur.width() > 0.0 && d < tol * cur.width() {
            return Some(m);
        }
        cur = next;
    }
    None
}

/// Image interval after 64 steps; the working core for backward extensions.
pub fn stabilized_core(p: &FamilyParam) -> IntervalBox {
    let mut cur = p.phase_interval();
    for _ in 0..64 {
        let next = image_interval(p, &cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// Itinerary symbols relative to the critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symbol {
    L,
    C,
    R,
}

/// A finite word over `{L, C, R}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolWord(pub Vec<Symbol>);

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            let c = match s {
                Symbol::L => 'L',
                Symbol::C => 'C',
                Symbol::R => 'R',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Exact enumeration of the fixed points of `T_s^n`, `s in (1, 2]`.
///
/// Walks the monotone branches of `T_s^n` (one symbol word each), solves the
/// affine fixed-point equation on every branch that stays feasible, and
/// keeps solutions lying in their branch interval. Distinct points closer
/// than 1e-10 are merged (branch-boundary duplicates).
pub fn tent_periodic_points(s: f64, n: usize) -> Result<Vec<(f64, SymbolWord)>> {
    if !(s > 1.0 && s <= 2.0) {
        return Err(Error::domain("tent slope s", s, "(1, 2]"));
    }
    if n == 0 || n > MAX_BRANCH_DEPTH {
        return Err(Error::BranchCap {
            n,
            max: MAX_BRANCH_DEPTH,
        });
    }
    // stack entry: (depth, alpha, c, lo, hi, word-bits); the branch map so
    // far is g(x) = alpha x + c, feasible on [lo, hi].
    let mut out: Vec<(f64, u32)> = Vec::new();
    let mut stack: Vec<(usize, f64, f64, f64, f64, u32)> =
        vec![(0, 1.0, 0.0, 0.0, 1.0, 0)];
    while let Some((depth, alpha, c, lo, hi, word)) = stack.pop() {
        if depth == n {
            let x = c / (1.0 - alpha);
            if x >= lo - 1e-12 && x <= hi + 1e-12 {
                out.push((x.clamp(0.0, 1.0), word));
            }
            continue;
        }
        for (bit, jlo, jhi) in [(0u32, 0.0, 0.5), (1u32, 0.5, 1.0)] {
            // x-range with g(x) in [jlo, jhi]
            let (a1, a2) = ((jlo - c) / alpha, (jhi - c) / alpha);
            let (mut nlo, mut nhi) = if alpha > 0.0 { (a1, a2) } else { (a2, a1) };
            nlo = nlo.max(lo);
            nhi = nhi.min(hi);
            if nlo <= nhi + 1e-15 {
                let (na, nc) = if bit == 0 {
                    (s * alpha, s * c)
                } else {
                    (-s * alpha, s - s * c)
                };
                stack.push((depth + 1, na, nc, nlo, nhi, word | (bit << depth)));
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out.dedup_by(|a, b| (a.0 - b.0).abs() < 1e-10);
    Ok(out
        .into_iter()
        .map(|(x, bits)| {
            let word = SymbolWord(
                (0..n)
                    .map(|i| {
                        if bits >> i & 1 == 0 {
                            Symbol::L
                        } else {
                            Symbol::R
                        }
                    })
                    .collect(),
            );
            (x, word)
        })
        .collect())
}

/// `(1/n) log #Fix(T_s^n)`, the periodic-orbit growth estimate of the
/// topological entropy `log s`.
pub fn entropy_estimate(s: f64, n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::domain("entropy depth n", n as f64, "[4, 20]"));
    }
    let count = tent_periodic_points(s, n)?.len();
    Ok((count as f64).ln() / n as f64)
}

/// L/C/R itinerary of `x` over `n` steps, `C` only within
/// [`CRITICAL_SNAP_TOL`] of the critical point. Interval families only.
pub fn itinerary(p: &FamilyParam, x: f64, n: usize) -> Result<SymbolWord> {
    let crit = p.critical_point().ok_or(Error::WrongFamily {
        required: "tent or quadratic",
    })?;
    let pb = p.phase_interval();
    if !pb.contains_point(x) {
        return Err(Error::domain("phase point", x, "phase interval"));
    }
    let mut cur = x;
    let mut word = Vec::with_capacity(n);
    for _ in 0..n {
        word.push(if (cur - crit).abs() < CRITICAL_SNAP_TOL {
            Symbol::C
        } else if cur < crit {
            Symbol::L
        } else {
            Symbol::R
        });
        cur = p.eval_clamped(cur);
    }
    Ok(SymbolWord(word))
}

/// All preimages of `y`, ascending, within the phase interval.
pub fn preimages(p: &FamilyParam, y: f64) -> Vec<f64> {
    let mut out = match p {
        FamilyParam::Tent { s } => {
            if *s <= 0.0 {
                return if y == 0.0 { vec![0.0, 1.0] } else { vec![] };
            }
            if y > s * 0.5 || y < 0.0 {
                vec![]
            } else {
                vec![y / s, 1.0 - y / s]
            }
        }
        FamilyParam::Quadratic { a } => {
            let r = a - y;
            if r < 0.0 {
                vec![]
            } else {
                let q = r.sqrt();
                vec![-q, q]
            }
        }
        FamilyParam::Standard { .. } => {
            let y = crate::geometry::reduce_angle(y);
            let mut cuts = vec![0.0];
            cuts.extend(p.lift_critical_points());
            cuts.push(1.0);
            let mut sols = Vec::new();
            for w in cuts.windows(2) {
                let (lo, hi) = (w[0], w[1]);
                let (flo, fhi) = (p.lift_eval_unchecked(lo), p.lift_eval_unchecked(hi));
                let (vmin, vmax) = (flo.min(fhi), flo.max(fhi));
                let mut k = (vmin - y).ceil();
                while y + k <= vmax + 1e-15 {
                    if y + k >= vmin - 1e-15 {
                        if let Some(x) = bisect_monotone(p, lo, hi, flo <= fhi, y + k) {
                            sols.push(crate::geometry::reduce_angle(x));
                        }
                    }
                    k += 1.0;
                }
            }
            sols
        }
    };
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    out
}

fn bisect_monotone(p: &FamilyParam, mut lo: f64, mut hi: f64, increasing: bool, target: f64) -> Option<f64> {
    let (flo, fhi) = (p.lift_eval_unchecked(lo), p.lift_eval_unchecked(hi));
    let (vmin, vmax) = (flo.min(fhi), flo.max(fhi));
    if target < vmin - 1e-12 || target > vmax + 1e-12 {
        return None;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        let v = p.lift_eval_unchecked(mid);
        let below = if increasing { v < target } else { v > target };
        if below {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        let t = FamilyParam::tent(1.5).unwrap();
        assert_eq!(t.eval(0.0).unwrap(), 0.0);
        assert_eq!(t.eval(0.5).unwrap(), 0.75);
        let q = FamilyParam::quadratic(2.0).unwrap();
        assert_eq!(q.eval(0.0).unwrap(), 2.0);
        assert!(t.eval(1.5).is_err());
    }

    #[test]
    fn lift_examples() {
        let p = FamilyParam::standard(0.0, 0.3).unwrap();
        assert!((p.lift_eval(2.0).unwrap() - 2.3).abs() < 1e-15);
        let p = FamilyParam::standard(1.0, 0.3).unwrap();
        assert_eq!(p.lift_eval(0.0).unwrap(), 0.3);
        let p = FamilyParam::standard(std::f64::consts::TAU, 0.0).unwrap();
        assert!((p.lift_eval(0.25).unwrap() - 1.25).abs() < 1e-12);
    }

    #[test]
    fn image_interval_examples() {
        let t = FamilyParam::tent(1.5).unwrap();
        let full = IntervalBox::new(0.0, 1.0).unwrap();
        let img = image_interval(&t, &full);
        assert_eq!((img.lo, img.hi), (0.0, 0.75));
        let img2 = image_interval(&t, &img);
        assert_eq!((img2.lo, img2.hi), (0.0, 0.75));

        let q = FamilyParam::quadratic(2.0).unwrap();
        let img = image_interval(&q, &q.phase_interval());
        assert_eq!((img.lo, img.hi), (-2.0, 2.0));
    }

    #[test]
    fn image_interval_standard_full_circle() {
        let p = FamilyParam::standard(8.0, 0.0).unwrap();
        let img = image_interval(&p, &IntervalBox::new(0.0, 0.5).unwrap());
        assert_eq!((img.lo, img.hi), (0.0, 1.0));
    }

    #[test]
    fn image_escape_flagged() {
        let q = FamilyParam::quadratic(-0.4).unwrap();
        let pb = q.phase_interval();
        assert!(image_escapes(&q, &pb));
        let img = image_interval(&q, &pb);
        assert!(pb.contains_box(&img));
    }

    #[test]
    fn stabilization_examples() {
        let t = FamilyParam::tent(1.5).unwrap();
        assert_eq!(stabilization_index(&t, 64, 1e-9), Some(1));
        let t = FamilyParam::tent(0.5).unwrap();
        assert_eq!(stabilization_index(&t, 64, 1e-9), None);
        let p = FamilyParam::standard(2.0, 0.3).unwrap();
        assert_eq!(stabilization_index(&p, 64, 1e-9), Some(0));
        // the slope-2 tent is already onto, so its least index is zero
        let t = FamilyParam::tent(2.0).unwrap();
        assert_eq!(stabilization_index(&t, 64, 1e-9), Some(0));
        // T_1 is the identity on its first image
        let t = FamilyParam::tent(1.0).unwrap();
        assert_eq!(stabilization_index(&t, 64, 1e-9), Some(1));
    }

    #[test]
    fn periodic_points_examples() {
        let pts = tent_periodic_points(2.0, 1).unwrap();
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[0] - 0.0).abs() < 1e-12);
        assert!((xs[1] - 2.0 / 3.0).abs() < 1e-12);

        let pts = tent_periodic_points(1.5, 1).unwrap();
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        assert_eq!(xs.len(), 2);
        assert!((xs[1] - 0.6).abs() < 1e-12);

        assert_eq!(tent_periodic_points(2.0, 3).unwrap().len(), 8);
        assert!(tent_periodic_points(2.0, 21).is_err());
        assert!(tent_periodic_points(0.9, 3).is_err());
    }

    #[test]
    fn periodic_points_are_periodic_and_distinct() {
        for s in [1.2, 1.5, 1.8, 2.0] {
            let p = FamilyParam::tent(s).unwrap();
            for n in [1, 2, 5, 8] {
                let pts = tent_periodic_points(s, n).unwrap();
                for (x, _) in &pts {
                    let mut cur = *x;
                    for _ in 0..n {
                        cur = p.eval_clamped(cur);
                    }
                    assert!((cur - x).abs() < 1e-10, "s={s} n={n} x={x} -> {cur}");
                }
                for w in pts.windows(2) {
                    assert!(w[1].0 - w[0].0 > 1e-10);
                }
            }
        }
    }

    #[test]
    fn entropy_examples() {
        for n in 4..=16 {
            if n <= MAX_BRANCH_DEPTH {
                let est = entropy_estimate(2.0, n).unwrap();
                assert!((est - std::f64::consts::LN_2).abs() < 1e-12, "n={n}");
                assert_eq!(tent_periodic_points(2.0, n).unwrap().len(), 1usize << n);
            }
        }
        let est = entropy_estimate(1.3, 14).unwrap();
        assert!((est - 1.3f64.ln()).abs() <= 0.08);
        assert!(entropy_estimate(1.5, 3).is_err());
    }

    #[test]
    fn entropy_shrinks_toward_one() {
        // orbit growth is subexponential-looking just above s = 1
        let lo = entropy_estimate(1.02, 14).unwrap();
        let hi = entropy_estimate(1.8, 14).unwrap();
        assert!(lo < hi);
        assert!(lo < 0.2);
    }

    #[test]
    fn itinerary_examples() {
        let p = FamilyParam::tent(2.0).unwrap();
        assert_eq!(itinerary(&p, 2.0 / 3.0, 3).unwrap().to_string(), "RRR");
        assert_eq!(itinerary(&p, 0.0, 4).unwrap().to_string(), "LLLL");
        assert_eq!(itinerary(&p, 0.5, 5).unwrap().to_string(), "CRLLL");
        let c = FamilyParam::standard(0.5, 0.1).unwrap();
        assert!(itinerary(&c, 0.1, 3).is_err());
    }

    #[test]
    fn preimage_examples() {
        let p = FamilyParam::tent(2.0).unwrap();
        assert_eq!(preimages(&p, 0.5), vec![0.25, 0.75]);
        let p = FamilyParam::tent(1.5).unwrap();
        assert!(preimages(&p, 0.9).is_empty());
        let p = FamilyParam::standard(0.0, 0.25).unwrap();
        let pre = preimages(&p, 0.0);
        assert_eq!(pre.len(), 1);
        assert!((pre[0] - 0.75).abs() < 1e-10);
    }

    #[test]
    fn standard_preimages_cover_turning_maps() {
        let p = FamilyParam::standard(3.0, 0.5).unwrap();
        for y in [0.0, 0.3, 0.77] {
            let pre = preimages(&p, y);
            assert!(!pre.is_empty());
            for x in pre {
                assert!(p.phase_dist(p.eval_unchecked(x), y) < 1e-9);
            }
        }
    }
}
