//! Small shared numerics: a damped 2x2 Newton solver with finite-difference
//! Jacobians.

/// Solve `a z = b` for a 2x2 system; `None` when near-singular.
fn solve2(a: [[f64; 2]; 2], b: [f64; 2]) -> Option<[f64; 2]> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let scale = a[0][0].abs() + a[0][1].abs() + a[1][0].abs() + a[1][1].abs();
    if det.abs() <= 1e-14 * scale.max(1.0) {
        return None;
    }
    Some([
        (b[0] * a[1][1] - b[1] * a[0][1]) / det,
        (a[0][0] * b[1] - a[1][0] * b[0]) / det,
    ])
}

fn norm_inf(v: [f64; 2]) -> f64 {
    v[0].abs().max(v[1].abs())
}

/// Damped Newton iteration on `g(z) = 0`, `z` in the plane. Returns the
/// root and its residual on success.
pub(crate) fn newton2(
    g: impl Fn([f64; 2]) -> [f64; 2],
    seed: [f64; 2],
    tol: f64,
    max_iter: usize,
) -> Option<([f64; 2], f64)> {
    let mut z = seed;
    let mut res = g(z);
    for _ in 0..max_iter {
        let r = norm_inf(res);
        if r < tol {
            return Some((z, r));
        }
        if !r.is_finite() || norm_inf(z) > 1e6 {
            return None;
        }
        let h0 = 1e-7 * (1.0 + z[0].abs());
        let h1 = 1e-7 * (1.0 + z[1].abs());
        let gx = g([z[0] + h0, z[1]]);
        let gy = g([z[0], z[1] + h1]);
        let jac = [
            [(gx[0] - res[0]) / h0, (gy[0] - res[0]) / h1],
            [(gx[1] - res[1]) / h0, (gy[1] - res[1]) / h1],
        ];
        let step = solve2(jac, res)?;
        // back-tracking damping
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..32 {
            let cand = [z[0] - lambda * step[0], z[1] - lambda * step[1]];
            let cres = g(cand);
            if norm_inf(cres) < r {
                z = cand;
                res = cres;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    let r = norm_inf(res);
    if r < tol {
        Some((z, r))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_finds_saddle_fixed_point() {
        // z -> (2x + 0.1 y, 0.05 x) fixed point at the origin; the linear
        // part is expanding in one direction.
        let g = |z: [f64; 2]| [2.0 * z[0] + 0.1 * z[1] - z[0], 0.05 * z[0] - z[1]];
        let (z, r) = newton2(g, [0.3, -0.2], 1e-12, 50).unwrap();
        assert!(z[0].abs() < 1e-10 && z[1].abs() < 1e-10);
        assert!(r < 1e-12);
    }
}
