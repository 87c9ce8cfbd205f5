//! Small dense optimisation helpers: Nelder–Mead, finite-difference
//! Hessians and Cholesky inversion.

/// Result of a Nelder–Mead run.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub x: Vec<f64>,
    pub fx: f64,
    pub evals: usize,
    pub converged: bool,
}

/// Minimises `f` from `x0`; stops when every vertex lies within `diam_tol`
/// of the best one or after `max_evals` evaluations.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    diam_tol: f64,
    max_evals: usize,
) -> Simplex {
    let n = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut pts: Vec<Vec<f64>> = vec![x0.to_vec()];
    for i in 0..n {
        let mut p = x0.to_vec();
        p[i] += step;
        pts.push(p);
    }
    let mut vals: Vec<f64> = pts.iter().map(|p| eval(p, &mut evals)).collect();

    let converged = loop {
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
        pts = idx.iter().map(|&i| pts[i].clone()).collect();
        vals = idx.iter().map(|&i| vals[i]).collect();

        let diam = pts[1..]
            .iter()
            .map(|p| dist(p, &pts[0]))
            .fold(0.0, f64::max);
        if diam < diam_tol {
            break true;
        }
        if evals >= max_evals {
            break false;
        }

        let mut c = vec![0.0; n];
        for p in &pts[..n] {
            for (ci, pi) in c.iter_mut().zip(p) {
                *ci += pi / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            c.iter()
                .zip(&pts[n])
                .map(|(ci, wi)| ci + t * (wi - ci))
                .collect()
        };
        let xr = along(-1.0);
        let fr = eval(&xr, &mut evals);
        if fr < vals[0] {
            let xe = along(-2.0);
            let fe = eval(&xe, &mut evals);
            if fe < fr {
                pts[n] = xe;
                vals[n] = fe;
            } else {
                pts[n] = xr;
                vals[n] = fr;
            }
            continue;
        }
        if fr < vals[n - 1] {
            pts[n] = xr;
            vals[n] = fr;
            continue;
        }
        let (xc, fc) = if fr < vals[n] {
            let xc = along(-0.5);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        } else {
            let xc = along(0.5);
            let fc = eval(&xc, &mut evals);
            (xc, fc)
        };
        if fc < vals[n].min(fr) {
            pts[n] = xc;
            vals[n] = fc;
            continue;
        }
        for i in 1..=n {
            let p: Vec<f64> = pts[0]
                .iter()
                .zip(&pts[i])
                .map(|(b, q)| b + 0.5 * (q - b))
                .collect();
            vals[i] = eval(&p, &mut evals);
            pts[i] = p;
        }
    };
    let best = (0..=n)
        .min_by(|&a, &b| vals[a].total_cmp(&vals[b]))
        .unwrap();
    Simplex {
        x: pts[best].clone(),
        fx: vals[best],
        evals,
        converged,
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Finite-difference Hessian of `f` at `x` with per-coordinate steps `h`.
///
/// Coordinates flagged in `forward` are differenced one-sidedly (towards
/// larger values), for parameters sitting on a lower bound.
pub fn hessian<E>(
    f: &mut impl FnMut(&[f64]) -> Result<f64, E>,
    x: &[f64],
    h: &[f64],
    forward: &[bool],
) -> Result<Vec<Vec<f64>>, E> {
    let n = x.len();
    let mut at = |dx: &[(usize, f64)]| -> Result<f64, E> {
        let mut y = x.to_vec();
        for &(i, d) in dx {
            y[i] += d;
        }
        f(&y)
    };
    let f0 = at(&[])?;
    let mut hm = vec![vec![0.0; n]; n];
    for i in 0..n {
        let hi = h[i];
        hm[i][i] = if forward[i] {
            (at(&[(i, 2.0 * hi)])? - 2.0 * at(&[(i, hi)])? + f0) / (hi * hi)
        } else {
            (at(&[(i, hi)])? - 2.0 * f0 + at(&[(i, -hi)])?) / (hi * hi)
        };
    }
    for i in 0..n {
        for j in 0..i {
            let (si, sj) = (h[i], h[j]);
            let oi: [(f64, f64); 2] = if forward[i] {
                [(si, 1.0), (0.0, -1.0)]
            } else {
                [(si, 1.0), (-si, -1.0)]
            };
            let oj: [(f64, f64); 2] = if forward[j] {
                [(sj, 1.0), (0.0, -1.0)]
            } else {
                [(sj, 1.0), (-sj, -1.0)]
            };
            let wi = if forward[i] { si } else { 2.0 * si };
            let wj = if forward[j] { sj } else { 2.0 * sj };
            let mut s = 0.0;
            for &(di, ci) in &oi {
                for &(dj, cj) in &oj {
                    s += ci * cj * at(&[(i, di), (j, dj)])?;
                }
            }
            hm[i][j] = s / (wi * wj);
            hm[j][i] = hm[i][j];
        }
    }
    Ok(hm)
}

/// Inverse of a symmetric positive-definite matrix, or `None` if it is not.
pub fn spd_inverse(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = a[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if !(s > 0.0) || !s.is_finite() {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    // columns of L^{-T} L^{-1}
    let mut inv = vec![vec![0.0; n]; n];
    for col in 0..n {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let rhs = if i == col { 1.0 } else { 0.0 };
            y[i] = (rhs - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
        }
        let mut z = vec![0.0; n];
        for i in (0..n).rev() {
            z[i] = (y[i] - (i + 1..n).map(|k| l[k][i] * z[k]).sum::<f64>()) / l[i][i];
        }
        for i in 0..n {
            inv[i][col] = z[i];
        }
    }
    Some(inv)
}

/// ln(1 + e^u), accurate in both tails.
pub fn softplus(u: f64) -> f64 {
    if u > 35.0 {
        u
    } else {
        u.exp().ln_1p()
    }
}

/// Inverse of [`softplus`] for v > 0.
pub fn softplus_inv(v: f64) -> f64 {
    if v > 35.0 {
        v
    } else {
        v.exp_m1().ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let r = nelder_mead(
            |x| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2),
            &[-1.2, 1.0],
            0.5,
            1e-10,
            5000,
        );
        assert!(r.converged);
        assert!(
            (r.x[0] - 1.0).abs() < 1e-6 && (r.x[1] - 1.0).abs() < 1e-6,
            "{r:?}"
        );
    }

    #[test]
    fn quadratic_hessian_exact() {
        let mut f = |x: &[f64]| -> Result<f64, ()> {
            Ok(3.0 * x[0] * x[0] + x[0] * x[1] + 2.0 * x[1] * x[1])
        };
        for fw in [[false, false], [true, false], [true, true]] {
            let h = hessian(&mut f, &[0.3, -0.2], &[1e-3, 1e-3], &fw).unwrap();
            assert!((h[0][0] - 6.0).abs() < 1e-6);
            assert!((h[1][1] - 4.0).abs() < 1e-6);
            assert!((h[0][1] - 1.0).abs() < 1e-6, "{fw:?} {h:?}");
        }
    }

    #[test]
    fn inverse() {
        let a = vec![vec![4.0, 1.0], vec![1.0, 3.0]];
        let inv = spd_inverse(&a).unwrap();
        let det = 11.0;
        assert!((inv[0][0] - 3.0 / det).abs() < 1e-15);
        assert!((inv[0][1] + 1.0 / det).abs() < 1e-15);
        assert!(spd_inverse(&[vec![1.0, 2.0], vec![2.0, 1.0]]).is_none());
    }

    #[test]
    fn softplus_round_trip() {
        for v in [1e-8, 0.3, 4.0, 80.0] {
            assert!((softplus(softplus_inv(v)) / v - 1.0).abs() < 1e-12);
        }
    }
}
