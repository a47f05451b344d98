//! Snapping near-diameter pairs to exact unit distance.

use nalgebra::DMatrix;

use crate::geom::{diameter_of, Point};
use crate::linalg::{self, Vector};

const MAX_ITERATIONS: usize = 40;
const RESIDUAL: f64 = 1e-14;

/// Gauss-Newton with minimum-norm steps on the equations `|p_i - p_j|^2 = 1`
/// for the given pairs, plus every other pair that exceeds unit distance
/// during the iteration, plus `|p_i|^2 = r^2` on a sphere. Returns whether
/// the residual vanished; `points` is updated either way.
pub(crate) fn snap_pairs(points: &mut [Point], pairs: &[(usize, usize)], sphere_radius: Option<f64>) -> bool {
    let n = points.len();
    if n == 0 {
        return true;
    }
    let dim = points[0].len();
    for _ in 0..MAX_ITERATIONS {
        let mut rows: Vec<(usize, usize)> = pairs.to_vec();
        for i in 0..n {
            for j in i + 1..n {
                if !pairs.contains(&(i, j)) && (&points[i] - &points[j]).norm_squared() > 1.0 {
                    rows.push((i, j));
                }
            }
        }
        let sphere_rows = if sphere_radius.is_some() { n } else { 0 };
        let m = rows.len() + sphere_rows;
        if m == 0 {
            return true;
        }
        let mut jac = DMatrix::<f64>::zeros(m, n * dim);
        let mut f = Vector::zeros(m);
        for (k, &(i, j)) in rows.iter().enumerate() {
            let diff = &points[i] - &points[j];
            f[k] = diff.norm_squared() - 1.0;
            for c in 0..dim {
                jac[(k, i * dim + c)] = 2.0 * diff[c];
                jac[(k, j * dim + c)] = -2.0 * diff[c];
            }
        }
        if let Some(r) = sphere_radius {
            for i in 0..n {
                let k = rows.len() + i;
                f[k] = points[i].norm_squared() - r * r;
                for c in 0..dim {
                    jac[(k, i * dim + c)] = 2.0 * points[i][c];
                }
            }
        }
        if f.amax() < RESIDUAL {
            return true;
        }
        let svd = jac.svd(true, true);
        let step = match svd.solve(&f, 1e-10) {
            Ok(s) => s,
            Err(_) => return false,
        };
        if !step.iter().all(|x| x.is_finite()) {
            return false;
        }
        for i in 0..n {
            for c in 0..dim {
                points[i][c] -= step[i * dim + c];
            }
        }
    }
    false
}

/// Moves `start` by Newton steps toward a point at unit distance from every
/// target (and on the sphere, if any), leaving the other points fixed.
pub(crate) fn place_at_unit(start: &Point, targets: &[&Point], sphere_radius: Option<f64>) -> Option<Point> {
    let dim = start.len();
    let m = targets.len() + usize::from(sphere_radius.is_some());
    let mut x = start.clone();
    for _ in 0..MAX_ITERATIONS {
        let mut jac = DMatrix::<f64>::zeros(m, dim);
        let mut f = Vector::zeros(m);
        for (k, t) in targets.iter().enumerate() {
            let diff = &x - *t;
            f[k] = diff.norm_squared() - 1.0;
            jac.row_mut(k).copy_from(&(diff.transpose() * 2.0));
        }
        if let Some(r) = sphere_radius {
            f[m - 1] = x.norm_squared() - r * r;
            jac.row_mut(m - 1).copy_from(&(x.transpose() * 2.0));
        }
        if f.amax() < RESIDUAL {
            return Some(x);
        }
        let step = jac.svd(true, true).solve(&f, 1e-10).ok()?;
        if !step.iter().all(|v| v.is_finite()) {
            return None;
        }
        x -= step;
    }
    None
}

/// Scales a Euclidean configuration about its centroid to diameter 1.
pub(crate) fn normalize_diameter(points: &mut [Point]) -> bool {
    let Ok(diam) = diameter_of(points) else {
        return false;
    };
    if !(diam > 1e-12) {
        return false;
    }
    let c = linalg::centroid(points);
    for p in points.iter_mut() {
        *p = &c + (&*p - &c) / diam;
    }
    true
}
