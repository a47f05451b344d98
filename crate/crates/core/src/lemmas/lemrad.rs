//! Radius of the set of sphere points at unit distance from every vertex of
//! a regular unit simplex inscribed in a sphere.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use serde::Serialize;

use super::{run_trials, EqualityCase, LemmaReport, Witness};
use crate::error::{Error, Result};
use crate::geom::regular_unit_simplex;
use crate::linalg::{self, Vector};
use crate::tolerance::Tolerance;

/// Closed-form quantities for `k` vertices on a sphere of radius `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemradValues {
    pub r: f64,
    pub k: usize,
    /// Distance from the sphere center to the simplex's affine hull.
    pub b: f64,
    /// Distance from that hull to the flat carrying the unit-distance set.
    pub a: f64,
    pub r_omega: f64,
    /// `|r_omega^2 - (r^2 - (b - a)^2)|`.
    pub identity_residual: f64,
}

/// `b = sqrt(r^2 - (k-1)/(2k))`, `a = 1/(2kb)`, `r_omega = sqrt((k+1)/(2k) - a^2)`.
pub fn lemrad_closed_form(r: f64, k: usize) -> Result<LemradValues> {
    if k < 2 {
        return Err(Error::Argument(format!("need at least 2 vertices, got {k}")));
    }
    if !(r > FRAC_1_SQRT_2) || !r.is_finite() {
        return Err(Error::Domain(format!("sphere radius must exceed 1/sqrt(2), got {r}")));
    }
    let kf = k as f64;
    let b = (r * r - (kf - 1.0) / (2.0 * kf)).sqrt();
    let a = 1.0 / (2.0 * kf * b);
    let r2 = (kf + 1.0) / (2.0 * kf) - a * a;
    if r2 < 0.0 {
        return Err(Error::Domain(format!("no unit-distance points for r = {r}, k = {k}")));
    }
    let r_omega = r2.sqrt();
    Ok(LemradValues {
        r,
        k,
        b,
        a,
        r_omega,
        identity_residual: (r2 - (r * r - (b - a) * (b - a))).abs(),
    })
}

/// Geometric evaluation for explicit vertices `v_i` on the sphere of radius
/// `r` centered at the origin: the unit-distance set lies in the flat
/// `x . v_i = r^2 - 1/2`; its center is the flat's min-norm point.
/// Returns `(center, radius)`.
fn unit_distance_sphere(vertices: &[Vector], r: f64) -> Result<(Vector, f64)> {
    let k = vertices.len();
    let n = vertices[0].len();
    let v = DMatrix::from_fn(k, n, |i, j| vertices[i][j]);
    let gram = &v * v.transpose();
    let rhs = Vector::from_element(k, r * r - 0.5);
    let y = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("vertices are linearly dependent".into()))?;
    let w = v.transpose() * y;
    let r2 = r * r - w.norm_squared();
    if r2 < 0.0 {
        return Err(Error::Domain("the unit-distance set is empty".into()));
    }
    Ok((w, r2.sqrt()))
}

/// Places random rotated copies of the regular `k`-vertex unit simplex on
/// `S^d_r` and compares the geometric radius, offset and center direction
/// with the closed form; also checks that sampled points of the computed
/// sphere are at unit distance from every vertex.
pub fn lemrad_geometric_check(r: f64, k: usize, d: usize, trials: usize, seed: u64) -> Result<LemmaReport> {
    let cf = lemrad_closed_form(r, k)?;
    if k > d {
        return Err(Error::Dimension(format!("k = {k} vertices need d >= k, got d = {d}")));
    }
    let n = d + 1;
    let base = regular_unit_simplex(n, k)?.into_points();
    let tol = Tolerance::default();
    // agreement tolerance scales with the conditioning near r = 1/sqrt 2
    let agree = 1e-9 * (1.0 + 1.0 / cf.b);
    let tally = run_trials(trials, seed, |rng, t| {
        let q = linalg::random_rotation(n, rng);
        let axis = {
            let mut e = Vector::zeros(n);
            e[n - 1] = cf.b;
            e
        };
        let verts: Vec<Vector> = base.iter().map(|p| &q * (p + &axis)).collect();
        let (w, r_omega) = unit_distance_sphere(&verts, r)?;
        let centroid = linalg::centroid(&verts);
        let a_geo = cf.b - w.norm();
        let dir_err = if w.norm() > 1e-12 {
            (w.normalize() - centroid.normalize()).norm()
        } else {
            0.0
        };
        let err = (r_omega - cf.r_omega).abs().max((a_geo - cf.a).abs()).max(dir_err);
        t.maximum("max_radius_error", (r_omega - cf.r_omega).abs());
        t.maximum("max_offset_error", (a_geo - cf.a).abs());
        t.record(agree - err, false, tol, || EqualityCase::Unclassified, || {
            Witness::new(agree - err, format!("closed form disagrees (r = {r}, k = {k})"), &[&w])
        });
        // a point of the computed sphere
        let normal = linalg::orthonormal_complement(&verts, n);
        if !normal.is_empty() {
            let u = linalg::random_unit(normal.len(), rng);
            let mut x = w.clone();
            for (c, b) in u.iter().zip(&normal) {
                x.axpy(r_omega * c, b, 1.0);
            }
            let dev = verts
                .iter()
                .map(|v| (linalg::distance(&x, v) - 1.0).abs())
                .fold((x.norm() - r).abs(), f64::max);
            t.maximum("max_membership_error", dev);
            if dev > agree {
                t.fail(|| Witness::new(-dev, "sampled point is not at unit distance", &[&x]));
            }
        }
        Ok(())
    })?;
    Ok(tally
        .into_report("lemrad")
        .with_detail("r", r)
        .with_detail("k", k)
        .with_detail("d", d)
        .with_detail("closed_form", cf))
}

/// Geometric check over a grid of radii and all `2 <= k <= d <= max_d`.
pub fn verify_lemrad(radii: &[f64], max_d: usize, trials: usize, seed: u64) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    let mut index = 0u64;
    for &r in radii {
        for d in 2..=max_d {
            for k in 2..=d {
                out.push(lemrad_geometric_check(r, k, d, trials, linalg::derive_seed(seed, index))?);
                index += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_sphere_with_two_vertices() {
        let v = lemrad_closed_form(1.0, 2).unwrap();
        assert!((v.r_omega - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((v.r_omega - 0.816497).abs() < 1e-6);
        assert!(v.identity_residual < 1e-12);
    }

    #[test]
    fn limit_radius_makes_offsets_equal() {
        for k in 2..6 {
            let v = lemrad_closed_form(FRAC_1_SQRT_2 + 1e-12, k).unwrap();
            assert!((v.a - v.b).abs() < 1e-4 * v.b, "{v:?}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(lemrad_closed_form(0.7, 3), Err(Error::Domain(_))));
        assert!(matches!(lemrad_closed_form(1.0, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn geometry_agrees_with_closed_form() {
        for &r in &[0.72, 0.75, 1.0, 2.0, 10.0] {
            for d in 2..=4 {
                for k in 2..=d {
                    let rep = lemrad_geometric_check(r, k, d, 20, 3).unwrap();
                    assert!(rep.passed(), "{rep:?}");
                }
            }
        }
    }
}
