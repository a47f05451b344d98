//! Intrinsic geometry of the sphere `S^d_r`, with points stored as embedding
//! vectors in R^{d+1}.
//!
//! Distances are angles (`rho`), planes are diametral spheres given by a unit
//! normal through the center, projections and reflections act along the
//! great circles through the pole pair of a hyperplane.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{min_enclosing_ball, Point, ON_SPHERE_RTOL};
use crate::linalg::{self, Vector};

/// Radius and the angle `phi` subtended by a unit chord.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalFrame {
    d: usize,
    r: f64,
    phi: f64,
}

impl SphericalFrame {
    pub fn new(d: usize, r: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Dimension("sphere dimension must be positive".into()));
        }
        if !(r.is_finite() && r >= 0.5) {
            return Err(Error::Domain(format!(
                "a unit chord needs radius at least 1/2, got {r}"
            )));
        }
        Ok(Self {
            d,
            r,
            phi: unit_chord_angle(r),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    /// Angular length of a unit chord.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Chord length of an arc of angle `theta`.
    pub fn chord(&self, theta: f64) -> f64 {
        2.0 * self.r * (theta / 2.0).sin()
    }

    fn on_sphere(&self, coords: &Vector) -> bool {
        coords.len() == self.d + 1 && (coords.norm() - self.r).abs() <= ON_SPHERE_RTOL * self.r.max(1.0)
    }
}

/// `phi(r) = 2 asin(1 / (2r))`.
pub fn unit_chord_angle(r: f64) -> f64 {
    2.0 * (1.0 / (2.0 * r)).asin()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoint {
    coords: Vector,
}

impl SpherePoint {
    pub fn new(coords: Vector, frame: &SphericalFrame) -> Result<Self> {
        if coords.len() != frame.d + 1 {
            return Err(Error::Dimension(format!(
                "S^{} lives in R^{}, got {} coordinates",
                frame.d,
                frame.d + 1,
                coords.len()
            )));
        }
        if !frame.on_sphere(&coords) {
            return Err(Error::Domain(format!(
                "point of norm {} is not on the sphere of radius {}",
                coords.norm(),
                frame.r
            )));
        }
        Ok(Self { coords })
    }

    /// Scales a nonzero vector onto the sphere.
    pub fn from_direction(v: &Vector, frame: &SphericalFrame) -> Result<Self> {
        let n = v.norm();
        if !(n > 1e-300) {
            return Err(Error::Domain("zero vector has no direction".into()));
        }
        Self::new(v * (frame.r / n), frame)
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }
}

/// A great hypersphere `{x : normal . x = 0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiametralSphere {
    normal: Vector,
}

impl DiametralSphere {
    pub fn new(normal: Vector) -> Result<Self> {
        let n = normal.norm();
        if !(n > 1e-300) {
            return Err(Error::Argument("diametral sphere needs a nonzero normal".into()));
        }
        Ok(Self { normal: normal / n })
    }

    /// Great hypersphere through the origin and the given points
    /// (`d` linearly independent vectors of R^{d+1}).
    pub fn through(points: &[Vector]) -> Result<Self> {
        let dim = points.first().map(|p| p.len()).unwrap_or(0);
        if dim < 2 || points.len() != dim - 1 {
            return Err(Error::Dimension(format!(
                "a great hypersphere of S^{} needs {} points",
                dim.saturating_sub(1),
                dim.saturating_sub(1)
            )));
        }
        if linalg::orthonormalize(points).len() != dim - 1 {
            return Err(Error::Degenerate("points do not span a great hypersphere".into()));
        }
        let normal = linalg::orthonormal_complement(points, dim)
            .pop()
            .ok_or_else(|| Error::Degenerate("no normal direction".into()))?;
        Self::new(normal)
    }

    pub fn normal(&self) -> &Vector {
        &self.normal
    }

    /// The pole pair `gamma*`.
    pub fn poles(&self, frame: &SphericalFrame) -> [SpherePoint; 2] {
        let p = &self.normal * frame.r;
        [SpherePoint { coords: p.clone() }, SpherePoint { coords: -p }]
    }

    /// Signed height `normal . x`.
    pub fn height(&self, p: &Vector) -> f64 {
        self.normal.dot(p)
    }

    pub fn oriented_towards(self, p: &Vector) -> Self {
        if self.height(p) < 0.0 {
            Self { normal: -self.normal }
        } else {
            self
        }
    }
}

fn check_on(frame: &SphericalFrame, p: &SpherePoint) -> Result<()> {
    if frame.on_sphere(&p.coords) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "point of norm {} is off the sphere of radius {}",
            p.coords.norm(),
            frame.r
        )))
    }
}

/// Angle between two embedding vectors, accurate at both ends of `[0, pi]`.
pub(crate) fn vector_angle(a: &Vector, b: &Vector) -> f64 {
    let an = a / a.norm();
    let bn = b / b.norm();
    2.0 * (&an - &bn).norm().atan2((&an + &bn).norm())
}

/// Spherical distance `rho(u1, u2)` in `[0, pi]`.
pub fn rho(u1: &SpherePoint, u2: &SpherePoint, frame: &SphericalFrame) -> Result<f64> {
    check_on(frame, u1)?;
    check_on(frame, u2)?;
    Ok(vector_angle(&u1.coords, &u2.coords))
}

/// Unit tangent at `at` pointing along the great circle towards `to`.
fn tangent_towards(at: &Vector, to: &Vector) -> Option<Vector> {
    let a = at / at.norm();
    let t = to - &a * to.dot(&a);
    let n = t.norm();
    if n <= 1e-12 * to.norm() {
        None
    } else {
        Some(t / n)
    }
}

/// Angle `A(u1, u2, u3)` at `u2` between the arcs `u2u1` and `u2u3`.
pub fn angle_at(
    u1: &SpherePoint,
    u2: &SpherePoint,
    u3: &SpherePoint,
    frame: &SphericalFrame,
) -> Result<f64> {
    for p in [u1, u2, u3] {
        check_on(frame, p)?;
    }
    let t1 = tangent_towards(&u2.coords, &u1.coords).ok_or_else(|| {
        Error::Domain("angle undefined: u1 coincides with u2 or its antipode".into())
    })?;
    let t3 = tangent_towards(&u2.coords, &u3.coords).ok_or_else(|| {
        Error::Domain("angle undefined: u3 coincides with u2 or its antipode".into())
    })?;
    Ok(vector_angle(&t1, &t3))
}

/// Third side from two sides and the included angle:
/// `cos r13 = cos r12 cos r23 + sin r12 sin r23 cos A`.
pub fn cosine_law(rho12: f64, rho23: f64, angle: f64) -> Result<f64> {
    for (name, v) in [("rho12", rho12), ("rho23", rho23), ("A", angle)] {
        if !(0.0..=PI).contains(&v) {
            return Err(Error::Domain(format!("{name} = {v} is outside [0, pi]")));
        }
    }
    let c = rho12.cos() * rho23.cos() + rho12.sin() * rho23.sin() * angle.cos();
    Ok(c.clamp(-1.0, 1.0).acos())
}

/// Closest point of `gamma` on the great circle through `p` and the poles.
pub fn project(p: &SpherePoint, gamma: &DiametralSphere, frame: &SphericalFrame) -> Result<SpherePoint> {
    check_on(frame, p)?;
    let h = gamma.height(&p.coords);
    let t = &p.coords - &gamma.normal * h;
    if t.norm() <= 1e-12 * frame.r {
        return Err(Error::UndefinedProjection);
    }
    SpherePoint::from_direction(&t, frame)
}

/// Reflection `R_gamma`; swaps the poles and fixes `gamma` pointwise.
pub fn reflect(p: &SpherePoint, gamma: &DiametralSphere) -> SpherePoint {
    let h = gamma.height(&p.coords);
    SpherePoint {
        coords: &p.coords - &gamma.normal * (2.0 * h),
    }
}

/// Whether the plane spanned (through the center) by `sigma` is mapped onto
/// itself by `R_gamma`.
pub fn is_orthogonal(sigma: &[Vector], gamma: &DiametralSphere) -> bool {
    let basis = linalg::orthonormalize(sigma);
    if basis.is_empty() {
        return true;
    }
    basis.iter().all(|b| {
        let img = b - &gamma.normal * (2.0 * gamma.height(b));
        let mut residual = img.clone();
        for q in &basis {
            residual.axpy(-img.dot(q), q, 1.0);
        }
        residual.norm() <= 1e-9
    })
}

/// Nonnegative least squares (Lawson-Hanson active set): minimizes
/// `|a x - b|` subject to `x >= 0`.
pub(crate) fn nnls(a: &DMatrix<f64>, b: &Vector) -> Vector {
    let n = a.ncols();
    let mut x = Vector::zeros(n);
    let mut passive = vec![false; n];
    let tol = 1e-12 * (a.norm() * b.norm()).max(1e-300);
    for _outer in 0..(3 * n + 10) {
        let w = a.transpose() * (b - a * &x);
        let candidate = (0..n)
            .filter(|&j| !passive[j] && w[j] > tol)
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(j) = candidate else { break };
        passive[j] = true;
        for _inner in 0..(3 * n + 10) {
            let idx: Vec<usize> = (0..n).filter(|&i| passive[i]).collect();
            let sub = DMatrix::from_fn(a.nrows(), idx.len(), |r, c| a[(r, idx[c])]);
            let sol = sub
                .svd(true, true)
                .solve(b, 1e-14)
                .unwrap_or_else(|_| Vector::zeros(idx.len()));
            if sol.iter().all(|&v| v > 0.0) {
                x.fill(0.0);
                for (k, &i) in idx.iter().enumerate() {
                    x[i] = sol[k];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (k, &i) in idx.iter().enumerate() {
                if sol[k] <= 0.0 {
                    let denom = x[i] - sol[k];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (k, &i) in idx.iter().enumerate() {
                x[i] += alpha * (sol[k] - x[i]);
            }
            for &i in &idx {
                if x[i] <= 1e-15 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
        }
    }
    x
}

/// Whether `x` lies in the spherical convex hull of `vertices`, i.e. in the
/// cone they span.
pub fn in_spherical_hull(x: &SpherePoint, vertices: &[SpherePoint]) -> bool {
    if vertices.is_empty() {
        return false;
    }
    let m = x.coords.len();
    if vertices.iter().any(|v| v.coords.len() != m) {
        return false;
    }
    let a = DMatrix::from_fn(m, vertices.len(), |r, c| vertices[c].coords[r]);
    let lambda = nnls(&a, &x.coords);
    let residual = (&a * &lambda - &x.coords).norm();
    residual <= 1e-9 * x.coords.norm()
}

/// Smallest spherical cap containing `points`; returns its center and
/// angular radius.
///
/// For points inside an open hemisphere the optimal cap is cut out by the
/// Euclidean minimal enclosing ball of the embedding vectors: its center
/// direction is the ball's center direction.
pub fn min_spherical_ball(points: &[SpherePoint], frame: &SphericalFrame) -> Result<(SpherePoint, f64)> {
    if points.is_empty() {
        return Err(Error::Argument("spherical ball of an empty set".into()));
    }
    for p in points {
        check_on(frame, p)?;
    }
    let coords: Vec<Point> = points.iter().map(|p| p.coords.clone()).collect();
    let ball = min_enclosing_ball(&coords)?;
    if ball.center.norm() <= 1e-9 * frame.r {
        return Err(Error::Domain("points are not contained in an open hemisphere".into()));
    }
    let center = SpherePoint::from_direction(&ball.center, frame)?;
    let radius = coords
        .iter()
        .map(|p| vector_angle(p, &center.coords))
        .fold(0.0, f64::max);
    if radius >= FRAC_PI_2 {
        return Err(Error::Domain("points are not contained in an open hemisphere".into()));
    }
    Ok((center, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn frame(d: usize, r: f64) -> SphericalFrame {
        SphericalFrame::new(d, r).unwrap()
    }

    fn sp(c: &[f64], f: &SphericalFrame) -> SpherePoint {
        SpherePoint::from_direction(&Vector::from_row_slice(c), f).unwrap()
    }

    #[test]
    fn phi_is_decreasing_and_hits_right_angle() {
        let at = unit_chord_angle(std::f64::consts::FRAC_1_SQRT_2);
        assert!((at - FRAC_PI_2).abs() < 1e-12);
        let mut prev = PI;
        for i in 0..200 {
            let r = 0.5 + 0.05 * i as f64 + 1e-3;
            let phi = unit_chord_angle(r);
            assert!(phi < prev);
            prev = phi;
            let f = frame(3, r);
            assert!((f.chord(f.phi()) - 1.0).abs() < 1e-12);
            if r > std::f64::consts::FRAC_1_SQRT_2 {
                assert!(f.phi() < FRAC_PI_2);
            }
        }
        assert!(SphericalFrame::new(2, 0.4).is_err());
    }

    #[test]
    fn rho_examples() {
        let f = frame(2, 1.0);
        let a = sp(&[1.0, 0.0, 0.0], &f);
        let b = sp(&[0.0, 1.0, 0.0], &f);
        assert_eq!(rho(&a, &a, &f).unwrap(), 0.0);
        assert!((rho(&a, &b, &f).unwrap() - FRAC_PI_2).abs() < 1e-15);
        // chord 1 on the unit sphere
        let c = sp(&[0.5, 3f64.sqrt() / 2.0, 0.0], &f);
        assert!((rho(&a, &c, &f).unwrap() - PI / 3.0).abs() < 1e-15);
        let off = SpherePoint {
            coords: Vector::from_row_slice(&[2.0, 0.0, 0.0]),
        };
        assert!(matches!(rho(&a, &off, &f), Err(Error::Domain(_))));
    }

    #[test]
    fn octant_triangle_has_right_angles() {
        let f = frame(2, 1.7);
        let e = [
            sp(&[1.0, 0.0, 0.0], &f),
            sp(&[0.0, 1.0, 0.0], &f),
            sp(&[0.0, 0.0, 1.0], &f),
        ];
        for i in 0..3 {
            let a = angle_at(&e[(i + 2) % 3], &e[i], &e[(i + 1) % 3], &f).unwrap();
            assert!((a - FRAC_PI_2).abs() < 1e-14);
        }
        assert!(angle_at(&e[0], &e[0], &e[1], &f).is_err());
    }

    #[test]
    fn angle_is_symmetric() {
        let f = frame(2, 1.0);
        let u2 = sp(&[0.0, 0.0, 1.0], &f);
        let u1 = sp(&[0.3, 0.4, 1.0], &f);
        let u3 = sp(&[0.3, -0.4, 1.0], &f);
        let a = angle_at(&u1, &u2, &u3, &f).unwrap();
        let b = angle_at(&u3, &u2, &u1, &f).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!((a - 2.0 * (0.4f64).atan2(0.3)).abs() < 1e-14);
    }

    #[test]
    fn cosine_law_reproduces_random_triangles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..6 {
            let f = frame(d, 0.9);
            for _ in 0..200 {
                let p: Vec<SpherePoint> = (0..3)
                    .map(|_| SpherePoint::from_direction(&linalg::random_unit(d + 1, &mut rng), &f).unwrap())
                    .collect();
                let r12 = rho(&p[0], &p[1], &f).unwrap();
                let r23 = rho(&p[1], &p[2], &f).unwrap();
                let r13 = rho(&p[0], &p[2], &f).unwrap();
                let a = angle_at(&p[0], &p[1], &p[2], &f).unwrap();
                assert!((cosine_law(r12, r23, a).unwrap() - r13).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn cosine_law_special_cases() {
        // spherical Pythagoras
        let (x, y) = (0.7, 1.1);
        let r = cosine_law(x, y, FRAC_PI_2).unwrap();
        assert!((r.cos() - x.cos() * y.cos()).abs() < 1e-15);
        assert!((cosine_law(0.8, 0.0, 1.0).unwrap() - 0.8).abs() < 1e-15);
        for &(a, b, ang) in &[(0.3, 1.2, FRAC_PI_2), (1.4, 1.5, 2.0), (0.01, 0.02, 3.0)] {
            let c = cosine_law(a, b, ang).unwrap();
            assert!(c > f64::max(a, b));
        }
        assert!(cosine_law(-0.1, 0.2, 0.3).is_err());
        assert!(cosine_law(0.1, 0.2, 4.0).is_err());
    }

    #[test]
    fn projection_properties() {
        let f = frame(3, 1.3);
        let gamma = DiametralSphere::new(Vector::from_row_slice(&[0.0, 0.0, 0.0, 1.0])).unwrap();
        let on = sp(&[0.2, -0.5, 0.7, 0.0], &f);
        assert!((project(&on, &gamma, &f).unwrap().coords() - on.coords()).norm() < 1e-14);
        // meridian foot
        let above = sp(&[0.6, 0.0, 0.0, 0.8], &f);
        let foot = project(&above, &gamma, &f).unwrap();
        assert!((foot.coords() - Vector::from_row_slice(&[1.3, 0.0, 0.0, 0.0])).norm() < 1e-14);
        assert!(rho(&above, &foot, &f).unwrap() < FRAC_PI_2);
        let pole = &gamma.poles(&f)[0];
        assert!(matches!(project(pole, &gamma, &f), Err(Error::UndefinedProjection)));
    }

    #[test]
    fn projection_is_sampled_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = frame(3, 0.8);
        let gamma = DiametralSphere::new(linalg::random_unit(4, &mut rng)).unwrap();
        for _ in 0..20 {
            let p = SpherePoint::from_direction(&linalg::random_unit(4, &mut rng), &f).unwrap();
            let foot = project(&p, &gamma, &f).unwrap();
            assert!(gamma.height(foot.coords()).abs() < 1e-12);
            let best = rho(&p, &foot, &f).unwrap();
            for _ in 0..1000 {
                let g = linalg::random_gaussian(4, &mut rng);
                let q = &g - gamma.normal() * gamma.height(&g);
                let q = SpherePoint::from_direction(&q, &f).unwrap();
                assert!(best <= rho(&p, &q, &f).unwrap() + 1e-12);
            }
        }
    }

    #[test]
    fn reflection_is_an_isometric_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = frame(4, 1.1);
        let gamma = DiametralSphere::new(linalg::random_unit(5, &mut rng)).unwrap();
        for _ in 0..100 {
            let a = SpherePoint::from_direction(&linalg::random_unit(5, &mut rng), &f).unwrap();
            let b = SpherePoint::from_direction(&linalg::random_unit(5, &mut rng), &f).unwrap();
            let ra = reflect(&a, &gamma);
            assert!((reflect(&ra, &gamma).coords() - a.coords()).norm() < 1e-12);
            let d0 = rho(&a, &b, &f).unwrap();
            let d1 = rho(&ra, &reflect(&b, &gamma), &f).unwrap();
            assert!((d0 - d1).abs() < 1e-12);
        }
        let fixed = project(
            &SpherePoint::from_direction(&linalg::random_unit(5, &mut rng), &f).unwrap(),
            &gamma,
            &f,
        )
        .unwrap();
        assert!((reflect(&fixed, &gamma).coords() - fixed.coords()).norm() < 1e-12);
        let poles = gamma.poles(&f);
        assert!((reflect(&poles[0], &gamma).coords() - poles[1].coords()).norm() < 1e-12);
    }

    #[test]
    fn orthogonality_examples() {
        let gamma = DiametralSphere::new(Vector::from_row_slice(&[0.0, 0.0, 1.0])).unwrap();
        let axis_plane = [
            Vector::from_row_slice(&[0.0, 0.0, 1.0]),
            Vector::from_row_slice(&[1.0, 1.0, 0.0]),
        ];
        assert!(is_orthogonal(&axis_plane, &gamma));
        let itself = [
            Vector::from_row_slice(&[1.0, 0.0, 0.0]),
            Vector::from_row_slice(&[0.0, 1.0, 0.0]),
        ];
        assert!(is_orthogonal(&itself, &gamma));
        let tilted = [
            Vector::from_row_slice(&[1.0, 0.0, 0.4]),
            Vector::from_row_slice(&[0.0, 1.0, 0.0]),
        ];
        assert!(!is_orthogonal(&tilted, &gamma));
    }

    #[test]
    fn spherical_hull_examples() {
        let f = frame(2, 1.0);
        let v = vec![
            sp(&[1.0, 0.2, 0.3], &f),
            sp(&[0.1, 1.0, 0.2], &f),
            sp(&[0.3, 0.1, 1.0], &f),
        ];
        assert!(in_spherical_hull(&v[1], &v));
        let mut sum = Vector::zeros(3);
        for p in &v {
            sum += p.coords();
        }
        assert!(in_spherical_hull(&SpherePoint::from_direction(&sum, &f).unwrap(), &v));
        assert!(!in_spherical_hull(&SpherePoint::from_direction(&-sum, &f).unwrap(), &v));
        assert!(!in_spherical_hull(&sp(&[1.0, -1.0, 0.0], &f), &v));
    }

    #[test]
    fn min_cap_examples() {
        let f = frame(2, 1.5);
        let a = sp(&[1.0, 0.0, 0.2], &f);
        let (c, r) = min_spherical_ball(std::slice::from_ref(&a), &f).unwrap();
        assert!(r.abs() < 1e-12);
        assert!((c.coords() - a.coords()).norm() < 1e-12);

        let theta: f64 = 1.2;
        let p = sp(&[1.0, 0.0, 0.0], &f);
        let q = sp(&[theta.cos(), theta.sin(), 0.0], &f);
        let (c, r) = min_spherical_ball(&[p.clone(), q.clone()], &f).unwrap();
        assert!((r - theta / 2.0).abs() < 1e-12);
        let mid = sp(&[(theta / 2.0).cos(), (theta / 2.0).sin(), 0.0], &f);
        assert!((c.coords() - mid.coords()).norm() < 1e-10);

        let anti = [p.clone(), SpherePoint::from_direction(&-p.coords(), &f).unwrap()];
        assert!(matches!(min_spherical_ball(&anti, &f), Err(Error::Domain(_))));
    }
}
