//! Distances from a point of a closed half-space to an open region of a
//! sphere centered on the bounding hyperplane are beaten on the region's
//! boundary. Euclidean and spherical versions.
//!
//! The regions are caps `{s : s . axis > cos angle}` of the unit sphere of
//! directions around the center, which makes the boundary maximizer
//! available in closed form; random boundary points cross-check it.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use super::{run_trials, EqualityCase, LemmaReport, Witness, STRICT_GAP};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::linalg::{self, Vector};
use crate::sphere::vector_angle;
use crate::tolerance::Tolerance;

/// Boundary samples used to cross-check the closed-form maximizer.
const BOUNDARY_PROBES: usize = 16;
/// Allowed excess of a probe over the closed-form maximum.
const PROBE_TOL: f64 = 1e-10;

/// `Upsilon`: the sphere (Euclidean radius, or angular radius on a sphere)
/// around `center`; `omega`: the hyperplane through `center` with unit
/// `normal`; `Omega`: the directions within `angle` of the unit `axis`.
#[derive(Clone, Debug, PartialEq)]
pub struct CapRegion {
    pub center: Point,
    pub normal: Vector,
    pub radius: f64,
    pub axis: Vector,
    pub angle: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemredEvaluation {
    /// Distance to the boundary maximizer minus the distance to `Y`.
    pub margin: f64,
    pub strict: bool,
    pub case: EqualityCase,
    pub argmax: Vec<f64>,
    /// Largest excess of a random boundary point over the maximizer.
    pub probe_excess: f64,
    /// Disagreement of the spherical law of cosines with the direct
    /// distance (spherical instances only).
    pub cosine_law_error: f64,
}

fn unit(v: Vector, what: &str) -> Result<Vector> {
    let n = v.norm();
    if !(n > 1e-12) {
        return Err(Error::Argument(format!("{what} must be nonzero")));
    }
    Ok(v / n)
}

impl CapRegion {
    fn validate(&self, tangent_to: Option<&Vector>) -> Result<(Vector, Vector)> {
        let n = unit(self.normal.clone(), "normal")?;
        let a = unit(self.axis.clone(), "axis")?;
        if let Some(c) = tangent_to {
            if n.dot(c).abs() > 1e-9 || a.dot(c).abs() > 1e-9 {
                return Err(Error::Argument("normal and axis must be tangent at the center".into()));
            }
        }
        if !(self.radius > 0.0) || !(self.angle > 0.0) {
            return Err(Error::Argument("radius and cap angle must be positive".into()));
        }
        let limit = a.dot(&n).clamp(-1.0, 1.0).asin();
        if self.angle > limit + 1e-12 {
            return Err(Error::Argument(format!(
                "the region leaves the half-space: angle {} exceeds {limit}",
                self.angle
            )));
        }
        Ok((n, a))
    }
}

/// Unit vector orthogonal to `a` (and to `c`) minimizing the dot product
/// with `x`, or any such vector when `x` has no component there.
fn worst_tangent(x: &Vector, a: &Vector, c: Option<&Vector>) -> Vector {
    let mut t = x - a * x.dot(a);
    if let Some(c) = c {
        t -= c * t.dot(c);
    }
    if t.norm() > 1e-14 {
        return -t.normalize();
    }
    // any unit vector orthogonal to the constraints
    let mut basis = vec![a.clone()];
    if let Some(c) = c {
        basis.push(c.clone());
    }
    linalg::orthonormal_complement(&basis, a.len())
        .into_iter()
        .next()
        .unwrap_or_else(|| Vector::zeros(a.len()))
}

fn random_tangent<R: Rng + ?Sized>(a: &Vector, c: Option<&Vector>, rng: &mut R) -> Vector {
    loop {
        let g = linalg::random_gaussian(a.len(), rng);
        let mut t = &g - a * g.dot(a);
        if let Some(c) = c {
            t -= c * t.dot(c);
        }
        if t.norm() > 1e-9 {
            return t.normalize();
        }
    }
}

/// Euclidean version: `X` in the closed half-space, `Y` in the open cap.
pub fn lemred_euclidean<R: Rng + ?Sized>(region: &CapRegion, x: &Point, y: &Point, rng: &mut R) -> Result<LemredEvaluation> {
    let (n, a) = region.validate(None)?;
    let c = &region.center;
    let eq = Tolerance::default().eq_tol;
    if n.dot(&(x - c)) < -eq {
        return Err(Error::Argument("X must lie in the closed half-space".into()));
    }
    let sy = (y - c) / region.radius;
    if (sy.norm() - 1.0).abs() > 1e-9 || sy.dot(&a) <= region.angle.cos() {
        return Err(Error::Argument("Y must lie in the open region".into()));
    }
    let rel = x - c;
    let t = worst_tangent(&rel, &a, None);
    let point_at = |t: &Vector| c + (&a * region.angle.cos() + t * region.angle.sin()) * region.radius;
    let y_max = point_at(&t);
    let best = linalg::distance(x, &y_max);
    let probe_excess = (0..BOUNDARY_PROBES)
        .map(|_| linalg::distance(x, &point_at(&random_tangent(&a, None, rng))) - best)
        .fold(f64::NEG_INFINITY, f64::max);
    let margin = best - linalg::distance(x, y);
    let off_center = rel.norm();
    Ok(LemredEvaluation {
        margin,
        strict: off_center > STRICT_GAP,
        case: if off_center <= STRICT_GAP { EqualityCase::Center } else { EqualityCase::Unclassified },
        argmax: y_max.iter().copied().collect(),
        probe_excess,
        cosine_law_error: 0.0,
    })
}

/// Spherical version on the sphere of radius `r` centered at the origin;
/// `region.radius` is the angular radius of `Upsilon`, and `normal`, `axis`
/// are tangent at the center. Equality also holds at the antipode of the
/// center, which is excluded from the strict regime.
pub fn lemred_spherical<R: Rng + ?Sized>(
    region: &CapRegion,
    r: f64,
    x: &Point,
    y: &Point,
    rng: &mut R,
) -> Result<LemredEvaluation> {
    let chat = unit(region.center.clone(), "center")?;
    if ((region.center.norm() - r) / r).abs() > 1e-9 || ((x.norm() - r) / r).abs() > 1e-9 || ((y.norm() - r) / r).abs() > 1e-9 {
        return Err(Error::Argument(format!("points must lie on the sphere of radius {r}")));
    }
    if region.radius >= PI {
        return Err(Error::Argument("angular radius must be below pi".into()));
    }
    let (n, a) = region.validate(Some(&chat))?;
    let eq = Tolerance::default().eq_tol;
    let xh = x / r;
    if xh.dot(&n) < -eq {
        return Err(Error::Argument("X must lie in the closed hemisphere".into()));
    }
    let beta = region.radius;
    let yh = y / r;
    let sy = &yh - &chat * yh.dot(&chat);
    if (vector_angle(&yh, &chat) - beta).abs() > 1e-9 || sy.normalize().dot(&a) <= region.angle.cos() {
        return Err(Error::Argument("Y must lie in the open region".into()));
    }
    let point_at = |t: &Vector| -> Vector {
        let s = &a * region.angle.cos() + t * region.angle.sin();
        (&chat * beta.cos() + s * beta.sin()) * r
    };
    let t = worst_tangent(&xh, &a, Some(&chat));
    let y_max = point_at(&t);
    let best = vector_angle(x, &y_max);
    let probe_excess = (0..BOUNDARY_PROBES)
        .map(|_| vector_angle(x, &point_at(&random_tangent(&a, Some(&chat), rng))) - best)
        .fold(f64::NEG_INFINITY, f64::max);
    let direct = vector_angle(x, y);
    let rho_xc = vector_angle(x, &chat);
    let near_pole = rho_xc.min(PI - rho_xc);
    // law of cosines through the angle at the center
    let cosine_law_error = if near_pole > STRICT_GAP {
        let tx = &xh - &chat * xh.dot(&chat);
        let angle = vector_angle(&tx, &sy);
        let via = crate::sphere::cosine_law(rho_xc, beta, angle)?;
        (via - direct).abs()
    } else {
        0.0
    };
    Ok(LemredEvaluation {
        margin: best - direct,
        strict: near_pole > STRICT_GAP,
        case: if near_pole <= STRICT_GAP { EqualityCase::Center } else { EqualityCase::Unclassified },
        argmax: y_max.iter().copied().collect(),
        probe_excess,
        cosine_law_error,
    })
}

fn random_region<R: Rng + ?Sized>(center: Point, tangent_to: Option<&Vector>, radius: f64, rng: &mut R) -> CapRegion {
    let dim = center.len();
    let tangent = |rng: &mut R| match tangent_to {
        Some(c) => random_tangent(c, None, rng),
        None => linalg::random_unit(dim, rng),
    };
    let normal = tangent(rng);
    let axis = loop {
        let mut a = tangent(rng);
        if a.dot(&normal) < 0.0 {
            a = -a;
        }
        if a.dot(&normal) > 0.05 {
            break a;
        }
    };
    let limit = axis.dot(&normal).asin();
    let angle = rng.gen_range(0.01 * limit..0.999 * limit);
    CapRegion {
        center,
        normal,
        radius,
        axis,
        angle,
    }
}

/// Uniform direction of the cap, tangent at `c` for spherical instances.
fn draw_in_cap<R: Rng + ?Sized>(region: &CapRegion, c: Option<&Vector>, rng: &mut R) -> Vector {
    match c {
        None => linalg::random_in_cap(&region.axis, region.angle, rng),
        Some(c) => {
            let basis = linalg::orthonormal_complement(std::slice::from_ref(c), c.len());
            let local = Vector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(&region.axis)));
            let s = linalg::random_in_cap(&local, region.angle, rng);
            let mut out = Vector::zeros(c.len());
            for (k, b) in s.iter().zip(&basis) {
                out.axpy(*k, b, 1.0);
            }
            out
        }
    }
}

/// Random instances in dimensions 3, 4 and 5 (cycled); spherical instances
/// use radii in `[0.75, 3]`.
pub fn verify_lemred(euclidean: bool, trials: usize, seed: u64) -> Result<LemmaReport> {
    let tol = Tolerance::default();
    let tally = run_trials(trials, seed, |rng, t| {
        let d = rng.gen_range(3..=5);
        let e = if euclidean {
            let rho: f64 = rng.gen_range(0.3..2.0);
            let center = linalg::random_gaussian(d, rng);
            let region = random_region(center.clone(), None, rho, rng);
            let mut x = &center + linalg::random_in_ball(d, 3.0 * rho, rng);
            let h = region.normal.dot(&(&x - &center));
            if h < 0.0 {
                x -= &region.normal * (2.0 * h);
            }
            let y = &center + draw_in_cap(&region, None, rng) * rho;
            let e = lemred_euclidean(&region, &x, &y, rng)?;
            (e, x, y, region)
        } else {
            let r: f64 = rng.gen_range(0.75..3.0);
            let chat = linalg::random_unit(d + 1, rng);
            let beta: f64 = rng.gen_range(0.05..3.0);
            let region = random_region(&chat * r, Some(&chat), beta, rng);
            let mut xh = linalg::random_unit(d + 1, rng);
            let h = region.normal.dot(&xh);
            if h < 0.0 {
                xh -= &region.normal * (2.0 * h);
            }
            let s = draw_in_cap(&region, Some(&chat), rng);
            let y = (&chat * beta.cos() + s * beta.sin()) * r;
            let x = xh * r;
            let e = lemred_spherical(&region, r, &x, &y, rng)?;
            (e, x, y, region)
        };
        let (e, x, y, region) = e;
        t.maximum("max_probe_excess", e.probe_excess);
        t.maximum("max_cosine_law_error", e.cosine_law_error);
        if e.probe_excess > PROBE_TOL || e.cosine_law_error > 1e-9 {
            t.fail(|| Witness::new(-e.probe_excess, "boundary maximizer cross-check failed", &[&x, &y, &region.center]));
        }
        t.record(e.margin, e.strict, tol, || e.case, || {
            Witness::new(e.margin, "no boundary point is farther than Y", &[&x, &y, &region.center, &region.axis])
        });
        Ok(())
    })?;
    let id = if euclidean { "lemred" } else { "lemred-spherical" };
    Ok(tally.into_report(id))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn v(c: &[f64]) -> Vector {
        Vector::from_row_slice(c)
    }

    #[test]
    fn half_circle_maximizer_is_an_endpoint() {
        let region = CapRegion {
            center: v(&[0.0, 0.0]),
            normal: v(&[0.0, 1.0]),
            radius: 1.0,
            axis: v(&[0.0, 1.0]),
            angle: PI / 2.0,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let e = lemred_euclidean(&region, &v(&[0.3, 0.5]), &v(&[0.0, 1.0]), &mut rng).unwrap();
        assert!((e.argmax[0] + 1.0).abs() < 1e-12 && e.argmax[1].abs() < 1e-12);
        assert!(e.strict && e.margin > 0.0);
        assert!(e.probe_excess <= 1e-12);
    }

    #[test]
    fn center_gives_equality() {
        let region = CapRegion {
            center: v(&[1.0, 2.0, 0.0]),
            normal: v(&[0.0, 0.0, 1.0]),
            radius: 0.5,
            axis: v(&[0.0, 0.6, 0.8]),
            angle: 0.3,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let y = &region.center + v(&[0.0, 0.6, 0.8]) * 0.5;
        let e = lemred_euclidean(&region, &region.center, &y, &mut rng).unwrap();
        assert!(e.margin.abs() < 1e-12);
        assert_eq!(e.case, EqualityCase::Center);
        assert!(!e.strict);
    }

    #[test]
    fn spherical_center_and_antipode_give_equality() {
        let r = 1.5;
        let chat = v(&[0.0, 0.0, 0.0, 1.0]);
        let region = CapRegion {
            center: &chat * r,
            normal: v(&[1.0, 0.0, 0.0, 0.0]),
            radius: 0.7,
            axis: v(&[0.8, 0.6, 0.0, 0.0]),
            angle: 0.2,
        };
        let y = (&chat * 0.7f64.cos() + v(&[0.8, 0.6, 0.0, 0.0]) * 0.7f64.sin()) * r;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for x in [&chat * r, &chat * -r] {
            let e = lemred_spherical(&region, r, &x, &y, &mut rng).unwrap();
            assert!(e.margin.abs() < 1e-12, "{e:?}");
            assert_eq!(e.case, EqualityCase::Center);
        }
    }

    #[test]
    fn region_must_stay_in_the_half_space() {
        let region = CapRegion {
            center: v(&[0.0, 0.0]),
            normal: v(&[0.0, 1.0]),
            radius: 1.0,
            axis: v(&[1.0, 0.0]),
            angle: 0.1,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(lemred_euclidean(&region, &v(&[0.0, 1.0]), &v(&[1.0, 0.0]), &mut rng).is_err());
    }

    #[test]
    fn small_campaigns_have_no_violations() {
        for euclidean in [true, false] {
            let r = verify_lemred(euclidean, 3000, 9).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.worst_strict_margin.unwrap() > 0.0);
        }
    }
}
