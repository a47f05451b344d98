//! Sampling checks of the elementary facts used along the way: nested balls
//! cut by the radical hyperplane, projections from the rugby ball into the
//! facet, perpendicular bisectors, the balls and rugby balls of a rotated
//! simplex, right angles on the sphere.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{run_trials, EqualityCase, LemmaReport, Tally, Witness, STRICT_GAP};
use crate::error::Result;
use crate::geom::{regular_unit_simplex, unit_simplex_circumradius, Hyperplane, Point};
use crate::linalg::{self, derive_seed, BarycentricFrame, Vector};
use crate::reuleaux::{BodyKind, ReuleauxBody};
use crate::sphere::{self, DiametralSphere, SpherePoint, SphericalFrame};
use crate::tolerance::Tolerance;

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Balls `B(c, r)`, `B(c', r')` with `r > r'` whose spheres meet, both
/// centers on one side `sigma+` of the radical hyperplane: `B` contains `B'`
/// on that side and `B'` contains `B` on the other.
fn nested_balls(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let d = rng.gen_range(2..=5);
    let (r, r2, sep) = loop {
        let r: f64 = rng.gen_range(0.2..2.0);
        let r2: f64 = rng.gen_range(0.05..r);
        // spheres meet iff r - r' < sep < r + r'; centers on one side iff sep^2 <= r^2 - r'^2
        let hi = (r * r - r2 * r2).sqrt().min(r + r2);
        if hi > r - r2 + 1e-3 {
            break (r, r2, rng.gen_range(r - r2..hi));
        }
    };
    let c = linalg::random_gaussian(d, rng);
    let dir = linalg::random_unit(d, rng);
    let c2 = &c + &dir * sep;
    // radical hyperplane dir . (x - c) = s, sigma+ = {dir . (x - c) <= s}
    let s = (sep * sep + r * r - r2 * r2) / (2.0 * sep);
    let x = &c + linalg::random_in_ball(d, r + sep, rng);
    let side = dir.dot(&(&x - &c)) - s;
    let (inner, outer, inner_r, outer_r) = if side <= 0.0 { (&c2, &c, r2, r) } else { (&c, &c2, r, r2) };
    if linalg::distance(&x, inner) <= inner_r {
        let margin = outer_r - linalg::distance(&x, outer);
        t.record(margin, false, tol(), || EqualityCase::Boundary, || {
            Witness::new(margin, "nested balls fail on one side", &[&x, &c, &c2])
        });
    }
    Ok(())
}

/// Points of the rugby ball outside the circumscribed ball of its simplex
/// project into the simplex, strictly when outside the closed ball.
fn rugby_projection(rng: &mut ChaCha8Rng, t: &mut Tally, bodies: &[(ReuleauxBody, BarycentricFrame)]) -> Result<()> {
    let (body, frame) = &bodies[rng.gen_range(0..bodies.len())];
    let d = body.dim();
    let big_r = unit_simplex_circumradius(d);
    let faces = body.face_subsets();
    let p = loop {
        let p = if rng.gen_bool(0.5) {
            body.sample_point_with(rng)?
        } else {
            body.sample_face_point_with(&faces[rng.gen_range(0..faces.len())], rng)?
        };
        if p.norm() >= big_r {
            break p;
        }
    };
    // the simplex spans the first d-1 coordinates
    let local = p.rows(0, d - 1).into_owned();
    let margin = frame.min_coordinate(&local);
    let strict = p.norm() > big_r + STRICT_GAP;
    t.record(margin, strict, tol(), || EqualityCase::Boundary, || {
        Witness::new(margin, "projection leaves the facet", &[&p])
    });
    Ok(())
}

/// Points on the side of the perpendicular bisector containing `x` are at
/// least as close to `x` as to `y`.
fn bisector(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let d = rng.gen_range(2..=5);
    let x = linalg::random_gaussian(d, rng);
    let y = linalg::random_gaussian(d, rng);
    let mut z = linalg::random_gaussian(d, rng) * 2.0;
    let n = &x - &y;
    let mid = (&x + &y) * 0.5;
    let h = n.dot(&(&z - &mid));
    if h < 0.0 {
        z -= &n * (2.0 * h / n.norm_squared());
    }
    let margin = linalg::distance(&z, &y) - linalg::distance(&z, &x);
    t.record(margin, false, tol(), || EqualityCase::Boundary, || {
        Witness::new(margin, "bisector side is closer to y", &[&x, &y, &z])
    });
    Ok(())
}

/// Rotating `v_1` by `theta < pi/2` about `v_2..v_d`: with `gamma` the
/// bisector of `v_1 v_1'`, `B' ∩ gamma+ ⊂ B`, `Theta ∩ gamma- ⊂ Theta'`, and
/// the part of the rugby ball above `pi` outside `B` lies in `gamma+`.
fn rotation_balls(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let d = rng.gen_range(3..=5);
    let simplex = regular_unit_simplex(d, d)?.into_points();
    let big_r = unit_simplex_circumradius(d);
    let m = linalg::centroid(&simplex[1..]);
    let h = linalg::distance(&simplex[0], &m);
    let u0 = (&simplex[0] - &m) / h;
    let mut e = Vector::zeros(d);
    e[d - 1] = 1.0;
    let theta = rng.gen_range(1e-3..FRAC_PI_2);
    let v2 = &m + (&u0 * theta.cos() - &e * theta.sin()) * h;
    let mut moved = simplex.clone();
    moved[0] = v2.clone();
    let o2 = linalg::centroid(&moved);
    let gamma = Hyperplane::new(&simplex[0] - &v2, 0.0)?;
    let gamma = Hyperplane::new(gamma.normal().clone(), gamma.normal().dot(&m))?;
    let env = linalg::random_in_ball(d, 1.5, rng);
    let max_dist = |p: &Point, pts: &[Point]| pts.iter().map(|q| linalg::distance(p, q)).fold(0.0, f64::max);
    let above = gamma.signed_distance(&env);
    match rng.gen_range(0..3) {
        0 => {
            let z = &o2 + &env * (big_r / 1.5);
            if gamma.signed_distance(&z) >= 0.0 {
                let margin = big_r - linalg::distance(&z, &Point::zeros(d));
                t.record(margin, false, tol(), || EqualityCase::Boundary, || {
                    Witness::new(margin, "rotated ball leaves the ball above gamma", &[&z, &v2])
                });
            }
        }
        1 => {
            if above <= 0.0 && max_dist(&env, &simplex) <= 1.0 {
                let margin = 1.0 - max_dist(&env, &moved);
                t.record(margin, false, tol(), || EqualityCase::Boundary, || {
                    Witness::new(margin, "rugby ball below gamma leaves the rotated one", &[&env, &v2])
                });
            }
        }
        _ => {
            if env[d - 1] >= 0.0 && env.norm() > big_r && max_dist(&env, &simplex) <= 1.0 {
                t.record(above, false, tol(), || EqualityCase::Boundary, || {
                    Witness::new(above, "upper rugby ball outside B is below gamma", &[&env, &v2])
                });
            }
        }
    }
    Ok(())
}

/// Points of the spherical hull of a spherical Reuleaux simplex are within
/// a right angle of every point of the body.
fn hemisphere(rng: &mut ChaCha8Rng, t: &mut Tally, bodies: &[ReuleauxBody]) -> Result<()> {
    let body = &bodies[rng.gen_range(0..bodies.len())];
    let w: Vec<f64> = (0..body.vertices().len()).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let mut x = Vector::zeros(body.vertices()[0].len());
    for (c, v) in w.iter().zip(body.vertices()) {
        x.axpy(*c, v, 1.0);
    }
    let y = body.sample_point_with(rng)?;
    let margin = FRAC_PI_2 - sphere::vector_angle(&x, &y);
    t.record(margin, true, tol(), || EqualityCase::Boundary, || {
        Witness::new(margin, "hull point a right angle away from the body", &[&x, &y])
    });
    Ok(())
}

fn random_sphere_setup(rng: &mut ChaCha8Rng) -> Result<(SphericalFrame, DiametralSphere)> {
    let d = rng.gen_range(2..=5);
    let r = rng.gen_range(0.75..3.0);
    let frame = SphericalFrame::new(d, r)?;
    let gamma = DiametralSphere::new(linalg::random_unit(d + 1, rng))?;
    Ok((frame, gamma))
}

/// A point off the poles is less than a right angle from its projection.
fn projection_angle(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let (frame, gamma) = random_sphere_setup(rng)?;
    let x = SpherePoint::from_direction(&linalg::random_unit(frame.dim() + 1, rng), &frame)?;
    let p = sphere::project(&x, &gamma, &frame)?;
    let margin = FRAC_PI_2 - sphere::rho(&x, &p, &frame)?;
    t.record(margin, true, tol(), || EqualityCase::Boundary, || {
        Witness::new(margin, "projection a right angle away", &[x.coords(), p.coords()])
    });
    Ok(())
}

/// In the quadrangle `v, v', w', w` with right angles at the projections
/// `v', w'`, one of the other two angles is obtuse.
fn quadrangle(rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let (frame, gamma) = random_sphere_setup(rng)?;
    let mut draw = || -> Result<SpherePoint> {
        let mut u = linalg::random_unit(frame.dim() + 1, rng);
        let h = gamma.height(&u);
        if h < 0.0 {
            u -= gamma.normal() * (2.0 * h);
        }
        SpherePoint::from_direction(&u, &frame)
    };
    let v = draw()?;
    let w = draw()?;
    let vp = sphere::project(&v, &gamma, &frame)?;
    let wp = sphere::project(&w, &gamma, &frame)?;
    let off = |p: &SpherePoint| gamma.height(p.coords()) / frame.radius();
    if sphere::rho(&vp, &wp, &frame)? < STRICT_GAP || off(&v) < STRICT_GAP || off(&w) < STRICT_GAP {
        return Ok(());
    }
    let a = sphere::angle_at(&v, &w, &wp, &frame)?;
    let b = sphere::angle_at(&w, &v, &vp, &frame)?;
    let margin = a.max(b) - FRAC_PI_2;
    t.record(margin, true, tol(), || EqualityCase::Boundary, || {
        Witness::new(margin, "no obtuse angle in the quadrangle", &[v.coords(), w.coords()])
    });
    Ok(())
}

/// One report per fact, `trials` samples each (draws that fall outside a
/// fact's hypothesis are skipped, so the evaluated count can be smaller).
pub fn verify_observations(trials: usize, seed: u64) -> Result<Vec<LemmaReport>> {
    let rugby: Vec<(ReuleauxBody, BarycentricFrame)> = (3..=5)
        .map(|d| {
            let body = ReuleauxBody::regular_rugby_ball(d)?;
            let local: Vec<Point> = body.vertices().iter().map(|v| v.rows(0, d - 1).into_owned()).collect();
            Ok((body, BarycentricFrame::new(&local)?))
        })
        .collect::<Result<_>>()?;
    let spherical: Vec<ReuleauxBody> = [(2, 0.75), (3, 0.75), (3, 1.0), (4, 2.0), (5, 1.0)]
        .iter()
        .map(|&(d, r)| ReuleauxBody::spherical(BodyKind::Simplex, d, r))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    out.push(run_trials(trials, derive_seed(seed, 0), nested_balls)?.into_report("nested-balls"));
    out.push(
        run_trials(trials, derive_seed(seed, 1), |rng, t| rugby_projection(rng, t, &rugby))?
            .into_report("rugby-projection"),
    );
    out.push(run_trials(trials, derive_seed(seed, 2), bisector)?.into_report("bisector"));
    out.push(run_trials(trials, derive_seed(seed, 3), rotation_balls)?.into_report("rotation-balls"));
    out.push(
        run_trials(trials, derive_seed(seed, 4), |rng, t| hemisphere(rng, t, &spherical))?
            .into_report("hemisphere"),
    );
    out.push(run_trials(trials, derive_seed(seed, 5), projection_angle)?.into_report("projection-angle"));
    out.push(run_trials(trials, derive_seed(seed, 6), quadrangle)?.into_report("quadrangle"));
    Ok(out)
}
