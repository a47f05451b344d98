//! Rotating one vertex of a unit simplex about the opposite facet until a
//! witness reaches unit distance or a hyperplane.
//!
//! `K1 = {v_1, ..., v_d}` spans the hyperplane `pi`, oriented towards the
//! witness `w_1`; the other witnesses lie below `pi`. The vertex `v_1` moves
//! on the circle of points at unit distance from `v_2..v_d`, towards the
//! negative side, and the hyperplane `pi'` through the moved simplex follows.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_dim, run_trials, LemmaReport, Witness};
use crate::error::{Error, Result};
use crate::geom::{regular_unit_simplex, unit_simplex_circumradius, Hyperplane, Point};
use crate::linalg::{self, derive_seed, Vector};
use crate::reuleaux::ReuleauxBody;
use crate::tolerance::Tolerance;

const GRID_STEP: f64 = std::f64::consts::PI / 180.0;
const BRACKET: f64 = 1e-12;
const LOG_SAMPLES: usize = 100;
const MAX_REJECTIONS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RotationEvent {
    /// The moved vertex reached unit distance from `w_1`.
    UnitDistance,
    /// A witness `w_i`, `i >= 2`, reached the moving hyperplane.
    HyperplaneHit,
}

/// Checks of the two facts along the rotation at sampled angles.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InvariantLog {
    pub samples: usize,
    /// `w_1` left the rugby ball of the moved simplex.
    pub theta_violations: usize,
    /// `w_1` entered the circumscribed ball of the moved simplex.
    pub ball_violations: usize,
    /// A witness below `pi'` left the rugby ball.
    pub escape_violations: usize,
    pub worst_theta_margin: f64,
    pub worst_ball_margin: f64,
    pub worst_escape_margin: f64,
}

impl InvariantLog {
    pub fn violations(&self) -> usize {
        self.theta_violations + self.ball_violations + self.escape_violations
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RotationOutcome {
    pub event: RotationEvent,
    pub theta: f64,
    pub moved_vertex: Vec<f64>,
    /// Index of the witness on `pi'` for a hyperplane hit.
    pub hit_witness: Option<usize>,
    /// `| |v' - w_1| - 1 |` or the distance of the hit witness to `pi'`.
    pub residual: f64,
    pub bracket: f64,
    pub log: InvariantLog,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RotationInstance {
    pub simplex: Vec<Point>,
    pub witnesses: Vec<Point>,
}

struct Frame {
    m: Point,
    h: f64,
    u0: Vector,
    e: Vector,
}

impl Frame {
    fn vertex(&self, theta: f64) -> Point {
        &self.m + (&self.u0 * theta.cos() - &self.e * theta.sin()) * self.h
    }

    /// Unit normal of `pi'`, pointing to the side of `w_1`.
    fn normal(&self, theta: f64) -> Vector {
        &self.e * theta.cos() + &self.u0 * theta.sin()
    }
}

fn max_dist(p: &Point, pts: &[Point]) -> f64 {
    pts.iter().map(|q| linalg::distance(p, q)).fold(0.0, f64::max)
}

fn case_error(msg: impl Into<String>) -> Error {
    Error::Case(msg.into())
}

/// Runs the rotation and stops at the first event, located on a one-degree
/// grid and refined by bisection. Invariants are logged at 100 angles drawn
/// from `seed` in `(0, theta]`.
pub fn rotation_procedure(simplex: &[Point], witnesses: &[Point], seed: u64) -> Result<RotationOutcome> {
    let d = simplex.len();
    check_dim(d, 2, "the rotation procedure")?;
    if simplex.iter().chain(witnesses).any(|p| p.len() != d) {
        return Err(Error::Dimension(format!("all points must lie in R^{d}")));
    }
    if witnesses.len() != d {
        return Err(Error::Argument(format!("need {d} witnesses, got {}", witnesses.len())));
    }
    let tol = Tolerance::default();
    let eq = tol.eq_tol;
    for i in 0..d {
        for j in i + 1..d {
            if !tol.is_unit(linalg::distance(&simplex[i], &simplex[j])) {
                return Err(case_error("the simplex is not a regular unit simplex"));
            }
        }
    }
    let w1 = &witnesses[0];
    let pi = Hyperplane::through(simplex)?.oriented_towards(w1);
    let o = linalg::centroid(simplex);
    let big_r = unit_simplex_circumradius(d);
    if pi.signed_distance(w1) <= eq {
        return Err(case_error("w_1 lies on pi"));
    }
    if max_dist(w1, simplex) > 1.0 + eq {
        return Err(case_error("w_1 is outside the rugby ball"));
    }
    if linalg::distance(w1, &o) <= big_r {
        return Err(case_error("w_1 is inside the circumscribed ball"));
    }
    if linalg::distance(w1, &simplex[0]) >= 1.0 - eq {
        return Err(case_error("w_1 is already at unit distance from v_1"));
    }
    for (i, w) in witnesses.iter().enumerate().skip(1) {
        if pi.signed_distance(w) >= -eq {
            return Err(case_error(format!("witness {i} is not strictly below pi")));
        }
        if max_dist(w, simplex) > 1.0 + eq {
            return Err(case_error(format!("witness {i} is outside the rugby ball")));
        }
    }

    let m = linalg::centroid(&simplex[1..]);
    let h = linalg::distance(&simplex[0], &m);
    let frame = Frame {
        u0: (&simplex[0] - &m) / h,
        e: pi.normal().clone(),
        m,
        h,
    };
    let f1 = |t: f64| linalg::distance(&frame.vertex(t), w1) - 1.0;
    let f2 = |t: f64, i: usize| frame.normal(t).dot(&(&witnesses[i] - &frame.m));
    let g = |t: f64| (1..d).map(|i| f2(t, i)).fold(f1(t), f64::max);

    let limit = std::f64::consts::FRAC_PI_2;
    let mut lo = 0.0;
    let mut hi = None;
    let steps = (limit / GRID_STEP).round() as usize;
    for k in 1..=steps {
        let t = (k as f64 * GRID_STEP).min(limit);
        if g(t) >= 0.0 {
            hi = Some(t);
            break;
        }
        lo = t;
    }
    let mut hi = hi.ok_or_else(|| {
        Error::Procedure(format!(
            "no event before pi/2: final distance to w_1 is {}, largest witness height {}",
            f1(limit) + 1.0,
            (1..d).map(|i| f2(limit, i)).fold(f64::NEG_INFINITY, f64::max)
        ))
    })?;
    while hi - lo > BRACKET {
        let mid = 0.5 * (lo + hi);
        if g(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let theta = 0.5 * (lo + hi);
    if theta >= limit {
        return Err(Error::Procedure("the first event is at pi/2".into()));
    }
    // the function that crossed zero is the one largest at the upper end
    let (mut best, mut which) = (f1(hi), 0usize);
    for i in 1..d {
        let v = f2(hi, i);
        if v > best {
            best = v;
            which = i;
        }
    }
    let (event, residual, hit) = if which == 0 {
        (RotationEvent::UnitDistance, f1(theta).abs(), None)
    } else {
        (RotationEvent::HyperplaneHit, f2(theta, which).abs(), Some(which))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut log = InvariantLog {
        worst_theta_margin: f64::INFINITY,
        worst_ball_margin: f64::INFINITY,
        worst_escape_margin: f64::INFINITY,
        ..Default::default()
    };
    let mut moved = simplex.to_vec();
    for _ in 0..LOG_SAMPLES {
        let t = theta * (1.0 - rng.gen::<f64>());
        moved[0] = frame.vertex(t);
        let o2 = linalg::centroid(&moved);
        let tm = 1.0 - max_dist(w1, &moved);
        let bm = linalg::distance(w1, &o2) - big_r;
        log.worst_theta_margin = log.worst_theta_margin.min(tm);
        log.worst_ball_margin = log.worst_ball_margin.min(bm);
        log.theta_violations += usize::from(tm < -eq);
        log.ball_violations += usize::from(bm < -eq);
        for i in 1..d {
            if f2(t, i) <= 0.0 {
                let em = 1.0 - max_dist(&witnesses[i], &moved);
                log.worst_escape_margin = log.worst_escape_margin.min(em);
                log.escape_violations += usize::from(em < -eq);
            }
        }
        log.samples += 1;
    }
    Ok(RotationOutcome {
        event,
        theta,
        moved_vertex: frame.vertex(theta).iter().copied().collect(),
        hit_witness: hit,
        residual,
        bracket: hi - lo,
        log,
    })
}

/// Random Case (ii) instance: a regular unit simplex, `w_1` in the rugby
/// ball above `pi` and outside the circumscribed ball, the other witnesses
/// in the rugby ball below `pi`, all moved by a random isometry. Instances
/// whose rotation reaches `pi/2` without an event are redrawn.
pub fn random_rotation_instance<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<RotationInstance> {
    check_dim(d, 2, "the rotation procedure")?;
    let simplex = regular_unit_simplex(d, d)?.into_points();
    let rugby = ReuleauxBody::regular_rugby_ball(d)?;
    let big_r = unit_simplex_circumradius(d);
    let height = |p: &Point| p[d - 1];
    for _ in 0..MAX_REJECTIONS {
        let w1 = loop {
            let p = rugby.sample_point_with(rng)?;
            if height(&p) > 1e-6 && p.norm() > big_r + 1e-6 && linalg::distance(&p, &simplex[0]) < 1.0 - 1e-6 {
                break p;
            }
        };
        let mut witnesses = vec![w1];
        while witnesses.len() < d {
            let p = rugby.sample_point_with(rng)?;
            if height(&p) < -1e-6 {
                witnesses.push(p);
            }
        }
        let q = linalg::random_rotation(d, rng);
        let shift = linalg::random_gaussian(d, rng);
        let map = |p: &Point| &q * p + &shift;
        let inst = RotationInstance {
            simplex: simplex.iter().map(map).collect(),
            witnesses: witnesses.iter().map(map).collect(),
        };
        match rotation_procedure(&inst.simplex, &inst.witnesses, 0) {
            Ok(_) => return Ok(inst),
            Err(Error::Procedure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Sampling {
        attempts: MAX_REJECTIONS,
    })
}

/// Runs the procedure on `instances` random instances and tallies the
/// event residuals and the invariant logs.
pub fn verify_rotation(d: usize, instances: usize, seed: u64) -> Result<LemmaReport> {
    let tol = Tolerance::default();
    let tally = run_trials(instances, seed, |rng, t| {
        let inst = random_rotation_instance(d, rng)?;
        let out = rotation_procedure(&inst.simplex, &inst.witnesses, derive_seed(seed, rng.gen()))?;
        match out.event {
            RotationEvent::UnitDistance => t.count("unit_distance_events", 1),
            RotationEvent::HyperplaneHit => t.count("hyperplane_hit_events", 1),
        }
        t.maximum("max_residual", out.residual);
        t.maximum("max_bracket", out.bracket);
        t.count("log_samples", out.log.samples);
        let pts: Vec<&Point> = inst.simplex.iter().chain(&inst.witnesses).collect();
        if out.residual > 1e-9 || out.bracket >= BRACKET {
            t.fail(|| Witness::new(-out.residual, "event not located to tolerance", &pts));
        }
        let margin = out
            .log
            .worst_theta_margin
            .min(out.log.worst_ball_margin)
            .min(out.log.worst_escape_margin);
        t.record(margin, false, tol, || super::EqualityCase::Unclassified, || {
            Witness::new(margin, "invariant violated along the rotation", &pts)
        });
        Ok(())
    })?;
    Ok(tally.into_report("rotation").with_detail("d", d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_frame() -> (Vec<Point>, Vector, Vector, Point) {
        let simplex = regular_unit_simplex(3, 3).unwrap().into_points();
        let m = linalg::centroid(&simplex[1..]);
        let u0 = (&simplex[0] - &m).normalize();
        let e = Vector::from_row_slice(&[0.0, 0.0, 1.0]);
        (simplex, u0, e, m)
    }

    #[test]
    fn unit_distance_event() {
        let (simplex, u0, e, m) = triangle_frame();
        let w1 = &e * 0.75;
        let low = &m - &u0 * 0.05 - &e * 0.3;
        let out = rotation_procedure(&simplex, &[w1.clone(), low.clone(), low], 1).unwrap();
        assert_eq!(out.event, RotationEvent::UnitDistance);
        let v = Point::from_vec(out.moved_vertex.clone());
        assert!((linalg::distance(&v, &w1) - 1.0).abs() < 1e-10);
        assert!(out.theta > 0.0 && out.theta < std::f64::consts::FRAC_PI_2);
        assert!(out.bracket < 1e-12);
        assert_eq!(out.log.violations(), 0);
        assert_eq!(out.log.samples, 100);
    }

    #[test]
    fn hyperplane_hit_event() {
        let (simplex, u0, e, m) = triangle_frame();
        let w1 = &e * 0.75;
        let shallow = &m + &u0 * 0.5 - &e * 1e-3;
        let low = &m - &u0 * 0.05 - &e * 0.3;
        let out = rotation_procedure(&simplex, &[w1, shallow, low], 1).unwrap();
        assert_eq!(out.event, RotationEvent::HyperplaneHit);
        assert_eq!(out.hit_witness, Some(1));
        assert!(out.residual < 1e-10);
        assert_eq!(out.log.violations(), 0);
    }

    #[test]
    fn deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_rotation_instance(4, &mut rng).unwrap();
        let a = rotation_procedure(&inst.simplex, &inst.witnesses, 7).unwrap();
        let b = rotation_procedure(&inst.simplex, &inst.witnesses, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn precondition_failures_are_case_errors() {
        let (simplex, _, e, _) = triangle_frame();
        // w_1 inside the circumscribed ball
        let w1 = &e * 0.1;
        let low = -&e * 0.2;
        assert!(matches!(
            rotation_procedure(&simplex, &[w1, low.clone(), low], 0),
            Err(Error::Case(_))
        ));
    }

    #[test]
    fn random_instances_pass() {
        for d in [3, 4] {
            let r = verify_rotation(d, 30, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
