//! Sampling checks of the structural properties of Reuleaux simplices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use serde::Serialize;

use super::{BodyKind, ReuleauxBody};
use crate::error::{Error, Result};
use crate::geom::{circumscribed_ball_of, Hyperplane, Point, PointConfig};
use crate::linalg::{self, derive_seed};

/// Body samples this close to the circumsphere must sit near a vertex.
const VERTEX_NEIGHBORHOOD: f64 = 1e-3;
/// Barycentric coordinates below this count as near the relative boundary.
const NEAR_BOUNDARY: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircumballReport {
    pub dim: usize,
    pub samples: usize,
    pub boundary_samples: usize,
    pub circumradius: f64,
    /// Samples outside the circumscribed ball by more than `geom_tol`.
    pub violations: usize,
    /// Samples within `eq_tol` of the circumsphere.
    pub sphere_contacts: usize,
    /// Contacts farther than [`VERTEX_NEIGHBORHOOD`] from every vertex.
    pub sphere_violations: usize,
    /// Smallest `R - |p - O|` over all samples.
    pub worst_margin: f64,
    /// Largest `| |v - O| - R |` over the vertices.
    pub vertex_residual: f64,
}

impl CircumballReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.sphere_violations == 0 && self.vertex_residual < 1e-12
    }
}

/// The body lies in the ball through its vertices and touches its sphere
/// only at the vertices. Checked on volume samples and on face samples.
pub fn circumball_check(body: &ReuleauxBody, samples: usize, seed: u64) -> Result<CircumballReport> {
    require_euclidean_simplex(body)?;
    let ball = circumscribed_ball_of(body.vertices())?;
    let tol = body.tolerance();
    let mut pts = body.sample_body(samples, seed)?;
    let faces = body.face_subsets();
    let per_face = (samples / 10 / faces.len()).max(1);
    let mut boundary_samples = 0;
    for (i, s) in faces.iter().enumerate() {
        let f = body.sample_face(s, per_face, derive_seed(seed, i as u64 + 1))?;
        boundary_samples += f.len();
        pts.extend(f);
    }
    let mut report = CircumballReport {
        dim: body.dim(),
        samples,
        boundary_samples,
        circumradius: ball.radius,
        violations: 0,
        sphere_contacts: 0,
        sphere_violations: 0,
        worst_margin: f64::INFINITY,
        vertex_residual: body
            .vertices()
            .iter()
            .map(|v| (linalg::distance(v, &ball.center) - ball.radius).abs())
            .fold(0.0, f64::max),
    };
    for p in &pts {
        let margin = ball.radius - linalg::distance(p, &ball.center);
        report.worst_margin = report.worst_margin.min(margin);
        if margin < -tol.geom_tol {
            report.violations += 1;
        }
        if margin <= tol.eq_tol {
            report.sphere_contacts += 1;
            let near = body
                .vertices()
                .iter()
                .map(|v| linalg::distance(v, p))
                .fold(f64::INFINITY, f64::min);
            if near > VERTEX_NEIGHBORHOOD {
                report.sphere_violations += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossSectionReport {
    pub dim: usize,
    pub facet: Vec<usize>,
    pub samples: usize,
    pub inside: usize,
    pub mismatches: usize,
}

impl CrossSectionReport {
    pub fn agreement_rate(&self) -> f64 {
        1.0 - self.mismatches as f64 / self.samples.max(1) as f64
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.inside > 0
    }
}

/// Membership in the section body agrees with membership in the original
/// body for points of the facet hyperplane.
pub fn cross_section_check(
    body: &ReuleauxBody,
    facet: &[usize],
    samples: usize,
    seed: u64,
) -> Result<CrossSectionReport> {
    let section = body.cross_section(facet)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = section.body.dim();
    let mut report = CrossSectionReport {
        dim: body.dim(),
        facet: section.vertex_indices.clone(),
        samples,
        inside: 0,
        mismatches: 0,
    };
    for _ in 0..samples {
        let q = linalg::random_in_ball(k, 1.0, &mut rng);
        let p = section.chart.to_ambient(&q);
        let a = section.body.contains(&q);
        if a {
            report.inside += 1;
        }
        if a != body.contains(&p) {
            report.mismatches += 1;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CentralProjectionReport {
    pub dim: usize,
    pub faces: usize,
    pub samples: usize,
    /// Boundary hits classified into exactly the face of the ray's origin.
    pub exact: usize,
    /// Hits near the relative boundary classified into a subface.
    pub closure: usize,
    pub failures: usize,
    /// Largest distance of a hit from its carrier sphere.
    pub max_carrier_residual: f64,
}

impl CentralProjectionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.max_carrier_residual < 1e-9
    }
}

/// Parameter `t > 0` where `o + t u` leaves the body.
fn ray_exit(body: &ReuleauxBody, o: &Point, u: &Point) -> f64 {
    let uu = u.norm_squared();
    body.vertices()
        .iter()
        .map(|v| {
            let w = o - v;
            let b = u.dot(&w);
            let disc = (b * b - uu * (w.norm_squared() - 1.0)).max(0.0);
            (-b + disc.sqrt()) / uu
        })
        .fold(f64::INFINITY, f64::min)
}

/// Rays from the vertex centroid through points of a face `F'` of the
/// vertex simplex leave the body through the face with the same vertex set.
///
/// `face_vertex_subset = None` runs over every proper face, splitting the
/// sample budget evenly.
pub fn central_projection_check(
    body: &ReuleauxBody,
    face_vertex_subset: Option<&[usize]>,
    samples: usize,
    seed: u64,
) -> Result<CentralProjectionReport> {
    require_euclidean_simplex(body)?;
    let faces: Vec<Vec<usize>> = match face_vertex_subset {
        Some(s) => {
            body.face_carrier(s)?;
            let mut s = s.to_vec();
            s.sort_unstable();
            vec![s]
        }
        None => body.face_subsets(),
    };
    let per_face = (samples / faces.len()).max(1);
    let o = body.centroid();
    let mut report = CentralProjectionReport {
        dim: body.dim(),
        faces: faces.len(),
        samples: 0,
        exact: 0,
        closure: 0,
        failures: 0,
        max_carrier_residual: 0.0,
    };
    for (fi, face) in faces.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, fi as u64));
        let carrier = body.face_carrier(face)?;
        for s in 0..per_face {
            let mut lambda: Vec<f64> = (0..face.len()).map(|_| Exp1.sample(&mut rng)).collect();
            // every tenth ray aims close to the relative boundary of F'
            if s % 10 == 9 && face.len() > 1 {
                let k = rng.gen_range(0..face.len());
                lambda[k] *= 1e-10;
            }
            let total: f64 = lambda.iter().sum();
            let mut q = Point::zeros(body.dim());
            for (l, &i) in lambda.iter().zip(face) {
                q.axpy(l / total, &body.vertices()[i], 1.0);
            }
            let u = &q - &o;
            let hit = &o + &u * ray_exit(body, &o, &u);
            report.samples += 1;
            let got = match body.face_of_boundary_point(&hit) {
                Ok(f) => f.vertex_subset,
                Err(_) => {
                    report.failures += 1;
                    continue;
                }
            };
            let interior = lambda.iter().all(|l| l / total >= NEAR_BOUNDARY);
            if &got == face {
                report.exact += 1;
                let res = ((&hit - &carrier.center).norm() - carrier.radius).abs();
                report.max_carrier_residual = report.max_carrier_residual.max(res);
            } else if !interior && got.iter().all(|i| face.contains(i)) {
                report.closure += 1;
            } else {
                report.failures += 1;
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfspaceReport {
    pub dim: usize,
    pub samples: usize,
    pub in_rugby_ball: usize,
    pub in_simplex: usize,
    pub mismatches: usize,
}

impl HalfspaceReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.in_rugby_ball > 0
    }
}

/// On the side of the facet hyperplane `pi` (through `v_1..v_d`) that holds
/// `v_{d+1}`, the Reuleaux simplex and the rugby ball on `v_1..v_d` agree.
pub fn halfspace_identity_check(body: &ReuleauxBody, samples: usize, seed: u64) -> Result<HalfspaceReport> {
    require_euclidean_simplex(body)?;
    let d = body.dim();
    let facet: Vec<Point> = body.vertices()[..d].to_vec();
    let apex_side = &body.vertices()[d];
    let plane = Hyperplane::through(&facet)?.oriented_towards(apex_side);
    let rugby = ReuleauxBody::new(
        BodyKind::RugbyBall,
        PointConfig::euclidean(facet)?,
        body.tolerance(),
    )?;
    let envelope = rugby.sampling_ball();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HalfspaceReport {
        dim: d,
        samples,
        in_rugby_ball: 0,
        in_simplex: 0,
        mismatches: 0,
    };
    let mut taken = 0;
    let mut attempts = 0usize;
    while taken < samples {
        attempts += 1;
        if attempts > 1000 * samples.max(1) {
            return Err(Error::Sampling { attempts });
        }
        let p = &envelope.center + linalg::random_in_ball(d, envelope.radius, &mut rng);
        if plane.signed_distance(&p) < 0.0 {
            continue;
        }
        taken += 1;
        let a = rugby.contains(&p);
        let b = body.contains(&p);
        report.in_rugby_ball += a as usize;
        report.in_simplex += b as usize;
        if a != b {
            report.mismatches += 1;
        }
    }
    Ok(report)
}

fn require_euclidean_simplex(body: &ReuleauxBody) -> Result<()> {
    if body.is_spherical() || body.kind() != BodyKind::Simplex {
        return Err(Error::Argument("check requires a Euclidean Reuleaux simplex".into()));
    }
    Ok(())
}
