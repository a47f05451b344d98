use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{BodyKind, ReuleauxBody};
use crate::error::{Error, Result};
use crate::geom::{Ball, Point, Space};
use crate::linalg::{self, Vector};

/// Upper bound on rejection-sampling proposals per requested point.
const MAX_ATTEMPTS_PER_POINT: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SampleStats {
    pub accepted: usize,
    pub attempts: usize,
}

impl SampleStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.attempts == 0 {
            0.0
        } else {
            self.accepted as f64 / self.attempts as f64
        }
    }
}

impl ReuleauxBody {
    /// Ball used as the rejection envelope.
    ///
    /// For `x` in the body, `sum |x - v_i|^2 <= k`, and that sum equals
    /// `k |x - c|^2 + k R^2` with `c` the vertex centroid and `R` the vertex
    /// circumradius, so the body lies in `B(c, sqrt(1 - R^2))`.
    pub fn sampling_ball(&self) -> Ball {
        let c = self.centroid();
        let r2 = self
            .vertices()
            .iter()
            .map(|v| (v - &c).norm_squared())
            .sum::<f64>()
            / self.vertices().len() as f64;
        Ball {
            center: c,
            radius: (1.0 - r2).max(0.0).sqrt(),
        }
    }

    /// `n` points drawn uniformly from the body (volume measure in R^d, area
    /// measure on the sphere), deterministic for a fixed seed.
    pub fn sample_body(&self, n: usize, seed: u64) -> Result<Vec<Point>> {
        self.sample_body_with_stats(n, seed).map(|(p, _)| p)
    }

    pub fn sample_body_with_stats(&self, n: usize, seed: u64) -> Result<(Vec<Point>, SampleStats)> {
        if n == 0 {
            return Err(Error::Argument("sample count must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stats = SampleStats::default();
        let mut out = Vec::with_capacity(n);
        let limit = MAX_ATTEMPTS_PER_POINT.saturating_mul(n);
        let envelope = self.sampling_ball();
        let cap = match self.space() {
            Space::Sphere { radius, .. } => Some(self.sampling_cap(radius)),
            Space::Euclidean { .. } => None,
        };
        while out.len() < n {
            if stats.attempts >= limit {
                return Err(Error::Sampling {
                    attempts: stats.attempts,
                });
            }
            stats.attempts += 1;
            let p = match &cap {
                None => &envelope.center + linalg::random_in_ball(self.dim(), envelope.radius, &mut rng),
                Some(cap) => cap.sample(&mut rng),
            };
            if self.contains(&p) {
                out.push(p);
            }
        }
        stats.accepted = out.len();
        Ok((out, stats))
    }

    fn sampling_cap(&self, radius: f64) -> Cap {
        let axis = self.centroid().normalize();
        let ball = self.sampling_ball();
        // two bounds on the angle to the axis: a vertex angle plus one unit
        // chord, and the sphere points inside the envelope ball
        let far = self
            .vertices()
            .iter()
            .map(|v| crate::sphere::vector_angle(v, &axis))
            .fold(0.0, f64::max);
        let phi = crate::sphere::unit_chord_angle(radius);
        let by_envelope = {
            // points of the sphere within distance rho of c, c = t * axis
            let t = ball.center.norm();
            let rho = ball.radius;
            let cos = (radius * radius + t * t - rho * rho) / (2.0 * radius * t.max(1e-300));
            if cos <= -1.0 {
                std::f64::consts::PI
            } else {
                cos.min(1.0).acos()
            }
        };
        Cap {
            axis,
            radius,
            angle: (far + phi).min(by_envelope).min(std::f64::consts::PI),
        }
    }

    /// `n` points of the relatively open face with the given strict vertex
    /// set, drawn uniformly on its carrier sphere and filtered by the strict
    /// distance inequalities.
    pub fn sample_face(&self, vertex_subset: &[usize], n: usize, seed: u64) -> Result<Vec<Point>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sampler = FaceSampler::new(self, vertex_subset)?;
        (0..n).map(|_| sampler.draw(self, &mut rng)).collect()
    }

    /// One uniform point of the body from a caller-owned generator.
    pub fn sample_point_with<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Point> {
        let envelope = self.sampling_ball();
        let cap = match self.space() {
            Space::Sphere { radius, .. } => Some(self.sampling_cap(radius)),
            Space::Euclidean { .. } => None,
        };
        for _ in 0..MAX_ATTEMPTS_PER_POINT {
            let p = match &cap {
                None => &envelope.center + linalg::random_in_ball(self.dim(), envelope.radius, rng),
                Some(cap) => cap.sample(rng),
            };
            if self.contains(&p) {
                return Ok(p);
            }
        }
        Err(Error::Sampling {
            attempts: MAX_ATTEMPTS_PER_POINT,
        })
    }

    /// One point of the relatively open face from a caller-owned generator.
    pub fn sample_face_point_with<R: Rng + ?Sized>(&self, vertex_subset: &[usize], rng: &mut R) -> Result<Point> {
        FaceSampler::new(self, vertex_subset)?.draw(self, rng)
    }

    /// All proper faces as strict vertex sets, ordered by size then
    /// lexicographically.
    pub fn face_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.vertices().len();
        let min = if self.kind() == BodyKind::Simplex { 1 } else { 0 };
        let mut out = Vec::new();
        for size in min..n {
            for s in itertools::Itertools::combinations(0..n, size) {
                out.push(s);
            }
        }
        out
    }
}

struct FaceSampler {
    subset: Vec<usize>,
    carrier: Ball,
    normal_space: Vec<Vector>,
}

impl FaceSampler {
    fn new(body: &ReuleauxBody, vertex_subset: &[usize]) -> Result<Self> {
        let carrier = body.face_carrier(vertex_subset)?;
        let mut subset = vertex_subset.to_vec();
        subset.sort_unstable();
        let verts = body.vertices();
        let complement: Vec<Vector> = (0..verts.len())
            .filter(|i| !subset.contains(i))
            .map(|i| verts[i].clone())
            .collect();
        let edges: Vec<Vector> = complement[1..].iter().map(|p| p - &complement[0]).collect();
        let normal_space = linalg::orthonormal_complement(&edges, body.dim());
        Ok(Self {
            subset,
            carrier,
            normal_space,
        })
    }

    fn draw<R: Rng + ?Sized>(&self, body: &ReuleauxBody, rng: &mut R) -> Result<Point> {
        let verts = body.vertices();
        let eq = body.tol.eq_tol;
        for _ in 0..MAX_ATTEMPTS_PER_POINT {
            let dir = linalg::random_unit(self.normal_space.len(), rng);
            let mut p = self.carrier.center.clone();
            for (c, b) in dir.iter().zip(&self.normal_space) {
                p.axpy(self.carrier.radius * c, b, 1.0);
            }
            if self.subset.iter().all(|&i| linalg::distance(&p, &verts[i]) < 1.0 - eq) {
                return Ok(p);
            }
        }
        Err(Error::Sampling {
            attempts: MAX_ATTEMPTS_PER_POINT,
        })
    }
}

/// Spherical cap `{x : angle(x, axis) <= angle}` of the sphere of radius `radius`.
struct Cap {
    axis: Vector,
    radius: f64,
    angle: f64,
}

impl Cap {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        linalg::random_in_cap(&self.axis, self.angle, rng) * self.radius
    }
}
