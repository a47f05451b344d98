//! Random configurations rich in diameter pairs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geom::{regular_unit_simplex, Point, PointConfig};
use crate::linalg::{self, Vector};

/// Attempts at placing a point on a clique's unit-sphere intersection
/// before falling back to an interior point.
const PLACEMENT_ATTEMPTS: usize = 60;
/// Minimal separation between generated points.
const MIN_SEPARATION: f64 = 1e-3;
/// Slack allowed on the diameter while placing points.
const DIAMETER_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorOptions {
    /// Standard deviation of a Gaussian perturbation applied to every
    /// coordinate at the end (0 keeps the unit distances exact).
    pub jitter: f64,
    /// Apply a random rotation, translation and scaling.
    pub isometry: bool,
}

impl Default for GeneratorOptions {
    fn default() -> Self {
        Self {
            jitter: 0.0,
            isometry: true,
        }
    }
}

/// A random clique containing `v`, grown greedily up to `size` vertices.
fn random_clique<R: Rng + ?Sized>(pts: &[Point], v: usize, size: usize, rng: &mut R) -> Vec<usize> {
    let mut clique = vec![v];
    let mut order: Vec<usize> = (0..pts.len()).filter(|&u| u != v).collect();
    order.shuffle(rng);
    for u in order {
        if clique.len() == size {
            break;
        }
        if clique
            .iter()
            .all(|&w| (linalg::distance(&pts[u], &pts[w]) - 1.0).abs() < 1e-9)
        {
            clique.push(u);
        }
    }
    clique
}

/// `n` points of diameter 1 in R^d: a regular unit simplex of random size,
/// extended by points placed at unit distance from random cliques whenever
/// that keeps the diameter at 1.
pub fn random_diameter_config<R: Rng + ?Sized>(
    d: usize,
    n: usize,
    opts: GeneratorOptions,
    rng: &mut R,
) -> Result<PointConfig> {
    if d < 1 || n < 2 {
        return Err(Error::Argument(format!("need d >= 1 and n >= 2, got d={d}, n={n}")));
    }
    let k = rng.gen_range(2..=(d + 1).min(n));
    let mut pts = regular_unit_simplex(d, k)?.into_points();
    while pts.len() < n {
        let mut placed = None;
        for _ in 0..PLACEMENT_ATTEMPTS {
            let v = rng.gen_range(0..pts.len());
            let size = rng.gen_range(1..=d);
            let clique = random_clique(&pts, v, size, rng);
            let members: Vec<Point> = clique.iter().map(|&i| pts[i].clone()).collect();
            let c = linalg::centroid(&members);
            let r2 = members.iter().map(|p| (p - &c).norm_squared()).sum::<f64>() / members.len() as f64;
            let edges: Vec<Vector> = members[1..].iter().map(|p| p - &members[0]).collect();
            let normal = linalg::orthonormal_complement(&edges, d);
            if normal.is_empty() || r2 >= 1.0 {
                continue;
            }
            let dir = linalg::random_unit(normal.len(), rng);
            let mut p = c.clone();
            for (t, b) in dir.iter().zip(&normal) {
                p.axpy((1.0 - r2).sqrt() * t, b, 1.0);
            }
            let ok = pts.iter().all(|q| {
                let dist = linalg::distance(&p, q);
                dist <= 1.0 + DIAMETER_SLACK && dist >= MIN_SEPARATION
            });
            if ok {
                placed = Some(p);
                break;
            }
        }
        let p = match placed {
            Some(p) => p,
            // a point inside a segment between two distinct points
            None => loop {
                let i = rng.gen_range(0..pts.len());
                let j = (i + rng.gen_range(1..pts.len())) % pts.len();
                let t: f64 = rng.gen_range(0.2..0.8);
                let p = &pts[i] * t + &pts[j] * (1.0 - t);
                if pts.iter().all(|q| linalg::distance(&p, q) >= MIN_SEPARATION) {
                    break p;
                }
            },
        };
        pts.push(p);
    }
    if opts.isometry {
        let q = linalg::random_rotation(d, rng);
        let shift = linalg::random_gaussian(d, rng);
        let scale: f64 = rng.gen_range(0.5..3.0);
        pts = pts.iter().map(|p| (&q * p + &shift) * scale).collect();
    }
    if opts.jitter > 0.0 {
        for p in &mut pts {
            *p += linalg::random_gaussian(d, rng) * opts.jitter;
        }
    }
    PointConfig::euclidean(pts)
}
