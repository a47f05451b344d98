//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;

/// Relative threshold below which a Gram-Schmidt residual counts as zero.
const RANK_EPS: f64 = 1e-10;

pub fn centroid(points: &[Vector]) -> Vector {
    assert!(!points.is_empty(), "centroid of an empty set");
    let mut sum = Vector::zeros(points[0].len());
    for p in points {
        sum += p;
    }
    sum / points.len() as f64
}

pub fn distance(a: &Vector, b: &Vector) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Modified Gram-Schmidt. Vectors that are (numerically) in the span of the
/// previous ones are dropped.
pub fn orthonormalize(vectors: &[Vector]) -> Vec<Vector> {
    let scale = vectors.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    let mut basis: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        // two passes keep the basis orthogonal to machine precision
        for _ in 0..2 {
            for b in &basis {
                let c = w.dot(b);
                w.axpy(-c, b, 1.0);
            }
        }
        let n = w.norm();
        if n > RANK_EPS * scale {
            basis.push(w / n);
        }
    }
    basis
}

/// Orthonormal basis of the orthogonal complement of `span(vectors)` in R^dim.
pub fn orthonormal_complement(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut basis = orthonormalize(vectors);
    let k = basis.len();
    for i in 0..dim {
        if basis.len() == dim {
            break;
        }
        let mut e = Vector::zeros(dim);
        e[i] = 1.0;
        for _ in 0..2 {
            for b in &basis {
                let c = e.dot(b);
                e.axpy(-c, b, 1.0);
            }
        }
        let n = e.norm();
        if n > 1e-6 {
            basis.push(e / n);
        }
    }
    basis.split_off(k)
}

/// Circumcenter of `points` inside their affine hull.
///
/// Solves the Gram system `2 (p_i - p_0).(p_j - p_0) x_j = |p_i - p_0|^2`.
/// Fails with [`Error::Degenerate`] when the points are affinely dependent.
pub fn affine_circumcenter(points: &[Vector]) -> Result<Vector> {
    let k = points.len();
    if k == 0 {
        return Err(Error::Argument("circumcenter of an empty set".into()));
    }
    let p0 = &points[0];
    if k == 1 {
        return Ok(p0.clone());
    }
    let edges: Vec<Vector> = points[1..].iter().map(|p| p - p0).collect();
    let m = edges.len();
    let gram = DMatrix::from_fn(m, m, |i, j| 2.0 * edges[i].dot(&edges[j]));
    let rhs = DVector::from_fn(m, |i, _| edges[i].norm_squared());
    let svd = gram.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if smax <= 0.0 || smin <= RANK_EPS * smax {
        return Err(Error::Degenerate(format!(
            "{k} points are affinely dependent (condition {:.3e})",
            if smin > 0.0 { smax / smin } else { f64::INFINITY }
        )));
    }
    let coeffs = gram
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Degenerate("singular Gram matrix".into()))?;
    let mut center = p0.clone();
    for (c, e) in coeffs.iter().zip(&edges) {
        center.axpy(*c, e, 1.0);
    }
    Ok(center)
}

pub fn random_gaussian<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    Vector::from_fn(dim, |_, _| rng.sample(StandardNormal))
}

pub fn random_unit<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector {
    loop {
        let g = random_gaussian(dim, rng);
        let n = g.norm();
        if n > 1e-12 {
            return g / n;
        }
    }
}

/// Uniform point in the ball of radius `radius` about the origin.
pub fn random_in_ball<R: Rng + ?Sized>(dim: usize, radius: f64, rng: &mut R) -> Vector {
    let u: f64 = rng.gen();
    random_unit(dim, rng) * (radius * u.powf(1.0 / dim as f64))
}

/// Haar-distributed rotation (determinant +1) of R^dim.
pub fn random_rotation<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            let mut col = q.column_mut(j);
            col *= -1.0;
        }
    }
    if q.determinant() < 0.0 {
        let mut col = q.column_mut(0);
        col *= -1.0;
    }
    q
}

/// Uniform unit vector in the cap of angular radius `angle` around the unit
/// vector `axis`: polar angle by rejection against the `sin^{m-2}` density,
/// azimuth uniform.
pub fn random_in_cap<R: Rng + ?Sized>(axis: &Vector, angle: f64, rng: &mut R) -> Vector {
    let m = axis.len();
    let angle = angle.clamp(0.0, std::f64::consts::PI);
    let top = if angle >= std::f64::consts::FRAC_PI_2 { 1.0 } else { angle.sin() };
    let theta = loop {
        let t = rng.gen::<f64>() * angle;
        let w = if top > 0.0 { (t.sin() / top).powi(m as i32 - 2) } else { 1.0 };
        if rng.gen::<f64>() <= w {
            break t;
        }
    };
    let tangent = loop {
        let g = random_gaussian(m, rng);
        let t = &g - axis * g.dot(axis);
        let n = t.norm();
        if n > 1e-12 {
            break t / n;
        }
    };
    axis * theta.cos() + tangent * theta.sin()
}

/// Barycentric coordinates with respect to a full-dimensional simplex.
#[derive(Clone, Debug)]
pub struct BarycentricFrame {
    origin: Vector,
    inverse: DMatrix<f64>,
}

impl BarycentricFrame {
    /// `vertices` must hold `m + 1` affinely independent points of R^m.
    pub fn new(vertices: &[Vector]) -> Result<Self> {
        let m = vertices.len().saturating_sub(1);
        if m == 0 || vertices.iter().any(|v| v.len() != m) {
            return Err(Error::Dimension(format!(
                "barycentric frame needs m+1 points in R^m, got {} points",
                vertices.len()
            )));
        }
        let origin = vertices[0].clone();
        let edges = DMatrix::from_fn(m, m, |i, j| vertices[j + 1][i] - origin[i]);
        let inverse = edges
            .try_inverse()
            .ok_or_else(|| Error::Degenerate("simplex has no volume".into()))?;
        Ok(Self { origin, inverse })
    }

    pub fn coordinates(&self, x: &Vector) -> Vec<f64> {
        let tail = &self.inverse * (x - &self.origin);
        let mut out = Vec::with_capacity(tail.len() + 1);
        out.push(1.0 - tail.sum());
        out.extend(tail.iter().copied());
        out
    }

    /// Smallest barycentric coordinate; nonnegative iff `x` lies in the hull.
    pub fn min_coordinate(&self, x: &Vector) -> f64 {
        self.coordinates(x).into_iter().fold(f64::INFINITY, f64::min)
    }
}

/// SplitMix64 finalizer; derives independent child seeds from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
