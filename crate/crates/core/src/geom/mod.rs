//! Euclidean primitives: point configurations, balls, hyperplanes,
//! regular simplices and minimal enclosing balls.

mod meb;
mod simplex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};

pub use meb::min_enclosing_ball;
pub use simplex::{circumscribed_ball, regular_unit_simplex, unit_simplex_circumradius};
pub(crate) use simplex::circumscribed_ball_of;

/// A point of R^n. Spherical points use their embedding coordinates.
pub type Point = Vector;

/// Relative slack allowed when checking that a point lies on a sphere.
pub const ON_SPHERE_RTOL: f64 = 1e-9;

/// Ambient space of a configuration.
///
/// `Sphere { dim, radius }` is the `dim`-sphere of the given radius centered
/// at the origin of R^{dim+1}.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Space {
    Euclidean { dim: usize },
    Sphere { dim: usize, radius: f64 },
}

impl Space {
    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        match *self {
            Space::Euclidean { dim } | Space::Sphere { dim, .. } => dim,
        }
    }

    /// Length of the coordinate vectors.
    pub fn embedding_dim(&self) -> usize {
        match *self {
            Space::Euclidean { dim } => dim,
            Space::Sphere { dim, .. } => dim + 1,
        }
    }

    pub fn sphere_radius(&self) -> Option<f64> {
        match *self {
            Space::Euclidean { .. } => None,
            Space::Sphere { radius, .. } => Some(radius),
        }
    }
}

/// Labeled points in a common ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PointSetJson", into = "PointSetJson")]
pub struct PointConfig {
    space: Space,
    points: Vec<Point>,
    labels: Option<Vec<String>>,
}

impl PointConfig {
    pub fn new(space: Space, points: Vec<Point>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = space.embedding_dim();
        if n == 0 {
            return Err(Error::Dimension("ambient dimension must be positive".into()));
        }
        if let Space::Sphere { radius, .. } = space {
            if !(radius.is_finite() && radius > 0.0) {
                return Err(Error::Argument(format!("sphere radius must be positive, got {radius}")));
            }
        }
        for (i, p) in points.iter().enumerate() {
            if p.len() != n {
                return Err(Error::Dimension(format!(
                    "point {i} has {} coordinates, the space needs {n}",
                    p.len()
                )));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::Argument(format!("point {i} has a non-finite coordinate")));
            }
            if let Space::Sphere { radius, .. } = space {
                if (p.norm() - radius).abs() > ON_SPHERE_RTOL * radius.max(1.0) {
                    return Err(Error::Domain(format!(
                        "point {i} has norm {} but the sphere radius is {radius}",
                        p.norm()
                    )));
                }
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != points.len() {
                return Err(Error::Argument(format!(
                    "{} labels for {} points",
                    labels.len(),
                    points.len()
                )));
            }
        }
        Ok(Self { space, points, labels })
    }

    /// Euclidean configuration; the dimension is taken from the first point.
    pub fn euclidean(points: Vec<Point>) -> Result<Self> {
        let dim = points
            .first()
            .map(|p| p.len())
            .ok_or_else(|| Error::Argument("cannot infer the dimension of an empty set".into()))?;
        Self::new(Space::Euclidean { dim }, points, None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::Argument("label count does not match point count".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point> {
        self.points
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Multiplies every coordinate (and the sphere radius) by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor.is_finite() && factor > 0.0) {
            return Err(Error::Argument(format!("scale factor must be positive, got {factor}")));
        }
        let space = match self.space {
            Space::Sphere { dim, radius } => Space::Sphere {
                dim,
                radius: radius * factor,
            },
            s => s,
        };
        let points = self.points.iter().map(|p| p * factor).collect();
        Self::new(space, points, self.labels.clone())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("point sets always serialize")
    }
}

/// Wire format: `{"space": {...}, "points": [[x, ...], ...], "labels": [...]?}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointSetJson {
    space: Space,
    points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<PointSetJson> for PointConfig {
    type Error = Error;

    fn try_from(raw: PointSetJson) -> Result<Self> {
        let points = raw.points.into_iter().map(Vector::from_vec).collect();
        PointConfig::new(raw.space, points, raw.labels)
    }
}

impl From<PointConfig> for PointSetJson {
    fn from(c: PointConfig) -> Self {
        PointSetJson {
            space: c.space,
            points: c.points.iter().map(|p| p.iter().copied().collect()).collect(),
            labels: c.labels,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    pub radius: f64,
}

impl Ball {
    pub fn new(center: Point, radius: f64) -> Result<Self> {
        if !(radius >= 0.0 && radius.is_finite()) {
            return Err(Error::Argument(format!("ball radius must be nonnegative, got {radius}")));
        }
        Ok(Self { center, radius })
    }

    pub fn contains(&self, p: &Point, slack: f64) -> bool {
        linalg::distance(&self.center, p) <= self.radius + slack
    }
}

/// The hyperplane `normal . x = offset` with a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    normal: Point,
    offset: f64,
}

impl Hyperplane {
    /// Rescales `(normal, offset)` so that the normal has unit length.
    pub fn new(normal: Point, offset: f64) -> Result<Self> {
        let n = normal.norm();
        if !(n > 1e-300) || !offset.is_finite() {
            return Err(Error::Argument("hyperplane normal must be nonzero".into()));
        }
        Ok(Self {
            normal: normal / n,
            offset: offset / n,
        })
    }

    /// Hyperplane through `dim` affinely independent points of R^dim.
    pub fn through(points: &[Point]) -> Result<Self> {
        let dim = points.first().map(|p| p.len()).unwrap_or(0);
        if dim == 0 || points.len() != dim {
            return Err(Error::Dimension(format!(
                "a hyperplane of R^{dim} needs {dim} points, got {}",
                points.len()
            )));
        }
        let edges: Vec<Vector> = points[1..].iter().map(|p| p - &points[0]).collect();
        if linalg::orthonormalize(&edges).len() != dim - 1 {
            return Err(Error::Degenerate("points do not span a hyperplane".into()));
        }
        let normal = linalg::orthonormal_complement(&edges, dim)
            .pop()
            .ok_or_else(|| Error::Degenerate("no normal direction".into()))?;
        let offset = normal.dot(&points[0]);
        Self::new(normal, offset)
    }

    pub fn normal(&self) -> &Point {
        &self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn signed_distance(&self, p: &Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// Same hyperplane, oriented so that `p` lies in the closed positive side.
    pub fn oriented_towards(self, p: &Point) -> Self {
        if self.signed_distance(p) < 0.0 {
            Self {
                normal: -self.normal,
                offset: -self.offset,
            }
        } else {
            self
        }
    }

    pub fn reflect(&self, p: &Point) -> Point {
        p - &self.normal * (2.0 * self.signed_distance(p))
    }
}

/// Orthogonal projection of `p` onto `h`.
pub fn project_to_hyperplane(p: &Point, h: &Hyperplane) -> Result<Point> {
    if p.len() != h.normal.len() {
        return Err(Error::Dimension(format!(
            "point in R^{} projected onto a hyperplane of R^{}",
            p.len(),
            h.normal.len()
        )));
    }
    Ok(p - &h.normal * h.signed_distance(p))
}

/// Largest pairwise distance (chord distance for spherical configurations).
pub fn diameter(config: &PointConfig) -> Result<f64> {
    diameter_of(config.points())
}

pub fn diameter_of(points: &[Point]) -> Result<f64> {
    if points.len() < 2 {
        return Err(Error::Argument("diameter needs at least two points".into()));
    }
    let mut best = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            best = best.max(linalg::distance(p, q));
        }
    }
    Ok(best)
}
