//! Reuleaux simplices and rugby balls, Euclidean and spherical.
//!
//! A body is the intersection of unit balls around the vertices of a regular
//! unit simplex: `d + 1` vertices in dimension `d` for a Reuleaux simplex, `d`
//! vertices for a rugby ball. On a sphere the balls are taken in chord
//! distance and intersected with the sphere.

mod checks;
mod construction;
mod sampling;

pub use checks::{
    central_projection_check, circumball_check, cross_section_check, halfspace_identity_check,
    CentralProjectionReport, CircumballReport, CrossSectionReport, HalfspaceReport,
};
pub use construction::{
    red_blue_construction, red_blue_delta_max, red_blue_margins, RedBlue, RedBlueMargins,
    DEFAULT_CONTRACTION,
};
pub use sampling::SampleStats;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{regular_unit_simplex, Ball, Hyperplane, Point, PointConfig, Space};
use crate::linalg::{self, Vector};
use crate::tolerance::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BodyKind {
    Simplex,
    RugbyBall,
}

#[derive(Clone, Debug)]
pub struct ReuleauxBody {
    kind: BodyKind,
    vertices: PointConfig,
    tol: Tolerance,
}

/// A boundary stratum: the vertices at strict distance `< 1` and the sphere
/// carrying the stratum.
#[derive(Clone, Debug, PartialEq)]
pub struct Face {
    pub vertex_subset: Vec<usize>,
    pub carrier: Ball,
}

/// Radius `sqrt((m+1)/(2m))` of the intersection of the unit spheres around
/// `m` vertices of a regular unit simplex.
pub fn carrier_radius(m: usize) -> f64 {
    let m = m as f64;
    ((m + 1.0) / (2.0 * m)).sqrt()
}

impl ReuleauxBody {
    pub fn new(kind: BodyKind, vertices: PointConfig, tol: Tolerance) -> Result<Self> {
        let d = vertices.dim();
        let expected = match kind {
            BodyKind::Simplex => d + 1,
            BodyKind::RugbyBall => d,
        };
        if d < 1 || vertices.len() != expected {
            return Err(Error::Dimension(format!(
                "{kind:?} in dimension {d} needs {expected} vertices, got {}",
                vertices.len()
            )));
        }
        if kind == BodyKind::RugbyBall && d < 2 {
            return Err(Error::Dimension("a rugby ball needs dimension at least 2".into()));
        }
        let pts = vertices.points();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let dist = linalg::distance(&pts[i], &pts[j]);
                if !tol.is_unit(dist) {
                    return Err(Error::Argument(format!(
                        "vertices {i} and {j} are at distance {dist}, not 1"
                    )));
                }
            }
        }
        Ok(Self { kind, vertices, tol })
    }

    /// Reuleaux simplex on the regular unit simplex centered at the origin.
    pub fn regular_simplex(d: usize) -> Result<Self> {
        Self::new(BodyKind::Simplex, regular_unit_simplex(d, d + 1)?, Tolerance::default())
    }

    /// Rugby ball in R^d on a regular unit (d-1)-simplex centered at the origin.
    pub fn regular_rugby_ball(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::Dimension("a rugby ball needs dimension at least 2".into()));
        }
        Self::new(BodyKind::RugbyBall, regular_unit_simplex(d, d)?, Tolerance::default())
    }

    /// Body on `S^d_r` whose vertices form a regular unit-chord simplex
    /// centered on the last axis.
    pub fn spherical(kind: BodyKind, d: usize, r: f64) -> Result<Self> {
        let k = match kind {
            BodyKind::Simplex => d + 1,
            BodyKind::RugbyBall => d,
        };
        let flat = regular_unit_simplex(d + 1, k)?;
        let circ = crate::geom::unit_simplex_circumradius(k);
        if r < circ {
            return Err(Error::Domain(format!(
                "a regular unit simplex on {k} vertices does not fit on a sphere of radius {r}"
            )));
        }
        let h = (r * r - circ * circ).sqrt();
        let points = flat
            .into_points()
            .into_iter()
            .map(|mut p| {
                p[d] = h;
                p
            })
            .collect();
        let cfg = PointConfig::new(Space::Sphere { dim: d, radius: r }, points, None)?;
        Self::new(kind, cfg, Tolerance::default())
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn kind(&self) -> BodyKind {
        self.kind
    }

    pub fn vertices(&self) -> &[Point] {
        self.vertices.points()
    }

    pub fn config(&self) -> &PointConfig {
        &self.vertices
    }

    pub fn space(&self) -> Space {
        self.vertices.space()
    }

    pub fn dim(&self) -> usize {
        self.vertices.dim()
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn is_spherical(&self) -> bool {
        matches!(self.space(), Space::Sphere { .. })
    }

    pub fn centroid(&self) -> Point {
        linalg::centroid(self.vertices())
    }

    fn ambient_len(&self) -> usize {
        self.space().embedding_dim()
    }

    /// Largest distance from `p` to a vertex.
    pub fn max_vertex_distance(&self, p: &Point) -> f64 {
        self.vertices()
            .iter()
            .map(|v| linalg::distance(p, v))
            .fold(0.0, f64::max)
    }

    pub fn contains(&self, p: &Point) -> bool {
        if p.len() != self.ambient_len() {
            return false;
        }
        if let Space::Sphere { radius, .. } = self.space() {
            if (p.norm() - radius).abs() > crate::geom::ON_SPHERE_RTOL * radius.max(1.0) {
                return false;
            }
        }
        self.max_vertex_distance(p) <= 1.0 + self.tol.geom_tol
    }

    fn require_euclidean(&self, what: &str) -> Result<()> {
        if self.is_spherical() {
            Err(Error::Domain(format!("{what} is implemented for Euclidean bodies only")))
        } else {
            Ok(())
        }
    }

    fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let n = self.vertices().len();
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() != subset.len() || s.iter().any(|&i| i >= n) {
            return Err(Error::Argument(format!("invalid vertex subset {subset:?}")));
        }
        if s.len() == n {
            return Err(Error::Argument("a face subset must be a proper subset".into()));
        }
        if s.is_empty() && self.kind == BodyKind::Simplex {
            return Err(Error::Argument(
                "the unit spheres of all vertices of a simplex do not meet".into(),
            ));
        }
        Ok(s)
    }

    /// Carrier sphere of the face whose strict-distance vertex set is
    /// `vertex_subset`: centered at the centroid of the complementary `m`
    /// vertices with radius `sqrt((m+1)/(2m))`.
    pub fn face_carrier(&self, vertex_subset: &[usize]) -> Result<Ball> {
        self.require_euclidean("face_carrier")?;
        let s = self.check_subset(vertex_subset)?;
        let complement: Vec<Point> = (0..self.vertices().len())
            .filter(|i| !s.contains(i))
            .map(|i| self.vertices()[i].clone())
            .collect();
        Ball::new(linalg::centroid(&complement), carrier_radius(complement.len()))
    }

    /// Face containing the boundary point `p`.
    pub fn face_of_boundary_point(&self, p: &Point) -> Result<Face> {
        self.require_euclidean("face_of_boundary_point")?;
        if p.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point of length {} in a body of dimension {}",
                p.len(),
                self.dim()
            )));
        }
        let dists: Vec<f64> = self.vertices().iter().map(|v| linalg::distance(p, v)).collect();
        let max = dists.iter().copied().fold(0.0, f64::max);
        let eq = self.tol.eq_tol;
        if max < 1.0 - eq {
            return Err(Error::Classification(format!("interior point (max distance {max})")));
        }
        if max > 1.0 + eq {
            return Err(Error::Classification(format!("exterior point (max distance {max})")));
        }
        let vertex_subset: Vec<usize> = (0..dists.len()).filter(|&j| dists[j] < 1.0 - eq).collect();
        let carrier = self.face_carrier(&vertex_subset)?;
        Ok(Face {
            vertex_subset,
            carrier,
        })
    }

    /// Midpoint of the boundary arc over the edge `{v_i, v_j}` of a
    /// Euclidean Reuleaux simplex.
    pub fn arc_midpoint(&self, i: usize, j: usize) -> Result<Point> {
        self.require_euclidean("arc_midpoint")?;
        if self.kind != BodyKind::Simplex {
            return Err(Error::Argument("arc midpoints are defined on Reuleaux simplices".into()));
        }
        let n = self.vertices().len();
        if i == j || i >= n || j >= n {
            return Err(Error::Argument(format!("invalid arc ({i}, {j})")));
        }
        let v = self.vertices();
        let carrier = self.face_carrier(&[i.min(j), i.max(j)])?;
        let c = carrier.center;
        let mid = (&v[i] + &v[j]) * 0.5;
        let u = &mid - &c;
        let un = u.norm();
        if un <= 1e-12 {
            return Err(Error::Degenerate("edge midpoint coincides with the carrier center".into()));
        }
        let u = u / un;
        // |c + s u - v_k|^2 = 1 for a complementary vertex k
        let k = (0..n).find(|&k| k != i && k != j).unwrap();
        let w = &c - &v[k];
        let b = u.dot(&w);
        let disc = b * b - (w.norm_squared() - 1.0);
        if disc < 0.0 {
            return Err(Error::Degenerate("arc does not meet the carrier sphere".into()));
        }
        let s = -b + disc.sqrt();
        Ok(c + u * s)
    }

    /// The section by the hyperplane through `facet_vertices`, as a Reuleaux
    /// simplex of one dimension less expressed in an orthonormal chart of
    /// that hyperplane.
    pub fn cross_section(&self, facet_vertices: &[usize]) -> Result<CrossSection> {
        self.require_euclidean("cross_section")?;
        if self.kind != BodyKind::Simplex {
            return Err(Error::Argument("cross sections are taken of Reuleaux simplices".into()));
        }
        let d = self.dim();
        let s = self.check_subset(facet_vertices)?;
        if s.len() != d {
            return Err(Error::Argument(format!(
                "a facet of a {d}-simplex has {d} vertices, got {}",
                s.len()
            )));
        }
        if d < 2 {
            return Err(Error::Dimension("cross section of a segment".into()));
        }
        let pts: Vec<Point> = s.iter().map(|&i| self.vertices()[i].clone()).collect();
        let origin = linalg::centroid(&pts);
        let edges: Vec<Vector> = pts[1..].iter().map(|p| p - &pts[0]).collect();
        let basis = linalg::orthonormalize(&edges);
        if basis.len() != d - 1 {
            return Err(Error::Degenerate("facet vertices do not span a hyperplane".into()));
        }
        let chart = Chart { origin, basis };
        let local: Vec<Point> = pts.iter().map(|p| chart.to_local(p)).collect();
        let body = ReuleauxBody::new(BodyKind::Simplex, PointConfig::euclidean(local)?, self.tol)?;
        let plane = Hyperplane::through(&pts)?;
        Ok(CrossSection {
            body,
            chart,
            plane,
            vertex_indices: s,
        })
    }
}

/// Affine isometry between a k-flat of R^d and R^k.
#[derive(Clone, Debug)]
pub struct Chart {
    pub origin: Point,
    pub basis: Vec<Vector>,
}

impl Chart {
    pub fn to_local(&self, p: &Point) -> Point {
        let rel = p - &self.origin;
        Vector::from_iterator(self.basis.len(), self.basis.iter().map(|b| b.dot(&rel)))
    }

    pub fn to_ambient(&self, q: &Point) -> Point {
        let mut p = self.origin.clone();
        for (c, b) in q.iter().zip(&self.basis) {
            p.axpy(*c, b, 1.0);
        }
        p
    }
}

#[derive(Clone, Debug)]
pub struct CrossSection {
    pub body: ReuleauxBody,
    pub chart: Chart,
    pub plane: Hyperplane,
    pub vertex_indices: Vec<usize>,
}
