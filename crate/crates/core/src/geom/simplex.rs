use crate::error::{Error, Result};
use crate::geom::{Ball, Point, PointConfig, Space};
use crate::linalg::{self, Vector};

/// Circumradius `sqrt((k-1)/(2k))` of a regular unit simplex on `k` vertices.
pub fn unit_simplex_circumradius(k: usize) -> f64 {
    let k = k as f64;
    ((k - 1.0) / (2.0 * k)).sqrt()
}

/// `k` points of R^d with all pairwise distances 1, centered at the origin.
///
/// The vertices `e_i / sqrt(2)` of R^k sit on the hyperplane
/// `x_1 + ... + x_k = 1/sqrt(2)`; after centering they are expressed in the
/// Helmert basis of that hyperplane and padded with zeros up to R^d.
pub fn regular_unit_simplex(d: usize, k: usize) -> Result<PointConfig> {
    if k < 2 {
        return Err(Error::Argument(format!("a simplex needs at least 2 vertices, got {k}")));
    }
    if k > d + 1 {
        return Err(Error::Dimension(format!(
            "a regular simplex on {k} vertices does not fit in R^{d}"
        )));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let points = (0..k)
        .map(|i| {
            let mut p = Vector::zeros(d);
            // Helmert vector j: (1, ..., 1, -j, 0, ...) / sqrt(j (j+1)), j ones.
            for j in 1..k {
                let norm = ((j * (j + 1)) as f64).sqrt();
                let c = if i < j {
                    1.0
                } else if i == j {
                    -(j as f64)
                } else {
                    0.0
                };
                p[j - 1] = s * c / norm;
            }
            p
        })
        .collect();
    PointConfig::new(Space::Euclidean { dim: d }, points, None)
}

/// Ball through the vertices of a nondegenerate simplex, centered in its
/// affine hull. For a regular unit simplex on `k` vertices the center is the
/// centroid and the radius is [`unit_simplex_circumradius`]`(k)`.
pub fn circumscribed_ball(simplex: &PointConfig) -> Result<Ball> {
    circumscribed_ball_of(simplex.points())
}

pub(crate) fn circumscribed_ball_of(points: &[Point]) -> Result<Ball> {
    let center = linalg::affine_circumcenter(points).map_err(|e| match e {
        Error::Degenerate(msg) => Error::Degenerate(format!("rank-deficient simplex: {msg}")),
        other => other,
    })?;
    let radius = points
        .iter()
        .map(|p| linalg::distance(p, &center))
        .fold(0.0, f64::max);
    Ball::new(center, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::diameter;

    #[test]
    fn pairwise_distances_are_unit() {
        for d in 1..=10 {
            for k in 2..=d + 1 {
                let cfg = regular_unit_simplex(d, k).unwrap();
                let pts = cfg.points();
                for i in 0..k {
                    for j in i + 1..k {
                        let dist = linalg::distance(&pts[i], &pts[j]);
                        assert!((dist - 1.0).abs() <= 1e-12, "d={d} k={k} dist={dist}");
                    }
                }
                assert!(linalg::centroid(pts).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn too_many_vertices_is_a_dimension_error() {
        assert!(matches!(regular_unit_simplex(3, 5), Err(Error::Dimension(_))));
        assert!(matches!(regular_unit_simplex(3, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn triangle_and_four_simplex_circumradii() {
        let tri = circumscribed_ball(&regular_unit_simplex(2, 3).unwrap()).unwrap();
        assert!((tri.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!((tri.radius - 0.57735).abs() < 1e-5);
        let s4 = circumscribed_ball(&regular_unit_simplex(4, 5).unwrap()).unwrap();
        assert!((s4.radius - (2.0f64 / 5.0).sqrt()).abs() < 1e-12);
        assert!((s4.radius - 0.63246).abs() < 1e-5);
    }

    #[test]
    fn unit_segment_and_tetrahedron_in_r4() {
        let seg = circumscribed_ball(&regular_unit_simplex(5, 2).unwrap()).unwrap();
        assert!((seg.radius - 0.5).abs() < 1e-15);
        let tet = circumscribed_ball(&regular_unit_simplex(4, 4).unwrap()).unwrap();
        assert!((tet.radius - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert!(tet.center.norm() < 1e-14);
    }

    #[test]
    fn degenerate_simplex_is_rejected() {
        let cfg = PointConfig::euclidean(vec![
            Point::from_row_slice(&[0.0, 0.0]),
            Point::from_row_slice(&[0.5, 0.0]),
            Point::from_row_slice(&[1.0, 0.0]),
        ])
        .unwrap();
        assert!(matches!(circumscribed_ball(&cfg), Err(Error::Degenerate(_))));
    }

    #[test]
    fn simplex_diameter_is_one() {
        let cfg = regular_unit_simplex(6, 7).unwrap();
        assert!((diameter(&cfg).unwrap() - 1.0).abs() < 1e-12);
    }
}
