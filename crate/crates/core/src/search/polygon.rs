use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geom::{Point, PointConfig};

/// Regular `n`-gon, `n` odd, whose diameter graph is the cycle joining each
/// vertex to the two opposite ones: circumradius `1 / (2 cos(pi / 2n))`.
pub fn reuleaux_polygon(n: usize) -> Result<PointConfig> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::Argument(format!("a Reuleaux polygon needs odd n >= 3, got {n}")));
    }
    let r = 1.0 / (2.0 * (PI / (2.0 * n as f64)).cos());
    let pts = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            Point::from_row_slice(&[r * t.cos(), r * t.sin()])
        })
        .collect();
    PointConfig::euclidean(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_force_cliques, DiameterGraph};
    use crate::tolerance::Tolerance;

    #[test]
    fn triangle() {
        let p = reuleaux_polygon(3).unwrap();
        let pts = p.points();
        for i in 0..3 {
            let d = crate::linalg::distance(&pts[i], &pts[(i + 1) % 3]);
            assert!((d - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn diameter_graph_is_a_cycle() {
        for n in [5, 7, 9, 11] {
            let g = DiameterGraph::build(&reuleaux_polygon(n).unwrap(), Tolerance::default()).unwrap();
            assert_eq!(g.edge_count(), n);
            for i in 0..n {
                let deg = (0..n).filter(|&j| j != i && g.has_edge(i, j)).count();
                assert_eq!(deg, 2);
                assert!(g.has_edge(i, (i + (n - 1) / 2) % n));
            }
            assert_eq!(brute_force_cliques(g.adjacency(), 2).unwrap().count, n);
            assert_eq!(brute_force_cliques(g.adjacency(), 3).unwrap().count, 0);
        }
    }

    #[test]
    fn even_n_is_rejected() {
        assert!(matches!(reuleaux_polygon(6), Err(Error::Argument(_))));
        assert!(reuleaux_polygon(1).is_err());
    }
}
