//! Minimal enclosing ball by randomized incremental construction with
//! move-to-front support sets.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{Ball, Point};
use crate::linalg;

/// Containment slack relative to the point-set scale.
const CONTAIN_RTOL: f64 = 1e-12;
/// Fixed shuffle seed; the result must not depend on the caller's RNG.
const SHUFFLE_SEED: u64 = 0x6d65_625f_7368_7566;

struct State<'a> {
    points: &'a [Point],
    order: Vec<usize>,
    support: Vec<usize>,
    center: Point,
    radius: f64,
    dim: usize,
    slack: f64,
}

impl State<'_> {
    fn contains(&self, i: usize) -> bool {
        self.radius >= 0.0 && linalg::distance(&self.points[i], &self.center) <= self.radius + self.slack
    }

    fn ball_of_support(&mut self) {
        if self.support.is_empty() {
            self.radius = -1.0;
            return;
        }
        let pts: Vec<Point> = self.support.iter().map(|&i| self.points[i].clone()).collect();
        match linalg::affine_circumcenter(&pts) {
            Ok(c) => {
                self.radius = pts.iter().map(|p| linalg::distance(p, &c)).fold(0.0, f64::max);
                self.center = c;
            }
            // An affinely dependent support only arises from points that were
            // already on the boundary up to rounding; keep the previous ball
            // but make sure it reaches the newest support point.
            Err(_) => {
                let last = &self.points[*self.support.last().unwrap()];
                self.radius = self.radius.max(linalg::distance(last, &self.center));
            }
        }
    }

    /// Smallest ball containing `order[..end]` with `support` on its boundary.
    fn mtf(&mut self, end: usize) {
        self.ball_of_support();
        if self.support.len() == self.dim + 1 {
            return;
        }
        let mut i = 0;
        while i < end {
            let idx = self.order[i];
            if !self.contains(idx) {
                self.support.push(idx);
                self.mtf(i);
                self.support.pop();
                // move to front
                self.order[..=i].rotate_right(1);
            }
            i += 1;
        }
    }
}

/// Smallest ball containing all `points`.
pub fn min_enclosing_ball(points: &[Point]) -> Result<Ball> {
    let first = points
        .first()
        .ok_or_else(|| Error::Argument("minimal enclosing ball of an empty set".into()))?;
    let dim = first.len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::Dimension("points of mixed dimension".into()));
    }
    let scale = points
        .iter()
        .map(|p| linalg::distance(p, first))
        .fold(0.0, f64::max)
        .max(1e-300);
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(SHUFFLE_SEED ^ points.len() as u64));
    let mut state = State {
        points,
        order,
        support: Vec::with_capacity(dim + 1),
        center: first.clone(),
        radius: -1.0,
        dim,
        slack: CONTAIN_RTOL * scale,
    };
    state.mtf(points.len());
    let radius = points
        .iter()
        .map(|p| linalg::distance(p, &state.center))
        .fold(0.0, f64::max);
    Ball::new(state.center, radius)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::regular_unit_simplex;

    #[test]
    fn single_point_has_zero_radius() {
        let p = Point::from_row_slice(&[1.0, -2.0, 3.0]);
        let b = min_enclosing_ball(std::slice::from_ref(&p)).unwrap();
        assert_eq!(b.radius, 0.0);
        assert_eq!(b.center, p);
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(min_enclosing_ball(&[]), Err(Error::Argument(_))));
    }

    #[test]
    fn regular_tetrahedron() {
        let cfg = regular_unit_simplex(3, 4).unwrap();
        let b = min_enclosing_ball(cfg.points()).unwrap();
        assert!((b.radius - (3.0f64 / 8.0).sqrt()).abs() < 1e-12);
        assert!((b.radius - 0.61237).abs() < 1e-5);
    }

    #[test]
    fn two_points_give_half_distance() {
        for d in 1..6 {
            let cfg = regular_unit_simplex(d, 2).unwrap();
            let b = min_enclosing_ball(cfg.points()).unwrap();
            assert!((b.radius - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn interior_points_do_not_matter() {
        let mut pts = regular_unit_simplex(2, 3).unwrap().into_points();
        pts.push(Point::from_row_slice(&[0.01, 0.02]));
        pts.push(Point::from_row_slice(&[-0.1, 0.05]));
        let b = min_enclosing_ball(&pts).unwrap();
        assert!((b.radius - 1.0 / 3f64.sqrt()).abs() < 1e-12);
    }
}
