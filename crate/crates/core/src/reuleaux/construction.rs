//! Two vertex-disjoint simplices of diameter at most one: the red regular
//! unit d-simplex and a blue simplex on contracted arc midpoints.

use serde::Serialize;

use super::ReuleauxBody;
use crate::error::{Error, Result};
use crate::geom::{Point, PointConfig};
use crate::linalg;
use crate::tolerance::Tolerance;

pub const DEFAULT_CONTRACTION: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RedBlueMargins {
    pub d: usize,
    pub delta: f64,
    pub blue_count: usize,
    pub min_blue_blue: f64,
    pub max_red_blue: f64,
    /// `min_blue_blue - 1`; the blue points must be pairwise farther than 1.
    pub blue_blue_margin: f64,
    /// `1 - max_red_blue`.
    pub red_blue_margin: f64,
    /// Smallest `1 - max_i |y - v_i|` over blue points `y`: depth inside the
    /// Reuleaux simplex on the red vertices.
    pub interior_margin: f64,
    /// Required margin for a check to pass.
    pub threshold: f64,
}

impl RedBlueMargins {
    pub fn blue_blue_ok(&self) -> bool {
        self.blue_blue_margin > self.threshold
    }

    pub fn red_blue_ok(&self) -> bool {
        self.red_blue_margin > self.threshold
    }

    pub fn interior_ok(&self) -> bool {
        self.interior_margin > self.threshold
    }

    pub fn passed(&self) -> bool {
        self.blue_blue_ok() && self.red_blue_ok() && self.interior_ok()
    }
}

#[derive(Clone, Debug)]
pub struct RedBlue {
    pub red: PointConfig,
    pub blue: PointConfig,
    pub margins: RedBlueMargins,
}

fn build(d: usize, delta: f64, tol: Tolerance) -> Result<RedBlue> {
    if d < 3 {
        return Err(Error::Argument(format!("the construction needs d >= 3, got {d}")));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::Argument(format!("contraction must lie in [0, 1), got {delta}")));
    }
    let body = ReuleauxBody::regular_simplex(d)?.with_tolerance(tol);
    let o = body.centroid();
    let l = (d + 1) / 2;
    let blue: Vec<Point> = (0..l)
        .map(|a| {
            let m = body.arc_midpoint(2 * a, 2 * a + 1)?;
            Ok(&o + (m - &o) * (1.0 - delta))
        })
        .collect::<Result<_>>()?;
    let red = body.config().clone();
    let mut min_bb = f64::INFINITY;
    for i in 0..blue.len() {
        for j in i + 1..blue.len() {
            min_bb = min_bb.min(linalg::distance(&blue[i], &blue[j]));
        }
    }
    let max_rb = blue
        .iter()
        .map(|y| body.max_vertex_distance(y))
        .fold(0.0, f64::max);
    let margins = RedBlueMargins {
        d,
        delta,
        blue_count: l,
        min_blue_blue: min_bb,
        max_red_blue: max_rb,
        blue_blue_margin: min_bb - 1.0,
        red_blue_margin: 1.0 - max_rb,
        interior_margin: blue
            .iter()
            .map(|y| 1.0 - body.max_vertex_distance(y))
            .fold(f64::INFINITY, f64::min),
        threshold: tol.eq_tol,
    };
    let labels_red = (0..red.len()).map(|i| format!("red{i}")).collect();
    let labels_blue = (0..l).map(|i| format!("blue{i}")).collect();
    Ok(RedBlue {
        red: red.with_labels(labels_red)?,
        blue: PointConfig::euclidean(blue)?.with_labels(labels_blue)?,
        margins,
    })
}

/// Margins of the construction without asserting them.
pub fn red_blue_margins(d: usize, delta: f64, tol: Tolerance) -> Result<RedBlueMargins> {
    build(d, delta, tol).map(|rb| rb.margins)
}

/// Red simplex, blue simplex on `floor((d+1)/2)` arc midpoints of disjoint
/// arcs contracted by `1 - delta` toward the red centroid. Fails with the
/// offending margin if any check does not pass.
pub fn red_blue_construction(d: usize, delta: f64, tol: Tolerance) -> Result<RedBlue> {
    let rb = build(d, delta, tol)?;
    let m = &rb.margins;
    if !m.blue_blue_ok() {
        return Err(Error::Construction(format!(
            "blue points too close: min distance {} (margin {:.3e})",
            m.min_blue_blue, m.blue_blue_margin
        )));
    }
    if !m.red_blue_ok() {
        return Err(Error::Construction(format!(
            "red-blue distance {} not below 1 (margin {:.3e})",
            m.max_red_blue, m.red_blue_margin
        )));
    }
    if !m.interior_ok() {
        return Err(Error::Construction(format!(
            "blue point not inside the Reuleaux simplex (margin {:.3e})",
            m.interior_margin
        )));
    }
    Ok(rb)
}

/// Supremum of the contractions for which all checks pass, by bisection on
/// the blue-blue margin (the only one that degrades with `delta`).
pub fn red_blue_delta_max(d: usize, tol: Tolerance) -> Result<f64> {
    let ok = |delta: f64| -> Result<bool> { Ok(red_blue_margins(d, delta, tol)?.passed()) };
    let (mut lo, mut hi) = (DEFAULT_CONTRACTION, 0.5);
    if !ok(lo)? {
        return Err(Error::Construction(format!(
            "construction fails already at delta = {lo} in dimension {d}"
        )));
    }
    if ok(hi)? {
        return Ok(hi);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
