//! For `v'` in the simplex `T` and `w` in the Reuleaux simplex on `T`, some
//! vertex is at least as far from `v'` as `w`.

use rand::Rng;
use rand_distr::{Distribution, Exp1};

use super::{check_dim, run_trials, EqualityCase, LemmaReport, Witness, STRICT_GAP};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::linalg::{self, BarycentricFrame};
use crate::reuleaux::ReuleauxBody;
use crate::tolerance::Tolerance;

/// `max_i |v_i - v'| - |w - v'|` with its strictness flag and equality
/// class (`Boundary` when `v'` is on the boundary of `T`, `Vertex` when `w`
/// is a vertex).
pub fn lemrelo_margin(body: &ReuleauxBody, v: &Point, w: &Point) -> Result<(f64, bool, EqualityCase)> {
    let frame = BarycentricFrame::new(body.vertices())?;
    let eq = body.tolerance().eq_tol;
    let depth = frame.min_coordinate(v);
    if depth < -eq {
        return Err(Error::Argument(format!("v' is outside the simplex (barycentric {depth})")));
    }
    if !body.contains(w) {
        return Err(Error::Argument("w is outside the Reuleaux simplex".into()));
    }
    Ok(evaluate(body, depth, v, w))
}

fn evaluate(body: &ReuleauxBody, depth: f64, v: &Point, w: &Point) -> (f64, bool, EqualityCase) {
    let margin = body.max_vertex_distance(v) - linalg::distance(w, v);
    let w_gap = body
        .vertices()
        .iter()
        .map(|u| linalg::distance(u, w))
        .fold(f64::INFINITY, f64::min);
    let strict = depth > STRICT_GAP && w_gap > STRICT_GAP;
    let case = if w_gap <= STRICT_GAP {
        EqualityCase::Vertex
    } else if depth <= STRICT_GAP {
        EqualityCase::Boundary
    } else {
        EqualityCase::Unclassified
    };
    (margin, strict, case)
}

/// Uniform barycentric weights; with probability 1/10 one weight is zeroed
/// to land on the boundary of `T`.
fn draw_in_simplex<R: Rng + ?Sized>(vertices: &[Point], rng: &mut R) -> Point {
    let mut w: Vec<f64> = (0..vertices.len()).map(|_| Exp1.sample(rng)).collect();
    if rng.gen_bool(0.1) {
        let k = rng.gen_range(0..w.len());
        w[k] = 0.0;
    }
    let s: f64 = w.iter().sum();
    let mut p = Point::zeros(vertices[0].len());
    for (c, v) in w.iter().zip(vertices) {
        p.axpy(c / s, v, 1.0);
    }
    p
}

/// `v'` uniform in `T` (plus boundary draws), `w` uniform in the body or on
/// a random face; the body is the Reuleaux simplex in R^{d-1}.
pub fn verify_lemrelo(d: usize, trials: usize, seed: u64) -> Result<LemmaReport> {
    check_dim(d, 3, "verify_lemrelo")?;
    let body = ReuleauxBody::regular_simplex(d - 1)?;
    let frame = BarycentricFrame::new(body.vertices())?;
    let faces = body.face_subsets();
    let tol = Tolerance::default();
    let tally = run_trials(trials, seed, |rng, t| {
        let v = draw_in_simplex(body.vertices(), rng);
        let w = if rng.gen_bool(0.5) {
            body.sample_point_with(rng)?
        } else {
            body.sample_face_point_with(&faces[rng.gen_range(0..faces.len())], rng)?
        };
        let depth = frame.min_coordinate(&v);
        let (margin, strict, case) = evaluate(&body, depth, &v, &w);
        t.record(margin, strict, tol, || case, || {
            Witness::new(margin, format!("no vertex as far as w (body dimension {})", d - 1), &[&v, &w])
        });
        Ok(())
    })?;
    Ok(tally.into_report("lemrelo").with_detail("d", d))
}
