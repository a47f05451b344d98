//! Points of the half of a Reuleaux simplex cut off by a facet hyperplane,
//! one of them projecting into the facet, are at distance at most 1.

use rand::Rng;
use serde::Serialize;

use super::{check_dim, run_trials, EqualityCase, LemmaReport, Witness, STRICT_GAP};
use crate::error::{Error, Result};
use crate::geom::{project_to_hyperplane, Hyperplane, Point};
use crate::linalg::{self, BarycentricFrame};
use crate::reuleaux::{Chart, ReuleauxBody};
use crate::tolerance::Tolerance;

/// Regular Reuleaux simplex on `v_0..v_d`, the hyperplane `pi` through
/// `v_0..v_{d-1}` oriented towards `v_d`, and the facet `T` in a chart of `pi`.
#[derive(Clone, Debug)]
pub struct LemimpInstance {
    pub body: ReuleauxBody,
    pub plane: Hyperplane,
    chart: Chart,
    facet: BarycentricFrame,
    section: ReuleauxBody,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LemimpEvaluation {
    /// `1 - |v - w|`.
    pub margin: f64,
    pub strict: bool,
    pub case: EqualityCase,
}

impl LemimpInstance {
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d, 2, "the facet-projection inequality")?;
        let body = ReuleauxBody::regular_simplex(d)?;
        let facet: Vec<usize> = (0..d).collect();
        let cs = body.cross_section(&facet)?;
        let plane = cs.plane.oriented_towards(&body.vertices()[d]);
        let frame = BarycentricFrame::new(cs.body.vertices())?;
        Ok(Self {
            body,
            plane,
            chart: cs.chart,
            facet: frame,
            section: cs.body,
        })
    }

    pub fn dim(&self) -> usize {
        self.body.dim()
    }

    /// Smallest barycentric coordinate of the projection onto `pi` in `T`.
    pub fn facet_depth(&self, v: &Point) -> f64 {
        let p = project_to_hyperplane(v, &self.plane).expect("dimension checked by caller");
        self.facet.min_coordinate(&self.chart.to_local(&p))
    }

    pub fn in_upper_half(&self, p: &Point) -> bool {
        self.body.contains(p) && self.plane.signed_distance(p) >= -self.body.tolerance().geom_tol
    }

    fn vertex_gap(&self, p: &Point) -> f64 {
        self.body
            .vertices()
            .iter()
            .map(|v| linalg::distance(p, v))
            .fold(f64::INFINITY, f64::min)
    }

    fn facet_vertex_gap(&self, p: &Point) -> f64 {
        self.body.vertices()[..self.dim()]
            .iter()
            .map(|v| linalg::distance(p, v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Farthest distance from `p` to a vertex of `T`; `>= 1` on the boundary
    /// of the section.
    fn facet_reach(&self, p: &Point) -> f64 {
        self.body.vertices()[..self.dim()]
            .iter()
            .map(|v| linalg::distance(p, v))
            .fold(0.0, f64::max)
    }
}

/// Evaluates the inequality for `v, w` in the upper half, `v` projecting into
/// `T`. Near-equalities are classified: `Vertex` when `v` or `w` sits at a
/// vertex of `T`, `Boundary` when `v` projects onto the boundary of `T` and
/// `w` lies on the boundary of the section.
pub fn lemimp_margin(inst: &LemimpInstance, v: &Point, w: &Point) -> Result<LemimpEvaluation> {
    let d = inst.dim();
    if v.len() != d || w.len() != d {
        return Err(Error::Dimension(format!("points must lie in R^{d}")));
    }
    let eq = inst.body.tolerance().eq_tol;
    if !inst.in_upper_half(v) || !inst.in_upper_half(w) {
        return Err(Error::Argument("points must lie in the upper half of the body".into()));
    }
    let depth = inst.facet_depth(v);
    if depth < -eq {
        return Err(Error::Argument(format!(
            "projection of v is outside the facet (barycentric {depth})"
        )));
    }
    let margin = 1.0 - linalg::distance(v, w);
    let strict = depth > STRICT_GAP && inst.vertex_gap(v) > STRICT_GAP && inst.vertex_gap(w) > STRICT_GAP;
    let case = if inst.facet_vertex_gap(v) <= STRICT_GAP || inst.facet_vertex_gap(w) <= STRICT_GAP {
        EqualityCase::Vertex
    } else if depth <= STRICT_GAP
        && inst.plane.signed_distance(w).abs() <= STRICT_GAP
        && inst.facet_reach(w) >= 1.0 - STRICT_GAP
    {
        EqualityCase::Boundary
    } else {
        EqualityCase::Unclassified
    };
    Ok(LemimpEvaluation { margin, strict, case })
}

/// Volume point, boundary point, point of the section boundary or vertex of
/// the body, restricted to the upper half.
fn draw<R: Rng + ?Sized>(inst: &LemimpInstance, faces: &[Vec<usize>], vertex_weight: f64, rng: &mut R) -> Result<Point> {
    loop {
        let u: f64 = rng.gen();
        let p = if u < vertex_weight {
            inst.body.vertices()[rng.gen_range(0..=inst.dim())].clone()
        } else if u < vertex_weight + 0.05 {
            let sf = inst.section.face_subsets();
            let s = &sf[rng.gen_range(0..sf.len())];
            inst.chart.to_ambient(&inst.section.sample_face_point_with(s, rng)?)
        } else if u < 0.55 {
            inst.body.sample_point_with(rng)?
        } else {
            let s = &faces[rng.gen_range(0..faces.len())];
            inst.body.sample_face_point_with(s, rng)?
        };
        if inst.in_upper_half(&p) {
            return Ok(p);
        }
    }
}

/// Samples pairs `v, w` of the upper half with `v` projecting into `T`
/// (rejection against the barycentric test) and tallies `1 - |v - w|`.
pub fn verify_lemimp(d: usize, trials: usize, seed: u64) -> Result<LemmaReport> {
    check_dim(d, 3, "verify_lemimp")?;
    let inst = LemimpInstance::new(d)?;
    let faces = inst.body.face_subsets();
    let tol = Tolerance::default();
    let tally = run_trials(trials, seed, |rng, t| {
        let v = loop {
            let v = draw(&inst, &faces, 0.0, rng)?;
            if inst.facet_depth(&v) >= 0.0 {
                break v;
            }
        };
        let w = draw(&inst, &faces, 0.05, rng)?;
        let e = lemimp_margin(&inst, &v, &w)?;
        t.record(e.margin, e.strict, tol, || e.case, || {
            Witness::new(e.margin, format!("|v - w| exceeds 1 in dimension {d}"), &[&v, &w])
        });
        Ok(())
    })?;
    Ok(tally.into_report("lemimp").with_detail("d", d))
}
