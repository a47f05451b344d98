//! Two vertex-disjoint unit simplices, one on `d + 1` vertices and one on
//! `m` vertices, with all cross distances at most 1.
//!
//! The red simplex is fixed; the blue one moves rigidly, by Givens rotations
//! about its centroid and by translations. The annealed objective is
//! `1 - max cross distance`; the reported slack is `1 - diam(red ∪ blue)`,
//! which can only reach 0.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{diameter_of, regular_unit_simplex, Point, PointConfig};
use crate::linalg::{self, derive_seed};
use crate::reuleaux::{red_blue_construction, DEFAULT_CONTRACTION};
use crate::tolerance::Tolerance;

const SIGMA_START: f64 = 0.1;
const SIGMA_END: f64 = 1e-4;
const TEMP_START: f64 = 0.05;
const TEMP_END: f64 = 1e-5;
const INIT_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntOptions {
    pub d: usize,
    /// Vertices of the blue simplex; `None` means `floor((d+1)/2) + 1`.
    pub blue_size: Option<usize>,
    /// Steps per restart.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Smallest allowed distance between a blue and a red vertex, which keeps
    /// the simplices vertex-disjoint.
    pub min_separation: f64,
    /// Start restart 0 from the red-blue construction rescaled to unit side.
    /// Only possible when the blue simplex has `floor((d+1)/2)` vertices.
    pub seed_from_construction: bool,
}

impl HuntOptions {
    pub fn new(d: usize, budget: usize, seed: u64) -> Self {
        Self {
            d,
            blue_size: None,
            budget,
            restarts: 4,
            seed,
            min_separation: 0.1,
            seed_from_construction: false,
        }
    }

    pub fn blue_count(&self) -> usize {
        self.blue_size.unwrap_or((self.d + 1) / 2 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntImprovement {
    pub step: usize,
    pub cross_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HuntTrace {
    pub restart: usize,
    pub seed: u64,
    pub from_construction: bool,
    pub steps: usize,
    pub best_cross_margin: f64,
    pub improvements: Vec<HuntImprovement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HuntResult {
    pub d: usize,
    pub blue_size: usize,
    /// `1 - diam(red ∪ blue)` of the best pair; never positive.
    pub best_slack: f64,
    /// `1 - max` distance between a red and a blue vertex.
    pub cross_margin: f64,
    /// Smallest red-blue vertex distance of the best pair.
    pub separation: f64,
    #[serde(skip)]
    pub red: PointConfig,
    #[serde(skip)]
    pub blue: PointConfig,
    pub best_restart: usize,
    pub restarts: Vec<HuntTrace>,
    /// The best pair has union diameter 1 up to `eq_tol`.
    pub witness_found: bool,
    pub warnings: Vec<String>,
}

struct Pose {
    rotation: DMatrix<f64>,
    translation: Point,
}

impl Pose {
    fn place(&self, base: &[Point]) -> Vec<Point> {
        base.iter().map(|b| &self.rotation * b + &self.translation).collect()
    }
}

struct Evaluation {
    cross_margin: f64,
    separation: f64,
}

fn evaluate(red: &[Point], blue: &[Point]) -> Evaluation {
    let mut max = 0.0f64;
    let mut min = f64::INFINITY;
    for r in red {
        for b in blue {
            let dist = linalg::distance(r, b);
            max = max.max(dist);
            min = min.min(dist);
        }
    }
    Evaluation { cross_margin: 1.0 - max, separation: min }
}

/// Orthogonal map sending the centered base simplex onto the centered
/// target simplex of the same shape.
fn align(base: &[Point], target: &[Point]) -> DMatrix<f64> {
    let d = base[0].len();
    let c = linalg::centroid(target);
    let mut h = DMatrix::<f64>::zeros(d, d);
    for (b, y) in base.iter().zip(target) {
        h += (y - &c) * b.transpose();
    }
    let svd = h.svd(true, true);
    match (svd.u, svd.v_t) {
        (Some(u), Some(v_t)) => u * v_t,
        _ => DMatrix::identity(d, d),
    }
}

/// Blue points of the red-blue construction scaled about their centroid to
/// unit side.
fn construction_pose(d: usize, base: &[Point]) -> Result<Pose> {
    let rb = red_blue_construction(d, DEFAULT_CONTRACTION, Tolerance::default())?;
    let pts = rb.blue.points();
    let side = linalg::distance(&pts[0], &pts[1]);
    let c = linalg::centroid(pts);
    let target: Vec<Point> = pts.iter().map(|y| &c + (y - &c) / side).collect();
    let rotation = align(base, &target);
    let pose = Pose { rotation, translation: c };
    let placed = pose.place(base);
    let residual = placed
        .iter()
        .zip(&target)
        .map(|(p, y)| linalg::distance(p, y))
        .fold(0.0, f64::max);
    if residual > 1e-9 {
        return Err(Error::Construction(format!(
            "rescaled construction is not a regular simplex (residual {residual:.3e})"
        )));
    }
    Ok(pose)
}

fn random_pose(
    d: usize,
    red: &[Point],
    base: &[Point],
    min_sep: f64,
    rng: &mut ChaCha8Rng,
) -> Result<Pose> {
    let o = linalg::centroid(red);
    for _ in 0..INIT_ATTEMPTS {
        let pose = Pose {
            rotation: linalg::random_rotation(d, rng),
            translation: &o + linalg::random_in_ball(d, 0.2, rng),
        };
        if evaluate(red, &pose.place(base)).separation >= min_sep {
            return Ok(pose);
        }
    }
    Err(Error::Sampling { attempts: INIT_ATTEMPTS })
}

fn givens(d: usize, i: usize, j: usize, theta: f64) -> DMatrix<f64> {
    let mut g = DMatrix::identity(d, d);
    let (s, c) = theta.sin_cos();
    g[(i, i)] = c;
    g[(j, j)] = c;
    g[(i, j)] = -s;
    g[(j, i)] = s;
    g
}

struct RestartOutcome {
    blue: Vec<Point>,
    eval: Evaluation,
    trace: HuntTrace,
}

fn anneal(opts: &HuntOptions, red: &[Point], base: &[Point], restart: usize) -> Result<RestartOutcome> {
    let d = opts.d;
    let seed = derive_seed(opts.seed, restart as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let from_construction = opts.seed_from_construction && restart == 0;
    let mut pose = if from_construction {
        construction_pose(d, base)?
    } else {
        random_pose(d, red, base, opts.min_separation, &mut rng)?
    };
    let mut current = pose.place(base);
    let mut eval = evaluate(red, &current);
    let mut best = (current.clone(), Evaluation { ..eval });
    let mut improvements = vec![HuntImprovement { step: 0, cross_margin: eval.cross_margin }];
    let budget = opts.budget;
    for step in 0..budget {
        let frac = step as f64 / budget.max(2) as f64;
        let sigma = SIGMA_START * (SIGMA_END / SIGMA_START).powf(frac);
        let temp = TEMP_START * (TEMP_END / TEMP_START).powf(frac);
        let cand = if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            let theta = sigma * rng.sample::<f64, _>(rand_distr::StandardNormal);
            Pose {
                rotation: givens(d, i, j, theta) * &pose.rotation,
                translation: pose.translation.clone(),
            }
        } else {
            Pose {
                rotation: pose.rotation.clone(),
                translation: &pose.translation + linalg::random_gaussian(d, &mut rng) * sigma,
            }
        };
        let placed = cand.place(base);
        let next = evaluate(red, &placed);
        if next.separation < opts.min_separation {
            continue;
        }
        let gain = next.cross_margin - eval.cross_margin;
        if gain >= 0.0 || rng.gen::<f64>() < (gain / temp).exp() {
            pose = cand;
            current = placed;
            eval = next;
            if eval.cross_margin > best.1.cross_margin {
                best = (current.clone(), Evaluation { ..eval });
                improvements.push(HuntImprovement { step: step + 1, cross_margin: eval.cross_margin });
            }
        }
    }
    let best_margin = best.1.cross_margin;
    Ok(RestartOutcome {
        blue: best.0,
        eval: best.1,
        trace: HuntTrace {
            restart,
            seed,
            from_construction,
            steps: budget,
            best_cross_margin: best_margin,
            improvements,
        },
    })
}

/// Searches for a pair of vertex-disjoint unit simplices whose union has
/// diameter 1. For the default blue size none is expected to exist.
pub fn counterexample_hunt(opts: &HuntOptions) -> Result<HuntResult> {
    let d = opts.d;
    if d < 3 {
        return Err(Error::Dimension(format!("the hunt needs d >= 3, got {d}")));
    }
    let m = opts.blue_count();
    if m < 2 || m > d + 1 {
        return Err(Error::Argument(format!("blue simplex size must lie in 2..={}, got {m}", d + 1)));
    }
    if opts.budget == 0 || opts.restarts == 0 {
        return Err(Error::Argument("budget and restarts must be positive".into()));
    }
    if !(opts.min_separation > 0.0) {
        return Err(Error::Argument("minimal separation must be positive".into()));
    }
    if opts.seed_from_construction && m != (d + 1) / 2 {
        return Err(Error::Argument(format!(
            "the construction seeds a blue simplex on {} vertices, not {m}",
            (d + 1) / 2
        )));
    }
    let red = regular_unit_simplex(d, d + 1)?.into_points();
    let base = regular_unit_simplex(d, m)?.into_points();
    let outcomes: Vec<Result<RestartOutcome>> =
        (0..opts.restarts).into_par_iter().map(|r| anneal(opts, &red, &base, r)).collect();
    let mut traces = Vec::new();
    let mut best: Option<(usize, Vec<Point>, Evaluation)> = None;
    for o in outcomes {
        let o = o?;
        let better = best.as_ref().map_or(true, |(_, _, e)| o.eval.cross_margin > e.cross_margin);
        if better {
            best = Some((o.trace.restart, o.blue, o.eval));
        }
        traces.push(o.trace);
    }
    let (best_restart, blue, eval) = best.ok_or_else(|| Error::Argument("no restarts ran".into()))?;
    let union: Vec<Point> = red.iter().chain(&blue).cloned().collect();
    let slack = 1.0 - diameter_of(&union)?;
    let tol = Tolerance::default();
    let witness_found = slack >= -tol.eq_tol;
    let mut warnings = Vec::new();
    if witness_found && opts.blue_size.is_none() {
        warnings.push(format!(
            "COUNTEREXAMPLE CANDIDATE: disjoint unit simplices on {} and {m} vertices with union diameter 1 (slack {slack:.3e}, cross margin {:.3e})",
            d + 1,
            eval.cross_margin
        ));
    }
    Ok(HuntResult {
        d,
        blue_size: m,
        best_slack: slack,
        cross_margin: eval.cross_margin,
        separation: eval.separation,
        red: PointConfig::euclidean(red)?,
        blue: PointConfig::euclidean(blue)?,
        best_restart,
        restarts: traces,
        witness_found,
        warnings,
    })
}
