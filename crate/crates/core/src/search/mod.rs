//! Simulated annealing for configurations with many diameter cliques, and a
//! hunt for two disjoint unit simplices of small joint diameter.
//!
//! Annealing works on a surrogate: pairs within a capture window of the
//! diameter count as edges. Whenever the surrogate beats the best verified
//! count, the captured pairs are snapped to exact unit distance and the
//! result is recounted by the diameter graph; only verified counts are
//! reported.

mod hunt;
mod polish;
mod polygon;

pub use hunt::{counterexample_hunt, HuntOptions, HuntResult};
pub use polygon::reuleaux_polygon;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geom::{Point, PointConfig, Space};
use crate::graph::{Adjacency, DiameterGraph};
use crate::linalg::{self, derive_seed};
use crate::reuleaux::{BodyKind, ReuleauxBody};
use crate::sphere::unit_chord_angle;
use crate::tolerance::Tolerance;

const SIGMA_START: f64 = 0.1;
const SIGMA_END: f64 = 1e-4;
const TEMP_START: f64 = 0.2;
const TEMP_END: f64 = 1e-3;
/// Minimal number of steps between two snapping attempts that failed to
/// improve the verified count.
const SNAP_COOLDOWN: usize = 50;
/// Width of the soft edge indicator.
const SOFT_WIDTH: f64 = 0.02;
/// Probability of a jump move, which puts a point at unit distance from a
/// random clique of the captured graph instead of perturbing it.
const JUMP_RATE: f64 = 0.1;
const JUMP_CANDIDATES: usize = 8;
/// Length of one cooling cycle; each cycle starts from a fresh configuration.
const CYCLE: usize = 2000;
/// Snapped configurations with two points closer than this are discarded:
/// coincident points duplicate cliques.
const MIN_GAP: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchProblem {
    pub space: Space,
    pub n: usize,
    pub l: usize,
    /// Annealing steps per restart.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Stop a restart once its verified count reaches this value.
    pub target: Option<usize>,
    #[serde(skip)]
    pub tol: Tolerance,
}

impl SearchProblem {
    pub fn euclidean(d: usize, n: usize, l: usize, budget: usize, seed: u64) -> Self {
        Self {
            space: Space::Euclidean { dim: d },
            n,
            l,
            budget,
            restarts: 4,
            seed,
            target: None,
            tol: Tolerance::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 || self.restarts == 0 {
            return Err(Error::Argument("budget and restarts must be positive".into()));
        }
        if self.n < 2 || self.l == 0 || self.l > self.n {
            return Err(Error::Argument(format!(
                "need n >= 2 and 1 <= l <= n, got n = {}, l = {}",
                self.n, self.l
            )));
        }
        if self.space.dim() < 1 {
            return Err(Error::Dimension("dimension must be positive".into()));
        }
        if let Space::Sphere { radius, .. } = self.space {
            if !(radius > 0.5) {
                return Err(Error::Domain(format!("no unit chords on a sphere of radius {radius}")));
            }
        }
        Ok(())
    }

    fn sphere_radius(&self) -> Option<f64> {
        self.space.sphere_radius()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    pub step: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartTrace {
    pub restart: usize,
    pub seed: u64,
    pub seeded_with_simplex: bool,
    pub steps: usize,
    pub best_count: usize,
    /// Verified best-so-far counts.
    pub improvements: Vec<TracePoint>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub space: Space,
    pub n: usize,
    pub l: usize,
    #[serde(skip)]
    pub best: PointConfig,
    /// Exact count on `best`, recomputed by the diameter graph.
    pub count: usize,
    pub edges: usize,
    pub min_edge_slack: Option<f64>,
    pub best_restart: usize,
    pub restarts: Vec<RestartTrace>,
    /// A count above `n` for `l = d`: certainly a numerical artifact.
    pub tolerance_artifact: bool,
    pub warnings: Vec<String>,
}

struct Surrogate {
    count: usize,
    energy: f64,
    pairs: Vec<(usize, usize)>,
}

fn capture_window(sigma: f64) -> f64 {
    (5.0 * sigma).clamp(1e-4, 1e-2)
}

fn surrogate(points: &[Point], l: usize, eps: f64) -> Surrogate {
    let n = points.len();
    let mut adj = Adjacency::empty(n);
    let mut pairs = Vec::new();
    let mut soft = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let dist = linalg::distance(&points[i], &points[j]);
            if dist >= 1.0 - eps {
                adj.add_edge(i, j);
                pairs.push((i, j));
            }
            soft += (-(1.0 - dist).max(0.0) / SOFT_WIDTH).exp();
        }
    }
    let count = adj.count_cliques(l);
    let total = (n * (n - 1) / 2) as f64 + 1.0;
    Surrogate {
        count,
        energy: -(count as f64 + 0.1 * pairs.len() as f64 / total + 0.01 * soft / total),
        pairs,
    }
}

struct Verified {
    config: PointConfig,
    count: usize,
    edges: usize,
    min_edge_slack: Option<f64>,
}

fn verify(problem: &SearchProblem, points: &[Point]) -> Result<Verified> {
    let config = match problem.space {
        Space::Euclidean { .. } => PointConfig::euclidean(points.to_vec())?,
        space => PointConfig::new(space, points.to_vec(), None)?,
    };
    let g = DiameterGraph::build(&config, problem.tol)?;
    let count = if problem.l <= g.len() {
        g.adjacency().count_cliques(problem.l)
    } else {
        0
    };
    Ok(Verified {
        config,
        count,
        edges: g.edge_count(),
        min_edge_slack: g.edge_slack().min_edge_slack,
    })
}

/// Snaps the captured pairs and, on a sphere, rejects results whose chord
/// diameter moved away from 1 (normalization would change the radius).
fn snap(problem: &SearchProblem, points: &[Point], pairs: &[(usize, usize)]) -> Option<Vec<Point>> {
    let mut pts = points.to_vec();
    if !polish::snap_pairs(&mut pts, pairs, problem.sphere_radius()) {
        return None;
    }
    let n = pts.len();
    if (0..n).any(|i| (i + 1..n).any(|j| linalg::distance(&pts[i], &pts[j]) < MIN_GAP)) {
        return None;
    }
    match problem.sphere_radius() {
        None => polish::normalize_diameter(&mut pts).then_some(pts),
        Some(_) => {
            let diam = crate::geom::diameter_of(&pts).ok()?;
            ((diam - 1.0).abs() <= 1e-12).then_some(pts)
        }
    }
}

fn initial_points(problem: &SearchProblem, seeded: bool, rng: &mut ChaCha8Rng) -> Result<Vec<Point>> {
    let d = problem.space.dim();
    let n = problem.n;
    match problem.space {
        Space::Euclidean { .. } => {
            let mut pts = Vec::with_capacity(n);
            let center = if seeded {
                let body = ReuleauxBody::regular_simplex(d)?;
                pts.extend(body.vertices().iter().take(n).cloned());
                body.centroid()
            } else {
                Point::zeros(d)
            };
            let spread = if seeded { 0.2 } else { 0.5 };
            while pts.len() < n {
                pts.push(&center + linalg::random_in_ball(d, spread, rng));
            }
            polish::normalize_diameter(&mut pts);
            Ok(pts)
        }
        Space::Sphere { radius, .. } => {
            let phi = unit_chord_angle(radius);
            let mut pts = Vec::with_capacity(n);
            let (axis, spread) = if seeded && radius >= crate::geom::unit_simplex_circumradius(d + 1) {
                let body = ReuleauxBody::spherical(BodyKind::Simplex, d, radius)?;
                pts.extend(body.vertices().iter().take(n).cloned());
                (body.centroid().normalize(), 0.1 * phi)
            } else {
                (linalg::random_unit(d + 1, rng), 0.5 * phi)
            };
            while pts.len() < n {
                pts.push(linalg::random_in_cap(&axis, spread, rng) * radius);
            }
            Ok(pts)
        }
    }
}

/// New position for point `i` at unit distance from a random clique of the
/// captured graph, of size at most `min(l - 1, d)`.
fn jump(
    points: &[Point],
    i: usize,
    pairs: &[(usize, usize)],
    problem: &SearchProblem,
    rng: &mut ChaCha8Rng,
) -> Option<Point> {
    let n = points.len();
    let adjacent = |a: usize, b: usize| pairs.contains(&(a.min(b), a.max(b)));
    let mut others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    others.shuffle(rng);
    let cap = problem.l.saturating_sub(1).clamp(1, problem.space.dim());
    let mut clique: Vec<usize> = Vec::new();
    for j in others {
        if clique.len() == cap {
            break;
        }
        if clique.iter().all(|&c| adjacent(c, j)) {
            clique.push(j);
        }
    }
    let emb = problem.space.embedding_dim();
    let targets: Vec<&Point> = clique.iter().map(|&c| &points[c]).collect();
    // keep the candidate that overshoots the diameter the least
    let mut best: Option<(f64, Point)> = None;
    for _ in 0..JUMP_CANDIDATES {
        let start = &points[clique[0]] + linalg::random_unit(emb, rng);
        let Some(x) = polish::place_at_unit(&start, &targets, problem.sphere_radius()) else {
            continue;
        };
        let reach = (0..n)
            .filter(|&k| k != i)
            .map(|k| linalg::distance(&x, &points[k]))
            .fold(0.0, f64::max);
        if best.as_ref().map_or(true, |(r, _)| reach < *r) {
            best = Some((reach, x));
        }
    }
    best.map(|(_, x)| x)
}

struct RestartOutcome {
    best: Option<Verified>,
    trace: RestartTrace,
}

fn anneal(problem: &SearchProblem, restart: usize) -> Result<RestartOutcome> {
    let seed = derive_seed(problem.seed, restart as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeded = restart % 2 == 0;
    let n = problem.n;
    let emb = problem.space.embedding_dim();
    let radius = problem.sphere_radius();
    let mut current = initial_points(problem, seeded, &mut rng)?;
    let mut state = surrogate(&current, problem.l, capture_window(SIGMA_START));
    let mut best: Option<Verified> = None;
    let mut improvements = Vec::new();
    let mut last_snap: Option<usize> = None;
    let mut steps = 0;
    let budget = problem.budget;
    let try_snap = |pts: &[Point], pairs: &[(usize, usize)], best: &Option<Verified>| -> Result<Option<(Vec<Point>, Verified)>> {
        let Some(snapped) = snap(problem, pts, pairs) else {
            return Ok(None);
        };
        let v = verify(problem, &snapped)?;
        let better = match best {
            None => true,
            Some(b) => {
                v.count > b.count
                    || (v.count == b.count && v.min_edge_slack.unwrap_or(0.0) > b.min_edge_slack.unwrap_or(0.0))
            }
        };
        Ok(better.then_some((snapped, v)))
    };
    // the starting configuration counts too
    if let Some((pts, v)) = try_snap(&current, &state.pairs, &best)? {
        improvements.push(TracePoint { step: 0, count: v.count });
        current = pts;
        state = surrogate(&current, problem.l, capture_window(SIGMA_START));
        best = Some(v);
    }
    for step in 0..budget {
        if let (Some(t), Some(b)) = (problem.target, &best) {
            if b.count >= t {
                break;
            }
        }
        steps = step + 1;
        let cycle = CYCLE.min(budget);
        if step > 0 && step % cycle == 0 {
            let seeded = (restart + step / cycle) % 2 == 0;
            current = initial_points(problem, seeded, &mut rng)?;
            state = surrogate(&current, problem.l, capture_window(SIGMA_START));
            last_snap = None;
        }
        let frac = (step % cycle) as f64 / cycle.max(2) as f64;
        let sigma = SIGMA_START * (SIGMA_END / SIGMA_START).powf(frac);
        let temp = TEMP_START * (TEMP_END / TEMP_START).powf(frac);
        let eps = capture_window(sigma);
        let i = rng.gen_range(0..n);
        let mut cand = current.clone();
        if rng.gen_bool(JUMP_RATE) {
            match jump(&current, i, &state.pairs, problem, &mut rng) {
                Some(p) => cand[i] = p,
                None => continue,
            }
        } else {
            cand[i] += linalg::random_gaussian(emb, &mut rng) * sigma;
        }
        match radius {
            None => {
                if !polish::normalize_diameter(&mut cand) {
                    continue;
                }
            }
            Some(r) => {
                let norm = cand[i].norm();
                cand[i] *= r / norm;
                if (0..n).any(|j| j != i && linalg::distance(&cand[i], &cand[j]) > 1.0) {
                    continue;
                }
            }
        }
        let next = surrogate(&cand, problem.l, eps);
        let accept = next.energy <= state.energy || rng.gen::<f64>() < ((state.energy - next.energy) / temp).exp();
        if !accept {
            continue;
        }
        current = cand;
        state = next;
        let best_count = best.as_ref().map_or(0, |b| b.count);
        let cooled = last_snap.map_or(true, |s| step >= s + SNAP_COOLDOWN);
        if state.count > best_count && cooled {
            last_snap = Some(step);
            if let Some((pts, v)) = try_snap(&current, &state.pairs, &best)? {
                if v.count > best_count {
                    improvements.push(TracePoint { step: step + 1, count: v.count });
                }
                current = pts;
                state = surrogate(&current, problem.l, eps);
                best = Some(v);
                last_snap = None;
            }
        }
    }
    if let Some((_, v)) = try_snap(&current, &state.pairs, &best)? {
        let best_count = best.as_ref().map_or(0, |b| b.count);
        if v.count > best_count {
            improvements.push(TracePoint { step: steps, count: v.count });
        }
        best = Some(v);
    }
    let best_count = best.as_ref().map_or(0, |b| b.count);
    Ok(RestartOutcome {
        best,
        trace: RestartTrace {
            restart,
            seed,
            seeded_with_simplex: seeded,
            steps,
            best_count,
            improvements,
        },
    })
}

/// Runs the restarts in parallel and keeps the verified configuration with
/// the most cliques, ties broken by larger minimal edge slack, then by
/// restart index.
pub fn search(problem: &SearchProblem) -> Result<SearchResult> {
    problem.validate()?;
    let outcomes: Vec<Result<RestartOutcome>> =
        (0..problem.restarts).into_par_iter().map(|r| anneal(problem, r)).collect();
    let mut traces = Vec::new();
    let mut best: Option<(usize, Verified)> = None;
    for o in outcomes {
        let o = o?;
        if let Some(v) = o.best {
            let better = match &best {
                None => true,
                Some((_, b)) => {
                    v.count > b.count
                        || (v.count == b.count && v.min_edge_slack.unwrap_or(0.0) > b.min_edge_slack.unwrap_or(0.0))
                }
            };
            if better {
                best = Some((o.trace.restart, v));
            }
        }
        traces.push(o.trace);
    }
    let (best_restart, v) = match best {
        Some(b) => b,
        None => {
            // no snap ever succeeded: report the plain starting simplex
            let pts = initial_points(problem, true, &mut ChaCha8Rng::seed_from_u64(problem.seed))?;
            (0, verify(problem, &pts)?)
        }
    };
    let mut warnings = Vec::new();
    let artifact = problem.l == problem.space.dim() && v.count > problem.n;
    if artifact {
        warnings.push(format!(
            "TOLERANCE ARTIFACT: {} {}-cliques on {} points exceeds the proven bound; minimal edge slack {:?}",
            v.count, problem.l, problem.n, v.min_edge_slack
        ));
    }
    Ok(SearchResult {
        space: problem.space,
        n: problem.n,
        l: problem.l,
        count: v.count,
        edges: v.edges,
        min_edge_slack: v.min_edge_slack,
        best: v.config,
        best_restart,
        restarts: traces,
        tolerance_artifact: artifact,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::count_cliques;

    fn problem(d: usize, n: usize, l: usize, budget: usize) -> SearchProblem {
        let mut p = SearchProblem::euclidean(d, n, l, budget, 1729);
        p.target = Some(n);
        p
    }

    #[test]
    fn planar_diameters() {
        for n in [5, 7] {
            let r = search(&problem(2, n, 2, 20_000)).unwrap();
            assert!(r.count >= n, "{n}: {}", r.count);
            assert!(!r.tolerance_artifact);
        }
    }

    #[test]
    fn reported_count_is_recounted() {
        let r = search(&problem(3, 5, 3, 5_000)).unwrap();
        let g = DiameterGraph::build(&r.best, Tolerance::default()).unwrap();
        assert_eq!(count_cliques(&g, 3).unwrap().count, r.count);
    }

    #[test]
    fn deterministic_for_seed() {
        let p = problem(3, 5, 3, 3_000);
        let a = search(&p).unwrap();
        let b = search(&p).unwrap();
        assert_eq!(a.best, b.best);
        assert_eq!(a.restarts, b.restarts);
    }

    #[test]
    fn spherical_search_stays_on_the_sphere() {
        let p = SearchProblem {
            space: Space::Sphere { dim: 2, radius: 1.0 },
            n: 5,
            l: 2,
            budget: 5_000,
            restarts: 2,
            seed: 3,
            target: Some(5),
            tol: Tolerance::default(),
        };
        let r = search(&p).unwrap();
        assert!(r.count >= 3);
        for q in r.best.points() {
            assert!((q.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_problems() {
        let mut p = problem(2, 5, 6, 10);
        assert!(search(&p).is_err());
        p.l = 2;
        p.budget = 0;
        assert!(search(&p).is_err());
    }
}
