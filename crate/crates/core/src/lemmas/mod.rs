//! Randomized verification of the inequalities behind the clique bound.
//!
//! Every check draws seeded instances, evaluates a margin that the statement
//! claims to be nonnegative (or positive in the strict regime) and tallies
//! violations, near-equalities and the worst margins seen.

mod lemimp;
mod lemrad;
mod lemred;
mod lemrelo;
mod observations;
mod rotation;

pub use lemimp::{lemimp_margin, verify_lemimp, LemimpEvaluation, LemimpInstance};
pub use lemrad::{lemrad_closed_form, lemrad_geometric_check, verify_lemrad, LemradValues};
pub use lemred::{lemred_euclidean, lemred_spherical, verify_lemred, CapRegion, LemredEvaluation};
pub use lemrelo::{lemrelo_margin, verify_lemrelo};
pub use observations::verify_observations;
pub use rotation::{
    random_rotation_instance, rotation_procedure, verify_rotation, InvariantLog, RotationEvent,
    RotationInstance, RotationOutcome,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::linalg::derive_seed;
use crate::tolerance::Tolerance;

/// Trials per independently seeded chunk; fixed so results do not depend on
/// the number of threads.
const CHUNK: usize = 256;
/// Distance below which a point counts as sitting at a vertex or on a
/// boundary when classifying equalities and delimiting the strict regime.
pub const STRICT_GAP: f64 = 1e-6;

/// How a near-equality was explained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityCase {
    /// One of the points coincides with a vertex.
    Vertex,
    /// A point sits on a boundary where equality is allowed.
    Boundary,
    /// The configuration is centered (equidistance by symmetry).
    Center,
    Unclassified,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NearEqualities {
    pub vertex: usize,
    pub boundary: usize,
    pub center: usize,
    pub unclassified: usize,
}

impl NearEqualities {
    fn add(&mut self, case: EqualityCase) {
        match case {
            EqualityCase::Vertex => self.vertex += 1,
            EqualityCase::Boundary => self.boundary += 1,
            EqualityCase::Center => self.center += 1,
            EqualityCase::Unclassified => self.unclassified += 1,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.vertex += o.vertex;
        self.boundary += o.boundary;
        self.center += o.center;
        self.unclassified += o.unclassified;
    }

    pub fn total(&self) -> usize {
        self.vertex + self.boundary + self.center + self.unclassified
    }
}

/// Offending instance recorded with the first violation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub margin: f64,
    pub description: String,
    pub points: Vec<Vec<f64>>,
}

impl Witness {
    pub fn new(margin: f64, description: impl Into<String>, points: &[&Point]) -> Self {
        Self {
            margin,
            description: description.into(),
            points: points.iter().map(|p| p.iter().copied().collect()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub trials: usize,
    /// Margins below `-eq_tol`, plus nonpositive margins in the strict regime.
    pub violations: usize,
    pub strict_failures: usize,
    pub worst_margin: Option<f64>,
    pub strict_trials: usize,
    pub worst_strict_margin: Option<f64>,
    pub near_equalities: NearEqualities,
    pub witness: Option<Witness>,
    pub details: Map<String, Value>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn with_detail(mut self, key: &str, value: impl Serialize) -> Self {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

/// Accumulator for one chunk of trials.
#[derive(Clone, Debug, Default)]
pub(crate) struct Tally {
    trials: usize,
    violations: usize,
    strict_failures: usize,
    worst: Option<f64>,
    strict_trials: usize,
    worst_strict: Option<f64>,
    near: NearEqualities,
    witness: Option<Witness>,
    /// Extra counters, summed on merge.
    counters: Vec<(&'static str, usize)>,
    /// Extra maxima, maxed on merge.
    maxima: Vec<(&'static str, f64)>,
}

impl Tally {
    /// Records one evaluated margin. `strict` marks instances where the
    /// statement claims a positive margin.
    pub(crate) fn record(
        &mut self,
        margin: f64,
        strict: bool,
        tol: Tolerance,
        classify: impl FnOnce() -> EqualityCase,
        witness: impl FnOnce() -> Witness,
    ) {
        self.trials += 1;
        self.worst = Some(self.worst.map_or(margin, |w| w.min(margin)));
        let mut failed = false;
        if margin < -tol.eq_tol {
            failed = true;
        } else if margin.abs() <= tol.eq_tol {
            self.near.add(classify());
        }
        if strict {
            self.strict_trials += 1;
            self.worst_strict = Some(self.worst_strict.map_or(margin, |w| w.min(margin)));
            if margin <= 0.0 {
                self.strict_failures += 1;
                failed = true;
            }
        }
        if failed {
            self.violations += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    /// Records a failure that is not expressed by a margin.
    pub(crate) fn fail(&mut self, witness: impl FnOnce() -> Witness) {
        self.violations += 1;
        if self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn count(&mut self, key: &'static str, by: usize) {
        match self.counters.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => *v += by,
            None => self.counters.push((key, by)),
        }
    }

    pub(crate) fn maximum(&mut self, key: &'static str, value: f64) {
        match self.maxima.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => *v = v.max(value),
            None => self.maxima.push((key, value)),
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.trials += o.trials;
        self.violations += o.violations;
        self.strict_failures += o.strict_failures;
        self.worst = min_opt(self.worst, o.worst);
        self.strict_trials += o.strict_trials;
        self.worst_strict = min_opt(self.worst_strict, o.worst_strict);
        self.near.merge(&o.near);
        if self.witness.is_none() {
            self.witness = o.witness;
        }
        for (k, v) in o.counters {
            self.count(k, v);
        }
        for (k, v) in o.maxima {
            self.maximum(k, v);
        }
        self
    }

    pub(crate) fn into_report(self, lemma: &str) -> LemmaReport {
        let mut details = Map::new();
        for (k, v) in &self.counters {
            details.insert(k.to_string(), Value::from(*v));
        }
        for (k, v) in &self.maxima {
            details.insert(k.to_string(), serde_json::to_value(v).unwrap_or(Value::Null));
        }
        LemmaReport {
            lemma: lemma.to_string(),
            trials: self.trials,
            violations: self.violations,
            strict_failures: self.strict_failures,
            worst_margin: self.worst,
            strict_trials: self.strict_trials,
            worst_strict_margin: self.worst_strict,
            near_equalities: self.near,
            witness: self.witness,
            details,
        }
    }
}

fn min_opt(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// Runs `trials` calls of `trial` in fixed-size chunks with seeds derived
/// from `seed`, in parallel, merging in chunk order.
pub(crate) fn run_trials<F>(trials: usize, seed: u64, trial: F) -> Result<Tally>
where
    F: Fn(&mut ChaCha8Rng, &mut Tally) -> Result<()> + Sync,
{
    if trials == 0 {
        return Err(Error::Argument("trial count must be positive".into()));
    }
    let chunks = trials.div_ceil(CHUNK);
    let parts: Vec<Result<Tally>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, c as u64));
            let mut tally = Tally::default();
            let len = CHUNK.min(trials - c * CHUNK);
            for _ in 0..len {
                trial(&mut rng, &mut tally)?;
            }
            Ok(tally)
        })
        .collect();
    let mut total = Tally::default();
    for p in parts {
        total = total.merge(p?);
    }
    Ok(total)
}

pub(crate) fn check_dim(d: usize, min: usize, what: &str) -> Result<()> {
    if d < min {
        return Err(Error::Dimension(format!("{what} needs d >= {min}, got {d}")));
    }
    Ok(())
}
