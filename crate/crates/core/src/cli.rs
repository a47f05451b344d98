//! The `schurlab` command line.
//!
//! Every subcommand builds a [`Report`] and prints it as JSON lines. Exit
//! codes: 0 when every check passed, 2 when a check failed (a witness file
//! is written for each failure), 1 for usage, input and I/O errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::geom::{diameter, PointConfig, Space};
use crate::graph::{count_cliques, schur_audit, AuditReport, DiameterGraph};
use crate::lemmas::{
    lemimp_margin, lemrad_closed_form, lemrad_geometric_check, lemrelo_margin, verify_lemimp,
    verify_lemrad, verify_lemred, verify_lemrelo, verify_observations, verify_rotation, LemimpInstance,
    LemmaReport,
};
use crate::linalg::derive_seed;
use crate::report::{Report, RunManifest};
use crate::reuleaux::{red_blue_construction, red_blue_delta_max, red_blue_margins, BodyKind, ReuleauxBody};
use crate::search::{counterexample_hunt, reuleaux_polygon, search, HuntOptions, SearchProblem};
use crate::tolerance::Tolerance;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const DEFAULT_SEED: u64 = 1729;
/// Caps the worker threads used by parallel campaigns.
pub const THREADS_ENV: &str = "SCHURLAB_THREADS";
const LEMRAD_RADII: [f64; 5] = [0.72, 0.75, 1.0, 2.0, 10.0];

#[derive(Debug, Parser)]
#[command(name = "schurlab", version, about = "Diameter graphs, Reuleaux bodies and clique-bound checks")]
struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Directory receiving witness files of failed checks.
    #[arg(long, global = true, default_value = "schurlab-witnesses")]
    witness_dir: PathBuf,
    /// Leave the manifest timestamp out.
    #[arg(long, global = true)]
    no_timestamp: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count the l-cliques of the diameter graph of a point set.
    Cliques(CliquesArgs),
    /// Check the clique bound and the pairwise intersection property.
    Audit(AuditArgs),
    /// Run randomized inequality campaigns.
    Lemmas(LemmasArgs),
    /// Build bodies and configurations.
    Construct(ConstructArgs),
    /// Anneal for configurations with many cliques.
    Search(SearchArgs),
    /// Look for disjoint unit simplices of joint diameter 1.
    Hunt(HuntArgs),
    /// Re-evaluate a witness file.
    Replay(ReplayArgs),
}

#[derive(Debug, Args, Serialize)]
struct CliquesArgs {
    /// Point-set JSON.
    #[arg(long)]
    input: PathBuf,
    /// Clique size; defaults to the dimension.
    #[arg(long)]
    l: Option<usize>,
    /// Equality tolerance for unit distances.
    #[arg(long)]
    tol: Option<f64>,
    /// Also run the audit.
    #[arg(long)]
    audit: bool,
    /// Audit dimension; defaults to the dimension of the input.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Debug, Args, Serialize)]
struct AuditArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum LemmaChoice {
    Lemimp,
    Lemrelo,
    Lemred,
    LemredSpherical,
    Lemrad,
    Observations,
    Rotation,
    All,
}

#[derive(Debug, Args, Serialize)]
struct LemmasArgs {
    #[arg(long, value_enum, default_value = "all")]
    lemma: LemmaChoice,
    /// Dimension; by default each campaign runs over its usual range.
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Instances of the rotation procedure.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sphere radius for the closed-form radius check.
    #[arg(long)]
    r: Option<f64>,
    /// Simplex size for the closed-form radius check.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConstructKind {
    RedBlue,
    Simplex,
    RugbyBall,
    Polygon,
}

#[derive(Debug, Args, Serialize)]
struct ConstructArgs {
    #[arg(value_enum)]
    kind: ConstructKind,
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Contraction of the blue points toward the centroid.
    #[arg(long, default_value_t = crate::reuleaux::DEFAULT_CONTRACTION)]
    delta: f64,
    /// Number of polygon vertices.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Build the body on a sphere of this radius.
    #[arg(long)]
    radius: Option<f64>,
    /// Also write the point sets into this directory.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SpaceChoice {
    Euclidean,
    Sphere,
}

#[derive(Debug, Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    /// Clique size; defaults to d.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value = "euclidean")]
    space: SpaceChoice,
    /// Sphere radius when --space sphere.
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    /// Annealing steps per restart.
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Stop a restart once this many cliques are verified.
    #[arg(long)]
    target: Option<usize>,
    /// Write the best configuration as point-set JSON.
    #[arg(long)]
    config_out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
struct HuntArgs {
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Vertices of the moving simplex; defaults to floor((d+1)/2) + 1.
    #[arg(long)]
    blue_size: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    budget: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    min_separation: f64,
    /// Start one restart from the red-blue construction.
    #[arg(long)]
    from_construction: bool,
}

#[derive(Debug, Args, Serialize)]
struct ReplayArgs {
    #[arg(long)]
    witness: PathBuf,
}

/// Offending instance of a failed check, written as JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub check: String,
    pub d: Option<usize>,
    pub margin: Option<f64>,
    pub description: String,
    pub seed: Option<u64>,
    /// Raw points for inequality witnesses, in the order of the check.
    pub points: Option<Vec<Vec<f64>>>,
    /// Configuration for audit, search and construction witnesses.
    pub config: Option<PointConfig>,
    /// Tolerance the failure was found with; replay defaults otherwise.
    #[serde(default)]
    pub tol: Option<Tolerance>,
}

struct Context {
    witness_dir: PathBuf,
}

impl Context {
    fn write_witness(&self, name: &str, w: &WitnessFile) -> Result<String> {
        fs::create_dir_all(&self.witness_dir)?;
        let path = self.witness_dir.join(format!("{name}.json"));
        fs::write(&path, serde_json::to_string_pretty(w)?)?;
        Ok(path.display().to_string())
    }
}

/// Entry point of the binary.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(report) => {
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_VIOLATION
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Argument(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Argument(format!("cannot start worker threads: {e}")))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Report> {
    let ctx = Context { witness_dir: cli.witness_dir.clone() };
    let (name, flags, seed, input): (&str, serde_json::Value, Option<u64>, Option<&Path>) = match &cli.command {
        Command::Cliques(a) => ("cliques", serde_json::to_value(a)?, None, Some(&a.input)),
        Command::Audit(a) => ("audit", serde_json::to_value(a)?, None, Some(&a.input)),
        Command::Lemmas(a) => ("lemmas", serde_json::to_value(a)?, Some(a.seed), None),
        Command::Construct(a) => ("construct", serde_json::to_value(a)?, None, None),
        Command::Search(a) => ("search", serde_json::to_value(a)?, Some(a.seed), None),
        Command::Hunt(a) => ("hunt", serde_json::to_value(a)?, Some(a.seed), None),
        Command::Replay(a) => ("replay", serde_json::to_value(a)?, None, Some(&a.witness)),
    };
    let mut manifest = RunManifest::new(name).with_flags(&flags)?;
    manifest.seed = seed;
    manifest.input = input.map(|p| p.display().to_string());
    manifest.output = cli.output.as_ref().map(|p| p.display().to_string());
    if !cli.no_timestamp {
        manifest = manifest.stamped();
    }
    let mut report = Report::new(manifest);
    let pool = thread_pool()?;
    pool.install(|| -> Result<()> {
        match &cli.command {
            Command::Cliques(a) => cliques(a, &ctx, &mut report),
            Command::Audit(a) => audit(a, &ctx, &mut report),
            Command::Lemmas(a) => lemmas(a, &ctx, &mut report),
            Command::Construct(a) => construct(a, &ctx, &mut report),
            Command::Search(a) => run_search(a, &ctx, &mut report),
            Command::Hunt(a) => hunt(a, &ctx, &mut report),
            Command::Replay(a) => replay(a, &mut report),
        }
    })?;
    report.emit(cli.output.as_deref(), out)?;
    Ok(report)
}

fn tolerance(tol: Option<f64>) -> Result<Tolerance> {
    tol.map_or(Ok(Tolerance::default()), Tolerance::uniform)
}

/// Reads a point set, or the configuration stored in a witness file.
pub fn load_config(path: &Path) -> Result<PointConfig> {
    let text = fs::read_to_string(path)?;
    match PointConfig::from_json_str(&text) {
        Ok(c) => Ok(c),
        Err(first) => match serde_json::from_str::<WitnessFile>(&text) {
            Ok(WitnessFile { config: Some(c), .. }) => Ok(c),
            _ => Err(Error::Argument(format!("{}: {first}", path.display()))),
        },
    }
}

fn cliques(a: &CliquesArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let config = load_config(&a.input)?;
    let tol = tolerance(a.tol)?;
    let g = DiameterGraph::build(&config, tol)?;
    let l = a.l.unwrap_or(config.dim());
    let c = count_cliques(&g, l)?;
    report.push(
        "cliques",
        true,
        &json!({"n": g.len(), "edges": g.edge_count(), "edge_slack": g.edge_slack(), "report": c}),
    )?;
    if a.audit {
        push_audit(schur_audit(&config, a.d, tol)?, &config, tol, ctx, report)?;
    }
    Ok(())
}

fn audit(a: &AuditArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let config = load_config(&a.input)?;
    let tol = tolerance(a.tol)?;
    let r = schur_audit(&config, a.d, tol)?;
    push_audit(r, &config, tol, ctx, report)
}

/// Points of the cliques responsible for a failed audit: all cliques for a
/// count violation, the worst pair for an intersection violation.
fn audit_witness_points(r: &AuditReport) -> Vec<usize> {
    let mut keep: Vec<usize> = if r.count_violation {
        r.clique_list.iter().flatten().copied().collect()
    } else {
        let mut worst: Option<(usize, usize, usize)> = None;
        for i in 0..r.clique_list.len() {
            for j in i + 1..r.clique_list.len() {
                let shared = r.clique_list[i].iter().filter(|v| r.clique_list[j].contains(v)).count();
                if worst.map_or(true, |(s, _, _)| shared < s) {
                    worst = Some((shared, i, j));
                }
            }
        }
        worst.map_or_else(Vec::new, |(_, i, j)| {
            r.clique_list[i].iter().chain(&r.clique_list[j]).copied().collect()
        })
    };
    keep.sort_unstable();
    keep.dedup();
    keep
}

fn push_audit(r: AuditReport, config: &PointConfig, tol: Tolerance, ctx: &Context, report: &mut Report) -> Result<()> {
    let passed = r.passed();
    let mut data = serde_json::to_value(&r)?;
    if !passed {
        let keep = audit_witness_points(&r);
        let pts = keep.iter().map(|&i| config.points()[i].clone()).collect();
        let labels = config.labels().map(|ls| keep.iter().map(|&i| ls[i].clone()).collect());
        let sub = PointConfig::new(config.space(), pts, labels)?;
        let w = WitnessFile {
            check: "audit".into(),
            d: Some(r.d),
            margin: None,
            description: format!(
                "{} cliques on {} points, minimal pairwise intersection {:?}",
                r.cliques, r.n, r.min_pairwise_intersection
            ),
            seed: None,
            points: None,
            config: Some(sub),
            tol: Some(tol),
        };
        data["witness_file"] = ctx.write_witness("audit", &w)?.into();
    }
    report.push("audit", passed, &data)
}

fn push_lemma(r: LemmaReport, seed: u64, ctx: &Context, report: &mut Report) -> Result<()> {
    let passed = r.passed();
    let mut data = serde_json::to_value(&r)?;
    if let (false, Some(w)) = (passed, &r.witness) {
        let d = r.details.get("d").and_then(|v| v.as_u64()).map(|v| v as usize);
        let file = WitnessFile {
            check: r.lemma.clone(),
            d,
            margin: Some(w.margin),
            description: w.description.clone(),
            seed: Some(seed),
            points: Some(w.points.clone()),
            config: None,
            tol: None,
        };
        let name = match d {
            Some(d) => format!("{}-d{d}", r.lemma),
            None => r.lemma.clone(),
        };
        data["witness_file"] = ctx.write_witness(&name, &file)?.into();
    }
    report.push(r.lemma.clone(), passed, &data)
}

fn lemmas(a: &LemmasArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let dims = |default: &[usize]| a.d.map_or_else(|| default.to_vec(), |d| vec![d]);
    let wants = |c: LemmaChoice| a.lemma == c || a.lemma == LemmaChoice::All;
    // one derived seed per campaign, independent of which campaigns run
    let seed_for = |tag: u64, d: usize| derive_seed(a.seed, tag * 64 + d as u64);
    if wants(LemmaChoice::Lemimp) {
        for d in dims(&[3, 4, 5]) {
            let s = seed_for(1, d);
            push_lemma(verify_lemimp(d, a.trials, s)?, s, ctx, report)?;
        }
    }
    if wants(LemmaChoice::Lemrelo) {
        for d in dims(&[3, 4, 5]) {
            let s = seed_for(2, d);
            push_lemma(verify_lemrelo(d, a.trials, s)?, s, ctx, report)?;
        }
    }
    if wants(LemmaChoice::Lemred) {
        let s = seed_for(3, 0);
        push_lemma(verify_lemred(true, a.trials, s)?, s, ctx, report)?;
    }
    if wants(LemmaChoice::LemredSpherical) {
        let s = seed_for(4, 0);
        push_lemma(verify_lemred(false, a.trials, s)?, s, ctx, report)?;
    }
    if wants(LemmaChoice::Lemrad) {
        let s = seed_for(5, 0);
        match a.r {
            Some(r) => {
                let k = a.k.unwrap_or(2);
                let values = lemrad_closed_form(r, k)?;
                report.push("lemrad-closed-form", true, &values)?;
                let d = a.d.unwrap_or(k);
                let trials = a.trials.min(1000);
                push_lemma(lemrad_geometric_check(r, k, d, trials, s)?, s, ctx, report)?;
            }
            None => {
                let trials = a.trials.min(1000);
                for r in verify_lemrad(&LEMRAD_RADII, a.d.unwrap_or(5), trials, s)? {
                    push_lemma(r, s, ctx, report)?;
                }
            }
        }
    }
    if wants(LemmaChoice::Observations) {
        let s = seed_for(6, 0);
        for r in verify_observations(a.trials, s)? {
            push_lemma(r, s, ctx, report)?;
        }
    }
    if wants(LemmaChoice::Rotation) {
        for d in dims(&[3, 4]) {
            let s = seed_for(7, d);
            push_lemma(verify_rotation(d, a.instances, s)?, s, ctx, report)?;
        }
    }
    Ok(())
}

fn write_point_set(dir: &Option<PathBuf>, name: &str, c: &PointConfig) -> Result<Option<String>> {
    let Some(dir) = dir else {
        return Ok(None);
    };
    fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, c.to_json_string())?;
    Ok(Some(path.display().to_string()))
}

fn construct(a: &ConstructArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let tol = Tolerance::default();
    match a.kind {
        ConstructKind::RedBlue => {
            let margins = red_blue_margins(a.d, a.delta, tol)?;
            let passed = margins.passed();
            let delta_max = red_blue_delta_max(a.d, tol).ok();
            let mut data = json!({"margins": margins, "delta_max": delta_max});
            match red_blue_construction(a.d, a.delta, tol) {
                Ok(rb) => {
                    data["red"] = serde_json::to_value(&rb.red)?;
                    data["blue"] = serde_json::to_value(&rb.blue)?;
                    write_point_set(&a.out_dir, "red", &rb.red)?;
                    write_point_set(&a.out_dir, "blue", &rb.blue)?;
                }
                Err(e) => {
                    let w = WitnessFile {
                        check: "construct-red-blue".into(),
                        d: Some(a.d),
                        margin: Some(
                            margins.blue_blue_margin.min(margins.red_blue_margin).min(margins.interior_margin),
                        ),
                        description: e.to_string(),
                        seed: None,
                        points: None,
                        config: None,
                        tol: None,
                    };
                    data["witness_file"] = ctx.write_witness("construct-red-blue", &w)?.into();
                }
            }
            report.push("construct-red-blue", passed, &data)
        }
        ConstructKind::Simplex | ConstructKind::RugbyBall => {
            let kind = if a.kind == ConstructKind::Simplex {
                BodyKind::Simplex
            } else {
                BodyKind::RugbyBall
            };
            let body = match (a.radius, kind) {
                (Some(r), k) => ReuleauxBody::spherical(k, a.d, r)?,
                (None, BodyKind::Simplex) => ReuleauxBody::regular_simplex(a.d)?,
                (None, BodyKind::RugbyBall) => ReuleauxBody::regular_rugby_ball(a.d)?,
            };
            let config = body.config();
            let diam = diameter(config)?;
            let file = write_point_set(&a.out_dir, "body", config)?;
            let data = json!({
                "kind": kind,
                "d": a.d,
                "vertices": config,
                "vertex_diameter": diam,
                "faces": body.face_subsets().len(),
                "file": file,
            });
            report.push("construct-body", tol.is_unit(diam), &data)
        }
        ConstructKind::Polygon => {
            let config = reuleaux_polygon(a.n)?;
            let g = DiameterGraph::build(&config, tol)?;
            let file = write_point_set(&a.out_dir, "polygon", &config)?;
            let data = json!({"n": a.n, "diameters": g.edge_count(), "vertices": config, "file": file});
            report.push("construct-polygon", g.edge_count() == a.n, &data)
        }
    }
}

fn run_search(a: &SearchArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let space = match a.space {
        SpaceChoice::Euclidean => Space::Euclidean { dim: a.d },
        SpaceChoice::Sphere => Space::Sphere { dim: a.d, radius: a.radius },
    };
    let problem = SearchProblem {
        space,
        n: a.n,
        l: a.l.unwrap_or(a.d),
        budget: a.budget,
        restarts: a.restarts,
        seed: a.seed,
        target: a.target,
        tol: Tolerance::default(),
    };
    let result = search(&problem)?;
    if let Some(p) = &a.config_out {
        fs::write(p, result.best.to_json_string())?;
    }
    let passed = !result.tolerance_artifact;
    let mut data = json!({"result": result, "config": result.best});
    if !passed {
        let w = WitnessFile {
            check: "search".into(),
            d: Some(a.d),
            margin: result.min_edge_slack,
            description: result.warnings.join("; "),
            seed: Some(a.seed),
            points: None,
            config: Some(result.best.clone()),
            tol: None,
        };
        data["witness_file"] = ctx.write_witness("search", &w)?.into();
    }
    report.push("search", passed, &data)
}

fn hunt(a: &HuntArgs, ctx: &Context, report: &mut Report) -> Result<()> {
    let opts = HuntOptions {
        d: a.d,
        blue_size: a.blue_size,
        budget: a.budget,
        restarts: a.restarts,
        seed: a.seed,
        min_separation: a.min_separation,
        seed_from_construction: a.from_construction,
    };
    let r = counterexample_hunt(&opts)?;
    let passed = r.warnings.is_empty();
    let mut data = json!({"result": r, "red": r.red, "blue": r.blue});
    if !passed {
        let pts = r.red.points().iter().chain(r.blue.points()).cloned().collect();
        let w = WitnessFile {
            check: "hunt".into(),
            d: Some(a.d),
            margin: Some(r.best_slack),
            description: r.warnings.join("; "),
            seed: Some(a.seed),
            points: None,
            config: Some(PointConfig::euclidean(pts)?),
            tol: None,
        };
        data["witness_file"] = ctx.write_witness("hunt", &w)?.into();
    }
    report.push("hunt", passed, &data)
}

fn replay(a: &ReplayArgs, report: &mut Report) -> Result<()> {
    let text = fs::read_to_string(&a.witness)?;
    let w: WitnessFile =
        serde_json::from_str(&text).map_err(|e| Error::Argument(format!("{}: {e}", a.witness.display())))?;
    let tol = w.tol.unwrap_or_default();
    let point = |i: usize| -> Result<crate::geom::Point> {
        let pts = w.points.as_ref().ok_or_else(|| Error::Argument("witness has no points".into()))?;
        let p = pts.get(i).ok_or_else(|| Error::Argument(format!("witness has no point {i}")))?;
        Ok(crate::geom::Point::from_column_slice(p))
    };
    let need_d = || w.d.ok_or_else(|| Error::Argument("witness has no dimension".into()));
    match w.check.as_str() {
        "audit" => {
            let config = w.config.clone().ok_or_else(|| Error::Argument("audit witness has no configuration".into()))?;
            let r = schur_audit(&config, w.d, tol)?;
            report.push("replay-audit", r.passed(), &r)
        }
        "lemimp" => {
            let inst = LemimpInstance::new(need_d()?)?;
            let e = lemimp_margin(&inst, &point(0)?, &point(1)?)?;
            let passed = e.margin >= -tol.eq_tol && !(e.strict && e.margin <= 0.0);
            report.push("replay-lemimp", passed, &json!({"margin": e.margin, "strict": e.strict, "case": e.case}))
        }
        "lemrelo" => {
            let body = ReuleauxBody::regular_simplex(need_d()? - 1)?;
            let (margin, strict, case) = lemrelo_margin(&body, &point(0)?, &point(1)?)?;
            let passed = margin >= -tol.eq_tol && !(strict && margin <= 0.0);
            report.push("replay-lemrelo", passed, &json!({"margin": margin, "strict": strict, "case": case}))
        }
        other => {
            // no standalone evaluator: restate the recorded failure
            report.push(format!("replay-{other}"), false, &w)
        }
    }
}
