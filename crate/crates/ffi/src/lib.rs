//! C ABI for schurlab-core.
//!
//! Every fallible function returns a [`SchurlabStatus`]; on failure the
//! message is kept per thread and read back with [`schurlab_last_error`].
//! Point sets and bodies are opaque handles released with their `_free`
//! function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schurlab_core::geom::{min_enclosing_ball, Point, PointConfig};
use schurlab_core::graph::{count_cliques, schur_audit, DiameterGraph};
use schurlab_core::reuleaux::{red_blue_margins, ReuleauxBody};
use schurlab_core::{Error, Tolerance};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Dimension = 3,
    Argument = 4,
    Degenerate = 5,
    Domain = 6,
    UndefinedProjection = 7,
    Classification = 8,
    Construction = 9,
    Sampling = 10,
    Case = 11,
    Procedure = 12,
    Refused = 13,
    Json = 14,
    Io = 15,
    /// Output buffer too small.
    BufferTooSmall = 16,
    Panic = 99,
}

impl From<&Error> for SchurlabStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Dimension(_) => Self::Dimension,
            Error::Argument(_) => Self::Argument,
            Error::Degenerate(_) => Self::Degenerate,
            Error::Domain(_) => Self::Domain,
            Error::UndefinedProjection => Self::UndefinedProjection,
            Error::Classification(_) => Self::Classification,
            Error::Construction(_) => Self::Construction,
            Error::Sampling { .. } => Self::Sampling,
            Error::Case(_) => Self::Case,
            Error::Procedure(_) => Self::Procedure,
            Error::Refused(_) => Self::Refused,
            Error::Json(_) => Self::Json,
            Error::Io(_) => Self::Io,
        }
    }
}

/// A point configuration (Euclidean or spherical).
pub struct SchurlabConfig {
    inner: PointConfig,
}

/// A Reuleaux body.
pub struct SchurlabBody {
    inner: ReuleauxBody,
}

/// Summary of a clique-bound audit.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SchurlabAudit {
    pub d: usize,
    pub n: usize,
    pub edges: usize,
    pub cliques: usize,
    pub bound: usize,
    /// Smallest pairwise intersection of `d`-cliques, or -1 with fewer than two.
    pub min_pairwise_intersection: i64,
    pub expected_min_intersection: usize,
    pub in_scope: bool,
    pub passed: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SchurlabRedBlue {
    pub blue_count: usize,
    pub min_blue_blue: f64,
    pub max_red_blue: f64,
    pub interior_margin: f64,
    pub threshold: f64,
    pub passed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(SchurlabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(SchurlabStatus::from(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SchurlabStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and converts panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SchurlabStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SchurlabStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            SchurlabStatus::Panic
        }
    }
}

unsafe fn config_ref<'a>(c: *const SchurlabConfig) -> Result<&'a PointConfig, Failure> {
    c.as_ref().map(|c| &c.inner).ok_or_else(|| null("config"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn tolerance(eq_tol: f64) -> Result<Tolerance, Failure> {
    if eq_tol == 0.0 {
        Ok(Tolerance::default())
    } else {
        Ok(Tolerance::uniform(eq_tol)?)
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn schurlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn schurlab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a Euclidean configuration from `n * dim` row-major coordinates.
///
/// # Safety
/// `coords` must point to `n * dim` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_config_new_euclidean(
    coords: *const f64,
    n: usize,
    dim: usize,
    out: *mut *mut SchurlabConfig,
) -> SchurlabStatus {
    guard(|| {
        if coords.is_null() {
            return Err(null("coords"));
        }
        if dim == 0 {
            return Err(Failure(SchurlabStatus::Dimension, "dimension must be positive".into()));
        }
        let len = n.checked_mul(dim).ok_or_else(|| Failure(SchurlabStatus::Argument, "size overflow".into()))?;
        let flat = std::slice::from_raw_parts(coords, len);
        let points = flat.chunks(dim).map(Point::from_row_slice).collect();
        let inner = PointConfig::euclidean(points)?;
        write(out, Box::into_raw(Box::new(SchurlabConfig { inner })))
    })
}

/// Parses a configuration from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_config_from_json(
    json: *const c_char,
    out: *mut *mut SchurlabConfig,
) -> SchurlabStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(SchurlabStatus::InvalidUtf8, e.to_string()))?;
        let inner = PointConfig::from_json_str(text)?;
        write(out, Box::into_raw(Box::new(SchurlabConfig { inner })))
    })
}

/// # Safety
/// `config` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn schurlab_config_free(config: *mut SchurlabConfig) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

/// Number of points, 0 for null.
///
/// # Safety
/// `config` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn schurlab_config_len(config: *const SchurlabConfig) -> usize {
    config.as_ref().map_or(0, |c| c.inner.len())
}

/// Intrinsic dimension, 0 for null.
///
/// # Safety
/// `config` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn schurlab_config_dim(config: *const SchurlabConfig) -> usize {
    config.as_ref().map_or(0, |c| c.inner.dim())
}

/// Number of `l`-cliques in the diameter graph. `eq_tol` of 0 selects the
/// default tolerance.
///
/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_count_cliques(
    config: *const SchurlabConfig,
    l: usize,
    eq_tol: f64,
    out: *mut usize,
) -> SchurlabStatus {
    guard(|| {
        let cfg = config_ref(config)?;
        let g = DiameterGraph::build(cfg, tolerance(eq_tol)?)?;
        write(out, count_cliques(&g, l)?.count)
    })
}

/// Audits the `d`-clique bounds; `d` of 0 uses the configuration's dimension.
///
/// # Safety
/// `config` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_audit(
    config: *const SchurlabConfig,
    d: usize,
    eq_tol: f64,
    out: *mut SchurlabAudit,
) -> SchurlabStatus {
    guard(|| {
        let cfg = config_ref(config)?;
        let a = schur_audit(cfg, (d > 0).then_some(d), tolerance(eq_tol)?)?;
        let summary = SchurlabAudit {
            d: a.d,
            n: a.n,
            edges: a.edges,
            cliques: a.cliques,
            bound: a.bound,
            min_pairwise_intersection: a.min_pairwise_intersection.map_or(-1, |m| m as i64),
            expected_min_intersection: a.expected_min_intersection,
            in_scope: a.in_scope,
            passed: a.passed(),
        };
        write(out, summary)
    })
}

/// Smallest enclosing ball of a Euclidean configuration. `center` receives
/// `capacity >= dim` doubles.
///
/// # Safety
/// `config` must be a live handle, `center` must hold `capacity` doubles and
/// `radius` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_min_enclosing_ball(
    config: *const SchurlabConfig,
    center: *mut f64,
    capacity: usize,
    radius: *mut f64,
) -> SchurlabStatus {
    guard(|| {
        let cfg = config_ref(config)?;
        if center.is_null() {
            return Err(null("center"));
        }
        let ball = min_enclosing_ball(cfg.points())?;
        if capacity < ball.center.len() {
            return Err(Failure(
                SchurlabStatus::BufferTooSmall,
                format!("center needs {} doubles, got {capacity}", ball.center.len()),
            ));
        }
        std::slice::from_raw_parts_mut(center, ball.center.len()).copy_from_slice(ball.center.as_slice());
        write(radius, ball.radius)
    })
}

/// Reuleaux simplex on the regular unit simplex in R^d.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_body_regular_simplex(d: usize, out: *mut *mut SchurlabBody) -> SchurlabStatus {
    guard(|| {
        let inner = ReuleauxBody::regular_simplex(d)?;
        write(out, Box::into_raw(Box::new(SchurlabBody { inner })))
    })
}

/// Rugby ball on the regular unit (d-1)-simplex in R^d.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_body_regular_rugby_ball(d: usize, out: *mut *mut SchurlabBody) -> SchurlabStatus {
    guard(|| {
        let inner = ReuleauxBody::regular_rugby_ball(d)?;
        write(out, Box::into_raw(Box::new(SchurlabBody { inner })))
    })
}

/// # Safety
/// `body` must come from this library and not be used afterwards; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn schurlab_body_free(body: *mut SchurlabBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// Membership of the point with `dim` coordinates.
///
/// # Safety
/// `body` must be a live handle, `point` must hold `dim` doubles and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_body_contains(
    body: *const SchurlabBody,
    point: *const f64,
    dim: usize,
    out: *mut bool,
) -> SchurlabStatus {
    guard(|| {
        let body = body.as_ref().ok_or_else(|| null("body"))?;
        if point.is_null() {
            return Err(null("point"));
        }
        let p = Point::from_row_slice(std::slice::from_raw_parts(point, dim));
        write(out, body.inner.contains(&p))
    })
}

/// Margins of the red/blue construction in R^d with contraction `delta`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn schurlab_red_blue_margins(d: usize, delta: f64, out: *mut SchurlabRedBlue) -> SchurlabStatus {
    guard(|| {
        let m = red_blue_margins(d, delta, Tolerance::default())?;
        let summary = SchurlabRedBlue {
            blue_count: m.blue_count,
            min_blue_blue: m.min_blue_blue,
            max_red_blue: m.max_red_blue,
            interior_margin: m.interior_margin,
            threshold: m.threshold,
            passed: m.passed(),
        };
        write(out, summary)
    })
}
