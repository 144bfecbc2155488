//! C ABI for the setcorr library.
//!
//! Bodies and direction sets travel as opaque handles created and freed
//! here; every fallible call returns an [`ScStatus`] and writes its result
//! through out-pointers. The most recent error message is kept per thread
//! and read back with [`sc_last_error_message`].
//!
//! The build script regenerates `include/setcorr.h` with cbindgen.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

use setcorr::applications::{fit, robust_feasible, IntervalDataset, RobustRow};
use setcorr::dependence::{lag_corr_proxy, report, Component, SeriesProfiles};
use setcorr::error::Error;
use setcorr::geometry::{ConvexBody, Direction};
use setcorr::sphere::DirectionSet;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// Null pointer, bad enum value, or otherwise unusable argument.
    InvalidArgument = 1,
    /// Malformed JSON or text input.
    ParseError = 2,
    /// Structurally valid input with invalid content.
    DataError = 3,
    /// Numerical degeneracy (rank deficiency, out-of-range correlation).
    NumericalError = 4,
    /// Requested combination is outside the supported algebra.
    Unsupported = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: ScStatus, message: &str) -> ScStatus {
    set_error(message);
    status
}

fn status_of(err: &Error) -> ScStatus {
    match err {
        Error::InvalidParameter(_) => ScStatus::InvalidArgument,
        Error::UnsupportedDimension(_) | Error::UnsupportedCombination(_) => ScStatus::Unsupported,
        Error::InvalidBody(_)
        | Error::DimensionMismatch(_)
        | Error::Structural(_)
        | Error::InsufficientData(_)
        | Error::Data(_) => ScStatus::DataError,
        Error::Numerical(_) | Error::RankDeficient { .. } | Error::Generation(_) => {
            ScStatus::NumericalError
        }
    }
}

fn fail_with(err: Error) -> ScStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

/// Message of the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Opaque convex body handle.
pub struct ScBody(ConvexBody);

/// Opaque direction-set handle.
pub struct ScDirectionSet(Arc<DirectionSet>);

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, ScStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(ScStatus::InvalidArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        ScStatus::ParseError
    })
}

/// Parse a body from its JSON representation.
/// # Safety
/// `json` must be null or a valid NUL-terminated C string.
#[no_mangle]
pub unsafe extern "C" fn sc_body_from_json(json: *const c_char, out: *mut *mut ScBody) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::InvalidArgument, "null output pointer");
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match serde_json::from_str::<ConvexBody>(text) {
        Ok(body) => {
            *out = Box::into_raw(Box::new(ScBody(body)));
            ScStatus::Ok
        }
        Err(e) => fail(ScStatus::ParseError, &format!("invalid body JSON: {e}")),
    }
}

/// Serialize a body to JSON; free the string with [`sc_string_free`].
/// # Safety
/// `body` must be a live handle from this library (or null).
#[no_mangle]
pub unsafe extern "C" fn sc_body_to_json(body: *const ScBody, out: *mut *mut c_char) -> ScStatus {
    if body.is_null() || out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let json = serde_json::to_string(&(*body).0).expect("body serializes");
    match CString::new(json) {
        Ok(s) => {
            *out = s.into_raw();
            ScStatus::Ok
        }
        Err(_) => fail(ScStatus::DataError, "body JSON contains NUL"),
    }
}

/// # Safety
/// `body` must be null or a handle from `sc_body_from_json` that has
/// not been freed already.
#[no_mangle]
pub unsafe extern "C" fn sc_body_free(body: *mut ScBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library that has not
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn sc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Ambient dimension of a body (1 or 2).
/// # Safety
/// `body` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_body_dim(body: *const ScBody, out: *mut usize) -> ScStatus {
    if body.is_null() || out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    *out = (*body).0.dim();
    ScStatus::Ok
}

/// Support function of `body` in the given direction (`dim` entries, unit
/// norm).
/// # Safety
/// `direction` must point to `dim` readable doubles; `body` must be a
/// live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_body_support(
    body: *const ScBody,
    direction: *const f64,
    dim: usize,
    out: *mut f64,
) -> ScStatus {
    if body.is_null() || direction.is_null() || out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let u = match dim {
        1 => match Direction::axis_1d(*direction) {
            Ok(u) => u,
            Err(e) => return fail_with(e),
        },
        2 => match Direction::unit_2d(*direction, *direction.add(1)) {
            Ok(u) => u,
            Err(e) => return fail_with(e),
        },
        d => {
            return fail(
                ScStatus::Unsupported,
                &format!("unsupported direction dimension {d}"),
            )
        }
    };
    match (*body).0.support(u) {
        Ok(v) => {
            *out = v;
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Steiner point of `body`. `out_coords` needs room for two values; the
/// ambient dimension is written to `dim_out`.
/// # Safety
/// `out_coords` must have room for two doubles; `body` must be a live
/// handle.
#[no_mangle]
pub unsafe extern "C" fn sc_body_steiner(
    body: *const ScBody,
    out_coords: *mut f64,
    dim_out: *mut usize,
) -> ScStatus {
    if body.is_null() || out_coords.is_null() || dim_out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let coords = (*body).0.steiner().coords();
    *dim_out = coords.len();
    for (k, v) in coords.iter().enumerate() {
        *out_coords.add(k) = *v;
    }
    ScStatus::Ok
}

/// Deterministic equal-angle direction grid on the circle (`m` even, >= 4).
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_direction_set_equal_angle(
    m: usize,
    out: *mut *mut ScDirectionSet,
) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::InvalidArgument, "null output pointer");
    }
    match DirectionSet::equal_angle(m) {
        Ok(ds) => {
            *out = Box::into_raw(Box::new(ScDirectionSet(Arc::new(ds))));
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Seeded antithetic sampling of `pairs` direction pairs in dimension
/// `dim` (1 or 2).
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_direction_set_random_antithetic(
    pairs: usize,
    seed: u64,
    dim: usize,
    out: *mut *mut ScDirectionSet,
) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::InvalidArgument, "null output pointer");
    }
    match DirectionSet::sample_uniform_antithetic(pairs, seed, dim) {
        Ok(ds) => {
            *out = Box::into_raw(Box::new(ScDirectionSet(Arc::new(ds))));
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// The two-point sphere in one dimension.
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_direction_set_two_point(out: *mut *mut ScDirectionSet) -> ScStatus {
    if out.is_null() {
        return fail(ScStatus::InvalidArgument, "null output pointer");
    }
    *out = Box::into_raw(Box::new(ScDirectionSet(Arc::new(
        DirectionSet::two_point_1d(),
    ))));
    ScStatus::Ok
}

/// # Safety
/// `ds` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn sc_direction_set_len(ds: *const ScDirectionSet) -> usize {
    if ds.is_null() {
        return 0;
    }
    (*ds).0.len()
}

/// # Safety
/// `ds` must be null or a handle that has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn sc_direction_set_free(ds: *mut ScDirectionSet) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// Dependence report with explicit definedness flags: `has_*` is 1 when
/// the matching statistic is defined and 0 when its variance was
/// degenerate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct ScReport {
    pub n: usize,
    pub cov_size: f64,
    pub cov_loc: f64,
    pub cov_loc_res: f64,
    pub cov_tot: f64,
    pub var_size_x: f64,
    pub var_loc_x: f64,
    pub var_loc_res_x: f64,
    pub var_tot_x: f64,
    pub var_size_y: f64,
    pub var_loc_y: f64,
    pub var_loc_res_y: f64,
    pub var_tot_y: f64,
    pub corr_size: f64,
    pub corr_loc: f64,
    pub corr_loc_res: f64,
    pub corr_tot: f64,
    pub kappa_size: f64,
    pub kappa_loc: f64,
    pub pi_size_x: f64,
    pub pi_loc_x: f64,
    pub pi_size_y: f64,
    pub pi_loc_y: f64,
    pub corr_steiner: f64,
    pub has_corr_size: u8,
    pub has_corr_loc: u8,
    pub has_corr_loc_res: u8,
    pub has_corr_tot: u8,
    pub has_kappa: u8,
    pub has_pi_x: u8,
    pub has_pi_y: u8,
    pub has_corr_steiner: u8,
}

unsafe fn collect_bodies(
    bodies: *const *const ScBody,
    len: usize,
) -> Result<Vec<ConvexBody>, ScStatus> {
    if bodies.is_null() || len == 0 {
        set_error("null or empty body array");
        return Err(ScStatus::InvalidArgument);
    }
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let p = *bodies.add(i);
        if p.is_null() {
            set_error("null body in array");
            return Err(ScStatus::InvalidArgument);
        }
        out.push((*p).0.clone());
    }
    Ok(out)
}

fn opt(field: Option<f64>, value: &mut f64, flag: &mut u8) {
    match field {
        Some(v) => {
            *value = v;
            *flag = 1;
        }
        None => {
            *value = f64::NAN;
            *flag = 0;
        }
    }
}

/// Full dependence report for two equally long body series sampled on the
/// given direction set.
/// # Safety
/// `xs` and `ys` must point to `n_x` and `n_y` live body handles; `ds`
/// must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_dependence_report(
    xs: *const *const ScBody,
    n_x: usize,
    ys: *const *const ScBody,
    n_y: usize,
    ds: *const ScDirectionSet,
    out: *mut ScReport,
) -> ScStatus {
    if ds.is_null() || out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let xs = match collect_bodies(xs, n_x) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let ys = match collect_bodies(ys, n_y) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let ds = &(*ds).0;
    let compute = || -> Result<ScReport, Error> {
        let xp = SeriesProfiles::from_bodies(&xs, ds)?;
        let yp = SeriesProfiles::from_bodies(&ys, ds)?;
        let r = report(&xp, &yp)?;
        let mut c = ScReport {
            n: r.n,
            cov_size: r.cov_size,
            cov_loc: r.cov_loc,
            cov_loc_res: r.cov_loc_res,
            cov_tot: r.cov_tot,
            var_size_x: r.var_size_x,
            var_loc_x: r.var_loc_x,
            var_loc_res_x: r.var_loc_res_x,
            var_tot_x: r.var_tot_x,
            var_size_y: r.var_size_y,
            var_loc_y: r.var_loc_y,
            var_loc_res_y: r.var_loc_res_y,
            var_tot_y: r.var_tot_y,
            ..ScReport::default()
        };
        opt(r.corr_size, &mut c.corr_size, &mut c.has_corr_size);
        opt(r.corr_loc, &mut c.corr_loc, &mut c.has_corr_loc);
        opt(r.corr_loc_res, &mut c.corr_loc_res, &mut c.has_corr_loc_res);
        opt(r.corr_tot, &mut c.corr_tot, &mut c.has_corr_tot);
        let mut dummy = 0u8;
        opt(r.kappa_size, &mut c.kappa_size, &mut c.has_kappa);
        opt(r.kappa_loc, &mut c.kappa_loc, &mut dummy);
        opt(r.pi_size_x, &mut c.pi_size_x, &mut c.has_pi_x);
        opt(r.pi_loc_x, &mut c.pi_loc_x, &mut dummy);
        opt(r.pi_size_y, &mut c.pi_size_y, &mut c.has_pi_y);
        opt(r.pi_loc_y, &mut c.pi_loc_y, &mut dummy);
        opt(r.corr_steiner, &mut c.corr_steiner, &mut c.has_corr_steiner);
        Ok(c)
    };
    match compute() {
        Ok(r) => {
            *out = r;
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Lag-correlation mixing proxy. `component`: 0 size, 1 loc, 2 loc_res,
/// 3 tot, negative for the maximum over size/loc/tot.
/// # Safety
/// `xs` must point to `n` live body handles; `ds` must be a live
/// handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_lag_corr_proxy(
    xs: *const *const ScBody,
    n: usize,
    ds: *const ScDirectionSet,
    lag: usize,
    component: i32,
    out: *mut f64,
) -> ScStatus {
    if ds.is_null() || out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let comp = match component {
        c if c < 0 => None,
        0 => Some(Component::Size),
        1 => Some(Component::Loc),
        2 => Some(Component::LocRes),
        3 => Some(Component::Tot),
        other => {
            return fail(
                ScStatus::InvalidArgument,
                &format!("unknown component code {other}"),
            )
        }
    };
    let bodies = match collect_bodies(xs, n) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let compute = || -> Result<f64, Error> {
        let xp = SeriesProfiles::from_bodies(&bodies, &(*ds).0)?;
        lag_corr_proxy(&xp, lag, comp)
    };
    match compute() {
        Ok(v) => {
            *out = v;
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

/// Decoupled interval regression. `x` is row-major `n x p`; `beta_out` and
/// `gamma_out` need room for `p` values each.
/// # Safety
/// `x` must hold `n * p` doubles (row-major), `c` and `r` must hold
/// `n` doubles, and `beta_out`/`gamma_out` must have room for `p`
/// doubles each.
#[no_mangle]
pub unsafe extern "C" fn sc_interval_fit(
    x: *const f64,
    n: usize,
    p: usize,
    c: *const f64,
    r: *const f64,
    beta_out: *mut f64,
    gamma_out: *mut f64,
    loss_out: *mut f64,
    negative_radius_out: *mut usize,
) -> ScStatus {
    if x.is_null()
        || c.is_null()
        || r.is_null()
        || beta_out.is_null()
        || gamma_out.is_null()
        || loss_out.is_null()
        || negative_radius_out.is_null()
    {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| std::slice::from_raw_parts(x.add(i * p), p).to_vec())
        .collect();
    let mid = std::slice::from_raw_parts(c, n).to_vec();
    let rad = std::slice::from_raw_parts(r, n).to_vec();
    let compute = || -> Result<setcorr::applications::IntervalFit, Error> {
        fit(&IntervalDataset::new(rows, mid, rad)?)
    };
    match compute() {
        Ok(f) => {
            for (k, v) in f.beta.iter().enumerate() {
                *beta_out.add(k) = *v;
            }
            for (k, v) in f.gamma.iter().enumerate() {
                *gamma_out.add(k) = *v;
            }
            *loss_out = f.loss;
            *negative_radius_out = f.negative_radius_count;
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}

#[derive(serde::Deserialize)]
struct RobustInstance {
    rows: Vec<RobustRow>,
    x: Vec<f64>,
}

/// Robust feasibility of the JSON instance
/// `{"rows": [{"a": [[lo,hi],...], "b": [lo,hi]}], "x": [...]}`.
/// Per-row worst-case slacks are written to `slack_out` (capacity
/// `slack_capacity`); the row count goes to `n_rows_out`.
/// # Safety
/// `instance_json` must be null or a valid NUL-terminated C string;
/// `slack_out`, when non-null, must have room for `slack_capacity`
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn sc_robust_feasible_json(
    instance_json: *const c_char,
    feasible_out: *mut i32,
    slack_out: *mut f64,
    slack_capacity: usize,
    n_rows_out: *mut usize,
) -> ScStatus {
    if feasible_out.is_null() || n_rows_out.is_null() {
        return fail(ScStatus::InvalidArgument, "null argument");
    }
    let text = match read_str(instance_json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let inst: RobustInstance = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return fail(ScStatus::ParseError, &format!("invalid instance JSON: {e}")),
    };
    match robust_feasible(&inst.x, &inst.rows) {
        Ok(outcome) => {
            *feasible_out = outcome.feasible as i32;
            *n_rows_out = outcome.slack.len();
            if !slack_out.is_null() {
                for (k, v) in outcome.slack.iter().take(slack_capacity).enumerate() {
                    *slack_out.add(k) = *v;
                }
            }
            ScStatus::Ok
        }
        Err(e) => fail_with(e),
    }
}
