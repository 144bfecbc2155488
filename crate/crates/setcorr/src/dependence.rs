//! Covariance, correlation, and mixing diagnostics for set-valued series.
//!
//! Estimators follow one recipe: Bessel-corrected sample covariance of a
//! profile component across time, per direction, then quadrature over the
//! direction set. Antithetic grouping in the quadrature makes the even-odd
//! cross terms vanish exactly, so total covariance splits into size plus
//! location at machine precision.
//!
//! Correlations are undefined, not erroneous, when a component variance
//! sits at its degeneracy floor (1e-12 times the squared support scale of
//! the series); callers receive `None`.

use serde::{Deserialize, Serialize};
use std::sync::Arc;

use crate::decomposition::DecompProfile;
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Point};
use crate::numeric::{bessel_cov, jacobi_eigenvalues, mean_square, pearson};
use crate::sphere::DirectionSet;

/// Relative floor below which a variance counts as degenerate.
pub const VARIANCE_FLOOR_REL: f64 = 1e-12;

/// Largest tolerated overshoot of |corr| beyond 1 before the computation is
/// reported as a numerical failure instead of being clamped.
pub const CORR_OVERSHOOT_TOL: f64 = 1e-12;

/// Profile component selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    /// Even part `W`.
    Size,
    /// Odd part `C`.
    Loc,
    /// Steiner-centered odd part `C_res`.
    LocRes,
    /// Full support profile `h`.
    Tot,
}

impl Component {
    pub fn name(self) -> &'static str {
        match self {
            Component::Size => "size",
            Component::Loc => "loc",
            Component::LocRes => "loc_res",
            Component::Tot => "tot",
        }
    }
}

impl std::str::FromStr for Component {
    type Err = Error;
    fn from_str(s: &str) -> Result<Component> {
        match s {
            "size" => Ok(Component::Size),
            "loc" => Ok(Component::Loc),
            "loc_res" => Ok(Component::LocRes),
            "tot" => Ok(Component::Tot),
            other => Err(Error::InvalidParameter(format!(
                "unknown component {other:?}; expected size, loc, loc_res, or tot"
            ))),
        }
    }
}

/// Decomposed profiles of one series over one shared direction set.
///
/// Storage is node-major (`values[node * n + t]`) so the per-direction time
/// passes of every estimator run over contiguous memory.
#[derive(Clone, Debug)]
pub struct SeriesProfiles {
    ds: Arc<DirectionSet>,
    n: usize,
    w: Vec<f64>,
    c: Vec<f64>,
    c_res: Vec<f64>,
    h: Vec<f64>,
    steiner: Vec<Point>,
    /// Weighted mean square of the raw support values; the scale against
    /// which degeneracy floors are set.
    support_scale_sq: f64,
}

impl SeriesProfiles {
    /// Profile and decompose each body (exact Steiner points).
    ///
    /// Equivalent to decomposing body by body and assembling with
    /// [`SeriesProfiles::from_decomp`], but fills the node-major storage
    /// directly; long series with many directions stay allocation-free per
    /// body.
    pub fn from_bodies(bodies: &[ConvexBody], ds: &Arc<DirectionSet>) -> Result<SeriesProfiles> {
        let n = bodies.len();
        if n == 0 {
            return Err(Error::InsufficientData("empty body series".into()));
        }
        let m = ds.len();
        let mut h = vec![0.0; m * n];
        let mut steiner = Vec::with_capacity(n);
        for (t, body) in bodies.iter().enumerate() {
            for (j, &u) in ds.nodes().iter().enumerate() {
                let v = body.support(u)?;
                if !v.is_finite() {
                    return Err(Error::Data(format!(
                        "non-finite support value at time {t}, node {j}"
                    )));
                }
                h[j * n + t] = v;
            }
            let s = body.steiner();
            if !s.is_finite() {
                return Err(Error::Data(format!("non-finite Steiner point at time {t}")));
            }
            steiner.push(s);
        }
        // Parity split node by node; the antipodal row shares the layout.
        let mut w = vec![0.0; m * n];
        let mut c = vec![0.0; m * n];
        let mut c_res = vec![0.0; m * n];
        let lin: Vec<Vec<f64>> = (0..m)
            .map(|j| {
                steiner
                    .iter()
                    .map(|s| ds.nodes()[j].dot_point(*s))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<_>>()?;
        for j in 0..m {
            let anti = ds.antipode(j);
            for t in 0..n {
                let even = 0.5 * (h[j * n + t] + h[anti * n + t]);
                let odd = 0.5 * (h[j * n + t] - h[anti * n + t]);
                w[j * n + t] = even;
                c[j * n + t] = odd;
                c_res[j * n + t] = odd - lin[j][t];
            }
        }
        let mut node_ms = vec![0.0; m];
        for (j, slot) in node_ms.iter_mut().enumerate() {
            *slot = mean_square(&h[j * n..(j + 1) * n]);
        }
        let support_scale_sq = ds.integrate(&node_ms)?.max(0.0);
        Ok(SeriesProfiles {
            ds: Arc::clone(ds),
            n,
            w,
            c,
            c_res,
            h,
            steiner,
            support_scale_sq,
        })
    }

    /// Assemble from per-time decompositions sampled on `ds`.
    pub fn from_decomp(
        profiles: &[DecompProfile],
        ds: &Arc<DirectionSet>,
    ) -> Result<SeriesProfiles> {
        let n = profiles.len();
        if n == 0 {
            return Err(Error::InsufficientData("empty profile series".into()));
        }
        let m = ds.len();
        for p in profiles {
            if p.ds_id() != ds.id() {
                return Err(Error::Structural(
                    "profiles were sampled on different direction sets".into(),
                ));
            }
        }
        let mut w = vec![0.0; m * n];
        let mut c = vec![0.0; m * n];
        let mut c_res = vec![0.0; m * n];
        let mut h = vec![0.0; m * n];
        let mut steiner = Vec::with_capacity(n);
        for (t, p) in profiles.iter().enumerate() {
            for j in 0..m {
                let v = p.h()[j];
                if !v.is_finite() {
                    return Err(Error::Data(format!(
                        "non-finite support value at time {t}, node {j}"
                    )));
                }
                w[j * n + t] = p.w()[j];
                c[j * n + t] = p.c()[j];
                c_res[j * n + t] = p.c_res()[j];
                h[j * n + t] = v;
            }
            if !p.steiner().is_finite() {
                return Err(Error::Data(format!("non-finite Steiner point at time {t}")));
            }
            steiner.push(p.steiner());
        }
        let mut node_ms = vec![0.0; m];
        for (j, slot) in node_ms.iter_mut().enumerate() {
            *slot = mean_square(&h[j * n..(j + 1) * n]);
        }
        let support_scale_sq = ds.integrate(&node_ms)?.max(0.0);
        Ok(SeriesProfiles {
            ds: Arc::clone(ds),
            n,
            w,
            c,
            c_res,
            h,
            steiner,
            support_scale_sq,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ds(&self) -> &Arc<DirectionSet> {
        &self.ds
    }

    pub fn steiner_points(&self) -> &[Point] {
        &self.steiner
    }

    pub fn support_scale_sq(&self) -> f64 {
        self.support_scale_sq
    }

    /// Time samples of one component at one node.
    pub fn node_series(&self, comp: Component, node: usize) -> &[f64] {
        let base = node * self.n;
        match comp {
            Component::Size => &self.w[base..base + self.n],
            Component::Loc => &self.c[base..base + self.n],
            Component::LocRes => &self.c_res[base..base + self.n],
            Component::Tot => &self.h[base..base + self.n],
        }
    }

    /// Owned copy of the time window `[start, start + len)`.
    pub fn window(&self, start: usize, len: usize) -> Result<SeriesProfiles> {
        if start + len > self.n || len == 0 {
            return Err(Error::InvalidParameter(format!(
                "window {start}..{} out of range for n={}",
                start + len,
                self.n
            )));
        }
        let m = self.ds.len();
        let take = |src: &Vec<f64>| {
            let mut out = vec![0.0; m * len];
            for j in 0..m {
                out[j * len..(j + 1) * len]
                    .copy_from_slice(&src[j * self.n + start..j * self.n + start + len]);
            }
            out
        };
        Ok(SeriesProfiles {
            ds: Arc::clone(&self.ds),
            n: len,
            w: take(&self.w),
            c: take(&self.c),
            c_res: take(&self.c_res),
            h: take(&self.h),
            steiner: self.steiner[start..start + len].to_vec(),
            support_scale_sq: self.support_scale_sq,
        })
    }

    fn variance_floor(&self) -> f64 {
        VARIANCE_FLOOR_REL * self.support_scale_sq
    }
}

fn check_pair(xs: &SeriesProfiles, ys: &SeriesProfiles) -> Result<()> {
    if xs.ds.id() != ys.ds.id() {
        return Err(Error::Structural(
            "series were sampled on different direction sets".into(),
        ));
    }
    if xs.n != ys.n {
        return Err(Error::Structural(format!(
            "series lengths differ: {} vs {}",
            xs.n, ys.n
        )));
    }
    if xs.n < 2 {
        return Err(Error::InsufficientData(
            "covariance needs at least two observations".into(),
        ));
    }
    Ok(())
}

/// Component covariance: per-direction Bessel-corrected sample covariance,
/// integrated over the direction set.
pub fn cov_component(xs: &SeriesProfiles, ys: &SeriesProfiles, comp: Component) -> Result<f64> {
    check_pair(xs, ys)?;
    let m = xs.ds.len();
    let mut per_node = vec![0.0; m];
    for (j, slot) in per_node.iter_mut().enumerate() {
        *slot = bessel_cov(xs.node_series(comp, j), ys.node_series(comp, j));
    }
    xs.ds.integrate(&per_node)
}

/// Component variance; nonnegative up to rounding.
pub fn var_component(xs: &SeriesProfiles, comp: Component) -> Result<f64> {
    cov_component(xs, xs, comp)
}

fn corr_from_parts(cov: f64, var_x: f64, var_y: f64, floor: f64) -> Result<Option<f64>> {
    if var_x <= floor || var_y <= floor {
        return Ok(None);
    }
    let r = cov / (var_x * var_y).sqrt();
    if r.abs() > 1.0 + CORR_OVERSHOOT_TOL {
        return Err(Error::Numerical(format!(
            "correlation {r} exceeds unit modulus beyond tolerance"
        )));
    }
    Ok(Some(r.clamp(-1.0, 1.0)))
}

/// Component correlation, or `None` when a variance is degenerate.
pub fn corr_component(
    xs: &SeriesProfiles,
    ys: &SeriesProfiles,
    comp: Component,
) -> Result<Option<f64>> {
    let cov = cov_component(xs, ys, comp)?;
    let vx = var_component(xs, comp)?;
    let vy = var_component(ys, comp)?;
    let floor = xs.variance_floor().max(ys.variance_floor());
    corr_from_parts(cov, vx, vy, floor)
}

/// Trace of the sample cross-covariance of two point sequences.
fn steiner_trace_cov(xs: &[Point], ys: &[Point]) -> f64 {
    let dim = xs[0].dim();
    let column = |pts: &[Point], k: usize| -> Vec<f64> { pts.iter().map(|p| p.coords()[k]).collect() };
    let mut total = 0.0;
    for k in 0..dim {
        total += bessel_cov(&column(xs, k), &column(ys, k));
    }
    total
}

/// Full dependence report for a pair of series.
///
/// Correlation-like fields are `None` when the matching variance is below
/// the degeneracy floor. The serialized field order is the documented CSV
/// column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DependenceReport {
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
    pub corr_size: Option<f64>,
    pub corr_loc: Option<f64>,
    pub corr_loc_res: Option<f64>,
    pub corr_tot: Option<f64>,
    pub kappa_size: Option<f64>,
    pub kappa_loc: Option<f64>,
    pub pi_size_x: Option<f64>,
    pub pi_loc_x: Option<f64>,
    pub pi_size_y: Option<f64>,
    pub pi_loc_y: Option<f64>,
    pub corr_steiner: Option<f64>,
}

impl DependenceReport {
    pub const CSV_HEADER: &'static str = "n,cov_size,cov_loc,cov_loc_res,cov_tot,\
var_size_x,var_loc_x,var_loc_res_x,var_tot_x,\
var_size_y,var_loc_y,var_loc_res_y,var_tot_y,\
corr_size,corr_loc,corr_loc_res,corr_tot,\
kappa_size,kappa_loc,pi_size_x,pi_loc_x,pi_size_y,pi_loc_y,corr_steiner";

    /// One CSV row in `CSV_HEADER` order; undefined statistics are empty.
    pub fn csv_row(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.cov_size,
            self.cov_loc,
            self.cov_loc_res,
            self.cov_tot,
            self.var_size_x,
            self.var_loc_x,
            self.var_loc_res_x,
            self.var_tot_x,
            self.var_size_y,
            self.var_loc_y,
            self.var_loc_res_y,
            self.var_tot_y,
            opt(self.corr_size),
            opt(self.corr_loc),
            opt(self.corr_loc_res),
            opt(self.corr_tot),
            opt(self.kappa_size),
            opt(self.kappa_loc),
            opt(self.pi_size_x),
            opt(self.pi_loc_x),
            opt(self.pi_size_y),
            opt(self.pi_loc_y),
            opt(self.corr_steiner),
        )
    }
}

/// Compute every field of the dependence report.
pub fn report(xs: &SeriesProfiles, ys: &SeriesProfiles) -> Result<DependenceReport> {
    check_pair(xs, ys)?;
    let floor = xs.variance_floor().max(ys.variance_floor());

    let cov_size = cov_component(xs, ys, Component::Size)?;
    let cov_loc = cov_component(xs, ys, Component::Loc)?;
    let cov_loc_res = cov_component(xs, ys, Component::LocRes)?;
    let cov_tot = cov_component(xs, ys, Component::Tot)?;

    let var_size_x = var_component(xs, Component::Size)?;
    let var_loc_x = var_component(xs, Component::Loc)?;
    let var_loc_res_x = var_component(xs, Component::LocRes)?;
    let var_tot_x = var_component(xs, Component::Tot)?;
    let var_size_y = var_component(ys, Component::Size)?;
    let var_loc_y = var_component(ys, Component::Loc)?;
    let var_loc_res_y = var_component(ys, Component::LocRes)?;
    let var_tot_y = var_component(ys, Component::Tot)?;

    let corr_size = corr_from_parts(cov_size, var_size_x, var_size_y, floor)?;
    let corr_loc = corr_from_parts(cov_loc, var_loc_x, var_loc_y, floor)?;
    let corr_loc_res = corr_from_parts(cov_loc_res, var_loc_res_x, var_loc_res_y, floor)?;
    let corr_tot = corr_from_parts(cov_tot, var_tot_x, var_tot_y, floor)?;

    let tot_ok = var_tot_x > floor && var_tot_y > floor;
    let denom_tot = (var_tot_x * var_tot_y).sqrt();
    let kappa_size = tot_ok.then(|| cov_size / denom_tot);
    let kappa_loc = tot_ok.then(|| cov_loc / denom_tot);
    let pi_size_x = (var_tot_x > floor).then(|| var_size_x / var_tot_x);
    let pi_loc_x = (var_tot_x > floor).then(|| var_loc_x / var_tot_x);
    let pi_size_y = (var_tot_y > floor).then(|| var_size_y / var_tot_y);
    let pi_loc_y = (var_tot_y > floor).then(|| var_loc_y / var_tot_y);

    // Trace correlation of the Steiner sequences, floored against the
    // support scale of the bodies: a Steiner path that wiggles at rounding
    // level relative to the sets themselves is degenerate.
    let tr_xy = steiner_trace_cov(&xs.steiner, &ys.steiner);
    let tr_xx = steiner_trace_cov(&xs.steiner, &xs.steiner);
    let tr_yy = steiner_trace_cov(&ys.steiner, &ys.steiner);
    let corr_steiner = corr_from_parts(tr_xy, tr_xx, tr_yy, floor)?;

    Ok(DependenceReport {
        n: xs.n,
        cov_size,
        cov_loc,
        cov_loc_res,
        cov_tot,
        var_size_x,
        var_loc_x,
        var_loc_res_x,
        var_tot_x,
        var_size_y,
        var_loc_y,
        var_loc_res_y,
        var_tot_y,
        corr_size,
        corr_loc,
        corr_loc_res,
        corr_tot,
        kappa_size,
        kappa_loc,
        pi_size_x,
        pi_loc_x,
        pi_size_y,
        pi_loc_y,
        corr_steiner,
    })
}

/// Pairwise component covariance matrix of a family of series, with its
/// smallest eigenvalue (cyclic Jacobi).
#[derive(Clone, Debug)]
pub struct PsdCheck {
    pub matrix: Vec<Vec<f64>>,
    pub min_eigenvalue: f64,
}

pub fn psd_check(series: &[&SeriesProfiles], comp: Component) -> Result<PsdCheck> {
    if series.is_empty() {
        return Err(Error::InsufficientData("no series given".into()));
    }
    let m = series.len();
    for s in series {
        check_pair(series[0], s)?;
    }
    let mut matrix = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let v = cov_component(series[i], series[j], comp)?;
            matrix[i][j] = v;
            matrix[j][i] = v;
        }
    }
    let flat: Vec<f64> = matrix.iter().flatten().copied().collect();
    let eigenvalues = jacobi_eigenvalues(flat, m);
    let min_eigenvalue = eigenvalues.into_iter().fold(f64::INFINITY, f64::min);
    Ok(PsdCheck {
        matrix,
        min_eigenvalue,
    })
}

/// Linear-correlation lower bound for the lag-`k` mixing coefficient.
///
/// Maximum over sampled directions (and over size/loc/tot when `comp` is
/// `None`) of the absolute Pearson correlation between the component at
/// time `i` and time `i+k`. Directions where either window is degenerate
/// are skipped; a fully degenerate component contributes zero.
pub fn lag_corr_proxy(xs: &SeriesProfiles, k: usize, comp: Option<Component>) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    if k + 2 >= xs.n {
        return Err(Error::InvalidParameter(format!(
            "lag {k} too large for series of length {}",
            xs.n
        )));
    }
    let comps: &[Component] = match comp {
        Some(ref c) => std::slice::from_ref(c),
        None => &[Component::Size, Component::Loc, Component::Tot],
    };
    let len = xs.n - k;
    let mut best = 0.0f64;
    for &c in comps {
        for j in 0..xs.ds.len() {
            let series = xs.node_series(c, j);
            let head = &series[..len];
            let tail = &series[k..];
            if let Some(r) = pearson(head, tail) {
                best = best.max(r.abs());
            }
        }
    }
    Ok(best.min(1.0))
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LagProxyRow {
    pub k: usize,
    pub proxy_size: f64,
    pub proxy_loc: f64,
    pub proxy_tot: f64,
}

/// Sweep of the mixing proxy over lags `1..=k_max` for each component.
pub fn lag_proxy_sweep(xs: &SeriesProfiles, k_max: usize) -> Result<Vec<LagProxyRow>> {
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        rows.push(LagProxyRow {
            k,
            proxy_size: lag_corr_proxy(xs, k, Some(Component::Size))?,
            proxy_loc: lag_corr_proxy(xs, k, Some(Component::Loc))?,
            proxy_tot: lag_corr_proxy(xs, k, Some(Component::Tot))?,
        });
    }
    Ok(rows)
}
