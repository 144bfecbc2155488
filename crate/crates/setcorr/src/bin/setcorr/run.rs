//! Command implementations. Each run writes its outputs under the chosen
//! directory; every file carries the schema version, tool version, seed,
//! and config hash, and all numeric formatting is deterministic for a
//! fixed seed.

use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use setcorr::applications::{fit, robust_feasible, IntervalDataset, RobustRow};
use setcorr::decomposition::{profile, steiner_quadrature};
use setcorr::dependence::{
    lag_proxy_sweep, report, DependenceReport, SeriesProfiles,
};
use setcorr::error::Error;
use setcorr::geometry::{ConvexBody, Vec2};
use setcorr::limits::{decay_csv, lln_decay_sweep, mse_rate_sweep, RateTable};
use setcorr::process::{
    build_scenario, gen_disc_series, gen_gaussian_singletons, gen_triangle_series, Scenario,
    ScenarioId,
};
use setcorr::seed::split_seed;
use setcorr::sphere::DirectionSet;

use crate::config::{
    config_hash, DecayConfig, DecayGenerator, EstimateConfig, GridChoice, MixingConfig, MseBranch,
    MseConfig, RegressConfig, RobustConfig, ScenarioConfig, SteinerConfig, SCHEMA_VERSION,
};
use crate::CliError;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Context shared by all output files of one run.
pub struct OutputMeta {
    pub seed: u64,
    pub config_hash: String,
}

impl OutputMeta {
    pub fn new<T: Serialize>(cfg: &T, seed: u64) -> OutputMeta {
        OutputMeta {
            seed,
            config_hash: config_hash(cfg),
        }
    }

    fn csv_banner(&self) -> String {
        format!(
            "# schema_version={SCHEMA_VERSION} tool_version={TOOL_VERSION} seed={} config_hash={}\n",
            self.seed, self.config_hash
        )
    }

    fn json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "seed": self.seed,
            "config_hash": self.config_hash,
        })
    }
}

fn ensure_out_dir(out: &str) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(out);
    fs::create_dir_all(&dir)
        .map_err(|e| CliError::data(format!("cannot create output directory {out}: {e}")))?;
    Ok(dir)
}

fn write_csv(dir: &Path, name: &str, meta: &OutputMeta, body: &str) -> Result<(), CliError> {
    let mut text = meta.csv_banner();
    text.push_str(body);
    fs::write(dir.join(name), text)
        .map_err(|e| CliError::data(format!("cannot write {name}: {e}")))
}

fn write_json(
    dir: &Path,
    name: &str,
    meta: &OutputMeta,
    payload: serde_json::Value,
) -> Result<(), CliError> {
    let doc = serde_json::json!({ "meta": meta.json_value(), "result": payload });
    let mut text = serde_json::to_string_pretty(&doc).expect("json serializes");
    text.push('\n');
    fs::write(dir.join(name), text)
        .map_err(|e| CliError::data(format!("cannot write {name}: {e}")))
}

fn build_grid(
    grid: GridChoice,
    directions: usize,
    seed: u64,
    dim: usize,
) -> Result<Arc<DirectionSet>, Error> {
    let ds = match (grid, dim) {
        (_, 1) => DirectionSet::two_point_1d(),
        (GridChoice::EqualAngle, _) => DirectionSet::equal_angle(directions)?,
        (GridChoice::Random, _) => {
            DirectionSet::sample_uniform_antithetic(directions.div_ceil(2), seed, dim)?
        }
    };
    Ok(Arc::new(ds))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Mean and Bessel sd over the defined entries of a correlation column.
fn column_stats(values: &[Option<f64>]) -> (Option<f64>, Option<f64>, usize) {
    let defined: Vec<f64> = values.iter().flatten().copied().collect();
    let undefined = values.len() - defined.len();
    if defined.is_empty() {
        return (None, None, undefined);
    }
    let mean = defined.iter().sum::<f64>() / defined.len() as f64;
    let sd = if defined.len() >= 2 {
        let ss: f64 = defined.iter().map(|v| (v - mean) * (v - mean)).sum();
        Some((ss / (defined.len() - 1) as f64).sqrt())
    } else {
        None
    };
    (Some(mean), sd, undefined)
}

struct ScenarioCell {
    alpha: Option<f64>,
    reports: Vec<DependenceReport>,
}

pub fn run_scenario(cfg: &ScenarioConfig, out: &str) -> Result<(), CliError> {
    if cfg.reps == 0 {
        return Err(CliError::config("reps must be at least 1".into()));
    }
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, cfg.seed);

    // S4 sweeps its alpha grid unless one alpha is pinned; S1-S3 run once.
    let alphas: Vec<Option<f64>> = match (cfg.scenario, cfg.alpha) {
        (ScenarioId::S4, Some(a)) => vec![Some(a)],
        (ScenarioId::S4, None) => cfg.alpha_grid.iter().copied().map(Some).collect(),
        _ => vec![None],
    };

    let mut cells = Vec::with_capacity(alphas.len());
    for (ai, &alpha) in alphas.iter().enumerate() {
        let mut reports = Vec::with_capacity(cfg.reps);
        for rep in 0..cfg.reps {
            let rep_seed = split_seed(cfg.seed, (ai * cfg.reps + rep) as u64);
            let sc = Scenario {
                id: cfg.scenario,
                n: cfg.n,
                seed: rep_seed,
                alpha,
                triangle: cfg.triangle.clone(),
            };
            let (xs, ys) = build_scenario(&sc)?;
            if cfg.export_bodies && rep == 0 {
                let suffix = alpha
                    .map(|a| format!("_alpha{a}"))
                    .unwrap_or_default();
                write_bodies_jsonl(&dir, &format!("xs_rep0{suffix}.jsonl"), &xs)?;
                write_bodies_jsonl(&dir, &format!("ys_rep0{suffix}.jsonl"), &ys)?;
            }
            let ds = build_grid(cfg.grid, cfg.directions, split_seed(rep_seed, 0xD5), 2)?;
            let xp = SeriesProfiles::from_bodies(&xs, &ds)?;
            let yp = SeriesProfiles::from_bodies(&ys, &ds)?;
            reports.push(report(&xp, &yp)?);
        }
        cells.push(ScenarioCell { alpha, reports });
    }

    // Per-replication reports.
    let mut body = format!("scenario,alpha,rep,{}\n", DependenceReport::CSV_HEADER);
    for cell in &cells {
        for (rep, r) in cell.reports.iter().enumerate() {
            body.push_str(&format!(
                "{},{},{rep},{}\n",
                cfg.scenario,
                fmt_opt(cell.alpha),
                r.csv_row()
            ));
        }
    }
    write_csv(&dir, "reports.csv", &meta, &body)?;

    // Plot data: correlation against replication index.
    let mut body = String::from("scenario,alpha,rep,corr_size,corr_loc_res,corr_steiner\n");
    for cell in &cells {
        for (rep, r) in cell.reports.iter().enumerate() {
            body.push_str(&format!(
                "{},{},{rep},{},{},{}\n",
                cfg.scenario,
                fmt_opt(cell.alpha),
                fmt_opt(r.corr_size),
                fmt_opt(r.corr_loc_res),
                fmt_opt(r.corr_steiner),
            ));
        }
    }
    write_csv(&dir, "plot_correlations.csv", &meta, &body)?;

    // Summary rows in the usual table layout.
    let mut body = String::from(
        "scenario,alpha,reps,corr_size_mean,corr_size_sd,corr_loc_res_mean,corr_loc_res_sd,\
corr_steiner_mean,corr_steiner_sd,steiner_undefined\n",
    );
    for cell in &cells {
        let size: Vec<Option<f64>> = cell.reports.iter().map(|r| r.corr_size).collect();
        let locres: Vec<Option<f64>> = cell.reports.iter().map(|r| r.corr_loc_res).collect();
        let steiner: Vec<Option<f64>> = cell.reports.iter().map(|r| r.corr_steiner).collect();
        let (sm, ss, _) = column_stats(&size);
        let (lm, ls, _) = column_stats(&locres);
        let (tm, ts, tu) = column_stats(&steiner);
        body.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{tu}\n",
            cfg.scenario,
            fmt_opt(cell.alpha),
            cell.reports.len(),
            fmt_opt(sm),
            fmt_opt(ss),
            fmt_opt(lm),
            fmt_opt(ls),
            fmt_opt(tm),
            fmt_opt(ts),
        ));
    }
    write_csv(&dir, "summary.csv", &meta, &body)?;

    // Alpha sweep plot data for S4.
    if cfg.scenario == ScenarioId::S4 && cells.len() > 1 {
        let mut body =
            String::from("alpha,corr_size_mean,corr_loc_res_mean,corr_steiner_mean\n");
        for cell in &cells {
            let (sm, _, _) =
                column_stats(&cell.reports.iter().map(|r| r.corr_size).collect::<Vec<_>>());
            let (lm, _, _) = column_stats(
                &cell
                    .reports
                    .iter()
                    .map(|r| r.corr_loc_res)
                    .collect::<Vec<_>>(),
            );
            let (tm, _, _) = column_stats(
                &cell
                    .reports
                    .iter()
                    .map(|r| r.corr_steiner)
                    .collect::<Vec<_>>(),
            );
            body.push_str(&format!(
                "{},{},{},{}\n",
                fmt_opt(cell.alpha),
                fmt_opt(sm),
                fmt_opt(lm),
                fmt_opt(tm)
            ));
        }
        write_csv(&dir, "alpha_sweep.csv", &meta, &body)?;
    }
    Ok(())
}

fn write_bodies_jsonl(dir: &Path, name: &str, bodies: &[ConvexBody]) -> Result<(), CliError> {
    let mut text = String::new();
    for b in bodies {
        text.push_str(&serde_json::to_string(b).expect("body serializes"));
        text.push('\n');
    }
    fs::write(dir.join(name), text)
        .map_err(|e| CliError::data(format!("cannot write {name}: {e}")))
}

fn read_bodies_jsonl(path: &str) -> Result<Vec<ConvexBody>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read {path}: {e}")))?;
    let mut bodies = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let body: ConvexBody = serde_json::from_str(line).map_err(|e| {
            CliError::data(format!("{path}:{}: invalid body: {e}", lineno + 1))
        })?;
        bodies.push(body);
    }
    if bodies.is_empty() {
        return Err(CliError::data(format!("{path}: no bodies")));
    }
    Ok(bodies)
}

pub fn run_estimate(cfg: &EstimateConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, cfg.seed);
    let xs = read_bodies_jsonl(&cfg.x)?;
    let ys = read_bodies_jsonl(&cfg.y)?;
    let dim = xs[0].dim();
    let ds = build_grid(cfg.grid, cfg.directions, cfg.seed, dim)?;
    let xp = SeriesProfiles::from_bodies(&xs, &ds)?;
    let yp = SeriesProfiles::from_bodies(&ys, &ds)?;
    let rep = report(&xp, &yp)?;
    write_json(
        &dir,
        "report.json",
        &meta,
        serde_json::to_value(&rep).expect("report serializes"),
    )?;
    let body = format!("{}\n{}\n", DependenceReport::CSV_HEADER, rep.csv_row());
    write_csv(&dir, "report.csv", &meta, &body)?;
    write_csv(&dir, "directions.csv", &meta, &ds.nodes_csv())?;
    write_json(
        &dir,
        "directions.json",
        &meta,
        serde_json::to_value(ds.meta()).expect("grid meta serializes"),
    )?;
    Ok(())
}

pub fn run_decay(cfg: &DecayConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, cfg.seed);
    let grid_choice = cfg.grid;
    let directions = cfg.directions;
    let generator = cfg.generator.clone();
    let make = move |n: usize, seed: u64| -> Result<SeriesProfiles, Error> {
        let ds = build_grid(grid_choice, directions, split_seed(seed, 0xD5), 2)?;
        let bodies = match &generator {
            DecayGenerator::DiscAr1 { ar } => gen_disc_series(ar, n, seed)?.bodies,
            DecayGenerator::Triangle { params } => gen_triangle_series(params, n, seed)?,
        };
        SeriesProfiles::from_bodies(&bodies, &ds)
    };
    let sweep = lln_decay_sweep(make, &cfg.n_grid, cfg.reps, cfg.component, cfg.seed)?;
    write_csv(&dir, "decay_norms.csv", &meta, &decay_csv(&sweep))?;
    write_json(
        &dir,
        "decay_slope.json",
        &meta,
        serde_json::json!({
            "component": sweep.comp,
            "n_grid": sweep.n_grid,
            "reps": sweep.reps,
            "mean_norm_sq": sweep.mean_norm_sq,
            "slope": sweep.slope,
            "excluded_smallest": sweep.excluded_smallest,
        }),
    )
}

pub fn run_mse(cfg: &MseConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, cfg.seed);
    let table: RateTable = match cfg.branch {
        MseBranch::Time => {
            let ar = setcorr::process::Ar1Params {
                phi: 0.6,
                innovation_sd: 0.3,
                mean: 2.0,
            };
            let truth = ar.stationary_sd().powi(2);
            let m = *cfg.m_grid.first().ok_or_else(|| {
                CliError::config("time branch needs one entry in m_grid".into())
            })?;
            let grid: Vec<(usize, usize)> = cfg.n_grid.iter().map(|&n| (n, m)).collect();
            mse_rate_sweep(
                move |n, m, seed| {
                    let ds = Arc::new(DirectionSet::equal_angle(m)?);
                    let discs = gen_disc_series(&ar, n, seed)?;
                    Ok((SeriesProfiles::from_bodies(&discs.bodies, &ds)?, None))
                },
                truth,
                &grid,
                cfg.reps,
                setcorr::dependence::Component::Size,
                cfg.seed,
            )?
        }
        MseBranch::Directions => {
            let cov = [[1.0, 0.0], [0.0, 0.04]];
            let truth = (cov[0][0] + cov[1][1]) / 2.0;
            let n = *cfg.n_grid.first().ok_or_else(|| {
                CliError::config("directions branch needs one entry in n_grid".into())
            })?;
            let grid: Vec<(usize, usize)> = cfg.m_grid.iter().map(|&m| (n, m)).collect();
            mse_rate_sweep(
                move |n, m, seed| {
                    let ds = Arc::new(DirectionSet::sample_uniform_antithetic(
                        m.div_ceil(2),
                        split_seed(seed, 1),
                        2,
                    )?);
                    let pts = gen_gaussian_singletons(Vec2::ZERO, cov, n, split_seed(seed, 2))?;
                    Ok((SeriesProfiles::from_bodies(&pts, &ds)?, None))
                },
                truth,
                &grid,
                cfg.reps,
                setcorr::dependence::Component::Loc,
                cfg.seed,
            )?
        }
    };
    write_csv(&dir, "rates.csv", &meta, &table.to_csv())?;
    write_json(
        &dir,
        "rates.json",
        &meta,
        serde_json::json!({
            "component": table.comp,
            "truth": table.truth,
            "cells": table.cells,
            "consecutive_ratios": table.consecutive_ratios(),
        }),
    )
}

pub fn run_mixing(cfg: &MixingConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, cfg.seed);
    let discs = gen_disc_series(&cfg.ar, cfg.n, cfg.seed)?;
    let ds = build_grid(cfg.grid, cfg.directions, split_seed(cfg.seed, 0xD5), 2)?;
    let xs = SeriesProfiles::from_bodies(&discs.bodies, &ds)?;
    let rows = lag_proxy_sweep(&xs, cfg.k_max)?;
    let mut body = String::from("k,proxy_size,proxy_loc,proxy_tot\n");
    for r in &rows {
        body.push_str(&format!(
            "{},{},{},{}\n",
            r.k, r.proxy_size, r.proxy_loc, r.proxy_tot
        ));
    }
    write_csv(&dir, "mixing.csv", &meta, &body)?;
    Ok(())
}

pub fn run_regress(cfg: &RegressConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, 0);
    let text = fs::read_to_string(&cfg.data)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", cfg.data)))?;
    let ds = IntervalDataset::from_csv(&text)?;
    let fitted = fit(&ds)?;
    write_json(
        &dir,
        "fit.json",
        &meta,
        serde_json::to_value(&fitted).expect("fit serializes"),
    )
}

#[derive(serde::Deserialize)]
struct RobustInstance {
    rows: Vec<RobustRow>,
    x: Vec<f64>,
}

pub fn run_robust(cfg: &RobustConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, 0);
    let text = fs::read_to_string(&cfg.instance)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", cfg.instance)))?;
    let inst: RobustInstance = serde_json::from_str(&text)
        .map_err(|e| CliError::data(format!("{}: {e}", cfg.instance)))?;
    let outcome = robust_feasible(&inst.x, &inst.rows)?;
    write_json(
        &dir,
        "robust.json",
        &meta,
        serde_json::to_value(&outcome).expect("outcome serializes"),
    )
}

pub fn run_steiner(cfg: &SteinerConfig, out: &str) -> Result<(), CliError> {
    let dir = ensure_out_dir(out)?;
    let meta = OutputMeta::new(cfg, 0);
    let text = fs::read_to_string(&cfg.body)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", cfg.body)))?;
    let body: ConvexBody = serde_json::from_str(&text)
        .map_err(|e| CliError::data(format!("{}: {e}", cfg.body)))?;
    let exact = body.steiner();
    let ds = match body.dim() {
        1 => DirectionSet::two_point_1d(),
        _ => DirectionSet::equal_angle(cfg.directions)?,
    };
    let quad = steiner_quadrature(&profile(&body, &ds)?, &ds)?;
    write_json(
        &dir,
        "steiner.json",
        &meta,
        serde_json::json!({
            "exact": exact.coords(),
            "quadrature": quad.coords(),
            "quadrature_directions": ds.len(),
        }),
    )
}
