//! Empirical checks of the variance-decay and estimator-rate guarantees.
//!
//! The partial-sum statistic is the centered time average of a profile
//! component, measured in the sphere L2 norm. Its second moment decays like
//! 1/n for summably dependent series; `lln_decay_sweep` fits that rate and
//! `chebyshev_check` verifies the tail bound on an ensemble. `mse_rate_sweep`
//! measures how the covariance estimator's error splits between the time
//! dimension (1/n) and the direction dimension (1/M).
//!
//! The population mean entering the partial sum is unknown in practice, so
//! sweep drivers center against the per-direction mean pooled across the
//! whole replication ensemble. Centering a series against its own mean
//! would collapse the statistic to zero identically; pooled centering
//! perturbs the norm only at O(1/(reps*n)), far below every band checked
//! here.

use serde::{Deserialize, Serialize};

use crate::dependence::{cov_component, Component, SeriesProfiles};
use crate::error::{Error, Result};
use crate::numeric::{linear_fit, mean, CompensatedSum};
use crate::seed::split_seed;

/// `L2(sigma)` norm of the centered time average of one component.
///
/// `node_means` supplies the centering profile (population means when
/// known, pooled estimates otherwise) and must have one entry per node.
pub fn partial_sum_norm(
    series: &SeriesProfiles,
    comp: Component,
    node_means: &[f64],
) -> Result<f64> {
    let m = series.ds().len();
    if node_means.len() != m {
        return Err(Error::Structural(format!(
            "{} node means for {} nodes",
            node_means.len(),
            m
        )));
    }
    let mut centered = vec![0.0; m];
    for (j, slot) in centered.iter_mut().enumerate() {
        *slot = mean(series.node_series(comp, j)) - node_means[j];
    }
    series.ds().l2_norm(&centered)
}

/// Per-node time averages of a component, the building block for pooled
/// centering.
pub fn node_means(series: &SeriesProfiles, comp: Component) -> Vec<f64> {
    (0..series.ds().len())
        .map(|j| mean(series.node_series(comp, j)))
        .collect()
}

/// Average the per-node means of many replications into one pooled profile.
pub fn pooled_node_means(per_rep: &[Vec<f64>]) -> Result<Vec<f64>> {
    let first = per_rep
        .first()
        .ok_or_else(|| Error::InsufficientData("no replications".into()))?;
    let m = first.len();
    let mut pooled = vec![0.0; m];
    for (j, slot) in pooled.iter_mut().enumerate() {
        let mut acc = CompensatedSum::new();
        for rep in per_rep {
            acc.add(rep[j]);
        }
        *slot = acc.value() / per_rep.len() as f64;
    }
    Ok(pooled)
}

/// Outcome of the sphere-integrated Chebyshev tail check.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ChebyshevCheck {
    pub eps: f64,
    /// Fraction of replications with norm at or above eps.
    pub empirical_prob: f64,
    /// Monte-Carlo variance bound divided by eps^2.
    pub bound: f64,
    pub binomial_se: f64,
    /// True when the frequency respects the bound within three binomial
    /// standard errors.
    pub satisfied: bool,
}

/// Check the tail bound on an ensemble of squared partial-sum norms.
pub fn chebyshev_check(norms_sq: &[f64], eps: f64) -> Result<ChebyshevCheck> {
    if norms_sq.len() < 100 {
        return Err(Error::InsufficientData(format!(
            "chebyshev check needs at least 100 replications, got {}",
            norms_sq.len()
        )));
    }
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidParameter(
            "eps must be a positive finite real".into(),
        ));
    }
    let reps = norms_sq.len() as f64;
    let hits = norms_sq.iter().filter(|&&v| v >= eps * eps).count() as f64;
    let empirical_prob = hits / reps;
    let bound = mean(norms_sq) / (eps * eps);
    let binomial_se = (empirical_prob * (1.0 - empirical_prob) / reps).sqrt();
    Ok(ChebyshevCheck {
        eps,
        empirical_prob,
        bound,
        binomial_se,
        satisfied: empirical_prob <= bound + 3.0 * binomial_se,
    })
}

/// Result of a decay sweep over series lengths.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecaySweep {
    pub comp: Component,
    pub n_grid: Vec<usize>,
    pub reps: usize,
    /// norms_sq[i][r] is the squared norm for n_grid[i], replication r.
    pub norms_sq: Vec<Vec<f64>>,
    pub mean_norm_sq: Vec<f64>,
    /// Fitted log-log slope; absent for degenerate (all-zero) sweeps.
    pub slope: Option<f64>,
    /// True when the smallest n was dropped from the fit by the residual
    /// rule (residual beyond twice the fit RMSE).
    pub excluded_smallest: bool,
}

/// Estimate the decay rate of `E ||S_n||^2` over a grid of lengths.
///
/// `generate` maps `(n, seed)` to a series; replication seeds are split
/// deterministically from `base_seed`.
pub fn lln_decay_sweep<G>(
    generate: G,
    n_grid: &[usize],
    reps: usize,
    comp: Component,
    base_seed: u64,
) -> Result<DecaySweep>
where
    G: Fn(usize, u64) -> Result<SeriesProfiles>,
{
    if reps < 20 {
        return Err(Error::InvalidParameter(
            "decay sweep needs at least 20 replications".into(),
        ));
    }
    if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "n grid must be strictly increasing and nonempty".into(),
        ));
    }
    let mut norms_sq = Vec::with_capacity(n_grid.len());
    for (i, &n) in n_grid.iter().enumerate() {
        let mut series = Vec::with_capacity(reps);
        for r in 0..reps {
            let seed = split_seed(base_seed, (i * reps + r) as u64);
            series.push(generate(n, seed)?);
        }
        let per_rep_means: Vec<Vec<f64>> = series.iter().map(|s| node_means(s, comp)).collect();
        let pooled = pooled_node_means(&per_rep_means)?;
        let mut cell = Vec::with_capacity(reps);
        for s in &series {
            let norm = partial_sum_norm(s, comp, &pooled)?;
            cell.push(norm * norm);
        }
        norms_sq.push(cell);
    }
    let mean_norm_sq: Vec<f64> = norms_sq.iter().map(|cell| mean(cell)).collect();

    let mut slope = None;
    let mut excluded_smallest = false;
    if mean_norm_sq.iter().all(|&v| v > 0.0) && n_grid.len() >= 2 {
        let log_n: Vec<f64> = n_grid.iter().map(|&n| (n as f64).ln()).collect();
        let log_v: Vec<f64> = mean_norm_sq.iter().map(|&v| v.ln()).collect();
        let (s, b) = linear_fit(&log_n, &log_v);
        // Drop the smallest n when it sits off the line: pre-asymptotic bias.
        if n_grid.len() >= 3 {
            let residuals: Vec<f64> = log_n
                .iter()
                .zip(&log_v)
                .map(|(&x, &y)| y - (s * x + b))
                .collect();
            let rmse = (residuals.iter().map(|r| r * r).sum::<f64>() / residuals.len() as f64)
                .sqrt();
            if residuals[0].abs() > 2.0 * rmse {
                let (s2, _) = linear_fit(&log_n[1..], &log_v[1..]);
                slope = Some(s2);
                excluded_smallest = true;
            }
        }
        if slope.is_none() {
            slope = Some(s);
        }
    }
    Ok(DecaySweep {
        comp,
        n_grid: n_grid.to_vec(),
        reps,
        norms_sq,
        mean_norm_sq,
        slope,
        excluded_smallest,
    })
}

/// CSV rows `comp,n,rep,norm_sq` for a decay sweep.
pub fn decay_csv(sweep: &DecaySweep) -> String {
    let mut out = String::from("comp,n,rep,norm_sq\n");
    for (i, &n) in sweep.n_grid.iter().enumerate() {
        for (r, v) in sweep.norms_sq[i].iter().enumerate() {
            out.push_str(&format!("{},{n},{r},{v}\n", sweep.comp.name()));
        }
    }
    out
}

/// One cell of an estimator mean-squared-error table.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RateCell {
    pub n: usize,
    pub m: usize,
    pub reps: usize,
    pub mse: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RateTable {
    pub comp: Component,
    pub truth: f64,
    pub cells: Vec<RateCell>,
}

impl RateTable {
    /// MSE ratios between consecutive cells (later over earlier).
    pub fn consecutive_ratios(&self) -> Vec<f64> {
        self.cells
            .windows(2)
            .map(|w| w[1].mse / w[0].mse)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("comp,n,m,reps,mse\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.comp.name(),
                c.n,
                c.m,
                c.reps,
                c.mse
            ));
        }
        out
    }
}

/// Empirical MSE of the component covariance estimator against a known
/// truth, over a grid of `(n, M)` cells.
///
/// `generate` maps `(n, m, seed)` to a series pair; the second element may
/// be `None` when the pair is the series with itself (a variance target).
pub fn mse_rate_sweep<G>(
    generate: G,
    truth: f64,
    grid: &[(usize, usize)],
    reps: usize,
    comp: Component,
    base_seed: u64,
) -> Result<RateTable>
where
    G: Fn(usize, usize, u64) -> Result<(SeriesProfiles, Option<SeriesProfiles>)>,
{
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty rate grid".into()));
    }
    if reps < 20 {
        return Err(Error::InvalidParameter(
            "rate sweep needs at least 20 replications".into(),
        ));
    }
    let mut cells = Vec::with_capacity(grid.len());
    for (i, &(n, m)) in grid.iter().enumerate() {
        let mut acc = CompensatedSum::new();
        for r in 0..reps {
            let seed = split_seed(base_seed, (i * reps + r) as u64);
            let (xs, ys) = generate(n, m, seed)?;
            let est = match &ys {
                Some(ys) => cov_component(&xs, ys, comp)?,
                None => cov_component(&xs, &xs, comp)?,
            };
            let err = est - truth;
            acc.add(err * err);
        }
        cells.push(RateCell {
            n,
            m,
            reps,
            mse: acc.value() / reps as f64,
        });
    }
    Ok(RateTable {
        comp,
        truth,
        cells,
    })
}
