//! Interval regression through the support loss, and robust feasibility of
//! interval linear constraints.
//!
//! On the two-point sphere the support loss of an interval prediction
//! splits exactly into a midpoint term and a radius term, so the minimizer
//! is a pair of ordinary least-squares fits. The radius fit is
//! unconstrained; predictions enter the loss through `|x' gamma|` and a
//! count of negative fitted radii is reported as a diagnostic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{jacobi_eigenvalues, solve_linear, CompensatedSum};

/// Condition numbers of the normal equations above this trigger a warning
/// flag on the fit.
pub const CONDITION_WARN: f64 = 1e10;

/// Interval-valued regression data: covariate rows, midpoint responses,
/// radius responses.
#[derive(Clone, Debug)]
pub struct IntervalDataset {
    x: Vec<Vec<f64>>,
    c: Vec<f64>,
    r: Vec<f64>,
}

impl IntervalDataset {
    pub fn new(x: Vec<Vec<f64>>, c: Vec<f64>, r: Vec<f64>) -> Result<IntervalDataset> {
        let n = x.len();
        if n == 0 {
            return Err(Error::InsufficientData("empty dataset".into()));
        }
        let p = x[0].len();
        if p == 0 {
            return Err(Error::InvalidParameter("no covariates".into()));
        }
        if n <= p {
            return Err(Error::InsufficientData(format!(
                "need more rows than covariates: n={n}, p={p}"
            )));
        }
        if c.len() != n || r.len() != n {
            return Err(Error::Structural(format!(
                "row counts disagree: x={n}, c={}, r={}",
                c.len(),
                r.len()
            )));
        }
        for (i, row) in x.iter().enumerate() {
            if row.len() != p {
                return Err(Error::Structural(format!(
                    "covariate row {i} has {} entries, expected {p}",
                    row.len()
                )));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Data(format!("non-finite covariate in row {i}")));
            }
        }
        for (i, (&ci, &ri)) in c.iter().zip(&r).enumerate() {
            if !ci.is_finite() || !ri.is_finite() {
                return Err(Error::Data(format!("non-finite response in row {i}")));
            }
            if ri < 0.0 {
                return Err(Error::Data(format!("negative radius {ri} in row {i}")));
            }
        }
        Ok(IntervalDataset { x, c, r })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn p(&self) -> usize {
        self.x[0].len()
    }

    pub fn covariates(&self) -> &[Vec<f64>] {
        &self.x
    }

    pub fn midpoints(&self) -> &[f64] {
        &self.c
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    /// Parse the documented CSV layout: header `x1,...,xp,c,r`, one row per
    /// observation.
    pub fn from_csv(text: &str) -> Result<IntervalDataset> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Data("empty CSV".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols.len() < 3 || cols[cols.len() - 2] != "c" || cols[cols.len() - 1] != "r" {
            return Err(Error::Data(
                "expected header x1,...,xp,c,r with trailing c and r columns".into(),
            ));
        }
        let p = cols.len() - 2;
        let mut x = Vec::new();
        let mut c = Vec::new();
        let mut r = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != p + 2 {
                return Err(Error::Data(format!(
                    "row {} has {} fields, expected {}",
                    lineno + 2,
                    fields.len(),
                    p + 2
                )));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| Error::Data(format!("bad number {s:?} on row {}", lineno + 2)))
            };
            let mut row = Vec::with_capacity(p);
            for f in &fields[..p] {
                row.push(parse(f)?);
            }
            x.push(row);
            c.push(parse(fields[p])?);
            r.push(parse(fields[p + 1])?);
        }
        IntervalDataset::new(x, c, r)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Mean squared support distance between observed intervals and the
/// predictions `[x'beta - |x'gamma|, x'beta + |x'gamma|]`, evaluated on the
/// two-point sphere with equal weights.
pub fn support_loss(ds: &IntervalDataset, beta: &[f64], gamma: &[f64]) -> Result<f64> {
    if beta.len() != ds.p() || gamma.len() != ds.p() {
        return Err(Error::DimensionMismatch(format!(
            "coefficients of length {}/{} for {} covariates",
            beta.len(),
            gamma.len(),
            ds.p()
        )));
    }
    let mut acc = CompensatedSum::new();
    for i in 0..ds.n() {
        let b = dot(&ds.x[i], beta);
        let g = dot(&ds.x[i], gamma).abs();
        // Support values at u = +1 and u = -1.
        let h_pos = ds.c[i] + ds.r[i];
        let h_neg = ds.r[i] - ds.c[i];
        let p_pos = b + g;
        let p_neg = g - b;
        acc.add(0.5 * ((h_pos - p_pos) * (h_pos - p_pos) + (h_neg - p_neg) * (h_neg - p_neg)));
    }
    Ok(acc.value() / ds.n() as f64)
}

/// Decoupled least-squares fit of midpoints and radii.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IntervalFit {
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub loss: f64,
    /// Rows whose fitted radius `x' gamma` came out negative.
    pub negative_radius_count: usize,
    /// Condition number of the normal-equation matrix.
    pub condition_number: f64,
    pub condition_warning: bool,
}

/// Solve both ordinary least-squares problems through the normal equations
/// (pivoted elimination), evaluate the loss at the optimum, and report the
/// negative-radius diagnostic.
pub fn fit(ds: &IntervalDataset) -> Result<IntervalFit> {
    let n = ds.n();
    let p = ds.p();
    let mut xtx = vec![0.0; p * p];
    let mut xtc = vec![0.0; p];
    let mut xtr = vec![0.0; p];
    for i in 0..n {
        let row = &ds.x[i];
        for a in 0..p {
            for b in a..p {
                xtx[a * p + b] += row[a] * row[b];
            }
            xtc[a] += row[a] * ds.c[i];
            xtr[a] += row[a] * ds.r[i];
        }
    }
    for a in 0..p {
        for b in 0..a {
            xtx[a * p + b] = xtx[b * p + a];
        }
    }
    let beta = solve_linear(xtx.clone(), xtc, p)
        .map_err(|column| Error::RankDeficient { column })?;
    let gamma = solve_linear(xtx.clone(), xtr, p)
        .map_err(|column| Error::RankDeficient { column })?;

    let eig = jacobi_eigenvalues(xtx, p);
    let max = eig.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition_number = if min > 0.0 { max / min } else { f64::INFINITY };

    let negative_radius_count = ds
        .x
        .iter()
        .filter(|row| dot(row, &gamma) < 0.0)
        .count();
    let loss = support_loss(ds, &beta, &gamma)?;
    Ok(IntervalFit {
        beta,
        gamma,
        loss,
        negative_radius_count,
        condition_number,
        condition_warning: condition_number > CONDITION_WARN,
    })
}

/// Closed interval with midpoint/radius views, for robust constraints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Interval> {
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(Error::Data(format!("malformed interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn mid(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn rad(self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Interval> {
        Interval::new(v[0], v[1])
    }
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> [f64; 2] {
        [i.lo, i.hi]
    }
}

/// One row of an interval-valued constraint system `A x <= B`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RobustRow {
    pub a: Vec<Interval>,
    pub b: Interval,
}

/// Outcome of the worst-case feasibility test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RobustOutcome {
    pub feasible: bool,
    /// Worst-case slack `C_j(x) + S_j(x)` per row; feasible iff all <= 0.
    pub slack: Vec<f64>,
}

/// Robust feasibility of `x`: per row, the worst realization of
/// `a' x - b` over the interval coefficients equals the midpoint shift
/// `C_j(x)` plus the uncertainty inflation `S_j(x)`.
pub fn robust_feasible(x: &[f64], rows: &[RobustRow]) -> Result<RobustOutcome> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Data("non-finite decision vector".into()));
    }
    let mut slack = Vec::with_capacity(rows.len());
    for (j, row) in rows.iter().enumerate() {
        if row.a.len() != x.len() {
            return Err(Error::Structural(format!(
                "row {j} has {} coefficients for {} variables",
                row.a.len(),
                x.len()
            )));
        }
        let mut shift = -row.b.mid();
        let mut inflation = row.b.rad();
        for (ak, &xk) in row.a.iter().zip(x) {
            shift += ak.mid() * xk;
            inflation += ak.rad() * xk.abs();
        }
        slack.push(shift + inflation);
    }
    Ok(RobustOutcome {
        feasible: slack.iter().all(|&s| s <= 0.0),
        slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn synthetic(n: usize, seed: u64) -> (IntervalDataset, Vec<f64>, Vec<f64>) {
        // Intercept plus two covariates; gamma chosen so radii stay positive.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let beta = vec![1.0, -2.0, 0.5];
        let gamma = vec![2.0, 0.3, -0.2];
        let mut x = Vec::with_capacity(n);
        let mut c = Vec::with_capacity(n);
        let mut r = Vec::with_capacity(n);
        for _ in 0..n {
            let row = vec![
                1.0,
                rng.random::<f64>() * 2.0 - 1.0,
                rng.random::<f64>() * 2.0 - 1.0,
            ];
            c.push(dot(&row, &beta));
            r.push(dot(&row, &gamma));
            x.push(row);
        }
        (IntervalDataset::new(x, c, r).unwrap(), beta, gamma)
    }

    #[test]
    fn loss_examples() {
        let (ds, beta, gamma) = synthetic(50, 1);
        // Perfect fit.
        assert!(support_loss(&ds, &beta, &gamma).unwrap() <= 1e-28);
        // Zero coefficients: mean of C^2 + R^2.
        let zero = vec![0.0; 3];
        let mut expect = 0.0;
        for i in 0..ds.n() {
            expect += ds.midpoints()[i].powi(2) + ds.radii()[i].powi(2);
        }
        expect /= ds.n() as f64;
        let got = support_loss(&ds, &zero, &zero).unwrap();
        assert!((got - expect).abs() <= 1e-12 * expect.max(1.0));
    }

    #[test]
    fn two_node_loss_equals_midpoint_radius_form() {
        let (ds, _, _) = synthetic(80, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let beta: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let gamma: Vec<f64> = (0..3).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
            let via_sphere = support_loss(&ds, &beta, &gamma).unwrap();
            let mut direct = 0.0;
            for i in 0..ds.n() {
                let b = dot(&ds.covariates()[i], &beta);
                let g = dot(&ds.covariates()[i], &gamma).abs();
                direct += (ds.midpoints()[i] - b).powi(2) + (ds.radii()[i] - g).powi(2);
            }
            direct /= ds.n() as f64;
            assert!(
                (via_sphere - direct).abs() <= 1e-14 * direct.max(1.0),
                "{via_sphere} vs {direct}"
            );
        }
    }

    #[test]
    fn noiseless_fit_recovers_coefficients() {
        let (ds, beta, gamma) = synthetic(120, 4);
        let fitted = fit(&ds).unwrap();
        for (a, b) in fitted.beta.iter().zip(&beta) {
            assert!((a - b).abs() <= 1e-10);
        }
        for (a, b) in fitted.gamma.iter().zip(&gamma) {
            assert!((a - b).abs() <= 1e-10);
        }
        assert_eq!(fitted.negative_radius_count, 0);
        assert!(!fitted.condition_warning);
    }

    #[test]
    fn fit_matches_naive_normal_equation_oracle() {
        let (ds, _, _) = synthetic(90, 5);
        let p = ds.p();
        // Unpivoted textbook elimination as an independent reference.
        #[allow(clippy::needless_range_loop)]
        let naive_solve = |mut a: Vec<Vec<f64>>, mut b: Vec<f64>| -> Vec<f64> {
            let n = b.len();
            for k in 0..n {
                for i in (k + 1)..n {
                    let f = a[i][k] / a[k][k];
                    for j in k..n {
                        a[i][j] -= f * a[k][j];
                    }
                    b[i] -= f * b[k];
                }
            }
            let mut x = vec![0.0; n];
            for i in (0..n).rev() {
                let mut s = b[i];
                for j in (i + 1)..n {
                    s -= a[i][j] * x[j];
                }
                x[i] = s / a[i][i];
            }
            x
        };
        let mut xtx = vec![vec![0.0; p]; p];
        let mut xtc = vec![0.0; p];
        let mut xtr = vec![0.0; p];
        #[allow(clippy::needless_range_loop)]
        for i in 0..ds.n() {
            for a in 0..p {
                for b in 0..p {
                    xtx[a][b] += ds.covariates()[i][a] * ds.covariates()[i][b];
                }
                xtc[a] += ds.covariates()[i][a] * ds.midpoints()[i];
                xtr[a] += ds.covariates()[i][a] * ds.radii()[i];
            }
        }
        let beta_oracle = naive_solve(xtx.clone(), xtc);
        let gamma_oracle = naive_solve(xtx, xtr);
        let fitted = fit(&ds).unwrap();
        for (a, b) in fitted.beta.iter().zip(&beta_oracle) {
            assert!((a - b).abs() <= 1e-12);
        }
        for (a, b) in fitted.gamma.iter().zip(&gamma_oracle) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn intercept_only_fit_is_the_mean() {
        let x = vec![vec![1.0]; 6];
        let c = vec![1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let r = vec![1.0, 1.0, 2.0, 2.0, 3.0, 3.0];
        let ds = IntervalDataset::new(x, c, r).unwrap();
        let fitted = fit(&ds).unwrap();
        assert!((fitted.beta[0] - 3.5).abs() <= 1e-12);
        assert!((fitted.gamma[0] - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn rank_deficiency_names_the_column() {
        // Third column duplicates the second.
        let mut x = Vec::new();
        let mut c = Vec::new();
        let r = vec![1.0; 8];
        for i in 0..8 {
            let v = i as f64;
            x.push(vec![1.0, v, v]);
            c.push(v);
        }
        let ds = IntervalDataset::new(x, c, r).unwrap();
        match fit(&ds) {
            Err(Error::RankDeficient { column }) => assert_eq!(column, 2),
            other => panic!("expected rank deficiency, got {other:?}"),
        }
    }

    #[test]
    fn fit_minimizes_the_loss_over_random_probes() {
        // Radii are exact, midpoints carry noise: the fitted loss bounds any
        // probed coefficient pair from below.
        let (clean, beta, gamma) = synthetic(100, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let noisy_c: Vec<f64> = clean
            .midpoints()
            .iter()
            .map(|&v| v + 0.3 * (rng.random::<f64>() - 0.5))
            .collect();
        let ds = IntervalDataset::new(
            clean.covariates().to_vec(),
            noisy_c,
            clean.radii().to_vec(),
        )
        .unwrap();
        let fitted = fit(&ds).unwrap();
        for _ in 0..100 {
            let probe_beta: Vec<f64> = beta
                .iter()
                .map(|&b| b + 0.5 * (rng.random::<f64>() - 0.5))
                .collect();
            let probe_gamma: Vec<f64> = gamma
                .iter()
                .map(|&g| g + 0.5 * (rng.random::<f64>() - 0.5))
                .collect();
            let probed = support_loss(&ds, &probe_beta, &probe_gamma).unwrap();
            assert!(fitted.loss <= probed + 1e-12, "probe beat the fit");
        }
    }

    #[test]
    fn degenerate_intervals_reduce_to_linear_constraints() {
        let rows = vec![
            RobustRow {
                a: vec![Interval::new(2.0, 2.0).unwrap()],
                b: Interval::new(3.0, 3.0).unwrap(),
            },
        ];
        // 2x <= 3 at x = 1.4: feasible.
        let out = robust_feasible(&[1.4], &rows).unwrap();
        assert!(out.feasible);
        assert!((out.slack[0] - (2.8 - 3.0)).abs() <= 1e-15);
        // At x = 1.6: infeasible.
        assert!(!robust_feasible(&[1.6], &rows).unwrap().feasible);
    }

    #[test]
    fn single_constraint_hand_example() {
        // a in [1,3], b = 2, x = 0.5: shift (2*0.5 - 2) plus inflation
        // (1*0.5) gives slack -0.5.
        let rows = vec![RobustRow {
            a: vec![Interval::new(1.0, 3.0).unwrap()],
            b: Interval::new(2.0, 2.0).unwrap(),
        }];
        let out = robust_feasible(&[0.5], &rows).unwrap();
        assert!((out.slack[0] + 0.5).abs() <= 1e-15);
        assert!(out.feasible);
    }

    #[test]
    fn feasibility_agrees_with_corner_enumeration() {
        // Dyadic decision values keep both routes exact, so the comparison
        // is free of boundary rounding.
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let mut int_in = |lo: i64, hi: i64| -> i64 { rng.random_range(lo..=hi) };
        for _ in 0..1000 {
            let vars = int_in(1, 3) as usize;
            let nrows = int_in(1, 3) as usize;
            let mut rows = Vec::with_capacity(nrows);
            for _ in 0..nrows {
                let mut a = Vec::with_capacity(vars);
                for _ in 0..vars {
                    let lo = int_in(-2, 2);
                    let hi = int_in(lo, 2);
                    a.push(Interval::new(lo as f64, hi as f64).unwrap());
                }
                let blo = int_in(-2, 2);
                let bhi = int_in(blo, 2);
                rows.push(RobustRow {
                    a,
                    b: Interval::new(blo as f64, bhi as f64).unwrap(),
                });
            }
            let mut rng2 = ChaCha8Rng::seed_from_u64(int_in(0, i64::MAX) as u64);
            let x: Vec<f64> = (0..vars)
                .map(|_| rng2.random_range(-8i64..=8) as f64 / 4.0)
                .collect();

            // Oracle: enumerate every corner of every row.
            let mut oracle_feasible = true;
            for row in &rows {
                let mut worst = f64::NEG_INFINITY;
                let corners = 1usize << row.a.len();
                for mask in 0..corners {
                    for &b in &[row.b.lo(), row.b.hi()] {
                        let mut v = -b;
                        for (k, ak) in row.a.iter().enumerate() {
                            let a = if mask >> k & 1 == 0 { ak.lo() } else { ak.hi() };
                            v += a * x[k];
                        }
                        worst = worst.max(v);
                    }
                }
                if worst > 0.0 {
                    oracle_feasible = false;
                }
            }
            let got = robust_feasible(&x, &rows).unwrap();
            assert_eq!(got.feasible, oracle_feasible, "x={x:?} rows={rows:?}");
        }
    }

    #[test]
    fn csv_ingestion_round_trip() {
        let text = "x1,x2,c,r\n1,0.5,2.0,1.0\n1,-0.5,1.0,0.5\n1,0.25,1.5,0.75\n1,0.75,2.5,1.25\n";
        let ds = IntervalDataset::from_csv(text).unwrap();
        assert_eq!(ds.n(), 4);
        assert_eq!(ds.p(), 2);
        assert_eq!(ds.midpoints()[0], 2.0);
        assert!(IntervalDataset::from_csv("x1,c\n1,2\n").is_err());
        assert!(IntervalDataset::from_csv("x1,c,r\n1,2\n").is_err());
    }
}
