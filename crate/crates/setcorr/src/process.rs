//! Weakly stationary set-valued time series generators.
//!
//! All randomness flows through ChaCha8 seeded explicitly; independent
//! streams (per coordinate, per replication, per paired series) take
//! sub-seeds from [`crate::seed::split_seed`], so a scenario is a pure
//! function of its configuration.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::dependence::{Component, SeriesProfiles};
use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Vec2};
use crate::numeric::{bessel_var, mean};
use crate::seed::split_seed;

/// Multiplicative shape factors are clamped to this range; positive factors
/// keep the perturbed triangle strictly convex for any draw.
pub const SHAPE_FACTOR_CLAMP: (f64, f64) = (0.4, 2.5);

/// Disc radii never drop below this floor.
pub const DISC_RADIUS_FLOOR: f64 = 0.05;

/// Gaussian AR(1) parameters. Paths start in the stationary marginal, so no
/// burn-in is needed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ar1Params {
    pub phi: f64,
    pub innovation_sd: f64,
    pub mean: f64,
}

impl Ar1Params {
    pub fn new(phi: f64, innovation_sd: f64, mean: f64) -> Result<Ar1Params> {
        let p = Ar1Params {
            phi,
            innovation_sd,
            mean,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.phi.is_finite() || self.phi.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "AR(1) needs |phi| < 1, got {}",
                self.phi
            )));
        }
        if !self.innovation_sd.is_finite() || self.innovation_sd < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "innovation sd must be a nonnegative real, got {}",
                self.innovation_sd
            )));
        }
        if !self.mean.is_finite() {
            return Err(Error::InvalidParameter("AR(1) mean must be finite".into()));
        }
        Ok(())
    }

    /// Standard deviation of the stationary marginal.
    pub fn stationary_sd(&self) -> f64 {
        self.innovation_sd / (1.0 - self.phi * self.phi).sqrt()
    }
}

fn gen_ar1_with(p: &Ar1Params, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut out = Vec::with_capacity(n);
    if n == 0 {
        return out;
    }
    let mut x = p.mean + p.stationary_sd() * normal.sample(rng);
    out.push(x);
    for _ in 1..n {
        let eps: f64 = p.innovation_sd * normal.sample(rng);
        x = p.mean + p.phi * (x - p.mean) + eps;
        out.push(x);
    }
    out
}

/// Stationary Gaussian AR(1) path of length `n`, deterministic per seed.
pub fn gen_ar1(p: &Ar1Params, n: usize, seed: u64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(gen_ar1_with(p, n, &mut rng))
}

/// Dynamics of the asymmetric-triangle series: AR(1) translation per
/// coordinate, multiplicative AR(1) factors on the vertex offsets, and an
/// AR(1) rotation angle about the template centroid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleParams {
    pub base_vertices: [Vec2; 3],
    pub center_ar: Ar1Params,
    pub shape_ar: Ar1Params,
    pub orientation_ar: Ar1Params,
}

impl Default for TriangleParams {
    fn default() -> Self {
        TriangleParams {
            base_vertices: [
                Vec2::new(0.0, 0.0),
                Vec2::new(1.4, 0.2),
                Vec2::new(0.3, 1.0),
            ],
            center_ar: Ar1Params {
                phi: 0.6,
                innovation_sd: 0.3,
                mean: 0.0,
            },
            shape_ar: Ar1Params {
                phi: 0.5,
                innovation_sd: 0.15,
                mean: 1.0,
            },
            orientation_ar: Ar1Params {
                phi: 0.7,
                innovation_sd: 0.2,
                mean: 0.0,
            },
        }
    }
}

impl TriangleParams {
    pub fn validate(&self) -> Result<()> {
        self.center_ar.validate()?;
        self.shape_ar.validate()?;
        self.orientation_ar.validate()?;
        ConvexBody::polygon(self.base_vertices.to_vec())
            .map_err(|e| Error::InvalidParameter(format!("template triangle: {e}")))?;
        Ok(())
    }

    fn centroid(&self) -> Vec2 {
        let s = self.base_vertices[0] + self.base_vertices[1] + self.base_vertices[2];
        s * (1.0 / 3.0)
    }
}

/// The AR paths driving one triangle series.
///
/// Sub-seed streams: 0 and 1 translate the centroid, 2..4 scale the three
/// vertex offsets, 5 rotates.
struct TrianglePaths {
    center_x: Vec<f64>,
    center_y: Vec<f64>,
    shape: [Vec<f64>; 3],
    orient: Vec<f64>,
}

fn triangle_paths(tp: &TriangleParams, n: usize, seed: u64) -> Result<TrianglePaths> {
    Ok(TrianglePaths {
        center_x: gen_ar1(&tp.center_ar, n, split_seed(seed, 0))?,
        center_y: gen_ar1(&tp.center_ar, n, split_seed(seed, 1))?,
        shape: [
            gen_ar1(&tp.shape_ar, n, split_seed(seed, 2))?,
            gen_ar1(&tp.shape_ar, n, split_seed(seed, 3))?,
            gen_ar1(&tp.shape_ar, n, split_seed(seed, 4))?,
        ],
        orient: gen_ar1(&tp.orientation_ar, n, split_seed(seed, 5))?,
    })
}

fn assemble_triangles(tp: &TriangleParams, paths: &TrianglePaths) -> Result<Vec<ConvexBody>> {
    let c0 = tp.centroid();
    let offsets = [
        tp.base_vertices[0] - c0,
        tp.base_vertices[1] - c0,
        tp.base_vertices[2] - c0,
    ];
    let (f_lo, f_hi) = SHAPE_FACTOR_CLAMP;
    let n = paths.center_x.len();
    let mut bodies = Vec::with_capacity(n);
    for t in 0..n {
        let shift = Vec2::new(paths.center_x[t], paths.center_y[t]);
        let angle = paths.orient[t];
        let mut vertices = Vec::with_capacity(3);
        for (k, offset) in offsets.iter().enumerate() {
            let factor = paths.shape[k][t].clamp(f_lo, f_hi);
            vertices.push(c0 + shift + (*offset * factor).rotated(angle));
        }
        let body = ConvexBody::polygon(vertices).map_err(|e| {
            Error::Generation(format!(
                "triangle degenerate at index {t} even after clamping shape factors: {e}"
            ))
        })?;
        bodies.push(body);
    }
    Ok(bodies)
}

/// Asymmetric triangles with AR(1) translation, shape, and orientation.
pub fn gen_triangle_series(tp: &TriangleParams, n: usize, seed: u64) -> Result<Vec<ConvexBody>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    tp.validate()?;
    assemble_triangles(tp, &triangle_paths(tp, n, seed)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScenarioId {
    S1,
    S2,
    S3,
    S4,
}

impl std::str::FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<ScenarioId> {
        match s {
            "S1" | "s1" => Ok(ScenarioId::S1),
            "S2" | "s2" => Ok(ScenarioId::S2),
            "S3" | "s3" => Ok(ScenarioId::S3),
            "S4" | "s4" => Ok(ScenarioId::S4),
            other => Err(Error::InvalidParameter(format!(
                "unknown scenario {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScenarioId::S1 => "S1",
            ScenarioId::S2 => "S2",
            ScenarioId::S3 => "S3",
            ScenarioId::S4 => "S4",
        })
    }
}

/// One paired-series dependence scenario.
///
/// `alpha` is required for S4 (mixing weight in `[0, 1]`) and ignored
/// elsewhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scenario {
    pub id: ScenarioId,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub triangle: TriangleParams,
}

/// Build the `(X_i, Y_i)` body pair for a scenario.
///
/// S1 flips the sign of every body. S2 reuses the translation path of X and
/// draws fresh shape and orientation. S3 shares shape and orientation and
/// draws a fresh translation. S4 combines a Steiner-centered negated copy
/// of X with an independent copy Z:
///
/// `Y_i = (-alpha) (X_i - s(X_i))  +  (1 - alpha) Z_i`.
///
/// Centering the X term removes its Steiner contribution, so the Steiner
/// path of Y carries no trace of X at any alpha, while the size and
/// residual-location channels still interpolate to the S1 behavior at
/// alpha = 1.
pub fn build_scenario(sc: &Scenario) -> Result<(Vec<ConvexBody>, Vec<ConvexBody>)> {
    if sc.n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    sc.triangle.validate()?;
    let seed_x = split_seed(sc.seed, 0x58);
    let seed_y = split_seed(sc.seed, 0x59);
    let seed_z = split_seed(sc.seed, 0x5A);
    let paths_x = triangle_paths(&sc.triangle, sc.n, seed_x)?;
    let xs = assemble_triangles(&sc.triangle, &paths_x)?;
    let ys = match sc.id {
        ScenarioId::S1 => xs.iter().map(|b| b.negate()).collect(),
        ScenarioId::S2 => {
            let mut paths_y = triangle_paths(&sc.triangle, sc.n, seed_y)?;
            paths_y.center_x = paths_x.center_x.clone();
            paths_y.center_y = paths_x.center_y.clone();
            assemble_triangles(&sc.triangle, &paths_y)?
        }
        ScenarioId::S3 => {
            let mut paths_y = triangle_paths(&sc.triangle, sc.n, seed_y)?;
            paths_y.shape = paths_x.shape.clone();
            paths_y.orient = paths_x.orient.clone();
            assemble_triangles(&sc.triangle, &paths_y)?
        }
        ScenarioId::S4 => {
            let alpha = sc.alpha.ok_or_else(|| {
                Error::InvalidParameter("scenario S4 needs an alpha in [0, 1]".into())
            })?;
            if !(0.0..=1.0).contains(&alpha) {
                return Err(Error::InvalidParameter(format!(
                    "alpha must lie in [0, 1], got {alpha}"
                )));
            }
            let zs = assemble_triangles(&sc.triangle, &triangle_paths(&sc.triangle, sc.n, seed_z)?)?;
            let mut ys = Vec::with_capacity(sc.n);
            for (x, z) in xs.iter().zip(&zs) {
                let centered = x.translate(x.steiner().negated())?;
                let left = centered.scale(-alpha);
                let right = z.scale(1.0 - alpha);
                ys.push(left.minkowski_sum(&right)?);
            }
            ys
        }
    };
    Ok((xs, ys))
}

/// Origin-centered discs with AR(1) radii, floored at
/// [`DISC_RADIUS_FLOOR`]. `clamp_count` says how many radii hit the floor;
/// runs where clamping is more than a trace do not represent the unclamped
/// process faithfully.
#[derive(Clone, Debug)]
pub struct DiscSeries {
    pub bodies: Vec<ConvexBody>,
    pub clamp_count: usize,
}

pub fn gen_disc_series(r_params: &Ar1Params, n: usize, seed: u64) -> Result<DiscSeries> {
    let radii = gen_ar1(r_params, n, seed)?;
    let mut clamp_count = 0;
    let mut bodies = Vec::with_capacity(n);
    for r in radii {
        let radius = if r < DISC_RADIUS_FLOOR {
            clamp_count += 1;
            DISC_RADIUS_FLOOR
        } else {
            r
        };
        bodies.push(ConvexBody::disc(Vec2::ZERO, radius)?);
    }
    Ok(DiscSeries {
        bodies,
        clamp_count,
    })
}

/// I.i.d. Gaussian singleton bodies with the given mean and covariance.
pub fn gen_gaussian_singletons(
    mean: Vec2,
    cov: [[f64; 2]; 2],
    n: usize,
    seed: u64,
) -> Result<Vec<ConvexBody>> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n >= 1".into()));
    }
    if (cov[0][1] - cov[1][0]).abs() > 1e-12 * (1.0 + cov[0][1].abs()) {
        return Err(Error::InvalidParameter(
            "covariance matrix must be symmetric".into(),
        ));
    }
    let a = cov[0][0];
    let b = cov[0][1];
    let d = cov[1][1];
    if a < 0.0 || d < 0.0 {
        return Err(Error::InvalidParameter(
            "covariance diagonal must be nonnegative".into(),
        ));
    }
    // Cholesky factor of the 2x2 covariance.
    let l11 = a.sqrt();
    let l21 = if l11 > 0.0 { b / l11 } else { 0.0 };
    let rem = d - l21 * l21;
    if rem < -1e-12 * d.max(1.0) {
        return Err(Error::InvalidParameter(
            "covariance matrix is not positive semidefinite".into(),
        ));
    }
    let l22 = rem.max(0.0).sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let z1: f64 = normal.sample(&mut rng);
        let z2: f64 = normal.sample(&mut rng);
        out.push(ConvexBody::singleton_2d(
            mean.x + l11 * z1,
            mean.y + l21 * z1 + l22 * z2,
        ));
    }
    Ok(out)
}

/// Half-split weak-stationarity diagnostic.
///
/// Splits the series in two, compares per-direction means of W and C, and
/// scores the differences against a long-run standard error from batch
/// means (8 batches per half), which absorbs serial dependence.
#[derive(Clone, Debug)]
pub struct StationarityCheck {
    pub max_abs_z: f64,
    /// Fraction of (node, component) cells with |z| above 4.
    pub violating_fraction: f64,
}

pub fn stationarity_check(series: &SeriesProfiles) -> Result<StationarityCheck> {
    let n = series.n();
    if n < 64 {
        return Err(Error::InsufficientData(
            "stationarity check needs n >= 64".into(),
        ));
    }
    let half = n / 2;
    let batches = 8;
    let m = series.ds().len();
    let mut max_abs_z = 0.0f64;
    let mut violations = 0usize;
    let mut cells = 0usize;
    for comp in [Component::Size, Component::Loc] {
        for node in 0..m {
            let values = series.node_series(comp, node);
            let a = &values[..half];
            let b = &values[half..2 * half];
            let batch_means = |xs: &[f64]| -> Vec<f64> {
                let len = xs.len() / batches;
                (0..batches)
                    .map(|i| mean(&xs[i * len..(i + 1) * len]))
                    .collect()
            };
            let ma = batch_means(a);
            let mb = batch_means(b);
            // Variance of a half mean is roughly var(batch means) / batches.
            let se_sq = (bessel_var(&ma) + bessel_var(&mb)) / batches as f64;
            let diff = mean(a) - mean(b);
            let z = if se_sq > 0.0 {
                diff / se_sq.sqrt()
            } else if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            };
            max_abs_z = max_abs_z.max(z.abs());
            if z.abs() > 4.0 {
                violations += 1;
            }
            cells += 1;
        }
    }
    Ok(StationarityCheck {
        max_abs_z,
        violating_fraction: violations as f64 / cells as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dependence::{corr_component, report, Component, SeriesProfiles};
    use crate::geometry::Point;
    use crate::numeric::{bessel_cov, bessel_var, mean};
    use crate::sphere::DirectionSet;
    use std::sync::Arc;

    #[test]
    fn ar1_zero_phi_is_iid() {
        let p = Ar1Params {
            phi: 0.0,
            innovation_sd: 1.0,
            mean: 0.0,
        };
        let xs = gen_ar1(&p, 50_000, 1).unwrap();
        let lag1 = bessel_cov(&xs[..xs.len() - 1], &xs[1..]) / bessel_var(&xs);
        assert!(lag1.abs() < 0.02, "lag-1 autocorr {lag1}");
    }

    #[test]
    fn ar1_autocorrelation_matches_phi() {
        let p = Ar1Params {
            phi: 0.6,
            innovation_sd: 0.5,
            mean: 2.0,
        };
        let xs = gen_ar1(&p, 100_000, 2).unwrap();
        let lag1 = bessel_cov(&xs[..xs.len() - 1], &xs[1..]) / bessel_var(&xs);
        assert!((lag1 - 0.6).abs() < 0.01, "lag-1 autocorr {lag1}");
        assert!((mean(&xs) - 2.0).abs() < 0.05);
    }

    #[test]
    fn ar1_zero_sd_is_constant() {
        let p = Ar1Params {
            phi: 0.5,
            innovation_sd: 0.0,
            mean: 3.0,
        };
        let xs = gen_ar1(&p, 100, 3).unwrap();
        assert!(xs.iter().all(|&x| x == 3.0));
    }

    #[test]
    fn ar1_rejects_unit_root() {
        assert!(gen_ar1(
            &Ar1Params {
                phi: 1.0,
                innovation_sd: 1.0,
                mean: 0.0
            },
            10,
            0
        )
        .is_err());
    }

    #[test]
    fn frozen_triangles_reproduce_the_template() {
        let mut tp = TriangleParams::default();
        tp.center_ar.innovation_sd = 0.0;
        tp.shape_ar.innovation_sd = 0.0;
        tp.orientation_ar.innovation_sd = 0.0;
        let bodies = gen_triangle_series(&tp, 5, 7).unwrap();
        let template = ConvexBody::polygon(tp.base_vertices.to_vec()).unwrap();
        for b in &bodies {
            match (b, &template) {
                (ConvexBody::Polygon(got), ConvexBody::Polygon(want)) => {
                    for (g, w) in got.vertices().iter().zip(want.vertices()) {
                        assert!((g.x - w.x).abs() < 1e-12 && (g.y - w.y).abs() < 1e-12);
                    }
                }
                _ => panic!("expected polygons"),
            }
        }
    }

    #[test]
    fn center_only_dynamics_freeze_the_size_profile() {
        let mut tp = TriangleParams::default();
        tp.shape_ar.innovation_sd = 0.0;
        tp.orientation_ar.innovation_sd = 0.0;
        let bodies = gen_triangle_series(&tp, 50, 11).unwrap();
        let ds = Arc::new(DirectionSet::equal_angle(16).unwrap());
        let xs = SeriesProfiles::from_bodies(&bodies, &ds).unwrap();
        for node in 0..ds.len() {
            let w = xs.node_series(Component::Size, node);
            let w0 = w[0];
            assert!(w.iter().all(|&v| (v - w0).abs() <= 1e-12));
        }
    }

    #[test]
    fn steiner_path_follows_the_center_process() {
        let tp = TriangleParams::default();
        let n = 2000;
        let bodies = gen_triangle_series(&tp, n, 13).unwrap();
        let steiner_x: Vec<f64> = bodies
            .iter()
            .map(|b| match b.steiner() {
                Point::Dim2(s) => s.x,
                _ => unreachable!(),
            })
            .collect();
        let lag1 = bessel_cov(&steiner_x[..n - 1], &steiner_x[1..]) / bessel_var(&steiner_x);
        // The center path dominates the Steiner point, so the lag-1
        // autocorrelation sits near the center phi.
        assert!((lag1 - tp.center_ar.phi).abs() < 0.1, "steiner lag1 {lag1}");
    }

    #[test]
    fn scenario_series_are_seed_deterministic() {
        let sc = Scenario {
            id: ScenarioId::S4,
            n: 20,
            seed: 5,
            alpha: Some(0.5),
            triangle: TriangleParams::default(),
        };
        let (xa, ya) = build_scenario(&sc).unwrap();
        let (xb, yb) = build_scenario(&sc).unwrap();
        assert_eq!(xa, xb);
        assert_eq!(ya, yb);
    }

    #[test]
    fn s1_pairs_are_negations() {
        let sc = Scenario {
            id: ScenarioId::S1,
            n: 10,
            seed: 77,
            alpha: None,
            triangle: TriangleParams::default(),
        };
        let (xs, ys) = build_scenario(&sc).unwrap();
        for (x, y) in xs.iter().zip(&ys) {
            assert_eq!(&x.negate(), y);
        }
    }

    #[test]
    fn s4_alpha_zero_gives_independent_copy() {
        let sc = Scenario {
            id: ScenarioId::S4,
            n: 600,
            seed: 21,
            alpha: Some(0.0),
            triangle: TriangleParams::default(),
        };
        let (xs, ys) = build_scenario(&sc).unwrap();
        let ds = Arc::new(DirectionSet::equal_angle(32).unwrap());
        let xp = SeriesProfiles::from_bodies(&xs, &ds).unwrap();
        let yp = SeriesProfiles::from_bodies(&ys, &ds).unwrap();
        for comp in [Component::Size, Component::LocRes, Component::Tot] {
            let r = corr_component(&xp, &yp, comp).unwrap().unwrap();
            assert!(
                r.abs() < 0.15,
                "{comp:?} correlation {r} for independent pair"
            );
        }
    }

    #[test]
    fn s4_alpha_one_matches_s1_statistics() {
        let s4 = Scenario {
            id: ScenarioId::S4,
            n: 500,
            seed: 33,
            alpha: Some(1.0),
            triangle: TriangleParams::default(),
        };
        let (xs, ys) = build_scenario(&s4).unwrap();
        let ds = Arc::new(DirectionSet::equal_angle(32).unwrap());
        let xp = SeriesProfiles::from_bodies(&xs, &ds).unwrap();
        let yp = SeriesProfiles::from_bodies(&ys, &ds).unwrap();
        let rep = report(&xp, &yp).unwrap();
        // Y is a translated negation of X, so size and residual location
        // correlate exactly as in S1.
        assert!((rep.corr_size.unwrap() - 1.0).abs() <= 1e-10);
        assert!((rep.corr_loc_res.unwrap() + 1.0).abs() <= 1e-10);
    }

    #[test]
    fn s4_steiner_stays_invisible() {
        let n = 2000;
        for (stream, alpha) in [(0usize, 0.0), (1, 0.25), (2, 0.5), (3, 0.75), (4, 1.0)] {
            let sc = Scenario {
                id: ScenarioId::S4,
                n,
                seed: split_seed(4242, stream as u64),
                alpha: Some(alpha),
                triangle: TriangleParams::default(),
            };
            let (xs, ys) = build_scenario(&sc).unwrap();
            let ds = Arc::new(DirectionSet::equal_angle(16).unwrap());
            let xp = SeriesProfiles::from_bodies(&xs, &ds).unwrap();
            let yp = SeriesProfiles::from_bodies(&ys, &ds).unwrap();
            let rep = report(&xp, &yp).unwrap();
            // Undefined means the Y Steiner path is constant, which is as
            // invisible as it gets.
            let r = rep.corr_steiner.unwrap_or(0.0);
            assert!(
                r.abs() <= 3.0 / (n as f64).sqrt(),
                "alpha {alpha}: steiner correlation {r}"
            );
        }
    }

    #[test]
    fn disc_series_is_symmetric_and_clamps_rarely() {
        let params = Ar1Params {
            phi: 0.6,
            innovation_sd: 0.3,
            mean: 2.0,
        };
        let discs = gen_disc_series(&params, 5000, 3).unwrap();
        assert_eq!(discs.clamp_count, 0);
        for b in &discs.bodies {
            match b {
                ConvexBody::Disc(d) => {
                    assert_eq!(d.center(), Vec2::ZERO);
                    assert!(d.radius() >= DISC_RADIUS_FLOOR);
                }
                _ => panic!("expected disc"),
            }
        }
        let constant = gen_disc_series(
            &Ar1Params {
                phi: 0.0,
                innovation_sd: 0.0,
                mean: 2.0,
            },
            10,
            4,
        )
        .unwrap();
        for b in &constant.bodies {
            match b {
                ConvexBody::Disc(d) => assert_eq!(d.radius(), 2.0),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn gaussian_singletons_match_target_covariance() {
        let cov = [[1.0, 0.4], [0.4, 0.5]];
        let pts = gen_gaussian_singletons(Vec2::new(1.0, -1.0), cov, 60_000, 9).unwrap();
        let xs: Vec<f64> = pts
            .iter()
            .map(|b| match b {
                ConvexBody::Singleton(Point::Dim2(p)) => p.x,
                _ => unreachable!(),
            })
            .collect();
        let ys: Vec<f64> = pts
            .iter()
            .map(|b| match b {
                ConvexBody::Singleton(Point::Dim2(p)) => p.y,
                _ => unreachable!(),
            })
            .collect();
        assert!((mean(&xs) - 1.0).abs() < 0.02);
        assert!((bessel_var(&xs) - 1.0).abs() < 0.03);
        assert!((bessel_cov(&xs, &ys) - 0.4).abs() < 0.02);
        assert!((bessel_var(&ys) - 0.5).abs() < 0.02);
    }

    #[test]
    fn generated_series_pass_the_stationarity_diagnostic() {
        let bodies = gen_triangle_series(&TriangleParams::default(), 4096, 17).unwrap();
        let ds = Arc::new(DirectionSet::equal_angle(16).unwrap());
        let xs = SeriesProfiles::from_bodies(&bodies, &ds).unwrap();
        let check = stationarity_check(&xs).unwrap();
        assert!(
            check.violating_fraction <= 0.02,
            "violating fraction {} (max |z| {})",
            check.violating_fraction,
            check.max_abs_z
        );
    }
}
