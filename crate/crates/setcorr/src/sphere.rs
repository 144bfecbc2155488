//! Direction sets on the unit sphere with quadrature weights.
//!
//! Every set is antithetically closed: each node stores the index of its
//! antipode, and antipodal coordinates are exact bitwise negations of each
//! other. Integration groups each antipodal pair before accumulating, so
//! integrals of odd-symmetric samples cancel to exactly zero and the usual
//! even-odd orthogonality holds in floating point, not just in expectation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::Direction;
use crate::numeric::CompensatedSum;
use crate::seed::fnv1a64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    RandomAntithetic,
    EqualAngle2d,
    TwoPoint1d,
}

/// Quadrature nodes and weights realizing the normalized surface measure.
#[derive(Clone, Debug)]
pub struct DirectionSet {
    nodes: Vec<Direction>,
    weights: Vec<f64>,
    antipode: Vec<usize>,
    kind: GridKind,
    dim: usize,
    seed: Option<u64>,
    id: u64,
}

impl DirectionSet {
    /// `pairs` antithetic pairs of directions drawn uniformly from the
    /// seeded generator; uniform weights. In one dimension the sphere has
    /// only the pair `{+1, -1}`, repeated to keep the node count.
    pub fn sample_uniform_antithetic(pairs: usize, seed: u64, dim: usize) -> Result<DirectionSet> {
        if pairs == 0 {
            return Err(Error::InvalidParameter("need at least one pair".into()));
        }
        let mut nodes = Vec::with_capacity(2 * pairs);
        match dim {
            1 => {
                for _ in 0..pairs {
                    nodes.push(Direction::Dim1(1.0));
                    nodes.push(Direction::Dim1(-1.0));
                }
            }
            2 => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..pairs {
                    let theta: f64 = rng.random::<f64>() * TAU;
                    let u = Direction::from_angle(theta);
                    nodes.push(u);
                    nodes.push(u.antipode());
                }
            }
            d => return Err(Error::UnsupportedDimension(d)),
        }
        let weight = 1.0 / (2 * pairs) as f64;
        let antipode = (0..2 * pairs).map(|i| i ^ 1).collect();
        Ok(DirectionSet::assemble(
            nodes,
            vec![weight; 2 * pairs],
            antipode,
            GridKind::RandomAntithetic,
            dim,
            Some(seed),
        ))
    }

    /// Deterministic equal-angle grid on the circle, `m` even so the grid is
    /// antithetically closed. The second half is stored as the bitwise
    /// negation of the first half.
    pub fn equal_angle(m: usize) -> Result<DirectionSet> {
        if m < 4 || !m.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "equal-angle grid needs an even node count of at least 4, got {m}"
            )));
        }
        let half = m / 2;
        let mut nodes = vec![Direction::Dim1(1.0); m];
        for j in 0..half {
            let u = Direction::from_angle(TAU * j as f64 / m as f64);
            nodes[j] = u;
            nodes[j + half] = u.antipode();
        }
        let antipode = (0..m).map(|j| (j + half) % m).collect();
        Ok(DirectionSet::assemble(
            nodes,
            vec![1.0 / m as f64; m],
            antipode,
            GridKind::EqualAngle2d,
            2,
            None,
        ))
    }

    /// The one-dimensional sphere `{-1, +1}` with equal mass on both points.
    pub fn two_point_1d() -> DirectionSet {
        DirectionSet::assemble(
            vec![Direction::Dim1(1.0), Direction::Dim1(-1.0)],
            vec![0.5, 0.5],
            vec![1, 0],
            GridKind::TwoPoint1d,
            1,
            None,
        )
    }

    fn assemble(
        nodes: Vec<Direction>,
        weights: Vec<f64>,
        antipode: Vec<usize>,
        kind: GridKind,
        dim: usize,
        seed: Option<u64>,
    ) -> DirectionSet {
        debug_assert_eq!(nodes.len(), weights.len());
        debug_assert_eq!(nodes.len(), antipode.len());
        debug_assert!({
            let mut total = CompensatedSum::new();
            for &w in &weights {
                total.add(w);
            }
            (total.value() - 1.0).abs() <= 1e-14
        });
        debug_assert!(nodes
            .iter()
            .enumerate()
            .all(|(i, u)| nodes[antipode[i]] == u.antipode() && antipode[antipode[i]] == i));
        let mut bytes = Vec::with_capacity(nodes.len() * 24 + 16);
        bytes.push(match kind {
            GridKind::RandomAntithetic => 0u8,
            GridKind::EqualAngle2d => 1,
            GridKind::TwoPoint1d => 2,
        });
        bytes.push(dim as u8);
        for (u, w) in nodes.iter().zip(&weights) {
            for c in u.coords() {
                bytes.extend_from_slice(&c.to_le_bytes());
            }
            bytes.extend_from_slice(&w.to_le_bytes());
        }
        let id = fnv1a64(&bytes);
        DirectionSet {
            nodes,
            weights,
            antipode,
            kind,
            dim,
            seed,
            id,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Content hash; profiles remember it so estimators can insist that all
    /// inputs were sampled on the same grid.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn nodes(&self) -> &[Direction] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn antipode(&self, i: usize) -> usize {
        self.antipode[i]
    }

    /// Antipodal pairs, each reported once as `(i, antipode(i))` with
    /// `i < antipode(i)`, in ascending order of `i`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.antipode
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i < j)
            .map(|(i, &j)| (i, j))
    }

    /// Quadrature `sum_j w_j f_j` with pair-grouped compensated summation.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        if f.len() != self.nodes.len() {
            return Err(Error::Structural(format!(
                "{} samples for {} nodes",
                f.len(),
                self.nodes.len()
            )));
        }
        let mut acc = CompensatedSum::new();
        for (i, j) in self.pairs() {
            // Grouping the pair first makes odd samples cancel exactly.
            acc.add(self.weights[i] * f[i] + self.weights[j] * f[j]);
        }
        Ok(acc.value())
    }

    /// `L^2(sigma)` norm of a per-node sample vector.
    pub fn l2_norm(&self, f: &[f64]) -> Result<f64> {
        let mut sq = Vec::with_capacity(f.len());
        sq.extend(f.iter().map(|v| v * v));
        Ok(self.integrate(&sq)?.max(0.0).sqrt())
    }

    /// CSV rows `ux,uy,weight` (uy fixed at 0 in one dimension).
    pub fn nodes_csv(&self) -> String {
        let mut out = String::from("ux,uy,weight\n");
        for (u, w) in self.nodes.iter().zip(&self.weights) {
            match u {
                Direction::Dim1(s) => out.push_str(&format!("{s},0,{w}\n")),
                Direction::Dim2(v) => out.push_str(&format!("{},{},{w}\n", v.x, v.y)),
            }
        }
        out
    }

    /// Serializable description (kind, seed, node count); the nodes
    /// themselves are reconstructed from it deterministically.
    pub fn meta(&self) -> DirectionSetMeta {
        DirectionSetMeta {
            kind: self.kind,
            dim: self.dim,
            seed: self.seed,
            nodes: self.nodes.len(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionSetMeta {
    pub kind: GridKind,
    pub dim: usize,
    pub seed: Option<u64>,
    pub nodes: usize,
}

impl DirectionSetMeta {
    pub fn build(&self) -> Result<DirectionSet> {
        match self.kind {
            GridKind::EqualAngle2d => DirectionSet::equal_angle(self.nodes),
            GridKind::TwoPoint1d => Ok(DirectionSet::two_point_1d()),
            GridKind::RandomAntithetic => DirectionSet::sample_uniform_antithetic(
                self.nodes / 2,
                self.seed.ok_or_else(|| {
                    Error::InvalidParameter("random direction set needs a seed".into())
                })?,
                self.dim,
            ),
        }
    }
}
