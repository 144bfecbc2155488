//! Sampled support profiles and their even-odd (size-location) split.
//!
//! For a profile `h` on an antithetic direction set, the even part
//! `W(u) = (h(u) + h(-u))/2` carries size, the odd part
//! `C(u) = (h(u) - h(-u))/2` carries location, and the Steiner-centered
//! residual `C_res(u) = C(u) - <s, u>` carries the directional location
//! information no point summary can. Antipodes are resolved through the
//! stored pair index, never by searching coordinates, so the parity
//! identities hold exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody, Direction, Point};
use crate::numeric::CompensatedSum;
use crate::sphere::DirectionSet;

/// Per-node support samples of one body over one direction set.
#[derive(Clone, Debug)]
pub struct SupportProfile {
    h: Vec<f64>,
    ds_id: u64,
}

impl SupportProfile {
    pub fn values(&self) -> &[f64] {
        &self.h
    }

    pub fn ds_id(&self) -> u64 {
        self.ds_id
    }
}

/// Sample the support function of `body` at every node of `ds`.
pub fn profile(body: &ConvexBody, ds: &DirectionSet) -> Result<SupportProfile> {
    if body.dim() != ds.dim() {
        return Err(Error::DimensionMismatch(format!(
            "body of dimension {} on a dimension-{} direction set",
            body.dim(),
            ds.dim()
        )));
    }
    let mut h = Vec::with_capacity(ds.len());
    for &u in ds.nodes() {
        h.push(body.support(u)?);
    }
    Ok(SupportProfile { h, ds_id: ds.id() })
}

/// Where the Steiner vector of a decomposition came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SteinerSource {
    /// Closed form on the exact body.
    Exact,
    /// Quadrature of `d * u h(u)` over the same direction set.
    Quadrature,
}

/// Even/odd/residual components of one support profile.
#[derive(Clone, Debug)]
pub struct DecompProfile {
    h: Vec<f64>,
    w: Vec<f64>,
    c: Vec<f64>,
    c_res: Vec<f64>,
    steiner: Point,
    steiner_source: SteinerSource,
    ds_id: u64,
}

impl DecompProfile {
    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn c_res(&self) -> &[f64] {
        &self.c_res
    }

    pub fn steiner(&self) -> Point {
        self.steiner
    }

    pub fn steiner_source(&self) -> SteinerSource {
        self.steiner_source
    }

    pub fn ds_id(&self) -> u64 {
        self.ds_id
    }

    /// CSV rows `ux,uy,weight,h,W,C,C_res` over the originating grid.
    pub fn to_csv(&self, ds: &DirectionSet) -> Result<String> {
        if ds.id() != self.ds_id {
            return Err(Error::Structural(
                "profile was sampled on a different direction set".into(),
            ));
        }
        let mut out = String::from("ux,uy,weight,h,W,C,C_res\n");
        for (j, u) in ds.nodes().iter().enumerate() {
            let (ux, uy) = match u {
                Direction::Dim1(s) => (*s, 0.0),
                Direction::Dim2(v) => (v.x, v.y),
            };
            out.push_str(&format!(
                "{ux},{uy},{},{},{},{},{}\n",
                ds.weights()[j],
                self.h[j],
                self.w[j],
                self.c[j],
                self.c_res[j]
            ));
        }
        Ok(out)
    }
}

/// Split a profile into even, odd, and Steiner-residual parts.
///
/// The antipodal value is looked up through the stored pair index, so
/// `W(u) = W(-u)` and `C(u) = -C(-u)` hold bitwise.
pub fn decompose(
    p: &SupportProfile,
    ds: &DirectionSet,
    steiner: Point,
    source: SteinerSource,
) -> Result<DecompProfile> {
    if p.ds_id != ds.id() {
        return Err(Error::Structural(
            "profile was sampled on a different direction set".into(),
        ));
    }
    if steiner.dim() != ds.dim() {
        return Err(Error::DimensionMismatch(
            "steiner vector vs direction set".into(),
        ));
    }
    let m = ds.len();
    let mut w = Vec::with_capacity(m);
    let mut c = Vec::with_capacity(m);
    let mut c_res = Vec::with_capacity(m);
    for j in 0..m {
        let anti = ds.antipode(j);
        let even = 0.5 * (p.h[j] + p.h[anti]);
        let odd = 0.5 * (p.h[j] - p.h[anti]);
        w.push(even);
        c.push(odd);
        let lin = ds.nodes()[j].dot_point(steiner)?;
        c_res.push(odd - lin);
    }
    Ok(DecompProfile {
        h: p.h.clone(),
        w,
        c,
        c_res,
        steiner,
        steiner_source: source,
        ds_id: p.ds_id,
    })
}

/// Profile and decompose in one step, using the exact Steiner point.
pub fn decompose_body(body: &ConvexBody, ds: &DirectionSet) -> Result<DecompProfile> {
    let p = profile(body, ds)?;
    decompose(&p, ds, body.steiner(), SteinerSource::Exact)
}

/// Steiner point from quadrature: `d * sum_j w_j u_j h_j`.
pub fn steiner_quadrature(p: &SupportProfile, ds: &DirectionSet) -> Result<Point> {
    if p.ds_id != ds.id() {
        return Err(Error::Structural(
            "profile was sampled on a different direction set".into(),
        ));
    }
    match ds.dim() {
        1 => {
            let mut acc = CompensatedSum::new();
            for (j, u) in ds.nodes().iter().enumerate() {
                let s = match u {
                    Direction::Dim1(s) => *s,
                    _ => unreachable!(),
                };
                acc.add(ds.weights()[j] * s * p.h[j]);
            }
            Ok(Point::Dim1(acc.value()))
        }
        2 => {
            let mut ax = CompensatedSum::new();
            let mut ay = CompensatedSum::new();
            for (j, u) in ds.nodes().iter().enumerate() {
                let v = match u {
                    Direction::Dim2(v) => *v,
                    _ => unreachable!(),
                };
                ax.add(ds.weights()[j] * v.x * p.h[j]);
                ay.add(ds.weights()[j] * v.y * p.h[j]);
            }
            Ok(Point::Dim2(crate::geometry::Vec2::new(
                2.0 * ax.value(),
                2.0 * ay.value(),
            )))
        }
        d => Err(Error::UnsupportedDimension(d)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;

    fn triangle() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn unit_disc_profile_is_constant_one() {
        let ds = DirectionSet::equal_angle(16).unwrap();
        let disc = ConvexBody::disc(Vec2::ZERO, 1.0).unwrap();
        let p = profile(&disc, &ds).unwrap();
        assert!(p.values().iter().all(|&h| (h - 1.0).abs() <= 1e-15));
    }

    #[test]
    fn interval_profile_on_the_two_point_sphere() {
        let ds = DirectionSet::two_point_1d();
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        let p = profile(&iv, &ds).unwrap();
        assert_eq!(p.values(), &[3.0, -1.0]);
    }

    #[test]
    fn triangle_profile_matches_vertex_max() {
        let ds = DirectionSet::equal_angle(8).unwrap();
        let t = triangle();
        let p = profile(&t, &ds).unwrap();
        for (j, u) in ds.nodes().iter().enumerate() {
            let v = match u {
                Direction::Dim2(v) => *v,
                _ => unreachable!(),
            };
            let expect = [Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)]
                .iter()
                .map(|p| v.dot(*p))
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(p.values()[j], expect);
        }
    }

    #[test]
    fn singleton_decomposition_is_purely_linear() {
        let ds = DirectionSet::sample_uniform_antithetic(16, 5, 2).unwrap();
        let xi = Point::Dim2(Vec2::new(0.7, -0.2));
        let body = ConvexBody::Singleton(xi);
        let d = decompose_body(&body, &ds).unwrap();
        assert!(d.w().iter().all(|&w| w == 0.0));
        for (j, u) in ds.nodes().iter().enumerate() {
            assert_eq!(d.c()[j], u.dot_point(xi).unwrap());
        }
        assert!(d.c_res().iter().all(|&r| r == 0.0));
    }

    #[test]
    fn centrally_symmetric_body_has_no_odd_part() {
        let ds = DirectionSet::equal_angle(32).unwrap();
        let disc = ConvexBody::disc(Vec2::ZERO, 2.0).unwrap();
        let d = decompose_body(&disc, &ds).unwrap();
        assert!(d.c().iter().all(|&c| c == 0.0));
        assert!(d.w().iter().all(|&w| (w - 2.0).abs() <= 1e-15));
    }

    #[test]
    fn interval_split_into_radius_and_midpoint() {
        let ds = DirectionSet::two_point_1d();
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        let d = decompose_body(&iv, &ds).unwrap();
        // W is the radius, C(u) = midpoint * u.
        assert_eq!(d.w(), &[1.0, 1.0]);
        assert_eq!(d.c(), &[2.0, -2.0]);
        assert_eq!(d.c_res(), &[0.0, 0.0]);
    }

    #[test]
    fn parity_identities_are_exact() {
        let ds = DirectionSet::sample_uniform_antithetic(32, 42, 2).unwrap();
        let d = decompose_body(&triangle(), &ds).unwrap();
        for (i, j) in ds.pairs() {
            assert_eq!(d.w()[i], d.w()[j]);
            assert_eq!(d.c()[i], -d.c()[j]);
        }
        for j in 0..ds.len() {
            assert!((d.w()[j] + d.c()[j] - d.h()[j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn sign_flip_swaps_odd_only() {
        let ds = DirectionSet::equal_angle(64).unwrap();
        let body = triangle();
        let pos = decompose_body(&body, &ds).unwrap();
        let neg = decompose_body(&body.negate(), &ds).unwrap();
        for j in 0..ds.len() {
            assert_eq!(pos.w()[j], neg.w()[j]);
            assert_eq!(pos.c()[j], -neg.c()[j]);
        }
    }

    #[test]
    fn translation_shifts_odd_keeps_residual() {
        let ds = DirectionSet::equal_angle(64).unwrap();
        let t = Vec2::new(0.8, -1.3);
        let base = decompose_body(&triangle(), &ds).unwrap();
        let moved = decompose_body(&triangle().translate(Point::Dim2(t)).unwrap(), &ds).unwrap();
        for (j, u) in ds.nodes().iter().enumerate() {
            let v = match u {
                Direction::Dim2(v) => *v,
                _ => unreachable!(),
            };
            assert!((moved.w()[j] - base.w()[j]).abs() <= 1e-12);
            assert!((moved.c()[j] - base.c()[j] - v.dot(t)).abs() <= 1e-12);
            // Residual is translation invariant once the Steiner point is
            // recomputed for the moved body.
            assert!((moved.c_res()[j] - base.c_res()[j]).abs() <= 1e-12);
        }
    }

    #[test]
    fn residual_has_no_linear_component() {
        let ds = DirectionSet::equal_angle(256).unwrap();
        let d = decompose_body(&triangle(), &ds).unwrap();
        for axis in [Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)] {
            let f: Vec<f64> = ds
                .nodes()
                .iter()
                .zip(d.c_res())
                .map(|(u, &r)| match u {
                    Direction::Dim2(v) => r * v.dot(axis),
                    _ => unreachable!(),
                })
                .collect();
            assert!(ds.integrate(&f).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn quadrature_steiner_approaches_exact() {
        for m in [512usize, 2048] {
            let ds = DirectionSet::equal_angle(m).unwrap();
            let p = profile(&triangle(), &ds).unwrap();
            match steiner_quadrature(&p, &ds).unwrap() {
                Point::Dim2(s) => {
                    assert!((s.x - 0.375).abs() < 1e-3, "m={m}: {}", s.x);
                    assert!((s.y - 0.375).abs() < 1e-3, "m={m}: {}", s.y);
                }
                _ => unreachable!(),
            }
        }
        // 1-d: recovers the midpoint exactly.
        let ds1 = DirectionSet::two_point_1d();
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        let p1 = profile(&iv, &ds1).unwrap();
        assert_eq!(steiner_quadrature(&p1, &ds1).unwrap(), Point::Dim1(2.0));
    }

    #[test]
    fn profiles_respect_subadditivity() {
        // Spot check of convexity: for grid nodes u, v two steps apart, the
        // bisecting node w satisfies |u + v| h(w) <= h(u) + h(v).
        let ds = DirectionSet::equal_angle(64).unwrap();
        let bodies = [
            triangle(),
            ConvexBody::disc(Vec2::new(0.4, -0.2), 1.5).unwrap(),
            ConvexBody::singleton_2d(0.3, 0.9),
        ];
        for body in &bodies {
            let p = profile(body, &ds).unwrap();
            let m = ds.len();
            for j in 0..m {
                let k = (j + 2) % m;
                let mid = (j + 1) % m;
                let (u, v) = (ds.nodes()[j], ds.nodes()[k]);
                let sum_norm = match (u, v) {
                    (Direction::Dim2(a), Direction::Dim2(b)) => (a + b).norm(),
                    _ => unreachable!(),
                };
                let lhs = sum_norm * p.values()[mid];
                let rhs = p.values()[j] + p.values()[k];
                assert!(lhs <= rhs + 1e-12, "subadditivity at node {j}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn csv_export_carries_all_columns() {
        let ds = DirectionSet::equal_angle(4).unwrap();
        let d = decompose_body(&triangle(), &ds).unwrap();
        let csv = d.to_csv(&ds).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "ux,uy,weight,h,W,C,C_res");
        assert_eq!(lines.len(), 5);
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 7);
            for field in line.split(',') {
                field.parse::<f64>().unwrap();
            }
        }
        let other = DirectionSet::equal_angle(8).unwrap();
        assert!(d.to_csv(&other).is_err());
    }

    #[test]
    fn mismatched_direction_set_is_structural_error() {
        let ds_a = DirectionSet::equal_angle(8).unwrap();
        let ds_b = DirectionSet::equal_angle(16).unwrap();
        let p = profile(&triangle(), &ds_a).unwrap();
        assert!(matches!(
            decompose(&p, &ds_b, triangle().steiner(), SteinerSource::Exact),
            Err(Error::Structural(_))
        ));
    }
}
