//! Convex compact sets in R^1 and R^2 and their support-function algebra.
//!
//! Bodies are exact: polygons (strictly convex, counterclockwise), closed
//! intervals, discs, and singletons. Support functions evaluate exactly per
//! variant, Minkowski sums stay inside the representable algebra where
//! possible, and Steiner points come from closed forms (exterior turning
//! angles for polygons).

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative tolerance for construction-time validation (unit norms,
/// convexity cross products).
pub const GEOM_TOL: f64 = 1e-12;

/// Plain 2-vector. Serializes as `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from(a: [f64; 2]) -> Self {
        Vec2::new(a[0], a[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl std::ops::Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl std::ops::Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl std::ops::Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl std::ops::Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

/// Point (or displacement) in R^1 or R^2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub enum Point {
    Dim1(f64),
    Dim2(Vec2),
}

impl Point {
    pub fn dim(self) -> usize {
        match self {
            Point::Dim1(_) => 1,
            Point::Dim2(_) => 2,
        }
    }

    pub fn zero(dim: usize) -> Result<Point> {
        match dim {
            1 => Ok(Point::Dim1(0.0)),
            2 => Ok(Point::Dim2(Vec2::ZERO)),
            d => Err(Error::UnsupportedDimension(d)),
        }
    }

    pub fn coords(self) -> Vec<f64> {
        match self {
            Point::Dim1(x) => vec![x],
            Point::Dim2(v) => vec![v.x, v.y],
        }
    }

    pub fn is_finite(self) -> bool {
        match self {
            Point::Dim1(x) => x.is_finite(),
            Point::Dim2(v) => v.is_finite(),
        }
    }

    /// Componentwise sum; fails on mixed dimensions.
    pub fn offset(self, other: Point) -> Result<Point> {
        match (self, other) {
            (Point::Dim1(a), Point::Dim1(b)) => Ok(Point::Dim1(a + b)),
            (Point::Dim2(a), Point::Dim2(b)) => Ok(Point::Dim2(a + b)),
            _ => Err(Error::DimensionMismatch("point addition".into())),
        }
    }

    pub fn scaled(self, a: f64) -> Point {
        match self {
            Point::Dim1(x) => Point::Dim1(a * x),
            Point::Dim2(v) => Point::Dim2(v * a),
        }
    }

    pub fn negated(self) -> Point {
        self.scaled(-1.0)
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Point> {
        match v.as_slice() {
            [x] => Ok(Point::Dim1(*x)),
            [x, y] => Ok(Point::Dim2(Vec2::new(*x, *y))),
            other => Err(Error::UnsupportedDimension(other.len())),
        }
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords()
    }
}

/// Unit vector on the sphere of the ambient dimension.
///
/// `antipode` negates coordinates bitwise, so `u.antipode().antipode() == u`
/// and dot products with the antipode are exact sign flips. Parity
/// identities downstream rely on this.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Direction {
    Dim1(f64),
    Dim2(Vec2),
}

impl Direction {
    pub fn axis_1d(sign: f64) -> Result<Direction> {
        if sign == 1.0 || sign == -1.0 {
            Ok(Direction::Dim1(sign))
        } else {
            Err(Error::InvalidParameter(format!(
                "1-d direction must be +1 or -1, got {sign}"
            )))
        }
    }

    pub fn unit_2d(x: f64, y: f64) -> Result<Direction> {
        let norm = (x * x + y * y).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > GEOM_TOL {
            return Err(Error::InvalidParameter(format!(
                "direction ({x}, {y}) has norm {norm}, expected 1"
            )));
        }
        Ok(Direction::Dim2(Vec2::new(x, y)))
    }

    pub fn from_angle(theta: f64) -> Direction {
        let (s, c) = theta.sin_cos();
        Direction::Dim2(Vec2::new(c, s))
    }

    pub fn dim(self) -> usize {
        match self {
            Direction::Dim1(_) => 1,
            Direction::Dim2(_) => 2,
        }
    }

    pub fn antipode(self) -> Direction {
        match self {
            Direction::Dim1(s) => Direction::Dim1(-s),
            Direction::Dim2(v) => Direction::Dim2(-v),
        }
    }

    pub fn coords(self) -> Vec<f64> {
        match self {
            Direction::Dim1(s) => vec![s],
            Direction::Dim2(v) => vec![v.x, v.y],
        }
    }

    /// Inner product with a point of the same dimension.
    pub fn dot_point(self, p: Point) -> Result<f64> {
        match (self, p) {
            (Direction::Dim1(s), Point::Dim1(x)) => Ok(s * x),
            (Direction::Dim2(u), Point::Dim2(v)) => Ok(u.dot(v)),
            _ => Err(Error::DimensionMismatch("direction vs point".into())),
        }
    }
}

/// Strictly convex polygon, counterclockwise, first vertex lexicographically
/// smallest. Construction validates and canonicalizes.
#[derive(Clone, Debug, PartialEq)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<Vec2>) -> Result<Polygon> {
        validate_polygon(&vertices)?;
        rotate_to_lex_min(&mut vertices);
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }
}

fn validate_polygon(vertices: &[Vec2]) -> Result<()> {
    if vertices.len() < 3 {
        return Err(Error::InvalidBody(format!(
            "polygon needs at least 3 vertices, got {}",
            vertices.len()
        )));
    }
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for v in vertices {
        if !v.is_finite() {
            return Err(Error::InvalidBody("non-finite polygon vertex".into()));
        }
        lo = Vec2::new(lo.x.min(v.x), lo.y.min(v.y));
        hi = Vec2::new(hi.x.max(v.x), hi.y.max(v.y));
    }
    let scale = (hi.x - lo.x).max(hi.y - lo.y);
    if scale <= 0.0 {
        return Err(Error::InvalidBody("all polygon vertices coincide".into()));
    }
    // Cross products carry units of area, hence the squared scale.
    let tol = GEOM_TOL * scale * scale;
    let k = vertices.len();
    for i in 0..k {
        let a = vertices[i];
        let b = vertices[(i + 1) % k];
        let c = vertices[(i + 2) % k];
        let cross = (b - a).cross(c - b);
        if cross <= tol {
            return Err(Error::InvalidBody(format!(
                "vertices {i}..{} are not in strictly convex counterclockwise position",
                (i + 2) % k
            )));
        }
    }
    Ok(())
}

fn rotate_to_lex_min(vertices: &mut [Vec2]) {
    let mut best = 0;
    for i in 1..vertices.len() {
        let v = vertices[i];
        let b = vertices[best];
        if v.x < b.x || (v.x == b.x && v.y < b.y) {
            best = i;
        }
    }
    vertices.rotate_left(best);
}

fn rotate_to_lowest(vertices: &mut [Vec2]) {
    let mut best = 0;
    for i in 1..vertices.len() {
        let v = vertices[i];
        let b = vertices[best];
        if v.y < b.y || (v.y == b.y && v.x < b.x) {
            best = i;
        }
    }
    vertices.rotate_left(best);
}

/// Closed interval `[lo, hi]` on the real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Interval> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidBody("non-finite interval endpoint".into()));
        }
        if lo > hi {
            return Err(Error::InvalidBody(format!(
                "interval endpoints out of order: lo={lo} > hi={hi}"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn midpoint(self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn radius(self) -> f64 {
        0.5 * (self.hi - self.lo)
    }
}

/// Disc in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Disc {
    center: Vec2,
    radius: f64,
}

impl Disc {
    pub fn new(center: Vec2, radius: f64) -> Result<Disc> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidBody("non-finite disc parameters".into()));
        }
        if radius < 0.0 {
            return Err(Error::InvalidBody(format!("negative disc radius {radius}")));
        }
        Ok(Disc { center, radius })
    }

    pub fn center(self) -> Vec2 {
        self.center
    }

    pub fn radius(self) -> f64 {
        self.radius
    }
}

/// Convex compact set, the sample-space object of the whole crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BodyRepr", into = "BodyRepr")]
pub enum ConvexBody {
    Polygon(Polygon),
    Interval(Interval),
    Disc(Disc),
    Singleton(Point),
}

/// Wire format: `{"type": "...", ...}` with vertices counterclockwise from
/// the lexicographically smallest.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum BodyRepr {
    Polygon { vertices: Vec<[f64; 2]> },
    Interval { lo: f64, hi: f64 },
    Disc { center: [f64; 2], radius: f64 },
    Singleton { point: Vec<f64> },
}

impl TryFrom<BodyRepr> for ConvexBody {
    type Error = Error;
    fn try_from(repr: BodyRepr) -> Result<ConvexBody> {
        match repr {
            BodyRepr::Polygon { vertices } => {
                ConvexBody::polygon(vertices.into_iter().map(Vec2::from).collect())
            }
            BodyRepr::Interval { lo, hi } => ConvexBody::interval(lo, hi),
            BodyRepr::Disc { center, radius } => ConvexBody::disc(center.into(), radius),
            BodyRepr::Singleton { point } => {
                let p = Point::try_from(point)?;
                if !p.is_finite() {
                    return Err(Error::InvalidBody("non-finite singleton".into()));
                }
                Ok(ConvexBody::Singleton(p))
            }
        }
    }
}

impl From<ConvexBody> for BodyRepr {
    fn from(body: ConvexBody) -> BodyRepr {
        match body {
            ConvexBody::Polygon(p) => BodyRepr::Polygon {
                vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexBody::Interval(i) => BodyRepr::Interval {
                lo: i.lo,
                hi: i.hi,
            },
            ConvexBody::Disc(d) => BodyRepr::Disc {
                center: d.center.into(),
                radius: d.radius,
            },
            ConvexBody::Singleton(p) => BodyRepr::Singleton { point: p.coords() },
        }
    }
}

impl ConvexBody {
    pub fn polygon(vertices: Vec<Vec2>) -> Result<ConvexBody> {
        Ok(ConvexBody::Polygon(Polygon::new(vertices)?))
    }

    pub fn interval(lo: f64, hi: f64) -> Result<ConvexBody> {
        Ok(ConvexBody::Interval(Interval::new(lo, hi)?))
    }

    pub fn disc(center: Vec2, radius: f64) -> Result<ConvexBody> {
        Ok(ConvexBody::Disc(Disc::new(center, radius)?))
    }

    pub fn singleton_1d(x: f64) -> ConvexBody {
        ConvexBody::Singleton(Point::Dim1(x))
    }

    pub fn singleton_2d(x: f64, y: f64) -> ConvexBody {
        ConvexBody::Singleton(Point::Dim2(Vec2::new(x, y)))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexBody::Polygon(_) | ConvexBody::Disc(_) => 2,
            ConvexBody::Interval(_) => 1,
            ConvexBody::Singleton(p) => p.dim(),
        }
    }

    /// Support function `h(u) = sup { <u, x> : x in body }`.
    pub fn support(&self, u: Direction) -> Result<f64> {
        match (self, u) {
            (ConvexBody::Polygon(p), Direction::Dim2(u)) => {
                let mut best = f64::NEG_INFINITY;
                for v in &p.vertices {
                    let d = u.dot(*v);
                    if d > best {
                        best = d;
                    }
                }
                Ok(best)
            }
            (ConvexBody::Interval(i), Direction::Dim1(s)) => {
                Ok(if s > 0.0 { i.hi * s } else { i.lo * s })
            }
            (ConvexBody::Disc(d), Direction::Dim2(u)) => Ok(u.dot(d.center) + d.radius),
            (ConvexBody::Singleton(Point::Dim1(x)), Direction::Dim1(s)) => Ok(s * x),
            (ConvexBody::Singleton(Point::Dim2(p)), Direction::Dim2(u)) => Ok(u.dot(*p)),
            _ => Err(Error::DimensionMismatch(format!(
                "body of dimension {} vs direction of dimension {}",
                self.dim(),
                u.dim()
            ))),
        }
    }

    /// Minkowski sum within the exact algebra. Polygon+disc and other
    /// smooth/polytopal mixes are rejected; sum their sampled support
    /// profiles instead.
    pub fn minkowski_sum(&self, other: &ConvexBody) -> Result<ConvexBody> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch("minkowski sum".into()));
        }
        use ConvexBody::*;
        match (self, other) {
            (Singleton(p), b) => b.translate(*p),
            (b, Singleton(p)) => b.translate(*p),
            (Interval(a), Interval(b)) => ConvexBody::interval(a.lo + b.lo, a.hi + b.hi),
            (Disc(a), Disc(b)) => ConvexBody::disc(a.center + b.center, a.radius + b.radius),
            (Polygon(a), Polygon(b)) => Ok(Polygon(minkowski_polygons(a, b)?)),
            (a, b) => Err(Error::UnsupportedCombination(format!(
                "{} + {}",
                a.variant_name(),
                b.variant_name()
            ))),
        }
    }

    /// Scale by any real factor. Zero collapses to the singleton at the
    /// origin; negative factors are scale-then-negate.
    pub fn scale(&self, a: f64) -> ConvexBody {
        if a == 0.0 {
            return match self.dim() {
                1 => ConvexBody::singleton_1d(0.0),
                _ => ConvexBody::singleton_2d(0.0, 0.0),
            };
        }
        if a < 0.0 {
            return self.scale(-a).negate();
        }
        match self {
            ConvexBody::Polygon(p) => ConvexBody::Polygon(
                Polygon::new(p.vertices.iter().map(|v| *v * a).collect())
                    .expect("scaling preserves strict convexity"),
            ),
            ConvexBody::Interval(i) => ConvexBody::Interval(Interval {
                lo: i.lo * a,
                hi: i.hi * a,
            }),
            ConvexBody::Disc(d) => ConvexBody::Disc(Disc {
                center: d.center * a,
                radius: d.radius * a,
            }),
            ConvexBody::Singleton(p) => ConvexBody::Singleton(p.scaled(a)),
        }
    }

    /// Point reflection through the origin; `h_{-X}(u) = h_X(-u)`.
    pub fn negate(&self) -> ConvexBody {
        match self {
            // Negation is a half-turn rotation, so orientation survives.
            ConvexBody::Polygon(p) => ConvexBody::Polygon(
                Polygon::new(p.vertices.iter().map(|v| -*v).collect())
                    .expect("negation preserves strict convexity"),
            ),
            ConvexBody::Interval(i) => ConvexBody::Interval(Interval {
                lo: -i.hi,
                hi: -i.lo,
            }),
            ConvexBody::Disc(d) => ConvexBody::Disc(Disc {
                center: -d.center,
                radius: d.radius,
            }),
            ConvexBody::Singleton(p) => ConvexBody::Singleton(p.negated()),
        }
    }

    pub fn translate(&self, c: Point) -> Result<ConvexBody> {
        match (self, c) {
            (ConvexBody::Polygon(p), Point::Dim2(t)) => Ok(ConvexBody::Polygon(
                Polygon::new(p.vertices.iter().map(|v| *v + t).collect())
                    .expect("translation preserves strict convexity"),
            )),
            (ConvexBody::Interval(i), Point::Dim1(t)) => Ok(ConvexBody::Interval(Interval {
                lo: i.lo + t,
                hi: i.hi + t,
            })),
            (ConvexBody::Disc(d), Point::Dim2(t)) => Ok(ConvexBody::Disc(Disc {
                center: d.center + t,
                radius: d.radius,
            })),
            (ConvexBody::Singleton(p), t) => Ok(ConvexBody::Singleton(p.offset(t)?)),
            _ => Err(Error::DimensionMismatch("translate".into())),
        }
    }

    /// Steiner point, normalized so that `s(K) = d * integral of u h_K(u)`
    /// against the normalized surface measure. This gives the interval
    /// midpoint in one dimension and the exterior-angle vertex average for
    /// polygons.
    pub fn steiner(&self) -> Point {
        match self {
            ConvexBody::Polygon(p) => Point::Dim2(polygon_steiner(&p.vertices)),
            ConvexBody::Interval(i) => Point::Dim1(i.midpoint()),
            ConvexBody::Disc(d) => Point::Dim2(d.center),
            ConvexBody::Singleton(p) => *p,
        }
    }

    fn variant_name(&self) -> &'static str {
        match self {
            ConvexBody::Polygon(_) => "polygon",
            ConvexBody::Interval(_) => "interval",
            ConvexBody::Disc(_) => "disc",
            ConvexBody::Singleton(_) => "singleton",
        }
    }
}

/// Weighted vertex average with exterior turning angles as weights; the
/// angles of a convex polygon sum to one full turn.
fn polygon_steiner(vertices: &[Vec2]) -> Vec2 {
    let k = vertices.len();
    let mut sx = 0.0;
    let mut sy = 0.0;
    for i in 0..k {
        let prev = vertices[(i + k - 1) % k];
        let cur = vertices[i];
        let next = vertices[(i + 1) % k];
        let e_in = cur - prev;
        let e_out = next - cur;
        let turn = e_in.cross(e_out).atan2(e_in.dot(e_out));
        sx += turn * cur.x;
        sy += turn * cur.y;
    }
    Vec2::new(sx / (2.0 * PI), sy / (2.0 * PI))
}

/// Sorted edge-vector merge of two strictly convex CCW polygons.
fn minkowski_polygons(a: &Polygon, b: &Polygon) -> Result<Polygon> {
    let mut p = a.vertices.clone();
    let mut q = b.vertices.clone();
    rotate_to_lowest(&mut p);
    rotate_to_lowest(&mut q);
    p.push(p[0]);
    p.push(p[1]);
    q.push(q[0]);
    q.push(q[1]);
    let mut out = Vec::with_capacity(p.len() + q.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < p.len() - 2 || j < q.len() - 2 {
        out.push(p[i] + q[j]);
        let cross = (p[i + 1] - p[i]).cross(q[j + 1] - q[j]);
        if cross >= 0.0 && i < p.len() - 2 {
            i += 1;
        }
        if cross <= 0.0 && j < q.len() - 2 {
            j += 1;
        }
    }
    Polygon::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    fn unit_square() -> ConvexBody {
        ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn support_of_unit_disc_is_one() {
        let disc = ConvexBody::disc(Vec2::ZERO, 1.0).unwrap();
        for k in 0..16 {
            let u = Direction::from_angle(k as f64 * 0.4);
            assert!((disc.support(u).unwrap() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn support_of_interval_is_signed_endpoint() {
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        assert_eq!(iv.support(Direction::Dim1(1.0)).unwrap(), 3.0);
        assert_eq!(iv.support(Direction::Dim1(-1.0)).unwrap(), -1.0);
    }

    #[test]
    fn support_of_triangle_along_diagonal() {
        let u = Direction::from_angle(PI / 4.0);
        let h = triangle().support(u).unwrap();
        // Brute max of <u, v> over the three vertices.
        let expect = (0.5f64).sqrt();
        assert!((h - expect).abs() < 1e-15);
    }

    #[test]
    fn support_dimension_mismatch_is_rejected() {
        let iv = ConvexBody::interval(0.0, 1.0).unwrap();
        assert!(iv.support(Direction::from_angle(0.3)).is_err());
    }

    #[test]
    fn invalid_bodies_are_rejected() {
        assert!(ConvexBody::interval(3.0, 1.0).is_err());
        assert!(ConvexBody::disc(Vec2::ZERO, -0.5).is_err());
        // Collinear vertices.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(2.0, 0.0),
        ])
        .is_err());
        // Clockwise order.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(1.0, 0.0),
        ])
        .is_err());
        // Repeated vertex.
        assert!(ConvexBody::polygon(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
        ])
        .is_err());
    }

    #[test]
    fn minkowski_intervals_add_endpoints() {
        let a = ConvexBody::interval(0.0, 1.0).unwrap();
        let b = ConvexBody::interval(2.0, 5.0).unwrap();
        match a.minkowski_sum(&b).unwrap() {
            ConvexBody::Interval(i) => {
                assert_eq!(i.lo(), 2.0);
                assert_eq!(i.hi(), 6.0);
            }
            other => panic!("expected interval, got {other:?}"),
        }
    }

    #[test]
    fn minkowski_singleton_translates() {
        let t = triangle();
        let c = ConvexBody::singleton_2d(1.0, 1.0);
        let sum = t.minkowski_sum(&c).unwrap();
        let expect = t.translate(Point::Dim2(Vec2::new(1.0, 1.0))).unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn minkowski_square_plus_square_doubles() {
        let sum = unit_square().minkowski_sum(&unit_square()).unwrap();
        // Support comparison over a dense grid of directions.
        for k in 0..360 {
            let u = Direction::from_angle(2.0 * PI * k as f64 / 360.0);
            let hs = sum.support(u).unwrap();
            let h1 = unit_square().support(u).unwrap();
            assert!((hs - 2.0 * h1).abs() <= 1e-10 * 2.0);
        }
        match sum {
            ConvexBody::Polygon(p) => assert_eq!(p.vertices().len(), 4),
            other => panic!("expected polygon, got {other:?}"),
        }
    }

    #[test]
    fn minkowski_mixed_variants_are_unsupported() {
        let d = ConvexBody::disc(Vec2::ZERO, 1.0).unwrap();
        assert!(matches!(
            triangle().minkowski_sum(&d),
            Err(Error::UnsupportedCombination(_))
        ));
    }

    #[test]
    fn scale_examples() {
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        match iv.scale(2.0) {
            ConvexBody::Interval(i) => {
                assert_eq!((i.lo(), i.hi()), (2.0, 6.0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(iv.scale(0.0), ConvexBody::singleton_1d(0.0));
        // Negative scaling is pointwise negation of the positively scaled set.
        let neg = triangle().scale(-1.0);
        let expect = triangle().negate();
        assert_eq!(neg, expect);
    }

    #[test]
    fn negate_reflects_support() {
        let bodies = [
            triangle(),
            ConvexBody::disc(Vec2::new(0.3, -0.7), 0.5).unwrap(),
        ];
        for body in &bodies {
            let neg = body.negate();
            for k in 0..64 {
                let u = Direction::from_angle(2.0 * PI * k as f64 / 64.0);
                let lhs = neg.support(u).unwrap();
                let rhs = body.support(u.antipode()).unwrap();
                assert!(
                    (lhs - rhs).abs() <= 1e-12,
                    "reflection identity violated: {lhs} vs {rhs}"
                );
            }
        }
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        match iv.negate() {
            ConvexBody::Interval(i) => assert_eq!((i.lo(), i.hi()), (-3.0, -1.0)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn translate_examples() {
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        match iv.translate(Point::Dim1(-2.0)).unwrap() {
            ConvexBody::Interval(i) => assert_eq!((i.lo(), i.hi()), (-1.0, 1.0)),
            other => panic!("unexpected {other:?}"),
        }
        let moved = triangle().translate(Point::Dim2(Vec2::new(1.0, 1.0))).unwrap();
        match moved {
            ConvexBody::Polygon(p) => {
                assert_eq!(
                    p.vertices(),
                    &[Vec2::new(1.0, 1.0), Vec2::new(2.0, 1.0), Vec2::new(1.0, 2.0)]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(triangle().translate(Point::Dim1(1.0)).is_err());
    }

    #[test]
    fn translate_shifts_support_linearly() {
        let t = Vec2::new(2.0, 0.0);
        let disc = ConvexBody::disc(Vec2::ZERO, 1.0).unwrap();
        let moved = disc.translate(Point::Dim2(t)).unwrap();
        for k in 0..32 {
            let u = Direction::from_angle(0.2 * k as f64);
            let du = match u {
                Direction::Dim2(v) => v,
                _ => unreachable!(),
            };
            let lhs = moved.support(u).unwrap();
            let rhs = disc.support(u).unwrap() + du.dot(t);
            assert!((lhs - rhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn steiner_closed_forms() {
        let disc = ConvexBody::disc(Vec2::new(3.0, -1.0), 2.0).unwrap();
        assert_eq!(disc.steiner(), Point::Dim2(Vec2::new(3.0, -1.0)));
        let iv = ConvexBody::interval(1.0, 3.0).unwrap();
        assert_eq!(iv.steiner(), Point::Dim1(2.0));
        // Exterior angles pi/2, 3pi/4, 3pi/4 weight the vertices into (3/8, 3/8).
        match triangle().steiner() {
            Point::Dim2(s) => {
                assert!((s.x - 0.375).abs() < 1e-14);
                assert!((s.y - 0.375).abs() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn steiner_is_minkowski_additive() {
        let a = triangle();
        let b = unit_square()
            .translate(Point::Dim2(Vec2::new(-0.2, 0.4)))
            .unwrap();
        let sum = a.minkowski_sum(&b).unwrap();
        let (sa, sb, ss) = (a.steiner(), b.steiner(), sum.steiner());
        match (sa, sb, ss) {
            (Point::Dim2(sa), Point::Dim2(sb), Point::Dim2(ss)) => {
                assert!((ss.x - sa.x - sb.x).abs() < 1e-10);
                assert!((ss.y - sa.y - sb.y).abs() < 1e-10);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn steiner_translation_equivariance() {
        let c = Vec2::new(-1.5, 2.25);
        let moved = triangle().translate(Point::Dim2(c)).unwrap();
        match (triangle().steiner(), moved.steiner()) {
            (Point::Dim2(s0), Point::Dim2(s1)) => {
                assert!((s1.x - s0.x - c.x).abs() < 1e-12);
                assert!((s1.y - s0.y - c.y).abs() < 1e-12);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn json_round_trip_and_canonical_start() {
        let body = ConvexBody::polygon(vec![
            Vec2::new(1.0, 0.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, 0.0),
        ])
        .unwrap();
        let json = serde_json::to_string(&body).unwrap();
        // Canonical form starts at the lexicographically smallest vertex.
        assert!(json.starts_with(r#"{"type":"polygon","vertices":[[0.0,0.0]"#));
        let back: ConvexBody = serde_json::from_str(&json).unwrap();
        assert_eq!(back, body);

        let iv = ConvexBody::interval(-1.0, 2.0).unwrap();
        let json = serde_json::to_string(&iv).unwrap();
        assert_eq!(json, r#"{"type":"interval","lo":-1.0,"hi":2.0}"#);

        let bad: std::result::Result<ConvexBody, _> =
            serde_json::from_str(r#"{"type":"interval","lo":2.0,"hi":-1.0}"#);
        assert!(bad.is_err());
    }
}
