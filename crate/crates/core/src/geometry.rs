//! Planar geometry kernel.
//!
//! Locations are in meters, angles are in degrees at every public surface and
//! follow the mathematical convention: 0° points along +x and angles grow
//! counterclockwise. Interior angles of figures are returned in radians,
//! which is how the shape measures consume them.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Distance below which two points are treated as coincident.
pub const COINCIDENCE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("non-finite value in geometric input")]
    NonFinite,
    #[error("degenerate geometry: points coincide within {COINCIDENCE_TOLERANCE} m")]
    Degenerate,
}

/// A location (or displacement) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector pointing at `angle`.
    pub fn from_angle(angle: Angle) -> Self {
        let r = angle.degrees().to_radians();
        Self::new(r.cos(), r.sin())
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    /// Rotates the vector by +90° (counterclockwise).
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    /// Direction of this vector, or `None` for a (near) zero vector.
    pub fn heading(self) -> Option<Angle> {
        if self.norm() <= COINCIDENCE_TOLERANCE {
            None
        } else {
            Some(Angle::from_radians(self.y.atan2(self.x)))
        }
    }

    pub fn rotate(self, angle: Angle) -> Point2 {
        let (s, c) = angle.degrees().to_radians().sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Arithmetic mean of a non-empty set of points.
    pub fn centroid<I: IntoIterator<Item = Point2>>(points: I) -> Option<Point2> {
        let mut n = 0usize;
        let mut sum = Point2::ORIGIN;
        for p in points {
            sum = sum + p;
            n += 1;
        }
        (n > 0).then(|| sum * (1.0 / n as f64))
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An orientation in degrees, normalized to `[0, 360)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(degrees: f64) -> Result<Self, GeometryError> {
        angle_normalize(degrees)
    }

    /// Normalizes a value already known to be finite.
    pub(crate) fn wrap(degrees: f64) -> Self {
        debug_assert!(degrees.is_finite());
        let mut v = degrees.rem_euclid(360.0);
        // rem_euclid can round up to exactly 360 for tiny negative inputs.
        if v >= 360.0 {
            v = 0.0;
        }
        Angle(v)
    }

    pub fn from_radians(r: f64) -> Self {
        Self::wrap(r.to_degrees())
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        self.0.to_radians()
    }

    /// Adds a signed offset in degrees.
    pub fn offset(self, degrees: f64) -> Angle {
        Angle::wrap(self.0 + degrees)
    }

    /// Circular mean of a set of angles; `None` when the resultant vanishes
    /// or the set is empty.
    pub fn circular_mean<I: IntoIterator<Item = Angle>>(angles: I) -> Option<Angle> {
        let sum = angles
            .into_iter()
            .fold(Point2::ORIGIN, |acc, a| acc + Point2::from_angle(a));
        sum.heading()
    }
}

impl TryFrom<f64> for Angle {
    type Error = GeometryError;
    fn try_from(v: f64) -> Result<Self, Self::Error> {
        angle_normalize(v)
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}°", self.0)
    }
}

/// Reduces `degrees` modulo 360 into `[0, 360)`.
pub fn angle_normalize(degrees: f64) -> Result<Angle, GeometryError> {
    if !degrees.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    Ok(Angle::wrap(degrees))
}

/// Unsigned angle at `vertex` between the rays to `prev` and `next`, in
/// radians within `[0, π]`.
pub fn interior_angle(prev: Point2, vertex: Point2, next: Point2) -> Result<f64, GeometryError> {
    if !(prev.is_finite() && vertex.is_finite() && next.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let u = prev - vertex;
    let v = next - vertex;
    if u.norm() <= COINCIDENCE_TOLERANCE || v.norm() <= COINCIDENCE_TOLERANCE {
        return Err(GeometryError::Degenerate);
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Smallest signed rotation (degrees, in `(-180, 180]`) taking `reference`
/// onto `subject`.
pub fn relative_orientation(subject: Angle, reference: Angle) -> f64 {
    signed_difference(subject.degrees(), reference.degrees())
}

/// `a - b` reduced to `(-180, 180]`.
pub(crate) fn signed_difference(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(360.0);
    if d > 180.0 {
        d - 360.0
    } else {
        d
    }
}

/// A directed line: an anchor point plus a unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line2 {
    anchor: Point2,
    direction: Point2,
}

impl Line2 {
    /// Builds a line, normalizing `direction`.
    pub fn new(anchor: Point2, direction: Point2) -> Result<Self, GeometryError> {
        if !anchor.is_finite() || !direction.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        let n = direction.norm();
        if n <= COINCIDENCE_TOLERANCE {
            return Err(GeometryError::Degenerate);
        }
        Ok(Self {
            anchor,
            direction: direction * (1.0 / n),
        })
    }

    pub fn through(a: Point2, b: Point2) -> Result<Self, GeometryError> {
        Self::new(a, b - a)
    }

    pub fn anchor(&self) -> Point2 {
        self.anchor
    }

    pub fn direction(&self) -> Point2 {
        self.direction
    }

    pub fn heading(&self) -> Angle {
        Angle::from_radians(self.direction.y.atan2(self.direction.x))
    }
}

/// Orthogonal projection of a point onto a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projection {
    pub foot: Point2,
    /// Unsigned distance from the point to its foot.
    pub offset: f64,
    /// Signed coordinate of the foot along the line, measured from the anchor.
    pub along: f64,
}

pub fn foot_and_offset(p: Point2, line: &Line2) -> Projection {
    let along = (p - line.anchor).dot(line.direction);
    let foot = line.anchor + line.direction * along;
    Projection {
        foot,
        offset: p.distance(foot),
        along,
    }
}

/// Orthogonal least-squares line through `points`.
///
/// The line passes through the centroid along the major principal axis of
/// the point scatter. Its direction is oriented so that it agrees with the
/// vector from the first to the last point; if that vector is perpendicular
/// (or zero) the direction with positive x, then positive y, is kept.
pub fn principal_axis_fit(points: &[Point2]) -> Result<Line2, GeometryError> {
    if points.len() < 2 {
        return Err(GeometryError::Degenerate);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let centroid = Point2::centroid(points.iter().copied()).expect("non-empty");
    if points
        .iter()
        .all(|p| p.distance(centroid) <= COINCIDENCE_TOLERANCE)
    {
        return Err(GeometryError::Degenerate);
    }
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in points {
        let d = *p - centroid;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        sxy += d.x * d.y;
    }
    let theta = 0.5 * (2.0 * sxy).atan2(sxx - syy);
    let mut direction = Point2::new(theta.cos(), theta.sin());

    let span = points[points.len() - 1] - points[0];
    let agreement = direction.dot(span);
    let tie = span.norm() <= COINCIDENCE_TOLERANCE || agreement.abs() <= 1e-12 * span.norm();
    if tie {
        if direction.x < 0.0 || (direction.x == 0.0 && direction.y < 0.0) {
            direction = -direction;
        }
    } else if agreement < 0.0 {
        direction = -direction;
    }
    Line2::new(centroid, direction)
}

/// A location with an orientation that may be unknown.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientedPoint {
    pub location: Point2,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Angle>,
}

impl OrientedPoint {
    pub fn new(location: Point2, orientation: Option<Angle>) -> Self {
        Self {
            location,
            orientation,
        }
    }

    pub fn oriented(x: f64, y: f64, degrees: f64) -> Self {
        Self::new(Point2::new(x, y), Some(Angle::wrap(degrees)))
    }

    pub fn unoriented(x: f64, y: f64) -> Self {
        Self::new(Point2::new(x, y), None)
    }
}

/// A rigid motion: rotation about the origin followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    pub rotation: Angle,
    pub translation: Point2,
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        rotation: Angle::ZERO,
        translation: Point2::ORIGIN,
    };

    pub fn new(rotation: Angle, translation: Point2) -> Self {
        Self {
            rotation,
            translation,
        }
    }

    pub fn apply_point(&self, p: Point2) -> Point2 {
        p.rotate(self.rotation) + self.translation
    }

    pub fn apply(&self, p: OrientedPoint) -> OrientedPoint {
        isometry_apply(self.rotation, self.translation, p)
    }

    pub fn inverse(&self) -> Isometry {
        let rotation = Angle::wrap(-self.rotation.degrees());
        Isometry {
            rotation,
            translation: -self.translation.rotate(rotation),
        }
    }
}

pub fn isometry_apply(rotation: Angle, translation: Point2, p: OrientedPoint) -> OrientedPoint {
    OrientedPoint {
        location: p.location.rotate(rotation) + translation,
        orientation: p.orientation.map(|o| o.offset(rotation.degrees())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn normalizes_angles() {
        assert_eq!(angle_normalize(370.0).unwrap().degrees(), 10.0);
        assert_eq!(angle_normalize(-90.0).unwrap().degrees(), 270.0);
        assert_eq!(angle_normalize(360.0).unwrap().degrees(), 0.0);
        assert_eq!(angle_normalize(-1e-20).unwrap().degrees(), 0.0);
        assert_eq!(angle_normalize(f64::NAN), Err(GeometryError::NonFinite));
        assert_eq!(angle_normalize(f64::INFINITY), Err(GeometryError::NonFinite));
    }

    #[test]
    fn interior_angles() {
        let o = Point2::ORIGIN;
        let a = interior_angle(Point2::new(1.0, 0.0), o, Point2::new(0.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a, FRAC_PI_2, epsilon = 1e-15);
        let a = interior_angle(Point2::new(1.0, 0.0), o, Point2::new(1.0, 1.0)).unwrap();
        assert_abs_diff_eq!(a, FRAC_PI_4, epsilon = 1e-15);
        let a = interior_angle(Point2::new(1.0, 0.0), o, Point2::new(-1.0, 0.0)).unwrap();
        assert_abs_diff_eq!(a, PI, epsilon = 1e-15);
        assert_eq!(
            interior_angle(o, o, Point2::new(1.0, 0.0)),
            Err(GeometryError::Degenerate)
        );
    }

    #[test]
    fn relative_orientations() {
        let r = |s: f64, f: f64| relative_orientation(Angle::wrap(s), Angle::wrap(f));
        assert_eq!(r(135.0, 90.0), 45.0);
        assert_eq!(r(10.0, 350.0), 20.0);
        assert_eq!(r(270.0, 90.0), 180.0);
        assert_eq!(r(90.0, 270.0), 180.0);
        assert_eq!(r(350.0, 10.0), -20.0);
    }

    #[test]
    fn projections() {
        let x_axis = Line2::new(Point2::ORIGIN, Point2::new(1.0, 0.0)).unwrap();
        let p = foot_and_offset(Point2::new(0.0, 4.0), &x_axis);
        assert_eq!((p.foot, p.offset, p.along), (Point2::ORIGIN, 4.0, 0.0));
        let p = foot_and_offset(Point2::new(2.0, 3.0), &x_axis);
        assert_eq!((p.foot, p.offset, p.along), (Point2::new(2.0, 0.0), 3.0, 2.0));
        let p = foot_and_offset(Point2::new(-7.5, 0.0), &x_axis);
        assert_eq!(p.offset, 0.0);
        assert_eq!(p.along, -7.5);
    }

    #[test]
    fn fits_collinear_points_exactly() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 2.0),
            Point2::new(2.0, 4.0),
        ];
        let line = principal_axis_fit(&pts).unwrap();
        assert_abs_diff_eq!(line.anchor().x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(line.anchor().y, 2.0, epsilon = 1e-12);
        let s5 = 5f64.sqrt();
        assert_abs_diff_eq!(line.direction().x, 1.0 / s5, epsilon = 1e-12);
        assert_abs_diff_eq!(line.direction().y, 2.0 / s5, epsilon = 1e-12);
        for p in pts {
            assert_abs_diff_eq!(foot_and_offset(p, &line).offset, 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fits_triangle_scatter() {
        // Covariance of (0,0),(1,1),(2,0): sxx = 2, syy = 2/3, sxy = 0, so
        // the major axis is horizontal through the centroid (1, 1/3).
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 0.0),
        ];
        let line = principal_axis_fit(&pts).unwrap();
        assert_abs_diff_eq!(line.anchor().x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(line.anchor().y, 1.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(line.direction().x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(line.direction().y, 0.0, epsilon = 1e-12);
        let residuals: Vec<f64> = pts.iter().map(|p| foot_and_offset(*p, &line).offset).collect();
        for (r, want) in residuals.iter().zip([1.0 / 3.0, 2.0 / 3.0, 1.0 / 3.0]) {
            assert_abs_diff_eq!(*r, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn fit_direction_follows_first_to_last() {
        let pts = [Point2::new(3.0, 3.0), Point2::new(0.0, 0.0)];
        let line = principal_axis_fit(&pts).unwrap();
        assert!(line.direction().x < 0.0 && line.direction().y < 0.0);
        assert_abs_diff_eq!(line.heading().degrees(), 225.0, epsilon = 1e-9);
    }

    #[test]
    fn fit_rejects_coincident_points() {
        let pts = [Point2::new(1.0, 1.0); 3];
        assert_eq!(principal_axis_fit(&pts), Err(GeometryError::Degenerate));
        assert_eq!(principal_axis_fit(&pts[..1]), Err(GeometryError::Degenerate));
    }

    #[test]
    fn isometries() {
        let quarter = Isometry::new(Angle::wrap(90.0), Point2::ORIGIN);
        let p = quarter.apply(OrientedPoint::oriented(1.0, 0.0, 0.0));
        assert_abs_diff_eq!(p.location.x, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.location.y, 1.0, epsilon = 1e-15);
        assert_eq!(p.orientation.unwrap().degrees(), 90.0);

        let q = OrientedPoint::oriented(2.5, -1.0, 33.0);
        assert_eq!(Isometry::IDENTITY.apply(q), q);

        let back = Isometry::new(Angle::wrap(-90.0), Point2::ORIGIN);
        let r = back.apply(quarter.apply(q));
        assert_abs_diff_eq!(r.location.x, q.location.x, epsilon = 1e-12);
        assert_abs_diff_eq!(r.location.y, q.location.y, epsilon = 1e-12);
        assert_abs_diff_eq!(r.orientation.unwrap().degrees(), 33.0, epsilon = 1e-12);

        let t = Isometry::new(Angle::wrap(37.0), Point2::new(4.0, -2.0));
        let r = t.inverse().apply(t.apply(q));
        assert_abs_diff_eq!(r.location.x, q.location.x, epsilon = 1e-12);
        assert_abs_diff_eq!(r.location.y, q.location.y, epsilon = 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn point() -> impl Strategy<Value = Point2> {
            (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point2::new(x, y))
        }

        proptest! {
            #[test]
            fn normalize_is_idempotent(a in -1e6..1e6f64) {
                let once = angle_normalize(a).unwrap();
                prop_assert!((0.0..360.0).contains(&once.degrees()));
                prop_assert_eq!(angle_normalize(once.degrees()).unwrap(), once);
            }

            #[test]
            fn interior_angle_is_symmetric(a in point(), v in point(), b in point()) {
                prop_assume!(a.distance(v) > 1e-3 && b.distance(v) > 1e-3);
                let x = interior_angle(a, v, b).unwrap();
                let y = interior_angle(b, v, a).unwrap();
                prop_assert_eq!(x, y);
                prop_assert!((0.0..=std::f64::consts::PI).contains(&x));
            }

            #[test]
            fn fit_is_equivariant(
                pts in prop::collection::vec(point(), 3..8),
                rot in 0.0..360.0f64,
                t in point(),
            ) {
                let iso = Isometry::new(Angle::wrap(rot), t);
                let Ok(line) = principal_axis_fit(&pts) else { return Ok(()); };
                let moved: Vec<Point2> = pts.iter().map(|p| iso.apply_point(*p)).collect();
                let moved_line = principal_axis_fit(&moved).unwrap();
                for (p, q) in pts.iter().zip(&moved) {
                    let r0 = foot_and_offset(*p, &line).offset;
                    let r1 = foot_and_offset(*q, &moved_line).offset;
                    prop_assert!((r0 - r1).abs() < 1e-9, "{} vs {}", r0, r1);
                }
            }

            #[test]
            fn projection_is_consistent(p in point(), a in point(), d in point(), rot in 0.0..360.0f64) {
                prop_assume!(d.norm() > 1e-3);
                let line = Line2::new(a, d).unwrap();
                let pr = foot_and_offset(p, &line);
                let hyp = (p - line.anchor()).norm();
                prop_assert!((pr.offset.powi(2) + pr.along.powi(2) - hyp.powi(2)).abs() < 1e-6);
                let iso = Isometry::new(Angle::wrap(rot), a);
                let moved = Line2::new(iso.apply_point(a), d.rotate(Angle::wrap(rot))).unwrap();
                let pr2 = foot_and_offset(iso.apply_point(p), &moved);
                prop_assert!((pr.offset - pr2.offset).abs() < 1e-9);
            }
        }
    }
}
