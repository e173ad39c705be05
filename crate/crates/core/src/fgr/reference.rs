//! Reference points exposed by instantiated relations to their parents.

use serde::{Deserialize, Serialize};

use crate::geometry::{OrientedPoint, Point2};

use super::FgrInstance;

/// How the location of a relation's reference point is chosen.
///
/// Extremal modes pick one of the objects the relation uses directly or
/// indirectly, measured in the frame of the reference orientation: "upper"
/// is furthest along it, "left" furthest along its left normal. Ties go to
/// the first object in template order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefMode {
    /// Centroid of every object used directly or indirectly.
    #[default]
    ComAllObjects,
    /// Centroid of the direct arguments' locations.
    ComArgs,
    /// Centroid of the first two arguments (a triangle's base).
    BasePairCom,
    Uppermost,
    Lowermost,
    Leftmost,
    Rightmost,
}

impl RefMode {
    pub const ALL: [RefMode; 7] = [
        RefMode::ComAllObjects,
        RefMode::ComArgs,
        RefMode::BasePairCom,
        RefMode::Uppermost,
        RefMode::Lowermost,
        RefMode::Leftmost,
        RefMode::Rightmost,
    ];
}

/// Relative tolerance under which two projections count as tied.
const TIE: f64 = 1e-9;

/// The first point, in list order, furthest along `axis` (or least far).
/// Projections within a small fraction of the point spread are treated as
/// equal, so a tie picks the same point in every rigid frame.
fn extremal(points: &[Point2], axis: Point2, largest: bool) -> Point2 {
    let sign = if largest { 1.0 } else { -1.0 };
    let value = |p: &Point2| sign * p.dot(axis);
    let best = points.iter().map(value).fold(f64::NEG_INFINITY, f64::max);
    let extent = points.iter().map(|p| p.distance(points[0])).fold(0.0, f64::max);
    *points
        .iter()
        .find(|p| value(p) >= best - TIE * extent)
        .expect("non-empty")
}

/// Reference point of an instance. `objects` lists the locations of every
/// object the relation uses directly or indirectly.
pub fn reference_point(instance: &FgrInstance, objects: &[Point2], mode: RefMode) -> OrientedPoint {
    let forward = Point2::from_angle(instance.orientation);
    let members = || instance.members.iter().map(|m| m.location);
    let location = match mode {
        RefMode::ComAllObjects => Point2::centroid(objects.iter().copied()),
        RefMode::ComArgs => Point2::centroid(members()),
        RefMode::BasePairCom => Point2::centroid(members().take(2)),
        RefMode::Uppermost => Some(extremal(objects, forward, true)),
        RefMode::Lowermost => Some(extremal(objects, forward, false)),
        RefMode::Leftmost => Some(extremal(objects, forward.perp(), true)),
        RefMode::Rightmost => Some(extremal(objects, forward.perp(), false)),
    }
    .expect("instances have members");
    OrientedPoint::new(location, Some(instance.orientation))
}
