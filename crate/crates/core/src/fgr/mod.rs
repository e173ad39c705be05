//! Fuzzy geometric relations (FGRs).
//!
//! Seven relations are supported: four figures graded by a shape measure and
//! by fuzzy dimensions, plus ring sectors, trapezoidal sections and
//! alignments. Every relation grades an ordered tuple of oriented points with
//! the minimum of its component degrees and exposes an oriented reference
//! point so it can be nested inside other relations.

mod reference;
mod relations;
mod shape;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::fuzzy::{Domain, FuzzySet};
use crate::geometry::{Angle, OrientedPoint};

pub use reference::{reference_point, RefMode};
pub use relations::{eval_alignment, eval_figure, eval_ring_sector, eval_trapezoidal_section};
pub use shape::{shape_proximity, vertex_angles, FigureKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FgrKind {
    IsoscelesTriangle,
    EquilateralTriangle,
    RectangleTriangle,
    Rectangle,
    RingSector,
    TrapezoidalSection,
    Alignment,
}

impl FgrKind {
    pub fn figure(self) -> Option<FigureKind> {
        Some(match self {
            FgrKind::IsoscelesTriangle => FigureKind::IsoscelesTriangle,
            FgrKind::EquilateralTriangle => FigureKind::EquilateralTriangle,
            FgrKind::RectangleTriangle => FigureKind::RectangleTriangle,
            FgrKind::Rectangle => FigureKind::Rectangle,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            FgrKind::IsoscelesTriangle => "isosceles_triangle",
            FgrKind::EquilateralTriangle => "equilateral_triangle",
            FgrKind::RectangleTriangle => "rectangle_triangle",
            FgrKind::Rectangle => "rectangle",
            FgrKind::RingSector => "ring_sector",
            FgrKind::TrapezoidalSection => "trapezoidal_section",
            FgrKind::Alignment => "alignment",
        }
    }
}

impl fmt::Display for FgrKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fuzzy sets parameterizing one relation.
///
/// Orientation sets (`orien_*`) grade each member's orientation relative to
/// the relation's reference orientation. `vector` grades the direction of
/// A→B relative to A's orientation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FgrSpec {
    IsoscelesTriangle {
        base: FuzzySet,
        height: FuzzySet,
        orien_a: FuzzySet,
        orien_b: FuzzySet,
        orien_c: FuzzySet,
    },
    EquilateralTriangle {
        side: FuzzySet,
        orien_a: FuzzySet,
        orien_b: FuzzySet,
        orien_c: FuzzySet,
    },
    RectangleTriangle {
        base: FuzzySet,
        height: FuzzySet,
        orien_a: FuzzySet,
        orien_b: FuzzySet,
        orien_c: FuzzySet,
    },
    Rectangle {
        base: FuzzySet,
        height: FuzzySet,
        orien_a: FuzzySet,
        orien_b: FuzzySet,
        orien_c: FuzzySet,
        orien_d: FuzzySet,
    },
    RingSector {
        distance: FuzzySet,
        vector: FuzzySet,
        orien_b: FuzzySet,
    },
    TrapezoidalSection {
        distance: FuzzySet,
        vector: FuzzySet,
        orien_b: FuzzySet,
    },
    Alignment {
        /// Projected distances between consecutive members, in list order.
        gaps: Vec<FuzzySet>,
        /// Direction of the fitted line relative to the members' mean orientation.
        orientation: FuzzySet,
        /// One orientation set per member.
        members: Vec<FuzzySet>,
    },
}

/// A named slot of a spec together with the domain it lives in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetSlot<'a> {
    pub component: Component,
    pub domain: Domain,
    pub set: &'a FuzzySet,
}

impl FgrSpec {
    pub fn kind(&self) -> FgrKind {
        match self {
            FgrSpec::IsoscelesTriangle { .. } => FgrKind::IsoscelesTriangle,
            FgrSpec::EquilateralTriangle { .. } => FgrKind::EquilateralTriangle,
            FgrSpec::RectangleTriangle { .. } => FgrKind::RectangleTriangle,
            FgrSpec::Rectangle { .. } => FgrKind::Rectangle,
            FgrSpec::RingSector { .. } => FgrKind::RingSector,
            FgrSpec::TrapezoidalSection { .. } => FgrKind::TrapezoidalSection,
            FgrSpec::Alignment { .. } => FgrKind::Alignment,
        }
    }

    /// Number of members the relation takes.
    pub fn arity(&self) -> usize {
        match self {
            FgrSpec::Alignment { members, .. } => members.len(),
            FgrSpec::RingSector { .. } | FgrSpec::TrapezoidalSection { .. } => 2,
            other => other.kind().figure().expect("figure").arity(),
        }
    }

    /// Per-member orientation sets, in member order.
    pub fn orientation_sets(&self) -> Vec<&FuzzySet> {
        match self {
            FgrSpec::IsoscelesTriangle { orien_a, orien_b, orien_c, .. }
            | FgrSpec::EquilateralTriangle { orien_a, orien_b, orien_c, .. }
            | FgrSpec::RectangleTriangle { orien_a, orien_b, orien_c, .. } => {
                vec![orien_a, orien_b, orien_c]
            }
            FgrSpec::Rectangle { orien_a, orien_b, orien_c, orien_d, .. } => {
                vec![orien_a, orien_b, orien_c, orien_d]
            }
            FgrSpec::RingSector { orien_b, .. } | FgrSpec::TrapezoidalSection { orien_b, .. } => {
                vec![&FuzzySet::Any, orien_b]
            }
            FgrSpec::Alignment { members, .. } => members.iter().collect(),
        }
    }

    /// Every fuzzy set of the spec with the domain its slot expects.
    pub fn slots(&self) -> Vec<SetSlot<'_>> {
        let lin = |component, set| SetSlot { component, domain: Domain::Linear, set };
        let circ = |component, set| SetSlot { component, domain: Domain::Circular, set };
        let mut out = Vec::new();
        match self {
            FgrSpec::IsoscelesTriangle { base, height, .. }
            | FgrSpec::RectangleTriangle { base, height, .. }
            | FgrSpec::Rectangle { base, height, .. } => {
                out.push(lin(Component::Base, base));
                out.push(lin(Component::Height, height));
            }
            FgrSpec::EquilateralTriangle { side, .. } => out.push(lin(Component::Side, side)),
            FgrSpec::RingSector { distance, vector, .. } => {
                out.push(lin(Component::Distance, distance));
                out.push(circ(Component::Vector, vector));
            }
            FgrSpec::TrapezoidalSection { distance, vector, .. } => {
                out.push(lin(Component::ProjectedDistance, distance));
                out.push(circ(Component::Vector, vector));
            }
            FgrSpec::Alignment { gaps, orientation, .. } => {
                out.extend(gaps.iter().enumerate().map(|(i, g)| lin(Component::Gap(i), g)));
                out.push(circ(Component::AlignmentOrientation, orientation));
            }
        }
        let skip_first = matches!(self, FgrSpec::RingSector { .. } | FgrSpec::TrapezoidalSection { .. });
        for (i, set) in self.orientation_sets().into_iter().enumerate() {
            if skip_first && i == 0 {
                continue;
            }
            out.push(circ(Component::Orientation(i), set));
        }
        out
    }

    /// Grades an ordered member tuple. The tuple length must match [`arity`](Self::arity).
    pub fn evaluate(&self, members: &[OrientedPoint]) -> FgrInstance {
        assert_eq!(
            members.len(),
            self.arity(),
            "{} takes {} members",
            self.kind(),
            self.arity()
        );
        match self {
            FgrSpec::RingSector { .. } => eval_ring_sector(self, members[0], members[1]),
            FgrSpec::TrapezoidalSection { .. } => eval_trapezoidal_section(self, members[0], members[1]),
            FgrSpec::Alignment { .. } => eval_alignment(self, members),
            _ => eval_figure(self, members),
        }
    }
}

/// Identifies one graded quantity of a relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Shape,
    Base,
    Height,
    Side,
    Distance,
    ProjectedDistance,
    Vector,
    /// Orientation of the member at this index.
    Orientation(usize),
    /// Projected distance between members `i` and `i + 1` of an alignment.
    Gap(usize),
    AlignmentOrientation,
    /// The member tuple is geometrically degenerate.
    Degenerate,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Shape => f.write_str("shape"),
            Component::Base => f.write_str("base"),
            Component::Height => f.write_str("height"),
            Component::Side => f.write_str("side"),
            Component::Distance => f.write_str("distance"),
            Component::ProjectedDistance => f.write_str("projected_distance"),
            Component::Vector => f.write_str("vector"),
            Component::Orientation(i) if *i < 26 => write!(f, "orien_{}", (b'a' + *i as u8) as char),
            Component::Orientation(i) => write!(f, "orien_{}", i + 1),
            Component::Gap(i) => write!(f, "gap_{}", i + 1),
            Component::AlignmentOrientation => f.write_str("alignment_orientation"),
            Component::Degenerate => f.write_str("degenerate"),
        }
    }
}

impl Serialize for Component {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Component {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Component::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown component `{s}`")))
    }
}

impl Component {
    pub fn parse(s: &str) -> Option<Component> {
        Some(match s {
            "shape" => Component::Shape,
            "base" => Component::Base,
            "height" => Component::Height,
            "side" => Component::Side,
            "distance" => Component::Distance,
            "projected_distance" => Component::ProjectedDistance,
            "vector" => Component::Vector,
            "alignment_orientation" => Component::AlignmentOrientation,
            "degenerate" => Component::Degenerate,
            _ => {
                if let Some(rest) = s.strip_prefix("gap_") {
                    return rest.parse::<usize>().ok().filter(|&i| i > 0).map(|i| Component::Gap(i - 1));
                }
                let rest = s.strip_prefix("orien_")?;
                let bytes = rest.as_bytes();
                if bytes.len() == 1 && bytes[0].is_ascii_lowercase() {
                    return Some(Component::Orientation((bytes[0] - b'a') as usize));
                }
                return rest.parse::<usize>().ok().filter(|&i| i > 26).map(|i| Component::Orientation(i - 1));
            }
        })
    }
}

/// The result of grading a member tuple with one relation.
#[derive(Debug, Clone, PartialEq)]
pub struct FgrInstance {
    pub kind: FgrKind,
    /// Minimum over `components`.
    pub proximity: f64,
    pub components: Vec<(Component, f64)>,
    /// Kind-determined reference orientation.
    pub orientation: Angle,
    /// Members as graded, with hypothesized orientations filled in.
    pub members: Vec<OrientedPoint>,
    /// Orientations hypothesized for members whose orientation was undefined.
    pub assigned_orientations: Vec<(usize, Angle)>,
}

impl FgrInstance {
    pub(crate) fn from_components(
        kind: FgrKind,
        components: Vec<(Component, f64)>,
        orientation: Angle,
        members: Vec<OrientedPoint>,
        assigned_orientations: Vec<(usize, Angle)>,
    ) -> Self {
        let proximity = components.iter().map(|c| c.1).fold(1.0, f64::min);
        Self {
            kind,
            proximity,
            components,
            orientation,
            members,
            assigned_orientations,
        }
    }

    pub(crate) fn degenerate(kind: FgrKind, members: &[OrientedPoint]) -> Self {
        Self::from_components(
            kind,
            vec![(Component::Degenerate, 0.0)],
            Angle::ZERO,
            members.to_vec(),
            Vec::new(),
        )
    }

    pub fn component(&self, which: Component) -> Option<f64> {
        self.components.iter().find(|c| c.0 == which).map(|c| c.1)
    }
}
