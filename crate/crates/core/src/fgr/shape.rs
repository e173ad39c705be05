//! Angle-based shape measures for the four geometric figures.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use serde::{Deserialize, Serialize};

use crate::geometry::{interior_angle, GeometryError, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    IsoscelesTriangle,
    EquilateralTriangle,
    RectangleTriangle,
    Rectangle,
}

impl FigureKind {
    pub fn arity(self) -> usize {
        match self {
            FigureKind::Rectangle => 4,
            _ => 3,
        }
    }
}

/// Interior angles at each vertex of a closed polygon, in vertex order.
pub fn vertex_angles<const N: usize>(points: &[Point2; N]) -> Result<[f64; N], GeometryError> {
    let mut out = [0.0; N];
    for (i, slot) in out.iter_mut().enumerate() {
        let prev = points[(i + N - 1) % N];
        let next = points[(i + 1) % N];
        *slot = interior_angle(prev, points[i], next)?;
    }
    Ok(out)
}

/// Shape proximity ω of an ordered point tuple with a figure, clamped to
/// `[0, 1]`. Degenerate tuples score 0.
pub fn shape_proximity(kind: FigureKind, points: &[Point2]) -> f64 {
    raw_shape_proximity(kind, points).map_or(0.0, |w| w.clamp(0.0, 1.0))
}

fn raw_shape_proximity(kind: FigureKind, points: &[Point2]) -> Result<f64, GeometryError> {
    if points.len() != kind.arity() {
        return Err(GeometryError::Degenerate);
    }
    match kind {
        FigureKind::Rectangle => {
            let pts: [Point2; 4] = points.try_into().expect("arity checked");
            let angles = vertex_angles(&pts)?;
            let dev: f64 = angles.iter().map(|x| (x - FRAC_PI_2).abs()).sum();
            Ok(1.0 - dev / (2.0 * PI))
        }
        tri => {
            let pts: [Point2; 3] = points.try_into().expect("arity checked");
            let [a, b, c] = vertex_angles(&pts)?;
            Ok(match tri {
                FigureKind::IsoscelesTriangle => 1.0 - (a - b).abs() / PI,
                FigureKind::EquilateralTriangle => {
                    let dev = (a - FRAC_PI_3).abs() + (b - FRAC_PI_3).abs() + (c - FRAC_PI_3).abs();
                    1.0 - dev / (4.0 * FRAC_PI_3)
                }
                FigureKind::RectangleTriangle => 1.0 - (b - FRAC_PI_2).abs() / FRAC_PI_2,
                FigureKind::Rectangle => unreachable!(),
            })
        }
    }
}
