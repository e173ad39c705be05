//! The angle-based shape measure ω for the four figure kinds.

use spatial_templates::fgr::{shape_proximity, FigureKind};
use spatial_templates::geometry::Point2;

fn main() {
    let p = Point2::new;
    let right_isosceles = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 1.0)];
    let equilateral = [p(0.0, 0.0), p(2.0, 0.0), p(1.0, 3f64.sqrt())];
    let right = [p(0.0, 0.0), p(4.0, 0.0), p(4.0, 3.0)];
    let square = [p(0.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), p(0.0, 1.0)];
    let parallelogram = [p(0.0, 0.0), p(2.0, 0.0), p(2.5, 3f64.sqrt() / 2.0), p(0.5, 3f64.sqrt() / 2.0)];

    let cases: [(&str, FigureKind, &[Point2]); 6] = [
        ("right isosceles as isosceles", FigureKind::IsoscelesTriangle, &right_isosceles),
        ("right isosceles as equilateral", FigureKind::EquilateralTriangle, &right_isosceles),
        ("equilateral as equilateral", FigureKind::EquilateralTriangle, &equilateral),
        ("3-4-5 as right triangle", FigureKind::RectangleTriangle, &right),
        ("square as rectangle", FigureKind::Rectangle, &square),
        ("60/120 parallelogram as rectangle", FigureKind::Rectangle, &parallelogram),
    ];
    for (name, kind, pts) in cases {
        println!("{name:<34} ω = {:.6}", shape_proximity(kind, pts));
    }

    // ω ignores scale.
    let big: Vec<Point2> = right_isosceles.iter().map(|q| p(q.x * 50.0, q.y * 50.0)).collect();
    println!("scaled ×50 right isosceles        ω = {:.6}", shape_proximity(FigureKind::IsoscelesTriangle, &big));
}
