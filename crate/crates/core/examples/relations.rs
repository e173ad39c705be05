//! Grading member tuples with each relation kind and reading the component
//! breakdown, including a hypothesized orientation.

use spatial_templates::fgr::FgrSpec;
use spatial_templates::fuzzy::FuzzySet;
use spatial_templates::geometry::OrientedPoint;

fn show(name: &str, spec: &FgrSpec, members: &[OrientedPoint]) {
    let inst = spec.evaluate(members);
    println!("{name}: proximity {:.3}, reference orientation {}", inst.proximity, inst.orientation);
    for (c, d) in &inst.components {
        println!("    {c:<12} {d:.3}");
    }
    for (i, a) in &inst.assigned_orientations {
        println!("    member {i} orientation hypothesized as {a}");
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lin = FuzzySet::linear;
    let circ = FuzzySet::circular;
    let facing = circ(-30.0, -15.0, 15.0, 30.0)?;

    let ring = FgrSpec::RingSector {
        distance: lin(3.0, 4.0, 6.0, 7.0)?,
        vector: circ(-45.0, -20.0, 20.0, 45.0)?,
        orien_b: facing,
    };
    show(
        "ring sector",
        &ring,
        &[OrientedPoint::oriented(0.0, 0.0, 0.0), OrientedPoint::oriented(5.0, 1.0, 10.0)],
    );

    let section = FgrSpec::TrapezoidalSection {
        distance: lin(3.0, 4.0, 6.0, 7.0)?,
        vector: circ(-20.0, -10.0, 10.0, 20.0)?,
        orien_b: FuzzySet::Any,
    };
    show(
        "trapezoidal section",
        &section,
        &[OrientedPoint::oriented(0.0, 0.0, 0.0), OrientedPoint::unoriented(6.5, 0.5)],
    );

    let triangle = FgrSpec::IsoscelesTriangle {
        base: lin(8.0, 9.0, 11.0, 12.0)?,
        height: lin(3.0, 4.0, 6.0, 7.0)?,
        orien_a: facing,
        orien_b: facing,
        orien_c: facing,
    };
    show(
        "isosceles triangle (C unoriented)",
        &triangle,
        &[
            OrientedPoint::oriented(0.0, 0.0, 92.0),
            OrientedPoint::oriented(10.0, 0.0, 85.0),
            OrientedPoint::unoriented(5.2, 4.8),
        ],
    );

    let alignment = FgrSpec::Alignment {
        gaps: vec![lin(3.0, 4.0, 6.0, 7.0)?, lin(3.0, 4.0, 6.0, 7.0)?],
        // Members face across the line, so its heading sits 90° clockwise of them.
        orientation: circ(-120.0, -100.0, -80.0, -60.0)?,
        members: vec![facing, facing, facing],
    };
    show(
        "alignment",
        &alignment,
        &[
            OrientedPoint::oriented(0.0, 0.0, 90.0),
            OrientedPoint::oriented(5.0, 0.3, 95.0),
            OrientedPoint::oriented(10.2, -0.2, 88.0),
        ],
    );
    Ok(())
}
