//! Evaluators for the seven relations.
//!
//! Members whose orientation is undefined are given a hypothesized
//! orientation when the relation constrains it. For member orientation sets
//! that is simply the value at the core midpoint. When the A vertex of a
//! ring sector or trapezoidal section is unoriented, its orientation drives
//! several memberships at once and is found by a 1-D search.

use crate::fuzzy::FuzzySet;
use crate::geometry::{
    foot_and_offset, principal_axis_fit, relative_orientation, signed_difference, Angle, Line2,
    OrientedPoint, Point2,
};

use super::{shape_proximity, vertex_angles, Component, FgrInstance, FgrKind, FgrSpec};

/// Grades every member orientation against `reference`, hypothesizing
/// undefined ones. Returns the resolved members.
fn grade_orientations(
    sets: &[&FuzzySet],
    members: &[OrientedPoint],
    reference: Angle,
    components: &mut Vec<(Component, f64)>,
    assigned: &mut Vec<(usize, Angle)>,
) -> Vec<OrientedPoint> {
    let mut resolved = members.to_vec();
    for (i, (set, m)) in sets.iter().zip(members).enumerate() {
        let degree = match (m.orientation, set) {
            (_, FuzzySet::Any) => 1.0,
            (Some(o), set) => set.degree(relative_orientation(o, reference)),
            (None, set) => {
                let mid = set.core_midpoint().expect("trapezoid");
                let o = reference.offset(mid);
                resolved[i].orientation = Some(o);
                assigned.push((i, o));
                1.0
            }
        };
        components.push((Component::Orientation(i), degree));
    }
    resolved
}

/// Grades a triangle or a rectangle.
pub fn eval_figure(spec: &FgrSpec, members: &[OrientedPoint]) -> FgrInstance {
    let kind = spec.kind();
    let figure = kind.figure().expect("eval_figure takes a figure spec");
    assert_eq!(members.len(), figure.arity(), "{kind} takes {} members", figure.arity());
    let pts: Vec<Point2> = members.iter().map(|m| m.location).collect();

    let Some(base_dir) = (pts[1] - pts[0]).heading() else {
        return FgrInstance::degenerate(kind, members);
    };
    let angles_ok = match pts.len() {
        3 => vertex_angles::<3>(&pts[..].try_into().unwrap()).is_ok(),
        _ => vertex_angles::<4>(&pts[..].try_into().unwrap()).is_ok(),
    };
    if !angles_ok {
        return FgrInstance::degenerate(kind, members);
    }
    let reference = base_dir.offset(90.0);
    let dist = |i: usize, j: usize| pts[i].distance(pts[j]);

    let mut components = vec![(Component::Shape, shape_proximity(figure, &pts))];
    match spec {
        FgrSpec::IsoscelesTriangle { base, height, .. } => {
            let line = Line2::through(pts[0], pts[1]).expect("non-degenerate base");
            let h = foot_and_offset(pts[2], &line).offset;
            components.push((Component::Base, base.degree(dist(0, 1))));
            components.push((Component::Height, height.degree(h)));
        }
        FgrSpec::EquilateralTriangle { side, .. } => {
            let mean = (dist(0, 1) + dist(1, 2) + dist(2, 0)) / 3.0;
            components.push((Component::Side, side.degree(mean)));
        }
        FgrSpec::RectangleTriangle { base, height, .. } => {
            components.push((Component::Base, base.degree(dist(0, 1))));
            components.push((Component::Height, height.degree(dist(1, 2))));
        }
        FgrSpec::Rectangle { base, height, .. } => {
            let b = 0.5 * (dist(0, 1) + dist(2, 3));
            let h = 0.5 * (dist(1, 2) + dist(3, 0));
            components.push((Component::Base, base.degree(b)));
            components.push((Component::Height, height.degree(h)));
        }
        _ => unreachable!("figure kinds only"),
    }
    let mut assigned = Vec::new();
    let resolved = grade_orientations(&spec.orientation_sets(), members, reference, &mut components, &mut assigned);
    FgrInstance::from_components(kind, components, reference, resolved, assigned)
}

struct SectorSets<'a> {
    distance: &'a FuzzySet,
    vector: &'a FuzzySet,
    orien_b: &'a FuzzySet,
    projected: bool,
}

fn sector_sets(spec: &FgrSpec) -> SectorSets<'_> {
    match spec {
        FgrSpec::RingSector { distance, vector, orien_b } => SectorSets {
            distance,
            vector,
            orien_b,
            projected: false,
        },
        FgrSpec::TrapezoidalSection { distance, vector, orien_b } => SectorSets {
            distance,
            vector,
            orien_b,
            projected: true,
        },
        _ => panic!("sector evaluator called with a {} spec", spec.kind()),
    }
}

impl SectorSets<'_> {
    /// Distance, vector and (optionally) B-orientation degrees as functions
    /// of ψ, the direction of A→B relative to A's orientation.
    fn degrees_at(&self, psi: f64, length: f64, b_offset: Option<f64>) -> [f64; 3] {
        let d = if self.projected {
            let mid = self.vector.core_midpoint().expect("validated: direction set is a trapezoid");
            length * signed_difference(psi, mid).to_radians().cos()
        } else {
            length
        };
        let ob = b_offset.map_or(1.0, |off| self.orien_b.degree(signed_difference(off + psi, 0.0)));
        [self.distance.degree(d), self.vector.degree(signed_difference(psi, 0.0)), ob]
    }

    /// Chooses ψ maximizing the min of the sector memberships.
    ///
    /// Candidates are a 1° grid plus every membership breakpoint; the best
    /// one is refined by bisection on the slope sign down to 0.01°. Among
    /// equally good candidates the one closest to the direction set's core
    /// midpoint wins.
    fn best_relative_direction(&self, length: f64, b_offset: Option<f64>) -> f64 {
        let score = |psi: f64| {
            let [a, b, c] = self.degrees_at(psi, length, b_offset);
            a.min(b).min(c)
        };
        let anchor = self.vector.core_midpoint().unwrap_or(0.0);
        let mut candidates = vec![anchor];
        candidates.extend((0..360).map(|k| k as f64 - 180.0));
        if let Some(t) = self.vector.trapezoid() {
            candidates.extend(t.breakpoints());
        }
        if let (Some(off), Some(t)) = (b_offset, self.orien_b.trapezoid()) {
            candidates.extend(t.breakpoints().map(|bp| bp - off));
        }
        let candidates: Vec<f64> = candidates.into_iter().map(|c| signed_difference(c, 0.0)).collect();

        let mut best = candidates[0];
        let mut best_score = score(best);
        for &c in &candidates[1..] {
            let s = score(c);
            let closer = signed_difference(c, anchor).abs() < signed_difference(best, anchor).abs();
            if s > best_score + 1e-12 || ((s - best_score).abs() <= 1e-12 && closer) {
                best = c;
                best_score = s;
            }
        }

        // Local refinement around the best candidate.
        let (mut lo, mut hi) = (best - 1.0, best + 1.0);
        while hi - lo > 0.01 {
            let mid = 0.5 * (lo + hi);
            let step = 1e-4;
            if score(mid + step) > score(mid - step) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let refined = signed_difference(0.5 * (lo + hi), 0.0);
        if score(refined) > best_score + 1e-12 {
            refined
        } else {
            best
        }
    }
}

fn eval_sector(spec: &FgrSpec, a: OrientedPoint, b: OrientedPoint) -> FgrInstance {
    let kind = spec.kind();
    let sets = sector_sets(spec);
    let members = [a, b];
    let ab = b.location - a.location;
    let Some(heading) = ab.heading() else {
        return FgrInstance::degenerate(kind, &members);
    };
    let length = ab.norm();
    let mut assigned = Vec::new();

    let orientation_a = match a.orientation {
        Some(o) => o,
        None => {
            let b_offset = b.orientation.map(|ob| signed_difference(ob.degrees(), heading.degrees()));
            let psi = sets.best_relative_direction(length, b_offset);
            let o = heading.offset(-psi);
            assigned.push((0, o));
            o
        }
    };
    let psi = relative_orientation(heading, orientation_a);
    let distance = if sets.projected {
        let mid = sets.vector.core_midpoint().expect("validated: direction set is a trapezoid");
        ab.dot(Point2::from_angle(orientation_a.offset(mid)))
    } else {
        length
    };
    let distance_component = if sets.projected {
        Component::ProjectedDistance
    } else {
        Component::Distance
    };
    let mut components = vec![
        (distance_component, sets.distance.degree(distance)),
        (Component::Vector, sets.vector.degree(psi)),
    ];
    let mut resolved_b = b;
    let ob_degree = match (b.orientation, sets.orien_b) {
        (_, FuzzySet::Any) => 1.0,
        (Some(ob), set) => set.degree(relative_orientation(ob, orientation_a)),
        (None, set) => {
            let o = orientation_a.offset(set.core_midpoint().expect("trapezoid"));
            resolved_b.orientation = Some(o);
            assigned.push((1, o));
            1.0
        }
    };
    components.push((Component::Orientation(1), ob_degree));
    let resolved = vec![OrientedPoint::new(a.location, Some(orientation_a)), resolved_b];
    FgrInstance::from_components(kind, components, orientation_a, resolved, assigned)
}

/// Grades a fuzzy ring sector ⟨A, B⟩. The reference orientation is A's.
pub fn eval_ring_sector(spec: &FgrSpec, a: OrientedPoint, b: OrientedPoint) -> FgrInstance {
    assert_eq!(spec.kind(), FgrKind::RingSector);
    eval_sector(spec, a, b)
}

/// Grades a fuzzy trapezoidal section ⟨A, B⟩: like a ring sector, but the
/// distance is the projection of A→B onto the direction that maximizes the
/// direction membership.
pub fn eval_trapezoidal_section(spec: &FgrSpec, a: OrientedPoint, b: OrientedPoint) -> FgrInstance {
    assert_eq!(spec.kind(), FgrKind::TrapezoidalSection);
    eval_sector(spec, a, b)
}

/// Grades a fuzzy alignment ⟨A1, ..., An⟩ against a least-squares line.
pub fn eval_alignment(spec: &FgrSpec, members: &[OrientedPoint]) -> FgrInstance {
    let FgrSpec::Alignment { gaps, orientation, members: member_sets } = spec else {
        panic!("eval_alignment called with a {} spec", spec.kind());
    };
    assert_eq!(members.len(), member_sets.len(), "alignment arity");
    let kind = FgrKind::Alignment;
    let pts: Vec<Point2> = members.iter().map(|m| m.location).collect();
    let Ok(line) = principal_axis_fit(&pts) else {
        return FgrInstance::degenerate(kind, members);
    };
    let heading = line.heading();
    let reference = heading.offset(90.0);

    let along: Vec<f64> = pts.iter().map(|p| foot_and_offset(*p, &line).along).collect();
    let mut components: Vec<(Component, f64)> = gaps
        .iter()
        .zip(along.windows(2))
        .enumerate()
        .map(|(i, (set, w))| (Component::Gap(i), set.degree(w[1] - w[0])))
        .collect();

    let mut assigned = Vec::new();
    let sets: Vec<&FuzzySet> = member_sets.iter().collect();
    let mut member_components = Vec::new();
    let mut resolved = grade_orientations(&sets, members, reference, &mut member_components, &mut assigned);

    let alignment_degree = match orientation {
        FuzzySet::Any => 1.0,
        set => {
            let defined: Vec<Angle> = resolved.iter().filter_map(|m| m.orientation).collect();
            if defined.is_empty() {
                // Nothing constrains the members: face them so the mean sits
                // at the core of the alignment orientation set.
                let mid = set.core_midpoint().expect("trapezoid");
                let o = heading.offset(-mid);
                for (i, m) in resolved.iter_mut().enumerate() {
                    m.orientation = Some(o);
                    assigned.push((i, o));
                }
                1.0
            } else {
                match Angle::circular_mean(defined) {
                    Some(mean) => set.degree(relative_orientation(heading, mean)),
                    None => 0.0,
                }
            }
        }
    };
    assigned.sort_by_key(|a| a.0);
    components.push((Component::AlignmentOrientation, alignment_degree));
    components.extend(member_components);
    FgrInstance::from_components(kind, components, reference, resolved, assigned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgr::FigureKind;
    use approx::assert_abs_diff_eq;

    fn lin(a: f64, b: f64, c: f64, d: f64) -> FuzzySet {
        FuzzySet::linear(a, b, c, d).unwrap()
    }

    fn circ(a: f64, b: f64, c: f64, d: f64) -> FuzzySet {
        FuzzySet::circular(a, b, c, d).unwrap()
    }

    fn op(x: f64, y: f64, o: f64) -> OrientedPoint {
        OrientedPoint::oriented(x, y, o)
    }

    fn facing() -> FuzzySet {
        circ(-30.0, -10.0, 10.0, 30.0)
    }

    fn isosceles() -> FgrSpec {
        FgrSpec::IsoscelesTriangle {
            base: lin(3.0, 4.0, 4.0, 5.0),
            height: lin(2.0, 3.0, 3.0, 4.0),
            orien_a: facing(),
            orien_b: facing(),
            orien_c: facing(),
        }
    }

    #[test]
    fn isosceles_on_every_core() {
        let inst = eval_figure(&isosceles(), &[op(-2.0, 0.0, 90.0), op(2.0, 0.0, 90.0), op(0.0, 3.0, 90.0)]);
        assert_eq!(inst.proximity, 1.0);
        assert_eq!(inst.components.len(), 6);
        assert_abs_diff_eq!(inst.orientation.degrees(), 90.0, epsilon = 1e-12);
    }

    #[test]
    fn isosceles_with_shifted_apex() {
        // Apex at (1, 3): ∠A = atan2(3, 3) = π/4, ∠B = atan2(3, 1).
        let inst = eval_figure(&isosceles(), &[op(-2.0, 0.0, 90.0), op(2.0, 0.0, 90.0), op(1.0, 3.0, 90.0)]);
        let angle_a = std::f64::consts::FRAC_PI_4;
        let angle_b = 3f64.atan2(1.0);
        let omega = 1.0 - (angle_a - angle_b).abs() / std::f64::consts::PI;
        assert_abs_diff_eq!(inst.component(Component::Shape).unwrap(), omega, epsilon = 1e-12);
        assert_eq!(inst.component(Component::Base), Some(1.0));
        assert_eq!(inst.component(Component::Height), Some(1.0));
        assert_abs_diff_eq!(inst.proximity, omega, epsilon = 1e-12);
        assert!(inst.proximity < 1.0);
    }

    #[test]
    fn isosceles_base_outside_support() {
        let inst = eval_figure(&isosceles(), &[op(-5.0, 0.0, 90.0), op(5.0, 0.0, 90.0), op(0.0, 3.0, 90.0)]);
        assert_eq!(inst.proximity, 0.0);
        assert_eq!(inst.component(Component::Base), Some(0.0));
    }

    #[test]
    fn swapping_base_flips_reference() {
        let pts = [op(-2.0, 0.0, 90.0), op(2.0, 0.0, 90.0), op(0.5, 3.0, 90.0)];
        let a = eval_figure(&isosceles(), &pts);
        let b = eval_figure(&isosceles(), &[pts[1], pts[0], pts[2]]);
        assert_abs_diff_eq!(a.component(Component::Shape).unwrap(), b.component(Component::Shape).unwrap(), epsilon = 1e-15);
        assert_abs_diff_eq!(relative_orientation(a.orientation, b.orientation).abs(), 180.0, epsilon = 1e-9);
    }

    #[test]
    fn undefined_member_orientation_is_hypothesized() {
        let pts = [op(-2.0, 0.0, 90.0), OrientedPoint::unoriented(2.0, 0.0), op(0.0, 3.0, 90.0)];
        let inst = eval_figure(&isosceles(), &pts);
        assert_eq!(inst.proximity, 1.0);
        assert_eq!(inst.assigned_orientations.len(), 1);
        assert_eq!(inst.assigned_orientations[0].0, 1);
        assert_abs_diff_eq!(inst.assigned_orientations[0].1.degrees(), 90.0, epsilon = 1e-9);
    }

    #[test]
    fn other_figures() {
        let any = FuzzySet::Any;
        let equi = FgrSpec::EquilateralTriangle { side: lin(1.0, 2.0, 2.0, 3.0), orien_a: any, orien_b: any, orien_c: any };
        let h = 3f64.sqrt();
        let inst = eval_figure(&equi, &[op(0.0, 0.0, 0.0), op(2.0, 0.0, 0.0), op(1.0, h, 0.0)]);
        assert_abs_diff_eq!(inst.proximity, 1.0, epsilon = 1e-12);

        let rt = FgrSpec::RectangleTriangle { base: lin(2.0, 3.0, 3.0, 4.0), height: lin(3.0, 4.0, 4.0, 5.0), orien_a: any, orien_b: any, orien_c: any };
        let inst = eval_figure(&rt, &[op(0.0, 0.0, 0.0), op(3.0, 0.0, 0.0), op(3.0, 4.0, 0.0)]);
        assert_abs_diff_eq!(inst.proximity, 1.0, epsilon = 1e-12);

        let rect = FgrSpec::Rectangle { base: lin(3.0, 4.0, 4.0, 5.0), height: lin(1.0, 2.0, 2.0, 3.0), orien_a: any, orien_b: any, orien_c: any, orien_d: any };
        let inst = eval_figure(&rect, &[op(0.0, 0.0, 0.0), op(4.0, 0.0, 0.0), op(4.0, 2.0, 0.0), op(0.0, 2.0, 0.0)]);
        assert_abs_diff_eq!(inst.proximity, 1.0, epsilon = 1e-12);
        assert_eq!(inst.kind.figure(), Some(FigureKind::Rectangle));
    }

    fn ring(vector: FuzzySet) -> FgrSpec {
        FgrSpec::RingSector { distance: lin(6.0, 7.0, 7.5, 9.0), vector, orien_b: facing() }
    }

    #[test]
    fn ring_sector_on_cores() {
        let spec = ring(circ(20.0, 40.0, 50.0, 70.0));
        let inst = eval_ring_sector(&spec, op(0.0, 0.0, 0.0), op(5.0, 5.0, 0.0));
        assert_eq!(inst.proximity, 1.0);
        assert_eq!(inst.orientation.degrees(), 0.0);
        let behind = eval_ring_sector(&spec, op(0.0, 0.0, 0.0), op(-5.0, 0.0, 0.0));
        assert_eq!(behind.proximity, 0.0);
        let free = FgrSpec::RingSector { distance: FuzzySet::Any, vector: FuzzySet::Any, orien_b: FuzzySet::Any };
        assert_eq!(eval_ring_sector(&free, op(1.0, 2.0, 3.0), op(-40.0, 7.0, 100.0)).proximity, 1.0);
    }

    #[test]
    fn ring_sector_with_unoriented_a() {
        let spec = ring(circ(20.0, 40.0, 50.0, 70.0));
        let inst = eval_ring_sector(&spec, OrientedPoint::unoriented(0.0, 0.0), op(5.0, 5.0, 0.0));
        assert_eq!(inst.proximity, 1.0);
        assert_eq!(inst.assigned_orientations.len(), 1);
        // B faces 0°, so A must face within ±10° of 0° while seeing B at 40°..50°.
        let a = inst.assigned_orientations[0].1.degrees();
        assert!(signed_difference(a, 0.0).abs() <= 10.0 + 1e-9, "{a}");
    }

    fn trap() -> FgrSpec {
        FgrSpec::TrapezoidalSection {
            distance: lin(6.0, 7.0, 9.0, 10.0),
            vector: circ(-20.0, -10.0, 10.0, 20.0),
            orien_b: FuzzySet::Any,
        }
    }

    #[test]
    fn trapezoidal_projection() {
        let spec = trap();
        let inst = eval_trapezoidal_section(&spec, op(0.0, 0.0, 90.0), op(1.0, 8.0, 0.0));
        assert_eq!(inst.component(Component::ProjectedDistance), Some(1.0));
        assert_eq!(inst.proximity, 1.0);
        let north = eval_trapezoidal_section(&spec, op(0.0, 0.0, 90.0), op(0.0, 8.0, 0.0));
        assert_eq!(north.proximity, 1.0);
        let south = eval_trapezoidal_section(&spec, op(0.0, 0.0, 90.0), op(0.0, -8.0, 0.0));
        assert_eq!(south.proximity, 0.0);
        assert_eq!(south.component(Component::ProjectedDistance), Some(0.0));
    }

    #[test]
    fn trapezoidal_with_unoriented_a() {
        let inst = eval_trapezoidal_section(&trap(), OrientedPoint::unoriented(0.0, 0.0), op(0.0, 10.0, 0.0));
        // Facing B directly gives a projected distance of 10, outside the
        // core; turning away shortens the projection at the cost of the
        // direction membership. The best trade-off is strictly inside (0, 1).
        assert!(inst.proximity > 0.0 && inst.proximity < 1.0, "{}", inst.proximity);
        // Brute-force the optimum over a fine grid.
        let mut best: f64 = 0.0;
        for k in 0..36000 {
            let o = k as f64 / 100.0;
            let p = eval_trapezoidal_section(&trap(), op(0.0, 0.0, o), op(0.0, 10.0, 0.0)).proximity;
            best = best.max(p);
        }
        assert!((inst.proximity - best).abs() < 2e-3, "{} vs {}", inst.proximity, best);
    }

    fn alignment() -> FgrSpec {
        FgrSpec::Alignment {
            gaps: vec![lin(4.0, 5.0, 5.0, 6.0), lin(4.0, 5.0, 5.0, 6.0)],
            orientation: circ(-110.0, -100.0, -80.0, -70.0),
            members: vec![facing(), facing(), facing()],
        }
    }

    #[test]
    fn alignment_on_cores() {
        let inst = eval_alignment(&alignment(), &[op(0.0, 0.0, 90.0), op(5.0, 0.0, 90.0), op(10.0, 0.0, 90.0)]);
        assert_eq!(inst.proximity, 1.0);
        assert_abs_diff_eq!(inst.orientation.degrees(), 90.0, epsilon = 1e-12);
    }

    #[test]
    fn alignment_with_displaced_middle() {
        let pts = [op(0.0, 0.0, 90.0), op(5.0, 1.0, 90.0), op(10.0, 0.0, 90.0)];
        let inst = eval_alignment(&alignment(), &pts);
        // Scatter: centroid (5, 1/3), sxx = 50, syy = 2/3, sxy = 0.
        // The line stays horizontal, so gaps are still 5 and every member
        // still faces the left normal.
        assert_eq!(inst.proximity, 1.0);
        // Tilt the line: members at (0,0), (5,1), (10,1).
        let pts = [op(0.0, 0.0, 90.0), op(5.0, 1.0, 90.0), op(10.0, 1.0, 90.0)];
        let inst = eval_alignment(&alignment(), &pts);
        // Hand computation: centroid (5, 2/3); sxx = 50, syy = 2/3, sxy = 5;
        // θ = ½·atan2(10, 49⅓).
        let theta = 0.5 * 10f64.atan2(50.0 - 2.0 / 3.0);
        let u = Point2::new(theta.cos(), theta.sin());
        let along: Vec<f64> = pts.iter().map(|p| p.location.dot(u)).collect();
        let gap = |g: f64| lin(4.0, 5.0, 5.0, 6.0).degree(g);
        let facing_deg = facing().degree(90.0 - (theta.to_degrees() + 90.0));
        let align_deg = circ(-110.0, -100.0, -80.0, -70.0).degree(theta.to_degrees() - 90.0);
        let want = gap(along[1] - along[0]).min(gap(along[2] - along[1])).min(facing_deg).min(align_deg);
        assert_abs_diff_eq!(inst.proximity, want, epsilon = 1e-12);
    }

    #[test]
    fn alignment_in_reverse_order() {
        let inst = eval_alignment(&alignment(), &[op(10.0, 0.0, 90.0), op(5.0, 0.0, 90.0), op(0.0, 0.0, 90.0)]);
        // Fitted direction now points -x: the gaps stay positive but the
        // members face the right normal.
        assert_eq!(inst.proximity, 0.0);
        assert_eq!(inst.component(Component::Gap(0)), Some(1.0));
        // A member out of list order shows up as a negative gap.
        let shuffled = eval_alignment(&alignment(), &[op(0.0, 0.0, 90.0), op(10.0, 0.0, 90.0), op(5.0, 0.0, 90.0)]);
        assert_eq!(shuffled.component(Component::Gap(1)), Some(0.0));
        assert_eq!(shuffled.proximity, 0.0);
        let spec = FgrSpec::Alignment {
            gaps: vec![lin(4.0, 5.0, 5.0, 6.0)],
            orientation: FuzzySet::Any,
            members: vec![FuzzySet::Any, FuzzySet::Any],
        };
        let line = principal_axis_fit(&[Point2::new(0.0, 0.0), Point2::new(5.0, 0.0)]).unwrap();
        assert_eq!(line.heading().degrees(), 0.0);
        assert_eq!(eval_alignment(&spec, &[op(0.0, 0.0, 0.0), op(5.0, 0.0, 0.0)]).proximity, 1.0);
    }

    #[test]
    fn degenerate_members_score_zero() {
        let z = op(0.0, 0.0, 0.0);
        assert_eq!(eval_figure(&isosceles(), &[z, z, op(1.0, 1.0, 0.0)]).proximity, 0.0);
        assert_eq!(eval_ring_sector(&ring(FuzzySet::Any), z, z).proximity, 0.0);
        assert_eq!(eval_alignment(&alignment(), &[z, z, z]).proximity, 0.0);
    }
}
