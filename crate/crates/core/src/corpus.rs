//! Seeded random small cases: at most 4 template objects, 3 constraints and 8
//! situation objects. Used to cross-check the search against the oracle.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fgr::{FgrSpec, RefMode};
use crate::fuzzy::FuzzySet;
use crate::generate::{generate_situation, Clutter, GenSpec, Layout, Plant, Region, TemplateRef};
use crate::geometry::{Angle, Point2};
use crate::recognition::{Situation, SituationObject};
use crate::template::{ArgRef, AttributeSchema, ConstraintNode, Conventions, Template, TemplateObject};

pub const TYPES: [&str; 2] = ["A", "B"];

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub seed: u64,
    pub template: Template,
    pub situation: Situation,
    /// Whether an instance was planted in the situation.
    pub planted: bool,
}

fn distance_set(rng: &mut ChaCha8Rng) -> FuzzySet {
    if rng.gen_bool(0.1) {
        return FuzzySet::Any;
    }
    let center = rng.gen_range(2.0..6.0);
    let core = rng.gen_range(0.0..1.5);
    let ramp = rng.gen_range(0.5..3.0);
    FuzzySet::linear(center - core - ramp, center - core, center + core, center + core + ramp).expect("ordered")
}

fn angle_set(rng: &mut ChaCha8Rng, any: f64) -> FuzzySet {
    if rng.gen_bool(any) {
        return FuzzySet::Any;
    }
    let center: f64 = rng.gen_range(0.0..360.0);
    let core = rng.gen_range(10.0..90.0);
    let ramp = rng.gen_range(20.0..60.0);
    FuzzySet::circular(center - core - ramp, center - core, center + core, center + core + ramp).expect("under 360")
}

fn relation(rng: &mut ChaCha8Rng, arity: usize) -> FgrSpec {
    let o = |rng: &mut ChaCha8Rng| angle_set(rng, 0.4);
    match arity {
        2 => match rng.gen_range(0..3) {
            0 => FgrSpec::RingSector {
                distance: distance_set(rng),
                vector: angle_set(rng, 0.3),
                orien_b: o(rng),
            },
            1 => FgrSpec::TrapezoidalSection {
                distance: distance_set(rng),
                vector: angle_set(rng, 0.0),
                orien_b: o(rng),
            },
            _ => FgrSpec::Alignment {
                gaps: vec![distance_set(rng)],
                orientation: angle_set(rng, 0.5),
                members: vec![o(rng), o(rng)],
            },
        },
        3 => match rng.gen_range(0..4) {
            0 => FgrSpec::IsoscelesTriangle {
                base: distance_set(rng),
                height: distance_set(rng),
                orien_a: o(rng),
                orien_b: o(rng),
                orien_c: o(rng),
            },
            1 => FgrSpec::EquilateralTriangle { side: distance_set(rng), orien_a: o(rng), orien_b: o(rng), orien_c: o(rng) },
            2 => FgrSpec::RectangleTriangle {
                base: distance_set(rng),
                height: distance_set(rng),
                orien_a: o(rng),
                orien_b: o(rng),
                orien_c: o(rng),
            },
            _ => FgrSpec::Alignment {
                gaps: vec![distance_set(rng), distance_set(rng)],
                orientation: angle_set(rng, 0.5),
                members: vec![o(rng), o(rng), o(rng)],
            },
        },
        _ => FgrSpec::Rectangle {
            base: distance_set(rng),
            height: distance_set(rng),
            orien_a: o(rng),
            orien_b: o(rng),
            orien_c: o(rng),
            orien_d: o(rng),
        },
    }
}

/// A random valid template: every object is used, later constraints may
/// nest earlier ones.
pub fn random_template(rng: &mut ChaCha8Rng) -> Template {
    let m = rng.gen_range(2..=4usize);
    let k = rng.gen_range(1..=3usize);
    let ids: Vec<String> = (0..m).map(|i| format!("T{}", i + 1)).collect();
    let mut constraints: Vec<ConstraintNode> = Vec::new();
    let mut unused: Vec<usize> = (0..m).collect();
    for c in 0..k {
        let last = c + 1 == k;
        let nested = c > 0 && rng.gen_bool(0.5);
        let mut args = Vec::new();
        if nested {
            let child = rng.gen_range(0..c);
            let reference = *RefMode::ALL.choose(rng).expect("modes");
            args.push(if rng.gen_bool(0.5) {
                ArgRef::fgr(format!("C{}", child + 1))
            } else {
                ArgRef::fgr_with(format!("C{}", child + 1), reference)
            });
        }
        if last && unused.len() + args.len() > 4 {
            args.clear();
        }
        let min_objects = if last { unused.len() } else { 1 };
        let want = rng.gen_range(1..=4usize).max(min_objects).max(2 - args.len());
        let want = want.min(4 - args.len()).min(m);
        let mut chosen: Vec<usize> = Vec::new();
        for &o in &unused {
            if chosen.len() < want {
                chosen.push(o);
            }
        }
        let mut rest: Vec<usize> = (0..m).filter(|o| !chosen.contains(o)).collect();
        rest.shuffle(rng);
        while chosen.len() < want {
            chosen.push(rest.pop().expect("enough objects"));
        }
        chosen.shuffle(rng);
        unused.retain(|o| !chosen.contains(o));
        args.extend(chosen.iter().map(|&o| ArgRef::object(ids[o].clone())));
        if args.len() == 2 && matches!(args[0], ArgRef::Fgr(_)) && rng.gen_bool(0.5) {
            args.swap(0, 1);
        }
        constraints.push(ConstraintNode {
            id: format!("C{}", c + 1),
            reference: *RefMode::ALL.choose(rng).expect("modes"),
            relation: relation(rng, args.len()),
            args,
        });
    }
    let mut schema = AttributeSchema::default();
    schema.attributes.insert("type".into(), TYPES.iter().map(|t| t.to_string()).collect());
    let objects = ids
        .iter()
        .map(|id| {
            let mut attributes = BTreeMap::new();
            if rng.gen_bool(0.7) {
                attributes.insert("type".to_owned(), TYPES.choose(rng).expect("types").to_string());
            }
            TemplateObject { id: id.clone(), attributes }
        })
        .collect();
    Template {
        id: "random".into(),
        conventions: Conventions::default(),
        schema,
        objects,
        constraints,
    }
}

fn random_situation(rng: &mut ChaCha8Rng, n: usize) -> Situation {
    let objects = (0..n)
        .map(|i| {
            let location = Point2::new(rng.gen_range(0.0..12.0), rng.gen_range(0.0..12.0));
            let orientation = rng.gen_bool(0.75).then(|| Angle::wrap(rng.gen_range(0.0..360.0)));
            let mut o = SituationObject::new(format!("s{}", i + 1), location, orientation);
            if rng.gen_bool(0.8) {
                o.attributes.insert("type".into(), TYPES.choose(rng).expect("types").to_string());
            }
            o
        })
        .collect();
    Situation::new("random", objects)
}

/// One seeded case. About half of the situations carry a planted,
/// moderately distorted instance; the rest are pure clutter.
pub fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let template = random_template(&mut rng);
    let m = template.objects.len();
    let n = rng.gen_range(m.max(3)..=8usize);
    if rng.gen_bool(0.5) {
        let spec = GenSpec {
            id: "random".into(),
            n,
            region: Region { min: Point2::ORIGIN, max: Point2::new(12.0, 12.0) },
            clutter: Clutter {
                attributes: BTreeMap::from([("type".to_owned(), TYPES.iter().map(|t| t.to_string()).collect())]),
                layout: Layout::Uniform,
            },
            plants: vec![Plant {
                template: TemplateRef::Inline(Box::new(template.clone())),
                distortion: rng.gen_range(0.0..0.6),
            }],
            undefined_orientation: 0.2,
        };
        if let Ok(g) = generate_situation(&spec, rng.gen()) {
            return Case { seed, template, situation: g.situation, planted: true };
        }
    }
    let situation = random_situation(&mut rng, n);
    Case { seed, template, situation, planted: false }
}

/// `count` consecutive cases starting at `first_seed`.
pub fn cases(first_seed: u64, count: usize) -> Vec<Case> {
    (first_seed..first_seed + count as u64).map(case).collect()
}
