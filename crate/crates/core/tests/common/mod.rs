#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use spatial_templates::fgr::{FgrSpec, RefMode};
use spatial_templates::fuzzy::FuzzySet;
use spatial_templates::geometry::{Angle, Point2};
use spatial_templates::io::load_template;
use spatial_templates::recognition::{Situation, SituationObject};
use spatial_templates::template::{ArgRef, AttributeSchema, ConstraintNode, Conventions, Template, TemplateObject};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

pub fn division() -> Template {
    load_template(data("division_template.json")).unwrap()
}

/// The division analog laid out on every core, all objects facing +y.
pub fn division_nominal() -> Situation {
    let t = division();
    let at = [
        ("O1", -6.0, 20.0),
        ("O2", 6.0, 20.0),
        ("O3", 0.0, 26.0),
        ("O4", -5.0, 0.0),
        ("O5", 5.0, 0.0),
        ("O6", 0.0, 5.0),
        ("O7", 0.0, 14.0),
        ("O8", 0.0, -8.0),
        ("O9", -20.0, 12.0),
        ("O10", 20.0, 12.0),
        ("O11", 12.0, 22.0),
        ("O12", 12.0, 14.0),
    ];
    let objects = at
        .iter()
        .map(|&(id, x, y)| {
            let ty = &t.objects.iter().find(|o| o.id == id).unwrap().attributes["type"];
            SituationObject::new(format!("s{id}"), Point2::new(x, y), Some(Angle::new(90.0).unwrap())).with_attribute("type", ty)
        })
        .collect();
    Situation::new("nominal", objects)
}

pub fn typed(id: &str, ty: Option<&str>) -> TemplateObject {
    let mut attributes = BTreeMap::new();
    if let Some(ty) = ty {
        attributes.insert("type".to_owned(), ty.to_owned());
    }
    TemplateObject { id: id.into(), attributes }
}

/// Two objects related by one ring sector: B 4–6 m from A, anywhere around it.
pub fn pair_template() -> Template {
    let mut schema = AttributeSchema::default();
    schema.attributes.insert("type".into(), vec!["A".into(), "B".into()]);
    Template {
        id: "pair".into(),
        conventions: Conventions::default(),
        schema,
        objects: vec![typed("A", Some("A")), typed("B", Some("B"))],
        constraints: vec![ConstraintNode {
            id: "NEAR".into(),
            reference: RefMode::ComAllObjects,
            args: vec![ArgRef::object("A"), ArgRef::object("B")],
            relation: FgrSpec::RingSector {
                distance: FuzzySet::linear(3.0, 4.0, 6.0, 7.0).unwrap(),
                vector: FuzzySet::Any,
                orien_b: FuzzySet::Any,
            },
        }],
    }
}

pub fn obj(id: &str, x: f64, y: f64, ty: &str) -> SituationObject {
    SituationObject::new(id, Point2::new(x, y), Some(Angle::ZERO)).with_attribute("type", ty)
}
