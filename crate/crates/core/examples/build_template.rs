//! Building a template in code, validating it, and inspecting the compiled
//! evaluation order, search plan and span bounds.

use std::collections::BTreeMap;

use spatial_templates::fgr::{FgrSpec, RefMode};
use spatial_templates::fuzzy::FuzzySet;
use spatial_templates::io::to_json;
use spatial_templates::template::{
    max_span_bound, validate_template, ArgRef, AttributeSchema, ConstraintNode, Conventions, Template, TemplateObject,
};

fn object(id: &str, ty: &str) -> TemplateObject {
    TemplateObject { id: id.into(), attributes: BTreeMap::from([("type".to_owned(), ty.to_owned())]) }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lin = FuzzySet::linear;
    let mut schema = AttributeSchema::default();
    schema.attributes.insert("type".into(), vec!["tank".into(), "hq".into()]);

    let template = Template {
        id: "picket".into(),
        conventions: Conventions::default(),
        schema,
        objects: vec![object("L", "tank"), object("R", "tank"), object("H", "hq")],
        constraints: vec![
            ConstraintNode {
                id: "LINE".into(),
                reference: RefMode::ComArgs,
                args: vec![ArgRef::object("L"), ArgRef::object("R")],
                relation: FgrSpec::Alignment {
                    gaps: vec![lin(3.0, 4.0, 6.0, 8.0)?],
                    orientation: FuzzySet::Any,
                    members: vec![FuzzySet::Any, FuzzySet::Any],
                },
            },
            ConstraintNode {
                id: "BEHIND".into(),
                reference: RefMode::ComAllObjects,
                args: vec![ArgRef::fgr("LINE"), ArgRef::object("H")],
                relation: FgrSpec::TrapezoidalSection {
                    distance: lin(2.0, 3.0, 5.0, 6.0)?,
                    vector: FuzzySet::circular(150.0, 165.0, 195.0, 210.0)?,
                    orien_b: FuzzySet::Any,
                },
            },
        ],
    };

    let report = validate_template(&template);
    println!("valid: {}", report.is_ok());

    let ct = template.compile()?;
    println!("evaluation order: {:?}", ct.topological_order().collect::<Vec<_>>());
    let plan: Vec<&str> = ct.plan().iter().map(|&c| ct.constraints()[c].id.as_str()).collect();
    println!("search plan:      {plan:?}");
    for c in ct.constraints() {
        println!("span bound of {:<6} at threshold 0.3: {:?}", c.id, max_span_bound(&c.spec, 0.3));
    }

    // Validation collects every problem at once.
    let mut broken = template.clone();
    broken.constraints[1].args[0] = ArgRef::fgr("NOPE");
    broken.objects[2].attributes.insert("type".into(), "jeep".into());
    println!("\nbroken template:\n{}", validate_template(&broken));

    print!("\n{}", to_json(&template));
    Ok(())
}
