//! Recognizing the 12-object division analog in a 15-object situation and
//! printing the per-constraint breakdown of every instance.
//!
//! Run from the crate directory: `cargo run --example recognize`.

use std::path::Path;

use spatial_templates::io::{load_situation, load_template};
use spatial_templates::recognition::{recognize, MatchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let template = load_template(data.join("division_template.json"))?;
    let situation = load_situation(data.join("division_situation.json"))?;
    let ct = template.compile()?;

    let rec = recognize(&ct, &situation, 0.3, &MatchOptions::default())?;
    println!(
        "{} instance(s); {} tuples evaluated, {} cuts, {:.2} ms",
        rec.instances.len(),
        rec.stats.tuples_evaluated,
        rec.stats.cuts,
        rec.stats.wall_time_ms
    );
    for (rank, inst) in rec.instances.iter().enumerate() {
        println!("\n#{} overall {:.4}, weakest {}", rank + 1, inst.overall, inst.weakest);
        for p in &inst.mapping {
            print!("{}→{} ", p.template_object, p.situation_object);
        }
        println!();
        for c in &inst.constraints {
            let parts: Vec<String> = c.components.iter().map(|d| format!("{}={:.3}", d.component, d.degree)).collect();
            println!("  {:<12} {:.4}  {}", c.id, c.proximity, parts.join(" "));
        }
        for a in &inst.assignments {
            println!("  assigned to {}: orientation {:?} attributes {:?}", a.situation_object, a.orientation.map(|o| o.degrees()), a.attributes);
        }
    }

    // Only the best instance.
    let best = recognize(&ct, &situation, 0.3, &MatchOptions { max_instances: Some(1), ..MatchOptions::default() })?;
    println!("\nwith max_instances = 1: {} instance(s), {} tuples evaluated", best.instances.len(), best.stats.tuples_evaluated);
    Ok(())
}
