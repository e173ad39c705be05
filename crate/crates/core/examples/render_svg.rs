//! Rendering a situation with its recognized instances to SVG.
//!
//! `cargo run --example render_svg -- out.svg`

use std::path::Path;

use spatial_templates::io::{load_situation, load_template};
use spatial_templates::recognition::{recognize, MatchOptions};
use spatial_templates::render::save_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "division.svg".into());
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let template = load_template(data.join("division_template.json"))?;
    let situation = load_situation(data.join("division_situation.json"))?;
    let rec = recognize(&template.compile()?, &situation, 0.3, &MatchOptions::default())?;
    save_svg(&out, &situation, &rec.instances)?;
    println!("wrote {out} with {} instance(s)", rec.instances.len());
    Ok(())
}
