//! Seeded synthetic situations: planting a distorted template instance among
//! clutter, then finding it again.

use std::path::Path;

use spatial_templates::generate::generate_situation;
use spatial_templates::io::load_gen_spec;
use spatial_templates::recognition::{recognize, MatchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let mut spec = load_gen_spec(data.join("division_gen.json"))?;
    let spatial_templates::generate::TemplateRef::Inline(template) = spec.plants[0].template.clone() else {
        unreachable!("load_gen_spec inlines templates")
    };
    let ct = template.compile()?;

    for distortion in [0.0, 0.3, 0.6, 0.9] {
        spec.plants[0].distortion = distortion;
        let g = generate_situation(&spec, 11)?;
        let rec = recognize(&ct, &g.situation, 0.0, &MatchOptions::default())?;
        let planted: Vec<&str> = template.objects.iter().map(|o| g.plants[0][&o.id].as_str()).collect();
        let hit = rec.instances.iter().find(|i| i.situation_ids() == planted);
        println!(
            "distortion {distortion:.1}: {} object(s), {} instance(s), planted instance overall {}",
            g.situation.objects.len(),
            rec.instances.len(),
            hit.map_or("not found".to_owned(), |i| format!("{:.3} (weakest {})", i.overall, i.weakest))
        );
    }

    let a = generate_situation(&spec, 5)?;
    let b = generate_situation(&spec, 5)?;
    println!("same seed, same situation: {}", a == b);
    Ok(())
}
