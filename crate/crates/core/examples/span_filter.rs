//! The nearest-neighbor table and span filter: same results, less work on
//! a scene with two well-separated groups.

use std::collections::BTreeMap;

use spatial_templates::bench::bench_template;
use spatial_templates::generate::{generate_situation, Clutter, GenSpec, Layout, Region};
use spatial_templates::geometry::Point2;
use spatial_templates::recognition::{recognize, MatchOptions};
use spatial_templates::spatial_index::{build_knn_table, span_filter};
use spatial_templates::template::max_span_bound;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GenSpec {
        id: "two-groups".into(),
        n: 40,
        region: Region { min: Point2::new(0.0, 0.0), max: Point2::new(200.0, 200.0) },
        clutter: Clutter { attributes: BTreeMap::new(), layout: Layout::Clusters { count: 2, radius: 6.0 } },
        plants: vec![],
        undefined_orientation: 0.0,
    };
    let situation = generate_situation(&spec, 3)?.situation;
    let ct = bench_template().compile()?;

    let table = build_knn_table(&situation, 8);
    let first = &ct.constraints()[0];
    let bound = max_span_bound(&first.spec, 0.3);
    println!("span bound of {}: {bound:?}", first.id);
    let far = (1..situation.objects.len())
        .find(|&j| situation.objects[0].location.distance(situation.objects[j].location) > 50.0)
        .expect("two groups");
    println!("pair (0, {far}) -> {:?}", span_filter(&table, &[0, far], bound));
    println!("nearest neighbor of 0: {:?}", table.neighbors(0)[0]);

    let on = recognize(&ct, &situation, 0.3, &MatchOptions::default())?;
    let off = recognize(&ct, &situation, 0.3, &MatchOptions::unfiltered())?;
    assert_eq!(on.instances, off.instances);
    println!(
        "{} instances either way; tuples evaluated {} with the filter, {} without ({} span rejections)",
        on.instances.len(),
        on.stats.tuples_evaluated,
        off.stats.tuples_evaluated,
        on.stats.span_rejections
    );
    Ok(())
}
