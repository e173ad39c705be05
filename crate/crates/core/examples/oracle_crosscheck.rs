//! Cross-checking the pruned search against exhaustive enumeration on seeded
//! random cases.

use spatial_templates::corpus::cases;
use spatial_templates::oracle::brute_force_recognize;
use spatial_templates::recognition::{recognize, MatchOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let threshold = 0.3;
    let (mut agree, mut found, mut tuples, mut mappings) = (0, 0, 0, 0);
    let corpus = cases(0, 200);
    for case in &corpus {
        let ct = case.template.compile()?;
        let search = recognize(&ct, &case.situation, threshold, &MatchOptions::default())?;
        let oracle = brute_force_recognize(&ct, &case.situation, threshold)?;
        if search.instances == oracle.instances {
            agree += 1;
        } else {
            println!("seed {}: search and oracle disagree", case.seed);
        }
        found += usize::from(!oracle.instances.is_empty());
        tuples += search.stats.tuples_evaluated;
        mappings += oracle.mappings_evaluated;
    }
    println!("{agree}/{} cases agree; {found} have instances", corpus.len());
    println!("search evaluated {tuples} tuples; the oracle graded {mappings} complete mappings");
    Ok(())
}
