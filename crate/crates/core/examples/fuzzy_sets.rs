//! Trapezoidal membership on linear and circular domains, the unconstrained
//! set, and min aggregation.

use spatial_templates::fuzzy::{combine_min, FuzzySet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let distance = FuzzySet::linear(2.0, 3.0, 5.0, 6.0)?;
    for x in [1.5, 2.5, 4.0, 5.75, 7.0] {
        println!("distance {x:>4} m -> {:.3}", distance.membership(x)?);
    }

    // A circular set whose core straddles 0°.
    let heading = FuzzySet::circular(-30.0, -10.0, 10.0, 30.0)?;
    for deg in [350.0, 0.0, 15.0, 25.0, 180.0] {
        println!("heading {deg:>5}° -> {:.3}", heading.membership(deg)?);
    }

    println!("any(123) -> {}", FuzzySet::Any.membership(123.0)?);
    println!("min(0.9, 0.4, 1.0) = {}", combine_min(&[0.9, 0.4, 1.0])?);

    let json = serde_json::to_string(&heading)?;
    println!("serialized: {json}");
    Ok(())
}
