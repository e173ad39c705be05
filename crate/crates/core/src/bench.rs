//! Growth of recognition work with situation size.
//!
//! Each row is one seeded random situation of `n` objects. `unpruned` is
//! the number of complete mappings the oracle grades, which for a template
//! whose objects are all type-compatible is n!/(n−m)!.
//!
//! CSV columns: `n, rep, seed, tuples_evaluated, cuts, span_rejections,
//! mappings_evaluated, unpruned, wall_ms`. `unpruned` is empty when the
//! oracle refuses the case as too large.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fgr::{FgrSpec, RefMode};
use crate::fuzzy::FuzzySet;
use crate::geometry::{Angle, Point2};
use crate::oracle::brute_force_recognize;
use crate::recognition::{recognize, MatchOptions, RecognitionError, Situation, SituationObject};
use crate::template::{ArgRef, AttributeSchema, CompiledTemplate, ConstraintNode, Conventions, Template, TemplateObject};

/// Objects per square meter in bench situations.
pub const DENSITY: f64 = 0.04;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub n: usize,
    pub rep: usize,
    pub seed: u64,
    pub tuples_evaluated: u64,
    pub cuts: u64,
    pub span_rejections: u64,
    pub mappings_evaluated: u64,
    pub unpruned: Option<u64>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_list: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    pub threshold: f64,
    pub options: MatchOptions,
    /// Also run the oracle to fill `unpruned`.
    pub oracle: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            n_list: vec![10, 20, 40, 80],
            reps: 3,
            seed: 0,
            threshold: 0.3,
            options: MatchOptions::default(),
            oracle: true,
        }
    }
}

/// The three-object, two-constraint template used by default: a ring sector
/// T1→T2 and a trapezoidal section from its base to T3. No object carries a
/// type, so every situation object is compatible with every slot.
pub fn bench_template() -> Template {
    let lin = |a, b, c, d| FuzzySet::linear(a, b, c, d).expect("ordered");
    let objects = ["T1", "T2", "T3"]
        .iter()
        .map(|id| TemplateObject { id: (*id).into(), attributes: BTreeMap::new() })
        .collect();
    Template {
        id: "bench-m3".into(),
        conventions: Conventions::default(),
        schema: AttributeSchema::default(),
        objects,
        constraints: vec![
            ConstraintNode {
                id: "PAIR".into(),
                reference: RefMode::BasePairCom,
                args: vec![ArgRef::object("T1"), ArgRef::object("T2")],
                relation: FgrSpec::RingSector {
                    distance: lin(2.0, 3.0, 5.0, 6.0),
                    vector: FuzzySet::Any,
                    orien_b: FuzzySet::Any,
                },
            },
            ConstraintNode {
                id: "AHEAD".into(),
                reference: RefMode::ComAllObjects,
                args: vec![ArgRef::fgr("PAIR"), ArgRef::object("T3")],
                relation: FgrSpec::TrapezoidalSection {
                    distance: lin(2.0, 4.0, 6.0, 9.0),
                    vector: FuzzySet::circular(330.0, 350.0, 10.0, 30.0).expect("under 360"),
                    orien_b: FuzzySet::Any,
                },
            },
        ],
    }
}

/// `n` objects spread uniformly over a square sized for [`DENSITY`].
pub fn bench_situation(n: usize, seed: u64) -> Situation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (n as f64 / DENSITY).sqrt();
    let objects = (0..n)
        .map(|i| {
            let p = Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
            let orientation = Angle::wrap(rng.gen_range(0.0..360.0));
            SituationObject::new(format!("b{i:03}"), p, Some(orientation))
        })
        .collect();
    Situation::new(format!("bench-{n}-{seed}"), objects)
}

/// Seed of repetition `rep` at size `n`.
pub fn row_seed(base: u64, n: usize, rep: usize) -> u64 {
    base.wrapping_mul(1_000_003).wrapping_add((n as u64) << 16).wrapping_add(rep as u64)
}

pub fn bench_run(ct: &CompiledTemplate, config: &BenchConfig) -> Result<Vec<BenchRow>, RecognitionError> {
    let mut rows = Vec::new();
    for &n in &config.n_list {
        for rep in 0..config.reps {
            let seed = row_seed(config.seed, n, rep);
            let s = bench_situation(n, seed);
            let rec = recognize(ct, &s, config.threshold, &config.options)?;
            let unpruned = if config.oracle {
                brute_force_recognize(ct, &s, config.threshold).ok().map(|r| r.mappings_evaluated)
            } else {
                None
            };
            rows.push(BenchRow {
                n,
                rep,
                seed,
                tuples_evaluated: rec.stats.tuples_evaluated,
                cuts: rec.stats.cuts,
                span_rejections: rec.stats.span_rejections,
                mappings_evaluated: rec.stats.mappings_evaluated,
                unpruned,
                wall_ms: rec.stats.wall_time_ms,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// n!/(n−m)!, saturating.
pub fn falling_factorial(n: u64, m: u64) -> u64 {
    if m > n {
        return 0;
    }
    (n - m + 1..=n).fold(1u64, u64::saturating_mul)
}

/// Least-squares slope of ln y against ln x. `None` with fewer than two
/// distinct x values or any non-positive coordinate.
pub fn log_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_values() {
        assert_eq!(falling_factorial(10, 3), 720);
        assert_eq!(falling_factorial(5, 0), 1);
        assert_eq!(falling_factorial(2, 3), 0);
    }

    #[test]
    fn slope_of_a_power_law_is_its_exponent() {
        let pts: Vec<(f64, f64)> = [10.0, 20.0, 40.0].iter().map(|&x: &f64| (x, 7.0 * x.powi(3))).collect();
        approx::assert_abs_diff_eq!(log_log_slope(&pts).unwrap(), 3.0, epsilon = 1e-12);
        assert_eq!(log_log_slope(&[(1.0, 1.0)]), None);
    }

    #[test]
    fn rows_are_reproducible_and_unpruned_counts_exact() {
        let ct = bench_template().compile().unwrap();
        let config = BenchConfig { n_list: vec![6, 9], reps: 1, ..BenchConfig::default() };
        let a = bench_run(&ct, &config).unwrap();
        let b = bench_run(&ct, &config).unwrap();
        let strip = |rows: &[BenchRow]| rows.iter().map(|r| (r.n, r.seed, r.tuples_evaluated, r.unpruned)).collect::<Vec<_>>();
        assert_eq!(strip(&a), strip(&b));
        for r in &a {
            assert_eq!(r.unpruned, Some(falling_factorial(r.n as u64, 3)));
        }
    }

    #[test]
    fn shipped_bench_template_matches() {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data/bench_template.json");
        assert_eq!(crate::io::load_template(path).unwrap(), bench_template());
    }

    #[test]
    fn csv_has_header_and_empty_unpruned() {
        let row = BenchRow {
            n: 3,
            rep: 0,
            seed: 1,
            tuples_evaluated: 2,
            cuts: 1,
            span_rejections: 0,
            mappings_evaluated: 1,
            unpruned: None,
            wall_ms: 0.5,
        };
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,rep,seed,tuples_evaluated,cuts,span_rejections,mappings_evaluated,unpruned,wall_ms\n3,0,1,2,1,0,1,,0.5\n"
        );
    }
}
