//! Work against situation size for the fixed three-object template, with
//! log-log slopes of the pruned and unpruned counts.
//!
//! `cargo run --release --example complexity_bench`

use spatial_templates::bench::{bench_run, bench_template, falling_factorial, log_log_slope, write_csv, BenchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ct = bench_template().compile()?;
    let config = BenchConfig { reps: 2, ..BenchConfig::default() };
    let rows = bench_run(&ct, &config)?;
    write_csv(&rows, std::io::stdout())?;

    let pruned: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.tuples_evaluated as f64)).collect();
    let unpruned: Vec<(f64, f64)> = rows.iter().filter_map(|r| r.unpruned.map(|u| (r.n as f64, u as f64))).collect();
    println!("\nslope, unpruned mappings: {:.3}", log_log_slope(&unpruned).unwrap_or(f64::NAN));
    println!("slope, tuples evaluated:  {:.3}", log_log_slope(&pruned).unwrap_or(f64::NAN));
    let exact = rows.iter().all(|r| r.unpruned == Some(falling_factorial(r.n as u64, 3)));
    println!("unpruned counts equal n!/(n-3)!: {exact}");
    Ok(())
}
