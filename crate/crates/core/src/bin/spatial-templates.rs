use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use spatial_templates::bench::{bench_run, bench_template, log_log_slope, write_csv, BenchConfig};
use spatial_templates::generate::generate_situation;
use spatial_templates::io::{
    load_gen_spec, load_report, load_situation, load_template, save_json, to_json, MatchReport,
};
use spatial_templates::oracle::brute_force_recognize;
use spatial_templates::recognition::{recognize, MatchOptions};
use spatial_templates::render::save_svg;
use spatial_templates::spatial_index::DEFAULT_K;

#[derive(Parser)]
#[command(version, about = "Find fuzzy spatial template instances in 2-D situations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Subcommand)]
enum Command {
    /// Check a template file and report every violation.
    Validate { template: PathBuf },
    /// Recognize template instances and write a match report.
    Match {
        #[arg(long)]
        template: PathBuf,
        #[arg(long)]
        situation: PathBuf,
        #[arg(long)]
        threshold: f64,
        /// Use the exhaustive oracle instead of the search.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "on")]
        span_filter: Switch,
        #[arg(long, default_value_t = DEFAULT_K)]
        knn: usize,
        #[arg(long)]
        max_instances: Option<usize>,
        /// Report path; printed to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a situation, optionally with the instances of a match report.
    Render {
        #[arg(long)]
        situation: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Draw only the best N instances.
        #[arg(long)]
        top: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a synthetic situation from a spec.
    Gen {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Measure search work against situation size.
    Bench {
        /// Defaults to the built-in three-object template.
        #[arg(long)]
        template: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "10,20,40,80")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 0.3)]
        threshold: f64,
        /// Skip the oracle and leave `unpruned` empty.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Validate { template } => {
            let t = load_template(&template)?;
            println!("{}: ok ({} objects, {} constraints)", t.id, t.objects.len(), t.constraints.len());
        }
        Command::Match { template, situation, threshold, oracle, span_filter, knn, max_instances, out } => {
            let t = load_template(&template)?;
            let ct = t.compile()?;
            let s = load_situation(&situation)?;
            let report = if oracle {
                let start = Instant::now();
                let run = brute_force_recognize(&ct, &s, threshold)?;
                MatchReport::from_oracle(&t.id, &s.id, threshold, run, start.elapsed().as_secs_f64() * 1e3)
            } else {
                let options = MatchOptions {
                    use_span_filter: matches!(span_filter, Switch::On),
                    knn,
                    max_instances,
                    ..MatchOptions::default()
                };
                let rec = recognize(&ct, &s, threshold, &options)?;
                MatchReport::from_search(&t.id, &s.id, threshold, options, rec)
            };
            eprintln!(
                "{} instance(s) in {:.1} ms",
                report.instances.len(),
                report.statistics.wall_time_ms
            );
            for (i, inst) in report.instances.iter().take(5).enumerate() {
                eprintln!("  #{} overall {:.4}, weakest {}", i + 1, inst.overall, inst.weakest);
            }
            match out {
                Some(path) => save_json(&path, &report)?,
                None => print!("{}", to_json(&report)),
            }
        }
        Command::Render { situation, report, top, out } => {
            let s = load_situation(&situation)?;
            let mut instances = match report {
                Some(path) => {
                    let r = load_report(&path)?;
                    if r.situation_id != s.id {
                        bail!("report is for situation `{}`, not `{}`", r.situation_id, s.id);
                    }
                    r.instances
                }
                None => Vec::new(),
            };
            if let Some(n) = top {
                instances.truncate(n);
            }
            save_svg(&out, &s, &instances)?;
        }
        Command::Gen { spec, seed, out } => {
            let spec = load_gen_spec(&spec)?;
            let g = generate_situation(&spec, seed)?;
            for (i, plant) in g.plants.iter().enumerate() {
                let pairs: Vec<String> = plant.iter().map(|(t, s)| format!("{t}={s}")).collect();
                eprintln!("plant {}: {}", i + 1, pairs.join(" "));
            }
            save_json(&out, &g.situation)?;
        }
        Command::Bench { template, n_list, seed, reps, threshold, no_oracle, out } => {
            let t = match template {
                Some(path) => load_template(path)?,
                None => bench_template(),
            };
            let ct = t.compile()?;
            let config = BenchConfig { n_list, reps, seed, threshold, oracle: !no_oracle, ..BenchConfig::default() };
            let rows = bench_run(&ct, &config)?;
            let file = File::create(&out).with_context(|| format!("cannot create {}", out.display()))?;
            write_csv(&rows, BufWriter::new(file))?;
            let pts = |f: fn(&spatial_templates::bench::BenchRow) -> Option<u64>| -> Vec<(f64, f64)> {
                rows.iter().filter_map(|r| f(r).map(|v| (r.n as f64, v as f64))).collect()
            };
            if let Some(slope) = log_log_slope(&pts(|r| Some(r.tuples_evaluated))) {
                eprintln!("log-log slope, tuples evaluated: {slope:.3}");
            }
            if let Some(slope) = log_log_slope(&pts(|r| r.unpruned)) {
                eprintln!("log-log slope, unpruned mappings: {slope:.3}");
            }
        }
    }
    Ok(())
}
