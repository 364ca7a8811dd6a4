//! `sweep`: decode many corrupted words per corruption level, emit CSV.

use crate::cmd_decode::oracle_mode;
use crate::{channel, specs, Cli};
use clap::{Args, ValueEnum};
use listdec_core::ael;
use listdec_core::codes;
use listdec_core::listdec::{ael_list_decode, tanner_list_decode, DecodeParams};
use listdec_core::tanner;
use listdec_core::{Error, Result};
use rayon::prelude::*;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tanner,
    Ael,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub graph: String,
    /// Local code spec (tanner).
    #[arg(long)]
    pub local: Option<String>,
    /// Inner code spec (ael).
    #[arg(long)]
    pub inner: Option<String>,
    /// Outer code spec (ael).
    #[arg(long)]
    pub outer: Option<String>,
    /// Comma-separated corruption sizes, e.g. "0,1,2".
    #[arg(long = "errors-list")]
    pub errors_list: String,
    /// Decodes per corruption level.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long = "csv-out")]
    pub csv_out: Option<String>,
}

const HEADER: &str = "errors,trials,mean_list_size,completeness,median_decode_ms";

struct PointRow {
    errors: usize,
    trials: usize,
    mean_list_size: f64,
    completeness: f64,
    median_decode_ms: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

pub fn run(cli: &Cli, args: &SweepArgs) -> Result<i32> {
    let points = specs::parse_usize_list(&args.errors_list)?;
    let rows: Result<Vec<PointRow>> = points
        .par_iter()
        .enumerate()
        .map(|(idx, &errors)| run_point(cli, args, errors, idx as u64))
        .collect();
    let rows = rows?;
    let mut out = String::from(HEADER);
    out.push('\n');
    for r in &rows {
        out.push_str(&format!(
            "{},{},{:.4},{:.4},{:.3}\n",
            r.errors, r.trials, r.mean_list_size, r.completeness, r.median_decode_ms
        ));
    }
    match &args.csv_out {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Error::InvalidParameter(format!("cannot write '{path}': {e}")))?,
        None => print!("{out}"),
    }
    Ok(0)
}

fn run_point(cli: &Cli, args: &SweepArgs, errors: usize, point_idx: u64) -> Result<PointRow> {
    let mut list_sizes = Vec::new();
    let mut times = Vec::new();
    let mut complete = 0usize;
    match args.kind {
        Kind::Tanner => {
            let local_spec = args
                .local
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--kind tanner requires --local".into()))?;
            let g = specs::build_graph(&args.graph)?;
            let local = specs::build_local_code(local_spec)?;
            let code = tanner::build_tanner(g, local)?;
            let radius = (code.local().delta() * code.graph().d() as f64).floor() as usize;
            let ell = cli
                .ell
                .unwrap_or_else(|| codes::max_list_size(code.local(), radius, cli.seed).max(1));
            for t in 0..args.trials {
                let seed = cli
                    .seed
                    .wrapping_add(point_idx.wrapping_mul(1_000_003))
                    .wrapping_add(t as u64);
                let word = channel::random_tanner_codeword(&code, seed)?;
                let received = channel::corrupt(&word, code.q(), errors, seed.wrapping_add(1));
                let params = DecodeParams {
                    eps: cli.epsilon,
                    ell,
                    gamma: cli.gamma,
                    oracle: oracle_mode(cli.oracle),
                    p_max: cli.max_p,
                    enum_cap: cli.enum_cap,
                    seed,
                };
                let t0 = Instant::now();
                let report = tanner_list_decode(&code, &received, &params)?;
                times.push(t0.elapsed().as_secs_f64() * 1e3);
                list_sizes.push(report.words.len() as f64);
                if report.words.contains(&word) {
                    complete += 1;
                }
            }
        }
        Kind::Ael => {
            let inner_spec = args
                .inner
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--kind ael requires --inner".into()))?;
            let outer_spec = args
                .outer
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("--kind ael requires --outer".into()))?;
            let g = specs::build_graph(&args.graph)?;
            let inner = specs::build_local_code(inner_spec)?;
            let outer = specs::build_outer_code(outer_spec)?;
            let code = ael::build_ael(inner, outer, g)?;
            let radius = (code.inner().delta() * code.graph().d() as f64).floor() as usize;
            let ell = cli
                .ell
                .unwrap_or_else(|| codes::max_list_size(code.inner(), radius, cli.seed).max(1));
            for t in 0..args.trials {
                let seed = cli
                    .seed
                    .wrapping_add(point_idx.wrapping_mul(1_000_003))
                    .wrapping_add(t as u64);
                let msg = channel::random_outer_message(code.outer(), seed);
                let outer_word = codes::rs_encode(code.outer(), &msg)?;
                let (word, _) = ael::ael_encode(&code, &outer_word)?;
                let received =
                    channel::corrupt(&word, code.inner().q(), errors, seed.wrapping_add(1));
                let params = DecodeParams {
                    eps: cli.epsilon,
                    ell,
                    gamma: cli.gamma,
                    oracle: oracle_mode(cli.oracle),
                    p_max: cli.max_p,
                    enum_cap: cli.enum_cap,
                    seed,
                };
                let t0 = Instant::now();
                let report = ael_list_decode(&code, &received, &params)?;
                times.push(t0.elapsed().as_secs_f64() * 1e3);
                list_sizes.push(report.words.len() as f64);
                if report.words.contains(&word) {
                    complete += 1;
                }
            }
        }
    }
    let trials = args.trials.max(1);
    Ok(PointRow {
        errors,
        trials: args.trials,
        mean_list_size: list_sizes.iter().sum::<f64>() / trials as f64,
        completeness: complete as f64 / trials as f64,
        median_decode_ms: median(times),
    })
}
