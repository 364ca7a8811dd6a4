//! `bench`: time decoding at doubling block lengths with fixed parameters
//! and report consecutive wall-time ratios.

use crate::{channel, Cli, OracleArg};
use clap::{Args, ValueEnum};
use listdec_core::codes::make_linear_code;
use listdec_core::graphs::random_regular_bipartite;
use listdec_core::listdec::{tanner_list_decode, DecodeParams};
use listdec_core::regularity::OracleMode;
use listdec_core::tanner::build_tanner;
use listdec_core::{Error, Result};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tanner,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Kind::Tanner)]
    pub kind: Kind,
    /// Comma-separated block lengths (left vertices).
    #[arg(long = "n-list", default_value = "1024,2048,4096")]
    pub n_list: String,
    /// Graph degree.
    #[arg(long, default_value_t = 8)]
    pub d: usize,
    /// Corrupted edges per run.
    #[arg(long, default_value_t = 4)]
    pub errors: usize,
    /// Timed runs per block length; the median is reported.
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    /// CSV output path; stdout when omitted.
    #[arg(long = "csv-out")]
    pub csv_out: Option<String>,
}

const HEADER: &str = "n,d,runs,median_ms,ratio_to_prev";
/// Heuristic-oracle restarts, kept small and fixed across block lengths.
const BENCH_RESTARTS: usize = 8;

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs[xs.len() / 2]
}

pub fn run(cli: &Cli, args: &BenchArgs) -> Result<i32> {
    let ns = crate::specs::parse_usize_list(&args.n_list)?;
    if args.runs == 0 {
        return Err(Error::InvalidParameter("--runs must be positive".into()));
    }
    if cli.oracle == OracleArg::Exact && ns.iter().any(|&n| n > 20) {
        // Scaling runs need the O(nd) oracle; the exact one is exponential.
        return Err(Error::InvalidParameter(
            "bench requires --oracle heuristic for n > 20".into(),
        ));
    }
    // Fixed across block lengths so only n varies.
    let gamma = cli.gamma.unwrap_or(0.35);
    let p_max = cli.max_p.unwrap_or(4);
    let ell = cli.ell.unwrap_or(2);
    let mut out = String::from(HEADER);
    out.push('\n');
    let mut prev: Option<f64> = None;
    for &n in &ns {
        let g = random_regular_bipartite(n, args.d, cli.seed)?;
        let local = make_linear_code(2, &[vec![1; args.d]])?;
        let code = build_tanner(g, local)?;
        let mut times = Vec::new();
        for r in 0..args.runs {
            let seed = cli.seed.wrapping_add(r as u64);
            let word = channel::random_tanner_codeword(&code, seed)?;
            let received = channel::corrupt(&word, 2, args.errors, seed.wrapping_add(1));
            let params = DecodeParams {
                eps: cli.epsilon,
                ell,
                gamma: Some(gamma),
                oracle: OracleMode::Heuristic {
                    restarts: BENCH_RESTARTS,
                },
                p_max: Some(p_max),
                enum_cap: cli.enum_cap,
                seed,
            };
            let t0 = Instant::now();
            let report = tanner_list_decode(&code, &received, &params)?;
            times.push(t0.elapsed().as_secs_f64() * 1e3);
            if !report.words.contains(&word) {
                eprintln!("warning: transmitted word missed at n={n} run={r}");
            }
        }
        let med = median(times);
        let ratio = prev.map(|p| med / p);
        out.push_str(&match ratio {
            Some(r) => format!("{},{},{},{:.3},{:.3}\n", n, args.d, args.runs, med, r),
            None => format!("{},{},{},{:.3},\n", n, args.d, args.runs, med),
        });
        prev = Some(med);
    }
    match &args.csv_out {
        Some(path) => std::fs::write(path, out)
            .map_err(|e| Error::InvalidParameter(format!("cannot write '{path}': {e}")))?,
        None => print!("{out}"),
    }
    Ok(0)
}
