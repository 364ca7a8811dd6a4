//! `decode`: encode, corrupt, list-decode, optionally oracle-check.

use crate::report::{
    DecodeJson, DecompositionEntry, OracleSection, TheoremPreconditions, Timings,
};
use crate::{channel, specs, Cli, OracleArg, EXIT_SOUNDNESS};
use clap::{Args, ValueEnum};
use listdec_core::ael::{self, AELCode};
use listdec_core::codes;
use listdec_core::csp;
use listdec_core::listdec::{
    ael_default_gamma, ael_list_decode, decompose_all, tanner_default_gamma,
    tanner_list_decode, DecodeParams, DecodeReport,
};
use listdec_core::oracle::{brute_force_list_decode, compare_lists, DistanceMode};
use listdec_core::regularity::{OracleMode, DEFAULT_RESTARTS};
use listdec_core::tanner::{self, EdgeWord, TannerCode};
use listdec_core::{Error, Result};
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tanner,
    Ael,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Code family to decode.
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Graph spec: random:n=..,d=..,seed=.. or file:PATH.
    #[arg(long)]
    pub graph: String,
    /// Local code spec (tanner): gv:..., rep:q=..,d=.., or file:PATH.
    #[arg(long)]
    pub local: Option<String>,
    /// Inner code spec (ael).
    #[arg(long)]
    pub inner: Option<String>,
    /// Outer code spec (ael): rs:q=..,n=..,k=.. or file:PATH.
    #[arg(long)]
    pub outer: Option<String>,
    /// Number of corrupted edge positions.
    #[arg(long, default_value_t = 1)]
    pub errors: usize,
    /// Outer message symbols (ael), space separated; random when omitted.
    #[arg(long)]
    pub message: Option<String>,
    /// Also run the exhaustive oracle and compare lists.
    #[arg(long = "oracle-check", default_value_t = false)]
    pub oracle_check: bool,
}

pub fn oracle_mode(arg: OracleArg) -> OracleMode {
    match arg {
        OracleArg::Exact => OracleMode::Exact,
        OracleArg::Heuristic => OracleMode::Heuristic {
            restarts: DEFAULT_RESTARTS,
        },
    }
}

fn params_from(cli: &Cli, ell: usize) -> DecodeParams {
    DecodeParams {
        eps: cli.epsilon,
        ell,
        gamma: cli.gamma,
        oracle: oracle_mode(cli.oracle),
        p_max: cli.max_p,
        enum_cap: cli.enum_cap,
        seed: cli.seed,
    }
}

/// Default ell: the measured maximum local list size at the flavor's radius.
fn default_ell(local: &codes::LocalCode, delta: f64, seed: u64) -> usize {
    let radius = (delta * local.block_len() as f64).floor() as usize;
    codes::max_list_size(local, radius, seed).max(1)
}

pub struct TannerInstance {
    pub code: TannerCode,
    pub transmitted: EdgeWord,
    pub received: EdgeWord,
    pub ell: usize,
}

pub fn setup_tanner(cli: &Cli, args: &DecodeArgs) -> Result<TannerInstance> {
    let local_spec = args
        .local
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("--kind tanner requires --local".into()))?;
    let g = specs::build_graph(&args.graph)?;
    let local = specs::build_local_code(local_spec)?;
    let code = tanner::build_tanner(g, local)?;
    let ell = cli
        .ell
        .unwrap_or_else(|| default_ell(code.local(), code.local().delta(), cli.seed));
    let transmitted = channel::random_tanner_codeword(&code, cli.seed)?;
    let received = channel::corrupt(&transmitted, code.q(), args.errors, cli.seed.wrapping_add(1));
    Ok(TannerInstance {
        code,
        transmitted,
        received,
        ell,
    })
}

pub struct AelInstance {
    pub code: AELCode,
    pub transmitted: EdgeWord,
    pub received: EdgeWord,
    pub ell: usize,
}

pub fn setup_ael(cli: &Cli, args: &DecodeArgs) -> Result<AelInstance> {
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
    let ell = cli
        .ell
        .unwrap_or_else(|| default_ell(code.inner(), code.inner().delta(), cli.seed));
    let msg = match &args.message {
        Some(raw) => raw
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::InvalidParameter(format!("bad message symbol '{t}'")))
            })
            .collect::<Result<Vec<u32>>>()?,
        None => channel::random_outer_message(code.outer(), cli.seed),
    };
    let outer_word = codes::rs_encode(code.outer(), &msg)?;
    let (transmitted, _) = ael::ael_encode(&code, &outer_word)?;
    let received = channel::corrupt(
        &transmitted,
        code.inner().q(),
        args.errors,
        cli.seed.wrapping_add(1),
    );
    Ok(AelInstance {
        code,
        transmitted,
        received,
        ell,
    })
}

fn decomposition_entries(report: &DecodeReport) -> Vec<DecompositionEntry> {
    report
        .decompositions
        .iter()
        .map(|s| DecompositionEntry {
            alpha: [s.alpha.0, s.alpha.1],
            p: s.p,
            residual: s.residual,
            certified_exact: s.certified_exact,
            p_max_hit: s.p_max_hit,
        })
        .collect()
}

fn write_report(cli: &Cli, json: &DecodeJson) -> Result<()> {
    let body = serde_json::to_string_pretty(json)
        .map_err(|e| Error::InvalidParameter(format!("report serialization failed: {e}")))?;
    match &cli.json_out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::InvalidParameter(format!("cannot write '{path}': {e}"))),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn dump_decompositions(
    path: &str,
    decomps: &[((usize, usize), listdec_core::regularity::CutDecomposition)],
) -> Result<()> {
    let mut out = String::new();
    for ((a, b), dec) in decomps {
        out.push_str(&format!("alpha {a} {b}\n"));
        out.push_str(&dec.to_text());
    }
    std::fs::write(path, out)
        .map_err(|e| Error::InvalidParameter(format!("cannot write '{path}': {e}")))
}

pub fn run(cli: &Cli, args: &DecodeArgs) -> Result<i32> {
    let t0 = Instant::now();
    match args.kind {
        Kind::Tanner => run_tanner(cli, args, t0),
        Kind::Ael => run_ael(cli, args, t0),
    }
}

fn run_tanner(cli: &Cli, args: &DecodeArgs, t0: Instant) -> Result<i32> {
    let inst = setup_tanner(cli, args)?;
    let code = &inst.code;
    let g = code.graph();
    let setup_ms = t0.elapsed().as_secs_f64() * 1e3;
    let params = params_from(cli, inst.ell);
    let t1 = Instant::now();
    let report = tanner_list_decode(code, &inst.received, &params)?;
    let decode_ms = t1.elapsed().as_secs_f64() * 1e3;

    // Soundness self-check: every output must be a codeword in the list radius.
    let delta0 = code.local().delta();
    let radius = delta0 * (delta0 - cli.epsilon) * g.num_edges() as f64 + 1e-9;
    let mut sound = true;
    for w in &report.words {
        if !tanner::tanner_membership(code, w)? || (w.distance(&inst.received) as f64) > radius {
            sound = false;
        }
    }

    let oracle_check = if args.oracle_check {
        let codewords = tanner::tanner_enumerate(code)?;
        let oracle =
            brute_force_list_decode(g, &codewords, &inst.received, radius, DistanceMode::EdgeWise)?;
        let cmp = compare_lists(&oracle, &report.words);
        if !cmp.spurious.is_empty() {
            sound = false;
        }
        Some(OracleSection {
            oracle_list_size: cmp.oracle_list.len(),
            missing: cmp.missing.iter().map(|w| w.symbols.clone()).collect(),
            spurious: cmp.spurious.iter().map(|w| w.symbols.clone()).collect(),
        })
    } else {
        None
    };

    if let Some(path) = &cli.dump_decomposition {
        let gamma = params
            .gamma
            .unwrap_or_else(|| tanner_default_gamma(cli.epsilon, inst.ell));
        let p_max = params
            .p_max
            .unwrap_or_else(|| listdec_core::regularity::default_p_max(gamma));
        let csp_inst = csp::build_tanner_csp(code, &inst.received, inst.ell)?;
        let dc = decompose_all(&csp_inst, gamma, params.oracle, p_max, params.seed)?;
        dump_decompositions(path, &dc.decomps)?;
    }

    let lam_ratio = g.lambda() / g.d() as f64;
    let ell4 = (inst.ell as f64).powi(4);
    let threshold = cli.epsilon.powi(6) / (8589934592.0 * ell4);
    let json = DecodeJson {
        kind: "tanner".into(),
        n: g.n(),
        d: g.d(),
        lambda: g.lambda(),
        delta_local: delta0,
        design_distance: code.design_distance(),
        epsilon: cli.epsilon,
        ell: inst.ell,
        gamma: report.gamma,
        seed: cli.seed,
        oracle_mode: format!("{:?}", cli.oracle).to_lowercase(),
        errors_applied: args.errors,
        transmitted: inst.transmitted.symbols.clone(),
        received: inst.received.symbols.clone(),
        decoded: report.words.iter().map(|w| w.symbols.clone()).collect(),
        outer_codewords: Vec::new(),
        decompositions: decomposition_entries(&report),
        atom_count: report.atom_count,
        enumeration_size: report.enumeration_size,
        enumeration_truncated: report.enumeration_truncated,
        p_max_hit_any: report.p_max_hit_any,
        theorem_preconditions: TheoremPreconditions {
            lambda_over_d: lam_ratio,
            threshold,
            within_regime: report.within_theorem_regime,
        },
        oracle_check,
        timings: Timings {
            setup_ms,
            decode_ms,
            total_ms: t0.elapsed().as_secs_f64() * 1e3,
        },
    };
    write_report(cli, &json)?;
    Ok(if sound { 0 } else { EXIT_SOUNDNESS })
}

fn run_ael(cli: &Cli, args: &DecodeArgs, t0: Instant) -> Result<i32> {
    let inst = setup_ael(cli, args)?;
    let code = &inst.code;
    let g = code.graph();
    let setup_ms = t0.elapsed().as_secs_f64() * 1e3;
    let params = params_from(cli, inst.ell);
    let t1 = Instant::now();
    let report = ael_list_decode(code, &inst.received, &params)?;
    let decode_ms = t1.elapsed().as_secs_f64() * 1e3;

    // Soundness self-check: outputs re-encode from their outer codewords and
    // sit within the folded list radius.
    let delta_in = code.inner().delta();
    let radius = (delta_in - cli.epsilon) * g.n() as f64 + 1e-9;
    let y_views = ael::fold(g, &inst.received)?;
    let mut sound = true;
    for (w, x) in report.words.iter().zip(&report.outer_codewords) {
        let reencoded = ael::ael_encode(code, x).map(|(word, _)| word);
        let views = ael::fold(g, w)?;
        let fd = views
            .right
            .iter()
            .zip(&y_views.right)
            .filter(|(a, b)| a != b)
            .count();
        match reencoded {
            Ok(word) if &word == w && (fd as f64) <= radius => {}
            _ => sound = false,
        }
    }

    let oracle_check = if args.oracle_check {
        let all = ael::ael_enumerate(code, cli.enum_cap)?;
        let codewords: Vec<EdgeWord> = all.into_iter().map(|(_, w, _)| w).collect();
        let oracle = brute_force_list_decode(
            g,
            &codewords,
            &inst.received,
            radius,
            DistanceMode::FoldedRight,
        )?;
        let cmp = compare_lists(&oracle, &report.words);
        if !cmp.spurious.is_empty() {
            sound = false;
        }
        Some(OracleSection {
            oracle_list_size: cmp.oracle_list.len(),
            missing: cmp.missing.iter().map(|w| w.symbols.clone()).collect(),
            spurious: cmp.spurious.iter().map(|w| w.symbols.clone()).collect(),
        })
    } else {
        None
    };

    if let Some(path) = &cli.dump_decomposition {
        let gamma = params.gamma.unwrap_or_else(|| {
            ael_default_gamma(
                cli.epsilon,
                code.outer().delta_dec(),
                code.outer().delta(),
                inst.ell,
            )
        });
        let p_max = params
            .p_max
            .unwrap_or_else(|| listdec_core::regularity::default_p_max(gamma));
        let csp_inst = csp::build_ael_csp(code, &inst.received, inst.ell)?;
        let dc = decompose_all(&csp_inst, gamma, params.oracle, p_max, params.seed)?;
        dump_decompositions(path, &dc.decomps)?;
    }

    let lam_ratio = g.lambda() / g.d() as f64;
    let ell4 = (inst.ell as f64).powi(4);
    let delta_out = code.outer().delta();
    let threshold = cli.epsilon.powi(2) * delta_out * delta_out / (2147483648.0 * ell4);
    let json = DecodeJson {
        kind: "ael".into(),
        n: g.n(),
        d: g.d(),
        lambda: g.lambda(),
        delta_local: delta_in,
        design_distance: code.design_distance(),
        epsilon: cli.epsilon,
        ell: inst.ell,
        gamma: report.gamma,
        seed: cli.seed,
        oracle_mode: format!("{:?}", cli.oracle).to_lowercase(),
        errors_applied: args.errors,
        transmitted: inst.transmitted.symbols.clone(),
        received: inst.received.symbols.clone(),
        decoded: report.words.iter().map(|w| w.symbols.clone()).collect(),
        outer_codewords: report.outer_codewords.clone(),
        decompositions: decomposition_entries(&report),
        atom_count: report.atom_count,
        enumeration_size: report.enumeration_size,
        enumeration_truncated: report.enumeration_truncated,
        p_max_hit_any: report.p_max_hit_any,
        theorem_preconditions: TheoremPreconditions {
            lambda_over_d: lam_ratio,
            threshold,
            within_regime: report.within_theorem_regime,
        },
        oracle_check,
        timings: Timings {
            setup_ms,
            decode_ms,
            total_ms: t0.elapsed().as_secs_f64() * 1e3,
        },
    };
    write_report(cli, &json)?;
    Ok(if sound { 0 } else { EXIT_SOUNDNESS })
}
