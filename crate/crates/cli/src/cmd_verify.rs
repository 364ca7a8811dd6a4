//! `verify`: seeded claim suites over the library's verifiable guarantees.
//! Prints one line per suite; any failure exits with the soundness code.

use crate::{Cli, EXIT_SOUNDNESS};
use clap::Args;
use listdec_core::ael;
use listdec_core::codes::{self, make_linear_code, make_rs_code};
use listdec_core::csp;
use listdec_core::graphs::{self, random_regular_bipartite};
use listdec_core::listdec::{decompose_all, tanner_list_decode, DecodeParams};
use listdec_core::oracle::{self, brute_force_list_decode, compare_lists, DistanceMode};
use listdec_core::regularity::{
    self, build_factor, conditional_average, weak_regularity_decompose, OracleMode,
};
use listdec_core::tanner::{self, build_tanner, EdgeWord};
use listdec_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Only run suites whose name contains this substring.
    #[arg(long)]
    pub suite: Option<String>,
}

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.gen_bool(0.5)).collect()
}

fn suite_mixing(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut ok = 0;
    for gseed in 0..5u64 {
        let g = random_regular_bipartite(12, 4, seed.wrapping_add(gseed)).unwrap();
        for _ in 0..40 {
            let s = random_subset(&mut rng, g.n());
            let t = random_subset(&mut rng, g.n());
            let (disc, bound) = graphs::mixing_discrepancy(&g, &s, &t).unwrap();
            checked += 1;
            if disc <= bound + 1e-9 {
                ok += 1;
            }
        }
    }
    Outcome {
        name: "expander-mixing",
        pass: ok == checked,
        detail: format!("{ok}/{checked} subset pairs within the mixing bound"),
    }
}

fn suite_robust_neighbors(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = 0;
    let trials = 100;
    for i in 0..trials {
        let g = random_regular_bipartite(16, 4, seed.wrapping_add(i)).unwrap();
        let alpha = 0.5;
        let eps = 0.25;
        let mut t: Vec<usize> = (0..g.n()).collect();
        while t.len() > 8 {
            let drop = rng.gen_range(0..t.len());
            t.remove(drop);
        }
        let s = graphs::robust_neighbor_set(&g, &t, alpha, eps).unwrap();
        let ratio = g.lambda() / g.d() as f64;
        let bound = (1.0 - ratio * ratio / (eps * eps)) * g.n() as f64;
        if s.len() as f64 > bound {
            ok += 1;
        }
    }
    Outcome {
        name: "robust-neighbor-set",
        pass: ok == trials,
        detail: format!("{ok}/{trials} instances satisfy the size bound"),
    }
}

fn suite_regularity_residual(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 8;
    let gamma = 0.2;
    let trials = 50;
    let mut ok = 0;
    for i in 0..trials {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if rng.gen_bool(0.3) {
                    pairs.push((u, v));
                }
            }
        }
        let scale = pairs.len().max(1) as f64;
        let dec = weak_regularity_decompose(
            n,
            &pairs,
            scale,
            gamma,
            OracleMode::Exact,
            regularity::default_p_max(gamma),
            seed.wrapping_add(i),
        )
        .unwrap();
        // The exact oracle certifies the exhaustive max over rectangles.
        if dec.certified_exact && (dec.p_max_hit || dec.certified_residual <= gamma * scale + 1e-9)
        {
            ok += 1;
        }
    }
    Outcome {
        name: "regularity-residual",
        pass: ok == trials,
        detail: format!("{ok}/{trials} decompositions meet the certified threshold"),
    }
}

fn suite_conditional_average(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 10;
    let trials = 1000;
    let mut ok = 0;
    for _ in 0..trials {
        let cuts: Vec<Vec<usize>> = (0..rng.gen_range(0..4))
            .map(|_| random_subset(&mut rng, n))
            .collect();
        let factor = build_factor(n, &cuts);
        let f: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let proj = conditional_average(&f, &factor);
        // h constant on atoms.
        let atom_vals: Vec<f64> = factor.atoms.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
        let h: Vec<f64> = (0..n).map(|x| atom_vals[factor.atom_of[x].unwrap()]).collect();
        let lhs: f64 = h.iter().zip(&f).map(|(a, b)| a * b).sum();
        let rhs: f64 = h.iter().zip(&proj).map(|(a, b)| a * b).sum();
        if (lhs - rhs).abs() <= 1e-9 {
            ok += 1;
        }
    }
    Outcome {
        name: "conditional-average-identity",
        pass: ok == trials,
        detail: format!("{ok}/{trials} inner products agree to 1e-9"),
    }
}

fn six_cycle_code() -> tanner::TannerCode {
    let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
    let g = graphs::double_cover(&adj).unwrap();
    build_tanner(g, make_linear_code(2, &[vec![1, 1]]).unwrap()).unwrap()
}

fn suite_full_sat(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code = six_cycle_code();
    let g = code.graph().clone();
    let codewords = tanner::tanner_enumerate(&code).unwrap();
    let trials = 100;
    let mut ok = 0;
    for _ in 0..trials {
        let z = &codewords[rng.gen_range(0..codewords.len())];
        let mut y = z.clone();
        let e = rng.gen_range(0..y.len());
        y.symbols[e] ^= 1;
        let inst = csp::build_tanner_csp(&code, &y, 2).unwrap();
        // Assignment picking z's local views everywhere is fully satisfying.
        let x: Vec<usize> = (0..g.n())
            .map(|u| {
                let view = z.left_view(&g, u);
                inst.left_candidates(u).iter().position(|c| *c == view).unwrap()
            })
            .collect();
        let yv: Vec<usize> = (0..g.n())
            .map(|v| {
                let view = z.right_view(&g, v);
                inst.right_candidates(v).iter().position(|c| *c == view).unwrap()
            })
            .collect();
        let assn = csp::Assignment { left: x, right: yv };
        let val = csp::csp_value(&inst, &assn, None, None);
        if val == g.num_edges() {
            ok += 1;
        }
    }
    Outcome {
        name: "full-satisfaction",
        pass: ok == trials,
        detail: format!("{ok}/{trials} codeword assignments satisfy every edge"),
    }
}

fn suite_value_invariance(seed: u64) -> Outcome {
    let g = random_regular_bipartite(10, 4, seed).unwrap();
    let local = make_linear_code(2, &[vec![1, 1, 1, 1]]).unwrap();
    let code = build_tanner(g, local).unwrap();
    let y = EdgeWord::zero(code.graph().num_edges());
    let inst = csp::build_tanner_csp(&code, &y, 2).unwrap();
    let dc = decompose_all(&inst, 0.2, OracleMode::Exact, 1600, seed).unwrap();
    let frac = oracle::check_value_invariance(&inst, &dc, 100, seed.wrapping_add(1));
    Outcome {
        name: "value-invariance",
        pass: (frac - 1.0).abs() < 1e-12,
        detail: format!("pass fraction {frac:.3} over 100 trials"),
    }
}

fn suite_design_distance() -> Outcome {
    let code = six_cycle_code();
    let measured = tanner::tanner_min_distance(&code).unwrap() as f64;
    let design = code.design_distance() * code.graph().num_edges() as f64;
    let mut pass = measured >= design - 1e-9;
    let mut detail = format!("tanner measured {measured} vs design {design:.3}");

    let inner = make_linear_code(2, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
    let outer = make_rs_code(4, 3, 2).unwrap();
    let g = graphs::BipartiteExpander::from_neighbor_lists(
        3,
        3,
        &[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]],
    )
    .unwrap();
    let ael_code = ael::build_ael(inner, outer, g).unwrap();
    let all = ael::ael_enumerate(&ael_code, 1 << 20).unwrap();
    let mut min_fd = usize::MAX;
    for i in 0..all.len() {
        for j in 0..i {
            min_fd = min_fd.min(ael::folded_right_distance(&all[i].2, &all[j].2));
        }
    }
    let ael_design = ael_code.design_distance() * ael_code.graph().n() as f64;
    if (min_fd as f64) < ael_design - 1e-9 {
        pass = false;
    }
    detail.push_str(&format!("; ael measured {min_fd} vs design {ael_design:.3}"));
    Outcome {
        name: "design-distance",
        pass,
        detail,
    }
}

fn suite_rs_decode(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rs = make_rs_code(16, 12, 4).unwrap();
    let t_max = (rs.block_len() - rs.dim()) / 2;
    let trials = 1000;
    let mut ok = 0;
    for _ in 0..trials {
        let msg: Vec<u32> = (0..rs.dim()).map(|_| rng.gen_range(0..16)).collect();
        let cw = codes::rs_encode(&rs, &msg).unwrap();
        let mut word = cw.clone();
        let errors = rng.gen_range(0..=t_max);
        let mut positions: Vec<usize> = (0..word.len()).collect();
        for _ in 0..errors {
            let idx = rng.gen_range(0..positions.len());
            let pos = positions.swap_remove(idx);
            word[pos] = (word[pos] + rng.gen_range(1..16)) % 16;
        }
        if codes::rs_unique_decode(&rs, &word).unwrap() == Some(msg) {
            ok += 1;
        }
    }
    Outcome {
        name: "rs-unique-decode",
        pass: ok == trials,
        detail: format!("{ok}/{trials} corrupted words recovered exactly"),
    }
}

fn suite_decoder_oracle(seed: u64) -> Outcome {
    let code = six_cycle_code();
    let g = code.graph();
    let codewords = tanner::tanner_enumerate(&code).unwrap();
    let eps = 0.25;
    let delta0 = code.local().delta();
    let radius = delta0 * (delta0 - eps) * g.num_edges() as f64;
    let mut params = DecodeParams::new(eps, 2);
    params.seed = seed;
    let mut checked = 0;
    let mut ok = 0;
    for cw in &codewords {
        for e in 0..g.num_edges() {
            let mut y = cw.clone();
            y.symbols[e] ^= 1;
            let oracle_list =
                brute_force_list_decode(g, &codewords, &y, radius, DistanceMode::EdgeWise)
                    .unwrap();
            let report = tanner_list_decode(&code, &y, &params).unwrap();
            let cmp = compare_lists(&oracle_list, &report.words);
            checked += 1;
            if cmp.missing.is_empty() && cmp.spurious.is_empty() {
                ok += 1;
            }
        }
    }
    Outcome {
        name: "decoder-vs-oracle",
        pass: ok == checked,
        detail: format!("{ok}/{checked} corrupted words match the exhaustive list"),
    }
}

pub fn run(cli: &Cli, args: &VerifyArgs) -> Result<i32> {
    let seed = cli.seed;
    let suites: Vec<Outcome> = vec![
        suite_mixing(seed),
        suite_robust_neighbors(seed.wrapping_add(100)),
        suite_regularity_residual(seed.wrapping_add(200)),
        suite_conditional_average(seed.wrapping_add(300)),
        suite_full_sat(seed.wrapping_add(400)),
        suite_value_invariance(seed.wrapping_add(500)),
        suite_design_distance(),
        suite_rs_decode(seed.wrapping_add(600)),
        suite_decoder_oracle(seed.wrapping_add(700)),
    ];
    let mut all_pass = true;
    for o in suites {
        if let Some(filter) = &args.suite {
            if !o.name.contains(filter.as_str()) {
                continue;
            }
        }
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("{tag} {} ({})", o.name, o.detail);
        if !o.pass {
            all_pass = false;
        }
    }
    Ok(if all_pass { 0 } else { EXIT_SOUNDNESS })
}
