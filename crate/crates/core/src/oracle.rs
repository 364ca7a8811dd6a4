//! Brute-force ground truth and empirical claim checkers: exhaustive list
//! decoding over enumerated codewords, concentration measurements against
//! their analytic bound, and distribution-invariance of restricted CSP
//! values.

use crate::ael::{self, AELCode};
use crate::csp::{self, Assignment, CSPInstance};
use crate::graphs::BipartiteExpander;
use crate::listdec::{self, DecodeParams, DecomposedCsp};
use crate::regularity::{build_factor, min_concentration, restrict_factor, Factor};
use crate::tanner::{self, EdgeWord, TannerCode};
use crate::{Error, Result};

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMode {
    EdgeWise,
    /// Number of right vertices whose folded views differ.
    FoldedRight,
}

/// Exhaustive list decoding over an enumerated codeword set.
pub fn brute_force_list_decode(
    g: &BipartiteExpander,
    codewords: &[EdgeWord],
    ytilde: &EdgeWord,
    radius: f64,
    mode: DistanceMode,
) -> Result<Vec<EdgeWord>> {
    let y_views = ael::fold(g, ytilde)?;
    let mut out = Vec::new();
    for cw in codewords {
        let dist = match mode {
            DistanceMode::EdgeWise => cw.distance(ytilde),
            DistanceMode::FoldedRight => {
                ael::folded_right_distance(&ael::fold(g, cw)?, &y_views)
            }
        };
        if (dist as f64) <= radius + 1e-9 {
            out.push(cw.clone());
        }
    }
    out.sort();
    Ok(out)
}

/// Decoder output audited against the oracle list. `spurious` must be empty
/// on every sound run.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub oracle_list: Vec<EdgeWord>,
    pub decoder_list: Vec<EdgeWord>,
    pub missing: Vec<EdgeWord>,
    pub spurious: Vec<EdgeWord>,
}

pub fn compare_lists(oracle_list: &[EdgeWord], decoder_list: &[EdgeWord]) -> OracleReport {
    let missing = oracle_list
        .iter()
        .filter(|w| !decoder_list.contains(w))
        .cloned()
        .collect();
    let spurious = decoder_list
        .iter()
        .filter(|w| !oracle_list.contains(w))
        .cloned()
        .collect();
    OracleReport {
        oracle_list: oracle_list.to_vec(),
        decoder_list: decoder_list.to_vec(),
        missing,
        spurious,
    }
}

#[derive(Debug, Clone)]
pub struct ConcentrationCheck {
    pub eta_measured: f64,
    pub eta_bound: f64,
    pub pass: bool,
    /// Whether z satisfies the lemma's distance hypothesis.
    pub precondition_ok: bool,
    /// |S_z| (or |T_z|).
    pub witness_size: usize,
}

fn concentration_bound(ell: usize, gamma: f64, eps: f64, n: usize, witness: usize) -> f64 {
    if witness == 0 {
        return f64::INFINITY;
    }
    5.0 * (ell * ell) as f64 * gamma / eps * n as f64 / witness as f64
}

/// Measures how concentrated the canonical assignment selecting codeword z
/// is on the left factor restricted to its witness set, against the bound
/// eta = (5 ell^2 gamma / eps) n / |S_z|.
pub fn ael_check_concentration(
    code: &AELCode,
    z: &EdgeWord,
    ytilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<ConcentrationCheck> {
    let g = code.graph();
    let z_views = ael::fold(g, z)?;
    let ranks = ael::enc_inverse(code, &z_views.left)
        .map_err(|_| Error::InvalidParameter("z is not a codeword".into()))?;
    if !code.outer().is_codeword(&ranks) {
        return Err(Error::InvalidParameter("z is not a codeword".into()));
    }
    let y_views = ael::fold(g, ytilde)?;
    let precondition_ok = (ael::folded_right_distance(&z_views, &y_views) as f64)
        <= (code.inner().delta() - params.eps) * g.n() as f64 + 1e-9;
    let gamma = params.gamma.unwrap_or_else(|| {
        listdec::ael_default_gamma(
            params.eps,
            code.outer().delta_dec(),
            code.outer().delta(),
            params.ell,
        )
    });
    let p_max = params
        .p_max
        .unwrap_or_else(|| crate::regularity::default_p_max(gamma));
    let inst = csp::build_ael_csp(code, ytilde, params.ell)?;
    let dc = listdec::decompose_all(&inst, gamma, params.oracle, p_max, params.seed)?;
    let factor = build_factor(g.n(), &dc.left_cuts);
    let w = csp::ael_witness(code, &inst, &z_views, &y_views, params.eps);
    let (eta, _) = min_concentration(&w.x.left, &factor, &w.s);
    let bound = concentration_bound(params.ell, gamma, params.eps, g.n(), w.s.len());
    Ok(ConcentrationCheck {
        eta_measured: eta,
        eta_bound: bound,
        pass: eta <= bound + 1e-9,
        precondition_ok,
        witness_size: w.s.len(),
    })
}

/// Tanner analog: concentration of the canonical assignment on the right
/// factor restricted to T_z, bound (5 ell^2 gamma / eps) n / |T_z|.
pub fn tanner_check_concentration(
    code: &TannerCode,
    z: &EdgeWord,
    ytilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<ConcentrationCheck> {
    if !tanner::tanner_membership(code, z)? {
        return Err(Error::InvalidParameter("z is not a codeword".into()));
    }
    let g = code.graph();
    let delta0 = code.local().delta();
    let nd = g.num_edges() as f64;
    let precondition_ok =
        (z.distance(ytilde) as f64) <= delta0 * (delta0 - params.eps) * nd + 1e-9;
    let gamma = params
        .gamma
        .unwrap_or_else(|| listdec::tanner_default_gamma(params.eps, params.ell));
    let p_max = params
        .p_max
        .unwrap_or_else(|| crate::regularity::default_p_max(gamma));
    let inst = csp::build_tanner_csp(code, ytilde, params.ell)?;
    let dc = listdec::decompose_all(&inst, gamma, params.oracle, p_max, params.seed)?;
    let factor = build_factor(g.n(), &dc.right_cuts);
    let w = csp::tanner_witness(code, &inst, z, ytilde, params.eps);
    let (eta, _) = min_concentration(&w.x.right, &factor, &w.t);
    let bound = concentration_bound(params.ell, gamma, params.eps, g.n(), w.t.len());
    Ok(ConcentrationCheck {
        eta_measured: eta,
        eta_bound: bound,
        pass: eta <= bound + 1e-9,
        precondition_ok,
        witness_size: w.t.len(),
    })
}

/// Rotates the assignment's values one step along each restricted atom.
/// Preserves per-atom value counts while moving as many positions as the
/// atom's value diversity allows. Test construction only.
pub fn rotate_within_atoms(x: &[usize], factor: &Factor, w: &[usize]) -> Vec<usize> {
    let restricted = restrict_factor(factor, w);
    let mut out = x.to_vec();
    for atom in &restricted.atoms {
        for i in 0..atom.len() {
            out[atom[i]] = x[atom[(i + 1) % atom.len()]];
        }
    }
    out
}

/// Samples random (S, T) and assignment pairs with identical per-atom value
/// counts on the restricted factors, and checks that restricted values agree
/// within 2 ell^2 times the largest certified residual. Returns the pass
/// fraction.
pub fn check_value_invariance(
    inst: &CSPInstance,
    dc: &DecomposedCsp,
    trials: usize,
    seed: u64,
) -> f64 {
    let n = inst.graph().n();
    let ell = inst.ell();
    let factor_l = build_factor(n, &dc.left_cuts);
    let factor_r = build_factor(n, &dc.right_cuts);
    let max_residual = dc
        .stats
        .iter()
        .map(|s| s.residual)
        .fold(0.0f64, f64::max);
    let bound = 2.0 * (ell * ell) as f64 * max_residual;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passes = 0;
    for _ in 0..trials {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let t: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        let x = Assignment {
            left: (0..n).map(|_| rng.gen_range(0..ell)).collect(),
            right: (0..n).map(|_| rng.gen_range(0..ell)).collect(),
        };
        let xp = Assignment {
            left: rotate_within_atoms(&x.left, &factor_l, &s),
            right: rotate_within_atoms(&x.right, &factor_r, &t),
        };
        let v1 = csp::csp_value(inst, &x, Some(&s), Some(&t)) as f64;
        let v2 = csp::csp_value(inst, &xp, Some(&s), Some(&t)) as f64;
        if (v1 - v2).abs() <= bound + 1e-9 {
            passes += 1;
        }
    }
    passes as f64 / trials.max(1) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ael::{ael_encode, build_ael};
    use crate::codes::{make_linear_code, make_rs_code};
    use crate::graphs::random_regular_bipartite;
    use crate::regularity::OracleMode;
    use crate::tanner::build_tanner;

    fn k22() -> BipartiteExpander {
        BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap()
    }

    fn two_words() -> Vec<EdgeWord> {
        vec![
            EdgeWord::zero(4),
            EdgeWord {
                symbols: vec![1, 1, 1, 1],
            },
        ]
    }

    #[test]
    fn brute_force_examples() {
        let g = k22();
        let cws = two_words();
        let y = EdgeWord {
            symbols: vec![0, 0, 1, 1],
        };
        let list =
            brute_force_list_decode(&g, &cws, &y, 2.0, DistanceMode::EdgeWise).unwrap();
        assert_eq!(list.len(), 2);
        let list =
            brute_force_list_decode(&g, &cws, &y, 1.0, DistanceMode::EdgeWise).unwrap();
        assert!(list.is_empty());
        let list = brute_force_list_decode(&g, &cws, &cws[0], 0.0, DistanceMode::EdgeWise)
            .unwrap();
        assert_eq!(list, vec![cws[0].clone()]);
    }

    #[test]
    fn brute_force_folded_mode() {
        let g = k22();
        let cws = two_words();
        // corrupt one edge: one right view differs from zero
        let y = EdgeWord {
            symbols: vec![1, 0, 0, 0],
        };
        let list =
            brute_force_list_decode(&g, &cws, &y, 1.0, DistanceMode::FoldedRight).unwrap();
        assert_eq!(list, vec![cws[0].clone()]);
    }

    #[test]
    fn list_shift_closure() {
        // adding a codeword to ytilde shifts the binary linear list
        let g = k22();
        let code = build_tanner(g.clone(), make_linear_code(2, &[vec![1, 1]]).unwrap()).unwrap();
        let cws = tanner::tanner_enumerate(&code).unwrap();
        let y = EdgeWord {
            symbols: vec![1, 0, 0, 0],
        };
        let list = brute_force_list_decode(&g, &cws, &y, 1.0, DistanceMode::EdgeWise).unwrap();
        let shift = &cws[1]; // 1111
        let y2 = EdgeWord {
            symbols: y
                .symbols
                .iter()
                .zip(&shift.symbols)
                .map(|(a, b)| a ^ b)
                .collect(),
        };
        let list2 =
            brute_force_list_decode(&g, &cws, &y2, 1.0, DistanceMode::EdgeWise).unwrap();
        let shifted: Vec<EdgeWord> = list
            .iter()
            .map(|w| EdgeWord {
                symbols: w
                    .symbols
                    .iter()
                    .zip(&shift.symbols)
                    .map(|(a, b)| a ^ b)
                    .collect(),
            })
            .collect();
        let mut shifted_sorted = shifted;
        shifted_sorted.sort();
        assert_eq!(list2, shifted_sorted);
    }

    #[test]
    fn compare_lists_flags_differences() {
        let cws = two_words();
        let rep = compare_lists(&cws, &cws[..1]);
        assert_eq!(rep.missing.len(), 1);
        assert!(rep.spurious.is_empty());
        let rep = compare_lists(&cws[..1], &cws);
        assert_eq!(rep.spurious.len(), 1);
    }

    fn tiny_ael() -> AELCode {
        let inner = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let outer = make_rs_code(2, 2, 1).unwrap();
        build_ael(inner, outer, k22()).unwrap()
    }

    #[test]
    fn concentration_uncorrupted() {
        let code = tiny_ael();
        let (z, _) = ael_encode(&code, &[1, 1]).unwrap();
        let params = DecodeParams::new(0.5, 2);
        let check = ael_check_concentration(&code, &z, &z, &params).unwrap();
        assert!(check.precondition_ok);
        assert_eq!(check.eta_measured, 0.0);
        assert!(check.pass);
    }

    #[test]
    fn concentration_corrupted_trials() {
        let code = tiny_ael();
        let mut rng = ChaCha8Rng::seed_from_u64(123);
        let mut passes = 0;
        for trial in 0..100 {
            let msg = rng.gen_range(0..2);
            let outer = crate::codes::rs_encode(code.outer(), &[msg]).unwrap();
            let (z, _) = ael_encode(&code, &outer).unwrap();
            let mut y = z.clone();
            // corrupt one right vertex's edges
            let v = rng.gen_range(0..2usize);
            for j in 0..2 {
                let e = code.graph().edge_id_right(v, j);
                y.symbols[e] ^= rng.gen_range(0..2u32);
            }
            let mut params = DecodeParams::new(0.5, 2);
            params.seed = trial;
            let check = ael_check_concentration(&code, &z, &y, &params).unwrap();
            if check.precondition_ok {
                assert!(check.pass);
            }
            if check.pass {
                passes += 1;
            }
        }
        assert_eq!(passes, 100);
    }

    #[test]
    fn concentration_rejects_non_codeword() {
        let code = tiny_ael();
        let z = EdgeWord {
            symbols: vec![1, 0, 0, 0],
        };
        let params = DecodeParams::new(0.5, 2);
        assert!(ael_check_concentration(&code, &z, &z, &params).is_err());
    }

    #[test]
    fn tanner_concentration_uncorrupted() {
        let code = build_tanner(k22(), make_linear_code(2, &[vec![1, 1]]).unwrap()).unwrap();
        let z = EdgeWord {
            symbols: vec![1, 1, 1, 1],
        };
        let params = DecodeParams::new(0.25, 2);
        let check = tanner_check_concentration(&code, &z, &z, &params).unwrap();
        assert!(check.precondition_ok);
        assert_eq!(check.eta_measured, 0.0);
        assert!(check.pass);
    }

    #[test]
    fn invariance_on_random_instance() {
        let g = random_regular_bipartite(10, 4, 7).unwrap();
        let local = make_linear_code(2, &[vec![1, 1, 1, 1]]).unwrap();
        let code = build_tanner(g, local).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let y = EdgeWord {
            symbols: (0..40).map(|_| rng.gen_range(0..2)).collect(),
        };
        let inst = csp::build_tanner_csp(&code, &y, 2).unwrap();
        let dc = listdec::decompose_all(&inst, 0.2, OracleMode::Exact, 1600, 0).unwrap();
        assert!(dc.stats.iter().all(|s| s.certified_exact));
        let frac = check_value_invariance(&inst, &dc, 100, 11);
        assert_eq!(frac, 1.0);
    }

    #[test]
    fn invariance_identity_and_empty() {
        let code = build_tanner(k22(), make_linear_code(2, &[vec![1, 1]]).unwrap()).unwrap();
        let y = EdgeWord::zero(4);
        let inst = csp::build_tanner_csp(&code, &y, 2).unwrap();
        let x = Assignment::constant(2, 0);
        // constant assignments are fixed by any within-atom rotation
        let factor = build_factor(2, &[]);
        let xr = rotate_within_atoms(&x.left, &factor, &[0, 1]);
        assert_eq!(xr, x.left);
        // empty S and T give value 0 on both sides
        assert_eq!(csp::csp_value(&inst, &x, Some(&[]), Some(&[])), 0);
    }
}
