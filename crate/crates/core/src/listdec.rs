//! The decoding pipeline: cut-decompose the per-value-pair constraint
//! supports, enumerate assignments measurable on the resulting factor, and
//! finish each candidate with a unique decoder (outer Reed-Solomon for the
//! amplified construction, alternating local correction for Tanner codes).

use crate::ael::{self, AELCode};
use crate::codes::{self, rs_encode, rs_unique_decode};
use crate::csp::{self, CSPInstance, Flavor};
use crate::regularity::{
    self, build_factor, default_p_max, CutDecomposition, Factor, OracleMode,
};
use crate::tanner::{self, EdgeWord, TannerCode};
use crate::{Error, Result};
use alloc::format;

use alloc::vec::Vec;

/// Default cap on enumerated measurable assignments per factor.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 24;
/// Table cap for the exact unique-decoder fallback.
pub const UNIQUE_TABLE_CAP: u128 = 1 << 14;

#[derive(Debug, Clone)]
pub struct DecodeParams {
    /// List-decoding slack epsilon.
    pub eps: f64,
    /// CSP domain size (local list size).
    pub ell: usize,
    /// Decomposition precision; `None` picks the flavor default.
    pub gamma: Option<f64>,
    pub oracle: OracleMode,
    /// Term cap per decomposition; `None` picks ceil(64 / gamma^2).
    pub p_max: Option<usize>,
    pub enum_cap: u128,
    pub seed: u64,
}

impl DecodeParams {
    pub fn new(eps: f64, ell: usize) -> Self {
        DecodeParams {
            eps,
            ell,
            gamma: None,
            oracle: OracleMode::Exact,
            p_max: None,
            enum_cap: DEFAULT_ENUM_CAP,
            seed: 0,
        }
    }

    fn validate(&self, relevant_delta: f64) -> Result<()> {
        if !(self.eps > 0.0 && self.eps < relevant_delta) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < eps < {relevant_delta}, got {}",
                self.eps
            )));
        }
        if self.ell == 0 {
            return Err(Error::InvalidParameter("ell must be positive".into()));
        }
        if let Some(g) = self.gamma {
            if !(g > 0.0 && g < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "need 0 < gamma < 1, got {g}"
                )));
            }
        }
        Ok(())
    }
}

/// Default gamma for the amplified-code decoder:
/// eps * delta_out_dec / (2^4 ell^2), substituting the outer minimum
/// distance fraction when the unique-decoding radius rounds down to zero.
pub fn ael_default_gamma(eps: f64, delta_out_dec: f64, delta_out: f64, ell: usize) -> f64 {
    let dd = if delta_out_dec > 0.0 {
        delta_out_dec
    } else {
        delta_out
    };
    eps * dd / (16.0 * (ell * ell) as f64)
}

/// Default gamma for the Tanner decoder: eps^3 / (2^5 ell^2).
pub fn tanner_default_gamma(eps: f64, ell: usize) -> f64 {
    eps * eps * eps / (32.0 * (ell * ell) as f64)
}

#[derive(Debug, Clone)]
pub struct DecompStat {
    pub alpha: (usize, usize),
    pub p: usize,
    pub residual: f64,
    pub certified_exact: bool,
    pub p_max_hit: bool,
}

#[derive(Debug, Clone)]
pub struct DecodeReport {
    /// Deduplicated codewords, sorted by edge symbols.
    pub words: Vec<EdgeWord>,
    /// Outer codewords aligned with `words` (amplified decoder only).
    pub outer_codewords: Vec<Vec<u32>>,
    pub decompositions: Vec<DecompStat>,
    pub atom_count: usize,
    /// Largest left-factor atom count seen across inner decode calls
    /// (two-stage decoder only; 0 otherwise).
    pub inner_atom_count_max: usize,
    pub enumeration_size: u128,
    pub enumeration_truncated: bool,
    /// True iff lambda/d clears the theorem threshold; decoding runs either
    /// way (soundness is unconditional).
    pub within_theorem_regime: bool,
    pub p_max_hit_any: bool,
    pub gamma: f64,
}

pub struct DecomposedCsp {
    pub stats: Vec<DecompStat>,
    pub left_cuts: Vec<Vec<usize>>,
    pub right_cuts: Vec<Vec<usize>>,
    pub gamma: f64,
    /// Full decompositions keyed by alpha, for dumps and audits.
    pub decomps: Vec<((usize, usize), CutDecomposition)>,
}

/// Decomposes g_alpha for every alpha in [ell]^2. For the left-only flavor
/// the support is independent of the right value, so each left value is
/// decomposed once and replicated.
pub fn decompose_all(
    inst: &CSPInstance,
    gamma: f64,
    oracle: OracleMode,
    p_max: usize,
    seed: u64,
) -> Result<DecomposedCsp> {
    let g = inst.graph();
    let (n, nd) = (g.n(), g.num_edges() as f64);
    let ell = inst.ell();
    let mut stats = Vec::new();
    let mut left_cuts = Vec::new();
    let mut right_cuts = Vec::new();
    let mut decomps = Vec::new();
    let push = |dec: &CutDecomposition, alpha: (usize, usize), collect_cuts: bool,
                    left_cuts: &mut Vec<Vec<usize>>, right_cuts: &mut Vec<Vec<usize>>,
                    stats: &mut Vec<DecompStat>| {
        stats.push(DecompStat {
            alpha,
            p: dec.p(),
            residual: dec.certified_residual,
            certified_exact: dec.certified_exact,
            p_max_hit: dec.p_max_hit,
        });
        if collect_cuts {
            for term in &dec.terms {
                left_cuts.push(term.s.clone());
                right_cuts.push(term.t.clone());
            }
        }
    };
    for a in 0..ell {
        if inst.flavor() == Flavor::Ael {
            let pairs = inst.alpha_support(a, 0);
            let dec = regularity::weak_regularity_decompose(
                n,
                &pairs,
                nd,
                gamma,
                oracle,
                p_max,
                seed.wrapping_add(a as u64),
            )?;
            for b in 0..ell {
                push(&dec, (a, b), b == 0, &mut left_cuts, &mut right_cuts, &mut stats);
                decomps.push(((a, b), dec.clone()));
            }
        } else {
            for b in 0..ell {
                let pairs = inst.alpha_support(a, b);
                let dec = regularity::weak_regularity_decompose(
                    n,
                    &pairs,
                    nd,
                    gamma,
                    oracle,
                    p_max,
                    seed.wrapping_add((a * ell + b) as u64),
                )?;
                push(&dec, (a, b), true, &mut left_cuts, &mut right_cuts, &mut stats);
                decomps.push(((a, b), dec));
            }
        }
    }
    Ok(DecomposedCsp {
        stats,
        left_cuts,
        right_cuts,
        gamma,
        decomps,
    })
}

/// Enumerates measurable assignments up to the cap, reporting truncation
/// instead of erroring.
fn capped_enumeration(
    factor: &Factor,
    ell: usize,
    cap: u128,
) -> (Vec<Vec<usize>>, u128, bool) {
    let total = regularity::count_measurable(factor, ell);
    let truncated = total > cap;
    let take = if truncated { cap as usize } else { total as usize };
    let iter = regularity::enumerate_measurable(factor, ell, u128::MAX)
        .expect("unbounded cap cannot be exceeded");
    (iter.take(take).collect(), total, truncated)
}

/// List decoding of the distance-amplified construction: decompose, build
/// the left factor from all cut sets, enumerate measurable left assignments,
/// and finish each with outer Reed-Solomon unique decoding. Keeps z with
/// folded right distance at most (delta_in - eps) n from the received word.
pub fn ael_list_decode(
    code: &AELCode,
    ytilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<DecodeReport> {
    let delta_in = code.inner().delta();
    params.validate(delta_in)?;
    let g = code.graph();
    let n = g.n();
    let gamma = params
        .gamma
        .unwrap_or_else(|| {
            ael_default_gamma(
                params.eps,
                code.outer().delta_dec(),
                code.outer().delta(),
                params.ell,
            )
        });
    let p_max = params.p_max.unwrap_or_else(|| default_p_max(gamma));
    let inst = csp::build_ael_csp(code, ytilde, params.ell)?;
    let dc = decompose_all(&inst, gamma, params.oracle, p_max, params.seed)?;
    let factor = build_factor(n, &dc.left_cuts);
    let (assignments, enum_size, truncated) =
        capped_enumeration(&factor, params.ell, params.enum_cap);
    let y_views = ael::fold(g, ytilde)?;
    let radius = (delta_in - params.eps) * n as f64 + 1e-9;
    let mut found: Vec<(EdgeWord, Vec<u32>)> = Vec::new();
    for x in &assignments {
        let ranks: Vec<u32> = (0..n)
            .map(|u| {
                code.inner()
                    .codeword_rank(&inst.left_candidates(u)[x[u]])
                    .expect("candidates are inner codewords") as u32
            })
            .collect();
        let Some(msg) = rs_unique_decode(code.outer(), &ranks)? else {
            continue;
        };
        let outer_word = rs_encode(code.outer(), &msg)?;
        let (word, views) = ael::ael_encode(code, &outer_word)?;
        if (ael::folded_right_distance(&views, &y_views) as f64) <= radius {
            found.push((word, outer_word));
        }
    }
    found.sort();
    found.dedup();
    let (words, outer_codewords) = found.into_iter().unzip();
    let lam_ratio = g.lambda() / g.d() as f64;
    let ell4 = crate::maths::powi(params.ell as f64, 4);
    let d_out = code.outer().delta();
    let threshold = params.eps * params.eps * d_out * d_out / (crate::maths::powi(2.0, 31) * ell4);
    Ok(DecodeReport {
        words,
        outer_codewords,
        p_max_hit_any: dc.stats.iter().any(|s| s.p_max_hit),
        decompositions: dc.stats,
        atom_count: factor.atoms.len(),
        inner_atom_count_max: 0,
        enumeration_size: enum_size,
        enumeration_truncated: truncated,
        within_theorem_regime: lam_ratio < threshold,
        gamma: dc.gamma,
    })
}

/// Alternating local correction plus exact nearest-codeword fallback at
/// enumerable scale. Built once per decoding run.
pub struct TannerUniqueDecoder<'a> {
    code: &'a TannerCode,
    table: Option<Vec<EdgeWord>>,
    min_dist: Option<usize>,
}

impl<'a> TannerUniqueDecoder<'a> {
    pub fn new(code: &'a TannerCode) -> Self {
        // The table path needs a parity null-space reduction, whose cost
        // grows cubically with nd; fall back to alternating correction
        // beyond this many edges.
        const TABLE_EDGE_CAP: usize = 512;
        let table = if code.graph().num_edges() <= TABLE_EDGE_CAP {
            tanner::tanner_enumerate(code)
                .ok()
                .filter(|t| (t.len() as u128) <= UNIQUE_TABLE_CAP)
        } else {
            None
        };
        let min_dist = table.as_ref().and_then(|t| {
            t.iter()
                .map(|w| w.symbols.iter().filter(|&&x| x != 0).count())
                .filter(|&w| w > 0)
                .min()
        });
        TannerUniqueDecoder {
            code,
            table,
            min_dist,
        }
    }

    pub fn min_dist(&self) -> Option<usize> {
        self.min_dist
    }

    /// Nearest codeword when it is unique and within the half-distance
    /// radius (exact path), else the alternating-correction fixed point if
    /// it is a codeword. REJECT is `None`.
    pub fn decode(&self, word: &EdgeWord) -> Result<Option<EdgeWord>> {
        if let (Some(table), Some(dist)) = (&self.table, self.min_dist) {
            let radius = (dist - 1) / 2;
            let mut best: Option<(usize, &EdgeWord)> = None;
            let mut unique = true;
            for cw in table {
                let d = cw.distance(word);
                match best {
                    Some((bd, _)) if d > bd => {}
                    Some((bd, _)) if d == bd => unique = false,
                    _ => {
                        best = Some((d, cw));
                        unique = true;
                    }
                }
            }
            return Ok(match best {
                Some((d, cw)) if unique && d <= radius => Some(cw.clone()),
                _ => None,
            });
        }
        self.alternating_decode(word)
    }

    /// Zemor-style rounds: correct every left view into the local code when
    /// within its unique radius, then every right view; stop at a fixed
    /// point. Accept only a codeword fixed point.
    pub fn alternating_decode(&self, word: &EdgeWord) -> Result<Option<EdgeWord>> {
        let g = self.code.graph();
        let local = self.code.local();
        let nd = g.num_edges();
        if word.len() != nd {
            return Err(Error::LengthMismatch {
                expected: nd,
                got: word.len(),
            });
        }
        let rounds = (usize::BITS - (nd - 1).leading_zeros()) as usize + 10;
        let mut w = word.clone();
        let mut stable = false;
        for _ in 0..rounds {
            let mut changed = false;
            for u in 0..g.n() {
                let view = w.left_view(g, u);
                if !local.contains(&view) {
                    if let Some(cw) = codes::unique_decode_local(local, &view)? {
                        for (i, &s) in cw.iter().enumerate() {
                            if w.symbols[g.edge_id(u, i)] != s {
                                w.symbols[g.edge_id(u, i)] = s;
                                changed = true;
                            }
                        }
                    }
                }
            }
            for v in 0..g.n() {
                let view = w.right_view(g, v);
                if !local.contains(&view) {
                    if let Some(cw) = codes::unique_decode_local(local, &view)? {
                        for (j, &s) in cw.iter().enumerate() {
                            if w.symbols[g.edge_id_right(v, j)] != s {
                                w.symbols[g.edge_id_right(v, j)] = s;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed {
                stable = true;
                break;
            }
        }
        if stable && tanner::tanner_membership(self.code, &w)? {
            Ok(Some(w))
        } else {
            Ok(None)
        }
    }
}

pub fn tanner_unique_decode(code: &TannerCode, word: &EdgeWord) -> Result<Option<EdgeWord>> {
    TannerUniqueDecoder::new(code).decode(word)
}

/// Inner loop of the Tanner list decoder: against a candidate word, build
/// the left-only agreement CSP, decompose, and unique-decode every
/// measurable left assignment's induced edge word.
pub fn custom_decode(
    code: &TannerCode,
    ztilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<Vec<EdgeWord>> {
    custom_decode_with_atoms(code, ztilde, params).map(|(words, _)| words)
}

/// `custom_decode` plus the left-factor atom count, for list-size audits.
pub fn custom_decode_with_atoms(
    code: &TannerCode,
    ztilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<(Vec<EdgeWord>, usize)> {
    let g = code.graph();
    let local = code.local();
    let gamma = params
        .gamma
        .unwrap_or_else(|| tanner_default_gamma(params.eps, params.ell));
    let p_max = params.p_max.unwrap_or_else(|| default_p_max(gamma));
    let radius = crate::maths::floor(local.delta() * g.d() as f64) as usize;
    let inst = csp::build_left_agreement_csp(g, local, ztilde, params.ell, radius)?;
    let dc = decompose_all(&inst, gamma, params.oracle, p_max, params.seed)?;
    let factor = build_factor(g.n(), &dc.left_cuts);
    let (assignments, _, _) = capped_enumeration(&factor, params.ell, params.enum_cap);
    let decoder = TannerUniqueDecoder::new(code);
    let mut out = Vec::new();
    for x in &assignments {
        let mut zprime = EdgeWord::zero(g.num_edges());
        for u in 0..g.n() {
            let cand = &inst.left_candidates(u)[x[u]];
            for (i, &s) in cand.iter().enumerate() {
                zprime.symbols[g.edge_id(u, i)] = s;
            }
        }
        if let Some(z) = decoder.decode(&zprime)? {
            out.push(z);
        }
    }
    out.sort();
    out.dedup();
    Ok((out, factor.atoms.len()))
}

/// Tanner list decoding: decompose the two-sided agreement CSP, build the
/// right factor, and for each measurable right assignment feed the induced
/// word to `custom_decode`. Keeps codewords within edge distance
/// delta_0 (delta_0 - eps) nd of the received word.
pub fn tanner_list_decode(
    code: &TannerCode,
    ytilde: &EdgeWord,
    params: &DecodeParams,
) -> Result<DecodeReport> {
    let delta0 = code.local().delta();
    params.validate(delta0)?;
    let g = code.graph();
    let nd = g.num_edges();
    let gamma = params
        .gamma
        .unwrap_or_else(|| tanner_default_gamma(params.eps, params.ell));
    let p_max = params.p_max.unwrap_or_else(|| default_p_max(gamma));
    let inst = csp::build_tanner_csp(code, ytilde, params.ell)?;
    let dc = decompose_all(&inst, gamma, params.oracle, p_max, params.seed)?;
    let factor = build_factor(g.n(), &dc.right_cuts);
    let (assignments, enum_size, truncated) =
        capped_enumeration(&factor, params.ell, params.enum_cap);
    let radius = delta0 * (delta0 - params.eps) * nd as f64 + 1e-9;
    let inner_params = DecodeParams {
        gamma: Some(gamma),
        p_max: Some(p_max),
        ..params.clone()
    };
    let mut words: Vec<EdgeWord> = Vec::new();
    let mut inner_atoms_max = 0usize;
    for xt in &assignments {
        let mut ztilde = EdgeWord::zero(nd);
        for (u, pi, v, pj) in g.edges() {
            ztilde.symbols[g.edge_id(u, pi)] = inst.right_candidates(v)[xt[v]][pj];
        }
        let (list, inner_atoms) = custom_decode_with_atoms(code, &ztilde, &inner_params)?;
        inner_atoms_max = inner_atoms_max.max(inner_atoms);
        for z in list {
            if (z.distance(ytilde) as f64) <= radius {
                debug_assert!(tanner::tanner_membership(code, &z)?);
                words.push(z);
            }
        }
    }
    words.sort();
    words.dedup();
    let lam_ratio = g.lambda() / g.d() as f64;
    let ell4 = crate::maths::powi(params.ell as f64, 4);
    let threshold = crate::maths::powi(params.eps, 6) / (crate::maths::powi(2.0, 33) * ell4);
    Ok(DecodeReport {
        words,
        outer_codewords: Vec::new(),
        p_max_hit_any: dc.stats.iter().any(|s| s.p_max_hit),
        decompositions: dc.stats,
        atom_count: factor.atoms.len(),
        inner_atom_count_max: inner_atoms_max,
        enumeration_size: enum_size,
        enumeration_truncated: truncated,
        within_theorem_regime: lam_ratio < threshold,
        gamma: dc.gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ael::{ael_encode, build_ael, fold, folded_right_distance};
    use crate::codes::{make_linear_code, make_rs_code};
    use crate::graphs::{double_cover, BipartiteExpander};
    use crate::tanner::build_tanner;

    fn k22() -> BipartiteExpander {
        BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap()
    }

    fn tiny_ael() -> AELCode {
        let inner = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let outer = make_rs_code(2, 2, 1).unwrap();
        build_ael(inner, outer, k22()).unwrap()
    }

    fn tiny_tanner() -> TannerCode {
        build_tanner(k22(), make_linear_code(2, &[vec![1, 1]]).unwrap()).unwrap()
    }

    fn six_cycle_tanner() -> TannerCode {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        build_tanner(
            double_cover(&adj).unwrap(),
            make_linear_code(2, &[vec![1, 1]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn unique_decode_examples() {
        let code = tiny_tanner();
        let ones = EdgeWord {
            symbols: vec![1, 1, 1, 1],
        };
        assert_eq!(
            tanner_unique_decode(&code, &ones).unwrap(),
            Some(ones.clone())
        );
        // 1000 is within radius 1 of 0000 (codeword distance 4)
        let w = EdgeWord {
            symbols: vec![1, 0, 0, 0],
        };
        assert_eq!(
            tanner_unique_decode(&code, &w).unwrap(),
            Some(EdgeWord::zero(4))
        );
        // equidistant from both codewords
        let w = EdgeWord {
            symbols: vec![1, 1, 0, 0],
        };
        assert_eq!(tanner_unique_decode(&code, &w).unwrap(), None);
    }

    #[test]
    fn alternating_path_agrees_with_exact_on_six_cycle() {
        let code = six_cycle_tanner();
        let decoder = TannerUniqueDecoder::new(&code);
        let radius = (decoder.min_dist().unwrap() - 1) / 2;
        let mut sym = vec![0u32; code.block_len()];
        loop {
            let w = EdgeWord {
                symbols: sym.clone(),
            };
            let exact = decoder.decode(&w).unwrap();
            if let Some(z) = decoder.alternating_decode(&w).unwrap() {
                // a codeword fixed point within the radius must be the exact
                // answer
                if z.distance(&w) <= radius {
                    assert_eq!(exact.as_ref(), Some(&z));
                }
            }
            if !codes::increment(&mut sym, 2) {
                break;
            }
        }
    }

    #[test]
    fn ael_decode_uncorrupted() {
        let code = tiny_ael();
        let (y, _) = ael_encode(&code, &[1, 1]).unwrap();
        let params = DecodeParams::new(0.5, 2);
        let report = ael_list_decode(&code, &y, &params).unwrap();
        assert!(report.words.contains(&y));
        assert!(report.outer_codewords.contains(&vec![1, 1]));
    }

    #[test]
    fn ael_decode_one_corrupted_vertex() {
        let code = tiny_ael();
        let (z, zviews) = ael_encode(&code, &[1, 1]).unwrap();
        let mut y = z.clone();
        // corrupt both edges at right vertex 0
        y.symbols[0] ^= 1;
        y.symbols[2] ^= 1;
        let yv = fold(code.graph(), &y).unwrap();
        assert_eq!(folded_right_distance(&zviews, &yv), 1);
        let params = DecodeParams::new(0.5, 2);
        let report = ael_list_decode(&code, &y, &params).unwrap();
        assert!(report.words.contains(&z));
        // soundness: everything in the list is in radius
        let radius = (code.inner().delta() - 0.5) * 2.0 + 1e-9;
        for w in &report.words {
            let wv = fold(code.graph(), w).unwrap();
            assert!((folded_right_distance(&wv, &yv) as f64) <= radius);
        }
    }

    #[test]
    fn custom_decode_codeword() {
        let code = six_cycle_tanner();
        for z in tanner::tanner_enumerate(&code).unwrap() {
            let params = DecodeParams::new(0.25, 2);
            let list = custom_decode(&code, &z, &params).unwrap();
            assert!(list.contains(&z));
            for w in &list {
                assert!(tanner::tanner_membership(&code, w).unwrap());
            }
        }
    }

    #[test]
    fn tanner_decode_uncorrupted_and_corrupted() {
        let code = tiny_tanner();
        let params = DecodeParams::new(0.25, 2);
        let zero = EdgeWord::zero(4);
        let report = tanner_list_decode(&code, &zero, &params).unwrap();
        assert!(report.words.contains(&zero));
        // one corrupted edge: radius delta0 (delta0 - eps) nd = 1 * 0.75 * 4 = 3
        let y = EdgeWord {
            symbols: vec![0, 0, 0, 1],
        };
        let report = tanner_list_decode(&code, &y, &params).unwrap();
        assert!(report.words.contains(&zero));
        for w in &report.words {
            assert!(tanner::tanner_membership(&code, w).unwrap());
            assert!(w.distance(&y) as f64 <= 0.75 * 4.0 + 1e-9);
        }
    }

    #[test]
    fn decode_is_deterministic() {
        let code = six_cycle_tanner();
        let y = EdgeWord {
            symbols: vec![1, 0, 0, 0, 0, 0],
        };
        let params = DecodeParams::new(0.25, 2);
        let a = tanner_list_decode(&code, &y, &params).unwrap();
        let b = tanner_list_decode(&code, &y, &params).unwrap();
        assert_eq!(a.words, b.words);
        assert_eq!(a.atom_count, b.atom_count);
    }

    #[test]
    fn params_validated() {
        let code = tiny_ael();
        let y = EdgeWord::zero(4);
        assert!(ael_list_decode(&code, &y, &DecodeParams::new(0.0, 2)).is_err());
        assert!(ael_list_decode(&code, &y, &DecodeParams::new(1.5, 2)).is_err());
        let mut p = DecodeParams::new(0.5, 2);
        p.gamma = Some(2.0);
        assert!(ael_list_decode(&code, &y, &p).is_err());
    }

    #[test]
    fn list_bounded_by_enumeration() {
        let code = six_cycle_tanner();
        let y = EdgeWord {
            symbols: vec![1, 0, 1, 0, 0, 0],
        };
        let params = DecodeParams::new(0.25, 2);
        let report = tanner_list_decode(&code, &y, &params).unwrap();
        assert!((report.words.len() as u128) <= report.enumeration_size.max(1) * 4);
    }
}
