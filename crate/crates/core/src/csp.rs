//! Agreement 2-CSPs over the expander's edges: each vertex carries an
//! ordered list of ell locally decoded candidates, and each edge allows the
//! index pairs whose candidates agree with the received word (left-only
//! flavor) or with each other (two-sided flavor).
//!
//! Indices are 0-based internally; candidate lists are lexicographic with
//! deterministic padding.

use crate::ael::{AELCode, FoldedViews};
use crate::codes::{self, LocalCode};
use crate::graphs::BipartiteExpander;
use crate::tanner::{EdgeWord, TannerCode};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// AEL-flavor constraints depend on the left index only; Tanner-flavor
/// constraints compare both endpoint candidates on the shared edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Ael,
    Tanner,
}

#[derive(Debug, Clone)]
pub struct CSPInstance {
    graph: BipartiteExpander,
    ell: usize,
    flavor: Flavor,
    /// Per left vertex, ell candidate codewords.
    left_candidates: Vec<Vec<Vec<u32>>>,
    /// Per right vertex, ell candidate codewords (dummy for AEL flavor).
    right_candidates: Vec<Vec<Vec<u32>>>,
    /// Per edge id, an ell*ell bitset of allowed (left, right) index pairs.
    allowed: Vec<Vec<u64>>,
}

/// A total assignment V -> [ell], split by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Assignment {
    pub fn constant(n: usize, value: usize) -> Self {
        Assignment {
            left: vec![value; n],
            right: vec![value; n],
        }
    }
}

fn bitset_words(ell: usize) -> usize {
    (ell * ell + 63) / 64
}

impl CSPInstance {
    pub fn graph(&self) -> &BipartiteExpander {
        &self.graph
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn left_candidates(&self, u: usize) -> &[Vec<u32>] {
        &self.left_candidates[u]
    }

    pub fn right_candidates(&self, v: usize) -> &[Vec<u32>] {
        &self.right_candidates[v]
    }

    /// Whether edge `e` allows left index `i` with right index `j`.
    #[inline]
    pub fn allows(&self, e: usize, i: usize, j: usize) -> bool {
        let bit = i * self.ell + j;
        self.allowed[e][bit / 64] >> (bit % 64) & 1 == 1
    }

    fn set_allowed(&mut self, e: usize, i: usize, j: usize) {
        let bit = i * self.ell + j;
        self.allowed[e][bit / 64] |= 1 << (bit % 64);
    }

    /// Endpoint pairs (u, v) of edges allowing (i, j), with multiplicity for
    /// parallel edges.
    pub fn alpha_support(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        self.graph
            .edges()
            .filter(|&(u, pi, _v, _pj)| {
                let e = self.graph.edge_id(u, pi);
                self.allows(e, i, j)
            })
            .map(|(u, _pi, v, _pj)| (u, v))
            .collect()
    }
}

/// Lexicographic local list at `radius`, padded to exactly ell entries with
/// the smallest absent codewords.
fn padded_list(
    local: &LocalCode,
    word: &[u32],
    radius: usize,
    ell: usize,
    vertex: usize,
) -> Result<Vec<Vec<u32>>> {
    let mut list = codes::list_decode_local(local, word, radius)?;
    if list.len() > ell {
        return Err(Error::ListTooLarge {
            vertex,
            list_len: list.len(),
            ell,
        });
    }
    if ell > local.codewords().len() {
        return Err(Error::InvalidParameter(alloc::format!(
            "ell = {} exceeds the {} local codewords available for padding",
            ell,
            local.codewords().len()
        )));
    }
    for cw in local.codewords() {
        if list.len() == ell {
            break;
        }
        if !list.contains(cw) {
            list.push(cw.clone());
        }
    }
    Ok(list)
}

/// AEL-flavor agreement CSP: left candidates from local list decoding of the
/// left views at `radius`; edge (u,v) allows (i, j) for every j iff
/// candidate i of u matches the received symbol on that edge. Right vertices
/// carry the first ell codewords as dummy candidates.
pub fn build_left_agreement_csp(
    graph: &BipartiteExpander,
    local: &LocalCode,
    ytilde: &EdgeWord,
    ell: usize,
    radius: usize,
) -> Result<CSPInstance> {
    if ytilde.len() != graph.num_edges() {
        return Err(Error::LengthMismatch {
            expected: graph.num_edges(),
            got: ytilde.len(),
        });
    }
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be positive".into()));
    }
    let n = graph.n();
    let left_candidates: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|u| padded_list(local, &ytilde.left_view(graph, u), radius, ell, u))
        .collect::<Result<_>>()?;
    let dummy: Vec<Vec<u32>> = local.codewords()[..ell].to_vec();
    let mut inst = CSPInstance {
        graph: graph.clone(),
        ell,
        flavor: Flavor::Ael,
        left_candidates,
        right_candidates: vec![dummy; n],
        allowed: vec![vec![0; bitset_words(ell)]; graph.num_edges()],
    };
    for u in 0..n {
        for pi in 0..graph.d() {
            let e = graph.edge_id(u, pi);
            for i in 0..ell {
                if inst.left_candidates[u][i][pi] == ytilde.symbols[e] {
                    for j in 0..ell {
                        inst.set_allowed(e, i, j);
                    }
                }
            }
        }
    }
    Ok(inst)
}

pub fn build_ael_csp(code: &AELCode, ytilde: &EdgeWord, ell: usize) -> Result<CSPInstance> {
    let radius = crate::maths::floor(code.inner().delta() * code.graph().d() as f64) as usize;
    build_left_agreement_csp(code.graph(), code.inner(), ytilde, ell, radius)
}

/// Tanner-flavor agreement CSP: candidates on both sides at radius
/// floor(delta_0 d); edge (u,v) allows (i, j) iff the two candidates carry
/// the same symbol on the shared edge.
pub fn build_tanner_csp(code: &TannerCode, ytilde: &EdgeWord, ell: usize) -> Result<CSPInstance> {
    let graph = code.graph();
    let local = code.local();
    if ytilde.len() != graph.num_edges() {
        return Err(Error::LengthMismatch {
            expected: graph.num_edges(),
            got: ytilde.len(),
        });
    }
    if ell == 0 {
        return Err(Error::InvalidParameter("ell must be positive".into()));
    }
    let radius = crate::maths::floor(local.delta() * graph.d() as f64) as usize;
    let n = graph.n();
    let left_candidates: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|u| padded_list(local, &ytilde.left_view(graph, u), radius, ell, u))
        .collect::<Result<_>>()?;
    let right_candidates: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|v| padded_list(local, &ytilde.right_view(graph, v), radius, ell, v))
        .collect::<Result<_>>()?;
    let mut inst = CSPInstance {
        graph: graph.clone(),
        ell,
        flavor: Flavor::Tanner,
        left_candidates,
        right_candidates,
        allowed: vec![vec![0; bitset_words(ell)]; graph.num_edges()],
    };
    for (u, pi, v, pj) in graph.edges().collect::<Vec<_>>() {
        let e = graph.edge_id(u, pi);
        for i in 0..ell {
            for j in 0..ell {
                if inst.left_candidates[u][i][pi] == inst.right_candidates[v][j][pj] {
                    inst.set_allowed(e, i, j);
                }
            }
        }
    }
    Ok(inst)
}

/// Number of satisfied constraints among the edges of E(S, T); S and T
/// default to all of L and R.
pub fn csp_value(
    inst: &CSPInstance,
    x: &Assignment,
    s: Option<&[usize]>,
    t: Option<&[usize]>,
) -> usize {
    let n = inst.graph.n();
    let mut in_s = vec![s.is_none(); n];
    if let Some(s) = s {
        for &u in s {
            in_s[u] = true;
        }
    }
    let mut in_t = vec![t.is_none(); n];
    if let Some(t) = t {
        for &v in t {
            in_t[v] = true;
        }
    }
    let mut count = 0;
    for (u, pi, v, _pj) in inst.graph.edges() {
        if in_s[u] && in_t[v] {
            let e = inst.graph.edge_id(u, pi);
            if inst.allows(e, x.left[u], x.right[v]) {
                count += 1;
            }
        }
    }
    count
}

/// |E(S, T)| with parallel-edge multiplicity.
pub fn edge_count(g: &BipartiteExpander, s: &[usize], t: &[usize]) -> usize {
    let mut in_s = vec![false; g.n()];
    for &u in s {
        in_s[u] = true;
    }
    let mut in_t = vec![false; g.n()];
    for &v in t {
        in_t[v] = true;
    }
    g.edges().filter(|&(u, _, v, _)| in_s[u] && in_t[v]).count()
}

/// Witness sets and the canonical assignment selecting a target codeword's
/// local views. Analysis constructs used by tests and oracles, not by the
/// decoders.
#[derive(Debug, Clone)]
pub struct Witness {
    pub s_star: Vec<usize>,
    pub s: Vec<usize>,
    pub t_star: Vec<usize>,
    pub t: Vec<usize>,
    pub x: Assignment,
}

/// AEL witness: T_z is exact right-view agreement, S_z* is left views within
/// distance delta_in d, S_z additionally demands at most (delta_in - eps/2)d
/// neighbors outside T_z. x_z selects the rank of z_u on S_z, 0 elsewhere.
pub fn ael_witness(
    code: &AELCode,
    inst: &CSPInstance,
    z: &FoldedViews,
    ytilde: &FoldedViews,
    eps: f64,
) -> Witness {
    let g = code.graph();
    let n = g.n();
    let d = g.d() as f64;
    let delta_in = code.inner().delta();
    let t: Vec<usize> = (0..n).filter(|&v| z.right[v] == ytilde.right[v]).collect();
    let mut in_t = vec![false; n];
    for &v in &t {
        in_t[v] = true;
    }
    let s_star: Vec<usize> = (0..n)
        .filter(|&u| codes::hamming(&z.left[u], &ytilde.left[u]) as f64 <= delta_in * d + 1e-9)
        .collect();
    let s: Vec<usize> = s_star
        .iter()
        .copied()
        .filter(|&u| {
            let outside = (0..g.d()).filter(|&i| !in_t[g.right_end(u, i).0]).count();
            outside as f64 <= (delta_in - eps / 2.0) * d + 1e-9
        })
        .collect();
    let mut x = Assignment::constant(n, 0);
    for &u in &s {
        if let Some(i) = inst.left_candidates[u].iter().position(|c| *c == z.left[u]) {
            x.left[u] = i;
        }
    }
    Witness {
        s_star,
        s,
        t_star: Vec::new(),
        t,
        x,
    }
}

/// Tanner witness: S_z is left views within distance delta_0 d, T_z* the
/// right analog, T_z additionally demands at most (delta_0 - eps/2)d
/// neighbors outside S_z. x_z selects the rank of z_w on S_z and T_z.
pub fn tanner_witness(
    code: &TannerCode,
    inst: &CSPInstance,
    z: &EdgeWord,
    ytilde: &EdgeWord,
    eps: f64,
) -> Witness {
    let g = code.graph();
    let n = g.n();
    let d = g.d() as f64;
    let delta0 = code.local().delta();
    let s: Vec<usize> = (0..n)
        .filter(|&u| {
            codes::hamming(&z.left_view(g, u), &ytilde.left_view(g, u)) as f64
                <= delta0 * d + 1e-9
        })
        .collect();
    let mut in_s = vec![false; n];
    for &u in &s {
        in_s[u] = true;
    }
    let t_star: Vec<usize> = (0..n)
        .filter(|&v| {
            codes::hamming(&z.right_view(g, v), &ytilde.right_view(g, v)) as f64
                <= delta0 * d + 1e-9
        })
        .collect();
    let t: Vec<usize> = t_star
        .iter()
        .copied()
        .filter(|&v| {
            let outside = (0..g.d()).filter(|&j| !in_s[g.left_end(v, j).0]).count();
            outside as f64 <= (delta0 - eps / 2.0) * d + 1e-9
        })
        .collect();
    let mut x = Assignment::constant(n, 0);
    for &u in &s {
        let view = z.left_view(g, u);
        if let Some(i) = inst.left_candidates[u].iter().position(|c| *c == view) {
            x.left[u] = i;
        }
    }
    for &v in &t {
        let view = z.right_view(g, v);
        if let Some(j) = inst.right_candidates[v].iter().position(|c| *c == view) {
            x.right[v] = j;
        }
    }
    Witness {
        s_star: Vec::new(),
        s,
        t_star,
        t,
        x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ael::{ael_encode, build_ael, fold};
    use crate::codes::{make_linear_code, make_rs_code};
    use crate::tanner::{build_tanner, tanner_enumerate};

    fn k22() -> BipartiteExpander {
        BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap()
    }

    fn tiny_ael() -> AELCode {
        let inner = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let outer = make_rs_code(2, 2, 1).unwrap();
        build_ael(inner, outer, k22()).unwrap()
    }

    #[test]
    fn ael_csp_all_zero_word() {
        let code = tiny_ael();
        let y = EdgeWord::zero(4);
        let inst = build_ael_csp(&code, &y, 2).unwrap();
        for u in 0..2 {
            assert_eq!(
                inst.left_candidates(u),
                &[vec![0, 0], vec![1, 1]]
            );
        }
        // only index 0 matches symbol 0, for every right index
        for e in 0..4 {
            for j in 0..2 {
                assert!(inst.allows(e, 0, j));
                assert!(!inst.allows(e, 1, j));
            }
        }
        let x = Assignment::constant(2, 0);
        assert_eq!(csp_value(&inst, &x, None, None), 4);
        // both codewords fall in the radius-2 ball: ell = 1 is too small
        assert!(matches!(
            build_ael_csp(&code, &y, 1),
            Err(Error::ListTooLarge { .. })
        ));
    }

    #[test]
    fn ael_codeword_fully_satisfiable() {
        let code = tiny_ael();
        let (y, views) = ael_encode(&code, &[1, 1]).unwrap();
        let inst = build_ael_csp(&code, &y, 2).unwrap();
        let mut x = Assignment::constant(2, 0);
        for u in 0..2 {
            x.left[u] = inst.left_candidates(u)
                .iter()
                .position(|c| *c == views.left[u])
                .unwrap();
        }
        assert_eq!(csp_value(&inst, &x, None, None), 4);
    }

    #[test]
    fn ael_value_ignores_right_values() {
        let code = tiny_ael();
        let y = EdgeWord {
            symbols: vec![0, 1, 1, 0],
        };
        let inst = build_ael_csp(&code, &y, 2).unwrap();
        for xl0 in 0..2 {
            for xl1 in 0..2 {
                let mut vals = Vec::new();
                for xr0 in 0..2 {
                    for xr1 in 0..2 {
                        let x = Assignment {
                            left: vec![xl0, xl1],
                            right: vec![xr0, xr1],
                        };
                        vals.push(csp_value(&inst, &x, None, None));
                    }
                }
                assert!(vals.windows(2).all(|w| w[0] == w[1]));
            }
        }
    }

    #[test]
    fn tanner_csp_diagonal() {
        let local = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let code = build_tanner(k22(), local).unwrap();
        let inst = build_tanner_csp(&code, &EdgeWord::zero(4), 2).unwrap();
        for e in 0..4 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(inst.allows(e, i, j), i == j);
                }
            }
        }
    }

    #[test]
    fn tanner_codeword_fully_satisfiable() {
        let local = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let code = build_tanner(k22(), local).unwrap();
        for z in tanner_enumerate(&code).unwrap() {
            let inst = build_tanner_csp(&code, &z, 2).unwrap();
            let g = code.graph();
            let mut x = Assignment::constant(2, 0);
            for u in 0..2 {
                let view = z.left_view(g, u);
                x.left[u] = inst.left_candidates(u)
                    .iter()
                    .position(|c| *c == view)
                    .unwrap();
            }
            for v in 0..2 {
                let view = z.right_view(g, v);
                x.right[v] = inst.right_candidates(v)
                    .iter()
                    .position(|c| *c == view)
                    .unwrap();
            }
            assert_eq!(csp_value(&inst, &x, None, None), 4);
        }
    }

    #[test]
    fn value_partition_additivity() {
        let code = tiny_ael();
        let y = EdgeWord {
            symbols: vec![0, 1, 0, 1],
        };
        let inst = build_ael_csp(&code, &y, 2).unwrap();
        let x = Assignment {
            left: vec![1, 0],
            right: vec![0, 1],
        };
        let full = csp_value(&inst, &x, None, None);
        let parts = csp_value(&inst, &x, Some(&[0]), None)
            + csp_value(&inst, &x, Some(&[1]), None);
        assert_eq!(full, parts);
        let parts2 = csp_value(&inst, &x, Some(&[0]), Some(&[0]))
            + csp_value(&inst, &x, Some(&[0]), Some(&[1]))
            + csp_value(&inst, &x, Some(&[1]), Some(&[0]))
            + csp_value(&inst, &x, Some(&[1]), Some(&[1]));
        assert_eq!(full, parts2);
    }

    #[test]
    fn full_sat_ael_witness() {
        let code = tiny_ael();
        let (zword, zviews) = ael_encode(&code, &[1, 1]).unwrap();
        let mut y = zword.clone();
        y.symbols[0] ^= 1; // corrupt one edge
        let yviews = fold(code.graph(), &y).unwrap();
        let inst = build_ael_csp(&code, &y, 2).unwrap();
        let w = ael_witness(&code, &inst, &zviews, &yviews, 0.5);
        let sat = csp_value(&inst, &w.x, Some(&w.s), Some(&w.t));
        assert_eq!(sat, edge_count(code.graph(), &w.s, &w.t));
    }

    #[test]
    fn full_sat_tanner_witness() {
        let local = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        let g = crate::graphs::double_cover(&adj).unwrap();
        let code = build_tanner(g, local).unwrap();
        for z in tanner_enumerate(&code).unwrap() {
            for e in 0..code.block_len() {
                let mut y = z.clone();
                y.symbols[e] ^= 1;
                let inst = build_tanner_csp(&code, &y, 2).unwrap();
                let w = tanner_witness(&code, &inst, &z, &y, 0.25);
                let sat = csp_value(&inst, &w.x, Some(&w.s), Some(&w.t));
                assert_eq!(sat, edge_count(code.graph(), &w.s, &w.t));
            }
        }
    }
}
