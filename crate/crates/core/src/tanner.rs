//! Tanner codes on bipartite expanders: every vertex's local view of the
//! edge labels must lie in a fixed local code.

use crate::codes::{self, LocalCode};
use crate::field;
use crate::graphs::BipartiteExpander;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Cap on enumerated codeword tables (q^nullity).
pub const ENUM_CAP: u128 = 1 << 20;

/// A q-ary labeling of the nd edges, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeWord {
    pub symbols: Vec<u32>,
}

impl EdgeWord {
    pub fn zero(len: usize) -> Self {
        EdgeWord {
            symbols: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// View from left vertex u in port order.
    pub fn left_view(&self, g: &BipartiteExpander, u: usize) -> Vec<u32> {
        (0..g.d()).map(|i| self.symbols[g.edge_id(u, i)]).collect()
    }

    /// View from right vertex v in port order.
    pub fn right_view(&self, g: &BipartiteExpander, v: usize) -> Vec<u32> {
        (0..g.d())
            .map(|j| self.symbols[g.edge_id_right(v, j)])
            .collect()
    }

    pub fn distance(&self, other: &EdgeWord) -> usize {
        codes::hamming(&self.symbols, &other.symbols)
    }

    pub fn to_text(&self) -> String {
        let toks: Vec<String> = self.symbols.iter().map(|x| format!("{x}")).collect();
        let mut s = toks.join(" ");
        s.push('\n');
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let symbols: Vec<u32> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad token {t}"))))
            .collect::<Result<_>>()?;
        if symbols.is_empty() {
            return Err(Error::Parse("empty edge word".into()));
        }
        Ok(EdgeWord { symbols })
    }
}

#[derive(Debug, Clone)]
pub struct TannerCode {
    graph: BipartiteExpander,
    local: LocalCode,
    design_distance: f64,
    /// Set when lambda/d >= delta_0 degenerates the design distance to 0.
    degenerate: bool,
}

impl TannerCode {
    pub fn graph(&self) -> &BipartiteExpander {
        &self.graph
    }

    pub fn local(&self) -> &LocalCode {
        &self.local
    }

    pub fn q(&self) -> u32 {
        self.local.q()
    }

    pub fn block_len(&self) -> usize {
        self.graph.num_edges()
    }

    /// delta_0 (delta_0 - lambda/d), clamped at 0.
    pub fn design_distance(&self) -> f64 {
        self.design_distance
    }

    pub fn degenerate(&self) -> bool {
        self.degenerate
    }

    /// Rate lower bound 2 r_0 - 1 from the local code's rate.
    pub fn rate_bound(&self) -> f64 {
        2.0 * self.local.rate() - 1.0
    }
}

pub fn build_tanner(graph: BipartiteExpander, local: LocalCode) -> Result<TannerCode> {
    if local.block_len() != graph.d() {
        return Err(Error::LengthMismatch {
            expected: graph.d(),
            got: local.block_len(),
        });
    }
    let delta0 = local.delta();
    let ratio = graph.lambda() / graph.d() as f64;
    let raw = delta0 * (delta0 - ratio);
    let degenerate = raw <= 0.0;
    Ok(TannerCode {
        graph,
        local,
        design_distance: raw.max(0.0),
        degenerate,
    })
}

/// True iff every left and right local view lies in the local code.
pub fn tanner_membership(code: &TannerCode, word: &EdgeWord) -> Result<bool> {
    let g = &code.graph;
    if word.len() != g.num_edges() {
        return Err(Error::LengthMismatch {
            expected: g.num_edges(),
            got: word.len(),
        });
    }
    for u in 0..g.n() {
        if !code.local.contains(&word.left_view(g, u)) {
            return Ok(false);
        }
    }
    for v in 0..g.n() {
        if !code.local.contains(&word.right_view(g, v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Stacked parity-check matrix: the local code's checks applied to every
/// left and right view, `2n(d - k)` rows over nd edge columns.
pub fn parity_matrix(code: &TannerCode) -> Vec<Vec<u32>> {
    let g = &code.graph;
    let nd = g.num_edges();
    let checks = code.local.parity_checks();
    let mut rows = Vec::new();
    for u in 0..g.n() {
        for h in &checks {
            let mut row = vec![0u32; nd];
            for (i, &c) in h.iter().enumerate() {
                row[g.edge_id(u, i)] = c;
            }
            rows.push(row);
        }
    }
    for v in 0..g.n() {
        for h in &checks {
            let mut row = vec![0u32; nd];
            for (j, &c) in h.iter().enumerate() {
                row[g.edge_id_right(v, j)] = c;
            }
            rows.push(row);
        }
    }
    rows
}

/// All codewords, sorted, via null-space enumeration of the stacked parity
/// checks. Errors when q^nullity exceeds `ENUM_CAP`.
pub fn tanner_enumerate(code: &TannerCode) -> Result<Vec<EdgeWord>> {
    let fld = code.local.field();
    let q = code.q();
    let nd = code.block_len();
    let rows = parity_matrix(code);
    let basis = field::null_space(fld, &rows, nd);
    let nullity = basis.len();
    let total = (q as u128).checked_pow(nullity as u32).unwrap_or(u128::MAX);
    if total > ENUM_CAP {
        return Err(Error::CapExceeded {
            required: total,
            cap: ENUM_CAP,
        });
    }
    let mut words = Vec::with_capacity(total as usize);
    let mut coeffs = vec![0u32; nullity];
    loop {
        let mut w = vec![0u32; nd];
        for (&c, b) in coeffs.iter().zip(&basis) {
            if c != 0 {
                for (wi, &bi) in w.iter_mut().zip(b) {
                    *wi = fld.add(*wi, fld.mul(c, bi));
                }
            }
        }
        words.push(EdgeWord { symbols: w });
        if !codes::increment(&mut coeffs, q) {
            break;
        }
    }
    words.sort();
    Ok(words)
}

/// Exact minimum distance over the enumerated codewords (minimum nonzero
/// weight, by linearity).
pub fn tanner_min_distance(code: &TannerCode) -> Result<usize> {
    let words = tanner_enumerate(code)?;
    words
        .iter()
        .map(|w| w.symbols.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
        .ok_or_else(|| Error::InvalidParameter("code has only the zero word".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs;
    use crate::maths::log_q;

    fn rep2() -> LocalCode {
        codes::make_linear_code(2, &[vec![1, 1]]).unwrap()
    }

    fn k22() -> BipartiteExpander {
        BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap()
    }

    fn six_cycle() -> BipartiteExpander {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1]];
        graphs::double_cover(&adj).unwrap()
    }

    #[test]
    fn build_examples() {
        let t = build_tanner(k22(), rep2()).unwrap();
        assert!((t.design_distance() - 1.0).abs() < 1e-9);
        assert!(!t.degenerate());

        let t = build_tanner(six_cycle(), rep2()).unwrap();
        assert!((t.design_distance() - 0.5).abs() < 1e-9);

        let bad = codes::make_linear_code(2, &[vec![1, 1, 1]]).unwrap();
        assert!(build_tanner(k22(), bad).is_err());
    }

    #[test]
    fn membership_examples() {
        let t = build_tanner(k22(), rep2()).unwrap();
        let zero = EdgeWord::zero(4);
        assert!(tanner_membership(&t, &zero).unwrap());
        let ones = EdgeWord {
            symbols: vec![1, 1, 1, 1],
        };
        assert!(tanner_membership(&t, &ones).unwrap());
        let bad = EdgeWord {
            symbols: vec![1, 0, 0, 0],
        };
        assert!(!tanner_membership(&t, &bad).unwrap());
    }

    #[test]
    fn flipped_edge_leaves_code() {
        let t = build_tanner(six_cycle(), rep2()).unwrap();
        for cw in tanner_enumerate(&t).unwrap() {
            for e in 0..cw.len() {
                let mut w = cw.clone();
                w.symbols[e] ^= 1;
                assert!(!tanner_membership(&t, &w).unwrap());
            }
        }
    }

    #[test]
    fn enumerate_k22() {
        let t = build_tanner(k22(), rep2()).unwrap();
        let words = tanner_enumerate(&t).unwrap();
        assert_eq!(
            words,
            vec![
                EdgeWord::zero(4),
                EdgeWord {
                    symbols: vec![1, 1, 1, 1]
                }
            ]
        );
        // measured rate 1/4 >= 2 r_0 - 1 = 0
        let rate = log_q(2.0, words.len() as f64) / 4.0;
        assert!((rate - 0.25).abs() < 1e-12);
        assert!(rate >= t.rate_bound());
    }

    #[test]
    fn membership_matches_enumeration() {
        let t = build_tanner(six_cycle(), rep2()).unwrap();
        let words = tanner_enumerate(&t).unwrap();
        let nd = t.block_len();
        let mut sym = vec![0u32; nd];
        loop {
            let w = EdgeWord {
                symbols: sym.clone(),
            };
            let member = tanner_membership(&t, &w).unwrap();
            assert_eq!(member, words.binary_search(&w).is_ok());
            if !codes::increment(&mut sym, 2) {
                break;
            }
        }
    }

    #[test]
    fn measured_distance_meets_design_distance() {
        for (g, local) in [
            (k22(), rep2()),
            (six_cycle(), rep2()),
            (
                six_cycle(),
                codes::make_linear_code(2, &[vec![1, 0], vec![0, 1]]).unwrap(),
            ),
        ] {
            let t = build_tanner(g, local).unwrap();
            let nd = t.block_len() as f64;
            if let Ok(dist) = tanner_min_distance(&t) {
                assert!(dist as f64 / nd >= t.design_distance() - 1e-9);
            }
            let rate = log_q(
                t.q() as f64,
                tanner_enumerate(&t).unwrap().len() as f64,
            ) / t.block_len() as f64;
            assert!(rate >= t.rate_bound() - 1e-9);
        }
    }

    #[test]
    fn views_share_edge_symbols() {
        let g = six_cycle();
        let w = EdgeWord {
            symbols: vec![0, 1, 1, 0, 1, 0],
        };
        for u in 0..g.n() {
            let lv = w.left_view(&g, u);
            for i in 0..g.d() {
                let (v, j) = g.right_end(u, i);
                assert_eq!(lv[i], w.right_view(&g, v)[j]);
            }
        }
    }

    #[test]
    fn edge_word_text_round_trip() {
        let w = EdgeWord {
            symbols: vec![0, 3, 1, 2],
        };
        assert_eq!(EdgeWord::from_text(&w.to_text()).unwrap(), w);
        assert!(EdgeWord::from_text("  ").is_err());
    }
}
