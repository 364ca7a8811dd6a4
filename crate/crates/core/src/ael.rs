//! Distance-amplified concatenated codes: an outer Reed-Solomon codeword
//! picks one inner codeword per left vertex, the expander spreads its
//! symbols onto edges, and decoding reads the folded right-vertex views.
//!
//! The symbol-to-inner-codeword bijection is lexicographic rank in the
//! inner code's sorted table.

use crate::codes::{LocalCode, RSCode};
use crate::graphs::BipartiteExpander;
use crate::tanner::EdgeWord;
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone)]
pub struct AELCode {
    inner: LocalCode,
    outer: RSCode,
    graph: BipartiteExpander,
    design_distance: f64,
}

/// Per-vertex d-tuples over the inner alphabet, both sides of one EdgeWord.
/// Right-view equality is the folded distance used throughout decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldedViews {
    pub left: Vec<Vec<u32>>,
    pub right: Vec<Vec<u32>>,
}

impl AELCode {
    pub fn inner(&self) -> &LocalCode {
        &self.inner
    }

    pub fn outer(&self) -> &RSCode {
        &self.outer
    }

    pub fn graph(&self) -> &BipartiteExpander {
        &self.graph
    }

    /// delta_in - (lambda/d) / delta_out; may be nonpositive on degenerate
    /// desk-scale graphs.
    pub fn design_distance(&self) -> f64 {
        self.design_distance
    }

    pub fn degenerate(&self) -> bool {
        self.design_distance <= 0.0
    }

    /// Rate r_in * r_out.
    pub fn rate(&self) -> f64 {
        self.inner.rate() * self.outer.dim() as f64 / self.outer.block_len() as f64
    }

    /// Inner codeword for an outer symbol (lexicographic rank).
    pub fn enc_symbol(&self, sym: u32) -> &[u32] {
        &self.inner.codewords()[sym as usize]
    }
}

pub fn build_ael(inner: LocalCode, outer: RSCode, graph: BipartiteExpander) -> Result<AELCode> {
    if inner.block_len() != graph.d() {
        return Err(Error::InvalidParameter(format!(
            "inner block length {} != graph degree {}",
            inner.block_len(),
            graph.d()
        )));
    }
    if outer.block_len() != graph.n() {
        return Err(Error::InvalidParameter(format!(
            "outer block length {} != graph side {}",
            outer.block_len(),
            graph.n()
        )));
    }
    if inner.codewords().len() != outer.q() as usize {
        return Err(Error::InvalidParameter(format!(
            "|C_in| = {} != q_out = {}",
            inner.codewords().len(),
            outer.q()
        )));
    }
    let delta_in = inner.delta();
    let delta_out = outer.delta();
    let design_distance = delta_in - (graph.lambda() / graph.d() as f64) / delta_out;
    Ok(AELCode {
        inner,
        outer,
        graph,
        design_distance,
    })
}

/// Splits an EdgeWord into per-vertex views on both sides.
pub fn fold(g: &BipartiteExpander, word: &EdgeWord) -> Result<FoldedViews> {
    if word.len() != g.num_edges() {
        return Err(Error::LengthMismatch {
            expected: g.num_edges(),
            got: word.len(),
        });
    }
    Ok(FoldedViews {
        left: (0..g.n()).map(|u| word.left_view(g, u)).collect(),
        right: (0..g.n()).map(|v| word.right_view(g, v)).collect(),
    })
}

/// Reassembles the EdgeWord from the left views.
pub fn refold(g: &BipartiteExpander, views: &FoldedViews) -> EdgeWord {
    let mut symbols = vec![0u32; g.num_edges()];
    for (u, zu) in views.left.iter().enumerate() {
        for (i, &s) in zu.iter().enumerate() {
            symbols[g.edge_id(u, i)] = s;
        }
    }
    EdgeWord { symbols }
}

/// Encodes an outer codeword: edge (u, port i) carries the i-th symbol of
/// the inner codeword for x_u.
pub fn ael_encode(code: &AELCode, x: &[u32]) -> Result<(EdgeWord, FoldedViews)> {
    if !code.outer.is_codeword(x) {
        return Err(Error::InvalidParameter(
            "x is not an outer codeword".into(),
        ));
    }
    let g = &code.graph;
    let mut symbols = vec![0u32; g.num_edges()];
    for (u, &xu) in x.iter().enumerate() {
        let cw = code.enc_symbol(xu);
        for (i, &s) in cw.iter().enumerate() {
            symbols[g.edge_id(u, i)] = s;
        }
    }
    let word = EdgeWord { symbols };
    let views = fold(g, &word)?;
    Ok((word, views))
}

/// Maps left views back to outer symbols. Every view must be an inner
/// codeword.
pub fn enc_inverse(code: &AELCode, left_views: &[Vec<u32>]) -> Result<Vec<u32>> {
    if left_views.len() != code.graph.n() {
        return Err(Error::LengthMismatch {
            expected: code.graph.n(),
            got: left_views.len(),
        });
    }
    left_views
        .iter()
        .enumerate()
        .map(|(u, zu)| {
            code.inner
                .codeword_rank(zu)
                .map(|r| r as u32)
                .ok_or_else(|| {
                    Error::InvalidParameter(format!("left view {u} is not an inner codeword"))
                })
        })
        .collect()
}

/// Folded distance over R: number of right vertices whose views differ.
pub fn folded_right_distance(a: &FoldedViews, b: &FoldedViews) -> usize {
    a.right.iter().zip(&b.right).filter(|(x, y)| x != y).count()
}

/// All codewords of the AEL code as (outer codeword, EdgeWord, views),
/// enumerating outer messages. Errors when q_out^k exceeds the cap.
pub fn ael_enumerate(code: &AELCode, cap: u128) -> Result<Vec<(Vec<u32>, EdgeWord, FoldedViews)>> {
    use crate::codes::{increment, rs_encode};
    let q = code.outer.q();
    let k = code.outer.dim();
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > cap {
        return Err(Error::CapExceeded {
            required: total,
            cap,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut msg = vec![0u32; k];
    loop {
        let x = rs_encode(&code.outer, &msg)?;
        let (word, views) = ael_encode(code, &x)?;
        out.push((x, word, views));
        if !increment(&mut msg, q) {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_linear_code, make_rs_code, rs_encode};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tiny() -> AELCode {
        let inner = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let outer = make_rs_code(2, 2, 1).unwrap();
        let g = BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap();
        build_ael(inner, outer, g).unwrap()
    }

    #[test]
    fn build_tiny_instance() {
        let c = tiny();
        assert!((c.design_distance() - 1.0).abs() < 1e-9);
        assert!(!c.degenerate());
    }

    #[test]
    fn build_rejects_mismatches() {
        let inner = make_linear_code(2, &[vec![1, 1]]).unwrap();
        let g = BipartiteExpander::from_neighbor_lists(2, 2, &[vec![0, 1], vec![0, 1]]).unwrap();
        // |C_in| = 2 but q_out = 4
        let outer4 = make_rs_code(4, 2, 1).unwrap();
        assert!(build_ael(inner.clone(), outer4, g.clone()).is_err());
        // inner block 3 != d = 2
        let inner3 = make_linear_code(2, &[vec![1, 1, 1]]).unwrap();
        let outer = make_rs_code(2, 2, 1).unwrap();
        assert!(build_ael(inner3, outer, g).is_err());
    }

    #[test]
    fn encode_tiny() {
        let c = tiny();
        let (word, views) = ael_encode(&c, &[1, 1]).unwrap();
        assert_eq!(word.symbols, vec![1, 1, 1, 1]);
        assert_eq!(views.right, vec![vec![1, 1], vec![1, 1]]);
        let (zero, _) = ael_encode(&c, &[0, 0]).unwrap();
        assert_eq!(zero.symbols, vec![0, 0, 0, 0]);
        assert!(ael_encode(&c, &[1, 0]).is_err());
    }

    #[test]
    fn enc_inverse_tiny() {
        let c = tiny();
        assert_eq!(
            enc_inverse(&c, &[vec![1, 1], vec![1, 1]]).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            enc_inverse(&c, &[vec![0, 0], vec![0, 0]]).unwrap(),
            vec![0, 0]
        );
        assert!(enc_inverse(&c, &[vec![0, 1], vec![0, 0]]).is_err());
    }

    #[test]
    fn fold_refold_identity() {
        let g = BipartiteExpander::from_neighbor_lists(
            3,
            2,
            &[vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let w = EdgeWord {
                symbols: (0..g.num_edges()).map(|_| rng.gen_range(0..3)).collect(),
            };
            let views = fold(&g, &w).unwrap();
            assert_eq!(refold(&g, &views), w);
        }
    }

    fn medium() -> AELCode {
        // inner [3,2]_2 (4 codewords), outer RS over F_4 with n=3, k=2
        let inner = make_linear_code(2, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let outer = make_rs_code(4, 3, 2).unwrap();
        let g = BipartiteExpander::from_neighbor_lists(
            3,
            3,
            &[vec![0, 1, 2], vec![0, 1, 2], vec![0, 1, 2]],
        )
        .unwrap();
        build_ael(inner, outer, g).unwrap()
    }

    #[test]
    fn encode_injective_and_distance_meets_design() {
        let c = medium();
        let all = ael_enumerate(&c, 1 << 20).unwrap();
        assert_eq!(all.len(), 16);
        let n = c.graph().n() as f64;
        for i in 0..all.len() {
            for j in 0..i {
                assert_ne!(all[i].1, all[j].1);
                let fd = folded_right_distance(&all[i].2, &all[j].2);
                assert!(fd as f64 / n >= c.design_distance() - 1e-9);
            }
        }
        // rate identity r = r_in * r_out on this instance
        assert!((c.rate() - (2.0 / 3.0) * (2.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn outer_distance_amplifies() {
        let c = medium();
        let a = rs_encode(c.outer(), &[1, 2]).unwrap();
        let b = rs_encode(c.outer(), &[3, 1]).unwrap();
        let (_, va) = ael_encode(&c, &a).unwrap();
        let (_, vb) = ael_encode(&c, &b).unwrap();
        let n = c.graph().n() as f64;
        assert!(
            folded_right_distance(&va, &vb) as f64 / n >= c.design_distance() - 1e-9
        );
    }
}
