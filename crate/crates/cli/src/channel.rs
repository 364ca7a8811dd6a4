//! Corruption channel and codeword sampling.

use listdec_core::codes;
use listdec_core::field::{self, Field};
use listdec_core::tanner::{self, EdgeWord, TannerCode};
use listdec_core::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Flips `count` distinct positions to uniformly random different symbols.
pub fn corrupt(word: &EdgeWord, q: u32, count: usize, seed: u64) -> EdgeWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positions: Vec<usize> = (0..word.len()).collect();
    positions.shuffle(&mut rng);
    let mut out = word.clone();
    for &e in positions.iter().take(count.min(word.len())) {
        let shift = rng.gen_range(1..q);
        out.symbols[e] = (out.symbols[e] + shift) % q;
    }
    out
}

/// Columns above which parity null-space sampling is skipped.
const BASIS_COLS_CAP: usize = 4096;

/// Uniform random Tanner codeword via the parity null-space basis when the
/// instance is small enough, else the zero codeword (valid by linearity).
pub fn random_tanner_codeword(code: &TannerCode, seed: u64) -> Result<EdgeWord> {
    let nd = code.graph().num_edges();
    if nd > BASIS_COLS_CAP {
        return Ok(EdgeWord::zero(nd));
    }
    let fld = Field::new(code.q())?;
    let parity = tanner::parity_matrix(code);
    let basis = field::null_space(&fld, &parity, nd);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut symbols = vec![0u32; nd];
    for row in &basis {
        let c = rng.gen_range(0..fld.q());
        for (e, &x) in row.iter().enumerate() {
            symbols[e] = fld.add(symbols[e], fld.mul(c, x));
        }
    }
    Ok(EdgeWord { symbols })
}

/// Uniform random outer message for an amplified code.
pub fn random_outer_message(rs: &codes::RSCode, seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..rs.dim()).map(|_| rng.gen_range(0..rs.q())).collect()
}
