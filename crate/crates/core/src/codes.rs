//! Finite-alphabet linear codes at constant block length, plus Reed-Solomon
//! with Berlekamp-Welch for the outer code.
//!
//! Local codes keep their full codeword table (capped) so that distance,
//! list decoding and unique decoding are exact enumerations.

use crate::field::{self, Field};
use crate::maths::log_q;
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default cap on materialized codeword tables (q^k).
pub const TABLE_CAP: u128 = 1 << 20;
/// Centers sampled for the list-size certificate when q^d exceeds TABLE_CAP.
pub const LIST_SAMPLE_CENTERS: usize = 10_000;
/// Default rate slack in `gv_search`.
pub const GV_EPS0: f64 = 0.1;

pub fn hamming(a: &[u32], b: &[u32]) -> usize {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// A `[d, k]_q` linear code with cached codeword table and exact minimum
/// distance.
#[derive(Debug, Clone)]
pub struct LocalCode {
    field: Field,
    block_len: usize,
    dim: usize,
    generator: Vec<Vec<u32>>,
    /// All q^k codewords, sorted lexicographically.
    codewords: Vec<Vec<u32>>,
    min_dist: usize,
}

impl LocalCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    /// Codewords sorted lexicographically.
    pub fn codewords(&self) -> &[Vec<u32>] {
        &self.codewords
    }

    pub fn min_dist(&self) -> usize {
        self.min_dist
    }

    /// Normalized distance delta = min_dist / d.
    pub fn delta(&self) -> f64 {
        self.min_dist as f64 / self.block_len as f64
    }

    pub fn rate(&self) -> f64 {
        self.dim as f64 / self.block_len as f64
    }

    /// Unique decoding radius `floor((min_dist - 1) / 2)`.
    pub fn unique_radius(&self) -> usize {
        (self.min_dist - 1) / 2
    }

    /// Index of `word` in the sorted codeword table, if it is a codeword.
    pub fn codeword_rank(&self, word: &[u32]) -> Option<usize> {
        self.codewords
            .binary_search_by(|cw| cw.as_slice().cmp(word))
            .ok()
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.codeword_rank(word).is_some()
    }

    /// Parity check matrix: a basis of the null space of the generator's row
    /// space, `(d - k)` rows.
    pub fn parity_checks(&self) -> Vec<Vec<u32>> {
        field::null_space(&self.field, &self.generator, self.block_len)
    }

    /// Text format: line 1 `q k d`, then k generator rows.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q(), self.dim, self.block_len);
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|x| format!("{x}")).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let nums: Vec<i64> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad token {t}"))))
            .collect::<Result<_>>()?;
        if nums.len() < 3 {
            return Err(Error::Parse("code file too short".into()));
        }
        let (q, k, d) = (nums[0], nums[1], nums[2]);
        if q < 2 || k < 1 || d < 1 || nums.len() != 3 + (k * d) as usize {
            return Err(Error::Parse("malformed code file header".into()));
        }
        let rows: Vec<Vec<u32>> = nums[3..]
            .chunks(d as usize)
            .map(|ch| ch.iter().map(|&x| x as u32).collect())
            .collect();
        make_linear_code(q as u32, &rows)
    }
}

/// Validates a generator matrix and builds the code. Rank-deficient
/// generators are reduced (dim = rank); a non-prime-power q is rejected.
pub fn make_linear_code(q: u32, generator: &[Vec<u32>]) -> Result<LocalCode> {
    make_linear_code_with_cap(q, generator, TABLE_CAP)
}

pub fn make_linear_code_with_cap(q: u32, generator: &[Vec<u32>], cap: u128) -> Result<LocalCode> {
    let fld = Field::new(q)?;
    let block_len = generator.first().map_or(0, Vec::len);
    if block_len == 0 {
        return Err(Error::InvalidParameter("empty generator".into()));
    }
    for row in generator {
        if row.len() != block_len {
            return Err(Error::LengthMismatch {
                expected: block_len,
                got: row.len(),
            });
        }
        if let Some(&x) = row.iter().find(|&&x| x >= q) {
            return Err(Error::InvalidParameter(format!(
                "entry {x} outside [0, {q})"
            )));
        }
    }
    let mut rows = generator.to_vec();
    let rank = field::rref(&fld, &mut rows);
    if rank == 0 {
        return Err(Error::InvalidParameter("generator has rank 0".into()));
    }
    rows.truncate(rank);
    let table_size = (q as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
    if table_size > cap {
        return Err(Error::CapExceeded {
            required: table_size,
            cap,
        });
    }
    let mut codewords = Vec::with_capacity(table_size as usize);
    let mut msg = vec![0u32; rank];
    loop {
        codewords.push(field::vec_mat_mul(&fld, &msg, &rows));
        if !increment(&mut msg, q) {
            break;
        }
    }
    codewords.sort();
    let min_dist = codewords
        .iter()
        .map(|cw| cw.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
        .expect("rank >= 1 gives a nonzero codeword");
    Ok(LocalCode {
        field: fld,
        block_len,
        dim: rank,
        generator: rows,
        codewords,
        min_dist,
    })
}

/// Odometer increment of a q-ary vector; false on wraparound.
pub(crate) fn increment(v: &mut [u32], q: u32) -> bool {
    for digit in v.iter_mut() {
        *digit += 1;
        if *digit < q {
            return true;
        }
        *digit = 0;
    }
    false
}

pub fn encode_message(code: &LocalCode, msg: &[u32]) -> Result<Vec<u32>> {
    if msg.len() != code.dim {
        return Err(Error::LengthMismatch {
            expected: code.dim,
            got: msg.len(),
        });
    }
    Ok(field::vec_mat_mul(&code.field, msg, &code.generator))
}

pub fn min_distance(code: &LocalCode) -> usize {
    code.min_dist
}

/// All codewords within Hamming distance `radius` of `word`, sorted
/// lexicographically.
pub fn list_decode_local(code: &LocalCode, word: &[u32], radius: usize) -> Result<Vec<Vec<u32>>> {
    if word.len() != code.block_len {
        return Err(Error::LengthMismatch {
            expected: code.block_len,
            got: word.len(),
        });
    }
    Ok(code
        .codewords
        .iter()
        .filter(|cw| hamming(cw, word) <= radius)
        .cloned()
        .collect())
}

/// The unique codeword within `floor((min_dist - 1)/2)` of `word`, or `None`.
pub fn unique_decode_local(code: &LocalCode, word: &[u32]) -> Result<Option<Vec<u32>>> {
    let radius = code.unique_radius();
    let list = list_decode_local(code, word, radius)?;
    debug_assert!(list.len() <= 1);
    Ok(list.into_iter().next())
}

/// The q-ary entropy `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)`.
pub fn q_ary_entropy(q: u32, x: f64) -> f64 {
    let qf = q as f64;
    let mut h = x * log_q(qf, qf - 1.0);
    if x > 0.0 {
        h -= x * log_q(qf, x);
    }
    if x < 1.0 {
        h -= (1.0 - x) * log_q(qf, 1.0 - x);
    }
    h
}

/// Exact maximum list size at `radius`, maximized over all q^d centers when
/// that is at most `TABLE_CAP`, else over `LIST_SAMPLE_CENTERS` random
/// centers.
pub fn max_list_size(code: &LocalCode, radius: usize, seed: u64) -> usize {
    let q = code.q();
    let d = code.block_len;
    let exhaustive = (q as u128).checked_pow(d as u32).is_some_and(|c| c <= TABLE_CAP);
    let count_at = |center: &[u32]| {
        code.codewords
            .iter()
            .filter(|cw| hamming(cw, center) <= radius)
            .count()
    };
    let mut best = 0;
    if exhaustive {
        let mut center = vec![0u32; d];
        loop {
            best = best.max(count_at(&center));
            if !increment(&mut center, q) {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..LIST_SAMPLE_CENTERS {
            let center: Vec<u32> = (0..d).map(|_| rng.gen_range(0..q)).collect();
            best = best.max(count_at(&center));
        }
    }
    best
}

/// Random search for a linear code near the Gilbert-Varshamov bound that is
/// simultaneously distance- and list-size-certified: keeps the first random
/// generator whose exact minimum distance is at least `ceil(delta0 * d)` and
/// whose exact maximum list size at radius `floor(delta0 * d)` is at most
/// `ell`. Dimension is `max(1, floor((1 - H_q(delta0) - eps0) * d))`.
pub fn gv_search(
    q: u32,
    d: usize,
    delta0: f64,
    ell: usize,
    trials: usize,
    seed: u64,
) -> Result<LocalCode> {
    gv_search_with_eps0(q, d, delta0, ell, trials, seed, GV_EPS0)
}

pub fn gv_search_with_eps0(
    q: u32,
    d: usize,
    delta0: f64,
    ell: usize,
    trials: usize,
    seed: u64,
    eps0: f64,
) -> Result<LocalCode> {
    let fld = Field::new(q)?; // validates prime power up front
    let _ = fld;
    if !(delta0 > 0.0 && delta0 < 1.0 - 1.0 / q as f64) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < delta0 < 1 - 1/q, got delta0={delta0}, q={q}"
        )));
    }
    let k = (crate::maths::floor((1.0 - q_ary_entropy(q, delta0) - eps0) * d as f64) as i64).max(1) as usize;
    let dist_goal = crate::maths::ceil(delta0 * d as f64) as usize;
    let list_radius = crate::maths::floor(delta0 * d as f64) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = (0usize, usize::MAX); // (dist, list size) of best candidate
    for trial in 0..trials {
        let gen: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..d).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        let Ok(code) = make_linear_code(q, &gen) else {
            continue; // all-zero generator
        };
        let list = max_list_size(&code, list_radius, seed.wrapping_add(trial as u64));
        if code.min_dist >= dist_goal && list <= ell {
            return Ok(code);
        }
        if code.min_dist > best.0 || (code.min_dist == best.0 && list < best.1) {
            best = (code.min_dist, list);
        }
    }
    Err(Error::SearchExhausted {
        trials,
        best_dist: best.0,
        best_list: best.1,
    })
}

// ---------------------------------------------------------------------------
// Reed-Solomon
// ---------------------------------------------------------------------------

/// Reed-Solomon code: degree-<k polynomials evaluated at the first n nonzero
/// field elements (with 0 appended as the n-th point when q_out = n).
/// Minimum distance is exactly n - k + 1.
#[derive(Debug, Clone)]
pub struct RSCode {
    field: Field,
    block_len: usize,
    dim: usize,
}

impl RSCode {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn block_len(&self) -> usize {
        self.block_len
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn min_dist(&self) -> usize {
        self.block_len - self.dim + 1
    }

    pub fn delta(&self) -> f64 {
        self.min_dist() as f64 / self.block_len as f64
    }

    /// Unique decoding radius in symbols, `floor((n - k) / 2)`.
    pub fn unique_radius(&self) -> usize {
        (self.block_len - self.dim) / 2
    }

    /// Normalized unique decoding radius.
    pub fn delta_dec(&self) -> f64 {
        self.unique_radius() as f64 / self.block_len as f64
    }

    /// Evaluation point for coordinate i: the element i + 1, wrapping to 0
    /// for the final coordinate when n = q.
    #[inline]
    fn point(&self, i: usize) -> u32 {
        let p = (i + 1) as u32;
        if p == self.field.q() {
            0
        } else {
            p
        }
    }

    /// True iff `word` lies on a polynomial of degree < k.
    pub fn is_codeword(&self, word: &[u32]) -> bool {
        self.message_of(word).is_some()
    }

    /// Recovers the message of an exact codeword (interpolation on the first
    /// k coordinates plus a full consistency check).
    pub fn message_of(&self, word: &[u32]) -> Option<Vec<u32>> {
        if word.len() != self.block_len {
            return None;
        }
        let pts: Vec<(u32, u32)> = (0..self.dim).map(|i| (self.point(i), word[i])).collect();
        let poly = lagrange_interpolate(&self.field, &pts);
        for (i, &y) in word.iter().enumerate() {
            if poly_eval(&self.field, &poly, self.point(i)) != y {
                return None;
            }
        }
        let mut msg = poly;
        msg.resize(self.dim, 0);
        Some(msg)
    }

    pub fn to_text(&self) -> String {
        format!("RS {} {} {}\n", self.q(), self.block_len, self.dim)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "RS" {
            return Err(Error::Parse("expected `RS q n k`".into()));
        }
        let parse = |t: &str| -> Result<usize> {
            t.parse().map_err(|_| Error::Parse(format!("bad token {t}")))
        };
        make_rs_code(parse(toks[1])? as u32, parse(toks[2])?, parse(toks[3])?)
    }
}

/// Requires `q_out > n > k >= 1` (n distinct nonzero evaluation points).
pub fn make_rs_code(q_out: u32, n: usize, k: usize) -> Result<RSCode> {
    let fld = Field::new(q_out)?;
    if k < 1 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "need n > k >= 1, got n={n}, k={k}"
        )));
    }
    if (q_out as usize) < n {
        return Err(Error::InvalidParameter(format!(
            "need q_out >= n for n distinct evaluation points, got q_out={q_out}, n={n}"
        )));
    }
    Ok(RSCode {
        field: fld,
        block_len: n,
        dim: k,
    })
}

pub fn rs_encode(rs: &RSCode, msg: &[u32]) -> Result<Vec<u32>> {
    if msg.len() != rs.dim {
        return Err(Error::LengthMismatch {
            expected: rs.dim,
            got: msg.len(),
        });
    }
    Ok((0..rs.block_len)
        .map(|i| poly_eval(&rs.field, msg, rs.point(i)))
        .collect())
}

/// Berlekamp-Welch unique decoding, correcting up to `floor((n-k)/2)`
/// errors. Returns the message, or `None` when no codeword lies within the
/// radius (or the solver's candidate fails the distance check).
pub fn rs_unique_decode(rs: &RSCode, word: &[u32]) -> Result<Option<Vec<u32>>> {
    if word.len() != rs.block_len {
        return Err(Error::LengthMismatch {
            expected: rs.block_len,
            got: word.len(),
        });
    }
    let fld = &rs.field;
    let (n, k) = (rs.block_len, rs.dim);
    let t = (n - k) / 2;
    // Unknowns: Q coefficients (deg <= k + t - 1), then E coefficients
    // (deg <= t). Equations: Q(a_i) - y_i E(a_i) = 0.
    let nq = k + t;
    let ne = t + 1;
    let mut rows = Vec::with_capacity(n);
    for (i, &y) in word.iter().enumerate() {
        let a = rs.point(i);
        let mut row = Vec::with_capacity(nq + ne);
        let mut pw = 1u32;
        for _ in 0..nq {
            row.push(pw);
            pw = fld.mul(pw, a);
        }
        let mut pw = 1u32;
        for _ in 0..ne {
            row.push(fld.neg(fld.mul(y, pw)));
            pw = fld.mul(pw, a);
        }
        rows.push(row);
    }
    let basis = field::null_space(fld, &rows, nq + ne);
    // A nonzero solution with E != 0 always exists; any basis vector with
    // E = 0 would force Q = 0 as well.
    let sol = basis.iter().find(|v| v[nq..].iter().any(|&x| x != 0));
    let Some(sol) = sol else {
        return Ok(None);
    };
    let qpoly = sol[..nq].to_vec();
    let epoly = sol[nq..].to_vec();
    let Some(ppoly) = poly_div_exact(fld, &qpoly, &epoly) else {
        return Ok(None);
    };
    if poly_degree(&ppoly).is_some_and(|deg| deg >= k) {
        return Ok(None);
    }
    let mut msg = ppoly;
    msg.resize(k, 0);
    let cw = rs_encode(rs, &msg)?;
    if hamming(&cw, word) <= t {
        Ok(Some(msg))
    } else {
        Ok(None)
    }
}

fn poly_degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub(crate) fn poly_eval(fld: &Field, p: &[u32], x: u32) -> u32 {
    let mut acc = 0;
    for &c in p.iter().rev() {
        acc = fld.add(fld.mul(acc, x), c);
    }
    acc
}

/// Exact polynomial division; `None` when the remainder is nonzero.
fn poly_div_exact(fld: &Field, num: &[u32], den: &[u32]) -> Option<Vec<u32>> {
    let dd = poly_degree(den)?;
    let mut rem = num.to_vec();
    let dn = match poly_degree(&rem) {
        Some(dn) => dn,
        None => return Some(vec![0]),
    };
    if dn < dd {
        return None;
    }
    let mut quot = vec![0u32; dn - dd + 1];
    let lead_inv = fld.inv(den[dd]);
    for pos in (0..=dn - dd).rev() {
        let c = fld.mul(rem[pos + dd], lead_inv);
        quot[pos] = c;
        if c != 0 {
            for (j, &dc) in den.iter().enumerate().take(dd + 1) {
                rem[pos + j] = fld.sub(rem[pos + j], fld.mul(c, dc));
            }
        }
    }
    if poly_degree(&rem).is_none() {
        Some(quot)
    } else {
        None
    }
}

fn lagrange_interpolate(fld: &Field, pts: &[(u32, u32)]) -> Vec<u32> {
    let k = pts.len();
    let mut out = vec![0u32; k];
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        if yi == 0 {
            continue;
        }
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![0u32; k];
        basis[0] = 1;
        let mut deg = 0;
        let mut denom = 1u32;
        for (j, &(xj, _)) in pts.iter().enumerate() {
            if j == i {
                continue;
            }
            // basis *= (x - xj)
            for idx in (0..=deg).rev() {
                let c = basis[idx];
                basis[idx + 1] = fld.add(basis[idx + 1], c);
                basis[idx] = fld.mul(c, fld.neg(xj));
            }
            deg += 1;
            denom = fld.mul(denom, fld.sub(xi, xj));
        }
        let scale = fld.mul(yi, fld.inv(denom));
        for (o, &b) in out.iter_mut().zip(basis.iter()) {
            *o = fld.add(*o, fld.mul(scale, b));
        }
    }
    out
}
