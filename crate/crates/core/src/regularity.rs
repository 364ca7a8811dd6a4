//! Weak regularity: approximate a 0/1 edge-indicator matrix by a short sum
//! of scaled combinatorial rectangles k_t 1_{S_t} x 1_{T_t}, with the
//! residual certified against cut functions.
//!
//! The residual matrix g - h is never materialized at scale: oracles work
//! from the sparse support plus the rectangle terms.

use crate::maths::sqrt;
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest side length accepted by the exact cut oracle.
pub const EXACT_ORACLE_MAX_N: usize = 20;
/// Alternating-maximization sweep cap inside the heuristic oracle.
pub const ALTERNATION_SWEEPS: usize = 100;
/// Default restarts for the heuristic oracle.
pub const DEFAULT_RESTARTS: usize = 32;
/// Default cap on enumerated measurable assignments.
pub const ENUM_CAP: u128 = 1 << 24;

pub fn default_p_max(gamma: f64) -> usize {
    crate::maths::ceil(64.0 / (gamma * gamma)) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleMode {
    Exact,
    Heuristic { restarts: usize },
}

/// One rectangle term k * 1_S x 1_T.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub k: f64,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
}

/// Sparse n x n matrix by rows.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    pub n: usize,
    pub rows: Vec<Vec<(usize, f64)>>,
}

impl SparseMatrix {
    /// Accumulates parallel pairs into one entry.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut dense_rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        let mut sorted = pairs.to_vec();
        sorted.sort_unstable();
        for &(u, v) in &sorted {
            let row = &mut dense_rows[u];
            match row.last_mut() {
                Some(last) if last.0 == v => last.1 += 1.0,
                _ => row.push((v, 1.0)),
            }
        }
        SparseMatrix { n, rows: dense_rows }
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .map(|&(_, x)| x * x)
            .sum()
    }
}

/// View of g - sum of terms, evaluated implicitly.
pub struct Residual<'a> {
    pub g: &'a SparseMatrix,
    pub terms: &'a [Term],
}

impl Residual<'_> {
    pub fn n(&self) -> usize {
        self.g.n
    }

    /// Column sums restricted to rows in S.
    pub fn col_sums(&self, s_mask: &[bool]) -> Vec<f64> {
        let n = self.n();
        let mut col = vec![0.0; n];
        for (u, row) in self.g.rows.iter().enumerate() {
            if s_mask[u] {
                for &(v, x) in row {
                    col[v] += x;
                }
            }
        }
        for term in self.terms {
            let hits = term.s.iter().filter(|&&u| s_mask[u]).count();
            if hits > 0 {
                let w = term.k * hits as f64;
                for &v in &term.t {
                    col[v] -= w;
                }
            }
        }
        col
    }

    /// Row sums restricted to columns in T.
    pub fn row_sums(&self, t_mask: &[bool]) -> Vec<f64> {
        let n = self.n();
        let mut rows = vec![0.0; n];
        for (u, grow) in self.g.rows.iter().enumerate() {
            for &(v, x) in grow {
                if t_mask[v] {
                    rows[u] += x;
                }
            }
        }
        for term in self.terms {
            let hits = term.t.iter().filter(|&&v| t_mask[v]).count();
            if hits > 0 {
                let w = term.k * hits as f64;
                for &u in &term.s {
                    rows[u] -= w;
                }
            }
        }
        rows
    }

    /// 1_S^T (g - h) 1_T.
    pub fn bilinear(&self, s_mask: &[bool], t_mask: &[bool]) -> f64 {
        let col = self.col_sums(s_mask);
        t_mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(v, _)| col[v])
            .sum()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for (u, row) in self.g.rows.iter().enumerate() {
            for &(v, val) in row {
                y[u] += val * x[v];
            }
        }
        for term in self.terms {
            let dot: f64 = term.t.iter().map(|&v| x[v]).sum();
            let w = term.k * dot;
            for &u in &term.s {
                y[u] -= w;
            }
        }
        y
    }

    pub fn tmatvec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut y = vec![0.0; n];
        for (u, row) in self.g.rows.iter().enumerate() {
            for &(v, val) in row {
                y[v] += val * x[u];
            }
        }
        for term in self.terms {
            let dot: f64 = term.s.iter().map(|&u| x[u]).sum();
            let w = term.k * dot;
            for &v in &term.t {
                y[v] -= w;
            }
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.n();
        let mut m = vec![vec![0.0; n]; n];
        for (u, row) in self.g.rows.iter().enumerate() {
            for &(v, x) in row {
                m[u][v] += x;
            }
        }
        for term in self.terms {
            for &u in &term.s {
                for &v in &term.t {
                    m[u][v] -= term.k;
                }
            }
        }
        m
    }
}

fn mask_to_set(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i)
        .collect()
}

/// Exact maximizer of |1_S^T M 1_T| by subset enumeration with Gray-code
/// column-sum updates; for a fixed S the optimal T takes the strictly
/// positive (or strictly negative) columns. n <= 20 only. Returns the signed
/// value achieved by (S, T).
pub fn exact_cut_oracle(m: &[Vec<f64>]) -> Result<(Vec<usize>, Vec<usize>, f64)> {
    let n = m.len();
    if n > EXACT_ORACLE_MAX_N {
        return Err(Error::InvalidParameter(format!(
            "exact cut oracle limited to n <= {EXACT_ORACLE_MAX_N}, got {n}"
        )));
    }
    let mut best_abs = 0.0;
    let mut best: (Vec<usize>, Vec<usize>, f64) = (Vec::new(), Vec::new(), 0.0);
    let mut col = vec![0.0f64; n];
    let mut s_mask = vec![false; n];
    let mut prev_gray: usize = 0;
    let total: usize = 1 << n;
    for i in 1..total {
        let gray = i ^ (i >> 1);
        let flipped = (gray ^ prev_gray).trailing_zeros() as usize;
        prev_gray = gray;
        let sign = if s_mask[flipped] { -1.0 } else { 1.0 };
        s_mask[flipped] = !s_mask[flipped];
        for (c, &x) in col.iter_mut().zip(&m[flipped]) {
            *c += sign * x;
        }
        let pos: f64 = col.iter().filter(|&&c| c > 0.0).sum();
        let neg: f64 = col.iter().filter(|&&c| c < 0.0).sum();
        for (val, keep_positive) in [(pos, true), (-neg, false)] {
            if val > best_abs + 1e-12 {
                best_abs = val;
                let t = mask_to_set(
                    &col.iter()
                        .map(|&c| if keep_positive { c > 0.0 } else { c < 0.0 })
                        .collect::<Vec<_>>(),
                );
                let signed = if keep_positive { val } else { -val };
                best = (mask_to_set(&s_mask), t, signed);
            }
        }
    }
    Ok(best)
}

/// Exact oracle applied to the implicit residual.
pub fn exact_cut_oracle_residual(res: &Residual) -> Result<(Vec<usize>, Vec<usize>, f64)> {
    exact_cut_oracle(&res.to_dense())
}

/// Best of alternating maximization from random starts and sign-rounding of
/// the top singular vector pair. The returned value is achieved by the
/// returned (S, T), hence a true lower bound on the maximum.
pub fn heuristic_cut_oracle(
    res: &Residual,
    restarts: usize,
    seed: u64,
) -> (Vec<usize>, Vec<usize>, f64) {
    let n = res.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_abs = 0.0;
    let mut best: (Vec<usize>, Vec<usize>, f64) = (Vec::new(), Vec::new(), 0.0);

    let consider = |s_mask: &[bool], res: &Residual, best_abs: &mut f64,
                        best: &mut (Vec<usize>, Vec<usize>, f64)| {
        let col = res.col_sums(s_mask);
        for positive in [true, false] {
            let t_mask: Vec<bool> = col
                .iter()
                .map(|&c| if positive { c > 0.0 } else { c < 0.0 })
                .collect();
            let val: f64 = col
                .iter()
                .zip(&t_mask)
                .filter(|(_, &b)| b)
                .map(|(&c, _)| c)
                .sum();
            if val.abs() > *best_abs + 1e-12 {
                *best_abs = val.abs();
                *best = (mask_to_set(s_mask), mask_to_set(&t_mask), val);
            }
        }
    };

    for positive in [true, false] {
        for _ in 0..restarts.max(1) {
            let mut s_mask: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            for _ in 0..ALTERNATION_SWEEPS {
                let col = res.col_sums(&s_mask);
                let t_mask: Vec<bool> = col
                    .iter()
                    .map(|&c| if positive { c > 0.0 } else { c < 0.0 })
                    .collect();
                let row = res.row_sums(&t_mask);
                let next_s: Vec<bool> = row
                    .iter()
                    .map(|&r| if positive { r > 0.0 } else { r < 0.0 })
                    .collect();
                if next_s == s_mask {
                    break;
                }
                s_mask = next_s;
            }
            consider(&s_mask, res, &mut best_abs, &mut best);
        }
    }

    // top singular pair by power iteration on (g - h)
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    for _ in 0..100 {
        let y = res.tmatvec(&res.matvec(&x));
        let norm = sqrt(y.iter().map(|v| v * v).sum::<f64>());
        if norm < 1e-300 {
            break;
        }
        x = y.iter().map(|v| v / norm).collect();
    }
    for flip in [1.0, -1.0] {
        let s_mask: Vec<bool> = x.iter().map(|&v| flip * v > 0.0).collect();
        consider(&s_mask, res, &mut best_abs, &mut best);
    }
    best
}

/// Queries the configured oracle for an (approximate) cut maximizer.
pub fn cut_oracle(
    res: &Residual,
    mode: OracleMode,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>, f64)> {
    match mode {
        OracleMode::Exact => exact_cut_oracle_residual(res),
        OracleMode::Heuristic { restarts } => Ok(heuristic_cut_oracle(res, restarts, seed)),
    }
}

#[derive(Debug, Clone)]
pub struct CutDecomposition {
    pub terms: Vec<Term>,
    pub gamma: f64,
    /// The nd scale the gamma threshold refers to.
    pub scale: f64,
    /// Largest |<g - h, 1_S x 1_T>| found by the certifying oracle.
    pub certified_residual: f64,
    /// True iff certified by exhaustive cut enumeration.
    pub certified_exact: bool,
    /// True iff the iteration stopped at p_max instead of the threshold.
    pub p_max_hit: bool,
    /// Residual energy <g - h, g - h> after each appended term.
    pub energy_trace: Vec<f64>,
}

impl CutDecomposition {
    pub fn p(&self) -> usize {
        self.terms.len()
    }

    /// h(u, v).
    pub fn eval(&self, u: usize, v: usize) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.s.contains(&u) && t.t.contains(&v))
            .map(|t| t.k)
            .sum()
    }

    /// "p gamma certified_exact residual", then one line per term:
    /// "k |S| |T| <S members> <T members>".
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.p(),
            self.gamma,
            u8::from(self.certified_exact),
            self.certified_residual
        );
        for term in &self.terms {
            out.push_str(&format!("{} {} {}", term.k, term.s.len(), term.t.len()));
            for &u in &term.s {
                out.push_str(&format!(" {u}"));
            }
            for &v in &term.t {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Frieze-Kannan iteration: repeatedly subtract the oracle's best rectangle
/// with the energy-optimal coefficient k = <g - h, 1_S x 1_T> / (|S| |T|),
/// stopping when the oracle value drops to gamma * scale or p reaches p_max.
/// The final residual is re-certified with the exact oracle when n <= 20.
pub fn weak_regularity_decompose(
    n: usize,
    pairs: &[(usize, usize)],
    scale: f64,
    gamma: f64,
    mode: OracleMode,
    p_max: usize,
    seed: u64,
) -> Result<CutDecomposition> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < gamma < 1, got {gamma}"
        )));
    }
    let g = SparseMatrix::from_pairs(n, pairs);
    if g.frobenius_sq() > scale + 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "<g,g> = {} exceeds the scale |E| = {scale}",
            g.frobenius_sq()
        )));
    }
    let threshold = gamma * scale;
    let mut terms: Vec<Term> = Vec::new();
    let mut energy = g.frobenius_sq();
    let mut energy_trace = Vec::new();
    let mut p_max_hit = false;
    let mut step = 0u64;
    loop {
        let res = Residual { g: &g, terms: &terms };
        let (s, t, val) = cut_oracle(&res, mode, seed.wrapping_add(step))?;
        if val.abs() <= threshold + 1e-12 {
            break;
        }
        if terms.len() >= p_max {
            p_max_hit = true;
            break;
        }
        let area = (s.len() * t.len()) as f64;
        let k = val / area;
        // each step removes <g-h, f>^2 / (|S||T|) of residual energy
        energy -= val * val / area;
        energy_trace.push(energy);
        terms.push(Term { k, s, t });
        step += 1;
    }
    let res = Residual { g: &g, terms: &terms };
    let (certified_residual, certified_exact) = if n <= EXACT_ORACLE_MAX_N {
        let (_, _, v) = exact_cut_oracle_residual(&res)?;
        (v.abs(), true)
    } else {
        let restarts = match mode {
            OracleMode::Heuristic { restarts } => restarts,
            OracleMode::Exact => DEFAULT_RESTARTS,
        };
        let (_, _, v) = heuristic_cut_oracle(&res, restarts, seed.wrapping_add(step + 1));
        (v.abs(), false)
    };
    Ok(CutDecomposition {
        terms,
        gamma,
        scale,
        certified_residual,
        certified_exact,
        p_max_hit,
        energy_trace,
    })
}

// ---------------------------------------------------------------------------
// Factors
// ---------------------------------------------------------------------------

/// Partition of [0, domain_size) (or a subset of it) into atoms by the sign
/// patterns of the defining cuts. Atoms are ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub domain_size: usize,
    pub atoms: Vec<Vec<usize>>,
    /// None for elements outside the (possibly restricted) domain.
    pub atom_of: Vec<Option<usize>>,
}

pub fn build_factor(n: usize, cuts: &[Vec<usize>]) -> Factor {
    let words = (cuts.len() / 64 + 1).max(1);
    let mut pattern = vec![vec![0u64; words]; n];
    for (c, cut) in cuts.iter().enumerate() {
        for &x in cut {
            pattern[x][c / 64] |= 1 << (c % 64);
        }
    }
    let mut index: BTreeMap<Vec<u64>, usize> = BTreeMap::new();
    let mut atoms: Vec<(usize, Vec<usize>)> = Vec::new();
    for (x, p) in pattern.into_iter().enumerate() {
        match index.get(&p) {
            Some(&id) => atoms[id].1.push(x),
            None => {
                index.insert(p, atoms.len());
                atoms.push((atoms.len(), vec![x]));
            }
        }
    }
    atoms.sort_by_key(|(_, members)| members[0]);
    let mut atom_of = vec![None; n];
    for (id, (_, members)) in atoms.iter().enumerate() {
        for &x in members {
            atom_of[x] = Some(id);
        }
    }
    Factor {
        domain_size: n,
        atoms: atoms.into_iter().map(|(_, m)| m).collect(),
        atom_of,
    }
}

/// The restricted factor B_{|W}: atoms intersected with W, empty ones
/// dropped, reordered by smallest member. domain_size is unchanged.
pub fn restrict_factor(factor: &Factor, w: &[usize]) -> Factor {
    let mut in_w = vec![false; factor.domain_size];
    for &x in w {
        in_w[x] = true;
    }
    let mut atoms: Vec<Vec<usize>> = factor
        .atoms
        .iter()
        .map(|a| a.iter().copied().filter(|&x| in_w[x]).collect::<Vec<_>>())
        .filter(|a: &Vec<usize>| !a.is_empty())
        .collect();
    atoms.sort_by_key(|a| a[0]);
    let mut atom_of = vec![None; factor.domain_size];
    for (id, members) in atoms.iter().enumerate() {
        for &x in members {
            atom_of[x] = Some(id);
        }
    }
    Factor {
        domain_size: factor.domain_size,
        atoms,
        atom_of,
    }
}

/// E[f | B]: replaces each in-domain value by its atom's mean; elements
/// outside the factor's domain keep their value.
pub fn conditional_average(f: &[f64], factor: &Factor) -> Vec<f64> {
    let mut out = f.to_vec();
    for atom in &factor.atoms {
        let mean: f64 = atom.iter().map(|&x| f[x]).sum::<f64>() / atom.len() as f64;
        for &x in atom {
            out[x] = mean;
        }
    }
    out
}

/// Least eta such that deleting the elements of W disagreeing with their
/// atom's plurality makes x measurable on B_{|W}; eta is normalized by the
/// full domain size. Plurality ties resolve to the smallest value.
pub fn min_concentration(
    x: &[usize],
    factor: &Factor,
    w: &[usize],
) -> (f64, Vec<usize>) {
    let restricted = restrict_factor(factor, w);
    let mut mismatches = 0usize;
    let mut pluralities = Vec::with_capacity(restricted.atoms.len());
    for atom in &restricted.atoms {
        let max_val = atom.iter().map(|&e| x[e]).max().unwrap();
        let mut counts = vec![0usize; max_val + 1];
        for &e in atom {
            counts[x[e]] += 1;
        }
        let best = counts.iter().max().copied().unwrap();
        let plurality = counts.iter().position(|&c| c == best).unwrap();
        pluralities.push(plurality);
        mismatches += atom.iter().filter(|&&e| x[e] != plurality).count();
    }
    (
        mismatches as f64 / factor.domain_size as f64,
        pluralities,
    )
}

/// Stream of all ell^{#atoms} assignments constant on every atom, in
/// lexicographic atom-value order (last atom varies fastest). Elements
/// outside every atom are fixed to 0.
pub struct MeasurableIter<'a> {
    factor: &'a Factor,
    ell: usize,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for MeasurableIter<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let mut out = vec![0usize; self.factor.domain_size];
        for (atom, &v) in self.factor.atoms.iter().zip(&self.counter) {
            for &x in atom {
                out[x] = v;
            }
        }
        // advance, last atom fastest
        let mut pos = self.counter.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.counter[pos] += 1;
            if self.counter[pos] < self.ell {
                break;
            }
            self.counter[pos] = 0;
        }
        Some(out)
    }
}

pub fn count_measurable(factor: &Factor, ell: usize) -> u128 {
    (ell as u128)
        .checked_pow(factor.atoms.len() as u32)
        .unwrap_or(u128::MAX)
}

pub fn enumerate_measurable<'a>(
    factor: &'a Factor,
    ell: usize,
    cap: u128,
) -> Result<MeasurableIter<'a>> {
    let total = count_measurable(factor, ell);
    if total > cap {
        return Err(Error::CapExceeded {
            required: total,
            cap,
        });
    }
    Ok(MeasurableIter {
        factor,
        ell,
        counter: vec![0; factor.atoms.len()],
        done: false,
    })
}
