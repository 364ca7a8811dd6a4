//! d-regular bipartite expanders: construction, spectral measurement,
//! mixing-lemma and neighbor-robustness primitives.
//!
//! Edges are indexed by `(left vertex, port)` with edge id `u*d + i`; the
//! port maps on the two sides are mutually inverse bijections. The second
//! singular value lambda of the biadjacency matrix is measured at
//! construction time and cached, never assumed.

use crate::maths::{ln, sqrt};
use crate::{Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default absolute tolerance for lambda.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest side size for which lambda is computed by dense decomposition.
pub const DENSE_CUTOFF: usize = 64;
/// Default retry cap for random matching resampling.
pub const DEFAULT_RETRY_CAP: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteExpander {
    n: usize,
    d: usize,
    /// right_port[u][i] = (v, j): left port (u,i) meets right port (v,j).
    right_port: Vec<Vec<(u32, u32)>>,
    /// left_port[v][j] = (u, i): the inverse map.
    left_port: Vec<Vec<(u32, u32)>>,
    lambda: f64,
}

impl BipartiteExpander {
    /// Builds a graph from per-left-vertex neighbor lists in port order.
    /// Right ports are assigned canonically by order of appearance when
    /// scanning left vertices and ports in increasing order, which makes the
    /// text format round-trip exactly. Parallel edges are allowed here (a
    /// double cover of a multigraph needs them); the random sampler rejects
    /// them separately.
    pub fn from_neighbor_lists(n: usize, d: usize, neighbors: &[Vec<u32>]) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter("n and d must be positive".into()));
        }
        if neighbors.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: neighbors.len(),
            });
        }
        let mut right_port = vec![Vec::with_capacity(d); n];
        let mut left_port = vec![Vec::with_capacity(d); n];
        for (u, nbrs) in neighbors.iter().enumerate() {
            if nbrs.len() != d {
                return Err(Error::InvalidParameter(format!(
                    "left vertex {u} has {} neighbors, expected {d}",
                    nbrs.len()
                )));
            }
            for (i, &v) in nbrs.iter().enumerate() {
                if v as usize >= n {
                    return Err(Error::InvalidParameter(format!(
                        "right vertex {v} out of range at left vertex {u}"
                    )));
                }
                let j = left_port[v as usize].len() as u32;
                if j as usize >= d {
                    return Err(Error::InvalidParameter(format!(
                        "right vertex {v} has more than {d} incident edges"
                    )));
                }
                right_port[u].push((v, j));
                left_port[v as usize].push((u as u32, i as u32));
            }
        }
        if let Some(v) = left_port.iter().position(|ports| ports.len() != d) {
            return Err(Error::InvalidParameter(format!(
                "right vertex {v} has {} incident edges, expected {d}",
                left_port[v].len()
            )));
        }
        let mut g = BipartiteExpander {
            n,
            d,
            right_port,
            left_port,
            lambda: 0.0,
        };
        g.lambda = second_singular_value(&g, DEFAULT_TOL, default_max_iters(n))?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn num_edges(&self) -> usize {
        self.n * self.d
    }

    /// Cached second singular value of the biadjacency matrix.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `(v, j)` for the edge at left vertex `u`, port `i`.
    #[inline]
    pub fn right_end(&self, u: usize, i: usize) -> (usize, usize) {
        let (v, j) = self.right_port[u][i];
        (v as usize, j as usize)
    }

    /// `(u, i)` for the edge at right vertex `v`, port `j`.
    #[inline]
    pub fn left_end(&self, v: usize, j: usize) -> (usize, usize) {
        let (u, i) = self.left_port[v][j];
        (u as usize, i as usize)
    }

    /// Edge id of the edge at left vertex `u`, port `i`.
    #[inline]
    pub fn edge_id(&self, u: usize, i: usize) -> usize {
        u * self.d + i
    }

    /// Edge id of the edge at right vertex `v`, port `j`.
    #[inline]
    pub fn edge_id_right(&self, v: usize, j: usize) -> usize {
        let (u, i) = self.left_end(v, j);
        self.edge_id(u, i)
    }

    /// Right neighbors of `u` in port order (with multiplicity).
    pub fn neighbors_of_left(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.right_port[u].iter().map(|&(v, _)| v as usize)
    }

    /// Left neighbors of `v` in port order (with multiplicity).
    pub fn neighbors_of_right(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.left_port[v].iter().map(|&(u, _)| u as usize)
    }

    /// All edges as `(u, i, v, j)` in edge-id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.d).map(move |i| {
                let (v, j) = self.right_end(u, i);
                (u, i, v, j)
            })
        })
    }

    /// Biadjacency matrix with multiplicities, row = left vertex.
    pub fn biadjacency(&self) -> Vec<Vec<f64>> {
        let mut a = vec![vec![0.0; self.n]; self.n];
        for (u, _, v, _) in self.edges() {
            a[u][v] += 1.0;
        }
        a
    }

    /// Text format: line 1 `n d`, then n lines of d right-neighbor indices
    /// in port order.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.d);
        for u in 0..self.n {
            let line: Vec<String> = self
                .neighbors_of_left(u)
                .map(|v| format!("{v}"))
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let n: usize = next_token(&mut tokens, "n")?;
        let d: usize = next_token(&mut tokens, "d")?;
        let mut neighbors = vec![Vec::with_capacity(d); n];
        for nbrs in neighbors.iter_mut() {
            for _ in 0..d {
                nbrs.push(next_token::<u32>(&mut tokens, "neighbor")?);
            }
        }
        if tokens.next().is_some() {
            return Err(Error::Parse("trailing tokens in graph file".into()));
        }
        Self::from_neighbor_lists(n, d, &neighbors)
    }

    /// Checks all structural invariants; used by tests and `verify`.
    pub fn check_invariants(&self) -> Result<()> {
        let mut seen = vec![false; self.num_edges()];
        for u in 0..self.n {
            for i in 0..self.d {
                let (v, j) = self.right_end(u, i);
                let (u2, i2) = self.left_end(v, j);
                if (u2, i2) != (u, i) {
                    return Err(Error::InvalidParameter(format!(
                        "port maps not mutually inverse at left ({u},{i})"
                    )));
                }
                let id = self.edge_id(u, i);
                if seen[id] {
                    return Err(Error::InvalidParameter(format!("edge id {id} repeated")));
                }
                seen[id] = true;
            }
        }
        if !(0.0..=self.d as f64 + 1e-9).contains(&self.lambda) {
            return Err(Error::InvalidParameter(format!(
                "lambda {} outside [0, d]",
                self.lambda
            )));
        }
        Ok(())
    }
}

fn next_token<T: core::str::FromStr>(
    tokens: &mut core::str::SplitWhitespace<'_>,
    what: &str,
) -> Result<T> {
    tokens
        .next()
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}")))
}

pub fn default_max_iters(n: usize) -> usize {
    10 * n * (ln(n.max(2) as f64) as usize + 1) + 1000
}

/// Samples a simple d-regular bipartite graph as a union of d uniformly
/// random perfect matchings, resampling any matching that collides with an
/// already placed edge.
pub fn random_regular_bipartite(n: usize, d: usize, seed: u64) -> Result<BipartiteExpander> {
    random_regular_bipartite_with_cap(n, d, seed, DEFAULT_RETRY_CAP)
}

pub fn random_regular_bipartite_with_cap(
    n: usize,
    d: usize,
    seed: u64,
    retry_cap: usize,
) -> Result<BipartiteExpander> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameter(format!(
            "need n >= d >= 1, got n={n}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut neighbors: Vec<Vec<u32>> = vec![Vec::with_capacity(d); n];
    let mut perm: Vec<u32> = (0..n as u32).collect();
    for _matching in 0..d {
        perm.shuffle(&mut rng);
        // Repair collisions with already placed edges by random transpositions
        // instead of resampling the whole matching, whose acceptance odds
        // decay like e^-(d-1).
        let mut attempts = 0;
        loop {
            let colliding: Vec<usize> = (0..n)
                .filter(|&u| neighbors[u].contains(&perm[u]))
                .collect();
            if colliding.is_empty() {
                for (u, &v) in perm.iter().enumerate() {
                    neighbors[u].push(v);
                }
                break;
            }
            for &u in &colliding {
                let w = rng.gen_range(0..n);
                let (a, b) = (perm[u], perm[w]);
                if u != w && !neighbors[u].contains(&b) && !neighbors[w].contains(&a) {
                    perm[u] = b;
                    perm[w] = a;
                }
            }
            attempts += 1;
            if attempts >= retry_cap {
                return Err(Error::RetriesExhausted { attempts });
            }
        }
    }
    BipartiteExpander::from_neighbor_lists(n, d, &neighbors)
}

/// Bipartite double cover of a d-regular undirected multigraph given by
/// adjacency lists. Each input edge {a, b} yields the edges (a_L, b_R) and
/// (b_L, a_R); lambda of the cover equals the largest nontrivial absolute
/// adjacency eigenvalue of the input.
pub fn double_cover(adjacency: &[Vec<u32>]) -> Result<BipartiteExpander> {
    let n = adjacency.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty adjacency".into()));
    }
    let d = adjacency[0].len();
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    for (a, nbrs) in adjacency.iter().enumerate() {
        if nbrs.len() != d {
            return Err(Error::InvalidParameter(format!(
                "vertex {a} has degree {}, expected {d} (input must be regular)",
                nbrs.len()
            )));
        }
        for &b in nbrs {
            if b as usize >= n {
                return Err(Error::InvalidParameter(format!(
                    "neighbor {b} out of range at vertex {a}"
                )));
            }
            if b as usize == a {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {a}")));
            }
            let fwd = nbrs.iter().filter(|&&x| x == b).count();
            let bwd = adjacency[b as usize]
                .iter()
                .filter(|&&x| x as usize == a)
                .count();
            if fwd != bwd {
                return Err(Error::InvalidParameter(format!(
                    "edge multiset between {a} and {b} is asymmetric"
                )));
            }
        }
    }
    BipartiteExpander::from_neighbor_lists(n, d, adjacency)
}

/// Measures the second singular value of the biadjacency matrix to absolute
/// error `tol`: exact dense decomposition for n <= 64, otherwise power
/// iteration with the analytically known top pair (value d, uniform
/// vectors) deflated.
pub fn second_singular_value(
    graph: &BipartiteExpander,
    tol: f64,
    max_iters: usize,
) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::InvalidParameter("tol must be positive".into()));
    }
    let n = graph.n;
    if n == 1 {
        return Ok(0.0);
    }
    if n <= DENSE_CUTOFF {
        let a = graph.biadjacency();
        let mut gram = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for row in &a {
                    s += row[i] * row[j];
                }
                gram[i][j] = s;
            }
        }
        let mut eigs = jacobi_eigenvalues(gram);
        eigs.sort_by(|x, y| y.partial_cmp(x).unwrap());
        return Ok(sqrt(eigs[1].max(0.0)));
    }
    power_iteration_deflated(graph, tol, max_iters)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![a[0][0]];
    }
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i][j] * a[i][j];
            }
        }
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q].abs() < 1e-30 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta >= 0.0 {
                    1.0 / (theta + sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).collect()
}

fn power_iteration_deflated(
    graph: &BipartiteExpander,
    tol: f64,
    max_iters: usize,
) -> Result<f64> {
    let n = graph.n;
    let d = graph.d as f64;
    // B = A - (d/n) J; top singular pair of A is (d, uniform, uniform).
    let apply = |x: &[f64], out: &mut Vec<f64>| {
        // out = A x
        out.clear();
        out.resize(n, 0.0);
        for u in 0..n {
            for v in graph.neighbors_of_left(u) {
                out[u] += x[v];
            }
        }
        let sum: f64 = x.iter().sum();
        let shift = d / n as f64 * sum;
        for o in out.iter_mut() {
            *o -= shift;
        }
    };
    let apply_t = |x: &[f64], out: &mut Vec<f64>| {
        out.clear();
        out.resize(n, 0.0);
        for v in 0..n {
            for u in graph.neighbors_of_right(v) {
                out[v] += x[u];
            }
        }
        let sum: f64 = x.iter().sum();
        let shift = d / n as f64 * sum;
        for o in out.iter_mut() {
            *o -= shift;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_1a3b);
    let mut x: Vec<f64> = (0..n)
        .map(|_| rand::Rng::gen_range(&mut rng, -1.0..1.0))
        .collect();
    normalize(&mut x);
    let mut y = Vec::new();
    let mut z = Vec::new();
    let mut prev = f64::INFINITY;
    for _it in 0..max_iters {
        apply(&x, &mut y);
        let est = sqrt(y.iter().map(|v| v * v).sum::<f64>());
        apply_t(&y, &mut z);
        let norm = normalize(&mut z);
        if norm == 0.0 {
            return Ok(0.0);
        }
        core::mem::swap(&mut x, &mut z);
        if (est - prev).abs() < tol {
            return Ok(est);
        }
        prev = est;
    }
    Err(Error::NoConvergence { iters: max_iters })
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = sqrt(x.iter().map(|v| v * v).sum::<f64>());
    if norm > 0.0 {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
    norm
}

/// `(discrepancy, bound)` from the expander mixing lemma:
/// `discrepancy = | |E(S,T)| - (d/n)|S||T| |` and `bound = lambda sqrt(|S||T|)`.
pub fn mixing_discrepancy(
    graph: &BipartiteExpander,
    s: &[usize],
    t: &[usize],
) -> Result<(f64, f64)> {
    let in_t = subset_mask(graph.n, t, "T")?;
    let _ = subset_mask(graph.n, s, "S")?;
    let mut edges = 0usize;
    for &u in s {
        for v in graph.neighbors_of_left(u) {
            if in_t[v] {
                edges += 1;
            }
        }
    }
    let expected = graph.d as f64 / graph.n as f64 * s.len() as f64 * t.len() as f64;
    let discrepancy = (edges as f64 - expected).abs();
    let bound = graph.lambda * sqrt(s.len() as f64 * t.len() as f64);
    Ok((discrepancy, bound))
}

/// The set `S = {u in L : |N(u) /\ T| >= (alpha - eps) d}`. Requires
/// `|T| >= alpha n` and `0 < eps <= alpha`; the mixing lemma then forces
/// `|S| > (1 - (lambda/d)^2 / eps^2) n`.
pub fn robust_neighbor_set(
    graph: &BipartiteExpander,
    t: &[usize],
    alpha: f64,
    eps: f64,
) -> Result<Vec<usize>> {
    if !(eps > 0.0 && eps <= alpha) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < eps <= alpha, got alpha={alpha}, eps={eps}"
        )));
    }
    if (t.len() as f64) < alpha * graph.n as f64 - 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "|T| = {} below alpha * n = {}",
            t.len(),
            alpha * graph.n as f64
        )));
    }
    let in_t = subset_mask(graph.n, t, "T")?;
    let threshold = (alpha - eps) * graph.d as f64;
    let mut s = Vec::new();
    for u in 0..graph.n {
        let count = graph.neighbors_of_left(u).filter(|&v| in_t[v]).count();
        if count as f64 >= threshold - 1e-12 {
            s.push(u);
        }
    }
    Ok(s)
}

fn subset_mask(n: usize, subset: &[usize], name: &str) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &w in subset {
        if w >= n {
            return Err(Error::InvalidParameter(format!(
                "{name} contains out-of-range vertex {w}"
            )));
        }
        if mask[w] {
            return Err(Error::InvalidParameter(format!(
                "{name} contains vertex {w} twice"
            )));
        }
        mask[w] = true;
    }
    Ok(mask)
}
