//! Finite field arithmetic for prime powers q <= 2^16.
//!
//! Elements are integers in `[0, q)`. For `q = p^m` the integer is the
//! base-`p` digit encoding of a polynomial over `F_p` modulo a fixed
//! irreducible polynomial. Multiplication goes through log/antilog tables
//! built from a generator of the multiplicative group, so symbol operations
//! are table lookups.

use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

const MAX_Q: u64 = 1 << 16;

#[derive(Debug, Clone)]
pub struct Field {
    q: u32,
    p: u32,
    m: u32,
    /// exp[i] = g^i for i in 0..2(q-1), doubled to skip a modular reduction.
    exp: Vec<u32>,
    /// log[a] for a in 1..q; log[0] is unused.
    log: Vec<u32>,
}

/// Returns `Some((p, m))` when `q = p^m` for a prime `p`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut m = 0;
            while rest % p == 0 {
                rest /= p;
                m += 1;
            }
            return if rest == 1 { Some((p, m)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, m) = prime_power(q as u64).ok_or(Error::NotPrimePower(q as u64))?;
        if q as u64 > MAX_Q {
            return Err(Error::InvalidParameter(alloc::format!(
                "field size {q} exceeds {MAX_Q}"
            )));
        }
        let p = p as u32;
        let modulus = if m == 1 {
            Vec::new()
        } else {
            find_irreducible(p, m)
        };
        let ctx = SlowCtx { p, m, modulus };
        let g = find_generator(q, &ctx);

        let mut exp = vec![0u32; 2 * (q as usize - 1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..(q as usize - 1) {
            exp[i] = acc;
            exp[i + q as usize - 1] = acc;
            log[acc as usize] = i as u32;
            acc = ctx.mul(acc, g);
        }
        debug_assert_eq!(acc, 1);
        Ok(Field { q, p, m, exp, log })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return (a + b) % self.p;
        }
        digitwise(a, b, self.p, self.m, |x, y, p| (x + y) % p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        digitwise(a, 0, self.p, self.m, |x, _, p| (p - x) % p)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        self.exp[(self.q - 1 - self.log[a as usize]) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

#[inline]
fn digitwise(a: u32, b: u32, p: u32, m: u32, op: fn(u32, u32, u32) -> u32) -> u32 {
    let mut out = 0;
    let mut mult = 1;
    let (mut a, mut b) = (a, b);
    for _ in 0..m {
        out += op(a % p, b % p, p) * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    out
}

/// Construction-time polynomial arithmetic; too slow for symbol ops but only
/// used to fill the tables.
struct SlowCtx {
    p: u32,
    m: u32,
    /// Coefficients of the monic irreducible modulus, degree m (low to high),
    /// empty when m == 1.
    modulus: Vec<u32>,
}

impl SlowCtx {
    fn decode(&self, mut a: u32) -> Vec<u32> {
        let mut coeffs = vec![0u32; self.m as usize];
        for c in coeffs.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        coeffs
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        let mut out = 0;
        for &c in coeffs.iter().rev() {
            out = out * self.p + c;
        }
        out
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (pa, pb) = (self.decode(a), self.decode(b));
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in pa.iter().enumerate() {
            for (j, &y) in pb.iter().enumerate() {
                prod[i + j] += x as u64 * y as u64;
            }
        }
        // reduce modulo the monic modulus
        for i in (m..2 * m - 1).rev() {
            let c = prod[i] % self.p as u64;
            if c != 0 {
                // x^i = x^{i-m} * (-modulus without leading term)
                for j in 0..m {
                    let mj = self.modulus[j] as u64;
                    let sub = c * (self.p as u64 - mj) % self.p as u64;
                    prod[i - m + j] += sub;
                }
            }
            prod[i] = 0;
        }
        let coeffs: Vec<u32> = prod[..m]
            .iter()
            .map(|&x| (x % self.p as u64) as u32)
            .collect();
        self.encode(&coeffs)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Finds a monic irreducible polynomial of degree m over F_p (coefficients
/// low to high, including the leading 1). Brute force: a polynomial of
/// degree m with no monic divisor of degree <= m/2 is irreducible.
fn find_irreducible(p: u32, m: u32) -> Vec<u32> {
    let md = m as usize;
    let count = (p as u64).pow(m); // candidates: x^m + (lower part)
    for low in 1..count {
        let mut cand = decode_poly(low, p, md + 1);
        cand[md] = 1;
        if cand[0] == 0 {
            continue; // divisible by x
        }
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomial of degree {m} over F_{p} exists");
}

fn decode_poly(mut a: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for c in out.iter_mut() {
        *c = (a % p as u64) as u32;
        a /= p as u64;
    }
    out
}

fn poly_deg(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of a by the monic-normalized b over F_p.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let db = poly_deg(b).expect("nonzero divisor");
    let lead_inv = mod_inv(b[db], p);
    let mut r: Vec<u32> = a.to_vec();
    while let Some(dr) = poly_deg(&r) {
        if dr < db {
            break;
        }
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for j in 0..=db {
            let sub = (c as u64 * b[j] as u64) % p as u64;
            r[dr - db + j] = ((r[dr - db + j] as u64 + p as u64 - sub) % p as u64) as u32;
        }
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // Fermat; p prime.
    let mut acc: u64 = 1;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn is_irreducible(cand: &[u32], p: u32) -> bool {
    let m = poly_deg(cand).unwrap();
    for dd in 1..=m / 2 {
        let count = (p as u64).pow(dd as u32);
        for low in 0..count {
            let mut div = decode_poly(low, p, dd + 1);
            div[dd] = 1;
            let r = poly_rem(cand, &div, p);
            if poly_deg(&r).is_none() {
                return false;
            }
        }
    }
    true
}

fn find_generator(q: u32, ctx: &SlowCtx) -> u32 {
    let order = (q - 1) as u64;
    let factors = distinct_prime_factors(order);
    'outer: for g in 2..q {
        if ctx.m > 1 && ctx.decode(g).iter().all(|&c| c == 0) {
            continue;
        }
        for &r in &factors {
            if ctx.pow(g, order / r) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    // q == 2: the only nonzero element generates the trivial group.
    1
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---------------------------------------------------------------------------
// Dense linear algebra over a field.
// ---------------------------------------------------------------------------

/// Reduces `rows` to reduced row echelon form in place and returns the rank.
pub fn rref(field: &Field, rows: &mut Vec<Vec<u32>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]);
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let c = rows[r][col];
                for j in 0..ncols {
                    let sub = field.mul(c, rows[rank][j]);
                    rows[r][j] = field.sub(rows[r][j], sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of the null space `{x : rows * x = 0}`.
pub fn null_space(field: &Field, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.to_vec();
    let rank = rref(field, &mut m);
    m.truncate(rank);
    let mut pivot_cols = Vec::with_capacity(rank);
    for row in &m {
        let col = row.iter().position(|&x| x != 0).expect("nonzero rref row");
        pivot_cols.push(col);
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut x = vec![0u32; ncols];
        x[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            // pivot entry is 1: x[pc] = -row[free]
            x[pc] = field.neg(m[r][free]);
        }
        basis.push(x);
    }
    basis
}

/// `msg * mat` for a k x n matrix.
pub fn vec_mat_mul(field: &Field, msg: &[u32], mat: &[Vec<u32>]) -> Vec<u32> {
    let ncols = mat.first().map_or(0, Vec::len);
    let mut out = vec![0u32; ncols];
    for (c, row) in msg.iter().zip(mat.iter()) {
        if *c == 0 {
            continue;
        }
        for (o, &m) in out.iter_mut().zip(row.iter()) {
            *o = field.add(*o, field.mul(*c, m));
        }
    }
    out
}
