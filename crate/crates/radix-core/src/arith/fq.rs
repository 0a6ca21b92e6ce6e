//! Prime fields `F_q` for `q < 2^64`: scalars, dense matrices and polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// The prime field `F_q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fq {
    q: u64,
}

impl Fq {
    /// `q` must be prime; primality is the caller's responsibility.
    pub fn new(q: u64) -> Self {
        assert!(q >= 2);
        Fq { q }
    }

    /// From a big prime, rejecting `q >= 2^64`.
    pub fn from_bigint(q: &BigInt) -> Result<Self> {
        q.to_u64().filter(|&v| v >= 2).map(Fq::new).ok_or_else(|| {
            Error::Unsupported(format!("prime field with q = {} (needs q < 2^64)", q))
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Canonical residue of a big integer.
    pub fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.q))
            .to_u64()
            .expect("residue fits u64")
    }

    pub fn reduce_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.q as i128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.q as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            ((a as u128 + self.q as u128 - b as u128) % self.q as u128) as u64
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u128) -> u64 {
        let mut r = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.q != 0, "inverse of zero");
        let g = (a as i128).extended_gcd(&(self.q as i128));
        g.x.rem_euclid(self.q as i128) as u64
    }

    // ---- matrices: Vec<Vec<u64>>, row-major ----

    pub fn mat_mul(&self, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let m = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                let mut out = vec![0u128; m];
                for (k, &x) in row.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (o, &y) in out.iter_mut().zip(&b[k]) {
                        *o = (*o + x as u128 * y as u128) % self.q as u128;
                    }
                }
                out.into_iter().map(|v| v as u64).collect()
            })
            .collect()
    }

    pub fn vec_mat(&self, v: &[u64], b: &[Vec<u64>]) -> Vec<u64> {
        self.mat_mul(&[v.to_vec()], b).pop().unwrap_or_default()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, m: &mut [Vec<u64>]) -> Vec<usize> {
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let inv = self.inv(m[r][c]);
            for x in m[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && row[c] != 0 {
                    let f = row[c];
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = self.sub(*x, self.mul(f, y));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &[Vec<u64>]) -> usize {
        let mut t = m.to_vec();
        self.rref(&mut t).len()
    }

    /// Basis of `{x : x * m = 0}` for an `r x c` matrix `m`.
    pub fn left_kernel(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = m.len();
        if rows == 0 {
            return Vec::new();
        }
        let cols = m[0].len();
        let t: Vec<Vec<u64>> = (0..cols)
            .map(|j| (0..rows).map(|i| m[i][j]).collect())
            .collect();
        self.right_kernel(&t, rows)
    }

    /// Basis of `{x : m * x = 0}`; `width` is the number of columns.
    pub fn right_kernel(&self, m: &[Vec<u64>], width: usize) -> Vec<Vec<u64>> {
        let mut t = m.to_vec();
        let pivots = self.rref(&mut t);
        let mut basis = Vec::new();
        for free in (0..width).filter(|c| !pivots.contains(c)) {
            let mut x = vec![0u64; width];
            x[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = self.neg(t[r][free]);
            }
            basis.push(x);
        }
        basis
    }

    pub fn identity(&self, n: usize) -> Vec<Vec<u64>> {
        (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
            .collect()
    }

    pub fn mat_pow(&self, m: &[Vec<u64>], mut e: u64) -> Vec<Vec<u64>> {
        let mut r = self.identity(m.len());
        let mut b = m.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mat_mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mat_mul(&b, &b);
            }
        }
        r
    }

    // ---- polynomials: Vec<u64>, lowest degree first, no trailing zeros ----

    pub fn poly_trim(&self, mut f: Vec<u64>) -> Vec<u64> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn poly_from_ints(&self, f: &[BigInt]) -> Vec<u64> {
        self.poly_trim(f.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn poly_add(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let n = f.len().max(g.len());
        let r = (0..n)
            .map(|i| self.add(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        self.poly_trim(r)
    }

    pub fn poly_sub(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let n = f.len().max(g.len());
        let r = (0..n)
            .map(|i| self.sub(*f.get(i).unwrap_or(&0), *g.get(i).unwrap_or(&0)))
            .collect();
        self.poly_trim(r)
    }

    pub fn poly_mul(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(a, b));
            }
        }
        self.poly_trim(r)
    }

    /// Division with remainder; `g` nonzero.
    pub fn poly_divrem(&self, f: &[u64], g: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!g.is_empty(), "division by zero polynomial");
        let mut r = f.to_vec();
        if r.len() < g.len() {
            return (Vec::new(), self.poly_trim(r));
        }
        let dg = g.len() - 1;
        let lead_inv = self.inv(g[dg]);
        let mut quo = vec![0u64; r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = self.mul(r[i], lead_inv);
            if c == 0 {
                continue;
            }
            quo[i - dg] = c;
            for (j, &gj) in g.iter().enumerate() {
                let k = i - dg + j;
                r[k] = self.sub(r[k], self.mul(c, gj));
            }
        }
        r.truncate(dg);
        (self.poly_trim(quo), self.poly_trim(r))
    }

    pub fn poly_rem(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        self.poly_divrem(f, g).1
    }

    pub fn poly_monic(&self, f: &[u64]) -> Vec<u64> {
        match f.last() {
            None => Vec::new(),
            Some(&l) => {
                let inv = self.inv(l);
                f.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn poly_gcd(&self, f: &[u64], g: &[u64]) -> Vec<u64> {
        let mut a = self.poly_trim(f.to_vec());
        let mut b = self.poly_trim(g.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_derivative(&self, f: &[u64]) -> Vec<u64> {
        let r = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.q))
            .collect();
        self.poly_trim(r)
    }

    /// `f^e mod m`.
    pub fn poly_powmod(&self, f: &[u64], mut e: u128, m: &[u64]) -> Vec<u64> {
        let mut base = self.poly_rem(f, m);
        let mut r = self.poly_rem(&[1], m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_rem(&self.poly_mul(&r, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_rem(&self.poly_mul(&base, &base), m);
            }
        }
        r
    }

    /// `g` with `g(X)^q = f(X)`, for `f` with `f' = 0`.
    fn poly_qth_root(&self, f: &[u64]) -> Vec<u64> {
        let q = self.q as usize;
        // a^q = a in F_q, so only the exponents shrink.
        let r = f.iter().step_by(q).copied().collect();
        self.poly_trim(r)
    }

    /// Squarefree part (product of the distinct monic irreducible factors) of a nonzero `f`.
    pub fn poly_radical(&self, f: &[u64]) -> Vec<u64> {
        let f = self.poly_monic(f);
        if f.len() <= 1 {
            return f;
        }
        let d = self.poly_derivative(&f);
        if d.is_empty() {
            return self.poly_radical(&self.poly_qth_root(&f));
        }
        // Yun: c = gcd(f, f'), w = f / c collects every factor of multiplicity prime to q.
        let c = self.poly_gcd(&f, &d);
        let mut w = self.poly_divrem(&f, &c).0;
        let mut c = c;
        let mut out = vec![1u64];
        while w.len() > 1 {
            let y = self.poly_gcd(&w, &c);
            let z = self.poly_divrem(&w, &y).0;
            out = self.poly_mul(&out, &z);
            w = y;
            c = self.poly_divrem(&c, &w).0;
        }
        if c.len() > 1 {
            // Remaining factors have multiplicity divisible by q.
            let extra = self.poly_radical(&self.poly_qth_root(&c));
            let g = self.poly_gcd(&out, &extra);
            out = self.poly_mul(&out, &self.poly_divrem(&extra, &g).0);
        }
        self.poly_monic(&out)
    }

    /// Distinct-degree factorization of a monic squarefree `f`: `(degree, count)` pairs.
    pub fn poly_ddf(&self, f: &[u64]) -> Vec<(usize, usize)> {
        let mut f = self.poly_monic(f);
        let mut out = Vec::new();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.len() - 1, 1));
                break;
            }
            h = self.poly_powmod(&h, self.q as u128, &f);
            let g = self.poly_gcd(&f, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                out.push((d, (g.len() - 1) / d));
                f = self.poly_divrem(&f, &g).0;
                h = self.poly_rem(&h, &f);
            }
        }
        out
    }
}
