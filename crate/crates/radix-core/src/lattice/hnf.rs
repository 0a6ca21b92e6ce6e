//! Row Hermite normal form of integer lattices.
//!
//! Canonical form: square, lower triangular (row `j` has its last nonzero entry
//! at column `j`), positive diagonal, and `0 <= h[i][j] < h[j][j]` for `j < i`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Incremental HNF of the lattice spanned by inserted vectors.
///
/// Insertions are exact until the rows reach full rank. From then on the
/// product `m` of the pivots is a multiple of the lattice determinant, so
/// `m Z^n` lies in the lattice and entries are kept reduced modulo `m`.
#[derive(Clone, Debug)]
pub struct HnfBuilder {
    n: usize,
    rows: Vec<Option<Vec<BigInt>>>,
    filled: usize,
    modulus: Option<BigInt>,
}

fn reduce_row(row: &mut [BigInt], pivot: usize, m: &BigInt) {
    for x in row[..pivot].iter_mut() {
        if x.is_negative() || &*x >= m {
            *x = x.mod_floor(m);
        }
    }
}

impl HnfBuilder {
    pub fn new(n: usize) -> Self {
        HnfBuilder {
            n,
            rows: vec![None; n],
            filled: 0,
            modulus: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_full_rank(&self) -> bool {
        self.filled == self.n
    }

    /// Adds a generator. Panics on length mismatch.
    pub fn insert(&mut self, v: &[BigInt]) {
        assert_eq!(v.len(), self.n, "vector length");
        let mut v = v.to_vec();
        if let Some(m) = &self.modulus {
            reduce_row(&mut v, self.n, m);
        }
        let mut pivot_changed = false;
        for j in (0..self.n).rev() {
            if v[j].is_zero() {
                continue;
            }
            match self.rows[j].take() {
                None => {
                    if v[j].is_negative() {
                        for x in v.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.rows[j] = Some(v);
                    self.filled += 1;
                    if self.filled == self.n {
                        self.refresh_modulus();
                    }
                    return;
                }
                Some(mut r) => {
                    let (q, rem) = v[j].div_rem(&r[j]);
                    if rem.is_zero() {
                        for (x, y) in v[..=j].iter_mut().zip(&r[..=j]) {
                            *x -= &q * y;
                        }
                    } else {
                        let e = r[j].extended_gcd(&v[j]);
                        let (g, s, t) = (e.gcd, e.x, e.y);
                        let rf = &r[j] / &g;
                        let vf = &v[j] / &g;
                        let mut nr: Vec<BigInt> = Vec::with_capacity(self.n);
                        let mut nv: Vec<BigInt> = Vec::with_capacity(self.n);
                        for (x, y) in r.iter().zip(&v) {
                            nr.push(&s * x + &t * y);
                            nv.push(&vf * x - &rf * y);
                        }
                        r = nr;
                        v = nv;
                        pivot_changed = true;
                    }
                    if let Some(m) = &self.modulus {
                        reduce_row(&mut r, j, m);
                        reduce_row(&mut v, j, m);
                    }
                    self.rows[j] = Some(r);
                }
            }
        }
        if pivot_changed && self.modulus.is_some() {
            self.refresh_modulus();
        }
    }

    fn refresh_modulus(&mut self) {
        let mut m = BigInt::one();
        for r in self.rows.iter().enumerate() {
            m *= &r.1.as_ref().expect("full rank")[r.0];
        }
        for (j, r) in self.rows.iter_mut().enumerate() {
            reduce_row(r.as_mut().expect("full rank"), j, &m);
        }
        self.modulus = Some(m);
    }

    /// Current pivot product; a multiple of the determinant once full rank.
    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    /// The canonical HNF. Fails if the inserted vectors do not have full rank.
    pub fn finish(self) -> Result<Vec<Vec<BigInt>>> {
        if !self.is_full_rank() {
            return Err(Error::NotFullRank);
        }
        let n = self.n;
        let mut rows: Vec<Vec<BigInt>> = self
            .rows
            .into_iter()
            .map(|r| r.expect("full rank"))
            .collect();
        let mut r = self.modulus.expect("full rank");
        // Top pivot first: the true pivot is gcd(p_j, R) and the sublattice
        // below contains (R / pivot) Z^j.
        for j in (0..n).rev() {
            let e = rows[j][j].extended_gcd(&r);
            let g = e.gcd;
            let u = e.x;
            let mut w: Vec<BigInt> = rows[j][..j]
                .iter()
                .map(|x| (&u * x).mod_floor(&r))
                .collect();
            w.push(g.clone());
            w.resize(n, BigInt::zero());
            rows[j] = w;
            r = &r / &g;
            if r.is_one() {
                for (k, row) in rows.iter_mut().enumerate().take(j) {
                    for x in row.iter_mut() {
                        *x = BigInt::zero();
                    }
                    row[k] = BigInt::one();
                }
                break;
            }
        }
        for i in 1..n {
            for j in (0..i).rev() {
                let (q, _) = rows[i][j].div_mod_floor(&rows[j][j]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0][..=j].iter_mut().zip(&head[j][..=j]) {
                        *x -= &q * y;
                    }
                }
            }
        }
        Ok(rows)
    }
}

/// Canonical HNF of the lattice spanned by `vectors` in `Z^n`.
pub fn hnf(n: usize, vectors: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let mut b = HnfBuilder::new(n);
    for v in vectors {
        b.insert(v);
    }
    b.finish()
}

/// Solves `y * h = w` for a canonical (lower-triangular) `h`; `None` if `y` is not integral.
pub fn solve_lower(h: &[Vec<BigInt>], w: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = h.len();
    let mut w = w.to_vec();
    let mut y = vec![BigInt::zero(); n];
    for j in (0..n).rev() {
        let (q, rem) = w[j].div_rem(&h[j][j]);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, c) in w[..j].iter_mut().zip(&h[j][..j]) {
                *x -= &q * c;
            }
        }
        y[j] = q;
    }
    Some(y)
}

/// Reduces `w` modulo the row lattice of a canonical `h`, leaving `0 <= w_j < h_jj`.
pub fn reduce_mod(h: &[Vec<BigInt>], w: &mut [BigInt]) {
    for j in (0..h.len()).rev() {
        let (q, _) = w[j].div_mod_floor(&h[j][j]);
        if !q.is_zero() {
            for (x, c) in w[..=j].iter_mut().zip(&h[j][..=j]) {
                *x -= &q * c;
            }
        }
    }
}
