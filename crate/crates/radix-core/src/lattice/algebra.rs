//! Orders as `Z`-algebras: structure constants, reduction modulo a prime,
//! Frobenius, radicals and endomorphism rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::HnfBuilder;
use super::{index_vq, OrderLattice};
use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::field::{mul_coords, FieldElement, FieldSpec};

/// Structure constants `o_i o_j = sum_k t[i][j][k] o_k` of a ring lattice.
pub fn mult_table(order: &OrderLattice, spec: &FieldSpec) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let n = order.n();
    let basis = order.basis();
    let mut t = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let c = order
                .coords(&spec.mul(&basis[i], &basis[j]))
                .ok_or_else(|| {
                    Error::Internal("lattice is not closed under multiplication".into())
                })?;
            t[j][i] = c.clone();
            t[i][j] = c;
        }
    }
    Ok(t)
}

/// The finite algebra `O / qO` in the basis of `O`.
#[derive(Clone, Debug)]
pub struct FqAlgebra {
    fq: Fq,
    table: Vec<Vec<Vec<u64>>>,
}

impl FqAlgebra {
    pub fn new(order: &OrderLattice, q: &BigInt, spec: &FieldSpec) -> Result<Self> {
        let fq = Fq::from_bigint(q)?;
        let t = mult_table(order, spec)?;
        let table = t
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| c.iter().map(|x| fq.reduce(x)).collect())
                    .collect()
            })
            .collect();
        Ok(FqAlgebra { fq, table })
    }

    pub fn field(&self) -> Fq {
        self.fq
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.dim();
        let q = self.fq.q() as u128;
        let mut acc = vec![0u128; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = (xi as u128 * yj as u128) % q;
                for (a, &t) in acc.iter_mut().zip(&self.table[i][j]) {
                    if t != 0 {
                        *a = (*a + c * t as u128) % q;
                    }
                }
            }
        }
        acc.into_iter().map(|v| v as u64).collect()
    }

    pub fn pow(&self, x: &[u64], mut e: u128) -> Vec<u64> {
        let n = self.dim();
        let mut r = self.one();
        let mut b = x.to_vec();
        debug_assert_eq!(b.len(), n);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// The identity in basis coordinates, solved from the structure constants.
    pub fn one(&self) -> Vec<u64> {
        let n = self.dim();
        // x * o_j = o_j for all j: n^2 linear equations in x.
        let mut rows = Vec::with_capacity(n * n + 1);
        for j in 0..n {
            for k in 0..n {
                let mut r: Vec<u64> = (0..n).map(|i| self.table[i][j][k]).collect();
                r.push(self.fq.neg(u64::from(j == k)));
                rows.push(r);
            }
        }
        let mut m = rows;
        let pivots = self.fq.rref(&mut m);
        let mut x = vec![0u64; n];
        for (r, &c) in pivots.iter().enumerate() {
            if c < n {
                x[c] = self.fq.neg(m[r][n]);
            }
        }
        x
    }

    /// Matrix of `x -> x^q` (row `i` is `o_i^q`).
    pub fn frobenius(&self) -> Vec<Vec<u64>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut e = vec![0u64; n];
                e[i] = 1;
                self.pow(&e, self.fq.q() as u128)
            })
            .collect()
    }

    /// Basis of the nilradical: the kernel of `F^k` with `q^k >= n`.
    pub fn nilradical(&self) -> Vec<Vec<u64>> {
        let n = self.dim() as u128;
        let q = self.fq.q() as u128;
        let mut k = 1u64;
        let mut qk = q;
        while qk < n {
            qk *= q;
            k += 1;
        }
        let fk = self.fq.mat_pow(&self.frobenius(), k);
        self.fq.left_kernel(&fk)
    }
}

fn lift(order: &OrderLattice, y: &[u64]) -> FieldElement {
    let n = order.n();
    let mut num = vec![BigInt::zero(); n];
    for (i, &c) in y.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = BigInt::from(c);
        for (a, b) in num.iter_mut().zip(&order.mat()[i]) {
            *a += &c * b;
        }
    }
    FieldElement::new(num, order.den().clone())
}

/// `q`-radical of a ring lattice: the preimage of the nilradical of `O / qO`.
pub fn frobenius_radical(
    order: &OrderLattice,
    q: &BigInt,
    spec: &FieldSpec,
) -> Result<OrderLattice> {
    let alg = FqAlgebra::new(order, q, spec)?;
    let gens: Vec<FieldElement> = alg.nilradical().iter().map(|y| lift(order, y)).collect();
    Ok(order.scale_int(q).extend(&gens))
}

/// `End(I) = {x in K : x I ⊆ I}` for an ideal `qO ⊆ I ⊆ O` of a ring lattice `O`.
///
/// `End(I) = (1/q) {y in O : y I ⊆ q I}`, and the inner set is the preimage of
/// a subspace of `O / qO`. Returns the ring and whether it equals `O`.
pub fn endomorphism_mod(
    order: &OrderLattice,
    ideal: &OrderLattice,
    q: &BigInt,
    spec: &FieldSpec,
) -> Result<(OrderLattice, bool)> {
    let fq = Fq::from_bigint(q)?;
    let n = order.n();
    let ob = order.basis();
    let ib = ideal.basis();
    let mut a = vec![Vec::with_capacity(n * n); n];
    for (i, o) in ob.iter().enumerate() {
        for w in &ib {
            let c = ideal.coords(&spec.mul(o, w)).ok_or_else(|| {
                Error::Precondition("lattice is not an ideal of the order".into())
            })?;
            a[i].extend(c.iter().map(|x| fq.reduce(x)));
        }
    }
    let ker = fq.left_kernel(&a);
    if ker.is_empty() {
        return Ok((order.clone(), true));
    }
    let gens: Vec<FieldElement> = ker
        .iter()
        .map(|y| lift(order, y).div_int(q.clone()))
        .collect();
    Ok((order.extend(&gens).into_ring(), false))
}

/// Coordinates of an ideal's basis in the basis of an overlattice, as integer rows.
pub(crate) fn relative_coords(sub: &OrderLattice, sup: &OrderLattice) -> Result<Vec<Vec<BigInt>>> {
    sub.basis()
        .iter()
        .map(|b| sup.coords(b).ok_or(Error::NotSublattice))
        .collect()
}

/// Pohst-Zassenhaus completion at `q`: replaces `O` by `End(I_q)` until it is stable.
///
/// Returns the `q`-maximal ring, its `q`-radical and `v_q` of the index gained.
pub fn pz_saturate(
    order: &OrderLattice,
    q: &BigInt,
    spec: &FieldSpec,
) -> Result<(OrderLattice, OrderLattice, u32)> {
    let mut cur = order.clone();
    let mut rad = frobenius_radical(&cur, q, spec)?;
    let mut gained = 0;
    loop {
        let (next, same) = endomorphism_mod(&cur, &rad, q, spec)?;
        if same {
            return Ok((cur, rad, gained));
        }
        gained += index_vq(&cur, &next, q)?;
        rad = frobenius_radical(&next, q, spec)?;
        cur = next;
    }
}

/// `End(I) = {x in K : x I ⊆ I}` for any full-rank lattice `I`, as the dual of
/// the lattice spanned by the columns of `R(b_j) * M^{-1}`.
pub fn endomorphism_order(ideal: &OrderLattice, spec: &FieldSpec) -> Result<OrderLattice> {
    let n = ideal.n();
    let m = ideal.mat();
    // M^{-1} = N / delta with N integral.
    let delta = ideal.det_numer();
    let inv = lower_inverse_scaled(m, &delta);
    let mut b = HnfBuilder::new(n);
    for row_j in m {
        // R(M_j): row i holds alpha^i * M_j.
        let r: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut e = vec![BigInt::zero(); n];
                e[i] = BigInt::one();
                mul_coords(&e, row_j, spec.a())
            })
            .collect();
        let c = int_mat_mul(&r, &inv);
        for col in 0..n {
            b.insert(&(0..n).map(|i| c[i][col].clone()).collect::<Vec<_>>());
        }
    }
    // Columns span (1/delta) H; the dual lattice is delta * (H^{-1})^T.
    let h = b.finish()?;
    let hdet: BigInt = (0..n).map(|i| h[i][i].clone()).product();
    let hinv = lower_inverse_scaled(&h, &hdet);
    // delta * (H^{-1})^T = (delta / hdet) * hinv^T.
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| &hinv[j][i] * &delta).collect())
        .collect();
    Ok(OrderLattice::from_int_rows(n, &hdet, &rows)?.into_ring())
}

/// `delta * M^{-1}` for a lower-triangular integer `M` whose determinant divides `delta`.
fn lower_inverse_scaled(m: &[Vec<BigInt>], delta: &BigInt) -> Vec<Vec<BigInt>> {
    let n = m.len();
    // Solve X * M = delta * I row by row: x_j * M_jj + sum_{i>j} x_i M_ij = delta * [row == j].
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for (r, x) in out.iter_mut().enumerate() {
        for j in (0..n).rev() {
            let mut s = if j == r {
                delta.clone()
            } else {
                BigInt::zero()
            };
            for i in j + 1..n {
                if !x[i].is_zero() && !m[i][j].is_zero() {
                    s -= &x[i] * &m[i][j];
                }
            }
            let (q, rem) = s.div_rem(&m[j][j]);
            debug_assert!(rem.is_zero());
            x[j] = q;
        }
    }
    out
}

fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = b[0].len();
    a.iter()
        .map(|row| {
            let mut o = vec![BigInt::zero(); m];
            for (k, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (oo, y) in o.iter_mut().zip(&b[k]) {
                    if !y.is_zero() {
                        *oo += x * y;
                    }
                }
            }
            o
        })
        .collect()
}

/// Residue degrees of the semisimple algebra `O / I`, `qO ⊆ I`, from the dimensions
/// of the fixed spaces of powers of Frobenius.
pub fn residue_degrees(
    order: &OrderLattice,
    ideal: &OrderLattice,
    q: &BigInt,
    spec: &FieldSpec,
) -> Result<Vec<usize>> {
    let alg = FqAlgebra::new(order, q, spec)?;
    let fq = alg.field();
    let n = order.n();
    let mut v: Vec<Vec<u64>> = relative_coords(ideal, order)?
        .iter()
        .map(|r| r.iter().map(|x| fq.reduce(x)).collect())
        .collect();
    let pivots = fq.rref(&mut v);
    v.truncate(pivots.len());
    let comp: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let m = comp.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let f = alg.frobenius();
    let reduce = |mut x: Vec<u64>| -> Vec<u64> {
        for (r, &p) in pivots.iter().enumerate() {
            if x[p] != 0 {
                let c = x[p];
                for (a, &b) in x.iter_mut().zip(&v[r]) {
                    *a = fq.sub(*a, fq.mul(c, b));
                }
            }
        }
        comp.iter().map(|&c| x[c]).collect()
    };
    let fa: Vec<Vec<u64>> = comp.iter().map(|&c| reduce(f[c].clone())).collect();
    if fq.rank(&fa) < m {
        return Err(Error::Precondition("quotient is not reduced".into()));
    }
    // g(d) = dim ker(F^d - 1) = sum_i gcd(d, deg_i).
    let mut g = vec![0usize; m + 1];
    let mut fd = fq.identity(m);
    for d in 1..=m {
        fd = fq.mat_mul(&fd, &fa);
        let mut t = fd.clone();
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = fq.sub(row[i], 1);
        }
        g[d] = m - fq.rank(&t);
    }
    // g(d) = sum_{k | d} phi(k) S(k), with S(k) the number of factors of degree divisible by k.
    let mut s = vec![0i64; m + 1];
    for d in 1..=m {
        let mut acc = 0i64;
        for k in 1..=d {
            if d % k == 0 {
                acc += mobius(d / k) * g[k] as i64;
            }
        }
        s[d] = acc / totient(d) as i64;
    }
    let mut degrees = Vec::new();
    for e in 1..=m {
        let mut c = 0i64;
        let mut j = e;
        while j <= m {
            c += mobius(j / e) * s[j];
            j += e;
        }
        for _ in 0..c {
            degrees.push(e);
        }
    }
    if degrees.iter().sum::<usize>() != m {
        return Err(Error::Internal("residue degrees do not add up".into()));
    }
    Ok(degrees)
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

fn totient(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}
