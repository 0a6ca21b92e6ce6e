//! Finite quotient rings `O / I` by enumeration.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::algebra::{mult_table, relative_coords};
use super::hnf::{hnf, reduce_mod};
use super::OrderLattice;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Largest quotient enumerated by [`ResidueRing::idempotents`].
pub const RESIDUE_BUDGET: u64 = 1 << 20;

/// A finite commutative ring given by a box of representatives and multiplication constants.
#[derive(Clone, Debug)]
pub struct ResidueRing {
    n: usize,
    /// Coordinates with a nontrivial modulus.
    free: Vec<usize>,
    /// `h[free[a]][free[b]]` restricted to free coordinates.
    h: Vec<Vec<i128>>,
    /// `table[a][b]` = reduced product of the free basis elements `a`, `b`.
    table: Vec<Vec<Vec<i128>>>,
    size: u64,
}

/// An idempotent coset with its representative in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Idempotent {
    pub coords: Vec<BigInt>,
    pub primitive: bool,
}

impl ResidueRing {
    /// `O / I` for an ideal `I` of the ring lattice `O`.
    pub fn quotient(order: &OrderLattice, ideal: &OrderLattice, spec: &FieldSpec) -> Result<Self> {
        let n = order.n();
        let rel = relative_coords(ideal, order)?;
        let h = hnf(n, &rel)?;
        let t = mult_table(order, spec)?;
        ResidueRing::build(n, h, |i, j| t[i][j].clone())
    }

    /// `Z / mZ`.
    pub fn zmod(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        ResidueRing::build(1, vec![vec![BigInt::from(m)]], |_, _| vec![BigInt::one()])
    }

    fn build(
        n: usize,
        h: Vec<Vec<BigInt>>,
        prod: impl Fn(usize, usize) -> Vec<BigInt>,
    ) -> Result<Self> {
        let mut size: u64 = 1;
        for (i, row) in h.iter().enumerate() {
            let d = row[i].to_u64().filter(|&d| d <= RESIDUE_BUDGET);
            match d.and_then(|d| size.checked_mul(d)) {
                Some(s) if s <= RESIDUE_BUDGET => size = s,
                _ => {
                    return Err(Error::BudgetExceeded(format!(
                        "quotient ring larger than {}",
                        RESIDUE_BUDGET
                    )))
                }
            }
        }
        let free: Vec<usize> = (0..n).filter(|&i| !h[i][i].is_one()).collect();
        let small = |x: &BigInt| x.to_i128().expect("reduced entry fits i128");
        let hf: Vec<Vec<i128>> = free
            .iter()
            .map(|&i| free.iter().map(|&j| small(&h[i][j])).collect())
            .collect();
        let table = free
            .iter()
            .map(|&i| {
                free.iter()
                    .map(|&j| {
                        let mut v = prod(i, j);
                        reduce_mod(&h, &mut v);
                        free.iter().map(|&k| small(&v[k])).collect()
                    })
                    .collect()
            })
            .collect();
        Ok(ResidueRing {
            n,
            free,
            h: hf,
            table,
            size,
        })
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.size
    }

    fn reduce(&self, v: &mut [i128]) {
        for j in (0..v.len()).rev() {
            let d = self.h[j][j];
            let q = v[j].div_euclid(d);
            if q != 0 {
                for (x, c) in v[..=j].iter_mut().zip(&self.h[j][..=j]) {
                    *x -= q * c;
                }
            }
        }
    }

    fn mul(&self, x: &[i128], y: &[i128]) -> Vec<i128> {
        let m = self.free.len();
        let mut acc = vec![0i128; m];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let c = xa * yb;
                for (o, &t) in acc.iter_mut().zip(&self.table[a][b]) {
                    *o += c * t;
                }
            }
        }
        self.reduce(&mut acc);
        acc
    }

    fn full_coords(&self, x: &[i128]) -> Vec<BigInt> {
        let mut out = vec![BigInt::from(0); self.n];
        for (a, &i) in self.free.iter().enumerate() {
            out[i] = BigInt::from(x[a]);
        }
        out
    }

    /// All idempotents (including 0 and 1) with primitivity flags.
    pub fn idempotents(&self) -> Vec<Idempotent> {
        let m = self.free.len();
        let mut found: Vec<Vec<i128>> = Vec::new();
        let mut x = vec![0i128; m];
        loop {
            if self.mul(&x, &x) == x {
                found.push(x.clone());
            }
            // Odometer over the box.
            let mut k = 0;
            loop {
                if k == m {
                    return self.flag(found);
                }
                x[k] += 1;
                if x[k] < self.h[k][k] {
                    break;
                }
                x[k] = 0;
                k += 1;
            }
        }
    }

    fn flag(&self, found: Vec<Vec<i128>>) -> Vec<Idempotent> {
        let zero = vec![0i128; self.free.len()];
        found
            .iter()
            .map(|e| {
                let primitive = *e != zero
                    && found
                        .iter()
                        .all(|f| *f == zero || f == e || self.mul(e, f) != *f);
                Idempotent {
                    coords: self.full_coords(e),
                    primitive,
                }
            })
            .collect()
    }
}

/// Idempotents of `O / I`.
pub fn idempotents_mod(
    order: &OrderLattice,
    ideal: &OrderLattice,
    spec: &FieldSpec,
) -> Result<Vec<Idempotent>> {
    ResidueRing::quotient(order, ideal, spec).map(|r| r.idempotents())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z360() {
        let r = ResidueRing::zmod(360).unwrap();
        let e = r.idempotents();
        let vals: Vec<i64> = e
            .iter()
            .map(|i| i.coords[0].to_i64().unwrap())
            .filter(|&v| v != 0)
            .collect();
        assert_eq!(vals, vec![1, 81, 136, 145, 216, 225, 280]);
        let prim: Vec<i64> = e
            .iter()
            .filter(|i| i.primitive)
            .map(|i| i.coords[0].to_i64().unwrap())
            .collect();
        assert_eq!(prim, vec![216, 225, 280]);
    }

    #[test]
    fn field_quotient() {
        let r = ResidueRing::zmod(7).unwrap();
        assert_eq!(r.idempotents().len(), 2);
        assert!(ResidueRing::zmod(1 << 21).is_err());
    }
}
