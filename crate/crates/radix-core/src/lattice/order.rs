//! Full-rank lattices in `K`, used both for orders and for fractional ideals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::hnf::{reduce_mod, solve_lower, HnfBuilder};
use crate::arith::{factorize, factorize_over, FactoredInt};
use crate::error::{Error, Result};
use crate::field::{mul_coords, FieldElement, FieldSpec};

/// The lattice `(1/den) * rowspan(mat)` in power-basis coordinates.
///
/// `mat` is in canonical HNF and `den` is minimal, so two lattices are equal
/// iff `(den, mat)` agree.
#[derive(Clone, Debug, Eq, Hash)]
pub struct OrderLattice {
    den: BigInt,
    mat: Vec<Vec<BigInt>>,
    is_ring: bool,
}

impl PartialEq for OrderLattice {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.mat == other.mat
    }
}

fn lcm_all<'a>(it: impl Iterator<Item = &'a BigInt>) -> BigInt {
    it.fold(BigInt::one(), |l, d| l.lcm(d))
}

impl OrderLattice {
    /// Canonical form of `(1/den) * span(rows)` for integer rows.
    pub fn from_int_rows(n: usize, den: &BigInt, rows: &[Vec<BigInt>]) -> Result<Self> {
        let mut b = HnfBuilder::new(n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            b.insert(r);
        }
        Ok(OrderLattice::from_hnf(den.clone(), b.finish()?))
    }

    /// Canonicalizes a den/HNF pair by cancelling common content.
    fn from_hnf(den: BigInt, mut mat: Vec<Vec<BigInt>>) -> Self {
        let mut g = den.clone();
        for row in &mat {
            for x in row {
                if g.is_one() {
                    break;
                }
                g = g.gcd(x);
            }
        }
        let den = if g.is_one() {
            den
        } else {
            for row in mat.iter_mut() {
                for x in row.iter_mut() {
                    *x = &*x / &g;
                }
            }
            den / &g
        };
        OrderLattice {
            den,
            mat,
            is_ring: false,
        }
    }

    /// Lattice spanned by field elements.
    pub fn from_elements(n: usize, elems: &[FieldElement]) -> Result<Self> {
        for e in elems {
            if e.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.dim(),
                });
            }
        }
        let den = lcm_all(elems.iter().map(|e| e.denom()));
        let rows: Vec<Vec<BigInt>> = elems
            .iter()
            .map(|e| {
                let f = &den / e.denom();
                e.numer().iter().map(|x| x * &f).collect()
            })
            .collect();
        OrderLattice::from_int_rows(n, &den, &rows)
    }

    /// `Z[alpha]`.
    pub fn power_basis(n: usize) -> Self {
        let mat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        OrderLattice {
            den: BigInt::one(),
            mat,
            is_ring: true,
        }
    }

    /// Marks the lattice as a ring. Callers vouch for closure; [`Self::check_ring`] verifies it.
    pub fn into_ring(mut self) -> Self {
        self.is_ring = true;
        self
    }

    pub fn is_ring(&self) -> bool {
        self.is_ring
    }

    pub fn n(&self) -> usize {
        self.mat.len()
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn mat(&self) -> &[Vec<BigInt>] {
        &self.mat
    }

    pub fn basis_element(&self, i: usize) -> FieldElement {
        FieldElement::new(self.mat[i].clone(), self.den.clone())
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        (0..self.n()).map(|i| self.basis_element(i)).collect()
    }

    /// `prod(mat_ii)`.
    pub fn det_numer(&self) -> BigInt {
        self.mat
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .product()
    }

    /// Covolume relative to `Z[alpha]`: `det(mat) / den^n`.
    pub fn covolume(&self) -> BigRational {
        BigRational::new(self.det_numer(), self.den.pow(self.n() as u32))
    }

    /// Integer coordinates of `x` in the lattice basis, if `x` lies in the lattice.
    pub fn coords(&self, x: &FieldElement) -> Option<Vec<BigInt>> {
        let (w, rem): (Vec<BigInt>, Vec<BigInt>) = x
            .numer()
            .iter()
            .map(|c| (c * &self.den).div_rem(x.denom()))
            .unzip();
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        solve_lower(&self.mat, &w)
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.coords(x).is_some()
    }

    /// Whether every basis element of `other` lies in `self`.
    pub fn contains_lattice(&self, other: &OrderLattice) -> bool {
        other.basis().iter().all(|b| self.contains(b))
    }

    /// Canonical representative of `x` modulo the lattice (integer rows of `den * x`).
    pub fn reduce(&self, x: &FieldElement) -> Option<FieldElement> {
        let (mut w, rem): (Vec<BigInt>, Vec<BigInt>) = x
            .numer()
            .iter()
            .map(|c| (c * &self.den).div_rem(x.denom()))
            .unzip();
        if rem.iter().any(|r| !r.is_zero()) {
            return None;
        }
        reduce_mod(&self.mat, &mut w);
        Some(FieldElement::new(w, self.den.clone()))
    }

    /// `self + other`.
    pub fn sum(&self, other: &OrderLattice) -> OrderLattice {
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let mut b = HnfBuilder::new(self.n());
        for r in &self.mat {
            b.insert(&r.iter().map(|x| x * &fa).collect::<Vec<_>>());
        }
        for r in &other.mat {
            b.insert(&r.iter().map(|x| x * &fb).collect::<Vec<_>>());
        }
        OrderLattice::from_hnf(den, b.finish().expect("sum of full-rank lattices"))
    }

    /// Lattice generated by all `x * y`, `x in self`, `y in other`.
    pub fn product(&self, other: &OrderLattice, spec: &FieldSpec) -> OrderLattice {
        let n = self.n();
        let den = &self.den * &other.den;
        let mut b = HnfBuilder::new(n);
        // x_0 * other already has full rank, so the builder switches to modular mode early.
        for x in &self.mat {
            for y in &other.mat {
                b.insert(&mul_coords(x, y, spec.a()));
            }
        }
        OrderLattice::from_hnf(den, b.finish().expect("product of full-rank lattices"))
    }

    /// `x * self` for nonzero `x`.
    pub fn mul_element(&self, x: &FieldElement, spec: &FieldSpec) -> OrderLattice {
        let n = self.n();
        let den = &self.den * x.denom();
        let rows: Vec<Vec<BigInt>> = self
            .mat
            .iter()
            .map(|r| mul_coords(r, x.numer(), spec.a()))
            .collect();
        OrderLattice::from_int_rows(n, &den, &rows).expect("nonzero multiplier")
    }

    /// `(p/q) * self` for a nonzero rational.
    pub fn scale(&self, p: &BigInt, q: &BigInt) -> OrderLattice {
        assert!(!p.is_zero() && !q.is_zero());
        let (p, q) = if q.is_negative() {
            (-p, -q)
        } else {
            (p.clone(), q.clone())
        };
        let p = &p;
        let mut b = HnfBuilder::new(self.n());
        for r in &self.mat {
            b.insert(&r.iter().map(|x| x * p).collect::<Vec<_>>());
        }
        OrderLattice::from_hnf(&self.den * &q, b.finish().expect("nonzero scale"))
    }

    /// `c * self` for an integer `c`.
    pub fn scale_int(&self, c: &BigInt) -> OrderLattice {
        self.scale(c, &BigInt::one())
    }

    /// Lattice generated by `self` and extra elements.
    pub fn extend(&self, elems: &[FieldElement]) -> OrderLattice {
        let den = lcm_all(
            elems
                .iter()
                .map(|e| e.denom())
                .chain(std::iter::once(&self.den)),
        );
        let mut b = HnfBuilder::new(self.n());
        let f = &den / &self.den;
        for r in &self.mat {
            b.insert(&r.iter().map(|x| x * &f).collect::<Vec<_>>());
        }
        for e in elems {
            let f = &den / e.denom();
            b.insert(&e.numer().iter().map(|x| x * &f).collect::<Vec<_>>());
        }
        OrderLattice::from_hnf(den, b.finish().expect("extension of a full-rank lattice"))
    }

    /// `(contains 1, closed under multiplication)`.
    pub fn check_ring(&self, spec: &FieldSpec) -> (bool, bool) {
        let one = self.contains(&spec.one());
        let basis = self.basis();
        let closed = (0..basis.len())
            .all(|i| (i..basis.len()).all(|j| self.contains(&spec.mul(&basis[i], &basis[j]))));
        (one, closed)
    }

    /// Whether `self` is an ideal of the ring `order` (closure under multiplication by its basis).
    pub fn is_ideal_of(&self, order: &OrderLattice, spec: &FieldSpec) -> bool {
        let mine = self.basis();
        order
            .basis()
            .iter()
            .all(|o| mine.iter().all(|x| self.contains(&spec.mul(o, x))))
    }

    /// Trace-form discriminant `Delta_alpha * covolume^2`, factored over the primes of
    /// the base discriminant and the lattice denominators.
    pub fn disc(&self, spec: &FieldSpec) -> Result<FactoredInt> {
        let base = spec.base_disc();
        let num = self.det_numer();
        let den = self.den.pow(self.n() as u32);
        let total = BigRational::from_integer(base.value().clone())
            * BigRational::new(num.clone() * &num, den.clone() * &den);
        if !total.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral discriminant {}",
                total
            )));
        }
        let primes: Vec<BigInt> = base.primes().cloned().collect();
        factorize_over(&total.to_integer(), &primes)
    }
}

/// Canonical lattice spanned by rational row vectors.
pub fn hnf_canonical(rows: &[Vec<BigRational>]) -> Result<OrderLattice> {
    let n = rows.first().map_or(0, |r| r.len());
    if n == 0 {
        return Err(Error::NotFullRank);
    }
    let elems: Vec<FieldElement> = rows
        .iter()
        .map(|r| FieldElement::from_rationals(r))
        .collect();
    OrderLattice::from_elements(n, &elems)
}

/// `[sup : sub]` for `sub` contained in `sup`.
pub fn index(sub: &OrderLattice, sup: &OrderLattice) -> Result<FactoredInt> {
    if !sup.contains_lattice(sub) {
        return Err(Error::NotSublattice);
    }
    let r = sub.covolume() / sup.covolume();
    if !r.is_integer() {
        return Err(Error::Internal("non-integral index of a sublattice".into()));
    }
    factorize(&r.to_integer(), None)
}

/// Product of two lattices.
pub fn product(a: &OrderLattice, b: &OrderLattice, spec: &FieldSpec) -> OrderLattice {
    let mut p = a.product(b, spec);
    p.is_ring = a.is_ring && b.is_ring;
    p
}

/// `v_q([sup : sub])` for `sub` contained in `sup`, without factoring the index.
pub fn index_vq(sub: &OrderLattice, sup: &OrderLattice, q: &BigInt) -> Result<u32> {
    if !sup.contains_lattice(sub) {
        return Err(Error::NotSublattice);
    }
    let r = sub.covolume() / sup.covolume();
    if !r.is_integer() {
        return Err(Error::Internal("non-integral index of a sublattice".into()));
    }
    Ok(crate::arith::val(q, &r.to_integer()))
}
