//! The ring of integers: products of local orders for prime-power degree,
//! linearly disjoint composition for general degree.

mod assemble;
mod radical;
mod split;

pub use assemble::{
    assemble, assemble_prime_power, assemble_with, embed, ring_index, subfield_spec, Bracketing,
};
pub use radical::composite_radical;
pub use split::{disjoint_split, DisjointSplit};

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::FactoredInt;
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::OrderLattice;
use crate::local::LocalOrder;
use crate::verify::Certificate;

/// `gamma_q = alpha^u / q^v` with `gamma_q^n = c` and `v_q(c) = g = gcd(v_q(a), n)`.
#[derive(Clone, Debug)]
pub struct PrimeGenerator {
    pub q: BigInt,
    pub u: u64,
    pub v: u64,
    pub c: BigInt,
    pub gamma: FieldElement,
    pub g: u32,
}

/// Data of a composite assembly `O = Z[alpha] prod_q Z[gamma_q] O_M O_N`.
#[derive(Clone, Debug)]
pub struct CompositeParts {
    pub split: DisjointSplit,
    /// One generator per prime of `Delta_alpha`.
    pub generators: Vec<PrimeGenerator>,
    /// `v_q` of the index added by Pohst-Zassenhaus steps, per prime of `Delta_alpha`.
    pub completion: BTreeMap<BigInt, u32>,
}

/// The ring of integers of a pure field with its discriminant and local data.
#[derive(Clone, Debug)]
pub struct IntegerRingResult {
    pub spec: FieldSpec,
    pub ring: OrderLattice,
    pub disc: FactoredInt,
    /// Integral basis of `ring`, labeled when a single closed form produced it.
    pub labeled_basis: Vec<(String, FieldElement)>,
    /// One `q`-maximal order per prime of `Delta_alpha`, ascending.
    pub locals: Vec<LocalOrder>,
    /// For composite degree: `(n_M, O_M)` and `(n_N, O_N)` in their own coordinates.
    pub subfields: Vec<(usize, IntegerRingResult)>,
    pub composite: Option<CompositeParts>,
    /// Filled in by [`crate::verify::certify`].
    pub certificate: Option<Certificate>,
}

impl IntegerRingResult {
    /// The local record at `q`, if `q` divides `Delta_alpha`.
    pub fn local(&self, q: &BigInt) -> Option<&LocalOrder> {
        self.locals.iter().find(|l| &l.q == q)
    }

    pub fn basis(&self) -> Vec<FieldElement> {
        self.ring.basis()
    }
}

/// Computes `O_K` and `Delta_K` for a spec.
pub fn ring_of_integers(spec: &FieldSpec) -> crate::error::Result<IntegerRingResult> {
    assemble(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::frobenius_radical;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn run(n: usize, a: i64) -> IntegerRingResult {
        ring_of_integers(&FieldSpec::new(n, a).unwrap()).unwrap()
    }

    #[test]
    fn prime_power_examples() {
        let r = run(4, 2);
        assert_eq!(r.disc.value(), &b(-2048));
        assert_eq!(r.ring, OrderLattice::power_basis(4));
        let r = run(4, 45);
        assert_eq!(r.disc.value(), &b(-18000));
        assert_eq!(r.local(&b(3)).unwrap().disc.exponent(&b(3)), 2);
        let r = run(4, 12);
        assert_eq!(r.disc.value(), &b(-1728));
        assert_eq!(r.labeled_basis.len(), 4);
        assert!(r.labeled_basis[1].0.starts_with("omega"));
        assert_eq!(run(2, -1).disc.value(), &b(-4));
        assert_eq!(run(4, -1).disc.value(), &b(256));
    }

    #[test]
    fn quadratic_rule() {
        for a in [
            -7i64, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13, 15, 17, 21, 30, -30, 33,
        ] {
            let d = run(2, a).disc.value().clone();
            let expect = if a.rem_euclid(4) == 1 { b(a) } else { b(4 * a) };
            assert_eq!(d, expect, "a = {}", a);
        }
    }

    #[test]
    fn composite_examples() {
        assert_eq!(run(6, 2).disc.value(), &b(1492992));
        // Q(32^(1/6)) = Q(2^(1/6)).
        let r = run(6, 32);
        assert_eq!(r.disc.value(), &b(1492992));
        assert_eq!(run(6, 32).ring.n(), 6);
        let r = run(12, 3);
        assert!(r.composite.is_some());
        assert_eq!(
            r.subfields.iter().map(|(m, _)| *m).collect::<Vec<_>>(),
            vec![4, 3]
        );
    }

    #[test]
    fn bracketings_agree() {
        for &(n, a) in &[(30usize, 2i64), (30, 12), (60, 7), (42, 10)] {
            let s = FieldSpec::new(n, a).unwrap();
            let primes: Vec<u64> = s.factor_n().iter().map(|(p, _)| *p).collect();
            let reference = assemble(&s).unwrap();
            let mut perms = vec![primes.clone()];
            perms.push(primes.iter().rev().cloned().collect());
            for perm in perms {
                for t in Bracketing::all(&perm) {
                    let r = assemble_with(&s, &t).unwrap();
                    assert_eq!(r.ring, reference.ring, "{:?} for ({}, {})", t, n, a);
                    assert_eq!(r.disc, reference.disc);
                }
            }
        }
    }

    #[test]
    fn composite_radicals_match_frobenius() {
        for &(n, a) in &[
            (6usize, 2i64),
            (6, 5),
            (6, 32),
            (10, 12),
            (12, 18),
            (15, 7),
            (20, 40),
            (6, -3),
            (18, 12),
            (24, 20),
        ] {
            let r = run(n, a);
            for q in r.spec.disc_primes().into_iter().chain([b(7), b(11)]) {
                let rad = composite_radical(&r, &q).unwrap();
                assert_eq!(
                    rad,
                    frobenius_radical(&r.ring, &q, &r.spec).unwrap(),
                    "({}, {}) at {}",
                    n,
                    a,
                    q
                );
            }
        }
    }
}
