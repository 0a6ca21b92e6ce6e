//! The defining data `(n, a)` of a pure field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use super::FieldElement;
use crate::arith::{factorize, irreducibility_obstruction, FactoredInt};
use crate::error::{Error, Result};

/// `K = Q[X]/(X^n - a)` with a reduced radicand.
///
/// The constructor strips `n`-th power content from the input radicand:
/// if `a_in = s^n * a`, the stored generator is `alpha = alpha_in / s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    n: usize,
    a: BigInt,
    input_a: BigInt,
    scale: BigInt,
    factor_n: Vec<(u64, u32)>,
    factor_a: FactoredInt,
}

impl FieldSpec {
    /// Validates irreducibility, factors `a` and reduces the radicand.
    pub fn new(n: usize, a: impl Into<BigInt>) -> Result<Self> {
        FieldSpec::with_hint(n, a, None)
    }

    /// As [`FieldSpec::new`], with a partial factorization of `|a|` to validate and complete.
    pub fn with_hint(
        n: usize,
        a: impl Into<BigInt>,
        hint: Option<&[(BigInt, u32)]>,
    ) -> Result<Self> {
        let a = a.into();
        if let Some(reason) = irreducibility_obstruction(n, &a) {
            return Err(Error::Reducible { n, a, reason });
        }
        let fa = factorize(&a, hint)?;
        let nn = n as u32;
        let mut scale = BigInt::one();
        let mut reduced = BTreeMap::new();
        for (q, e) in fa.factors() {
            scale *= q.pow(e / nn);
            reduced.insert(q.clone(), e % nn);
        }
        let factor_a = FactoredInt::new(fa.sign(), reduced);
        let fn_ = factorize(&BigInt::from(n), None)?;
        let factor_n = fn_
            .factors()
            .iter()
            .map(|(p, f)| (p.to_u64().expect("degree fits u64"), *f))
            .collect();
        Ok(FieldSpec {
            n,
            a: factor_a.value().clone(),
            input_a: a,
            scale,
            factor_n,
            factor_a,
        })
    }

    /// Degree `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The reduced radicand: `alpha^n = a`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// The radicand as supplied.
    pub fn input_a(&self) -> &BigInt {
        &self.input_a
    }

    /// `s` with `alpha_in = s * alpha`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn factor_n(&self) -> &[(u64, u32)] {
        &self.factor_n
    }

    pub fn factor_a(&self) -> &FactoredInt {
        &self.factor_a
    }

    /// `(p, f)` if `n = p^f`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        if self.factor_n.len() == 1 {
            Some(self.factor_n[0])
        } else {
            None
        }
    }

    /// Primes dividing the power-basis discriminant, ascending.
    pub fn disc_primes(&self) -> Vec<BigInt> {
        let mut ps: Vec<BigInt> = self.factor_a.primes().cloned().collect();
        for (p, _) in &self.factor_n {
            let p = BigInt::from(*p);
            if !ps.contains(&p) {
                ps.push(p);
            }
        }
        ps.sort();
        ps
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self.n)
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha_pow(1)
    }

    pub fn alpha_pow(&self, k: usize) -> FieldElement {
        FieldElement::alpha_pow(self.n, &self.a, k)
    }

    pub fn power_basis(&self) -> Vec<FieldElement> {
        (0..self.n).map(|k| self.alpha_pow(k)).collect()
    }

    /// Exact product. Panics on dimension mismatch; see [`super::mul`] for the checked form.
    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        assert_eq!(x.dim(), self.n);
        x.mul(y, &self.a)
    }

    pub fn pow(&self, x: &FieldElement, k: u64) -> FieldElement {
        x.pow(k, &self.a)
    }

    /// `Tr(x) = n * x_0`.
    pub fn trace_fast(&self, x: &FieldElement) -> num_rational::BigRational {
        num_rational::BigRational::new(&x.numer()[0] * BigInt::from(self.n), x.denom().clone())
    }

    /// The power-basis discriminant `(-1)^((n-1)(n-2)/2) n^n a^(n-1)`.
    pub fn base_disc(&self) -> FactoredInt {
        let n = self.n as u32;
        let fnn = FactoredInt::new(
            1,
            self.factor_n
                .iter()
                .map(|(p, f)| (BigInt::from(*p), f * n))
                .collect(),
        );
        let fa = self.factor_a.pow(n - 1);
        let sign: i8 = if ((n - 1) * (n - 2) / 2) % 2 == 1 {
            -1
        } else {
            1
        };
        fnn.mul(&fa).with_sign(sign * fa.sign())
    }

    /// Whether `alpha_in = s * alpha` required a nontrivial rescaling.
    pub fn was_reduced(&self) -> bool {
        !self.scale.abs().is_one()
    }
}
