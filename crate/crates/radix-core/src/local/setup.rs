//! Normalization of the generator at a prime dividing the radicand.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{is_prime, lemma21_gcd, val, FactoredInt};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Data of `gamma = alpha^u / q^v` with `gamma^(p^f) = c` and `v_q(c) = p^(e*)`.
#[derive(Clone, Debug)]
pub struct RadicalSetup {
    pub q: BigInt,
    pub p: u64,
    pub f: u32,
    /// `v_q(a) = p^(e*) e**`.
    pub e: u32,
    pub e_star: u32,
    pub e_star_star: u64,
    pub u: u64,
    pub v: u64,
    pub c: BigInt,
    /// `c / q^(p^(e*))`, coprime to `q`.
    pub c_star: BigInt,
    pub gamma: FieldElement,
    /// `gamma^(p^(f-e*)) / q`, a root of `X^(p^(e*)) - c*`.
    pub gamma_star: FieldElement,
    /// `Z[gamma]` is already `q`-maximal (`e* = 0`).
    pub gamma_maximal: bool,
}

impl RadicalSetup {
    /// `p^(f-e*)`.
    pub fn outer_degree(&self) -> u64 {
        self.p.pow(self.f - self.e_star)
    }

    /// `p^(e*)`.
    pub fn inner_degree(&self) -> u64 {
        self.p.pow(self.e_star)
    }

    /// Discriminant of `Z[gamma]`, i.e. of `X^(p^f) - c`.
    pub fn disc_gamma(&self, spec: &FieldSpec) -> FactoredInt {
        let n = spec.n() as u32;
        let mut fc = spec.factor_a().pow(self.u as u32);
        let qe = fc.exponent(&self.q);
        let mut map = fc.factors().clone();
        map.insert(self.q.clone(), qe - n * self.v as u32);
        fc = FactoredInt::new(fc.sign(), map);
        debug_assert_eq!(fc.value(), &self.c);
        let fnn = FactoredInt::new(
            1,
            [(BigInt::from(self.p), self.f * n)].into_iter().collect(),
        );
        let sign: i8 = if ((n - 1) * (n - 2) / 2) % 2 == 1 {
            -1
        } else {
            1
        };
        let fcn = fc.pow(n - 1);
        fnn.mul(&fcn).with_sign(sign * fcn.sign())
    }
}

/// Normalizes the generator at a prime `q | a` of a prime-power spec.
pub fn setup_lemma21(spec: &FieldSpec, q: &BigInt) -> Result<RadicalSetup> {
    let (p, f) = spec
        .prime_power()
        .ok_or_else(|| Error::Precondition("degree is not a prime power".into()))?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q.clone()));
    }
    let a = spec.a();
    if !a.is_multiple_of(q) {
        return Err(Error::Precondition(format!(
            "{} does not divide a = {}",
            q, a
        )));
    }
    let e = val(q, a);
    let n = p.pow(f);
    if e as u64 >= n {
        return Err(Error::NotReduced(format!("v_{}(a) = {} >= {}", q, e, n)));
    }
    let mut e_star = 0u32;
    let mut e_star_star = e as u64;
    while e_star_star % p == 0 {
        e_star_star /= p;
        e_star += 1;
    }
    let (u, v) = lemma21_gcd(e_star_star, p, f - e_star)?;
    let qpow = q.pow(n as u32 * v as u32);
    let au = a.pow(u as u32);
    let (c, rem) = au.div_rem(&qpow);
    if !rem.is_zero() {
        return Err(Error::Internal("a^u not divisible by q^(p^f v)".into()));
    }
    let inner = p.pow(e_star);
    let (c_star, rem) = c.div_rem(&q.pow(inner as u32));
    if !rem.is_zero() || c_star.is_multiple_of(q) {
        return Err(Error::Internal(format!("v_q(c) != p^(e*) for c = {}", c)));
    }
    let gamma = spec.alpha_pow(u as usize).div_int(q.pow(v as u32));
    let outer = p.pow(f - e_star);
    let gamma_star = spec.pow(&gamma, outer).div_int(q.clone());
    Ok(RadicalSetup {
        q: q.clone(),
        p,
        f,
        e,
        e_star,
        e_star_star,
        u,
        v,
        c,
        c_star,
        gamma,
        gamma_star,
        gamma_maximal: e_star == 0,
    })
}

/// `gamma^0, ..., gamma^(m-1)`.
pub(crate) fn powers(x: &FieldElement, m: u64, spec: &FieldSpec) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(m as usize);
    let mut acc = spec.one();
    for _ in 0..m {
        out.push(acc.clone());
        acc = spec.mul(&acc, x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn setup_45_at_3() {
        let s = FieldSpec::new(4, 45).unwrap();
        let r = setup_lemma21(&s, &b(3)).unwrap();
        assert_eq!((r.e, r.e_star, r.e_star_star, r.u, r.v), (2, 1, 1, 1, 0));
        assert_eq!((r.c.clone(), r.c_star.clone()), (b(45), b(5)));
        assert_eq!(r.gamma, s.alpha());
        assert_eq!(r.gamma_star, s.alpha_pow(2).div_int(3));
        assert!(!r.gamma_maximal);
    }

    #[test]
    fn setup_192_at_2() {
        let s = FieldSpec::new(8, 192).unwrap();
        let r = setup_lemma21(&s, &b(2)).unwrap();
        assert_eq!((r.e, r.e_star, r.e_star_star, r.u, r.v), (6, 1, 3, 3, 2));
        assert_eq!((r.c.clone(), r.c_star.clone()), (b(108), b(27)));
        assert_eq!(r.gamma, s.alpha_pow(3).div_int(4));
        assert_eq!(s.pow(&r.gamma, 8), FieldElement::constant(8, 108));
        assert_eq!(s.pow(&r.gamma_star, 2), FieldElement::constant(8, 27));
        assert_eq!(
            r.disc_gamma(&s).value(),
            &(b(8).pow(8) * b(108).pow(7) * b(-1))
        );
    }

    #[test]
    fn setup_errors_and_eisenstein() {
        let s = FieldSpec::new(4, 24).unwrap();
        let r = setup_lemma21(&s, &b(2)).unwrap();
        assert_eq!(r.e_star, 0);
        assert!(r.gamma_maximal);
        assert!(setup_lemma21(&s, &b(5)).is_err());
        assert!(setup_lemma21(&s, &b(4)).is_err());
        assert!(setup_lemma21(&FieldSpec::new(6, 2).unwrap(), &b(2)).is_err());
        assert_eq!((r.u, r.v, r.c.clone()), (3, 2, b(54)));
    }
}
