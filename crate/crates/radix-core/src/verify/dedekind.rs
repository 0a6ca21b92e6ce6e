//! The Dedekind criterion for `Z[theta]`, `theta` a root of a monic integer polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Outcome of the Dedekind criterion at a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dedekind {
    Maximal,
    /// `gcd(F, g, h) = u` is nontrivial; `t(theta) / q` is integral and not in `Z[theta]`.
    NotMaximal {
        gcd: Vec<u64>,
        enlarger: Vec<BigInt>,
    },
}

impl Dedekind {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Dedekind::Maximal)
    }
}

fn lift(f: &[u64]) -> Vec<BigInt> {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn int_mul(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Whether `Z[theta]` is `q`-maximal for `f` monic (ascending coefficients).
pub fn dedekind_check(f: &[BigInt], q: &BigInt) -> Result<Dedekind> {
    if f.last().map_or(true, |c| *c != BigInt::from(1)) {
        return Err(Error::Precondition("polynomial must be monic".into()));
    }
    let fq = Fq::from_bigint(q)?;
    let fbar = fq.poly_from_ints(f);
    let g = fq.poly_radical(&fbar);
    let (h, rem) = fq.poly_divrem(&fbar, &g);
    if !rem.is_empty() && rem.iter().any(|&c| c != 0) {
        return Err(Error::Internal(
            "radical does not divide the polynomial".into(),
        ));
    }
    let gh = int_mul(&lift(&g), &lift(&h));
    let mut diff: Vec<BigInt> = f.to_vec();
    diff.resize(diff.len().max(gh.len()), BigInt::zero());
    for (d, x) in diff.iter_mut().zip(&gh) {
        *d -= x;
    }
    let mut big_f = Vec::with_capacity(diff.len());
    for d in &diff {
        let (quot, r) = d.div_rem(q);
        if !r.is_zero() {
            return Err(Error::Internal("f - gh is not divisible by q".into()));
        }
        big_f.push(quot);
    }
    let fbar_big = fq.poly_from_ints(&big_f);
    let u = fq.poly_gcd(&fq.poly_gcd(&fbar_big, &g), &h);
    if u.len() <= 1 {
        return Ok(Dedekind::Maximal);
    }
    let (t, _) = fq.poly_divrem(&fbar, &u);
    Ok(Dedekind::NotMaximal {
        gcd: u,
        enlarger: lift(&t),
    })
}

/// The criterion for `X^n - a`.
pub fn dedekind_check_spec(spec: &FieldSpec, q: &BigInt) -> Result<Dedekind> {
    let n = spec.n();
    let mut f = vec![BigInt::zero(); n + 1];
    f[0] = -spec.a().clone();
    f[n] = BigInt::from(1);
    dedekind_check(&f, q)
}

/// `t(alpha) / q` for an enlarger `t`.
pub fn enlarging_element(spec: &FieldSpec, enlarger: &[BigInt], q: &BigInt) -> FieldElement {
    let mut num = vec![BigInt::zero(); spec.n()];
    for (i, c) in enlarger.iter().enumerate().take(spec.n()) {
        num[i] = c.clone();
    }
    FieldElement::new(num, q.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::setup_lemma21;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        let s = FieldSpec::new(2, 5).unwrap();
        match dedekind_check_spec(&s, &b(2)).unwrap() {
            Dedekind::NotMaximal { enlarger, .. } => {
                let x = enlarging_element(&s, &enlarger, &b(2));
                assert_eq!(x, FieldElement::from_integers(vec![b(1), b(1)]).div_int(2));
            }
            Dedekind::Maximal => panic!("Z[sqrt 5] is not 2-maximal"),
        }
        assert!(dedekind_check_spec(&FieldSpec::new(3, 2).unwrap(), &b(3))
            .unwrap()
            .is_maximal());
        assert!(
            dedekind_check_spec(&FieldSpec::new(3, 10).unwrap(), &b(3))
                .unwrap()
                .is_maximal()
                == false
        );
    }

    #[test]
    fn gamma_polynomial_maximal_iff_eisenstein() {
        for &(n, a, q) in &[
            (4usize, 45i64, 3i64),
            (4, 24, 2),
            (8, 192, 3),
            (8, 12, 3),
            (9, 18, 2),
            (9, 24, 2),
            (4, 75, 5),
        ] {
            let s = FieldSpec::new(n, a).unwrap();
            let setup = setup_lemma21(&s, &b(q)).unwrap();
            let mut f = vec![BigInt::zero(); n + 1];
            f[0] = -setup.c.clone();
            f[n] = b(1);
            assert_eq!(
                dedekind_check(&f, &b(q)).unwrap().is_maximal(),
                setup.e_star == 0,
                "({}, {}, {})",
                n,
                a,
                q
            );
        }
    }
}
