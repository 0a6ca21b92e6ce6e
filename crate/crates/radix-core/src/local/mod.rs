//! `q`-maximal orders of `Q(alpha)`, `alpha^(p^f) = a`, with their `q`-radicals.

mod coprime;
mod noncoprime;
mod profile;
mod setup;
mod tame;

pub use coprime::{build_p_order_coprime, eta_and_tk, eval_poly, theta};
pub use noncoprime::{
    build_p_order_noncoprime, closed_form_noncoprime, d_second_closed_forms, digit_profile,
    h_params, DigitProfile, HParams,
};
pub use profile::{Construction, LocalOrder, ResidueProfile};
pub use setup::{setup_lemma21, RadicalSetup};
pub use tame::{build_eisenstein, build_q_order};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::arith::{is_prime, Fq};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lattice::OrderLattice;

/// The closed-form `q`-maximal order of a prime-power spec.
pub fn local_order(spec: &FieldSpec, q: &BigInt) -> Result<LocalOrder> {
    let (p, _) = spec
        .prime_power()
        .ok_or_else(|| Error::Precondition("degree is not a prime power".into()))?;
    if !is_prime(q) {
        return Err(Error::NotPrime(q.clone()));
    }
    let a = spec.a();
    if a.is_multiple_of(q) {
        let setup = setup_lemma21(spec, q)?;
        if setup.gamma_maximal {
            build_eisenstein(&setup, spec)
        } else if *q == BigInt::from(p) {
            build_p_order_noncoprime(&setup, spec)
        } else {
            build_q_order(&setup, spec)
        }
    } else if *q == BigInt::from(p) {
        build_p_order_coprime(spec)
    } else {
        unramified(spec, q)
    }
}

/// `Z[alpha]` at a prime not dividing `n a`.
pub fn unramified(spec: &FieldSpec, q: &BigInt) -> Result<LocalOrder> {
    let n = spec.n();
    if (BigInt::from(n) * spec.a()).is_multiple_of(q) {
        return Err(Error::Precondition(format!("{} divides n a", q)));
    }
    let labeled: Vec<_> = (0..n)
        .map(|k| (format!("alpha^{}", k), spec.alpha_pow(k)))
        .collect();
    let radical_basis: Vec<_> = labeled
        .iter()
        .map(|(l, x)| (format!("{}·{}", q, l), x.scale_int(q.clone())))
        .collect();
    let order = OrderLattice::power_basis(n);
    let residue = match Fq::from_bigint(q) {
        Ok(fq) => {
            let mut poly = vec![0u64; n + 1];
            poly[0] = fq.neg(fq.reduce(spec.a()));
            poly[n] = 1;
            let degrees = fq
                .poly_ddf(&poly)
                .into_iter()
                .flat_map(|(d, c)| std::iter::repeat(d).take(c))
                .collect();
            ResidueProfile::from_degrees(q, degrees)
        }
        Err(_) => ResidueProfile::Opaque,
    };
    Ok(LocalOrder {
        q: q.clone(),
        construction: Construction::Unramified,
        radical: order.scale_int(q),
        order,
        labeled_basis: labeled,
        radical_basis,
        disc: spec.base_disc(),
        residue,
        reference: spec.alpha(),
        index_vq: 0,
        simple_radical: None,
    })
}

/// `Z[zeta]` for `zeta^(2^f) = -1`: the ring of integers of the `2^(f+1)`-th cyclotomic field.
pub fn cyclotomic_two_power(f: u32) -> Result<LocalOrder> {
    if f == 0 {
        return Err(Error::Precondition("f must be positive".into()));
    }
    let spec = FieldSpec::new(1usize << f, -1)?;
    build_p_order_coprime(&spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn dispatch() {
        let s = FieldSpec::new(4, 45).unwrap();
        assert!(matches!(
            local_order(&s, &b(3)).unwrap().construction,
            Construction::Tame { e_star: 1 }
        ));
        assert!(matches!(
            local_order(&s, &b(5)).unwrap().construction,
            Construction::Eisenstein
        ));
        assert!(matches!(
            local_order(&s, &b(2)).unwrap().construction,
            Construction::Coprime { .. }
        ));
        assert!(matches!(
            local_order(&s, &b(7)).unwrap().construction,
            Construction::Unramified
        ));
        assert!(local_order(&s, &b(6)).is_err());
        let s = FieldSpec::new(4, 12).unwrap();
        assert!(matches!(
            local_order(&s, &b(2)).unwrap().construction,
            Construction::NonCoprime { .. }
        ));
    }

    #[test]
    fn cyclotomic() {
        assert_eq!(cyclotomic_two_power(1).unwrap().disc.value(), &b(-4));
        let o = cyclotomic_two_power(2).unwrap();
        assert_eq!(o.disc.value(), &b(256));
        assert_eq!(o.order, OrderLattice::power_basis(4));
    }
}
