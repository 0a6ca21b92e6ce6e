//! Binomial valuations and the square of a geometric sum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

/// `v_q(m!)` by Legendre's formula.
pub fn factorial_valuation(q: u64, m: u64) -> u64 {
    let mut s = 0;
    let mut t = m;
    while t > 0 {
        t /= q;
        s += t;
    }
    s
}

/// Exact `C(m, k)`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::from(0);
    }
    let k = k.min(m - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (m - i) / (i + 1);
    }
    r
}

/// `v_q(C(q^x·z, y))` computed from factorial valuations.
pub fn binom_valuation(q: u64, x: u32, z: u64, y: u64) -> Result<u32> {
    if !super::is_prime(&BigInt::from(q)) {
        return Err(Error::NotPrime(BigInt::from(q)));
    }
    if z == 0 || z >= q {
        return Err(Error::Precondition(format!(
            "z = {} not in 1..{}",
            z,
            q - 1
        )));
    }
    let m = q
        .checked_pow(x)
        .and_then(|p| p.checked_mul(z))
        .ok_or_else(|| Error::Unsupported("q^x*z overflows u64".into()))?;
    if y == 0 || y > m {
        return Err(Error::Precondition(format!("y = {} not in 1..{}", y, m)));
    }
    let v = factorial_valuation(q, m) - factorial_valuation(q, y) - factorial_valuation(q, m - y);
    Ok(v as u32)
}

/// Coefficients of `(sum_{i=0..r} X^{r-i} Y^i)^2`, keyed by `(deg_X, deg_Y)`.
pub fn geom_square_coeffs(r: u32) -> BTreeMap<(u32, u32), u64> {
    let mut out = BTreeMap::new();
    for i in 0..r {
        out.insert((2 * r - i, i), (i + 1) as u64);
        out.insert((r - 1 - i, r + 1 + i), (r - i) as u64);
    }
    out.insert((r, r), (r + 1) as u64);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_valuation_examples() {
        assert_eq!(binom_valuation(2, 3, 1, 4).unwrap(), 1);
        assert_eq!(binom_valuation(2, 3, 1, 8).unwrap(), 0);
        assert_eq!(binom_valuation(3, 2, 2, 3).unwrap(), 1);
        assert!(binom_valuation(2, 3, 2, 1).is_err());
        assert!(binom_valuation(2, 3, 1, 9).is_err());
        assert!(binom_valuation(4, 1, 1, 1).is_err());
    }

    #[test]
    fn geom_square_small() {
        let g0 = geom_square_coeffs(0);
        assert_eq!(g0.len(), 1);
        assert_eq!(g0[&(0, 0)], 1);
        let g1 = geom_square_coeffs(1);
        assert_eq!((g1[&(2, 0)], g1[&(1, 1)], g1[&(0, 2)]), (1, 2, 1));
        let g2 = geom_square_coeffs(2);
        let v: Vec<u64> = (0..=4).map(|i| g2[&(4 - i, i)]).collect();
        assert_eq!(v, vec![1, 2, 3, 2, 1]);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(18, 3), BigInt::from(816));
        assert_eq!(binomial(3, 5), BigInt::from(0));
    }
}
