//! The Pohst-Zassenhaus round-2 maximal order, independent of the closed forms.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::arith::FactoredInt;
use crate::error::{Error, Result};
use crate::field::{det_rational, trace_matrix, FieldSpec};
use crate::lattice::{endomorphism_mod, frobenius_radical, OrderLattice};

/// Default largest degree the oracle accepts.
pub const DEFAULT_ORACLE_BUDGET: usize = 24;

/// The degree budget: `RADIX_ORACLE_BUDGET` if set and valid, else the default.
pub fn oracle_budget() -> usize {
    std::env::var("RADIX_ORACLE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ORACLE_BUDGET)
}

/// Enlarges `order` to its `q`-maximal overorder via `O <- End(I_q(O))`.
pub fn round2_at(order: &OrderLattice, q: &BigInt, spec: &FieldSpec) -> Result<OrderLattice> {
    let mut cur = order.clone().into_ring();
    loop {
        let rad = frobenius_radical(&cur, q, spec)?;
        let (next, same) = endomorphism_mod(&cur, &rad, q, spec)?;
        if same {
            return Ok(cur);
        }
        cur = next.into_ring();
    }
}

/// Trace-form discriminant of a full-rank lattice, factored over the primes of `Delta_alpha`.
pub fn trace_disc(order: &OrderLattice, spec: &FieldSpec) -> Result<FactoredInt> {
    let d = det_rational(&trace_matrix(&order.basis(), spec)?);
    if !d.is_integer() {
        return Err(Error::Internal("non-integral trace discriminant".into()));
    }
    let primes = spec.disc_primes();
    FactoredInt::over_primes(&d.to_integer(), &primes)
        .ok_or_else(|| Error::Internal("trace discriminant has a prime outside Delta_alpha".into()))
}

/// The maximal order and its trace-form discriminant, within the degree budget.
pub fn round2_maximal_order(spec: &FieldSpec) -> Result<(OrderLattice, FactoredInt)> {
    round2_with_budget(spec, oracle_budget())
}

/// As [`round2_maximal_order`] with an explicit degree budget.
pub fn round2_with_budget(spec: &FieldSpec, budget: usize) -> Result<(OrderLattice, FactoredInt)> {
    if spec.n() > budget {
        return Err(Error::BudgetExceeded(format!(
            "degree {} exceeds oracle budget {}",
            spec.n(),
            budget
        )));
    }
    let base = OrderLattice::power_basis(spec.n());
    let disc_a = spec.base_disc();
    let mut ring = base.clone();
    for q in spec.disc_primes() {
        if disc_a.exponent(&q) < 2 {
            continue;
        }
        let local = round2_at(&base, &q, spec)?;
        ring = ring.sum(&local);
    }
    let ring = ring.into_ring();
    let disc = trace_disc(&ring, spec)?;
    Ok((ring, disc))
}

/// `v_q` of `Delta_alpha` minus the `q`-maximal disc, per prime, for diagnostics.
pub fn disc_drops(spec: &FieldSpec, disc: &FactoredInt) -> BTreeMap<BigInt, u32> {
    let base = spec.base_disc();
    spec.disc_primes()
        .into_iter()
        .map(|q| (q.clone(), base.exponent(&q) - disc.exponent(&q)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn examples() {
        let (o, d) = round2_maximal_order(&FieldSpec::new(2, 5).unwrap()).unwrap();
        assert_eq!(d.value(), &b(5));
        assert_eq!(o.den(), &b(2));
        assert_eq!(
            round2_maximal_order(&FieldSpec::new(3, 10).unwrap())
                .unwrap()
                .1
                .value(),
            &b(-300)
        );
        assert_eq!(
            round2_maximal_order(&FieldSpec::new(4, 12).unwrap())
                .unwrap()
                .1
                .value(),
            &b(-1728)
        );
        assert!(matches!(
            round2_with_budget(&FieldSpec::new(5, 2).unwrap(), 4),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
