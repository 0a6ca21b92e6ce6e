//! Independent checks attached to an emitted ring of integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::round2::{oracle_budget, round2_with_budget, trace_disc};
use crate::error::Error;
use crate::global::{ring_index, IntegerRingResult};
use crate::lattice::{endomorphism_mod, frobenius_radical};

/// Largest degree for which the trace form is recomputed (the covolume identity is used above it).
pub const TRACE_FORM_BUDGET: usize = 64;

/// Outcome of [`certify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// All pairwise basis products lie in the lattice.
    pub closure_ok: bool,
    pub contains_one: bool,
    /// Pohst-Zassenhaus: `End(I_q) = O` at every prime of `Delta_alpha`.
    pub pz_ok: BTreeMap<BigInt, bool>,
    /// The discriminant agrees with the trace form and with `Delta_alpha / index^2`.
    pub disc_consistent: bool,
    /// Exact agreement with the round-2 oracle; `None` when the oracle was skipped.
    pub oracle_match: Option<bool>,
    pub notes: Vec<String>,
}

impl Certificate {
    /// Every check passed (a skipped oracle does not count against it).
    pub fn is_certified(&self) -> bool {
        self.closure_ok
            && self.contains_one
            && self.pz_ok.values().all(|&b| b)
            && self.disc_consistent
            && self.oracle_match != Some(false)
    }
}

/// Certifies a result with the environment's oracle budget.
pub fn certify(result: &IntegerRingResult) -> Certificate {
    certify_with_budget(result, oracle_budget())
}

/// Certifies a result; the oracle runs only for `n <= budget`.
pub fn certify_with_budget(result: &IntegerRingResult, budget: usize) -> Certificate {
    let spec = &result.spec;
    let ring = &result.ring;
    let mut notes = Vec::new();
    let (contains_one, closure_ok) = ring.check_ring(spec);
    let mut pz_ok = BTreeMap::new();
    for q in spec.disc_primes() {
        let ok = frobenius_radical(ring, &q, spec)
            .and_then(|rad| endomorphism_mod(ring, &rad, &q, spec));
        match ok {
            Ok((_, same)) => {
                pz_ok.insert(q, same);
            }
            Err(e) => {
                notes.push(format!("PZ at {} not run: {}", q, e));
                pz_ok.insert(q, false);
            }
        }
    }
    let by_index = match ring_index(result) {
        Ok(idx) => {
            let lhs = spec.base_disc().abs();
            let rhs = idx.pow(2).mul(&result.disc.abs());
            lhs == rhs && result.disc.sign() == spec.base_disc().sign()
        }
        Err(e) => {
            notes.push(format!("index: {}", e));
            false
        }
    };
    let by_trace = if spec.n() <= TRACE_FORM_BUDGET {
        match trace_disc(ring, spec) {
            Ok(d) => d == result.disc,
            Err(e) => {
                notes.push(format!("trace form: {}", e));
                false
            }
        }
    } else {
        notes.push(format!(
            "trace form skipped above degree {}",
            TRACE_FORM_BUDGET
        ));
        true
    };
    let oracle_match = match round2_with_budget(spec, budget) {
        Ok((o, d)) => Some(&o == ring && d == result.disc),
        Err(Error::BudgetExceeded(m)) => {
            notes.push(format!("oracle skipped: {}", m));
            None
        }
        Err(e) => {
            notes.push(format!("oracle failed: {}", e));
            Some(false)
        }
    };
    Certificate {
        closure_ok,
        contains_one,
        pz_ok,
        disc_consistent: by_index && by_trace,
        oracle_match,
        notes,
    }
}

/// Attaches a certificate to a result.
pub fn certified(mut result: IntegerRingResult) -> IntegerRingResult {
    result.certificate = Some(certify(&result));
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::global::ring_of_integers;

    #[test]
    fn small_fields_certify() {
        for &(n, a) in &[
            (2usize, 5i64),
            (3, 10),
            (4, 12),
            (4, 45),
            (6, 2),
            (6, 32),
            (8, 192),
            (9, 270),
            (12, 18),
        ] {
            let r = ring_of_integers(&FieldSpec::new(n, a).unwrap()).unwrap();
            let c = certify(&r);
            assert!(c.is_certified(), "({}, {}): {:?}", n, a, c);
            assert_eq!(c.oracle_match, Some(true));
        }
    }

    #[test]
    fn skipped_oracle_is_recorded() {
        let r = ring_of_integers(&FieldSpec::new(5, 7).unwrap()).unwrap();
        let c = certify_with_budget(&r, 4);
        assert_eq!(c.oracle_match, None);
        assert!(c.is_certified());
        assert!(c.notes.iter().any(|n| n.contains("oracle skipped")));
    }
}
