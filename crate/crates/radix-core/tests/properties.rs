use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use radix_core::arith::is_irreducible_pure;
use radix_core::global::{assemble_with, Bracketing};
use radix_core::lattice::{frobenius_radical, pz_saturate, ResidueRing};
use radix_core::local::{eta_and_tk, eval_poly, h_params};
use radix_core::verify::{certify_with_budget, dedekind_check_spec, round2_at, round2_with_budget};
use radix_core::{ring_of_integers, FieldElement, FieldSpec, OrderLattice};

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Degrees and radicands small enough for the oracle.
fn field() -> impl Strategy<Value = FieldSpec> {
    (2usize..=12, -60i64..=60).prop_filter_map("reducible", |(n, a)| FieldSpec::new(n, a).ok())
}

proptest! {
    #![proptest_config(cfg(48))]

    #[test]
    fn tk_annihilates_eta(p in prop::sample::select(vec![2u64, 3, 5]), f in 1u32..=3, a in 2i64..400) {
        prop_assume!(a % p as i64 != 0);
        let a = BigInt::from(a);
        prop_assume!(is_irreducible_pure(p.pow(f) as usize, &a));
        let spec = FieldSpec::new(p.pow(f) as usize, a.clone()).unwrap();
        prop_assume!(spec.a() == &a);
        for k in 0..=f {
            let (eta, tk, _) = eta_and_tk(p, f, &a, k).unwrap();
            let x = eta.div_int(BigInt::from(p.pow(k)));
            prop_assert!(eval_poly(&tk, &x, &spec).is_zero(), "k = {}", k);
            prop_assert_eq!(tk.len(), p.pow(k) as usize + 1);
        }
    }

    #[test]
    fn h_parameters_are_bounded(p in prop::sample::select(vec![2u64, 3, 5]), l in 1u32..=3, e_star in 1u32..=3, f0 in 0u32..=3) {
        prop_assume!(f0 <= e_star);
        let f = l + e_star;
        let len = p.pow(l) as usize;
        for k in 0..=f0 {
            let hp = h_params(p, f, e_star, f0, k).unwrap();
            prop_assert_eq!(hp.h.len(), len);
            prop_assert!(hp.g <= l);
            for t in 0..len {
                prop_assert!(hp.h[t] <= hp.width);
                prop_assert!(hp.h_prime[t] <= hp.width);
            }
            prop_assert_eq!(hp.h[0], hp.width);
        }
    }

    #[test]
    fn local_radicals_are_frobenius_radicals(spec in field()) {
        let result = ring_of_integers(&spec).unwrap();
        for local in &result.locals {
            let frob = frobenius_radical(&local.order, &local.q, &spec).unwrap();
            prop_assert_eq!(&frob, &local.radical, "q = {}", local.q);
        }
    }

    #[test]
    fn local_orders_are_pz_maximal(spec in field()) {
        let result = ring_of_integers(&spec).unwrap();
        for local in &result.locals {
            let (grown, _, steps) = pz_saturate(&local.order, &local.q, &spec).unwrap();
            prop_assert_eq!(&grown, &local.order, "q = {}", local.q);
            prop_assert_eq!(steps, 0);
        }
    }

    #[test]
    fn residue_idempotents_match_profile(spec in field()) {
        let result = ring_of_integers(&spec).unwrap();
        for local in &result.locals {
            let Some(expected) = local.residue.idempotent_count() else { continue };
            let ring = ResidueRing::quotient(&local.order, &local.radical, &spec).unwrap();
            prop_assert_eq!(ring.idempotents().len() as u64, expected, "q = {} residue {}", local.q, local.residue);
        }
    }

    #[test]
    fn round2_is_idempotent(spec in field()) {
        let (ring, _) = round2_with_budget(&spec, 32).unwrap();
        for q in spec.disc_primes() {
            prop_assert_eq!(&round2_at(&ring, &q, &spec).unwrap(), &ring);
        }
    }

    #[test]
    fn dedekind_agrees_with_pz_on_power_basis(spec in field()) {
        let z = OrderLattice::power_basis(spec.n());
        for q in spec.disc_primes().into_iter().filter(|q| *q <= BigInt::from(50)) {
            let maximal = round2_at(&z, &q, &spec).unwrap() == z;
            prop_assert_eq!(dedekind_check_spec(&spec, &q).unwrap().is_maximal(), maximal, "q = {}", q);
        }
    }

    #[test]
    fn bracketing_does_not_matter(n in prop::sample::select(vec![6usize, 10, 12, 15, 30]), a in -30i64..=30) {
        let Ok(spec) = FieldSpec::new(n, a) else { return Ok(()) };
        let primes: Vec<u64> = spec.factor_n().iter().map(|(p, _)| *p).collect();
        let reference = ring_of_integers(&spec).unwrap();
        for tree in Bracketing::all(&primes) {
            let other = assemble_with(&spec, &tree).unwrap();
            prop_assert_eq!(&other.ring, &reference.ring);
            prop_assert_eq!(&other.disc, &reference.disc);
        }
    }

    #[test]
    fn non_integral_extension_breaks_closure(spec in field(), qi in 0usize..3) {
        let q = [2i64, 3, 5][qi];
        let mut result = ring_of_integers(&spec).unwrap();
        let extra = spec.alpha().div_int(BigInt::from(q));
        let mut gens: Vec<FieldElement> = result.labeled_basis.iter().map(|(_, x)| x.clone()).collect();
        gens.push(extra);
        result.ring = OrderLattice::from_elements(spec.n(), &gens).unwrap();
        let cert = certify_with_budget(&result, 0);
        prop_assert!(!cert.closure_ok);
        prop_assert!(!cert.is_certified());
    }
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn quadratic_discriminants(a in -200i64..=200) {
        let Ok(spec) = FieldSpec::new(2, a) else { return Ok(()) };
        let d = spec.a().clone();
        let expected = if d.mod_floor(&BigInt::from(4)) == BigInt::from(1) { d } else { d * 4 };
        let result = ring_of_integers(&spec).unwrap();
        prop_assert_eq!(result.disc.value(), &expected);
    }
}

#[test]
fn degree_above_budget_skips_only_the_oracle() {
    let spec = FieldSpec::new(32, 3).unwrap();
    let result = ring_of_integers(&spec).unwrap();
    let cert = certify_with_budget(&result, 24);
    assert_eq!(cert.oracle_match, None);
    assert!(cert.closure_ok && cert.contains_one && cert.disc_consistent);
    assert!(cert.pz_ok.values().all(|&ok| ok));
    assert!(cert.is_certified());
}
