//! The `q`-maximal order at a prime `q | a` different from `p`, and the Eisenstein case.

use num_bigint::BigInt;

use super::coprime::divide_q_power;
use super::profile::{Construction, LocalOrder, ResidueProfile};
use super::setup::{powers, RadicalSetup};
use crate::arith::Fq;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{index_vq, OrderLattice};

fn elements(labeled: &[(String, FieldElement)]) -> Vec<FieldElement> {
    labeled.iter().map(|(_, x)| x.clone()).collect()
}

/// `Z[gamma]` when `e* = 0`: `X^(p^f) - c` is Eisenstein at `q`.
pub fn build_eisenstein(setup: &RadicalSetup, spec: &FieldSpec) -> Result<LocalOrder> {
    if !setup.gamma_maximal {
        return Err(Error::Precondition(
            "e* >= 1; Z[gamma] is not q-maximal".into(),
        ));
    }
    let n = spec.n();
    let labeled: Vec<(String, FieldElement)> = powers(&setup.gamma, n as u64, spec)
        .into_iter()
        .enumerate()
        .map(|(k, x)| (format!("gamma^{}", k), x))
        .collect();
    let mut radical_basis = labeled.clone();
    radical_basis[0] = (
        format!("{}·gamma^0", setup.q),
        FieldElement::constant(n, setup.q.clone()),
    );
    let order = OrderLattice::from_elements(n, &elements(&labeled))?.into_ring();
    let radical = OrderLattice::from_elements(n, &elements(&radical_basis))?;
    let disc = setup.disc_gamma(spec);
    Ok(LocalOrder {
        q: setup.q.clone(),
        construction: Construction::Eisenstein,
        order,
        radical,
        labeled_basis: labeled,
        radical_basis,
        disc,
        residue: ResidueProfile::FpPower {
            p: setup.q.clone(),
            count: 1,
        },
        reference: setup.gamma.clone(),
        index_vq: 0,
        simple_radical: None,
    })
}

/// `Z[gamma] Z[gamma*]` for `q != p`, `e* >= 1`.
pub fn build_q_order(setup: &RadicalSetup, spec: &FieldSpec) -> Result<LocalOrder> {
    if setup.gamma_maximal {
        return build_eisenstein(setup, spec);
    }
    if setup.q == BigInt::from(setup.p) {
        return Err(Error::Precondition(
            "q = p; use the non-coprime construction".into(),
        ));
    }
    let n = spec.n();
    let q = &setup.q;
    let outer = setup.outer_degree();
    let inner = setup.inner_degree();
    let gk = powers(&setup.gamma, outer, spec);
    let gl = powers(&setup.gamma_star, inner, spec);
    let mut labeled = Vec::with_capacity(n);
    let mut radical_basis = Vec::with_capacity(n);
    for (k, x) in gk.iter().enumerate() {
        for (l, y) in gl.iter().enumerate() {
            let label = format!("gamma^{}·gamma*^{}", k, l);
            let e = spec.mul(x, y);
            if k == 0 {
                radical_basis.push((format!("{}·{}", q, label), e.scale_int(q.clone())));
            } else {
                radical_basis.push((label.clone(), e.clone()));
            }
            labeled.push((label, e));
        }
    }
    let order = OrderLattice::from_elements(n, &elements(&labeled))?.into_ring();
    let radical = OrderLattice::from_elements(n, &elements(&radical_basis))?;
    let pf = n as u64;
    let half = pf * (inner - 1) / 2;
    let z_gamma = OrderLattice::from_elements(n, &powers(&setup.gamma, pf, spec))?;
    let measured = index_vq(&z_gamma, &order, q)?;
    if measured as u64 != half {
        return Err(Error::Internal(format!(
            "index exponent {} != closed form {}",
            measured, half
        )));
    }
    let disc = divide_q_power(&setup.disc_gamma(spec), q, 2 * half)?;
    if disc != order.disc(spec)? {
        return Err(Error::Internal("tame local discriminant mismatch".into()));
    }
    Ok(LocalOrder {
        q: q.clone(),
        construction: Construction::Tame {
            e_star: setup.e_star,
        },
        order,
        radical,
        labeled_basis: labeled,
        radical_basis,
        disc,
        residue: tame_residue(inner, &setup.c_star, q),
        reference: setup.gamma.clone(),
        index_vq: measured,
        simple_radical: None,
    })
}

/// `F_q[X] / (X^m - c*)`, which is separable since `q` divides neither `m` nor `c*`.
fn tame_residue(m: u64, c_star: &BigInt, q: &BigInt) -> ResidueProfile {
    let fq = match Fq::from_bigint(q) {
        Ok(fq) => fq,
        Err(_) => return ResidueProfile::Opaque,
    };
    let mut poly = vec![0u64; m as usize + 1];
    poly[0] = fq.neg(fq.reduce(c_star));
    poly[m as usize] = 1;
    let degrees = fq
        .poly_ddf(&poly)
        .into_iter()
        .flat_map(|(d, c)| std::iter::repeat(d).take(c))
        .collect();
    ResidueProfile::from_degrees(q, degrees)
}

#[cfg(test)]
mod tests {
    use super::super::setup::setup_lemma21;
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn order_45_at_3() {
        let s = FieldSpec::new(4, 45).unwrap();
        let o = build_q_order(&setup_lemma21(&s, &b(3)).unwrap(), &s).unwrap();
        assert_eq!(o.index_vq, 2);
        assert_eq!(s.base_disc().exponent(&b(3)) - o.disc.exponent(&b(3)), 4);
        assert_eq!(o.disc.value(), &b(-288000));
        assert!(o.radical.is_ideal_of(&o.order, &s));
        assert!(o.radical.contains_lattice(&o.order.scale_int(&b(3))));
        // X^2 - 5 over F_3 is irreducible.
        assert_eq!(o.residue.to_string(), "unramified: degrees [2]");
    }

    #[test]
    fn eisenstein_24_at_2() {
        let s = FieldSpec::new(4, 24).unwrap();
        let o = build_q_order(&setup_lemma21(&s, &b(2)).unwrap(), &s).unwrap();
        assert_eq!(o.construction, Construction::Eisenstein);
        assert_eq!(o.disc, setup_lemma21(&s, &b(2)).unwrap().disc_gamma(&s));
        assert_eq!(o.residue.to_string(), "F2");
    }
}
