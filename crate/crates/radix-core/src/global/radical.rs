//! The `q`-radical of a composite ring from the radicals of its two factors.

use num_bigint::BigInt;
use num_integer::Integer;

use super::assemble::embed;
use super::IntegerRingResult;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::lattice::{frobenius_radical, OrderLattice};

/// The `q`-radical of `result.ring`.
///
/// For a composite ring `Z[gamma_q] O_M O_N` this is `I_q + sum_{k in D} gamma_q^k X + qO`,
/// where `I_q = I_(M,q) O_N + O_M I_(N,q)` and `X = O_M O_N` if `q | c_q`, else `X = I_q`.
/// For a prime-power ring it is the local radical plus `qO`. Where Pohst-Zassenhaus steps
/// enlarged the ring at `q` the radical is computed directly.
pub fn composite_radical(result: &IntegerRingResult, q: &BigInt) -> Result<OrderLattice> {
    let spec = &result.spec;
    let q_ring = result.ring.scale_int(q);
    if !spec.disc_primes().contains(q) {
        return Ok(q_ring);
    }
    let parts = match &result.composite {
        None => {
            return Ok(match result.locals.iter().find(|l| &l.q == q) {
                Some(l) => l.radical.sum(&q_ring),
                None => q_ring,
            })
        }
        Some(p) => p,
    };
    if parts.completion.get(q).copied().unwrap_or(0) > 0 {
        return frobenius_radical(&result.ring, q, spec);
    }
    let (left, right) = match result.subfields.as_slice() {
        [(_, l), (_, r)] => (l, r),
        _ => {
            return Err(Error::Internal(
                "composite result without two factors".into(),
            ))
        }
    };
    let embed_all = |lat: &OrderLattice, sub: &IntegerRingResult| -> Vec<FieldElement> {
        lat.basis()
            .iter()
            .map(|x| embed(x, &sub.spec, spec))
            .collect()
    };
    let o_l = embed_all(&left.ring, left);
    let o_r = embed_all(&right.ring, right);
    let i_l = embed_all(&composite_radical(left, q)?, left);
    let i_r = embed_all(&composite_radical(right, q)?, right);
    let mut gens = Vec::with_capacity(2 * spec.n());
    for x in &i_l {
        for y in &o_r {
            gens.push(spec.mul(x, y));
        }
    }
    for x in &o_l {
        for y in &i_r {
            gens.push(spec.mul(x, y));
        }
    }
    let i_p = OrderLattice::from_elements(spec.n(), &gens)?;
    let g = parts.generators.iter().find(|g| &g.q == q).ok_or_else(|| {
        Error::Precondition(format!(
            "{} does not divide the power-basis discriminant",
            q
        ))
    })?;
    let x = if g.c.is_multiple_of(q) {
        let mut prods = Vec::with_capacity(spec.n());
        for a in &o_l {
            for b in &o_r {
                prods.push(spec.mul(a, b));
            }
        }
        OrderLattice::from_elements(spec.n(), &prods)?
    } else {
        i_p.clone()
    };
    let mut rad = i_p.sum(&q_ring);
    for &k in &parts.split.d {
        rad = rad.sum(&x.mul_element(&spec.pow(&g.gamma, k as u64), spec));
    }
    Ok(rad)
}
