//! Gluing local orders and subfield rings into the ring of integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::radical::composite_radical;
use super::split::disjoint_split;
use super::{CompositeParts, IntegerRingResult, PrimeGenerator};
use crate::arith::{factorize_over, val, FactoredInt};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{index_vq, pz_saturate, residue_degrees, OrderLattice};
use crate::local::{cyclotomic_two_power, local_order, Construction, LocalOrder, ResidueProfile};

/// A binary bracketing of the prime factors of `n`; leaves are the primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf(u64),
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    /// `((p_1, p_2), p_3), ...`: the first `r - 1` factors against the last, recursively.
    pub fn left_comb(primes: &[u64]) -> Result<Self> {
        let (last, rest) = primes
            .split_last()
            .ok_or_else(|| Error::Precondition("no prime factors".into()))?;
        if rest.is_empty() {
            return Ok(Bracketing::Leaf(*last));
        }
        Ok(Bracketing::Node(
            Box::new(Bracketing::left_comb(rest)?),
            Box::new(Bracketing::Leaf(*last)),
        ))
    }

    /// All bracketings with leaves in the given order.
    pub fn all(primes: &[u64]) -> Vec<Self> {
        if primes.len() == 1 {
            return vec![Bracketing::Leaf(primes[0])];
        }
        let mut out = Vec::new();
        for cut in 1..primes.len() {
            for l in Bracketing::all(&primes[..cut]) {
                for r in Bracketing::all(&primes[cut..]) {
                    out.push(Bracketing::Node(Box::new(l.clone()), Box::new(r)));
                }
            }
        }
        out
    }

    /// The primes at the leaves.
    pub fn primes(&self) -> Vec<u64> {
        match self {
            Bracketing::Leaf(p) => vec![*p],
            Bracketing::Node(l, r) => {
                let mut v = l.primes();
                v.extend(r.primes());
                v
            }
        }
    }

    /// Degree of the subfield of `spec` spanned by these leaves.
    fn degree(&self, spec: &FieldSpec) -> Result<usize> {
        let mut d = 1usize;
        for p in self.primes() {
            let f = spec
                .factor_n()
                .iter()
                .find(|(q, _)| *q == p)
                .map(|(_, f)| *f)
                .ok_or_else(|| {
                    Error::Precondition(format!("{} does not divide n = {}", p, spec.n()))
                })?;
            d *= (p as usize).pow(f);
        }
        Ok(d)
    }
}

/// The subfield `Q(alpha^(n/m))` of degree `m`, with its own reduced radicand.
pub fn subfield_spec(spec: &FieldSpec, m: usize) -> Result<FieldSpec> {
    if m == 0 || spec.n() % m != 0 {
        return Err(Error::Precondition(format!(
            "{} does not divide n = {}",
            m,
            spec.n()
        )));
    }
    let hint: Vec<(BigInt, u32)> = spec
        .factor_a()
        .factors()
        .iter()
        .map(|(q, e)| (q.clone(), *e))
        .collect();
    FieldSpec::with_hint(m, spec.a().clone(), Some(&hint))
}

/// Writes an element of `sub` (a subfield spec of `spec`) in the coordinates of `spec`.
pub fn embed(x: &FieldElement, sub: &FieldSpec, spec: &FieldSpec) -> FieldElement {
    let m = sub.n();
    let n = spec.n();
    let step = n / m;
    let s = sub.scale();
    let mut num = vec![BigInt::zero(); n];
    for (i, c) in x.numer().iter().enumerate() {
        num[step * i] = c * s.pow((m - 1 - i) as u32);
    }
    FieldElement::new(num, x.denom() * s.pow(m as u32 - 1))
}

/// `order[theta]` for an integral `theta`.
pub(crate) fn adjoin(order: OrderLattice, theta: &FieldElement, spec: &FieldSpec) -> OrderLattice {
    let mut cur = order;
    loop {
        let next = cur.sum(&cur.mul_element(theta, spec));
        if next == cur {
            return cur.into_ring();
        }
        cur = next;
    }
}

impl PrimeGenerator {
    /// `gamma_q = alpha^u / q^v` with `u` coprime to `n` and `v_q(gamma_q^n) = gcd(v_q(a), n)`.
    ///
    /// For `q` coprime to `a` this is `alpha` itself.
    pub fn new(spec: &FieldSpec, q: &BigInt) -> Result<Self> {
        let n = spec.n() as u64;
        let e = val(q, spec.a()) as u64;
        if e == 0 {
            return Ok(PrimeGenerator {
                q: q.clone(),
                u: 1,
                v: 0,
                c: spec.a().clone(),
                gamma: spec.alpha(),
                g: 0,
            });
        }
        let g = e.gcd(&n);
        let u = (1..n)
            .find(|&u| u.gcd(&n) == 1 && (e * u) % n == g % n)
            .ok_or_else(|| Error::Internal("no unit exponent normalizes the valuation".into()))?;
        let v = (e * u - g) / n;
        let qv = q.pow((n * v) as u32);
        let (c, rem) = spec.a().pow(u as u32).div_rem(&qv);
        if !rem.is_zero() {
            return Err(Error::Internal("normalization left a fraction".into()));
        }
        let gamma = spec.alpha_pow(u as usize).div_int(q.pow(v as u32));
        Ok(PrimeGenerator {
            q: q.clone(),
            u,
            v,
            c,
            gamma,
            g: g as u32,
        })
    }
}

fn ring_labels(ring: &OrderLattice) -> Vec<(String, FieldElement)> {
    ring.basis()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (format!("omega_{}", i), x))
        .collect()
}

/// Assembles `O_K` for `n = p^f` from the closed-form local orders.
pub fn assemble_prime_power(spec: &FieldSpec) -> Result<IntegerRingResult> {
    let (p, f) = spec
        .prime_power()
        .ok_or_else(|| Error::Precondition("degree is not a prime power".into()))?;
    let n = spec.n();
    let primes = spec.disc_primes();
    let mut locals = Vec::with_capacity(primes.len());
    for q in &primes {
        let local = if p == 2 && spec.a() == &BigInt::from(-1) {
            cyclotomic_two_power(f)?
        } else {
            local_order(spec, q)?
        };
        locals.push(local);
    }
    let base = OrderLattice::power_basis(n);
    let mut ring = base.clone();
    for l in &locals {
        if !ring.contains_lattice(&l.order) {
            ring = ring.product(&l.order, spec).into_ring();
        }
    }
    let ring = ring.into_ring();
    let base_disc = spec.base_disc();
    let mut factors = BTreeMap::new();
    for (q, l) in primes.iter().zip(&locals) {
        let vq = l.disc.exponent(q);
        let idx = index_vq(&base, &ring, q)?;
        if base_disc.exponent(q) != vq + 2 * idx {
            return Err(Error::Internal(format!(
                "discriminant valuation at {} disagrees with the index",
                q
            )));
        }
        factors.insert(q.clone(), vq);
    }
    let disc = FactoredInt::new(base_disc.sign(), factors);
    let nontrivial: Vec<&LocalOrder> = locals.iter().filter(|l| l.order != base).collect();
    let labeled_basis = match nontrivial.as_slice() {
        [] => (0..n)
            .map(|k| (format!("alpha^{}", k), spec.alpha_pow(k)))
            .collect(),
        [one] if one.order == ring => one.labeled_basis.clone(),
        _ => ring_labels(&ring),
    };
    Ok(IntegerRingResult {
        spec: spec.clone(),
        ring,
        disc,
        labeled_basis,
        locals,
        subfields: Vec::new(),
        composite: None,
        certificate: None,
    })
}

/// Assembles `O_K` for any `n`, splitting composite degrees by the default bracketing.
pub fn assemble(spec: &FieldSpec) -> Result<IntegerRingResult> {
    if spec.prime_power().is_some() {
        return assemble_prime_power(spec);
    }
    let primes: Vec<u64> = spec.factor_n().iter().map(|(p, _)| *p).collect();
    assemble_with(spec, &Bracketing::left_comb(&primes)?)
}

/// Assembles `O_K` along a given bracketing of the prime factors of `n`.
pub fn assemble_with(spec: &FieldSpec, tree: &Bracketing) -> Result<IntegerRingResult> {
    let mut leaves = tree.primes();
    leaves.sort_unstable();
    let mut want: Vec<u64> = spec.factor_n().iter().map(|(p, _)| *p).collect();
    want.sort_unstable();
    if leaves != want {
        return Err(Error::Precondition(format!(
            "bracketing leaves {:?} differ from the primes of n",
            leaves
        )));
    }
    match tree {
        Bracketing::Leaf(_) => assemble_prime_power(spec),
        Bracketing::Node(l, r) => assemble_composite(spec, l, r),
    }
}

fn assemble_composite(
    spec: &FieldSpec,
    left: &Bracketing,
    right: &Bracketing,
) -> Result<IntegerRingResult> {
    let n = spec.n();
    let (m_l, m_r) = (left.degree(spec)?, right.degree(spec)?);
    let split = disjoint_split(m_l, m_r)?;
    let spec_l = subfield_spec(spec, m_l)?;
    let spec_r = subfield_spec(spec, m_r)?;
    let res_l = assemble_with(&spec_l, left)?;
    let res_r = assemble_with(&spec_r, right)?;
    let prod = product_lattice(&res_l.ring, &spec_l, &res_r.ring, &spec_r, spec)?;
    let mut generators = Vec::new();
    for q in spec.disc_primes() {
        generators.push(PrimeGenerator::new(spec, &q)?);
    }
    let mut ring = adjoin(prod, &spec.alpha(), spec);
    for g in &generators {
        if g.g > 0 {
            ring = adjoin(ring, &g.gamma, spec);
        }
    }
    let mut completion = BTreeMap::new();
    for q in spec.disc_primes() {
        let gained = if (BigInt::from(n) % &q).is_zero() {
            let (saturated, _, gained) = pz_saturate(&ring, &q, spec)?;
            ring = saturated;
            gained
        } else {
            0
        };
        completion.insert(q, gained);
    }
    let disc = composite_disc(spec, &ring)?;
    let mut result = IntegerRingResult {
        spec: spec.clone(),
        labeled_basis: ring_labels(&ring),
        ring,
        disc,
        locals: Vec::new(),
        subfields: vec![(m_l, res_l), (m_r, res_r)],
        composite: Some(CompositeParts {
            split,
            generators,
            completion,
        }),
        certificate: None,
    };
    let mut locals = Vec::new();
    for q in spec.disc_primes() {
        locals.push(composite_local(&result, &q)?);
    }
    result.locals = locals;
    Ok(result)
}

/// `O_M O_N` from the bases of the two subfield rings.
pub(crate) fn product_lattice(
    a: &OrderLattice,
    spec_a: &FieldSpec,
    b: &OrderLattice,
    spec_b: &FieldSpec,
    spec: &FieldSpec,
) -> Result<OrderLattice> {
    let ea: Vec<FieldElement> = a.basis().iter().map(|x| embed(x, spec_a, spec)).collect();
    let eb: Vec<FieldElement> = b.basis().iter().map(|x| embed(x, spec_b, spec)).collect();
    let mut prods = Vec::with_capacity(ea.len() * eb.len());
    for x in &ea {
        for y in &eb {
            prods.push(spec.mul(x, y));
        }
    }
    Ok(OrderLattice::from_elements(spec.n(), &prods)?.into_ring())
}

/// `Delta_K = Delta_alpha / [O : Z[alpha]]^2`, checked against `v_q(Delta_K) = n - gcd(n, v_q(a))`
/// at the primes not dividing `n`.
fn composite_disc(spec: &FieldSpec, ring: &OrderLattice) -> Result<FactoredInt> {
    let n = spec.n() as u64;
    let base = OrderLattice::power_basis(spec.n());
    let base_disc = spec.base_disc();
    let mut factors = BTreeMap::new();
    for q in spec.disc_primes() {
        let two_idx = 2 * index_vq(&base, ring, &q)?;
        let v = base_disc
            .exponent(&q)
            .checked_sub(two_idx)
            .ok_or_else(|| Error::Internal(format!("index at {} exceeds the discriminant", q)))?;
        if !(BigInt::from(n) % &q).is_zero() {
            let tame = n - n.gcd(&(val(&q, spec.a()) as u64));
            if v as u64 != tame {
                return Err(Error::Internal(format!(
                    "tame discriminant valuation {} at {} != {}",
                    v, q, tame
                )));
            }
        }
        factors.insert(q, v);
    }
    Ok(FactoredInt::new(base_disc.sign(), factors))
}

/// The local record of a composite result at `q`: the whole ring with its `q`-radical.
fn composite_local(result: &IntegerRingResult, q: &BigInt) -> Result<LocalOrder> {
    let spec = &result.spec;
    let radical = composite_radical(result, q)?;
    let completion = result
        .composite
        .as_ref()
        .and_then(|c| c.completion.get(q).copied())
        .unwrap_or(0);
    let residue = match residue_degrees(&result.ring, &radical, q, spec) {
        Ok(d) => ResidueProfile::from_degrees(q, d),
        Err(Error::Unsupported(_)) => ResidueProfile::Opaque,
        Err(e) => return Err(e),
    };
    let radical_basis = radical
        .basis()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (format!("rho_{}", i), x))
        .collect();
    let index = index_vq(&OrderLattice::power_basis(spec.n()), &result.ring, q)?;
    Ok(LocalOrder {
        q: q.clone(),
        construction: Construction::Composite { completion },
        order: result.ring.clone(),
        radical,
        labeled_basis: result.labeled_basis.clone(),
        radical_basis,
        disc: result.disc.clone(),
        residue,
        reference: spec.alpha(),
        index_vq: index,
        simple_radical: None,
    })
}

/// `[O_K : Z[alpha]]`, factored over the primes of `Delta_alpha`.
pub fn ring_index(result: &IntegerRingResult) -> Result<FactoredInt> {
    let base = OrderLattice::power_basis(result.spec.n());
    let r = base.covolume() / result.ring.covolume();
    if !r.is_integer() || r.numer() < &BigInt::one() {
        return Err(Error::Internal(
            "Z[alpha] is not a sublattice of the ring".into(),
        ));
    }
    factorize_over(&r.to_integer(), &result.spec.disc_primes())
}
