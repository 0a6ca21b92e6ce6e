//! The `p`-maximal order of `Q(theta)`, `theta^(p^m) = b`, `p` coprime to `b`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::profile::{Construction, LocalOrder, ResidueProfile};
use super::setup::powers;
use crate::arith::{binomial, wieferich, FactoredInt};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{index_vq, OrderLattice};

/// The elements `eta_k`, `beta = theta - b` and the basis `(eta_k / p^k) beta^i` for a
/// generator `theta` of a subfield of `K`, written in the coordinates of `K`.
#[derive(Clone, Debug)]
pub(crate) struct Tower {
    pub p: u64,
    pub m: u32,
    pub b: BigInt,
    pub w: u32,
    pub f0: u32,
    /// `theta^i` for `i < p^m`.
    theta: Vec<FieldElement>,
    /// `beta^i` for `i <= p^m`.
    beta: Vec<FieldElement>,
}

impl Tower {
    pub fn new(p: u64, m: u32, b: &BigInt, theta: &FieldElement, spec: &FieldSpec) -> Result<Self> {
        let w = wieferich(&BigInt::from(p), b)?;
        let f0 = m.min(w - 1);
        let deg = p.pow(m);
        let theta_pows = powers(theta, deg, spec);
        let beta1 = theta.sub(&FieldElement::constant(spec.n(), b.clone()));
        let beta = powers(&beta1, deg + 1, spec);
        Ok(Tower {
            p,
            m,
            b: b.clone(),
            w,
            f0,
            theta: theta_pows,
            beta,
        })
    }

    /// `k^ + 1`: the number of `beta` powers attached to `eta_k / p^k`.
    pub fn width(&self, k: u32) -> u64 {
        if k < self.f0 {
            self.p.pow(self.m - 1 - k) * (self.p - 1)
        } else {
            self.p.pow(self.m - self.f0)
        }
    }

    pub fn beta_pow(&self, i: u64) -> &FieldElement {
        &self.beta[i as usize]
    }

    /// `eta_k = sum_{j < p^k} b^(p^k - 1 - j) theta^(p^(m-k) j)`.
    pub fn eta(&self, k: u32) -> FieldElement {
        let pk = self.p.pow(k);
        let step = self.p.pow(self.m - k) as usize;
        let n = self.theta[0].dim();
        let mut acc = FieldElement::zero(n);
        for j in 0..pk {
            let coef = self.b.pow((pk - 1 - j) as u32);
            acc = acc.add(&self.theta[step * j as usize].scale_int(coef));
        }
        acc
    }

    /// `eta_k / p^k`.
    pub fn eta_scaled(&self, k: u32) -> FieldElement {
        self.eta(k).div_int(BigInt::from(self.p).pow(k))
    }

    /// `p^d = [O_p : Z[beta]]`.
    pub fn index_exponent(&self) -> u64 {
        let p = self.p;
        p.pow(self.m - self.f0) * (p.pow(self.f0) - 1) / (p - 1)
    }

    fn label(&self, k: u32, i: u64, star: &str) -> String {
        format!("eta{}_{}/{}·beta{}^{}", star, k, self.p.pow(k), star, i)
    }

    /// Labeled basis `(eta_k / p^k) beta^i`, `i <= k^`.
    pub fn basis(&self, spec: &FieldSpec, star: &str) -> Vec<(String, FieldElement)> {
        let mut out = Vec::new();
        for k in 0..=self.f0 {
            let e = self.eta_scaled(k);
            for i in 0..self.width(k) {
                out.push((self.label(k, i, star), spec.mul(&e, self.beta_pow(i))));
            }
        }
        out
    }

    /// The radical basis: the `i = 0` elements are multiplied by `p`.
    pub fn radical_basis(&self, spec: &FieldSpec, star: &str) -> Vec<(String, FieldElement)> {
        let mut out = Vec::new();
        for k in 0..=self.f0 {
            let e = self.eta_scaled(k);
            out.push((
                format!("{}·{}", self.p, self.label(k, 0, star)),
                e.scale_int(self.p),
            ));
            for i in 1..self.width(k) {
                out.push((self.label(k, i, star), spec.mul(&e, self.beta_pow(i))));
            }
        }
        out
    }

    /// Residue profile of `O_p / I_p`.
    pub fn residue(&self) -> ResidueProfile {
        let p = BigInt::from(self.p);
        if self.p >= 3 || self.f0 + 1 < self.w || self.f0 == 0 {
            ResidueProfile::FpPower {
                p,
                count: self.f0 + 1,
            }
        } else {
            ResidueProfile::F2PowerTimesF4 {
                count_f2: self.f0 - 1,
            }
        }
    }
}

/// `eta_k`, the coefficients of `T_k` (ascending degree, monic) and whether `eta_k / p^k` is integral.
///
/// Works in `Q(alpha)`, `alpha^(p^f) = a`.
pub fn eta_and_tk(
    p: u64,
    f: u32,
    a: &BigInt,
    k: u32,
) -> Result<(FieldElement, Vec<BigRational>, bool)> {
    if k > f {
        return Err(Error::Precondition(format!("k = {} exceeds f = {}", k, f)));
    }
    let pb = BigInt::from(p);
    let w = wieferich(&pb, a)?;
    let n = p.pow(f) as usize;
    let theta = FieldElement::alpha_pow(n, a, 1);
    let mut alpha_pows = Vec::with_capacity(n);
    let mut acc = FieldElement::one(n);
    for _ in 0..n {
        alpha_pows.push(acc.clone());
        acc = acc.mul(&theta, a);
    }
    let pk = p.pow(k);
    let step = p.pow(f - k) as usize;
    let mut eta = FieldElement::zero(n);
    for j in 0..pk {
        eta = eta.add(&alpha_pows[step * j as usize].scale_int(a.pow((pk - 1 - j) as u32)));
    }
    // T_k = X^(p^k) - sum_j C(p^k, j) (1 - a^(p^k - 1))^(j-1) a^(p^k - 1) / p^(kj) X^(p^k - j).
    let apk = a.pow((pk - 1) as u32);
    let one_minus = BigInt::one() - &apk;
    let mut coeffs = vec![BigRational::zero(); pk as usize + 1];
    coeffs[pk as usize] = BigRational::one();
    for j in 1..=pk {
        let num = binomial(pk, j) * one_minus.pow((j - 1) as u32) * &apk;
        let den = pb.pow((k as u64 * j) as u32);
        coeffs[(pk - j) as usize] = -BigRational::new(num, den);
    }
    let f0 = f.min(w - 1);
    Ok((eta, coeffs, k <= f0))
}

/// `theta_l = sum_{i < p^l} i a^(p^l - 1 - i) alpha^(p^(f-l) i)`.
pub fn theta(p: u64, f: u32, a: &BigInt, l: u32) -> Result<FieldElement> {
    if l > f {
        return Err(Error::Precondition(format!("l = {} exceeds f = {}", l, f)));
    }
    let n = p.pow(f) as usize;
    let pl = p.pow(l);
    let step = p.pow(f - l) as usize;
    let mut acc = FieldElement::zero(n);
    for i in 0..pl {
        let c = a.pow((pl - 1 - i) as u32) * BigInt::from(i);
        acc = acc.add(&FieldElement::alpha_pow(n, a, step * i as usize).scale_int(c));
    }
    Ok(acc)
}

/// The `p`-maximal order for `n = p^f`, `p` coprime to `a`.
pub fn build_p_order_coprime(spec: &FieldSpec) -> Result<LocalOrder> {
    let (p, f) = spec
        .prime_power()
        .ok_or_else(|| Error::Precondition("degree is not a prime power".into()))?;
    let pb = BigInt::from(p);
    if (spec.a() % &pb).is_zero() {
        return Err(Error::Precondition(format!(
            "p = {} divides a; use the non-coprime construction",
            p
        )));
    }
    let n = spec.n();
    let tower = Tower::new(p, f, spec.a(), &spec.alpha(), spec)?;
    let labeled = tower.basis(spec, "");
    let radical_basis = tower.radical_basis(spec, "");
    let elems: Vec<FieldElement> = labeled.iter().map(|(_, x)| x.clone()).collect();
    let order = OrderLattice::from_elements(n, &elems)?.into_ring();
    let rads: Vec<FieldElement> = radical_basis.iter().map(|(_, x)| x.clone()).collect();
    let radical = OrderLattice::from_elements(n, &rads)?;
    let d = tower.index_exponent();
    let measured = index_vq(&OrderLattice::power_basis(n), &order, &pb)?;
    if measured as u64 != d {
        return Err(Error::Internal(format!(
            "index exponent {} != closed form {}",
            measured, d
        )));
    }
    let disc = divide_q_power(&spec.base_disc(), &pb, 2 * d)?;
    if disc != order.disc(spec)? {
        return Err(Error::Internal(
            "coprime local discriminant mismatch".into(),
        ));
    }
    let residue = tower.residue();
    Ok(LocalOrder {
        q: pb,
        construction: Construction::Coprime {
            w: tower.w,
            f0: tower.f0,
        },
        order,
        radical,
        labeled_basis: labeled,
        radical_basis,
        disc,
        residue,
        reference: spec.alpha(),
        index_vq: measured,
        simple_radical: None,
    })
}

/// `x / q^e` on factored integers.
pub(crate) fn divide_q_power(x: &FactoredInt, q: &BigInt, e: u64) -> Result<FactoredInt> {
    let have = x.exponent(q) as u64;
    if have < e {
        return Err(Error::Internal(format!("cannot divide by {}^{}", q, e)));
    }
    let mut m = x.factors().clone();
    m.insert(q.clone(), (have - e) as u32);
    Ok(FactoredInt::new(x.sign(), m))
}

/// Evaluates a rational polynomial (ascending coefficients) at a field element.
pub fn eval_poly(coeffs: &[BigRational], x: &FieldElement, spec: &FieldSpec) -> FieldElement {
    let n = spec.n();
    let mut acc = FieldElement::zero(n);
    for c in coeffs.iter().rev() {
        acc = spec.mul(&acc, x);
        let mut v = vec![BigRational::zero(); n];
        v[0] = c.clone();
        acc = acc.add(&FieldElement::from_rationals(&v));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn eta_zero_and_five() {
        let (e0, t0, i0) = eta_and_tk(2, 1, &b(5), 0).unwrap();
        assert_eq!(e0, FieldElement::one(2));
        assert!(i0);
        assert_eq!(t0.len(), 2);
        let (e1, t1, i1) = eta_and_tk(2, 1, &b(5), 1).unwrap();
        assert_eq!(e1, FieldElement::from_integers(vec![b(5), b(1)]));
        assert!(i1 && t1.iter().all(|c| c.is_integer()));
        let s = FieldSpec::new(2, 5).unwrap();
        assert!(eval_poly(&t1, &e1.div_int(2), &s).is_zero());
    }

    #[test]
    fn tk_is_annihilating() {
        for &(p, f, a) in &[
            (2u64, 3u32, 17i64),
            (3, 2, 10),
            (2, 2, 5),
            (3, 1, 2),
            (5, 1, 7),
            (2, 4, 17),
        ] {
            let s = FieldSpec::new(p.pow(f) as usize, a).unwrap();
            let w = wieferich(&b(p as i64), &b(a)).unwrap();
            for k in 0..=f {
                let (e, t, int) = eta_and_tk(p, f, &b(a), k).unwrap();
                let x = e.div_int(b(p as i64).pow(k));
                assert!(
                    eval_poly(&t, &x, &s).is_zero(),
                    "T_{} at ({},{},{})",
                    k,
                    p,
                    f,
                    a
                );
                assert_eq!(int, k <= f.min(w - 1));
                assert_eq!(int, t.iter().all(|c| c.is_integer()));
            }
        }
    }

    #[test]
    fn example_17_beyond_f0() {
        assert!(!eta_and_tk(2, 4, &b(17), 4).unwrap().2);
        assert!(eta_and_tk(2, 3, &b(17), 4).is_err());
    }

    #[test]
    fn theta_values() {
        assert!(theta(2, 1, &b(5), 0).unwrap().is_zero());
        assert_eq!(
            theta(2, 1, &b(5), 1).unwrap(),
            FieldElement::alpha_pow(2, &b(5), 1)
        );
    }

    #[test]
    fn coprime_examples() {
        let o = build_p_order_coprime(&FieldSpec::new(2, 5).unwrap()).unwrap();
        assert_eq!(o.disc.value(), &b(5));
        assert_eq!(o.residue.to_string(), "F4");
        assert_eq!(o.labeled_basis[1].0, "eta_1/2·beta^0");
        assert_eq!(o.labeled_basis[1].1.to_string(), "(5 + a)/2");
        let o = build_p_order_coprime(&FieldSpec::new(2, 17).unwrap()).unwrap();
        assert_eq!(o.disc.value(), &b(17));
        assert_eq!(o.residue.to_string(), "F2 x F2");
        let s = FieldSpec::new(3, 10).unwrap();
        let o = build_p_order_coprime(&s).unwrap();
        // -300 = -2^2 3^1 5^2 at 3; the 3-part of the field discriminant.
        assert_eq!(o.disc.exponent(&b(3)), 1);
        assert_eq!(
            o.labeled_basis.last().unwrap().1,
            FieldElement::from_integers(vec![b(100), b(10), b(1)]).div_int(3)
        );
        let o = build_p_order_coprime(&FieldSpec::new(3, 2).unwrap()).unwrap();
        assert_eq!(o.order, OrderLattice::power_basis(3));
        assert_eq!(o.residue.to_string(), "F3");
    }
}
