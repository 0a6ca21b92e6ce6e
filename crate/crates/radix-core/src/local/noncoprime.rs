//! The `p`-maximal order when `p` divides `a` with `1 <= e* < f`.
//!
//! The closed-form order is not always `p`-maximal; it is completed by Pohst-Zassenhaus steps.

use num_bigint::BigInt;

use super::coprime::{divide_q_power, Tower};
use super::profile::{Construction, LocalOrder, ResidueProfile};
use super::setup::{powers, RadicalSetup};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{index_vq, pz_saturate, residue_degrees, OrderLattice};

/// Base-`p` digits of `0 <= t < p^L`, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitProfile {
    pub t: u64,
    pub p: u64,
    /// `t_1, ..., t_L` with `t = sum t_i p^(L-i)`.
    pub digits: Vec<u64>,
    /// Smallest index of a nonzero digit (`0` for `t = 0`).
    pub r: u32,
    /// Largest index of a nonzero digit (`L` for `t = 0`).
    pub s: u32,
    /// `t / p^(L - s)`, coprime to `p` for `t != 0`.
    pub t_star: u64,
}

impl DigitProfile {
    /// Number of digits `L = f - e*`.
    pub fn len(&self) -> u32 {
        self.digits.len() as u32
    }

    /// `t_i` for `1 <= i <= L`.
    pub fn digit(&self, i: u32) -> u64 {
        self.digits[i as usize - 1]
    }

    /// `(t', t'')` with `t = p^(L-j) t'' + t'`, for `t != 0` and `1 <= j <= s - 1`.
    pub fn split(&self, j: u32) -> Result<(u64, u64)> {
        if self.t == 0 || j < 1 || j + 1 > self.s {
            return Err(Error::Precondition(format!(
                "split index {} out of range for t = {}",
                j, self.t
            )));
        }
        let l = self.len();
        let t1: u64 = (j + 1..=self.s)
            .map(|i| self.digit(i) * self.p.pow(l - i))
            .sum();
        let t2: u64 = (self.r.max(1)..=j)
            .map(|i| self.digit(i) * self.p.pow(j - i))
            .sum();
        Ok((t1, t2))
    }
}

/// Digit profile of `t` with `L = f - e*` digits.
pub fn digit_profile(t: u64, p: u64, f: u32, e_star: u32) -> Result<DigitProfile> {
    if e_star > f {
        return Err(Error::Precondition("e* exceeds f".into()));
    }
    let l = f - e_star;
    if t >= p.pow(l) {
        return Err(Error::Precondition(format!(
            "t = {} exceeds p^(f-e*) - 1",
            t
        )));
    }
    let digits: Vec<u64> = (1..=l).map(|i| (t / p.pow(l - i)) % p).collect();
    let nonzero: Vec<u32> = (1..=l).filter(|&i| digits[i as usize - 1] != 0).collect();
    let (r, s) = match (nonzero.first(), nonzero.last()) {
        (Some(&r), Some(&s)) => (r, s),
        _ => (0, l),
    };
    let t_star = t / p.pow(l - s);
    Ok(DigitProfile {
        t,
        p,
        digits,
        r,
        s,
        t_star,
    })
}

/// `g_k` and `h'_kt`, `h_kt` for all `t < p^(f-e*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HParams {
    pub k: u32,
    pub g: u32,
    /// `k^ + 1`.
    pub width: u64,
    pub h_prime: Vec<u64>,
    pub h: Vec<u64>,
}

/// `h`-parameters at level `k <= f0*`.
pub fn h_params(p: u64, f: u32, e_star: u32, f0_star: u32, k: u32) -> Result<HParams> {
    if k > f0_star || f0_star > e_star || e_star > f {
        return Err(Error::Precondition(format!(
            "need k <= f0* <= e* <= f, got {} {} {} {}",
            k, f0_star, e_star, f
        )));
    }
    let l = f - e_star;
    let (g, width) = if k < f0_star {
        (l.min(e_star - 1 - k), (p - 1) * p.pow(e_star - 1 - k))
    } else {
        (l.min(e_star - f0_star), p.pow(e_star - f0_star))
    };
    let mut h_prime = Vec::with_capacity(p.pow(l) as usize);
    for t in 0..p.pow(l) {
        let d = digit_profile(t, p, f, e_star)?;
        let hp = if t == 0 {
            0
        } else if k < f0_star {
            (p - 1)
                * (d.r..=g)
                    .map(|i| d.digit(i) * p.pow(e_star - 1 - k - i))
                    .sum::<u64>()
        } else {
            (d.r..=g)
                .map(|i| d.digit(i) * p.pow(e_star - f0_star - i))
                .sum::<u64>()
        };
        h_prime.push(hp);
    }
    let h = h_prime.iter().map(|&x| width - x).collect();
    Ok(HParams {
        k,
        g,
        width,
        h_prime,
        h,
    })
}

/// Closed forms for `d'' = [O_p : Z[gamma] O_p*]`, one per applicable regime.
pub fn d_second_closed_forms(p: u64, f: u32, e_star: u32, f0_star: u32) -> Vec<u64> {
    let l = f - e_star;
    let g = |k: u32| {
        if k < f0_star {
            l.min(e_star - 1 - k)
        } else {
            l.min(e_star - f0_star)
        }
    };
    let mut out = Vec::new();
    if (0..f0_star).all(|k| g(k) == e_star - 1 - k) && g(f0_star) == e_star - f0_star {
        out.push(p.pow(l) * (p.pow(e_star) - 1 - (p - 1) * f0_star as u64) / 2);
    }
    if g(f0_star) == l {
        out.push(p.pow(e_star) * (p.pow(l) - 1) / 2);
    }
    if f0_star >= 2 && l + 1 < e_star {
        let kp = e_star - 1 - l;
        if (1..f0_star).contains(&kp) {
            let a = p.pow(l) * (p.pow(e_star) - 1 - (p - 1) * (f0_star - 1 - kp) as u64);
            let b = p.pow(e_star - 1 - kp) * (p.pow(kp + 1) - 1);
            out.push((a - b) / 2);
        }
    }
    out
}

/// Intermediate objects of the construction.
pub(crate) struct Parts {
    pub tower: Tower,
    pub params: Vec<HParams>,
    pub gamma_pows: Vec<FieldElement>,
    pub d_prime: u64,
}

impl Parts {
    pub fn new(setup: &RadicalSetup, spec: &FieldSpec) -> Result<Self> {
        let p = setup.p;
        let tower = Tower::new(p, setup.e_star, &setup.c_star, &setup.gamma_star, spec)?;
        let params = (0..=tower.f0)
            .map(|k| h_params(p, setup.f, setup.e_star, tower.f0, k))
            .collect::<Result<Vec<_>>>()?;
        for hp in &params {
            if hp.width != tower.width(hp.k) {
                return Err(Error::Internal(
                    "width mismatch between tower and h-parameters".into(),
                ));
            }
        }
        let gamma_pows = powers(&setup.gamma, setup.outer_degree(), spec);
        let f0 = tower.f0;
        let d_prime = p.pow(setup.f - f0) * (p.pow(f0) - 1) / (p - 1)
            + p.pow(setup.f) * (setup.inner_degree() - 1) / 2;
        Ok(Parts {
            tower,
            params,
            gamma_pows,
            d_prime,
        })
    }

    /// `eta_kt / p`.
    pub fn eta_kt_over_p(&self, k: u32, t: u64, spec: &FieldSpec) -> FieldElement {
        let h = self.params[k as usize].h[t as usize];
        let x = spec.mul(&self.gamma_pows[t as usize], &self.tower.eta_scaled(k));
        spec.mul(&x, self.tower.beta_pow(h))
            .div_int(BigInt::from(self.tower.p))
    }

    /// Whether level `k` is in case (D): `p = 2` and `k = f0* = w* - 1`.
    fn meets_d(&self, k: u32) -> bool {
        self.tower.p == 2 && k == self.tower.f0 && k + 1 == self.tower.w
    }

    /// The exponent `x` of the radical replacement at `(k, t)`.
    pub fn replacement_exponent(&self, k: u32, d: &DigitProfile) -> u32 {
        let hp = &self.params[k as usize];
        if d.s > hp.g || d.s % 2 == 0 {
            return 0;
        }
        let below = k < self.tower.f0;
        if !self.meets_d(if below { k + 1 } else { k }) {
            return 0;
        }
        match (below, d.t_star % 3) {
            (true, 0) | (false, 1) => 1,
            (true, 1) | (false, 2) => 2,
            _ => 0,
        }
    }

    /// `beta_kt = eta_kt/p - (eta_kt/p)^(p^s_t) (eta*_f0*/p^f0*)^x`.
    pub fn beta_kt(
        &self,
        k: u32,
        t: u64,
        setup: &RadicalSetup,
        spec: &FieldSpec,
    ) -> Result<FieldElement> {
        let d = digit_profile(t, setup.p, setup.f, setup.e_star)?;
        let y = self.eta_kt_over_p(k, t, spec);
        let x = self.replacement_exponent(k, &d);
        let mut z = spec.pow(&y, setup.p.pow(d.s));
        if x > 0 {
            z = spec.mul(
                &z,
                &spec.pow(&self.tower.eta_scaled(self.tower.f0), x as u64),
            );
        }
        Ok(y.sub(&z))
    }
}

fn elements(labeled: &[(String, FieldElement)]) -> Vec<FieldElement> {
    labeled.iter().map(|(_, x)| x.clone()).collect()
}

/// The closed-form order `Z[gamma] O_p*` extended by the `eta_(k,t) / p`, with its radical.
///
/// It contains `Z[gamma]` with index exponent `d' + d''` but need not be `p`-maximal.
pub fn closed_form_noncoprime(setup: &RadicalSetup, spec: &FieldSpec) -> Result<LocalOrder> {
    let p = setup.p;
    let pb = BigInt::from(p);
    if setup.q != pb {
        return Err(Error::Precondition(
            "q != p; use the tame construction".into(),
        ));
    }
    if setup.gamma_maximal {
        return Err(Error::Precondition(
            "e* = 0: Z[gamma] is already p-maximal".into(),
        ));
    }
    if setup.e_star >= setup.f {
        return Err(Error::NotReduced(format!(
            "e* = {} >= f = {}",
            setup.e_star, setup.f
        )));
    }
    let n = spec.n();
    let parts = Parts::new(setup, spec)?;
    let tower = &parts.tower;
    let outer = setup.outer_degree();

    let mut b1 = Vec::new();
    let mut b1_rad = Vec::new();
    let mut b2 = Vec::new();
    let mut b3 = Vec::new();
    for hp in &parts.params {
        let k = hp.k;
        let eta = tower.eta_scaled(k);
        let pk = p.pow(k);
        for t in 0..outer {
            let gt_eta = spec.mul(&parts.gamma_pows[t as usize], &eta);
            for i in 0..hp.h[t as usize] {
                let label = format!("gamma^{}·eta*_{}/{}·beta*^{}", t, k, pk, i);
                let e = spec.mul(&gt_eta, tower.beta_pow(i));
                if t == 0 && i == 0 {
                    b1_rad.push((format!("{}·{}", p, label), e.scale_int(p)));
                } else {
                    b1_rad.push((label.clone(), e.clone()));
                }
                b1.push((label, e));
            }
            let hp_t = hp.h_prime[t as usize];
            if hp_t == 0 {
                continue;
            }
            let y = parts.eta_kt_over_p(k, t, spec);
            let beta = parts.beta_kt(k, t, setup, spec)?;
            for i in 0..hp_t {
                let suffix = if i == 0 {
                    String::new()
                } else {
                    format!("·beta*^{}", i)
                };
                let bi = tower.beta_pow(i);
                b2.push((
                    format!("eta_{{{},{}}}/{}{}", k, t, p, suffix),
                    spec.mul(&y, bi),
                ));
                b3.push((
                    format!("beta_{{{},{}}}{}", k, t, suffix),
                    spec.mul(&beta, bi),
                ));
            }
        }
    }
    let d_second = b2.len() as u64;
    for closed in d_second_closed_forms(p, setup.f, setup.e_star, tower.f0) {
        if closed != d_second {
            return Err(Error::Internal(format!(
                "d'' = {} but closed form gives {}",
                d_second, closed
            )));
        }
    }
    let mut labeled = b1;
    labeled.extend(b2);
    let mut radical_basis = b1_rad;
    radical_basis.extend(b3);
    if labeled.len() != n || radical_basis.len() != n {
        return Err(Error::Internal("basis size differs from the degree".into()));
    }
    let order = OrderLattice::from_elements(n, &elements(&labeled))?.into_ring();
    let radical = OrderLattice::from_elements(n, &elements(&radical_basis))?;

    let z_gamma = OrderLattice::from_elements(n, &powers(&setup.gamma, n as u64, spec))?;
    let measured = index_vq(&z_gamma, &order, &pb)?;
    if measured as u64 != parts.d_prime + d_second {
        return Err(Error::Internal(format!(
            "index exponent {} != d' + d'' = {} + {}",
            measured, parts.d_prime, d_second
        )));
    }
    let disc = divide_q_power(&setup.disc_gamma(spec), &pb, 2 * (parts.d_prime + d_second))?;
    if disc != order.disc(spec)? {
        return Err(Error::Internal(
            "non-coprime local discriminant mismatch".into(),
        ));
    }
    let simple = simple_radical(&order, &radical, setup, spec);
    Ok(LocalOrder {
        q: pb,
        construction: Construction::NonCoprime {
            e_star: setup.e_star,
            w_star: tower.w,
            f0_star: tower.f0,
            d_prime: parts.d_prime,
            d_second,
            completion: 0,
        },
        order,
        simple_radical: Some(simple),
        radical,
        labeled_basis: labeled,
        radical_basis,
        disc,
        residue: tower.residue(),
        reference: setup.gamma.clone(),
        index_vq: measured,
    })
}

/// The `p`-maximal order: the closed-form order, enlarged by `End(I_p)` until stable.
pub fn build_p_order_noncoprime(setup: &RadicalSetup, spec: &FieldSpec) -> Result<LocalOrder> {
    let mut local = closed_form_noncoprime(setup, spec)?;
    let p = local.q.clone();
    let (order, radical, gained) = pz_saturate(&local.order, &p, spec)?;
    local.order = order;
    local.radical = radical;
    if gained == 0 {
        return Ok(local);
    }
    local.labeled_basis = relabel(&local.order, "omega");
    local.radical_basis = relabel(&local.radical, "rho");
    local.residue = match residue_degrees(&local.order, &local.radical, &p, spec) {
        Ok(d) => ResidueProfile::from_degrees(&p, d),
        Err(Error::Unsupported(_)) => ResidueProfile::Opaque,
        Err(e) => return Err(e),
    };
    local.disc = divide_q_power(&local.disc, &p, 2 * gained as u64)?;
    local.index_vq += gained;
    local.simple_radical = Some(simple_radical(&local.order, &local.radical, setup, spec));
    if let Construction::NonCoprime { completion, .. } = &mut local.construction {
        *completion = gained;
    }
    Ok(local)
}

/// Whether `I_p = pO + beta* O + gamma O`.
fn simple_radical(
    order: &OrderLattice,
    radical: &OrderLattice,
    setup: &RadicalSetup,
    spec: &FieldSpec,
) -> bool {
    let gamma_star = &setup.gamma_star;
    let beta = gamma_star.sub(&FieldElement::constant(spec.n(), setup.c_star.clone()));
    let simple = order
        .scale_int(&BigInt::from(setup.p))
        .sum(&order.mul_element(&beta, spec))
        .sum(&order.mul_element(&setup.gamma, spec));
    &simple == radical
}

fn relabel(lattice: &OrderLattice, name: &str) -> Vec<(String, FieldElement)> {
    lattice
        .basis()
        .into_iter()
        .enumerate()
        .map(|(i, x)| (format!("{}_{}", name, i), x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::setup::setup_lemma21;
    use super::*;
    use crate::lattice::{endomorphism_mod, frobenius_radical};

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn digits() {
        let d = digit_profile(1, 2, 2, 1).unwrap();
        assert_eq!((d.digits.clone(), d.r, d.s, d.t_star), (vec![1], 1, 1, 1));
        let d = digit_profile(6, 2, 4, 1).unwrap();
        assert_eq!(
            (d.digits.clone(), d.r, d.s, d.t_star),
            (vec![1, 1, 0], 1, 2, 3)
        );
        assert_eq!(d.split(1).unwrap(), (2, 1));
        assert!(d.split(2).is_err());
        let z = digit_profile(0, 3, 3, 1).unwrap();
        assert_eq!((z.r, z.s), (0, 2));
        assert!(digit_profile(8, 2, 4, 1).is_err());
    }

    #[test]
    fn r_t_is_minimal_exponent() {
        for p in [2u64, 3] {
            for l in 1..=6u32 {
                for t in 1..p.pow(l) {
                    let d = digit_profile(t, p, l, 0).unwrap();
                    let r = (0..).find(|&r| p.pow(r) * t >= p.pow(l)).unwrap();
                    assert_eq!(d.r, r);
                    assert_eq!(t % p.pow(l - d.s), 0);
                    assert_ne!(d.t_star % p, 0);
                    for j in 1..d.s {
                        let (t1, t2) = d.split(j).unwrap();
                        assert_eq!(t, p.pow(l - j) * t2 + t1);
                        assert!(t2 < p.pow(j) && p.pow(j) * t1 < p.pow(l));
                    }
                }
            }
        }
    }

    #[test]
    fn example_4_12() {
        let s = FieldSpec::new(4, 12).unwrap();
        let setup = setup_lemma21(&s, &b(2)).unwrap();
        assert_eq!((setup.c.clone(), setup.c_star.clone()), (b(12), b(3)));
        let o = closed_form_noncoprime(&setup, &s).unwrap();
        match &o.construction {
            Construction::NonCoprime {
                f0_star,
                d_prime,
                d_second,
                ..
            } => {
                assert_eq!((*f0_star, *d_prime, *d_second), (0, 2, 1));
            }
            c => panic!("unexpected construction {:?}", c),
        }
        assert_eq!(o.disc.value(), &b(-6912));
        let expected = OrderLattice::from_elements(
            4,
            &[
                s.one(),
                s.alpha_pow(2).div_int(2).sub(&FieldElement::constant(4, 3)),
                s.alpha(),
                s.alpha_pow(3).sub(&s.alpha().scale_int(6)).div_int(4),
            ],
        )
        .unwrap();
        assert_eq!(o.order, expected);
        assert_eq!(o.radical, frobenius_radical(&o.order, &b(2), &s).unwrap());
        let parts = Parts::new(&setup, &s).unwrap();
        let y = parts.eta_kt_over_p(0, 1, &s);
        assert_eq!(
            s.pow(&y, 2),
            s.alpha_pow(2)
                .scale_int(3)
                .sub(&FieldElement::constant(4, 9))
        );
        assert_eq!(d_second_closed_forms(2, 2, 1, 0), vec![1, 1]);
        // (1 + alpha + alpha^2 / 2) / 2 is integral and missing from the closed form.
        let theta = s
            .one()
            .add(&s.alpha())
            .add(&s.alpha_pow(2).div_int(2))
            .div_int(2);
        assert!(!o.order.contains(&theta));
        let full = build_p_order_noncoprime(&setup, &s).unwrap();
        assert!(full.order.contains(&theta));
        assert_eq!(full.disc.value(), &b(-1728));
        assert_eq!(full.index_vq, 4);
        assert!(matches!(
            full.construction,
            Construction::NonCoprime { completion: 1, .. }
        ));
    }

    #[test]
    fn closed_forms_agree_with_enumeration() {
        for p in [2u64, 3] {
            for f in 2..=6u32 {
                for e in 1..f {
                    for f0 in 0..=e {
                        if p.pow(f) > 800 {
                            continue;
                        }
                        let total: u64 = (0..=f0)
                            .map(|k| {
                                h_params(p, f, e, f0, k)
                                    .unwrap()
                                    .h_prime
                                    .iter()
                                    .sum::<u64>()
                            })
                            .sum();
                        let forms = d_second_closed_forms(p, f, e, f0);
                        assert!(!forms.is_empty(), "no regime for {:?}", (p, f, e, f0));
                        assert!(
                            forms.iter().all(|&c| c == total),
                            "{:?}: {:?} vs {}",
                            (p, f, e, f0),
                            forms,
                            total
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn radicals_match_frobenius() {
        for &(n, a) in &[
            (4usize, 12i64),
            (8, 12),
            (8, 20),
            (8, 4 * 17),
            (9, 3 * 3 * 2),
            (8, 16 * 3),
            (4, 4 * 5),
            (16, 16 * 5),
            (16, 16 * 13),
            (16, 16 * 3),
            (16, 16 * 17),
            (27, 9 * 2),
            (27, 9 * 10),
            (32, 16 * 5),
            (32, 16 * 7),
            (32, 16 * 17),
            (16, 4 * 5),
            (16, 4 * 17),
            (9, 54),
            (27, 54),
            (9, 270),
            (27, 196830),
            (25, 21875),
        ] {
            let s = FieldSpec::new(n, a).unwrap();
            let (p, _) = s.prime_power().unwrap();
            let setup = setup_lemma21(&s, &b(p as i64)).unwrap();
            if setup.gamma_maximal {
                continue;
            }
            let q = b(p as i64);
            let o = closed_form_noncoprime(&setup, &s).unwrap();
            assert_eq!(
                o.radical,
                frobenius_radical(&o.order, &q, &s).unwrap(),
                "({}, {})",
                n,
                a
            );
            let full = build_p_order_noncoprime(&setup, &s).unwrap();
            assert!(full.order.contains_lattice(&o.order));
            assert_eq!(
                full.radical,
                frobenius_radical(&full.order, &q, &s).unwrap()
            );
            assert!(
                endomorphism_mod(&full.order, &full.radical, &q, &s)
                    .unwrap()
                    .1,
                "({}, {})",
                n,
                a
            );
        }
    }
}
