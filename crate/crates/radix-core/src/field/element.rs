//! Elements of `K = Q[X]/(X^n - a)` in the power basis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `num / den` with `num` the integer coordinates in `1, alpha, ..., alpha^(n-1)`.
///
/// Always normalized: `den > 0` and `gcd(den, num_0, ..., num_{n-1}) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Vec<BigInt>,
    den: BigInt,
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

impl FieldElement {
    /// Builds and normalizes `num / den`. Panics if `den == 0`.
    pub fn new(num: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut e = FieldElement { num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for x in &mut self.num {
                *x = -&*x;
            }
        }
        let g = content(&self.num).gcd(&self.den);
        if g.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if !g.is_one() {
            for x in &mut self.num {
                *x = &*x / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn from_integers(num: Vec<BigInt>) -> Self {
        FieldElement::new(num, BigInt::one())
    }

    /// From rational coordinates.
    pub fn from_rationals(coords: &[BigRational]) -> Self {
        let den = coords.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        FieldElement::new(num, den)
    }

    pub fn zero(n: usize) -> Self {
        FieldElement {
            num: vec![BigInt::zero(); n],
            den: BigInt::one(),
        }
    }

    /// The rational constant `c`.
    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        let mut num = vec![BigInt::zero(); n];
        num[0] = c.into();
        FieldElement::from_integers(num)
    }

    pub fn one(n: usize) -> Self {
        FieldElement::constant(n, 1)
    }

    /// `alpha^k` rewritten with `alpha^n = a`.
    pub fn alpha_pow(n: usize, a: &BigInt, k: usize) -> Self {
        let mut num = vec![BigInt::zero(); n];
        num[k % n] = a.pow((k / n) as u32);
        FieldElement::from_integers(num)
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    pub fn numer(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Rational coordinates in the power basis.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|x| BigRational::new(x.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|x| x.is_zero())
    }

    /// Whether all coordinates are integers.
    pub fn is_integral_coords(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &FieldElement) -> FieldElement {
        assert_eq!(self.dim(), other.dim());
        let den = self.den.lcm(&other.den);
        let fa = &den / &self.den;
        let fb = &den / &other.den;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(x, y)| x * &fa + y * &fb)
            .collect();
        FieldElement::new(num, den)
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement {
            num: self.num.iter().map(|x| -x).collect(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &FieldElement) -> FieldElement {
        self.add(&other.neg())
    }

    /// Multiplication by the rational `p / q`.
    pub fn scale(&self, p: &BigInt, q: &BigInt) -> FieldElement {
        FieldElement::new(self.num.iter().map(|x| x * p).collect(), &self.den * q)
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> FieldElement {
        self.scale(&c.into(), &BigInt::one())
    }

    pub fn div_int(&self, c: impl Into<BigInt>) -> FieldElement {
        self.scale(&BigInt::one(), &c.into())
    }

    /// Product modulo `X^n - a`.
    pub fn mul(&self, other: &FieldElement, a: &BigInt) -> FieldElement {
        assert_eq!(self.dim(), other.dim());
        FieldElement::new(mul_coords(&self.num, &other.num, a), &self.den * &other.den)
    }

    pub fn pow(&self, mut k: u64, a: &BigInt) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(self.dim());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, a);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, a);
            }
        }
        acc
    }

    /// Polynomial rendering; `alpha` is written `a` when `ascii`, else `α`.
    pub fn render(&self, ascii: bool) -> String {
        let var = if ascii { "a" } else { "α" };
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            let body = if i == 0 {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{}*{}", mag, mono)
            };
            terms.push((c.is_negative(), body));
        }
        if terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(body);
        }
        if self.den.is_one() {
            s
        } else if terms.len() == 1 && !terms[0].0 {
            format!("{}/{}", s, self.den)
        } else {
            format!("({})/{}", s, self.den)
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(true))
    }
}

/// Integer coordinate product modulo `X^n - a`.
pub fn mul_coords(x: &[BigInt], y: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let n = x.len();
    let mut lo = vec![BigInt::zero(); n];
    let mut hi = vec![BigInt::zero(); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let k = i + j;
            if k < n {
                lo[k] += xi * yj;
            } else {
                hi[k - n] += xi * yj;
            }
        }
    }
    for (l, h) in lo.iter_mut().zip(hi) {
        if !h.is_zero() {
            *l += h * a;
        }
    }
    lo
}
