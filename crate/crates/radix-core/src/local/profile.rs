//! Result types of the local constructions.

use std::fmt;

use num_bigint::BigInt;

use crate::arith::FactoredInt;
use crate::field::FieldElement;
use crate::lattice::OrderLattice;

/// Isomorphism type of `O_q / I_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResidueProfile {
    /// `(F_p)^count`.
    FpPower { p: BigInt, count: u32 },
    /// `(F_2)^count_f2 x F_4`.
    F2PowerTimesF4 { count_f2: u32 },
    /// `prod F_(q^d)` over the listed degrees.
    UnramifiedProduct { q: BigInt, degrees: Vec<usize> },
    /// Not determined by the construction.
    Opaque,
}

impl ResidueProfile {
    /// Classifies a product of residue fields of the given degrees.
    pub fn from_degrees(q: &BigInt, mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        let ones = degrees.iter().filter(|&&d| d == 1).count() as u32;
        if ones as usize == degrees.len() {
            ResidueProfile::FpPower {
                p: q.clone(),
                count: ones,
            }
        } else if *q == BigInt::from(2)
            && ones as usize + 1 == degrees.len()
            && degrees.last() == Some(&2)
        {
            ResidueProfile::F2PowerTimesF4 { count_f2: ones }
        } else {
            ResidueProfile::UnramifiedProduct {
                q: q.clone(),
                degrees,
            }
        }
    }

    /// Residue degrees of the factors, ascending, if known.
    pub fn degrees(&self) -> Option<Vec<usize>> {
        match self {
            ResidueProfile::FpPower { count, .. } => Some(vec![1; *count as usize]),
            ResidueProfile::F2PowerTimesF4 { count_f2 } => {
                let mut d = vec![1; *count_f2 as usize];
                d.push(2);
                Some(d)
            }
            ResidueProfile::UnramifiedProduct { degrees, .. } => {
                let mut d = degrees.clone();
                d.sort_unstable();
                Some(d)
            }
            ResidueProfile::Opaque => None,
        }
    }

    /// Number of idempotents of the quotient: `2^(number of factors)`.
    pub fn idempotent_count(&self) -> Option<u64> {
        self.degrees().map(|d| 1u64 << d.len())
    }
}

fn power(base: &str, k: u32) -> String {
    match k {
        1 => base.to_string(),
        2 => format!("{} x {}", base, base),
        _ => format!("{}^{}", base, k),
    }
}

impl fmt::Display for ResidueProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResidueProfile::FpPower { p, count } => {
                write!(f, "{}", power(&format!("F{}", p), *count))
            }
            ResidueProfile::F2PowerTimesF4 { count_f2: 0 } => write!(f, "F4"),
            ResidueProfile::F2PowerTimesF4 { count_f2: 1 } => write!(f, "F2 x F4"),
            ResidueProfile::F2PowerTimesF4 { count_f2 } => write!(f, "F2^{} x F4", count_f2),
            ResidueProfile::UnramifiedProduct { degrees, .. } => {
                write!(f, "unramified: degrees {:?}", degrees)
            }
            ResidueProfile::Opaque => write!(f, "opaque"),
        }
    }
}

/// Which closed form produced a [`LocalOrder`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    /// `q` does not divide the power-basis discriminant.
    Unramified,
    /// `Z[gamma]` with `e* = 0`.
    Eisenstein,
    /// `q != p`, `e* >= 1`: `Z[gamma] Z[gamma*]`.
    Tame { e_star: u32 },
    /// `q = p` coprime to `a`; `w = 1` gives `Z[alpha]`.
    Coprime { w: u32, f0: u32 },
    /// `q = p` dividing `a`. `completion` is the index exponent added on top of `d' + d''`
    /// to reach `p`-maximality.
    NonCoprime {
        e_star: u32,
        w_star: u32,
        f0_star: u32,
        d_prime: u64,
        d_second: u64,
        completion: u32,
    },
    /// Composite degree: local part of `Z[gamma] O_M O_N`, with the index exponent
    /// `completion` added by Pohst-Zassenhaus steps at a prime dividing `n`.
    Composite { completion: u32 },
}

/// A `q`-maximal order with its `q`-radical.
#[derive(Clone, Debug)]
pub struct LocalOrder {
    pub q: BigInt,
    pub construction: Construction,
    pub order: OrderLattice,
    pub radical: OrderLattice,
    /// Integral basis of `order`, labeled by the objects it is built from.
    pub labeled_basis: Vec<(String, FieldElement)>,
    /// Integral basis of `radical`.
    pub radical_basis: Vec<(String, FieldElement)>,
    /// Discriminant of `order`.
    pub disc: FactoredInt,
    pub residue: ResidueProfile,
    /// Generator of the reference order the index is measured against.
    pub reference: FieldElement,
    /// `v_q([order : Z[reference]])`.
    pub index_vq: u32,
    /// Whether `I_q = qO + beta* O + gamma O` (reported in the non-coprime case only).
    pub simple_radical: Option<bool>,
}
