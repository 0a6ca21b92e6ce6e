//! Integer arithmetic: valuations, factorization, combinatorial identities
//! and irreducibility of pure polynomials.

mod combin;
mod factored;
mod fq;
mod matrix;
mod prime;
mod pure;

pub use combin::{binom_valuation, binomial, factorial_valuation, geom_square_coeffs};
pub use factored::FactoredInt;
pub use fq::Fq;
pub use matrix::det_bareiss;
pub use prime::{
    factorize, factorize_with_budget, is_prime, vp, wieferich, FactorBudget, ValuationTable,
};
pub use pure::{irreducibility_obstruction, is_irreducible_pure, lemma21_gcd};

pub(crate) use prime::{factorize_over, val};
