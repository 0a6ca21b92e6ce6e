//! Exact arithmetic in `K = Q[X]/(X^n - a)`.

mod element;
mod spec;

pub use element::{mul_coords, FieldElement};
pub use spec::FieldSpec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{det_bareiss, FactoredInt};
use crate::error::{Error, Result};

fn check_dim(x: &FieldElement, spec: &FieldSpec) -> Result<()> {
    if x.dim() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            got: x.dim(),
        });
    }
    Ok(())
}

/// Exact product in `K`.
pub fn mul(x: &FieldElement, y: &FieldElement, spec: &FieldSpec) -> Result<FieldElement> {
    check_dim(x, spec)?;
    check_dim(y, spec)?;
    Ok(spec.mul(x, y))
}

/// Integer matrix `M` and denominator `d` with the regular representation of `x`
/// equal to `M / d`. Row `i` holds the coordinates of `x * alpha^i`.
pub fn regular_matrix(x: &FieldElement, spec: &FieldSpec) -> (Vec<Vec<BigInt>>, BigInt) {
    let n = spec.n();
    let rows = (0..n)
        .map(|i| {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            mul_coords(x.numer(), &e, spec.a())
        })
        .collect();
    (rows, x.denom().clone())
}

/// Trace as the diagonal sum of the regular representation.
pub fn trace(x: &FieldElement, spec: &FieldSpec) -> Result<BigRational> {
    check_dim(x, spec)?;
    let (m, d) = regular_matrix(x, spec);
    let s: BigInt = (0..spec.n()).map(|i| m[i][i].clone()).sum();
    Ok(BigRational::new(s, d))
}

/// Gram matrix of the trace form on `basis`.
pub fn trace_matrix(basis: &[FieldElement], spec: &FieldSpec) -> Result<Vec<Vec<BigRational>>> {
    if basis.len() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            got: basis.len(),
        });
    }
    for b in basis {
        check_dim(b, spec)?;
    }
    let n = basis.len();
    let mut t = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = trace(&spec.mul(&basis[i], &basis[j]), spec)?;
            t[i][j] = v.clone();
            t[j][i] = v;
        }
    }
    Ok(t)
}

/// Determinant of a rational matrix, via a common denominator.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut den = BigInt::one();
    for row in m {
        for x in row {
            den = num_integer::Integer::lcm(&den, x.denom());
        }
    }
    let im: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&den / x.denom())).collect())
        .collect();
    BigRational::new(det_bareiss(&im), den.pow(n as u32))
}

/// Norm as the determinant of the regular representation.
pub fn norm(x: &FieldElement, spec: &FieldSpec) -> Result<BigRational> {
    check_dim(x, spec)?;
    let (m, d) = regular_matrix(x, spec);
    Ok(BigRational::new(det_bareiss(&m), d.pow(spec.n() as u32)))
}

/// Factored discriminant of the power basis.
pub fn base_disc(spec: &FieldSpec) -> FactoredInt {
    spec.base_disc()
}
