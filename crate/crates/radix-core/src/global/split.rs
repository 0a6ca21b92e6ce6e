//! The exponent sets `D(M, N)` and `D'(M, N)` of a linearly disjoint split.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Split of `n = n_M n_N` with coprime parts.
///
/// Every `0 <= k < n` is `n_N l + n_M l' mod n` for a unique `l < n_M`, `l' < n_N`.
/// `k` lies in `D` when `n_N l + n_M l' >= n`, so that `alpha^k` needs a division by `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointSplit {
    pub n_m: usize,
    pub n_n: usize,
    /// `D`, ascending.
    pub d: Vec<usize>,
    /// `D' = {0, ..., n-1} \ D`, ascending.
    pub d_prime: Vec<usize>,
    /// `pairs[k] = (l_k, l'_k)`.
    pub pairs: Vec<(usize, usize)>,
}

impl DisjointSplit {
    /// `d(M, N) = |D| = (n_M - 1)(n_N - 1) / 2`.
    pub fn size(&self) -> usize {
        self.d.len()
    }

    pub fn n(&self) -> usize {
        self.n_m * self.n_n
    }

    pub fn contains(&self, k: usize) -> bool {
        self.d.binary_search(&k).is_ok()
    }
}

/// Computes the split for coprime `n_M, n_N >= 2`.
pub fn disjoint_split(n_m: usize, n_n: usize) -> Result<DisjointSplit> {
    if n_m < 2 || n_n < 2 || n_m.gcd(&n_n) != 1 {
        return Err(Error::Precondition(format!(
            "parts {} and {} must be coprime and at least 2",
            n_m, n_n
        )));
    }
    let n = n_m * n_n;
    let mut pairs = vec![(0, 0); n];
    let mut in_d = vec![false; n];
    for l in 0..n_m {
        for lp in 0..n_n {
            let s = n_n * l + n_m * lp;
            pairs[s % n] = (l, lp);
            in_d[s % n] = s >= n;
        }
    }
    let d = (0..n).filter(|&k| in_d[k]).collect();
    let d_prime = (0..n).filter(|&k| !in_d[k]).collect();
    Ok(DisjointSplit {
        n_m,
        n_n,
        d,
        d_prime,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables() {
        let s = disjoint_split(5, 4).unwrap();
        assert_eq!(s.d, vec![1, 2, 3, 6, 7, 11]);
        assert_eq!(disjoint_split(3, 5).unwrap().d, vec![1, 2, 4, 7]);
        let s = disjoint_split(2, 3).unwrap();
        assert_eq!(s.d, vec![1]);
        assert_eq!(s.pairs[1], (1, 2));
        assert!(disjoint_split(4, 6).is_err());
        assert!(disjoint_split(1, 5).is_err());
    }

    #[test]
    fn counts_and_complements() {
        for (m, n) in [(2, 3), (3, 4), (5, 4), (3, 5), (7, 8), (9, 5), (2, 25)] {
            let s = disjoint_split(m, n).unwrap();
            assert_eq!(s.size(), (m - 1) * (n - 1) / 2);
            assert_eq!(s.size() + s.d_prime.len(), m * n);
            for k in 1..m * n {
                if k.gcd(&m) == 1 && k.gcd(&n) == 1 {
                    let (a, b) = s.pairs[k];
                    let (c, d) = s.pairs[m * n - k];
                    assert_eq!((a + c, b + d), (m, n));
                }
            }
        }
    }
}
