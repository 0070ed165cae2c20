//! Finite partial orders, used by the triangular ring builder and the
//! chain-condition truncation certificates.

use crate::{Error, Result};

/// A partial order on `{0, ..., n-1}` as a dense `<=` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    le: Vec<bool>,
}

impl Poset {
    pub fn from_le_matrix(n: usize, le: Vec<bool>) -> Result<Poset> {
        if le.len() != n * n {
            return Err(Error::input("le matrix has wrong size"));
        }
        let p = Poset { n, le };
        p.check()?;
        Ok(p)
    }

    /// Builds the reflexive-transitive closure of the given strict relations
    /// and validates antisymmetry.
    pub fn from_relations(n: usize, lt: &[(usize, usize)]) -> Result<Poset> {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        for &(a, b) in lt {
            if a >= n || b >= n {
                return Err(Error::input("relation index out of range"));
            }
            le[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if le[i * n + k] {
                    for j in 0..n {
                        if le[k * n + j] {
                            le[i * n + j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_le_matrix(n, le)
    }

    pub fn chain(n: usize) -> Poset {
        let mut le = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                le[i * n + j] = true;
            }
        }
        Poset { n, le }
    }

    pub fn antichain(n: usize) -> Poset {
        let mut le = vec![false; n * n];
        for i in 0..n {
            le[i * n + i] = true;
        }
        Poset { n, le }
    }

    fn check(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.le(i, i) {
                return Err(Error::input(format!("relation not reflexive at {i}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && self.le(i, j) && self.le(j, i) {
                    return Err(Error::input(format!(
                        "relation not antisymmetric on ({i},{j})"
                    )));
                }
                for k in 0..n {
                    if self.le(i, j) && self.le(j, k) && !self.le(i, k) {
                        return Err(Error::input(format!(
                            "relation not transitive on ({i},{j},{k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.n + b]
    }

    pub fn is_total(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                if !self.le(i, j) && !self.le(j, i) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_antichain() {
        let c = Poset::chain(3);
        assert!(c.le(0, 2));
        assert!(!c.le(2, 0));
        assert!(c.is_total());
        let a = Poset::antichain(2);
        assert!(a.le(0, 0));
        assert!(!a.le(0, 1));
        assert!(!a.is_total());
    }

    #[test]
    fn closure_and_antisymmetry() {
        let p = Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.le(0, 2));
        assert!(Poset::from_relations(2, &[(0, 1), (1, 0)]).is_err());
    }
}
