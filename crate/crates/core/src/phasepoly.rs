//! Diagonal gates as GF(2) phase polynomials, `|x> -> (-1)^{f(x)} |x>`.

use std::collections::BTreeSet;
use std::fmt;

use crate::{Error, Result};

/// Sum of monomials over up to 64 binary variables; each monomial is a bitmask.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PhasePolynomial {
    monomials: BTreeSet<u64>,
}

impl PhasePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Multi-controlled Z on `vars`.
    pub fn monomial(vars: &[usize]) -> Self {
        let mut p = Self::zero();
        p.toggle(mask(vars));
        p
    }

    fn toggle(&mut self, m: u64) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn monomials(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.monomials.iter().map(|&m| (0..64).filter(|&i| m >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials.iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
    }

    /// Product of gates: sum of phase polynomials.
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &m in &other.monomials {
            out.toggle(m);
        }
        out
    }

    /// `f(x + e_i)`: conjugation by `X_i`.
    pub fn flip(&self, i: usize) -> Self {
        let bit = 1u64 << i;
        let mut out = Self::zero();
        for &m in &self.monomials {
            out.toggle(m);
            if m & bit != 0 {
                out.toggle(m & !bit);
            }
        }
        out
    }

    /// Diagonal part `D` of `G X_i G = X_i D`.
    pub fn sandwich(&self, i: usize) -> Self {
        self.add(&self.flip(i))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> Named<'a> {
        Named { poly: self, names }
    }
}

fn mask(vars: &[usize]) -> u64 {
    vars.iter().fold(0, |m, &v| m | 1 << v)
}

pub struct Named<'a> {
    poly: &'a PhasePolynomial,
    names: &'a [String],
}

impl fmt::Display for Named<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .poly
            .monomials()
            .map(|m| match m.len() {
                0 => "1".to_string(),
                _ => m.iter().map(|&v| self.names.get(v).cloned().unwrap_or(format!("x{v}"))).collect::<Vec<_>>().join("·"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

/// `G X_i G` for the `arity`-qubit controlled-Z gate `G`, as its diagonal part.
pub fn sandwich_identity(arity: usize, flip: usize) -> Result<PhasePolynomial> {
    if !(2..=4).contains(&arity) || flip >= arity {
        return Err(Error::BadSandwich { arity, flip });
    }
    let vars: Vec<usize> = (0..arity).collect();
    Ok(PhasePolynomial::monomial(&vars).sandwich(flip))
}

/// Variable index of logical qubit `dir` of `block` in a four-block composite.
pub fn composite_var(block: usize, dir: usize) -> usize {
    4 * block + dir
}

/// One round of CCCZs on the given quartets (one direction per block), sandwiched
/// by X on logical qubit `(block, dir)`.
pub fn composite_sandwich(quartets: &[Vec<usize>], block: usize, dir: usize) -> PhasePolynomial {
    let g = quartets.iter().fold(PhasePolynomial::zero(), |acc, q| {
        let vars: Vec<usize> = q.iter().enumerate().map(|(b, &d)| composite_var(b, d)).collect();
        acc.add(&PhasePolynomial::monomial(&vars))
    });
    g.sandwich(composite_var(block, dir))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cccz_flip_leaves_ccz() {
        assert_eq!(sandwich_identity(4, 0).unwrap(), PhasePolynomial::monomial(&[1, 2, 3]));
    }

    #[test]
    fn cz_flip_leaves_z() {
        assert_eq!(sandwich_identity(2, 0).unwrap(), PhasePolynomial::monomial(&[1]));
    }

    #[test]
    fn rejects_bad_flip() {
        assert!(sandwich_identity(3, 3).is_err());
        assert!(sandwich_identity(1, 0).is_err());
    }

    #[test]
    fn square_is_identity() {
        let g = PhasePolynomial::monomial(&[0, 1, 2]);
        assert!(g.add(&g).is_empty());
    }
}
