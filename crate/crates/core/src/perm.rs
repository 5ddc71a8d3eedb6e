//! Permutations of `{0, .., k-1}` stored by their image list.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermutationError {
    #[error("image list {0:?} is not a bijection")]
    NotBijective(Vec<usize>),
    #[error("permutation of size {expected} expected, found size {found}")]
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    /// Builds a permutation from 0-based images.
    pub fn new(images: Vec<usize>) -> Result<Self, PermutationError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(PermutationError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds a permutation from 1-based images, as written in the term language.
    pub fn from_one_based(images: &[usize]) -> Result<Self, PermutationError> {
        if images.iter().any(|&i| i == 0) {
            return Err(PermutationError::NotBijective(images.to_vec()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// The transposition exchanging `i` and `j` in a set of size `k`.
    pub fn transposition(k: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(i, j);
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermutationError> {
        if self.len() != other.len() {
            return Err(PermutationError::SizeMismatch { expected: self.len(), found: other.len() });
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    /// All permutations of size `k` in lexicographic order of their image lists.
    pub fn all(k: usize) -> Vec<Self> {
        use itertools::Itertools;
        (0..k).permutations(k).map(Permutation).collect()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert_eq!(p.compose(&p).unwrap().one_based(), vec![3, 1, 2]);
        assert_eq!(Permutation::all(3).len(), 6);
    }
}
