use std::fmt;

use crate::error::{Error, Result};

/// Largest fold count; allowed-index sets are 64-bit masks.
pub const MAX_FOLD: usize = 64;

/// A permutation of `0..m` in one-line notation: `i ↦ self[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(m: usize) -> Perm {
        assert!(m <= MAX_FOLD, "fold count {m} exceeds {MAX_FOLD}");
        Perm((0..m as u8).collect())
    }

    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let m = images.len();
        if m > MAX_FOLD {
            return Err(Error::capacity("permutation", format!("degree {m}"), MAX_FOLD));
        }
        let mut seen = vec![false; m];
        for &x in images {
            if x >= m || seen[x] {
                return Err(Error::param(format!("{images:?} is not a permutation of 0..{m}")));
            }
            seen[x] = true;
        }
        Ok(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    /// Swaps `a` and `b`, fixes everything else.
    pub fn transposition(m: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(m);
        p.0.swap(a, b);
        p
    }

    /// `i ↦ i + k (mod m)`.
    pub fn rotation(m: usize, k: usize) -> Perm {
        Perm((0..m).map(|i| ((i + k) % m) as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixed_points(&self) -> usize {
        self.0.iter().enumerate().filter(|&(i, &x)| i == x as usize).count()
    }

    /// Steps to the lexicographic successor; returns `false` (and resets to
    /// the identity) after the last permutation.
    pub fn advance(&mut self) -> bool {
        let a = &mut self.0;
        let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
            a.reverse();
            return false;
        };
        let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).unwrap();
        a.swap(i - 1, j);
        a[i..].reverse();
        true
    }

    /// Position in lexicographic order (Lehmer code).
    pub fn rank(&self) -> u64 {
        let m = self.0.len();
        let mut rank = 0u64;
        for i in 0..m {
            let smaller_later = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count() as u64;
            rank = rank * (m - i) as u64 + smaller_later;
        }
        rank
    }

    /// Inverse of [`Perm::rank`]; `rank < m!`.
    pub fn unrank(m: usize, mut rank: u64) -> Perm {
        let mut digits = vec![0usize; m];
        for i in (0..m).rev() {
            let base = (m - i) as u64;
            digits[i] = (rank % base) as usize;
            rank /= base;
        }
        let mut pool: Vec<u8> = (0..m as u8).collect();
        Perm(digits.into_iter().map(|d| pool.remove(d)).collect())
    }
}

/// `m!`, or `None` when it does not fit in `u64`.
pub fn factorial(m: usize) -> Option<u64> {
    (1..=m as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lexicographic_walk_visits_all() {
        let mut p = Perm::identity(4);
        let mut seen = vec![p.clone()];
        while p.advance() {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 24);
        assert!(seen.windows(2).all(|w| w[0] < w[1]));
        assert!(p.is_identity());
        for (r, q) in seen.iter().enumerate() {
            assert_eq!(q.rank(), r as u64);
            assert_eq!(&Perm::unrank(4, r as u64), q);
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::from_images(&[0, 3, 1]).is_err());
        assert!(Perm::from_images(&[2, 0, 1]).is_ok());
    }

    #[test]
    fn small_facts() {
        assert_eq!(Perm::transposition(3, 0, 1).fixed_points(), 1);
        assert_eq!(Perm::rotation(3, 1).fixed_points(), 0);
        assert_eq!(factorial(4), Some(24));
        assert_eq!(factorial(21), None);
        assert_eq!(Perm::rotation(4, 1).to_string(), "1 2 3 0");
    }

    fn perm(m: usize) -> impl Strategy<Value = Perm> {
        Just((0..m).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Perm::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn group_laws((a, b, c) in (1usize..7).prop_flat_map(|m| (perm(m), perm(m), perm(m)))) {
            prop_assert!(a.compose(&a.inverse()).is_identity());
            prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
            prop_assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
            prop_assert_eq!(Perm::unrank(a.degree(), a.rank()), a);
        }
    }
}
