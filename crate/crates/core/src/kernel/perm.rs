use crate::error::{EkqError, Result};

/// A permutation of {0..n}. As an operator on tensor factors it moves the factor in
/// position `i` to position `images[i]`, so `compose(t, s)` acts as "s first, then t".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(EkqError::Malformed(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    /// From 1-based one-line notation.
    pub fn from_one_based(list: &[usize]) -> Result<Self> {
        if list.iter().any(|&i| i == 0) {
            return Err(EkqError::Malformed("permutation entries are 1-based".into()));
        }
        Self::new(list.iter().map(|i| i - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Perm { images: (0..n).collect() }
    }

    pub fn swap(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Self {
        assert_eq!(self.len(), other.len());
        Perm { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    /// Rearrange a tuple of factors: the entry at position i lands at position σ(i).
    pub fn act<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        assert_eq!(xs.len(), self.len());
        let mut out = xs.to_vec();
        for (i, x) in xs.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        out
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|i| i + 1).collect()
    }

    /// All permutations of {0..n} in lexicographic order of their image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Perm { images: prefix.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    prefix.push(i);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[i] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_is_left_action() {
        let s = Perm::new(vec![1, 2, 0]).unwrap();
        let t = Perm::new(vec![0, 2, 1]).unwrap();
        let xs = ['a', 'b', 'c'];
        assert_eq!(t.act(&s.act(&xs)), t.compose(&s).act(&xs));
        assert_eq!(s.act(&xs), vec!['c', 'a', 'b']);
        assert_eq!(s.compose(&s.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new(vec![0, 0]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
        assert_eq!(Perm::all(3).len(), 6);
    }
}
