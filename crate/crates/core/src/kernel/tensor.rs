use super::perm::Perm;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{EkqError, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// An element of Hom(V_1⊗..⊗V_m, W_1⊗..⊗W_n) stored sparsely; keys are
/// input indices followed by output indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseTensor {
    dims_in: Vec<usize>,
    dims_out: Vec<usize>,
    entries: BTreeMap<Vec<usize>, Rational>,
}

impl SparseTensor {
    pub fn zero(dims_in: Vec<usize>, dims_out: Vec<usize>) -> Self {
        SparseTensor { dims_in, dims_out, entries: BTreeMap::new() }
    }

    /// Tensor over a single space of dimension `dim`.
    pub fn zero_uniform(dim: usize, m: usize, n: usize) -> Self {
        Self::zero(vec![dim; m], vec![dim; n])
    }

    pub fn arity_in(&self) -> usize {
        self.dims_in.len()
    }

    pub fn arity_out(&self) -> usize {
        self.dims_out.len()
    }

    pub fn dims_in(&self) -> &[usize] {
        &self.dims_in
    }

    pub fn dims_out(&self) -> &[usize] {
        &self.dims_out
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Rational> {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_key(&self, key: &[usize]) -> Result<()> {
        let dims = self.dims_in.iter().chain(&self.dims_out);
        if key.len() != self.dims_in.len() + self.dims_out.len() || key.iter().zip(dims).any(|(i, d)| i >= d) {
            return Err(EkqError::Dimension(format!("index tuple {key:?} out of range")));
        }
        Ok(())
    }

    pub fn add_entry(&mut self, key: Vec<usize>, c: Rational) -> Result<()> {
        self.check_key(&key)?;
        if c.is_zero() {
            return Ok(());
        }
        let e = self.entries.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn get(&self, key: &[usize]) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        Self::permutation(dims.clone(), &Perm::identity(dims.len())).expect("identity is well formed")
    }

    /// The operator P_σ moving factor i to position σ(i).
    pub fn permutation(dims: Vec<usize>, sigma: &Perm) -> Result<Self> {
        if sigma.len() != dims.len() {
            return Err(EkqError::Dimension("permutation size differs from tensor rank".into()));
        }
        let dims_out = sigma.act(&dims);
        let mut t = Self::zero(dims.clone(), dims_out);
        for idx in multi_indices(&dims) {
            let out = sigma.act(&idx);
            let mut key = idx;
            key.extend(out);
            t.entries.insert(key, Rational::one());
        }
        Ok(t)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &SparseTensor) -> Result<Self> {
        if inner.dims_out != self.dims_in {
            return Err(EkqError::Dimension(format!(
                "cannot compose: inner has {} outputs, outer has {} inputs",
                inner.arity_out(),
                self.arity_in()
            )));
        }
        let m = inner.arity_in();
        let k = self.arity_in();
        let mut by_mid: BTreeMap<&[usize], Vec<(&[usize], &Rational)>> = BTreeMap::new();
        for (key, c) in &self.entries {
            by_mid.entry(&key[..k]).or_default().push((&key[k..], c));
        }
        let mut out = Self::zero(inner.dims_in.clone(), self.dims_out.clone());
        for (key, c) in &inner.entries {
            if let Some(outs) = by_mid.get(&key[m..]) {
                for (o, c2) in outs {
                    let mut nk = key[..m].to_vec();
                    nk.extend_from_slice(o);
                    let e = out.entries.entry(nk).or_insert_with(Rational::zero);
                    *e += c * *c2;
                }
            }
        }
        out.entries.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn tensor(&self, other: &SparseTensor) -> Self {
        let mut dims_in = self.dims_in.clone();
        dims_in.extend(&other.dims_in);
        let mut dims_out = self.dims_out.clone();
        dims_out.extend(&other.dims_out);
        let mut out = Self::zero(dims_in, dims_out);
        let (m1, m2) = (self.arity_in(), other.arity_in());
        for (k1, c1) in &self.entries {
            for (k2, c2) in &other.entries {
                let mut key = k1[..m1].to_vec();
                key.extend_from_slice(&k2[..m2]);
                key.extend_from_slice(&k1[m1..]);
                key.extend_from_slice(&k2[m2..]);
                out.entries.insert(key, c1 * c2);
            }
        }
        out
    }

    pub fn add_scaled(&self, other: &SparseTensor, c: &Rational) -> Result<Self> {
        if self.dims_in != other.dims_in || self.dims_out != other.dims_out {
            return Err(EkqError::Dimension("cannot add tensors of different shapes".into()));
        }
        let mut out = self.clone();
        for (k, v) in &other.entries {
            let e = out.entries.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v * c;
        }
        out.entries.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.entries.clear();
        } else {
            for v in out.entries.values_mut() {
                *v *= c;
            }
        }
        out
    }

    pub fn sub(&self, other: &SparseTensor) -> Result<Self> {
        self.add_scaled(other, &-Rational::one())
    }
}

/// P_{σ_out} ∘ t ∘ P_{σ_in}^{-1}; a left action of S_m × S_n.
pub fn permute(t: &SparseTensor, sigma_in: &Perm, sigma_out: &Perm) -> Result<SparseTensor> {
    if sigma_in.len() != t.arity_in() || sigma_out.len() != t.arity_out() {
        return Err(EkqError::Dimension("permutation sizes must match tensor arities".into()));
    }
    let m = t.arity_in();
    let mut out = SparseTensor::zero(sigma_in.act(&t.dims_in), sigma_out.act(&t.dims_out));
    for (k, c) in &t.entries {
        let mut nk = sigma_in.act(&k[..m]);
        nk.extend(sigma_out.act(&k[m..]));
        out.entries.insert(nk, c.clone());
    }
    Ok(out)
}

pub fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for p in &out {
            for i in 0..d {
                let mut q = p.clone();
                q.push(i);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EntryRecord {
    indices: Vec<usize>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct TensorRecord {
    dims_in: Vec<usize>,
    dims_out: Vec<usize>,
    entries: Vec<EntryRecord>,
}

impl Serialize for SparseTensor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TensorRecord {
            dims_in: self.dims_in.clone(),
            dims_out: self.dims_out.clone(),
            entries: self
                .entries
                .iter()
                .map(|(k, c)| EntryRecord { indices: k.iter().map(|i| i + 1).collect(), coeff: format_rational(c) })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SparseTensor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let rec = TensorRecord::deserialize(d)?;
        let mut t = SparseTensor::zero(rec.dims_in, rec.dims_out);
        for e in rec.entries {
            if e.indices.iter().any(|&i| i == 0) {
                return Err(D::Error::custom("tensor indices are 1-based"));
            }
            let c = parse_rational(&e.coeff).map_err(D::Error::custom)?;
            t.add_entry(e.indices.iter().map(|i| i - 1).collect(), c).map_err(D::Error::custom)?;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::int;

    fn r_tensor() -> SparseTensor {
        // Σ a_i ⊗ b^i in a 4-dim space with a = {0,1}, b = {2,3}.
        let mut r = SparseTensor::zero_uniform(4, 0, 2);
        r.add_entry(vec![0, 2], int(1)).unwrap();
        r.add_entry(vec![1, 3], int(1)).unwrap();
        r
    }

    #[test]
    fn swap_gives_opposite() {
        let r = r_tensor();
        let op = permute(&r, &Perm::identity(0), &Perm::swap(2, 0, 1)).unwrap();
        assert_eq!(op.get(&[2, 0]), int(1));
        assert_eq!(op.get(&[3, 1]), int(1));
        assert_eq!(op.nnz(), 2);
        let back = permute(&op, &Perm::identity(0), &Perm::swap(2, 0, 1)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn compose_with_swap_operator_matches_permute() {
        let r = r_tensor();
        let p = SparseTensor::permutation(vec![4, 4], &Perm::swap(2, 0, 1)).unwrap();
        let via_compose = p.compose(&r).unwrap();
        let via_permute = permute(&r, &Perm::identity(0), &Perm::swap(2, 0, 1)).unwrap();
        assert_eq!(via_compose, via_permute);
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let r = r_tensor();
        assert!(permute(&r, &Perm::identity(1), &Perm::identity(2)).is_err());
        assert!(r.compose(&r).is_err());
        let mut t = SparseTensor::zero_uniform(2, 1, 1);
        assert!(t.add_entry(vec![0, 2], int(1)).is_err());
    }
}
