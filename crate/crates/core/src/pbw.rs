//! Universal enveloping algebras in PBW normal form.
//!
//! A word is normal when its indices are nondecreasing. For a double with basis
//! a_1..a_n, b^1..b^n this is exactly "a-block before b-block, each sorted".

use crate::error::{EkqError, Result};
use crate::kernel::{Lin, Module, Rational, Word};
use crate::lie::LieAlgebra;
use num_traits::One;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub type EnvElement = Lin<Word>;
pub type EnvTensor = Lin<Vec<Word>>;

/// U(l) for a based Lie algebra l, with memoized rewriting.
#[derive(Debug)]
pub struct Env {
    lie: LieAlgebra,
    gen_memo: RwLock<HashMap<(u8, Word), Arc<EnvElement>>>,
    mul_memo: RwLock<HashMap<(Word, Word), Arc<EnvElement>>>,
}

pub fn is_normal(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

impl Env {
    pub fn new(lie: LieAlgebra) -> Arc<Self> {
        Arc::new(Env { lie, gen_memo: RwLock::new(HashMap::new()), mul_memo: RwLock::new(HashMap::new()) })
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn one() -> EnvElement {
        Lin::basis(Vec::new())
    }

    pub fn generator(g: u8) -> EnvElement {
        Lin::basis(vec![g])
    }

    /// g · w for a normal word w.
    fn gen_times(&self, g: u8, w: &[u8]) -> Arc<EnvElement> {
        if w.is_empty() || g <= w[0] {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(g);
            v.extend_from_slice(w);
            return Arc::new(Lin::basis(v));
        }
        let key = (g, w.to_vec());
        if let Some(hit) = self.gen_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        // g w0 rest = w0 (g rest) + [g, w0] rest
        let (w0, rest) = (w[0], &w[1..]);
        let mut out = Lin::new();
        for (ww, c) in self.gen_times(g, rest).iter() {
            out.add_scaled(&self.gen_times(w0, ww), c);
        }
        for (k, c) in self.lie.bracket(g, w0) {
            out.add_scaled(&self.gen_times(*k, rest), c);
        }
        let out = Arc::new(out);
        self.gen_memo.write().unwrap().insert(key, out.clone());
        out
    }

    fn check_word(&self, w: &[u8]) -> Result<()> {
        if let Some(&bad) = w.iter().find(|&&i| i as usize >= self.dim()) {
            return Err(EkqError::Dimension(format!("index {bad} outside a {}-dimensional algebra", self.dim())));
        }
        Ok(())
    }

    /// The element of U(l) represented by an arbitrary word, in normal form.
    pub fn normal_order(&self, word: &[u8]) -> Result<EnvElement> {
        self.check_word(word)?;
        let mut acc = Self::one();
        for &g in word.iter().rev() {
            let mut next = Lin::new();
            for (w, c) in acc.iter() {
                next.add_scaled(&self.gen_times(g, w), c);
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Product of two normal words.
    pub fn mul_words(&self, u: &[u8], v: &[u8]) -> Arc<EnvElement> {
        if u.is_empty() {
            return Arc::new(Lin::basis(v.to_vec()));
        }
        if v.is_empty() || u[u.len() - 1] <= v[0] {
            let mut w = u.to_vec();
            w.extend_from_slice(v);
            return Arc::new(Lin::basis(w));
        }
        let key = (u.to_vec(), v.to_vec());
        if let Some(hit) = self.mul_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut acc = Lin::basis(v.to_vec());
        for &g in u.iter().rev() {
            let mut next = Lin::new();
            for (w, c) in acc.iter() {
                next.add_scaled(&self.gen_times(g, w), c);
            }
            acc = next;
        }
        let acc = Arc::new(acc);
        self.mul_memo.write().unwrap().insert(key, acc.clone());
        acc
    }

    pub fn multiply(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut out = Lin::new();
        for (u, a) in x {
            for (v, b) in y {
                out.add_scaled(&self.mul_words(u, v), &(a * b));
            }
        }
        out
    }

    pub fn power(&self, x: &EnvElement, k: usize) -> EnvElement {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = self.multiply(&acc, x);
        }
        acc
    }

    pub fn commutator(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        self.multiply(x, y).sub(&self.multiply(y, x))
    }

    /// Iterated standard coproduct into k tensor factors.
    pub fn delta0(&self, x: &EnvElement, k: usize) -> Result<EnvTensor> {
        if k < 2 {
            return Err(EkqError::Invalid("delta0 needs at least two tensor factors".into()));
        }
        Ok(delta0_raw(x, k))
    }

    pub fn antipode0(&self, x: &EnvElement) -> EnvElement {
        let mut out = Lin::new();
        for (w, c) in x {
            let rev: Word = w.iter().rev().copied().collect();
            let sign = if w.len() % 2 == 0 { c.clone() } else { -c };
            out.add_scaled(&self.normal_order(&rev).expect("indices already validated"), &sign);
        }
        out
    }

    pub fn counit0(x: &EnvElement) -> Rational {
        x.get(&Vec::new())
    }

    /// Componentwise product in U(l)^{⊗k}.
    pub fn tensor_mul(&self, x: &EnvTensor, y: &EnvTensor) -> EnvTensor {
        let mut out = Lin::new();
        for (tx, a) in x {
            for (ty, b) in y {
                debug_assert_eq!(tx.len(), ty.len());
                let factors: Vec<Arc<EnvElement>> = tx.iter().zip(ty).map(|(u, v)| self.mul_words(u, v)).collect();
                let refs: Vec<&EnvElement> = factors.iter().map(|f| f.as_ref()).collect();
                out.add_scaled(&outer(&refs), &(a * b));
            }
        }
        out
    }

    pub fn tensor_commutator(&self, x: &EnvTensor, y: &EnvTensor) -> EnvTensor {
        self.tensor_mul(x, y).sub(&self.tensor_mul(y, x))
    }

    /// Multiply tensor factors `i` and `i+1` together.
    pub fn contract_adjacent(&self, x: &EnvTensor, i: usize) -> EnvTensor {
        let mut out = Lin::new();
        for (t, c) in x {
            let prod = self.mul_words(&t[i], &t[i + 1]);
            for (w, d) in prod.iter() {
                let mut nt = t[..i].to_vec();
                nt.push(w.clone());
                nt.extend_from_slice(&t[i + 2..]);
                out.add_term(nt, c * d);
            }
        }
        out
    }

    /// Apply a linear endomorphism of U(l) to factor `i`.
    pub fn map_factor(x: &EnvTensor, i: usize, mut f: impl FnMut(&Word) -> EnvElement) -> EnvTensor {
        let mut cache: HashMap<Word, EnvElement> = HashMap::new();
        let mut out = Lin::new();
        for (t, c) in x {
            let img = cache.entry(t[i].clone()).or_insert_with(|| f(&t[i]));
            for (w, d) in img.iter() {
                let mut nt = t.clone();
                nt[i] = w.clone();
                out.add_term(nt, c * d);
            }
        }
        out
    }

    /// Apply Δ₀ to factor `i`, increasing the arity by one.
    pub fn delta0_at(x: &EnvTensor, i: usize) -> EnvTensor {
        let mut out = Lin::new();
        for (t, c) in x {
            for (pair, d) in delta0_raw(&Lin::basis(t[i].clone()), 2).iter() {
                let mut nt = t[..i].to_vec();
                nt.extend(pair.iter().cloned());
                nt.extend_from_slice(&t[i + 1..]);
                out.add_term(nt, c * d);
            }
        }
        out
    }

    /// Apply ε₀ to factor `i`, decreasing the arity by one.
    pub fn counit_at(x: &EnvTensor, i: usize) -> EnvTensor {
        let mut out = Lin::new();
        for (t, c) in x {
            if t[i].is_empty() {
                let mut nt = t.clone();
                nt.remove(i);
                out.add_term(nt, c.clone());
            }
        }
        out
    }
}

/// Coproduct of normal words: distribute letters over k slots (order-preserving,
/// so each slot stays normal).
fn delta0_raw(x: &EnvElement, k: usize) -> EnvTensor {
    let mut out = Lin::new();
    for (w, c) in x {
        let mut partial: Vec<Vec<Word>> = vec![vec![Vec::new(); k]];
        for &g in w {
            let mut next = Vec::with_capacity(partial.len() * k);
            for p in &partial {
                for slot in 0..k {
                    let mut q = p.clone();
                    q[slot].push(g);
                    next.push(q);
                }
            }
            partial = next;
        }
        for p in partial {
            out.add_term(p, c.clone());
        }
    }
    out
}

/// x_1 ⊗ ... ⊗ x_k as an element of the tensor power.
pub fn outer(factors: &[&EnvElement]) -> EnvTensor {
    let mut acc: Vec<(Vec<Word>, Rational)> = vec![(Vec::new(), Rational::one())];
    for f in factors {
        let mut next = Vec::with_capacity(acc.len() * f.len());
        for (t, c) in &acc {
            for (w, d) in f.iter() {
                let mut nt = t.clone();
                nt.push(w.clone());
                next.push((nt, c * d));
            }
        }
        acc = next;
    }
    Lin::from_terms(acc)
}

pub fn tensor_one(k: usize) -> EnvTensor {
    Lin::basis(vec![Vec::new(); k])
}

/// Reorder tensor factors: factor i moves to position σ(i).
pub fn permute_factors(x: &EnvTensor, sigma: &crate::kernel::Perm) -> EnvTensor {
    x.map_keys(|t| sigma.act(t))
}

pub fn opposite(x: &EnvTensor) -> EnvTensor {
    x.map_keys(|t| t.iter().rev().cloned().collect())
}

/// Place a tensor of arity m into arity k at the given distinct positions, 1 elsewhere.
pub fn embed(x: &EnvTensor, positions: &[usize], k: usize) -> EnvTensor {
    x.map_keys(|t| {
        let mut nt = vec![Vec::new(); k];
        for (w, &p) in t.iter().zip(positions) {
            nt[p] = w.clone();
        }
        nt
    })
}

/// Maximal word length over all factors.
pub fn tensor_degree(x: &EnvTensor) -> usize {
    x.keys().map(|t| t.iter().map(|w| w.len()).sum::<usize>()).max().unwrap_or(0)
}

pub fn degree(x: &EnvElement) -> usize {
    x.keys().map(|w| w.len()).max().unwrap_or(0)
}

/// All normal words of length <= d over the given letters (sorted ascending).
pub fn normal_words(letters: &[u8], d: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..d {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in letters {
                if w.last().map_or(true, |&l| l <= g) {
                    let mut v = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Δ₀ of a single normal word into k factors.
pub fn delta0_words(w: &[u8], k: usize) -> EnvTensor {
    delta0_raw(&Lin::basis(w.to_vec()), k)
}
