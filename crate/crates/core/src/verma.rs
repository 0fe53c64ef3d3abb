//! Verma modules M₊, M₋, the truncated dual M₊*, multi-slot tensor vectors, the
//! identification φ: U(g) → M₊⊗M₋, and the intertwiners ψ_x.
//!
//! M₊ = U(g)⊗_{U(g₊)} k is spanned by b-words applied to 1₊ (a_i 1₊ = 0); M₋ is the
//! mirror image spanned by a-words. A functional on M₊ is stored by its values on
//! b-words of length at most `bound`, i.e. as a combination of dual basis vectors ρ_β.

use crate::error::{EkqError, Result};
use crate::kernel::{Lin, Module, Rational, Word};
use crate::manin::DoubleAlgebra;
use crate::pbw::{normal_words, Env, EnvElement, EnvTensor};
use num_traits::One;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

pub type VermaVector = Lin<Word>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Slot {
    /// M₊, spanned by b-words.
    Plus,
    /// M₋, spanned by a-words.
    Minus,
    /// M₊* truncated at the shared dual bound.
    PlusDual,
    /// U(g) with left multiplication.
    Env,
}

/// A vector in a tensor product of slots. All dual slots share one bound; any term whose
/// dual word is longer than it is dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotVec {
    pub kinds: Vec<Slot>,
    pub bound: usize,
    pub terms: EnvTensor,
}

impl SlotVec {
    pub fn new(kinds: Vec<Slot>, bound: usize) -> Self {
        SlotVec { kinds, bound, terms: Lin::new() }
    }

    /// The vector 1 ⊗ ... ⊗ 1 (highest-weight vectors, 1₊* in dual slots).
    pub fn vacuum(kinds: Vec<Slot>, bound: usize) -> Self {
        let k = kinds.len();
        SlotVec { kinds, bound, terms: Lin::basis(vec![Vec::new(); k]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn has_dual(&self) -> bool {
        self.kinds.contains(&Slot::PlusDual)
    }

    pub fn truncated(&self, bound: usize) -> SlotVec {
        let kinds = self.kinds.clone();
        let terms = self.terms.filter(|t| t.iter().zip(&kinds).all(|(w, k)| *k != Slot::PlusDual || w.len() <= bound));
        SlotVec { kinds, bound, terms }
    }

    pub fn plus(&self, other: &SlotVec) -> Result<SlotVec> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn add_scaled(&self, other: &SlotVec, c: &Rational) -> Result<SlotVec> {
        if self.kinds != other.kinds {
            return Err(EkqError::Internal(format!("slot kinds differ: {:?} vs {:?}", self.kinds, other.kinds)));
        }
        let b = self.bound.min(other.bound);
        let mut out = self.truncated(b);
        out.terms.add_scaled(&other.truncated(b).terms, c);
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> SlotVec {
        SlotVec { kinds: self.kinds.clone(), bound: self.bound, terms: self.terms.scaled(c) }
    }

    /// Reorder slots: slot i moves to position σ(i).
    pub fn permuted(&self, sigma: &crate::kernel::Perm) -> SlotVec {
        SlotVec { kinds: sigma.act(&self.kinds), bound: self.bound, terms: self.terms.map_keys(|t| sigma.act(t)) }
    }

    /// Evaluate dual slot `i` at 1₊, dropping it.
    pub fn extract_vacuum(&self, i: usize) -> Result<SlotVec> {
        if self.kinds[i] != Slot::PlusDual {
            return Err(EkqError::Internal(format!("slot {i} is not a dual slot")));
        }
        let mut kinds = self.kinds.clone();
        kinds.remove(i);
        let mut terms = Lin::new();
        for (t, c) in &self.terms {
            if t[i].is_empty() {
                let mut nt = t.clone();
                nt.remove(i);
                terms.add_term(nt, c.clone());
            }
        }
        Ok(SlotVec { kinds, bound: self.bound, terms })
    }
}

/// A functional on M₊ known on b-words of length ≤ bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualVector {
    pub bound: usize,
    pub values: Lin<Word>,
}

impl DualVector {
    pub fn vacuum(bound: usize) -> Self {
        DualVector { bound, values: Lin::basis(Vec::new()) }
    }

    /// ρ_β, the dual basis functional to β1₊.
    pub fn rho(word: Word, bound: usize) -> Self {
        DualVector { bound, values: Lin::basis(word) }
    }

    pub fn eval(&self, word: &Word) -> Result<Rational> {
        if word.len() > self.bound {
            return Err(EkqError::Bound(format!("functional known only up to length {}", self.bound)));
        }
        Ok(self.values.get(word))
    }
}

type WordMap = HashMap<Word, Lin<Word>>;

/// Module actions and identifications for the Verma modules of one double.
#[derive(Debug)]
pub struct Verma {
    env: Arc<Env>,
    n: usize,
    plus_memo: RwLock<HashMap<(u8, Word), Arc<Lin<Word>>>>,
    minus_memo: RwLock<HashMap<(u8, Word), Arc<Lin<Word>>>>,
    dual_memo: RwLock<HashMap<(u8, usize), Arc<WordMap>>>,
    phi_memo: RwLock<HashMap<Word, Arc<EnvTensor>>>,
    phi_inv_memo: RwLock<HashMap<Vec<Word>, Arc<EnvElement>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivot {
    First,
    Last,
}

impl Verma {
    pub fn new(d: &DoubleAlgebra) -> Arc<Self> {
        Arc::new(Verma {
            env: d.env().clone(),
            n: d.n(),
            plus_memo: RwLock::default(),
            minus_memo: RwLock::default(),
            dual_memo: RwLock::default(),
            phi_memo: RwLock::default(),
            phi_inv_memo: RwLock::default(),
        })
    }

    pub fn env(&self) -> &Arc<Env> {
        &self.env
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn is_a(&self, g: u8) -> bool {
        (g as usize) < self.n
    }

    pub fn a_letters(&self) -> Vec<u8> {
        (0..self.n as u8).collect()
    }

    pub fn b_letters(&self) -> Vec<u8> {
        (self.n as u8..2 * self.n as u8).collect()
    }

    fn check_letter(&self, g: u8) -> Result<()> {
        if g as usize >= 2 * self.n {
            return Err(EkqError::Dimension(format!("generator index {g} outside the double")));
        }
        Ok(())
    }

    /// g · (β 1₊) for a normal b-word β.
    pub fn act_plus(&self, g: u8, beta: &[u8]) -> Arc<Lin<Word>> {
        if !self.is_a(g) {
            return self.env.mul_words(&[g], beta);
        }
        if beta.is_empty() {
            return Arc::new(Lin::new());
        }
        let key = (g, beta.to_vec());
        if let Some(hit) = self.plus_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        // a b0 β' 1₊ = b0 (a β' 1₊) + [a, b0] β' 1₊
        let (b0, rest) = (beta[0], &beta[1..]);
        let mut out = Lin::new();
        for (w, c) in self.act_plus(g, rest).iter() {
            out.add_scaled(&self.env.mul_words(&[b0], w), c);
        }
        for (k, c) in self.env.lie().bracket(g, b0) {
            out.add_scaled(&self.act_plus(*k, rest), c);
        }
        let out = Arc::new(out);
        self.plus_memo.write().unwrap().insert(key, out.clone());
        out
    }

    /// g · (α 1₋) for a normal a-word α.
    pub fn act_minus(&self, g: u8, alpha: &[u8]) -> Arc<Lin<Word>> {
        if self.is_a(g) {
            return self.env.mul_words(&[g], alpha);
        }
        if alpha.is_empty() {
            return Arc::new(Lin::new());
        }
        let key = (g, alpha.to_vec());
        if let Some(hit) = self.minus_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let (a0, rest) = (alpha[0], &alpha[1..]);
        let mut out = Lin::new();
        for (w, c) in self.act_minus(g, rest).iter() {
            out.add_scaled(&self.env.mul_words(&[a0], w), c);
        }
        for (k, c) in self.env.lie().bracket(g, a0) {
            out.add_scaled(&self.act_minus(*k, rest), c);
        }
        let out = Arc::new(out);
        self.minus_memo.write().unwrap().insert(key, out.clone());
        out
    }

    pub fn act_plus_vec(&self, g: u8, v: &VermaVector) -> VermaVector {
        let mut out = Lin::new();
        for (w, c) in v {
            out.add_scaled(&self.act_plus(g, w), c);
        }
        out
    }

    pub fn act_minus_vec(&self, g: u8, v: &VermaVector) -> VermaVector {
        let mut out = Lin::new();
        for (w, c) in v {
            out.add_scaled(&self.act_minus(g, w), c);
        }
        out
    }

    /// x · v for x ∈ U(g) acting on M₊ or M₋.
    pub fn act(&self, x: &EnvElement, v: &VermaVector, plus: bool) -> Result<VermaVector> {
        let mut out = Lin::new();
        for (w, c) in x {
            let mut acc = v.clone();
            for &g in w.iter().rev() {
                self.check_letter(g)?;
                acc = if plus { self.act_plus_vec(g, &acc) } else { self.act_minus_vec(g, &acc) };
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    /// ρ_β ↦ g·ρ_β restricted to words of length ≤ target: (g·f)(γ) = −f(g·γ1₊).
    fn dual_table(&self, g: u8, target: usize) -> Arc<WordMap> {
        let key = (g, target);
        if let Some(hit) = self.dual_memo.read().unwrap().get(&key) {
            return hit.clone();
        }
        let mut table: WordMap = HashMap::new();
        for gamma in normal_words(&self.b_letters(), target) {
            for (beta, c) in self.act_plus(g, &gamma).iter() {
                table.entry(beta.clone()).or_default().add_term(gamma.clone(), -c.clone());
            }
        }
        let table = Arc::new(table);
        self.dual_memo.write().unwrap().insert(key, table.clone());
        table
    }

    pub fn dual_act(&self, g: u8, f: &DualVector) -> Result<DualVector> {
        self.check_letter(g)?;
        let target = if self.is_a(g) {
            f.bound
        } else {
            f.bound.checked_sub(1).ok_or_else(|| EkqError::Bound("b-action on a functional with bound 0".into()))?
        };
        let table = self.dual_table(g, target);
        let mut values = Lin::new();
        for (beta, c) in &f.values {
            if let Some(img) = table.get(beta) {
                values.add_scaled(img, c);
            }
        }
        Ok(DualVector { bound: target, values })
    }

    fn act_in_kind(&self, kind: Slot, g: u8, w: &[u8], target: usize) -> Lin<Word> {
        match kind {
            Slot::Plus => (*self.act_plus(g, w)).clone(),
            Slot::Minus => (*self.act_minus(g, w)).clone(),
            Slot::Env => (*self.env.mul_words(&[g], w)).clone(),
            Slot::PlusDual => self.dual_table(g, target).get(w).cloned().unwrap_or_default(),
        }
    }

    fn act_terms(&self, kinds: &[Slot], terms: &EnvTensor, slot: usize, g: u8, target: usize) -> EnvTensor {
        let mut cache: HashMap<&Word, Lin<Word>> = HashMap::new();
        let mut out = Lin::new();
        for (t, c) in terms {
            let img = cache.entry(&t[slot]).or_insert_with(|| self.act_in_kind(kinds[slot], g, &t[slot], target));
            for (w, d) in img.iter() {
                let mut nt = t.clone();
                nt[slot] = w.clone();
                out.add_term(nt, c * d);
            }
        }
        out
    }

    fn lowered(&self, v: &SlotVec, touches_dual: bool) -> Result<usize> {
        if touches_dual {
            v.bound.checked_sub(1).ok_or_else(|| EkqError::Bound("dual bound exhausted; raise --degree-bound".into()))
        } else {
            Ok(v.bound)
        }
    }

    /// Generator g acting in a single slot.
    pub fn slot_act(&self, v: &SlotVec, slot: usize, g: u8) -> Result<SlotVec> {
        self.check_letter(g)?;
        let dual = v.kinds[slot] == Slot::PlusDual;
        let target = self.lowered(v, dual && !self.is_a(g))?;
        let terms = self.act_terms(&v.kinds, &v.terms, slot, g, target);
        Ok(SlotVec { kinds: v.kinds.clone(), bound: v.bound, terms }.truncated(target))
    }

    /// Generator g acting diagonally (through the iterated coproduct).
    pub fn diag_act(&self, v: &SlotVec, g: u8) -> Result<SlotVec> {
        self.check_letter(g)?;
        let target = self.lowered(v, v.has_dual() && !self.is_a(g))?;
        let mut terms = Lin::new();
        for s in 0..v.kinds.len() {
            terms.add_assign(&self.act_terms(&v.kinds, &v.terms, s, g, target));
        }
        Ok(SlotVec { kinds: v.kinds.clone(), bound: v.bound, terms }.truncated(target))
    }

    /// x ∈ U(g) acting diagonally.
    pub fn diag_act_element(&self, v: &SlotVec, x: &EnvElement) -> Result<SlotVec> {
        let mut out: Option<SlotVec> = None;
        for (w, c) in x {
            let mut acc = v.clone();
            for &g in w.iter().rev() {
                acc = self.diag_act(&acc, g)?;
            }
            let acc = acc.scaled(c);
            out = Some(match out {
                None => acc,
                Some(o) => o.plus(&acc)?,
            });
        }
        Ok(out.unwrap_or_else(|| SlotVec::new(v.kinds.clone(), v.bound)))
    }

    /// Ω_{ij} = Σ_k (a_k)_i (b^k)_j + (b^k)_i (a_k)_j.
    pub fn omega(&self, v: &SlotVec, i: usize, j: usize) -> Result<SlotVec> {
        if i == j || i >= v.kinds.len() || j >= v.kinds.len() {
            return Err(EkqError::Internal(format!("bad Casimir slots ({i}, {j})")));
        }
        let touches = v.kinds[i] == Slot::PlusDual || v.kinds[j] == Slot::PlusDual;
        let target = self.lowered(v, touches)?;
        let mut terms = Lin::new();
        for k in 0..self.n as u8 {
            let bk = k + self.n as u8;
            let x = self.act_terms(&v.kinds, &v.terms, i, k, target);
            terms.add_assign(&self.act_terms(&v.kinds, &x, j, bk, target));
            let y = self.act_terms(&v.kinds, &v.terms, i, bk, target);
            terms.add_assign(&self.act_terms(&v.kinds, &y, j, k, target));
        }
        Ok(SlotVec { kinds: v.kinds.clone(), bound: v.bound, terms }.truncated(target))
    }

    /// φ(w) = w·(1₊⊗1₋) as a two-slot tensor (b-word, a-word).
    pub fn phi_word(&self, w: &[u8]) -> Arc<EnvTensor> {
        if w.is_empty() {
            return Arc::new(Lin::basis(vec![Vec::new(), Vec::new()]));
        }
        if let Some(hit) = self.phi_memo.read().unwrap().get(w) {
            return hit.clone();
        }
        let inner = self.phi_word(&w[1..]);
        let kinds = [Slot::Plus, Slot::Minus];
        let g = w[0];
        let mut out = self.act_terms(&kinds, &inner, 0, g, 0);
        out.add_assign(&self.act_terms(&kinds, &inner, 1, g, 0));
        let out = Arc::new(out);
        self.phi_memo.write().unwrap().insert(w.to_vec(), out.clone());
        out
    }

    pub fn phi_forward(&self, x: &EnvElement) -> Result<EnvTensor> {
        let mut out = Lin::new();
        for (w, c) in x {
            for &g in w {
                self.check_letter(g)?;
            }
            out.add_scaled(&self.phi_word(w), c);
        }
        Ok(out)
    }

    /// φ⁻¹(β1₊ ⊗ α1₋). The top-degree part of φ(αβ) is exactly β⊗α, so peel it off.
    fn phi_inverse_basis(&self, key: &[Word]) -> Arc<EnvElement> {
        if let Some(hit) = self.phi_inv_memo.read().unwrap().get(key) {
            return hit.clone();
        }
        let (beta, alpha) = (&key[0], &key[1]);
        let mut word = alpha.clone();
        word.extend_from_slice(beta);
        let mut rest = (*self.phi_word(&word)).clone();
        rest.add_term(key.to_vec(), -Rational::one());
        let mut out = Lin::basis(word);
        for (t, c) in rest.iter() {
            out.add_scaled(&self.phi_inverse_basis(t), &-c.clone());
        }
        let out = Arc::new(out);
        self.phi_inv_memo.write().unwrap().insert(key.to_vec(), out.clone());
        out
    }

    pub fn phi_inverse(&self, v: &EnvTensor) -> Result<EnvElement> {
        let mut out = Lin::new();
        for (t, c) in v {
            if t.len() != 2 || !t[0].iter().all(|&g| !self.is_a(g) && (g as usize) < 2 * self.n) || !t[1].iter().all(|&g| self.is_a(g)) {
                return Err(EkqError::Invalid(format!("{t:?} is not a basis vector of M₊⊗M₋")));
            }
            out.add_scaled(&self.phi_inverse_basis(t), c);
        }
        Ok(out)
    }

    fn check_in_ua(&self, x: &EnvElement) -> Result<()> {
        for w in x.keys() {
            if !w.iter().all(|&g| self.is_a(g)) {
                return Err(EkqError::Invalid("expected an element of U(a)".into()));
            }
        }
        Ok(())
    }

    /// ψ_x 1₋ = Σ_β ρ_β ⊗ F(β) in M₊*⊗M₋, solved degree by degree from b^j·ψ_x 1₋ = 0.
    pub fn solve_psi(&self, x: &EnvElement, bound: usize, pivot: Pivot) -> Result<SlotVec> {
        self.check_in_ua(x)?;
        let mut f: BTreeMap<Word, VermaVector> = BTreeMap::new();
        f.insert(Vec::new(), x.clone());
        let words = normal_words(&self.b_letters(), bound);
        for beta in words.iter().filter(|w| !w.is_empty()) {
            let (j, w) = match pivot {
                Pivot::First => (beta[0], beta[1..].to_vec()),
                Pivot::Last => (beta[beta.len() - 1], beta[..beta.len() - 1].to_vec()),
            };
            // F(b^j · w) = b^j · F(w), and b^j·w = β + (shorter words) in U(b).
            let expand = self.env.mul_words(&[j], &w);
            if expand.get(beta) != Rational::one() {
                return Err(EkqError::Internal(format!("pivot expansion of {beta:?} has no unit leading term")));
            }
            let mut val = self.act_minus_vec(j, &f[&w]);
            for (gamma, c) in expand.iter() {
                if gamma != beta {
                    let fg = f.get(gamma).ok_or_else(|| EkqError::Internal(format!("{gamma:?} solved out of order")))?;
                    val.add_scaled(fg, &-c.clone());
                }
            }
            f.insert(beta.clone(), val);
        }
        let mut terms = Lin::new();
        for (beta, v) in f {
            for (alpha, c) in &v {
                terms.add_term(vec![beta.clone(), alpha.clone()], c.clone());
            }
        }
        Ok(SlotVec { kinds: vec![Slot::PlusDual, Slot::Minus], bound, terms })
    }

    /// The same vector in closed form: F(β) = β·x1₋.
    pub fn psi_closed_form(&self, x: &EnvElement, bound: usize) -> Result<SlotVec> {
        self.check_in_ua(x)?;
        let mut terms = Lin::new();
        for beta in normal_words(&self.b_letters(), bound) {
            let v = self.act(&Lin::basis(beta.clone()), x, false)?;
            for (alpha, c) in &v {
                terms.add_term(vec![beta.clone(), alpha.clone()], c.clone());
            }
        }
        Ok(SlotVec { kinds: vec![Slot::PlusDual, Slot::Minus], bound, terms })
    }

    /// b^j·v for every j; all must vanish for a genuine ψ_x 1₋.
    pub fn invariance_residuals(&self, v: &SlotVec) -> Result<Vec<SlotVec>> {
        self.b_letters().into_iter().map(|g| self.diag_act(v, g)).collect()
    }

    /// ψ(w1₋) = w·ψ(1₋) for an a-word w, by the intertwining property.
    pub fn psi_on(&self, psi: &SlotVec, w: &[u8]) -> Result<SlotVec> {
        if !w.iter().all(|&g| self.is_a(g)) {
            return Err(EkqError::Invalid("ψ is applied to M₋ vectors, i.e. a-words".into()));
        }
        let mut acc = psi.clone();
        for &g in w.iter().rev() {
            acc = self.diag_act(&acc, g)?;
        }
        Ok(acc)
    }
}

/// i₋: M₋ → M₋⊗M₋, the coproduct of U(g₊) moved to M₋.
pub fn i_minus(v: &VermaVector) -> EnvTensor {
    let mut out = Lin::new();
    for (w, c) in v {
        for (t, d) in &crate::pbw::delta0_words(w, 2) {
            out.add_term(t.clone(), c * d);
        }
    }
    out
}

/// i₊*: pull a functional on M₊⊗M₊ back along i₊. `t` is a combination of ρ_β ⊗ ρ_γ.
pub fn i_plus_star(t: &EnvTensor, b_letters: &[u8], bound: usize) -> DualVector {
    let mut values = Lin::new();
    for gamma in normal_words(b_letters, bound) {
        let mut acc = Rational::from_integer(0.into());
        for (pair, d) in &crate::pbw::delta0_words(&gamma, 2) {
            acc += t.get(pair) * d;
        }
        values.add_term(gamma, acc);
    }
    DualVector { bound, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{abelian, axb};
    use crate::kernel::int;
    use crate::manin::build_double;

    #[test]
    fn highest_weight_relations() {
        let d = build_double(&axb()).unwrap();
        let v = Verma::new(&d);
        assert!(v.act_plus(0, &[]).is_empty());
        assert!(v.act_minus(2, &[]).is_empty());
        // a2 · b² 1₊ = (−a1 + b¹) 1₊ = b¹ 1₊
        assert_eq!(*v.act_plus(1, &[3]), Lin::basis(vec![2]));
    }

    #[test]
    fn rho_sign_anchor() {
        let d = build_double(&axb()).unwrap();
        let v = Verma::new(&d);
        for i in 0..2u8 {
            for j in 0..2u8 {
                let f = v.dual_act(2 + j, &DualVector::rho(vec![2 + i], 1)).unwrap();
                let want = if i == j { int(-1) } else { int(0) };
                assert_eq!(f.eval(&vec![]).unwrap(), want);
            }
        }
    }

    #[test]
    fn psi_degree_one_matches_closed_form() {
        let d = build_double(&axb()).unwrap();
        let v = Verma::new(&d);
        let psi = v.solve_psi(&Lin::basis(vec![1]), 1, Pivot::First).unwrap();
        // 1₊*⊗a2 − (ρ1⊗a2 − ρ2⊗a1)
        let want = Lin::from_terms([
            (vec![vec![], vec![1]], int(1)),
            (vec![vec![2], vec![1]], int(-1)),
            (vec![vec![3], vec![0]], int(1)),
        ]);
        assert_eq!(psi.terms, want);
    }

    #[test]
    fn phi_of_generators_on_abelian_double() {
        let d = build_double(&abelian(2)).unwrap();
        let v = Verma::new(&d);
        assert_eq!(*v.phi_word(&[0]), Lin::basis(vec![vec![], vec![0]]));
        assert_eq!(*v.phi_word(&[2]), Lin::basis(vec![vec![2], vec![]]));
    }
}
