//! Quantized structure maps modulo h³: the twist J, the Hopf structure and R-matrix on
//! U_h(g), the product and coproduct on U_h(a) computed through the intertwiners ψ, and
//! the endomorphism picture m± with the polarization of R.

use crate::assoc::{apply_chain, apply_hop, exp_omega, phi_op, singles, HOp, Op, VecSeries};
use crate::bialg::{BialgebraHom, LieBialgebra};
use crate::error::{EkqError, Result};
use crate::kernel::{format_rational, rat, series_exp, series_inverse, series_mul, HSeries, Lin, Module, Perm, Word, ORDER};
use crate::manin::{build_double, canonical_r, omega, DoubleAlgebra};
use crate::par::par_map;
use crate::pbw::{embed, normal_words, opposite, outer, tensor_one, Env, EnvElement, EnvTensor};
use crate::report::Check;
use crate::verma::{Pivot, Slot, SlotVec, Verma, VermaVector};
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

pub type TSeries = HSeries<EnvTensor>;
pub type ESeries = HSeries<EnvElement>;

pub fn tconst(x: EnvTensor) -> TSeries {
    HSeries::constant(x, ORDER)
}

pub fn econst(x: EnvElement) -> ESeries {
    HSeries::constant(x, ORDER)
}

pub fn tmul(env: &Env, a: &TSeries, b: &TSeries) -> TSeries {
    series_mul(a, b, |x, y| env.tensor_mul(x, y)).expect("equal orders")
}

pub fn emul(env: &Env, a: &ESeries, b: &ESeries) -> ESeries {
    series_mul(a, b, |x, y| env.multiply(x, y)).expect("equal orders")
}

fn word_label(names: &[String], w: &[u8]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|&g| names[g as usize].as_str()).collect::<Vec<_>>().join("·")
    }
}

pub fn show_element(names: &[String], x: &EnvElement) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter().map(|(w, c)| format!("{} {}", format_rational(c), word_label(names, w))).collect::<Vec<_>>().join(" + ")
}

pub fn show_tensor(names: &[String], x: &EnvTensor) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|(t, c)| format!("{} {}", format_rational(c), t.iter().map(|w| word_label(names, w)).collect::<Vec<_>>().join("⊗")))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// First nonzero coefficient of a difference of series, rendered.
pub fn series_witness<C: Module>(d: &HSeries<C>, show: impl Fn(&C) -> String) -> Option<String> {
    d.valuation().map(|k| format!("h^{k}: {}", show(d.coeff(k))))
}

/// A Hopf algebra structure on U(l)[[h]] obtained by conjugating Δ₀ with a twist J.
#[derive(Debug)]
pub struct TwistedQuantization {
    pub env: Arc<Env>,
    pub j: TSeries,
    pub jinv: TSeries,
    pub r: EnvTensor,
    pub omega: EnvTensor,
    pub rmat: TSeries,
    pub q: ESeries,
    pub qinv: ESeries,
}

impl TwistedQuantization {
    pub fn new(env: Arc<Env>, j: TSeries, r: EnvTensor, omega: EnvTensor) -> Result<Self> {
        let one = tensor_one(2);
        let jinv = series_inverse(&j, &one, |x, y| env.tensor_mul(x, y))?;
        let jop = j.map(opposite);
        let jop_inv = series_inverse(&jop, &one, |x, y| env.tensor_mul(x, y))?;
        let e = series_exp(&omega.scaled(&rat(1, 2)), &one, ORDER, |x, y| env.tensor_mul(x, y));
        let rmat = tmul(&env, &tmul(&env, &jop_inv, &e), &j);
        // Q = Σ S₀(x_j) y_j
        let q = j.map(|c| {
            let mut out = Lin::new();
            for (t, k) in c {
                out.add_scaled(&env.multiply(&env.antipode0(&Lin::basis(t[0].clone())), &Lin::basis(t[1].clone())), k);
            }
            out
        });
        let qinv = series_inverse(&q, &Env::one(), |x, y| env.multiply(x, y))?;
        Ok(TwistedQuantization { env, j, jinv, r, omega, rmat, q, qinv })
    }

    fn names(&self) -> &[String] {
        self.env.lie().names()
    }

    pub fn coproduct(&self, x: &EnvElement) -> Result<TSeries> {
        let d0 = tconst(self.env.delta0(x, 2)?);
        Ok(tmul(&self.env, &tmul(&self.env, &self.jinv, &d0), &self.j))
    }

    /// Δ applied to tensor factor `i` of an arity-k series.
    pub fn coproduct_at(&self, t: &TSeries, i: usize, k: usize) -> TSeries {
        let jk = self.j.map(|c| embed(c, &[i, i + 1], k + 1));
        let jinvk = self.jinv.map(|c| embed(c, &[i, i + 1], k + 1));
        let d0 = t.map(|c| Env::delta0_at(c, i));
        tmul(&self.env, &tmul(&self.env, &jinvk, &d0), &jk)
    }

    pub fn antipode(&self, x: &EnvElement) -> ESeries {
        let s0 = econst(self.env.antipode0(x));
        emul(&self.env, &emul(&self.env, &self.qinv, &s0), &self.q)
    }

    /// m(S⊗1) or m(1⊗S) applied to a two-factor series.
    fn antipode_contract(&self, t: &TSeries, left: bool) -> ESeries {
        let mut out = ESeries::zero(ORDER);
        for k in 0..ORDER {
            for (pair, c) in t.coeff(k) {
                let (u, v) = (Lin::basis(pair[0].clone()), Lin::basis(pair[1].clone()));
                let prod = if left {
                    emul(&self.env, &self.antipode(&u), &econst(v))
                } else {
                    emul(&self.env, &econst(u), &self.antipode(&v))
                };
                out = out.add_scaled(&prod.shift(k), c);
            }
        }
        out
    }

    /// Coassociativity, counit, multiplicativity and antipode axioms on the given words.
    pub fn hopf_suite(&self, words: &[Word], pairs: &[(Word, Word)]) -> Result<Vec<Check>> {
        let names = self.names().to_vec();
        let show_t = |x: &EnvTensor| show_tensor(&names, x);
        let show_e = |x: &EnvElement| show_element(&names, x);
        let deltas: Vec<Result<TSeries>> = par_map(words, |w| self.coproduct(&Lin::basis(w.clone())));
        let mut memo: HashMap<&Word, &TSeries> = HashMap::new();
        for (w, d) in words.iter().zip(&deltas) {
            if let Ok(d) = d {
                memo.insert(w, d);
            }
        }
        let delta = |w: &Word| -> Result<TSeries> {
            match memo.get(w) {
                Some(d) => Ok((*d).clone()),
                None => self.coproduct(&Lin::basis(w.clone())),
            }
        };
        let per_word = par_map(words, |w| -> Result<[Option<String>; 5]> {
            let x = Lin::basis(w.clone());
            let dx = delta(w)?;
            let left = self.coproduct_at(&dx, 0, 2);
            let right = self.coproduct_at(&dx, 1, 2);
            let coassoc = series_witness(&left.sub(&right), show_t);
            let xs = econst(x.clone());
            let c1 = series_witness(&dx.map(|c| Env::counit_at(c, 0).map_keys(|t| t[0].clone())).sub(&xs), show_e);
            let c2 = series_witness(&dx.map(|c| Env::counit_at(c, 1).map_keys(|t| t[0].clone())).sub(&xs), show_e);
            let eps = econst(Lin::term(Vec::new(), Env::counit0(&x)));
            let s1 = series_witness(&self.antipode_contract(&dx, true).sub(&eps), show_e);
            let s2 = series_witness(&self.antipode_contract(&dx, false).sub(&eps), show_e);
            Ok([coassoc, c1, c2, s1, s2])
        });
        let per_pair = par_map(pairs, |(u, v)| -> Result<Option<String>> {
            let x = Lin::basis(u.clone());
            let y = Lin::basis(v.clone());
            let lhs = self.coproduct(&self.env.multiply(&x, &y))?;
            let rhs = tmul(&self.env, &delta(u)?, &delta(v)?);
            Ok(series_witness(&lhs.sub(&rhs), show_t).map(|s| format!("{} {}: {s}", word_label(&names, u), word_label(&names, v))))
        });
        let labels = [
            ("coassociativity", "(Δ⊗1)Δ = (1⊗Δ)Δ"),
            ("left-counit", "(ε⊗1)Δ = id"),
            ("right-counit", "(1⊗ε)Δ = id"),
            ("left-antipode", "m(S⊗1)Δ = ηε with S = Q⁻¹S₀Q"),
            ("right-antipode", "m(1⊗S)Δ = ηε with S = Q⁻¹S₀Q"),
        ];
        let mut first: [Option<String>; 5] = Default::default();
        for (w, r) in words.iter().zip(per_word) {
            let r = r?;
            for (slot, item) in first.iter_mut().zip(r) {
                if slot.is_none() {
                    *slot = item.map(|s| format!("{}: {s}", word_label(&names, w)));
                }
            }
        }
        let mut checks: Vec<Check> = labels.iter().zip(first).map(|((n, a), r)| Check::from_residual(*n, *a, r)).collect();
        let mut mult = None;
        for r in per_pair {
            if let Some(s) = r? {
                mult.get_or_insert(s);
            }
        }
        checks.push(Check::from_residual("multiplicativity", "Δ(xy) = Δ(x)Δ(y)", mult));
        Ok(checks)
    }

    /// R-matrix identities, the first-order forms of J and R, and (ε⊗1)R = 1.
    pub fn quasitriangular_suite(&self, words: &[Word]) -> Result<Vec<Check>> {
        let env = &self.env;
        let names = self.names().to_vec();
        let show_t = |x: &EnvTensor| show_tensor(&names, x);
        let r = &self.rmat;
        let per_word = par_map(words, |w| -> Result<Option<String>> {
            let dx = self.coproduct(&Lin::basis(w.clone()))?;
            let lhs = tmul(env, r, &dx);
            let rhs = tmul(env, &dx.map(opposite), r);
            Ok(series_witness(&lhs.sub(&rhs), show_t).map(|s| format!("{}: {s}", word_label(&names, w))))
        });
        let mut inter = None;
        for x in per_word {
            if let Some(s) = x? {
                inter.get_or_insert(s);
            }
        }
        let r13 = r.map(|c| embed(c, &[0, 2], 3));
        let r23 = r.map(|c| embed(c, &[1, 2], 3));
        let r12 = r.map(|c| embed(c, &[0, 1], 3));
        let d1 = self.coproduct_at(r, 0, 2);
        let d2 = self.coproduct_at(r, 1, 2);
        let q1 = series_witness(&d1.sub(&tmul(env, &r13, &r23)), show_t);
        let q2 = series_witness(&d2.sub(&tmul(env, &r13, &r12)), show_t);
        let qybe_l = tmul(env, &tmul(env, &r12, &r13), &r23);
        let qybe_r = tmul(env, &tmul(env, &r23, &r13), &r12);
        let qybe = series_witness(&qybe_l.sub(&qybe_r), show_t);
        let one = tensor_one(2);
        let r_first = if r.coeff(0) != &one || r.coeff(1) != &self.r { Some(format!("h^0: {}, h^1: {}", show_t(r.coeff(0)), show_t(r.coeff(1)))) } else { None };
        let half = self.r.scaled(&rat(1, 2));
        let j_first = if self.j.coeff(0) != &one || self.j.coeff(1) != &half { Some(format!("h^0: {}, h^1: {}", show_t(self.j.coeff(0)), show_t(self.j.coeff(1)))) } else { None };
        let counit = r.map(|c| Env::counit_at(c, 0).map_keys(|t| t[0].clone()));
        let counit_res = series_witness(&counit.sub(&econst(Env::one())), |x| show_element(&names, x));
        Ok(vec![
            Check::from_residual("r-intertwines", "RΔ(x) = Δ^op(x)R", inter),
            Check::from_residual("r-coproduct-left", "(Δ⊗1)R = R13 R23", q1),
            Check::from_residual("r-coproduct-right", "(1⊗Δ)R = R13 R12", q2),
            Check::from_residual("qybe", "R12 R13 R23 = R23 R13 R12", qybe),
            Check::from_residual("r-first-order", "R ≡ 1 + hr mod h²", r_first),
            Check::from_residual("j-first-order", "J ≡ 1 + hr/2 mod h²", j_first),
            Check::from_residual("r-counit", "(ε⊗1)R = 1", counit_res),
        ])
    }

    /// h⁻¹(Δ − Δ^op)(x) mod h against the expected cobracket for each letter x.
    pub fn quasiclassical_residual(&self, expected: &[(u8, EnvTensor)]) -> Result<Option<String>> {
        let names = self.names().to_vec();
        for (g, want) in expected {
            let dx = self.coproduct(&Env::generator(*g))?;
            let diff = dx.sub(&dx.map(opposite));
            if !diff.coeff(0).is_empty() || diff.coeff(1) != want {
                return Ok(Some(format!("{}: got {}, want {}", names[*g as usize], show_tensor(&names, diff.coeff(1)), show_tensor(&names, want))));
            }
        }
        Ok(None)
    }
}

/// The slot pipeline shared by J, K and the coproduct operator on M₋⊗M₋:
/// Φ_{1,2,34}, then Φ⁻¹_{2,3,4}, then s∘e^{±hΩ23/2}, then Φ_{2,3,4}, then Φ⁻¹_{1,2,34}.
pub fn twist_chain(sign: i64) -> Result<Vec<HOp>> {
    let p1 = vec![vec![0], vec![1], vec![2, 3]];
    let p2 = vec![vec![1], vec![2], vec![3]];
    Ok(vec![
        phi_op(&p1, false)?,
        phi_op(&p2, true)?,
        exp_omega(1, 2, sign),
        HOp::constant(Op::Perm(Perm::swap(4, 1, 2))),
        phi_op(&p2, false)?,
        phi_op(&p1, true)?,
    ])
}

/// J (sign +1) or K (sign −1) in U(g)⊗U(g).
pub fn compute_twist(vm: &Verma, sign: i64) -> Result<TSeries> {
    let start = VecSeries::constant(SlotVec::vacuum(vec![Slot::Plus, Slot::Plus, Slot::Minus, Slot::Minus], 0));
    let out = apply_chain(vm, &twist_chain(sign)?, &start)?;
    let mut coeffs = Vec::with_capacity(ORDER);
    for c in &out.coeffs {
        if c.kinds != [Slot::Plus, Slot::Minus, Slot::Plus, Slot::Minus] {
            return Err(EkqError::Internal(format!("twist pipeline ended in slots {:?}", c.kinds)));
        }
        let mut acc = Lin::new();
        for (t, k) in &c.terms {
            let x = vm.phi_inverse(&Lin::basis(vec![t[0].clone(), t[1].clone()]))?;
            let y = vm.phi_inverse(&Lin::basis(vec![t[2].clone(), t[3].clone()]))?;
            acc.add_scaled(&outer(&[&x, &y]), k);
        }
        coeffs.push(acc);
    }
    Ok(HSeries::from_coeffs(coeffs))
}

/// U_h(g) for the double of a Lie bialgebra.
#[derive(Debug)]
pub struct QuantizedDouble {
    pub double: DoubleAlgebra,
    pub verma: Arc<Verma>,
    pub tq: TwistedQuantization,
    m_plus_memo: RwLock<HashMap<Word, Arc<ESeries>>>,
    m_minus_memo: RwLock<HashMap<Word, Arc<ESeries>>>,
}

impl QuantizedDouble {
    pub fn new(a: &LieBialgebra) -> Result<Self> {
        Self::from_double(build_double(a)?)
    }

    pub fn from_double(d: DoubleAlgebra) -> Result<Self> {
        let vm = Verma::new(&d);
        let j = compute_twist(&vm, 1)?;
        let tq = TwistedQuantization::new(d.env().clone(), j, canonical_r(&d), omega(&d))?;
        Ok(QuantizedDouble { double: d, verma: vm, tq, m_plus_memo: RwLock::default(), m_minus_memo: RwLock::default() })
    }

    pub fn env(&self) -> &Arc<Env> {
        &self.tq.env
    }

    /// δ_g on each generator as a tensor of letters.
    pub fn cobracket_tensors(&self) -> Vec<(u8, EnvTensor)> {
        let f = self.double.cobracket();
        let m = self.double.dim();
        (0..m)
            .map(|x| {
                let mut t = Lin::new();
                for u in 0..m {
                    for v in 0..m {
                        t.add_term(vec![vec![u as u8], vec![v as u8]], f[x][u][v].clone());
                    }
                }
                (x as u8, t)
            })
            .collect()
    }

    /// m₋(x) as an element of U(g)[[h]], where x: M₊⊗M₋ → M₊ sends 1₊⊗1₋ to `u`.
    pub fn m_minus(&self, u: &VermaVector) -> Result<ESeries> {
        let mut out = ESeries::zero(ORDER);
        for (w, c) in u {
            out = out.add_scaled(&self.m_minus_word(w)?, c);
        }
        Ok(out)
    }

    fn m_minus_word(&self, beta: &Word) -> Result<ESeries> {
        if let Some(hit) = self.m_minus_memo.read().unwrap().get(beta) {
            return Ok((**hit).clone());
        }
        let vm = &self.verma;
        let u = Lin::basis(beta.clone());
        let start = VecSeries::constant(SlotVec::vacuum(vec![Slot::Plus, Slot::Minus, Slot::Minus], 0));
        let v = apply_hop(vm, &phi_op(&singles(3), true)?, &start)?;
        let mut coeffs = Vec::with_capacity(ORDER);
        for c in &v.coeffs {
            let mut pm = Lin::new();
            for (t, k) in &c.terms {
                // x(φ(X)) = X·u
                let xelt = vm.phi_inverse(&Lin::basis(vec![t[0].clone(), t[1].clone()]))?;
                for (g, d) in &vm.act(&xelt, &u, true)? {
                    pm.add_term(vec![g.clone(), t[2].clone()], k * d);
                }
            }
            coeffs.push(vm.phi_inverse(&pm)?);
        }
        let s = HSeries::from_coeffs(coeffs);
        self.m_minus_memo.write().unwrap().insert(beta.clone(), Arc::new(s.clone()));
        Ok(s)
    }

    /// m₊(y) where y: M₊⊗M₋ → M₋ sends 1₊⊗1₋ to `w`.
    pub fn m_plus(&self, w: &VermaVector) -> Result<ESeries> {
        let mut out = ESeries::zero(ORDER);
        for (a, c) in w {
            out = out.add_scaled(&self.m_plus_word(a)?, c);
        }
        Ok(out)
    }

    fn m_plus_word(&self, alpha: &Word) -> Result<ESeries> {
        if let Some(hit) = self.m_plus_memo.read().unwrap().get(alpha) {
            return Ok((**hit).clone());
        }
        let vm = &self.verma;
        let w = Lin::basis(alpha.clone());
        let start = VecSeries::constant(SlotVec::vacuum(vec![Slot::Plus, Slot::Plus, Slot::Minus], 0));
        let v = apply_hop(vm, &phi_op(&singles(3), false)?, &start)?;
        let mut coeffs = Vec::with_capacity(ORDER);
        for c in &v.coeffs {
            let mut pm = Lin::new();
            for (t, k) in &c.terms {
                let yelt = vm.phi_inverse(&Lin::basis(vec![t[1].clone(), t[2].clone()]))?;
                for (g, d) in &vm.act(&yelt, &w, false)? {
                    pm.add_term(vec![t[0].clone(), g.clone()], k * d);
                }
            }
            coeffs.push(vm.phi_inverse(&pm)?);
        }
        let s = HSeries::from_coeffs(coeffs);
        self.m_plus_memo.write().unwrap().insert(alpha.clone(), Arc::new(s.clone()));
        Ok(s)
    }

    /// R̃ = (ν⊗ν)(K⁻¹ e^{hΩ/2}(1₋⊗1₊)).
    pub fn polarize_r(&self) -> Result<TSeries> {
        let env = self.env().clone();
        let vm = &self.verma;
        let k = compute_twist(vm, -1)?;
        let one = tensor_one(2);
        let kinv = series_inverse(&k, &one, |x, y| env.tensor_mul(x, y))?;
        let e = series_exp(&self.tq.omega.scaled(&rat(1, 2)), &one, ORDER, |x, y| env.tensor_mul(x, y));
        let op = tmul(&env, &kinv, &e);
        let mut out = TSeries::zero(ORDER);
        for (deg, c) in op.coeffs().iter().enumerate() {
            // act on 1₋ ⊗ 1₊
            let mut v: EnvTensor = Lin::new();
            for (t, coef) in c {
                let left = vm.act(&Lin::basis(t[0].clone()), &Env::one(), false)?;
                let right = vm.act(&Lin::basis(t[1].clone()), &Env::one(), true)?;
                v.add_scaled(&outer(&[&left, &right]), coef);
            }
            for (t, coef) in &v {
                let mp = self.m_plus_word(&t[0])?;
                let mm = self.m_minus_word(&t[1])?;
                let prod = series_mul(&mp, &mm, |x, y| outer(&[x, y]))?;
                out = out.add_scaled(&prod.shift(deg), coef);
            }
        }
        Ok(out)
    }

    /// Endomorphism-algebra checks: unit, classical limit, closure of m₋ and m₊ under composition,
    /// and the factorization U_h(g₊)⊗U_h(g₋) → U_h(g) at h⁰.
    pub fn part1_product_check(&self, degree: usize) -> Result<Vec<Check>> {
        let env = self.env().clone();
        let vm = &self.verma;
        let names = env.lie().names().to_vec();
        let show_e = |x: &EnvElement| show_element(&names, x);
        let bws = normal_words(&vm.b_letters(), degree);
        let aws = normal_words(&vm.a_letters(), degree);
        let unit_m = series_witness(&self.m_minus(&Env::one())?.sub(&econst(Env::one())), show_e);
        let unit_p = series_witness(&self.m_plus(&Env::one())?.sub(&econst(Env::one())), show_e);
        let mut classical = None;
        for b in &bws {
            if self.m_minus_word(b)?.coeff(0) != &Lin::basis(b.clone()) {
                classical.get_or_insert(format!("m₋({}) mod h", word_label(&names, b)));
            }
        }
        for a in &aws {
            if self.m_plus_word(a)?.coeff(0) != &Lin::basis(a.clone()) {
                classical.get_or_insert(format!("m₊({}) mod h", word_label(&names, a)));
            }
        }
        let closure = |ws: &[Word], plus: bool| -> Result<Option<String>> {
            for x in ws {
                for y in ws {
                    let (ex, ey) = if plus { (self.m_plus_word(x)?, self.m_plus_word(y)?) } else { (self.m_minus_word(x)?, self.m_minus_word(y)?) };
                    let ux = Lin::basis(x.clone());
                    // z(1₊⊗1₋) = e_y · u_x; then m(z) must equal e_y e_x.
                    let mut mz = ESeries::zero(ORDER);
                    for (k, eyk) in ey.coeffs().iter().enumerate() {
                        let uz = vm.act(eyk, &ux, !plus)?;
                        let m = if plus { self.m_plus(&uz)? } else { self.m_minus(&uz)? };
                        mz = mz.add(&m.shift(k));
                    }
                    let want = emul(&env, &ey, &ex);
                    if let Some(s) = series_witness(&mz.sub(&want), show_e) {
                        return Ok(Some(format!("{} then {}: {s}", word_label(&names, y), word_label(&names, x))));
                    }
                }
            }
            Ok(None)
        };
        let close_m = closure(&bws, false)?;
        let close_p = closure(&aws, true)?;
        let mut fact = None;
        let mut seen = std::collections::BTreeSet::new();
        for a in &aws {
            for b in &bws {
                let p = env.multiply(self.m_plus_word(a)?.coeff(0), self.m_minus_word(b)?.coeff(0));
                let mut w = a.clone();
                w.extend_from_slice(b);
                if p != Lin::basis(w.clone()) || !seen.insert(w) {
                    fact.get_or_insert(format!("{} ⊗ {}", word_label(&names, a), word_label(&names, b)));
                }
            }
        }
        Ok(vec![
            Check::from_residual("m-minus-unit", "m₋(1₊) is the unit", unit_m),
            Check::from_residual("m-plus-unit", "m₊(1₋) is the unit", unit_p),
            Check::from_residual("m-classical-limit", "m±(x) ≡ m±⁰(x) mod h", classical),
            Check::from_residual("m-minus-closure", "m₋(x)∘m₋(y) = m₋(z)", close_m),
            Check::from_residual("m-plus-closure", "m₊(x)∘m₊(y) = m₊(z)", close_p),
            Check::from_residual("factorization", "U_h(g₊)⊗U_h(g₋) → U_h(g) is bijective mod h", fact),
        ])
    }
}

/// U_h(a): the product and coproduct on M₋ ≅ U(a)[[h]].
#[derive(Debug)]
pub struct QuantizedUea {
    pub base: LieBialgebra,
    pub double: DoubleAlgebra,
    pub verma: Arc<Verma>,
    pub env_a: Arc<Env>,
    pub bound: usize,
    psi_memo: RwLock<HashMap<Word, Arc<SlotVec>>>,
    prod_memo: RwLock<HashMap<(Word, Word), Arc<ESeries>>>,
    jcal_memo: RwLock<HashMap<(Word, Word), Arc<Vec<EnvTensor>>>>,
}

/// Smallest dual bound that survives two Casimir insertions on dual slots.
pub const DEFAULT_DUAL_BOUND: usize = ORDER - 1;

impl QuantizedUea {
    pub fn new(a: &LieBialgebra, bound: usize) -> Result<Self> {
        let d = build_double(a)?;
        let verma = Verma::new(&d);
        let env_a = Env::new(a.lie());
        Ok(QuantizedUea {
            base: a.clone(),
            double: d,
            verma,
            env_a,
            bound,
            psi_memo: RwLock::default(),
            prod_memo: RwLock::default(),
            jcal_memo: RwLock::default(),
        })
    }

    pub fn names(&self) -> &[String] {
        self.base.names()
    }

    pub fn psi(&self, w: &Word) -> Result<Arc<SlotVec>> {
        if let Some(hit) = self.psi_memo.read().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let v = Arc::new(self.verma.solve_psi(&Lin::basis(w.clone()), self.bound, Pivot::First)?);
        self.psi_memo.write().unwrap().insert(w.clone(), v.clone());
        Ok(v)
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if w.iter().any(|&g| g as usize >= self.base.dim()) {
            return Err(EkqError::Dimension(format!("word {w:?} is not in U(a)")));
        }
        Ok(())
    }

    /// x∘y = (1₊*⊗1₊*⊗1)(Φ⁻¹(1⊗ψ_y)ψ_x 1₋) on basis words.
    pub fn product_words(&self, x: &Word, y: &Word) -> Result<Arc<ESeries>> {
        self.check_word(x)?;
        self.check_word(y)?;
        let key = (x.clone(), y.clone());
        if let Some(hit) = self.prod_memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let vm = &self.verma;
        let psx = self.psi(x)?;
        let psy = self.psi(y)?;
        let mut terms = Lin::new();
        let mut bound = psx.bound;
        let mut cache: HashMap<&Word, SlotVec> = HashMap::new();
        for (t, c) in &psx.terms {
            if !cache.contains_key(&t[1]) {
                cache.insert(&t[1], vm.psi_on(&psy, &t[1])?);
            }
            let v = &cache[&t[1]];
            bound = bound.min(v.bound);
            for (s, d) in &v.terms {
                terms.add_term(vec![t[0].clone(), s[0].clone(), s[1].clone()], c * d);
            }
        }
        let v = SlotVec { kinds: vec![Slot::PlusDual, Slot::PlusDual, Slot::Minus], bound, terms };
        let out = apply_hop(vm, &phi_op(&singles(3), true)?, &VecSeries::constant(v))?;
        let mut coeffs = Vec::with_capacity(ORDER);
        for c in &out.coeffs {
            let e = c.extract_vacuum(0)?.extract_vacuum(0)?;
            coeffs.push(e.terms.map_keys(|t| t[0].clone()));
        }
        let s = Arc::new(HSeries::from_coeffs(coeffs));
        self.prod_memo.write().unwrap().insert(key, s.clone());
        Ok(s)
    }

    pub fn product(&self, x: &EnvElement, y: &EnvElement) -> Result<ESeries> {
        self.product_series(&econst(x.clone()), &econst(y.clone()))
    }

    pub fn product_series(&self, x: &ESeries, y: &ESeries) -> Result<ESeries> {
        let mut out = ESeries::zero(ORDER);
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                for (u, a) in x.coeff(i) {
                    for (w, b) in y.coeff(j) {
                        out = out.add_scaled(&self.product_words(u, w)?.shift(i + j), &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Componentwise product on two-factor series.
    pub fn tensor_product_series(&self, x: &TSeries, y: &TSeries) -> Result<TSeries> {
        let mut out = TSeries::zero(ORDER);
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                for (u, a) in x.coeff(i) {
                    for (w, b) in y.coeff(j) {
                        let p0 = self.product_words(&u[0], &w[0])?;
                        let p1 = self.product_words(&u[1], &w[1])?;
                        let prod = series_mul(&p0, &p1, |s, t| outer(&[s, t]))?;
                        out = out.add_scaled(&prod.shift(i + j), &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// 𝒥(u⊗w) = (1₊*⊗1₊*⊗1⊗1)(Φ⁻¹_{1,2,34}Φ_{2,3,4}γ23Φ⁻¹_{2,3,4}Φ_{1,2,34}(ψ_u1₋⊗ψ_w1₋)), by h-degree.
    fn jcal(&self, u: &Word, w: &Word) -> Result<Arc<Vec<EnvTensor>>> {
        let key = (u.clone(), w.clone());
        if let Some(hit) = self.jcal_memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let pu = self.psi(u)?;
        let pw = self.psi(w)?;
        let mut terms = Lin::new();
        for (s, a) in &pu.terms {
            for (t, b) in &pw.terms {
                terms.add_term(vec![s[0].clone(), s[1].clone(), t[0].clone(), t[1].clone()], a * b);
            }
        }
        let v = SlotVec { kinds: vec![Slot::PlusDual, Slot::Minus, Slot::PlusDual, Slot::Minus], bound: pu.bound.min(pw.bound), terms };
        let out = apply_chain(&self.verma, &twist_chain(-1)?, &VecSeries::constant(v))?;
        let mut coeffs = Vec::with_capacity(ORDER);
        for c in &out.coeffs {
            coeffs.push(c.extract_vacuum(0)?.extract_vacuum(0)?.terms);
        }
        let coeffs = Arc::new(coeffs);
        self.jcal_memo.write().unwrap().insert(key, coeffs.clone());
        Ok(coeffs)
    }

    fn jcal_apply(&self, k: usize, t: &EnvTensor) -> Result<EnvTensor> {
        let mut out = Lin::new();
        for (pair, c) in t {
            out.add_scaled(&self.jcal(&pair[0], &pair[1])?[k], c);
        }
        Ok(out)
    }

    /// The operator 𝒥 on a two-factor tensor, as a series.
    pub fn jcal_series(&self, t: &EnvTensor) -> Result<TSeries> {
        Ok(HSeries::from_coeffs((0..ORDER).map(|k| self.jcal_apply(k, t)).collect::<Result<_>>()?))
    }

    /// Δ(x) = 𝒥⁻¹ i₋(x), with 𝒥⁻¹ = 1 − h𝒥₁ + h²(𝒥₁² − 𝒥₂).
    pub fn coproduct(&self, x: &EnvElement) -> Result<TSeries> {
        for w in x.keys() {
            self.check_word(w)?;
        }
        let t0 = crate::verma::i_minus(x);
        let j0 = self.jcal_apply(0, &t0)?;
        if j0 != t0 {
            return Err(EkqError::Internal("𝒥 is not the identity mod h".into()));
        }
        let j1 = self.jcal_apply(1, &t0)?;
        let j11 = self.jcal_apply(1, &j1)?;
        let j2 = self.jcal_apply(2, &t0)?;
        Ok(HSeries::from_coeffs(vec![t0, j1.neg(), j11.sub(&j2)]))
    }

    pub fn coproduct_series(&self, x: &ESeries) -> Result<TSeries> {
        let mut out = TSeries::zero(ORDER);
        for k in 0..ORDER {
            if !x.coeff(k).is_empty() {
                out = out.add(&self.coproduct(x.coeff(k))?.shift(k));
            }
        }
        Ok(out)
    }

    /// Δ applied to factor i of an arity-k series.
    pub fn coproduct_at(&self, t: &TSeries, i: usize) -> Result<TSeries> {
        let mut out = TSeries::zero(ORDER);
        for k in 0..ORDER {
            for (key, c) in t.coeff(k) {
                let d = self.coproduct(&Lin::basis(key[i].clone()))?;
                let placed = d.map(|x| {
                    x.map_keys(|pair| {
                        let mut nt = key[..i].to_vec();
                        nt.extend(pair.iter().cloned());
                        nt.extend_from_slice(&key[i + 1..]);
                        nt
                    })
                });
                out = out.add_scaled(&placed.shift(k), c);
            }
        }
        Ok(out)
    }

    pub fn generators(&self) -> Vec<Word> {
        (0..self.base.dim() as u8).map(|g| vec![g]).collect()
    }

    /// δ(a_p) as a tensor of letters.
    pub fn cobracket_tensor(&self, p: usize) -> EnvTensor {
        let n = self.base.dim();
        let mut t = Lin::new();
        for j in 0..n {
            for k in 0..n {
                t.add_term(vec![vec![j as u8], vec![k as u8]], self.base.f(p, j, k).clone());
            }
        }
        t
    }
}

/// (1/24)(f_p^{ik} f_q^{ls} c_{kl}^j c_{ij}^m a_m a_s + f_p^{in} f_q^{ls} c_{il}^r a_r a_n a_s), normal-ordered.
pub fn h2_product_formula(a: &LieBialgebra, env_a: &Env, p: usize, q: usize) -> Result<EnvElement> {
    let n = a.dim();
    if p >= n || q >= n {
        return Err(EkqError::Dimension(format!("generator index out of range for dimension {n}")));
    }
    let mut raw: Lin<Word> = Lin::new();
    for i in 0..n {
        for k in 0..n {
            let fp = a.f(p, i, k);
            if fp.is_zero() {
                continue;
            }
            for l in 0..n {
                for s in 0..n {
                    let fq = a.f(q, l, s);
                    if fq.is_zero() {
                        continue;
                    }
                    let base = fp * fq;
                    for j in 0..n {
                        let ckl = a.c(k, l, j);
                        if ckl.is_zero() {
                            continue;
                        }
                        for m in 0..n {
                            raw.add_term(vec![m as u8, s as u8], &base * ckl * a.c(i, j, m));
                        }
                    }
                    // second sum: the k index plays the role of n
                    for r in 0..n {
                        raw.add_term(vec![r as u8, k as u8, s as u8], &base * a.c(i, l, r));
                    }
                }
            }
        }
    }
    let mut out = Lin::new();
    for (w, c) in &raw {
        out.add_scaled(&env_a.normal_order(w)?, c);
    }
    Ok(out.scaled(&rat(1, 24)))
}


impl QuantizedUea {
    /// Associativity on generator triples, coassociativity and multiplicativity on generators,
    /// and the classical and quasiclassical limits.
    pub fn suite(&self) -> Result<Vec<Check>> {
        let names = self.names().to_vec();
        let show_e = |x: &EnvElement| show_element(&names, x);
        let show_t = |x: &EnvTensor| show_tensor(&names, x);
        let gens = self.generators();
        let mut triples: Vec<(Word, Word, Word)> = Vec::new();
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    triples.push((x.clone(), y.clone(), z.clone()));
                }
            }
        }
        let assoc = par_map(&triples, |(x, y, z)| -> Result<Option<String>> {
            let (xs, ys, zs) = (econst(Lin::basis(x.clone())), econst(Lin::basis(y.clone())), econst(Lin::basis(z.clone())));
            let l = self.product_series(&self.product_series(&xs, &ys)?, &zs)?;
            let r = self.product_series(&xs, &self.product_series(&ys, &zs)?)?;
            Ok(series_witness(&l.sub(&r), show_e).map(|s| format!("({},{},{}): {s}", word_label(&names, x), word_label(&names, y), word_label(&names, z))))
        });
        let pairs: Vec<(Word, Word)> = gens.iter().flat_map(|x| gens.iter().map(move |y| (x.clone(), y.clone()))).collect();
        let per_pair = par_map(&pairs, |(x, y)| -> Result<(Option<String>, Option<String>)> {
            let p = self.product_words(x, y)?;
            let classical = self.env_a.mul_words(x, y);
            let low = if p.coeff(0) != &*classical || !p.coeff(1).is_empty() {
                Some(format!("{}∘{}: h^0 {}, h^1 {}", word_label(&names, x), word_label(&names, y), show_e(p.coeff(0)), show_e(p.coeff(1))))
            } else {
                None
            };
            let lhs = self.coproduct_series(&p)?;
            let rhs = self.tensor_product_series(&self.coproduct(&Lin::basis(x.clone()))?, &self.coproduct(&Lin::basis(y.clone()))?)?;
            let mult = series_witness(&lhs.sub(&rhs), show_t).map(|s| format!("{} {}: {s}", word_label(&names, x), word_label(&names, y)));
            Ok((low, mult))
        });
        let per_gen = par_map(&gens, |x| -> Result<(Option<String>, Option<String>, Option<String>)> {
            let d = self.coproduct(&Lin::basis(x.clone()))?;
            let coassoc = series_witness(&self.coproduct_at(&d, 0)?.sub(&self.coproduct_at(&d, 1)?), show_t);
            let d0 = self.env_a.delta0(&Lin::basis(x.clone()), 2)?;
            let classical = (d.coeff(0) != &d0).then(|| format!("{}: {}", word_label(&names, x), show_t(d.coeff(0))));
            let diff = d.sub(&d.map(opposite));
            let want = self.cobracket_tensor(x[0] as usize);
            let qc = (!diff.coeff(0).is_empty() || diff.coeff(1) != &want)
                .then(|| format!("{}: got {}, want {}", word_label(&names, x), show_t(diff.coeff(1)), show_t(&want)));
            Ok((coassoc.map(|s| format!("{}: {s}", word_label(&names, x))), classical, qc))
        });
        let mut first = [None, None, None, None, None, None];
        for r in assoc {
            if let Some(s) = r? {
                first[0].get_or_insert(s);
            }
        }
        for r in per_pair {
            let (low, mult) = r?;
            if let Some(s) = low {
                first[1].get_or_insert(s);
            }
            if let Some(s) = mult {
                first[2].get_or_insert(s);
            }
        }
        for r in per_gen {
            let (c, cl, qc) = r?;
            if let Some(s) = c {
                first[3].get_or_insert(s);
            }
            if let Some(s) = cl {
                first[4].get_or_insert(s);
            }
            if let Some(s) = qc {
                first[5].get_or_insert(s);
            }
        }
        let [a, b, c, d, e, f] = first;
        Ok(vec![
            Check::from_residual("product-associative", "(x∘y)∘z = x∘(y∘z)", a),
            Check::from_residual("product-classical", "x∘y ≡ xy mod h²", b),
            Check::from_residual("coproduct-multiplicative", "Δ(x∘y) = Δ(x)∘Δ(y)", c),
            Check::from_residual("coproduct-coassociative", "(Δ⊗1)Δ = (1⊗Δ)Δ", d),
            Check::from_residual("coproduct-classical", "Δ ≡ Δ₀ mod h", e),
            Check::from_residual("quasiclassical-limit", "h⁻¹(Δ − Δ^op)(x) ≡ δ(x) mod h", f),
        ])
    }

    /// h² coefficient of a_p∘a_q against the closed-form contraction.
    pub fn h2_residual(&self, p: usize, q: usize) -> Result<Option<String>> {
        let s = self.product_words(&vec![p as u8], &vec![q as u8])?;
        let want = h2_product_formula(&self.base, &self.env_a, p, q)?;
        let names = self.names();
        Ok((s.coeff(2) != &want).then(|| format!("a{}∘a{}: got {}, want {}", p + 1, q + 1, show_element(names, s.coeff(2)), show_element(names, &want))))
    }
}

/// U(f) on PBW words: the normal-ordered product of the images of the letters.
pub fn hom_on_word(f: &BialgebraHom, env_t: &Env, w: &[u8]) -> EnvElement {
    let mut out = Env::one();
    for &s in w {
        let img: EnvElement = f.image(s as usize).into_iter().map(|(t, c)| (vec![t as u8], c)).collect();
        out = env_t.multiply(&out, &img);
    }
    out
}

pub fn hom_on_element(f: &BialgebraHom, env_t: &Env, x: &EnvElement) -> EnvElement {
    x.apply(|w| hom_on_word(f, env_t, w))
}

/// Sf intertwines ∘ and Δ on all pairs of PBW words of degree ≤ `degree`.
pub fn functoriality_check(f: &BialgebraHom, src: &QuantizedUea, tgt: &QuantizedUea, degree: usize) -> Result<Vec<Check>> {
    let env_t = &tgt.env_a;
    let letters: Vec<u8> = (0..src.base.dim() as u8).collect();
    let words: Vec<Word> = (0..=degree).flat_map(|d| normal_words(&letters, d)).collect();
    let names = tgt.names().to_vec();
    let push = |x: &ESeries| x.map(|c| hom_on_element(f, env_t, c));
    let push2 = |x: &TSeries| {
        x.map(|c| {
            let mut out = Lin::new();
            for (t, k) in c {
                out.add_scaled(&outer(&[&hom_on_word(f, env_t, &t[0]), &hom_on_word(f, env_t, &t[1])]), k);
            }
            out
        })
    };
    let pairs: Vec<(Word, Word)> = words.iter().flat_map(|x| words.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let prod = par_map(&pairs, |(x, y)| -> Result<Option<String>> {
        let lhs = push(&*src.product_words(x, y)?);
        let fx = econst(hom_on_word(f, env_t, x));
        let fy = econst(hom_on_word(f, env_t, y));
        let rhs = tgt.product_series(&fx, &fy)?;
        Ok(series_witness(&lhs.sub(&rhs), |c| show_element(&names, c)).map(|s| format!("{:?}∘{:?}: {s}", x, y)))
    });
    let cop = par_map(&words, |x| -> Result<Option<String>> {
        let lhs = push2(&src.coproduct(&Lin::basis(x.clone()))?);
        let rhs = tgt.coproduct_series(&econst(hom_on_word(f, env_t, x)))?;
        Ok(series_witness(&lhs.sub(&rhs), |c| show_tensor(&names, c)).map(|s| format!("{x:?}: {s}")))
    });
    let first = |v: Vec<Result<Option<String>>>| -> Result<Option<String>> {
        let mut out = None;
        for r in v {
            if let Some(s) = r? {
                out.get_or_insert(s);
            }
        }
        Ok(out)
    };
    Ok(vec![
        Check::from_residual(&format!("{}-product", f.name), "Sf(x∘y) = Sf(x)∘Sf(y)", first(prod)?),
        Check::from_residual(&format!("{}-coproduct", f.name), "(Sf⊗Sf)Δ(x) = Δ(Sf(x))", first(cop)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{abelian, axb, catalog, sl2_standard};
    use crate::kernel::int;

    fn words_up_to(letters: &[u8], d: usize) -> Vec<Word> {
        (0..=d).flat_map(|k| normal_words(letters, k)).collect()
    }

    fn all_pass(cs: &[Check]) {
        for c in cs {
            assert!(c.passed(), "{} failed: {:?}", c.name, c.residual);
        }
    }

    #[test]
    fn abelian_twist_is_truncated_exponential() {
        let q = QuantizedDouble::new(&abelian(2)).unwrap();
        let r = canonical_r(&q.double);
        let env = q.env();
        let want = series_exp(&r.scaled(&rat(1, 2)), &tensor_one(2), ORDER, |x, y| env.tensor_mul(x, y));
        assert_eq!(q.tq.j, want);
        let rr = series_exp(&r, &tensor_one(2), ORDER, |x, y| env.tensor_mul(x, y));
        assert_eq!(q.tq.rmat, rr);
    }

    #[test]
    fn q_first_order_is_minus_half_casimir_half() {
        let q = QuantizedDouble::new(&axb()).unwrap();
        let mut want = Lin::new();
        for i in 0..2u8 {
            want.add_term(vec![i, i + 2], rat(-1, 2));
        }
        assert_eq!(q.tq.q.coeff(0), &Env::one());
        assert_eq!(q.tq.q.coeff(1), &want);
    }

    #[test]
    fn double_suites_on_axb() {
        let q = QuantizedDouble::new(&axb()).unwrap();
        let ws = words_up_to(&(0..4).collect::<Vec<_>>(), 1);
        let pairs: Vec<(Word, Word)> = ws.iter().flat_map(|u| ws.iter().map(move |v| (u.clone(), v.clone()))).collect();
        all_pass(&q.tq.hopf_suite(&ws, &pairs).unwrap());
        all_pass(&q.tq.quasitriangular_suite(&ws).unwrap());
        assert_eq!(q.tq.quasiclassical_residual(&q.cobracket_tensors()).unwrap(), None);
    }

    #[test]
    fn coproduct_first_order_is_half_commutator_with_r() {
        let q = QuantizedDouble::new(&axb()).unwrap();
        let env = q.env();
        for g in 0..4u8 {
            let x = Env::generator(g);
            let d = q.tq.coproduct(&x).unwrap();
            let d0 = env.delta0(&x, 2).unwrap();
            let want = env.tensor_commutator(&d0, &q.tq.r).scaled(&rat(1, 2));
            assert_eq!(d.coeff(1), &want);
        }
    }

    #[test]
    fn perturbed_twist_is_detected() {
        let q = QuantizedDouble::new(&axb()).unwrap();
        let mut j = q.tq.j.clone();
        // a2⊗a2 would be a coboundary twist; a2⊗a1·a2 is not
        j.coeff_mut(2).add_term(vec![vec![1], vec![0, 1]], int(1));
        let bad = TwistedQuantization::new(q.env().clone(), j, q.tq.r.clone(), q.tq.omega.clone()).unwrap();
        let ws = words_up_to(&(0..4).collect::<Vec<_>>(), 1);
        let checks = bad.hopf_suite(&ws, &[]).unwrap();
        assert!(!checks.iter().find(|c| c.name == "coassociativity").unwrap().passed());
        let checks = bad.quasitriangular_suite(&ws).unwrap();
        assert!(checks.iter().any(|c| !c.passed()));
    }

    #[test]
    fn ax_plus_b_square_has_no_corrections() {
        let u = QuantizedUea::new(&axb(), DEFAULT_DUAL_BOUND).unwrap();
        let s = u.product_words(&vec![1], &vec![1]).unwrap();
        assert_eq!(s.coeff(0), &Lin::basis(vec![1, 1]));
        assert!(s.coeff(1).is_empty() && s.coeff(2).is_empty());
        assert!(h2_product_formula(&axb(), &u.env_a, 1, 1).unwrap().is_empty());
    }

    #[test]
    fn sl2_h2_correction_matches_contraction_in_call_order() {
        let a = sl2_standard();
        let u = QuantizedUea::new(&a, DEFAULT_DUAL_BOUND).unwrap();
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(u.h2_residual(p, q).unwrap(), None);
            }
        }
        // E∘F: the contraction with swapped generator roles differs
        let s = u.product_words(&vec![1], &vec![2]).unwrap();
        assert_ne!(s.coeff(2), &h2_product_formula(&a, &u.env_a, 2, 1).unwrap());
    }

    #[test]
    fn abelian_coproduct_is_primitive() {
        let u = QuantizedUea::new(&abelian(2), DEFAULT_DUAL_BOUND).unwrap();
        for g in 0..2u8 {
            let d = u.coproduct(&Env::generator(g)).unwrap();
            assert_eq!(d, tconst(u.env_a.delta0(&Env::generator(g), 2).unwrap()));
        }
    }

    #[test]
    fn uea_suite_on_catalog() {
        for (name, a) in &catalog().bialgebras {
            let u = QuantizedUea::new(a, DEFAULT_DUAL_BOUND).unwrap();
            for c in u.suite().unwrap() {
                assert!(c.passed(), "{name}: {} {:?}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn functoriality_on_catalog_homs() {
        for f in &catalog().homs {
            let s = QuantizedUea::new(&f.source, DEFAULT_DUAL_BOUND).unwrap();
            let t = QuantizedUea::new(&f.target, DEFAULT_DUAL_BOUND).unwrap();
            all_pass(&functoriality_check(f, &s, &t, 1).unwrap());
        }
    }

    #[test]
    fn endomorphism_picture_and_polarization_on_axb() {
        let q = QuantizedDouble::new(&axb()).unwrap();
        all_pass(&q.part1_product_check(1).unwrap());
        let rt = q.polarize_r().unwrap();
        assert_eq!(rt, q.tq.rmat);
        assert_eq!(rt.coeff(1), &q.tq.r);
    }
}
