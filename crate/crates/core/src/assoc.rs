//! The associator truncated at h³, Casimir insertions on slot vectors, braidings,
//! and pentagon / hexagon residuals.
//!
//! Elements of the Drinfeld–Kohno algebra are polynomials in the symbols t_ij. They are
//! never normalized abstractly; they are turned into operators on slot vectors by
//! sending t_ij to Σ Ω_pq over slot groups and evaluated on test vectors.

use crate::error::{EkqError, Result};
use crate::kernel::{int, rat, Lin, Module, Perm, Rational, ORDER};
use crate::par::par_map;
use crate::verma::{Slot, SlotVec, Verma};
use num_traits::{One, Zero};

/// A word in the symbols t_ij (i < j), read as an operator product: the last letter acts first.
pub type TWord = Vec<(usize, usize)>;
pub type TExpr = Lin<TWord>;

pub fn t(i: usize, j: usize) -> TExpr {
    Lin::basis(vec![(i.min(j), i.max(j))])
}

pub fn t_mul(x: &TExpr, y: &TExpr) -> TExpr {
    let mut out = Lin::new();
    for (u, a) in x {
        for (v, b) in y {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.add_term(w, a * b);
        }
    }
    out
}

pub fn t_commutator(x: &TExpr, y: &TExpr) -> TExpr {
    t_mul(x, y).sub(&t_mul(y, x))
}

/// Rename strand k to map[k].
pub fn t_relabel(x: &TExpr, map: &[usize]) -> TExpr {
    x.map_keys(|w| w.iter().map(|&(i, j)| (map[i].min(map[j]), map[i].max(map[j]))).collect())
}

/// Linear operator on slot vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Op {
    Identity,
    Omega(usize, usize),
    Perm(Perm),
    Scale(Rational, Box<Op>),
    Sum(Vec<Op>),
    /// Composition; the last factor acts first.
    Product(Vec<Op>),
}

impl Op {
    pub fn zero() -> Op {
        Op::Sum(Vec::new())
    }

    pub fn scale(c: Rational, op: Op) -> Op {
        Op::Scale(c, Box::new(op))
    }

    pub fn is_trivially_zero(&self) -> bool {
        match self {
            Op::Sum(v) => v.iter().all(|o| o.is_trivially_zero()),
            Op::Scale(c, o) => c.is_zero() || o.is_trivially_zero(),
            Op::Product(v) => v.iter().any(|o| o.is_trivially_zero()),
            _ => false,
        }
    }
}

/// The image of a t-expression under t_ij ↦ Σ_{p∈P_i, q∈P_j} Ω_pq.
pub fn grouped(x: &TExpr, parts: &[Vec<usize>]) -> Result<Op> {
    let mut seen = std::collections::BTreeSet::new();
    for p in parts.iter().flatten() {
        if !seen.insert(*p) {
            return Err(EkqError::Invalid(format!("slot {} appears in two groups", p + 1)));
        }
    }
    let mut terms = Vec::new();
    for (w, c) in x {
        let mut factors = Vec::new();
        for &(i, j) in w {
            if i >= parts.len() || j >= parts.len() {
                return Err(EkqError::Invalid(format!("t_{}{} needs {} groups", i + 1, j + 1, j + 1)));
            }
            let mut sum = Vec::new();
            for &p in &parts[i] {
                for &q in &parts[j] {
                    sum.push(Op::Omega(p, q));
                }
            }
            factors.push(Op::Sum(sum));
        }
        terms.push(Op::scale(c.clone(), Op::Product(factors)));
    }
    Ok(Op::Sum(terms))
}

/// An h-series of operators: coeffs[k] multiplies h^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HOp {
    pub coeffs: Vec<Op>,
}

impl HOp {
    pub fn constant(op: Op) -> HOp {
        let mut coeffs = vec![op];
        coeffs.resize(ORDER, Op::zero());
        HOp { coeffs }
    }
}

/// Every associator agrees with 1 + (h²/24)[t12, t23] modulo h³; this is that truncation.
pub fn associator_h2() -> TExpr {
    t_commutator(&t(0, 1), &t(1, 2)).scaled(&rat(1, 24))
}

/// Coefficients of Φ as t-expressions, h⁰..h².
pub fn associator_coeffs(inverse: bool) -> Vec<TExpr> {
    scaled_associator_coeffs(inverse, &int(1))
}

/// The truncation with its h² term multiplied by `s`; only s = 1 is an associator.
pub fn scaled_associator_coeffs(inverse: bool, s: &Rational) -> Vec<TExpr> {
    let x2 = associator_h2().scaled(s);
    // Φ⁻¹ = 1 − X1 + (X1² − X2) with X1 = 0.
    let x2 = if inverse { x2.neg() } else { x2 };
    vec![Lin::basis(Vec::new()), Lin::new(), x2]
}

/// Φ_{P1,P2,P3} (or its inverse) as an operator series.
pub fn phi_op(parts: &[Vec<usize>], inverse: bool) -> Result<HOp> {
    let coeffs = associator_coeffs(inverse).iter().map(|c| grouped(c, parts)).collect::<Result<Vec<_>>>()?;
    Ok(HOp { coeffs })
}

/// Φ with strands relabeled 1→σ0, 2→σ1, 3→σ2 (Φ_{312} and friends), on singleton slots.
pub fn phi_relabeled(map: [usize; 3], inverse: bool) -> Result<HOp> {
    phi_relabeled_scaled(map, inverse, &int(1))
}

fn phi_relabeled_scaled(map: [usize; 3], inverse: bool, s: &Rational) -> Result<HOp> {
    let singles: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
    let coeffs = scaled_associator_coeffs(inverse, s).iter().map(|c| grouped(&t_relabel(c, &map), &singles)).collect::<Result<Vec<_>>>()?;
    Ok(HOp { coeffs })
}

/// exp(s·h·x) truncated, for a t-expression x.
pub fn texp(x: &TExpr, s: &Rational) -> Vec<TExpr> {
    let one: TExpr = Lin::basis(Vec::new());
    let x1 = x.scaled(s);
    let x2 = t_mul(&x1, &x1).scaled(&rat(1, 2));
    vec![one, x1, x2]
}

/// exp(±hΩ_ij/2).
pub fn exp_omega(i: usize, j: usize, sign: i64) -> HOp {
    let mut coeffs = vec![Op::Identity];
    let half = rat(sign, 2);
    coeffs.push(Op::scale(half, Op::Omega(i, j)));
    coeffs.push(Op::scale(rat(1, 8), Op::Product(vec![Op::Omega(i, j), Op::Omega(i, j)])));
    coeffs.truncate(ORDER);
    HOp { coeffs }
}

/// Composition of operator series; the last acts first.
pub fn hop_product(ops: &[HOp]) -> HOp {
    let mut acc = HOp::constant(Op::Identity);
    for op in ops {
        let mut coeffs = vec![Op::zero(); ORDER];
        for i in 0..ORDER {
            for j in 0..ORDER - i {
                let (a, b) = (&acc.coeffs[i], &op.coeffs[j]);
                if a.is_trivially_zero() || b.is_trivially_zero() {
                    continue;
                }
                let prev = std::mem::replace(&mut coeffs[i + j], Op::zero());
                coeffs[i + j] = Op::Sum(vec![prev, Op::Product(vec![a.clone(), b.clone()])]);
            }
        }
        acc = HOp { coeffs };
    }
    acc
}

/// β_{i,i+1} = s ∘ e^{hΩ/2} on adjacent slots.
pub fn braid(n_slots: usize, i: usize) -> Result<HOp> {
    if i + 1 >= n_slots {
        return Err(EkqError::Invalid(format!("no slot after {}", i + 1)));
    }
    Ok(hop_product(&[HOp::constant(Op::Perm(Perm::swap(n_slots, i, i + 1))), exp_omega(i, i + 1, 1)]))
}

/// γ = β⁻¹ with the slot roles reversed: s ∘ e^{−hΩ/2}.
pub fn braid_gamma(n_slots: usize, i: usize) -> Result<HOp> {
    if i + 1 >= n_slots {
        return Err(EkqError::Invalid(format!("no slot after {}", i + 1)));
    }
    Ok(hop_product(&[HOp::constant(Op::Perm(Perm::swap(n_slots, i, i + 1))), exp_omega(i, i + 1, -1)]))
}

/// Slot vectors indexed by h-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecSeries {
    pub coeffs: Vec<SlotVec>,
}

impl VecSeries {
    pub fn constant(v: SlotVec) -> Self {
        let zero = SlotVec::new(v.kinds.clone(), v.bound);
        let mut coeffs = vec![v];
        coeffs.resize(ORDER, zero);
        VecSeries { coeffs }
    }

    pub fn sub(&self, other: &VecSeries) -> Result<VecSeries> {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.add_scaled(b, &-Rational::one())).collect::<Result<_>>()?;
        Ok(VecSeries { coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&SlotVec) -> Result<SlotVec>) -> Result<VecSeries> {
        Ok(VecSeries { coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()? })
    }
}

pub fn apply_op(vm: &Verma, op: &Op, v: &SlotVec) -> Result<SlotVec> {
    match op {
        Op::Identity => Ok(v.clone()),
        Op::Omega(i, j) => vm.omega(v, *i, *j),
        Op::Perm(p) => {
            if p.len() != v.kinds.len() {
                return Err(EkqError::Dimension("permutation size differs from slot count".into()));
            }
            Ok(v.permuted(p))
        }
        Op::Scale(c, o) => {
            if c.is_zero() {
                return Ok(SlotVec::new(v.kinds.clone(), v.bound));
            }
            Ok(apply_op(vm, o, v)?.scaled(c))
        }
        Op::Sum(ops) => {
            let mut acc: Option<SlotVec> = None;
            for o in ops {
                if o.is_trivially_zero() {
                    continue;
                }
                let x = apply_op(vm, o, v)?;
                acc = Some(match acc {
                    None => x,
                    Some(a) => a.plus(&x)?,
                });
            }
            Ok(acc.unwrap_or_else(|| SlotVec::new(v.kinds.clone(), v.bound)))
        }
        Op::Product(ops) => {
            let mut acc = v.clone();
            for o in ops.iter().rev() {
                if acc.is_zero() {
                    // Still track kinds through permutations.
                    if let Op::Perm(p) = o {
                        acc = acc.permuted(p);
                    }
                    continue;
                }
                acc = apply_op(vm, o, &acc)?;
            }
            Ok(acc)
        }
    }
}

pub fn apply_hop(vm: &Verma, op: &HOp, v: &VecSeries) -> Result<VecSeries> {
    let kinds_after = |x: &SlotVec| -> Result<SlotVec> { apply_op(vm, &op.coeffs[0], x) };
    let mut coeffs: Vec<SlotVec> = Vec::with_capacity(ORDER);
    for k in 0..ORDER {
        let mut acc: Option<SlotVec> = None;
        for i in 0..=k {
            let j = k - i;
            if op.coeffs[i].is_trivially_zero() || v.coeffs[j].is_zero() {
                continue;
            }
            let x = apply_op(vm, &op.coeffs[i], &v.coeffs[j])?;
            acc = Some(match acc {
                None => x,
                Some(a) => a.plus(&x)?,
            });
        }
        let acc = match acc {
            Some(a) => a,
            None => {
                let shape = kinds_after(&SlotVec::new(v.coeffs[k].kinds.clone(), v.coeffs[k].bound))?;
                SlotVec::new(shape.kinds, shape.bound)
            }
        };
        coeffs.push(acc);
    }
    Ok(VecSeries { coeffs })
}

/// Apply operator series in order: `ops[0]` first.
pub fn apply_chain(vm: &Verma, ops: &[HOp], v: &VecSeries) -> Result<VecSeries> {
    let mut acc = v.clone();
    for op in ops {
        acc = apply_hop(vm, op, &acc)?;
    }
    Ok(acc)
}

pub fn singles(k: usize) -> Vec<Vec<usize>> {
    (0..k).map(|i| vec![i]).collect()
}

/// Highest-weight vector plus up to `depth` generator applications in single slots.
pub fn test_vectors(vm: &Verma, kinds: &[Slot], bound: usize, depth: usize) -> Result<Vec<SlotVec>> {
    let letters: Vec<u8> = (0..2 * vm.n() as u8).collect();
    let mut out = vec![SlotVec::vacuum(kinds.to_vec(), bound)];
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            for s in 0..kinds.len() {
                for &g in &letters {
                    let w = vm.slot_act(v, s, g)?;
                    if !w.is_zero() && !out.contains(&w) && !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub name: String,
    pub nonzero: usize,
    pub witness: Option<String>,
}

fn compare(vm: &Verma, name: &str, lhs: &[HOp], rhs: &[HOp], vectors: &[SlotVec]) -> Result<Residual> {
    let results = par_map(vectors, |v| -> Result<Option<String>> {
        let start = VecSeries::constant(v.clone());
        let l = apply_chain(vm, lhs, &start)?;
        let r = apply_chain(vm, rhs, &start)?;
        let d = l.sub(&r)?;
        Ok(d.coeffs.iter().position(|c| !c.is_zero()).map(|k| format!("h^{k} term on {:?}: {:?}", v.terms, d.coeffs[k].terms)))
    });
    let mut nonzero = 0;
    let mut witness = None;
    for r in results {
        if let Some(w) = r? {
            nonzero += 1;
            witness.get_or_insert(w);
        }
    }
    Ok(Residual { name: name.into(), nonzero, witness })
}

/// Φ_{12,3,4} Φ_{1,2,34} = Φ_{1,2,3} Φ_{1,23,4} Φ_{2,3,4} on 4-slot vectors.
pub fn pentagon_residual(vm: &Verma, vectors: &[SlotVec]) -> Result<Residual> {
    let p = |parts: Vec<Vec<usize>>| phi_op(&parts, false);
    let lhs = vec![p(vec![vec![0], vec![1], vec![2, 3]])?, p(vec![vec![0, 1], vec![2], vec![3]])?];
    let rhs = vec![p(vec![vec![1], vec![2], vec![3]])?, p(vec![vec![0], vec![1, 2], vec![3]])?, p(vec![vec![0], vec![1], vec![2]])?];
    compare(vm, "pentagon", &lhs, &rhs, vectors)
}

fn exp_t(x: &TExpr, sign: i64) -> Result<HOp> {
    let coeffs = texp(x, &rat(sign, 2)).iter().map(|c| grouped(c, &singles(3))).collect::<Result<Vec<_>>>()?;
    Ok(HOp { coeffs })
}

/// Both hexagons in operator form with R = e^{ht/2}:
/// e^{h(t13+t23)/2} = Φ_{312} e^{ht13/2} Φ_{132}⁻¹ e^{ht23/2} Φ_{123} and
/// e^{h(t12+t13)/2} = Φ_{231}⁻¹ e^{ht13/2} Φ_{213} e^{ht12/2} Φ_{123}⁻¹.
pub fn hexagon_residuals(vm: &Verma, vectors: &[SlotVec]) -> Result<(Residual, Residual)> {
    hexagon_residuals_scaled(vm, vectors, &int(1))
}

/// Hexagons for the truncation with h² term scaled by `s`.
pub fn hexagon_residuals_scaled(vm: &Verma, vectors: &[SlotVec], s: &Rational) -> Result<(Residual, Residual)> {
    let phi_relabeled = |map, inverse| phi_relabeled_scaled(map, inverse, s);
    let t13 = t(0, 2);
    let t23 = t(1, 2);
    let t12 = t(0, 1);
    // Chains list the first-acting factor first.
    let lhs1 = vec![exp_t(&t13.plus(&t23), 1)?];
    let rhs1 = vec![phi_relabeled([0, 1, 2], false)?, exp_t(&t23, 1)?, phi_relabeled([0, 2, 1], true)?, exp_t(&t13, 1)?, phi_relabeled([2, 0, 1], false)?];
    let lhs2 = vec![exp_t(&t12.plus(&t13), 1)?];
    let rhs2 = vec![phi_relabeled([0, 1, 2], true)?, exp_t(&t12, 1)?, phi_relabeled([1, 0, 2], false)?, exp_t(&t13, 1)?, phi_relabeled([1, 2, 0], true)?];
    Ok((compare(vm, "hexagon-1", &lhs1, &rhs1, vectors)?, compare(vm, "hexagon-2", &lhs2, &rhs2, vectors)?))
}

/// Φ⁻¹Φ on the given vectors; must be the identity mod h³.
pub fn inverse_residual(vm: &Verma, parts: &[Vec<usize>], vectors: &[SlotVec]) -> Result<Residual> {
    compare(vm, "associator-inverse", &[phi_op(parts, false)?, phi_op(parts, true)?], &[HOp::constant(Op::Identity)], vectors)
}

/// γ then β on adjacent slots i, i+1: the identity mod h³.
pub fn braid_roundtrip_residual(vm: &Verma, n_slots: usize, i: usize, vectors: &[SlotVec]) -> Result<Residual> {
    compare(vm, "braid-roundtrip", &[braid_gamma(n_slots, i)?, braid(n_slots, i)?], &[HOp::constant(Op::Identity)], vectors)
}

/// β commutes with the diagonal action of every generator.
pub fn braid_equivariance_residual(vm: &Verma, n_slots: usize, i: usize, vectors: &[SlotVec]) -> Result<Residual> {
    let b = braid(n_slots, i)?;
    let results = par_map(vectors, |v| -> Result<Option<String>> {
        for g in 0..2 * vm.n() as u8 {
            let x = VecSeries::constant(v.clone());
            let left = apply_hop(vm, &b, &x.map(|c| vm.diag_act(c, g))?)?;
            let right = apply_hop(vm, &b, &x)?.map(|c| vm.diag_act(c, g))?;
            if !left.sub(&right)?.is_zero() {
                return Ok(Some(format!("generator {g} on {:?}", v.terms)));
            }
        }
        Ok(None)
    });
    let mut nonzero = 0;
    let mut witness = None;
    for r in results {
        if let Some(w) = r? {
            nonzero += 1;
            witness.get_or_insert(w);
        }
    }
    Ok(Residual { name: "braid-equivariance".into(), nonzero, witness })
}

/// [Δ(x), Ω_ij] = 0 on the vectors, for every generator x.
pub fn omega_invariance_residual(vm: &Verma, i: usize, j: usize, vectors: &[SlotVec]) -> Result<Residual> {
    let results = par_map(vectors, |v| -> Result<Option<String>> {
        for g in 0..2 * vm.n() as u8 {
            let a = vm.omega(&vm.diag_act(v, g)?, i, j)?;
            let b = vm.diag_act(&vm.omega(v, i, j)?, g)?;
            if !a.add_scaled(&b, &-Rational::one())?.is_zero() {
                return Ok(Some(format!("generator {g} on {:?}", v.terms)));
            }
        }
        Ok(None)
    });
    let mut nonzero = 0;
    let mut witness = None;
    for r in results {
        if let Some(w) = r? {
            nonzero += 1;
            witness.get_or_insert(w);
        }
    }
    Ok(Residual { name: "omega-invariance".into(), nonzero, witness })
}

/// Structural statement about the truncation: h⁰ = 1, h¹ = 0, h² = [t12,t23]/24.
pub fn associator_is_canonical() -> bool {
    let c = associator_coeffs(false);
    let want = t_mul(&t(0, 1), &t(1, 2)).sub(&t_mul(&t(1, 2), &t(0, 1)));
    c[0] == Lin::basis(Vec::new()) && c[1].is_empty() && c[2].scaled(&int(24)) == want
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{abelian, axb};
    use crate::manin::build_double;

    #[test]
    fn grouping_expands_sums() {
        let op = grouped(&t(0, 1), &[vec![0], vec![1, 2]]).unwrap();
        let want = Op::Sum(vec![Op::scale(int(1), Op::Product(vec![Op::Sum(vec![Op::Omega(0, 1), Op::Omega(0, 2)])]))]);
        assert_eq!(op, want);
        assert!(grouped(&t(0, 1), &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn omega_kills_two_highest_weight_plus_vectors() {
        let d = build_double(&axb()).unwrap();
        let vm = Verma::new(&d);
        let v = SlotVec::vacuum(vec![Slot::Plus, Slot::Plus, Slot::Minus], 0);
        assert!(vm.omega(&v, 0, 1).unwrap().is_zero());
        let w = SlotVec::vacuum(vec![Slot::Minus, Slot::Minus], 0);
        assert!(vm.omega(&w, 0, 1).unwrap().is_zero());
    }

    #[test]
    fn omega_23_on_mixed_vacuum() {
        let d = build_double(&abelian(2)).unwrap();
        let vm = Verma::new(&d);
        let v = SlotVec::vacuum(vec![Slot::Plus, Slot::Plus, Slot::Minus, Slot::Minus], 0);
        let w = vm.omega(&v, 1, 2).unwrap();
        let want = Lin::from_terms((0..2u8).map(|k| (vec![vec![], vec![k + 2], vec![k], vec![]], int(1))));
        assert_eq!(w.terms, want);
    }

    #[test]
    fn associator_fixes_plus_vacuum() {
        let d = build_double(&axb()).unwrap();
        let vm = Verma::new(&d);
        let v = VecSeries::constant(SlotVec::vacuum(vec![Slot::Plus; 3], 0));
        let out = apply_hop(&vm, &phi_op(&singles(3), false).unwrap(), &v).unwrap();
        assert_eq!(out, v);
    }

    #[test]
    fn pentagon_and_hexagons_on_axb() {
        let d = build_double(&axb()).unwrap();
        let vm = Verma::new(&d);
        let kinds = [Slot::Plus, Slot::Minus, Slot::Plus, Slot::Minus];
        let vs = test_vectors(&vm, &kinds, 0, 1).unwrap();
        let p = pentagon_residual(&vm, &vs).unwrap();
        assert_eq!(p.nonzero, 0, "{:?}", p.witness);
        let vs = test_vectors(&vm, &kinds[..3], 0, 2).unwrap();
        let (h1, h2) = hexagon_residuals(&vm, &vs).unwrap();
        assert_eq!(h1.nonzero, 0, "{:?}", h1.witness);
        assert_eq!(h2.nonzero, 0, "{:?}", h2.witness);
    }

    #[test]
    fn hexagons_pin_the_associator_coefficient() {
        let d = build_double(&axb()).unwrap();
        let vm = Verma::new(&d);
        let vs = test_vectors(&vm, &[Slot::Plus, Slot::Minus, Slot::Plus], 0, 2).unwrap();
        let (h1, h2) = hexagon_residuals_scaled(&vm, &vs, &int(2)).unwrap();
        assert!(h1.nonzero + h2.nonzero > 0);
    }

    #[test]
    fn truncation_is_canonical() {
        assert!(associator_is_canonical());
    }
}
