//! The double g = a ⊕ a* of a Lie bialgebra, with pairing, canonical r and Casimir.
//!
//! Basis order: a_1..a_n then b^1..b^n (indices n..2n). The mixed bracket is
//! [a_i, b^j] = f_i^{jk} a_k − c_{ik}^j b^k.

use crate::bialg::{coboundary_table, LieBialgebra, Table3};
use crate::error::{EkqError, Result};
use crate::kernel::{format_rational, int, Lin, Rational};
use crate::lie::{zero_table, LieAlgebra};
use crate::pbw::{embed, opposite, Env, EnvTensor};
use num_traits::Zero;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct DoubleAlgebra {
    base: LieBialgebra,
    structure: Table3,
    pairing: Vec<Vec<Rational>>,
    env: Arc<Env>,
}

/// The raw double bracket table, straight from the three defining relations.
fn double_table(a: &LieBialgebra) -> Table3 {
    let n = a.dim();
    let mut t = zero_table(2 * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t[i][j][k] = a.c(i, j, k).clone();
                t[n + i][n + j][n + k] = a.f(k, i, j).clone();
                let ak = a.f(i, j, k).clone();
                let bk = -a.c(i, k, j).clone();
                t[i][n + j][k] += &ak;
                t[i][n + j][n + k] += &bk;
                t[n + j][i][k] -= &ak;
                t[n + j][i][n + k] -= &bk;
            }
        }
    }
    t
}

/// The mixed bracket rebuilt from coadjoint actions: [x, φ] = ad*_x φ − ad*_φ x,
/// with (ad*_x φ)(y) = −φ([x, y]) and the dual pairing used for a** = a.
fn mixed_from_coadjoint(a: &LieBialgebra, i: usize, j: usize) -> Vec<Rational> {
    let n = a.dim();
    let mut out = vec![Rational::zero(); 2 * n];
    // ad*_{a_i} b^j evaluated on a_k: −b^j([a_i, a_k]).
    for k in 0..n {
        out[n + k] -= a.c(i, k, j);
    }
    // ad*_{b^j} a_i evaluated on b^k: −a_i([b^j, b^k]) = −f_i^{jk}; subtract it.
    for k in 0..n {
        out[k] += a.f(i, j, k);
    }
    out
}

fn pairing_matrix(n: usize) -> Vec<Vec<Rational>> {
    let mut p = vec![vec![Rational::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        p[i][n + i] = int(1);
        p[n + i][i] = int(1);
    }
    p
}

pub fn build_double(a: &LieBialgebra) -> Result<DoubleAlgebra> {
    let rep = a.check();
    if !rep.valid {
        return Err(EkqError::Invalid("cannot double an invalid Lie bialgebra".into()));
    }
    let n = a.dim();
    let structure = double_table(a);
    for i in 0..n {
        for j in 0..n {
            let want = mixed_from_coadjoint(a, i, j);
            if want != structure[i][n + j] {
                return Err(EkqError::Internal(format!("mixed bracket [a{}, b{}] disagrees with the coadjoint form", i + 1, j + 1)));
            }
        }
    }
    let mut names: Vec<String> = a.names().to_vec();
    names.extend(a.names().iter().map(|s| format!("{s}*")));
    let lie = LieAlgebra::from_constants(names, &structure)?;
    let d = DoubleAlgebra { base: a.clone(), structure, pairing: pairing_matrix(n), env: Env::new(lie) };
    if let Some(fail) = d.invariant_failures().into_iter().next() {
        return Err(EkqError::Internal(fail));
    }
    Ok(d)
}

#[derive(Serialize)]
struct Entry {
    indices: Vec<usize>,
    coeff: String,
}

#[derive(Serialize)]
pub struct DoubleRecord {
    dim: usize,
    basis: Vec<String>,
    structure: Vec<Entry>,
    pairing: Vec<Entry>,
    r: Vec<Entry>,
    omega: Vec<Entry>,
}

fn matrix_entries(m: &[Vec<Rational>]) -> Vec<Entry> {
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.push(Entry { indices: vec![i + 1, j + 1], coeff: format_rational(c) });
            }
        }
    }
    out
}

impl DoubleAlgebra {
    pub fn base(&self) -> &LieBialgebra {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        2 * self.n()
    }

    pub fn env(&self) -> &Arc<Env> {
        &self.env
    }

    pub fn lie(&self) -> &LieAlgebra {
        self.env.lie()
    }

    pub fn structure(&self) -> &Table3 {
        &self.structure
    }

    pub fn pairing(&self) -> &[Vec<Rational>] {
        &self.pairing
    }

    pub fn a_letters(&self) -> Vec<u8> {
        (0..self.n() as u8).collect()
    }

    pub fn b_letters(&self) -> Vec<u8> {
        (self.n() as u8..self.dim() as u8).collect()
    }

    /// Σ a_i ⊗ b^i as a 2n×2n matrix.
    pub fn r_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.n();
        let mut r = vec![vec![Rational::zero(); 2 * n]; 2 * n];
        for i in 0..n {
            r[i][n + i] = int(1);
        }
        r
    }

    pub fn omega_matrix(&self) -> Vec<Vec<Rational>> {
        let r = self.r_matrix();
        let m = self.dim();
        (0..m).map(|i| (0..m).map(|j| &r[i][j] + &r[j][i]).collect()).collect()
    }

    /// Cobracket of the double: the coboundary of the canonical r.
    pub fn cobracket(&self) -> Table3 {
        coboundary_table(&self.structure, &self.r_matrix())
    }

    /// Every invariant of the double, as human-readable failure messages.
    pub fn invariant_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (n, m) = (self.n(), self.dim());
        let t = &self.structure;
        let lie = self.lie();
        if let Some((i, j, k, _)) = lie.jacobi_violations().first() {
            out.push(format!("Jacobi identity of the double fails at ({}, {}, {})", i + 1, j + 1, k + 1));
        }
        if !lie.antisymmetry_violations().is_empty() {
            out.push("double bracket is not antisymmetric".into());
        }
        let p = &self.pairing;
        for i in 0..m {
            for j in 0..m {
                if p[i][j] != p[j][i] {
                    out.push(format!("pairing not symmetric at ({}, {})", i + 1, j + 1));
                }
                if (i < n) == (j < n) && !p[i][j].is_zero() {
                    out.push(format!("pairing not isotropic at ({}, {})", i + 1, j + 1));
                }
            }
        }
        // ⟨[x,y],z⟩ + ⟨y,[x,z]⟩ = 0
        for x in 0..m {
            for y in 0..m {
                for z in 0..m {
                    let mut acc = Rational::zero();
                    for k in 0..m {
                        acc += &t[x][y][k] * &p[k][z] + &p[y][k] * &t[x][z][k];
                    }
                    if !acc.is_zero() {
                        out.push(format!("pairing not invariant at ({}, {}, {})", x + 1, y + 1, z + 1));
                    }
                }
            }
        }
        // Ω invariance: Σ_{pq} Ω^{pq} ([x,e_p]⊗e_q + e_p⊗[x,e_q]) = 0.
        let om = self.omega_matrix();
        for x in 0..m {
            for u in 0..m {
                for v in 0..m {
                    let mut acc = Rational::zero();
                    for k in 0..m {
                        acc += &om[k][v] * &t[x][k][u] + &om[u][k] * &t[x][k][v];
                    }
                    if !acc.is_zero() {
                        out.push(format!("Casimir not invariant under e{}", x + 1));
                        break;
                    }
                }
            }
        }
        // δ_g = δ_a ⊕ (−δ_{a*}) equals dr.
        let dr = self.cobracket();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if dr[i][j][k] != *self.base.f(i, j, k) {
                        out.push(format!("dr disagrees with δ on a{}", i + 1));
                    }
                    if dr[n + i][n + j][n + k] != -self.base.c(j, k, i).clone() {
                        out.push(format!("dr disagrees with −δ* on b{}", i + 1));
                    }
                }
            }
        }
        for x in 0..m {
            for u in 0..m {
                for v in 0..m {
                    let mixed = (x < n) != (u < n) || (x < n) != (v < n);
                    if mixed && !dr[x][u][v].is_zero() {
                        out.push(format!("dr leaves its block on e{}", x + 1));
                    }
                }
            }
        }
        out.dedup();
        out
    }

    pub fn record(&self) -> DoubleRecord {
        let m = self.dim();
        let mut structure = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = &self.structure[i][j][k];
                    if !c.is_zero() {
                        structure.push(Entry { indices: vec![i + 1, j + 1, k + 1], coeff: format_rational(c) });
                    }
                }
            }
        }
        DoubleRecord {
            dim: m,
            basis: self.lie().names().to_vec(),
            structure,
            pairing: matrix_entries(&self.pairing),
            r: matrix_entries(&self.r_matrix()),
            omega: matrix_entries(&self.omega_matrix()),
        }
    }
}

/// r = Σ a_i ⊗ b^i in U(g)⊗U(g).
pub fn canonical_r(d: &DoubleAlgebra) -> EnvTensor {
    matrix_to_tensor(&d.r_matrix())
}

pub fn omega(d: &DoubleAlgebra) -> EnvTensor {
    matrix_to_tensor(&d.omega_matrix())
}

pub fn matrix_to_tensor(r: &[Vec<Rational>]) -> EnvTensor {
    let mut out = Lin::new();
    for (i, row) in r.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out.add_term(vec![vec![i as u8], vec![j as u8]], c.clone());
        }
    }
    out
}

/// [r12, r13] + [r12, r23] + [r13, r23] in U(l)^{⊗3}.
pub fn cybe_residual(env: &Env, r: &EnvTensor) -> EnvTensor {
    let r12 = embed(r, &[0, 1], 3);
    let r13 = embed(r, &[0, 2], 3);
    let r23 = embed(r, &[1, 2], 3);
    let mut out = env.tensor_commutator(&r12, &r13);
    out = out.plus(&env.tensor_commutator(&r12, &r23));
    out.plus(&env.tensor_commutator(&r13, &r23))
}

pub fn check_cybe(r: &[Vec<Rational>], d: &DoubleAlgebra) -> Result<EnvTensor> {
    let m = d.dim();
    if r.len() != m || r.iter().any(|row| row.len() != m) {
        return Err(EkqError::Dimension(format!("r must be {m}×{m} for this double")));
    }
    Ok(cybe_residual(d.env(), &matrix_to_tensor(r)))
}

/// The double of a* is the double of a with a_i ↔ b^i; returns mismatches.
pub fn dual_double_mismatches(d: &DoubleAlgebra, dd: &DoubleAlgebra) -> Vec<String> {
    let n = d.n();
    let sw = |i: usize| if i < n { i + n } else { i - n };
    let mut out = Vec::new();
    if dd.n() != n {
        return vec!["dimensions differ".into()];
    }
    for i in 0..2 * n {
        for j in 0..2 * n {
            if d.pairing[i][j] != dd.pairing[sw(i)][sw(j)] {
                out.push(format!("pairing at ({}, {})", i + 1, j + 1));
            }
            for k in 0..2 * n {
                if d.structure[i][j][k] != dd.structure[sw(i)][sw(j)][sw(k)] {
                    out.push(format!("bracket at ({}, {}, {})", i + 1, j + 1, k + 1));
                }
            }
        }
    }
    out
}

/// r as a rank-2 tensor with its opposite, for callers that want Ω = r + r^op directly.
pub fn symmetrize(r: &EnvTensor) -> EnvTensor {
    r.plus(&opposite(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{abelian, axb, catalog};

    #[test]
    fn abelian_double_is_two_dimensional_and_flat() {
        let d = build_double(&abelian(1)).unwrap();
        assert_eq!(d.dim(), 2);
        assert!(d.lie().is_abelian());
        assert_eq!(d.pairing()[0][1], int(1));
    }

    #[test]
    fn axb_mixed_brackets() {
        let d = build_double(&axb()).unwrap();
        let l = d.lie();
        assert!(l.bracket(0, 2).is_empty());
        assert_eq!(l.bracket(0, 3), &Lin::term(3, int(-1)));
        assert_eq!(l.bracket(1, 2), &Lin::term(1, int(1)));
        assert_eq!(l.bracket(1, 3), &Lin::from_terms([(0, int(-1)), (2, int(1))]));
        assert_eq!(l.bracket(2, 3), &Lin::term(3, int(1)));
    }

    #[test]
    fn canonical_r_solves_cybe_on_catalog() {
        for (name, g) in catalog().bialgebras {
            let d = build_double(&g).unwrap();
            assert!(check_cybe(&d.r_matrix(), &d).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn omega_is_r_plus_r_op() {
        let d = build_double(&axb()).unwrap();
        assert_eq!(omega(&d), symmetrize(&canonical_r(&d)));
    }
}
