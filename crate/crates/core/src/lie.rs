//! Finite-dimensional Lie algebras given by structure constants.

use crate::error::{EkqError, Result};
use crate::kernel::{Lin, Module, Rational};
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    /// table[i][j] = [e_i, e_j]
    table: Vec<Vec<Lin<u8>>>,
}

impl LieAlgebra {
    /// `c[i][j][k]` is the coefficient of e_k in [e_i, e_j].
    pub fn from_constants(names: Vec<String>, c: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let n = names.len();
        if n > 255 {
            return Err(EkqError::Dimension("at most 255 basis elements are supported".into()));
        }
        if c.len() != n || c.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
            return Err(EkqError::Dimension("structure constants must be an n×n×n table".into()));
        }
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Lin::from_terms((0..n).map(|k| (k as u8, c[i][j][k].clone()))))
                    .collect()
            })
            .collect();
        Ok(LieAlgebra { names, table })
    }

    pub fn abelian(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebra { names, table: vec![vec![Lin::new(); n]; n] }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn bracket(&self, i: u8, j: u8) -> &Lin<u8> {
        &self.table[i as usize][j as usize]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.table[i][j].get(&(k as u8))
    }

    pub fn bracket_vec(&self, u: &Lin<u8>, v: &Lin<u8>) -> Lin<u8> {
        let mut out = Lin::new();
        for (i, a) in u {
            for (j, b) in v {
                out.add_scaled(self.bracket(*i, *j), &(a * b));
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|row| row.iter().all(|v| v.is_empty()))
    }

    /// Triples (i,j) where [e_i,e_j] + [e_j,e_i] ≠ 0.
    pub fn antisymmetry_violations(&self) -> Vec<(usize, usize, Lin<u8>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i..n {
                let s = self.table[i][j].plus(&self.table[j][i]);
                if !s.is_empty() {
                    out.push((i, j, s));
                }
            }
        }
        out
    }

    /// Triples (i,j,k) with nonzero Jacobi residual [[x,y],z] + [[y,z],x] + [[z,x],y].
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize, Lin<u8>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let e = |x: usize| Lin::basis(x as u8);
                    let mut r = self.bracket_vec(&self.table[i][j], &e(k));
                    r.add_assign(&self.bracket_vec(&self.table[j][k], &e(i)));
                    r.add_assign(&self.bracket_vec(&self.table[k][i], &e(j)));
                    if !r.is_empty() {
                        out.push((i, j, k, r));
                    }
                }
            }
        }
        out
    }

    pub fn check(&self) -> Result<()> {
        if let Some((i, j, _)) = self.antisymmetry_violations().first() {
            return Err(EkqError::Invalid(format!("bracket not antisymmetric at ({}, {})", i + 1, j + 1)));
        }
        if let Some((i, j, k, _)) = self.jacobi_violations().first() {
            return Err(EkqError::Invalid(format!("Jacobi identity fails at ({}, {}, {})", i + 1, j + 1, k + 1)));
        }
        Ok(())
    }

    /// Dense constants c[i][j][k].
    pub fn constants(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| self.constant(i, j, k)).collect()).collect())
            .collect()
    }
}

pub fn zero_table(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); n]; n]; n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::int;

    #[test]
    fn sl2_is_lie() {
        let mut c = zero_table(3);
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = int(v);
            c[j][i][k] = int(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 1);
        let l = LieAlgebra::from_constants(vec!["H".into(), "E".into(), "F".into()], &c).unwrap();
        assert!(l.check().is_ok());
    }
}
