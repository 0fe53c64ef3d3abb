//! Classical Yang–Baxter algebras and their quantization: the Reshetikhin–Semenov-Tian-Shansky
//! construction, R = (π⊗π)(R̃), and quantization of quasitriangular Lie bialgebras.

use crate::bialg::{coboundary_table, resolve, tri2, Entry3, LieBialgebra, Table3};
use crate::ekq::{series_witness, show_tensor, QuantizedDouble, TSeries, TwistedQuantization};
use crate::error::{EkqError, Result};
use crate::kernel::{format_rational, int, parse_rational, rat, series_mul, HSeries, Lin, Module, Rational, Word, ORDER};
use crate::lie::{zero_table, LieAlgebra};
use crate::manin::{cybe_residual, matrix_to_tensor, DoubleAlgebra};
use crate::pbw::{normal_words, opposite, tensor_one, Env, EnvElement, EnvTensor};
use crate::report::Check;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;
/// Element of A^{⊗k}: keys are index tuples.
pub type ATensor = Lin<Vec<u8>>;

/// e_i e_j = Σ mult[i][j][k] e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    names: Vec<String>,
    mult: Table3,
    unit: Vector,
}

impl AssocAlgebra {
    pub fn new(names: Vec<String>, mult: Table3, unit: Vector) -> Result<Self> {
        let n = names.len();
        if n > 255 || mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) || unit.len() != n {
            return Err(EkqError::Dimension(format!("multiplication table and unit must match dimension {n}")));
        }
        let a = AssocAlgebra { names, mult, unit };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let l = a.mul(&a.mul(&a.e(i), &a.e(j)), &a.e(k));
                    let r = a.mul(&a.e(i), &a.mul(&a.e(j), &a.e(k)));
                    if l != r {
                        return Err(EkqError::Invalid(format!("not associative at ({}, {}, {})", i + 1, j + 1, k + 1)));
                    }
                }
            }
            if a.mul(&a.unit, &a.e(i)) != a.e(i) || a.mul(&a.e(i), &a.unit) != a.e(i) {
                return Err(EkqError::Invalid(format!("unit law fails at {}", i + 1)));
            }
        }
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn e(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let c = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let m = &self.mult[i][j][k];
                    if !m.is_zero() {
                        *o += &c * m;
                    }
                }
            }
        }
        out
    }

    /// A as a Lie algebra under the commutator.
    pub fn commutator_lie(&self) -> LieAlgebra {
        let n = self.dim();
        let mut c = zero_table(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = &self.mult[i][j][k] - &self.mult[j][i][k];
                }
            }
        }
        LieAlgebra::from_constants(self.names.clone(), &c).expect("commutator table has the right shape")
    }

    /// Product in A^{⊗k}.
    pub fn tensor_mul(&self, x: &ATensor, y: &ATensor) -> ATensor {
        let mut out = Lin::new();
        for (s, a) in x {
            for (t, b) in y {
                let mut acc: Lin<Vec<u8>> = Lin::basis(Vec::new());
                for (i, j) in s.iter().zip(t) {
                    let prod = self.mul(&self.e(*i as usize), &self.e(*j as usize));
                    let mut next = Lin::new();
                    for (key, c) in &acc {
                        for (k, m) in prod.iter().enumerate() {
                            let mut nk = key.clone();
                            nk.push(k as u8);
                            next.add_term(nk, c * m);
                        }
                    }
                    acc = next;
                }
                out.add_scaled(&acc, &(a * b));
            }
        }
        out
    }

    pub fn tensor_commutator(&self, x: &ATensor, y: &ATensor) -> ATensor {
        self.tensor_mul(x, y).sub(&self.tensor_mul(y, x))
    }

    /// 1^{⊗k}.
    pub fn tensor_unit(&self, k: usize) -> ATensor {
        let mut out: ATensor = Lin::basis(Vec::new());
        for _ in 0..k {
            let mut next = Lin::new();
            for (key, c) in &out {
                for (i, u) in self.unit.iter().enumerate() {
                    let mut nk = key.clone();
                    nk.push(i as u8);
                    next.add_term(nk, c * u);
                }
            }
            out = next;
        }
        out
    }

    /// r placed in factors (i, j) of A^{⊗k}, other factors the unit.
    pub fn embed_r(&self, r: &Matrix, i: usize, j: usize, k: usize) -> ATensor {
        let mut out = Lin::new();
        let units = self.tensor_unit(k - 2);
        for (p, row) in r.iter().enumerate() {
            for (q, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (rest, u) in &units {
                    let mut key = Vec::with_capacity(k);
                    let mut it = rest.iter();
                    for pos in 0..k {
                        key.push(if pos == i { p as u8 } else if pos == j { q as u8 } else { *it.next().unwrap() });
                    }
                    out.add_term(key, c * u);
                }
            }
        }
        out
    }

    /// The 2×2 matrix algebra with basis E11, E12, E21, E22.
    pub fn mat2() -> Self {
        let names = ["E11", "E12", "E21", "E22"].iter().map(|s| s.to_string()).collect();
        let idx = |a: usize, b: usize| 2 * a + b;
        let mut m = zero_table(4);
        for a in 0..2 {
            for b in 0..2 {
                for d in 0..2 {
                    m[idx(a, b)][idx(b, d)][idx(a, d)] = int(1);
                }
            }
        }
        let mut unit = vec![Rational::zero(); 4];
        unit[idx(0, 0)] = int(1);
        unit[idx(1, 1)] = int(1);
        AssocAlgebra::new(names, m, unit).expect("matrix algebra is associative")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AssocFile {
    pub dim: usize,
    pub basis: Vec<String>,
    pub mult: Vec<Entry3>,
    pub unit: Vec<String>,
}

impl AssocFile {
    pub fn to_algebra(&self) -> Result<AssocAlgebra> {
        if self.basis.len() != self.dim || self.unit.len() != self.dim {
            return Err(EkqError::Malformed(format!("dim is {} but basis/unit lengths differ", self.dim)));
        }
        let mut m = zero_table(self.dim);
        for e in &self.mult {
            let (i, j, k) = (resolve(&self.basis, &e.i)?, resolve(&self.basis, &e.j)?, resolve(&self.basis, &e.k)?);
            if !m[i][j][k].is_zero() && m[i][j][k] != e.coeff {
                return Err(EkqError::Malformed(format!("conflicting entries for ({}, {}, {})", i + 1, j + 1, k + 1)));
            }
            m[i][j][k] = e.coeff.clone();
        }
        let unit = self.unit.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
        AssocAlgebra::new(self.basis.clone(), m, unit)
    }

    pub fn from_algebra(a: &AssocAlgebra) -> Self {
        use crate::bialg::IndexRef::Pos;
        let n = a.dim();
        let mut mult = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !a.mult[i][j][k].is_zero() {
                        mult.push(Entry3 { i: Pos(i + 1), j: Pos(j + 1), k: Pos(k + 1), coeff: a.mult[i][j][k].clone() });
                    }
                }
            }
        }
        AssocFile { dim: n, basis: a.names.clone(), mult, unit: a.unit.iter().map(format_rational).collect() }
    }
}

pub fn parse_assoc_json(text: &str) -> Result<AssocAlgebra> {
    let f: AssocFile = serde_json::from_str(text).map_err(|e| EkqError::Malformed(e.to_string()))?;
    f.to_algebra()
}

/// A two-tensor given as a dense matrix, read from JSON `{"dim": n, "entries": [{"i","j","coeff"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixFile {
    pub dim: usize,
    pub entries: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatrixEntry {
    pub i: crate::bialg::IndexRef,
    pub j: crate::bialg::IndexRef,
    #[serde(with = "crate::kernel::rational::serde_rational")]
    pub coeff: Rational,
}

impl MatrixFile {
    pub fn to_matrix(&self, basis: &[String]) -> Result<Matrix> {
        if self.dim != basis.len() {
            return Err(EkqError::Dimension(format!("tensor has dim {} but the algebra has {}", self.dim, basis.len())));
        }
        let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
        for e in &self.entries {
            let (i, j) = (resolve(basis, &e.i)?, resolve(basis, &e.j)?);
            m[i][j] += &e.coeff;
        }
        Ok(m)
    }
}

fn check_square(r: &Matrix, n: usize) -> Result<()> {
    if r.len() != n || r.iter().any(|row| row.len() != n) {
        return Err(EkqError::Dimension(format!("r must be a {n}×{n} matrix")));
    }
    Ok(())
}

/// [r12, r13] + [r12, r23] + [r13, r23] with A-commutators.
pub fn check_assoc_cybe(a: &AssocAlgebra, r: &Matrix) -> Result<ATensor> {
    check_square(r, a.dim())?;
    let r12 = a.embed_r(r, 0, 1, 3);
    let r13 = a.embed_r(r, 0, 2, 3);
    let r23 = a.embed_r(r, 1, 2, 3);
    let mut out = a.tensor_commutator(&r12, &r13);
    out.add_assign(&a.tensor_commutator(&r12, &r23));
    out.add_assign(&a.tensor_commutator(&r13, &r23));
    Ok(out)
}

/// Row-reduced echelon form; returns pivot columns.
fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    pivots
}

/// r = Σ_k x_k ⊗ y_k with independent x_k (pivot columns of r) and y_k (nonzero rows of rref r).
pub fn rank_factorization(r: &Matrix) -> (Vec<Vector>, Vec<Vector>) {
    let mut red = r.clone();
    let pivots = rref(&mut red);
    let xs = pivots.iter().map(|&c| r.iter().map(|row| row[c].clone()).collect()).collect();
    let ys = red.into_iter().take(pivots.len()).collect();
    (xs, ys)
}

/// Coordinates of v in the span of independent `basis` vectors, if it lies there.
pub fn coordinates(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    let k = basis.len();
    let n = v.len();
    // columns are basis vectors, last column is v
    let mut m: Matrix = (0..n).map(|i| basis.iter().map(|b| b[i].clone()).chain([v[i].clone()]).collect()).collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = m[row][k].clone();
    }
    Some(out)
}

fn to_lin(v: &[Rational]) -> Lin<u8> {
    v.iter().enumerate().map(|(i, c)| (i as u8, c.clone())).collect()
}

fn from_lin(v: &Lin<u8>, n: usize) -> Vector {
    (0..n).map(|i| v.get(&(i as u8))).collect()
}

/// g₊ = span x_k, g₋ = span y_k paired so that r is canonical; g is the double of g₊
/// with the cobracket dual to the bracket of g₋, and π sends a_k ↦ x_k, b^k ↦ y_k.
#[derive(Debug)]
pub struct RsData {
    pub gplus: Vec<Vector>,
    pub gminus: Vec<Vector>,
    pub base: LieBialgebra,
    pub double: DoubleAlgebra,
    /// pi[g] = coordinates of π(g) in the ambient basis.
    pub pi: Vec<Vector>,
}

pub fn rs_construct(ambient: &LieAlgebra, r: &Matrix) -> Result<RsData> {
    let n = ambient.dim();
    check_square(r, n)?;
    let (xs, ys) = rank_factorization(r);
    let k = xs.len();
    let bracket_coords = |basis: &[Vector], i: usize, j: usize, what: &str| -> Result<Vector> {
        let v = from_lin(&ambient.bracket_vec(&to_lin(&basis[i]), &to_lin(&basis[j])), n);
        coordinates(basis, &v).ok_or_else(|| EkqError::Invalid(format!("{what} is not closed under the bracket")))
    };
    let mut c = zero_table(k);
    let mut f = zero_table(k);
    for i in 0..k {
        for j in 0..k {
            let cx = bracket_coords(&xs, i, j, "g₊")?;
            let cy = bracket_coords(&ys, i, j, "g₋")?;
            for l in 0..k {
                c[i][j][l] = cx[l].clone();
                // [y_i, y_j] = Σ_l f_l^{ij} y_l
                f[l][i][j] = cy[l].clone();
            }
        }
    }
    let names = (1..=k).map(|i| format!("x{i}")).collect();
    let base = LieBialgebra::new(names, c, f)?;
    let double = crate::manin::build_double(&base)?;
    let pi = xs.iter().chain(ys.iter()).cloned().collect();
    Ok(RsData { gplus: xs, gminus: ys, base, double, pi })
}

impl RsData {
    pub fn rank(&self) -> usize {
        self.gplus.len()
    }

    /// π([u,v]) = [π(u), π(v)] on all basis pairs of the double, and (π⊗π)(r̃) = r.
    pub fn checks(&self, ambient: &LieAlgebra, r: &Matrix) -> Vec<Check> {
        let n = ambient.dim();
        let m = self.double.dim();
        let lie = self.double.lie();
        let push = |v: &Lin<u8>| -> Vector {
            let mut out = vec![Rational::zero(); n];
            for (g, c) in v {
                for (o, p) in out.iter_mut().zip(&self.pi[*g as usize]) {
                    *o += c * p;
                }
            }
            out
        };
        let mut hom = None;
        'outer: for u in 0..m {
            for v in 0..m {
                let lhs = push(lie.bracket(u as u8, v as u8));
                let rhs = from_lin(&ambient.bracket_vec(&to_lin(&self.pi[u]), &to_lin(&self.pi[v])), n);
                if lhs != rhs {
                    hom = Some(format!("({}, {})", lie.names()[u], lie.names()[v]));
                    break 'outer;
                }
            }
        }
        let k = self.rank();
        let mut pushed = vec![vec![Rational::zero(); n]; n];
        for i in 0..k {
            for p in 0..n {
                for q in 0..n {
                    pushed[p][q] += &self.gplus[i][p] * &self.gminus[i][q];
                }
            }
        }
        let r_back = (&pushed != r).then(|| "(π⊗π)(r̃) differs from r".to_string());
        vec![
            Check::from_residual("pi-homomorphism", "π([x,y]) = [π(x),π(y)]", hom),
            Check::from_residual("pi-pushes-r", "(π⊗π)(r̃) = r", r_back),
        ]
    }
}

/// Extends π to U(g) → B for any unital algebra B given by `one` and `mul`.
struct WordPush<'a, T> {
    images: Vec<T>,
    one: T,
    mul: &'a dyn Fn(&T, &T) -> T,
    memo: HashMap<Word, T>,
}

impl<'a, T: Clone> WordPush<'a, T> {
    fn word(&mut self, w: &[u8]) -> T {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let mut acc = self.one.clone();
        for &g in w {
            acc = (self.mul)(&acc, &self.images[g as usize]);
        }
        self.memo.insert(w.to_vec(), acc.clone());
        acc
    }
}

fn push_series_assoc(a: &AssocAlgebra, pi: &[Vector], s: &TSeries) -> HSeries<ATensor> {
    let mul = |x: &Vector, y: &Vector| a.mul(x, y);
    let mut wp = WordPush { images: pi.to_vec(), one: a.unit.clone(), mul: &mul, memo: HashMap::new() };
    s.map(|c| {
        let mut out = Lin::new();
        for (t, k) in c {
            let mut acc: ATensor = Lin::basis(Vec::new());
            for w in t {
                let v = wp.word(w);
                let mut next = Lin::new();
                for (key, c0) in &acc {
                    for (i, x) in v.iter().enumerate() {
                        let mut nk = key.clone();
                        nk.push(i as u8);
                        next.add_term(nk, c0 * x);
                    }
                }
                acc = next;
            }
            out.add_scaled(&acc, k);
        }
        out
    })
}

fn show_atensor(names: &[String], x: &ATensor) -> String {
    if x.is_empty() {
        return "0".into();
    }
    x.iter()
        .map(|(k, c)| format!("{} {}", format_rational(c), k.iter().map(|&i| names[i as usize].as_str()).collect::<Vec<_>>().join("⊗")))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn is_antisymmetric(r: &Matrix) -> bool {
    (0..r.len()).all(|i| (0..r.len()).all(|j| r[i][j] == -r[j][i].clone()))
}

#[derive(Debug)]
pub struct QuantizedR {
    pub rs: RsData,
    pub r: HSeries<ATensor>,
    pub checks: Vec<Check>,
}

/// R = (π⊗π)(R̃) for a classical r-matrix r in an associative algebra.
pub fn quantize_r(a: &AssocAlgebra, r: &Matrix) -> Result<QuantizedR> {
    let res = check_assoc_cybe(a, r)?;
    if !res.is_empty() {
        return Err(EkqError::Invalid(format!("r does not satisfy the classical Yang–Baxter equation: {}", show_atensor(&a.names, &res))));
    }
    let ambient = a.commutator_lie();
    let rs = rs_construct(&ambient, r)?;
    let mut checks = rs.checks(&ambient, r);
    let qd = QuantizedDouble::from_double(rs.double.clone())?;
    let rt = qd.polarize_r()?;
    let big = push_series_assoc(a, &rs.pi, &rt);
    let names = a.names.clone();
    let show = |x: &ATensor| show_atensor(&names, x);
    let one2 = a.tensor_unit(2);
    let rmat = matrix_atensor(r);
    let first = (big.coeff(0) != &one2 || big.coeff(1) != &rmat).then(|| format!("h^0: {}, h^1: {}", show(big.coeff(0)), show(big.coeff(1))));
    checks.push(Check::from_residual("r-first-order", "R ≡ 1 + hr mod h²", first));
    let emb = |i: usize, j: usize| big.map(|c| embed_atensor(a, c, i, j, 3));
    let (r12, r13, r23) = (emb(0, 1), emb(0, 2), emb(1, 2));
    let mul = |x: &HSeries<ATensor>, y: &HSeries<ATensor>| series_mul(x, y, |p, q| a.tensor_mul(p, q)).expect("orders agree");
    let l = mul(&mul(&r12, &r13), &r23);
    let rr = mul(&mul(&r23, &r13), &r12);
    checks.push(Check::from_residual("qybe", "R12 R13 R23 = R23 R13 R12", series_witness(&l.sub(&rr), show)));
    if is_antisymmetric(r) {
        let op = big.map(|c| c.map_keys(|k| vec![k[1], k[0]]));
        let u = mul(&op, &big).sub(&HSeries::constant(one2, ORDER));
        checks.push(Check::from_residual("unitarity", "R^op R = 1", series_witness(&u, show)));
    }
    Ok(QuantizedR { rs, r: big, checks })
}

fn matrix_atensor(r: &Matrix) -> ATensor {
    let mut out = Lin::new();
    for (i, row) in r.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            out.add_term(vec![i as u8, j as u8], c.clone());
        }
    }
    out
}

/// A two-factor A-tensor placed in factors (i, j) of A^{⊗k}.
fn embed_atensor(a: &AssocAlgebra, x: &ATensor, i: usize, j: usize, k: usize) -> ATensor {
    let units = a.tensor_unit(k - 2);
    let mut out = Lin::new();
    for (key, c) in x {
        for (rest, u) in &units {
            let mut nk = Vec::with_capacity(k);
            let mut it = rest.iter();
            for pos in 0..k {
                nk.push(if pos == i { key[0] } else if pos == j { key[1] } else { *it.next().unwrap() });
            }
            out.add_term(nk, c * u);
        }
    }
    out
}

#[derive(Debug)]
pub struct QuasitriangularQuantization {
    pub rs: RsData,
    pub tq: TwistedQuantization,
    pub checks: Vec<Check>,
}

/// Checks that (a, r) is quasitriangular: CYBE in U(a)^{⊗3} and δ = dr.
pub fn quasitriangular_residual(a: &LieBialgebra, r: &Matrix) -> Result<Option<String>> {
    check_square(r, a.dim())?;
    let env = Env::new(a.lie());
    let res = cybe_residual(&env, &matrix_to_tensor(r));
    if !res.is_empty() {
        return Ok(Some(format!("CYBE residual {}", show_tensor(a.names(), &res))));
    }
    if &coboundary_table(a.bracket_table(), r) != a.cobracket_table() {
        return Ok(Some("cobracket is not the coboundary of r".into()));
    }
    Ok(None)
}

/// U_h(a) for quasitriangular (a, r): J and R pulled back along π: g → a.
pub fn quantize_quasitriangular(a: &LieBialgebra, r: &Matrix, degree: usize) -> Result<QuasitriangularQuantization> {
    if let Some(why) = quasitriangular_residual(a, r)? {
        return Err(EkqError::Invalid(format!("(a, r) is not quasitriangular: {why}")));
    }
    let lie = a.lie();
    let rs = rs_construct(&lie, r)?;
    let mut checks = rs.checks(&lie, r);
    let qd = QuantizedDouble::from_double(rs.double.clone())?;
    let env_a = Env::new(lie);
    let images: Vec<EnvElement> = rs.pi.iter().map(|v| v.iter().enumerate().map(|(i, c)| (vec![i as u8], c.clone())).collect()).collect();
    let mul = |x: &EnvElement, y: &EnvElement| env_a.multiply(x, y);
    let mut wp = WordPush { images, one: Env::one(), mul: &mul, memo: HashMap::new() };
    let ja = qd.tq.j.map(|c| {
        let mut out = Lin::new();
        for (t, k) in c {
            out.add_scaled(&crate::pbw::outer(&[&wp.word(&t[0]), &wp.word(&t[1])]), k);
        }
        out
    });
    let rt = matrix_to_tensor(r);
    let omega_a = rt.plus(&opposite(&rt));
    let tq = TwistedQuantization::new(env_a.clone(), ja, rt, omega_a)?;
    let letters: Vec<u8> = (0..a.dim() as u8).collect();
    let words: Vec<Word> = (0..=degree).flat_map(|d| normal_words(&letters, d)).collect();
    let pairs: Vec<(Word, Word)> = words.iter().flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone()))).collect();
    checks.extend(tq.hopf_suite(&words, &pairs)?);
    checks.extend(tq.quasitriangular_suite(&words)?);
    let expected: Vec<(u8, EnvTensor)> = (0..a.dim())
        .map(|p| {
            let mut t = Lin::new();
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    t.add_term(vec![vec![j as u8], vec![k as u8]], a.f(p, j, k).clone());
                }
            }
            (p as u8, t)
        })
        .collect();
    checks.push(Check::from_residual("quasiclassical-limit", "h⁻¹(Δ − Δ^op) ≡ δ mod h", tq.quasiclassical_residual(&expected)?));
    if is_antisymmetric(r) {
        let env = &tq.env;
        let u = series_mul(&tq.rmat.map(opposite), &tq.rmat, |x, y| env.tensor_mul(x, y))?.sub(&HSeries::constant(tensor_one(2), ORDER));
        checks.push(Check::from_residual("triangular", "R^op R = 1", series_witness(&u, |x| show_tensor(a.names(), x))));
    }
    Ok(QuasitriangularQuantization { rs, tq, checks })
}

/// τ: a ⊕ a* → a, τ(x + f) = x + (f⊗1)(r): a Lie homomorphism with (τ⊗τ)(r̃) = r.
pub fn tau_check(a: &LieBialgebra, r: &Matrix) -> Result<Vec<Check>> {
    if let Some(why) = quasitriangular_residual(a, r)? {
        return Err(EkqError::Invalid(format!("(a, r) is not quasitriangular: {why}")));
    }
    let n = a.dim();
    let d = crate::manin::build_double(a)?;
    let lie = a.lie();
    let tau: Vec<Vector> = (0..2 * n)
        .map(|g| if g < n { (0..n).map(|j| if j == g { int(1) } else { int(0) }).collect() } else { r[g - n].clone() })
        .collect();
    let push = |v: &Lin<u8>| -> Vector {
        let mut out = vec![Rational::zero(); n];
        for (g, c) in v {
            for (o, p) in out.iter_mut().zip(&tau[*g as usize]) {
                *o += c * p;
            }
        }
        out
    };
    let mut hom = None;
    'outer: for u in 0..2 * n {
        for v in 0..2 * n {
            let lhs = push(d.lie().bracket(u as u8, v as u8));
            let rhs = from_lin(&lie.bracket_vec(&to_lin(&tau[u]), &to_lin(&tau[v])), n);
            if lhs != rhs {
                hom = Some(format!("({}, {})", d.lie().names()[u], d.lie().names()[v]));
                break 'outer;
            }
        }
    }
    let mut pushed = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for (j, t) in tau[n + i].iter().enumerate() {
            pushed[i][j] += t;
        }
    }
    let r_back = (&pushed != r).then(|| "(τ⊗τ)(r̃) differs from r".to_string());
    Ok(vec![
        Check::from_residual("tau-homomorphism", "τ([x,y]) = [τ(x),τ(y)]", hom),
        Check::from_residual("tau-pushes-r", "(τ⊗τ)(r̃) = r", r_back),
        Check::pass("tau-restricts-to-identity", "τ|a = id"),
    ])
}

fn mat2_r(terms: &[(usize, usize, Rational)]) -> Matrix {
    let mut r = vec![vec![Rational::zero(); 4]; 4];
    for (i, j, c) in terms {
        r[*i][*j] += c;
    }
    r
}

/// Classical Yang–Baxter algebra fixtures in 2×2 matrices (basis E11, E12, E21, E22).
pub fn cyba_fixtures() -> Vec<(String, AssocAlgebra, Matrix)> {
    let a = AssocAlgebra::mat2();
    vec![
        ("e11_e11".into(), a.clone(), mat2_r(&[(0, 0, int(1))])),
        ("e11_wedge_e12".into(), a.clone(), mat2_r(&[(0, 1, int(1)), (1, 0, int(-1))])),
        ("e12_e12".into(), a.clone(), mat2_r(&[(1, 1, int(1))])),
        ("zero".into(), a, mat2_r(&[])),
    ]
}

/// E12 ⊗ (E11 − E22): not a classical r-matrix.
pub fn non_cyba_fixture() -> (AssocAlgebra, Matrix) {
    (AssocAlgebra::mat2(), mat2_r(&[(1, 0, int(1)), (1, 3, int(-1))]))
}

/// sl2 with r = E⊗F + H⊗H/4.
pub fn sl2_quasitriangular() -> (LieBialgebra, Matrix) {
    let sl2 = crate::bialg::sl2_standard();
    let mut r = vec![vec![Rational::zero(); 3]; 3];
    r[1][2] = int(1);
    r[0][0] = rat(1, 4);
    // dr only sees the antisymmetric part since the symmetric part is ad-invariant
    let f = coboundary_table(sl2.bracket_table(), &r);
    let a = LieBialgebra::new(sl2.names().to_vec(), sl2.bracket_table().clone(), f).expect("sl2 coboundary is valid");
    (a, r)
}

/// Quasitriangular fixtures: tri2 with r = a1∧a2 (triangular) and sl2 with its standard r.
pub fn qt_fixtures() -> Vec<(String, LieBialgebra, Matrix)> {
    let (sl2, r) = sl2_quasitriangular();
    vec![("sl2".into(), sl2, r), ("tri2".into(), tri2(), crate::bialg::wedge(2, 0, 1))]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyba_fixtures_satisfy_cybe() {
        for (name, a, r) in cyba_fixtures() {
            assert!(check_assoc_cybe(&a, &r).unwrap().is_empty(), "{name}");
        }
        let (a, r) = non_cyba_fixture();
        assert!(!check_assoc_cybe(&a, &r).unwrap().is_empty());
        assert!(quantize_r(&a, &r).is_err());
    }

    #[test]
    fn rank_factorization_reproduces_r() {
        for (_, _, r) in cyba_fixtures() {
            let (xs, ys) = rank_factorization(&r);
            let n = r.len();
            let mut back = vec![vec![Rational::zero(); n]; n];
            for (x, y) in xs.iter().zip(&ys) {
                for p in 0..n {
                    for q in 0..n {
                        back[p][q] += &x[p] * &y[q];
                    }
                }
            }
            assert_eq!(back, r);
        }
    }

    #[test]
    fn e12_squared_quantizes_to_first_order() {
        let (_, a, r) = cyba_fixtures().into_iter().find(|f| f.0 == "e12_e12").unwrap();
        let q = quantize_r(&a, &r).unwrap();
        for c in &q.checks {
            assert!(c.passed(), "{} {:?}", c.name, c.residual);
        }
        assert_eq!(q.rs.rank(), 1);
        assert_eq!(q.r.coeff(1), &matrix_atensor(&r));
        assert!(q.r.coeff(2).is_empty());
    }

    #[test]
    fn all_cyba_fixtures_quantize() {
        for (name, a, r) in cyba_fixtures() {
            let q = quantize_r(&a, &r).unwrap();
            for c in &q.checks {
                assert!(c.passed(), "{name}: {} {:?}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn quasitriangular_fixtures() {
        for (name, a, r) in qt_fixtures() {
            for c in tau_check(&a, &r).unwrap() {
                assert!(c.passed(), "{name}: {} {:?}", c.name, c.residual);
            }
            let q = quantize_quasitriangular(&a, &r, 1).unwrap();
            for c in &q.checks {
                assert!(c.passed(), "{name}: {} {:?}", c.name, c.residual);
            }
        }
    }
}
