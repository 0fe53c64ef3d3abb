//! Lie bialgebras: structure constants, axiom checks, duality, coboundaries, fixtures.

use crate::error::{EkqError, Result};
use crate::kernel::{format_rational, int, Rational};
use crate::lie::{zero_table, LieAlgebra};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub type Table3 = Vec<Vec<Vec<Rational>>>;

/// [a_i, a_j] = Σ c[i][j][k] a_k and δ(a_i) = Σ f[i][j][k] a_j ⊗ a_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBialgebra {
    names: Vec<String>,
    c: Table3,
    f: Table3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub family: &'static str,
    /// 1-based indices locating the failure.
    pub indices: Vec<usize>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BialgebraReport {
    pub valid: bool,
    pub families: Vec<(&'static str, bool)>,
    pub violations: Vec<Violation>,
}

pub const FAMILIES: [&str; 4] = ["antisymmetry", "jacobi", "co-jacobi", "cocycle"];

fn shape_ok(n: usize, t: &Table3) -> bool {
    t.len() == n && t.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
}

fn fmt_vec(v: &[(usize, Rational)]) -> String {
    v.iter().map(|(i, c)| format!("{}@{}", format_rational(c), i + 1)).collect::<Vec<_>>().join(" + ")
}

/// Check all four identity families; ragged tables are an error, violations are data.
pub fn check_lie_bialgebra(n: usize, c: &Table3, f: &Table3) -> Result<BialgebraReport> {
    if !shape_ok(n, c) || !shape_ok(n, f) {
        return Err(EkqError::Dimension(format!("structure tables must be {n}×{n}×{n}")));
    }
    let mut violations = Vec::new();
    let z = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let s = &c[i][j][k] + &c[j][i][k];
                if s != z && i <= j {
                    violations.push(Violation { family: "antisymmetry", indices: vec![i + 1, j + 1, k + 1], residual: format!("bracket {}", format_rational(&s)) });
                }
                let s = &f[i][j][k] + &f[i][k][j];
                if s != z && j <= k {
                    violations.push(Violation { family: "antisymmetry", indices: vec![i + 1, j + 1, k + 1], residual: format!("cobracket {}", format_rational(&s)) });
                }
            }
        }
    }
    // Jacobi for c and for the dual bracket d[j][k][i] = f[i][j][k].
    let dual: Table3 = (0..n).map(|j| (0..n).map(|k| (0..n).map(|i| f[i][j][k].clone()).collect()).collect()).collect();
    for (family, t) in [("jacobi", c), ("co-jacobi", &dual)] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut res = Vec::new();
                    for m in 0..n {
                        let mut acc = Rational::zero();
                        for l in 0..n {
                            acc += &t[i][j][l] * &t[l][k][m] + &t[j][k][l] * &t[l][i][m] + &t[k][i][l] * &t[l][j][m];
                        }
                        if !acc.is_zero() {
                            res.push((m, acc));
                        }
                    }
                    if !res.is_empty() {
                        violations.push(Violation { family, indices: vec![i + 1, j + 1, k + 1], residual: fmt_vec(&res) });
                    }
                }
            }
        }
    }
    // δ([a_i,a_j]) = a_i·δ(a_j) − a_j·δ(a_i), with x·(u⊗v) = [x,u]⊗v + u⊗[x,v].
    for i in 0..n {
        for j in 0..n {
            let mut bad = Vec::new();
            for m in 0..n {
                for q in 0..n {
                    let mut acc = Rational::zero();
                    for l in 0..n {
                        acc += &c[i][j][l] * &f[l][m][q];
                        acc -= &f[j][l][q] * &c[i][l][m] + &f[j][m][l] * &c[i][l][q];
                        acc += &f[i][l][q] * &c[j][l][m] + &f[i][m][l] * &c[j][l][q];
                    }
                    if !acc.is_zero() {
                        bad.push(format!("{}@({},{})", format_rational(&acc), m + 1, q + 1));
                    }
                }
            }
            if !bad.is_empty() {
                violations.push(Violation { family: "cocycle", indices: vec![i + 1, j + 1], residual: bad.join(" + ") });
            }
        }
    }
    let families = FAMILIES.iter().map(|fam| (*fam, !violations.iter().any(|v| v.family == *fam))).collect();
    Ok(BialgebraReport { valid: violations.is_empty(), families, violations })
}

impl LieBialgebra {
    pub fn new(names: Vec<String>, c: Table3, f: Table3) -> Result<Self> {
        let n = names.len();
        let rep = check_lie_bialgebra(n, &c, &f)?;
        if !rep.valid {
            let v = &rep.violations[0];
            return Err(EkqError::Invalid(format!("not a Lie bialgebra: {} fails at {:?}: {}", v.family, v.indices, v.residual)));
        }
        Ok(LieBialgebra { names, c, f })
    }

    /// Skips validation; for exercising checkers on broken data.
    #[cfg(test)]
    pub(crate) fn new_unchecked(names: Vec<String>, c: Table3, f: Table3) -> Self {
        LieBialgebra { names, c, f }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.f[i][j][k]
    }

    pub fn bracket_table(&self) -> &Table3 {
        &self.c
    }

    pub fn cobracket_table(&self) -> &Table3 {
        &self.f
    }

    pub fn lie(&self) -> LieAlgebra {
        LieAlgebra::from_constants(self.names.clone(), &self.c).expect("validated table")
    }

    pub fn is_cocommutative(&self) -> bool {
        self.f.iter().flatten().flatten().all(|x| x.is_zero())
    }

    pub fn check(&self) -> BialgebraReport {
        check_lie_bialgebra(self.dim(), &self.c, &self.f).expect("validated shape")
    }
}

/// The dual bialgebra on a*: bracket from f, cobracket from c.
pub fn dualize(g: &LieBialgebra) -> Result<LieBialgebra> {
    let n = g.dim();
    let mut c2 = zero_table(n);
    let mut f2 = zero_table(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c2[j][k][i] = g.f[i][j][k].clone();
                f2[k][i][j] = g.c[i][j][k].clone();
            }
        }
    }
    let names = g.names.iter().map(|s| dual_name(s)).collect();
    LieBialgebra::new(names, c2, f2)
}

fn dual_name(s: &str) -> String {
    match s.strip_suffix('*') {
        Some(t) => t.to_string(),
        None => format!("{s}*"),
    }
}

/// δ(x) = [x⊗1 + 1⊗x, r] for an arbitrary r ∈ a⊗a (no antisymmetry requirement).
pub fn coboundary_table(c: &Table3, r: &[Vec<Rational>]) -> Table3 {
    let n = c.len();
    let mut f = zero_table(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut acc = Rational::zero();
                for p in 0..n {
                    acc += &r[p][k] * &c[i][p][j] + &r[j][p] * &c[i][p][k];
                }
                f[i][j][k] = acc;
            }
        }
    }
    f
}

/// The coboundary bialgebra (a, dr) for antisymmetric r.
pub fn coboundary_from_r(names: Vec<String>, c: &Table3, r: &[Vec<Rational>]) -> Result<LieBialgebra> {
    let n = names.len();
    let lie = LieAlgebra::from_constants(names.clone(), c)?;
    lie.check()?;
    if r.len() != n || r.iter().any(|row| row.len() != n) {
        return Err(EkqError::Dimension("r must be an n×n matrix".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if &r[i][j] + &r[j][i] != Rational::zero() {
                return Err(EkqError::Invalid(format!("r is not antisymmetric at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let f = coboundary_table(c, r);
    LieBialgebra::new(names, c.clone(), f).map_err(|e| match e {
        EkqError::Invalid(m) => EkqError::Invalid(format!("CYBE obstruction of r is not invariant ({m})")),
        other => other,
    })
}

/// A linear map between bialgebras; `matrix[t][s]` is the coefficient of target basis t in f(source s).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraHom {
    pub name: String,
    pub source: LieBialgebra,
    pub target: LieBialgebra,
    pub matrix: Vec<Vec<Rational>>,
}

impl BialgebraHom {
    pub fn new(name: &str, source: LieBialgebra, target: LieBialgebra, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let h = BialgebraHom { name: name.to_string(), source, target, matrix };
        let bad = h.residuals()?;
        if let Some(b) = bad.first() {
            return Err(EkqError::Invalid(format!("{} is not a bialgebra map: {b}", h.name)));
        }
        Ok(h)
    }

    pub fn image(&self, s: usize) -> Vec<(usize, Rational)> {
        (0..self.target.dim()).filter(|&t| !self.matrix[t][s].is_zero()).map(|t| (t, self.matrix[t][s].clone())).collect()
    }

    /// Descriptions of every entry where the map fails to commute with bracket or cobracket.
    pub fn residuals(&self) -> Result<Vec<String>> {
        let (ns, nt) = (self.source.dim(), self.target.dim());
        if self.matrix.len() != nt || self.matrix.iter().any(|r| r.len() != ns) {
            return Err(EkqError::Dimension(format!("hom matrix must be {nt}×{ns}")));
        }
        let m = &self.matrix;
        let mut bad = Vec::new();
        for i in 0..ns {
            for j in 0..ns {
                for t in 0..nt {
                    let mut lhs = Rational::zero();
                    for k in 0..ns {
                        lhs += &m[t][k] * &self.source.c[i][j][k];
                    }
                    let mut rhs = Rational::zero();
                    for p in 0..nt {
                        for q in 0..nt {
                            rhs += &m[p][i] * &m[q][j] * &self.target.c[p][q][t];
                        }
                    }
                    if lhs != rhs {
                        bad.push(format!("bracket ({},{})→{}: {}", i + 1, j + 1, t + 1, format_rational(&(lhs - rhs))));
                    }
                }
            }
        }
        for i in 0..ns {
            for t in 0..nt {
                for u in 0..nt {
                    let mut lhs = Rational::zero();
                    for j in 0..ns {
                        for k in 0..ns {
                            lhs += &m[t][j] * &m[u][k] * &self.source.f[i][j][k];
                        }
                    }
                    let mut rhs = Rational::zero();
                    for p in 0..nt {
                        rhs += &m[p][i] * &self.target.f[p][t][u];
                    }
                    if lhs != rhs {
                        bad.push(format!("cobracket {}→({},{}): {}", i + 1, t + 1, u + 1, format_rational(&(lhs - rhs))));
                    }
                }
            }
        }
        Ok(bad)
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn set_anti(t: &mut Table3, i: usize, j: usize, k: usize, v: Rational) {
    t[i][j][k] = v.clone();
    t[j][i][k] = -v;
}

fn set_co_anti(t: &mut Table3, i: usize, j: usize, k: usize, v: Rational) {
    t[i][j][k] = v.clone();
    t[i][k][j] = -v;
}

pub fn abelian(n: usize) -> LieBialgebra {
    LieBialgebra::new(names("a", n), zero_table(n), zero_table(n)).expect("abelian is valid")
}

/// [a1,a2] = a2, δ(a2) = a1∧a2.
pub fn axb() -> LieBialgebra {
    let mut c = zero_table(2);
    let mut f = zero_table(2);
    set_anti(&mut c, 0, 1, 1, int(1));
    set_co_anti(&mut f, 1, 0, 1, int(1));
    LieBialgebra::new(names("a", 2), c, f).expect("axb is valid")
}

/// [a1,a2] = a2, δ(a1) = a1∧a2, δ(a2) = 0: the coboundary of r = a1∧a2.
pub fn tri2() -> LieBialgebra {
    coboundary_from_r(names("a", 2), axb().bracket_table(), &wedge(2, 0, 1)).expect("tri2 is valid")
}

/// [a1,a2] = a2, [a1,a3] = a3 with the coboundary of r = a2∧a3.
pub fn book3() -> LieBialgebra {
    let mut c = zero_table(3);
    set_anti(&mut c, 0, 1, 1, int(1));
    set_anti(&mut c, 0, 2, 2, int(1));
    coboundary_from_r(names("a", 3), &c, &wedge(3, 1, 2)).expect("book3 is valid")
}

/// sl2 = span(H, E, F) with the coboundary of r = E∧F. Not in the catalog; its product
/// correction is not symmetric in the two generators, which makes it a sharper fixture.
pub fn sl2_standard() -> LieBialgebra {
    let mut c = zero_table(3);
    set_anti(&mut c, 0, 1, 1, int(2));
    set_anti(&mut c, 0, 2, 2, int(-2));
    set_anti(&mut c, 1, 2, 0, int(1));
    coboundary_from_r(vec!["H".into(), "E".into(), "F".into()], &c, &wedge(3, 1, 2)).expect("sl2 is valid")
}

/// The antisymmetric matrix of e_i ⊗ e_j − e_j ⊗ e_i.
pub fn wedge(n: usize, i: usize, j: usize) -> Vec<Vec<Rational>> {
    let mut r = vec![vec![Rational::zero(); n]; n];
    r[i][j] = int(1);
    r[j][i] = int(-1);
    r
}

pub struct Catalog {
    pub bialgebras: Vec<(String, LieBialgebra)>,
    pub homs: Vec<BialgebraHom>,
}

impl Catalog {
    pub fn get(&self, name: &str) -> Option<&LieBialgebra> {
        self.bialgebras.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }
}

fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
}

pub fn catalog() -> Catalog {
    let axb_dual = dualize(&axb()).expect("axb dualizes");
    let bialgebras: Vec<(String, LieBialgebra)> = vec![
        ("abelian1".into(), abelian(1)),
        ("abelian2".into(), abelian(2)),
        ("abelian3".into(), abelian(3)),
        ("axb".into(), axb()),
        ("axb_dual".into(), axb_dual),
        ("tri2".into(), tri2()),
        ("book3".into(), book3()),
    ];
    let homs = vec![
        BialgebraHom::new("abelian1_into_axb", abelian(1), axb(), mat(&[&[1], &[0]])),
        BialgebraHom::new("axb_onto_abelian1", axb(), abelian(1), mat(&[&[1, 0]])),
        BialgebraHom::new("tri2_onto_abelian1", tri2(), abelian(1), mat(&[&[1, 0]])),
        BialgebraHom::new("abelian2_into_book3", abelian(2), book3(), mat(&[&[0, 0], &[1, 0], &[0, 1]])),
        BialgebraHom::new("identity_axb", axb(), axb(), mat(&[&[1, 0], &[0, 1]])),
        BialgebraHom::new("zero_tri2_to_abelian1", tri2(), abelian(1), mat(&[&[0, 0]])),
    ]
    .into_iter()
    .map(|h| h.expect("catalog homs are valid"))
    .collect();
    Catalog { bialgebras, homs }
}

// ---- JSON ----------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum IndexRef {
    Pos(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Entry3 {
    pub i: IndexRef,
    pub j: IndexRef,
    pub k: IndexRef,
    #[serde(with = "crate::kernel::rational::serde_rational")]
    pub coeff: Rational,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BialgebraFile {
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default)]
    pub bracket: Vec<Entry3>,
    #[serde(default)]
    pub cobracket: Vec<Entry3>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub auto_antisymmetrize: bool,
}

pub fn resolve(basis: &[String], r: &IndexRef) -> Result<usize> {
    match r {
        IndexRef::Pos(p) if *p >= 1 && *p <= basis.len() => Ok(p - 1),
        IndexRef::Pos(p) => Err(EkqError::UnknownLabel(p.to_string())),
        IndexRef::Label(s) => basis
            .iter()
            .position(|b| b == s)
            .or_else(|| s.parse::<usize>().ok().filter(|p| *p >= 1 && *p <= basis.len()).map(|p| p - 1))
            .ok_or_else(|| EkqError::UnknownLabel(s.clone())),
    }
}

fn fill(basis: &[String], entries: &[Entry3], anti: bool, co: bool) -> Result<Table3> {
    let n = basis.len();
    let mut t = zero_table(n);
    let mut seen: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
    let mut put = |key: (usize, usize, usize), v: Rational, t: &mut Table3| -> Result<()> {
        if let Some(old) = seen.get(&key) {
            if *old != v {
                return Err(EkqError::Malformed(format!("conflicting entries for ({}, {}, {})", key.0 + 1, key.1 + 1, key.2 + 1)));
            }
            return Ok(());
        }
        seen.insert(key, v.clone());
        t[key.0][key.1][key.2] = v;
        Ok(())
    };
    for e in entries {
        let (i, j, k) = (resolve(basis, &e.i)?, resolve(basis, &e.j)?, resolve(basis, &e.k)?);
        put((i, j, k), e.coeff.clone(), &mut t)?;
        if anti {
            let mirror = if co { (i, k, j) } else { (j, i, k) };
            put(mirror, -e.coeff.clone(), &mut t)?;
        }
    }
    Ok(t)
}

impl BialgebraFile {
    pub fn tables(&self) -> Result<(Vec<String>, Table3, Table3)> {
        if self.basis.len() != self.dim {
            return Err(EkqError::Malformed(format!("dim is {} but {} basis labels given", self.dim, self.basis.len())));
        }
        let c = fill(&self.basis, &self.bracket, self.auto_antisymmetrize, false)?;
        let f = fill(&self.basis, &self.cobracket, self.auto_antisymmetrize, true)?;
        Ok((self.basis.clone(), c, f))
    }

    pub fn to_bialgebra(&self) -> Result<LieBialgebra> {
        let (names, c, f) = self.tables()?;
        LieBialgebra::new(names, c, f)
    }

    pub fn from_bialgebra(g: &LieBialgebra) -> Self {
        let n = g.dim();
        let mut bracket = Vec::new();
        let mut cobracket = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !g.c[i][j][k].is_zero() {
                        bracket.push(Entry3 { i: IndexRef::Pos(i + 1), j: IndexRef::Pos(j + 1), k: IndexRef::Pos(k + 1), coeff: g.c[i][j][k].clone() });
                    }
                    if !g.f[i][j][k].is_zero() {
                        cobracket.push(Entry3 { i: IndexRef::Pos(i + 1), j: IndexRef::Pos(j + 1), k: IndexRef::Pos(k + 1), coeff: g.f[i][j][k].clone() });
                    }
                }
            }
        }
        BialgebraFile { dim: n, basis: g.names.clone(), bracket, cobracket, auto_antisymmetrize: false }
    }
}

pub fn parse_bialgebra_json(text: &str) -> Result<LieBialgebra> {
    let file: BialgebraFile = serde_json::from_str(text).map_err(|e| EkqError::Malformed(e.to_string()))?;
    file.to_bialgebra()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_cobracket_is_rejected() {
        let mut f = zero_table(1);
        f[0][0][0] = int(1);
        let rep = check_lie_bialgebra(1, &zero_table(1), &f).unwrap();
        assert!(!rep.valid);
        assert_eq!(rep.violations[0].family, "antisymmetry");
        assert_eq!(rep.violations[0].indices, vec![1, 1, 1]);
    }

    #[test]
    fn ragged_tables_are_errors() {
        assert!(check_lie_bialgebra(2, &zero_table(1), &zero_table(2)).is_err());
    }

    #[test]
    fn tri2_has_expected_cobracket() {
        let g = tri2();
        assert_eq!(g.f(0, 0, 1), &int(1));
        assert_eq!(g.f(0, 1, 0), &int(-1));
        assert!(g.f(1, 0, 1).is_zero());
    }
}
