//! Acyclic tensor expressions: AST, textual grammar, evaluation on concrete structures,
//! and a bank of universal formulas.
//!
//! Grammar:
//! ```text
//! expr := "mu" | "delta" | "r" | "unit" | "id" k
//!       | "perm[" i1 i2 ... "]"            (1-based images: factor i goes to position σ(i))
//!       | "tensor(" expr, ... ")"
//!       | "comp(" expr, ... ")"            (the last argument acts first)
//!       | "sum(" q "*" expr, ... ")"       (q an exact rational such as -1/24)
//! ```

use crate::bialg::{BialgebraHom, LieBialgebra};
use crate::error::{EkqError, Result};
use crate::kernel::{format_rational, int, parse_rational, rat, Perm, Rational, SparseTensor};
use crate::lie::LieAlgebra;
use crate::par::par_map;
use crate::pbw::{Env, EnvElement};
use crate::report::Check;
use crate::ybq::{AssocAlgebra, Matrix};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    /// bracket or product, 2 → 1
    Mu,
    /// cobracket, 1 → 2
    Delta,
    /// r-matrix, 0 → 2
    R,
    /// unit, 0 → 1
    Unit,
}

impl Prim {
    pub fn arity(self) -> (usize, usize) {
        match self {
            Prim::Mu => (2, 1),
            Prim::Delta => (1, 2),
            Prim::R => (0, 2),
            Prim::Unit => (0, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Prim::Mu => "mu",
            Prim::Delta => "delta",
            Prim::R => "r",
            Prim::Unit => "unit",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Prim(Prim),
    Id(usize),
    Perm(Perm),
    Tensor(Vec<Expr>),
    Comp(Vec<Expr>),
    Sum(Vec<(Rational, Expr)>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, xs: &[Expr]| -> fmt::Result {
            write!(f, "{head}(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Prim(p) => write!(f, "{}", p.name()),
            Expr::Id(k) => write!(f, "id{k}"),
            Expr::Perm(p) => {
                let imgs: Vec<String> = p.one_based().iter().map(|i| i.to_string()).collect();
                write!(f, "perm[{}]", imgs.join(" "))
            }
            Expr::Tensor(xs) => list(f, "tensor", xs),
            Expr::Comp(xs) => list(f, "comp", xs),
            Expr::Sum(ts) => {
                write!(f, "sum(")?;
                for (i, (q, x)) in ts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}*{x}", format_rational(q))?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Expr {
    /// (inputs, outputs), validating every node.
    pub fn arity(&self) -> Result<(usize, usize)> {
        self.arity_at("root")
    }

    fn arity_at(&self, path: &str) -> Result<(usize, usize)> {
        let err = |msg: String| EkqError::Arity { path: path.to_string(), msg };
        match self {
            Expr::Prim(p) => Ok(p.arity()),
            Expr::Id(k) => Ok((*k, *k)),
            Expr::Perm(p) => Ok((p.len(), p.len())),
            Expr::Tensor(xs) => {
                let mut tot = (0, 0);
                for (i, x) in xs.iter().enumerate() {
                    let (a, b) = x.arity_at(&format!("{path}.tensor[{i}]"))?;
                    tot = (tot.0 + a, tot.1 + b);
                }
                Ok(tot)
            }
            Expr::Comp(xs) => {
                if xs.is_empty() {
                    return Err(err("empty composition".into()));
                }
                let ar: Vec<(usize, usize)> = xs.iter().enumerate().map(|(i, x)| x.arity_at(&format!("{path}.comp[{i}]"))).collect::<Result<_>>()?;
                for i in 0..ar.len() - 1 {
                    if ar[i].0 != ar[i + 1].1 {
                        return Err(err(format!("argument {i} takes {} inputs but argument {} yields {}", ar[i].0, i + 1, ar[i + 1].1)));
                    }
                }
                Ok((ar[ar.len() - 1].0, ar[0].1))
            }
            Expr::Sum(ts) => {
                if ts.is_empty() {
                    return Err(err("empty sum".into()));
                }
                let first = ts[0].1.arity_at(&format!("{path}.sum[0]"))?;
                for (i, (_, x)) in ts.iter().enumerate().skip(1) {
                    let a = x.arity_at(&format!("{path}.sum[{i}]"))?;
                    if a != first {
                        return Err(err(format!("term {i} has arity {a:?}, term 0 has {first:?}")));
                    }
                }
                Ok(first)
            }
        }
    }

    pub fn primitives(&self) -> Vec<Prim> {
        let mut out = Vec::new();
        self.collect_prims(&mut out);
        out.sort_by_key(|p| p.name());
        out.dedup();
        out
    }

    fn collect_prims(&self, out: &mut Vec<Prim>) {
        match self {
            Expr::Prim(p) => out.push(*p),
            Expr::Id(_) | Expr::Perm(_) => {}
            Expr::Tensor(xs) | Expr::Comp(xs) => xs.iter().for_each(|x| x.collect_prims(out)),
            Expr::Sum(ts) => ts.iter().for_each(|(_, x)| x.collect_prims(out)),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(EkqError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(format!("expected `{s}`"))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let r = self.rest();
        let n = r.find(|c: char| !f(c)).unwrap_or(r.len());
        self.pos += n;
        &r[..n]
    }

    fn list(&mut self, mut item: impl FnMut(&mut Self) -> Result<()>) -> Result<()> {
        self.expect("(")?;
        loop {
            item(self)?;
            if self.eat(")") {
                return Ok(());
            }
            self.expect(",")?;
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.skip_ws();
        let start = self.pos;
        let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        match word {
            "mu" => Ok(Expr::Prim(Prim::Mu)),
            "delta" => Ok(Expr::Prim(Prim::Delta)),
            "r" => Ok(Expr::Prim(Prim::R)),
            "unit" => Ok(Expr::Prim(Prim::Unit)),
            "perm" => {
                self.expect("[")?;
                let mut imgs = Vec::new();
                loop {
                    if self.eat("]") {
                        break;
                    }
                    self.eat(",");
                    let at = self.pos;
                    let digits = self.take_while(|c| c.is_ascii_digit());
                    match digits.parse::<usize>() {
                        Ok(v) => imgs.push(v),
                        Err(_) => {
                            self.pos = at;
                            return self.err("expected a permutation image");
                        }
                    }
                }
                Perm::from_one_based(&imgs).map(Expr::Perm).map_err(|e| EkqError::Syntax { pos: start, msg: e.to_string() })
            }
            "tensor" | "comp" => {
                let mut xs = Vec::new();
                self.list(|p| {
                    xs.push(p.expr()?);
                    Ok(())
                })?;
                Ok(if word == "tensor" { Expr::Tensor(xs) } else { Expr::Comp(xs) })
            }
            "sum" => {
                let mut ts = Vec::new();
                self.list(|p| {
                    let at = p.pos;
                    let q = p.take_while(|c| c.is_ascii_digit() || c == '/' || c == '-' || c == '+');
                    let q = parse_rational(q).map_err(|_| EkqError::Syntax { pos: at, msg: "expected a rational coefficient".into() })?;
                    p.expect("*")?;
                    ts.push((q, p.expr()?));
                    Ok(())
                })?;
                Ok(Expr::Sum(ts))
            }
            w if w.starts_with("id") && w.len() > 2 => match w[2..].parse::<usize>() {
                Ok(k) => Ok(Expr::Id(k)),
                Err(_) => {
                    self.pos = start;
                    self.err(format!("bad identity `{w}`"))
                }
            },
            "" => self.err("expected an expression"),
            w => {
                self.pos = start;
                self.err(format!("unknown primitive `{w}`"))
            }
        }
    }
}

/// Parse and validate arities.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input");
    }
    e.arity()?;
    Ok(e)
}

/// Concrete data to evaluate against; each variant supplies one of the three signatures.
#[derive(Clone, Copy, Debug)]
pub enum Structure<'a> {
    /// ([,], δ)
    Bialgebra(&'a LieBialgebra),
    /// ([,], r)
    Quasitriangular(&'a LieAlgebra, &'a Matrix),
    /// (∗, 1, r)
    Cyba(&'a AssocAlgebra, &'a Matrix),
}

impl Structure<'_> {
    pub fn dim(&self) -> usize {
        match self {
            Structure::Bialgebra(g) => g.dim(),
            Structure::Quasitriangular(l, _) => l.dim(),
            Structure::Cyba(a, _) => a.dim(),
        }
    }

    pub fn signature(&self) -> &'static str {
        match self {
            Structure::Bialgebra(_) => "LBA",
            Structure::Quasitriangular(..) => "QTLBA",
            Structure::Cyba(..) => "CYBA",
        }
    }

    fn prim(&self, p: Prim) -> Result<SparseTensor> {
        let n = self.dim();
        let mismatch = || EkqError::Invalid(format!("primitive `{}` is not part of the {} signature", p.name(), self.signature()));
        let (ar_in, ar_out) = p.arity();
        let mut t = SparseTensor::zero(vec![n; ar_in], vec![n; ar_out]);
        match (p, self) {
            (Prim::Mu, Structure::Bialgebra(g)) => fill3(&mut t, n, |i, j, k| g.c(i, j, k).clone())?,
            (Prim::Mu, Structure::Quasitriangular(l, _)) => fill3(&mut t, n, |i, j, k| l.constant(i, j, k))?,
            (Prim::Mu, Structure::Cyba(a, _)) => {
                for i in 0..n {
                    for j in 0..n {
                        for (k, c) in a.mul(&a.e(i), &a.e(j)).into_iter().enumerate() {
                            t.add_entry(vec![i, j, k], c)?;
                        }
                    }
                }
            }
            (Prim::Delta, Structure::Bialgebra(g)) => fill3(&mut t, n, |i, j, k| g.f(i, j, k).clone())?,
            (Prim::R, Structure::Quasitriangular(_, r)) | (Prim::R, Structure::Cyba(_, r)) => {
                if r.len() != n || r.iter().any(|row| row.len() != n) {
                    return Err(EkqError::Dimension(format!("r must be {n}×{n}")));
                }
                for (i, row) in r.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        t.add_entry(vec![i, j], c.clone())?;
                    }
                }
            }
            (Prim::Unit, Structure::Cyba(a, _)) => {
                for (i, c) in a.unit().iter().enumerate() {
                    t.add_entry(vec![i], c.clone())?;
                }
            }
            _ => return Err(mismatch()),
        }
        Ok(t)
    }
}

fn fill3(t: &mut SparseTensor, n: usize, f: impl Fn(usize, usize, usize) -> Rational) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                t.add_entry(vec![i, j, k], f(i, j, k))?;
            }
        }
    }
    Ok(())
}

pub fn evaluate(e: &Expr, s: &Structure) -> Result<SparseTensor> {
    e.arity()?;
    eval(e, s)
}

fn eval(e: &Expr, s: &Structure) -> Result<SparseTensor> {
    let n = s.dim();
    match e {
        Expr::Prim(p) => s.prim(*p),
        Expr::Id(k) => Ok(SparseTensor::identity(vec![n; *k])),
        Expr::Perm(p) => SparseTensor::permutation(vec![n; p.len()], p),
        Expr::Tensor(xs) => {
            let mut acc = SparseTensor::identity(Vec::new());
            for x in xs {
                acc = acc.tensor(&eval(x, s)?);
            }
            Ok(acc)
        }
        Expr::Comp(xs) => {
            let mut acc = eval(&xs[xs.len() - 1], s)?;
            for x in xs[..xs.len() - 1].iter().rev() {
                acc = eval(x, s)?.compose(&acc)?;
            }
            Ok(acc)
        }
        Expr::Sum(ts) => {
            let (a, b) = e.arity()?;
            let mut acc = SparseTensor::zero(vec![n; a], vec![n; b]);
            for (q, x) in ts {
                acc = acc.add_scaled(&eval(x, s)?, q)?;
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Debug)]
pub struct BankEntry {
    pub name: &'static str,
    pub signature: &'static str,
    /// The value is the direct sum of the parts (graded by output arity).
    pub parts: Vec<Expr>,
    pub expect_zero: bool,
}

fn p(text: &str) -> Expr {
    parse(text).expect("bank expressions parse")
}

/// Named universal expressions.
pub fn universal_bank() -> Vec<BankEntry> {
    // x·δ(y) = (ad_x ⊗ 1 + 1 ⊗ ad_x) δ(y)
    let act = "sum(1*comp(tensor(mu, id1), tensor(id1, delta)), 1*comp(tensor(id1, mu), perm[2 1 3], tensor(id1, delta)))";
    vec![
        BankEntry { name: "antisymmetry", signature: "LBA", parts: vec![p("sum(1*mu, 1*comp(mu, perm[2 1]))")], expect_zero: true },
        BankEntry {
            name: "jacobi",
            signature: "LBA",
            parts: vec![p("sum(1*comp(mu, tensor(mu, id1)), 1*comp(mu, tensor(mu, id1), perm[3 1 2]), 1*comp(mu, tensor(mu, id1), perm[2 3 1]))")],
            expect_zero: true,
        },
        BankEntry {
            name: "co_jacobi",
            signature: "LBA",
            parts: vec![p(
                "sum(1*comp(tensor(delta, id1), delta), 1*comp(perm[2 3 1], tensor(delta, id1), delta), 1*comp(perm[3 1 2], tensor(delta, id1), delta))",
            )],
            expect_zero: true,
        },
        BankEntry {
            name: "cocycle",
            signature: "LBA",
            parts: vec![p(&format!("sum(1*comp(delta, mu), -1*{act}, 1*comp({act}, perm[2 1]))"))],
            expect_zero: true,
        },
        BankEntry {
            name: "cybe",
            signature: "CYBA",
            parts: vec![p(
                "sum(1*comp(tensor(mu, id2), perm[1 3 2 4], tensor(r, r)), -1*comp(tensor(mu, id2), perm[2 3 1 4], tensor(r, r)), \
                 1*comp(tensor(id1, mu, id1), tensor(r, r)), -1*comp(tensor(id1, mu, id1), perm[1 3 2 4], tensor(r, r)), \
                 1*comp(tensor(id2, mu), perm[1 3 2 4], tensor(r, r)), -1*comp(tensor(id2, mu), perm[1 4 2 3], tensor(r, r)))",
            )],
            expect_zero: true,
        },
        BankEntry {
            name: "cybe_lie",
            signature: "QTLBA",
            parts: vec![p(
                "sum(1*comp(tensor(mu, id2), perm[1 3 2 4], tensor(r, r)), 1*comp(tensor(id1, mu, id1), tensor(r, r)), \
                 1*comp(tensor(id2, mu), perm[1 3 2 4], tensor(r, r)))",
            )],
            expect_zero: true,
        },
        BankEntry {
            name: "mu2_11",
            signature: "LBA",
            parts: vec![
                p("sum(1/24*comp(tensor(mu, id1), tensor(id1, mu, id1), tensor(delta, delta)))"),
                p("sum(1/24*comp(tensor(mu, id2), perm[1 3 2 4], tensor(delta, delta)))"),
            ],
            expect_zero: false,
        },
    ]
}

pub fn bank_entry(name: &str) -> Option<BankEntry> {
    universal_bank().into_iter().find(|e| e.name == name)
}

/// The image in U(a) of a graded value on the input a_p ⊗ a_q: output words are multiplied in order.
pub fn graded_value_in_uea(parts: &[SparseTensor], env: &Env, inputs: &[usize]) -> Result<EnvElement> {
    let mut out = EnvElement::new();
    for t in parts {
        let m = t.arity_in();
        for (key, c) in t.entries() {
            if key[..m] == *inputs {
                let w: Vec<u8> = key[m..].iter().map(|&i| i as u8).collect();
                crate::kernel::Module::add_scaled(&mut out, &env.normal_order(&w)?, c);
            }
        }
    }
    Ok(out)
}

pub fn evaluate_entry(e: &BankEntry, s: &Structure) -> Result<Vec<SparseTensor>> {
    if e.signature != s.signature() {
        return Err(EkqError::Invalid(format!("{} uses the {} signature, not {}", e.name, e.signature, s.signature())));
    }
    e.parts.iter().map(|x| evaluate(x, s)).collect()
}

fn hom_tensor(f: &BialgebraHom) -> Result<SparseTensor> {
    let mut t = SparseTensor::zero(vec![f.source.dim()], vec![f.target.dim()]);
    for (ti, row) in f.matrix.iter().enumerate() {
        for (s, c) in row.iter().enumerate() {
            t.add_entry(vec![s, ti], c.clone())?;
        }
    }
    Ok(t)
}

fn power(t: &SparseTensor, k: usize) -> SparseTensor {
    let mut acc = SparseTensor::identity(Vec::new());
    for _ in 0..k {
        acc = acc.tensor(t);
    }
    acc
}

/// eval_target(e) ∘ f^{⊗m} = f^{⊗n} ∘ eval_source(e) for every LBA bank entry.
pub fn naturality_check(f: &BialgebraHom) -> Result<Vec<Check>> {
    let ft = hom_tensor(f)?;
    let bank: Vec<BankEntry> = universal_bank().into_iter().filter(|e| e.signature == "LBA").collect();
    let res = par_map(&bank, |e| -> Result<Check> {
        let mut witness = None;
        for x in &e.parts {
            let (m, n) = x.arity()?;
            let lhs = evaluate(x, &Structure::Bialgebra(&f.target))?.compose(&power(&ft, m))?;
            let rhs = power(&ft, n).compose(&evaluate(x, &Structure::Bialgebra(&f.source))?)?;
            let d = lhs.sub(&rhs)?;
            if let Some((k, c)) = d.entries().iter().next() {
                witness.get_or_insert(format!("{x}: entry {:?} = {}", k.iter().map(|i| i + 1).collect::<Vec<_>>(), format_rational(c)));
            }
        }
        Ok(Check::from_residual(format!("{}/{}", f.name, e.name), "eval(e)∘f^{⊗m} = f^{⊗n}∘eval(e)", witness))
    });
    res.into_iter().collect()
}

/// Sf intertwines the quantized product and coproduct on words of degree ≤ `degree`.
pub fn functoriality_check(f: &BialgebraHom, degree: usize) -> Result<Vec<Check>> {
    use crate::ekq::{QuantizedUea, DEFAULT_DUAL_BOUND};
    let s = QuantizedUea::new(&f.source, DEFAULT_DUAL_BOUND)?;
    let t = QuantizedUea::new(&f.target, DEFAULT_DUAL_BOUND)?;
    crate::ekq::functoriality_check(f, &s, &t, degree)
}

/// Symmetrization weights 1/l! on all permutations of l factors, as an expression.
pub fn symmetrizer(l: usize) -> Expr {
    let perms = Perm::all(l);
    let mut fact = int(1);
    for i in 2..=l {
        fact *= int(i as i64);
    }
    let w = rat(1, 1) / fact;
    Expr::Sum(perms.into_iter().map(|s| (w.clone(), Expr::Perm(s))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bialg::{axb, catalog, sl2_standard};
    use crate::ekq::h2_product_formula;
    use crate::ybq::cyba_fixtures;

    #[test]
    fn grammar_examples() {
        let e = parse("comp(mu, perm[2 1])").unwrap();
        assert_eq!(e.arity().unwrap(), (2, 1));
        assert_eq!(parse("tensor(id1, delta)").unwrap().arity().unwrap(), (2, 3));
        assert_eq!(parse("comp(mu, tensor(mu, id1))").unwrap().arity().unwrap(), (3, 1));
        assert!(matches!(parse("comp(mu, delta, mu, mu)"), Err(EkqError::Arity { .. })));
        assert!(matches!(parse("comp(mu, perm[2 1]"), Err(EkqError::Syntax { .. })));
        assert!(matches!(parse("foo"), Err(EkqError::Syntax { pos: 0, .. })));
        assert!(matches!(parse("perm[1 1]"), Err(EkqError::Syntax { .. })));
    }

    #[test]
    fn print_parse_roundtrip_on_bank() {
        for e in universal_bank() {
            for x in &e.parts {
                let s = x.to_string();
                assert_eq!(&parse(&s).unwrap(), x);
                assert_eq!(parse(&s).unwrap().to_string(), s);
            }
        }
    }

    #[test]
    fn swapped_bracket_is_minus_bracket() {
        for (_, g) in catalog().bialgebras.iter().chain([("sl2".to_string(), sl2_standard())].iter()) {
            let s = Structure::Bialgebra(g);
            let a = evaluate(&parse("comp(mu, perm[2 1])").unwrap(), &s).unwrap();
            let b = evaluate(&parse("mu").unwrap(), &s).unwrap();
            assert_eq!(a, b.scale(&int(-1)));
        }
    }

    #[test]
    fn axiom_expressions_vanish() {
        for (name, g) in &catalog().bialgebras {
            for e in universal_bank().iter().filter(|e| e.expect_zero && e.signature == "LBA") {
                for t in evaluate_entry(e, &Structure::Bialgebra(g)).unwrap() {
                    assert!(t.is_zero(), "{name}: {}", e.name);
                }
            }
        }
        let cybe = bank_entry("cybe").unwrap();
        for (name, a, r) in cyba_fixtures() {
            assert!(evaluate_entry(&cybe, &Structure::Cyba(&a, &r)).unwrap()[0].is_zero(), "{name}");
        }
        let (a, r) = crate::ybq::non_cyba_fixture();
        assert!(!evaluate_entry(&cybe, &Structure::Cyba(&a, &r)).unwrap()[0].is_zero());
        let (g, r) = crate::ybq::sl2_quasitriangular();
        let lie = g.lie();
        assert!(evaluate_entry(&bank_entry("cybe_lie").unwrap(), &Structure::Quasitriangular(&lie, &r)).unwrap()[0].is_zero());
    }

    #[test]
    fn axiom_expressions_agree_with_checker_on_broken_data() {
        use crate::bialg::{book3, check_lie_bialgebra};
        let g = book3();
        let mut broken = None;
        'search: for i in 0..3 {
            for j in 0..3 {
                for k in j + 1..3 {
                    let mut f = g.cobracket_table().clone();
                    f[i][j][k] += int(1);
                    f[i][k][j] -= int(1);
                    let rep = check_lie_bialgebra(3, g.bracket_table(), &f).unwrap();
                    if !rep.valid {
                        broken = Some((f, rep));
                        break 'search;
                    }
                }
            }
        }
        let (f, rep) = broken.expect("some perturbation breaks the axioms");
        let bad = LieBialgebra::new_unchecked(g.names().to_vec(), g.bracket_table().clone(), f);
        let s = Structure::Bialgebra(&bad);
        for (entry, family) in [("cocycle", "cocycle"), ("co_jacobi", "co-jacobi"), ("jacobi", "jacobi")] {
            let zero = evaluate_entry(&bank_entry(entry).unwrap(), &s).unwrap()[0].is_zero();
            let ok = rep.families.iter().find(|(n, _)| *n == family).unwrap().1;
            assert_eq!(zero, ok, "{entry}");
        }
    }

    #[test]
    fn mu2_11_matches_contraction() {
        let entry = bank_entry("mu2_11").unwrap();
        for (_, g) in catalog().bialgebras.iter().chain([("sl2".to_string(), sl2_standard())].iter()) {
            let env = Env::new(g.lie());
            let parts = evaluate_entry(&entry, &Structure::Bialgebra(g)).unwrap();
            for p in 0..g.dim() {
                for q in 0..g.dim() {
                    assert_eq!(graded_value_in_uea(&parts, &env, &[p, q]).unwrap(), h2_product_formula(g, &env, p, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let (a, r) = crate::ybq::non_cyba_fixture();
        assert!(evaluate(&parse("delta").unwrap(), &Structure::Cyba(&a, &r)).is_err());
        assert!(evaluate_entry(&bank_entry("cocycle").unwrap(), &Structure::Cyba(&a, &r)).is_err());
    }

    #[test]
    fn naturality_on_catalog_homs() {
        for f in &catalog().homs {
            for c in naturality_check(f).unwrap() {
                assert!(c.passed(), "{} {:?}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn symmetrizer_is_idempotent() {
        let g = axb();
        let s = Structure::Bialgebra(&g);
        let e = symmetrizer(3);
        let once = evaluate(&e, &s).unwrap();
        let twice = evaluate(&Expr::Comp(vec![e.clone(), e]), &s).unwrap();
        assert_eq!(once, twice);
    }
}
