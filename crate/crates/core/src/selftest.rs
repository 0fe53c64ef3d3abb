//! The acceptance suite: eleven numbered criteria over the shipped fixtures.
//!
//! Fixtures inside a criterion may run in parallel; results are sorted by fixture name
//! before they are reported, so output is identical in both modes.

use crate::acyc::{bank_entry, evaluate_entry, graded_value_in_uea, naturality_check, Structure};
use crate::assoc::{
    associator_is_canonical, braid_roundtrip_residual, hexagon_residuals, inverse_residual, omega_invariance_residual, pentagon_residual, singles,
    test_vectors, Residual,
};
use crate::bialg::{catalog, dualize, BialgebraHom, LieBialgebra};
use crate::ekq::{functoriality_check, h2_product_formula, show_element, show_tensor, QuantizedDouble, QuantizedUea, DEFAULT_DUAL_BOUND};
use crate::error::Result;
use crate::kernel::{Lin, Word};
use crate::manin::{build_double, check_cybe, dual_double_mismatches, DoubleAlgebra};
use crate::par::par_map;
use crate::pbw::{normal_words, Env, EnvElement};
use crate::report::Check;
use crate::verma::{Pivot, Slot, Verma};
use crate::ybq::{check_assoc_cybe, cyba_fixtures, non_cyba_fixture, qt_fixtures, quantize_quasitriangular, quantize_r, tau_check};
use serde::Serialize;
use std::time::Instant;

pub const CRITERIA: [&str; 11] = [
    "product h² term agrees with the contraction formula and the mu2_11 expression",
    "Hopf axioms of the quantized double on words of degree ≤ 2",
    "quasitriangular structure of the quantized double",
    "quasiclassical limits of the double and of U_h(a)",
    "classical Yang–Baxter equation for the canonical r of every double",
    "quantization of classical r-matrices in associative algebras",
    "polarization reproduces the universal R-matrix",
    "pentagon and hexagons for the truncated associator",
    "functoriality of the quantization",
    "associativity, coassociativity and multiplicativity of U_h(a)",
    "infrastructure: duality, doubles, PBW and the ψ solver",
];

/// Runtime budgets in seconds for criteria that carry one.
const BUDGET_C1: f64 = 60.0;
pub const BUDGET_TOTAL: f64 = 300.0;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub seconds: f64,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

fn prefixed(fixture: &str, checks: Vec<Check>) -> Vec<Check> {
    checks.into_iter().map(|c| Check { name: format!("{fixture}/{}", c.name), ..c }).collect()
}

/// A fixture that errored out is a failure with the error as its witness.
fn settle(fixture: &str, r: Result<Vec<Check>>) -> Vec<Check> {
    match r {
        Ok(cs) => prefixed(fixture, cs),
        Err(e) => vec![Check::from_residual(format!("{fixture}/error"), "fixture evaluates without error", Some(e.to_string()))],
    }
}

fn sorted(mut groups: Vec<(String, Vec<Check>)>) -> Vec<Check> {
    groups.sort_by(|a, b| a.0.cmp(&b.0));
    groups.into_iter().flat_map(|(_, cs)| cs).collect()
}

fn per_fixture<T: Sync>(items: &[(String, T)], f: impl Fn(&T) -> Result<Vec<Check>> + Sync + Send) -> Vec<Check> {
    let out = par_map(items, |(name, x)| (name.clone(), settle(name, f(x))));
    sorted(out)
}

fn residual_check(name: &str, anchor: &str, r: &Residual) -> Check {
    let w = (r.nonzero > 0).then(|| format!("{} nonzero of {}: {}", r.nonzero, r.name, r.witness.clone().unwrap_or_default()));
    Check::from_residual(name, anchor, w)
}

fn words_up_to(letters: &[u8], d: usize) -> Vec<Word> {
    (0..=d).flat_map(|k| normal_words(letters, k)).collect()
}

fn bialgebras() -> Vec<(String, LieBialgebra)> {
    catalog().bialgebras
}

fn doubles() -> Vec<(String, LieBialgebra)> {
    bialgebras()
}

fn homs() -> Vec<(String, BialgebraHom)> {
    catalog().homs.into_iter().map(|h| (h.name.clone(), h)).collect()
}

fn criterion_1() -> Vec<Check> {
    let start = Instant::now();
    let mu2 = bank_entry("mu2_11").expect("mu2_11 is in the bank");
    let mut checks = per_fixture(&bialgebras(), |a| {
        let u = QuantizedUea::new(a, DEFAULT_DUAL_BOUND)?;
        let names = u.names().to_vec();
        let parts = evaluate_entry(&mu2, &Structure::Bialgebra(a))?;
        let (mut direct, mut bank) = (None, None);
        for p in 0..a.dim() {
            for q in 0..a.dim() {
                let s = u.product_words(&vec![q as u8], &vec![p as u8])?;
                let h2 = h2_product_formula(a, &u.env_a, p, q)?;
                let classical = u.env_a.mul_words(&[q as u8], &[p as u8]);
                if s.coeff(0) != &*classical || !s.coeff(1).is_empty() || s.coeff(2) != &h2 {
                    direct.get_or_insert(format!(
                        "a{}∘a{}: h^0 {}, h^1 {}, h^2 {} vs contraction {}",
                        q + 1,
                        p + 1,
                        show_element(&names, s.coeff(0)),
                        show_element(&names, s.coeff(1)),
                        show_element(&names, s.coeff(2)),
                        show_element(&names, &h2)
                    ));
                }
                let e = graded_value_in_uea(&parts, &u.env_a, &[p, q])?;
                if e != h2 {
                    bank.get_or_insert(format!("({}, {}): mu2_11 gives {}, contraction {}", p + 1, q + 1, show_element(&names, &e), show_element(&names, &h2)));
                }
            }
        }
        Ok(vec![
            Check::from_residual("product-vs-contraction", "a_q∘a_p = a_q a_p + h²·(contraction of δ⊗δ with two brackets)/24", direct),
            Check::from_residual("mu2_11-vs-contraction", "the mu2_11 expression evaluates to the contraction", bank),
        ])
    });
    let t = start.elapsed().as_secs_f64();
    checks.push(Check::from_residual("runtime", "criterion finishes within 60 s", (t >= BUDGET_C1).then(|| format!("{t:.1} s"))));
    checks
}

fn hopf_on(a: &LieBialgebra, degree: usize) -> Result<Vec<Check>> {
    let q = QuantizedDouble::new(a)?;
    let letters: Vec<u8> = (0..q.double.dim() as u8).collect();
    let words = words_up_to(&letters, degree);
    let pairs: Vec<(Word, Word)> = words.iter().flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone()))).collect();
    q.tq.hopf_suite(&words, &pairs)
}

fn criterion_2() -> Vec<Check> {
    per_fixture(&doubles(), |a| hopf_on(a, 2))
}

fn criterion_3() -> Vec<Check> {
    per_fixture(&doubles(), |a| {
        let q = QuantizedDouble::new(a)?;
        let letters: Vec<u8> = (0..q.double.dim() as u8).collect();
        q.tq.quasitriangular_suite(&words_up_to(&letters, 2))
    })
}

fn criterion_4() -> Vec<Check> {
    per_fixture(&bialgebras(), |a| {
        let q = QuantizedDouble::new(a)?;
        let double = Check::from_residual("double", "h⁻¹(Δ − Δ^op)(x) ≡ δ_g(x) mod h", q.tq.quasiclassical_residual(&q.cobracket_tensors())?);
        let u = QuantizedUea::new(a, DEFAULT_DUAL_BOUND)?;
        let mut uea: Vec<Check> = u.suite()?.into_iter().filter(|c| c.name == "quasiclassical-limit").collect();
        for c in &mut uea {
            c.name = "uea".into();
        }
        Ok(std::iter::once(double).chain(uea).collect())
    })
}

fn criterion_5() -> Vec<Check> {
    per_fixture(&doubles(), |a| {
        let d = build_double(a)?;
        let res = check_cybe(&d.r_matrix(), &d)?;
        let names = d.lie().names().to_vec();
        let w = (!res.is_empty()).then(|| show_tensor(&names, &res));
        Ok(vec![Check::from_residual("cybe", "[r12,r13] + [r12,r23] + [r13,r23] = 0 in U(g)^⊗3", w)])
    })
}

fn criterion_6() -> Vec<Check> {
    let mut groups = Vec::new();
    let fx = cyba_fixtures();
    let out = par_map(&fx, |(name, a, r)| {
        let res = (|| -> Result<Vec<Check>> {
            let q = quantize_r(a, r)?;
            let mut cs = q.checks.clone();
            if name == "e12_e12" {
                let mut want = crate::kernel::HSeries::constant(a.tensor_unit(2), crate::kernel::ORDER);
                want.coeff_mut(1).add_term(vec![1, 1], crate::kernel::int(1));
                let w = (q.r != want).then(|| "R differs from 1 + h·E12⊗E12".to_string());
                cs.push(Check::from_residual("exact-r", "R = 1 + h·E12⊗E12", w));
            }
            Ok(cs)
        })();
        (format!("cyba/{name}"), settle(&format!("cyba/{name}"), res))
    });
    groups.extend(out);
    let (a, r) = non_cyba_fixture();
    let rejected = check_assoc_cybe(&a, &r).map(|res| !res.is_empty()).unwrap_or(false) && quantize_r(&a, &r).is_err();
    groups.push((
        "cyba/not_cyba".into(),
        vec![Check::from_residual("cyba/not_cyba/rejected", "a non-solution of the CYBE is refused", (!rejected).then(|| "accepted".into()))],
    ));
    let qt = qt_fixtures();
    let out = par_map(&qt, |(name, a, r)| {
        let res = (|| -> Result<Vec<Check>> {
            let mut cs = tau_check(a, r)?;
            cs.extend(quantize_quasitriangular(a, r, 1)?.checks);
            Ok(cs)
        })();
        (format!("qt/{name}"), settle(&format!("qt/{name}"), res))
    });
    groups.extend(out);
    sorted(groups)
}

fn criterion_7() -> Vec<Check> {
    let small: Vec<(String, LieBialgebra)> = bialgebras().into_iter().filter(|(_, a)| a.dim() <= 2).collect();
    per_fixture(&small, |a| {
        let q = QuantizedDouble::new(a)?;
        let rt = q.polarize_r()?;
        let names = q.double.lie().names().to_vec();
        let w = crate::ekq::series_witness(&rt.sub(&q.tq.rmat), |x| show_tensor(&names, x));
        let mut cs = vec![Check::from_residual("r-tilde-equals-r", "R̃ = R mod h³", w)];
        cs.extend(q.part1_product_check(1)?);
        Ok(cs)
    })
}

fn criterion_8() -> Vec<Check> {
    let mut checks = per_fixture(&doubles(), |a| {
        let d = build_double(a)?;
        let vm = Verma::new(&d);
        let kinds = [Slot::Plus, Slot::Minus, Slot::Plus, Slot::Minus];
        let v4 = test_vectors(&vm, &kinds, 0, 1)?;
        let v3 = test_vectors(&vm, &kinds[..3], 0, 2)?;
        let (h1, h2) = hexagon_residuals(&vm, &v3)?;
        Ok(vec![
            residual_check("pentagon", "pentagon identity for Φ", &pentagon_residual(&vm, &v4)?),
            residual_check("hexagon-1", "first hexagon identity", &h1),
            residual_check("hexagon-2", "second hexagon identity", &h2),
            residual_check("inverse", "Φ·Φ⁻¹ = 1", &inverse_residual(&vm, &singles(3), &v3)?),
            residual_check("braid-roundtrip", "β⁻¹β = 1", &braid_roundtrip_residual(&vm, 3, 0, &v3)?),
            residual_check("omega-invariance", "Ω commutes with the diagonal action", &omega_invariance_residual(&vm, 0, 1, &v3)?),
        ])
    });
    let canon = associator_is_canonical();
    checks.push(Check::from_residual("associator-canonical", "Φ = 1 + (h²/24)[t12,t23] mod h³", (!canon).then(|| "coefficients differ".into())));
    checks
}

fn criterion_9() -> Vec<Check> {
    per_fixture(&homs(), |f| {
        let s = QuantizedUea::new(&f.source, DEFAULT_DUAL_BOUND)?;
        let t = QuantizedUea::new(&f.target, DEFAULT_DUAL_BOUND)?;
        let mut cs = functoriality_check(f, &s, &t, 2)?;
        cs.extend(naturality_check(f)?);
        Ok(cs.into_iter().map(|c| Check { name: c.name.strip_prefix(&format!("{}/", f.name)).unwrap_or(&c.name).to_string(), ..c }).collect())
    })
}

fn criterion_10() -> Vec<Check> {
    per_fixture(&bialgebras(), |a| QuantizedUea::new(a, DEFAULT_DUAL_BOUND)?.suite())
}

fn pbw_checks(d: &DoubleAlgebra) -> Result<Vec<Check>> {
    let env: &Env = d.env();
    let letters: Vec<u8> = (0..d.dim() as u8).collect();
    let names = d.lie().names().to_vec();
    let show = |x: &EnvElement| show_element(&names, x);
    let mut assoc = None;
    let mut coassoc = None;
    let mut mult = None;
    let mut nonempty: Vec<Word> = Vec::new();
    for k in 1..=3 {
        nonempty.extend(normal_words(&letters, k));
    }
    for u in &nonempty {
        for v in &nonempty {
            if u.len() + v.len() > 3 {
                continue;
            }
            let (x, y) = (Lin::basis(u.clone()), Lin::basis(v.clone()));
            let xy = env.multiply(&x, &y);
            let lhs = env.delta0(&xy, 2)?;
            let rhs = env.tensor_mul(&env.delta0(&x, 2)?, &env.delta0(&y, 2)?);
            if lhs != rhs {
                mult.get_or_insert(format!("{u:?} {v:?}: {}", show_tensor(&names, &lhs.sub(&rhs))));
            }
            for w in &nonempty {
                if u.len() + v.len() + w.len() > 3 {
                    continue;
                }
                let z = Lin::basis(w.clone());
                let d = env.multiply(&xy, &z).sub(&env.multiply(&x, &env.multiply(&y, &z)));
                if !d.is_empty() {
                    assoc.get_or_insert(format!("{u:?} {v:?} {w:?}: {}", show(&d)));
                }
            }
        }
        let t = env.delta0(&Lin::basis(u.clone()), 2)?;
        let d = Env::delta0_at(&t, 0).sub(&Env::delta0_at(&t, 1));
        if !d.is_empty() {
            coassoc.get_or_insert(format!("{u:?}: {}", show_tensor(&names, &d)));
        }
    }
    Ok(vec![
        Check::from_residual("pbw-associative", "(xy)z = x(yz) for PBW words of total degree ≤ 3", assoc),
        Check::from_residual("pbw-coassociative", "(Δ₀⊗1)Δ₀ = (1⊗Δ₀)Δ₀ on words of degree ≤ 3", coassoc),
        Check::from_residual("pbw-multiplicative", "Δ₀(xy) = Δ₀(x)Δ₀(y) for total degree ≤ 3", mult),
    ])
}

fn psi_checks(d: &DoubleAlgebra) -> Result<Vec<Check>> {
    let vm = Verma::new(d);
    let names = d.lie().names().to_vec();
    let mut unique = None;
    let mut invariant = None;
    let bound = DEFAULT_DUAL_BOUND;
    for w in words_up_to(&d.a_letters(), 2) {
        let x = Lin::basis(w.clone());
        let first = vm.solve_psi(&x, bound, Pivot::First)?;
        let last = vm.solve_psi(&x, bound, Pivot::Last)?;
        let closed = vm.psi_closed_form(&x, bound)?;
        if first != last || first != closed {
            unique.get_or_insert(format!("ψ for {} depends on the elimination order", show_element(&names, &x)));
        }
        for r in vm.invariance_residuals(&first)? {
            if !r.is_zero() {
                invariant.get_or_insert(format!("ψ for {} is not g₋-invariant", show_element(&names, &x)));
            }
        }
    }
    Ok(vec![
        Check::from_residual("psi-unique", "both pivot orders and the closed form give the same ψ", unique),
        Check::from_residual("psi-invariant", "b·ψ = 0 for every b in g₋ within the dual bound", invariant),
    ])
}

fn criterion_11(started: Instant) -> Vec<Check> {
    let mut checks = per_fixture(&bialgebras(), |a| {
        let mut cs = Vec::new();
        let back = dualize(&dualize(a)?)?;
        cs.push(Check::from_residual("dualize-involution", "(a*)* = a", (&back != a).then(|| "double dual differs".into())));
        let d = build_double(a)?;
        let fails = d.invariant_failures();
        cs.push(Check::from_residual("double-invariants", "Jacobi, invariant pairing, invariant Ω, δ_g = dr", fails.first().cloned()));
        let dd = build_double(&dualize(a)?)?;
        let mism = dual_double_mismatches(&d, &dd);
        cs.push(Check::from_residual("dual-double", "the double of a* is the double of a with the halves swapped", mism.first().cloned()));
        cs.extend(pbw_checks(&d)?);
        cs.extend(psi_checks(&d)?);
        Ok(cs)
    });
    let t = started.elapsed().as_secs_f64();
    checks.push(Check::from_residual("selftest-runtime", "the whole suite finishes within 5 minutes", (t >= BUDGET_TOTAL).then(|| format!("{t:.1} s"))));
    checks
}

/// Run one criterion (1-based). `started` is when the whole suite began.
pub fn run_criterion(id: usize, started: Instant) -> CriterionReport {
    let t = Instant::now();
    let checks = match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(started),
        _ => vec![Check::from_residual("unknown-criterion", "criteria are numbered 1 to 11", Some(id.to_string()))],
    };
    CriterionReport { id, title: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), checks, seconds: t.elapsed().as_secs_f64() }
}

pub fn run_all() -> Vec<CriterionReport> {
    let started = Instant::now();
    (1..=CRITERIA.len()).map(|id| run_criterion(id, started)).collect()
}

pub fn summary_line(r: &CriterionReport) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    format!("criterion {:>2} {status}  {} ({} checks)", r.id, r.title, r.checks.len())
}
