use ekq::acyc::{evaluate, parse, Expr, Prim, Structure};
use ekq::bialg::{axb, catalog, check_lie_bialgebra, coboundary_from_r, dualize, BialgebraFile, LieBialgebra};
use ekq::ekq::{QuantizedUea, DEFAULT_DUAL_BOUND};
use ekq::kernel::{int, rat, Module, series_exp, series_inverse, series_mul, HSeries, Lin, Perm, Rational, SparseTensor, Word, ORDER};
use ekq::manin::{build_double, dual_double_mismatches};
use ekq::pbw::{is_normal, Env, EnvElement, EnvTensor};
use ekq::serial::{element_series_record, tensor_series_record, SeriesRecord};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

fn book3_double_env() -> Arc<Env> {
    static ENV: OnceLock<Arc<Env>> = OnceLock::new();
    ENV.get_or_init(|| build_double(&catalog().get("book3").unwrap().clone()).unwrap().env().clone()).clone()
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn word(letters: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..letters, 0..=max_len)
}

fn element(letters: u8, max_len: usize) -> impl Strategy<Value = EnvElement> {
    prop::collection::vec((word(letters, max_len), small_rational()), 0..4).prop_map(|ts| {
        let env = book3_double_env();
        let mut out = Lin::new();
        for (w, c) in ts {
            out.add_scaled(&env.normal_order(&w).unwrap(), &c);
        }
        out
    })
}

fn series(letters: u8) -> impl Strategy<Value = HSeries<EnvElement>> {
    prop::collection::vec(element(letters, 2), ORDER).prop_map(HSeries::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lin_add_sub_and_scale(x in element(6, 2), y in element(6, 2), c in small_rational()) {
        prop_assert_eq!(x.plus(&y).sub(&y), x.clone());
        prop_assert_eq!(x.plus(&y).scaled(&c), x.scaled(&c).plus(&y.scaled(&c)));
        prop_assert!(x.sub(&x).is_empty());
    }

    #[test]
    fn normal_ordering_produces_normal_words(w in word(6, 4)) {
        let env = book3_double_env();
        for (v, _) in &env.normal_order(&w).unwrap() {
            prop_assert!(is_normal(v));
        }
    }

    #[test]
    fn pbw_product_is_associative(u in word(6, 2), v in word(6, 2), w in word(6, 2)) {
        let env = book3_double_env();
        let (x, y, z) = (env.normal_order(&u).unwrap(), env.normal_order(&v).unwrap(), env.normal_order(&w).unwrap());
        prop_assert_eq!(env.multiply(&env.multiply(&x, &y), &z), env.multiply(&x, &env.multiply(&y, &z)));
    }

    #[test]
    fn classical_hopf_maps_respect_products(u in word(6, 2), v in word(6, 2)) {
        let env = book3_double_env();
        let (x, y) = (env.normal_order(&u).unwrap(), env.normal_order(&v).unwrap());
        let xy = env.multiply(&x, &y);
        prop_assert_eq!(env.delta0(&xy, 2).unwrap(), env.tensor_mul(&env.delta0(&x, 2).unwrap(), &env.delta0(&y, 2).unwrap()));
        prop_assert_eq!(env.antipode0(&xy), env.multiply(&env.antipode0(&y), &env.antipode0(&x)));
        prop_assert_eq!(Env::counit0(&xy), Env::counit0(&x) * Env::counit0(&y));
        let t = env.delta0(&x, 2).unwrap();
        prop_assert_eq!(Env::delta0_at(&t, 0), Env::delta0_at(&t, 1));
    }

    #[test]
    fn series_product_is_associative(a in series(6), b in series(6), c in series(6)) {
        let env = book3_double_env();
        let m = |x: &EnvElement, y: &EnvElement| env.multiply(x, y);
        let l = series_mul(&series_mul(&a, &b, m).unwrap(), &c, m).unwrap();
        let r = series_mul(&a, &series_mul(&b, &c, m).unwrap(), m).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn series_inverse_is_two_sided(mut a in series(6)) {
        let env = book3_double_env();
        *a.coeff_mut(0) = Env::one();
        let m = |x: &EnvElement, y: &EnvElement| env.multiply(x, y);
        let inv = series_inverse(&a, &Env::one(), m).unwrap();
        let one = HSeries::constant(Env::one(), ORDER);
        prop_assert_eq!(series_mul(&a, &inv, m).unwrap(), one.clone());
        prop_assert_eq!(series_mul(&inv, &a, m).unwrap(), one);
    }

    #[test]
    fn exponentials_of_opposite_elements_cancel(x in element(6, 2)) {
        let env = book3_double_env();
        let m = |p: &EnvElement, q: &EnvElement| env.multiply(p, q);
        let e = series_exp(&x, &Env::one(), ORDER, m);
        let f = series_exp(&x.neg(), &Env::one(), ORDER, m);
        prop_assert_eq!(series_mul(&e, &f, m).unwrap(), HSeries::constant(Env::one(), ORDER));
    }

    #[test]
    fn series_records_round_trip(a in series(6), b in series(6)) {
        let env = book3_double_env();
        let names = env.lie().names().to_vec();
        let rec = element_series_record(&names, &a, ORDER);
        let text = serde_json::to_string(&rec).unwrap();
        let back: SeriesRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_element_series().unwrap(), a.clone());
        let t: HSeries<EnvTensor> = series_mul(&a.map(|c| ekq::pbw::outer(&[c, &Env::one()])), &b.map(|c| ekq::pbw::outer(&[&Env::one(), c])), |p, q| env.tensor_mul(p, q)).unwrap();
        let rec = tensor_series_record(&names, &t, ORDER);
        let back: SeriesRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
        prop_assert_eq!(back.to_tensor_series().unwrap(), t);
    }
}

// ---- expressions -------------------------------------------------------------

fn perm_of(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Perm::new(v).unwrap())
}

/// Well-typed expressions built so that every composition matches arities.
fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::Prim(Prim::Mu)),
        Just(Expr::Prim(Prim::Delta)),
        Just(Expr::Prim(Prim::R)),
        Just(Expr::Prim(Prim::Unit)),
        (1usize..=3).prop_map(Expr::Id),
        (1usize..=3).prop_flat_map(perm_of).prop_map(Expr::Perm),
    ];
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::Tensor),
            inner.clone().prop_flat_map(|e| {
                let (m, n) = e.arity().unwrap();
                let after = if n > 0 { perm_of(n).prop_map(Some).boxed() } else { Just(None).boxed() };
                let before = if m > 0 { perm_of(m).prop_map(Some).boxed() } else { Just(None).boxed() };
                (Just(e), after, before, small_rational()).prop_map(|(e, a, b, q)| {
                    let mut parts = Vec::new();
                    parts.extend(a.map(Expr::Perm));
                    parts.push(e.clone());
                    parts.extend(b.map(Expr::Perm));
                    let c = if parts.len() > 1 { Expr::Comp(parts) } else { e.clone() };
                    Expr::Sum(vec![(int(1), e), (q, c)])
                })
            }),
        ]
    })
}

fn pool() -> Vec<Expr> {
    ["id1", "comp(mu, delta)", "mu", "comp(mu, perm[2 1])", "delta", "comp(perm[2 1], delta)", "id2", "perm[2 1]", "comp(delta, mu)", "tensor(mu, id1)", "tensor(delta, id1)", "comp(mu, tensor(mu, id1))", "comp(tensor(delta, id1), delta)"]
        .iter()
        .map(|s| parse(s).unwrap())
        .collect()
}

/// (f, h) with f∘h well-typed.
fn composable() -> impl Strategy<Value = (Expr, Expr)> {
    let p = pool();
    let pairs: Vec<(Expr, Expr)> = p
        .iter()
        .flat_map(|f| p.iter().filter(|h| h.arity().unwrap().1 == f.arity().unwrap().0).map(move |h| (f.clone(), h.clone())))
        .collect();
    prop::sample::select(pairs)
}

fn catalog_bialgebra() -> impl Strategy<Value = LieBialgebra> {
    prop::sample::select(catalog().bialgebras.into_iter().map(|(_, g)| g).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printed_expressions_parse_back(e in expr()) {
        let text = e.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn tensor_and_composition_interchange((f, h) in composable(), (g, k) in composable(), a in catalog_bialgebra()) {
        let s = Structure::Bialgebra(&a);
        let lhs = evaluate(&Expr::Comp(vec![Expr::Tensor(vec![f.clone(), g.clone()]), Expr::Tensor(vec![h.clone(), k.clone()])]), &s).unwrap();
        let rhs = evaluate(&Expr::Tensor(vec![Expr::Comp(vec![f, h]), Expr::Comp(vec![g, k])]), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sparse_tensors_round_trip_through_json(e in expr(), a in catalog_bialgebra()) {
        // expressions using r are outside the bialgebra signature
        if let Ok(t) = evaluate(&e, &Structure::Bialgebra(&a)) {
            let back: SparseTensor = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
            prop_assert_eq!(back, t);
        }
    }
}

// ---- bialgebras ----------------------------------------------------------------

fn antisymmetric(n: usize) -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(small_rational(), n * (n - 1) / 2).prop_map(move |v| {
        let mut r = vec![vec![int(0); n]; n];
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let c = it.next().unwrap();
                r[i][j] = c.clone();
                r[j][i] = -c;
            }
        }
        r
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_on_book3_give_consistent_doubles(r in antisymmetric(3)) {
        let g = catalog().get("book3").unwrap().clone();
        // only r with invariant CYBE obstruction define bialgebras
        if let Ok(a) = coboundary_from_r(g.names().to_vec(), g.bracket_table(), &r) {
            prop_assert!(check_lie_bialgebra(3, a.bracket_table(), a.cobracket_table()).unwrap().valid);
            prop_assert_eq!(dualize(&dualize(&a).unwrap()).unwrap(), a.clone());
            let d = build_double(&a).unwrap();
            prop_assert!(d.invariant_failures().is_empty());
            prop_assert!(dual_double_mismatches(&d, &build_double(&dualize(&a).unwrap()).unwrap()).is_empty());
            let file = BialgebraFile::from_bialgebra(&a);
            let back: BialgebraFile = serde_json::from_str(&serde_json::to_string(&file).unwrap()).unwrap();
            prop_assert_eq!(back.to_bialgebra().unwrap(), a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn quantized_uea_axioms_hold_for_rescaled_ax_plus_b(t in small_rational().prop_filter("nonzero", |t| *t != int(0))) {
        // δ(a2) = t·a1∧a2 is a bialgebra for every t
        let g = axb();
        let f: Vec<Vec<Vec<Rational>>> = g.cobracket_table().iter().map(|m| m.iter().map(|row| row.iter().map(|c| c * &t).collect()).collect()).collect();
        let a = LieBialgebra::new(g.names().to_vec(), g.bracket_table().clone(), f).unwrap();
        let u = QuantizedUea::new(&a, DEFAULT_DUAL_BOUND).unwrap();
        for c in u.suite().unwrap() {
            prop_assert!(c.passed(), "{} {:?}", c.name, c.residual);
        }
    }
}
