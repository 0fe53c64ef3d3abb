use criterion::{criterion_group, criterion_main, Criterion};
use ekq::bialg::catalog;
use ekq::ekq::{QuantizedDouble, QuantizedUea, DEFAULT_DUAL_BOUND};
use ekq::kernel::Word;
use ekq::par::{is_parallel, sequential};
use ekq::pbw::normal_words;
use ekq::report::Check;

fn hopf(q: &QuantizedDouble) -> Vec<Check> {
    let letters: Vec<u8> = (0..q.double.dim() as u8).collect();
    let words: Vec<Word> = (0..=1).flat_map(|d| normal_words(&letters, d)).collect();
    let pairs: Vec<(Word, Word)> = words.iter().flat_map(|u| words.iter().map(move |v| (u.clone(), v.clone()))).collect();
    q.tq.hopf_suite(&words, &pairs).unwrap()
}

fn uea(a: &ekq::bialg::LieBialgebra) -> Vec<Check> {
    // a fresh instance so the product cache starts empty
    QuantizedUea::new(a, DEFAULT_DUAL_BOUND).unwrap().suite().unwrap()
}

fn bench(c: &mut Criterion) {
    let cat = catalog();
    let book3 = cat.get("book3").unwrap().clone();
    let q = QuantizedDouble::new(&book3).unwrap();
    // both modes must agree before timing means anything
    assert_eq!(hopf(&q), sequential(|| hopf(&q)));
    assert_eq!(uea(&book3), sequential(|| uea(&book3)));

    let mut g = c.benchmark_group("hopf_suite_book3_double");
    g.sample_size(10);
    if is_parallel() {
        g.bench_function("parallel", |b| b.iter(|| hopf(&q)));
    }
    g.bench_function("sequential", |b| b.iter(|| sequential(|| hopf(&q))));
    g.finish();

    let mut g = c.benchmark_group("uea_suite_book3");
    g.sample_size(10);
    if is_parallel() {
        g.bench_function("parallel", |b| b.iter(|| uea(&book3)));
    }
    g.bench_function("sequential", |b| b.iter(|| sequential(|| uea(&book3))));
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
