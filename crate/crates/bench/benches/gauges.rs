use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gauge_core::graded::verify_gauge;
use gauge_core::rings::{membership_quotient, Quotient};
use gauge_core::Example51;

fn tower() -> Example51 {
    Example51::new(Example51::default_gamma()).expect("tower builds")
}

fn evaluation(c: &mut Criterion) {
    let e = tower();
    let zs = e.corpus(64, 1);
    c.bench_function("alpha on 64 elements", |b| {
        b.iter(|| zs.iter().map(|z| e.alpha.evaluate(black_box(z)).unwrap()).collect::<Vec<_>>())
    });
    c.bench_function("alpha through the embedding on 64 elements", |b| {
        b.iter(|| zs.iter().map(|z| e.alpha_via_embedding(black_box(z)).unwrap()).collect::<Vec<_>>())
    });
}

fn verification(c: &mut Criterion) {
    let e = tower();
    c.bench_function("verify alpha", |b| b.iter(|| verify_gauge(black_box(&e.alpha), Some(2)).unwrap()));
    c.bench_function("verify alpha_p", |b| b.iter(|| verify_gauge(black_box(&e.alpha_p), Some(1)).unwrap()));
}

fn membership(c: &mut Criterion) {
    let e = tower();
    let qs: Vec<Quotient> = e.corpus(64, 2).into_iter().map(|z| Quotient::element(&e.d, z)).collect();
    c.bench_function("gauge ring membership on 64 quotients", |b| {
        b.iter(|| qs.iter().filter(|q| membership_quotient(&e.alpha, q).unwrap().in_ring()).count())
    });
    c.bench_function("direct membership on 64 quotients", |b| {
        b.iter(|| qs.iter().filter(|q| e.direct_membership(q).unwrap()).count())
    });
}

criterion_group!(benches, evaluation, verification, membership);
criterion_main!(benches);
