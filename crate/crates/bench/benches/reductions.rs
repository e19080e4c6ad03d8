use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lecount::circuit::{count_satisfying, reduce_3sat, CnfFormula};
use lecount::height2::{count_qp_mod, recover_ext_height2};
use lecount::incidence::{count_jp_recurrence, recover_ext_incidence};
use lecount_suite::posets;

fn jp_recurrence(c: &mut Criterion) {
    let mut group = c.benchmark_group("jp_recurrence");
    for p in [11u64, 47, 101] {
        group.bench_with_input(BenchmarkId::from_parameter(p), &p, |b, &p| b.iter(|| count_jp_recurrence(black_box(p)).unwrap()));
    }
    group.finish();
}

fn height2(c: &mut Criterion) {
    let ps = posets(11, 4, 4, 0.4);
    c.bench_function("height2/qp_mod_n4_p7", |b| b.iter(|| ps.iter().map(|p| count_qp_mod(black_box(p), 7).unwrap()).collect::<Vec<_>>()));
    let small = posets(12, 4, 3, 0.4);
    c.bench_function("height2/recover_n3", |b| b.iter(|| small.iter().map(|p| recover_ext_height2(black_box(p)).unwrap()).collect::<Vec<_>>()));
}

fn incidence_recovery(c: &mut Criterion) {
    let small = posets(13, 2, 3, 0.4);
    c.bench_function("incidence/recover_n3", |b| b.iter(|| small.iter().map(|p| recover_ext_incidence(black_box(p)).unwrap()).collect::<Vec<_>>()));
}

fn sat_reduction(c: &mut Criterion) {
    let f = CnfFormula::new(3, vec![[1, -2, 3], [-1, 2, 3], [1, 2, -3]]).unwrap();
    c.bench_function("reduce_3sat/count_3_clauses", |b| {
        b.iter(|| count_satisfying(&reduce_3sat(black_box(&f)).unwrap()).unwrap())
    });
}

criterion_group!(benches, jp_recurrence, height2, incidence_recovery, sat_reduction);
criterion_main!(benches);
