use criterion::{black_box, criterion_group, criterion_main, Criterion};
use epkit::charpoly::{evaluate_charpoly, symbolic_charpoly};
use epkit::corridor::{corridor_solve, CorridorOptions};
use epkit::epn::{locate_epn, EpnOptions};
use epkit::reality::{classify, ExtremumParams};
use epkit::RBig;
use epkit_bench::{corridor_spacings, generic_couplings};

fn bench_charpoly(c: &mut Criterion) {
    for n in [4, 6, 8] {
        c.bench_function(&format!("symbolic_charpoly N={n}"), |b| b.iter(|| symbolic_charpoly(black_box(n)).unwrap()));
    }
    let x = generic_couplings(6);
    c.bench_function("evaluate_charpoly N=6", |b| b.iter(|| evaluate_charpoly(6, black_box(&x)).unwrap()));
}

fn bench_classify(c: &mut Criterion) {
    for n in [3, 6] {
        let x = generic_couplings(n);
        c.bench_function(&format!("classify N={n}"), |b| b.iter(|| classify(n, black_box(&x)).unwrap()));
    }
}

fn bench_epn(c: &mut Criterion) {
    let mut g = c.benchmark_group("locate_epn");
    g.sample_size(10);
    for n in [3, 4, 5] {
        g.bench_function(format!("N={n}"), |b| b.iter(|| locate_epn(black_box(n), &EpnOptions::default()).unwrap()));
    }
    g.finish();
}

fn bench_corridor(c: &mut Criterion) {
    let mut g = c.benchmark_group("corridor_solve");
    g.sample_size(10);
    for n in [5, 6] {
        let params = ExtremumParams::new(n, corridor_spacings(n)).unwrap();
        let opts = CorridorOptions::new(RBig::from(1) / RBig::from(100));
        // warm the EPN cache so only the corridor solve is timed
        corridor_solve(&params, &opts).unwrap();
        g.bench_function(format!("N={n}"), |b| b.iter(|| corridor_solve(black_box(&params), &opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_charpoly, bench_classify, bench_epn, bench_corridor);
criterion_main!(benches);
