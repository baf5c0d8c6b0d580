use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use knotzeta::arc_graph::{alexander_spec, ArcGraph};
use knotzeta::corpus::{builtin, lookup};
use knotzeta::knot_model::{ArcId, Tangle};
use knotzeta::par;
use knotzeta::verify::{run_suite, Suite, VerifyOptions};
use knotzeta::zeta::zeta_partial_product_approx;
use num_bigint::BigInt;
use num_rational::BigRational;

fn modes() -> [(&'static str, bool); 2] {
    [("parallel", true), ("sequential", false)]
}

fn run<R>(parallel: bool, f: impl FnOnce() -> R) -> R {
    if parallel {
        f()
    } else {
        par::sequential(f)
    }
}

fn suites(c: &mut Criterion) {
    let corpus = builtin();
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for suite in [Suite::Triple, Suite::Zeta, Suite::Twisted, Suite::All] {
        for (mode, parallel) in modes() {
            group.bench_with_input(BenchmarkId::new(suite.name(), mode), &parallel, |b, &p| {
                b.iter(|| run(p, || run_suite(suite, &corpus, &opts)))
            });
        }
    }
    group.finish();
}

fn euler(c: &mut Criterion) {
    let d = lookup("figure_eight").unwrap().unwrap().diagram;
    let g = ArcGraph::build(&Tangle::cut(&d, &[ArcId(d.n_arcs())]).unwrap())
        .unwrap()
        .weighted(&alexander_spec());
    let t0 = BigRational::new(BigInt::from(4), BigInt::from(5));
    let mut group = c.benchmark_group("euler_product_fig8_len30");
    group.sample_size(10);
    for (mode, parallel) in modes() {
        group.bench_function(mode, |b| {
            b.iter(|| {
                run(parallel, || {
                    zeta_partial_product_approx(&g, &t0, 30).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, suites, euler);
criterion_main!(benches);
