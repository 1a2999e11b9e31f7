use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;

use trinogen::monogenity::{disc_trinomial, verdict, Trinomial, VerdictOptions};
use trinogen::ore::factor_p;
use trinogen::polyring::{discriminant, DensePolyZ};

fn tri(n: usize, a: i64, b: i64) -> Trinomial {
    Trinomial::new(n, 1, BigInt::from(a), BigInt::from(b)).unwrap()
}

fn discriminants(c: &mut Criterion) {
    let mut g = c.benchmark_group("discriminant");
    for n in [8usize, 16, 32, 64] {
        let t = tri(n, 12, 3);
        let f = t.to_poly();
        g.bench_with_input(BenchmarkId::new("closed_form", n), &t, |bch, t| {
            bch.iter(|| disc_trinomial(black_box(t)))
        });
        g.bench_with_input(BenchmarkId::new("resultant", n), &f, |bch, f| {
            bch.iter(|| discriminant(black_box(f)).unwrap())
        });
    }
    g.finish();
}

fn factorizations(c: &mut Criterion) {
    let mut g = c.benchmark_group("factor_p");
    let inputs = [
        ("x^8+12x+3", tri(8, 12, 3).to_poly()),
        ("x^16+8x+7", tri(16, 8, 7).to_poly()),
        ("x^64-65", tri(64, 0, -65).to_poly()),
        ("x^3+x^2-2x+8", DensePolyZ::from_i64s(&[8, -2, 1, 1])),
    ];
    for (name, f) in &inputs {
        g.bench_with_input(BenchmarkId::from_parameter(name), f, |bch, f| {
            bch.iter(|| factor_p(black_box(f), 2).unwrap())
        });
    }
    g.finish();
}

fn verdicts(c: &mut Criterion) {
    let opts = VerdictOptions {
        sf_bound: 1_000_000,
        assume_irreducible: false,
    };
    let mut g = c.benchmark_group("verdict");
    for (name, t) in [
        ("x^8+8x+8", tri(8, 8, 8)),
        ("x^8+12x+3", tri(8, 12, 3)),
        ("x^64-65", tri(64, 0, -65)),
    ] {
        g.bench_with_input(BenchmarkId::from_parameter(name), &t, |bch, t| {
            bch.iter(|| verdict(black_box(t), &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, discriminants, factorizations, verdicts);
criterion_main!(benches);
