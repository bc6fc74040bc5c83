use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use nrow_core::cover::lines_through;
use nrow_core::{compass_of, play_game, solve, GameConfig, Point, Schedule, SolverOptions};

fn compass(c: &mut Criterion) {
    c.bench_function("compass_of 64x64", |b| {
        b.iter(|| {
            let mut acc = 0usize;
            for x in -32..32 {
                for y in -32..32 {
                    acc += compass_of(black_box(Point::new(x, y))) as usize;
                }
            }
            acc
        })
    });
    c.bench_function("lines_through n=1000", |b| {
        b.iter(|| lines_through(black_box(Point::new(12_345, -678)), 1000))
    });
}

fn games(c: &mut Criterion) {
    let mut group = c.benchmark_group("play_game");
    group.sample_size(10);
    for (maker, breaker, n) in [
        ("sprint", "fill", 200),
        ("greedy", "direction", 110),
        ("random", "line_spoil", 200),
        ("greedy", "line_spoil", 200),
    ] {
        let config = GameConfig::maker_breaker(n, Schedule::identity()).unwrap();
        group.bench_with_input(
            BenchmarkId::new(format!("{maker}_vs_{breaker}"), n),
            &config,
            |b, config| b.iter(|| play_game(config, maker, breaker, 1, 2 * n).unwrap()),
        );
    }
    group.finish();
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for n in 1..=4 {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| solve(n, &SolverOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, compass, games, solver);
criterion_main!(benches);
