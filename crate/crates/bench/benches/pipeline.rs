use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use kerr_optomech_core::dynamics::lyapunov_steady;
use kerr_optomech_core::steadystate::{cubic_coefficients, solve_cubic};
use kerr_optomech_core::{evaluate_point, SystemParams};

fn working_point() -> SystemParams {
    SystemParams { chi: 2.4e-5, ..SystemParams::baseline() }
}

fn cubic(c: &mut Criterion) {
    let co = cubic_coefficients(&working_point()).unwrap();
    c.bench_function("solve_cubic", |b| b.iter(|| solve_cubic(black_box(&co))));
}

fn lyapunov(c: &mut Criterion) {
    let ev = kerr_optomech_core::pipeline::resolve(&working_point());
    let kerr_optomech_core::pipeline::Resolution::Ready(wp) = ev else {
        panic!("working point is not single valued");
    };
    let m = wp.model();
    let (a, d) = (m.drift(), m.diffusion().unwrap());
    c.bench_function("lyapunov_steady", |b| b.iter(|| lyapunov_steady(black_box(&a), black_box(&d))));
}

fn point(c: &mut Criterion) {
    let p = working_point();
    c.bench_function("evaluate_point", |b| b.iter(|| evaluate_point(black_box(&p))));
}

criterion_group!(benches, cubic, lyapunov, point);
criterion_main!(benches);
