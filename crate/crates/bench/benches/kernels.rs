use criterion::{black_box, criterion_group, criterion_main, Criterion};
use multibrot_core::arithmetic::{primitive_prime_divisors, replay_theorem};
use multibrot_core::boettcher::{affine_symmetries, psi_series};
use multibrot_core::curves::is_invariant;
use multibrot_core::pcf::hyperbolic_centers;
use multibrot_core::rays::{trace_parameter_ray, DEFAULT_FLOOR, DEFAULT_STEPS};
use multibrot_core::render::render_multibrot;
use multibrot_core::rotation::construct;
use multibrot_core::{Angle, Complex64, ExactPoly, RasterSpec, RotationNumber};

fn rays(c: &mut Criterion) {
    let theta: Angle = "1/7".parse().unwrap();
    c.bench_function("parameter_ray_d2_1_7", |b| {
        b.iter(|| trace_parameter_ray(2, black_box(&theta), DEFAULT_FLOOR, DEFAULT_STEPS).unwrap())
    });
}

fn exact(c: &mut Criterion) {
    c.bench_function("psi_series_d3_order32", |b| b.iter(|| psi_series(3, black_box(32)).unwrap()));
    c.bench_function("affine_symmetries_d6", |b| {
        b.iter(|| affine_symmetries(black_box(6), 24).unwrap())
    });
    let rot = RotationNumber::new(2, 5).unwrap();
    c.bench_function("construct_d4", |b| {
        b.iter(|| construct(4, black_box(rot), &[2, 3, 5]).unwrap())
    });
    let q = ExactPoly::from_ints(&[1, 2, 0, 1]);
    let r = ExactPoly::from_ints(&[-1, 0, 1, 1]);
    c.bench_function("invariance_deg3_deg3", |b| {
        b.iter(|| is_invariant(black_box(&q), black_box(&r)).unwrap())
    });
}

fn arithmetic(c: &mut Criterion) {
    c.bench_function("primitive_divisors_3_60", |b| {
        b.iter(|| primitive_prime_divisors(3, black_box(60)).unwrap())
    });
    c.bench_function("replay_d2_D3_k0_20", |b| b.iter(|| replay_theorem(2, 3, 0, black_box(20)).unwrap()));
}

fn pcf_and_render(c: &mut Criterion) {
    c.bench_function("hyperbolic_centers_d2_n8", |b| {
        b.iter(|| hyperbolic_centers(2, black_box(8)).unwrap())
    });
    let spec = RasterSpec {
        center: Complex64::new(-0.75, 0.0),
        width: 3.0,
        pixels: (200, 134),
        max_iter: 200,
        d: 2,
    };
    c.bench_function("render_200x134", |b| b.iter(|| render_multibrot(black_box(&spec)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = rays, exact, arithmetic, pcf_and_render
}
criterion_main!(benches);
