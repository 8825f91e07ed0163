use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use submonogenic::clifford::Point;
use submonogenic::exec::Exec;
use submonogenic::kernels::{CauchyKernel, PlaneWave};
use submonogenic::quadrature::{planewave_moments, PlaneWaveQuadrature, SurfaceResolution};
use submonogenic::reconstruction::reconstruct_dx0_ball;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn plane_wave_moments(c: &mut Criterion) {
    let mut g = c.benchmark_group("plane_wave_moments_n1");
    let p = Point::new(0.5, vec![0.3, -0.2]).unwrap();
    for (name, exec) in MODES {
        let mut q = PlaneWaveQuadrature::default_for(1, 0, 0);
        q.exec = exec;
        g.bench_with_input(BenchmarkId::from_parameter(name), &q, |b, q| {
            b.iter(|| planewave_moments(black_box(&p), q).unwrap())
        });
    }
    g.finish();
}

fn ball_reconstruction(c: &mut Criterion) {
    let mut g = c.benchmark_group("ball_reconstruction_n1");
    g.sample_size(20);
    let kernel = CauchyKernel::new(1).unwrap();
    let pw = PlaneWave::from_real(&[0.6, 0.8]).unwrap();
    let f = |p: &Point| pw.eval(p);
    let u = Point::new(0.05, vec![0.1, -0.05]).unwrap();
    let center = Point::origin(1);
    let res = SurfaceResolution::default();
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| reconstruct_dx0_ball(&kernel, &f, black_box(&u), &center, 0.5, &res, exec).unwrap())
        });
    }
    g.finish();
}

fn kernel_evaluation(c: &mut Criterion) {
    let kernel = CauchyKernel::new(2).unwrap();
    let p = Point::new(0.4, vec![0.1, -0.2, 0.3, -0.4]).unwrap();
    c.bench_function("kernel_e_n2", |b| b.iter(|| kernel.e(black_box(&p)).unwrap()));
    c.bench_function("kernel_k_n2", |b| b.iter(|| kernel.k(black_box(&p)).unwrap()));
}

criterion_group!(benches, plane_wave_moments, ball_reconstruction, kernel_evaluation);
criterion_main!(benches);
