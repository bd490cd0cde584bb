use criterion::{criterion_group, criterion_main, Criterion};
use spinelim_core::families::{tent_periodic_points, FamilyParam};
use spinelim_core::invlim::epsilon_map_audit;
use spinelim_core::rotation::rotation_interval;
use spinelim_core::suspension::{attract_cloud, hausdorff_plane, CarrierMap, CloudSettings, FattenedMap};
use spinelim_core::AmbientPoint;
use std::hint::black_box;

fn bench_periodic_enumeration(c: &mut Criterion) {
    c.bench_function("tent_periodic_points s=1.9 n=12", |b| {
        b.iter(|| tent_periodic_points(black_box(1.9), black_box(12)).unwrap().len())
    });
}

fn bench_cloud(c: &mut Criterion) {
    let map = FattenedMap::new(FamilyParam::tent(1.8).unwrap(), 0.01, 0.01).unwrap();
    let settings = CloudSettings {
        seeds: 100,
        transient: 200,
        keep: 100,
        rng_seed: 1,
    };
    c.bench_function("attract_cloud tent 10^4 points", |b| {
        b.iter(|| attract_cloud(black_box(&map), &settings).unwrap().points.len())
    });
}

fn bench_hausdorff(c: &mut Criterion) {
    let a: Vec<(f64, f64)> = (0..10_000)
        .map(|i| {
            let t = i as f64 / 10_000.0;
            (t, (std::f64::consts::TAU * t).sin() * 0.3)
        })
        .collect();
    let b2: Vec<(f64, f64)> = a.iter().map(|&(x, y)| (x + 0.003, y)).collect();
    c.bench_function("hausdorff_plane 10^4 vs 10^4", |b| {
        b.iter(|| hausdorff_plane(black_box(&a), black_box(&b2)).unwrap())
    });
}

fn bench_rotation_interval(c: &mut Criterion) {
    let p = FamilyParam::standard(2.0, 0.3).unwrap();
    c.bench_function("rotation_interval b=2 n=2*10^4", |b| {
        b.iter(|| rotation_interval(black_box(&p), 20_000, 4096).unwrap())
    });
}

fn bench_injectivity_audit(c: &mut Criterion) {
    let map = FattenedMap::new(FamilyParam::tent(1.8).unwrap(), 0.01, 0.01).unwrap();
    let mut grid = Vec::new();
    for i in 0..100 {
        for j in 0..100 {
            grid.push(AmbientPoint::new(
                (i as f64 + 0.5) / 100.0,
                (j as f64 + 0.5) / 50.0 - 1.0,
            ));
        }
    }
    c.bench_function("epsilon_map_audit 10^4 grid", |b| {
        b.iter(|| {
            epsilon_map_audit(
                black_box(&grid),
                |p| map.apply(*p),
                |x, y| map.model().dist(*x, *y),
                |x, y| map.model().dist(*x, *y),
                |q| (q.x, q.y),
                1e-9,
            )
        })
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = bench_periodic_enumeration, bench_cloud, bench_hausdorff,
              bench_rotation_interval, bench_injectivity_audit
}
criterion_main!(kernels);
