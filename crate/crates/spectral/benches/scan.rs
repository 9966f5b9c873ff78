use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use numeric_core::ExecMode;
use spectral::{pt_phase_scan, scan_grid, ScanConfig};

fn bench_modes(c: &mut Criterion) {
    let grid = scan_grid(0.05, 0.7, 0.05).unwrap();
    let mut group = c.benchmark_group("lambda_scan_14_points");
    group.sample_size(10);
    for (name, mode) in [("parallel", ExecMode::Parallel), ("sequential", ExecMode::Sequential)] {
        let cfg = ScanConfig { grid: 512, mode, ..ScanConfig::default() };
        group.bench_function(name, |b| b.iter(|| black_box(pt_phase_scan(&cfg, &grid).len())));
    }
    group.finish();
}

criterion_group!(benches, bench_modes);
criterion_main!(benches);
