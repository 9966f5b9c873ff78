use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use numeric_core::{ExecMode, Scalar};
use phase_space::{check_identity, dirac_bracket_jet, ConstraintSampler, PhasePoly, PhaseRational};

fn workload() -> (PhaseRational, PhaseRational) {
    let n = 3;
    let l = |i| PhasePoly::angular_momentum(i);
    let d = &(&PhasePoly::s(n, 0) - &PhasePoly::s(n, 1)) + &PhasePoly::s(n, 2).scale(&Scalar::i());
    let v = PhaseRational::new(PhasePoly::k(n, 0).pow(2), &d.pow(2)).unwrap();
    let h = &PhaseRational::from_poly(PhasePoly::p_dot_p(n)) + &v;
    let t = PhaseRational::from_poly(&(&l(0) - &l(1)) + &l(2).scale(&Scalar::i()));
    (h, t)
}

fn bench_modes(c: &mut Criterion) {
    let (h, t) = workload();
    let mut group = c.benchmark_group("dirac_identity_64_points");
    for (name, mode) in [("parallel", ExecMode::Parallel), ("sequential", ExecMode::Sequential)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let mut s = ConstraintSampler::new(3, 1);
                let rep = check_identity(&mut s, 64, mode, |pt| {
                    let x = pt.values();
                    let j = dirac_bracket_jet(&h.jet(&x, 1)?, &t.jet(&x, 1)?, 3, &x)?;
                    Ok(j.value().clone())
                })
                .unwrap();
                black_box(rep.trials)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_modes);
criterion_main!(benches);
