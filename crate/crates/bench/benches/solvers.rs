use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use twowell::bethe::{solve_bae, SolveOptions};
use twowell::yangbaxter::{identify_parameters, transfer_commutator_residual};
use twowell::{build_hamiltonian, eigensolve, enumerate_sector, Complex64, EigenOptions, IntegrableParams};

fn hamiltonian_and_spectrum(c: &mut Criterion) {
    let ip = IntegrableParams::default_for(2);
    let mp = identify_parameters(&ip).unwrap();
    let mut group = c.benchmark_group("hamiltonian_eigensolve");
    for n in [4, 8, 12] {
        let sector = enumerate_sector(2, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &sector, |b, sector| {
            b.iter(|| {
                let h = build_hamiltonian(&mp, sector).unwrap();
                eigensolve(black_box(&h), &EigenOptions::default()).unwrap()
            })
        });
    }
    group.finish();
}

fn transfer_commutator(c: &mut Criterion) {
    let ip = IntegrableParams::default_for(2);
    let (u, v) = (Complex64::new(0.3, 1.1), Complex64::new(-1.7, 0.4));
    let mut group = c.benchmark_group("transfer_commutator");
    for n in [2, 4] {
        let sector = enumerate_sector(2, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &sector, |b, sector| {
            b.iter(|| transfer_commutator_residual(black_box(u), black_box(v), &ip, sector).unwrap())
        });
    }
    group.finish();
}

fn bethe_solver(c: &mut Criterion) {
    let ip = IntegrableParams::default_for(2);
    let opts = SolveOptions::default();
    c.bench_function("solve_bae_n2_N2", |b| b.iter(|| solve_bae(black_box(&ip), 2, &opts).unwrap()));
}

criterion_group!(benches, hamiltonian_and_spectrum, transfer_commutator, bethe_solver);
criterion_main!(benches);
