use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qutrit_qec::code::single_qutrit_errors;
use qutrit_qec::oracle::{sweep_phase_patterns_with, valid_z_stabilizers_with};
use qutrit_qec::stabgen::exhaustive_fallback_with;
use qutrit_qec::{build_proposed_code, build_steane_ternary, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn phase_sweep(c: &mut Criterion) {
    let code = build_proposed_code();
    let mut g = c.benchmark_group("phase_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep_phase_patterns_with(&code, exec).unwrap())
        });
    }
    g.finish();
}

fn kl_check(c: &mut Criterion) {
    let code = build_steane_ternary();
    let errors = single_qutrit_errors(7);
    let mut g = c.benchmark_group("kl_check_56");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| code.kl_check_with(&errors, exec).unwrap())
        });
    }
    g.finish();
}

fn valid_words(c: &mut Criterion) {
    let code = build_proposed_code();
    let mut g = c.benchmark_group("valid_z_words");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| valid_z_stabilizers_with(&code, exec))
        });
    }
    g.finish();
}

fn fallback(c: &mut Criterion) {
    let code = build_proposed_code();
    let mut g = c.benchmark_group("fallback_0_3");
    g.sample_size(10);
    // (0,3) has no solution, so the search visits the whole space.
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| exhaustive_fallback_with(&code, (0, 3), exec).unwrap_err())
        });
    }
    g.finish();
}

criterion_group!(benches, phase_sweep, kl_check, valid_words, fallback);
criterion_main!(benches);
