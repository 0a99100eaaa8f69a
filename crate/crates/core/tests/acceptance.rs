//! Acceptance criteria. Each test prints one PASS/FAIL line to the real
//! stdout (bypassing the test harness capture) and then asserts.

use std::io::Write;
use std::process::Command;

use num_complex::Complex64;
use sl21osc::fourier::{
    bilinear_grid_residual, kernel_closed, kernel_continuous, kernel_limit_check, kernel_series, unitarity_defect,
    KERNEL_SERIES_NMAX,
};
use sl21osc::paraboson::verify_paraboson_suite;
use sl21osc::rep::{verify_brackets, verify_hamilton_lie, verify_self_adjoint, verify_star};
use sl21osc::spectral::{
    classify, eigenvector_residual, orthogonality_residual, recurrence_gap, truncated_spectrum_crosscheck,
    SpectralClass, SupportPoint,
};
use sl21osc::wavefun::{limit_gamma_to_one, normalization_residual, phi};
use sl21osc::{RepParams, Report};

const GAMMAS: [f64; 6] = [0.4, 0.75, 1.0, 1.2, 1.5, 0.0];
const DISCRETE_GAMMAS: [f64; 5] = [0.4, 0.75, 1.2, 1.5, 0.0];

fn report(id: u32, title: &str, worst: f64, tol: f64, failures: &[String]) {
    let passed = failures.is_empty() && worst <= tol;
    let line = format!(
        "{} criterion {id}: {title} (worst {worst:.3e}, tol {tol:.0e})\n",
        if passed { "PASS" } else { "FAIL" }
    );
    std::io::stdout().write_all(line.as_bytes()).unwrap();
    assert!(passed, "{line}{failures:#?}");
}

/// Tracks the worst residual and records every failing case.
#[derive(Default)]
struct Tally {
    worst: f64,
    failures: Vec<String>,
}

impl Tally {
    fn add(&mut self, what: impl FnOnce() -> String, value: sl21osc::Result<f64>, tol: f64) {
        match value {
            Ok(v) if v <= tol => self.worst = self.worst.max(v),
            Ok(v) => {
                self.worst = self.worst.max(v);
                self.failures.push(format!("{}: {v:e}", what()));
            }
            Err(e) => self.failures.push(format!("{}: {e}", what())),
        }
    }
}

fn failed(rep: &Report) -> Vec<String> {
    rep.failures().map(|c| c.name.clone()).collect()
}

/// Worst residual of a report, or infinity when any of its own checks failed.
fn checked(rep: &Report) -> sl21osc::Result<f64> {
    Ok(if rep.passed() { rep.max_residual() } else { f64::INFINITY })
}

fn p(beta: f64, gamma: f64) -> RepParams {
    RepParams::new(beta, gamma).unwrap()
}

#[test]
fn criterion_1_superalgebra() {
    let mut t = Tally::default();
    for beta in [0.3, 0.5, 1.0, 2.0, 3.7] {
        for gamma in [0.0, 0.4, 1.0, -1.5] {
            let params = p(beta, gamma);
            for rep in [
                verify_brackets(params, 40, 1e-12),
                verify_star(params, 40, 1e-12),
                verify_hamilton_lie(params, 40, 1e-12),
                verify_self_adjoint(params, 40, 1e-12),
            ] {
                let rep = rep.unwrap();
                t.add(|| format!("{} beta={beta} gamma={gamma} {:?}", rep.suite, failed(&rep)), checked(&rep), 1e-12);
            }
        }
    }
    report(1, "brackets, adjoints and Hamilton-Lie equations, N=40", t.worst, 1e-12, &t.failures);
}

#[test]
fn criterion_2_recurrence_vs_closed_forms() {
    let mut t = Tally::default();
    for beta in [0.3, 0.5, 2.0, 3.7] {
        for gamma in GAMMAS {
            let params = p(beta, gamma);
            let xs: Vec<f64> = if classify(gamma) == SpectralClass::Continuous {
                vec![0.05, 0.3, 1.1, 2.5, -3.2]
            } else {
                [(1, 0), (1, 1), (-1, 3), (1, 10), (-1, 25)]
                    .iter()
                    .map(|&(s, k)| SupportPoint::discrete(params, s, k).unwrap().x)
                    .collect()
            };
            for x in xs {
                t.add(|| format!("beta={beta} gamma={gamma} x={x}"), recurrence_gap(params, x, 40), 1e-10);
            }
        }
    }
    report(2, "recurrence p_n vs hypergeometric closed forms, n <= 40", t.worst, 1e-10, &t.failures);
}

#[test]
fn criterion_3_orthogonality() {
    let mut t = Tally::default();
    for beta in [0.5, 1.0, 2.0] {
        for gamma in GAMMAS {
            t.add(|| format!("beta={beta} gamma={gamma}"), orthogonality_residual(p(beta, gamma), 10), 1e-8);
        }
    }
    report(3, "Gram matrix vs normalization constants, n,m <= 10", t.worst, 1e-8, &t.failures);
}

#[test]
fn criterion_4_spectrum_crosscheck() {
    let mut t = Tally::default();
    for beta in [0.5, 2.0] {
        for gamma in DISCRETE_GAMMAS {
            let params = p(beta, gamma);
            let gaps = truncated_spectrum_crosscheck(params, 400, 10).map(|g| {
                assert_eq!(g.len(), 10);
                g.iter().fold(0.0f64, |m, s| m.max(s.gap))
            });
            t.add(|| format!("eigenvalues beta={beta} gamma={gamma}"), gaps, 1e-4);
            for k in 0..=20 {
                for sign in [1, -1] {
                    let point = SupportPoint::discrete(params, sign, k).unwrap();
                    t.add(
                        || format!("eigenvector beta={beta} gamma={gamma} k={k} sign={sign}"),
                        eigenvector_residual(params, &point, 200),
                        1e-6,
                    );
                }
            }
        }
    }
    report(4, "N=400 eigenvalues and N=200 formal eigenvectors", t.worst, 1e-6, &t.failures);
}

/// Normalized Hermite functions from their three-term recurrence.
fn hermite_functions(nmax: usize, x: f64) -> Vec<f64> {
    let mut h = vec![std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp()];
    h.push(std::f64::consts::SQRT_2 * x * h[0]);
    for n in 1..nmax {
        let next = (2.0 / (n + 1) as f64).sqrt() * x * h[n] - (n as f64 / (n + 1) as f64).sqrt() * h[n - 1];
        h.push(next);
    }
    h
}

#[test]
fn criterion_5_canonical_reduction() {
    let params = p(0.5, 1.0);
    let mut t = Tally::default();
    for i in 0..=40 {
        let x = -5.0 + 0.25 * i as f64;
        let want = hermite_functions(10, x);
        for (n, w) in want.iter().enumerate() {
            let got = phi(params, n, &SupportPoint::continuous(x));
            t.add(|| format!("Phi_{n}({x})"), got.map(|g| (g - w).abs()), 1e-11);
        }
    }
    let grid = [-2.0, -1.0, 0.0, 1.0, 2.0];
    for x in grid {
        for y in grid {
            let want = Complex64::new(0.0, -x * y).exp() / (2.0 * std::f64::consts::PI).sqrt();
            let closed = kernel_closed(params, &SupportPoint::continuous(x), &SupportPoint::continuous(y));
            t.add(|| format!("K({x},{y})"), closed.map(|k| (k - want).norm()), 1e-10);
            t.add(|| format!("F2 K({x},{y})"), kernel_continuous(0.5, x, y).map(|k| (k - want).norm()), 1e-10);
        }
    }
    report(5, "Hermite functions and exp(-ixy)/sqrt(2 pi) at beta=1/2, gamma=1", t.worst, 1e-10, &t.failures);
}

#[test]
fn criterion_6_kernel_oracle() {
    let mut t = Tally::default();
    for beta in [0.5, 1.0, 2.0] {
        for gamma in GAMMAS {
            let params = p(beta, gamma);
            let pairs: Vec<(SupportPoint, SupportPoint)> = if classify(gamma) == SpectralClass::Continuous {
                let g = [-3.0, -1.7, -0.4, 0.9, 2.2, 3.0];
                g.iter()
                    .flat_map(|&x| g.iter().map(move |&y| (SupportPoint::continuous(x), SupportPoint::continuous(y))))
                    .collect()
            } else {
                let pts: Vec<SupportPoint> = (0..=10u64)
                    .flat_map(|k| [1i8, -1].map(|s| SupportPoint::discrete(params, s, k).unwrap()))
                    .collect();
                pts.iter().flat_map(|a| pts.iter().map(move |b| (*a, *b))).collect()
            };
            for (x, y) in &pairs {
                let gap = kernel_closed(params, x, y)
                    .and_then(|c| kernel_series(params, x, y, KERNEL_SERIES_NMAX).map(|s| (s.value - c).norm()));
                t.add(|| format!("beta={beta} gamma={gamma} x={} y={}", x.x, y.x), gap, 1e-8);
            }
        }
        for gamma in DISCRETE_GAMMAS {
            t.add(|| format!("unitarity beta={beta} gamma={gamma}"), unitarity_defect(p(beta, gamma), 20), 1e-5);
        }
    }
    report(6, "closed kernels vs defining series; U U^dag = I at K=20", t.worst, 1e-5, &t.failures);
}

#[test]
fn criterion_7_limits() {
    let mut t = Tally::default();
    for beta in [0.5, 1.0, 2.0] {
        for above in [false, true] {
            for n in 0..4 {
                for x in [0.7, -1.3, 2.1] {
                    let d = limit_gamma_to_one(beta, n, x, &[1e-4], above).map(|r| r[0].difference);
                    t.add(|| format!("Phi_{n} beta={beta} x={x} above={above}"), d, 1e-3);
                }
            }
            for (x, y) in [(1.0, 1.0), (1.5, 0.8), (-0.9, 1.6)] {
                let d = kernel_limit_check(beta, x, y, &[1e-4], above).map(|r| r[0].difference);
                t.add(|| format!("K beta={beta} ({x},{y}) above={above}"), d, 1e-2);
            }
        }
    }
    t.add(|| "bilinear generating function".into(), bilinear_grid_residual(), 1e-9);
    report(7, "gamma -> 1 limits at eps=1e-4 and bilinear generating function", t.worst, 1e-2, &t.failures);
}

#[test]
fn criterion_8_paraboson() {
    let mut t = Tally::default();
    for beta in [0.3, 0.5, 1.0, 2.0] {
        for gamma in [1.0, 0.4, -1.5] {
            let rep = verify_paraboson_suite(p(beta, gamma), 40, 1e-12).unwrap();
            t.add(|| format!("beta={beta} gamma={gamma} {:?}", failed(&rep)), checked(&rep), 1e-12);
        }
    }
    report(8, "paraboson relations and osp(1|2) embedding, N=40", t.worst, 1e-12, &t.failures);
}

#[test]
fn criterion_9_figures() {
    let out = Command::new(env!("CARGO_BIN_EXE_sl21osc")).args(["wavefunction", "--figures"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("beta,gamma,n,x,phi,class"));
    let mut panels = std::collections::BTreeMap::<(u64, u64, usize), usize>::new();
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols.len(), 6, "{line}");
        let beta: f64 = cols[0].parse().unwrap();
        let gamma: f64 = cols[1].parse().unwrap();
        let n: usize = cols[2].parse().unwrap();
        let x: f64 = cols[3].parse().unwrap();
        let v: f64 = cols[4].parse().unwrap();
        assert_eq!(cols[5], classify(gamma).name());
        if (beta, gamma, n) == (0.5, 1.0, 0) {
            let gauss = std::f64::consts::PI.powf(-0.25) * (-x * x / 2.0).exp();
            assert!((v - gauss).abs() < 1e-12, "x={x}");
        }
        *panels.entry((beta.to_bits(), gamma.to_bits(), n)).or_default() += 1;
    }
    let mut t = Tally::default();
    let mut expected = Vec::new();
    for beta in [0.5f64, 2.0] {
        for gamma in [0.4f64, 0.75, 1.0, 1.2, 1.5] {
            for n in [0, 1] {
                expected.push((beta.to_bits(), gamma.to_bits(), n));
            }
            t.add(|| format!("normalization beta={beta} gamma={gamma}"), normalization_residual(p(beta, gamma), 1), 1e-6);
        }
    }
    let got: Vec<_> = panels.keys().copied().collect();
    expected.sort();
    if got != expected {
        t.failures.push(format!("panel set differs: {} panels", got.len()));
    }
    if panels.values().any(|&c| c < 5) {
        t.failures.push("a panel has fewer than 5 samples".into());
    }
    report(9, "figure data: 20 panels with normalized wavefunctions", t.worst, 1e-6, &t.failures);
}
