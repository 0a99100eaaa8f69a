//! Property tests for identities that must hold on whole parameter ranges.

use proptest::prelude::*;
use sl21osc::fourier::kernel_closed;
use sl21osc::hyperfun::{
    log_rising_over_factorial, meixner, tail_sum, terminating_1f1, terminating_2f1, terminating_2f1_reversed,
    TailRule,
};
use sl21osc::rep::{verify_brackets, verify_star};
use sl21osc::spectral::{classify, locate, orthogonality_residual_with, SupportPoint};
use sl21osc::wavefun::{normalization_residual_with, phi};
use sl21osc::{Execution, RepParams};

const ZS: [f64; 4] = [-2.0, -0.5, 0.3, 0.96];

fn f21(n: i64, a: f64, b: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    terminating_2f1(n as u32, a, b, z).unwrap()
}

fn f11(n: i64, b: f64, z: f64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    terminating_1f1(n as u32, b, z).unwrap()
}

/// `|lhs - rhs|` relative to the largest term on either side.
fn mismatch(lhs: &[f64], rhs: &[f64]) -> f64 {
    let scale = lhs.iter().chain(rhs).fold(1e-300f64, |m, v| m.max(v.abs()));
    (lhs.iter().sum::<f64>() - rhs.iter().sum::<f64>()).abs() / scale
}

fn discrete_gamma() -> impl Strategy<Value = f64> {
    prop_oneof![-2.5..-1.05f64, -0.95..0.95f64, 1.05..2.5f64, Just(0.0)]
}

fn any_gamma() -> impl Strategy<Value = f64> {
    prop_oneof![discrete_gamma(), Just(1.0), Just(-1.0)]
}

/// A point on the spectrum: support index `k` for discrete classes or `x`
/// in `[-4, 4]` for the continuous one.
fn point(params: RepParams, sign: bool, k: u64, x: f64) -> SupportPoint {
    if classify(params.gamma).is_discrete() {
        SupportPoint::discrete(params, if sign { 1 } else { -1 }, k).unwrap()
    } else {
        SupportPoint::continuous(x)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn contiguous_relations_2f1(n in 0i64..=20, a in -3.0..3.0f64, b in 0.2..5.0f64, zi in 0usize..4) {
        let z = ZS[zi];
        let line1 = mismatch(
            &[(b + n as f64) * f21(n, a, b + 1.0, z), -(n as f64) * (1.0 - z) * f21(n - 1, a, b + 1.0, z)],
            &[b * f21(n, a - 1.0, b, z)],
        );
        prop_assert!(line1 < 1e-10, "first line: {line1:e}");
        let line2 = mismatch(&[f21(n, a, b, z), -f21(n + 1, a, b, z)], &[a * z / b * f21(n, a + 1.0, b + 1.0, z)]);
        prop_assert!(line2 < 1e-10, "second line: {line2:e}");
    }

    #[test]
    fn contiguous_relations_1f1(n in 0i64..=20, b in 0.2..5.0f64, zi in 0usize..4) {
        let z = ZS[zi];
        let line1 = mismatch(&[(b + n as f64) * f11(n, b + 1.0, z), -(n as f64) * f11(n - 1, b + 1.0, z)], &[b * f11(n, b, z)]);
        prop_assert!(line1 < 1e-10, "first line: {line1:e}");
        let line2 = mismatch(&[f11(n, b, z), -f11(n + 1, b, z)], &[z / b * f11(n, b + 1.0, z)]);
        prop_assert!(line2 < 1e-10, "second line: {line2:e}");
    }

    /// The prefactor is `(1-z)^n`; `n = 1`, `a = 0` gives `1 = (1-z)(1-z)^-1`.
    #[test]
    fn pfaff_transformation(n in 0u32..=20, a in -3.0..3.0f64, b in 0.2..5.0f64, z in -3.0..0.9f64) {
        let lhs = terminating_2f1(n, a, b, z).unwrap();
        let rhs = (1.0 - z).powi(n as i32) * terminating_2f1(n, b - a, b, z / (z - 1.0)).unwrap();
        prop_assert!(mismatch(&[lhs], &[rhs]) < 1e-10, "{lhs} vs {rhs}");
    }

    #[test]
    fn reversed_summation_agrees(n in 0u32..=30, a in -3.0..3.0f64, b in 0.2..5.0f64, z in -3.0..3.0f64) {
        let fwd = terminating_2f1(n, a, b, z).unwrap();
        let rev = terminating_2f1_reversed(n, a, b, z).unwrap();
        prop_assert!((fwd - rev).abs() <= 1e-13 * fwd.abs().max(rev.abs()).max(f64::MIN_POSITIVE) || fwd == rev);
    }

    #[test]
    fn meixner_orthogonality(m in 0u32..=10, n in 0u32..=10, beta in 0.2..4.0f64, c in 0.05..0.9f64) {
        let rule = TailRule::new(c, (m + n) as f64 + beta);
        let (sum, _) = tail_sum(&rule, Execution::Sequential, |k| {
            let kf = k as f64;
            (log_rising_over_factorial(beta, k as u32) + kf * c.ln()).exp()
                * meixner(m, kf, beta, c).unwrap()
                * meixner(n, kf, beta, c).unwrap()
        })
        .unwrap();
        let ln_norm = |j: u32| -(j as f64) * c.ln() - log_rising_over_factorial(beta, j) - beta * (1.0 - c).ln();
        let scaled = sum / (0.5 * (ln_norm(m) + ln_norm(n))).exp();
        let want = if m == n { 1.0 } else { 0.0 };
        prop_assert!((scaled - want).abs() < 1e-9, "scaled Gram entry {scaled}");
    }

    #[test]
    fn wavefunction_parity(beta in 0.2..4.0f64, gamma in any_gamma(), n in 0usize..12, k in 0u64..30, x in 0.01..4.0f64) {
        let params = RepParams::new(beta, gamma).unwrap();
        let p = point(params, true, k, x);
        let mirrored = if p.k.is_some() { point(params, false, k, x) } else { SupportPoint::continuous(-x) };
        let (a, b) = (phi(params, n, &p).unwrap(), phi(params, n, &mirrored).unwrap());
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        if p.x == 0.0 && n % 2 == 1 {
            prop_assert_eq!(a, 0.0);
        }
        prop_assert!((a - sign * b).abs() <= 1e-14 * a.abs().max(1e-300) || a == sign * b);
    }

    #[test]
    fn kernel_symmetry_and_parity(
        beta in 0.2..3.0f64, gamma in any_gamma(),
        sx in any::<bool>(), sy in any::<bool>(), k in 0u64..12, l in 0u64..12,
        x in -3.0..3.0f64, y in -3.0..3.0f64,
    ) {
        let params = RepParams::new(beta, gamma).unwrap();
        let (px, py) = (point(params, sx, k, x), point(params, sy, l, y));
        let kxy = kernel_closed(params, &px, &py).unwrap();
        let kyx = kernel_closed(params, &py, &px).unwrap();
        prop_assert!((kxy - kyx).norm() <= 1e-13 * kxy.norm().max(1e-300), "{kxy} vs {kyx}");
        let flipped = if px.k.is_some() { point(params, !sx, k, x) } else { SupportPoint::continuous(-x) };
        let kf = kernel_closed(params, &flipped, &py).unwrap();
        prop_assert!((kf.re - kxy.re).abs() <= 1e-13 * kxy.norm().max(1e-300));
        prop_assert!((kf.im + kxy.im).abs() <= 1e-13 * kxy.norm().max(1e-300));
    }

    #[test]
    fn support_points_locate_back(beta in 0.1..5.0f64, gamma in discrete_gamma(), sign in any::<bool>(), k in 0u64..500) {
        let params = RepParams::new(beta, gamma).unwrap();
        let p = point(params, sign, k, 0.0);
        let found = locate(params, p.x, 1e-9).unwrap();
        prop_assert_eq!(found, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_and_star(beta in 0.05..4.0f64, gamma in -2.5..2.5f64, n in 5usize..=40) {
        let params = RepParams::new(beta, gamma).unwrap();
        let r = verify_brackets(params, n, 1e-12).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        let r = verify_star(params, n, 1e-12).unwrap();
        prop_assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn execution_policies_agree_bitwise(beta in 0.2..3.0f64, gamma in discrete_gamma()) {
        let params = RepParams::new(beta, gamma).unwrap();
        let seq = orthogonality_residual_with(params, 6, Execution::Sequential).unwrap();
        let par = orthogonality_residual_with(params, 6, Execution::Parallel).unwrap();
        prop_assert_eq!(seq.to_bits(), par.to_bits());
        let seq = normalization_residual_with(params, 6, Execution::Sequential).unwrap();
        let par = normalization_residual_with(params, 6, Execution::Parallel).unwrap();
        prop_assert_eq!(seq.to_bits(), par.to_bits());
    }
}
