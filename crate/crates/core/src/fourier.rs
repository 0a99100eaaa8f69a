//! Fourier kernels `K(x,y) = sum_n (-i)^n Phi_n(x) Phi_n(y)`.
//!
//! Closed forms: a pair of `0F1` for `|gamma| = 1`, a pair of terminating
//! `2F1` at argument `-(gamma^2-1)^2/(4 gamma^2)` for the discrete classes,
//! and a Kronecker delta for `gamma = 0`. The defining series is summed
//! directly as an independent check.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Dd;
use crate::hyperfun::{f21_dd, log_rising_over_factorial, tail_sum_vec, TailRule};
use crate::rep::CMatrix;
use crate::spectral::{classify, nearest, one_minus_g2, points_at, SpectralClass, SupportPoint};
use crate::wavefun::{minus_i_pow, phi};
use crate::{Error, Execution, RepParams, Result};

/// `0F1(; b; w)` summed in double-double until the terms stop mattering.
pub fn hyp0f1(b: f64, w: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("0F1 needs b > 0, got {b}")));
    }
    let (bd, wd) = (Dd::new(b), Dd::new(w));
    let mut sum = Dd::ONE;
    let mut term = Dd::ONE;
    let mut j = 0.0;
    loop {
        term = term * wd / ((bd + j) * (j + 1.0));
        sum += term;
        j += 1.0;
        if j > w.abs().sqrt() && term.abs().to_f64() <= 1e-33 * sum.abs().to_f64() {
            break;
        }
        if j > 10_000.0 {
            return Err(Error::NonConvergence { terms: 10_000 });
        }
    }
    Ok(sum.to_f64())
}

/// `ln(2|gamma|/(1+gamma^2))`, accurate near `|gamma| = 1`.
fn ln_rho(gamma: f64) -> f64 {
    let g = gamma.abs();
    -((g - 1.0).powi(2) / (2.0 * g)).ln_1p()
}

/// The `2F1` argument `-(gamma - 1/gamma)^2/4`, formed without cancellation.
fn zeta(gamma: f64) -> Dd {
    let d = one_minus_g2(gamma);
    let g = Dd::new(gamma);
    -(d * d) / (g * g * 4.0)
}

fn check_pair(params: RepParams, x: &SupportPoint, y: &SupportPoint) -> Result<SpectralClass> {
    let class = classify(params.gamma);
    for p in [x, y] {
        if p.class != class {
            return Err(Error::ClassMismatch { point: p.class.name().into(), params: class.name().into() });
        }
    }
    Ok(class)
}

/// Closed-form kernel at two points of the spectrum.
pub fn kernel_closed(params: RepParams, x: &SupportPoint, y: &SupportPoint) -> Result<Complex64> {
    let class = check_pair(params, x, y)?;
    let (b, g) = (params.beta, params.gamma.abs());
    match class {
        SpectralClass::Continuous => kernel_continuous(b, x.x, y.x),
        SpectralClass::Degenerate => {
            let (k, l) = (x.k.unwrap(), y.k.unwrap());
            if k != l {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let s = if k % 2 == 0 { 0.5 } else { -0.5 };
            let st = (x.sign * y.sign) as f64;
            Ok(Complex64::new(s, -s * st))
        }
        _ => {
            let (k, l) = (x.k.unwrap(), y.k.unwrap());
            let outer = class == SpectralClass::DiscreteOuter;
            let z1 = one_minus_g2(g);
            let g2 = g * g;
            let mut lp = -std::f64::consts::LN_2
                + (k + l) as f64 * ln_rho(g)
                + b * (z1.to_f64().abs() / (1.0 + g2)).ln()
                + 0.5 * (log_rising_over_factorial(b, k as u32) + log_rising_over_factorial(b, l as u32));
            if outer {
                lp += 0.5 * std::f64::consts::LN_2 * ((k == 0) as u8 + (l == 0) as u8) as f64;
            }
            let pre = lp.exp();
            let zt = zeta(g);
            let re = f21_dd(k as u32, Dd::new(-(l as f64)), Dd::new(b), zt).to_f64();
            let xy = x.x * y.x;
            let im = if outer {
                if k == 0 || l == 0 {
                    0.0
                } else {
                    xy * (1.0 + g2) / (4.0 * b * g2)
                        * f21_dd(k as u32 - 1, Dd::new(1.0 - l as f64), Dd::new(b + 1.0), zt).to_f64()
                }
            } else {
                xy / (b * (1.0 + g2)) * f21_dd(k as u32, Dd::new(-(l as f64)), Dd::new(b + 1.0), zt).to_f64()
            };
            Ok(pre * Complex64::new(re, -im))
        }
    }
}

/// Paraboson kernel
/// `|xy|^(beta-1/2) / (2^beta Gamma(beta)) [0F1(;beta;-x^2y^2/4) - i xy/(2 beta) 0F1(;beta+1;-x^2y^2/4)]`.
pub fn kernel_continuous(beta: f64, x: f64, y: f64) -> Result<Complex64> {
    let xy = x * y;
    if xy == 0.0 && beta < 0.5 {
        return Err(Error::Domain("kernel is singular on the axes for beta < 1/2".into()));
    }
    let lp = if beta == 0.5 { 0.0 } else { (beta - 0.5) * xy.abs().ln() };
    let pre = (lp - beta * std::f64::consts::LN_2 - libm::lgamma(beta)).exp();
    let w = -0.25 * xy * xy;
    let re = hyp0f1(beta, w)?;
    let im = xy / (2.0 * beta) * hyp0f1(beta + 1.0, w)?;
    Ok(pre * Complex64::new(re, -im))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KernelSeries {
    pub value: Complex64,
    pub error_estimate: f64,
    pub terms: usize,
}

/// Default number of levels in [`kernel_series`].
pub const KERNEL_SERIES_NMAX: usize = 200;

/// Partial sums of `sum_n (-i)^n Phi_n(x) Phi_n(y)` for `n < nmax`.
///
/// The real part collects even levels and the imaginary part odd levels;
/// each subseries is accelerated by repeated averaging of consecutive
/// partial sums, which also sums the conditionally convergent continuous
/// case. The error estimate is the spread of the last averaged pair plus the
/// change from the previous averaging pass.
pub fn kernel_series(params: RepParams, x: &SupportPoint, y: &SupportPoint, nmax: usize) -> Result<KernelSeries> {
    check_pair(params, x, y)?;
    if nmax < 8 {
        return Err(Error::Dimension { min: 8, got: nmax });
    }
    let mut even = Vec::with_capacity(nmax / 2 + 1);
    let mut odd = Vec::with_capacity(nmax / 2 + 1);
    let (mut se, mut so) = (0.0, 0.0);
    for n in 0..nmax {
        let t = minus_i_pow(n) * (phi(params, n, x)? * phi(params, n, y)?);
        if n % 2 == 0 {
            se += t.re;
            even.push(se);
        } else {
            so += t.im;
            odd.push(so);
        }
    }
    let (re, ere) = euler_average(&even);
    let (im, eim) = euler_average(&odd);
    let value = Complex64::new(re, im);
    let error_estimate = ere + eim;
    if !(error_estimate <= 1e-6 * value.norm().max(1.0)) {
        return Err(Error::NonConvergence { terms: nmax });
    }
    Ok(KernelSeries { value, error_estimate, terms: nmax })
}

fn euler_average(partial: &[f64]) -> (f64, f64) {
    let passes = partial.len() / 3;
    let mut s = partial.to_vec();
    let mut prev = *s.last().unwrap();
    let mut delta = f64::INFINITY;
    for _ in 0..passes {
        s = s.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        let cur = *s.last().unwrap();
        delta = (cur - prev).abs();
        prev = cur;
    }
    let n = s.len();
    let spread = if n >= 2 { (s[n - 1] - s[n - 2]).abs() } else { f64::INFINITY };
    (prev, spread + delta)
}

/// `|LHS - RHS|` of the Meixner bilinear generating function
/// `sum_n (b)_n/n! z^n M_n(xi) M_n(xi') = (1-z)^(-b-xi-xi') (1-z/c)^(xi+xi') 2F1(-xi,-xi';b;z(1-c)^2/(z-c)^2)`
/// with the left side truncated by the tail rule within `nmax` terms.
pub fn bilinear_gf_check(b: f64, c: f64, z: f64, xi: f64, xi2: f64, nmax: usize) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::Domain(format!("b must be positive, got {b}")));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (0, 1), got {c}")));
    }
    if !(z.abs() < c) {
        return Err(Error::Domain(format!("need |z| < c, got z = {z}, c = {c}")));
    }
    let zm = Dd::ONE - Dd::new(c).recip();
    let rule = TailRule::new(z.abs() / c, b + 2.0 * (xi.abs() + xi2.abs())).with_max_terms(nmax.max(1));
    let term = |n: usize| {
        let m1 = f21_dd(n as u32, Dd::new(-xi), Dd::new(b), zm);
        let m2 = f21_dd(n as u32, Dd::new(-xi2), Dd::new(b), zm);
        let lp = log_rising_over_factorial(b, n as u32);
        let zn = if n == 0 { 1.0 } else { z.powi(n as i32) };
        vec![lp.exp() * zn * (m1 * m2).to_f64()]
    };
    let lhs = tail_sum_vec(&rule, Execution::Sequential, 1, term)?.0[0];
    let w = z * (1.0 - c).powi(2) / (z - c).powi(2);
    let f = hyp2f1_series(-xi, -xi2, b, w)?;
    let rhs = (1.0 - z).powf(-b - xi - xi2) * (1.0 - z / c).powf(xi + xi2) * f;
    Ok((lhs - rhs).abs())
}

/// `2F1(a, a'; b; w)`: terminating when `a` or `a'` is a non-positive
/// integer, otherwise summed for `|w| < 1`.
fn hyp2f1_series(a: f64, a2: f64, b: f64, w: f64) -> Result<f64> {
    for (p, q) in [(a, a2), (a2, a)] {
        if p <= 0.0 && p.fract() == 0.0 {
            return Ok(f21_dd((-p) as u32, Dd::new(q), Dd::new(b), Dd::new(w)).to_f64());
        }
    }
    if !(w.abs() < 1.0) {
        return Err(Error::Domain(format!("2F1 series needs |w| < 1, got {w}")));
    }
    let mut sum = Dd::ONE;
    let mut t = Dd::ONE;
    for j in 0..100_000 {
        let jf = j as f64;
        t = t * (Dd::new(a) + jf) * (Dd::new(a2) + jf) * w / ((Dd::new(b) + jf) * (jf + 1.0));
        sum += t;
        if t.abs().to_f64() <= 1e-32 * sum.abs().to_f64() {
            return Ok(sum.to_f64());
        }
    }
    Err(Error::NonConvergence { terms: 100_000 })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelLimitRow {
    pub epsilon: f64,
    pub gamma: f64,
    pub k: u64,
    pub l: u64,
    pub x: f64,
    pub y: f64,
    /// Discrete kernel divided by the square root of both local spacings.
    pub scaled: Complex64,
    pub continuous: Complex64,
    pub difference: f64,
}

/// Discrete kernels at `gamma = 1 -+ epsilon` against the paraboson kernel,
/// at the support points nearest `(x, y)`, after division by
/// `sqrt(dx dy)` with `dx = |1-gamma^2|/(2|x|)` the local spacing.
pub fn kernel_limit_check(beta: f64, x: f64, y: f64, epsilons: &[f64], from_above: bool) -> Result<Vec<KernelLimitRow>> {
    if x == 0.0 || y == 0.0 || !x.is_finite() || !y.is_finite() {
        return Err(Error::Domain("kernel limit needs x, y != 0".into()));
    }
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
            }
            let gamma = if from_above { 1.0 + eps } else { 1.0 - eps };
            let params = RepParams::new(beta, gamma)?;
            let (px, py) = (nearest(params, x)?, nearest(params, y)?);
            let d = one_minus_g2(gamma).to_f64().abs();
            let spacing = (d / (2.0 * px.x.abs())) * (d / (2.0 * py.x.abs()));
            let scaled = kernel_closed(params, &px, &py)? / spacing.sqrt();
            let continuous = kernel_continuous(beta, px.x, py.x)?;
            Ok(KernelLimitRow {
                epsilon: eps,
                gamma,
                k: px.k.unwrap(),
                l: py.k.unwrap(),
                x: px.x,
                y: py.x,
                scaled,
                continuous,
                difference: (scaled - continuous).norm(),
            })
        })
        .collect()
}

fn discrete_points(params: RepParams, kmax: u64) -> Result<Vec<SupportPoint>> {
    let class = classify(params.gamma);
    if !class.is_discrete() {
        return Err(Error::ClassMismatch { point: "discrete".into(), params: class.name().into() });
    }
    Ok((0..=kmax).flat_map(|k| points_at(params, k)).collect())
}

/// Kernel matrix over the support points with `k, l <= kmax`, in the order
/// `+x_0, -x_0, +x_1, -x_1, ...`.
pub fn kernel_matrix(params: RepParams, kmax: u64) -> Result<CMatrix> {
    kernel_matrix_with(params, kmax, Execution::default())
}

/// [`kernel_matrix`] under an explicit execution policy.
pub fn kernel_matrix_with(params: RepParams, kmax: u64, exec: Execution) -> Result<CMatrix> {
    let pts = discrete_points(params, kmax)?;
    let d = pts.len();
    let rows = exec.map(d, |i| pts.iter().map(|q| kernel_closed(params, &pts[i], q)).collect::<Result<Vec<_>>>());
    let mut m = CMatrix::zeros(d, d);
    for (i, r) in rows.into_iter().enumerate() {
        for (j, v) in r?.into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    Ok(m)
}

/// `max |(U U^*)_{xx'} - delta_{xx'}|` for rows `x, x'` with index at most
/// `kmax`, where the inner sum runs over the whole support under the tail
/// rule.
pub fn unitarity_defect(params: RepParams, kmax: u64) -> Result<f64> {
    unitarity_defect_with(params, kmax, Execution::default())
}

/// [`unitarity_defect`] under an explicit execution policy.
pub fn unitarity_defect_with(params: RepParams, kmax: u64, exec: Execution) -> Result<f64> {
    let rows = discrete_points(params, kmax)?;
    let d = rows.len();
    let term = |l: usize| {
        let cols = points_at(params, l as u64);
        let mut out = vec![0.0; 2 * d * d];
        let vals: Vec<Vec<Complex64>> =
            cols.iter().map(|c| rows.iter().map(|r| kernel_closed(params, r, c).unwrap()).collect()).collect();
        for v in &vals {
            for i in 0..d {
                for j in 0..d {
                    let p = v[i] * v[j].conj();
                    out[2 * (i * d + j)] += p.re;
                    out[2 * (i * d + j) + 1] += p.im;
                }
            }
        }
        out
    };
    let sums = if classify(params.gamma) == SpectralClass::Degenerate {
        let mut acc = vec![0.0; 2 * d * d];
        for l in 0..=kmax as usize {
            for (a, b) in acc.iter_mut().zip(term(l)) {
                *a += b;
            }
        }
        acc
    } else {
        let rho = 2.0 * params.gamma.abs() / (1.0 + params.gamma * params.gamma);
        let rule = TailRule::new(rho * rho, 2.0 * kmax as f64 + params.beta);
        tail_sum_vec(&rule, exec, 2 * d * d, term)?.0
    };
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let v = Complex64::new(sums[2 * (i * d + j)], sums[2 * (i * d + j) + 1]);
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - want).norm());
        }
    }
    Ok(worst)
}

/// `(b, c, z)` grid of the bilinear generating function check, each run
/// with `xi, xi' = 0..=10`.
pub const BILINEAR_GRID: [(f64, f64, f64); 6] =
    [(0.5, 0.3, 0.1), (1.0, 0.5, 0.2), (2.0, 0.6, 0.3), (2.0, 0.6, -0.3), (3.7, 0.8, 0.5), (1.0, 0.9, -0.6)];

/// Worst residual of the bilinear generating function over [`BILINEAR_GRID`].
pub fn bilinear_grid_residual() -> Result<f64> {
    let mut worst = 0.0f64;
    for (b, c, z) in BILINEAR_GRID {
        for xi in 0..=10 {
            for xi2 in 0..=10 {
                worst = worst.max(bilinear_gf_check(b, c, z, xi as f64, xi2 as f64, 100_000)?);
            }
        }
    }
    Ok(worst)
}
