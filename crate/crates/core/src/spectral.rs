//! Spectral theory of the position operator.
//!
//! In the basis `|beta,n>` the position operator is the Jacobi matrix with
//! zero diagonal and off-diagonal `R_0, S_1, R_1, S_2, ...`, where
//! `R_n = sqrt(beta+n)` and `S_n = gamma sqrt(n)`. Its orthogonal polynomials
//! `p_n(x)` are Meixner polynomials for `|gamma| != 1`, Laguerre polynomials
//! for `|gamma| = 1`, and discrete deltas for `gamma = 0`.

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::eigen::tridiagonal_eigenvalues;
use crate::hyperfun::{f11_dd, f21_dd, log_rising_over_factorial, tail_sum_vec, TailRule};
use crate::quadrature::{integrate, QuadConfig};
use crate::rep::{Generator, RepParams, TruncatedOperator};
use crate::{Error, Execution, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpectralClass {
    /// `|gamma| > 1`: support `+-sqrt(gamma^2-1) sqrt(k)`.
    DiscreteOuter,
    /// `|gamma| = 1`: support the real line.
    Continuous,
    /// `0 < |gamma| < 1`: support `+-sqrt(1-gamma^2) sqrt(beta+k)`.
    DiscreteInner,
    /// `gamma = 0`: support `+-sqrt(beta+k)`.
    Degenerate,
}

impl SpectralClass {
    pub fn name(self) -> &'static str {
        match self {
            SpectralClass::DiscreteOuter => "discrete_outer",
            SpectralClass::Continuous => "continuous",
            SpectralClass::DiscreteInner => "discrete_inner",
            SpectralClass::Degenerate => "degenerate",
        }
    }

    pub fn is_discrete(self) -> bool {
        self != SpectralClass::Continuous
    }
}

/// Spectral class from `|gamma|`, with exact comparisons.
pub fn classify(gamma: f64) -> SpectralClass {
    let g = gamma.abs();
    if g == 0.0 {
        SpectralClass::Degenerate
    } else if g == 1.0 {
        SpectralClass::Continuous
    } else if g > 1.0 {
        SpectralClass::DiscreteOuter
    } else {
        SpectralClass::DiscreteInner
    }
}

/// `1 - gamma^2` in double-double.
pub(crate) fn one_minus_g2(gamma: f64) -> Dd {
    let g = Dd::new(gamma);
    Dd::ONE - g * g
}

/// A point of the position spectrum. Discrete points carry their index `k`;
/// continuous points carry only `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub class: SpectralClass,
    pub sign: i8,
    pub k: Option<u64>,
    pub x: f64,
}

impl SupportPoint {
    /// The discrete point `(sign, k)` for `params`. For the outer class the
    /// point `k = 0` is `x = 0` and its sign is normalized to `+1`.
    pub fn discrete(params: RepParams, sign: i8, k: u64) -> Result<SupportPoint> {
        let class = classify(params.gamma);
        if !class.is_discrete() {
            return Err(Error::ClassMismatch {
                point: "discrete".into(),
                params: class.name().into(),
            });
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Domain(format!("sign must be +1 or -1, got {sign}")));
        }
        let sign = if class == SpectralClass::DiscreteOuter && k == 0 { 1 } else { sign };
        let x = sign as f64 * support_magnitude(params, k);
        Ok(SupportPoint { class, sign, k: Some(k), x })
    }

    /// A point of the continuous spectrum.
    pub fn continuous(x: f64) -> SupportPoint {
        SupportPoint { class: SpectralClass::Continuous, sign: if x < 0.0 { -1 } else { 1 }, k: None, x }
    }

    fn index(&self) -> Result<u64> {
        self.k.ok_or_else(|| Error::ClassMismatch {
            point: self.class.name().into(),
            params: "discrete".into(),
        })
    }
}

/// `|x|` of the discrete support point with index `k`.
fn support_magnitude(params: RepParams, k: u64) -> f64 {
    let (b, g) = (params.beta, params.gamma);
    let kf = k as f64;
    match classify(g) {
        SpectralClass::DiscreteOuter => (-one_minus_g2(g)).to_f64().sqrt() * kf.sqrt(),
        SpectralClass::DiscreteInner => one_minus_g2(g).to_f64().sqrt() * (b + kf).sqrt(),
        SpectralClass::Degenerate => (b + kf).sqrt(),
        SpectralClass::Continuous => f64::NAN,
    }
}

fn check_class(params: RepParams, point: &SupportPoint) -> Result<SpectralClass> {
    let class = classify(params.gamma);
    if point.class != class {
        return Err(Error::ClassMismatch { point: point.class.name().into(), params: class.name().into() });
    }
    Ok(class)
}

/// Index `k` (as a real number) whose support point has magnitude `|x|`.
fn fractional_index(params: RepParams, x: f64) -> f64 {
    let (b, g) = (params.beta, params.gamma);
    let x2 = Dd::new(x) * x;
    match classify(g) {
        SpectralClass::DiscreteOuter => (x2 / -one_minus_g2(g)).to_f64(),
        SpectralClass::DiscreteInner => (x2 / one_minus_g2(g) - b).to_f64(),
        SpectralClass::Degenerate => (x2 - b).to_f64(),
        SpectralClass::Continuous => f64::NAN,
    }
}

/// The support point at `x`, accepting a relative mismatch of `rel_tol`.
pub fn locate(params: RepParams, x: f64, rel_tol: f64) -> Result<SupportPoint> {
    let class = classify(params.gamma);
    if class == SpectralClass::Continuous {
        return Ok(SupportPoint::continuous(x));
    }
    let kf = fractional_index(params, x).round().max(0.0);
    let sign = if x < 0.0 { -1 } else { 1 };
    let cand = SupportPoint::discrete(params, sign, kf as u64)?;
    if (cand.x - x).abs() <= rel_tol * x.abs().max(1.0) {
        Ok(cand)
    } else {
        let reason = match class {
            SpectralClass::DiscreteOuter => "support is +-sqrt(gamma^2-1) sqrt(k)",
            SpectralClass::DiscreteInner => "support is +-sqrt(1-gamma^2) sqrt(beta+k)",
            _ => "support is +-sqrt(beta+k)",
        };
        Err(Error::OffSpectrum { x, reason: reason.into() })
    }
}

/// The discrete support point closest to `x` (`x` itself when continuous).
pub fn nearest(params: RepParams, x: f64) -> Result<SupportPoint> {
    let class = classify(params.gamma);
    if class == SpectralClass::Continuous {
        return Ok(SupportPoint::continuous(x));
    }
    let kf = fractional_index(params, x);
    let lo = kf.floor().max(0.0) as u64;
    let sign = if x < 0.0 { -1 } else { 1 };
    let a = SupportPoint::discrete(params, sign, lo)?;
    let b = SupportPoint::discrete(params, sign, lo + 1)?;
    Ok(if (a.x - x).abs() <= (b.x - x).abs() { a } else { b })
}

/// Jacobi coefficients `R_n = sqrt(beta+n)` and `S_n = gamma sqrt(n)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiCoefficients {
    pub beta: f64,
    pub gamma: f64,
}

impl JacobiCoefficients {
    pub fn new(params: RepParams) -> Self {
        JacobiCoefficients { beta: params.beta, gamma: params.gamma }
    }

    pub fn r(&self, n: usize) -> f64 {
        (self.beta + n as f64).sqrt()
    }

    pub fn s(&self, n: usize) -> f64 {
        self.gamma * (n as f64).sqrt()
    }

    /// Off-diagonal of the `n x n` truncation: `R_0, S_1, R_1, S_2, ...`.
    pub fn off_diagonal(&self, n: usize) -> Vec<f64> {
        (0..n.saturating_sub(1))
            .map(|i| if i % 2 == 0 { self.r(i / 2) } else { self.s(i / 2 + 1) })
            .collect()
    }
}

/// The `n x n` truncation of the position operator's Jacobi matrix.
pub fn jacobi_matrix(params: RepParams, n: usize) -> Result<TruncatedOperator> {
    if n < 2 {
        return Err(Error::Dimension { min: 2, got: n });
    }
    let off = JacobiCoefficients::new(params).off_diagonal(n);
    let mut m = crate::rep::CMatrix::zeros(n, n);
    for (i, v) in off.iter().enumerate() {
        m[(i + 1, i)] = Complex64::new(*v, 0.0);
        m[(i, i + 1)] = Complex64::new(*v, 0.0);
    }
    Ok(TruncatedOperator { label: Generator::QHat, dim: n, matrix: m, bandwidth: 1 })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Determinacy {
    pub determinate: bool,
    pub partial_sum: f64,
}

/// Divergence of `sum 1/R_n + sum 1/S_n`, which guarantees a determinate
/// moment problem. The first sum diverges for every `beta > 0`, so the answer
/// is always `true`; the partial sum over `terms` terms is the evidence.
pub fn determinacy_check(params: RepParams, terms: usize) -> Determinacy {
    let c = JacobiCoefficients::new(params);
    let mut s = 0.0;
    for n in 0..terms {
        s += 1.0 / c.r(n);
        if n >= 1 && params.gamma != 0.0 {
            s += 1.0 / c.s(n).abs();
        }
    }
    Determinacy { determinate: true, partial_sum: s }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Support {
    Discrete(Vec<SupportPoint>),
    /// The whole real line, with density `exp(-x^2) |x|^(2 beta - 1)`.
    Continuous,
}

/// All support points with index `k <= kmax`, `+` before `-` for each `k`.
pub fn support_points(params: RepParams, kmax: u64) -> Result<Support> {
    let class = classify(params.gamma);
    if class == SpectralClass::Continuous {
        return Ok(Support::Continuous);
    }
    let mut pts = Vec::new();
    for k in 0..=kmax {
        pts.push(SupportPoint::discrete(params, 1, k)?);
        if !(class == SpectralClass::DiscreteOuter && k == 0) {
            pts.push(SupportPoint::discrete(params, -1, k)?);
        }
    }
    Ok(Support::Discrete(pts))
}

/// `ln w(x)`; see [`weight`].
pub fn log_weight(params: RepParams, point: &SupportPoint) -> Result<f64> {
    let class = check_class(params, point)?;
    let (b, g) = (params.beta, params.gamma.abs());
    let half = 0.5f64.ln();
    Ok(match class {
        SpectralClass::DiscreteOuter => {
            let k = point.index()?;
            if k == 0 {
                0.0
            } else {
                half + log_rising_over_factorial(b, k as u32) - 2.0 * k as f64 * g.ln()
            }
        }
        SpectralClass::DiscreteInner => {
            let k = point.index()?;
            half + log_rising_over_factorial(b, k as u32) + 2.0 * k as f64 * g.ln()
        }
        SpectralClass::Degenerate => half,
        SpectralClass::Continuous => {
            let x = point.x;
            let e = 2.0 * b - 1.0;
            let lx = if e == 0.0 { 0.0 } else { e * x.abs().ln() };
            -x * x + lx
        }
    })
}

/// Orthogonality weight at a support point (a density for the continuous
/// class).
pub fn weight(params: RepParams, point: &SupportPoint) -> Result<f64> {
    Ok(log_weight(params, point)?.exp())
}

/// `ln` of the right-hand side of the orthogonality relation.
pub fn log_norm_constant(params: RepParams) -> f64 {
    let b = params.beta;
    let g = params.gamma;
    match classify(g) {
        SpectralClass::DiscreteOuter => {
            let d = -one_minus_g2(g);
            b * ((Dd::new(g) * g) / d).to_f64().ln()
        }
        SpectralClass::Continuous => libm::lgamma(b),
        SpectralClass::DiscreteInner => -b * one_minus_g2(g).to_f64().ln(),
        SpectralClass::Degenerate => 0.0,
    }
}

/// Right-hand side of the orthogonality relation:
/// `(gamma^2/(gamma^2-1))^beta`, `Gamma(beta)`, `(1-gamma^2)^-beta` or `1`.
pub fn norm_constant(params: RepParams) -> f64 {
    log_norm_constant(params).exp()
}

/// `sqrt((base)_n / n!)`.
fn sqrt_rof(base: f64, n: u64) -> f64 {
    (0.5 * log_rising_over_factorial(base, n as u32)).exp()
}

fn signed_pow(g: f64, n: i64) -> f64 {
    g.powi(n as i32)
}

/// `p_0(x), ..., p_nmax(x)` from the defining three-term recurrence.
///
/// For `gamma = 0` the recurrence cannot be solved forward; the polynomials
/// are then the discrete deltas at the support point `x`.
pub fn pn_recurrence(params: RepParams, x: f64, nmax: usize) -> Result<Vec<f64>> {
    if params.gamma == 0.0 {
        let pt = locate(params, x, 1e-12)?;
        return (0..=nmax).map(|n| pn_closed_form_at(params, &pt, n)).collect();
    }
    let b = Dd::new(params.beta);
    let g = Dd::new(params.gamma);
    let xd = Dd::new(x);
    let mut out = Vec::with_capacity(nmax + 1);
    let mut prev = Dd::ZERO;
    let mut cur = Dd::ONE;
    out.push(1.0);
    for i in 0..nmax {
        let h = (i / 2) as f64;
        let next = if i % 2 == 0 {
            // x p_2h = S_h p_2h-1 + R_h p_2h+1
            (xd * cur - g * Dd::new(h).sqrt() * prev) / (b + h).sqrt()
        } else {
            // x p_2h+1 = R_h p_2h + S_h+1 p_2h+2
            (xd * cur - (b + h).sqrt() * prev) / (g * Dd::new(h + 1.0).sqrt())
        };
        prev = cur;
        cur = next;
        out.push(cur.to_f64());
    }
    Ok(out)
}

/// `p_n(x)` from the class-specific Meixner or Laguerre identification,
/// evaluated at the real argument `x`.
///
/// For `gamma = 0` `x` must lie on the support.
pub fn pn_closed_form(params: RepParams, x: f64, n: usize) -> Result<f64> {
    match classify(params.gamma) {
        SpectralClass::Degenerate => {
            let pt = locate(params, x, 1e-12)?;
            pn_closed_form_at(params, &pt, n)
        }
        _ => Ok(closed_form(params, x, fractional_k(params, x), n)),
    }
}

/// `p_n` at a support point. Discrete points use their integer index, which
/// keeps the Meixner series exactly terminating for large `n`.
pub fn pn_closed_form_at(params: RepParams, point: &SupportPoint, n: usize) -> Result<f64> {
    let class = check_class(params, point)?;
    if class == SpectralClass::Degenerate {
        let k = point.index()? as usize;
        let m = n / 2;
        return Ok(if m != k {
            0.0
        } else if n.is_multiple_of(2) {
            1.0
        } else {
            point.sign as f64
        });
    }
    let k = match point.k {
        Some(k) => Dd::new(k as f64),
        None => fractional_k(params, point.x),
    };
    Ok(closed_form(params, point.x, k, n))
}

/// The Meixner variable `x^2/(gamma^2-1)` (outer) or `x^2/(1-gamma^2) - beta`
/// (inner) in double-double; `x^2` for the continuous class.
fn fractional_k(params: RepParams, x: f64) -> Dd {
    let x2 = Dd::new(x) * x;
    match classify(params.gamma) {
        SpectralClass::DiscreteOuter => x2 / -one_minus_g2(params.gamma),
        SpectralClass::DiscreteInner => x2 / one_minus_g2(params.gamma) - params.beta,
        _ => x2,
    }
}

fn closed_form(params: RepParams, x: f64, kvar: Dd, n: usize) -> f64 {
    let (b, g) = (params.beta, params.gamma);
    let h = (n / 2) as u64;
    let odd = n % 2 == 1;
    let hu = h as u32;
    match classify(g) {
        SpectralClass::DiscreteOuter => {
            // c = 1/gamma^2, 1 - 1/c = 1 - gamma^2
            let z = one_minus_g2(g);
            let pre = signed_pow(-g, -(h as i64));
            if odd {
                pre * x * sqrt_rof(b + 1.0, h) / b.sqrt()
                    * f21_dd(hu, -(kvar - 1.0), Dd::new(b + 1.0), z).to_f64()
            } else {
                pre * sqrt_rof(b, h) * f21_dd(hu, -kvar, Dd::new(b), z).to_f64()
            }
        }
        SpectralClass::DiscreteInner => {
            // c = gamma^2, 1 - 1/c = -(1 - gamma^2)/gamma^2
            let gd = Dd::new(g);
            let z = -one_minus_g2(g) / (gd * gd);
            let pre = signed_pow(-g, h as i64);
            if odd {
                pre * x * sqrt_rof(b + 1.0, h) / b.sqrt() * f21_dd(hu, -kvar, Dd::new(b + 1.0), z).to_f64()
            } else {
                pre * sqrt_rof(b, h) * f21_dd(hu, -kvar, Dd::new(b), z).to_f64()
            }
        }
        SpectralClass::Continuous => {
            let t = x * x;
            let pre = signed_pow(-g, h as i64);
            // sqrt(n!/(beta)_n) and sqrt(n!/(beta)_{n+1})
            if odd {
                let l = crate::hyperfun::laguerre_sequence(hu, b, t).unwrap()[h as usize];
                pre * (-0.5 * log_rising_over_factorial(b, hu)).exp() / (b + h as f64).sqrt() * x * l
            } else {
                let l = crate::hyperfun::laguerre_sequence(hu, b - 1.0, t).unwrap()[h as usize];
                pre * (-0.5 * log_rising_over_factorial(b, hu)).exp() * l
            }
        }
        SpectralClass::Degenerate => unreachable!("handled by callers"),
    }
}

/// `p_n(x)` from the hypergeometric solution of the recurrence:
/// `2F1(-n, x^2/(1-gamma^2); beta; 1-gamma^2)` for `gamma^2 != 1` and
/// `1F1(-n; beta; x^2)` for `gamma^2 = 1`.
pub fn pn_hypergeometric(params: RepParams, x: f64, n: usize) -> Result<f64> {
    let (b, g) = (params.beta, params.gamma);
    if g == 0.0 {
        return Err(Error::Domain("hypergeometric form needs gamma != 0".into()));
    }
    let h = (n / 2) as u64;
    let hu = h as u32;
    let odd = n % 2 == 1;
    let x2 = Dd::new(x) * x;
    if classify(g) == SpectralClass::Continuous {
        let pre = signed_pow(-g, h as i64);
        return Ok(if odd {
            pre * x * sqrt_rof(b + 1.0, h) / b.sqrt() * f11_dd(hu, Dd::new(b + 1.0), x2).to_f64()
        } else {
            pre * sqrt_rof(b, h) * f11_dd(hu, Dd::new(b), x2).to_f64()
        });
    }
    let z = one_minus_g2(g);
    let a = x2 / z;
    let pre = signed_pow(-g, -(h as i64));
    Ok(if odd {
        pre * x * sqrt_rof(b + 1.0, h) / b.sqrt() * f21_dd(hu, a + 1.0, Dd::new(b + 1.0), z).to_f64()
    } else {
        pre * sqrt_rof(b, h) * f21_dd(hu, a, Dd::new(b), z).to_f64()
    })
}

/// Tail rule for sums over the support: envelope ratio `gamma^{-2}` or
/// `gamma^2`, polynomial degree `degree + max(beta-1, 0)`.
pub(crate) fn support_tail_rule(params: RepParams, degree: f64) -> TailRule {
    let g2 = params.gamma * params.gamma;
    let ratio = match classify(params.gamma) {
        SpectralClass::DiscreteOuter => 1.0 / g2,
        _ => g2,
    };
    TailRule::new(ratio, degree + (params.beta - 1.0).max(0.0))
}

/// The points with index `k`: `+x_k` and `-x_k` (just `x_0 = 0` for the
/// outer class).
pub(crate) fn points_at(params: RepParams, k: u64) -> Vec<SupportPoint> {
    let mut v = vec![SupportPoint::discrete(params, 1, k).unwrap()];
    if !(classify(params.gamma) == SpectralClass::DiscreteOuter && k == 0) {
        v.push(SupportPoint::discrete(params, -1, k).unwrap());
    }
    v
}

/// Sum of `f(k)` over support indices. `gamma = 0` sums `k <= kmax`
/// exactly; the other discrete classes use [`support_tail_rule`].
pub(crate) fn support_sum<F>(
    params: RepParams,
    degree: f64,
    kmax: usize,
    exec: Execution,
    width: usize,
    f: F,
) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Vec<f64> + Sync + Send,
{
    if classify(params.gamma) == SpectralClass::Degenerate {
        let terms = exec.map(kmax + 1, &f);
        let mut acc = vec![0.0; width];
        for t in terms {
            for (a, b) in acc.iter_mut().zip(t) {
                *a += b;
            }
        }
        return Ok(acc);
    }
    Ok(tail_sum_vec(&support_tail_rule(params, degree), exec, width, f)?.0)
}

/// Integration half-width for the continuous class.
pub(crate) fn continuous_cutoff(beta: f64, nmax: usize) -> f64 {
    8.0 + 2.0 * (beta + 2.0 * nmax as f64).sqrt()
}

/// Integrates a vector-valued function against the whole line, split at 0.
pub(crate) fn integrate_line<F>(f: F, cutoff: f64, width: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Vec<f64>,
{
    let cfg = QuadConfig { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 20_000 };
    let left = integrate(&f, -cutoff, 0.0, width, cfg)?;
    let right = integrate(&f, 0.0, cutoff, width, cfg)?;
    Ok(left.values.iter().zip(&right.values).map(|(a, b)| a + b).collect())
}

/// Gram matrix `sum_x w(x) p_n(x) p_m(x)` (or the integral) for
/// `n, m <= nmax`, row-major.
pub fn gram_matrix(params: RepParams, nmax: usize, exec: Execution) -> Result<Vec<f64>> {
    let dim = nmax + 1;
    let outer = |pvals: &[f64], w: f64, acc: &mut [f64]| {
        for i in 0..dim {
            for j in 0..dim {
                acc[i * dim + j] += w * pvals[i] * pvals[j];
            }
        }
    };
    match classify(params.gamma) {
        SpectralClass::Continuous => {
            let f = |x: f64| {
                let mut acc = vec![0.0; dim * dim];
                let w = weight(params, &SupportPoint::continuous(x)).unwrap();
                let p = pn_recurrence(params, x, nmax).unwrap();
                outer(&p, w, &mut acc);
                acc
            };
            integrate_line(f, continuous_cutoff(params.beta, nmax), dim * dim)
        }
        _ => {
            let f = |k: usize| {
                let mut acc = vec![0.0; dim * dim];
                for pt in points_at(params, k as u64) {
                    let w = weight(params, &pt).unwrap();
                    let p = pn_recurrence(params, pt.x, nmax).unwrap();
                    outer(&p, w, &mut acc);
                }
                acc
            };
            support_sum(params, nmax as f64, nmax / 2, exec, dim * dim, f)
        }
    }
}

/// `max |Gram - Norm I|` over `n, m <= nmax`.
pub fn orthogonality_residual(params: RepParams, nmax: usize) -> Result<f64> {
    orthogonality_residual_with(params, nmax, Execution::default())
}

/// [`orthogonality_residual`] under an explicit execution policy.
pub fn orthogonality_residual_with(params: RepParams, nmax: usize, exec: Execution) -> Result<f64> {
    let dim = nmax + 1;
    let gram = gram_matrix(params, nmax, exec)?;
    let norm = norm_constant(params);
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            let want = if i == j { norm } else { 0.0 };
            worst = worst.max((gram[i * dim + j] - want).abs());
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SpectrumGap {
    pub support_x: f64,
    pub eigenvalue: f64,
    pub gap: f64,
}

/// Eigenvalues of the `n x n` Jacobi matrix, ascending.
pub fn truncated_eigenvalues(params: RepParams, n: usize) -> Result<Vec<f64>> {
    let off = JacobiCoefficients::new(params).off_diagonal(n);
    tridiagonal_eigenvalues(&vec![0.0; n], &off)
}

/// For the `count` support points of smallest `|x|`, the distance to the
/// nearest eigenvalue of the `n x n` truncation.
pub fn truncated_spectrum_crosscheck(params: RepParams, n: usize, count: usize) -> Result<Vec<SpectrumGap>> {
    let class = classify(params.gamma);
    if !class.is_discrete() {
        return Err(Error::ClassMismatch { point: "discrete".into(), params: class.name().into() });
    }
    let ev = truncated_eigenvalues(params, n)?;
    let mut pts = Vec::new();
    let mut k = 0;
    while pts.len() < count + 2 {
        pts.extend(points_at(params, k));
        k += 1;
    }
    pts.sort_by(|a, b| a.x.abs().total_cmp(&b.x.abs()).then(b.sign.cmp(&a.sign)));
    pts.truncate(count);
    Ok(pts
        .iter()
        .map(|p| {
            let i = ev.partition_point(|&e| e < p.x);
            let mut best = f64::INFINITY;
            let mut val = f64::NAN;
            for j in [i.wrapping_sub(1), i] {
                if let Some(&e) = ev.get(j) {
                    if (e - p.x).abs() < best {
                        best = (e - p.x).abs();
                        val = e;
                    }
                }
            }
            SpectrumGap { support_x: p.x, eigenvalue: val, gap: best }
        })
        .collect())
}

/// `||(M_q - x) v|| / ||v||` for the formal eigenvector
/// `v = (p_0(x), ..., p_{n-1}(x))`, over the rows not touched by truncation.
pub fn eigenvector_residual(params: RepParams, point: &SupportPoint, n: usize) -> Result<f64> {
    check_class(params, point)?;
    if n < 3 {
        return Err(Error::Dimension { min: 3, got: n });
    }
    let v: Vec<f64> = (0..n).map(|i| pn_closed_form_at(params, point, i)).collect::<Result<_>>()?;
    let off = JacobiCoefficients::new(params).off_diagonal(n);
    let mut r2 = 0.0;
    for i in 0..n - 1 {
        let mut mv = off[i] * v[i + 1];
        if i > 0 {
            mv += off[i - 1] * v[i - 1];
        }
        r2 += (mv - point.x * v[i]).powi(2);
    }
    let v2: f64 = v.iter().map(|a| a * a).sum();
    Ok((r2 / v2).sqrt())
}

/// Largest relative gap between the recurrence and the hypergeometric form
/// of `p_n`, `n <= nmax`, at `x`.
pub fn recurrence_gap(params: RepParams, x: f64, nmax: usize) -> Result<f64> {
    let rec = pn_recurrence(params, x, nmax)?;
    let mut worst = 0.0f64;
    for (n, r) in rec.iter().enumerate() {
        let c = if params.gamma == 0.0 {
            pn_closed_form(params, x, n)?
        } else {
            pn_hypergeometric(params, x, n)?
        };
        worst = worst.max((r - c).abs() / r.abs().max(c.abs()).max(1.0));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(beta: f64, gamma: f64) -> RepParams {
        RepParams::new(beta, gamma).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(1.0), SpectralClass::Continuous);
        assert_eq!(classify(-1.0), SpectralClass::Continuous);
        assert_eq!(classify(0.5), SpectralClass::DiscreteInner);
        assert_eq!(classify(-2.0), SpectralClass::DiscreteOuter);
        assert_eq!(classify(0.0), SpectralClass::Degenerate);
        assert_eq!(classify(1.0 + 1e-15), SpectralClass::DiscreteOuter);
    }

    #[test]
    fn jacobi_matrix_examples() {
        let m = jacobi_matrix(p(1.0, 2.0), 3).unwrap().matrix;
        assert_eq!(m[(1, 0)].re, 1.0);
        assert_eq!(m[(2, 1)].re, 2.0);
        assert_eq!(m, m.transpose());
        let m = jacobi_matrix(p(0.25, 0.3), 2).unwrap().matrix;
        assert_eq!(m[(0, 1)].re, 0.5);
        let q = crate::rep::build_generator(Generator::QHat, p(1.3, -0.7), 9).unwrap().matrix;
        let j = jacobi_matrix(p(1.3, -0.7), 9).unwrap().matrix;
        assert!((q - j).iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn determinacy_examples() {
        let d = determinacy_check(p(1.0, 1.0), 1000);
        assert!(d.determinate && d.partial_sum > 60.0);
        assert!(determinacy_check(p(100.0, 0.1), 10).determinate);
        assert!(determinacy_check(p(1.0, 0.0), 10).partial_sum.is_finite());
    }

    #[test]
    fn support_examples() {
        let Support::Discrete(pts) = support_points(p(1.0, 2.0), 1).unwrap() else { panic!() };
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0].x, 0.0);
        assert!((pts[1].x - 3f64.sqrt()).abs() < 1e-15 && (pts[2].x + 3f64.sqrt()).abs() < 1e-15);
        let x = SupportPoint::discrete(p(0.5, 0.6), 1, 0).unwrap().x;
        assert!((x - 0.565685424949238).abs() < 1e-14);
        let x = SupportPoint::discrete(p(2.0, 0.0), -1, 0).unwrap().x;
        assert_eq!(x, -(2f64.sqrt()));
        assert_eq!(support_points(p(2.0, 1.0), 3).unwrap(), Support::Continuous);
    }

    #[test]
    fn weight_examples() {
        let params = p(1.3, 2.0);
        let zero = SupportPoint::discrete(params, -1, 0).unwrap();
        assert_eq!(zero.sign, 1);
        assert_eq!(weight(params, &zero).unwrap(), 1.0);
        let inner = p(2.2, 0.3);
        assert!((weight(inner, &SupportPoint::discrete(inner, 1, 0).unwrap()).unwrap() - 0.5).abs() < 1e-16);
        let cont = p(0.5, 1.0);
        assert_eq!(weight(cont, &SupportPoint::continuous(0.0)).unwrap(), 1.0);
        assert!(matches!(weight(cont, &zero), Err(Error::ClassMismatch { .. })));
    }

    #[test]
    fn locate_rejects_off_spectrum() {
        let params = p(1.0, 0.5);
        assert!(matches!(locate(params, 0.0, 1e-12), Err(Error::OffSpectrum { .. })));
        let pt = SupportPoint::discrete(params, -1, 7).unwrap();
        assert_eq!(locate(params, pt.x, 1e-12).unwrap(), pt);
        assert_eq!(nearest(params, pt.x * 1.001).unwrap(), pt);
    }

    #[test]
    fn recurrence_initial_terms() {
        let params = p(2.0, 1.7);
        let v = pn_recurrence(params, 0.9, 3).unwrap();
        assert_eq!(v[0], 1.0);
        assert!((v[1] - 0.9 / 2f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(pn_closed_form(p(1.3, 0.4), 0.7, 0).unwrap(), 1.0);
        // gamma = 1, n = 2, beta = 1, x = 1: -L_1^(0)(1) = 0
        assert!(pn_closed_form(p(1.0, 1.0), 1.0, 2).unwrap().abs() < 1e-16);
        let params = p(1.5, 0.0);
        let x = (1.5f64 + 3.0).sqrt();
        for n in 0..10 {
            let want = if n / 2 == 3 { 1.0 } else { 0.0 };
            assert_eq!(pn_closed_form(params, x, n).unwrap(), want);
            assert_eq!(pn_closed_form(params, -x, n).unwrap(), if n % 2 == 1 { -want } else { want });
        }
    }

    #[test]
    fn recurrence_matches_closed_forms_outer_example() {
        let params = p(1.0, 2.0);
        let x = 3f64.sqrt();
        let rec = pn_recurrence(params, x, 30).unwrap();
        let pt = locate(params, x, 1e-12).unwrap();
        for (n, r) in rec.iter().enumerate() {
            let c = pn_closed_form_at(params, &pt, n).unwrap();
            assert!((r - c).abs() <= 1e-11 * r.abs().max(1.0), "n={n}: {r} vs {c}");
        }
    }

    #[test]
    fn laguerre_identification_matches_hypergeometric() {
        for gamma in [1.0, -1.0] {
            let params = p(0.7, gamma);
            for n in 0..20 {
                let a = pn_closed_form(params, 1.3, n).unwrap();
                let b = pn_hypergeometric(params, 1.3, n).unwrap();
                let r = pn_recurrence(params, 1.3, n).unwrap()[n];
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
                assert!((a - r).abs() < 1e-12 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn orthogonality_examples() {
        assert_eq!(orthogonality_residual(p(1.7, 0.0), 6).unwrap(), 0.0);
        assert!(orthogonality_residual(p(1.0, 0.5), 8).unwrap() < 1e-9);
        assert!(orthogonality_residual(p(1.0, 1.5), 8).unwrap() < 1e-9);
    }

    #[test]
    fn orthogonality_continuous() {
        assert!(orthogonality_residual(p(2.0, 1.0), 8).unwrap() < 1e-8);
    }

    #[test]
    fn crosscheck_degenerate_is_exact() {
        let params = p(1.5, 0.0);
        let gaps = truncated_spectrum_crosscheck(params, 40, 10).unwrap();
        assert!(gaps.iter().all(|g| g.gap < 1e-14));
    }

    #[test]
    fn crosscheck_examples() {
        let gaps = truncated_spectrum_crosscheck(p(1.0, 2.0), 400, 1).unwrap();
        assert!(gaps[0].support_x == 0.0 && gaps[0].gap < 1e-6);
        let gaps = truncated_spectrum_crosscheck(p(0.5, 0.5), 400, 2).unwrap();
        assert!(gaps.iter().all(|g| g.gap < 1e-4));
        assert!((gaps[0].support_x.abs() - (0.75f64 * 0.5).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn eigenvector_residual_small() {
        for params in [p(1.0, 2.0), p(0.5, 0.4), p(2.0, 0.0)] {
            for k in [0, 5, 20] {
                let pt = SupportPoint::discrete(params, -1, k).unwrap();
                let r = eigenvector_residual(params, &pt, 200).unwrap();
                assert!(r < 1e-6, "{params:?} k={k}: {r}");
            }
        }
    }
}
