//! Normalized position and momentum wavefunctions.
//!
//! `Phi_n(x)` is the polynomial `p_n(x)` scaled by `sqrt(w(x)/Norm)`. The
//! discrete classes use Meixner polynomials with the support index `k` as
//! variable; `|gamma| = 1` gives the paraboson wavefunctions in Laguerre form.

use num_complex::Complex64;
use serde::Serialize;

use crate::dd::Dd;
use crate::hyperfun::{f21_dd, laguerre_sequence, ln_factorial, log_rising_over_factorial};
use crate::spectral::{
    classify, continuous_cutoff, integrate_line, locate, nearest, one_minus_g2, points_at, support_sum,
    SpectralClass, SupportPoint,
};
use crate::{Error, Execution, RepParams, Result};

/// `ln |gamma|`, accurate near `|gamma| = 1`.
pub(crate) fn ln_abs_gamma(gamma: f64) -> f64 {
    (gamma.abs() - 1.0).ln_1p()
}

/// `(-sgn gamma)^h`.
fn level_sign(gamma: f64, h: u64) -> f64 {
    if gamma > 0.0 && h % 2 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// `Phi_n` at a point of the spectrum.
pub fn phi(params: RepParams, n: usize, point: &SupportPoint) -> Result<f64> {
    let class = classify(params.gamma);
    if point.class != class {
        return Err(Error::ClassMismatch { point: point.class.name().into(), params: class.name().into() });
    }
    match class {
        SpectralClass::Continuous => phi_continuous(params, n, point.x),
        SpectralClass::Degenerate => {
            let k = point.k.unwrap() as usize;
            Ok(if n / 2 != k {
                0.0
            } else if n.is_multiple_of(2) {
                std::f64::consts::FRAC_1_SQRT_2
            } else {
                point.sign as f64 * std::f64::consts::FRAC_1_SQRT_2
            })
        }
        _ => Ok(phi_discrete(params, n, point)),
    }
}

/// `Phi_n(x)`, locating `x` on the discrete support first.
pub fn phi_at(params: RepParams, n: usize, x: f64) -> Result<f64> {
    phi(params, n, &locate(params, x, 1e-9)?)
}

/// Momentum wavefunction `(-i)^n Phi_n`.
pub fn psi(params: RepParams, n: usize, point: &SupportPoint) -> Result<Complex64> {
    Ok(minus_i_pow(n) * phi(params, n, point)?)
}

/// `(-i)^n`.
pub fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

fn phi_discrete(params: RepParams, n: usize, point: &SupportPoint) -> f64 {
    let (b, g) = (params.beta, params.gamma);
    let k = point.k.unwrap();
    let h = (n / 2) as u64;
    let odd = n % 2 == 1;
    if odd && point.x == 0.0 {
        return 0.0;
    }
    let lg = ln_abs_gamma(g);
    let z1 = one_minus_g2(g);
    let bb = if odd { b + 1.0 } else { b };
    let mut logmag = 0.5
        * (log_rising_over_factorial(bb, h as u32) + log_rising_over_factorial(b, k as u32)
            - std::f64::consts::LN_2);
    if odd {
        logmag -= 0.5 * b.ln();
    }
    let m = match classify(g) {
        SpectralClass::DiscreteInner => {
            logmag += (h + k) as f64 * lg + 0.5 * b * z1.to_f64().ln();
            let gd = Dd::new(g);
            let z = -z1 / (gd * gd);
            f21_dd(h as u32, Dd::new(-(k as f64)), Dd::new(bb), z)
        }
        _ => {
            logmag += -((h + k) as f64 + b) * lg + 0.5 * b * (-z1).to_f64().ln();
            if k == 0 {
                logmag += 0.5 * std::f64::consts::LN_2;
            }
            let kk = if odd { k as f64 - 1.0 } else { k as f64 };
            f21_dd(h as u32, Dd::new(-kk), Dd::new(bb), z1)
        }
    };
    let xfac = if odd { point.x } else { 1.0 };
    level_sign(g, h) * logmag.exp() * m.to_f64() * xfac
}

fn phi_continuous(params: RepParams, n: usize, x: f64) -> Result<f64> {
    let b = params.beta;
    let h = (n / 2) as u32;
    let odd = n % 2 == 1;
    let sign = level_sign(params.gamma, h as u64);
    if odd {
        if x == 0.0 {
            return Ok(0.0);
        }
        let l = laguerre_sequence(h, b, x * x)?[h as usize];
        let lm = 0.5 * (ln_factorial(h) - libm::lgamma(h as f64 + b + 1.0)) - 0.5 * x * x
            + (b + 0.5) * x.abs().ln();
        Ok(sign * x.signum() * lm.exp() * l)
    } else {
        if x == 0.0 && b < 0.5 {
            return Err(Error::Domain("even wavefunction is singular at x = 0 for beta < 1/2".into()));
        }
        let l = laguerre_sequence(h, b - 1.0, x * x)?[h as usize];
        let px = if b == 0.5 { 0.0 } else { (b - 0.5) * x.abs().ln() };
        let lm = 0.5 * (ln_factorial(h) - libm::lgamma(h as f64 + b)) - 0.5 * x * x + px;
        Ok(sign * lm.exp() * l)
    }
}

/// `max_n |sum_x Phi_n(x)^2 - 1|` for `n <= nmax` (an integral for the
/// continuous class).
pub fn normalization_residual(params: RepParams, nmax: usize) -> Result<f64> {
    normalization_residual_with(params, nmax, Execution::default())
}

/// [`normalization_residual`] under an explicit execution policy.
pub fn normalization_residual_with(params: RepParams, nmax: usize, exec: Execution) -> Result<f64> {
    let dim = nmax + 1;
    let sums = match classify(params.gamma) {
        SpectralClass::Continuous => {
            let f = |x: f64| {
                (0..dim)
                    .map(|n| phi_continuous(params, n, x).map(|v| v * v).unwrap_or(f64::INFINITY))
                    .collect()
            };
            integrate_line(f, continuous_cutoff(params.beta, nmax), dim)?
        }
        _ => {
            let f = |k: usize| {
                let mut acc = vec![0.0; dim];
                for pt in points_at(params, k as u64) {
                    for (n, a) in acc.iter_mut().enumerate() {
                        *a += phi_squared(params, n, &pt);
                    }
                }
                acc
            };
            support_sum(params, nmax as f64, nmax / 2, exec, dim, f)?
        }
    };
    Ok(sums.iter().fold(0.0f64, |m, s| m.max((s - 1.0).abs())))
}

/// `Phi_n^2`, exact for `gamma = 0` where it is `p_n^2 / 2`.
fn phi_squared(params: RepParams, n: usize, pt: &SupportPoint) -> f64 {
    if pt.class == SpectralClass::Degenerate {
        0.5 * crate::spectral::pn_closed_form_at(params, pt, n).unwrap().powi(2)
    } else {
        phi(params, n, pt).unwrap().powi(2)
    }
}

/// `max |sum_n Phi_n(x) Phi_n(x') - delta_{x,x'}|` over support points with
/// index `k <= kmax`, the level sum truncated by the tail rule.
pub fn completeness_residual(params: RepParams, kmax: u64) -> Result<f64> {
    let class = classify(params.gamma);
    if !class.is_discrete() {
        return Err(Error::ClassMismatch { point: "discrete".into(), params: class.name().into() });
    }
    let pts: Vec<SupportPoint> = (0..=kmax).flat_map(|k| points_at(params, k)).collect();
    let d = pts.len();
    // Phi_{2h}(x_k) carries |gamma|^h or |gamma|^-h: ratio |gamma|^(+-1/2)
    // per level, degree k in h.
    let g = params.gamma.abs();
    let ratio = if g > 1.0 { 1.0 / g } else { g };
    let rule = crate::hyperfun::TailRule::new(ratio, 2.0 * kmax as f64 + params.beta);
    let f = |n: usize| {
        let v: Vec<f64> = pts.iter().map(|p| phi(params, n, p).unwrap()).collect();
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = v[i] * v[j];
            }
        }
        out
    };
    let gram = if class == SpectralClass::Degenerate {
        let mut acc = vec![0.0; d * d];
        for n in 0..=(2 * kmax as usize + 1) {
            for (a, b) in acc.iter_mut().zip(f(n)) {
                *a += b;
            }
        }
        acc
    } else {
        crate::hyperfun::tail_sum_vec(&rule, Execution::default(), d * d, f)?.0
    };
    let mut worst = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let want = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((gram[i * d + j] - want).abs());
        }
    }
    Ok(worst)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub epsilon: f64,
    pub gamma: f64,
    pub k: u64,
    /// Support point actually used.
    pub x: f64,
    /// Raw discrete value.
    pub discrete: f64,
    /// Discrete value divided by the square root of the local spacing.
    pub scaled: f64,
    pub continuous: f64,
    pub difference: f64,
}

/// Discrete `Phi_n` at `gamma = 1 -+ epsilon` against the paraboson
/// wavefunction, at the support point nearest `x`.
///
/// The discrete values sum to one in square over points spaced
/// `|1-gamma^2|/(2|x|)` apart, so they are compared after division by the
/// square root of that spacing. `x = 0` has no such spacing and is rejected.
pub fn limit_gamma_to_one(beta: f64, n: usize, x: f64, epsilons: &[f64], from_above: bool) -> Result<Vec<LimitRow>> {
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain("limit comparison needs x != 0".into()));
    }
    let cont = RepParams::new(beta, 1.0)?;
    epsilons
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::Domain(format!("epsilon must lie in (0, 1), got {eps}")));
            }
            let gamma = if from_above { 1.0 + eps } else { 1.0 - eps };
            let params = RepParams::new(beta, gamma)?;
            let pt = nearest(params, x)?;
            let discrete = phi(params, n, &pt)?;
            let spacing = one_minus_g2(gamma).to_f64().abs() / (2.0 * pt.x.abs());
            let scaled = discrete / spacing.sqrt();
            let continuous = phi_continuous(cont, n, pt.x)?;
            Ok(LimitRow {
                epsilon: eps,
                gamma,
                k: pt.k.unwrap(),
                x: pt.x,
                discrete,
                scaled,
                continuous,
                difference: (scaled - continuous).abs(),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FigureRow {
    pub beta: f64,
    pub gamma: f64,
    pub n: usize,
    pub x: f64,
    pub phi: f64,
    pub class: SpectralClass,
}

/// Grid step for continuous panels.
pub const FIGURE_STEP: f64 = 0.01;

/// Parameter sets of the two wavefunction figures: `(beta, window)`.
pub const FIGURE_BETAS: [(f64, f64); 2] = [(0.5, 6.0), (2.0, 7.0)];
pub const FIGURE_GAMMAS: [f64; 5] = [0.4, 0.75, 1.0, 1.2, 1.5];
pub const FIGURE_LEVELS: [usize; 2] = [0, 1];

/// Samples of `Phi_n` on `[-window, window]`: a uniform grid for
/// `|gamma| = 1`, every support point otherwise, ascending in `x`.
pub fn figure_data(beta: f64, gammas: &[f64], n_values: &[usize], window: f64) -> Result<Vec<FigureRow>> {
    figure_data_with(beta, gammas, n_values, window, Execution::default())
}

/// [`figure_data`] under an explicit execution policy.
pub fn figure_data_with(
    beta: f64,
    gammas: &[f64],
    n_values: &[usize],
    window: f64,
    exec: Execution,
) -> Result<Vec<FigureRow>> {
    let mut rows = Vec::new();
    for &gamma in gammas {
        let params = RepParams::new(beta, gamma)?;
        let class = classify(gamma);
        let pts: Vec<SupportPoint> = if class == SpectralClass::Continuous {
            let steps = (window / FIGURE_STEP).round() as i64;
            (-steps..=steps).map(|i| SupportPoint::continuous(i as f64 * FIGURE_STEP)).collect()
        } else {
            let mut v = Vec::new();
            let mut k = 0;
            loop {
                let p = points_at(params, k);
                if p[0].x > window {
                    break;
                }
                v.extend(p);
                k += 1;
            }
            v.sort_by(|a, b| a.x.total_cmp(&b.x));
            v
        };
        for &n in n_values {
            let vals = exec.map_slice(&pts, |p| phi(params, n, p));
            for (p, v) in pts.iter().zip(vals) {
                rows.push(FigureRow { beta, gamma, n, x: p.x, phi: v?, class });
            }
        }
    }
    Ok(rows)
}

/// Rows for both figures.
pub fn all_figures(exec: Execution) -> Result<Vec<FigureRow>> {
    let mut rows = Vec::new();
    for (beta, window) in FIGURE_BETAS {
        rows.extend(figure_data_with(beta, &FIGURE_GAMMAS, &FIGURE_LEVELS, window, exec)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{norm_constant, pn_recurrence, weight};

    fn p(beta: f64, gamma: f64) -> RepParams {
        RepParams::new(beta, gamma).unwrap()
    }

    #[test]
    fn ground_state_examples() {
        let v = phi(p(0.5, 1.0), 0, &SupportPoint::continuous(0.0)).unwrap();
        assert!((v - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
        let params = p(2.0, 0.5);
        let v = phi(params, 0, &SupportPoint::discrete(params, 1, 0).unwrap()).unwrap();
        assert!((v - 0.75 / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn odd_levels_vanish_at_zero() {
        for params in [p(0.3, 1.0), p(1.5, 2.0), p(2.0, -1.3)] {
            let pt = locate(params, 0.0, 0.0).unwrap();
            for n in [1, 3, 7] {
                assert_eq!(phi(params, n, &pt).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn outer_zero_point_matches_separate_expression() {
        let (b, g) = (1.3, 1.7);
        let params = p(b, g);
        let pt = SupportPoint::discrete(params, 1, 0).unwrap();
        for h in 0..6u32 {
            let want = (-1f64).powi(h as i32)
                * g.powf(-(h as f64) - b)
                * crate::hyperfun::pochhammer(b, h).sqrt()
                / (ln_factorial(h).exp()).sqrt()
                * (g * g - 1.0).powf(b / 2.0);
            let got = phi(params, 2 * h as usize, &pt).unwrap();
            assert!((got - want).abs() < 1e-14, "h={h}: {got} vs {want}");
        }
    }

    #[test]
    fn psi_phases() {
        let params = p(0.5, 1.0);
        let pt = SupportPoint::continuous(1.0);
        let f0 = phi(params, 0, &pt).unwrap();
        assert_eq!(psi(params, 0, &pt).unwrap(), Complex64::new(f0, 0.0));
        let f2 = phi(params, 2, &pt).unwrap();
        assert_eq!(psi(params, 2, &pt).unwrap(), Complex64::new(-f2, 0.0));
        let f1 = phi(params, 1, &pt).unwrap();
        assert_eq!(psi(params, 1, &pt).unwrap(), Complex64::new(0.0, -f1));
    }

    #[test]
    fn phi_is_normalized_polynomial() {
        for params in [p(0.5, 0.4), p(2.0, 0.75), p(1.0, 1.5), p(0.7, -1.2), p(1.3, -0.6)] {
            let norm = norm_constant(params);
            for k in 0..=20u64 {
                for pt in points_at(params, k) {
                    let pn = pn_recurrence(params, pt.x, 20).unwrap();
                    let s = (weight(params, &pt).unwrap() / norm).sqrt();
                    for (n, v) in pn.iter().enumerate() {
                        let a = phi(params, n, &pt).unwrap();
                        assert!((a - v * s).abs() < 1e-10, "{params:?} k={k} n={n}: {a} vs {}", v * s);
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_residual(p(1.5, 0.0), 7).unwrap(), 0.0);
        assert!(normalization_residual(p(0.5, 0.75), 6).unwrap() < 1e-9);
        assert!(normalization_residual(p(0.5, 1.5), 6).unwrap() < 1e-9);
        assert!(normalization_residual(p(2.0, 1.0), 6).unwrap() < 1e-8);
    }

    #[test]
    fn completeness_small() {
        assert!(completeness_residual(p(1.0, 0.5), 6).unwrap() < 1e-6);
        assert!(completeness_residual(p(0.5, 1.6), 6).unwrap() < 1e-6);
        assert!(completeness_residual(p(2.0, 0.0), 4).unwrap() < 1e-15);
    }

    #[test]
    fn limit_examples() {
        let rows = limit_gamma_to_one(2.0, 3, 1.0, &[1e-3, 1e-4, 1e-5], false).unwrap();
        assert!(rows[2].difference < 1e-3, "{rows:?}");
        let rows = limit_gamma_to_one(0.5, 0, 1.2, &[1e-4], true).unwrap();
        assert!(rows[0].difference < 1e-3, "{rows:?}");
        assert!(limit_gamma_to_one(0.5, 0, 0.0, &[1e-4], true).is_err());
    }

    #[test]
    fn figure_examples() {
        let rows = figure_data(0.5, &[1.0], &[0], 6.0).unwrap();
        assert_eq!(rows.len(), 1201);
        for r in &rows {
            let want = std::f64::consts::PI.powf(-0.25) * (-r.x * r.x / 2.0).exp();
            assert!((r.phi - want).abs() < 1e-14);
        }
        let rows = figure_data(0.5, &[1.5], &[0], 6.0).unwrap();
        for r in &rows {
            let k = (r.x * r.x / 1.25).round();
            assert!((r.x.abs() - 1.25f64.sqrt() * k.sqrt()).abs() < 1e-12);
        }
        let rows = figure_data(2.0, &[0.4], &[1], 7.0).unwrap();
        assert!(rows.iter().all(|r| r.x != 0.0));
    }
}
