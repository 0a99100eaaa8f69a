//! Special-function primitives.
//!
//! Terminating series and the Laguerre recurrence are evaluated in
//! double-double arithmetic and rounded once at the end. The alternating sums
//! that appear at the support points of the position operator otherwise lose
//! most of their digits.

use crate::dd::Dd;
use crate::{Error, Execution, Result};

/// Rising factorial `base (base+1) ... (base+n-1)`.
pub fn pochhammer(base: f64, n: u32) -> f64 {
    let mut p = Dd::ONE;
    for j in 0..n {
        p *= Dd::new(base) + j as f64;
    }
    p.to_f64()
}

/// `ln((base)_n)` for positive `base`.
pub fn log_pochhammer(base: f64, n: u32) -> Result<f64> {
    if !(base > 0.0) {
        return Err(Error::Domain(format!("log_pochhammer needs base > 0, got {base}")));
    }
    if n == 0 {
        return Ok(0.0);
    }
    if n <= 32 {
        let mut p = Dd::ONE;
        for j in 0..n {
            p *= Dd::new(base) + j as f64;
        }
        return Ok(p.to_f64().ln());
    }
    Ok(libm::lgamma(base + n as f64) - libm::lgamma(base))
}

/// `ln(n!)`.
pub fn ln_factorial(n: u32) -> f64 {
    libm::lgamma(n as f64 + 1.0)
}

/// `ln((base)_n / n!)`, the logarithm of the negative-binomial coefficient.
pub fn log_rising_over_factorial(base: f64, n: u32) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n <= 32 {
        let mut p = Dd::ONE;
        for j in 0..n {
            p *= (Dd::new(base) + j as f64) / (j as f64 + 1.0);
        }
        return p.to_f64().ln();
    }
    libm::lgamma(base + n as f64) - libm::lgamma(base) - ln_factorial(n)
}

fn check_denominator(n: u32, b: f64) -> Result<()> {
    for j in 0..n {
        if b + j as f64 == 0.0 {
            return Err(Error::Domain(format!(
                "denominator parameter {b} vanishes at term {j} of a degree-{n} series"
            )));
        }
    }
    Ok(())
}

/// Terms of `2F1(-n, a; b; z)` (or `1F1(-n; b; z)` when `a` is `None`),
/// stopping early when a numerator factor vanishes.
fn series_terms(n: u32, a: Option<Dd>, b: Dd, z: Dd) -> impl Iterator<Item = Dd> {
    let mut t = Some(Dd::ONE);
    let mut j = 0u32;
    std::iter::from_fn(move || {
        let cur = t?;
        if j == n {
            t = None;
        } else {
            let jf = j as f64;
            let mut num = Dd::new(jf - n as f64) * z;
            if let Some(a) = a {
                num *= a + jf;
            }
            let next = cur * num / ((b + jf) * (jf + 1.0));
            t = if next.hi() == 0.0 { None } else { Some(next) };
            j += 1;
        }
        Some(cur)
    })
}

pub(crate) fn f21_dd(n: u32, a: Dd, b: Dd, z: Dd) -> Dd {
    series_terms(n, Some(a), b, z).fold(Dd::ZERO, |s, t| s + t)
}

pub(crate) fn f11_dd(n: u32, b: Dd, z: Dd) -> Dd {
    series_terms(n, None, b, z).fold(Dd::ZERO, |s, t| s + t)
}

/// `2F1(-n, a; b; z)` summed in ascending order.
pub fn terminating_2f1(n: u32, a: f64, b: f64, z: f64) -> Result<f64> {
    check_denominator(n, b)?;
    Ok(f21_dd(n, Dd::new(a), Dd::new(b), Dd::new(z)).to_f64())
}

/// `2F1(-n, a; b; z)` summed from the last term down.
///
/// Used as a conditioning guard against [`terminating_2f1`].
pub fn terminating_2f1_reversed(n: u32, a: f64, b: f64, z: f64) -> Result<f64> {
    check_denominator(n, b)?;
    let terms: Vec<Dd> = series_terms(n, Some(Dd::new(a)), Dd::new(b), Dd::new(z))
        .collect();
    Ok(terms.iter().rev().fold(Dd::ZERO, |s, &t| s + t).to_f64())
}

/// `1F1(-n; b; z)` summed in ascending order.
pub fn terminating_1f1(n: u32, b: f64, z: f64) -> Result<f64> {
    check_denominator(n, b)?;
    Ok(f11_dd(n, Dd::new(b), Dd::new(z)).to_f64())
}

/// `1F1(-n; b; z)` summed from the last term down.
pub fn terminating_1f1_reversed(n: u32, b: f64, z: f64) -> Result<f64> {
    check_denominator(n, b)?;
    let terms: Vec<Dd> = series_terms(n, None, Dd::new(b), Dd::new(z))
        .collect();
    Ok(terms.iter().rev().fold(Dd::ZERO, |s, &t| s + t).to_f64())
}

fn check_meixner(beta: f64, c: f64) -> Result<()> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("Meixner needs beta > 0, got {beta}")));
    }
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::Domain(format!("Meixner needs 0 < c < 1, got {c}")));
    }
    Ok(())
}

/// Meixner polynomial `M_n(k; beta, c) = 2F1(-n, -k; beta; 1 - 1/c)`.
pub fn meixner(n: u32, k: f64, beta: f64, c: f64) -> Result<f64> {
    check_meixner(beta, c)?;
    let z = Dd::ONE - Dd::new(c).recip();
    Ok(f21_dd(n, Dd::new(-k), Dd::new(beta), z).to_f64())
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > -1.0) {
        return Err(Error::Domain(format!("Laguerre needs alpha > -1, got {alpha}")));
    }
    Ok(())
}

/// Generalized Laguerre polynomial `L_n^(alpha)(t)` by the three-term
/// recurrence.
pub fn laguerre(n: u32, alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(*laguerre_dd(n, alpha, t).last().unwrap())
}

/// `L_0^(alpha)(t), ..., L_nmax^(alpha)(t)`.
pub fn laguerre_sequence(nmax: u32, alpha: f64, t: f64) -> Result<Vec<f64>> {
    check_alpha(alpha)?;
    Ok(laguerre_dd(nmax, alpha, t))
}

fn laguerre_dd(nmax: u32, alpha: f64, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(nmax as usize + 1);
    let a = Dd::new(alpha);
    let t = Dd::new(t);
    let mut prev = Dd::ZERO;
    let mut cur = Dd::ONE;
    out.push(1.0);
    for m in 0..nmax {
        let mf = m as f64;
        let next = if m == 0 {
            a + 1.0 - t
        } else {
            ((a + (2.0 * mf + 1.0) - t) * cur - (a + mf) * prev) / (mf + 1.0)
        };
        prev = cur;
        cur = next;
        out.push(cur.to_f64());
    }
    out
}

/// `L_n^(alpha)(t)` from its hypergeometric form
/// `((alpha+1)_n / n!) 1F1(-n; alpha+1; t)`.
pub fn laguerre_hypergeometric(n: u32, alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let pre = (log_rising_over_factorial(alpha + 1.0, n)).exp();
    Ok(pre * terminating_1f1(n, alpha + 1.0, t)?)
}

/// Truncation rule for infinite sums whose terms are a geometric envelope
/// `ratio^k` times a polynomial of degree `degree` in `k`.
///
/// Summation stops at the first index past the envelope turnover
/// `degree / -ln(ratio)` where the largest term component has stayed below
/// `rel_tol` times the largest partial-sum magnitude seen so far for
/// [`TailRule::STREAK`] consecutive indices. The streak guards against a
/// polynomial zero masquerading as convergence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TailRule {
    pub ratio: f64,
    pub degree: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl TailRule {
    pub const STREAK: usize = 3;
    const BLOCK: usize = 64;

    pub fn new(ratio: f64, degree: f64) -> Self {
        TailRule { ratio, degree, rel_tol: 1e-18, max_terms: 200_000 }
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    /// Index past which the envelope `ratio^k k^degree` is decreasing.
    pub fn turnover(&self) -> usize {
        if self.degree <= 0.0 || !(self.ratio > 0.0 && self.ratio < 1.0) {
            return 0;
        }
        (self.degree / -self.ratio.ln()).ceil() as usize
    }
}

/// Sum of a vector-valued series under a [`TailRule`].
///
/// Terms are produced in blocks, each block evaluated under `exec`, and
/// accumulated strictly in index order, so the result does not depend on the
/// execution policy. Returns the sums and the number of terms used.
pub fn tail_sum_vec<F>(rule: &TailRule, exec: Execution, width: usize, f: F) -> Result<(Vec<f64>, usize)>
where
    F: Fn(usize) -> Vec<f64> + Sync + Send,
{
    let turnover = rule.turnover();
    let mut sums = vec![0.0; width];
    let mut max_partial = 0.0f64;
    let mut streak = 0;
    let mut k0 = 0usize;
    while k0 < rule.max_terms {
        let len = TailRule::BLOCK.min(rule.max_terms - k0);
        let block = exec.map(len, |i| f(k0 + i));
        for (i, term) in block.into_iter().enumerate() {
            let k = k0 + i;
            let mut tmax = 0.0f64;
            for (s, t) in sums.iter_mut().zip(&term) {
                *s += t;
                tmax = tmax.max(t.abs());
                max_partial = max_partial.max(s.abs());
            }
            if !tmax.is_finite() {
                return Err(Error::Domain(format!("non-finite series term at index {k}")));
            }
            if max_partial > 0.0 && tmax <= rule.rel_tol * max_partial {
                streak += 1;
            } else {
                streak = 0;
            }
            if k >= turnover && streak >= TailRule::STREAK {
                return Ok((sums, k + 1));
            }
        }
        k0 += len;
    }
    Err(Error::NonConvergence { terms: rule.max_terms })
}

/// Scalar form of [`tail_sum_vec`].
pub fn tail_sum<F>(rule: &TailRule, exec: Execution, f: F) -> Result<(f64, usize)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let (s, n) = tail_sum_vec(rule, exec, 1, |k| vec![f(k)])?;
    Ok((s[0], n))
}
