//! Truncated matrices of the positive discrete series representation
//! `Pi_beta` of sl(2|1) and checks of its algebraic structure.
//!
//! All operators act on `span{|beta,0>, ..., |beta,N-1>}`; column `n` of a
//! matrix is the image of `|beta,n>`. Generators shift the index by at most
//! two, so products of two of them are exact on the leading `(N-2) x (N-2)`
//! block and every identity is checked there.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hyperfun::pochhammer;
use crate::{Error, Report, Result};

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Representation label `beta > 0` together with the position-operator
/// parameter `gamma`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepParams {
    pub beta: f64,
    pub gamma: f64,
}

impl RepParams {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::InvalidParams("beta must be positive".into()));
        }
        if !gamma.is_finite() {
            return Err(Error::InvalidParams("gamma must be finite".into()));
        }
        Ok(RepParams { beta, gamma })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

/// Basis elements of sl(2|1) and the derived operators of the oscillator
/// model. `ParaPlus`/`ParaMinus` are the paraboson operators `b+-`;
/// `OspPlus`/`OspMinus` are the osp(1|2) generators `B+-` embedded in sl(2|1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    FPlus,
    FMinus,
    GPlus,
    GMinus,
    H,
    EPlus,
    EMinus,
    Z,
    QHat,
    PHat,
    HHat,
    ParaPlus,
    ParaMinus,
    OspPlus,
    OspMinus,
}

impl Generator {
    pub const BASIS: [Generator; 8] = [
        Generator::FPlus,
        Generator::FMinus,
        Generator::GPlus,
        Generator::GMinus,
        Generator::H,
        Generator::EPlus,
        Generator::EMinus,
        Generator::Z,
    ];

    pub const ALL: [Generator; 15] = [
        Generator::FPlus,
        Generator::FMinus,
        Generator::GPlus,
        Generator::GMinus,
        Generator::H,
        Generator::EPlus,
        Generator::EMinus,
        Generator::Z,
        Generator::QHat,
        Generator::PHat,
        Generator::HHat,
        Generator::ParaPlus,
        Generator::ParaMinus,
        Generator::OspPlus,
        Generator::OspMinus,
    ];

    pub fn parity(self) -> Parity {
        use Generator::*;
        match self {
            H | EPlus | EMinus | Z | HHat => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn bandwidth(self) -> usize {
        use Generator::*;
        match self {
            H | Z | HHat => 0,
            EPlus | EMinus => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        use Generator::*;
        match self {
            FPlus => "F+",
            FMinus => "F-",
            GPlus => "G+",
            GMinus => "G-",
            H => "H",
            EPlus => "E+",
            EMinus => "E-",
            Z => "Z",
            QHat => "qhat",
            PHat => "phat",
            HHat => "Hhat",
            ParaPlus => "b+",
            ParaMinus => "b-",
            OspPlus => "B+",
            OspMinus => "B-",
        }
    }
}

/// `1` for even `n`, `0` otherwise.
pub fn even_indicator(n: i64) -> u8 {
    (n.rem_euclid(2) == 0) as u8
}

/// `1` for odd `n`, `0` otherwise.
pub fn odd_indicator(n: i64) -> u8 {
    1 - even_indicator(n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedOperator {
    pub label: Generator,
    pub dim: usize,
    pub matrix: CMatrix,
    pub bandwidth: usize,
}

impl TruncatedOperator {
    /// Largest entry magnitude outside the declared band.
    pub fn max_outside_band(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 0..self.dim {
            for i in 0..self.dim {
                if i.abs_diff(j) > self.bandwidth {
                    m = m.max(self.matrix[(i, j)].norm());
                }
            }
        }
        m
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn basis_matrix(g: Generator, beta: f64, n: usize) -> CMatrix {
    use Generator::*;
    let mut m = CMatrix::zeros(n, n);
    for c in 0..n {
        let nf = c as f64;
        let even = c % 2 == 0;
        match g {
            FPlus if even && c + 1 < n => m[(c + 1, c)] = real((beta + nf / 2.0).sqrt()),
            FMinus if even && c >= 2 => m[(c - 1, c)] = real((nf / 2.0).sqrt()),
            GPlus if !even && c + 1 < n => m[(c + 1, c)] = real(((nf + 1.0) / 2.0).sqrt()),
            GMinus if !even => m[(c - 1, c)] = real(-(beta + (nf - 1.0) / 2.0).sqrt()),
            H => m[(c, c)] = real((nf + beta) / 2.0),
            Z => m[(c, c)] = real(if even { -beta / 2.0 } else { -(beta - 1.0) / 2.0 }),
            EPlus if c + 2 < n => {
                let v = if even {
                    (beta + nf / 2.0) * (1.0 + nf / 2.0)
                } else {
                    (beta + (nf + 1.0) / 2.0) * ((nf + 1.0) / 2.0)
                };
                m[(c + 2, c)] = real(v.sqrt());
            }
            EMinus if c >= 2 => {
                let v = if even {
                    (beta - 1.0 + nf / 2.0) * (nf / 2.0)
                } else {
                    (beta + (nf - 1.0) / 2.0) * ((nf - 1.0) / 2.0)
                };
                m[(c - 2, c)] = real(-v.sqrt());
            }
            ParaPlus if c + 1 < n => {
                let h = (c / 2) as f64;
                let v = if even { 2.0 * (h + beta) } else { 2.0 * (h + 1.0) };
                m[(c + 1, c)] = real(v.sqrt());
            }
            ParaMinus if c >= 1 => {
                let h = (c / 2) as f64;
                let v = if even { 2.0 * h } else { 2.0 * (h + beta) };
                m[(c - 1, c)] = real(v.sqrt());
            }
            _ => {}
        }
    }
    m
}

/// Matrix of `label` on the first `n` basis vectors.
pub fn build_generator(label: Generator, params: RepParams, n: usize) -> Result<TruncatedOperator> {
    use Generator::*;
    if n < 3 {
        return Err(Error::Dimension { min: 3, got: n });
    }
    let b = params.beta;
    let g = real(params.gamma);
    let basis = |x| basis_matrix(x, b, n);
    let matrix = match label {
        QHat => basis(FPlus) + basis(GPlus) * g - basis(GMinus) + basis(FMinus) * g,
        PHat => (basis(FPlus) + basis(GPlus) * g + basis(GMinus) - basis(FMinus) * g) * I,
        HHat => basis(H) * real(2.0) + CMatrix::identity(n, n) * real(0.5 - b),
        OspPlus => (basis(FPlus) + basis(GPlus)) * real(0.5),
        OspMinus => (basis(FMinus) - basis(GMinus)) * real(0.5),
        other => basis(other),
    };
    Ok(TruncatedOperator { label, dim: n, matrix, bandwidth: label.bandwidth() })
}

pub(crate) fn gen(label: Generator, params: RepParams, n: usize) -> CMatrix {
    build_generator(label, params, n).expect("dimension checked by caller").matrix
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Largest entry magnitude of the leading `(n - cut) x (n - cut)` block.
pub fn interior_max(m: &CMatrix, cut: usize) -> f64 {
    let k = m.nrows().saturating_sub(cut).min(m.ncols().saturating_sub(cut));
    let mut best = 0.0f64;
    for j in 0..k {
        for i in 0..k {
            let v = m[(i, j)].norm();
            if v.is_nan() {
                return f64::NAN;
            }
            best = best.max(v);
        }
    }
    best
}

/// Every bracket of sl(2|1) in the representation, as
/// `(name, left-hand side, right-hand side)`.
fn bracket_relations(params: RepParams, n: usize) -> Vec<(&'static str, CMatrix, CMatrix)> {
    let [fp, fm, gp, gm, h, ep, em, z] = Generator::BASIS.map(|x| gen(x, params, n));
    let zero = CMatrix::zeros(n, n);
    let half = |m: &CMatrix| m * real(0.5);
    let ac = anticommutator;
    let cm = commutator;
    vec![
        ("{F+,G+} = E+", ac(&fp, &gp), ep.clone()),
        ("{F-,G-} = E-", ac(&fm, &gm), em.clone()),
        ("{F+,G-} = Z - H", ac(&fp, &gm), &z - &h),
        ("{F-,G+} = Z + H", ac(&fm, &gp), &z + &h),
        ("{F+,F+} = 0", ac(&fp, &fp), zero.clone()),
        ("{F-,F-} = 0", ac(&fm, &fm), zero.clone()),
        ("{G+,G+} = 0", ac(&gp, &gp), zero.clone()),
        ("{G-,G-} = 0", ac(&gm, &gm), zero.clone()),
        ("{F+,F-} = 0", ac(&fp, &fm), zero.clone()),
        ("{G+,G-} = 0", ac(&gp, &gm), zero.clone()),
        ("[H,E+] = E+", cm(&h, &ep), ep.clone()),
        ("[H,E-] = -E-", cm(&h, &em), -em.clone()),
        ("[E+,E-] = 2H", cm(&ep, &em), &h * real(2.0)),
        ("[Z,H] = 0", cm(&z, &h), zero.clone()),
        ("[Z,E+] = 0", cm(&z, &ep), zero.clone()),
        ("[Z,E-] = 0", cm(&z, &em), zero.clone()),
        ("[H,F+] = F+/2", cm(&h, &fp), half(&fp)),
        ("[H,F-] = -F-/2", cm(&h, &fm), -half(&fm)),
        ("[Z,F+] = F+/2", cm(&z, &fp), half(&fp)),
        ("[Z,F-] = F-/2", cm(&z, &fm), half(&fm)),
        ("[E+,F+] = 0", cm(&ep, &fp), zero.clone()),
        ("[E-,F-] = 0", cm(&em, &fm), zero.clone()),
        ("[E-,F+] = -F-", cm(&em, &fp), -fm.clone()),
        ("[E+,F-] = -F+", cm(&ep, &fm), -fp.clone()),
        ("[H,G+] = G+/2", cm(&h, &gp), half(&gp)),
        ("[H,G-] = -G-/2", cm(&h, &gm), -half(&gm)),
        ("[Z,G+] = -G+/2", cm(&z, &gp), -half(&gp)),
        ("[Z,G-] = -G-/2", cm(&z, &gm), -half(&gm)),
        ("[E+,G+] = 0", cm(&ep, &gp), zero.clone()),
        ("[E-,G-] = 0", cm(&em, &gm), zero.clone()),
        ("[E-,G+] = G-", cm(&em, &gp), gm.clone()),
        ("[E+,G-] = G+", cm(&ep, &gm), gp.clone()),
    ]
}

/// Residual of every superalgebra bracket on the interior block.
pub fn verify_brackets(params: RepParams, n: usize, tol: f64) -> Result<Report> {
    if n < 5 {
        return Err(Error::Dimension { min: 5, got: n });
    }
    let mut r = Report::new("brackets");
    for (name, lhs, rhs) in bracket_relations(params, n) {
        r.push(name, interior_max(&(lhs - rhs), 2), tol);
    }
    Ok(r)
}

/// Star-structure identities and the two matrix-element identities that
/// imply them.
pub fn verify_star(params: RepParams, n: usize, tol: f64) -> Result<Report> {
    use Generator::*;
    if n < 3 {
        return Err(Error::Dimension { min: 3, got: n });
    }
    let g = |x| gen(x, params, n);
    let adj = |x| g(x).adjoint();
    let mut r = Report::new("star");
    let pairs: [(&str, CMatrix, CMatrix); 8] = [
        ("(E+)^dag = -E-", adj(EPlus), -g(EMinus)),
        ("(E-)^dag = -E+", adj(EMinus), -g(EPlus)),
        ("(F+)^dag = -G-", adj(FPlus), -g(GMinus)),
        ("(F-)^dag = G+", adj(FMinus), g(GPlus)),
        ("(G+)^dag = F-", adj(GPlus), g(FMinus)),
        ("(G-)^dag = -F+", adj(GMinus), -g(FPlus)),
        ("H^dag = H", adj(H), g(H)),
        ("Z^dag = Z", adj(Z), g(Z)),
    ];
    for (name, a, b) in pairs {
        r.push(name, interior_max(&(a - b), 2), tol);
    }
    let (fp, gm, fm, gp) = (g(FPlus), g(GMinus), g(FMinus), g(GPlus));
    let mut e1 = 0.0f64;
    let mut e2 = 0.0f64;
    let mut m = 0;
    while 2 * m + 1 < n {
        e1 = e1.max((fp[(2 * m + 1, 2 * m)] + gm[(2 * m, 2 * m + 1)]).norm());
        if m >= 1 {
            e2 = e2.max((fm[(2 * m - 1, 2 * m)] - gp[(2 * m, 2 * m - 1)]).norm());
        }
        m += 1;
    }
    r.push("<2n+1|F+|2n> = -<2n|G-|2n+1>", e1, tol);
    r.push("<2n-1|F-|2n> = <2n|G+|2n-1>", e2, tol);
    Ok(r)
}

fn unit(n: usize, i: usize) -> DVector<Complex64> {
    let mut v = DVector::zeros(n);
    v[i] = real(1.0);
    v
}

/// Residual of `v` against `coef * e_target`, relative to `|coef|`.
fn ladder_residual(v: &DVector<Complex64>, target: usize, coef: f64) -> f64 {
    let mut worst = 0.0f64;
    for (i, x) in v.iter().enumerate() {
        let want = if i == target { coef } else { 0.0 };
        worst = worst.max((x - real(want)).norm());
    }
    worst / coef.abs()
}

/// Generating-vector and descent identities up to `nmax`, relative residuals.
pub fn verify_generating_vector(params: RepParams, nmax: usize) -> Result<Report> {
    use Generator::*;
    if nmax < 1 {
        return Err(Error::Dimension { min: 1, got: nmax });
    }
    let n = 2 * nmax + 2;
    let g = |x| gen(x, params, n);
    let up = g(GPlus) * g(FPlus);
    let down = g(GMinus) * g(FMinus);
    let (fp, gm) = (g(FPlus), g(GMinus));
    let b = params.beta;
    let tol = 1e-11;
    let mut r = Report::new("generating_vector");
    let mut v = unit(n, 0);
    for k in 0..=nmax {
        let kk = k as u32;
        let c_even = (pochhammer(1.0, kk) * pochhammer(b, kk)).sqrt();
        let c_odd = (pochhammer(1.0, kk) * pochhammer(b, kk + 1)).sqrt();
        r.push(format!("(G+F+)^{k} e0"), ladder_residual(&v, 2 * k, c_even), tol);
        r.push(format!("F+(G+F+)^{k} e0"), ladder_residual(&(&fp * &v), 2 * k + 1, c_odd), tol);

        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let mut w = unit(n, 2 * k);
        let mut u = &gm * unit(n, 2 * k + 1);
        for _ in 0..k {
            w = &down * w;
            u = &down * u;
        }
        r.push(format!("(G-F-)^{k} e{}", 2 * k), ladder_residual(&w, 0, sign * c_even), tol);
        r.push(format!("(G-F-)^{k} G- e{}", 2 * k + 1), ladder_residual(&u, 0, -sign * c_odd), tol);
        v = &up * v;
    }
    Ok(r)
}

/// Restriction of the even subalgebra to the even- and odd-index sectors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su11Decomposition {
    /// H eigenvalues on `|beta,2m>`.
    pub h_even: Vec<f64>,
    /// H eigenvalues on `|beta,2m+1>`.
    pub h_odd: Vec<f64>,
    pub even: Report,
    pub odd: Report,
}

/// Checks that `H, E+-, Z` act on the even and odd sectors as the su(1,1)
/// discrete series with labels `beta/2` and `(beta+1)/2`.
pub fn decompose_su11(params: RepParams, n: usize) -> Result<Su11Decomposition> {
    use Generator::*;
    if n < 6 {
        return Err(Error::Dimension { min: 6, got: n });
    }
    let g = |x| gen(x, params, n);
    let (h, ep, em, z) = (g(H), g(EPlus), g(EMinus), g(Z));
    let tol = 1e-13;
    let sector = |offset: usize, label: &str, bargmann_beta: f64, zval: f64| {
        let idx: Vec<usize> = (offset..n).step_by(2).collect();
        let mut rep = Report::new(format!("su11_{label}"));
        let mut hs = Vec::new();
        let (mut eh, mut eep, mut eem, mut ez, mut leak) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
        for (m, &i) in idx.iter().enumerate() {
            let mf = m as f64;
            let hv = h[(i, i)].re;
            hs.push(hv);
            eh = eh.max((hv - (mf + bargmann_beta / 2.0)).abs());
            ez = ez.max((z[(i, i)] - real(zval)).norm());
            if m + 1 < idx.len() {
                let want = ((bargmann_beta + mf) * (mf + 1.0)).sqrt();
                eep = eep.max((ep[(idx[m + 1], i)] - real(want)).norm());
            }
            if m >= 1 {
                let want = -((bargmann_beta + mf - 1.0) * mf).sqrt();
                eem = eem.max((em[(idx[m - 1], i)] - real(want)).norm());
            }
            for r in 0..n {
                if r % 2 != offset {
                    leak = leak.max(h[(r, i)].norm()).max(ep[(r, i)].norm()).max(em[(r, i)].norm());
                }
            }
        }
        rep.push("H e_m = (m + label) e_m", eh, tol);
        rep.push("E+ ladder", eep, tol);
        rep.push("E- ladder", eem, tol);
        rep.push("Z scalar", ez, tol);
        rep.push("sector invariance", leak, 0.0);
        (hs, rep)
    };
    let b = params.beta;
    let (h_even, even) = sector(0, "even", b, -b / 2.0);
    let (h_odd, odd) = sector(1, "odd", b + 1.0, -(b - 1.0) / 2.0);
    Ok(Su11Decomposition { h_even, h_odd, even, odd })
}

/// `[Hhat, qhat] + i phat = 0` and `[Hhat, phat] - i qhat = 0`.
pub fn verify_hamilton_lie(params: RepParams, n: usize, tol: f64) -> Result<Report> {
    use Generator::*;
    if n < 5 {
        return Err(Error::Dimension { min: 5, got: n });
    }
    let (hh, q, p) = (gen(HHat, params, n), gen(QHat, params, n), gen(PHat, params, n));
    let mut r = Report::new("hamilton_lie");
    r.push("[Hhat,qhat] + i phat", interior_max(&(commutator(&hh, &q) + &p * I), 2), tol);
    r.push("[Hhat,phat] - i qhat", interior_max(&(commutator(&hh, &p) - &q * I), 2), tol);
    Ok(r)
}

/// `qhat` is real symmetric, `phat` and `Hhat` are Hermitian.
pub fn verify_self_adjoint(params: RepParams, n: usize, tol: f64) -> Result<Report> {
    use Generator::*;
    if n < 3 {
        return Err(Error::Dimension { min: 3, got: n });
    }
    let q = gen(QHat, params, n);
    let p = gen(PHat, params, n);
    let hh = gen(HHat, params, n);
    let imag_q = q.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    let mut r = Report::new("self_adjoint");
    r.push("qhat real", imag_q, tol);
    r.push("qhat symmetric", interior_max(&(&q - q.transpose()), 0), tol);
    r.push("phat Hermitian", interior_max(&(&p - p.adjoint()), 0), tol);
    r.push("Hhat Hermitian", interior_max(&(&hh - hh.adjoint()), 0), tol);
    Ok(r)
}

/// Odd operators flip index parity, even operators preserve it, and every
/// operator stays inside its declared band.
pub fn verify_grading(params: RepParams, n: usize) -> Result<Report> {
    let mut r = Report::new("grading");
    for label in Generator::ALL {
        let op = build_generator(label, params, n)?;
        let mut wrong = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                let flips = (i + j) % 2 == 1;
                let allowed = match label.parity() {
                    Parity::Odd => flips,
                    Parity::Even => !flips,
                };
                if !allowed {
                    wrong = wrong.max(op.matrix[(i, j)].norm());
                }
            }
        }
        r.push(format!("{} parity", label.name()), wrong, 0.0);
        r.push(format!("{} bandwidth", label.name()), op.max_outside_band(), 0.0);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(beta: f64, gamma: f64) -> RepParams {
        RepParams::new(beta, gamma).unwrap()
    }

    #[test]
    fn params_validation() {
        assert_eq!(
            RepParams::new(-1.0, 1.0),
            Err(Error::InvalidParams("beta must be positive".into()))
        );
        assert!(RepParams::new(0.0, 1.0).is_err());
        assert!(RepParams::new(1.0, f64::NAN).is_err());
    }

    #[test]
    fn parity_functions_partition() {
        for n in -5..20 {
            assert_eq!(even_indicator(n) + odd_indicator(n), 1);
        }
        assert_eq!(even_indicator(-2), 1);
        assert_eq!(odd_indicator(-3), 1);
    }

    #[test]
    fn fplus_example() {
        let f = build_generator(Generator::FPlus, p(1.0, 0.0), 3).unwrap().matrix;
        assert_eq!(f[(1, 0)], real(1.0));
        assert_eq!(f[(2, 1)], real(0.0));
    }

    #[test]
    fn hhat_is_equidistant() {
        let h = build_generator(Generator::HHat, p(2.7, 0.3), 12).unwrap().matrix;
        for i in 0..12 {
            assert!((h[(i, i)] - real(i as f64 + 0.5)).norm() < 1e-14);
        }
    }

    #[test]
    fn z_example() {
        let z = build_generator(Generator::Z, p(2.0, 0.0), 3).unwrap().matrix;
        assert_eq!(z[(0, 0)], real(-1.0));
        assert_eq!(z[(1, 1)], real(-0.5));
    }

    #[test]
    fn dimension_guard() {
        assert_eq!(
            build_generator(Generator::H, p(1.0, 1.0), 2).unwrap_err(),
            Error::Dimension { min: 3, got: 2 }
        );
        assert!(verify_brackets(p(1.0, 1.0), 4, 1e-12).is_err());
    }

    #[test]
    fn brackets_hold() {
        for beta in [0.3, 1.0, 3.7] {
            let r = verify_brackets(p(beta, 0.0), 30, 1e-12).unwrap();
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn fplus_square_is_exactly_zero() {
        let f = gen(Generator::FPlus, p(1.3, 0.0), 20);
        assert!(anticommutator(&f, &f).iter().all(|z| *z == real(0.0)));
    }

    #[test]
    fn star_holds() {
        let r = verify_star(p(0.5, 0.0), 25, 1e-14).unwrap();
        assert!(r.passed(), "{r:?}");
        let h = gen(Generator::H, p(0.5, 0.0), 25);
        assert_eq!(&h - h.adjoint(), CMatrix::zeros(25, 25));
    }

    #[test]
    fn generating_vector_examples() {
        let r = verify_generating_vector(p(1.0, 0.0), 6).unwrap();
        assert!(r.passed(), "{r:?}");
        // n = 2, beta = 1: coefficient 2 on |4>
        let up = gen(Generator::GPlus, p(1.0, 0.0), 8) * gen(Generator::FPlus, p(1.0, 0.0), 8);
        let v = &up * &up * unit(8, 0);
        assert!((v[4] - real(2.0)).norm() < 1e-14);
        // descent n = 1, beta = 0.5
        let down = gen(Generator::GMinus, p(0.5, 0.0), 8) * gen(Generator::FMinus, p(0.5, 0.0), 8);
        let w = down * unit(8, 2);
        assert!((w[0] - real(-(0.5f64).sqrt())).norm() < 1e-15);
        assert!(verify_generating_vector(p(0.5, 0.0), 8).unwrap().passed());
    }

    #[test]
    fn su11_decomposition_examples() {
        let d = decompose_su11(p(2.0, 0.0), 10).unwrap();
        assert_eq!(d.h_even[0], 1.0);
        assert_eq!(d.h_odd[0], 1.5);
        assert!(d.even.passed() && d.odd.passed(), "{d:?}");
        let z = gen(Generator::Z, p(1.0, 0.0), 8);
        for i in (1..8).step_by(2) {
            assert_eq!(z[(i, i)].norm(), 0.0);
        }
    }

    #[test]
    fn hamilton_lie_and_self_adjointness() {
        for gamma in [0.0, 0.4, 1.0, -1.5] {
            let params = p(1.7, gamma);
            assert!(verify_hamilton_lie(params, 30, 1e-12).unwrap().passed());
            assert!(verify_self_adjoint(params, 30, 0.0).unwrap().passed());
        }
    }

    #[test]
    fn grading_and_bands() {
        let r = verify_grading(p(0.8, 1.3), 12).unwrap();
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }
}
