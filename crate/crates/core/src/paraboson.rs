//! Paraboson operators `b+-` and the osp(1|2) subalgebra.
//!
//! The pair `b+-` satisfies `[{b-,b+}, b+-] = +-2 b+-` and generates
//! osp(1|2) through `H = {b-,b+}/4`, `E+ = {b+,b+}/4`, `E- = -{b-,b-}/4`,
//! `B+- = b+-/(2 sqrt 2)`. The same `B+-` arise inside sl(2|1) as
//! `(F+ + G+)/2` and `(F- - G-)/2`, and at `gamma = 1` the position operator
//! is `(b+ + b-)/sqrt 2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::rep::{anticommutator, build_generator, commutator, gen, interior_max, CMatrix, Generator, TruncatedOperator, I};
use crate::{Error, RepParams, Report, Result};

/// Rows and columns dropped from the interior block of quadratic and cubic
/// expressions.
pub const QUADRATIC_CUT: usize = 4;

#[derive(Clone, Debug, PartialEq)]
pub struct ParabosonOps {
    pub bplus: TruncatedOperator,
    pub bminus: TruncatedOperator,
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `b+-` on the first `n` basis vectors.
pub fn build_paraboson(beta: f64, n: usize) -> Result<ParabosonOps> {
    let params = RepParams::new(beta, 1.0)?;
    Ok(ParabosonOps {
        bplus: build_generator(Generator::ParaPlus, params, n)?,
        bminus: build_generator(Generator::ParaMinus, params, n)?,
    })
}

fn check_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Dimension { min, got: n });
    }
    Ok(())
}

/// `[{b-,b+}, b+-] = +-2 b+-`, and the diagonal of `[b-,b+]`, which
/// alternates `2 beta, 2 - 2 beta` (the identity when `beta = 1/2`).
pub fn verify_triple_relation(beta: f64, n: usize, tol: f64) -> Result<Report> {
    check_dim(n, 5)?;
    let ops = build_paraboson(beta, n)?;
    let (bp, bm) = (&ops.bplus.matrix, &ops.bminus.matrix);
    let ac = anticommutator(bm, bp);
    let mut r = Report::new("paraboson_triple");
    r.push("[{b-,b+}, b+] - 2 b+", interior_max(&(commutator(&ac, bp) - bp * real(2.0)), 2), tol);
    r.push("[{b-,b+}, b-] + 2 b-", interior_max(&(commutator(&ac, bm) + bm * real(2.0)), 2), tol);
    let mut want = CMatrix::zeros(n, n);
    for i in 0..n {
        want[(i, i)] = real(2.0 * (i as f64 + beta));
    }
    r.push("{b-,b+} = 2(n + beta)", interior_max(&(&ac - &want), 1), tol);
    let c = commutator(bm, bp);
    for i in 0..n {
        want[(i, i)] = real(if i % 2 == 0 { 2.0 * beta } else { 2.0 - 2.0 * beta });
    }
    r.push("[b-,b+] = diag(2 beta, 2 - 2 beta, ...)", interior_max(&(&c - &want), 1), tol);
    if beta == 0.5 {
        let id = CMatrix::identity(n, n);
        r.push("[b-,b+] = 1", interior_max(&(&c - id), 1), tol);
    }
    Ok(r)
}

/// The osp(1|2) elements `(H, E+, E-, B+, B-)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OspBasis {
    pub h: CMatrix,
    pub eplus: CMatrix,
    pub eminus: CMatrix,
    pub bplus: CMatrix,
    pub bminus: CMatrix,
}

/// Basis built from `b+-`.
pub fn osp_from_paraboson(beta: f64, n: usize) -> Result<OspBasis> {
    let ops = build_paraboson(beta, n)?;
    let (bp, bm) = (&ops.bplus.matrix, &ops.bminus.matrix);
    let s = 1.0 / (2.0 * std::f64::consts::SQRT_2);
    Ok(OspBasis {
        h: anticommutator(bm, bp) * real(0.25),
        eplus: anticommutator(bp, bp) * real(0.25),
        eminus: anticommutator(bm, bm) * real(-0.25),
        bplus: bp * real(s),
        bminus: bm * real(s),
    })
}

/// Basis built from the sl(2|1) generators, `B+ = (F+ + G+)/2`,
/// `B- = (F- - G-)/2`.
pub fn osp_from_sl21(beta: f64, n: usize) -> Result<OspBasis> {
    let params = RepParams::new(beta, 1.0)?;
    check_dim(n, 3)?;
    Ok(OspBasis {
        h: gen(Generator::H, params, n),
        eplus: gen(Generator::EPlus, params, n),
        eminus: gen(Generator::EMinus, params, n),
        bplus: gen(Generator::OspPlus, params, n),
        bminus: gen(Generator::OspMinus, params, n),
    })
}

fn osp_relations(b: &OspBasis, prefix: &str, tol: f64, r: &mut Report) {
    let (h, ep, em, bp, bm) = (&b.h, &b.eplus, &b.eminus, &b.bplus, &b.bminus);
    let half = real(0.5);
    let rels: [(&str, CMatrix); 10] = [
        ("[H,E+] = E+", commutator(h, ep) - ep),
        ("[H,E-] = -E-", commutator(h, em) + em),
        ("[E+,E-] = 2H", commutator(ep, em) - h * real(2.0)),
        ("[H,B+] = B+/2", commutator(h, bp) - bp * half),
        ("[H,B-] = -B-/2", commutator(h, bm) + bm * half),
        ("[E+,B-] = -B+", commutator(ep, bm) + bp),
        ("[E-,B+] = -B-", commutator(em, bp) + bm),
        ("{B+,B-} = H/2", anticommutator(bp, bm) - h * half),
        ("{B+,B+} = E+/2", anticommutator(bp, bp) - ep * half),
        ("{B-,B-} = -E-/2", anticommutator(bm, bm) + em * half),
    ];
    for (name, m) in rels {
        r.push(format!("{prefix}{name}"), interior_max(&m, QUADRATIC_CUT), tol);
    }
}

/// osp(1|2) relations for both constructions, and their entrywise agreement.
pub fn verify_osp_embedding(beta: f64, n: usize, tol: f64) -> Result<Report> {
    check_dim(n, 5)?;
    let a = osp_from_paraboson(beta, n)?;
    let b = osp_from_sl21(beta, n)?;
    let mut r = Report::new("osp_embedding");
    osp_relations(&a, "b: ", tol, &mut r);
    osp_relations(&b, "sl21: ", tol, &mut r);
    let pairs = [
        ("H", &a.h, &b.h),
        ("E+", &a.eplus, &b.eplus),
        ("E-", &a.eminus, &b.eminus),
        ("B+", &a.bplus, &b.bplus),
        ("B-", &a.bminus, &b.bminus),
    ];
    for (name, x, y) in pairs {
        r.push(format!("{name} from b = {name} from sl21"), interior_max(&(x - y), 2), tol);
    }
    Ok(r)
}

/// At `gamma = 1`: `qhat = (b+ + b-)/sqrt 2` and `phat = i(b+ - b-)/sqrt 2`.
pub fn verify_q_identification(beta: f64, n: usize) -> Result<Report> {
    check_dim(n, 3)?;
    let tol = 1e-13;
    let params = RepParams::new(beta, 1.0)?;
    let ops = build_paraboson(beta, n)?;
    let (bp, bm) = (&ops.bplus.matrix, &ops.bminus.matrix);
    let s = real(std::f64::consts::FRAC_1_SQRT_2);
    let q = gen(Generator::QHat, params, n);
    let p = gen(Generator::PHat, params, n);
    let osp = osp_from_sl21(beta, n)?;
    let mut r = Report::new("q_identification");
    r.push("qhat = (b+ + b-)/sqrt2", interior_max(&(&q - (bp + bm) * s), 0), tol);
    r.push("qhat = 2(B+ + B-)", interior_max(&(&q - (&osp.bplus + &osp.bminus) * real(2.0)), 0), tol);
    r.push("phat = i(b+ - b-)/sqrt2", interior_max(&(&p - (bp - bm) * s * I), 0), tol);
    Ok(r)
}

/// Diagonal of an operator on the interior block, with the largest
/// off-diagonal entry there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalAction {
    /// Diagonal entries, scaled as documented by the producer.
    pub diagonal: Vec<f64>,
    /// Predicted diagonal.
    pub expected: Vec<f64>,
    pub off_diagonal: f64,
    pub max_deviation: f64,
    /// `1e-12` times the max-norm of the operator.
    pub threshold: f64,
}

impl DiagonalAction {
    pub fn passed(&self) -> bool {
        self.off_diagonal <= self.threshold && self.max_deviation <= 1e-12
    }

}

fn diagonal_action(m: &CMatrix, scale: Complex64, expected: impl Fn(usize) -> f64) -> DiagonalAction {
    let n = m.nrows();
    let k = n - QUADRATIC_CUT;
    let maxnorm = m.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    let mut off = 0.0f64;
    let mut diagonal = Vec::with_capacity(k);
    let mut exp = Vec::with_capacity(k);
    let mut dev = 0.0f64;
    for j in 0..k {
        for i in 0..k {
            if i != j {
                off = off.max(m[(i, j)].norm());
            }
        }
        let d = m[(j, j)] / scale;
        let e = expected(j);
        dev = dev.max((d - real(e)).norm());
        diagonal.push(d.re);
        exp.push(e);
    }
    DiagonalAction { diagonal, expected: exp, off_diagonal: off, max_deviation: dev, threshold: 1e-12 * maxnorm }
}

/// `[qhat, phat] / (2i)` on the interior block against
/// `beta + (1-gamma^2) m` at index `2m` and `(1-beta) - (1-gamma^2) m` at
/// index `2m-1`.
pub fn commutator_qp_spectrum(params: RepParams, n: usize) -> Result<DiagonalAction> {
    check_dim(n, QUADRATIC_CUT + 1)?;
    let q = gen(Generator::QHat, params, n);
    let p = gen(Generator::PHat, params, n);
    let c = commutator(&q, &p);
    let (b, d) = (params.beta, 1.0 - params.gamma * params.gamma);
    Ok(diagonal_action(&c, Complex64::new(0.0, 2.0), |j| {
        if j % 2 == 0 {
            b + d * (j / 2) as f64
        } else {
            (1.0 - b) - d * j.div_ceil(2) as f64
        }
    }))
}

/// `(phat^2 + qhat^2)/2` against `((gamma^2+1)/2) n + beta`, plus
/// `(gamma^2-1)/2` for odd `n`.
pub fn wigner_hamiltonian_spectrum(params: RepParams, n: usize) -> Result<DiagonalAction> {
    check_dim(n, QUADRATIC_CUT + 1)?;
    let h0 = wigner_hamiltonian(params, n);
    let (b, g2) = (params.beta, params.gamma * params.gamma);
    Ok(diagonal_action(&h0, real(1.0), |j| {
        let base = 0.5 * (g2 + 1.0) * j as f64 + b;
        if j % 2 == 0 {
            base
        } else {
            base + 0.5 * (g2 - 1.0)
        }
    }))
}

fn wigner_hamiltonian(params: RepParams, n: usize) -> CMatrix {
    let q = gen(Generator::QHat, params, n);
    let p = gen(Generator::PHat, params, n);
    (&p * &p + &q * &q) * real(0.5)
}

/// `(phat^2 + qhat^2)/2 - Hhat` as the diagonal
/// `((gamma^2-1)/2) n + beta - 1/2` (plus `(gamma^2-1)/2` for odd `n`).
pub fn hamiltonian_gap(params: RepParams, n: usize) -> Result<DiagonalAction> {
    check_dim(n, QUADRATIC_CUT + 1)?;
    let gap = wigner_hamiltonian(params, n) - gen(Generator::HHat, params, n);
    let (b, g2) = (params.beta, params.gamma * params.gamma);
    Ok(diagonal_action(&gap, real(1.0), |j| {
        let base = 0.5 * (g2 - 1.0) * j as f64 + b - 0.5;
        if j % 2 == 0 {
            base
        } else {
            base + 0.5 * (g2 - 1.0)
        }
    }))
}

/// Compatibility of the Hamilton and Heisenberg equations at `gamma = 1`:
/// `[H0, phat] = i qhat` and `[H0, qhat] = -i phat` with
/// `H0 = (phat^2 + qhat^2)/2`.
pub fn verify_compatibility(beta: f64, n: usize, tol: f64) -> Result<Report> {
    check_dim(n, QUADRATIC_CUT + 1)?;
    let params = RepParams::new(beta, 1.0)?;
    let q = gen(Generator::QHat, params, n);
    let p = gen(Generator::PHat, params, n);
    let h0 = wigner_hamiltonian(params, n);
    let mut r = Report::new("compatibility");
    r.push("[H0,phat] - i qhat", interior_max(&(commutator(&h0, &p) - &q * I), QUADRATIC_CUT), tol);
    r.push("[H0,qhat] + i phat", interior_max(&(commutator(&h0, &q) + &p * I), QUADRATIC_CUT), tol);
    Ok(r)
}

fn push_diagonal(r: &mut Report, name: &str, d: &DiagonalAction, tol: f64) {
    r.push(format!("{name} off-diagonal"), d.off_diagonal, d.threshold.max(tol));
    r.push(format!("{name} diagonal"), d.max_deviation, tol);
}

/// Every paraboson and osp(1|2) identity for `(beta, gamma)`; the
/// `gamma = 1` identities use `beta` alone.
pub fn verify_paraboson_suite(params: RepParams, n: usize, tol: f64) -> Result<Report> {
    let b = params.beta;
    let mut r = Report::new("paraboson");
    r.absorb("", verify_triple_relation(b, n, tol)?);
    r.absorb("", verify_osp_embedding(b, n, tol)?);
    r.absorb("", verify_q_identification(b, n)?);
    r.absorb("", verify_compatibility(b, n, tol)?);
    push_diagonal(&mut r, "[qhat,phat]/2i", &commutator_qp_spectrum(params, n)?, tol);
    push_diagonal(&mut r, "(phat^2+qhat^2)/2", &wigner_hamiltonian_spectrum(params, n)?, tol);
    push_diagonal(&mut r, "(phat^2+qhat^2)/2 - Hhat", &hamiltonian_gap(params, n)?, tol);
    Ok(r)
}
