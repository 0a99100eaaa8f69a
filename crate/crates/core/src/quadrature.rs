//! Adaptive Gauss-Kronrod quadrature for vector-valued integrands.
//!
//! A 7-point Gauss rule embedded in the 15-point Kronrod extension; the
//! interval with the largest error is bisected until the summed error meets
//! the tolerance. The worst component drives both the local and the global
//! error, so all components converge together.

#![allow(clippy::excessive_precision)]

use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Debug, PartialEq)]
pub struct Quadrature {
    pub values: Vec<f64>,
    pub error: f64,
    pub intervals: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig { abs_tol: 1e-13, rel_tol: 1e-13, max_intervals: 4000 }
    }
}

struct Piece {
    a: f64,
    b: f64,
    values: Vec<f64>,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn gk15<F: Fn(f64) -> Vec<f64>>(f: &F, a: f64, b: f64, width: usize) -> Piece {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = vec![0.0; width];
    let mut gauss = vec![0.0; width];
    let mid = f(c);
    for i in 0..width {
        kron[i] = WGK[7] * mid[i];
        gauss[i] = WG[3] * mid[i];
    }
    for (j, &x) in XGK[..7].iter().enumerate() {
        let lo = f(c - h * x);
        let hi = f(c + h * x);
        for i in 0..width {
            let s = lo[i] + hi[i];
            kron[i] += WGK[j] * s;
            if j % 2 == 1 {
                gauss[i] += WG[j / 2] * s;
            }
        }
    }
    let mut error = 0.0f64;
    for i in 0..width {
        kron[i] *= h;
        gauss[i] *= h;
        error = error.max((kron[i] - gauss[i]).abs());
    }
    Piece { a, b, values: kron, error }
}

/// Integrates the `width`-component function `f` over `[a, b]`.
///
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// allowed.
pub fn integrate<F>(f: F, a: f64, b: f64, width: usize, cfg: QuadConfig) -> Result<Quadrature>
where
    F: Fn(f64) -> Vec<f64>,
{
    let mut heap = BinaryHeap::new();
    heap.push(gk15(&f, a, b, width));
    loop {
        let mut values = vec![0.0; width];
        let mut error = 0.0;
        for p in heap.iter() {
            for (v, x) in values.iter_mut().zip(&p.values) {
                *v += x;
            }
            error += p.error;
        }
        if !error.is_finite() {
            return Err(Error::Domain("non-finite integrand".into()));
        }
        let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if error <= cfg.abs_tol.max(cfg.rel_tol * scale) {
            return Ok(Quadrature { values, error, intervals: heap.len() });
        }
        if heap.len() >= cfg.max_intervals {
            return Err(Error::NonConvergence { terms: heap.len() });
        }
        let worst = heap.pop().unwrap();
        let m = 0.5 * (worst.a + worst.b);
        heap.push(gk15(&f, worst.a, m, width));
        heap.push(gk15(&f, m, worst.b, width));
    }
}
