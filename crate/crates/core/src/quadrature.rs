//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

type C = Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

struct Panel {
    lo: f64,
    hi: f64,
    value: C,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod(f: &dyn Fn(f64) -> C, lo: f64, hi: f64) -> Panel {
    let c = 0.5 * (lo + hi);
    let h = 0.5 * (hi - lo);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    Panel {
        lo,
        hi,
        value: k * h,
        error: ((k - g) * h).norm(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: C,
    pub error: f64,
    pub panels: usize,
}

/// Integrate `f` over the consecutive intervals defined by `breaks`,
/// bisecting the worst panel until the summed error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate(
    f: &dyn Fn(f64) -> C,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Integral> {
    if breaks.len() < 2 {
        return Err(Error::InvalidParameter("need at least two breakpoints".into()));
    }
    let mut heap: BinaryHeap<Panel> = breaks
        .windows(2)
        .map(|w| kronrod(f, w[0], w[1]))
        .collect();
    let resum = |heap: &BinaryHeap<Panel>| -> (C, f64) {
        (heap.iter().map(|p| p.value).sum(), heap.iter().map(|p| p.error).sum())
    };
    let (mut total, mut err) = resum(&heap);
    let mut since = 0usize;
    loop {
        if err <= abs_tol.max(rel_tol * total.norm()) {
            (total, err) = resum(&heap);
            if err <= abs_tol.max(rel_tol * total.norm()) {
                return Ok(Integral {
                    value: total,
                    error: err,
                    panels: heap.len(),
                });
            }
        }
        if heap.len() >= max_panels {
            return Err(Error::QuadratureFailed {
                lo: breaks[0],
                hi: breaks[breaks.len() - 1],
            });
        }
        let worst = heap.pop().expect("non-empty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            return Err(Error::QuadratureFailed {
                lo: worst.lo,
                hi: worst.hi,
            });
        }
        let (l, r) = (kronrod(f, worst.lo, mid), kronrod(f, mid, worst.hi));
        total += l.value + r.value - worst.value;
        err += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        since += 1;
        if since == 1024 {
            (total, err) = resum(&heap);
            since = 0;
        }
    }
}

/// Polynomial extrapolation to x = 0 of samples (xs, ys) by Neville's
/// scheme; returns the successive diagonal estimates.
pub fn neville_to_zero(xs: &[f64], ys: &[C]) -> Vec<C> {
    let n = xs.len();
    let mut p: Vec<C> = ys.to_vec();
    let mut diag = vec![p[0]];
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
        }
        diag.push(p[0]);
    }
    diag
}
