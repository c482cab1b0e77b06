//! Contour evaluation of ∫ du e^{iωu} G(u − iε) by residues.
//!
//! Residues are obtained by trapezoid quadrature on small circles, which
//! handles poles of any order without symbolic differentiation.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueOptions {
    pub nodes: usize,
    pub max_radius: f64,
    /// Relative distance below which roots are merged into one pole.
    pub cluster_tol: f64,
    /// Relative size of Im(p) below which a pole counts as real.
    pub axis_tol: f64,
    pub max_shrinks: usize,
    pub agreement: f64,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions {
            nodes: 64,
            max_radius: 0.25,
            cluster_tol: 1e-6,
            axis_tol: 1e-7,
            max_shrinks: 8,
            agreement: 1e-9,
        }
    }
}

/// Merge numerically coincident roots (multiple roots split by the
/// eigenvalue solver) into their centroid.
pub fn cluster_poles(roots: &[C], tol: f64) -> Vec<C> {
    let mut groups: Vec<(C, usize)> = Vec::new();
    for &r in roots {
        if let Some(g) = groups
            .iter_mut()
            .find(|(c, n)| (*c / *n as f64 - r).norm() < tol * (1.0 + r.norm()))
        {
            g.0 += r;
            g.1 += 1;
        } else {
            groups.push((r, 1));
        }
    }
    groups.into_iter().map(|(s, n)| s / n as f64).collect()
}

pub fn is_real_pole(p: C, tol: f64) -> bool {
    p.im.abs() <= tol * (1.0 + p.re.abs())
}

/// Whether the closing contour for frequency `omega` encloses the pole at `p`
/// of G(u − iε): real poles move to +iε and are enclosed only for ω > 0.
pub fn encloses(p: C, omega: f64, tol: f64) -> bool {
    if is_real_pole(p, tol) {
        omega > 0.0
    } else {
        (p.im > 0.0) == (omega > 0.0)
    }
}

/// (1/2πi)∮ f over a circle, trapezoid rule, plus the mean |f|·r scale.
pub fn cauchy_residue(f: &dyn Fn(C) -> C, center: C, radius: f64, nodes: usize) -> (C, f64) {
    let mut sum = C::new(0.0, 0.0);
    let mut mass = 0.0;
    for k in 0..nodes {
        let th = 2.0 * PI * k as f64 / nodes as f64;
        let dz = C::from_polar(radius, th);
        let v = f(center + dz);
        mass += v.norm();
        sum += v * dz;
    }
    let n = nodes as f64;
    (sum / n, mass * radius / n)
}

/// Residue of `f` at `center`, given the distance to the nearest other
/// singularity. The circle is shrunk until two radii agree.
pub fn residue(f: &dyn Fn(C) -> C, center: C, clearance: f64, opts: &ResidueOptions) -> Result<C> {
    let mut r = opts.max_radius;
    if clearance < 10.0 * r {
        r = clearance / 10.0;
    }
    let (mut prev, _) = cauchy_residue(f, center, r, opts.nodes);
    for _ in 0..opts.max_shrinks {
        r *= 0.5;
        let (next, mass) = cauchy_residue(f, center, r, opts.nodes);
        if (next - prev).norm() <= opts.agreement * next.norm() + 1e-12 * mass {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::ResidueNotConverged {
        re: center.re,
        im: center.im,
        shrinks: opts.max_shrinks,
    })
}

/// Residues of `f` at each pole; `limit` caps the clearance (for instance at
/// the spacing of periodic images not in the list).
pub fn pole_residues(
    f: &dyn Fn(C) -> C,
    poles: &[C],
    limit: f64,
    opts: &ResidueOptions,
) -> Result<Vec<C>> {
    poles
        .iter()
        .enumerate()
        .map(|(k, &p)| {
            let clearance = poles
                .iter()
                .enumerate()
                .filter(|&(m, _)| m != k)
                .map(|(_, q)| (p - q).norm())
                .fold(limit, f64::min);
            residue(f, p, clearance, opts)
        })
        .collect()
}

/// ∫ du e^{iωu} g(u − iε) for g with the listed poles, closing the contour
/// in the upper half-plane for ω > 0 and the lower one for ω < 0.
pub fn fourier_by_residues(
    g: &dyn Fn(C) -> C,
    poles: &[C],
    omega: f64,
    opts: &ResidueOptions,
) -> Result<C> {
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "frequency must be finite and nonzero, got {omega}"
        )));
    }
    let poles = cluster_poles(poles, opts.cluster_tol);
    let h = |z: C| (C::i() * omega * z).exp() * g(z);
    let mut total = C::new(0.0, 0.0);
    for (k, &p) in poles.iter().enumerate() {
        if !encloses(p, omega, opts.axis_tol) {
            continue;
        }
        let clearance = poles
            .iter()
            .enumerate()
            .filter(|&(m, _)| m != k)
            .map(|(_, q)| (p - q).norm())
            .fold(f64::INFINITY, f64::min);
        total += residue(&h, p, clearance, opts)?;
    }
    let orient = if omega > 0.0 { 1.0 } else { -1.0 };
    Ok(total * C::new(0.0, 2.0 * PI * orient))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_pole_residue() {
        let f = |z: C| 3.0 / (z - C::new(0.5, 0.2));
        let r = residue(&f, C::new(0.5, 0.2), f64::INFINITY, &ResidueOptions::default()).unwrap();
        assert!((r - 3.0).norm() < 1e-13);
    }

    #[test]
    fn fourth_order_pole_matches_taylor_coefficient() {
        // e^{iz}/z⁴ has residue i³/3! = −i/6
        let f = |z: C| (C::i() * z).exp() / z.powu(4);
        let r = residue(&f, C::new(0.0, 0.0), f64::INFINITY, &ResidueOptions::default()).unwrap();
        assert!((r - C::new(0.0, -1.0 / 6.0)).norm() < 1e-13);
    }

    #[test]
    fn clustering_merges_split_double_root() {
        let roots = [C::new(1.0 + 1e-8, 0.0), C::new(1.0 - 1e-8, 0.0), C::new(2.0, 0.0)];
        let c = cluster_poles(&roots, 1e-6);
        assert_eq!(c.len(), 2);
        assert!((c[0] - 1.0).norm() < 1e-15);
    }

    #[test]
    fn real_poles_enclosed_only_for_positive_frequency() {
        let p = C::new(1.0, 1e-12);
        assert!(encloses(p, 1.0, 1e-7));
        assert!(!encloses(p, -1.0, 1e-7));
        assert!(encloses(C::new(0.0, -2.0), -1.0, 1e-7));
        assert!(!encloses(C::new(0.0, -2.0), 1.0, 1e-7));
    }

    #[test]
    fn lorentzian_transform() {
        // ∫ e^{iωu}/(u² + 1) du = π e^{−|ω|}
        let g = |z: C| 1.0 / (z * z + 1.0);
        let poles = [C::new(0.0, 1.0), C::new(0.0, -1.0)];
        for w in [1.0, -1.0, 2.5] {
            let v = fourier_by_residues(&g, &poles, w, &ResidueOptions::default()).unwrap();
            assert!((v - PI * (-w.abs()).exp()).norm() < 1e-13, "{w} {v}");
        }
    }

    #[test]
    fn close_poles_shrink_the_circle() {
        let a = C::new(0.0, 0.0);
        let b = C::new(1e-3, 0.0);
        let f = |z: C| 1.0 / ((z - a) * (z - b));
        let r = residue(&f, a, 1e-3, &ResidueOptions::default()).unwrap();
        assert!((r + 1e3).norm() < 1e-7);
    }
}
