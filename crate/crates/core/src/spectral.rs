//! Fourier transforms of the correlators and the dissipator coefficients.

use nalgebra::{Matrix3, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::frames::{Atom, Family};
use crate::poly::{Poly, Rational};
use crate::quadrature::{integrate, neville_to_zero};
use crate::residue::{cluster_poles, encloses, fourier_by_residues, pole_residues, ResidueOptions};
use crate::wightman::{static_vacuum_c, thermal_c, ultra_component, uniform_2pt, Axis};

type C = Complex64;

/// Γ₀ = |d|²ω³/(3π) at ω = |d| = 1.
pub const GAMMA0: f64 = 1.0 / (3.0 * PI);

/// Which correlator feeds the transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Source {
    /// Ultrarelativistic circular orbit.
    Circular { a: f64, l: f64 },
    /// Uniform linear acceleration.
    Uniform { a: f64, l: f64 },
    /// Static atoms at temperature `t`, image sum truncated at `images`.
    Thermal { t: f64, l: f64, images: usize },
}

impl Source {
    /// The source a trajectory family uses at acceleration `a`; the thermal
    /// bath sits at the Unruh temperature a/2π.
    pub fn for_family(family: Family, a: f64, l: f64) -> Source {
        match family {
            Family::Circular => Source::Circular { a, l },
            Family::Uniform => Source::Uniform { a, l },
            Family::Thermal => Source::Thermal {
                t: a / (2.0 * PI),
                l,
                images: crate::wightman::DEFAULT_IMAGES,
            },
        }
    }

    pub fn family(&self) -> Family {
        match self {
            Source::Circular { .. } => Family::Circular,
            Source::Uniform { .. } => Family::Uniform,
            Source::Thermal { .. } => Family::Thermal,
        }
    }

    pub fn separation(&self) -> f64 {
        match *self {
            Source::Circular { l, .. } | Source::Uniform { l, .. } | Source::Thermal { l, .. } => l,
        }
    }

    /// Scale of the proper acceleration (2πT for the thermal bath).
    pub fn acceleration(&self) -> f64 {
        match *self {
            Source::Circular { a, .. } | Source::Uniform { a, .. } => a,
            Source::Thermal { t, .. } => 2.0 * PI * t,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Source::Circular { a, l } | Source::Uniform { a, l } => {
                a > 0.0 && a.is_finite() && l >= 0.0 && l.is_finite()
            }
            Source::Thermal { t, l, images } => {
                t >= 0.0 && t.is_finite() && l >= 0.0 && l.is_finite() && images >= 1
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("invalid spectral source {self:?}")))
        }
    }
}

/// One component G^{(αβ)}_{ij} of a correlation tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub source: Source,
    pub alpha: Atom,
    pub beta: Atom,
    pub i: Axis,
    pub j: Axis,
}

impl Component {
    pub fn new(source: Source, alpha: Atom, beta: Atom, i: Axis, j: Axis) -> Self {
        Component {
            source,
            alpha,
            beta,
            i,
            j,
        }
    }

    fn pair_separation(&self) -> f64 {
        if self.alpha == self.beta {
            0.0
        } else {
            self.source.separation()
        }
    }

    /// Correlator at complex lag; real-axis Wightman values are obtained at
    /// `u − iε`.
    pub fn eval(&self, u: C) -> C {
        let (i, j) = (self.i.index(), self.j.index());
        match self.source {
            Source::Circular { a, l } => {
                ultra_component(self.i, self.j, self.alpha, self.beta, a, l).eval(u)
            }
            Source::Uniform { a, l } => {
                if (a * u.re).abs() > 200.0 {
                    return C::new(0.0, 0.0);
                }
                uniform_2pt(self.i, self.j, self.alpha, self.beta, u, a, l)
            }
            Source::Thermal { t, l, images } => {
                thermal_c(i, j, self.alpha, self.beta, l, t, images, u).0
            }
        }
    }

    fn ultra(&self) -> Option<Rational> {
        match self.source {
            Source::Circular { a, l } => {
                Some(ultra_component(self.i, self.j, self.alpha, self.beta, a, l))
            }
            _ => None,
        }
    }
}

/// Exact transform ∫ du e^{iωu} G(u − iε), ε → 0⁺, by contour closure.
pub fn fourier_residue(c: &Component, omega: f64) -> Result<C> {
    fourier_residue_with(c, omega, &ResidueOptions::default())
}

pub fn fourier_residue_with(c: &Component, omega: f64, opts: &ResidueOptions) -> Result<C> {
    c.source.validate()?;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "frequency must be finite and nonzero, got {omega}"
        )));
    }
    match c.source {
        Source::Circular { .. } => {
            let r = c.ultra().expect("circular source");
            if r.is_zero() {
                return Ok(C::new(0.0, 0.0));
            }
            let g = |z: C| r.eval(z);
            fourier_by_residues(&g, &r.poles(), omega, opts)
        }
        Source::Thermal { t, images, .. } => {
            if c.i != c.j {
                return Ok(C::new(0.0, 0.0));
            }
            let l = c.pair_separation();
            let base = if l == 0.0 {
                vec![C::new(0.0, 0.0)]
            } else {
                vec![C::new(-l, 0.0), C::new(l, 0.0)]
            };
            let (i, j) = (c.i.index(), c.j.index());
            let h = |z: C| (C::i() * omega * z).exp() * static_vacuum_c(i, j, c.alpha, c.beta, l, z);
            let res = pole_residues(&h, &base, f64::INFINITY, opts)?;
            let (n, b) = if t == 0.0 { (0i64, 0.0) } else { (images as i64, 1.0 / t) };
            let mut total = C::new(0.0, 0.0);
            for k in -n..=n {
                let weight = (-(k as f64) * omega * b).exp();
                for (p, r) in base.iter().zip(&res) {
                    let shifted = p + C::new(0.0, k as f64 * b);
                    if encloses(shifted, omega, opts.axis_tol) {
                        total += r * weight;
                    }
                }
            }
            let orient = if omega > 0.0 { 1.0 } else { -1.0 };
            Ok(total * C::new(0.0, 2.0 * PI * orient))
        }
        Source::Uniform { a, .. } => {
            let l = c.pair_separation();
            let b = 2.0 * PI / a;
            let poles = uniform_strip_poles(a, l, opts);
            let h = |z: C| (C::i() * omega * z).exp() * c.eval(z);
            let res = pole_residues(&h, &poles, b, opts)?;
            let sum: C = res.iter().sum();
            Ok(sum * C::new(0.0, 2.0 * PI) / (1.0 - (-omega * b).exp()))
        }
    }
}

/// Light-cone poles of the uniformly accelerated pair inside the strip
/// 0 ≤ Im u < 2π/a. With s = e^{au} the interval vanishes where
/// s² − (2 + a²L²)s + 1 = 0.
fn uniform_strip_poles(a: f64, l: f64, opts: &ResidueOptions) -> Vec<C> {
    let b = 2.0 * PI / a;
    let q = Poly::new(vec![1.0, -(2.0 + a * a * l * l), 1.0]);
    let snap = 1e-6;
    let us: Vec<C> = q
        .roots()
        .into_iter()
        .map(|s| {
            let u = s.ln() / a;
            let mut im = u.im.rem_euclid(b);
            if im < snap * b || (b - im) < snap * b {
                im = 0.0;
            }
            C::new(u.re, im)
        })
        .collect();
    cluster_poles(&us, opts.cluster_tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureOptions {
    /// Strictly decreasing regulator values.
    pub eps: Vec<f64>,
    /// The window is flat on |u| ≤ flat and vanishes smoothly at |u| = half_width.
    pub flat: f64,
    pub half_width: f64,
    pub panel: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl QuadratureOptions {
    pub fn for_source(source: &Source) -> Self {
        let a = source.acceleration();
        let flat = match source {
            Source::Circular { .. } => 40.0,
            _ => (40.0f64).max(40.0 / a),
        };
        QuadratureOptions {
            eps: vec![0.6, 0.45, 0.3, 0.15],
            flat,
            half_width: 2.0 * flat,
            panel: 0.5,
            abs_tol: 1e-13,
            rel_tol: 1e-10,
            max_panels: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate {
    pub value: C,
    pub error: f64,
    /// Shift-compensated transforms e^{ωε}·I(ε), one per regulator.
    pub sequence: Vec<C>,
    pub reliable: bool,
}

fn smooth_step(t: f64) -> f64 {
    let f = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        f(t) / (f(t) + f(1.0 - t))
    }
}

/// Direct numerical transform of `g` at a ladder of finite regulators,
/// extrapolated to ε → 0.
pub fn fourier_quadrature(
    g: &dyn Fn(C) -> C,
    omega: f64,
    opts: &QuadratureOptions,
) -> Result<QuadratureEstimate> {
    if opts.eps.len() < 3 || opts.eps.windows(2).any(|w| w[1] >= w[0]) || opts.eps[0] <= 0.0 {
        return Err(Error::InvalidParameter(
            "regulator list must hold at least three strictly decreasing positive values".into(),
        ));
    }
    if !(opts.half_width > opts.flat && opts.flat > 0.0) {
        return Err(Error::InvalidParameter("window must satisfy 0 < flat < half_width".into()));
    }
    let n_panels = (2.0 * opts.half_width / opts.panel).ceil() as usize;
    let breaks: Vec<f64> = (0..=n_panels)
        .map(|k| -opts.half_width + 2.0 * opts.half_width * k as f64 / n_panels as f64)
        .collect();
    let taper = opts.half_width - opts.flat;
    let mut seq = Vec::with_capacity(opts.eps.len());
    let mut quad_err = 0.0f64;
    for &eps in &opts.eps {
        let f = |u: f64| {
            let w = smooth_step((opts.half_width - u.abs()) / taper);
            if w == 0.0 {
                return C::new(0.0, 0.0);
            }
            (C::i() * omega * u).exp() * g(C::new(u, -eps)) * w
        };
        let r = integrate(&f, &breaks, opts.abs_tol, opts.rel_tol, opts.max_panels)?;
        let shift = (omega * eps).exp();
        quad_err = quad_err.max(r.error * shift);
        seq.push(r.value * shift);
    }
    let diag = neville_to_zero(&opts.eps, &seq);
    let steps: Vec<f64> = diag.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let scale = seq.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = 1e-12 * scale + 100.0 * quad_err;
    let reliable = steps
        .windows(2)
        .all(|w| w[1] <= 2.0 * w[0] + floor);
    let value = *diag.last().expect("non-empty ladder");
    let error = steps.last().copied().unwrap_or(0.0) + quad_err;
    Ok(QuadratureEstimate {
        value,
        error,
        sequence: seq,
        reliable,
    })
}

/// Quadrature oracle for a component with a window sized to its decay.
pub fn fourier_quadrature_component(c: &Component, omega: f64) -> Result<QuadratureEstimate> {
    let g = |u: C| c.eval(u);
    fourier_quadrature(&g, omega, &QuadratureOptions::for_source(&c.source))
}

/// 𝒢^{(αβ)}_{mn}(±ω): index order [α][β][m][n][sign], sign 0 for +ω.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralTensor {
    pub source: Source,
    pub omega: f64,
    values: [[[[[C; 2]; 3]; 3]; 2]; 2],
}

impl SpectralTensor {
    pub fn compute(source: Source, omega: f64) -> Result<Self> {
        let mut values = [[[[[C::new(0.0, 0.0); 2]; 3]; 3]; 2]; 2];
        for alpha in Atom::BOTH {
            for beta in Atom::BOTH {
                for m in Axis::ALL {
                    for n in Axis::ALL {
                        let c = Component::new(source, alpha, beta, m, n);
                        for (s, w) in [omega, -omega].into_iter().enumerate() {
                            values[alpha.index()][beta.index()][m.index()][n.index()][s] =
                                fourier_residue(&c, w)?;
                        }
                    }
                }
            }
        }
        Ok(SpectralTensor {
            source,
            omega,
            values,
        })
    }

    /// 𝒢^{(αβ)}_{mn} at +ω (`positive`) or −ω.
    pub fn get(&self, alpha: Atom, beta: Atom, m: Axis, n: Axis, positive: bool) -> C {
        self.values[alpha.index()][beta.index()][m.index()][n.index()][usize::from(!positive)]
    }
}

/// Complex unit dipole directions of the two atoms in the comoving basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleConfig {
    pub d1: [C; 3],
    pub d2: [C; 3],
}

impl DipoleConfig {
    pub fn new(d1: [C; 3], d2: [C; 3]) -> Result<Self> {
        for d in [&d1, &d2] {
            let n: f64 = d.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "dipole direction must have unit norm, got {n}"
                )));
            }
        }
        Ok(DipoleConfig { d1, d2 })
    }

    pub fn axes(p1: Axis, p2: Axis) -> Self {
        let e = |ax: Axis| {
            let mut v = [C::new(0.0, 0.0); 3];
            v[ax.index()] = C::new(1.0, 0.0);
            v
        };
        DipoleConfig {
            d1: e(p1),
            d2: e(p2),
        }
    }

    pub fn real(v1: [f64; 3], v2: [f64; 3]) -> Result<Self> {
        let c = |v: [f64; 3]| v.map(|x| C::new(x, 0.0));
        DipoleConfig::new(c(v1), c(v2))
    }

    fn of(&self, atom: Atom) -> &[C; 3] {
        match atom {
            Atom::One => &self.d1,
            Atom::Two => &self.d2,
        }
    }
}

/// 𝒢^{(αβ)}(±ω) = Σ d_m^{(α)*} d_n^{(β)} 𝒢^{(αβ)}_{mn}(±ω).
pub fn contract(
    spectral: &SpectralTensor,
    dipoles: &DipoleConfig,
    alpha: Atom,
    beta: Atom,
    positive: bool,
) -> C {
    let (da, db) = (dipoles.of(alpha), dipoles.of(beta));
    let mut s = C::new(0.0, 0.0);
    for m in Axis::ALL {
        for n in Axis::ALL {
            let w = da[m.index()].conj() * db[n.index()];
            if w != C::new(0.0, 0.0) {
                s += w * spectral.get(alpha, beta, m, n, positive);
            }
        }
    }
    s
}

/// The eight dissipator numbers in units of Γ₀.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RateCoefficients {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
    pub b4: f64,
}

const IMAG_TOL: f64 = 1e-8;
const POSITIVITY_TOL: f64 = 1e-10;

impl RateCoefficients {
    pub fn a(&self) -> [f64; 4] {
        [self.a1, self.a2, self.a3, self.a4]
    }

    pub fn b(&self) -> [f64; 4] {
        [self.b1, self.b2, self.b3, self.b4]
    }

    /// Positivity of the same-atom spectra: A ≥ |B| ≥ 0.
    pub fn check_positivity(&self) -> Result<()> {
        for (a, b) in [(self.a1, self.b1), (self.a2, self.b2)] {
            if a < -POSITIVITY_TOL || a + POSITIVITY_TOL < b.abs() {
                return Err(Error::InvalidState(format!(
                    "same-atom rates violate A >= |B|: A = {a}, B = {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn is_exchange_symmetric(&self, tol: f64) -> bool {
        (self.a1 - self.a2).abs() <= tol
            && (self.b1 - self.b2).abs() <= tol
            && (self.a3 - self.a4).abs() <= tol
            && (self.b3 - self.b4).abs() <= tol
    }

    pub fn with_cross_zeroed(&self) -> Self {
        RateCoefficients {
            a3: 0.0,
            a4: 0.0,
            b3: 0.0,
            b4: 0.0,
            ..*self
        }
    }
}

/// Coefficients from contracted spectra at ±ω, pairs ordered (11, 22, 12, 21).
pub fn rate_coefficients(plus: [C; 4], minus: [C; 4]) -> Result<RateCoefficients> {
    let mut a = [0.0; 4];
    let mut b = [0.0; 4];
    for k in 0..4 {
        let ak = (plus[k] + minus[k]) / (4.0 * GAMMA0);
        let bk = (plus[k] - minus[k]) / (4.0 * GAMMA0);
        for z in [ak, bk] {
            let tol = IMAG_TOL * z.re.abs().max(1.0);
            if z.im.abs() > tol {
                return Err(if k < 2 {
                    Error::ImaginarySameAtom { im: z.im }
                } else {
                    Error::ComplexCrossRates { im: z.im }
                });
            }
        }
        a[k] = ak.re;
        b[k] = bk.re;
    }
    // The (12) and (21) blocks are Hermitian partners, so with real cross
    // rates the two must coincide; pin them to one value.
    for v in [&mut a, &mut b] {
        let tol = IMAG_TOL * v[2].abs().max(v[3].abs()).max(1.0);
        if (v[2] - v[3]).abs() > tol {
            return Err(Error::InvalidState(format!(
                "cross spectra are not Hermitian partners: {} vs {}",
                v[2], v[3]
            )));
        }
        let m = 0.5 * (v[2] + v[3]);
        v[2] = m;
        v[3] = m;
    }
    Ok(RateCoefficients {
        a1: a[0],
        a2: a[1],
        a3: a[2],
        a4: a[3],
        b1: b[0],
        b2: b[1],
        b3: b[2],
        b4: b[3],
    })
}

const PAIRS: [(Atom, Atom); 4] = [
    (Atom::One, Atom::One),
    (Atom::Two, Atom::Two),
    (Atom::One, Atom::Two),
    (Atom::Two, Atom::One),
];

/// Rates for a source and dipole pair at ω = 1.
pub fn rates_for(source: Source, dipoles: &DipoleConfig) -> Result<RateCoefficients> {
    let tensor = SpectralTensor::compute(source, 1.0)?;
    rates_from_tensor(&tensor, dipoles)
}

pub fn rates_from_tensor(tensor: &SpectralTensor, dipoles: &DipoleConfig) -> Result<RateCoefficients> {
    let plus = PAIRS.map(|(al, be)| contract(tensor, dipoles, al, be, true));
    let minus = PAIRS.map(|(al, be)| contract(tensor, dipoles, al, be, false));
    let r = rate_coefficients(plus, minus)?;
    r.check_positivity()?;
    Ok(r)
}

/// Four 3×3 blocks C^{(αβ)}_{ij} of the dissipator.
#[derive(Debug, Clone, PartialEq)]
pub struct KossakowskiMatrix {
    pub blocks: [[Matrix3<C>; 2]; 2],
}

impl KossakowskiMatrix {
    pub fn block(&self, alpha: Atom, beta: Atom) -> &Matrix3<C> {
        &self.blocks[alpha.index()][beta.index()]
    }

    /// The 6×6 matrix [[C¹¹, C¹²], [C²¹, C²²]].
    pub fn full(&self) -> SMatrix<C, 6, 6> {
        let mut m = SMatrix::<C, 6, 6>::zeros();
        for (al, row) in self.blocks.iter().enumerate() {
            for (be, b) in row.iter().enumerate() {
                m.fixed_view_mut::<3, 3>(3 * al, 3 * be).copy_from(b);
            }
        }
        m
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.full();
        let h = (m + m.adjoint()) * C::new(0.5, 0.0);
        h.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let m = self.full();
        (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

pub fn kossakowski(rates: &RateCoefficients) -> KossakowskiMatrix {
    let block = |a: f64, b: f64| {
        let z = C::new(0.0, 0.0);
        Matrix3::new(
            C::new(a, 0.0),
            C::new(0.0, -b),
            z,
            C::new(0.0, b),
            C::new(a, 0.0),
            z,
            z,
            z,
            z,
        )
    };
    KossakowskiMatrix {
        blocks: [
            [block(rates.a1, rates.b1), block(rates.a3, rates.b3)],
            [block(rates.a4, rates.b4), block(rates.a2, rates.b2)],
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: Atom = Atom::One;
    const TWO: Atom = Atom::Two;

    #[test]
    fn static_limit_transform() {
        let c = Component::new(Source::Circular { a: 1e-6, l: 1.0 }, ONE, ONE, Axis::Z, Axis::Z);
        let p = fourier_residue(&c, 1.0).unwrap();
        let m = fourier_residue(&c, -1.0).unwrap();
        assert!((p - 1.0 / (3.0 * PI)).norm() < 1e-10);
        assert!(m.norm() < 1e-12);
    }

    #[test]
    fn vacuum_rates_are_quarter() {
        let s = Source::Thermal { t: 0.0, l: 1.0, images: 1 };
        let r = rates_for(s, &DipoleConfig::axes(Axis::Z, Axis::Z)).unwrap();
        assert!((r.a1 - 0.25).abs() < 1e-12 && (r.b1 - 0.25).abs() < 1e-12);
    }

    #[test]
    fn thermal_ratio_is_tanh() {
        let t = 1.0 / (2.0 * PI);
        let s = Source::Thermal { t, l: 1.0, images: 200 };
        let r = rates_for(s, &DipoleConfig::axes(Axis::Z, Axis::Z)).unwrap();
        assert!((r.b1 / r.a1 - (0.5 / t).tanh()).abs() < 1e-10);
    }

    #[test]
    fn uniform_same_atom_is_planckian() {
        for a in [0.5, 1.0, 2.0] {
            let c = Component::new(Source::Uniform { a, l: 1.0 }, ONE, ONE, Axis::Z, Axis::Z);
            let p = fourier_residue(&c, 1.0).unwrap() / GAMMA0;
            let expect = (1.0 + a * a) / (1.0 - (-2.0 * PI / a).exp());
            assert!((p.re - expect).abs() < 1e-9 * expect, "{a} {p}");
        }
    }

    #[test]
    fn circular_has_excitation_spectrum() {
        let c = Component::new(Source::Circular { a: 1.0, l: 1.0 }, ONE, ONE, Axis::Z, Axis::Z);
        assert!(fourier_residue(&c, -1.0).unwrap().re > 1e-4);
    }

    #[test]
    fn antisymmetric_pair_transforms_cancel() {
        let s = Source::Circular { a: 1.0, l: 1.0 };
        for (al, be) in [(ONE, ONE), (ONE, TWO)] {
            for w in [1.3, -1.3] {
                let p = fourier_residue(&Component::new(s, al, be, Axis::Rho, Axis::Phi), w).unwrap();
                let q = fourier_residue(&Component::new(s, al, be, Axis::Phi, Axis::Rho), w).unwrap();
                assert!(p.norm() > 0.0);
                assert!((p + q).norm() < 1e-12 * p.norm());
            }
        }
    }

    #[test]
    fn rejects_complex_cross_rates() {
        let s = Source::Circular { a: 1.0, l: 1.0 };
        let d = DipoleConfig::axes(Axis::Z, Axis::Phi);
        assert!(matches!(rates_for(s, &d), Err(Error::ComplexCrossRates { .. })));
    }

    #[test]
    fn kossakowski_structure() {
        let r = RateCoefficients {
            a1: 1.0,
            a2: 1.0,
            a3: 0.3,
            a4: 0.3,
            b1: 0.9,
            b2: 0.9,
            b3: 0.2,
            b4: 0.2,
        };
        let k = kossakowski(&r);
        let c11 = k.block(ONE, ONE);
        assert_eq!(c11[(2, 2)], C::new(0.0, 0.0));
        assert_eq!(c11[(0, 1)], C::new(0.0, -0.9));
        assert_eq!(c11[(1, 0)], C::new(0.0, 0.9));
        assert!(k.hermiticity_defect() == 0.0);
        assert!(k.min_eigenvalue() > -1e-12);
        let _ = k.block(TWO, ONE);
    }

    #[test]
    fn positivity_check_rejects_bad_rates() {
        let r = RateCoefficients {
            a1: 0.1,
            b1: 0.5,
            ..Default::default()
        };
        assert!(r.check_positivity().is_err());
    }
}
