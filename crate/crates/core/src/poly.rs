//! Real-coefficient polynomials and their complex roots.

use nalgebra::DMatrix;
use num_complex::Complex64;

type C = Complex64;

/// Polynomial with coefficients in ascending order of power.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Poly { coeffs }
    }

    /// The monomial `u`.
    pub fn x() -> Self {
        Poly::new(vec![0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, k: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, z: C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    fn eval_with_derivative(&self, z: C) -> (C, C) {
        let mut p = C::new(0.0, 0.0);
        let mut dp = C::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// All complex roots, from the companion-matrix eigenvalues followed by
    /// a few Newton steps on the original polynomial.
    pub fn roots(&self) -> Vec<C> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[n];
        let mut m = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            m[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let mut roots: Vec<C> = m.complex_eigenvalues().iter().copied().collect();
        for r in roots.iter_mut() {
            *r = self.polish(*r);
        }
        roots
    }

    fn polish(&self, mut z: C) -> C {
        for _ in 0..4 {
            let (p, dp) = self.eval_with_derivative(z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.re.is_finite() || !step.im.is_finite() {
                break;
            }
            let next = z - step;
            // A multiple root makes Newton creep; keep the better point only.
            if self.eval(next).norm() < p.norm() {
                z = next;
            } else {
                break;
            }
        }
        z
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Ratio of a numerator polynomial to a product of powers of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    pub num: Poly,
    pub den: Vec<(Poly, u32)>,
}

impl Rational {
    pub fn zero() -> Self {
        Rational {
            num: Poly::new(vec![0.0]),
            den: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.coeffs().iter().all(|&c| c == 0.0)
    }

    pub fn negate(&self) -> Self {
        Rational {
            num: self.num.scale(-1.0),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, z: C) -> C {
        let mut d = C::new(1.0, 0.0);
        for (f, k) in &self.den {
            d *= f.eval(z).powu(*k);
        }
        self.num.eval(z) / d
    }

    /// Denominator roots, one entry per distinct factor root.
    pub fn poles(&self) -> Vec<C> {
        if self.is_zero() {
            return Vec::new();
        }
        self.den.iter().flat_map(|(f, _)| f.roots()).collect()
    }
}
