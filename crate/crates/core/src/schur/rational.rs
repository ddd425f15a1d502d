//! Rational Schur functions: the continued-fraction approximant built by the
//! backward recursion, Taylor expansion, and the finite-fraction criterion.

use super::{series_div, SchurError, SchurParams};
use num_complex::Complex64;

/// Complex polynomial, ascending coefficients, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct CPoly(Vec<Complex64>);

impl CPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        CPoly(coeffs)
    }

    pub fn zero() -> Self {
        CPoly(vec![])
    }

    pub fn one() -> Self {
        CPoly(vec![Complex64::new(1.0, 0.0)])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.0.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.0.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn add(&self, rhs: &CPoly) -> CPoly {
        let n = self.0.len().max(rhs.0.len());
        CPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &CPoly) -> CPoly {
        let n = self.0.len().max(rhs.0.len());
        CPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &CPoly) -> CPoly {
        if self.is_zero() || rhs.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CPoly::new(out)
    }

    pub fn scale(&self, s: Complex64) -> CPoly {
        CPoly::new(self.0.iter().map(|c| c * s).collect())
    }

    /// Multiplication by z^k.
    pub fn shift(&self, k: usize) -> CPoly {
        if self.is_zero() {
            return CPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); k];
        out.extend_from_slice(&self.0);
        CPoly(out)
    }

    /// The reflected polynomial z^m conj(p(1/conj z)) at the given degree m.
    pub fn reflect(&self, m: usize) -> CPoly {
        CPoly::new((0..=m).map(|k| self.coeff(m - k).conj()).collect())
    }

    /// Euclidean remainder against a nonzero divisor.
    fn rem(&self, rhs: &CPoly) -> CPoly {
        let d = rhs.degree().expect("division by zero polynomial");
        let lead = *rhs.0.last().unwrap();
        let mut r = self.0.clone();
        while r.len() > d {
            let k = r.len() - 1;
            let q = r[k] / lead;
            for (j, b) in rhs.0.iter().enumerate() {
                r[k - d + j] -= q * b;
            }
            r.pop();
            while matches!(r.last(), Some(c) if c.norm() < 1e-13) {
                r.pop();
            }
        }
        CPoly::new(r)
    }

    /// Approximate monic gcd by the euclidean algorithm with a relative
    /// remainder cutoff; adequate for the exactly-given inputs used here.
    pub fn gcd_approx(&self, rhs: &CPoly) -> CPoly {
        let scale = self
            .0
            .iter()
            .chain(&rhs.0)
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            if b.0.iter().map(|c| c.norm()).fold(0.0f64, f64::max) <= 1e-10 * scale {
                break;
            }
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = *a.0.last().unwrap();
        a.scale(Complex64::new(1.0, 0.0) / lead)
    }
}

/// Quotient of complex polynomials, normalized so den(0) = 1 whenever the
/// denominator does not vanish at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFn {
    pub num: CPoly,
    pub den: CPoly,
}

impl RationalFn {
    pub fn new(num: CPoly, den: CPoly) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let d0 = den.coeff(0);
        if d0.norm() > 0.0 {
            let inv = Complex64::new(1.0, 0.0) / d0;
            RationalFn { num: num.scale(inv), den: den.scale(inv) }
        } else {
            RationalFn { num, den }
        }
    }

    pub fn constant(c: Complex64) -> Self {
        RationalFn { num: CPoly::constant(c), den: CPoly::one() }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Taylor coefficients c_0..c_{len-1} by series division (den(0) = 1).
    pub fn taylor(&self, len: usize) -> Vec<Complex64> {
        assert!(self.den.coeff(0).norm() > 0.0, "denominator vanishes at the origin");
        series_div(self.num.coeffs(), self.den.coeffs(), len)
    }
}

/// The n-th Schur approximant [z; gamma_0..gamma_n] by the backward
/// recursion f -> (gamma_k + z f) / (1 + conj(gamma_k) z f).
pub fn approximant(params: &SchurParams) -> RationalFn {
    assert!(!params.gammas.is_empty(), "parameters must be nonempty");
    let mut num = CPoly::constant(*params.gammas.last().unwrap());
    let mut den = CPoly::one();
    for &g in params.gammas.iter().rev().skip(1) {
        let zn = num.shift(1);
        let new_num = den.scale(g).add(&zn);
        let new_den = den.add(&zn.scale(g.conj()));
        num = new_num;
        den = new_den;
    }
    RationalFn::new(num, den)
}

#[derive(Debug, Clone)]
pub struct FiniteFractionReport {
    /// True when the function is a finite Schur fraction.
    pub representable: bool,
    /// The constant |den|^2 - |num|^2 on the circle.
    pub r: f64,
    /// Set when r = 0: inner function, boundary of the criterion.
    pub inner_boundary: bool,
}

/// Finite-fraction criterion for a coprime rational function: the
/// denominator must be zero-free on the closed disk and |den|^2 - |num|^2
/// must be a positive constant on the circle.
pub fn finite_fraction_check(s: &RationalFn, grid_size: usize) -> Result<FiniteFractionReport, SchurError> {
    assert!(grid_size >= 8, "grid must have at least 8 points");
    let g = s.num.gcd_approx(&s.den);
    if g.degree().unwrap_or(0) >= 1 {
        return Err(SchurError::NotCoprime);
    }
    let den_deg = s.den.degree().ok_or(SchurError::ZeroPolynomial)?;

    // No zeros in the closed disk: reflected polynomial has all roots
    // strictly inside, plus a boundary margin check on the grid.
    let mut zero_free = s.den.coeff(0).norm() > 1e-12;
    if zero_free && den_deg >= 1 {
        let reflected = s.den.reflect(den_deg);
        zero_free = super::schur_cohn(reflected.coeffs())?;
    }

    let mut vals = Vec::with_capacity(grid_size);
    for k in 0..grid_size {
        let th = 2.0 * std::f64::consts::PI * k as f64 / grid_size as f64;
        let t = Complex64::new(th.cos(), th.sin());
        if s.den.eval(t).norm() < 1e-12 {
            zero_free = false;
        }
        vals.push(s.den.eval(t).norm_sqr() - s.num.eval(t).norm_sqr());
    }
    let r = vals.iter().sum::<f64>() / grid_size as f64;
    let scale = vals.iter().map(|v| v.abs()).fold(1e-300, f64::max).max(1.0);
    let constant = vals.iter().all(|v| (v - r).abs() <= 1e-10 * scale);
    let inner_boundary = constant && r.abs() <= 1e-10 * scale;
    let representable = zero_free && constant && r > 1e-10 * scale;
    Ok(FiniteFractionReport { representable, r, inner_boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{schur_parameters, TOL_UNIT};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_approximant() {
        let p = SchurParams::contractive(vec![c(0.3, -0.1)]);
        let f = approximant(&p);
        assert_eq!(f.num, CPoly::constant(c(0.3, -0.1)));
        assert_eq!(f.den, CPoly::one());
    }

    #[test]
    fn shift_approximant() {
        // (0, 1) -> z
        let p = SchurParams { gammas: vec![c(0.0, 0.0), c(1.0, 0.0)], terminated: true };
        let f = approximant(&p);
        assert_eq!(f.num, CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]));
        assert_eq!(f.den, CPoly::one());
    }

    #[test]
    fn blaschke_step() {
        // (a, 1) -> (a + z)/(1 + conj(a) z)
        let a = c(0.4, 0.2);
        let p = SchurParams { gammas: vec![a, c(1.0, 0.0)], terminated: true };
        let f = approximant(&p);
        assert!((f.num.coeff(0) - a).norm() < 1e-15);
        assert!((f.num.coeff(1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f.den.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((f.den.coeff(1) - a.conj()).norm() < 1e-15);
    }

    #[test]
    fn parameter_round_trip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = rng.gen_range(1..=10);
            let gam: Vec<Complex64> = (0..=m)
                .map(|_| {
                    let r = rng.gen_range(0.0..0.9f64);
                    let th = rng.gen_range(0.0..std::f64::consts::TAU);
                    Complex64::from_polar(r, th)
                })
                .collect();
            let p = SchurParams::contractive(gam.clone());
            let prefix = approximant(&p).taylor(m + 1);
            let back = schur_parameters(&prefix, TOL_UNIT).unwrap();
            assert!(!back.terminated);
            assert_eq!(back.gammas.len(), gam.len());
            for (a, b) in back.gammas.iter().zip(&gam) {
                assert!((a - b).norm() < 1e-10, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn finite_fraction_cases() {
        // Constant gamma: r = 1 - |gamma|^2.
        let f = RationalFn::constant(c(0.6, 0.0));
        let rep = finite_fraction_check(&f, 16).unwrap();
        assert!(rep.representable);
        assert!((rep.r - 0.64).abs() < 1e-12);

        // z/2: r = 3/4.
        let f = RationalFn::new(CPoly::new(vec![c(0.0, 0.0), c(0.5, 0.0)]), CPoly::one());
        let rep = finite_fraction_check(&f, 16).unwrap();
        assert!(rep.representable);
        assert!((rep.r - 0.75).abs() < 1e-12);

        // z itself: inner, r = 0.
        let f = RationalFn::new(CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]), CPoly::one());
        let rep = finite_fraction_check(&f, 16).unwrap();
        assert!(!rep.representable && rep.inner_boundary);

        // Shared factor: not coprime.
        let z = CPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let two_plus_z = CPoly::new(vec![c(2.0, 0.0), c(1.0, 0.0)]);
        let f = RationalFn { num: z.mul(&two_plus_z).scale(c(0.1, 0.0)), den: two_plus_z.mul(&CPoly::one().scale(c(2.0, 0.0))) };
        assert!(matches!(finite_fraction_check(&f, 16), Err(SchurError::NotCoprime)));
    }

    #[test]
    fn approximant_is_schur_on_grid() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let m = rng.gen_range(0..=6);
            let gam: Vec<Complex64> = (0..=m)
                .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.95), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let f = approximant(&SchurParams::contractive(gam));
            for k in 0..32 {
                let th = std::f64::consts::TAU * k as f64 / 32.0;
                let z = Complex64::from_polar(0.99, th);
                assert!(f.eval(z).norm() <= 1.0 + 1e-9);
            }
        }
    }
}
