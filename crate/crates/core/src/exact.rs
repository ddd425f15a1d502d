//! Exact scalar types shared by the rational-arithmetic modules: thin helpers
//! around `BigRational` plus Gaussian rationals (complex numbers with rational
//! real and imaginary parts).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for the fraction n/d.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Renders a rational as `p/q`, or just `p` when the denominator is one.
pub fn rat_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain decimal such as `0.25` into an exact rational.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        if frac.is_empty() {
            return Some(BigRational::from_integer(int));
        }
        let digits: BigInt = frac.parse().ok()?;
        if digits.is_negative() {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigRational::new(digits, scale);
        let whole = BigRational::from_integer(int);
        return Some(if neg { whole - frac_part } else { whole + frac_part });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Gaussian rational: exact complex scalar with rational components.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: rat(n), im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|^2, exactly.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i", rat_string(&self.re), rat_string(&self.im))
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl AddAssign for GaussRat {
    fn add_assign(&mut self, rhs: GaussRat) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl SubAssign for GaussRat {
    fn sub_assign(&mut self, rhs: GaussRat) {
        self.re -= rhs.re.clone();
        self.im -= rhs.im.clone();
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl MulAssign for GaussRat {
    fn mul_assign(&mut self, rhs: GaussRat) {
        let out = self.clone() * rhs;
        *self = out;
    }
}

impl Mul<&GaussRat> for &GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        self.clone() * rhs.clone()
    }
}

/// Polynomial in one variable with Gaussian-rational coefficients, ascending
/// degree. Only the ring operations needed by the exact j-inner identity are
/// provided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussPoly(pub Vec<GaussRat>);

impl GaussPoly {
    pub fn zero() -> Self {
        GaussPoly(vec![])
    }

    pub fn constant(c: GaussRat) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            GaussPoly(vec![c])
        }
    }

    pub fn coeff(&self, k: usize) -> GaussRat {
        self.0.get(k).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    fn trim(mut self) -> Self {
        while matches!(self.0.last(), Some(c) if c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, rhs: &GaussPoly) -> GaussPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        GaussPoly(out).trim()
    }

    pub fn mul(&self, rhs: &GaussPoly) -> GaussPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return GaussPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GaussPoly(out).trim()
    }

    /// Coefficientwise conjugate (does not reverse; used for the `W*(t)`
    /// Laurent expansion where `conj(t) = 1/t` is handled by the caller).
    pub fn conj(&self) -> GaussPoly {
        GaussPoly(self.0.iter().map(|c| c.conj()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7));
        assert_eq!(parse_rat("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_none());
    }

    #[test]
    fn rat_string_round() {
        assert_eq!(rat_string(&ratio(3, 4)), "3/4");
        assert_eq!(rat_string(&rat(5)), "5");
    }

    #[test]
    fn gauss_mul() {
        let i = GaussRat::new(rat(0), rat(1));
        let z = i.clone() * i;
        assert_eq!(z, GaussRat::from_int(-1));
    }

    #[test]
    fn poly_mul_matches_hand_expansion() {
        // (1 + z)(1 - z) = 1 - z^2
        let p = GaussPoly(vec![GaussRat::one(), GaussRat::one()]);
        let q = GaussPoly(vec![GaussRat::one(), GaussRat::from_int(-1)]);
        let r = p.mul(&q);
        assert_eq!(r.coeff(0), GaussRat::one());
        assert!(r.coeff(1).is_zero());
        assert_eq!(r.coeff(2), GaussRat::from_int(-1));
    }
}
