//! Real polynomials with exact rational coefficients: arithmetic, euclidean
//! gcd, square-free decomposition, and Sturm-sequence root counting.

use super::AlgebraError;
use crate::exact::rat_to_f64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Interval endpoint for root counting.
#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    NegInf,
    Value(BigRational),
    PosInf,
}

/// Polynomial with exact rational coefficients, ascending degree. The zero
/// polynomial is the empty coefficient list.
#[derive(Clone, PartialEq, Eq)]
pub struct RealPoly {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealPoly{:?}", self.coeffs.iter().map(crate::exact::rat_string).collect::<Vec<_>>())
    }
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        RealPoly { coeffs }
    }

    pub fn zero() -> Self {
        RealPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        RealPoly { coeffs: vec![BigRational::one()] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// Monomial c * t^k.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        RealPoly { coeffs: v }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| crate::exact::rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn sub(&self, rhs: &RealPoly) -> RealPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RealPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }

    pub fn neg(&self) -> RealPoly {
        RealPoly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn mul(&self, rhs: &RealPoly) -> RealPoly {
        if self.is_zero() || rhs.is_zero() {
            return RealPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    pub fn scale(&self, s: &BigRational) -> RealPoly {
        RealPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> RealPoly {
        if self.coeffs.len() <= 1 {
            return RealPoly::zero();
        }
        RealPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg rhs.
    pub fn div_rem(&self, rhs: &RealPoly) -> (RealPoly, RealPoly) {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let d = rhs.degree().unwrap();
        let lead = rhs.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (RealPoly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1;
            let q = &rem[k] / &lead;
            if !q.is_zero() {
                quot[k - d] = q.clone();
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    let upd = &q * b;
                    rem[k - d + j] -= upd;
                }
            }
            rem.pop();
            while matches!(rem.last(), Some(c) if c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (RealPoly::new(quot), RealPoly::new(rem))
    }

    /// Monic gcd by the euclidean algorithm, exact.
    pub fn gcd(&self, rhs: &RealPoly) -> RealPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(BigRational::one() / lead))
    }

    /// p / gcd(p, p'), the radical: same roots, all simple.
    pub fn square_free_part(&self) -> RealPoly {
        if self.is_zero() {
            return RealPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        q
    }

    /// Yun square-free decomposition: p = lead * prod f_i^i with the f_i
    /// monic, square-free, pairwise coprime.
    pub fn square_free_decomposition(&self) -> Vec<SquareFreeFactor> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let mut a = self.clone();
        let lead = a.leading().unwrap().clone();
        a = a.scale(&(BigRational::one() / lead));
        let da = a.derivative();
        let mut g = a.gcd(&da);
        let (mut b, _) = a.div_rem(&g);
        let (mut c, _) = da.div_rem(&g);
        let mut i = 1usize;
        loop {
            let d = c.sub(&b.derivative());
            if d.is_zero() {
                if b.degree().unwrap_or(0) >= 1 {
                    out.push(SquareFreeFactor { factor: b, multiplicity: i });
                }
                break;
            }
            g = b.gcd(&d);
            if g.degree().unwrap_or(0) >= 1 {
                out.push(SquareFreeFactor { factor: g.clone(), multiplicity: i });
            }
            let (nb, _) = b.div_rem(&g);
            let (nc, _) = d.div_rem(&g);
            b = nb;
            c = nc;
            i += 1;
            if b.degree() == Some(0) {
                break;
            }
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SquareFreeFactor {
    pub factor: RealPoly,
    pub multiplicity: usize,
}

/// Sign of the polynomial at an extended-real point; zeros report 0.
fn sign_at(p: &RealPoly, x: &Bound) -> i8 {
    if p.is_zero() {
        return 0;
    }
    match x {
        Bound::Value(v) => {
            let y = p.eval(v);
            if y.is_zero() {
                0
            } else if y.is_positive() {
                1
            } else {
                -1
            }
        }
        Bound::PosInf => {
            let l = p.leading().unwrap();
            if l.is_positive() {
                1
            } else {
                -1
            }
        }
        Bound::NegInf => {
            let l = p.leading().unwrap();
            let deg = p.degree().unwrap();
            let s = if l.is_positive() { 1 } else { -1 };
            if deg % 2 == 0 {
                s
            } else {
                -s
            }
        }
    }
}

fn sign_variations(chain: &[RealPoly], x: &Bound) -> usize {
    let mut count = 0usize;
    let mut prev = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Number of distinct real roots of `p` in the half-open interval (lo, hi],
/// exact rational arithmetic throughout.
pub fn sturm_real_root_count(p: &RealPoly, lo: &Bound, hi: &Bound) -> Result<usize, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let sf = p.square_free_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    let va = sign_variations(&chain, lo);
    let vb = sign_variations(&chain, hi);
    Ok(va.saturating_sub(vb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    #[test]
    fn no_real_roots_for_t2_plus_1() {
        let p = RealPoly::from_i64(&[1, 0, 1]);
        assert_eq!(sturm_real_root_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
    }

    #[test]
    fn cubic_t3_minus_t_has_three() {
        let p = RealPoly::from_i64(&[0, -1, 0, 1]);
        assert_eq!(sturm_real_root_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 3);
    }

    #[test]
    fn double_root_counted_once() {
        // (t-1)^2
        let p = RealPoly::from_i64(&[1, -2, 1]);
        assert_eq!(sturm_real_root_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap(), 1);
    }

    #[test]
    fn half_open_convention() {
        // t(t-1): roots 0 and 1; (0, 1] holds exactly the root at 1.
        let p = RealPoly::from_i64(&[0, -1, 0]).add(&RealPoly::from_i64(&[0, 0, 1]));
        let zero = Bound::Value(rat(0));
        let one = Bound::Value(rat(1));
        assert_eq!(sturm_real_root_count(&p, &zero, &one).unwrap(), 1);
        assert_eq!(sturm_real_root_count(&p, &Bound::NegInf, &zero).unwrap(), 1);
        assert_eq!(
            sturm_real_root_count(&p, &Bound::Value(ratio(1, 2)), &Bound::PosInf).unwrap(),
            1
        );
    }

    #[test]
    fn div_rem_exact() {
        let a = RealPoly::from_i64(&[2, 0, -3, 1]);
        let b = RealPoly::from_i64(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(a, q.mul(&b).add(&r));
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^2 (t^2+4): square-free chain restores degrees
        let p = RealPoly::from_i64(&[1, -2, 1]).mul(&RealPoly::from_i64(&[4, 0, 1]));
        let d = p.square_free_decomposition();
        let total: usize = d
            .iter()
            .map(|f| f.multiplicity * f.factor.degree().unwrap())
            .sum();
        assert_eq!(total, 4);
        let m2: Vec<_> = d.iter().filter(|f| f.multiplicity == 2).collect();
        assert_eq!(m2.len(), 1);
        assert_eq!(m2[0].factor, RealPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let a = RealPoly::from_i64(&[1, 1]);
        let b = RealPoly::from_i64(&[2, 1]);
        assert_eq!(a.gcd(&b), RealPoly::one());
    }
}
