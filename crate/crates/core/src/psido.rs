//! Exact formal pseudodifferential calculus: Laurent series in D whose
//! coefficients are differential polynomials in a single potential q and its
//! derivatives, multiplied via Da = aD + a' and the infinite expansion of
//! D^{-1}a, with n-th roots, fractional powers, commutators, and the KdV
//! Lax-pair computation. All arithmetic is rational and exact.

use crate::exact::{rat, rat_string};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Hard cap on the derivative order u_i; beyond this the calculus refuses to
/// grow rather than allocate unboundedly.
pub const INDETERMINATE_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsidoError {
    #[error("requested floor {floor} exceeds the product top degree {top}")]
    FloorTooHigh { floor: i64, top: i64 },
    #[error("operator top coefficient must be the constant 1")]
    NotMonic,
    #[error("root denominator {den} does not divide the top degree {top}")]
    DegreeNotDivisible { den: i64, top: i64 },
    #[error("input commutator [p, f{which}] does not vanish above the floor")]
    HypothesisViolated { which: u8 },
    #[error("derivative order exceeded the u_{cap} cap", cap = INDETERMINATE_CAP)]
    IndexOverflow,
    #[error("operator expression parse error: {0}")]
    Parse(String),
}

/// Monomial in u_0, u_1, ...: exponent vector with trailing zeros trimmed.
type Monomial = Vec<u32>;

/// Differential polynomial: exact-rational polynomial in the indeterminates
/// u_i (u_i stands for the i-th derivative of the potential), with the
/// derivation du_i = u_{i+1} extended by the Leibniz rule.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![], c);
        }
        DiffPoly { terms }
    }

    /// The indeterminate u_i.
    pub fn u(i: usize) -> Self {
        let mut mono = vec![0u32; i + 1];
        mono[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigRational::one());
        DiffPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    fn insert(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn scale(&self, s: &BigRational) -> DiffPoly {
        if s.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn mul(&self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut mono = vec![0u32; ma.len().max(mb.len())];
                for (k, e) in ma.iter().enumerate() {
                    mono[k] += e;
                }
                for (k, e) in mb.iter().enumerate() {
                    mono[k] += e;
                }
                out.insert(mono, ca * cb);
            }
        }
        out
    }

    /// The derivation: du_i = u_{i+1}, extended by Leibniz.
    pub fn derivative(&self) -> Result<DiffPoly, PsidoError> {
        let mut out = DiffPoly::zero();
        for (mono, c) in &self.terms {
            for (i, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if i + 1 >= INDETERMINATE_CAP {
                    return Err(PsidoError::IndexOverflow);
                }
                let mut m = mono.clone();
                m[i] -= 1;
                if m.len() < i + 2 {
                    m.resize(i + 2, 0);
                }
                m[i + 1] += 1;
                while matches!(m.last(), Some(0)) {
                    m.pop();
                }
                out.insert(m, c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    fn mono_string(mono: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in mono.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("u{i}")),
                _ => parts.push(format!("u{i}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for DiffPoly {
    /// Canonical form, e.g. `(1/4)*u3 + (3/2)*u0*u1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in &self.terms {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let ms = Self::mono_string(mono);
            if ms.is_empty() {
                write!(f, "{}", coeff_str(&mag))?;
            } else if mag.is_one() {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{}*{ms}", coeff_str(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn coeff_str(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("({})", rat_string(c))
    }
}

/// Formal Laurent operator: finitely many powers of D from `floor` up to the
/// top degree, with differential-polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentOp {
    coeffs: BTreeMap<i64, DiffPoly>,
    floor: i64,
}

impl LaurentOp {
    pub fn zero(floor: i64) -> Self {
        LaurentOp { coeffs: BTreeMap::new(), floor }
    }

    pub fn one() -> Self {
        Self::from_term(0, DiffPoly::one())
    }

    /// D to the given power.
    pub fn d_pow(k: i64) -> Self {
        Self::from_term(k, DiffPoly::one())
    }

    pub fn from_term(degree: i64, coeff: DiffPoly) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(degree, coeff);
        }
        LaurentOp { coeffs, floor: degree.min(0) }
    }

    /// The Sturm-Liouville operator D^2 + u0.
    pub fn sturm_liouville() -> Self {
        LaurentOp::d_pow(2).add(&LaurentOp::from_term(0, DiffPoly::u(0)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest degree with nonzero coefficient.
    pub fn top_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn coeff(&self, degree: i64) -> DiffPoly {
        self.coeffs.get(&degree).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (i64, &DiffPoly)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn with_floor(mut self, floor: i64) -> Self {
        self.coeffs.retain(|&k, _| k >= floor);
        self.floor = floor;
        self
    }

    fn set(&mut self, degree: i64, coeff: DiffPoly) {
        if coeff.is_zero() {
            self.coeffs.remove(&degree);
        } else {
            self.coeffs.insert(degree, coeff);
        }
    }

    fn accumulate(&mut self, degree: i64, coeff: &DiffPoly) {
        if coeff.is_zero() || degree < self.floor {
            return;
        }
        let cur = self.coeff(degree).add(coeff);
        self.set(degree, cur);
    }

    pub fn add(&self, rhs: &LaurentOp) -> LaurentOp {
        let floor = self.floor.min(rhs.floor);
        let mut out = LaurentOp::zero(floor);
        for (&k, c) in &self.coeffs {
            out.accumulate(k, c);
        }
        for (&k, c) in &rhs.coeffs {
            out.accumulate(k, c);
        }
        out
    }

    pub fn sub(&self, rhs: &LaurentOp) -> LaurentOp {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LaurentOp {
        LaurentOp {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c.neg())).collect(),
            floor: self.floor,
        }
    }

    pub fn scale(&self, s: &BigRational) -> LaurentOp {
        if s.is_zero() {
            return LaurentOp::zero(self.floor);
        }
        LaurentOp {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, c.scale(s))).collect(),
            floor: self.floor,
        }
    }

    /// True when every coefficient is a rational constant.
    pub fn has_constant_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| c.is_constant())
    }
}

impl fmt::Display for LaurentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (&k, c) in self.coeffs.iter().rev() {
            let d = match k {
                0 => String::new(),
                1 => "D".into(),
                _ => format!("D^{k}"),
            };
            let cs = format!("{c}");
            let term = if d.is_empty() {
                format!("({cs})")
            } else if cs == "1" {
                d
            } else {
                format!("({cs})*{d}")
            };
            parts.push(term);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for LaurentOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [floor {}]", self.floor)
    }
}

/// Generalized binomial coefficient C(j, i) for integer j (any sign), i >= 0.
fn gen_binom(j: i64, i: u64) -> BigRational {
    let mut num = BigInt::one();
    for t in 0..i {
        num *= BigInt::from(j - t as i64);
    }
    let mut den = BigInt::one();
    for t in 1..=i {
        den *= BigInt::from(t);
    }
    BigRational::new(num, den)
}

/// Associative product truncated at `floor`, via D^j a = sum_i C(j,i) a^(i)
/// D^{j-i}. Exact for every output degree at or above the floor.
pub fn op_mul(f: &LaurentOp, g: &LaurentOp, floor: i64) -> Result<LaurentOp, PsidoError> {
    let top = match (f.top_degree(), g.top_degree()) {
        (Some(a), Some(b)) => a + b,
        // Zero operand: product is zero at any floor.
        _ => return Ok(LaurentOp::zero(floor)),
    };
    if floor > top {
        return Err(PsidoError::FloorTooHigh { floor, top });
    }
    let mut out = LaurentOp::zero(floor);
    for (j, a) in f.coeffs() {
        for (k, b) in g.coeffs() {
            // Output degree j + k - i >= floor limits the Leibniz depth.
            let max_i = j + k - floor;
            if max_i < 0 {
                continue;
            }
            let mut deriv = b.clone();
            for i in 0..=max_i as u64 {
                if i > 0 {
                    deriv = deriv.derivative()?;
                    if deriv.is_zero() {
                        break;
                    }
                }
                let c = gen_binom(j, i);
                if c.is_zero() {
                    continue; // positive j: Leibniz terminates at i = j
                }
                let term = a.mul(&deriv).scale(&c);
                out.accumulate(j + k - i as i64, &term);
            }
        }
    }
    Ok(out)
}

/// Splitting half for [`truncate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Degrees 0..=top (a differential operator).
    Positive,
    /// Degrees strictly below zero.
    Negative,
}

/// Exact split; the two parts sum back to the operator.
pub fn truncate(f: &LaurentOp, part: Part) -> LaurentOp {
    let mut out = LaurentOp::zero(f.floor());
    for (k, c) in f.coeffs() {
        let keep = match part {
            Part::Positive => k >= 0,
            Part::Negative => k < 0,
        };
        if keep {
            out.accumulate(k, c);
        }
    }
    if part == Part::Positive {
        out.floor = 0.min(out.top_degree().unwrap_or(0));
    }
    out
}

/// [a, b] = ab - ba, truncated at `floor`.
pub fn commutator(a: &LaurentOp, b: &LaurentOp, floor: i64) -> Result<LaurentOp, PsidoError> {
    let ab = op_mul(a, b, floor)?;
    let ba = op_mul(b, a, floor)?;
    Ok(ab.sub(&ba))
}

/// Guard depth: internal products run this many degrees below the requested
/// floor to absorb cascade truncation, then re-truncate.
const GUARD: i64 = 4;

/// Multiplicative inverse of a monic operator, truncated at `floor`.
pub fn op_inverse(f: &LaurentOp, floor: i64) -> Result<LaurentOp, PsidoError> {
    let top = f.top_degree().ok_or(PsidoError::NotMonic)?;
    if f.coeff(top) != DiffPoly::one() {
        return Err(PsidoError::NotMonic);
    }
    let work = floor - GUARD;
    let mut inv = LaurentOp::zero(work);
    inv.accumulate(-top, &DiffPoly::one());
    // Kill the top of the residual 1 - f*inv one degree at a time.
    loop {
        let prod = op_mul(f, &inv, work + top.min(0))?;
        let residual = LaurentOp::one().with_floor(work + top.min(0)).sub(&prod);
        match residual.top_degree() {
            None => break,
            Some(t) if t - top < work => break,
            Some(t) => {
                let corr = residual.coeff(t);
                inv.accumulate(t - top, &corr);
            }
        }
    }
    Ok(inv.with_floor(floor))
}

/// num/den-th power of a monic operator. The den-th root is solved
/// recursively and verified by re-multiplication; negative `num` goes through
/// the inverse.
pub fn power(f: &LaurentOp, num: i64, den: i64, floor: i64) -> Result<LaurentOp, PsidoError> {
    assert!(den > 0, "den must be positive");
    let top = f.top_degree().ok_or(PsidoError::NotMonic)?;
    if f.coeff(top) != DiffPoly::one() {
        return Err(PsidoError::NotMonic);
    }
    if top % den != 0 {
        return Err(PsidoError::DegreeNotDivisible { den, top });
    }
    if num == 0 {
        return Ok(LaurentOp::one().with_floor(floor));
    }
    let reps = num.unsigned_abs();
    // Truncating the root pollutes product degrees up to (reps-1) root-tops
    // above its floor, so deepen the working floor accordingly.
    let extra = (reps as i64 - 1) * (top / den).max(0);
    let deep = floor.min(0) - GUARD - extra;
    let root = if den == 1 { f.clone() } else { nth_root(f, den, deep)? };
    let base = if num < 0 { op_inverse(&root, deep)? } else { root };
    let mut acc = base.clone();
    for _ in 1..reps {
        acc = op_mul(&acc, &base, deep)?;
    }
    Ok(acc.with_floor(floor))
}

/// Solves R with R^den = f down to `floor`, for monic f.
fn nth_root(f: &LaurentOp, den: i64, floor: i64) -> Result<LaurentOp, PsidoError> {
    let top = f.top_degree().unwrap();
    let m = top / den;
    let mut r = LaurentOp::zero(floor);
    r.accumulate(m, &DiffPoly::one());
    let den_rat = rat(den);
    // Chained products promote discarded terms up by the factor top degree,
    // so intermediates run deeper than the floor being solved.
    let chain_floor = floor - (den - 2).max(0) * m.max(0);
    loop {
        let mut pow = r.clone();
        for _ in 1..den {
            pow = op_mul(&pow, &r, chain_floor)?;
        }
        let err = f.clone().with_floor(floor).sub(&pow.with_floor(floor));
        match err.top_degree() {
            None => break,
            Some(t) => {
                // Leading correction: adding e/den * D^{t-(den-1)m} cancels
                // the top error term e * D^t.
                let rho = t - (den - 1) * m;
                if rho < floor {
                    break;
                }
                let corr = err.coeff(t).scale(&(BigRational::one() / &den_rat));
                r.accumulate(rho, &corr);
            }
        }
    }
    Ok(r)
}

/// Schur commutant check: given that [p, f1] and [p, f2] vanish down to
/// `floor`, reports whether [f1, f2] vanishes down to `floor` as well.
pub fn commutant_check(
    p: &LaurentOp,
    f1: &LaurentOp,
    f2: &LaurentOp,
    floor: i64,
) -> Result<bool, PsidoError> {
    if !commutator(p, f1, floor)?.is_zero() {
        return Err(PsidoError::HypothesisViolated { which: 1 });
    }
    if !commutator(p, f2, floor)?.is_zero() {
        return Err(PsidoError::HypothesisViolated { which: 2 });
    }
    Ok(commutator(f1, f2, floor)?.is_zero())
}

/// The KdV right-hand side: the commutator of the positive part of L^{3/2}
/// with L = D^2 + u0, an order-zero operator.
pub fn kdv_commutator() -> Result<DiffPoly, PsidoError> {
    let l = LaurentOp::sturm_liouville();
    let l32 = power(&l, 3, 2, -1)?;
    let a = truncate(&l32, Part::Positive);
    let com = commutator(&a, &l, -2)?;
    debug_assert_eq!(com.top_degree(), Some(0));
    Ok(com.coeff(0))
}

mod parse {
    //! Tiny operator-expression grammar: `D^k`, `u<i>`, `+`, `-`, `*`,
    //! rational literals, parentheses.

    use super::*;

    pub struct Parser<'a> {
        src: &'a [u8],
        pos: usize,
    }

    impl<'a> Parser<'a> {
        pub fn new(src: &'a str) -> Self {
            Parser { src: src.as_bytes(), pos: 0 }
        }

        fn skip_ws(&mut self) {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }

        fn peek(&mut self) -> Option<u8> {
            self.skip_ws();
            self.src.get(self.pos).copied()
        }

        fn bump(&mut self) -> Option<u8> {
            let c = self.peek()?;
            self.pos += 1;
            Some(c)
        }

        fn integer(&mut self) -> Result<i64, PsidoError> {
            self.skip_ws();
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(PsidoError::Parse("expected integer".into()));
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let v: i64 = s.parse().map_err(|_| PsidoError::Parse("integer overflow".into()))?;
            Ok(if neg { -v } else { v })
        }

        pub fn expr(&mut self) -> Result<LaurentOp, PsidoError> {
            let mut acc = self.term()?;
            loop {
                match self.peek() {
                    Some(b'+') => {
                        self.bump();
                        acc = acc.add(&self.term()?);
                    }
                    Some(b'-') => {
                        self.bump();
                        acc = acc.sub(&self.term()?);
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<LaurentOp, PsidoError> {
            let mut acc = self.factor()?;
            while self.peek() == Some(b'*') {
                self.bump();
                let rhs = self.factor()?;
                // Expressions compose finitely many finite-support operators,
                // so the natural floor is the sum of the operand floors.
                let floor = acc.floor().min(0) + rhs.floor().min(0);
                acc = op_mul(&acc, &rhs, floor)?;
            }
            Ok(acc)
        }

        fn factor(&mut self) -> Result<LaurentOp, PsidoError> {
            match self.peek() {
                Some(b'(') => {
                    self.bump();
                    let e = self.expr()?;
                    if self.bump() != Some(b')') {
                        return Err(PsidoError::Parse("expected ')'".into()));
                    }
                    Ok(e)
                }
                Some(b'-') => {
                    self.bump();
                    Ok(self.factor()?.neg())
                }
                Some(b'D') => {
                    self.bump();
                    if self.peek() == Some(b'^') {
                        self.bump();
                        let k = self.integer()?;
                        Ok(LaurentOp::d_pow(k))
                    } else {
                        Ok(LaurentOp::d_pow(1))
                    }
                }
                Some(b'u') => {
                    self.bump();
                    let i = self.integer()?;
                    if i < 0 || i as usize >= INDETERMINATE_CAP {
                        return Err(PsidoError::Parse(format!("u index {i} out of range")));
                    }
                    Ok(LaurentOp::from_term(0, DiffPoly::u(i as usize)))
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = self.integer()?;
                    let r = if self.peek() == Some(b'/') {
                        self.bump();
                        let d = self.integer()?;
                        if d == 0 {
                            return Err(PsidoError::Parse("zero denominator".into()));
                        }
                        BigRational::new(BigInt::from(n), BigInt::from(d))
                    } else {
                        rat(n)
                    };
                    Ok(LaurentOp::from_term(0, DiffPoly::constant(r)))
                }
                other => Err(PsidoError::Parse(format!("unexpected token {other:?}"))),
            }
        }

        pub fn finish(&mut self, op: LaurentOp) -> Result<LaurentOp, PsidoError> {
            if self.peek().is_some() {
                return Err(PsidoError::Parse("trailing input".into()));
            }
            Ok(op)
        }
    }
}

/// Parses an operator expression such as `D^2 + u0` or `(1/2)*u1*D^-1`.
pub fn parse_operator(src: &str) -> Result<LaurentOp, PsidoError> {
    let mut p = parse::Parser::new(src);
    let e = p.expr()?;
    p.finish(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn u(i: usize) -> DiffPoly {
        DiffPoly::u(i)
    }

    #[test]
    fn d_times_potential() {
        // D u0 = u0 D + u1
        let d = LaurentOp::d_pow(1);
        let q = LaurentOp::from_term(0, u(0));
        let prod = op_mul(&d, &q, 0).unwrap();
        assert_eq!(prod.coeff(1), u(0));
        assert_eq!(prod.coeff(0), u(1));
    }

    #[test]
    fn inverse_derivative_expansion() {
        // D^{-1} u0 = u0 D^{-1} - u1 D^{-2} + u2 D^{-3} ...
        let dinv = LaurentOp::d_pow(-1);
        let q = LaurentOp::from_term(0, u(0));
        let prod = op_mul(&dinv, &q, -3).unwrap();
        assert_eq!(prod.coeff(-1), u(0));
        assert_eq!(prod.coeff(-2), u(1).neg());
        assert_eq!(prod.coeff(-3), u(2));
    }

    #[test]
    fn hand_expanded_product() {
        // (D + u0)(D - u0) = D^2 - (u1 + u0^2)
        let a = LaurentOp::d_pow(1).add(&LaurentOp::from_term(0, u(0)));
        let b = LaurentOp::d_pow(1).sub(&LaurentOp::from_term(0, u(0)));
        let prod = op_mul(&a, &b, 0).unwrap();
        assert_eq!(prod.coeff(2), DiffPoly::one());
        assert!(prod.coeff(1).is_zero());
        assert_eq!(prod.coeff(0), u(1).add(&u(0).mul(&u(0))).neg());
    }

    #[test]
    fn square_root_coefficients() {
        // Printed coefficients of L^{1/2} for L = D^2 + u0.
        let l = LaurentOp::sturm_liouville();
        let r = power(&l, 1, 2, -4).unwrap();
        assert_eq!(r.coeff(1), DiffPoly::one());
        assert!(r.coeff(0).is_zero());
        assert_eq!(r.coeff(-1), u(0).scale(&ratio(1, 2)));
        assert_eq!(r.coeff(-2), u(1).scale(&ratio(-1, 4)));
        assert_eq!(
            r.coeff(-3),
            u(2).scale(&ratio(1, 8)).sub(&u(0).mul(&u(0)).scale(&ratio(1, 8)))
        );
        assert_eq!(
            r.coeff(-4),
            u(3).scale(&ratio(-1, 16)).add(&u(0).mul(&u(1)).scale(&ratio(3, 8)))
        );
    }

    #[test]
    fn three_halves_coefficients() {
        let l = LaurentOp::sturm_liouville();
        let t = power(&l, 3, 2, -1).unwrap();
        assert_eq!(t.coeff(3), DiffPoly::one());
        assert!(t.coeff(2).is_zero());
        assert_eq!(t.coeff(1), u(0).scale(&ratio(3, 2)));
        assert_eq!(t.coeff(0), u(1).scale(&ratio(3, 4)));
        assert_eq!(
            t.coeff(-1),
            u(2).scale(&ratio(1, 8)).add(&u(0).mul(&u(0)).scale(&ratio(3, 8)))
        );
    }

    #[test]
    fn positive_part_of_sqrt_is_d() {
        let l = LaurentOp::sturm_liouville();
        let r = power(&l, 1, 2, -4).unwrap();
        let pos = truncate(&r, Part::Positive);
        assert_eq!(pos, LaurentOp::d_pow(1));
        let dinv = LaurentOp::d_pow(-1);
        assert!(truncate(&dinv, Part::Positive).is_zero());
    }

    #[test]
    fn split_reassembles() {
        let l = power(&LaurentOp::sturm_liouville(), 3, 2, -5).unwrap();
        let re = truncate(&l, Part::Positive).add(&truncate(&l, Part::Negative));
        assert_eq!(re, l);
    }

    #[test]
    fn transport_commutator() {
        // [D, L] = u1 for L = D^2 + u0
        let l = LaurentOp::sturm_liouville();
        let c = commutator(&LaurentOp::d_pow(1), &l, 0).unwrap();
        assert_eq!(c.coeff(0), u(1));
        assert_eq!(c.top_degree(), Some(0));
        assert!(commutator(&l, &l, -3).unwrap().is_zero());
    }

    #[test]
    fn kdv_exact() {
        let rhs = kdv_commutator().unwrap();
        let expect = u(3).scale(&ratio(1, 4)).add(&u(0).mul(&u(1)).scale(&ratio(3, 2)));
        assert_eq!(rhs, expect);
        assert_eq!(format!("{rhs}"), "(1/4)*u3 + (3/2)*u0*u1");
    }

    #[test]
    fn power_one_is_identity_map() {
        let l = LaurentOp::sturm_liouville();
        let p = power(&l, 1, 1, -2).unwrap();
        assert_eq!(p, l.clone().with_floor(-2));
    }

    #[test]
    fn root_remultiplies() {
        for den in [2i64, 3] {
            let base = LaurentOp::d_pow(den).add(&LaurentOp::from_term(0, u(0)));
            let floor = -4;
            // Intermediate products run below the target floor so the final
            // truncation is exact.
            let chain = floor - GUARD;
            let r = power(&base, 1, den, chain - GUARD).unwrap();
            let mut pow = r.clone();
            for _ in 1..den {
                pow = op_mul(&pow, &r, chain).unwrap();
            }
            assert_eq!(pow.with_floor(floor), base.clone().with_floor(floor));
        }
    }

    #[test]
    fn inverse_recovers_one() {
        let l = LaurentOp::sturm_liouville();
        let inv = op_inverse(&l, -6).unwrap();
        let prod = op_mul(&l, &inv, -4).unwrap();
        assert_eq!(prod, LaurentOp::one().with_floor(-4));
    }

    #[test]
    fn commutant_of_half_powers() {
        let l = LaurentOp::sturm_liouville();
        let f1 = power(&l, 1, 2, -8).unwrap();
        let f2 = power(&l, 3, 2, -8).unwrap();
        let ok = commutant_check(&l, &f1, &f2, -2).unwrap();
        assert!(ok);
    }

    #[test]
    fn constant_coefficient_operators_commute() {
        let p = LaurentOp::d_pow(2);
        let f1 = LaurentOp::d_pow(1);
        let f2 = LaurentOp::d_pow(3).add(&LaurentOp::from_term(0, DiffPoly::constant(ratio(7, 3))));
        assert!(commutant_check(&p, &f1, &f2, -4).unwrap());
    }

    #[test]
    fn floor_too_high_rejected() {
        let l = LaurentOp::sturm_liouville();
        let err = op_mul(&l, &l, 5).unwrap_err();
        assert!(matches!(err, PsidoError::FloorTooHigh { floor: 5, top: 4 }));
    }

    #[test]
    fn parser_round_trip() {
        let op = parse_operator("D^2 + u0").unwrap();
        assert_eq!(op, LaurentOp::sturm_liouville());
        let op = parse_operator("(1/2)*u1*D^-1 - 3").unwrap();
        assert_eq!(op.coeff(-1), u(1).scale(&ratio(1, 2)));
        assert_eq!(op.coeff(0), DiffPoly::constant(rat(-3)));
        assert!(parse_operator("D^").is_err());
        assert!(parse_operator("u0 u1").is_err());
    }

    #[test]
    fn display_canonical_ordering() {
        let p = u(2).scale(&ratio(1, 8)).sub(&u(0).mul(&u(0)).scale(&ratio(1, 8)));
        assert_eq!(format!("{p}"), "(1/8)*u2 - (1/8)*u0^2");
    }
}
