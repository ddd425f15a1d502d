//! Multiplier sequences acting coefficientwise on real polynomials, the four
//! classical composition transforms, non-real root counting over exact
//! rationals, sign-change counting, total positivity by minor enumeration,
//! and variation-diminishing checks.

use crate::algebra::{sturm_real_root_count, AlgebraError, Bound, RealPoly};
use crate::exact::{parse_rat, rat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyaError {
    #[error("the zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("minor enumeration budget exceeded: {0} determinants requested")]
    BudgetExceeded(u128),
    #[error("polynomial expression parse error: {0}")]
    Parse(String),
}

impl From<AlgebraError> for PolyaError {
    fn from(e: AlgebraError) -> Self {
        debug_assert!(matches!(e, AlgebraError::ZeroPolynomial));
        PolyaError::ZeroPolynomial
    }
}

/// Number of non-real roots counted with multiplicity: degree minus the real
/// count folded through the square-free decomposition.
pub fn nonreal_count(p: &RealPoly) -> Result<usize, PolyaError> {
    if p.is_zero() {
        return Err(PolyaError::ZeroPolynomial);
    }
    let deg = p.degree().unwrap();
    if deg == 0 {
        return Ok(0);
    }
    let mut real_with_mult = 0usize;
    for f in p.square_free_decomposition() {
        let distinct = sturm_real_root_count(&f.factor, &Bound::NegInf, &Bound::PosInf)?;
        real_with_mult += f.multiplicity * distinct;
    }
    Ok(deg - real_with_mult)
}

/// The four composition transforms. Hypotheses on root locations are not
/// enforced; the theorems are the tested properties, and violating inputs
/// are allowed for counterexample exploration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComposeMode {
    /// Q(d/dt) applied to P.
    Hermite,
    /// sum Q(k) p_k t^k over the degree of P.
    Laguerre,
    /// sum p_k q_k t^k to the smaller degree.
    Malo,
    /// sum k! p_k q_k t^k to the smaller degree.
    Schur,
}

pub fn compose(p: &RealPoly, q: &RealPoly, mode: ComposeMode) -> RealPoly {
    match mode {
        ComposeMode::Hermite => {
            let mut acc = RealPoly::zero();
            let mut deriv = p.clone();
            for (k, qk) in q.coeffs().iter().enumerate() {
                if k > 0 {
                    deriv = deriv.derivative();
                }
                acc = acc.add(&deriv.scale(qk));
            }
            acc
        }
        ComposeMode::Laguerre => {
            let coeffs = p
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, pk)| q.eval(&rat(k as i64)) * pk)
                .collect();
            RealPoly::new(coeffs)
        }
        ComposeMode::Malo => {
            let l = p.coeffs().len().min(q.coeffs().len());
            RealPoly::new((0..l).map(|k| p.coeff(k) * q.coeff(k)).collect())
        }
        ComposeMode::Schur => {
            let l = p.coeffs().len().min(q.coeffs().len());
            let mut factorial = BigRational::one();
            let mut coeffs = Vec::with_capacity(l);
            for k in 0..l {
                if k > 0 {
                    factorial *= BigRational::from_integer(BigInt::from(k));
                }
                coeffs.push(p.coeff(k) * q.coeff(k) * &factorial);
            }
            RealPoly::new(coeffs)
        }
    }
}

/// Multiplier sequence gamma_0..gamma_m acting by p_k -> gamma_k p_k, with
/// zeros assumed beyond the stored prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierSeq {
    gammas: Vec<BigRational>,
}

impl MultiplierSeq {
    pub fn new(gammas: Vec<BigRational>) -> Self {
        assert!(!gammas.is_empty(), "multiplier sequence must be nonempty");
        MultiplierSeq { gammas }
    }

    pub fn from_i64(gammas: &[i64]) -> Self {
        Self::new(gammas.iter().map(|&g| rat(g)).collect())
    }

    pub fn gammas(&self) -> &[BigRational] {
        &self.gammas
    }

    /// Taylor multipliers of e^{alpha t} prod (1 + delta_k t): gamma_k is k!
    /// times the k-th series coefficient. With alpha and all delta_k
    /// nonnegative this is a first-type sequence.
    pub fn from_first_type(alpha: &BigRational, deltas: &[BigRational], len: usize) -> Self {
        // Series of e^{alpha t}
        let mut series = vec![BigRational::zero(); len];
        let mut term = BigRational::one();
        for (k, s) in series.iter_mut().enumerate() {
            if k > 0 {
                term = &term * alpha / BigRational::from_integer(BigInt::from(k));
            }
            *s = term.clone();
        }
        // Multiply in the linear factors (1 + delta t)
        for d in deltas {
            for k in (1..len).rev() {
                let lower = series[k - 1].clone();
                series[k] = &series[k] + lower * d;
            }
        }
        let mut factorial = BigRational::one();
        let gammas = series
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    factorial *= BigRational::from_integer(BigInt::from(k));
                }
                c * &factorial
            })
            .collect();
        MultiplierSeq { gammas }
    }
}

/// Gamma[P]: coefficientwise action of the multiplier sequence.
pub fn apply_multiplier(g: &MultiplierSeq, p: &RealPoly) -> RealPoly {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, pk)| match g.gammas.get(k) {
            Some(gk) => gk * pk,
            None => BigRational::zero(),
        })
        .collect();
    RealPoly::new(coeffs)
}

/// V[x]: sign changes with zero terms discarded.
pub fn sign_changes(x: &[f64]) -> usize {
    let mut count = 0usize;
    let mut prev = 0i8;
    for &v in x {
        let s = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            continue;
        };
        if prev != 0 && s != prev {
            count += 1;
        }
        prev = s;
    }
    count
}

/// Input for [`total_positivity`]: a plain matrix or a unilateral sequence
/// lifted to its Toeplitz section k_{p,q} = c_{p-q} (c_i = 0 for i < 0).
#[derive(Debug, Clone)]
pub enum TpInput {
    Matrix(Vec<Vec<BigRational>>),
    ToeplitzLift { c: Vec<BigRational>, size: usize },
}

impl TpInput {
    fn materialize(&self) -> Vec<Vec<BigRational>> {
        match self {
            TpInput::Matrix(m) => m.clone(),
            TpInput::ToeplitzLift { c, size } => (0..*size)
                .map(|p| {
                    (0..*size)
                        .map(|q| {
                            if p >= q {
                                c.get(p - q).cloned().unwrap_or_else(BigRational::zero)
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TotalPositivityReport {
    pub totally_positive: bool,
    pub order_checked: usize,
    pub min_minor: BigRational,
    /// Row and column index sets of a negative minor, when one exists.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    // Fraction-free would be faster; plain elimination is fine at order <= 6.
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let piv = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= a[k][k].clone();
        let inv = BigRational::one() / a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] * &inv;
            for j in k..n {
                let sub = &f * &a[k][j];
                a[i][j] -= sub;
            }
        }
    }
    det
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Enumerates all minors up to the given order and reports the minimum.
pub fn total_positivity(input: &TpInput, order: usize) -> Result<TotalPositivityReport, PolyaError> {
    let m = input.materialize();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let order = order.min(rows).min(cols);
    let mut budget: u128 = 0;
    for k in 1..=order {
        budget = budget.saturating_add(binomial(rows, k).saturating_mul(binomial(cols, k)));
    }
    if budget > 1_000_000 {
        return Err(PolyaError::BudgetExceeded(budget));
    }

    let mut min_minor: Option<BigRational> = None;
    let mut witness = None;
    for k in 1..=order {
        let mut row_sel = first_subset(k);
        loop {
            let mut col_sel = first_subset(k);
            loop {
                if col_sel.iter().all(|&c| c < cols) && row_sel.iter().all(|&r| r < rows) {
                    let sub: Vec<Vec<BigRational>> = row_sel
                        .iter()
                        .map(|&r| col_sel.iter().map(|&c| m[r][c].clone()).collect())
                        .collect();
                    let d = det_rational(&sub);
                    let neg = d.is_negative();
                    if min_minor.as_ref().is_none_or(|cur| d < *cur) {
                        min_minor = Some(d);
                        if neg {
                            witness = Some((row_sel.clone(), col_sel.clone()));
                        }
                    }
                }
                if !next_subset(&mut col_sel, cols) {
                    break;
                }
            }
            if !next_subset(&mut row_sel, rows) {
                break;
            }
        }
    }
    let min_minor = min_minor.unwrap_or_else(BigRational::zero);
    Ok(TotalPositivityReport {
        totally_positive: !min_minor.is_negative(),
        order_checked: order,
        min_minor,
        witness,
    })
}

fn first_subset(k: usize) -> Vec<usize> {
    (0..k).collect()
}

/// Advances a strictly increasing index subset in lexicographic order.
fn next_subset(sel: &mut [usize], n: usize) -> bool {
    let k = sel.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if sel[i] + 1 <= n - (k - i) {
            sel[i] += 1;
            for j in i + 1..k {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq)]
pub enum VdVerdict {
    Consistent,
    Counterexample(Vec<f64>),
}

/// Checks V[Kx] <= V[x]. Matrices with at most 12 columns are tested
/// exhaustively over sign patterns {-1, 0, 1}^q; wider matrices use
/// `trials` random patterns.
pub fn variation_diminishing_check(k: &[Vec<f64>], trials: usize, seed: u64) -> VdVerdict {
    assert!(trials >= 1);
    let q = k.first().map_or(0, |r| r.len());
    let apply = |x: &[f64]| -> Vec<f64> {
        k.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    };
    if q <= 12 {
        let total = 3usize.pow(q as u32);
        for code in 0..total {
            let mut c = code;
            let x: Vec<f64> = (0..q)
                .map(|_| {
                    let v = (c % 3) as f64 - 1.0;
                    c /= 3;
                    v
                })
                .collect();
            if sign_changes(&apply(&x)) > sign_changes(&x) {
                return VdVerdict::Counterexample(x);
            }
        }
        VdVerdict::Consistent
    } else {
        use rand::Rng;
        let mut rng = crate::par::trial_rng(seed, 0);
        for _ in 0..trials {
            let x: Vec<f64> = (0..q).map(|_| rng.gen_range(-1i8..=1) as f64).collect();
            if sign_changes(&apply(&x)) > sign_changes(&x) {
                return VdVerdict::Counterexample(x);
            }
        }
        VdVerdict::Consistent
    }
}

mod parse {
    //! Polynomial grammar over exact rationals: coefficients, `t`, `^`, `+`,
    //! `-`, `*`, parentheses.

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

        pub fn expr(&mut self) -> Result<RealPoly, PolyaError> {
            let mut acc = match self.peek() {
                Some(b'-') => {
                    self.pos += 1;
                    self.term()?.neg()
                }
                _ => self.term()?,
            };
            loop {
                match self.peek() {
                    Some(b'+') => {
                        self.pos += 1;
                        acc = acc.add(&self.term()?);
                    }
                    Some(b'-') => {
                        self.pos += 1;
                        acc = acc.sub(&self.term()?);
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn term(&mut self) -> Result<RealPoly, PolyaError> {
            let mut acc = self.power()?;
            loop {
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        acc = acc.mul(&self.power()?);
                    }
                    // Implicit product as in `2t` or `(t+1)(t-1)`.
                    Some(b'(') | Some(b't') => {
                        acc = acc.mul(&self.power()?);
                    }
                    _ => return Ok(acc),
                }
            }
        }

        fn power(&mut self) -> Result<RealPoly, PolyaError> {
            let base = self.atom()?;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                let e = self.unsigned_integer()?;
                let mut acc = RealPoly::one();
                for _ in 0..e {
                    acc = acc.mul(&base);
                }
                return Ok(acc);
            }
            Ok(base)
        }

        fn atom(&mut self) -> Result<RealPoly, PolyaError> {
            match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    let e = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(PolyaError::Parse("expected ')'".into()));
                    }
                    self.pos += 1;
                    Ok(e)
                }
                Some(b't') => {
                    self.pos += 1;
                    Ok(RealPoly::monomial(BigRational::one(), 1))
                }
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    Ok(RealPoly::constant(r))
                }
                other => Err(PolyaError::Parse(format!("unexpected token {other:?}"))),
            }
        }

        fn unsigned_integer(&mut self) -> Result<usize, PolyaError> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(PolyaError::Parse("expected exponent".into()));
            }
            std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| PolyaError::Parse("exponent overflow".into()))
        }

        fn rational(&mut self) -> Result<BigRational, PolyaError> {
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len()
                && (self.src[self.pos].is_ascii_digit()
                    || self.src[self.pos] == b'/'
                    || self.src[self.pos] == b'.')
            {
                self.pos += 1;
            }
            let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            parse_rat(s).ok_or_else(|| PolyaError::Parse(format!("bad coefficient `{s}`")))
        }

        pub fn finish(&mut self, p: RealPoly) -> Result<RealPoly, PolyaError> {
            if self.peek().is_some() {
                return Err(PolyaError::Parse("trailing input".into()));
            }
            Ok(p)
        }
    }
}

/// Parses e.g. `t^2+t-2`, `(t+1)^2`, or `1/2 t^3 - 3`.
pub fn parse_poly(src: &str) -> Result<RealPoly, PolyaError> {
    let mut p = parse::Parser::new(src);
    let e = p.expr()?;
    p.finish(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn nonreal_counts() {
        assert_eq!(nonreal_count(&parse_poly("t^2+1").unwrap()).unwrap(), 2);
        assert_eq!(nonreal_count(&parse_poly("t^3-t").unwrap()).unwrap(), 0);
        // (t-1)^2 (t^2+4): multiplicity folded back
        assert_eq!(nonreal_count(&parse_poly("(t-1)^2(t^2+4)").unwrap()).unwrap(), 2);
        assert!(matches!(nonreal_count(&RealPoly::zero()), Err(PolyaError::ZeroPolynomial)));
    }

    #[test]
    fn compose_hermite_is_derivative_action() {
        let p = parse_poly("t^2-1").unwrap();
        let q = parse_poly("t").unwrap();
        assert_eq!(compose(&p, &q, ComposeMode::Hermite), parse_poly("2t").unwrap());
    }

    #[test]
    fn compose_schur_example() {
        let p = parse_poly("t^2+t-2").unwrap();
        let q = parse_poly("t^2+2t+1").unwrap();
        let out = compose(&p, &q, ComposeMode::Schur);
        assert_eq!(out, parse_poly("2t^2+2t-2").unwrap());
        assert_eq!(nonreal_count(&out).unwrap(), 0);
    }

    #[test]
    fn compose_malo_example() {
        let p = parse_poly("t^2-1").unwrap();
        let q = parse_poly("(t+1)^2").unwrap();
        let out = compose(&p, &q, ComposeMode::Malo);
        assert_eq!(out, parse_poly("t^2-1").unwrap());
        assert_eq!(nonreal_count(&out).unwrap(), 0);
    }

    #[test]
    fn multiplier_identity_and_truncation() {
        let p = parse_poly("t^2-1").unwrap();
        let ones = MultiplierSeq::from_i64(&[1, 1, 1]);
        assert_eq!(apply_multiplier(&ones, &p), p);
        let trunc = MultiplierSeq::from_i64(&[1, 1]);
        assert_eq!(apply_multiplier(&trunc, &p), parse_poly("0-1").unwrap());
        // gamma_k = k+1 is Phi = (1+t)e^t; (tP)' identity gives 3t^2 - 1.
        let kp1 = MultiplierSeq::from_i64(&[1, 2, 3]);
        let out = apply_multiplier(&kp1, &p);
        assert_eq!(out, parse_poly("3t^2-1").unwrap());
        assert_eq!(nonreal_count(&out).unwrap(), 0);
    }

    #[test]
    fn first_type_series() {
        // e^{t}: gamma_k = 1 for all k
        let g = MultiplierSeq::from_first_type(&rat(1), &[], 5);
        assert!(g.gammas().iter().all(|x| x.is_one()));
        // (1 + 2t): gamma = (1, 2, 0, ...)
        let g = MultiplierSeq::from_first_type(&rat(0), &[rat(2)], 4);
        assert_eq!(g.gammas()[0], rat(1));
        assert_eq!(g.gammas()[1], rat(2));
        assert!(g.gammas()[2].is_zero());
    }

    #[test]
    fn sign_change_convention() {
        assert_eq!(sign_changes(&[1.0, 0.0, 1.0, 0.0, -1.0]), 1);
        assert_eq!(sign_changes(&[1.0, -1.0, 1.0, 1.0, -1.0]), 3);
        assert_eq!(sign_changes(&[1.0, -1.0, 1.0, 1.0, -1.0, 1.0]), 4);
        assert_eq!(sign_changes(&[0.0, 0.0, 0.0]), 0);
        assert_eq!(sign_changes(&[]), 0);
    }

    #[test]
    fn tp_identity_and_swap() {
        let id = TpInput::Matrix(vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
        ]);
        let r = total_positivity(&id, 2).unwrap();
        assert!(r.totally_positive);
        assert!(r.min_minor.is_zero());

        let swap = TpInput::Matrix(vec![
            vec![rat(0), rat(1)],
            vec![rat(1), rat(0)],
        ]);
        let r = total_positivity(&swap, 2).unwrap();
        assert!(!r.totally_positive);
        assert_eq!(r.min_minor, rat(-1));
        assert_eq!(r.witness, Some((vec![0, 1], vec![0, 1])));
    }

    #[test]
    fn tp_factorial_sequence() {
        // c_k = 1/k!, the e^z coefficients, totally positive at order 3.
        let c: Vec<BigRational> = (0..5)
            .map(|k| {
                let mut f = rat(1);
                for i in 1..=k {
                    f *= rat(i);
                }
                BigRational::one() / f
            })
            .collect();
        let r = total_positivity(&TpInput::ToeplitzLift { c, size: 5 }, 3).unwrap();
        assert!(r.totally_positive, "min minor {:?}", r.min_minor);
    }

    #[test]
    fn budget_guard() {
        let big = TpInput::ToeplitzLift { c: vec![rat(1); 60], size: 60 };
        assert!(matches!(total_positivity(&big, 20), Err(PolyaError::BudgetExceeded(_))));
    }

    #[test]
    fn vd_cases() {
        let tp = vec![vec![1.0, 1.0], vec![0.0, 1.0]];
        assert_eq!(variation_diminishing_check(&tp, 1, 0), VdVerdict::Consistent);
        let perm = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert_eq!(variation_diminishing_check(&perm, 1, 0), VdVerdict::Consistent);
        let bad = vec![vec![1.0, -1.0], vec![1.0, 1.0]];
        assert!(matches!(variation_diminishing_check(&bad, 1, 0), VdVerdict::Counterexample(_)));
    }

    #[test]
    fn parser_accepts_spec_grammar() {
        assert_eq!(parse_poly("t^2+t-2").unwrap(), RealPoly::new(vec![rat(-2), rat(1), rat(1)]));
        assert_eq!(parse_poly("(t+1)^2").unwrap(), RealPoly::new(vec![rat(1), rat(2), rat(1)]));
        assert_eq!(parse_poly("1/2 t - 3").unwrap(), RealPoly::new(vec![rat(-3), ratio(1, 2)]));
        assert!(parse_poly("t^").is_err());
        assert!(parse_poly("x+1").is_err());
    }
}
