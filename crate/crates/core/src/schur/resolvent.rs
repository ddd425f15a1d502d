//! The j-inner resolvent matrix of a strictly contractive parameter prefix:
//! the product of inverted elementary factors, which parametrizes every
//! function sharing that prefix through a linear fractional transformation.

use super::rational::{CPoly, RationalFn};
use super::SchurError;
use crate::exact::{GaussPoly, GaussRat};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

/// 2x2 polynomial matrix W with signature j = diag(-1, 1): W* j W = j on the
/// circle and W* j W - j >= 0 inside the disk.
#[derive(Debug, Clone)]
pub struct ResolventMatrix {
    pub w11: CPoly,
    pub w12: CPoly,
    pub w21: CPoly,
    pub w22: CPoly,
}

impl ResolventMatrix {
    /// The linear fractional transformation (w11 omega + w12)/(w21 omega + w22).
    pub fn transform(&self, omega: &RationalFn) -> RationalFn {
        let num = self.w11.mul(&omega.num).add(&self.w12.mul(&omega.den));
        let den = self.w21.mul(&omega.num).add(&self.w22.mul(&omega.den));
        RationalFn::new(num, den)
    }

    pub fn eval(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        [
            [self.w11.eval(z), self.w12.eval(z)],
            [self.w21.eval(z), self.w22.eval(z)],
        ]
    }

    /// W*(z) j W(z) - j at a point.
    pub fn jform_defect(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        let w = self.eval(z);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                out[a][b] = -w[0][a].conj() * w[0][b] + w[1][a].conj() * w[1][b];
                if a == b {
                    out[a][b] -= Complex64::new(if a == 0 { -1.0 } else { 1.0 }, 0.0);
                }
            }
        }
        out
    }
}

/// Inverted elementary factor (1 - |g|^2)^{-1/2} [[z, g], [z conj(g), 1]].
fn elementary_inverse(g: Complex64) -> ([CPoly; 4], f64) {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let w11 = CPoly::new(vec![zero, one]);
    let w12 = CPoly::constant(g);
    let w21 = CPoly::new(vec![zero, g.conj()]);
    let w22 = CPoly::one();
    ([w11, w12, w21, w22], (1.0 - g.norm_sqr()).sqrt())
}

fn mat_mul(a: &[CPoly; 4], b: &[CPoly; 4]) -> [CPoly; 4] {
    [
        a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
        a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
        a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
        a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
    ]
}

/// Resolvent matrix of a strictly contractive prefix gamma_0..gamma_m.
pub fn resolvent_matrix(gammas: &[Complex64]) -> Result<ResolventMatrix, SchurError> {
    assert!(!gammas.is_empty(), "prefix must be nonempty");
    for (index, g) in gammas.iter().enumerate() {
        if g.norm() >= 1.0 {
            return Err(SchurError::NonContractiveParameter { index });
        }
    }
    let (mut acc, mut norm) = elementary_inverse(gammas[0]);
    for &g in &gammas[1..] {
        let (f, nf) = elementary_inverse(g);
        acc = mat_mul(&acc, &f);
        norm *= nf;
    }
    let s = Complex64::new(1.0 / norm, 0.0);
    Ok(ResolventMatrix {
        w11: acc[0].scale(s),
        w12: acc[1].scale(s),
        w21: acc[2].scale(s),
        w22: acc[3].scale(s),
    })
}

/// Exact unnormalized resolvent over Gaussian rationals: the product of the
/// factors [[z, g], [z conj(g), 1]] and the rational normalizer
/// prod (1 - |g|^2) that the squared matrix carries.
pub fn resolvent_exact(gammas: &[GaussRat]) -> ([GaussPoly; 4], BigRational) {
    let zero = GaussRat::zero;
    let factor = |g: &GaussRat| -> [GaussPoly; 4] {
        [
            GaussPoly(vec![zero(), GaussRat::one()]),
            GaussPoly::constant(g.clone()),
            GaussPoly(vec![zero(), g.conj()]),
            GaussPoly::constant(GaussRat::one()),
        ]
    };
    let gmul = |a: &[GaussPoly; 4], b: &[GaussPoly; 4]| -> [GaussPoly; 4] {
        [
            a[0].mul(&b[0]).add(&a[1].mul(&b[2])),
            a[0].mul(&b[1]).add(&a[1].mul(&b[3])),
            a[2].mul(&b[0]).add(&a[3].mul(&b[2])),
            a[2].mul(&b[1]).add(&a[3].mul(&b[3])),
        ]
    };
    let mut acc = factor(&gammas[0]);
    let mut norm_sq = BigRational::one() - gammas[0].norm_sq();
    for g in &gammas[1..] {
        acc = gmul(&acc, &factor(g));
        norm_sq *= BigRational::one() - g.norm_sq();
    }
    (acc, norm_sq)
}

/// Exact j-unitarity on the circle: with W the unnormalized product, checks
/// the Laurent-polynomial identity W*(t) j W(t) = norm^2 j for |t| = 1,
/// entry by entry and shift by shift, in rational arithmetic.
pub fn resolvent_jform_exact(gammas: &[GaussRat]) -> bool {
    let (w, norm_sq) = resolvent_exact(gammas);
    // corr(p, q)[d] = sum_k conj(p_k) q_{k+d}: Laurent coefficient of
    // conj(p(t)) q(t) at t^d on the circle.
    let deg = w.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as i64;
    for a in 0..2 {
        for b in 0..2 {
            // column a of W is (w[a], w[2+a]) as (row1, row2) entries.
            let p1 = &w[a];
            let p2 = &w[2 + a];
            let q1 = &w[b];
            let q2 = &w[2 + b];
            for d in -deg..=deg {
                let mut acc = GaussRat::zero();
                for k in 0..=deg {
                    let kk = k as usize;
                    let l = k + d;
                    if l < 0 {
                        continue;
                    }
                    let ll = l as usize;
                    let t1 = p1.coeff(kk).conj() * q1.coeff(ll);
                    let t2 = p2.coeff(kk).conj() * q2.coeff(ll);
                    acc += t2 - t1;
                }
                // Expected: norm^2 * j_ab at d = 0, zero otherwise.
                let expected = if d == 0 && a == b {
                    let sign = if a == 0 {
                        -norm_sq.clone()
                    } else {
                        norm_sq.clone()
                    };
                    GaussRat::new(sign, BigRational::from_integer(0.into()))
                } else {
                    GaussRat::zero()
                };
                if acc != expected {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::schur::{schur_parameters, SchurParams, TOL_UNIT};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_parameter_shifts() {
        let w = resolvent_matrix(&[c(0.0, 0.0)]).unwrap();
        // [[z, 0], [0, 1]]: image family is z * omega(z).
        assert!((w.w11.coeff(1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(w.w12.is_zero());
        assert!(w.w21.is_zero());
        assert_eq!(w.w22, CPoly::one());
        let omega = RationalFn::constant(c(0.5, 0.0));
        let s = w.transform(&omega);
        assert!((s.eval(c(0.4, 0.0)) - c(0.2, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn single_parameter_matches_formula() {
        let g = c(0.3, -0.4);
        let w = resolvent_matrix(&[g]).unwrap();
        let scale = 1.0 / (1.0 - g.norm_sqr()).sqrt();
        assert!((w.w11.coeff(1).re - scale).abs() < 1e-14);
        assert!((w.w12.coeff(0) - g * scale).norm() < 1e-14);
        assert!((w.w21.coeff(1) - g.conj() * scale).norm() < 1e-14);
        assert!((w.w22.coeff(0).re - scale).abs() < 1e-14);
    }

    #[test]
    fn transform_restores_prefix() {
        // (0, 1/2) with omega = 0 gives s(z) = z/2.
        let w = resolvent_matrix(&[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        let s = w.transform(&RationalFn::constant(c(0.0, 0.0)));
        assert!((s.eval(c(0.6, 0.0)) - c(0.3, 0.0)).norm() < 1e-12);
        let prefix = s.taylor(2);
        let p = schur_parameters(&prefix, TOL_UNIT).unwrap();
        assert!((p.gammas[0]).norm() < 1e-12);
        assert!((p.gammas[1] - c(0.5, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn transform_of_any_parameter_restores_prefix() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..25 {
            let m = rng.gen_range(0..=5);
            let gam: Vec<Complex64> = (0..=m)
                .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let w = resolvent_matrix(&gam).unwrap();
            // omega: a random low-degree approximant (a Schur function).
            let og: Vec<Complex64> = (0..=rng.gen_range(0..=2))
                .map(|_| Complex64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(0.0..std::f64::consts::TAU)))
                .collect();
            let omega = super::super::rational::approximant(&SchurParams::contractive(og));
            let s = w.transform(&omega);
            let prefix = s.taylor(m + 1);
            let back = schur_parameters(&prefix, TOL_UNIT).unwrap();
            for (a, b) in back.gammas.iter().zip(&gam) {
                assert!((a - b).norm() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn jform_unitary_on_circle_and_expansive_inside() {
        let gam = [c(0.3, 0.1), c(-0.2, 0.4), c(0.0, -0.5)];
        let w = resolvent_matrix(&gam).unwrap();
        for k in 0..64 {
            let th = std::f64::consts::TAU * k as f64 / 64.0;
            let defect = w.jform_defect(Complex64::from_polar(1.0, th));
            for row in &defect {
                for e in row {
                    assert!(e.norm() < 1e-10);
                }
            }
        }
        for k in 0..16 {
            let th = std::f64::consts::TAU * k as f64 / 16.0;
            let z = Complex64::from_polar(0.7, th);
            let d = w.jform_defect(z);
            // 2x2 Hermitian PSD: nonnegative diagonal and determinant.
            assert!(d[0][0].re >= -1e-10 && d[1][1].re >= -1e-10);
            let det = d[0][0].re * d[1][1].re - d[0][1].norm_sqr();
            assert!(det >= -1e-10);
        }
    }

    #[test]
    fn jform_exact_for_rational_parameters() {
        let gam = vec![
            GaussRat::new(ratio(1, 2), ratio(-1, 3)),
            GaussRat::new(ratio(0, 1), ratio(2, 5)),
            GaussRat::new(ratio(-3, 7), ratio(1, 7)),
        ];
        assert!(resolvent_jform_exact(&gam));
    }

    #[test]
    fn noncontractive_rejected() {
        let err = resolvent_matrix(&[c(1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, SchurError::NonContractiveParameter { index: 0 }));
    }
}
