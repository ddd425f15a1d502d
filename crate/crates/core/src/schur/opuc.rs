//! Orthonormal polynomials on the unit circle for a discrete probability
//! measure, their reflection coefficients, and the moment route from a
//! measure to the Taylor prefix of its Schur function.

use super::rational::CPoly;
use super::{series_div, PowerSeriesPrefix, SchurError};
use num_complex::Complex64;

/// Finitely many unit-circle atoms with positive weights summing to one.
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    atoms: Vec<(Complex64, f64)>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(Complex64, f64)>) -> Result<Self, SchurError> {
        if atoms.is_empty() {
            return Err(SchurError::InvalidMeasure("no atoms".into()));
        }
        for (t, w) in &atoms {
            if (t.norm() - 1.0).abs() > 1e-14 {
                return Err(SchurError::InvalidMeasure(format!("|{t}| != 1")));
            }
            if !(*w > 0.0) {
                return Err(SchurError::InvalidMeasure(format!("weight {w} not positive")));
            }
        }
        let total: f64 = atoms.iter().map(|(_, w)| w).sum();
        if (total - 1.0).abs() > 1e-14 {
            return Err(SchurError::InvalidMeasure(format!("weights sum to {total}")));
        }
        for i in 0..atoms.len() {
            for j in i + 1..atoms.len() {
                if (atoms[i].0 - atoms[j].0).norm() < 1e-12 {
                    return Err(SchurError::InvalidMeasure("duplicate atoms".into()));
                }
            }
        }
        Ok(DiscreteMeasure { atoms })
    }

    /// Equal weights at the n-th roots of unity.
    pub fn roots_of_unity(n: usize) -> Self {
        let atoms = (0..n)
            .map(|k| {
                let th = std::f64::consts::TAU * k as f64 / n as f64;
                (Complex64::from_polar(1.0, th), 1.0 / n as f64)
            })
            .collect();
        DiscreteMeasure { atoms }
    }

    pub fn atoms(&self) -> &[(Complex64, f64)] {
        &self.atoms
    }

    pub fn n(&self) -> usize {
        self.atoms.len()
    }

    /// Moment mu_k = integral of t^{-k}: on the circle this is the sum of
    /// w_j conj(t_j)^k.
    pub fn moment(&self, k: usize) -> Complex64 {
        self.atoms
            .iter()
            .map(|(t, w)| t.conj().powu(k as u32) * w)
            .sum()
    }

    /// <p, q> = integral p conj(q) d sigma, evaluated on the atoms.
    fn inner(&self, p: &CPoly, q: &CPoly) -> Complex64 {
        self.atoms
            .iter()
            .map(|(t, w)| p.eval(*t) * q.eval(*t).conj() * w)
            .sum()
    }
}

/// Orthonormal circle polynomials and their recurrence data.
#[derive(Debug, Clone)]
pub struct OpucData {
    /// phi_0..phi_{N-1}, orthonormal, positive leading coefficients.
    pub phis: Vec<CPoly>,
    /// Reciprocal polynomials phi*_k.
    pub phistars: Vec<CPoly>,
    /// Reflection coefficients a_0..a_{N-2}, strictly contractive.
    pub reflections: Vec<Complex64>,
    /// Terminal coefficient of unit modulus.
    pub terminal: Complex64,
}

/// Gram-Schmidt on 1, z, z^2, ... against the measure, with reflection
/// coefficients read off the monic recurrence and the unimodular terminal
/// coefficient from the monic polynomial vanishing on the support.
pub fn szego_polys(sigma: &DiscreteMeasure) -> Result<OpucData, SchurError> {
    let n = sigma.n();
    if n < 2 {
        return Err(SchurError::InvalidMeasure("need at least 2 atoms".into()));
    }
    let mut phis: Vec<CPoly> = Vec::with_capacity(n);
    phis.push(CPoly::one());
    for k in 1..n {
        let mut v = CPoly::one().shift(k); // z^k
        for _ in 0..2 {
            for phi in &phis {
                let coef = sigma.inner(&v, phi);
                v = v.sub(&phi.scale(coef));
            }
        }
        let norm_sq = sigma.inner(&v, &v).re;
        if norm_sq <= 1e-20 {
            return Err(SchurError::RankDeficiency);
        }
        let mut phi = v.scale(Complex64::new(1.0 / norm_sq.sqrt(), 0.0));
        // Positive real leading coefficient fixes the recurrence phase.
        let lead = phi.coeff(k);
        if lead.norm() == 0.0 {
            return Err(SchurError::RankDeficiency);
        }
        phi = phi.scale(lead.conj() / lead.norm());
        phis.push(phi);
    }

    // a_k = -conj(Phi_{k+1}(0)) with Phi monic.
    let mut reflections = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let phi = &phis[k + 1];
        let kappa = phi.coeff(k + 1);
        reflections.push(-(phi.coeff(0) / kappa).conj());
    }
    // Terminal: Phi_N = prod (z - t_j) annihilates the measure.
    let mut monic = CPoly::one();
    for (t, _) in sigma.atoms() {
        monic = monic.mul(&CPoly::new(vec![-t, Complex64::new(1.0, 0.0)]));
    }
    let terminal = -(monic.coeff(0)).conj();

    let phistars = phis
        .iter()
        .enumerate()
        .map(|(k, phi)| phi.reflect(k))
        .collect();
    Ok(OpucData { phis, phistars, reflections, terminal })
}

/// Taylor prefix to degree m of the Schur function attached to the moments
/// mu_1..mu_{m+1}: s = (w - 1)/(z (w + 1)) with w = 1 + 2 sum mu_k z^k.
pub fn schur_from_moments(mu: &[Complex64], m: usize) -> Result<PowerSeriesPrefix, SchurError> {
    assert!(mu.len() > m, "need m+1 moments");
    // (w - 1)/z = 2 (mu_1 + mu_2 z + ...), (w + 1)/2 = 1 + mu_1 z + ...
    let num: Vec<Complex64> = (0..=m).map(|k| mu[k]).collect();
    let mut den = vec![Complex64::new(1.0, 0.0)];
    den.extend((0..m).map(|k| mu[k]));
    if den[0].norm() < 1e-14 {
        return Err(SchurError::DegenerateCayley);
    }
    Ok(series_div(&num, &den, m + 1))
}

/// Taylor prefix of the Schur function of a discrete measure.
pub fn schur_from_measure(sigma: &DiscreteMeasure, m: usize) -> Result<PowerSeriesPrefix, SchurError> {
    let mu: Vec<Complex64> = (1..=m + 1).map(|k| sigma.moment(k)).collect();
    schur_from_moments(&mu, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::{schur_parameters, TOL_UNIT};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn roots_of_unity_have_monomial_polys() {
        for n in [3usize, 5] {
            let sigma = DiscreteMeasure::roots_of_unity(n);
            let d = szego_polys(&sigma).unwrap();
            for (k, phi) in d.phis.iter().enumerate() {
                assert!((phi.coeff(k) - c(1.0, 0.0)).norm() < 1e-10, "phi_{k} = {phi:?}");
                for j in 0..k {
                    assert!(phi.coeff(j).norm() < 1e-10);
                }
            }
            assert!(d.reflections.iter().all(|a| a.norm() < 1e-10));
            assert!((d.terminal.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_symmetric_atoms() {
        let sigma = DiscreteMeasure::new(vec![(c(1.0, 0.0), 0.5), (c(-1.0, 0.0), 0.5)]).unwrap();
        let d = szego_polys(&sigma).unwrap();
        // phi_1 = z, a_0 = 0, |terminal| = 1
        assert!((d.phis[1].coeff(1) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(d.phis[1].coeff(0).norm() < 1e-12);
        assert!(d.reflections[0].norm() < 1e-12);
        assert!((d.terminal.norm() - 1.0).abs() < 1e-12);

        // Measure at +-i: first moment zero, a_0 = 0.
        let sigma = DiscreteMeasure::new(vec![(c(0.0, 1.0), 0.5), (c(0.0, -1.0), 0.5)]).unwrap();
        let d = szego_polys(&sigma).unwrap();
        assert!(d.reflections[0].norm() < 1e-12);
    }

    #[test]
    fn orthonormality_holds() {
        let sigma = DiscreteMeasure::new(vec![
            (Complex64::from_polar(1.0, 0.3), 0.2),
            (Complex64::from_polar(1.0, 1.7), 0.5),
            (Complex64::from_polar(1.0, 4.0), 0.1),
            (Complex64::from_polar(1.0, 5.5), 0.2),
        ])
        .unwrap();
        let d = szego_polys(&sigma).unwrap();
        for i in 0..d.phis.len() {
            for j in 0..d.phis.len() {
                let ip = sigma.inner(&d.phis[i], &d.phis[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - c(want, 0.0)).norm() < 1e-10, "<{i},{j}> = {ip}");
            }
        }
    }

    #[test]
    fn recurrence_reproduces_next_polynomial() {
        let sigma = DiscreteMeasure::new(vec![
            (Complex64::from_polar(1.0, 0.9), 0.25),
            (Complex64::from_polar(1.0, 2.0), 0.35),
            (Complex64::from_polar(1.0, 3.3), 0.4),
        ])
        .unwrap();
        let d = szego_polys(&sigma).unwrap();
        for k in 0..d.reflections.len().min(d.phis.len() - 1) {
            let a = d.reflections[k];
            let scale = Complex64::new(1.0 / (1.0 - a.norm_sqr()).sqrt(), 0.0);
            let pred = d.phis[k]
                .shift(1)
                .sub(&d.phistars[k].scale(a.conj()))
                .scale(scale);
            let diff_max: f64 = (0..=k + 1)
                .map(|j| (pred.coeff(j) - d.phis[k + 1].coeff(j)).norm())
                .fold(0.0, f64::max);
            assert!(diff_max < 1e-10, "recurrence defect {diff_max} at k={k}");
        }
    }

    #[test]
    fn moments_route_worked_cases() {
        // All moments zero: s = 0 prefix.
        let s = schur_from_moments(&[c(0.0, 0.0); 5], 4).unwrap();
        assert!(s.iter().all(|v| v.norm() < 1e-15));

        // Point mass at 1: w = (1+z)/(1-z), s = 1.
        let sigma = DiscreteMeasure::new(vec![(c(1.0, 0.0), 1.0)]).unwrap();
        let s = schur_from_measure(&sigma, 3).unwrap();
        assert!((s[0] - c(1.0, 0.0)).norm() < 1e-14);
        for v in &s[1..] {
            assert!(v.norm() < 1e-14);
        }

        // Half-half at +-1: s(z) = z.
        let sigma = DiscreteMeasure::new(vec![(c(1.0, 0.0), 0.5), (c(-1.0, 0.0), 0.5)]).unwrap();
        let s = schur_from_measure(&sigma, 3).unwrap();
        assert!(s[0].norm() < 1e-14);
        assert!((s[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(s[2].norm() < 1e-14 && s[3].norm() < 1e-14);
        let p = schur_parameters(&s, TOL_UNIT).unwrap();
        assert!(p.terminated);
        assert!(p.gammas[0].norm() < 1e-12 && (p.gammas[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn reflection_coefficients_match_schur_parameters() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..30 {
            let n = rng.gen_range(3..=8);
            let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
            angles.sort_by(f64::total_cmp);
            // Keep atoms separated to protect the Gram step.
            if angles.windows(2).any(|w| w[1] - w[0] < 0.05) {
                continue;
            }
            let mut ws: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
            let total: f64 = ws.iter().sum();
            for w in ws.iter_mut() {
                *w /= total;
            }
            let sigma = DiscreteMeasure::new(
                angles.iter().zip(&ws).map(|(&a, &w)| (Complex64::from_polar(1.0, a), w)).collect(),
            )
            .unwrap();
            let opuc = szego_polys(&sigma).unwrap();
            let prefix = schur_from_measure(&sigma, n - 1).unwrap();
            let params = schur_parameters(&prefix, 1e-8).unwrap();
            for k in 0..n - 1 {
                let diff = (params.gammas[k] - opuc.reflections[k]).norm();
                assert!(diff < 1e-8, "index {k}: {} vs {}", params.gammas[k], opuc.reflections[k]);
            }
        }
    }

    #[test]
    fn measure_validation() {
        assert!(DiscreteMeasure::new(vec![(c(0.5, 0.0), 1.0)]).is_err());
        assert!(DiscreteMeasure::new(vec![(c(1.0, 0.0), 0.4)]).is_err());
        assert!(DiscreteMeasure::new(vec![(c(1.0, 0.0), 0.5), (c(1.0, 0.0), 0.5)]).is_err());
    }
}
