//! JSON encodings shared with the command-line tool: matrices as
//! `{"rows":n,"cols":m,"re":[...],"im":[...]}`, rationals as `"p/q"`
//! strings, complex scalars as `[re, im]` pairs, plus the payload shapes for
//! prefixes, parameters, measures, and decompositions.

use crate::algebra::{ComplexMatrix, RealPoly};
use crate::exact::{parse_rat, rat_string};
use crate::majorization::{BirkhoffDecomposition, BirkhoffTerm};
use crate::schur::{DiscreteMeasure, SchurParams};
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        if self.re.len() != self.rows * self.cols || self.im.len() != self.re.len() {
            return Err("re/im length must equal rows*cols".into());
        }
        let data = self
            .re
            .iter()
            .zip(&self.im)
            .map(|(&re, &im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(self.rows, self.cols, data).map_err(|e| e.to_string())
    }
}

/// Polynomial with exact rational coefficients, ascending degree.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly(p: &RealPoly) -> Self {
        PolyJson { coeffs: p.coeffs().iter().map(rat_string).collect() }
    }

    pub fn to_poly(&self) -> Result<RealPoly, String> {
        let coeffs: Option<Vec<BigRational>> = self.coeffs.iter().map(|s| parse_rat(s)).collect();
        Ok(RealPoly::new(coeffs.ok_or("bad rational coefficient")?))
    }
}

/// Taylor prefix `{"c": [[re, im], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PrefixJson {
    pub c: Vec<[f64; 2]>,
}

impl PrefixJson {
    pub fn from_prefix(c: &[Complex64]) -> Self {
        PrefixJson { c: c.iter().map(|z| [z.re, z.im]).collect() }
    }

    pub fn to_prefix(&self) -> Vec<Complex64> {
        self.c.iter().map(|p| Complex64::new(p[0], p[1])).collect()
    }
}

/// Schur parameters `{"gamma": [[re, im], ...], "terminated": bool}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ParamsJson {
    pub gamma: Vec<[f64; 2]>,
    pub terminated: bool,
}

impl ParamsJson {
    pub fn from_params(p: &SchurParams) -> Self {
        ParamsJson {
            gamma: p.gammas.iter().map(|z| [z.re, z.im]).collect(),
            terminated: p.terminated,
        }
    }

    pub fn to_params(&self) -> SchurParams {
        SchurParams {
            gammas: self.gamma.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
            terminated: self.terminated,
        }
    }
}

/// Measure `{"atoms": [{"t": [re, im], "w": weight}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MeasureJson {
    pub atoms: Vec<AtomJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AtomJson {
    pub t: [f64; 2],
    pub w: f64,
}

impl MeasureJson {
    pub fn from_measure(m: &DiscreteMeasure) -> Self {
        MeasureJson {
            atoms: m
                .atoms()
                .iter()
                .map(|(t, w)| AtomJson { t: [t.re, t.im], w: *w })
                .collect(),
        }
    }

    pub fn to_measure(&self) -> Result<DiscreteMeasure, String> {
        DiscreteMeasure::new(
            self.atoms
                .iter()
                .map(|a| (Complex64::new(a.t[0], a.t[1]), a.w))
                .collect(),
        )
        .map_err(|e| e.to_string())
    }
}

/// Birkhoff decomposition `{"terms": [{"lambda": l, "perm": [...]}, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BirkhoffJson {
    pub terms: Vec<BirkhoffTermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BirkhoffTermJson {
    pub lambda: f64,
    pub perm: Vec<usize>,
}

impl BirkhoffJson {
    pub fn from_decomposition(d: &BirkhoffDecomposition<f64>) -> Self {
        BirkhoffJson {
            terms: d
                .terms
                .iter()
                .map(|t| BirkhoffTermJson { lambda: t.lambda, perm: t.perm.clone() })
                .collect(),
        }
    }

    pub fn to_decomposition(&self) -> BirkhoffDecomposition<f64> {
        BirkhoffDecomposition {
            terms: self
                .terms
                .iter()
                .map(|t| BirkhoffTerm { lambda: t.lambda, perm: t.perm.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn matrix_round_trip_bytes() {
        let m = ComplexMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64 + 0.5, j as f64 - 0.25));
        let j = MatrixJson::from_matrix(&m);
        let s1 = serde_json::to_string(&j).unwrap();
        let back: MatrixJson = serde_json::from_str(&s1).unwrap();
        let s2 = serde_json::to_string(&back).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn poly_rational_strings() {
        let p = RealPoly::new(vec![ratio(1, 2), ratio(-3, 4)]);
        let j = PolyJson::from_poly(&p);
        assert_eq!(j.coeffs, vec!["1/2", "-3/4"]);
        assert_eq!(j.to_poly().unwrap(), p);
    }

    #[test]
    fn params_round_trip() {
        let p = SchurParams { gammas: vec![Complex64::new(0.1, -0.2)], terminated: false };
        let j = ParamsJson::from_params(&p);
        let s = serde_json::to_string(&j).unwrap();
        let back: ParamsJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_params(), p);
    }
}
