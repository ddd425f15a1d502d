//! Subcommand dispatch: parse inputs, call the library, shape the payload.

use crate::report::{self, code_of, DomainError, Report};
use crate::{Cli, Command, MajorCmd, MultiplierKind, NormCmd, PolyCmd, PsidoCmd, SchurCmd, SummCmd};
use num_complex::Complex64;
use num_rational::BigRational;
use schurkit::algebra::ComplexMatrix;
use schurkit::exact::{parse_rat, rat_string};
use schurkit::hadamard::{self, GalleryMatrix, MultiplierMode};
use schurkit::json::{BirkhoffJson, MatrixJson, MeasureJson, ParamsJson, PolyJson, PrefixJson};
use schurkit::majorization::{self, ConvexVerdict, DoublyStochastic};
use schurkit::polya::{self, ComposeMode, MultiplierSeq, TpInput, VdVerdict};
use schurkit::psido::{self, LaurentOp, Part};
use schurkit::schur::{self, RationalFn, SchurParams, SolvabilityKind, TOL_UNIT};
use schurkit::selftest;
use schurkit::summability::{self, MeanKind, TransformMatrix};
use serde_json::{json, Value};

type Outcome = Result<(Value, Vec<String>), Dispatch>;

enum Dispatch {
    Parse(String),
    Domain(DomainError),
}

impl<E: std::fmt::Debug + std::fmt::Display> From<E> for Dispatch {
    fn from(e: E) -> Self {
        let err = code_of(&e);
        // Module grammar errors are usage errors, not domain verdicts.
        if err.code == "Parse" {
            Dispatch::Parse(err.message)
        } else {
            Dispatch::Domain(err)
        }
    }
}

fn parse_err(msg: impl Into<String>) -> Dispatch {
    Dispatch::Parse(msg.into())
}

pub fn dispatch(cli: &Cli) -> i32 {
    let (module, operation, outcome) = route(cli);
    let (report, code): (Report, i32) = match outcome {
        Ok((payload, caveats)) => {
            // Selftest failure demotes the exit code but keeps the payload.
            let failed_battery = operation == "selftest"
                && payload.get("all_pass").and_then(Value::as_bool) == Some(false);
            let (r, c) = report::ok(module, operation, payload, caveats);
            (r, if failed_battery { 1 } else { c })
        }
        Err(Dispatch::Parse(msg)) => report::parse_fail(module, operation, msg),
        Err(Dispatch::Domain(err)) => report::fail(module, operation, err),
    };
    report::print(&report, cli.json);
    code
}

fn route(cli: &Cli) -> (&'static str, &'static str, Outcome) {
    match &cli.command {
        Command::Schur(cmd) => match cmd {
            SchurCmd::Params { c } => ("schur", "params", schur_params(cli, c.as_deref())),
            SchurCmd::Approximant { gamma } => ("schur", "approximant", schur_approximant(cli, gamma.as_deref())),
            SchurCmd::Interpolate { c } => ("schur", "interpolate", schur_interpolate(cli, c.as_deref())),
            SchurCmd::Cohn { poly } => ("schur", "cohn", schur_cohn_cmd(poly)),
            SchurCmd::Resolvent { gamma } => ("schur", "resolvent", schur_resolvent(cli, gamma.as_deref())),
            SchurCmd::Opuc => ("schur", "opuc", schur_opuc(cli)),
            SchurCmd::FromMeasure { m } => ("schur", "from-measure", schur_from_measure_cmd(cli, *m)),
        },
        Command::Norm(cmd) => match cmd {
            NormCmd::Test { matrix, weights } => ("hadamard", "test", norm_test(matrix, weights.as_deref())),
            NormCmd::Product { a, b } => ("hadamard", "product", norm_product(a, b)),
            NormCmd::Multiplier { h, a, mode, l, m } => {
                ("hadamard", "multiplier", norm_multiplier(h, a, *mode, l.as_deref(), m.as_deref()))
            }
            NormCmd::Gallery { name, n, lambda, t } => ("hadamard", "gallery", norm_gallery(name, *n, *lambda, *t)),
        },
        Command::Major(cmd) => match cmd {
            MajorCmd::Check(pair) => ("majorization", "check", major_check(&pair.x, &pair.y)),
            MajorCmd::Birkhoff { matrix } => ("majorization", "birkhoff", major_birkhoff(matrix)),
            MajorCmd::Transfer(pair) => ("majorization", "transfer", major_transfer(&pair.x, &pair.y)),
            MajorCmd::Horn { spectrum, diagonal } => ("majorization", "horn", major_horn(spectrum, diagonal)),
            MajorCmd::Ortho { matrix } => ("majorization", "ortho", major_ortho(matrix)),
            MajorCmd::Convex { phi, dim, samples } => {
                ("majorization", "convex", major_convex(cli, phi, *dim, *samples))
            }
        },
        Command::Summ(cmd) => match cmd {
            SummCmd::Classify { matrix, r, n } => ("summability", "classify", summ_classify(cli, matrix, *r, *n)),
            SummCmd::Apply { matrix, x, n, r } => ("summability", "apply", summ_apply(matrix, x, *n, *r)),
            SummCmd::Mean { kind, r, n } => ("summability", "mean", summ_mean(kind, *r, *n)),
            SummCmd::Equiv { r, n } => ("summability", "equiv", summ_equiv(cli, *r, *n)),
        },
        Command::Psido(cmd) => match cmd {
            PsidoCmd::Mul { f, g, floor } => ("psido", "mul", psido_mul(f, g, *floor)),
            PsidoCmd::Power { op, num, den, floor } => ("psido", "power", psido_power(op, *num, *den, *floor)),
            PsidoCmd::Truncate { f, part } => ("psido", "truncate", psido_truncate(f, part)),
            PsidoCmd::Commutator { a, b, floor } => ("psido", "commutator", psido_commutator(a, b, *floor)),
            PsidoCmd::Kdv => ("psido", "kdv", psido_kdv()),
            PsidoCmd::Commutant { p, f1, f2, floor } => ("psido", "commutant", psido_commutant(p, f1, f2, *floor)),
        },
        Command::Poly(cmd) => match cmd {
            PolyCmd::Nonreal { p } => ("polya", "nonreal", poly_nonreal(p)),
            PolyCmd::Compose { mode, p, q } => ("polya", "compose", poly_compose(mode, p, q)),
            PolyCmd::Multiplier { gamma, p } => ("polya", "multiplier", poly_multiplier(gamma, p)),
            PolyCmd::Signs { x } => ("polya", "signs", poly_signs(x)),
            PolyCmd::Tp { matrix, sequence, size, order } => {
                ("polya", "tp", poly_tp(matrix.as_deref(), sequence.as_deref(), *size, *order))
            }
            PolyCmd::Vd { matrix, trials } => ("polya", "vd", poly_vd(matrix, *trials)),
        },
        Command::Selftest { scale, sequential } => ("selftest", "selftest", run_selftest(cli, *scale, *sequential)),
    }
}

// ---- parsing helpers ----

fn read_file(path: &str) -> Result<String, Dispatch> {
    std::fs::read_to_string(path).map_err(|e| parse_err(format!("cannot read {path}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Dispatch> {
    serde_json::from_str(text).map_err(|e| parse_err(format!("bad {what}: {e}")))
}

/// Inline complex vector: `[0,1]` (reals) or `[[re,im],...]`.
fn parse_complex_vec(src: &str) -> Result<Vec<Complex64>, Dispatch> {
    let v: Value = serde_json::from_str(src).map_err(|e| parse_err(format!("bad vector: {e}")))?;
    let arr = v.as_array().ok_or_else(|| parse_err("expected a JSON array"))?;
    arr.iter()
        .map(|e| {
            if let Some(x) = e.as_f64() {
                Ok(Complex64::new(x, 0.0))
            } else if let Some(pair) = e.as_array() {
                if pair.len() != 2 {
                    return Err(parse_err("complex entries are [re, im] pairs"));
                }
                let re = pair[0].as_f64().ok_or_else(|| parse_err("bad re part"))?;
                let im = pair[1].as_f64().ok_or_else(|| parse_err("bad im part"))?;
                Ok(Complex64::new(re, im))
            } else {
                Err(parse_err("entries must be numbers or [re, im] pairs"))
            }
        })
        .collect()
}

fn parse_real_vec(src: &str) -> Result<Vec<f64>, Dispatch> {
    let v: Vec<f64> = serde_json::from_str(src).map_err(|e| parse_err(format!("bad vector: {e}")))?;
    Ok(v)
}

/// Matrix argument: a JSON file or `identity:N`.
fn load_matrix(arg: &str) -> Result<ComplexMatrix, Dispatch> {
    if let Some(n) = arg.strip_prefix("identity:") {
        let n: usize = n.parse().map_err(|_| parse_err("identity:N needs an integer"))?;
        return Ok(ComplexMatrix::identity(n));
    }
    let j: MatrixJson = parse_json(&read_file(arg)?, "matrix")?;
    j.to_matrix().map_err(|e| parse_err(e))
}

fn load_measure(cli: &Cli) -> Result<schurkit::schur::DiscreteMeasure, Dispatch> {
    let path = cli.input.as_deref().ok_or_else(|| parse_err("this command needs --input FILE"))?;
    let j: MeasureJson = parse_json(&read_file(path)?, "measure")?;
    j.to_measure()
        .map_err(|e| Dispatch::Domain(DomainError::new("InvalidMeasure", e)))
}

/// A prefix or gamma vector: inline argument wins, else --input file.
fn complex_vec_arg(cli: &Cli, inline: Option<&str>, field: &str) -> Result<Vec<Complex64>, Dispatch> {
    if let Some(src) = inline {
        return parse_complex_vec(src);
    }
    let path = cli.input.as_deref().ok_or_else(|| parse_err(format!("need --{field} or --input")))?;
    let text = read_file(path)?;
    if field == "gamma" {
        let j: ParamsJson = parse_json(&text, "parameters")?;
        Ok(j.to_params().gammas)
    } else {
        let j: PrefixJson = parse_json(&text, "prefix")?;
        Ok(j.to_prefix())
    }
}

fn rational_list(src: &str) -> Result<Vec<BigRational>, Dispatch> {
    src.split(',')
        .map(|s| parse_rat(s.trim()).ok_or_else(|| parse_err(format!("bad rational `{s}`"))))
        .collect()
}

fn cvec_json(v: &[Complex64]) -> Value {
    json!(v.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn ds_to_matrix(m: &DoublyStochastic) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(m.rows()).expect("doubly stochastic rows are rectangular")
}

// ---- schur ----

fn schur_params(cli: &Cli, inline: Option<&str>) -> Outcome {
    let c = complex_vec_arg(cli, inline, "c")?;
    let tol = cli.tol.unwrap_or(TOL_UNIT);
    let p = schur::schur_parameters(&c, tol)?;
    Ok((serde_json::to_value(ParamsJson::from_params(&p)).unwrap(), vec![]))
}

fn rational_fn_json(f: &RationalFn) -> Value {
    json!({
        "num": cvec_json(f.num.coeffs()),
        "den": cvec_json(f.den.coeffs()),
    })
}

fn schur_approximant(cli: &Cli, inline: Option<&str>) -> Outcome {
    let gammas = complex_vec_arg(cli, inline, "gamma")?;
    if gammas.is_empty() {
        return Err(parse_err("need at least one parameter"));
    }
    let p = SchurParams { gammas, terminated: false };
    let f = schur::approximant(&p);
    Ok((rational_fn_json(&f), vec![]))
}

fn schur_interpolate(cli: &Cli, inline: Option<&str>) -> Outcome {
    let c = complex_vec_arg(cli, inline, "c")?;
    let v = schur::solvability(&c)?;
    let payload = match &v.kind {
        SolvabilityKind::None => json!({
            "kind": "none",
            "hermitian_form_psd": v.hermitian_form_psd,
            "hermitian_form_pd": v.hermitian_form_pd,
        }),
        SolvabilityKind::Unique(f) => json!({
            "kind": "unique",
            "function": rational_fn_json(f),
            "hermitian_form_psd": v.hermitian_form_psd,
            "hermitian_form_pd": v.hermitian_form_pd,
        }),
        SolvabilityKind::Infinite(p) => json!({
            "kind": "infinite",
            "prefix_parameters": serde_json::to_value(ParamsJson::from_params(p)).unwrap(),
            "hermitian_form_psd": v.hermitian_form_psd,
            "hermitian_form_pd": v.hermitian_form_pd,
        }),
    };
    Ok((payload, vec![]))
}

fn schur_cohn_cmd(poly: &str) -> Outcome {
    let coeffs = parse_complex_vec(poly)?;
    let inside = schur::schur_cohn(&coeffs)?;
    Ok((json!({ "all_roots_in_disk": inside }), vec![]))
}

fn schur_resolvent(cli: &Cli, inline: Option<&str>) -> Outcome {
    let gammas = complex_vec_arg(cli, inline, "gamma")?;
    let w = schur::resolvent_matrix(&gammas)?;
    Ok((
        json!({
            "w11": cvec_json(w.w11.coeffs()),
            "w12": cvec_json(w.w12.coeffs()),
            "w21": cvec_json(w.w21.coeffs()),
            "w22": cvec_json(w.w22.coeffs()),
        }),
        vec![],
    ))
}

fn schur_opuc(cli: &Cli) -> Outcome {
    let sigma = load_measure(cli)?;
    let d = schur::szego_polys(&sigma)?;
    Ok((
        json!({
            "phis": d.phis.iter().map(|p| cvec_json(p.coeffs())).collect::<Vec<_>>(),
            "phistars": d.phistars.iter().map(|p| cvec_json(p.coeffs())).collect::<Vec<_>>(),
            "reflections": cvec_json(&d.reflections),
            "terminal": [d.terminal.re, d.terminal.im],
        }),
        vec![],
    ))
}

fn schur_from_measure_cmd(cli: &Cli, m: usize) -> Outcome {
    let sigma = load_measure(cli)?;
    let prefix = schur::schur_from_measure(&sigma, m)?;
    Ok((serde_json::to_value(PrefixJson::from_prefix(&prefix)).unwrap(), vec![]))
}

// ---- norm ----

fn norm_test(matrix: &str, weights: Option<&str>) -> Outcome {
    let a = load_matrix(matrix)?;
    let w: Option<Vec<f64>> = match weights {
        Some(path) => Some(parse_json(&read_file(path)?, "weights")?),
        None => None,
    };
    let r = hadamard::schur_test(&a, w.as_deref())?;
    let norm = a.spectral_norm()?;
    Ok((
        json!({ "zeta": r.zeta, "kappa": r.kappa, "bound": r.bound, "spectral_norm": norm }),
        vec![],
    ))
}

fn norm_product(a: &str, b: &str) -> Outcome {
    let prod = hadamard::schur_product(&load_matrix(a)?, &load_matrix(b)?)?;
    Ok((serde_json::to_value(MatrixJson::from_matrix(&prod)).unwrap(), vec![]))
}

fn norm_multiplier(h: &str, a: &str, mode: MultiplierKind, l: Option<&str>, m: Option<&str>) -> Outcome {
    let h = load_matrix(h)?;
    let a = load_matrix(a)?;
    let mode = match mode {
        MultiplierKind::Psd => MultiplierMode::PsdDiag,
        MultiplierKind::Factorized => {
            let l = l.ok_or_else(|| parse_err("factorized mode needs --l FILE"))?;
            let m = m.ok_or_else(|| parse_err("factorized mode needs --m FILE"))?;
            MultiplierMode::Factorized { l: load_matrix(l)?, m: load_matrix(m)? }
        }
    };
    let r = hadamard::multiplier_bound(&h, &a, &mode)?;
    Ok((json!({ "d_h": r.d_h, "lhs": r.lhs, "rhs": r.rhs }), vec![]))
}

fn norm_gallery(name: &str, n: usize, lambda: Option<f64>, t: Option<f64>) -> Outcome {
    let g = match name {
        "hilbert_plus" => GalleryMatrix::HilbertPlus,
        "hilbert_minus" => GalleryMatrix::HilbertMinus,
        "generalized_hilbert" => GalleryMatrix::GeneralizedHilbert {
            lambda: lambda.ok_or_else(|| parse_err("generalized_hilbert needs --lambda"))?,
        },
        "sine_form" => GalleryMatrix::SineForm { t: t.ok_or_else(|| parse_err("sine_form needs --t"))? },
        other => return Err(parse_err(format!("unknown gallery matrix `{other}`"))),
    };
    let m = hadamard::matrix_gallery(&g, n)?;
    Ok((serde_json::to_value(MatrixJson::from_matrix(&m)).unwrap(), vec![]))
}

// ---- major ----

fn major_check(x: &str, y: &str) -> Outcome {
    let x = parse_real_vec(x)?;
    let y = parse_real_vec(y)?;
    let v = majorization::majorizes(&x, &y)?;
    Ok((json!({ "majorizes": v }), vec![]))
}

fn load_ds(arg: &str) -> Result<DoublyStochastic, Dispatch> {
    if let Some(n) = arg.strip_prefix("identity:") {
        let n: usize = n.parse().map_err(|_| parse_err("identity:N needs an integer"))?;
        return Ok(DoublyStochastic::identity(n));
    }
    let m = load_matrix(arg)?;
    let rows: Vec<Vec<f64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].re).collect())
        .collect();
    DoublyStochastic::new(rows, 1e-9).map_err(|e| Dispatch::Domain(code_of(&e)))
}

fn major_birkhoff(matrix: &str) -> Outcome {
    let m = load_ds(matrix)?;
    let d = majorization::birkhoff(&m)?;
    Ok((serde_json::to_value(BirkhoffJson::from_decomposition(&d)).unwrap(), vec![]))
}

fn major_transfer(x: &str, y: &str) -> Outcome {
    let x = parse_real_vec(x)?;
    let y = parse_real_vec(y)?;
    let m = majorization::hlp_transfer(&x, &y)?;
    Ok((serde_json::to_value(MatrixJson::from_matrix(&ds_to_matrix(&m))).unwrap(), vec![]))
}

fn major_horn(spectrum: &str, diagonal: &str) -> Outcome {
    let s = parse_real_vec(spectrum)?;
    let d = parse_real_vec(diagonal)?;
    let h = majorization::horn_construct(&s, &d)?;
    Ok((serde_json::to_value(MatrixJson::from_matrix(&h)).unwrap(), vec![]))
}

fn major_ortho(matrix: &str) -> Outcome {
    let m = load_ds(matrix)?;
    let w = majorization::ortho_stochastic_witness(&m)?;
    let payload = match w {
        Some(u) => {
            let mat = ComplexMatrix::from_real_rows(&u).expect("witness is square");
            json!({ "witness": serde_json::to_value(MatrixJson::from_matrix(&mat)).unwrap() })
        }
        None => json!({ "witness": null }),
    };
    Ok((payload, vec![]))
}

fn major_convex(cli: &Cli, phi: &str, dim: usize, samples: usize) -> Outcome {
    if dim < 2 {
        return Err(parse_err("dim must be at least 2"));
    }
    let (f, grad): (Box<dyn Fn(&[f64]) -> f64>, Option<Box<dyn Fn(&[f64]) -> Vec<f64>>>) = match phi {
        "sum-squares" => (
            Box::new(|x: &[f64]| x.iter().map(|v| v * v).sum()),
            Some(Box::new(|x: &[f64]| x.iter().map(|v| 2.0 * v).collect())),
        ),
        "neg-sum-squares" => (
            Box::new(|x: &[f64]| -x.iter().map(|v| v * v).sum::<f64>()),
            Some(Box::new(|x: &[f64]| x.iter().map(|v| -2.0 * v).collect())),
        ),
        "neg-elem-2" | "neg-elem-3" => {
            let k = if phi.ends_with('2') { 2 } else { 3 };
            (
                Box::new(move |x: &[f64]| -selftest::generators::elementary_symmetric(x, k)),
                None,
            )
        }
        other => return Err(parse_err(format!("unknown phi `{other}`"))),
    };
    let verdict = majorization::schur_convex_test(
        f.as_ref(),
        grad.as_deref(),
        dim,
        samples,
        (0.05, 4.0),
        cli.seed,
    )?;
    let payload = match verdict {
        ConvexVerdict::Consistent => json!({ "verdict": "consistent" }),
        ConvexVerdict::Counterexample(x) => json!({ "verdict": "counterexample", "point": x }),
    };
    Ok((payload, vec!["sampled differential condition, not a proof of S-convexity".into()]))
}

// ---- summ ----

const FINITE_SECTION_CAVEAT: &str =
    "finite-section evidence at the reported truncation, not a proof about the infinite matrix";

fn builtin_transform(name: &str, r: usize, n: usize) -> Result<TransformMatrix, Dispatch> {
    match name {
        "builtin:identity" => Ok(TransformMatrix::identity(n)),
        "builtin:cesaro" | "builtin:holder" if r == 1 => Ok(TransformMatrix::cesaro(n)),
        "builtin:cesaro" => {
            let m = summability::mean_matrix(MeanKind::Cesaro, r, n)?;
            Ok(rational_table_transform(m))
        }
        "builtin:holder" => {
            let m = summability::mean_matrix(MeanKind::Holder, r, n)?;
            Ok(rational_table_transform(m))
        }
        "builtin:geometric" => Ok(TransformMatrix::geometric(n)),
        custom => {
            let path = custom
                .strip_prefix("custom:")
                .ok_or_else(|| parse_err(format!("unknown matrix `{custom}`")))?;
            let j: MatrixJson = parse_json(&read_file(path)?, "matrix")?;
            let m = j.to_matrix().map_err(|e| parse_err(e))?;
            let rows: Vec<Vec<Complex64>> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m[(i, j)]).collect())
                .collect();
            Ok(TransformMatrix::from_table(rows))
        }
    }
}

fn rational_table_transform(m: Vec<Vec<BigRational>>) -> TransformMatrix {
    let rows: Vec<Vec<Complex64>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| Complex64::new(schurkit::exact::rat_to_f64(e), 0.0))
                .collect()
        })
        .collect();
    TransformMatrix::from_table(rows)
}

fn summ_classify(cli: &Cli, matrix: &str, r: usize, n: usize) -> Outcome {
    let a = builtin_transform(matrix, r, n)?;
    let grid = [(n / 4).max(2), (n / 2).max(3), n];
    let tol = cli.tol.unwrap_or(1e-6);
    let c = summability::classify(&a, &grid, tol);
    Ok((
        json!({
            "preserving": c.preserving,
            "regular": c.regular,
            "generating": c.generating,
            "column_limits": cvec_json(&c.column_limits),
            "row_sum_limit": [c.row_sum_limit.re, c.row_sum_limit.im],
            "row_norm_sup": c.row_norm_sup,
            "alpha": [c.alpha.re, c.alpha.im],
            "evidence_truncation": c.evidence_truncation,
        }),
        vec![FINITE_SECTION_CAVEAT.into()],
    ))
}

fn builtin_sequence(name: &str) -> Result<Box<dyn Fn(usize) -> Complex64>, Dispatch> {
    match name {
        "ones" => Ok(Box::new(|_| Complex64::new(1.0, 0.0))),
        "invk" => Ok(Box::new(|k| Complex64::new(1.0 / k as f64, 0.0))),
        "alternating01" => Ok(Box::new(|k| {
            Complex64::new((1.0 + if k % 2 == 0 { 1.0 } else { -1.0 }) / 2.0, 0.0)
        })),
        "ratio" => Ok(Box::new(|k| Complex64::new(k as f64 / (k + 1) as f64, 0.0))),
        other => Err(parse_err(format!("unknown sequence `{other}`"))),
    }
}

fn summ_apply(matrix: &str, x: &str, n: usize, r: usize) -> Outcome {
    let a = builtin_transform(matrix, r, n)?;
    let seq = builtin_sequence(x)?;
    let y = summability::apply_transform(&a, seq.as_ref(), n)?;
    Ok((
        json!({ "y": cvec_json(&y), "last": [y.last().map_or(0.0, |v| v.re), y.last().map_or(0.0, |v| v.im)] }),
        vec![],
    ))
}

fn summ_mean(kind: &str, r: usize, n: usize) -> Outcome {
    let kind = match kind {
        "holder" => MeanKind::Holder,
        "cesaro" => MeanKind::Cesaro,
        other => return Err(parse_err(format!("unknown mean kind `{other}`"))),
    };
    let m = summability::mean_matrix(kind, r, n)?;
    let rows: Vec<Vec<String>> = m
        .iter()
        .map(|row| row.iter().map(rat_string).collect())
        .collect();
    Ok((json!({ "rows": rows }), vec![]))
}

fn summ_equiv(cli: &Cli, r: usize, n: usize) -> Outcome {
    let tol = cli.tol.unwrap_or(1e-3);
    let eq = summability::equivalence_check(r, n, tol)?;
    Ok((json!({ "equivalent": eq, "r": r, "n": n, "tol": tol }), vec![FINITE_SECTION_CAVEAT.into()]))
}

// ---- psido ----

fn op_json(op: &LaurentOp) -> Value {
    let coeffs: Vec<Value> = op
        .coeffs()
        .map(|(k, c)| json!({ "degree": k, "coeff": format!("{c}") }))
        .collect();
    json!({
        "op": format!("{op}"),
        "floor": op.floor(),
        "top": op.top_degree(),
        "coeffs": coeffs,
    })
}

fn psido_mul(f: &str, g: &str, floor: i64) -> Outcome {
    let f = psido::parse_operator(f)?;
    let g = psido::parse_operator(g)?;
    let prod = psido::op_mul(&f, &g, floor)?;
    Ok((op_json(&prod), vec![]))
}

fn psido_power(op: &str, num: i64, den: i64, floor: i64) -> Outcome {
    if den <= 0 {
        return Err(parse_err("--den must be positive"));
    }
    let f = psido::parse_operator(op)?;
    let p = psido::power(&f, num, den, floor)?;
    Ok((op_json(&p), vec![]))
}

fn psido_truncate(f: &str, part: &str) -> Outcome {
    let part = match part {
        "positive" => Part::Positive,
        "negative" => Part::Negative,
        other => return Err(parse_err(format!("part must be positive|negative, got `{other}`"))),
    };
    let f = psido::parse_operator(f)?;
    Ok((op_json(&psido::truncate(&f, part)), vec![]))
}

fn psido_commutator(a: &str, b: &str, floor: i64) -> Outcome {
    let a = psido::parse_operator(a)?;
    let b = psido::parse_operator(b)?;
    let c = psido::commutator(&a, &b, floor)?;
    Ok((op_json(&c), vec![]))
}

fn psido_kdv() -> Outcome {
    let rhs = psido::kdv_commutator()?;
    Ok((Value::String(format!("{rhs}")), vec![]))
}

fn psido_commutant(p: &str, f1: &str, f2: &str, floor: i64) -> Outcome {
    let p = psido::parse_operator(p)?;
    let f1 = psido::parse_operator(f1)?;
    let f2 = psido::parse_operator(f2)?;
    let commute = psido::commutant_check(&p, &f1, &f2, floor)?;
    Ok((json!({ "commute": commute, "floor": floor }), vec![]))
}

// ---- poly ----

fn poly_nonreal(p: &str) -> Outcome {
    let p = polya::parse_poly(p)?;
    let n = polya::nonreal_count(&p)?;
    Ok((json!({ "count": n }), vec![]))
}

fn poly_compose(mode: &str, p: &str, q: &str) -> Outcome {
    let mode = match mode {
        "hermite" => ComposeMode::Hermite,
        "laguerre" => ComposeMode::Laguerre,
        "malo" => ComposeMode::Malo,
        "schur" => ComposeMode::Schur,
        other => return Err(parse_err(format!("unknown mode `{other}`"))),
    };
    let p = polya::parse_poly(p)?;
    let q = polya::parse_poly(q)?;
    let out = polya::compose(&p, &q, mode);
    Ok((serde_json::to_value(PolyJson::from_poly(&out)).unwrap(), vec![]))
}

fn poly_multiplier(gamma: &str, p: &str) -> Outcome {
    let gammas = rational_list(gamma)?;
    if gammas.is_empty() {
        return Err(parse_err("need at least one multiplier"));
    }
    let seq = MultiplierSeq::new(gammas);
    let p = polya::parse_poly(p)?;
    let out = polya::apply_multiplier(&seq, &p);
    Ok((serde_json::to_value(PolyJson::from_poly(&out)).unwrap(), vec![]))
}

fn poly_signs(x: &str) -> Outcome {
    let v: Vec<f64> = x
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| parse_err(format!("bad number `{s}`"))))
        .collect::<Result<_, _>>()?;
    Ok((json!({ "count": polya::sign_changes(&v) }), vec![]))
}

fn poly_tp(matrix: Option<&str>, sequence: Option<&str>, size: Option<usize>, order: usize) -> Outcome {
    let input = match (matrix, sequence) {
        (Some(path), None) => {
            let m = load_matrix(path)?;
            let rows: Result<Vec<Vec<BigRational>>, Dispatch> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            let e = m[(i, j)];
                            if e.im != 0.0 {
                                return Err(parse_err("total positivity needs a real matrix"));
                            }
                            BigRational::from_float(e.re)
                                .ok_or_else(|| parse_err("non-finite entry"))
                        })
                        .collect()
                })
                .collect();
            TpInput::Matrix(rows?)
        }
        (None, Some(seq)) => {
            let c = rational_list(seq)?;
            let size = size.unwrap_or(c.len());
            TpInput::ToeplitzLift { c, size }
        }
        _ => return Err(parse_err("give exactly one of --matrix or --sequence")),
    };
    let r = polya::total_positivity(&input, order)?;
    Ok((
        json!({
            "totally_positive": r.totally_positive,
            "order_checked": r.order_checked,
            "min_minor": rat_string(&r.min_minor),
            "witness": r.witness.map(|(rows, cols)| json!({ "rows": rows, "cols": cols })),
        }),
        vec![],
    ))
}

fn poly_vd(matrix: &str, trials: usize) -> Outcome {
    let m = load_matrix(matrix)?;
    let rows: Vec<Vec<f64>> = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let verdict = polya::variation_diminishing_check(&rows, trials.max(1), 0);
    let payload = match verdict {
        VdVerdict::Consistent => json!({ "verdict": "consistent" }),
        VdVerdict::Counterexample(x) => json!({ "verdict": "counterexample", "input": x }),
    };
    Ok((payload, vec![]))
}

// ---- selftest ----

fn run_selftest(cli: &Cli, scale: u32, sequential: bool) -> Outcome {
    let mode = if sequential {
        schurkit::par::Mode::Sequential
    } else {
        schurkit::par::Mode::Parallel
    };
    let report = selftest::run_battery(cli.seed, mode, scale.max(1));
    Ok((serde_json::to_value(&report).unwrap(), vec![]))
}
