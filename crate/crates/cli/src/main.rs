//! `schurkit`: command-line front end. Every subcommand reads JSON files or
//! inline expressions, dispatches to one library operation, and prints a
//! machine-readable report to standard output.
//!
//! Exit codes: 0 on success, 1 on a domain error, 2 on a parse/usage error.

mod report;
mod run;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "schurkit", version, about = "Concrete algorithms of classical Schur analysis")]
pub struct Cli {
    /// Seed for randomized drivers (selftest, sampling checks).
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Numeric tolerance override where an operation takes one.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Compact single-line JSON output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Input payload file for subcommands that accept one.
    #[arg(long, global = true)]
    pub input: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Schur algorithm, interpolation, and circle polynomials.
    #[command(subcommand)]
    Schur(SchurCmd),
    /// Operator-norm tests and entrywise products.
    #[command(subcommand)]
    Norm(NormCmd),
    /// Majorization, doubly-stochastic decompositions, spectra.
    #[command(subcommand)]
    Major(MajorCmd),
    /// Sequence-transform classification and mean matrices.
    #[command(subcommand)]
    Summ(SummCmd),
    /// Formal pseudodifferential calculus.
    #[command(subcommand)]
    Psido(PsidoCmd),
    /// Real-rooted polynomial transforms and total positivity.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Run the full invariant battery with the given seed.
    Selftest {
        /// Trial-count divisor (1 = full battery).
        #[arg(long, default_value_t = 1)]
        scale: u32,
        /// Force sequential execution.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Subcommand)]
pub enum SchurCmd {
    /// Schur parameters of a Taylor prefix.
    Params {
        /// Inline prefix, e.g. "[0,1]" or "[[0,0],[1,0]]".
        #[arg(long)]
        c: Option<String>,
    },
    /// Continued-fraction approximant of a parameter sequence.
    Approximant {
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Interpolation verdict for a Taylor prefix.
    Interpolate {
        #[arg(long)]
        c: Option<String>,
    },
    /// Schur-Cohn root-location test for a complex polynomial.
    Cohn {
        /// Ascending coefficients, e.g. "[1,2]" for 1 + 2z.
        #[arg(long)]
        poly: String,
    },
    /// j-inner resolvent matrix of a contractive prefix.
    Resolvent {
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Orthonormal circle polynomials of a measure.
    Opuc,
    /// Taylor prefix of the Schur function of a measure.
    FromMeasure {
        #[arg(long, default_value_t = 4)]
        m: usize,
    },
}

#[derive(Subcommand)]
pub enum NormCmd {
    /// Schur test: row/column sums against the spectral norm.
    Test {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Entrywise product of two matrices.
    Product {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Multiplier estimate for H acting entrywise on A.
    Multiplier {
        #[arg(long)]
        h: String,
        #[arg(long)]
        a: String,
        #[arg(long, value_enum, default_value_t = MultiplierKind::Psd)]
        mode: MultiplierKind,
        #[arg(long)]
        l: Option<String>,
        #[arg(long)]
        m: Option<String>,
    },
    /// Principal section of a named classical matrix.
    Gallery {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MultiplierKind {
    Psd,
    Factorized,
}

#[derive(Subcommand)]
pub enum MajorCmd {
    /// Does x majorize y?
    Check(VecPair),
    /// Convex-combination-of-permutations decomposition.
    Birkhoff {
        /// Matrix file, or "identity:N".
        #[arg(long)]
        matrix: String,
    },
    /// Doubly stochastic M with M x = y from a majorization.
    Transfer(VecPair),
    /// Real symmetric matrix with given spectrum and diagonal.
    Horn {
        #[arg(long)]
        spectrum: String,
        #[arg(long)]
        diagonal: String,
    },
    /// Orthogonal sign witness for a 2x2 or 3x3 doubly stochastic matrix.
    Ortho {
        #[arg(long)]
        matrix: String,
    },
    /// Sampled Schur-convexity probe of a built-in function.
    Convex {
        /// One of sum-squares, neg-sum-squares, neg-elem-2, neg-elem-3.
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

#[derive(Args)]
pub struct VecPair {
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
}

#[derive(Subcommand)]
pub enum SummCmd {
    /// Finite-section classification of a transform.
    Classify {
        /// builtin:identity | builtin:cesaro | builtin:holder |
        /// builtin:geometric | custom:FILE
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 256)]
        n: usize,
    },
    /// Apply a transform to a built-in sequence.
    Apply {
        #[arg(long)]
        matrix: String,
        /// ones | invk | alternating01 | ratio
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
    },
    /// Exact mean-matrix section.
    Mean {
        /// holder | cesaro
        #[arg(long)]
        kind: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Hölder/Cesàro equivalence evidence at a truncation.
    Equiv {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
pub enum PsidoCmd {
    /// Product of two operator expressions at a floor.
    Mul {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_negative_numbers = true)]
        floor: i64,
    },
    /// Fractional power of a monic operator.
    #[command(alias = "root")]
    Power {
        #[arg(long)]
        op: String,
        #[arg(long, allow_negative_numbers = true)]
        num: i64,
        #[arg(long)]
        den: i64,
        #[arg(long, allow_negative_numbers = true)]
        floor: i64,
    },
    /// Positive or negative part of an operator.
    Truncate {
        #[arg(long)]
        f: String,
        /// positive | negative
        #[arg(long)]
        part: String,
    },
    /// Commutator [a, b] at a floor.
    Commutator {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_negative_numbers = true)]
        floor: i64,
    },
    /// The KdV commutator, exactly.
    Kdv,
    /// Do f1 and f2 commute, given both commute with p?
    Commutant {
        #[arg(long)]
        p: String,
        #[arg(long)]
        f1: String,
        #[arg(long)]
        f2: String,
        #[arg(long, allow_negative_numbers = true)]
        floor: i64,
    },
}

#[derive(Subcommand)]
pub enum PolyCmd {
    /// Number of non-real roots, with multiplicity.
    Nonreal {
        #[arg(long)]
        p: String,
    },
    /// Composition transforms of two polynomials.
    Compose {
        /// hermite | laguerre | malo | schur
        #[arg(long)]
        mode: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Coefficientwise multiplier action.
    Multiplier {
        /// Comma-separated rational multipliers, e.g. "1,2,3".
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        p: String,
    },
    /// Sign changes of a sequence, zeros discarded.
    Signs {
        #[arg(long)]
        x: String,
    },
    /// Total positivity by minor enumeration.
    Tp {
        #[arg(long)]
        matrix: Option<String>,
        /// Comma-separated rational sequence for the Toeplitz lift.
        #[arg(long)]
        sequence: Option<String>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        order: usize,
    },
    /// Variation-diminishing check.
    Vd {
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = run::dispatch(&cli);
    std::process::exit(code);
}
