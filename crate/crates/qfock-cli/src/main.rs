//! Batch front-end for the q-Fock engine.
//!
//! One invocation, one computation, reproducible output: exact values are
//! printed as `p/d` alongside a float rendering, check subcommands print
//! PASS/FAIL per input, and `--json`/`--csv` emit machine-readable files.
//! Exit status: 0 on success, 1 when a check finds a violation, 2 on
//! usage errors (bad parameters, cap breaches, unwritable output paths).

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use qfock::fock::{
    gram_matrix, inner_product, ldlt_pivots, norm_sq, words_up_to_degree, Basis, FockVector,
    Limits, Word,
};
use qfock::mixing::{basis_orthonormality_check, mixing_series, MixingReport};
use qfock::ops::{apply_wick, q_commutation_defect, wick_expand};
use qfock::sample::{random_vector, seeded_rng};
use qfock::scalar::{parse_q, q_int, ParsedQ, QParam, Scalar};

type CliResult = Result<bool, Box<dyn Error>>;

#[derive(Parser)]
#[command(name = "qfock", version, about = "q-deformed Fock space computations", long_about = None)]
struct Cli {
    /// Deformation parameter in (-1, 1): `p/d` or an integer picks the
    /// exact rational backend, a decimal literal the float backend.
    #[arg(long, global = true, default_value = "1/2", allow_hyphen_values = true)]
    q: String,

    /// Basis dimension; letter 0 is the distinguished generator.
    #[arg(long, global = true, default_value_t = 2)]
    dim: usize,

    /// Override the word-degree growth cap.
    #[arg(long, global = true)]
    degree_cap: Option<usize>,

    /// Seed for the sampled check subcommands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-inner product of two words (letters comma-separated, empty = vacuum).
    Inner {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Squared q-norm of a word.
    Norm {
        #[arg(long)]
        word: String,
    },
    /// Gram matrix of all words up to a degree, certified by LDL^T pivots.
    Gram {
        /// Maximum word degree entering the matrix.
        #[arg(long, default_value_t = 3)]
        jmax: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Normal-ordered expansion of W(word), one monomial per line.
    Wick {
        #[arg(long)]
        word: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check the q-commutation relation on seeded random vectors.
    CommutatorCheck {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// Check the three-term ladder W(e)·e^n = e^(n+1) + [n]_q·e^(n-1).
    HermiteCheck {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
    },
    /// Mixing coefficients C_N for a word pair, with decay diagnostics.
    Mixing {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, default_value_t = 16)]
        nmax: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check generator-power orthogonality <e^i, e^j> = delta_ij [j]_q!.
    OrthoCheck {
        #[arg(long, default_value_t = 8)]
        jmax: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match parse_q(&cli.q) {
        Ok(ParsedQ::Exact(q)) => run(&cli, &q),
        Ok(ParsedQ::Float(q)) => run(&cli, &q),
        Err(e) => Err(e.into()),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Dispatch with the scalar backend fixed; `Ok(false)` means a check
/// subcommand found a violation.
fn run<S: Scalar>(cli: &Cli, q: &QParam<S>) -> CliResult {
    let basis = Basis::new(cli.dim)?;
    let limits = cli
        .degree_cap
        .map(Limits::with_degree_cap)
        .unwrap_or_default();
    match &cli.command {
        Command::Inner { a, b } => {
            let wa = parse_word(&basis, &limits, a)?;
            let wb = parse_word(&basis, &limits, b)?;
            let value = inner_product(&FockVector::from_word(wa), &FockVector::from_word(wb), q);
            print_scalar(&value);
            Ok(true)
        }
        Command::Norm { word } => {
            let w = parse_word(&basis, &limits, word)?;
            let value = norm_sq(&FockVector::<S>::from_word(w), q);
            print_scalar(&value);
            Ok(true)
        }
        Command::Gram { jmax, json } => cmd_gram(&basis, *jmax, q, cli, json.as_deref()),
        Command::Wick { word, json } => {
            let w = parse_word(&basis, &limits, word)?;
            cmd_wick(&w, q, &limits, cli, json.as_deref())
        }
        Command::CommutatorCheck { samples } => cmd_commutator(&basis, *samples, q, &limits, cli),
        Command::HermiteCheck { nmax } => cmd_hermite(*nmax, q, &limits),
        Command::Mixing {
            a,
            b,
            nmax,
            json,
            csv,
        } => {
            let wa = parse_word(&basis, &limits, a)?;
            let wb = parse_word(&basis, &limits, b)?;
            cmd_mixing(
                &basis,
                &wa,
                &wb,
                *nmax,
                q,
                &limits,
                json.as_deref(),
                csv.as_deref(),
            )
        }
        Command::OrthoCheck { jmax } => cmd_ortho(*jmax, q),
    }
}

fn parse_word(basis: &Basis, limits: &Limits, text: &str) -> qfock::Result<Word> {
    let word = Word::parse(text)?;
    basis.check_word(&word)?;
    limits.check_degree(word.degree())?;
    Ok(word)
}

/// Exact rendering on its own line when the backend has one, then the
/// float rendering.
fn print_scalar<S: Scalar>(value: &S) {
    if let Some(exact) = value.exact_repr() {
        println!("{exact}");
    }
    println!("{}", value.to_f64());
}

fn render_scalar<S: Scalar>(value: &S) -> String {
    value
        .exact_repr()
        .unwrap_or_else(|| value.to_f64().to_string())
}

fn scalar_json<S: Scalar>(value: &S) -> serde_json::Value {
    json!({ "exact": value.exact_repr(), "float": value.to_f64() })
}

/// Exact backends certify zero exactly; the float backend tolerates
/// accumulated roundoff.
fn effectively_zero<S: Scalar>(v: &FockVector<S>) -> bool {
    if S::EXACT {
        v.is_zero()
    } else {
        v.terms().all(|(_, c)| c.to_f64().abs() <= 1e-9)
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Box<dyn Error>> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(())
}

fn cmd_gram<S: Scalar>(
    basis: &Basis,
    jmax: usize,
    q: &QParam<S>,
    cli: &Cli,
    json: Option<&Path>,
) -> CliResult {
    let words = words_up_to_degree(basis.dim(), jmax);
    let gram = gram_matrix(&words, q);
    println!(
        "{} words of degree <= {jmax} over {} letters",
        words.len(),
        basis.dim()
    );
    let pivots = match ldlt_pivots(&gram) {
        Ok(p) => p,
        Err(e) => {
            println!("FAIL: {e}");
            return Ok(false);
        }
    };
    println!("PASS: all {} LDL^T pivots nonnegative", pivots.len());
    if let Some(path) = json {
        let doc = json!({
            "q": cli.q,
            "dim": basis.dim(),
            "jmax": jmax,
            "words": words.iter().map(Word::to_string).collect::<Vec<_>>(),
            "pivots": pivots.iter().map(scalar_json).collect::<Vec<_>>(),
        });
        write_file(path, &format!("{doc:#}\n"))?;
    }
    Ok(true)
}

fn cmd_wick<S: Scalar>(
    word: &Word,
    q: &QParam<S>,
    limits: &Limits,
    cli: &Cli,
    json: Option<&Path>,
) -> CliResult {
    let expansion = wick_expand(word, q, limits)?;
    println!("{expansion}");
    if let Some(path) = json {
        let monomials: Vec<serde_json::Value> = expansion
            .monomials
            .iter()
            .map(|m| {
                json!({
                    "inversions": m.inversions,
                    "weight": scalar_json(&m.weight),
                    "factors": m.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let doc = json!({
            "word": word.to_string(),
            "q": cli.q,
            "monomial_count": expansion.monomials.len(),
            "monomials": monomials,
        });
        write_file(path, &format!("{doc:#}\n"))?;
    }
    Ok(true)
}

fn cmd_commutator<S: Scalar>(
    basis: &Basis,
    samples: usize,
    q: &QParam<S>,
    limits: &Limits,
    cli: &Cli,
) -> CliResult {
    let mut rng = seeded_rng(cli.seed);
    let mut all_ok = true;
    for k in 0..samples {
        let v: FockVector<S> = random_vector(&mut rng, basis.dim(), 6, 4);
        let mut sample_ok = true;
        for a in 0..basis.dim() {
            for b in 0..basis.dim() {
                let defect = q_commutation_defect(a, b, &v, q, limits)?;
                sample_ok &= effectively_zero(&defect);
            }
        }
        println!("sample {k}: {}", if sample_ok { "PASS" } else { "FAIL" });
        all_ok &= sample_ok;
    }
    println!(
        "commutator-check: {samples} samples, {}",
        if all_ok { "all PASS" } else { "violations found" }
    );
    Ok(all_ok)
}

fn cmd_hermite<S: Scalar>(nmax: usize, q: &QParam<S>, limits: &Limits) -> CliResult {
    let w_e = wick_expand(&Word::power(0, 1), q, limits)?;
    let mut all_ok = true;
    for n in 0..=nmax {
        let target = FockVector::from_word(Word::power(0, n));
        let got = apply_wick(&w_e, &target, q, limits)?;
        let mut expected = FockVector::from_word(Word::power(0, n + 1));
        if n > 0 {
            expected.add_scaled(&q_int(n, q), &FockVector::from_word(Word::power(0, n - 1)));
        }
        let ok = effectively_zero(&got.sub(&expected));
        println!("n = {n}: {}", if ok { "PASS" } else { "FAIL" });
        all_ok &= ok;
    }
    println!(
        "hermite-check: n <= {nmax}, {}",
        if all_ok { "all PASS" } else { "violations found" }
    );
    Ok(all_ok)
}

#[allow(clippy::too_many_arguments)]
fn cmd_mixing<S: Scalar>(
    basis: &Basis,
    a: &Word,
    b: &Word,
    nmax: usize,
    q: &QParam<S>,
    limits: &Limits,
    json: Option<&Path>,
    csv: Option<&Path>,
) -> CliResult {
    let series = mixing_series(basis, a, b, nmax, q, limits)?;
    let report = MixingReport::from_series(&series);
    println!("a = {a}, b = {b}, q = {}", report.q);
    println!("N\tC_N\tC_N(float)\tpartial_sum\tratio");
    for e in &report.entries {
        let c_exact = e.c_exact.clone().unwrap_or_else(|| e.c_float.to_string());
        let sum = e
            .partial_sum_exact
            .clone()
            .unwrap_or_else(|| e.partial_sum_float.to_string());
        let ratio = e
            .ratio_exact
            .clone()
            .or_else(|| e.ratio_float.map(|x| x.to_string()))
            .unwrap_or_else(|| "-".to_string());
        println!("{}\t{}\t{}\t{}\t{}", e.n, c_exact, e.c_float, sum, ratio);
    }
    println!("fitted_rate: {}", report.fitted_rate);
    println!("verdict: {}", report.verdict);
    if let Some(path) = json {
        let doc =
            serde_json::to_string_pretty(&report).expect("report serialization is infallible");
        write_file(path, &format!("{doc}\n"))?;
    }
    if let Some(path) = csv {
        write_file(path, &report.to_csv_string())?;
    }
    Ok(true)
}

fn cmd_ortho<S: Scalar>(jmax: usize, q: &QParam<S>) -> CliResult {
    let report = basis_orthonormality_check(jmax, q);
    if report.passed() {
        println!(
            "ortho-check: all {} pairs up to j = {jmax} PASS",
            report.pairs_checked
        );
        Ok(true)
    } else {
        for v in &report.violations {
            println!(
                "FAIL at (i, j) = ({}, {}): expected {}, got {}",
                v.i,
                v.j,
                render_scalar(&v.expected),
                render_scalar(&v.actual)
            );
        }
        Ok(false)
    }
}
