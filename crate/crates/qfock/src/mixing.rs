//! Conditional expectation onto the generator subalgebra and mixing
//! diagnostics.
//!
//! The abelian subalgebra A generated by `W(e)` admits the orthonormal
//! family `v_j = W(e^{⊗j}) / ‖W(e^{⊗j})‖₂` with `‖W(e^{⊗j})‖₂² = [j]_q!`.
//! The central quantity is
//! `C_N = ‖E_A(a v_N b) − E_A(a) v_N E_A(b)‖₂²`
//! for `a = W(word_a)`, `b = W(word_b)`: its summability over N is the
//! quantitative mixing input, and this module computes every `C_N`
//! exactly. Normalization never takes a square root: all formulas divide
//! squared norms by `[N]_q!`, which keeps the exact backend inside the
//! rationals.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{norm_sq, project_pure_e, Basis, FockVector, Limits, Word};
use crate::ops::{apply_w_power, apply_w_vector, apply_w_word};
use crate::scalar::{q_factorial, QParam, Scalar};

/// Vector symbol of `E_A(W(ξ))`: the conditional expectation onto the
/// generator subalgebra is the second quantization of the rank-one
/// projection onto the generator, so on symbols it keeps exactly the
/// pure-generator words.
pub fn cond_exp_vector<S: Scalar>(xi: &FockVector<S>) -> FockVector<S> {
    project_pure_e(xi)
}

/// The exact mixing coefficient
/// `C_N = ‖E_A(a W(e^{⊗N}) b) − E_A(a) W(e^{⊗N}) E_A(b)‖₂² / [N]_q!`
/// with `a = W(word_a)`, `b = W(word_b)`, everything evaluated on vector
/// symbols: products apply right factor first to the vacuum, and the
/// division by `[N]_q!` implements the `v_N` normalization.
pub fn mixing_coefficient<S: Scalar>(
    basis: &Basis,
    word_a: &Word,
    word_b: &Word,
    n: usize,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<S> {
    basis.require_dim(2)?;
    basis.check_word(word_a)?;
    basis.check_word(word_b)?;

    // E_A(a W_N b) Ω = project(W(word_a) W(e^⊗N) word_b).
    let b_omega = FockVector::from_word(word_b.clone());
    let wn_b = apply_w_power(0, n, &b_omega, q, limits)?;
    let a_wn_b = apply_w_word(word_a, &wn_b, q, limits)?;
    let lhs = project_pure_e(&a_wn_b);

    // E_A(a) W_N E_A(b) Ω: the outer factors are the pure-generator parts
    // of the symbols, each a single word or zero.
    let alpha = project_pure_e(&FockVector::from_word(word_a.clone()));
    let beta = project_pure_e(&b_omega);
    let wn_beta = apply_w_power(0, n, &beta, q, limits)?;
    let rhs = apply_w_vector(&alpha, &wn_beta, q, limits)?;

    let delta = lhs.sub(&rhs);
    let numerator = norm_sq(&delta, q);
    let value = numerator
        .checked_div(&q_factorial(n, q))
        .expect("q-factorial is positive for |q| < 1");
    debug_assert!(
        !S::EXACT || !value.is_negative(),
        "C_N is a squared norm over a positive normalizer"
    );
    Ok(value)
}

/// Decay verdict of a [`MixingSeries`]: evidence only, never a proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SummableEvidence,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SummableEvidence => write!(f, "summable-evidence"),
            Verdict::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

/// `C_0 … C_{N_max}` for one word pair, with partial sums, consecutive
/// ratios, a float least-squares rate fitted to the log-tail, and the
/// resulting verdict.
#[derive(Debug, Clone)]
pub struct MixingSeries<S: Scalar> {
    pub q: QParam<S>,
    pub word_a: Word,
    pub word_b: Word,
    pub n_max: usize,
    /// `values[N] = C_N`, exact.
    pub values: Vec<S>,
    /// `partial_sums[K] = Σ_{N ≤ K} C_N`; nondecreasing.
    pub partial_sums: Vec<S>,
    /// `ratios[N] = C_{N+1} / C_N` where `C_N ≠ 0`.
    pub ratios: Vec<Option<S>>,
    /// Geometric rate from least squares on `ln C_N` over the tail window
    /// (last `⌈N_max/2⌉` points with `C_N ≠ 0`); 0 when the tail vanishes.
    pub fitted_rate: f64,
    pub verdict: Verdict,
}

/// Compute the full series. Requires `n_max ≥ 4` so the tail windows are
/// nonempty. Verdict is `summable-evidence` iff the fitted rate is below 1
/// and every defined ratio in the last quarter is at most `(1 + rate)/2`.
pub fn mixing_series<S: Scalar>(
    basis: &Basis,
    word_a: &Word,
    word_b: &Word,
    n_max: usize,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<MixingSeries<S>> {
    if n_max < 4 {
        return Err(Error::SeriesTooShort {
            got: n_max,
            required: 4,
        });
    }
    let values: Vec<S> = (0..=n_max)
        .map(|n| mixing_coefficient(basis, word_a, word_b, n, q, limits))
        .collect::<Result<_>>()?;

    let mut partial_sums = Vec::with_capacity(values.len());
    let mut running = S::zero();
    for c in &values {
        running = running + c.clone();
        partial_sums.push(running.clone());
    }

    let ratios: Vec<Option<S>> = (0..n_max)
        .map(|n| values[n + 1].checked_div(&values[n]))
        .collect();

    let window = n_max.div_ceil(2);
    let tail_points: Vec<(f64, f64)> = (n_max + 1 - window..=n_max)
        .filter_map(|n| {
            let c = values[n].to_f64();
            if c > 0.0 {
                Some((n as f64, c.ln()))
            } else {
                None
            }
        })
        .collect();
    let fitted_rate = fit_geometric_rate(&tail_points);

    let quarter = n_max.div_ceil(4);
    let threshold = (1.0 + fitted_rate) / 2.0;
    let tail_ratios_ok = ratios[n_max - quarter..]
        .iter()
        .all(|r| r.as_ref().map_or(true, |x| x.to_f64() <= threshold));
    let verdict = if fitted_rate < 1.0 && tail_ratios_ok {
        Verdict::SummableEvidence
    } else {
        Verdict::Inconclusive
    };

    Ok(MixingSeries {
        q: q.clone(),
        word_a: word_a.clone(),
        word_b: word_b.clone(),
        n_max,
        values,
        partial_sums,
        ratios,
        fitted_rate,
        verdict,
    })
}

/// Least-squares slope of `ln C_N` against N, exponentiated. Fewer than
/// two points (an identically vanishing tail) fits rate 0.
fn fit_geometric_rate(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum::<f64>();
    let sxy = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum::<f64>();
    (sxy / sxx).exp()
}

/// One orthonormality failure (expected never).
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoViolation<S: Scalar> {
    pub i: usize,
    pub j: usize,
    pub expected: S,
    pub actual: S,
}

/// Result of checking `⟨e^{⊗i}, e^{⊗j}⟩_q = δ_{ij} [j]_q!` for all
/// `0 ≤ i, j ≤ j_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoReport<S: Scalar> {
    pub j_max: usize,
    pub pairs_checked: usize,
    pub violations: Vec<OrthoViolation<S>>,
}

impl<S: Scalar> OrthoReport<S> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Verify exactly that the unnormalized generator-power basis is
/// orthogonal with squared norms `[j]_q!`.
pub fn basis_orthonormality_check<S: Scalar>(j_max: usize, q: &QParam<S>) -> OrthoReport<S> {
    let powers: Vec<FockVector<S>> = (0..=j_max)
        .map(|j| FockVector::from_word(Word::power(0, j)))
        .collect();
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..=j_max {
        for j in 0..=j_max {
            pairs_checked += 1;
            let actual = crate::fock::inner_product(&powers[i], &powers[j], q);
            let expected = if i == j { q_factorial(j, q) } else { S::zero() };
            if actual != expected {
                violations.push(OrthoViolation {
                    i,
                    j,
                    expected,
                    actual,
                });
            }
        }
    }
    OrthoReport {
        j_max,
        pairs_checked,
        violations,
    }
}

/// Difference of `E_A(a x b)` and `a E_A(x) b` on vector symbols, for
/// `a = W(pure_word_a)`, `b = W(pure_word_b)` in A and `x = W(ξ)`.
/// Bimodularity of the conditional expectation makes this identically
/// zero; the function computes both sides independently.
pub fn bimodularity_check<S: Scalar>(
    pure_word_a: &Word,
    xi: &FockVector<S>,
    pure_word_b: &Word,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    for w in [pure_word_a, pure_word_b] {
        if !w.is_pure(0) {
            return Err(Error::NotPureWord(w.clone()));
        }
    }
    let b_omega = FockVector::from_word(pure_word_b.clone());
    let x_b = apply_w_vector(xi, &b_omega, q, limits)?;
    let a_x_b = apply_w_word(pure_word_a, &x_b, q, limits)?;
    let lhs = project_pure_e(&a_x_b);

    let ea_x_b = apply_w_vector(&project_pure_e(xi), &b_omega, q, limits)?;
    let rhs = apply_w_word(pure_word_a, &ea_x_b, q, limits)?;
    Ok(lhs.sub(&rhs))
}

/// Serialized row of a mixing report; exact renderings accompany every
/// float when the exact backend produced the series.
#[derive(Debug, Clone, Serialize)]
pub struct MixingEntry {
    #[serde(rename = "N")]
    pub n: usize,
    pub c_exact: Option<String>,
    pub c_float: f64,
    pub partial_sum_exact: Option<String>,
    pub partial_sum_float: f64,
    pub ratio_exact: Option<String>,
    pub ratio_float: Option<f64>,
}

/// Machine-readable form of a [`MixingSeries`].
#[derive(Debug, Clone, Serialize)]
pub struct MixingReport {
    pub q: String,
    pub a: String,
    pub b: String,
    pub entries: Vec<MixingEntry>,
    pub fitted_rate: f64,
    pub verdict: String,
}

impl MixingReport {
    pub fn from_series<S: Scalar>(series: &MixingSeries<S>) -> Self {
        let q_string = series
            .q
            .value()
            .exact_repr()
            .unwrap_or_else(|| series.q.value().to_f64().to_string());
        let entries = series
            .values
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let ratio = series.ratios.get(n).and_then(|r| r.as_ref());
                MixingEntry {
                    n,
                    c_exact: c.exact_repr(),
                    c_float: c.to_f64(),
                    partial_sum_exact: series.partial_sums[n].exact_repr(),
                    partial_sum_float: series.partial_sums[n].to_f64(),
                    ratio_exact: ratio.and_then(Scalar::exact_repr),
                    ratio_float: ratio.map(Scalar::to_f64),
                }
            })
            .collect();
        MixingReport {
            q: q_string,
            a: series.word_a.to_string(),
            b: series.word_b.to_string(),
            entries,
            fitted_rate: series.fitted_rate,
            verdict: series.verdict.to_string(),
        }
    }

    /// CSV with one row per N; undefined cells stay empty, decimals use a
    /// point.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from(
            "N,c_exact,c_float,partial_sum_exact,partial_sum_float,ratio_exact,ratio_float\n",
        );
        for e in &self.entries {
            let cell = |s: &Option<String>| s.clone().unwrap_or_default();
            let ratio_float = e
                .ratio_float
                .map(|x| x.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                e.n,
                cell(&e.c_exact),
                e.c_float,
                cell(&e.partial_sum_exact),
                e.partial_sum_float,
                cell(&e.ratio_exact),
                ratio_float,
            ));
        }
        out
    }
}
