//! Creation/annihilation operators, Wick expansions, and operator
//! application.
//!
//! `W(ξ)` is the unique operator in the q-Gaussian algebra with
//! `W(ξ)Ω = ξ`. Three evaluation paths are provided and cross-checked:
//! the normal-ordered expansion of [`wick_expand`] (production), the
//! recursion of [`apply_w_recursive`] (independent oracle), and the
//! grouped single-letter form of [`apply_w_power`] which collapses the
//! `2^n` expansion of a constant word to `n + 1` terms weighted by
//! q-binomials. Operators act on vectors functionally; nothing is
//! materialized as a matrix.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::fock::{FockVector, Letter, Limits, Word};
use crate::scalar::{pow, q_binomial, QParam, Scalar};

/// Whether a ladder factor adds or removes a tensor slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LadderKind {
    Create,
    Annihilate,
}

/// One `ℓ(e_letter)` or `ℓ*(e_letter)` factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LadderFactor {
    pub kind: LadderKind,
    pub letter: Letter,
}

impl LadderFactor {
    pub fn create(letter: Letter) -> Self {
        LadderFactor {
            kind: LadderKind::Create,
            letter,
        }
    }

    pub fn annihilate(letter: Letter) -> Self {
        LadderFactor {
            kind: LadderKind::Annihilate,
            letter,
        }
    }
}

impl fmt::Display for LadderFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            LadderKind::Create => 'c',
            LadderKind::Annihilate => 'a',
        };
        write!(f, "{tag}{}", self.letter)
    }
}

/// One weighted product of ladder factors, composed right-to-left.
///
/// In a Wick expansion the factors are normal-ordered: every create
/// precedes every annihilate, and the weight is `q^{inversions}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderMonomial<S: Scalar> {
    pub factors: Vec<LadderFactor>,
    pub inversions: usize,
    pub weight: S,
}

impl<S: Scalar> fmt::Display for LadderMonomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{} ·", self.inversions)?;
        if self.factors.is_empty() {
            write!(f, " id")?;
        }
        for factor in &self.factors {
            write!(f, " {factor}")?;
        }
        Ok(())
    }
}

/// The full normal-ordered expansion of `W(ξ)`: `2^n` monomials for a
/// degree-n word, one per coset representative.
#[derive(Debug, Clone, PartialEq)]
pub struct WickExpansion<S: Scalar> {
    pub source: Word,
    pub monomials: Vec<LadderMonomial<S>>,
}

impl<S: Scalar> fmt::Display for WickExpansion<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, m) in self.monomials.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// A minimal-inversion coset representative of `S_{n−i} × S_i` in `S_n`,
/// stored as the sequence `σ(1), …, σ(n)` of 1-based source positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShuffleRep {
    pub perm: Vec<usize>,
    pub inversions: usize,
}

/// Left creation: prepend the letter to every word of `v`.
pub fn create<S: Scalar>(letter: Letter, v: &FockVector<S>, limits: &Limits) -> Result<FockVector<S>> {
    let mut out = FockVector::zero();
    for (word, coeff) in v.terms() {
        limits.check_degree(word.degree() + 1)?;
        out.add_term(word.prepended(letter), coeff.clone());
    }
    Ok(out)
}

/// Annihilation, the adjoint of [`create`]:
/// `ℓ*(e)(e₁⊗⋯⊗e_n) = Σ_i q^{i−1} ⟨e, e_i⟩ (word with position i removed)`,
/// and `ℓ*(e)Ω = 0`.
pub fn annihilate<S: Scalar>(letter: Letter, v: &FockVector<S>, q: &QParam<S>) -> FockVector<S> {
    let mut out = FockVector::zero();
    for (word, coeff) in v.terms() {
        let mut weight = S::one();
        for (i, &l) in word.letters().iter().enumerate() {
            if l == letter {
                out.add_term(word.removed(i), coeff.clone() * weight.clone());
            }
            weight = weight * q.value().clone();
        }
    }
    out
}

/// Shuffle enumeration past this point would produce more than 2^20
/// representatives; refuse rather than hang.
const SHUFFLE_ENUMERATION_CAP: usize = 20;

/// All `(n−i, i)`-shuffles: permutations of `{1..n}` increasing on the
/// first `n−i` positions and on the last `i` positions. These are the
/// minimal-inversion representatives of the cosets of `S_{n−i} × S_i`,
/// `n!/((n−i)!·i!)` of them, in lexicographic order of the leading block.
pub fn shuffle_representatives(n: usize, i: usize) -> Result<Vec<ShuffleRep>> {
    if i > n || n > SHUFFLE_ENUMERATION_CAP {
        return Err(Error::ShuffleOutOfRange {
            n,
            i,
            cap: SHUFFLE_ENUMERATION_CAP,
        });
    }
    let mut reps = Vec::new();
    for head in (1..=n).combinations(n - i) {
        let mut perm = head.clone();
        perm.extend((1..=n).filter(|p| !head.contains(p)));
        let mut inversions = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if perm[a] > perm[b] {
                    inversions += 1;
                }
            }
        }
        reps.push(ShuffleRep { perm, inversions });
    }
    Ok(reps)
}

/// Normal-ordered expansion of `W(ξ)`:
/// `Σ_{i=0}^{n} Σ_σ q^{|σ|} ℓ(ξ_{σ(1)})⋯ℓ(ξ_{σ(n−i)}) ℓ*(ξ_{σ(n−i+1)})⋯ℓ*(ξ_{σ(n)})`
/// with σ ranging over the shuffle representatives. The defining identity
/// `apply(expansion, Ω) = ξ` pins the coset convention down.
pub fn wick_expand<S: Scalar>(
    word: &Word,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<WickExpansion<S>> {
    let n = word.degree();
    if n > limits.wick_cap {
        return Err(Error::WickCapExceeded {
            degree: n,
            cap: limits.wick_cap,
        });
    }
    let letters = word.letters();
    let mut monomials = Vec::new();
    for i in 0..=n {
        for rep in shuffle_representatives(n, i)? {
            let factors = rep
                .perm
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    let letter = letters[p - 1];
                    if k < n - i {
                        LadderFactor::create(letter)
                    } else {
                        LadderFactor::annihilate(letter)
                    }
                })
                .collect();
            monomials.push(LadderMonomial {
                factors,
                inversions: rep.inversions,
                weight: q.pow(rep.inversions),
            });
        }
    }
    Ok(WickExpansion {
        source: word.clone(),
        monomials,
    })
}

/// Apply one monomial to a vector: factors act right-to-left, then the
/// weight scales the result.
pub fn apply_monomial<S: Scalar>(
    monomial: &LadderMonomial<S>,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let mut current = v.clone();
    for factor in monomial.factors.iter().rev() {
        if current.is_zero() {
            break;
        }
        current = match factor.kind {
            LadderKind::Create => create(factor.letter, &current, limits)?,
            LadderKind::Annihilate => annihilate(factor.letter, &current, q),
        };
    }
    Ok(current.scaled(&monomial.weight))
}

/// Apply a Wick expansion: the weighted sum of its monomial applications.
pub fn apply_wick<S: Scalar>(
    expansion: &WickExpansion<S>,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let mut out = FockVector::zero();
    for monomial in &expansion.monomials {
        out = out.add(&apply_monomial(monomial, v, q, limits)?);
    }
    Ok(out)
}

/// `W(letter^{⊗n}) v` through the grouped normal-ordered form
/// `Σ_{i=0}^{n} [n over i]_q ℓ(e)^{n−i} ℓ*(e)^i`.
///
/// For a constant word every monomial of [`wick_expand`] with `i`
/// annihilators is the same operator, and the shuffle weights sum to the
/// q-binomial, so this is the identical operator in `n + 1` terms instead
/// of `2^n`. Annihilation strictly lowers degree, so the loop stops as
/// soon as `ℓ*(e)^i v` vanishes; constant words thereby clear the Wick
/// cap and are bounded only by the degree cap.
pub fn apply_w_power<S: Scalar>(
    letter: Letter,
    n: usize,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let mut out = FockVector::zero();
    let mut annihilated = v.clone();
    for i in 0..=n {
        if annihilated.is_zero() {
            break;
        }
        let coeff = q_binomial(n, i, q)?;
        let mut created = FockVector::zero();
        for (word, c) in annihilated.terms() {
            limits.check_degree(word.degree() + (n - i))?;
            created.add_term(word.prepended_power(letter, n - i), c.clone());
        }
        out.add_scaled(&coeff, &created);
        annihilated = annihilate(letter, &annihilated, q);
    }
    Ok(out)
}

/// `W(word) v`. Constant words (a single repeated letter, the vacuum
/// included) go through [`apply_w_power`]; everything else through the
/// full Wick expansion.
pub fn apply_w_word<S: Scalar>(
    word: &Word,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let letters = word.letters();
    if let Some((&first, rest)) = letters.split_first() {
        if rest.iter().all(|&l| l == first) {
            return apply_w_power(first, word.degree(), v, q, limits);
        }
    } else {
        return Ok(v.clone());
    }
    let expansion = wick_expand(word, q, limits)?;
    apply_wick(&expansion, v, q, limits)
}

/// Linear extension of [`apply_w_word`] in the operator symbol:
/// `W(Σ c_w w) v = Σ c_w W(w) v`.
pub fn apply_w_vector<S: Scalar>(
    symbol: &FockVector<S>,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let mut out = FockVector::zero();
    for (word, coeff) in symbol.terms() {
        let applied = apply_w_word(word, v, q, limits)?;
        out.add_scaled(coeff, &applied);
    }
    Ok(out)
}

/// Independent evaluation of `W(ξ) v` by the recursion
/// `W(f⊗η) = W(f)·W(η) − Σ_k q^{k−1} ⟨f, η_k⟩ W(η with position k removed)`,
/// seeded by `W(f) = ℓ(f) + ℓ*(f)` and `W(Ω) = id`. Exists purely as a
/// cross-check of the normal-ordered path.
pub fn apply_w_recursive<S: Scalar>(
    word: &Word,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let letters = word.letters();
    if letters.is_empty() {
        return Ok(v.clone());
    }
    let f = letters[0];
    let eta = Word::new(letters[1..].to_vec());
    let inner = apply_w_recursive(&eta, v, q, limits)?;
    let mut out = create(f, &inner, limits)?.add(&annihilate(f, &inner, q));
    let mut weight = S::one();
    for (k, &l) in eta.letters().iter().enumerate() {
        if l == f {
            let shorter = apply_w_recursive(&eta.removed(k), v, q, limits)?;
            out.add_scaled(&(-weight.clone()), &shorter);
        }
        weight = weight * q.value().clone();
    }
    Ok(out)
}

/// `(ℓ*(e_a) ℓ(e_b) − q ℓ(e_b) ℓ*(e_a) − δ_{ab}) v`; identically zero by
/// the q-commutation relation.
pub fn q_commutation_defect<S: Scalar>(
    a: Letter,
    b: Letter,
    v: &FockVector<S>,
    q: &QParam<S>,
    limits: &Limits,
) -> Result<FockVector<S>> {
    let lhs = annihilate(a, &create(b, v, limits)?, q);
    let rhs = create(b, &annihilate(a, v, q), limits)?;
    let mut out = lhs.sub(&rhs.scaled(q.value()));
    if a == b {
        out = out.sub(v);
    }
    Ok(out)
}

/// Vector symbol of the second quantization `Γ_q(T)` acting on the
/// operator with symbol `ξ`: since `Γ_q(T)(W(ξ)) = W(F_q(T) ξ)`, the
/// symbol transforms by first quantization.
pub fn second_quantization_vector<S: Scalar>(
    t: &crate::fock::Contraction<S>,
    xi: &FockVector<S>,
) -> FockVector<S> {
    crate::fock::first_quantization(t, xi)
}

/// Trace of the operator with symbol `ξ`: `τ(W(ξ)) = ⟨W(ξ)Ω, Ω⟩`, the
/// coefficient of the empty word.
pub fn trace<S: Scalar>(xi: &FockVector<S>) -> S {
    xi.coeff(&Word::empty())
}

/// `Σ q^{inversions}` over [`shuffle_representatives`]; equals
/// `q_binomial(n, i, q)`, exposed for the combinatorial cross-check.
pub fn shuffle_inversion_sum<S: Scalar>(n: usize, i: usize, q: &QParam<S>) -> Result<S> {
    let mut sum = S::zero();
    for rep in shuffle_representatives(n, i)? {
        sum = sum + pow(q.value(), rep.inversions);
    }
    Ok(sum)
}
