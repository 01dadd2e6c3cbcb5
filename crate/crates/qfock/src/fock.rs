//! Words, Fock vectors, the q-inner product, and first quantization.
//!
//! The space is the algebraic direct sum of tensor powers of a real Hilbert
//! space with a fixed finite orthonormal basis. A [`Word`] is a simple
//! tensor of basis letters (the empty word is the vacuum), a [`FockVector`]
//! a finite linear combination of words. The q-inner product weights
//! permutations by `q^{inversions}`; it comes in two independent
//! implementations: [`inner_product_bruteforce`] enumerates the symmetric
//! group literally (the oracle, capped at degree 8) and [`inner_product`]
//! recurses through the annihilation adjoint with memoization (the
//! production path, polynomial per word pair).

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{QParam, Scalar};

/// Index into the orthonormal basis. Letter 0 is the distinguished
/// generator `e`.
pub type Letter = usize;

/// Degree bound for the literal S_n enumeration: 8! = 40320 permutations.
pub const BRUTE_FORCE_DEGREE_CAP: usize = 8;

/// Enumeration guards.
///
/// `degree_cap` bounds word growth under creation operators;
/// `wick_cap` bounds Wick expansion (2^n monomials for a degree-n word).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub degree_cap: usize,
    pub wick_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: 64,
            wick_cap: 20,
        }
    }
}

impl Limits {
    pub fn with_degree_cap(degree_cap: usize) -> Self {
        Limits {
            degree_cap,
            ..Limits::default()
        }
    }

    pub fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.degree_cap {
            Err(Error::DegreeCapExceeded {
                degree,
                cap: self.degree_cap,
            })
        } else {
            Ok(())
        }
    }
}

/// The finite orthonormal basis: letters `0..dim`, letter 0 being the
/// distinguished generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Basis {
    dim: usize,
}

impl Basis {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(Error::DimensionTooSmall { dim, required: 1 });
        }
        Ok(Basis { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Mixing-theorem operations need at least one letter orthogonal to
    /// the generator.
    pub fn require_dim(&self, required: usize) -> Result<()> {
        if self.dim < required {
            Err(Error::DimensionTooSmall {
                dim: self.dim,
                required,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, word: &Word) -> Result<()> {
        for &letter in word.letters() {
            if letter >= self.dim {
                return Err(Error::LetterOutOfRange {
                    letter,
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }
}

/// A simple tensor of basis letters; the empty word is the vacuum.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// The vacuum.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// `letter^{⊗n}`.
    pub fn power(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when every letter equals `letter` (vacuously true for the vacuum).
    pub fn is_pure(&self, letter: Letter) -> bool {
        self.0.iter().all(|&l| l == letter)
    }

    /// New word with `letter` prepended.
    pub fn prepended(&self, letter: Letter) -> Self {
        let mut letters = Vec::with_capacity(self.0.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// New word with `n` copies of `letter` prepended.
    pub fn prepended_power(&self, letter: Letter, n: usize) -> Self {
        let mut letters = vec![letter; n];
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    /// New word with the letter at `index` removed.
    pub fn removed(&self, index: usize) -> Self {
        let mut letters = self.0.clone();
        letters.remove(index);
        Word(letters)
    }

    /// Multiset of letters, for orthogonality screening.
    pub fn letter_counts(&self) -> BTreeMap<Letter, usize> {
        let mut counts = BTreeMap::new();
        for &l in &self.0 {
            *counts.entry(l).or_insert(0) += 1;
        }
        counts
    }

    /// Parse the comma-separated CLI form; the empty string is the vacuum.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for part in trimmed.split(',') {
            let letter: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::WordParse(text.to_string()))?;
            letters.push(letter);
        }
        Ok(Word(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Ω");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Finite sparse linear combination of words with nonzero coefficients.
///
/// The map is kept canonical: inserting a zero removes the term, so two
/// vectors are equal iff their term maps are equal. Iteration order is the
/// derived lexicographic order on words, which makes every rendering
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<S: Scalar> {
    terms: BTreeMap<Word, S>,
}

impl<S: Scalar> FockVector<S> {
    pub fn zero() -> Self {
        FockVector {
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum with coefficient 1.
    pub fn vacuum() -> Self {
        FockVector::from_word(Word::empty())
    }

    pub fn from_word(word: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(word, S::one());
        FockVector { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, S)>>(iter: I) -> Self {
        let mut v = FockVector::zero();
        for (word, coeff) in iter {
            v.add_term(word, coeff);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> S {
        self.terms.get(word).cloned().unwrap_or_else(S::zero)
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(Word::degree).max().unwrap_or(0)
    }

    /// Add `coeff · word`, dropping the term if the sum cancels.
    pub fn add_term(&mut self, word: Word, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.remove(&word) {
            None => {
                self.terms.insert(word, coeff);
            }
            Some(existing) => {
                let sum = existing + coeff;
                if !sum.is_zero() {
                    self.terms.insert(word, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (word, coeff) in other.terms() {
            out.add_term(word.clone(), coeff.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (word, coeff) in other.terms() {
            out.add_term(word.clone(), -coeff.clone());
        }
        out
    }

    pub fn scaled(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return FockVector::zero();
        }
        FockVector {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * factor.clone()))
                .collect(),
        }
    }

    /// In-place `self += factor · other`.
    pub fn add_scaled(&mut self, factor: &S, other: &Self) {
        if factor.is_zero() {
            return;
        }
        for (word, coeff) in other.terms() {
            self.add_term(word.clone(), coeff.clone() * factor.clone());
        }
    }
}

impl<S: Scalar> fmt::Display for FockVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{c}·({w})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Literal q-inner product: the bilinear extension of
/// `⟨u, w⟩_q = δ(|u| = |w|) · Σ_{σ ∈ S_m} q^{|σ|} Π_k δ(u_k, w_{σ(k)})`,
/// enumerating every permutation. Oracle only; degrees past
/// [`BRUTE_FORCE_DEGREE_CAP`] per enumerated pair are refused.
pub fn inner_product_bruteforce<S: Scalar>(
    v: &FockVector<S>,
    w: &FockVector<S>,
    q: &QParam<S>,
) -> Result<S> {
    let mut total = S::zero();
    for (wv, cv) in v.terms() {
        for (ww, cw) in w.terms() {
            if wv.degree() != ww.degree() {
                continue;
            }
            let n = wv.degree();
            if n > BRUTE_FORCE_DEGREE_CAP {
                return Err(Error::BruteForceDegree {
                    degree: n,
                    cap: BRUTE_FORCE_DEGREE_CAP,
                });
            }
            let pair = bruteforce_words(wv.letters(), ww.letters(), q);
            total = total + cv.clone() * cw.clone() * pair;
        }
    }
    Ok(total)
}

fn bruteforce_words<S: Scalar>(u: &[Letter], w: &[Letter], q: &QParam<S>) -> S {
    let n = u.len();
    // Tally matching permutations by inversion count, then fold the
    // histogram into Σ count·q^k; scalar work stays out of the n! loop.
    let max_inversions = n.saturating_sub(1) * n / 2;
    let mut tally = vec![0u64; max_inversions + 1];
    let mut sigma: Vec<usize> = (0..n).collect();
    for_each_permutation(&mut sigma, 0, &mut |sigma| {
        for k in 0..n {
            if u[k] != w[sigma[k]] {
                return;
            }
        }
        let mut inversions = 0;
        for a in 0..n {
            for b in (a + 1)..n {
                if sigma[a] > sigma[b] {
                    inversions += 1;
                }
            }
        }
        tally[inversions] += 1;
    });
    let mut sum = S::zero();
    let mut power = S::one();
    for count in tally {
        if count > 0 {
            sum = sum + power.clone() * S::from_int(count as i64);
        }
        power = power * q.value().clone();
    }
    sum
}

/// Visit every permutation of `items[at..]` in place.
fn for_each_permutation<F: FnMut(&[usize])>(items: &mut [usize], at: usize, f: &mut F) {
    if at == items.len() {
        f(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        for_each_permutation(items, at + 1, f);
        items.swap(at, i);
    }
}

/// Production q-inner product via the annihilation adjoint:
/// `⟨f ⊗ ξ, η⟩_q = Σ_{i : η_i = f} q^{i-1} ⟨ξ, η \ i⟩_q`,
/// memoized on the remaining word pair. Agrees with
/// [`inner_product_bruteforce`] wherever the latter is defined.
pub fn inner_product<S: Scalar>(v: &FockVector<S>, w: &FockVector<S>, q: &QParam<S>) -> S {
    // Memo table is local to the top-level call: entries are keyed by word
    // content, so equal subproblems from different term pairs share work.
    let mut memo: HashMap<(Vec<Letter>, Vec<Letter>), S> = HashMap::new();
    let mut total = S::zero();
    for (wv, cv) in v.terms() {
        for (ww, cw) in w.terms() {
            if wv.degree() != ww.degree() {
                continue;
            }
            if wv.letter_counts() != ww.letter_counts() {
                continue;
            }
            let pair = inner_words_memo(wv.letters(), ww.letters(), q, &mut memo);
            total = total + cv.clone() * cw.clone() * pair;
        }
    }
    total
}

fn inner_words_memo<S: Scalar>(
    u: &[Letter],
    w: &[Letter],
    q: &QParam<S>,
    memo: &mut HashMap<(Vec<Letter>, Vec<Letter>), S>,
) -> S {
    if u.is_empty() {
        return S::one();
    }
    let key = (u.to_vec(), w.to_vec());
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let first = u[0];
    let rest = &u[1..];
    let mut sum = S::zero();
    let mut weight = S::one();
    for (i, &letter) in w.iter().enumerate() {
        if letter == first {
            let mut remaining = Vec::with_capacity(w.len() - 1);
            remaining.extend_from_slice(&w[..i]);
            remaining.extend_from_slice(&w[i + 1..]);
            let tail = inner_words_memo(rest, &remaining, q, memo);
            sum = sum + weight.clone() * tail;
        }
        weight = weight * q.value().clone();
    }
    memo.insert(key, sum.clone());
    sum
}

/// `⟨v, v⟩_q`; nonnegative for |q| < 1.
pub fn norm_sq<S: Scalar>(v: &FockVector<S>, q: &QParam<S>) -> S {
    let result = inner_product(v, v, q);
    debug_assert!(
        !S::EXACT || !result.is_negative(),
        "q-inner product must be positive semidefinite"
    );
    result
}

/// A linear map on the base Hilbert space with operator norm at most 1,
/// stored as a dim × dim matrix in the chosen basis: column `l` holds the
/// coefficients of `T e_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct Contraction<S: Scalar> {
    dim: usize,
    /// `entries[j][l] = ⟨e_j, T e_l⟩`.
    entries: Vec<Vec<S>>,
}

/// Float slack for the contractivity check; exact singular values would
/// need algebraic numbers.
const CONTRACTION_SLACK: f64 = 1e-9;

impl<S: Scalar> Contraction<S> {
    /// Build from rows and certify `‖T‖ ≤ 1 + 1e-9` in floating point.
    pub fn new(entries: Vec<Vec<S>>) -> Result<Self> {
        let dim = entries.len();
        assert!(dim > 0 && entries.iter().all(|row| row.len() == dim));
        let norm = spectral_norm_estimate(&entries);
        if norm > 1.0 + CONTRACTION_SLACK {
            return Err(Error::NotAContraction(norm));
        }
        Ok(Contraction { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|l| if j == l { S::one() } else { S::zero() })
                    .collect()
            })
            .collect();
        Contraction { dim, entries }
    }

    /// The orthogonal projection `E_e` onto the span of the generator
    /// letter. A coordinate projection, so exactly contractive.
    pub fn projection_onto_e(dim: usize) -> Self {
        let entries = (0..dim)
            .map(|j| {
                (0..dim)
                    .map(|l| if j == 0 && l == 0 { S::one() } else { S::zero() })
                    .collect()
            })
            .collect();
        Contraction { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &S {
        &self.entries[row][col]
    }
}

/// Largest singular value, estimated by power iteration on `TᵀT` from every
/// basis start (the basis spans, so the top eigenvector is never missed).
fn spectral_norm_estimate<S: Scalar>(entries: &[Vec<S>]) -> f64 {
    let d = entries.len();
    let a: Vec<Vec<f64>> = entries
        .iter()
        .map(|row| row.iter().map(Scalar::to_f64).collect())
        .collect();
    // gram[i][j] = (TᵀT)_{ij}
    let mut gram = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..d {
            gram[i][j] = (0..d).map(|k| a[k][i] * a[k][j]).sum();
        }
    }
    let mut best: f64 = 0.0;
    for start in 0..d {
        let mut v = vec![0.0; d];
        v[start] = 1.0;
        let mut lambda = 0.0;
        for _ in 0..200 {
            let mut next = vec![0.0; d];
            for i in 0..d {
                for j in 0..d {
                    next[i] += gram[i][j] * v[j];
                }
            }
            let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm == 0.0 {
                lambda = 0.0;
                break;
            }
            for x in &mut next {
                *x /= norm;
            }
            lambda = norm;
            v = next;
        }
        best = best.max(lambda);
    }
    best.sqrt()
}

/// First quantization `F_q(T)`: identity on the vacuum, `T^{⊗n}` in degree
/// n, expanded multilinearly and re-canonicalized.
pub fn first_quantization<S: Scalar>(t: &Contraction<S>, v: &FockVector<S>) -> FockVector<S> {
    let mut out = FockVector::zero();
    for (word, coeff) in v.terms() {
        // Expand ⊗_k (T e_{l_k}) over the basis.
        let mut acc: Vec<(Vec<Letter>, S)> = vec![(Vec::new(), coeff.clone())];
        for &letter in word.letters() {
            let mut next = Vec::new();
            for (prefix, c) in &acc {
                for j in 0..t.dim() {
                    let entry = t.entry(j, letter);
                    if entry.is_zero() {
                        continue;
                    }
                    let mut extended = prefix.clone();
                    extended.push(j);
                    next.push((extended, c.clone() * entry.clone()));
                }
            }
            acc = next;
        }
        for (letters, c) in acc {
            out.add_term(Word::new(letters), c);
        }
    }
    out
}

/// Retain exactly the terms whose words use only the generator letter.
///
/// Identical to `first_quantization(E_e, ·)` but a single O(terms) filter;
/// this is the vector-level form of the conditional expectation onto the
/// generator subalgebra.
pub fn project_pure_e<S: Scalar>(v: &FockVector<S>) -> FockVector<S> {
    FockVector {
        terms: v
            .terms
            .iter()
            .filter(|(w, _)| w.is_pure(0))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect(),
    }
}

/// All words over `dim` letters with degree at most `max_degree`, in
/// graded lexicographic order (so the Gram matrix is block-diagonal by
/// degree).
pub fn words_up_to_degree(dim: usize, max_degree: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut current: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for word in &current {
            for letter in 0..dim {
                let mut extended = word.clone();
                extended.push(letter);
                next.push(extended);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        current = next;
    }
    out
}

/// Exact Gram matrix of the given words under the q-inner product.
pub fn gram_matrix<S: Scalar>(words: &[Word], q: &QParam<S>) -> Vec<Vec<S>> {
    let vectors: Vec<FockVector<S>> = words
        .iter()
        .map(|w| FockVector::from_word(w.clone()))
        .collect();
    let n = words.len();
    let mut gram = vec![vec![S::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let value = inner_product(&vectors[i], &vectors[j], q);
            gram[i][j] = value.clone();
            gram[j][i] = value;
        }
    }
    gram
}

/// Pivots of the exact LDLᵀ factorization of a symmetric matrix.
///
/// No pivoting: a zero pivot is accepted only when its entire remaining
/// column vanishes (the semidefinite case); a negative pivot, or a zero
/// pivot with a nonzero column, reports the matrix as not positive
/// semidefinite. All pivots nonnegative hence certifies PSD exactly.
pub fn ldlt_pivots<S: Scalar>(matrix: &[Vec<S>]) -> Result<Vec<S>> {
    let n = matrix.len();
    let mut a: Vec<Vec<S>> = matrix.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let d = a[k][k].clone();
        if d.is_negative() {
            return Err(Error::NotPositiveSemidefinite(k));
        }
        if d.is_zero() {
            for i in (k + 1)..n {
                if !a[i][k].is_zero() {
                    return Err(Error::NotPositiveSemidefinite(k));
                }
            }
            pivots.push(d);
            continue;
        }
        for i in (k + 1)..n {
            let l_ik = a[i][k].clone().checked_div(&d).expect("nonzero pivot");
            for j in (k + 1)..=i {
                let update = l_ik.clone() * a[j][k].clone();
                a[i][j] = a[i][j].clone() - update;
                a[j][i] = a[i][j].clone();
            }
        }
        pivots.push(d);
    }
    Ok(pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q_factorial, Rational};
    use num::{One, Signed, Zero};

    fn q(p: i64, d: i64) -> QParam<Rational> {
        QParam::from_ratio(p, d).unwrap()
    }

    fn word(letters: &[Letter]) -> Word {
        Word::new(letters.to_vec())
    }

    fn wv(letters: &[Letter]) -> FockVector<Rational> {
        FockVector::from_word(word(letters))
    }

    #[test]
    fn word_parse_round_trip() {
        assert_eq!(Word::parse("").unwrap(), Word::empty());
        assert_eq!(Word::parse("0,1,1,0").unwrap(), word(&[0, 1, 1, 0]));
        assert_eq!(Word::parse(" 2 , 3 ").unwrap(), word(&[2, 3]));
        assert!(Word::parse("0,x").is_err());
        assert_eq!(word(&[0, 1]).to_string(), "0,1");
        assert_eq!(Word::empty().to_string(), "Ω");
    }

    #[test]
    fn fock_vector_canonical_form() {
        let mut v: FockVector<Rational> = FockVector::zero();
        v.add_term(word(&[0]), Rational::one());
        v.add_term(word(&[0]), -Rational::one());
        assert!(v.is_zero());
        v.add_term(word(&[1]), Rational::from_int(3));
        v.add_term(Word::empty(), Rational::from_int(2));
        assert_eq!(v.len(), 2);
        assert_eq!(v.coeff(&word(&[1])), Rational::from_int(3));
        assert_eq!(v.coeff(&word(&[0, 0])), Rational::zero());
    }

    #[test]
    fn bruteforce_examples() {
        let qp = q(1, 2);
        // ⟨Ω, Ω⟩ = 1
        let vac: FockVector<Rational> = FockVector::vacuum();
        assert_eq!(
            inner_product_bruteforce(&vac, &vac, &qp).unwrap(),
            Rational::one()
        );
        // ⟨e⊗e, e⊗e⟩ = 1 + q = [2]_q!
        let ee = wv(&[0, 0]);
        assert_eq!(
            inner_product_bruteforce(&ee, &ee, &qp).unwrap(),
            Rational::one() + qp.value().clone()
        );
        // ⟨e⊗f, f⊗e⟩ = q and ⟨e⊗f, e⊗f⟩ = 1 for f ⊥ e.
        let ef = wv(&[0, 1]);
        let fe = wv(&[1, 0]);
        assert_eq!(
            inner_product_bruteforce(&ef, &fe, &qp).unwrap(),
            qp.value().clone()
        );
        assert_eq!(
            inner_product_bruteforce(&ef, &ef, &qp).unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn bruteforce_degree_guard() {
        let qp = q(1, 2);
        let long = wv(&[0; 9]);
        assert_eq!(
            inner_product_bruteforce(&long, &long, &qp),
            Err(Error::BruteForceDegree { degree: 9, cap: 8 })
        );
        // Mixed degrees are never enumerated, so no guard trips.
        let short = wv(&[0]);
        assert_eq!(
            inner_product_bruteforce(&long, &short, &qp).unwrap(),
            Rational::zero()
        );
    }

    #[test]
    fn recursive_matches_norm_formula() {
        for &(p, d) in &[(0i64, 1i64), (1, 2), (-1, 2), (3, 10), (-3, 10)] {
            let qp = q(p, d);
            for n in 0..=10 {
                let en = wv(&vec![0; n]);
                assert_eq!(
                    inner_product(&en, &en, &qp),
                    q_factorial(n, &qp),
                    "n = {n}, q = {p}/{d}"
                );
            }
        }
    }

    #[test]
    fn degree_orthogonality() {
        let qp = q(1, 2);
        for i in 0..5usize {
            for j in 0..5usize {
                if i == j {
                    continue;
                }
                let vi = wv(&vec![0; i]);
                let vj = wv(&vec![0; j]);
                assert_eq!(inner_product(&vi, &vj, &qp), Rational::zero());
            }
        }
    }

    #[test]
    fn oracle_equivalence_exhaustive() {
        // Every word pair of degree ≤ 7 over 2 letters, four q values.
        for &(p, d) in &[(0i64, 1i64), (1, 2), (-1, 2), (-3, 10)] {
            let qp = q(p, d);
            for degree in 0..=7usize {
                let words: Vec<Word> = (0..(1usize << degree))
                    .map(|bits| {
                        Word::new((0..degree).map(|k| (bits >> k) & 1).collect())
                    })
                    .collect();
                for a in &words {
                    let va = FockVector::from_word(a.clone());
                    for b in &words {
                        let vb = FockVector::from_word(b.clone());
                        assert_eq!(
                            inner_product(&va, &vb, &qp),
                            inner_product_bruteforce(&va, &vb, &qp).unwrap(),
                            "⟨{a}, {b}⟩ at q = {p}/{d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn free_case_is_kronecker_delta() {
        let qp: QParam<Rational> = QParam::zero();
        let words = words_up_to_degree(2, 4);
        for a in &words {
            for b in &words {
                let expected = if a == b {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                assert_eq!(
                    inner_product(
                        &FockVector::from_word(a.clone()),
                        &FockVector::from_word(b.clone()),
                        &qp
                    ),
                    expected
                );
            }
        }
    }

    #[test]
    fn norm_sq_of_antisymmetric_pair() {
        // norm²(e⊗f − f⊗e) = 2 − 2q, which is 1 at q = 1/2.
        let qp = q(1, 2);
        let v = wv(&[0, 1]).sub(&wv(&[1, 0]));
        assert_eq!(norm_sq(&v, &qp), Rational::one());
        let brute = inner_product_bruteforce(&v, &v, &qp).unwrap();
        assert_eq!(brute, Rational::one());
    }

    #[test]
    fn first_quantization_identity_and_projection() {
        let id = Contraction::<Rational>::identity(2);
        let proj = Contraction::<Rational>::projection_onto_e(2);
        let v = wv(&[0, 0, 0]).add(&wv(&[0, 1]).scaled(&Rational::from_int(2)));
        assert_eq!(first_quantization(&id, &v), v);
        // E_e kills any word with an orthogonal letter.
        assert_eq!(first_quantization(&proj, &wv(&[1, 1])), FockVector::zero());
        assert_eq!(first_quantization(&proj, &v), wv(&[0, 0, 0]));
    }

    #[test]
    fn project_pure_e_examples() {
        let v = FockVector::vacuum().add(&wv(&[0, 1]));
        assert_eq!(project_pure_e(&v), FockVector::vacuum());
        assert_eq!(project_pure_e(&wv(&[0, 0, 0, 0])), wv(&[0, 0, 0, 0]));
        let mixed = wv(&[1, 1])
            .scaled(&Rational::from_int(3))
            .add(&wv(&[0, 0]).scaled(&Rational::from_int(2)));
        assert_eq!(
            project_pure_e(&mixed),
            wv(&[0, 0]).scaled(&Rational::from_int(2))
        );
    }

    #[test]
    fn project_pure_e_idempotent_and_nonincreasing() {
        let qp = q(-1, 2);
        let v = wv(&[0, 0])
            .add(&wv(&[0, 1]).scaled(&Rational::from_int(3)))
            .add(&FockVector::vacuum());
        let p = project_pure_e(&v);
        assert_eq!(project_pure_e(&p), p);
        assert!(norm_sq(&p, &qp) <= norm_sq(&v, &qp));
    }

    #[test]
    fn first_quantization_e_projection_agrees_with_filter() {
        let proj = Contraction::<Rational>::projection_onto_e(2);
        let samples = [
            FockVector::vacuum(),
            wv(&[0, 1, 0]),
            wv(&[0, 0]).add(&wv(&[1, 0]).scaled(&Rational::from_int(-2))),
        ];
        for v in &samples {
            assert_eq!(first_quantization(&proj, v), project_pure_e(v));
        }
    }

    #[test]
    fn contraction_rejects_expansion() {
        let too_big = Contraction::new(vec![
            vec![Rational::from_int(2), Rational::zero()],
            vec![Rational::zero(), Rational::one()],
        ]);
        assert!(matches!(too_big, Err(Error::NotAContraction(_))));
        // Strict contraction passes.
        let half = Rational::new(num::BigInt::from(1), num::BigInt::from(2));
        let shrink = Contraction::new(vec![
            vec![half, Rational::zero()],
            vec![Rational::zero(), Rational::one()],
        ]);
        assert!(shrink.is_ok());
    }

    #[test]
    fn words_enumeration_counts() {
        let words = words_up_to_degree(2, 4);
        assert_eq!(words.len(), 31); // 1 + 2 + 4 + 8 + 16
        assert_eq!(words[0], Word::empty());
        let words3 = words_up_to_degree(3, 2);
        assert_eq!(words3.len(), 13); // 1 + 3 + 9
    }

    #[test]
    fn gram_ldlt_positive_at_rational_q() {
        for &(p, d) in &[(1i64, 2i64), (-1, 2), (3, 10), (-3, 10)] {
            let qp = q(p, d);
            let words = words_up_to_degree(2, 3);
            let gram = gram_matrix(&words, &qp);
            let pivots = ldlt_pivots(&gram).unwrap();
            assert_eq!(pivots.len(), words.len());
            assert!(pivots.iter().all(|p| !p.is_negative()));
        }
    }

    #[test]
    fn ldlt_detects_indefinite() {
        let m = vec![
            vec![Rational::one(), Rational::from_int(3)],
            vec![Rational::from_int(3), Rational::one()],
        ];
        assert!(matches!(
            ldlt_pivots(&m),
            Err(Error::NotPositiveSemidefinite(_))
        ));
        // Semidefinite with an exactly zero pivot is accepted.
        let psd = vec![
            vec![Rational::one(), Rational::one()],
            vec![Rational::one(), Rational::one()],
        ];
        let pivots = ldlt_pivots(&psd).unwrap();
        assert_eq!(pivots, vec![Rational::one(), Rational::zero()]);
    }

    #[test]
    fn limits_guard() {
        let limits = Limits::default();
        assert_eq!(limits.degree_cap, 64);
        assert_eq!(limits.wick_cap, 20);
        assert!(limits.check_degree(64).is_ok());
        assert!(limits.check_degree(65).is_err());
    }
}
