//! Free-group words, cyclic words and sparse linear combinations of them
//! with exact rational coefficients.
//!
//! Words are always stored freely reduced, cyclic words cyclically reduced
//! and in their canonical (lexicographically minimal) rotation. Raw letter
//! sequences handed to the constructors are reduced, never rejected.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient ring.
pub type Coeff = BigRational;

pub fn coeff(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a coefficient as `p/q` (always with a denominator).
pub fn format_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid coefficient `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// A free generator or its inverse, stored as a nonzero signed index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Generator(i32);

impl Generator {
    pub fn new(index: usize, inverse: bool) -> Self {
        assert!(index > 0, "generator indices start at 1");
        let i = index as i32;
        Generator(if inverse { -i } else { i })
    }

    pub fn from_signed(value: i32) -> Self {
        assert!(value != 0, "generator indices start at 1");
        Generator(value)
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Generator(-self.0)
    }
}

// (index, sign) with the positive letter first.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index(), self.is_inverse()).cmp(&(other.index(), other.is_inverse()))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn parse_letters(text: &str, alphabet: char) -> Result<Vec<Generator>> {
    let mut letters = Vec::new();
    for token in text.split_whitespace() {
        if token == "e" || token == "1" {
            continue;
        }
        let bad = || Error::Token {
            token: token.to_string(),
            alphabet,
        };
        let rest = token.strip_prefix(alphabet).ok_or_else(bad)?;
        let (digits, inverse) = match rest.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let index: usize = digits.parse().map_err(|_| bad())?;
        if index == 0 || index > i32::MAX as usize {
            return Err(bad());
        }
        letters.push(Generator::new(index, inverse));
    }
    Ok(letters)
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Generator], alphabet: char) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("e");
    }
    for (k, g) in letters.iter().enumerate() {
        if k > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{}{}", alphabet, g.index())?;
        if g.is_inverse() {
            f.write_str("^-1")?;
        }
    }
    Ok(())
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Generator>>(letters: I) -> Self {
        let mut out: Vec<Generator> = Vec::new();
        for g in letters {
            if out.last() == Some(&g.inverse()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    pub fn from_signed(letters: &[i32]) -> Self {
        Self::reduce(letters.iter().map(|&v| Generator::from_signed(v)))
    }

    pub fn generator(index: usize) -> Self {
        Word(vec![Generator::new(index, false)])
    }

    /// Parses the whitespace token grammar (`x1 x2^-1`, `e` for the empty word).
    pub fn parse(text: &str, alphabet: char) -> Result<Self> {
        Ok(Self::reduce(parse_letters(text, alphabet)?))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index()).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|g| g.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Self::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    pub fn display(&self, alphabet: char) -> WordDisplay<'_> {
        WordDisplay {
            letters: &self.0,
            alphabet,
        }
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

pub struct WordDisplay<'a> {
    letters: &'a [Generator],
    alphabet: char,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, self.letters, self.alphabet)
    }
}

/// A conjugacy class of a free group, i.e. a free homotopy class of loops.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CyclicWord(Vec<Generator>);

impl CyclicWord {
    pub fn empty() -> Self {
        CyclicWord(Vec::new())
    }

    /// Cyclically reduces `w` and picks the minimal rotation.
    pub fn from_word(w: &Word) -> Self {
        let letters = w.letters();
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        CyclicWord(minimal_rotation(&letters[lo..hi]))
    }

    pub fn parse(text: &str, alphabet: char) -> Result<Self> {
        Ok(Self::from_word(&Word::parse(text, alphabet)?))
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index()).max().unwrap_or(0)
    }

    /// The canonical rotation read as a based word.
    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    /// The rotation starting at letter `k`, as a based word.
    pub fn rotation(&self, k: usize) -> Word {
        let n = self.0.len();
        if n == 0 {
            return Word::empty();
        }
        Word((0..n).map(|t| self.0[(k + t) % n]).collect())
    }

    pub fn inverse(&self) -> Self {
        Self::from_word(&self.to_word().inverse())
    }

    pub fn pow(&self, n: u32) -> Self {
        Self::from_word(&self.to_word().pow(n as i64))
    }

    /// Length of the primitive root, so `self = root^(len / period)`.
    pub fn period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n % p == 0 && (0..n).all(|t| self.0[t] == self.0[(t + p) % n]))
            .unwrap_or(0)
    }

    pub fn is_primitive(&self) -> bool {
        !self.0.is_empty() && self.period() == self.0.len()
    }

    pub fn display(&self, alphabet: char) -> WordDisplay<'_> {
        WordDisplay {
            letters: &self.0,
            alphabet,
        }
    }
}

fn minimal_rotation(letters: &[Generator]) -> Vec<Generator> {
    let n = letters.len();
    if n == 0 {
        return Vec::new();
    }
    let best = (0..n)
        .min_by(|&a, &b| {
            (0..n)
                .map(|t| letters[(a + t) % n].cmp(&letters[(b + t) % n]))
                .find(|o| *o != Ordering::Equal)
                .unwrap_or(Ordering::Equal)
        })
        .unwrap_or(0);
    (0..n).map(|t| letters[(best + t) % n]).collect()
}

/// Basis elements of a [`Combination`].
pub trait Basis: Ord + Clone + fmt::Debug {
    /// Brackets used by the text rendering.
    const DELIMITERS: (char, char);
    fn max_index(&self) -> usize;
    fn is_identity(&self) -> bool;
    fn render(&self, alphabet: char) -> String;
    fn parse_basis(text: &str, alphabet: char) -> Result<Self>;
}

impl Basis for Word {
    const DELIMITERS: (char, char) = ('[', ']');
    fn max_index(&self) -> usize {
        Word::max_index(self)
    }
    fn is_identity(&self) -> bool {
        self.is_empty()
    }
    fn render(&self, alphabet: char) -> String {
        self.display(alphabet).to_string()
    }
    fn parse_basis(text: &str, alphabet: char) -> Result<Self> {
        Word::parse(text, alphabet)
    }
}

impl Basis for CyclicWord {
    const DELIMITERS: (char, char) = ('<', '>');
    fn max_index(&self) -> usize {
        CyclicWord::max_index(self)
    }
    fn is_identity(&self) -> bool {
        self.is_empty()
    }
    fn render(&self, alphabet: char) -> String {
        self.display(alphabet).to_string()
    }
    fn parse_basis(text: &str, alphabet: char) -> Result<Self> {
        CyclicWord::parse(text, alphabet)
    }
}

/// Finite linear combination over exact rationals; no zero coefficients
/// are ever stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Combination<B: Basis> {
    rank: usize,
    terms: BTreeMap<B, Coeff>,
}

/// An element of the group ring `Q[F_rank]`.
pub type GroupRingElement = Combination<Word>;

/// An element of the free module on free homotopy classes.
pub type LoopSum = Combination<CyclicWord>;

#[derive(Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    word: String,
}

impl<B: Basis> Combination<B> {
    pub fn zero(rank: usize) -> Self {
        Combination {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_basis(rank: usize, b: B) -> Self {
        Self::from_terms(rank, [(b, coeff(1))])
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Coeff)>>(rank: usize, terms: I) -> Self {
        let mut out = Self::zero(rank);
        for (b, c) in terms {
            out.add_term(b, c);
        }
        out
    }

    /// Like [`from_terms`](Self::from_terms) but rejects letters beyond the rank.
    pub fn try_from_terms<I: IntoIterator<Item = (B, Coeff)>>(rank: usize, terms: I) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (b, c) in terms {
            let index = b.max_index();
            if index > rank {
                return Err(Error::IndexOutOfRange { index, rank });
            }
            out.add_term(b, c);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, b: B, c: Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert!(b.max_index() <= self.rank, "letter beyond rank {}", self.rank);
        match self.terms.entry(b) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff_of(&self, b: &B) -> Coeff {
        self.terms.get(b).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Combination {
            rank: self.rank,
            terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        Ok(out)
    }

    /// Drops the identity basis element (empty word / trivial class).
    pub fn without_identity(&self) -> Self {
        Combination {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| !b.is_identity())
                .map(|(b, c)| (b.clone(), c.clone()))
                .collect(),
        }
    }

    /// The same element with a different ambient rank (letters must fit).
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        Self::try_from_terms(rank, self.terms.iter().map(|(b, c)| (b.clone(), c.clone())))
    }

    pub fn to_json(&self, alphabet: char) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(b, c)| TermJson {
                coeff: format_coeff(c),
                word: b.render(alphabet),
            })
            .collect();
        serde_json::to_value(terms).expect("term list serializes")
    }

    pub fn from_json(rank: usize, value: &serde_json::Value, alphabet: char) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            parsed.push((B::parse_basis(&t.word, alphabet)?, parse_coeff(&t.coeff)?));
        }
        Self::try_from_terms(rank, parsed)
    }

    pub fn display(&self, alphabet: char) -> CombinationDisplay<'_, B> {
        CombinationDisplay {
            value: self,
            alphabet,
        }
    }
}

fn check_rank(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::RankMismatch { left, right })
    }
}

impl GroupRingElement {
    pub fn one(rank: usize) -> Self {
        Self::from_basis(rank, Word::empty())
    }

    pub fn from_word(rank: usize, w: Word) -> Self {
        Self::from_basis(rank, w)
    }

    /// `w - 1`, the basic generator of the augmentation ideal.
    pub fn word_minus_one(rank: usize, w: &Word) -> Self {
        Self::from_terms(rank, [(w.clone(), coeff(1)), (Word::empty(), coeff(-1))])
    }

    pub fn parse(rank: usize, text: &str, alphabet: char) -> Result<Self> {
        let w = Word::parse(text, alphabet)?;
        Self::try_from_terms(rank, [(w, coeff(1))])
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> Coeff {
        self.terms.values().fold(Coeff::zero(), |acc, c| acc + c)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.rank), |acc, _| &acc * self)
    }

    /// Applies a word map termwise and extends linearly.
    pub fn map_words<F: Fn(&Word) -> Word>(&self, rank: usize, f: F) -> Self {
        Self::from_terms(rank, self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }
}

impl LoopSum {
    pub fn from_class(rank: usize, c: CyclicWord) -> Self {
        Self::from_basis(rank, c)
    }

    pub fn parse(rank: usize, text: &str, alphabet: char) -> Result<Self> {
        let c = CyclicWord::parse(text, alphabet)?;
        Self::try_from_terms(rank, [(c, coeff(1))])
    }

    pub fn map_classes<F: Fn(&CyclicWord) -> CyclicWord>(&self, rank: usize, f: F) -> Self {
        Self::from_terms(rank, self.terms.iter().map(|(w, c)| (f(w), c.clone())))
    }
}

impl<B: Basis> Add for &Combination<B> {
    type Output = Combination<B>;

    fn add(self, rhs: &Combination<B>) -> Combination<B> {
        self.try_add(rhs).expect("rank mismatch in addition")
    }
}

impl<B: Basis> Sub for &Combination<B> {
    type Output = Combination<B>;

    fn sub(self, rhs: &Combination<B>) -> Combination<B> {
        self.try_add(&-rhs).expect("rank mismatch in subtraction")
    }
}

impl<B: Basis> Neg for &Combination<B> {
    type Output = Combination<B>;

    fn neg(self) -> Combination<B> {
        Combination {
            rank: self.rank,
            terms: self.terms.iter().map(|(b, c)| (b.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;

    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        self.try_mul(rhs).expect("rank mismatch in multiplication")
    }
}

pub struct CombinationDisplay<'a, B: Basis> {
    value: &'a Combination<B>,
    alphabet: char,
}

impl<B: Basis> fmt::Display for CombinationDisplay<'_, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_zero() {
            return f.write_str("0");
        }
        let (open, close) = B::DELIMITERS;
        for (k, (b, c)) in self.value.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{} ", mag)?;
            }
            write!(f, "{}{}{}", open, b.render(self.alphabet), close)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 'x').unwrap()
    }

    fn g(rank: usize, s: &str) -> GroupRingElement {
        GroupRingElement::parse(rank, s, 'x').unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::from_signed(&[1, -1]), Word::empty());
        assert_eq!(Word::from_signed(&[1, 2, -2, 1]), Word::from_signed(&[1, 1]));
        assert_eq!(Word::from_signed(&[1, 2]).letters().len(), 2);
        assert_eq!(Word::from_signed(&[2, 1, -1, -2, 3]), Word::from_signed(&[3]));
    }

    #[test]
    fn parse_and_display() {
        let x = w("x1 x2^-1 x1");
        assert_eq!(x.display('x').to_string(), "x1 x2^-1 x1");
        assert_eq!(w("e"), Word::empty());
        assert_eq!(Word::empty().display('y').to_string(), "e");
        assert!(Word::parse("x1 z2", 'x').is_err());
        assert!(Word::parse("x0", 'x').is_err());
        assert!(Word::parse("x1^-2", 'x').is_err());
        assert!(Word::parse("y1", 'x').is_err());
    }

    #[test]
    fn cyclic_canonical_examples() {
        assert_eq!(CyclicWord::from_word(&w("x1 x2 x1^-1")), CyclicWord::from_word(&w("x2")));
        assert_eq!(CyclicWord::from_word(&w("x2 x1")), CyclicWord::from_word(&w("x1 x2")));
        assert_eq!(CyclicWord::from_word(&w("x2 x1")).to_word(), w("x1 x2"));
        assert!(CyclicWord::from_word(&Word::empty()).is_empty());
        assert!(CyclicWord::from_word(&w("x1 x2 x2^-1 x1^-1")).is_empty());
        // positive letter sorts before its inverse
        assert_eq!(CyclicWord::from_word(&w("x1^-1 x2 x1 x2")).to_word(), w("x1 x2 x1^-1 x2"));
    }

    #[test]
    fn period_and_primitivity() {
        let c = CyclicWord::parse("x1 x2 x1 x2", 'x').unwrap();
        assert_eq!(c.period(), 2);
        assert!(!c.is_primitive());
        assert!(CyclicWord::parse("x1 x2 x2", 'x').unwrap().is_primitive());
        assert!(!CyclicWord::empty().is_primitive());
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&g(2, "x1") * &g(2, "x1^-1"), GroupRingElement::one(2));
        let a = &g(2, "x1") - &GroupRingElement::one(2);
        let b = &g(2, "x1") + &GroupRingElement::one(2);
        let expected = &g(2, "x1 x1") - &GroupRingElement::one(2);
        assert_eq!(&a * &b, expected);
        assert!((&GroupRingElement::zero(2) * &a).is_zero());
    }

    #[test]
    fn multiply_rank_mismatch() {
        assert_eq!(
            g(2, "x1").try_mul(&g(3, "x1")),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn augmentation_examples() {
        assert_eq!(g(2, "x1 x2^-1").augmentation(), coeff(1));
        assert_eq!((&g(2, "x1") - &GroupRingElement::one(2)).augmentation(), coeff(0));
        let e = &g(2, "x1").scale(&coeff(3)) + &g(2, "x2").scale(&coeff(2));
        assert_eq!(e.augmentation(), coeff(5));
    }

    #[test]
    fn letters_beyond_rank_rejected() {
        assert!(GroupRingElement::parse(2, "x3", 'x').is_err());
    }

    #[test]
    fn json_roundtrip_and_sorting() {
        let e = &g(2, "x2").scale(&ratio(-1, 2)) + &g(2, "x1 x2");
        let v = e.to_json('x');
        assert_eq!(
            v.to_string(),
            r#"[{"coeff":"1/1","word":"x1 x2"},{"coeff":"-1/2","word":"x2"}]"#
        );
        assert_eq!(GroupRingElement::from_json(2, &v, 'x').unwrap(), e);
    }

    #[test]
    fn text_rendering() {
        let e = &g(2, "x2").scale(&ratio(-1, 2)) + &g(2, "x1 x2");
        assert_eq!(e.display('x').to_string(), "[x1 x2] - 1/2 [x2]");
        assert_eq!(GroupRingElement::zero(2).display('x').to_string(), "0");
        let l = LoopSum::parse(2, "x2 x1", 'x').unwrap();
        assert_eq!(l.display('x').to_string(), "<x1 x2>");
    }
}
