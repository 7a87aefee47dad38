//! Truncated noncommutative power series in `X_1..X_m`, used as the working
//! model of the completed group ring: the Magnus embedding `x_i -> 1 + X_i`,
//! formal log/exp, I-adic degrees, derivations and their exponentials.
//!
//! A series of order `N` keeps every monomial of degree `<= N`; all
//! equalities "mod I^(N+1)" are decided by comparing these truncations.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{coeff, format_coeff, parse_coeff, Coeff, Generator, GroupRingElement, Word};

/// A word in the noncommuting variables, as 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(indices: Vec<u16>) -> Self {
        Monomial(indices)
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    fn joined(parts: &[&[u16]]) -> Self {
        let mut v = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
        for p in parts {
            v.extend_from_slice(p);
        }
        Monomial(v)
    }
}

// Graded: degree first, then lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    rank: usize,
    order: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    rank: usize,
    order: usize,
    terms: Vec<SeriesTermJson>,
}

#[derive(Serialize, Deserialize)]
struct SeriesTermJson {
    monomial: Vec<u16>,
    coeff: String,
}

impl TruncatedSeries {
    pub fn zero(rank: usize, order: usize) -> Self {
        TruncatedSeries {
            rank,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, order: usize, c: Coeff) -> Self {
        let mut s = Self::zero(rank, order);
        s.add_term(Monomial::one(), c);
        s
    }

    pub fn one(rank: usize, order: usize) -> Self {
        Self::constant(rank, order, coeff(1))
    }

    /// The variable `X_index`.
    pub fn variable(rank: usize, order: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= rank);
        let mut s = Self::zero(rank, order);
        s.add_term(Monomial(vec![index as u16]), coeff(1));
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u16>, Coeff)>>(
        rank: usize,
        order: usize,
        terms: I,
    ) -> Self {
        let mut s = Self::zero(rank, order);
        for (m, c) in terms {
            s.add_term(Monomial(m), c);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Adds `c * m`, silently dropping monomials beyond the order.
    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() || m.degree() > self.order {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn coefficient(&self, m: &[u16]) -> Coeff {
        self.terms
            .get(&Monomial(m.to_vec()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn constant_term(&self) -> Coeff {
        self.coefficient(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least degree carrying a nonzero coefficient; `None` if the series
    /// vanishes through its order.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }

    /// Lowest degree at which `self` and `other` differ, if any.
    pub fn first_disagreement(&self, other: &Self) -> Option<usize> {
        (self - other).min_degree()
    }

    /// Homogeneous component of one degree.
    pub fn graded_part(&self, degree: usize) -> Self {
        let mut s = Self::zero(self.rank, self.order);
        for (m, c) in self.terms.iter().filter(|(m, _)| m.degree() == degree) {
            s.add_term(m.clone(), c.clone());
        }
        s
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        let mut s = Self::zero(self.rank, self.order);
        if c.is_zero() {
            return s;
        }
        s.terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        s
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        for (m, c) in &other.terms {
            s.add_term(m.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = Self::zero(self.rank, self.order);
        for (a, ca) in &self.terms {
            let budget = self.order - a.degree();
            for (b, cb) in other.terms.iter().take_while(|(b, _)| b.degree() <= budget) {
                s.add_term(Monomial::joined(&[&a.0, &b.0]), ca * cb);
            }
        }
        Ok(s)
    }

    /// Right multiplication by the image of one group letter.
    fn mul_letter(&self, g: Generator) -> Self {
        let i = g.index() as u16;
        let mut s = Self::zero(self.rank, self.order);
        for (m, c) in &self.terms {
            s.add_term(m.clone(), c.clone());
            // x -> 1 + X ; x^-1 -> 1 - X + X^2 - ...
            let mut power = m.0.clone();
            let mut sign = coeff(1);
            while power.len() < self.order {
                power.push(i);
                if g.is_inverse() {
                    sign = -sign;
                }
                s.add_term(Monomial(power.clone()), c * &sign);
                if !g.is_inverse() {
                    break;
                }
            }
        }
        s
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.rank, self.order), |acc, _| &acc * self)
    }

    /// Algebra endomorphism `X_i -> images[i-1]`; every image must have
    /// zero constant term so the substitution is continuous.
    pub fn substitute(&self, images: &[TruncatedSeries]) -> Result<Self> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: images.len(),
            });
        }
        for im in images {
            if im.order != self.order {
                return Err(Error::OrderMismatch {
                    left: self.order,
                    right: im.order,
                });
            }
            if !im.constant_term().is_zero() {
                return Err(Error::ConstantTerm {
                    expected: "0".into(),
                    found: im.constant_term().to_string(),
                });
            }
        }
        Ok(substitute_rec(self, images, self.order))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let js = SeriesJson {
            rank: self.rank,
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| SeriesTermJson {
                    monomial: m.0.clone(),
                    coeff: format_coeff(c),
                })
                .collect(),
        };
        serde_json::to_value(js).expect("series serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let js: SeriesJson = serde_json::from_value(value.clone())?;
        let mut s = Self::zero(js.rank, js.order);
        for t in js.terms {
            if t.monomial.iter().any(|&i| i == 0 || i as usize > js.rank) {
                return Err(Error::Json(format!("monomial {:?} outside rank", t.monomial)));
            }
            s.add_term(Monomial(t.monomial), parse_coeff(&t.coeff)?);
        }
        Ok(s)
    }
}

// Horner form on the first letter: s = c + sum_i X_i s_i, so
// subst(s) = c + sum_i T_i subst(s_i), only needed through `budget`.
fn substitute_rec(s: &TruncatedSeries, images: &[TruncatedSeries], budget: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(s.rank, s.order);
    let mut tails: BTreeMap<u16, TruncatedSeries> = BTreeMap::new();
    for (m, c) in &s.terms {
        match m.0.split_first() {
            None => out.add_term(Monomial::one(), c.clone()),
            Some((&first, rest)) => {
                if rest.len() < budget {
                    tails
                        .entry(first)
                        .or_insert_with(|| TruncatedSeries::zero(s.rank, s.order))
                        .add_term(Monomial(rest.to_vec()), c.clone());
                }
            }
        }
    }
    for (first, tail) in tails {
        if budget == 0 {
            break;
        }
        let inner = substitute_rec(&tail, images, budget - 1);
        let image = &images[first as usize - 1];
        for (a, ca) in &image.terms {
            if a.degree() > budget {
                break;
            }
            for (b, cb) in &inner.terms {
                if a.degree() + b.degree() > budget {
                    break;
                }
                out.add_term(Monomial::joined(&[&a.0, &b.0]), ca * cb);
            }
        }
    }
    out
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs).expect("incompatible series")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(&-rhs).expect("incompatible series")
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&coeff(-1))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("incompatible series")
    }
}

/// Renders as `1 + X1 - 1/2 X1 X2`; the zero series as `0`.
impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let vars: Vec<String> = m.0.iter().map(|i| format!("X{i}")).collect();
            match (mag.is_one(), vars.is_empty()) {
                (true, true) => f.write_str("1")?,
                (true, false) => f.write_str(&vars.join(" "))?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag} {}", vars.join(" "))?,
            }
        }
        Ok(())
    }
}

/// Magnus image of a single word.
pub fn embed_word(w: &Word, rank: usize, order: usize) -> TruncatedSeries {
    w.letters()
        .iter()
        .fold(TruncatedSeries::one(rank, order), |s, &g| s.mul_letter(g))
}

/// Magnus embedding `x_i -> 1 + X_i`, extended linearly.
pub fn magnus_embed(a: &GroupRingElement, order: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(a.rank(), order);
    for (w, c) in a.iter() {
        for (m, v) in embed_word(w, a.rank(), order).terms {
            s.add_term(m, v * c);
        }
    }
    s
}

/// Least I-adic degree of `a` visible through `order`; `None` means the
/// truncated image vanishes (degree beyond `order`).
pub fn ideal_degree(a: &GroupRingElement, order: usize) -> Option<usize> {
    magnus_embed(a, order).min_degree()
}

fn require_constant(s: &TruncatedSeries, expected: i64) -> Result<()> {
    let c = s.constant_term();
    if c != coeff(expected) {
        return Err(Error::ConstantTerm {
            expected: expected.to_string(),
            found: c.to_string(),
        });
    }
    Ok(())
}

/// `sum_{k=1..N} (-1)^(k+1) (s-1)^k / k` for `s` with constant term 1.
pub fn log_series(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_constant(s, 1)?;
    let u = s - &TruncatedSeries::one(s.rank, s.order);
    let mut out = TruncatedSeries::zero(s.rank, s.order);
    let mut power = u.clone();
    for k in 1..=s.order {
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out = &out + &power.scale(&crate::word::ratio(sign, k as i64));
        power = &power * &u;
    }
    Ok(out)
}

/// `sum_{k=0..N} s^k / k!` for `s` with zero constant term.
pub fn exp_series(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    require_constant(s, 0)?;
    let mut out = TruncatedSeries::one(s.rank, s.order);
    let mut term = TruncatedSeries::one(s.rank, s.order);
    for k in 1..=s.order {
        term = (&term * s).scale(&crate::word::ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = &out + &term;
    }
    Ok(out)
}

/// A continuous derivation of the truncated series algebra, given by the
/// images of the variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationRep {
    rank: usize,
    order: usize,
    images: Vec<TruncatedSeries>,
}

impl DerivationRep {
    /// Images must have zero constant term (minimum degree >= 1), which keeps
    /// the derivation filtration-preserving.
    pub fn new(images: Vec<TruncatedSeries>) -> Result<Self> {
        let first = images
            .first()
            .ok_or_else(|| Error::Invalid("derivation needs at least one image".into()))?;
        let (rank, order) = (first.rank, first.order);
        if images.len() != rank {
            return Err(Error::RankMismatch {
                left: rank,
                right: images.len(),
            });
        }
        for im in &images {
            first.check(im)?;
            require_constant(im, 0)?;
        }
        Ok(DerivationRep {
            rank,
            order,
            images,
        })
    }

    pub fn zero(rank: usize, order: usize) -> Self {
        DerivationRep {
            rank,
            order,
            images: vec![TruncatedSeries::zero(rank, order); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn images(&self) -> &[TruncatedSeries] {
        &self.images
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        DerivationRep {
            rank: self.rank,
            order: self.order,
            images: self.images.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|s| s.is_zero())
    }
}

fn check_derivation(d: &DerivationRep, s: &TruncatedSeries) -> Result<()> {
    if d.rank != s.rank {
        return Err(Error::RankMismatch {
            left: d.rank,
            right: s.rank,
        });
    }
    if d.order != s.order {
        return Err(Error::OrderMismatch {
            left: d.order,
            right: s.order,
        });
    }
    Ok(())
}

/// Leibniz extension of `X_i -> D(X_i)` to the whole series, truncated.
pub fn apply_derivation(d: &DerivationRep, s: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_derivation(d, s)?;
    let mut out = TruncatedSeries::zero(s.rank, s.order);
    for (m, c) in &s.terms {
        let deg = m.degree();
        for p in 0..deg {
            let (prefix, rest) = m.0.split_at(p);
            let (letter, suffix) = (rest[0], &rest[1..]);
            let budget = s.order - (deg - 1);
            for (im, ci) in &d.images[letter as usize - 1].terms {
                if im.degree() > budget {
                    break;
                }
                out.add_term(Monomial::joined(&[prefix, &im.0, suffix]), c * ci);
            }
        }
    }
    Ok(out)
}

/// `sum_k D^k(s) / k!`, iterated until the next term vanishes in truncation.
/// More than `k_max` nonzero iterations is an error, never a silent cutoff.
pub fn exp_derivation(d: &DerivationRep, s: &TruncatedSeries, k_max: usize) -> Result<TruncatedSeries> {
    check_derivation(d, s)?;
    let mut sum = s.clone();
    let mut term = s.clone();
    for k in 1.. {
        term = apply_derivation(d, &term)?.scale(&crate::word::ratio(1, k as i64));
        if term.is_zero() {
            return Ok(sum);
        }
        if k > k_max {
            return Err(Error::NonTermination {
                iterations: k_max,
                last_degree: term.min_degree(),
            });
        }
        sum = &sum + &term;
    }
    unreachable!()
}

/// Default iteration cap for an order: `(N+1)^2`.
pub fn default_k_max(order: usize) -> usize {
    (order + 1) * (order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::ratio;

    fn w(s: &str) -> Word {
        Word::parse(s, 'x').unwrap()
    }

    #[test]
    fn text_rendering() {
        let s = log_series(&embed_word(&w("x1"), 1, 3)).unwrap();
        assert_eq!(s.to_string(), "X1 - 1/2 X1 X1 + 1/3 X1 X1 X1");
        assert_eq!(embed_word(&w("x1^-1"), 1, 1).to_string(), "1 - X1");
        assert_eq!(TruncatedSeries::zero(2, 3).to_string(), "0");
    }

    fn series(rank: usize, order: usize, terms: &[(&[u16], Coeff)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(rank, order, terms.iter().map(|(m, c)| (m.to_vec(), c.clone())))
    }

    #[test]
    fn embed_generator_and_inverse() {
        assert_eq!(
            embed_word(&w("x1"), 2, 3),
            series(2, 3, &[(&[], coeff(1)), (&[1], coeff(1))])
        );
        assert_eq!(
            embed_word(&w("x1^-1"), 2, 3),
            series(
                2,
                3,
                &[
                    (&[], coeff(1)),
                    (&[1], coeff(-1)),
                    (&[1, 1], coeff(1)),
                    (&[1, 1, 1], coeff(-1))
                ]
            )
        );
    }

    #[test]
    fn commutator_embedding() {
        // (1+X1)(1+X2)(1-X1+X1^2)(1-X2+X2^2) = 1 + X1X2 - X2X1 + O(3)
        assert_eq!(
            embed_word(&w("x1 x2 x1^-1 x2^-1"), 2, 2),
            series(2, 2, &[(&[], coeff(1)), (&[1, 2], coeff(1)), (&[2, 1], coeff(-1))])
        );
    }

    #[test]
    fn ideal_degree_examples() {
        let one = GroupRingElement::one(2);
        let a = &GroupRingElement::parse(2, "x1", 'x').unwrap() - &one;
        assert_eq!(ideal_degree(&a, 4), Some(1));
        let c = &GroupRingElement::parse(2, "x1 x2 x1^-1 x2^-1", 'x').unwrap() - &one;
        assert_eq!(ideal_degree(&c, 4), Some(2));
        assert_eq!(ideal_degree(&GroupRingElement::zero(2), 4), None);
        // (x1 - 1)^3 vanishes at order 2
        assert_eq!(ideal_degree(&a.pow(3), 2), None);
    }

    #[test]
    fn log_examples() {
        let s = series(1, 3, &[(&[], coeff(1)), (&[1], coeff(1))]);
        assert_eq!(
            log_series(&s).unwrap(),
            series(1, 3, &[(&[1], coeff(1)), (&[1, 1], ratio(-1, 2)), (&[1, 1, 1], ratio(1, 3))])
        );
        assert!(log_series(&TruncatedSeries::one(2, 4)).unwrap().is_zero());
        assert!(matches!(
            log_series(&TruncatedSeries::zero(2, 4)),
            Err(Error::ConstantTerm { .. })
        ));
    }

    #[test]
    fn exp_examples() {
        assert_eq!(exp_series(&TruncatedSeries::zero(1, 3)).unwrap(), TruncatedSeries::one(1, 3));
        assert_eq!(
            exp_series(&TruncatedSeries::variable(1, 2, 1)).unwrap(),
            series(1, 2, &[(&[], coeff(1)), (&[1], coeff(1)), (&[1, 1], ratio(1, 2))])
        );
        assert!(exp_series(&TruncatedSeries::one(1, 3)).is_err());
    }

    #[test]
    fn derivation_on_two_letter_monomial() {
        let d = DerivationRep::new(vec![
            series(2, 4, &[(&[1, 1], coeff(1))]),
            TruncatedSeries::zero(2, 4),
        ])
        .unwrap();
        let s = series(2, 4, &[(&[1, 2], coeff(1))]);
        assert_eq!(apply_derivation(&d, &s).unwrap(), series(2, 4, &[(&[1, 1, 2], coeff(1))]));
        assert!(apply_derivation(&d, &TruncatedSeries::one(2, 4)).unwrap().is_zero());
        assert!(apply_derivation(&DerivationRep::zero(2, 4), &s).unwrap().is_zero());
    }

    #[test]
    fn derivation_rejects_constant_images_and_mismatch() {
        assert!(DerivationRep::new(vec![TruncatedSeries::one(1, 3)]).is_err());
        let d = DerivationRep::zero(2, 3);
        assert!(apply_derivation(&d, &TruncatedSeries::one(2, 4)).is_err());
        assert!(apply_derivation(&d, &TruncatedSeries::one(3, 3)).is_err());
    }

    #[test]
    fn exp_derivation_zero_and_raising() {
        let s = series(2, 5, &[(&[], coeff(1)), (&[2], coeff(1))]);
        assert_eq!(exp_derivation(&DerivationRep::zero(2, 5), &s, 0).unwrap(), s);
        let d = DerivationRep::new(vec![
            series(2, 5, &[(&[2, 2], coeff(1))]),
            series(2, 5, &[(&[1, 2], coeff(3))]),
        ])
        .unwrap();
        // strictly degree raising: terminates in at most N steps
        assert!(exp_derivation(&d, &s, 5).is_ok());
    }

    #[test]
    fn exp_derivation_reports_non_termination() {
        // D(X1) = X1 is not nilpotent
        let d = DerivationRep::new(vec![TruncatedSeries::variable(1, 3, 1)]).unwrap();
        let s = TruncatedSeries::variable(1, 3, 1);
        assert!(matches!(
            exp_derivation(&d, &s, 10),
            Err(Error::NonTermination { iterations: 10, last_degree: Some(1) })
        ));
    }

    #[test]
    fn substitute_is_identity_on_variables() {
        let s = embed_word(&w("x1 x2^-1 x1"), 2, 4);
        let ids = vec![TruncatedSeries::variable(2, 4, 1), TruncatedSeries::variable(2, 4, 2)];
        assert_eq!(s.substitute(&ids).unwrap(), s);
    }

    #[test]
    fn series_json_sorted_by_degree() {
        let s = series(2, 3, &[(&[2], coeff(2)), (&[1, 1], ratio(1, 2)), (&[], coeff(1))]);
        assert_eq!(
            s.to_json().to_string(),
            r#"{"rank":2,"order":3,"terms":[{"monomial":[],"coeff":"1/1"},{"monomial":[2],"coeff":"2/1"},{"monomial":[1,1],"coeff":"1/2"}]}"#
        );
        assert_eq!(TruncatedSeries::from_json(&s.to_json()).unwrap(), s);
    }
}
