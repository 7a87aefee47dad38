//! Dehn twists along annulus curves of `N_{g,1}` and their logarithms.
//!
//! For a closed loop `r` on the orientation cover whose free class `c(r)` is
//! simple and disjoint from its deck image, the twist `t_A` along the
//! projected annulus is computed two ways and compared exactly in the
//! truncated Magnus model:
//!
//! * geometrically: lift, twist along `c(r)`, untwist along `tau(c(r))`,
//!   project;
//! * algebraically: `exp(D)` for the derivation `D = sigma_tilde(L)` with
//!   `L = theta(c((log r)^2))`.

use std::time::Instant;

use serde::Serialize;

use crate::cover::{forgetful_c, CoverPresentation};
use crate::error::{Error, Result};
use crate::magnus::{default_k_max, embed_word, exp_derivation, magnus_embed, DerivationRep, TruncatedSeries};
use crate::par::Execution;
use crate::word::{coeff, ratio, CyclicWord, GroupRingElement, LoopSum, Word};

/// Annulus curve `r` (a word in cover letters) for the shipped presets.
pub fn preset_curve(genus: usize) -> Option<Word> {
    let signed: &[i32] = match genus {
        2 => &[2],
        3 => &[3],
        _ => return None,
    };
    Some(Word::from_signed(signed))
}

#[derive(Clone, Debug)]
pub struct TwistProblem {
    cover: CoverPresentation,
    r: Word,
    order: usize,
    k_max: usize,
    execution: Execution,
}

/// Which insertion or term to corrupt, for mutation testing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Negate the coefficient of the `k`-th term of `L` (in basis order).
    FlipLTerm(usize),
    /// Negate the exponent of one loop insertion of the geometric twist in
    /// the image of generator `generator` (1-based); `index` counts the
    /// insertions along the lift, first for `c(r)` then for `tau(c(r))`.
    FlipInsertion { generator: usize, index: usize },
}

impl TwistProblem {
    pub fn new(cover: CoverPresentation, r: Word, order: usize, k_max: Option<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("truncation order must be at least 1".into()));
        }
        if r.max_index() > cover.cover_rank() {
            return Err(Error::IndexOutOfRange {
                index: r.max_index(),
                rank: cover.cover_rank(),
            });
        }
        let problem = TwistProblem {
            r,
            order,
            k_max: k_max.unwrap_or_else(|| default_k_max(order)),
            execution: Execution::default(),
            cover,
        };
        if !problem.is_degenerate() {
            let surface = problem.cover.surface();
            let (c, tc) = (problem.curve(), problem.deck_curve());
            for k in [&c, &tc] {
                if !surface.is_simple(k) {
                    return Err(Error::NotSimple(k.display('y').to_string()));
                }
            }
            if !surface.linked_pairs(&c, &tc).is_empty() {
                return Err(Error::NotSimple(format!(
                    "{} meets its deck image",
                    c.display('y')
                )));
            }
        }
        Ok(problem)
    }

    pub fn preset(genus: usize, order: usize, k_max: Option<usize>) -> Result<Self> {
        let r = preset_curve(genus)
            .ok_or_else(|| Error::InvalidSurface(format!("no preset curve for N_{{{genus},1}}")))?;
        Self::new(CoverPresentation::build(genus)?, r, order, k_max)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn cover(&self) -> &CoverPresentation {
        &self.cover
    }

    pub fn r(&self) -> &Word {
        &self.r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn curve(&self) -> CyclicWord {
        CyclicWord::from_word(&self.r)
    }

    pub fn deck_curve(&self) -> CyclicWord {
        self.cover.tau_class(&self.curve())
    }

    /// `r` trivial or its class fixed by the deck involution.
    pub fn is_degenerate(&self) -> bool {
        self.r.is_empty() || self.curve() == self.deck_curve()
    }

    /// `log r = sum_{k=1..N} (-1)^(k+1) (r-1)^k / k` in the cover group ring.
    pub fn log_r(&self) -> GroupRingElement {
        let rank = self.cover.cover_rank();
        let u = GroupRingElement::word_minus_one(rank, &self.r);
        let mut power = GroupRingElement::one(rank);
        let mut out = GroupRingElement::zero(rank);
        for k in 1..=self.order {
            power = &power * &u;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out = &out + &power.scale(&ratio(sign, k as i64));
        }
        out
    }

    /// `L = theta(c((log r)^2))` with the trivial class dropped.
    pub fn build_l(&self) -> LoopSum {
        let log = self.log_r();
        self.cover.theta(&forgetful_c(&(&log * &log)).without_identity())
    }

    /// `D(X_i) = magnus(sigma_tilde(L)(a_i))`.
    pub fn derivation_of_l(&self, l: &LoopSum) -> Result<DerivationRep> {
        DerivationRep::new(self.raw_images(l)?)
    }

    fn raw_images(&self, l: &LoopSum) -> Result<Vec<TruncatedSeries>> {
        let g = self.cover.base_rank();
        self.execution
            .map_range(g, |i| {
                let action = self.cover.sigma_tilde_projected(l, &Word::generator(i + 1))?;
                Ok(magnus_embed(&action, self.order))
            })
            .into_iter()
            .collect()
    }

    /// Image of a base word under `t_A`.
    pub fn geometric_twist(&self, x: &Word) -> Result<Word> {
        self.geometric_twist_flipping(x, None)
    }

    fn geometric_twist_flipping(&self, x: &Word, flip: Option<usize>) -> Result<Word> {
        if self.is_degenerate() {
            return Ok(x.clone());
        }
        let (parity, lifted) = self.cover.lift(x)?;
        let ends = self.cover.endpoints(parity);
        let surface = self.cover.surface();
        let (c, tc) = (self.curve(), self.deck_curve());
        let first = surface.crossing_count(&c, &lifted, ends);
        let (flip_c, flip_tc) = match flip {
            Some(k) if k < first => (Some(k), None),
            Some(k) => (None, Some(k - first)),
            None => (None, None),
        };
        let once = surface.twist_insert_flipping(&c, &lifted, ends, 1, flip_c)?;
        let twice = surface.twist_insert_flipping(&tc, &once, ends, -1, flip_tc)?;
        Ok(self.cover.project_path(parity, &twice))
    }

    /// Magnus images `t_A(X_j) = magnus(t_A(a_j)) - 1`.
    fn twist_variables(&self, flip: Option<(usize, usize)>) -> Result<Vec<TruncatedSeries>> {
        let g = self.cover.base_rank();
        let one = TruncatedSeries::one(g, self.order);
        self.execution
            .map_range(g, |j| {
                let flip = flip.filter(|&(gen, _)| gen == j + 1).map(|(_, k)| k);
                let image = self.geometric_twist_flipping(&Word::generator(j + 1), flip)?;
                Ok(&embed_word(&image, g, self.order) - &one)
            })
            .into_iter()
            .collect()
    }

    /// `-sum_i (1 - t_A)^i (x) / i` in truncation.
    pub fn log_twist_series(&self, x: &Word) -> Result<TruncatedSeries> {
        let vars = self.twist_variables(None)?;
        self.log_twist_with(&vars, x)
    }

    fn log_twist_with(&self, vars: &[TruncatedSeries], x: &Word) -> Result<TruncatedSeries> {
        let g = self.cover.base_rank();
        let mut v = embed_word(x, g, self.order);
        let mut out = TruncatedSeries::zero(g, self.order);
        for i in 1.. {
            v = &v - &v.substitute(vars)?;
            if v.is_zero() {
                return Ok(out);
            }
            if i > self.k_max {
                return Err(Error::NonTermination {
                    iterations: self.k_max,
                    last_degree: v.min_degree(),
                });
            }
            out = &out - &v.scale(&ratio(1, i as i64));
        }
        unreachable!()
    }

    pub fn verify(&self, timings: bool) -> Result<TwistReport> {
        let l = self.build_l();
        self.verify_with(&l, None, timings)
    }

    /// Runs the comparison with a corrupted `L` or geometric twist.
    pub fn verify_mutated(&self, mutation: Mutation) -> Result<TwistReport> {
        let l = self.build_l();
        match mutation {
            Mutation::FlipLTerm(k) => {
                let mut terms: Vec<(CyclicWord, _)> = l.iter().map(|(c, v)| (c.clone(), v.clone())).collect();
                let term = terms
                    .get_mut(k)
                    .ok_or_else(|| Error::Invalid(format!("L has no term {k}")))?;
                term.1 = -term.1.clone();
                let mutated = LoopSum::from_terms(l.rank(), terms);
                self.verify_with(&mutated, None, false)
            }
            Mutation::FlipInsertion { generator, index } => {
                let counts = self.insertion_counts()?;
                let count = generator
                    .checked_sub(1)
                    .and_then(|i| counts.get(i))
                    .ok_or(Error::IndexOutOfRange {
                        index: generator,
                        rank: counts.len(),
                    })?;
                if index >= *count {
                    return Err(Error::Invalid(format!(
                        "x{generator} has {count} insertions; no insertion {index}"
                    )));
                }
                self.verify_with(&l, Some((generator, index)), false)
            }
        }
    }

    /// Number of insertions `t_A` makes on each generator image.
    pub fn insertion_counts(&self) -> Result<Vec<usize>> {
        let surface = self.cover.surface();
        let (c, tc) = (self.curve(), self.deck_curve());
        (1..=self.cover.base_rank())
            .map(|i| {
                if self.is_degenerate() {
                    return Ok(0);
                }
                let (parity, lifted) = self.cover.lift(&Word::generator(i))?;
                let ends = self.cover.endpoints(parity);
                Ok(surface.crossing_count(&c, &lifted, ends) + surface.crossing_count(&tc, &lifted, ends))
            })
            .collect()
    }

    fn verify_with(&self, l: &LoopSum, flip: Option<(usize, usize)>, timings: bool) -> Result<TwistReport> {
        let g = self.cover.base_rank();
        let n = self.order;
        let clock = Instant::now();
        let images = self.raw_images(l)?;
        let t_derivation = clock.elapsed();

        let clock = Instant::now();
        let vars = self.twist_variables(flip)?;
        let targets: Vec<TruncatedSeries> = vars
            .iter()
            .map(|v| v + &TruncatedSeries::one(g, n))
            .collect();
        let logs: Vec<Stalled<TruncatedSeries>> = self
            .execution
            .map_range(g, |i| stalled(self.log_twist_with(&vars, &Word::generator(i + 1))))
            .into_iter()
            .collect::<Result<_>>()?;
        let t_geometric = clock.elapsed();

        // A corrupted L can give images with a constant term: no derivation,
        // disagreement in degree 0.
        let derivation = if images.iter().all(|s| s.constant_term() == coeff(0)) {
            Some(DerivationRep::new(images.clone())?)
        } else {
            None
        };

        let clock = Instant::now();
        let mut by_sign = Vec::new();
        for sign in [1i8, -1] {
            let generators: Vec<GeneratorAgreement> = match &derivation {
                None => (0..g)
                    .map(|i| GeneratorAgreement::new(i + 1, Some(0), Some(0), n))
                    .collect(),
                Some(d) => {
                    let d = d.scale(&coeff(sign as i64));
                    let results = self.execution.map_range(g, |i| -> Result<GeneratorAgreement> {
                        let x = &TruncatedSeries::variable(g, n, i + 1) + &TruncatedSeries::one(g, n);
                        let exp_gap = match stalled(exp_derivation(&d, &x, self.k_max))? {
                            Ok(exp) => exp.first_disagreement(&targets[i]),
                            Err(degree) => Some(degree),
                        };
                        let log_gap = match &logs[i] {
                            Ok(log) => log.first_disagreement(&d.images()[i]),
                            Err(degree) => Some(*degree),
                        };
                        Ok(GeneratorAgreement::new(i + 1, exp_gap, log_gap, n))
                    });
                    results.into_iter().collect::<Result<_>>()?
                }
            };
            by_sign.push((sign, generators));
        }
        let t_exp = clock.elapsed();

        let mut diagnostics = Vec::new();
        for (i, log) in logs.iter().enumerate() {
            if let Err(degree) = log {
                diagnostics.push(format!(
                    "log(t_A)(x{}) does not terminate within {} iterations (stuck in degree {degree})",
                    i + 1,
                    self.k_max
                ));
            }
        }
        let signs_verified: Vec<i8> = by_sign
            .iter()
            .filter(|(_, gens)| gens.iter().all(|a| a.agrees(n)))
            .map(|(s, _)| *s)
            .collect();
        let (best_sign, best) = by_sign
            .iter()
            .max_by_key(|(s, gens)| (gens.iter().map(|a| a.depth()).min(), *s))
            .cloned()
            .expect("two signs");
        let first_disagreement_degree = best
            .iter()
            .filter_map(|a| a.first_disagreement(n))
            .min();
        Ok(TwistReport {
            genus: g,
            r: self.r.display('y').to_string(),
            order: n,
            k_max: self.k_max,
            degenerate: self.is_degenerate(),
            verified: !signs_verified.is_empty(),
            verified_sign: signs_verified.first().copied(),
            signs_verified,
            compared_sign: best_sign,
            per_generator: best,
            first_disagreement_degree,
            diagnostics,
            timings: timings.then(|| Timings {
                derivation_ms: t_derivation.as_secs_f64() * 1e3,
                geometric_ms: t_geometric.as_secs_f64() * 1e3,
                exponential_ms: t_exp.as_secs_f64() * 1e3,
            }),
        })
    }
}

/// A non-terminating series, as the degree it stalled in.
type Stalled<T> = std::result::Result<T, usize>;

fn stalled<T>(r: Result<T>) -> Result<Stalled<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::NonTermination { last_degree, .. }) => Ok(Err(last_degree.unwrap_or(0))),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorAgreement {
    pub gen: String,
    /// `exp(D)(a_i)` equals `t_A(a_i)` through this degree (`-1`: not even
    /// the constant terms agree).
    pub agree_through_degree: i64,
    /// `log(t_A)(a_i)` equals `D(a_i)` through this degree.
    pub log_agree_through_degree: i64,
}

impl GeneratorAgreement {
    fn new(index: usize, exp_gap: Option<usize>, log_gap: Option<usize>, order: usize) -> Self {
        let through = |gap: Option<usize>| gap.map_or(order as i64, |d| d as i64 - 1);
        GeneratorAgreement {
            gen: format!("x{index}"),
            agree_through_degree: through(exp_gap),
            log_agree_through_degree: through(log_gap),
        }
    }

    fn depth(&self) -> i64 {
        self.agree_through_degree.min(self.log_agree_through_degree)
    }

    fn agrees(&self, order: usize) -> bool {
        self.depth() == order as i64
    }

    fn first_disagreement(&self, order: usize) -> Option<usize> {
        (!self.agrees(order)).then(|| (self.depth() + 1) as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timings {
    pub derivation_ms: f64,
    pub geometric_ms: f64,
    pub exponential_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwistReport {
    pub genus: usize,
    pub r: String,
    pub order: usize,
    pub k_max: usize,
    pub degenerate: bool,
    pub verified: bool,
    pub verified_sign: Option<i8>,
    pub signs_verified: Vec<i8>,
    /// Sign whose comparison is reported in `per_generator`.
    pub compared_sign: i8,
    pub per_generator: Vec<GeneratorAgreement>,
    pub first_disagreement_degree: Option<usize>,
    /// Series that failed to converge; each counts as a disagreement from
    /// the degree where it stalled.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}
