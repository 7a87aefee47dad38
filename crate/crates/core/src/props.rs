//! Seeded randomized suites for the algebraic identities of the library.
//!
//! Cases are drawn sequentially from a ChaCha stream and then checked under
//! the chosen [`Execution`], so a seed fixes the report exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cover::{forgetful_c, CoverPresentation, Parity};
use crate::magnus::{
    apply_derivation, embed_word, exp_derivation, exp_series, ideal_degree, log_series, magnus_embed, DerivationRep,
    TruncatedSeries,
};
use crate::par::Execution;
use crate::ribbon::RibbonSurface;
use crate::twist::TwistProblem;
use crate::word::{ratio, Coeff, CyclicWord, Generator, GroupRingElement, LoopSum, Word};

pub const SUITES: [&str; 6] = ["word", "magnus", "goldman", "identities", "filtration", "cover"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

type Check = std::result::Result<(), String>;

fn run<C, F>(suite: &str, exec: Execution, cases: Vec<C>, check: F) -> SuiteReport
where
    C: Sync,
    F: Fn(&C) -> Check + Sync + Send,
{
    let results = exec.map(&cases, check);
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    SuiteReport {
        suite: suite.to_string(),
        cases: cases.len(),
        failures: failures.len(),
        first_failure: failures.into_iter().next(),
    }
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn lib<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

pub fn random_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::reduce((0..len).map(|_| Generator::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))))
}

/// A reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Generator> = Vec::with_capacity(len);
    while letters.len() < len {
        let g = Generator::new(rng.gen_range(1..=rank), rng.gen_bool(0.5));
        if letters.last() != Some(&g.inverse()) {
            letters.push(g);
        }
    }
    Word::reduce(letters)
}

pub fn random_class<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> CyclicWord {
    loop {
        let c = CyclicWord::from_word(&random_word(rng, rank, max_len));
        if !c.is_empty() {
            return c;
        }
    }
}

pub fn random_coeff<R: Rng>(rng: &mut R) -> Coeff {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    ratio(n, rng.gen_range(1..=3))
}

pub fn random_loops<R: Rng>(rng: &mut R, rank: usize, terms: usize, max_len: usize) -> LoopSum {
    LoopSum::from_terms(
        rank,
        (0..terms).map(|_| (random_class(rng, rank, max_len), random_coeff(rng))),
    )
}

pub fn random_element<R: Rng>(rng: &mut R, rank: usize, terms: usize, max_len: usize) -> GroupRingElement {
    GroupRingElement::from_terms(
        rank,
        (0..terms).map(|_| (random_word(rng, rank, max_len), random_coeff(rng))),
    )
}

/// A series whose terms all have degree in `min_degree..=order`.
pub fn random_series<R: Rng>(rng: &mut R, rank: usize, order: usize, terms: usize, min_degree: usize) -> TruncatedSeries {
    TruncatedSeries::from_terms(
        rank,
        order,
        (0..terms).map(|_| {
            let d = rng.gen_range(min_degree..=order.max(min_degree));
            let m: Vec<u16> = (0..d).map(|_| rng.gen_range(1..=rank) as u16).collect();
            (m, random_coeff(rng))
        }),
    )
}

fn even_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> Word {
    loop {
        let w = random_word(rng, rank, max_len);
        if w.len() % 2 == 0 {
            return w;
        }
    }
}

pub fn word_suite(seed: u64, exec: Execution, cases: usize) -> SuiteReport {
    let mut r = rng(seed, 1);
    let inputs: Vec<_> = (0..cases)
        .map(|_| {
            let rank = r.gen_range(1..=3);
            let raw: Vec<Generator> = (0..r.gen_range(0..=8))
                .map(|_| Generator::new(r.gen_range(1..=rank), r.gen_bool(0.5)))
                .collect();
            (
                raw,
                random_word(&mut r, rank, 4),
                random_word(&mut r, rank, 4),
                [0, 1, 2].map(|_| random_element(&mut r, rank, 3, 3)),
            )
        })
        .collect();
    run("word", exec, inputs, |(raw, u, w, [a, b, c])| {
        let once = Word::reduce(raw.iter().copied());
        ensure(Word::reduce(once.letters().iter().copied()) == once, || "reduce not idempotent".into())?;
        ensure(once.len() <= raw.len(), || "reduce lengthened a word".into())?;
        let conj = u.concat(w).concat(&u.inverse());
        ensure(CyclicWord::from_word(&conj) == CyclicWord::from_word(w), || {
            format!("conjugation changed class of {}", w.display('x'))
        })?;
        ensure(a * &(b * c) == &(a * b) * c, || "product not associative".into())?;
        ensure((a * b).augmentation() == a.augmentation() * b.augmentation(), || {
            "augmentation not multiplicative".into()
        })
    })
}

#[derive(Clone, Copy)]
enum MagnusCase {
    Multiplicative,
    LogExp,
    ExpLog,
    Leibniz,
    Endomorphism,
}

pub fn magnus_suite(seed: u64, exec: Execution, cases: usize) -> SuiteReport {
    let mut r = rng(seed, 2);
    let kinds = [
        MagnusCase::Multiplicative,
        MagnusCase::LogExp,
        MagnusCase::ExpLog,
        MagnusCase::Leibniz,
        MagnusCase::Endomorphism,
    ];
    let inputs: Vec<_> = (0..cases)
        .map(|k| {
            let rank = r.gen_range(1..=3);
            let kind = kinds[k % kinds.len()];
            // a strictly degree-raising derivation needs room above degree 1
            let lowest = if matches!(kind, MagnusCase::Endomorphism) { 2 } else { 1 };
            let order = r.gen_range(lowest..=5);
            let a = random_element(&mut r, rank, 3, 4);
            let b = random_element(&mut r, rank, 3, 4);
            let w = random_word(&mut r, rank, 5);
            let s = random_series(&mut r, rank, order, 4, 0);
            let t = random_series(&mut r, rank, order, 4, 0);
            let z = random_series(&mut r, rank, order, 4, 1);
            let raising = (0..rank)
                .map(|_| random_series(&mut r, rank, order, 2, 2))
                .collect::<Vec<_>>();
            let preserving = (0..rank)
                .map(|_| random_series(&mut r, rank, order, 2, 1))
                .collect::<Vec<_>>();
            (kind, order, a, b, w, s, t, z, raising, preserving)
        })
        .collect();
    run("magnus", exec, inputs, |(kind, order, a, b, w, s, t, z, raising, preserving)| {
        let n = *order;
        match kind {
            MagnusCase::Multiplicative => ensure(
                magnus_embed(&(a * b), n) == &magnus_embed(a, n) * &magnus_embed(b, n),
                || format!("embed not multiplicative at N={n}"),
            ),
            MagnusCase::LogExp => {
                let g = embed_word(w, a.rank(), n);
                ensure(lib(exp_series(&lib(log_series(&g))?))? == g, || {
                    format!("exp(log) != id on {} at N={n}", w.display('x'))
                })
            }
            MagnusCase::ExpLog => ensure(lib(log_series(&lib(exp_series(z))?))? == *z, || {
                format!("log(exp) != id at N={n}")
            }),
            MagnusCase::Leibniz => {
                let d = lib(DerivationRep::new(preserving.clone()))?;
                let lhs = lib(apply_derivation(&d, &(s * t)))?;
                let rhs = &(&lib(apply_derivation(&d, s))? * t) + &(s * &lib(apply_derivation(&d, t))?);
                ensure(lhs == rhs, || format!("Leibniz fails at N={n}"))
            }
            MagnusCase::Endomorphism => {
                let d = lib(DerivationRep::new(raising.clone()))?;
                let k = crate::magnus::default_k_max(n);
                let lhs = lib(exp_derivation(&d, &(s * t), k))?;
                let rhs = &lib(exp_derivation(&d, s, k))? * &lib(exp_derivation(&d, t, k))?;
                ensure(lhs == rhs, || format!("exp(D) not multiplicative at N={n}"))
            }
        }
    })
}

/// Antisymmetry and Jacobi on `triples` random triples, centrality of both
/// boundary classes on `boundary_cases` random classes, on the `N_{2,1}`
/// cover.
pub fn goldman_suite(seed: u64, exec: Execution, triples: usize, boundary_cases: usize) -> SuiteReport {
    let cover = CoverPresentation::build(2).expect("genus 2 cover");
    let s = cover.surface();
    let rank = cover.cover_rank();
    let mut r = rng(seed, 3);
    let mut inputs: Vec<(Option<[LoopSum; 3]>, Option<LoopSum>)> = (0..triples)
        .map(|_| (Some([0, 1, 2].map(|_| LoopSum::from_class(rank, random_class(&mut r, rank, 4)))), None))
        .collect();
    inputs.extend((0..boundary_cases).map(|_| (None, Some(LoopSum::from_class(rank, random_class(&mut r, rank, 4))))));
    let boundaries: Vec<LoopSum> = s
        .boundary_cycles()
        .into_iter()
        .map(|c| LoopSum::from_class(rank, c))
        .collect();
    run("goldman", exec, inputs, |(triple, single)| {
        if let Some([a, b, c]) = triple {
            let ab = s.goldman_bracket(a, b);
            ensure(ab == -&s.goldman_bracket(b, a), || {
                format!("antisymmetry fails for {} , {}", a.display('y'), b.display('y'))
            })?;
            let jacobi = &(&s.goldman_bracket(a, &s.goldman_bracket(b, c)) + &s.goldman_bracket(b, &s.goldman_bracket(c, a)))
                + &s.goldman_bracket(c, &ab);
            ensure(jacobi.is_zero(), || {
                format!("Jacobi fails for {} , {} , {}", a.display('y'), b.display('y'), c.display('y'))
            })?;
        }
        if let Some(y) = single {
            for d in &boundaries {
                ensure(s.goldman_bracket(d, y).is_zero(), || {
                    format!("boundary {} not central against {}", d.display('y'), y.display('y'))
                })?;
            }
        }
        Ok(())
    })
}

fn act(cover: &CoverPresentation, y: &LoopSum, a: &GroupRingElement) -> std::result::Result<GroupRingElement, String> {
    lib(cover.sigma_tilde_element(y, a))
}

/// The displayed identities of the non-orientable action, `cases` random
/// instances of each, alternating between the `N_{2,1}` and `N_{3,1}` covers.
pub fn identity_suite(seed: u64, exec: Execution, cases: usize) -> SuiteReport {
    let covers = [CoverPresentation::build(2).expect("cover"), CoverPresentation::build(3).expect("cover")];
    let mut r = rng(seed, 4);
    const KINDS: usize = 7;
    let inputs: Vec<_> = (0..cases * KINDS)
        .map(|k| {
            let cover = &covers[(k / KINDS) % 2];
            let (m, g) = (cover.cover_rank(), cover.base_rank());
            (
                k % KINDS,
                (k / KINDS) % 2,
                random_loops(&mut r, m, 2, 3),
                random_loops(&mut r, m, 2, 3),
                random_word(&mut r, g, 3),
                random_word(&mut r, g, 3),
            )
        })
        .collect();
    run("identities", exec, inputs, |(kind, which, y1, y2, x1, x2)| {
        let cover = &covers[*which];
        let s = cover.surface();
        let g = cover.base_rank();
        let el = |w: &Word| GroupRingElement::from_word(g, w.clone());
        match kind {
            0 => {
                let lhs = lib(cover.sigma_tilde(y1, &x1.concat(x2)))?;
                let rhs = &(&lib(cover.sigma_tilde(y1, x1))? * &el(x2)) + &(&el(x1) * &lib(cover.sigma_tilde(y1, x2))?);
                ensure(lhs == rhs, || format!("Leibniz fails for {} on {} {}", y1.display('y'), x1.display('x'), x2.display('x')))
            }
            1 => {
                let lhs = lib(cover.sigma_tilde(y1, x1))?;
                let rhs = lib(cover.sigma_tilde(&cover.tau(y1), x1))?;
                ensure(lhs == -&rhs, || format!("y(x) != -tau(y)(x) for {}", y1.display('y')))
            }
            2 => {
                let lhs = cover.tau(&s.goldman_bracket(y1, y2));
                let rhs = -&s.goldman_bracket(&cover.tau(y1), &cover.tau(y2));
                ensure(lhs == rhs, || format!("tau does not negate [{} , {}]", y1.display('y'), y2.display('y')))
            }
            3 => {
                let t = cover.theta(y1);
                ensure(cover.theta(&t) == t, || format!("theta not idempotent on {}", y1.display('y')))
            }
            4 => {
                let (t1, t2) = (cover.theta(y1), cover.theta(y2));
                let base = s.goldman_bracket(&t1, &t2);
                let forms = [
                    cover.theta(&s.goldman_bracket(y1, &t2)),
                    cover.theta(&s.goldman_bracket(&t1, y2)),
                    cover.theta(&base),
                ];
                ensure(forms.iter().all(|f| *f == base), || {
                    format!("theta/bracket identity fails for {} , {}", y1.display('y'), y2.display('y'))
                })
            }
            5 => {
                let x = el(x1);
                let ab = &act(cover, y1, &act(cover, y2, &x)?)? - &act(cover, y2, &act(cover, y1, &x)?)?;
                let (t1, t2) = (cover.theta(y1), cover.theta(y2));
                for bracket in [
                    s.goldman_bracket(&t1, y2),
                    s.goldman_bracket(y1, &t2),
                    s.goldman_bracket(&t1, &t2),
                ] {
                    ensure(act(cover, &bracket, &x)? == ab, || {
                        format!("commutator law fails for {} , {} on {}", y1.display('y'), y2.display('y'), x1.display('x'))
                    })?;
                }
                Ok(())
            }
            _ => {
                let (u, v) = (cover.theta(y1), cover.theta(y2));
                let uv = s.goldman_bracket(&u, &v);
                ensure(cover.theta(&uv) == uv, || "bracket leaves the theta image".into())?;
                let x = el(x1);
                let lhs = &act(cover, &u, &act(cover, &v, &x)?)? - &act(cover, &v, &act(cover, &u, &x)?)?;
                ensure(lhs == act(cover, &uv, &x)?, || {
                    format!("module law fails for {} , {}", y1.display('y'), y2.display('y'))
                })
            }
        }
    })
}

/// `sigma_tilde(c(I^i)) I^j` lands in `I^(i+j-2)` for `i+j <= order`, and
/// `sigma_tilde(y)(1) = 0`.
pub fn filtration_suite(seed: u64, exec: Execution, cases: usize, order: usize) -> SuiteReport {
    let covers = [CoverPresentation::build(2).expect("cover"), CoverPresentation::build(3).expect("cover")];
    let mut r = rng(seed, 5);
    let inputs: Vec<_> = (0..cases)
        .map(|k| {
            let cover = &covers[k % 2];
            let (m, g) = (cover.cover_rank(), cover.base_rank());
            let i = r.gen_range(1..=order);
            let j = r.gen_range(0..=order - i);
            let y = (0..i).fold(GroupRingElement::one(m), |acc, _| {
                &acc * &GroupRingElement::word_minus_one(m, &random_word(&mut r, m, 2))
            });
            let x = (0..j).fold(GroupRingElement::from_word(g, random_word(&mut r, g, 2)), |acc, _| {
                &acc * &GroupRingElement::word_minus_one(g, &random_word(&mut r, g, 2))
            });
            (k % 2, i, j, forgetful_c(&y), x)
        })
        .collect();
    run("filtration", exec, inputs, |(which, i, j, y, x)| {
        let cover = &covers[*which];
        ensure(lib(cover.sigma_tilde(y, &Word::empty()))?.is_zero(), || "sigma_tilde(y)(1) != 0".into())?;
        let image = act(cover, y, x)?;
        let need = (i + j).saturating_sub(2);
        match ideal_degree(&image, order) {
            Some(d) if d < need => Err(format!("i={i} j={j}: degree {d} < {need}")),
            _ => Ok(()),
        }
    })
}

/// Cover contract for `g = 1..=max_genus` with `words` random words each.
pub fn cover_suite(seed: u64, exec: Execution, max_genus: usize, words: usize) -> SuiteReport {
    let mut r = rng(seed, 6);
    let mut inputs = Vec::new();
    for g in 1..=max_genus {
        inputs.push((g, None));
        for _ in 0..words {
            inputs.push((g, Some((even_word(&mut r, g, 8), random_word(&mut r, g, 7)))));
        }
    }
    run("cover", exec, inputs, |(g, sample)| {
        let cover = lib(CoverPresentation::build(*g))?;
        let m = cover.cover_rank();
        match sample {
            None => check_cover_shape(&cover),
            Some((even, any)) => {
                let lifted = lib(cover.rewrite_even(even))?;
                ensure(cover.project(&lifted) == *even, || format!("project(lift({})) differs", even.display('x')))?;
                let (parity, path) = lib(cover.lift(any))?;
                ensure(cover.project_path(parity, &path) == *any, || format!("path lift of {} differs", any.display('x')))?;
                ensure((parity == Parity::Odd) == (any.len() % 2 == 1), || "parity mismatch".into())?;
                let class = CyclicWord::from_word(&lifted);
                let tc = cover.tau_class(&class);
                ensure(cover.tau_class(&tc) == class, || format!("tau^2 != id on {}", class.display('y')))?;
                ensure(cover.project_class(&tc) == cover.project_class(&class), || {
                    format!("p(tau) != p on {}", class.display('y'))
                })?;
                ensure(lifted.max_index() <= m, || "lift out of range".into())
            }
        }
    })
}

fn check_cover_shape(cover: &CoverPresentation) -> Check {
    let g = cover.genus();
    let s: &RibbonSurface = cover.surface();
    ensure(cover.cover_rank() == 2 * g - 1, || format!("g={g}: rank {}", cover.cover_rank()))?;
    ensure(s.euler_characteristic() == 2 - 2 * g as i64, || format!("g={g}: euler characteristic"))?;
    let cycles = s.boundary_cycles();
    ensure(cycles.len() == 2, || format!("g={g}: {} boundary cycles", cycles.len()))?;
    let boundary = CyclicWord::from_word(&cover.base_boundary());
    for c in &cycles {
        let p = cover.project_class(c);
        ensure(p == boundary || p == boundary.inverse(), || format!("g={g}: boundary projects to {}", p.display('x')))?;
    }
    for w in cover.basis() {
        ensure(w.len() % 2 == 0, || format!("g={g}: odd basis word"))?;
    }
    Ok(())
}

/// `log(t_A)(x) = sigma_tilde(L)(x)` on all generators and `random_words`
/// random words of length at most 3.
pub fn log_path_suite(problem: &TwistProblem, seed: u64, exec: Execution, random_words: usize) -> SuiteReport {
    let g = problem.cover().base_rank();
    let mut r = rng(seed, 7);
    let mut inputs: Vec<Word> = (1..=g).map(Word::generator).collect();
    inputs.extend((0..random_words).map(|_| {
        let len = r.gen_range(1..=3);
        random_reduced_word(&mut r, g, len)
    }));
    let l = problem.build_l();
    let name = format!("log-path N_{{{g},1}} N={}", problem.order());
    run(&name, exec, inputs, |x| {
        let lhs = lib(problem.log_twist_series(x))?;
        let rhs = magnus_embed(&lib(problem.cover().sigma_tilde_projected(&l, x))?, problem.order());
        ensure(lhs == rhs, || format!("log path differs on {}", x.display('x')))
    })
}

/// All suites at their acceptance sizes.
pub fn run_suites(names: &[&str], seed: u64, exec: Execution) -> Vec<SuiteReport> {
    names
        .iter()
        .filter_map(|name| match *name {
            "word" => Some(word_suite(seed, exec, 200)),
            "magnus" => Some(magnus_suite(seed, exec, 500)),
            "goldman" => Some(goldman_suite(seed, exec, 100, 50)),
            "identities" => Some(identity_suite(seed, exec, 200)),
            "filtration" => Some(filtration_suite(seed, exec, 200, 5)),
            "cover" => Some(cover_suite(seed, exec, 3, 100)),
            _ => None,
        })
        .collect()
}
