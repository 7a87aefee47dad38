use twistlog::magnus::{
    apply_derivation, exp_derivation, exp_series, ideal_degree, log_series, magnus_embed, DerivationRep,
    TruncatedSeries,
};
use twistlog::word::{coeff, ratio};
use twistlog::{forgetful_c, CoverPresentation, CyclicWord, Error, GroupRingElement, LoopSum, Mutation, Parity, RibbonSurface, TwistProblem, Word};

fn x(s: &str) -> Word {
    Word::parse(s, 'x').unwrap()
}

fn y(s: &str) -> Word {
    Word::parse(s, 'y').unwrap()
}

fn el(rank: usize, s: &str) -> GroupRingElement {
    GroupRingElement::parse(rank, s, 'x').unwrap()
}

fn series(rank: usize, order: usize, terms: &[(&[u16], i64, i64)]) -> TruncatedSeries {
    TruncatedSeries::from_terms(rank, order, terms.iter().map(|&(m, p, q)| (m.to_vec(), ratio(p, q))))
}

#[test]
fn reduction_and_classes() {
    assert_eq!(Word::from_signed(&[1, -1]), Word::empty());
    assert_eq!(Word::from_signed(&[1, 2, -2, 1]), x("x1 x1"));
    assert_eq!(CyclicWord::from_word(&x("x1 x2 x1^-1")), CyclicWord::from_word(&x("x2")));
    assert_eq!(CyclicWord::from_word(&x("x2 x1")), CyclicWord::from_word(&x("x1 x2")));
    assert!(CyclicWord::from_word(&Word::empty()).is_empty());
}

#[test]
fn group_ring_products() {
    let a = &el(2, "x1") - &GroupRingElement::one(2);
    let b = &el(2, "x1") + &GroupRingElement::one(2);
    assert_eq!(&a * &b, &el(2, "x1 x1") - &GroupRingElement::one(2));
    assert_eq!(&el(2, "x1") * &el(2, "x1^-1"), GroupRingElement::one(2));
    let c = &el(2, "x1").scale(&coeff(3)) + &el(2, "x2").scale(&coeff(2));
    assert_eq!(c.augmentation(), coeff(5));
    assert_eq!(el(2, "x1 x2^-1").augmentation(), coeff(1));
    assert!(matches!(el(2, "x1").try_mul(&el(3, "x1")), Err(Error::RankMismatch { .. })));
}

#[test]
fn magnus_examples() {
    assert_eq!(magnus_embed(&el(1, "x1"), 3), series(1, 3, &[(&[], 1, 1), (&[1], 1, 1)]));
    assert_eq!(
        magnus_embed(&el(1, "x1^-1"), 3),
        series(1, 3, &[(&[], 1, 1), (&[1], -1, 1), (&[1, 1], 1, 1), (&[1, 1, 1], -1, 1)])
    );
    let comm = el(2, "x1 x2 x1^-1 x2^-1");
    assert_eq!(magnus_embed(&comm, 2), series(2, 2, &[(&[], 1, 1), (&[1, 2], 1, 1), (&[2, 1], -1, 1)]));
    let one = GroupRingElement::one(2);
    assert_eq!(ideal_degree(&(&el(2, "x1") - &one), 5), Some(1));
    assert_eq!(ideal_degree(&(&comm - &one), 5), Some(2));
    assert_eq!(ideal_degree(&GroupRingElement::zero(2), 5), None);

    let g = series(1, 3, &[(&[], 1, 1), (&[1], 1, 1)]);
    assert_eq!(log_series(&g).unwrap(), series(1, 3, &[(&[1], 1, 1), (&[1, 1], -1, 2), (&[1, 1, 1], 1, 3)]));
    assert!(log_series(&TruncatedSeries::one(1, 3)).unwrap().is_zero());
    assert_eq!(
        exp_series(&series(1, 2, &[(&[1], 1, 1)])).unwrap(),
        series(1, 2, &[(&[], 1, 1), (&[1], 1, 1), (&[1, 1], 1, 2)])
    );
    assert!(matches!(log_series(&TruncatedSeries::zero(1, 3)), Err(Error::ConstantTerm { .. })));
}

#[test]
fn derivation_examples() {
    let d = DerivationRep::new(vec![series(2, 4, &[(&[1, 1], 1, 1)]), TruncatedSeries::zero(2, 4)]).unwrap();
    assert_eq!(
        apply_derivation(&d, &series(2, 4, &[(&[1, 2], 1, 1)])).unwrap(),
        series(2, 4, &[(&[1, 1, 2], 1, 1)])
    );
    assert!(apply_derivation(&d, &TruncatedSeries::one(2, 4)).unwrap().is_zero());
    let s = series(2, 4, &[(&[], 1, 1), (&[2, 1], 3, 1)]);
    assert_eq!(exp_derivation(&DerivationRep::zero(2, 4), &s, 25).unwrap(), s);
    let looping = DerivationRep::new(vec![series(1, 3, &[(&[1], 1, 1)])]).unwrap();
    assert!(matches!(
        exp_derivation(&looping, &series(1, 3, &[(&[1], 1, 1)]), 10),
        Err(Error::NonTermination { iterations: 10, .. })
    ));
}

#[test]
fn surface_examples() {
    let torus = RibbonSurface::one_holed_torus();
    assert_eq!(torus.boundary_cycles().len(), 1);
    assert_eq!(RibbonSurface::annulus().boundary_cycles().len(), 2);
    assert_eq!(CoverPresentation::build(2).unwrap().surface().boundary_cycles().len(), 2);
    let a = CyclicWord::parse("x1", 'x').unwrap();
    let b = CyclicWord::parse("x2", 'x').unwrap();
    assert_eq!(torus.linked_pairs(&a, &b).len(), 1);
    let la = LoopSum::from_class(2, a.clone());
    let lb = LoopSum::from_class(2, b);
    assert_eq!(torus.goldman_bracket(&la, &lb), LoopSum::parse(2, "x1 x2", 'x').unwrap());
    assert!(torus.goldman_bracket(&la, &la).is_zero());
    assert_eq!(torus.kk_action(&la, &x("x2"), torus.based()), el(2, "x2 x1"));
    assert_eq!(torus.twist_insert(&a, &x("x2"), torus.based(), 1).unwrap(), x("x2 x1"));
    assert!(torus.kk_action(&la, &x("x1"), torus.based()).is_zero());
}

#[test]
fn cover_examples() {
    let c1 = CoverPresentation::build(1).unwrap();
    assert_eq!(c1.basis(), &[x("x1 x1")]);
    let c = CoverPresentation::build(2).unwrap();
    assert_eq!(c.basis(), &[x("x1 x1"), x("x1 x2"), x("x2 x1^-1")]);
    for g in 1..=5 {
        assert_eq!(CoverPresentation::build(g).unwrap().cover_rank(), 2 * g - 1);
    }
    assert_eq!(c.lift(&x("x1 x1")).unwrap(), (Parity::Even, y("y1")));
    assert_eq!(c.lift(&x("x1")).unwrap().0, Parity::Odd);
    assert_eq!(c.project(&y("y2")), x("x1 x2"));
    let y1 = CyclicWord::parse("y1", 'y').unwrap();
    assert_eq!(c.tau_class(&y1), y1);

    let l = LoopSum::parse(3, "y2 y3", 'y').unwrap();
    assert!(c.theta(&(&l + &c.tau(&l))).is_zero());
    assert_eq!(c.theta(&c.theta(&l)), c.theta(&l));
    let anti = &l - &c.tau(&l);
    assert_eq!(c.theta(&anti), anti);

    let a = GroupRingElement::from_word(3, y("y2 y3 y2^-1"));
    assert_eq!(forgetful_c(&a), LoopSum::parse(3, "y3", 'y').unwrap());
    assert!(c.sigma_tilde(&l, &Word::empty()).unwrap().is_zero());
}

#[test]
fn twist_problem_examples() {
    let cover = CoverPresentation::build(2).unwrap();
    let trivial = TwistProblem::new(cover.clone(), Word::empty(), 4, None).unwrap();
    assert!(trivial.build_l().is_zero());
    let report = trivial.verify(false).unwrap();
    assert!(report.verified && report.degenerate);
    assert!(trivial.log_twist_series(&x("x1")).unwrap().is_zero());

    // y1 = a1^2 is deck-invariant: theta kills it
    let invariant = TwistProblem::new(cover.clone(), y("y1"), 4, None).unwrap();
    assert!(invariant.is_degenerate());
    assert!(invariant.build_l().is_zero());

    let preset = TwistProblem::preset(2, 4, None).unwrap();
    assert!(preset.log_twist_series(&x("x1 x2")).unwrap().is_zero());
    let report = preset.verify(false).unwrap();
    assert!(report.verified);
    assert_eq!(report.signs_verified, vec![1]);
    let counts = preset.insertion_counts().unwrap();
    let past_end = Mutation::FlipInsertion { generator: 1, index: counts[0] };
    assert!(matches!(preset.verify_mutated(past_end), Err(Error::Invalid(_))));
    let no_gen = Mutation::FlipInsertion { generator: 3, index: 0 };
    assert!(matches!(preset.verify_mutated(no_gen), Err(Error::IndexOutOfRange { .. })));

    assert!(matches!(
        TwistProblem::new(cover.clone(), y("y2 y2"), 4, None),
        Err(Error::NotSimple(_))
    ));
    assert!(matches!(TwistProblem::new(cover, y("y4"), 4, None), Err(Error::IndexOutOfRange { .. })));
}
