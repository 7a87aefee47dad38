//! The non-orientable surface `N_{g,1}` in crosscap form and its orientation
//! double cover.
//!
//! The base group is free on `a_1..a_g` (letters `x<i>`) with boundary
//! `a_1^2 ... a_g^2`; every generator reverses orientation. The cover group
//! is the kernel of the orientation character, free on the Schreier basis
//!
//! ```text
//! y_i       = a_1 a_i       (1 <= i <= g)
//! y_{g-1+i} = a_i a_1^-1    (2 <= i <= g)
//! ```
//!
//! (letters `y<i>`), realized as a one-vertex fatgraph. The upper basepoint
//! sits in sector `2g-2` and the lower one in sector `2g-1`; the deck
//! involution is conjugation by `a_1`.

use serde_json::json;

use crate::error::{Error, Result};
use crate::ribbon::{Endpoints, RibbonSurface};
use crate::word::{ratio, CyclicWord, Generator, GroupRingElement, LoopSum, Word};

/// Parity of a base word under the orientation character.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Debug)]
pub struct CoverPresentation {
    genus: usize,
    basis: Vec<Word>,
    surface: RibbonSurface,
}

impl CoverPresentation {
    pub fn build(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidSurface("N_{g,1} needs g >= 1".into()));
        }
        let g = genus as i32;
        let mut basis = Vec::with_capacity(2 * genus - 1);
        for i in 1..=g {
            basis.push(Word::from_signed(&[1, i]));
        }
        for i in 2..=g {
            basis.push(Word::from_signed(&[i, -1]));
        }
        let mut order = vec![-1];
        for i in 2..=g {
            order.extend([g - 1 + i, -i]);
        }
        order.push(1);
        for i in (2..=g).rev() {
            order.extend([-(g - 1 + i), i]);
        }
        let surface = RibbonSurface::new(2 * genus - 1, order, 2 * genus - 2)?;
        Ok(CoverPresentation { genus, basis, surface })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn base_rank(&self) -> usize {
        self.genus
    }

    pub fn cover_rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn surface(&self) -> &RibbonSurface {
        &self.surface
    }

    pub fn deck_element(&self) -> Word {
        Word::generator(1)
    }

    /// `a_1^2 a_2^2 ... a_g^2`.
    pub fn base_boundary(&self) -> Word {
        Word::reduce((1..=self.genus).flat_map(|i| [Generator::new(i, false); 2]))
    }

    pub fn upper_sector(&self) -> usize {
        2 * self.genus - 2
    }

    pub fn lower_sector(&self) -> usize {
        2 * self.genus - 1
    }

    pub fn endpoints(&self, parity: Parity) -> Endpoints {
        Endpoints {
            start: self.upper_sector(),
            end: match parity {
                Parity::Even => self.upper_sector(),
                Parity::Odd => self.lower_sector(),
            },
        }
    }

    pub fn parity(&self, x: &Word) -> Parity {
        if x.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn check_base(&self, x: &Word) -> Result<()> {
        if x.max_index() > self.genus {
            return Err(Error::IndexOutOfRange {
                index: x.max_index(),
                rank: self.genus,
            });
        }
        Ok(())
    }

    fn check_cover(&self, w: &Word) -> Result<()> {
        if w.max_index() > self.cover_rank() {
            return Err(Error::IndexOutOfRange {
                index: w.max_index(),
                rank: self.cover_rank(),
            });
        }
        Ok(())
    }

    /// Lift of a base word starting at the upper basepoint. Odd words end at
    /// the lower basepoint.
    pub fn lift(&self, x: &Word) -> Result<(Parity, Word)> {
        self.check_base(x)?;
        let shift = self.genus - 1;
        let mut out = Vec::with_capacity(x.len());
        let mut upper = true;
        for &l in x.letters() {
            let i = l.index();
            match (upper, l.is_inverse()) {
                (true, false) if i > 1 => out.push(Generator::new(shift + i, false)),
                (false, false) => out.push(Generator::new(i, false)),
                (true, true) => out.push(Generator::new(i, true)),
                (false, true) if i > 1 => out.push(Generator::new(shift + i, true)),
                _ => {}
            }
            upper = !upper;
        }
        let parity = if upper { Parity::Even } else { Parity::Odd };
        Ok((parity, Word::reduce(out)))
    }

    /// Rewrites an even base word in the Schreier basis.
    pub fn rewrite_even(&self, x: &Word) -> Result<Word> {
        match self.lift(x)? {
            (Parity::Even, w) => Ok(w),
            (Parity::Odd, _) => Err(Error::OddParity(x.display('x').to_string())),
        }
    }

    /// Substitutes basis words for cover letters.
    pub fn project(&self, w: &Word) -> Word {
        Word::reduce(w.letters().iter().flat_map(|l| {
            let b = &self.basis[l.index() - 1];
            if l.is_inverse() {
                b.inverse().letters().to_vec()
            } else {
                b.letters().to_vec()
            }
        }))
    }

    /// Projection of a lifted path; odd paths close up with `a_1`.
    pub fn project_path(&self, parity: Parity, w: &Word) -> Word {
        let p = self.project(w);
        match parity {
            Parity::Even => p,
            Parity::Odd => p.concat(&self.deck_element()),
        }
    }

    pub fn project_class(&self, c: &CyclicWord) -> CyclicWord {
        CyclicWord::from_word(&self.project(&c.to_word()))
    }

    pub fn project_element(&self, a: &GroupRingElement) -> GroupRingElement {
        a.map_words(self.genus, |w| self.project(w))
    }

    pub fn tau_word(&self, w: &Word) -> Word {
        let d = self.deck_element();
        let conj = d.concat(&self.project(w)).concat(&d.inverse());
        self.rewrite_even(&conj)
            .expect("conjugation by the deck element preserves parity")
    }

    pub fn tau_class(&self, c: &CyclicWord) -> CyclicWord {
        CyclicWord::from_word(&self.tau_word(&c.to_word()))
    }

    pub fn tau(&self, y: &LoopSum) -> LoopSum {
        y.map_classes(self.cover_rank(), |c| self.tau_class(c))
    }

    /// `(y - tau(y)) / 2`.
    pub fn theta(&self, y: &LoopSum) -> LoopSum {
        (y - &self.tau(y)).scale(&ratio(1, 2))
    }

    /// The action of `y` on a base word: lift, act on the cover with
    /// `theta(y)`, project.
    pub fn sigma_tilde(&self, y: &LoopSum, x: &Word) -> Result<GroupRingElement> {
        self.sigma_tilde_projected(&self.theta(y), x)
    }

    /// Like [`sigma_tilde`](Self::sigma_tilde) for a `y` already in the
    /// image of `theta`.
    pub fn sigma_tilde_projected(&self, theta_y: &LoopSum, x: &Word) -> Result<GroupRingElement> {
        if theta_y.rank() != self.cover_rank() {
            return Err(Error::RankMismatch {
                left: theta_y.rank(),
                right: self.cover_rank(),
            });
        }
        let (parity, lifted) = self.lift(x)?;
        let upstairs = self
            .surface
            .kk_action(theta_y, &lifted, self.endpoints(parity));
        Ok(upstairs.map_words(self.genus, |w| self.project_path(parity, w)))
    }

    pub fn sigma_tilde_element(&self, y: &LoopSum, a: &GroupRingElement) -> Result<GroupRingElement> {
        let theta_y = self.theta(y);
        let mut out = GroupRingElement::zero(self.genus);
        for (w, c) in a.iter() {
            out = &out + &self.sigma_tilde_projected(&theta_y, w)?.scale(c);
        }
        Ok(out)
    }

    /// Loop sum over the cover parsed in the `y` alphabet.
    pub fn parse_loops(&self, text: &str) -> Result<LoopSum> {
        let c = CyclicWord::parse(text, 'y')?;
        self.check_cover(&c.to_word())?;
        Ok(LoopSum::from_class(self.cover_rank(), c))
    }

    pub fn parse_cover_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text, 'y')?;
        self.check_cover(&w)?;
        Ok(w)
    }

    pub fn parse_base_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text, 'x')?;
        self.check_base(&w)?;
        Ok(w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<_> = self
            .basis
            .iter()
            .enumerate()
            .map(|(k, w)| json!({"letter": format!("y{}", k + 1), "word": w.display('x').to_string()}))
            .collect();
        let cycles: Vec<_> = self
            .surface
            .boundary_cycles()
            .iter()
            .map(|c| {
                json!({
                    "cycle": c.display('y').to_string(),
                    "projection": self.project_class(c).display('x').to_string(),
                })
            })
            .collect();
        json!({
            "genus": self.genus,
            "base_rank": self.genus,
            "base_boundary": self.base_boundary().display('x').to_string(),
            "orientation_character": vec![1; self.genus],
            "deck_element": self.deck_element().display('x').to_string(),
            "basis": basis,
            "surface": self.surface.description(),
            "upper_sector": self.upper_sector(),
            "lower_sector": self.lower_sector(),
            "euler_characteristic": self.surface.euler_characteristic(),
            "boundary_cycles": cycles,
        })
    }
}

/// The forgetful map from based loops to free loops.
pub fn forgetful_c(a: &GroupRingElement) -> LoopSum {
    LoopSum::from_terms(a.rank(), a.iter().map(|(w, c)| (CyclicWord::from_word(w), c.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::coeff;

    fn x(s: &str) -> Word {
        Word::parse(s, 'x').unwrap()
    }

    fn y(s: &str) -> Word {
        Word::parse(s, 'y').unwrap()
    }

    #[test]
    fn genus_one_cover_is_annulus() {
        let c = CoverPresentation::build(1).unwrap();
        assert_eq!(c.cover_rank(), 1);
        assert_eq!(c.basis(), &[x("x1 x1")]);
        assert_eq!(c.surface().boundary_cycles().len(), 2);
    }

    #[test]
    fn genus_two_basis() {
        let c = CoverPresentation::build(2).unwrap();
        assert_eq!(c.basis(), &[x("x1 x1"), x("x1 x2"), x("x2 x1^-1")]);
        assert_eq!(c.surface().cyclic_order(), &[-1, 3, -2, 1, -3, 2]);
        assert_eq!(c.surface().euler_characteristic(), -2);
    }

    #[test]
    fn boundaries_project_to_base_boundary() {
        for g in 1..=4 {
            let c = CoverPresentation::build(g).unwrap();
            let cycles = c.surface().boundary_cycles();
            assert_eq!(cycles.len(), 2, "g={g}");
            let boundary = CyclicWord::from_word(&c.base_boundary());
            for cyc in &cycles {
                let p = c.project_class(cyc);
                assert!(p == boundary || p == boundary.inverse(), "g={g}");
            }
            let upper = c.surface().boundary_word(c.upper_sector());
            assert_eq!(c.project(&upper), c.base_boundary(), "g={g}");
        }
    }

    #[test]
    fn lift_examples() {
        let c = CoverPresentation::build(2).unwrap();
        assert_eq!(c.lift(&x("x1 x1")).unwrap(), (Parity::Even, y("y1")));
        assert_eq!(c.lift(&x("x1 x2")).unwrap(), (Parity::Even, y("y2")));
        assert_eq!(c.lift(&x("x2 x1^-1")).unwrap(), (Parity::Even, y("y3")));
        assert_eq!(c.lift(&x("x1")).unwrap(), (Parity::Odd, Word::empty()));
        assert_eq!(c.lift(&x("x2")).unwrap(), (Parity::Odd, y("y3")));
        for s in ["x1", "x2 x1 x2", "x1^-1 x2^-1", "x2^-1 x1 x1 x2", "e"] {
            let (p, w) = c.lift(&x(s)).unwrap();
            assert_eq!(c.project_path(p, &w), x(s), "{s}");
        }
        assert!(matches!(c.rewrite_even(&x("x2")), Err(Error::OddParity(_))));
        assert!(c.lift(&x("x3")).is_err());
    }

    #[test]
    fn tau_is_an_involution_over_the_base() {
        let c = CoverPresentation::build(2).unwrap();
        assert_eq!(c.tau_word(&y("y2")), y("y1 y3"));
        assert_eq!(c.tau_class(&CyclicWord::parse("y1", 'y').unwrap()), CyclicWord::parse("y1", 'y').unwrap());
        for s in ["y1", "y2", "y3", "y1 y2^-1 y3", "y3 y3 y2"] {
            let w = y(s);
            assert_eq!(c.tau_word(&c.tau_word(&w)), y("y1").concat(&w).concat(&y("y1^-1")));
            let cw = CyclicWord::from_word(&w);
            assert_eq!(c.tau_class(&c.tau_class(&cw)), cw);
            assert_eq!(c.project_class(&c.tau_class(&cw)), c.project_class(&cw));
        }
    }

    #[test]
    fn theta_is_a_projector() {
        let c = CoverPresentation::build(2).unwrap();
        let l = LoopSum::parse(3, "y2 y3^-1", 'y').unwrap();
        let t = c.theta(&l);
        assert_eq!(c.theta(&t), t);
        assert!(c.theta(&(&l + &c.tau(&l))).is_zero());
    }

    #[test]
    fn sigma_tilde_kills_constants_and_is_odd_under_tau() {
        let c = CoverPresentation::build(2).unwrap();
        let l = LoopSum::parse(3, "y2", 'y').unwrap();
        assert!(c.sigma_tilde(&l, &Word::empty()).unwrap().is_zero());
        for s in ["x1", "x2", "x1 x2^-1", "x2 x2 x1"] {
            let a = c.sigma_tilde(&l, &x(s)).unwrap();
            let b = c.sigma_tilde(&c.tau(&l), &x(s)).unwrap();
            assert_eq!(a, -&b, "{s}");
        }
    }

    #[test]
    fn forgetful_map_merges_conjugates() {
        let a = GroupRingElement::from_terms(
            2,
            [(y("y1 y2 y1^-1"), coeff(1)), (y("y2"), coeff(2)), (Word::empty(), coeff(3))],
        );
        let c = forgetful_c(&a);
        assert_eq!(c.len(), 2);
        assert_eq!(c.coeff_of(&CyclicWord::parse("y2", 'y').unwrap()), coeff(3));
    }
}
