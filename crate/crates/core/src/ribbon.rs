//! One-vertex fatgraph model of a compact oriented surface with boundary.
//!
//! Every edge `i` is a band with two ends at the single vertex: the end
//! `+i` where the letter `x_i` departs and the end `-i` where it arrives.
//! `cyclic_order` lists the `2m` ends counterclockwise; the orientation of
//! the surface is that counterclockwise order. Sector `p` is the gap
//! between `cyclic_order[p]` and `cyclic_order[p+1]`, and based paths start
//! and end in sectors, which lie on the boundary.
//!
//! Curves are represented by their taut (reduced / cyclically reduced)
//! words. Two taut curves cross exactly where lifts to the universal cover
//! tree share a segment whose four outgoing branches interleave in the
//! planar order, so intersections are enumerated as "linked pairs" of
//! corners together with the length of the shared run.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{coeff, CyclicWord, Generator, GroupRingElement, LoopSum, Word};

/// Start and end sectors of a based path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoints {
    pub start: usize,
    pub end: usize,
}

/// One transverse crossing between a first curve and a closed second curve.
///
/// `first` is the corner of the first curve (the vertex before its letter
/// `first`) where the shared run starts, `length` the number of shared
/// edges, `second` the corner of the second curve at that same vertex and
/// `reversed` whether the second curve runs against the first along the
/// shared edges. `sign` is the local intersection number with the first
/// curve's tangent taken first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntersectionDatum {
    pub first: usize,
    pub second: usize,
    pub length: usize,
    pub reversed: bool,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescription {
    pub rank: usize,
    pub cyclic_order: Vec<i32>,
    pub basepoint_sector: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonSurface {
    rank: usize,
    cyclic_order: Vec<i32>,
    basepoint_sector: usize,
    slot: Vec<usize>,
}

fn end_index(id: i32) -> usize {
    if id > 0 {
        2 * (id as usize - 1)
    } else {
        2 * ((-id) as usize - 1) + 1
    }
}

impl RibbonSurface {
    pub fn new(rank: usize, cyclic_order: Vec<i32>, basepoint_sector: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidSurface("rank must be positive".into()));
        }
        if cyclic_order.len() != 2 * rank {
            return Err(Error::InvalidSurface(format!(
                "expected {} edge ends, found {}",
                2 * rank,
                cyclic_order.len()
            )));
        }
        let mut slot = vec![usize::MAX; 2 * rank];
        for (p, &id) in cyclic_order.iter().enumerate() {
            if id == 0 || id.unsigned_abs() as usize > rank {
                return Err(Error::InvalidSurface(format!("edge end {id} out of range")));
            }
            let k = end_index(id);
            if slot[k] != usize::MAX {
                return Err(Error::InvalidSurface(format!("edge end {id} listed twice")));
            }
            slot[k] = p;
        }
        if basepoint_sector >= 2 * rank {
            return Err(Error::InvalidSurface(format!(
                "basepoint sector {basepoint_sector} out of range"
            )));
        }
        Ok(RibbonSurface {
            rank,
            cyclic_order,
            basepoint_sector,
            slot,
        })
    }

    pub fn from_description(d: &SurfaceDescription) -> Result<Self> {
        Self::new(d.rank, d.cyclic_order.clone(), d.basepoint_sector)
    }

    pub fn description(&self) -> SurfaceDescription {
        SurfaceDescription {
            rank: self.rank,
            cyclic_order: self.cyclic_order.clone(),
            basepoint_sector: self.basepoint_sector,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_description(&serde_json::from_str(text)?)
    }

    /// The one-holed torus: ends `x1, x2, x1^-1, x2^-1` around the vertex.
    pub fn one_holed_torus() -> Self {
        Self::new(2, vec![1, 2, -1, -2], 0).expect("valid preset")
    }

    pub fn annulus() -> Self {
        Self::new(1, vec![1, -1], 0).expect("valid preset")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cyclic_order(&self) -> &[i32] {
        &self.cyclic_order
    }

    pub fn basepoint_sector(&self) -> usize {
        self.basepoint_sector
    }

    pub fn based(&self) -> Endpoints {
        Endpoints {
            start: self.basepoint_sector,
            end: self.basepoint_sector,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        1 - self.rank as i64
    }

    pub fn genus(&self) -> usize {
        let b = self.boundary_cycles().len() as i64;
        ((2 - self.euler_characteristic() - b) / 2) as usize
    }

    fn slot_of(&self, id: i32) -> usize {
        self.slot[end_index(id)]
    }

    fn next_end(&self, id: i32) -> i32 {
        self.cyclic_order[(self.slot_of(id) + 1) % (2 * self.rank)]
    }

    /// The boundary reading that departs from `sector`, as a based word.
    pub fn boundary_word(&self, sector: usize) -> Word {
        let n = 2 * self.rank;
        let first = self.cyclic_order[(sector + 1) % n];
        let mut letters = Vec::new();
        let mut leave = first;
        loop {
            letters.push(Generator::from_signed(leave));
            leave = self.next_end(-leave);
            if leave == first {
                break;
            }
        }
        Word::reduce(letters)
    }

    /// Faces of the fatgraph, i.e. boundary components, as free classes.
    pub fn boundary_cycles(&self) -> Vec<CyclicWord> {
        let mut seen = vec![false; 2 * self.rank];
        let mut cycles = Vec::new();
        for &start in &self.cyclic_order {
            if seen[end_index(start)] {
                continue;
            }
            let mut letters = Vec::new();
            let mut leave = start;
            while !seen[end_index(leave)] {
                seen[end_index(leave)] = true;
                letters.push(Generator::from_signed(leave));
                leave = self.next_end(-leave);
            }
            cycles.push(CyclicWord::from_word(&Word::reduce(letters)));
        }
        cycles.sort();
        cycles
    }

    /// The boundary class whose face contains a sector.
    pub fn sector_boundary(&self, sector: usize) -> CyclicWord {
        CyclicWord::from_word(&self.boundary_word(sector))
    }

    // Points on the vertex circle: end at slot p -> 2p, sector p -> 2p + 1.
    fn modulus(&self) -> u32 {
        4 * self.rank as u32
    }

    fn end_point(&self, id: i32) -> u32 {
        2 * self.slot_of(id) as u32
    }

    fn sector_point(&self, sector: usize) -> u32 {
        2 * sector as u32 + 1
    }

    fn linked<S: Strand>(&self, a: &S, b: &[Generator]) -> Vec<IntersectionDatum> {
        let nb = b.len();
        let mut out = Vec::new();
        if nb == 0 || a.corners() == 0 {
            return out;
        }
        let m = self.modulus();
        let bbar: Vec<Generator> = b.iter().rev().map(|g| g.inverse()).collect();
        for reversed in [false, true] {
            let bd = Closed(if reversed { &bbar[..] } else { b });
            for i in 0..a.corners() {
                let a_in = a.in_point(self, i);
                for j in 0..nb {
                    let b_in = bd.in_point(self, j);
                    if a_in == b_in {
                        continue;
                    }
                    let cap = a.extension_cap() + nb;
                    let mut k = 0;
                    let mut parallel = false;
                    while let Some(l) = a.letter(i + k) {
                        if l != bd.0[(j + k) % nb] {
                            break;
                        }
                        k += 1;
                        if k >= cap {
                            parallel = true;
                            break;
                        }
                    }
                    if parallel || (reversed && k == 0) {
                        continue;
                    }
                    let a_out = a.out_point(self, i + k);
                    let b_out = bd.out_point(self, j + k);
                    let sign = if k == 0 {
                        if a_in == b_out || a_out == b_in {
                            // belongs to a run shared in opposite directions
                            continue;
                        }
                        crossing_sign([a_in, a_out], [b_in, b_out], m)
                    } else {
                        let s_p = a.out_point(self, i);
                        let s_q = a.in_point(self, i + k);
                        let at_p = |x: u32| (x + m - s_p) % m;
                        let at_q = |x: u32| m + (x + m - s_q) % m;
                        let (bs, be) = (at_p(b_in), at_q(b_out));
                        let b_ends = if reversed { [be, bs] } else { [bs, be] };
                        crossing_sign([at_p(a_in), at_q(a_out)], b_ends, 2 * m)
                    };
                    if let Some(sign) = sign {
                        out.push(IntersectionDatum {
                            first: i,
                            second: if reversed { (nb - j) % nb } else { j },
                            length: k,
                            reversed,
                            sign,
                        });
                    }
                }
            }
        }
        out
    }

    /// Crossings between two closed curves (taut representatives).
    pub fn linked_pairs(&self, alpha: &CyclicWord, beta: &CyclicWord) -> Vec<IntersectionDatum> {
        self.linked(&Closed(alpha.letters()), beta.letters())
    }

    /// Crossings between a based path and a closed curve.
    pub fn linked_pairs_path(&self, x: &Word, ends: Endpoints, beta: &CyclicWord) -> Vec<IntersectionDatum> {
        self.linked(
            &Path {
                letters: x.letters(),
                ends,
            },
            beta.letters(),
        )
    }

    pub fn is_simple(&self, c: &CyclicWord) -> bool {
        c.is_primitive() && self.linked_pairs(c, c).is_empty()
    }

    /// Goldman bracket: sum over crossings of `sign * <alpha_q beta_q>`.
    pub fn goldman_bracket(&self, alpha: &LoopSum, beta: &LoopSum) -> LoopSum {
        let mut out = LoopSum::zero(self.rank);
        for (a, ca) in alpha.iter() {
            for (b, cb) in beta.iter() {
                let weight = ca * cb;
                for d in self.linked_pairs(a, b) {
                    let product = a.rotation(d.first).concat(&b.rotation(d.second));
                    out.add_term(CyclicWord::from_word(&product), &weight * coeff(d.sign as i64));
                }
            }
        }
        out
    }

    /// The based action: `sum_q eps(q; y, x) x_{start,q} y_q x_{q,end}`.
    pub fn kk_action(&self, y: &LoopSum, x: &Word, ends: Endpoints) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.rank);
        let letters = x.letters();
        for (class, c) in y.iter() {
            for d in self.linked_pairs_path(x, ends, class) {
                let loop_word = class.rotation(d.second);
                let term = Word::reduce(
                    letters[..d.first]
                        .iter()
                        .chain(loop_word.letters())
                        .chain(&letters[d.first..])
                        .copied(),
                );
                out.add_term(term, c * coeff(-(d.sign as i64)));
            }
        }
        out
    }

    /// Image of `x` under the Dehn twist along the simple curve `c`
    /// (`power = 1`) or its inverse (`power = -1`): at each crossing `q`, in
    /// order along `x`, insert `c_q^(power * eps(q; c, x))`.
    pub fn twist_insert(&self, c: &CyclicWord, x: &Word, ends: Endpoints, power: i8) -> Result<Word> {
        self.twist_insert_flipping(c, x, ends, power, None)
    }

    /// [`twist_insert`](Self::twist_insert) with the exponent of the
    /// `flip`-th insertion (in order along `x`) negated. Only meant for
    /// mutation testing of the verification harness.
    pub fn twist_insert_flipping(
        &self,
        c: &CyclicWord,
        x: &Word,
        ends: Endpoints,
        power: i8,
        flip: Option<usize>,
    ) -> Result<Word> {
        if !self.is_simple(c) {
            return Err(Error::NotSimple(c.display('y').to_string()));
        }
        let nc = c.len();
        let letters = x.letters();
        let mut pairs = self.linked_pairs_path(x, ends, c);
        let lower: Vec<(usize, Ray)> = pairs
            .iter()
            .enumerate()
            .map(|(k, d)| (k, self.lower_end(x, ends, c, d)))
            .collect();
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.sort_by(|&p, &q| self.compare_rays(ends, &lower[p].1, &lower[q].1));
        pairs = order.iter().map(|&k| pairs[k]).collect();

        let mut out: Vec<Generator> = Vec::with_capacity(letters.len() + pairs.len() * nc);
        let mut cursor = 0;
        for (n, d) in pairs.iter().enumerate() {
            let at = cursor.max(d.first);
            if at > d.first + d.length {
                return Err(Error::Invalid(format!(
                    "crossing order inconsistent with shared runs along {}",
                    x.display('y')
                )));
            }
            let shift = at - d.first;
            let corner = if d.reversed {
                (d.second + nc * (shift / nc + 1) - shift) % nc
            } else {
                (d.second + shift) % nc
            };
            let mut exponent = power as i64 * -(d.sign as i64);
            if flip == Some(n) {
                exponent = -exponent;
            }
            out.extend_from_slice(&letters[cursor..at]);
            let loop_word = c.rotation(corner);
            if exponent > 0 {
                out.extend_from_slice(loop_word.letters());
            } else {
                out.extend(loop_word.inverse().letters());
            }
            cursor = at;
        }
        out.extend_from_slice(&letters[cursor..]);
        Ok(Word::reduce(out))
    }

    /// Number of insertions `twist_insert` performs for `x`.
    pub fn crossing_count(&self, c: &CyclicWord, x: &Word, ends: Endpoints) -> usize {
        self.linked_pairs_path(x, ends, c).len()
    }

    // The ideal endpoint of the lift through a crossing that comes first in
    // the linear order of the boundary circle cut at the path's start.
    fn lower_end<'a>(&self, x: &'a Word, ends: Endpoints, c: &'a CyclicWord, d: &IntersectionDatum) -> Ray<'a> {
        let prefix = &x.letters()[..d.first];
        let forward = Ray {
            prefix,
            tail: Tail::Forward(c.letters(), d.second),
        };
        let backward = Ray {
            prefix,
            tail: Tail::Backward(c.letters(), d.second),
        };
        if self.compare_rays(ends, &forward, &backward) == Ordering::Less {
            forward
        } else {
            backward
        }
    }

    fn compare_rays(&self, ends: Endpoints, r1: &Ray, r2: &Ray) -> Ordering {
        let m = self.modulus();
        let mut reference = self.sector_point(ends.start);
        let bound = r1.prefix.len().max(r2.prefix.len()) + 2 * (r1.tail.period() + r2.tail.period()) + 2;
        for t in 0..bound {
            let (g1, g2) = (r1.step(t), r2.step(t));
            if g1 != g2 {
                let o1 = (self.end_point(g1.signed()) + m - reference) % m;
                let o2 = (self.end_point(g2.signed()) + m - reference) % m;
                return o1.cmp(&o2);
            }
            reference = self.end_point(-g1.signed());
        }
        Ordering::Equal
    }
}

/// `eps(A, B)` for two chords of a circle of size `modulus`, or `None` if
/// they do not interleave: `+1` when B's start lies counterclockwise
/// between A's start and A's end.
fn crossing_sign(a: [u32; 2], b: [u32; 2], modulus: u32) -> Option<i8> {
    let off = |p: u32| (p + modulus - a[0]) % modulus;
    let a_end = off(a[1]);
    let inside = |p: u32| {
        let o = off(p);
        o > 0 && o < a_end
    };
    match (inside(b[0]), inside(b[1])) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

trait Strand {
    fn corners(&self) -> usize;
    fn letter(&self, corner: usize) -> Option<Generator>;
    fn in_point(&self, s: &RibbonSurface, corner: usize) -> u32;
    fn out_point(&self, s: &RibbonSurface, corner: usize) -> u32;
    fn extension_cap(&self) -> usize;
}

struct Closed<'a>(&'a [Generator]);

impl Strand for Closed<'_> {
    fn corners(&self) -> usize {
        self.0.len()
    }
    fn letter(&self, corner: usize) -> Option<Generator> {
        Some(self.0[corner % self.0.len()])
    }
    fn in_point(&self, s: &RibbonSurface, corner: usize) -> u32 {
        let n = self.0.len();
        s.end_point(-self.0[(corner % n + n - 1) % n].signed())
    }
    fn out_point(&self, s: &RibbonSurface, corner: usize) -> u32 {
        s.end_point(self.0[corner % self.0.len()].signed())
    }
    fn extension_cap(&self) -> usize {
        self.0.len()
    }
}

struct Path<'a> {
    letters: &'a [Generator],
    ends: Endpoints,
}

impl Strand for Path<'_> {
    fn corners(&self) -> usize {
        self.letters.len() + 1
    }
    fn letter(&self, corner: usize) -> Option<Generator> {
        self.letters.get(corner).copied()
    }
    fn in_point(&self, s: &RibbonSurface, corner: usize) -> u32 {
        if corner == 0 {
            s.sector_point(self.ends.start)
        } else {
            s.end_point(-self.letters[corner - 1].signed())
        }
    }
    fn out_point(&self, s: &RibbonSurface, corner: usize) -> u32 {
        match self.letters.get(corner) {
            Some(g) => s.end_point(g.signed()),
            None => s.sector_point(self.ends.end),
        }
    }
    fn extension_cap(&self) -> usize {
        self.letters.len()
    }
}

enum Tail<'a> {
    /// The closed word read forward from a corner, forever.
    Forward(&'a [Generator], usize),
    /// The closed word read backward from a corner, forever.
    Backward(&'a [Generator], usize),
}

impl Tail<'_> {
    fn period(&self) -> usize {
        match self {
            Tail::Forward(w, _) | Tail::Backward(w, _) => w.len(),
        }
    }
}

struct Ray<'a> {
    prefix: &'a [Generator],
    tail: Tail<'a>,
}

impl Ray<'_> {
    fn step(&self, t: usize) -> Generator {
        if t < self.prefix.len() {
            return self.prefix[t];
        }
        let u = t - self.prefix.len();
        match self.tail {
            Tail::Forward(w, start) => w[(start + u) % w.len()],
            Tail::Backward(w, start) => {
                let n = w.len();
                w[(start + n * (u / n + 1) - 1 - u) % n].inverse()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Combination;

    fn cw(s: &str) -> CyclicWord {
        CyclicWord::parse(s, 'x').unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, 'x').unwrap()
    }

    fn ls(s: &str) -> LoopSum {
        LoopSum::parse(2, s, 'x').unwrap()
    }

    #[test]
    fn rejects_malformed_descriptions() {
        assert!(RibbonSurface::new(2, vec![1, 2, -1], 0).is_err());
        assert!(RibbonSurface::new(2, vec![1, 2, -1, 2], 0).is_err());
        assert!(RibbonSurface::new(2, vec![1, 3, -1, -2], 0).is_err());
        assert!(RibbonSurface::new(2, vec![1, 2, -1, -2], 4).is_err());
        assert!(RibbonSurface::new(0, vec![], 0).is_err());
    }

    #[test]
    fn torus_has_one_commutator_boundary() {
        let s = RibbonSurface::one_holed_torus();
        let cycles = s.boundary_cycles();
        assert_eq!(cycles, vec![cw("x1 x2^-1 x1^-1 x2")]);
        assert_eq!(s.boundary_word(0), w("x2 x1 x2^-1 x1^-1"));
        assert_eq!(s.genus(), 1);
        assert_eq!(s.euler_characteristic(), -1);
    }

    #[test]
    fn annulus_has_two_boundaries() {
        let s = RibbonSurface::annulus();
        assert_eq!(s.boundary_cycles().len(), 2);
        assert_eq!(s.genus(), 0);
    }

    #[test]
    fn torus_generators_cross_once() {
        let s = RibbonSurface::one_holed_torus();
        let pairs = s.linked_pairs(&cw("x1"), &cw("x2"));
        assert_eq!(pairs.len(), 1);
        // x1 runs from -1 to +1, x2 from -2 to +2: the frame (x1', x2') is
        // counterclockwise.
        assert_eq!(pairs[0].sign, 1);
        assert!(s.linked_pairs(&cw("x1"), &cw("x1")).is_empty());
    }

    #[test]
    fn torus_bracket_of_generators() {
        let s = RibbonSurface::one_holed_torus();
        assert_eq!(s.goldman_bracket(&ls("x1"), &ls("x2")), ls("x1 x2"));
        assert_eq!(s.goldman_bracket(&ls("x2"), &ls("x1")), -&ls("x1 x2"));
        assert!(s.goldman_bracket(&ls("x1 x2^-1"), &ls("x1 x2^-1")).is_zero());
    }

    #[test]
    fn bracket_with_powers_scales() {
        let s = RibbonSurface::one_holed_torus();
        // [<x1^2>, <x2>] = 2 <x1^2 x2>
        assert_eq!(
            s.goldman_bracket(&ls("x1 x1"), &ls("x2")),
            ls("x1 x1 x2").scale(&coeff(2))
        );
        assert!(s.goldman_bracket(&ls("x1 x1"), &ls("x1 x1 x1")).is_zero());
    }

    #[test]
    fn boundary_class_is_central() {
        let s = RibbonSurface::one_holed_torus();
        let boundary = LoopSum::from_class(2, s.boundary_cycles()[0].clone());
        for y in ["x1", "x2", "x1 x2", "x1 x2^-1 x2^-1", "x1 x1 x2 x1^-1 x2"] {
            assert!(s.goldman_bracket(&boundary, &ls(y)).is_zero(), "{y}");
        }
    }

    #[test]
    fn torus_action_on_generator() {
        let s = RibbonSurface::one_holed_torus();
        let out = s.kk_action(&ls("x1"), &w("x2"), s.based());
        assert_eq!(out, Combination::from_word(2, w("x2 x1")));
        assert!(s.kk_action(&ls("x1"), &Word::empty(), s.based()).is_zero());
    }

    #[test]
    fn action_vanishes_on_disjoint_annulus_core() {
        let s = RibbonSurface::annulus();
        let y = LoopSum::parse(1, "x1", 'x').unwrap();
        assert!(s.kk_action(&y, &w("x1"), s.based()).is_zero());
    }

    #[test]
    fn torus_twist_on_generator() {
        let s = RibbonSurface::one_holed_torus();
        assert_eq!(s.twist_insert(&cw("x1"), &w("x2"), s.based(), 1).unwrap(), w("x2 x1"));
        assert_eq!(s.twist_insert(&cw("x1"), &w("x2"), s.based(), -1).unwrap(), w("x2 x1^-1"));
        assert_eq!(s.twist_insert(&cw("x1"), &w("x1"), s.based(), 1).unwrap(), w("x1"));
    }

    #[test]
    fn twist_requires_simple_curve() {
        let s = RibbonSurface::one_holed_torus();
        assert!(matches!(
            s.twist_insert(&cw("x1 x1"), &w("x2"), s.based(), 1),
            Err(Error::NotSimple(_))
        ));
        assert!(!s.is_simple(&cw("x1 x2 x1^-1 x2^-1 x1 x2")));
    }

    #[test]
    fn twist_fixes_boundary_and_is_multiplicative() {
        let s = RibbonSurface::one_holed_torus();
        let boundary = s.boundary_word(0);
        for c in ["x1", "x2", "x1 x2", "x1 x2^-1", "x1 x1 x2"] {
            let c = cw(c);
            assert!(s.is_simple(&c));
            assert_eq!(s.twist_insert(&c, &boundary, s.based(), 1).unwrap(), boundary);
            let t = |x: &Word| s.twist_insert(&c, x, s.based(), 1).unwrap();
            for (a, b) in [("x1", "x2"), ("x2 x1", "x1^-1"), ("x1 x2 x1", "x2^-1 x2^-1")] {
                let (a, b) = (w(a), w(b));
                assert_eq!(t(&a.concat(&b)), t(&a).concat(&t(&b)));
            }
        }
    }

    #[test]
    fn crossing_sign_cases() {
        assert_eq!(crossing_sign([4, 0], [6, 2], 8), Some(1));
        assert_eq!(crossing_sign([4, 0], [2, 6], 8), Some(-1));
        assert_eq!(crossing_sign([0, 2], [4, 6], 8), None);
        assert_eq!(crossing_sign([1, 1], [4, 6], 8), None);
    }

    #[test]
    fn json_description_roundtrip() {
        let s = RibbonSurface::one_holed_torus();
        let text = serde_json::to_string(&s.description()).unwrap();
        assert_eq!(text, r#"{"rank":2,"cyclic_order":[1,2,-1,-2],"basepoint_sector":0}"#);
        assert_eq!(RibbonSurface::from_json(&text).unwrap(), s);
    }
}
