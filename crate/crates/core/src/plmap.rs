//! Piecewise-linear circle maps with exact rational arithmetic.
//!
//! Every marked tree pair acts on the circle [0,1): T- leaf intervals map
//! affinely onto the glued T+ leaf intervals. These maps give a fully
//! independent model of the group: composing maps must agree with
//! multiplying elements.

use crate::element::GroupElement;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt;

pub type Rat = Ratio<BigInt>;

fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Segment {
    start: Rat,
    end: Rat,
    slope: Rat,
    offset: Rat,
}

impl Segment {
    fn apply(&self, t: &Rat) -> Rat {
        &self.slope * t + &self.offset
    }
}

/// Right-continuous piecewise-affine bijection of [0,1), values kept in [0,1).
#[derive(Clone, PartialEq, Eq)]
pub struct PLMap {
    segs: Vec<Segment>,
}

impl PLMap {
    pub fn identity() -> Self {
        PLMap {
            segs: vec![Segment {
                start: Rat::zero(),
                end: Rat::one(),
                slope: Rat::one(),
                offset: Rat::zero(),
            }],
        }
    }

    /// Map sending domain interval i affinely onto range interval i.
    /// Both lists must partition [0,1) in domain order; the range list is
    /// given already permuted (entry i = image of domain entry i).
    pub fn from_intervals(domain: &[(Rat, Rat)], range: &[(Rat, Rat)]) -> Self {
        assert_eq!(domain.len(), range.len());
        let mut segs = Vec::with_capacity(domain.len());
        for ((d0, d1), (r0, r1)) in domain.iter().zip(range) {
            let slope = (r1 - r0) / (d1 - d0);
            let offset = r0 - &slope * d0;
            segs.push(Segment { start: d0.clone(), end: d1.clone(), slope, offset });
        }
        PLMap { segs }.canonical()
    }

    fn canonical(mut self) -> Self {
        let mut out: Vec<Segment> = Vec::with_capacity(self.segs.len());
        for s in self.segs.drain(..) {
            if let Some(last) = out.last_mut() {
                if last.end == s.start && last.slope == s.slope && last.offset == s.offset {
                    last.end = s.end;
                    continue;
                }
            }
            out.push(s);
        }
        PLMap { segs: out }
    }

    pub fn apply(&self, t: &Rat) -> Rat {
        // normalize into [0,1)
        let mut t = t.clone();
        while t < Rat::zero() {
            t += Rat::one();
        }
        while t >= Rat::one() {
            t -= Rat::one();
        }
        let seg = self
            .segs
            .iter()
            .find(|s| s.start <= t && t < s.end)
            .expect("segments cover [0,1)");
        seg.apply(&t)
    }

    /// f.compose(g) is the map t -> f(g(t)).
    pub fn compose(&self, g: &PLMap) -> PLMap {
        // breakpoints: g's own, plus preimages under g of f's breakpoints
        let mut cuts: Vec<Rat> = g.segs.iter().map(|s| s.start.clone()).collect();
        for fs in &self.segs {
            for gs in &g.segs {
                if gs.slope.is_zero() {
                    continue;
                }
                let pre = (&fs.start - &gs.offset) / &gs.slope;
                if gs.start < pre && pre < gs.end {
                    cuts.push(pre);
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        cuts.push(Rat::one());

        let mut segs = Vec::with_capacity(cuts.len() - 1);
        for w in cuts.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let mid = (a + b) / rat(2, 1);
            let gs = g.segs.iter().find(|s| s.start <= mid && mid < s.end).unwrap();
            let gv = gs.apply(&mid);
            let fs = self.segs.iter().find(|s| s.start <= gv && gv < s.end).unwrap();
            segs.push(Segment {
                start: a.clone(),
                end: b.clone(),
                slope: &fs.slope * &gs.slope,
                offset: &fs.slope * &gs.offset + &fs.offset,
            });
        }
        PLMap { segs }.canonical()
    }

    pub fn breakpoint_count(&self) -> usize {
        self.segs.len()
    }
}

impl fmt::Debug for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLMap[")?;
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{},{}): {}t+{}", s.start, s.end, s.slope, s.offset)?;
        }
        write!(f, "]")
    }
}

/// The circle map of an element: T- leaf i's interval maps onto the glued
/// T+ leaf's interval.
pub fn as_pl_map(g: &GroupElement) -> PLMap {
    pair_as_pl_map(g.pair())
}

pub fn pair_as_pl_map(p: &crate::element::MarkedPair) -> PLMap {
    let to_rat =
        |d: &crate::tree::Dyadic| -> Rat { rat(d.num as i64, 1) / rat(2, 1).pow(d.exp as i32) };
    let minus: Vec<(Rat, Rat)> = p
        .t_minus
        .leaf_intervals()
        .iter()
        .map(|(a, b)| (to_rat(a), to_rat(b)))
        .collect();
    let plus: Vec<(Rat, Rat)> = p
        .t_plus
        .leaf_intervals()
        .iter()
        .map(|(a, b)| (to_rat(a), to_rat(b)))
        .collect();
    let n = minus.len();
    let mut range = Vec::with_capacity(n);
    for i in 1..=n {
        range.push(plus[p.plus_index_of_minus_leaf(i) - 1].clone());
    }
    PLMap::from_intervals(&minus, &range)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x0_map_values() {
        let f = as_pl_map(&GroupElement::x(0));
        assert_eq!(f.apply(&rat(0, 1)), rat(0, 1));
        assert_eq!(f.apply(&rat(1, 2)), rat(1, 4));
        assert_eq!(f.apply(&rat(5, 8)), rat(3, 8));
        assert_eq!(f.apply(&rat(3, 4)), rat(1, 2));
        assert_eq!(f.apply(&rat(7, 8)), rat(3, 4));
        assert_eq!(f.breakpoint_count(), 3);
    }

    #[test]
    fn c0_is_half_rotation() {
        let f = as_pl_map(&GroupElement::c(0));
        assert_eq!(f.apply(&rat(0, 1)), rat(1, 2));
        assert_eq!(f.apply(&rat(1, 4)), rat(3, 4));
        assert_eq!(f.apply(&rat(1, 2)), rat(0, 1));
        assert_eq!(f.apply(&rat(3, 4)), rat(1, 4));
    }

    #[test]
    fn composition_matches_multiplication() {
        let words = ["x0", "x1", "c0", "c1", "x0 x1^-1", "c2 x0"];
        for wa in words {
            for wb in words {
                let a = GroupElement::parse_word(wa).unwrap();
                let b = GroupElement::parse_word(wb).unwrap();
                let lhs = as_pl_map(&a.multiply(&b));
                let rhs = as_pl_map(&a).compose(&as_pl_map(&b));
                assert_eq!(lhs, rhs, "{wa} * {wb}");
            }
        }
    }

    #[test]
    fn map_of_unreduced_representative_is_unchanged() {
        let g = GroupElement::parse_word("x0 c1").unwrap();
        let rep = g.pair().insert_opposing(2).unwrap();
        assert_eq!(pair_as_pl_map(&rep), as_pl_map(&g));
    }

    #[test]
    fn identity_map() {
        assert_eq!(as_pl_map(&GroupElement::identity()), PLMap::identity());
        let g = GroupElement::parse_word("c1").unwrap();
        assert_eq!(as_pl_map(&g.pow(3)), PLMap::identity());
    }
}
