//! Group elements as marked tree pairs (T+, T-, mark).
//!
//! A pair with n leaves on each side glues leaf `mark` of T- to leaf 1 of T+,
//! cyclically: T- leaf i pairs with T+ leaf ((i - mark) mod n) + 1. Elements
//! with mark 1 form the subgroup F. `GroupElement` always holds the reduced
//! (canonical) representative; `MarkedPair` is an arbitrary representative.

use crate::error::{Error, Result};
use crate::tree::BinaryTree;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MarkedPair {
    pub t_plus: BinaryTree,
    pub t_minus: BinaryTree,
    pub mark: usize,
}

impl MarkedPair {
    pub fn new(t_plus: BinaryTree, t_minus: BinaryTree, mark: usize) -> Result<Self> {
        let n = t_plus.leaf_count();
        if t_minus.leaf_count() != n {
            return Err(Error::Invalid(format!(
                "leaf counts differ: {} vs {}",
                n,
                t_minus.leaf_count()
            )));
        }
        if mark == 0 || mark > n {
            return Err(Error::MarkOutOfRange { mark, leaves: n });
        }
        Ok(MarkedPair { t_plus, t_minus, mark })
    }

    pub fn leaf_count(&self) -> usize {
        self.t_plus.leaf_count()
    }

    /// T- leaf i is glued to this T+ leaf.
    pub fn plus_index_of_minus_leaf(&self, i: usize) -> usize {
        let n = self.leaf_count();
        (i + n - self.mark) % n + 1
    }

    /// T+ leaf j is glued to this T- leaf.
    pub fn minus_index_of_plus_leaf(&self, j: usize) -> usize {
        let n = self.leaf_count();
        (j + self.mark + n - 2) % n + 1
    }

    /// Insert one opposing caret pair: a caret at T- leaf j and the glued T+ leaf.
    pub fn insert_opposing(&self, j: usize) -> Result<MarkedPair> {
        let n = self.leaf_count();
        if j == 0 || j > n {
            return Err(Error::Invalid(format!("leaf index {j} out of 1..={n}")));
        }
        let jp = self.plus_index_of_minus_leaf(j);
        let mark = if j < self.mark { self.mark + 1 } else { self.mark };
        Ok(MarkedPair {
            t_plus: self.t_plus.insert_caret(jp)?,
            t_minus: self.t_minus.insert_caret(j)?,
            mark,
        })
    }

    /// T- position j of a removable opposing caret pair, if any.
    fn reducible_position(&self) -> Option<(usize, usize)> {
        let n = self.leaf_count();
        for j in self.t_minus.simple_caret_positions() {
            let jp = self.plus_index_of_minus_leaf(j);
            // the glued T+ leaves must be adjacent without wrapping
            if jp < n && self.t_plus.has_simple_caret_at(jp) {
                return Some((j, jp));
            }
        }
        None
    }

    /// Remove opposing caret pairs until none remain (confluent).
    pub fn reduce(&self) -> MarkedPair {
        let mut cur = self.clone();
        while let Some((j, jp)) = cur.reducible_position() {
            let mark = if cur.mark >= j + 1 { cur.mark - 1 } else { cur.mark };
            cur = MarkedPair {
                t_plus: cur.t_plus.remove_simple_caret(jp).unwrap(),
                t_minus: cur.t_minus.remove_simple_caret(j).unwrap(),
                mark,
            };
        }
        cur
    }

    pub fn is_reduced(&self) -> bool {
        self.reducible_position().is_none()
    }

    /// Expand with carets until `t_minus` equals `target` (which must refine it).
    pub fn expand_minus_to(&self, target: &BinaryTree) -> MarkedPair {
        let mut cur = self.clone();
        while let Some(j) = first_split_point(&cur.t_minus, target) {
            cur = cur.insert_opposing(j).unwrap();
        }
        cur
    }

    /// Expand with carets until `t_plus` equals `target` (which must refine it).
    fn expand_plus_to(&self, target: &BinaryTree) -> MarkedPair {
        let mut cur = self.clone();
        while let Some(jp) = first_split_point(&cur.t_plus, target) {
            let j = cur.minus_index_of_plus_leaf(jp);
            cur = cur.insert_opposing(j).unwrap();
        }
        cur
    }
}

/// First leaf of `current` that `target` subdivides (target must refine current).
fn first_split_point(current: &BinaryTree, target: &BinaryTree) -> Option<usize> {
    fn go(c: &BinaryTree, t: &BinaryTree, offset: usize) -> Option<usize> {
        match (c, t) {
            (BinaryTree::Leaf, BinaryTree::Leaf) => None,
            (BinaryTree::Leaf, BinaryTree::Caret(..)) => Some(offset),
            (BinaryTree::Caret(..), BinaryTree::Leaf) => {
                panic!("target does not refine current tree")
            }
            (BinaryTree::Caret(cl, cr), BinaryTree::Caret(tl, tr)) => {
                go(cl, tl, offset).or_else(|| go(cr, tr, offset + cl.leaf_count()))
            }
        }
    }
    go(current, target, 1)
}

/// A group element, stored as its unique reduced representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pair: MarkedPair,
}

impl GroupElement {
    pub fn new(t_plus: BinaryTree, t_minus: BinaryTree, mark: usize) -> Result<Self> {
        Ok(MarkedPair::new(t_plus, t_minus, mark)?.into())
    }

    pub fn identity() -> Self {
        GroupElement { pair: MarkedPair { t_plus: BinaryTree::Leaf, t_minus: BinaryTree::Leaf, mark: 1 } }
    }

    pub fn pair(&self) -> &MarkedPair {
        &self.pair
    }

    pub fn t_plus(&self) -> &BinaryTree {
        &self.pair.t_plus
    }

    pub fn t_minus(&self) -> &BinaryTree {
        &self.pair.t_minus
    }

    pub fn mark(&self) -> usize {
        self.pair.mark
    }

    pub fn leaf_count(&self) -> usize {
        self.pair.leaf_count()
    }

    pub fn is_identity(&self) -> bool {
        self.pair.t_plus.is_leaf()
    }

    /// Mark 1 characterizes the subgroup F.
    pub fn is_in_f(&self) -> bool {
        self.pair.mark == 1
    }

    pub fn multiply(&self, other: &GroupElement) -> GroupElement {
        let common = BinaryTree::common_refinement(&self.pair.t_minus, &other.pair.t_plus);
        let a = self.pair.expand_minus_to(&common);
        let b = other.pair.expand_plus_to(&common);
        let n = common.leaf_count();
        let mark = (a.mark + b.mark + n - 2) % n + 1;
        MarkedPair { t_plus: a.t_plus, t_minus: b.t_minus, mark }.into()
    }

    pub fn invert(&self) -> GroupElement {
        let n = self.pair.leaf_count();
        let mark = (n - self.pair.mark + 1) % n + 1;
        GroupElement {
            pair: MarkedPair {
                t_plus: self.pair.t_minus.clone(),
                t_minus: self.pair.t_plus.clone(),
                mark,
            },
        }
    }

    pub fn pow(&self, e: i64) -> GroupElement {
        let base = if e < 0 { self.invert() } else { self.clone() };
        let mut out = GroupElement::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Conjugate both trees under caret(leaf, .): defined for mark-1 elements.
    pub fn shift(&self) -> Result<GroupElement> {
        if self.pair.mark != 1 {
            return Err(Error::NotInF(self.to_string()));
        }
        GroupElement::new(
            BinaryTree::caret(BinaryTree::Leaf, self.pair.t_plus.clone()),
            BinaryTree::caret(BinaryTree::Leaf, self.pair.t_minus.clone()),
            1,
        )
    }

    /// The generator x_k.
    pub fn x(k: usize) -> GroupElement {
        let mut g = GroupElement::new(
            BinaryTree::parse("((..).)").unwrap(),
            BinaryTree::parse("(.(..))").unwrap(),
            1,
        )
        .unwrap();
        for _ in 0..k {
            g = g.shift().unwrap();
        }
        g
    }

    /// The generator c_k.
    pub fn c(k: usize) -> GroupElement {
        let mut g = GroupElement::new(
            BinaryTree::parse("(..)").unwrap(),
            BinaryTree::parse("(..)").unwrap(),
            2,
        )
        .unwrap();
        for i in 0..k {
            g = GroupElement::x(i).invert().multiply(&g);
        }
        g
    }

    /// Parse words like "x0 x1^-1 c2^3"; the empty word is the identity.
    pub fn parse_word(input: &str) -> Result<GroupElement> {
        let mut out = GroupElement::identity();
        let mut chars = input.char_indices().peekable();
        loop {
            while matches!(chars.peek(), Some((_, c)) if c.is_whitespace()) {
                chars.next();
            }
            let Some(&(start, letter)) = chars.peek() else { break };
            if letter != 'x' && letter != 'c' {
                return Err(Error::Parse {
                    offset: start,
                    msg: format!("expected generator 'x' or 'c', found '{letter}'"),
                });
            }
            chars.next();
            let pos = chars.peek().map(|&(i, _)| i).unwrap_or(input.len());
            let index = read_number(&mut chars, pos, false)?;
            let mut exponent: i64 = 1;
            if matches!(chars.peek(), Some((_, '^'))) {
                chars.next();
                let pos = chars.peek().map(|&(i, _)| i).unwrap_or(input.len());
                exponent = read_number(&mut chars, pos, true)?;
            }
            if let Some(&(pos, c)) = chars.peek() {
                if !c.is_whitespace() {
                    return Err(Error::Parse {
                        offset: pos,
                        msg: format!("unexpected character '{c}' in word"),
                    });
                }
            }
            let base = if letter == 'x' {
                GroupElement::x(index as usize)
            } else {
                GroupElement::c(index as usize)
            };
            out = out.multiply(&base.pow(exponent));
        }
        Ok(out)
    }
}

fn read_number(
    chars: &mut std::iter::Peekable<std::str::CharIndices>,
    at: usize,
    signed: bool,
) -> Result<i64> {
    let mut neg = false;
    if signed && matches!(chars.peek(), Some((_, '-'))) {
        chars.next();
        neg = true;
    }
    let mut digits = String::new();
    while matches!(chars.peek(), Some((_, c)) if c.is_ascii_digit()) {
        digits.push(chars.next().unwrap().1);
    }
    if digits.is_empty() {
        return Err(Error::Parse { offset: at, msg: "expected a number".into() });
    }
    let v: i64 = digits
        .parse()
        .map_err(|_| Error::Parse { offset: at, msg: format!("number '{digits}' too large") })?;
    Ok(if neg { -v } else { v })
}

impl From<MarkedPair> for GroupElement {
    fn from(pair: MarkedPair) -> Self {
        GroupElement { pair: pair.reduce() }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g({}, {}, {})", self.pair.t_plus, self.pair.t_minus, self.pair.mark)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    t_plus: String,
    t_minus: String,
    mark: usize,
}

impl Serialize for MarkedPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairJson {
            t_plus: self.t_plus.to_string(),
            t_minus: self.t_minus.to_string(),
            mark: self.mark,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PairJson::deserialize(d)?;
        let t_plus = BinaryTree::parse(&raw.t_plus).map_err(D::Error::custom)?;
        let t_minus = BinaryTree::parse(&raw.t_minus).map_err(D::Error::custom)?;
        MarkedPair::new(t_plus, t_minus, raw.mark).map_err(D::Error::custom)
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.pair.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(MarkedPair::deserialize(d)?.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> BinaryTree {
        BinaryTree::parse(s).unwrap()
    }

    #[test]
    fn x0_trees() {
        let x0 = GroupElement::x(0);
        assert_eq!(x0.t_plus(), &t("((..).)"));
        assert_eq!(x0.t_minus(), &t("(.(..))"));
        assert_eq!(x0.mark(), 1);
    }

    #[test]
    fn shift_builds_next_generator() {
        let x1 = GroupElement::x(1);
        assert_eq!(x1.t_plus(), &t("(.((..).))"));
        assert_eq!(x1.t_minus(), &t("(.(.(..)))"));
    }

    #[test]
    fn first_relation_smallest_case() {
        let (x0, x1, x2) = (GroupElement::x(0), GroupElement::x(1), GroupElement::x(2));
        assert_eq!(x1.multiply(&x0), x0.multiply(&x2));
    }

    #[test]
    fn product_with_inverse_is_identity() {
        for w in ["x0", "x1 x0^-1", "c1 x0 c2^-1", "c0", "x0 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            assert!(g.multiply(&g.invert()).is_identity(), "{w}");
            assert!(g.invert().multiply(&g).is_identity(), "{w}");
        }
    }

    #[test]
    fn invert_is_involutive() {
        for w in ["x0", "x2", "c0", "c1", "c2^2", "x0 c1^-1 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            assert_eq!(g.invert().invert(), g, "{w}");
        }
    }

    #[test]
    fn c0_is_an_involution() {
        let c0 = GroupElement::c(0);
        assert_eq!(c0.mark(), 2);
        assert!(c0.multiply(&c0).is_identity());
    }

    #[test]
    fn c1_has_order_three() {
        let c1 = GroupElement::c(1);
        assert_eq!(c1.leaf_count(), 3);
        assert!(!c1.multiply(&c1).is_identity());
        assert!(c1.pow(3).is_identity());
    }

    #[test]
    fn mark_one_iff_in_f() {
        assert!(GroupElement::parse_word("x0 x1^-1 x2").unwrap().is_in_f());
        assert!(!GroupElement::parse_word("c1").unwrap().is_in_f());
        // c-words that cancel back into F
        let g = GroupElement::parse_word("c1 x0 c1^-1").unwrap();
        assert_eq!(g.multiply(&g.invert()), GroupElement::identity());
    }

    #[test]
    fn reduce_is_confluent_from_any_insertion_order() {
        let g = GroupElement::parse_word("x0 x1^-1").unwrap();
        let mut rep = g.pair().clone();
        // blow up with opposing carets in a scattered order, then reduce
        for j in [1, 3, 2, 5, 1, 4] {
            let n = rep.leaf_count();
            rep = rep.insert_opposing((j - 1) % n + 1).unwrap();
        }
        assert_eq!(GroupElement::from(rep), g);
    }

    #[test]
    fn expanded_pair_reduces_back() {
        let c2 = GroupElement::c(2);
        for j in 1..=c2.leaf_count() {
            let rep = c2.pair().insert_opposing(j).unwrap();
            assert!(!rep.is_reduced());
            assert_eq!(GroupElement::from(rep), c2);
        }
    }

    #[test]
    fn word_parse_errors() {
        assert!(matches!(
            GroupElement::parse_word("y0"),
            Err(Error::Parse { offset: 0, .. })
        ));
        assert!(matches!(
            GroupElement::parse_word("x0 x^2"),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(
            GroupElement::parse_word("x1^"),
            Err(Error::Parse { offset: 3, .. })
        ));
    }

    #[test]
    fn json_roundtrip() {
        let g = GroupElement::parse_word("x0 c1").unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let back: GroupElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(s.contains("t_plus") && s.contains("mark"));
    }
}
