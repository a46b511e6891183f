//! Finite rooted binary trees and their text form: leaf `"."`, caret `"( t t )"`.

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Caret(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree::Leaf
    }

    pub fn caret(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Caret(Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinaryTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Insert a caret at the j-th leaf (1-indexed), splitting it in two.
    pub fn insert_caret(&self, j: usize) -> Result<BinaryTree> {
        let n = self.leaf_count();
        if j == 0 || j > n {
            return Err(Error::Invalid(format!("leaf index {j} out of 1..={n}")));
        }
        Ok(self.insert_caret_inner(j))
    }

    fn insert_caret_inner(&self, j: usize) -> BinaryTree {
        match self {
            BinaryTree::Leaf => BinaryTree::caret(BinaryTree::Leaf, BinaryTree::Leaf),
            BinaryTree::Caret(l, r) => {
                let nl = l.leaf_count();
                if j <= nl {
                    BinaryTree::Caret(Box::new(l.insert_caret_inner(j)), r.clone())
                } else {
                    BinaryTree::Caret(l.clone(), Box::new(r.insert_caret_inner(j - nl)))
                }
            }
        }
    }

    /// True if leaves j and j+1 hang from a common caret.
    pub fn has_simple_caret_at(&self, j: usize) -> bool {
        self.simple_caret_positions().contains(&j)
    }

    /// Positions j such that leaves (j, j+1) are the two children of one caret.
    pub fn simple_caret_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_simple_carets(1, &mut out);
        out
    }

    fn collect_simple_carets(&self, offset: usize, out: &mut Vec<usize>) {
        if let BinaryTree::Caret(l, r) = self {
            if l.is_leaf() && r.is_leaf() {
                out.push(offset);
            } else {
                l.collect_simple_carets(offset, out);
                r.collect_simple_carets(offset + l.leaf_count(), out);
            }
        }
    }

    /// Remove the caret whose two children are the leaves (j, j+1), merging them.
    pub fn remove_simple_caret(&self, j: usize) -> Result<BinaryTree> {
        if !self.has_simple_caret_at(j) {
            return Err(Error::Invalid(format!("no two-leaf caret over ({j}, {})", j + 1)));
        }
        Ok(self.remove_simple_caret_inner(j))
    }

    fn remove_simple_caret_inner(&self, j: usize) -> BinaryTree {
        match self {
            BinaryTree::Leaf => unreachable!(),
            BinaryTree::Caret(l, r) => {
                if l.is_leaf() && r.is_leaf() {
                    debug_assert_eq!(j, 1);
                    return BinaryTree::Leaf;
                }
                let nl = l.leaf_count();
                // a simple caret's leaves are siblings, so it never straddles the split
                if j + 1 <= nl {
                    BinaryTree::Caret(Box::new(l.remove_simple_caret_inner(j)), r.clone())
                } else {
                    debug_assert!(j > nl);
                    BinaryTree::Caret(l.clone(), Box::new(r.remove_simple_caret_inner(j - nl)))
                }
            }
        }
    }

    /// For each caret: (a, b, c) where the left subtree spans leaves [a..=b]
    /// and the right subtree spans [b+1..=c] (1-indexed).
    pub fn caret_spans(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        self.collect_spans(1, &mut out);
        out
    }

    fn collect_spans(&self, offset: usize, out: &mut Vec<(usize, usize, usize)>) -> usize {
        match self {
            BinaryTree::Leaf => 1,
            BinaryTree::Caret(l, r) => {
                let nl = l.collect_spans(offset, out);
                let nr = r.collect_spans(offset + nl, out);
                out.push((offset, offset + nl - 1, offset + nl + nr - 1));
                nl + nr
            }
        }
    }

    /// Smallest common refinement of two trees (union of their dyadic partitions).
    pub fn common_refinement(a: &BinaryTree, b: &BinaryTree) -> BinaryTree {
        match (a, b) {
            (BinaryTree::Leaf, _) => b.clone(),
            (_, BinaryTree::Leaf) => a.clone(),
            (BinaryTree::Caret(al, ar), BinaryTree::Caret(bl, br)) => BinaryTree::Caret(
                Box::new(Self::common_refinement(al, bl)),
                Box::new(Self::common_refinement(ar, br)),
            ),
        }
    }

    /// Dyadic leaf intervals as (numerator, denominator-exponent) endpoint pairs:
    /// the k-th entry is [lo, hi) with lo = num/2^exp.
    pub fn leaf_intervals(&self) -> Vec<(Dyadic, Dyadic)> {
        let mut out = Vec::new();
        self.collect_intervals(Dyadic::zero(), Dyadic::one(), &mut out);
        out
    }

    fn collect_intervals(&self, lo: Dyadic, hi: Dyadic, out: &mut Vec<(Dyadic, Dyadic)>) {
        match self {
            BinaryTree::Leaf => out.push((lo, hi)),
            BinaryTree::Caret(l, r) => {
                let mid = lo.midpoint(&hi);
                l.collect_intervals(lo, mid.clone(), out);
                r.collect_intervals(mid, hi, out);
            }
        }
    }

    pub fn parse(s: &str) -> Result<BinaryTree> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Parse { offset: pos, msg: "trailing input after tree".into() });
        }
        Ok(t)
    }
}

/// Dyadic rational num/2^exp in [0, 1], kept normalized (num odd or zero).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dyadic {
    pub num: u64,
    pub exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { num: 0, exp: 0 }
    }
    pub fn one() -> Self {
        Dyadic { num: 1, exp: 0 }
    }
    pub fn new(num: u64, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }
    fn normalize(&mut self) {
        while self.exp > 0 && self.num % 2 == 0 {
            self.num /= 2;
            self.exp -= 1;
        }
    }
    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp) + 1;
        let a = self.num << (e - self.exp);
        let b = other.num << (e - other.exp);
        Dyadic::new((a + b) / 2, e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        a.cmp(&b)
    }
}

fn skip_ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_tree(bytes: &[u8], pos: &mut usize) -> Result<BinaryTree> {
    skip_ws(bytes, pos);
    match bytes.get(*pos) {
        Some(b'.') => {
            *pos += 1;
            Ok(BinaryTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree(bytes, pos)?;
            let r = parse_tree(bytes, pos)?;
            skip_ws(bytes, pos);
            if bytes.get(*pos) != Some(&b')') {
                return Err(Error::Parse { offset: *pos, msg: "expected ')'".into() });
            }
            *pos += 1;
            Ok(BinaryTree::caret(l, r))
        }
        Some(c) => Err(Error::Parse {
            offset: *pos,
            msg: format!("expected '.' or '(', found '{}'", *c as char),
        }),
        None => Err(Error::Parse { offset: *pos, msg: "unexpected end of input".into() }),
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => write!(f, "."),
            BinaryTree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl fmt::Debug for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
