//! Exhaustive enumeration of small trees and tree pairs: the census table
//! (bipartite flag, c-value, Jones samples) and invariant-driven searches.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::json;

use crate::bracket::{jones_branch, jones_function};
use crate::diagram::{c_value, element_diagram};
use crate::element::{GroupElement, MarkedPair};
use crate::error::{Error, Result};
use crate::gamma::gamma_graph;
use crate::tree::BinaryTree;

const TREE_BUDGET: usize = 12;
const CENSUS_BUDGET: usize = 7;
const SEARCH_BUDGET: usize = 6;

/// All binary trees with `n` leaves, ordered by ascending left-subtree leaf
/// count and recursively within each factor.
pub fn enumerate_trees(n: usize) -> Result<Vec<BinaryTree>> {
    if n == 0 || n > TREE_BUDGET {
        return Err(Error::Budget(format!(
            "tree enumeration supports 1..={TREE_BUDGET} leaves, got {n}"
        )));
    }
    Ok(trees_rec(n))
}

fn trees_rec(n: usize) -> Vec<BinaryTree> {
    if n == 1 {
        return vec![BinaryTree::leaf()];
    }
    let mut out = Vec::new();
    for k in 1..n {
        for left in trees_rec(k) {
            for right in trees_rec(n - k) {
                out.push(BinaryTree::caret(left.clone(), right));
            }
        }
    }
    out
}

/// The four Jones evaluation points t = 1, i, exp(i*pi/3), exp(-i*pi/3)
/// reported in census exports and searches.
pub fn jones_sample_points() -> [Complex64; 4] {
    use std::f64::consts::PI;
    [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::from_polar(1.0, PI / 3.0),
        Complex64::from_polar(1.0, -PI / 3.0),
    ]
}

/// Labels for `jones_sample_points`, in the same order.
pub const JONES_SAMPLE_LABELS: [&str; 4] = ["1", "i", "exp(i*pi/3)", "exp(-i*pi/3)"];

/// Full table of tree pairs at a fixed leaf count. Pair indices are
/// 1-based positions in `trees`; `c_values` has an entry exactly for the
/// bipartite ordered pairs.
#[derive(Debug, Clone)]
pub struct Census {
    pub n_leaves: usize,
    pub trees: Vec<BinaryTree>,
    pub bipartite_pairs: Vec<(usize, usize)>,
    pub c_values: BTreeMap<(usize, usize), i64>,
}

/// Build the census of all ordered pairs (T_i, T_j) with mark 1.
pub fn census(n: usize) -> Result<Census> {
    if n == 0 || n > CENSUS_BUDGET {
        return Err(Error::Budget(format!(
            "census supports 1..={CENSUS_BUDGET} leaves, got {n}"
        )));
    }
    let trees = trees_rec(n);
    let mut bipartite_pairs = Vec::new();
    let mut c_values = BTreeMap::new();
    for (i, ti) in trees.iter().enumerate() {
        for (j, tj) in trees.iter().enumerate() {
            let pair = MarkedPair::new(ti.clone(), tj.clone(), 1)?;
            if gamma_graph(&pair).is_bipartite() {
                let g = GroupElement::from(pair);
                bipartite_pairs.push((i + 1, j + 1));
                c_values.insert((i + 1, j + 1), c_value(&g));
            }
        }
    }
    Ok(Census {
        n_leaves: n,
        trees,
        bipartite_pairs,
        c_values,
    })
}

impl Census {
    /// Rebuild the group element of pair (i, j); indices are 1-based.
    pub fn element(&self, i: usize, j: usize) -> Result<GroupElement> {
        let t = self.trees.len();
        if i == 0 || j == 0 || i > t || j > t {
            return Err(Error::Invalid(format!(
                "pair ({i}, {j}) out of range for {t} trees"
            )));
        }
        GroupElement::new(self.trees[i - 1].clone(), self.trees[j - 1].clone(), 1)
    }

    pub fn is_bipartite(&self, i: usize, j: usize) -> bool {
        self.c_values.contains_key(&(i, j))
    }

    pub fn c(&self, i: usize, j: usize) -> Option<i64> {
        self.c_values.get(&(i, j)).copied()
    }

    /// Multiset of c-values over unordered bipartite pairs with i != j.
    pub fn c_multiset(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(i, j), &c) in &self.c_values {
            if i < j {
                *out.entry(c).or_insert(0) += 1;
            }
        }
        out
    }

    /// Unordered bipartite pairs (i < j) with nonzero c, with their c-value.
    pub fn exceptional_pairs(&self) -> Vec<(usize, usize, i64)> {
        self.c_values
            .iter()
            .filter(|(&(i, j), &c)| i < j && c != 0)
            .map(|(&(i, j), &c)| (i, j, c))
            .collect()
    }

    fn jones_row(&self, i: usize, j: usize) -> Result<[Complex64; 4]> {
        let g = self.element(i, j)?;
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (slot, t) in jones_sample_points().iter().enumerate() {
            out[slot] = jones_function(&g, jones_branch(*t))?;
        }
        Ok(out)
    }

    /// JSON export: tree literals plus the full ordered pair table. Jones
    /// samples are [re, im] pairs in the order of `JONES_SAMPLE_LABELS`,
    /// present only on bipartite rows.
    pub fn to_json(&self) -> serde_json::Value {
        let trees: Vec<String> = self.trees.iter().map(|t| t.to_string()).collect();
        let mut pairs = Vec::new();
        for i in 1..=self.trees.len() {
            for j in 1..=self.trees.len() {
                let mut row = json!({
                    "i": i,
                    "j": j,
                    "bipartite": self.is_bipartite(i, j),
                });
                if let Some(c) = self.c(i, j) {
                    row["c"] = json!(c);
                    let vals = self.jones_row(i, j).expect("bipartite pair evaluates");
                    row["jones"] = json!(vals
                        .iter()
                        .map(|v| vec![v.re, v.im])
                        .collect::<Vec<_>>());
                }
                pairs.push(row);
            }
        }
        json!({
            "n_leaves": self.n_leaves,
            "trees": trees,
            "jones_t_points": JONES_SAMPLE_LABELS,
            "pairs": pairs,
        })
    }

    /// CSV export: one row per ordered pair with tree literals inline;
    /// c and Jones columns are empty on non-bipartite rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,tree_i,tree_j,bipartite,c");
        for label in JONES_SAMPLE_LABELS {
            out.push_str(&format!(",V[t={label}].re,V[t={label}].im"));
        }
        out.push('\n');
        for i in 1..=self.trees.len() {
            for j in 1..=self.trees.len() {
                out.push_str(&format!(
                    "{i},{j},{},{},{}",
                    self.trees[i - 1],
                    self.trees[j - 1],
                    self.is_bipartite(i, j)
                ));
                match self.c(i, j) {
                    Some(c) => {
                        out.push_str(&format!(",{c}"));
                        let vals = self.jones_row(i, j).expect("bipartite pair evaluates");
                        for v in vals {
                            out.push_str(&format!(",{:.12e},{:.12e}", v.re, v.im));
                        }
                    }
                    None => out.push_str(",,,,,,,,,"),
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Invariant bundle for one oriented (bipartite) ordered pair; the search
/// predicate sees exactly this.
#[derive(Debug, Clone)]
pub struct PairInvariants {
    pub i: usize,
    pub j: usize,
    pub element: GroupElement,
    pub c: i64,
    pub writhe: i64,
    pub components: i64,
    /// Jones values in the order of `JONES_SAMPLE_LABELS`.
    pub jones: [Complex64; 4],
}

/// All oriented ordered pairs (T_i, T_j) at n leaves whose invariants
/// satisfy the predicate, in (i, j) lexicographic order.
pub fn search_by_invariant<P>(n: usize, predicate: P) -> Result<Vec<PairInvariants>>
where
    P: Fn(&PairInvariants) -> bool,
{
    if n == 0 || n > SEARCH_BUDGET {
        return Err(Error::Budget(format!(
            "search supports 1..={SEARCH_BUDGET} leaves, got {n}"
        )));
    }
    let trees = trees_rec(n);
    let mut out = Vec::new();
    for (i, ti) in trees.iter().enumerate() {
        for (j, tj) in trees.iter().enumerate() {
            let pair = MarkedPair::new(ti.clone(), tj.clone(), 1)?;
            if !gamma_graph(&pair).is_bipartite() {
                continue;
            }
            let element = GroupElement::from(pair);
            let d = element_diagram(&element);
            let mut jones = [Complex64::new(0.0, 0.0); 4];
            for (slot, t) in jones_sample_points().iter().enumerate() {
                jones[slot] = jones_function(&element, jones_branch(*t))?;
            }
            let inv = PairInvariants {
                i: i + 1,
                j: j + 1,
                c: c_value(&element),
                writhe: d.writhe()?,
                components: d.component_count() as i64,
                element,
                jones,
            };
            if predicate(&inv) {
                out.push(inv);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fox::col_function;

    #[test]
    fn catalan_counts() {
        for (n, want) in [(1, 1), (2, 1), (3, 2), (4, 5), (5, 14), (6, 42), (7, 132)] {
            assert_eq!(enumerate_trees(n).unwrap().len(), want, "n={n}");
        }
    }

    #[test]
    fn tree_order_is_left_factor_recursive() {
        let t3: Vec<String> = enumerate_trees(3)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(t3, vec!["(.(..))", "((..).)"]);
        let t4: Vec<String> = enumerate_trees(4)
            .unwrap()
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(
            t4,
            vec![
                "(.(.(..)))",
                "(.((..).))",
                "((..)(..))",
                "((.(..)).)",
                "(((..).).)"
            ]
        );
    }

    #[test]
    fn budgets_are_enforced() {
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(13).is_err());
        assert!(census(8).is_err());
        assert!(search_by_invariant(7, |_| true).is_err());
    }

    #[test]
    fn census_two_leaves_is_identity_pair() {
        let c = census(2).unwrap();
        assert_eq!(c.trees.len(), 1);
        assert_eq!(c.bipartite_pairs, vec![(1, 1)]);
        assert_eq!(c.c(1, 1), Some(0));
    }

    #[test]
    fn census_five_reproduces_reference_table() {
        let cen = census(5).unwrap();
        assert_eq!(cen.trees.len(), 14);

        // symmetric table with zero diagonal
        for (&(i, j), &c) in &cen.c_values {
            assert_eq!(cen.c(j, i), Some(c), "asymmetric at ({i},{j})");
        }
        for i in 1..=14 {
            assert_eq!(cen.c(i, i), Some(0), "diagonal ({i},{i})");
        }

        let multiset = cen.c_multiset();
        assert_eq!(multiset.get(&-2), Some(&7));
        assert_eq!(multiset.get(&-4), Some(&1));
        let nonzero: usize = multiset
            .iter()
            .filter(|(&c, _)| c != 0)
            .map(|(_, &k)| k)
            .sum();
        assert_eq!(nonzero, 8, "only the eight exceptional pairs");

        // structural fingerprint of the exceptional pairs: how often each
        // tree index appears across them, independent of tree numbering
        let exc = cen.exceptional_pairs();
        assert_eq!(exc.len(), 8);
        let mut appearances: BTreeMap<usize, usize> = BTreeMap::new();
        for &(i, j, _) in &exc {
            *appearances.entry(i).or_insert(0) += 1;
            *appearances.entry(j).or_insert(0) += 1;
        }
        assert_eq!(appearances.len(), 10, "ten distinct trees involved");
        let mut counts: Vec<usize> = appearances.values().copied().collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(counts, vec![2, 2, 2, 2, 2, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn census_five_oriented_invariant_suite() {
        let cen = census(5).unwrap();
        for &(i, j) in &cen.bipartite_pairs {
            let g = cen.element(i, j).unwrap();
            let d = element_diagram(&g);
            assert_eq!(d.writhe().unwrap(), 0, "({i},{j})");
            let c = cen.c(i, j).unwrap();
            assert!(c <= 0 && c % 2 == 0, "({i},{j}) c={c}");

            let v1 = jones_function(&g, jones_branch(Complex64::new(1.0, 0.0))).unwrap();
            let want = 2f64.powi(c as i32);
            assert!((v1 - want).norm() < 1e-9, "({i},{j}) V(1)={v1} want {want}");

            // colouring identity: col_3 = |V at t=exp(i*pi/3)|^2
            let v3 = jones_function(&g, jones_branch(Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)))
                .unwrap();
            let col = col_function(&g, 3);
            let col_f = *col.numer() as f64 / *col.denom() as f64;
            assert!(
                (col_f - v3.norm_sqr()).abs() < 1e-9,
                "({i},{j}) col={col_f} |V|^2={}",
                v3.norm_sqr()
            );
        }
    }

    #[test]
    fn search_finds_nonconstant_jones_at_five_leaves() {
        let hits = search_by_invariant(5, |p| {
            let v0 = p.jones[0];
            p.jones.iter().any(|v| (v - v0).norm() > 1e-6)
        })
        .unwrap();
        assert!(!hits.is_empty());
    }

    #[test]
    fn search_c_minus_four_is_one_unordered_pair() {
        let hits = search_by_invariant(5, |p| p.c == -4).unwrap();
        assert_eq!(hits.len(), 2);
        assert_eq!((hits[0].i, hits[0].j), (hits[1].j, hits[1].i));
        assert_eq!(hits[0].components, 1);
    }

    #[test]
    fn search_is_deterministic() {
        let knotted = |p: &PairInvariants| {
            p.components == 1 && p.jones.iter().any(|v| (v - p.jones[0]).norm() > 1e-6)
        };
        let a = search_by_invariant(5, knotted).unwrap();
        let b = search_by_invariant(5, knotted).unwrap();
        let key = |v: &Vec<PairInvariants>| v.iter().map(|p| (p.i, p.j)).collect::<Vec<_>>();
        assert_eq!(key(&a), key(&b));
        assert!(!a.is_empty());
    }

    #[test]
    fn exports_have_stable_shape() {
        let cen = census(3).unwrap();
        let js = cen.to_json();
        assert_eq!(js["n_leaves"], 3);
        assert_eq!(js["trees"].as_array().unwrap().len(), 2);
        assert_eq!(js["pairs"].as_array().unwrap().len(), 4);
        for row in js["pairs"].as_array().unwrap() {
            if row["bipartite"].as_bool().unwrap() {
                assert_eq!(row["jones"].as_array().unwrap().len(), 4);
            } else {
                assert!(row.get("jones").is_none());
            }
        }
        let csv = cen.to_csv();
        assert_eq!(csv.lines().count(), 5);
        let header = csv.lines().next().unwrap();
        assert_eq!(header.split(',').count(), 6 + 8);
        for line in csv.lines().skip(1) {
            assert_eq!(line.split(',').count(), 6 + 8, "{line}");
        }
        assert_eq!(cen.to_json(), js);
    }
}
