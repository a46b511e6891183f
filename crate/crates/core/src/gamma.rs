//! Signed graphs attached to marked tree pairs.
//!
//! Vertices are the leaf indices 1..=n. Every caret of T- whose left subtree
//! spans leaves [a..=b] contributes a negative edge {a, b+1}; every caret of
//! T+ contributes a positive edge, relabelled from T+ leaf numbering into
//! vertex numbering through the gluing. Within each sign the edges form a
//! spanning tree.

use crate::dsu::Dsu;
use crate::element::MarkedPair;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SignedEdge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl SignedEdge {
    pub fn new(u: usize, v: usize, sign: Sign) -> Self {
        SignedEdge { u: u.min(v), v: u.max(v), sign }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignedGraph {
    pub n: usize,
    pub edges: Vec<SignedEdge>,
}

impl SignedGraph {
    /// Normalized form: endpoints ordered inside each edge, edges sorted
    /// positives first.
    pub fn new(n: usize, edges: Vec<SignedEdge>) -> Self {
        let mut edges: Vec<SignedEdge> =
            edges.into_iter().map(|e| SignedEdge::new(e.u, e.v, e.sign)).collect();
        edges.sort_by_key(|e| (e.sign, e.u, e.v));
        SignedGraph { n, edges }
    }

    pub fn edges_of_sign(&self, sign: Sign) -> impl Iterator<Item = &SignedEdge> {
        self.edges.iter().filter(move |e| e.sign == sign)
    }

    /// Proper two-colouring over all edges regardless of sign, colour of
    /// vertex 1 fixed to `true`; None when some cycle is odd.
    pub fn two_colouring(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n + 1];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for start in 1..=self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(true);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v].unwrap();
                for &w in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().skip(1).map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_colouring().is_some()
    }

    pub fn sign_flip(&self) -> SignedGraph {
        SignedGraph::new(
            self.n,
            self.edges.iter().map(|e| SignedEdge::new(e.u, e.v, e.sign.flip())).collect(),
        )
    }

    /// Apply a vertex relabelling; `perm[i-1]` is the new name of vertex i.
    pub fn relabel(&self, perm: &[usize]) -> SignedGraph {
        SignedGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| SignedEdge::new(perm[e.u - 1], perm[e.v - 1], e.sign))
                .collect(),
        )
    }

    fn sign_is_spanning_tree(&self, sign: Sign) -> bool {
        let edges: Vec<&SignedEdge> = self.edges_of_sign(sign).collect();
        if edges.len() != self.n - 1 {
            return false;
        }
        let mut dsu = Dsu::new(self.n);
        for e in &edges {
            if !dsu.union(e.u - 1, e.v - 1) {
                return false;
            }
        }
        true
    }

    /// Structural sanity for graphs that come from tree pairs.
    pub fn is_tree_pair_shaped(&self) -> bool {
        self.sign_is_spanning_tree(Sign::Plus) && self.sign_is_spanning_tree(Sign::Minus)
    }
}

/// The signed graph of a representative. Distinct representatives of one
/// element give different graphs; invariants defined through this graph use
/// the reduced representative.
pub fn gamma_graph(p: &MarkedPair) -> SignedGraph {
    let n = p.leaf_count();
    let mut edges = Vec::with_capacity(2 * (n - 1));
    for (a, b, _) in p.t_minus.caret_spans() {
        edges.push(SignedEdge::new(a, b + 1, Sign::Minus));
    }
    for (a, b, _) in p.t_plus.caret_spans() {
        edges.push(SignedEdge::new(
            p.minus_index_of_plus_leaf(a),
            p.minus_index_of_plus_leaf(b + 1),
            Sign::Plus,
        ));
    }
    SignedGraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;

    fn graph_of(word: &str) -> SignedGraph {
        gamma_graph(GroupElement::parse_word(word).unwrap().pair())
    }

    #[test]
    fn x0_graph_pinned() {
        let g = graph_of("x0");
        let expect = SignedGraph::new(
            3,
            vec![
                SignedEdge::new(1, 2, Sign::Plus),
                SignedEdge::new(1, 3, Sign::Plus),
                SignedEdge::new(1, 2, Sign::Minus),
                SignedEdge::new(2, 3, Sign::Minus),
            ],
        );
        assert_eq!(g, expect);
        assert!(!g.is_bipartite());
    }

    #[test]
    fn each_sign_spans() {
        for w in ["x0", "x1", "c0", "c1", "x0 x1", "c2 x0^-1", "x0 x1^-1 x2 c3"] {
            let g = graph_of(w);
            assert!(g.is_tree_pair_shaped(), "{w}");
        }
    }

    #[test]
    fn oriented_examples() {
        assert!(graph_of("x0 x1").is_bipartite());
        assert!(graph_of("x1 x2").is_bipartite());
        assert!(!graph_of("x0").is_bipartite());
        assert!(!graph_of("x1").is_bipartite());
    }

    #[test]
    fn inverse_is_signflip_relabel() {
        for w in ["x0", "c1", "x0 x1", "c2 x1^-1", "x0 c1 x2"] {
            let g = GroupElement::parse_word(w).unwrap();
            let p = g.pair();
            let n = p.leaf_count();
            let gamma = gamma_graph(p);
            let gamma_inv = gamma_graph(g.invert().pair());
            // vertex i of gamma corresponds to vertex ((i - mark) mod n) + 1 of gamma_inv
            let perm: Vec<usize> = (1..=n).map(|i| (i + n - p.mark) % n + 1).collect();
            assert_eq!(gamma_inv, gamma.sign_flip().relabel(&perm), "{w}");
        }
    }

    #[test]
    fn all_edges_distinct_within_sign() {
        for w in ["x0 x1 x0^-1", "c3 x2", "x0^2 x1"] {
            let g = graph_of(w);
            for sign in [Sign::Plus, Sign::Minus] {
                let mut es: Vec<_> = g.edges_of_sign(sign).collect();
                es.dedup();
                assert_eq!(es.len(), g.n - 1, "{w} {sign}");
            }
        }
    }

    #[test]
    fn json_shape() {
        let g = graph_of("x0");
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.contains("\"sign\":\"+\""));
        let back: SignedGraph = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
    }
}
