//! Component-count oracle via GF(2) linear algebra.
//!
//! For a graph with incidence matrix B, the bicycle space is the intersection
//! of cycle and cocycle space; the medial link of the graph has
//! 1 + dim(bicycles) components. This route never touches the diagram
//! machinery, so it cross-checks the strand-following count.

use crate::gamma::SignedGraph;

/// Row-reduce bit rows in place; returns the rank. Column width <= 128.
pub fn gf2_rank(rows: &mut [u128]) -> usize {
    let mut rank = 0;
    for col in 0..128 {
        let bit = 1u128 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] & bit != 0 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// dim( cycle space ∩ cocycle space ) over GF(2), signs ignored.
pub fn bicycle_dimension(g: &SignedGraph) -> usize {
    let m = g.edges.len();
    assert!(m <= 128 && g.n <= 128, "graph too large for bit rows");
    // B: one row per vertex, one bit per edge
    let mut b = vec![0u128; g.n];
    for (idx, e) in g.edges.iter().enumerate() {
        b[e.u - 1] |= 1 << idx;
        b[e.v - 1] |= 1 << idx;
    }
    // BB^T: entry (i,j) = parity of the number of shared edges
    let mut bbt = vec![0u128; g.n];
    for i in 0..g.n {
        for j in 0..g.n {
            if (b[i] & b[j]).count_ones() % 2 == 1 {
                bbt[i] |= 1 << j;
            }
        }
    }
    let rank_b = gf2_rank(&mut b.clone());
    let rank_bbt = gf2_rank(&mut bbt);
    rank_b - rank_bbt
}

/// Number of closed strands in the medial diagram of the graph.
pub fn component_count_bicycle(g: &SignedGraph) -> usize {
    1 + bicycle_dimension(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::gamma::gamma_graph;

    #[test]
    fn rank_small() {
        assert_eq!(gf2_rank(&mut [0b111, 0b101, 0b010]), 2);
        assert_eq!(gf2_rank(&mut [0b1, 0b10, 0b100]), 3);
        assert_eq!(gf2_rank(&mut [0, 0]), 0);
    }

    #[test]
    fn single_vertex_no_edges() {
        let g = SignedGraph::new(1, vec![]);
        assert_eq!(component_count_bicycle(&g), 1);
    }

    #[test]
    fn x0_gives_one_component() {
        let g = gamma_graph(GroupElement::x(0).pair());
        assert_eq!(component_count_bicycle(&g), 1);
    }

    #[test]
    fn x0x1_gives_two_components() {
        let g = GroupElement::parse_word("x0 x1").unwrap();
        assert_eq!(component_count_bicycle(&gamma_graph(g.pair())), 2);
    }
}
