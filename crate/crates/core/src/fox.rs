//! Fox colouring counts of diagrams.
//!
//! Arcs are maximal over-strand runs: segments glued across each crossing
//! along the over diagonal only. Each crossing imposes
//! 2*(over arc) = (under arc in) + (under arc out) modulo m. The count of
//! solutions comes from the Smith normal form of the relation matrix.

use crate::diagram::{element_diagram, Diagram};
use crate::dsu::Dsu;
use crate::element::GroupElement;
use num_rational::Ratio;

pub struct ArcStructure {
    /// Arc id per segment.
    pub arc_of_segment: Vec<usize>,
    pub arc_count: usize,
    /// Per crossing: (over arc, under arc one side, under arc other side).
    pub equations: Vec<[usize; 3]>,
    /// Crossing-free circles; one unconstrained arc each.
    pub free_loops: usize,
}

pub fn arc_structure(d: &Diagram) -> ArcStructure {
    let segs = d.segment_count();
    let mut dsu = Dsu::new(segs.max(1));
    for (c, slots) in d.slots.iter().enumerate() {
        let (o1, o2) = Diagram::over_slots(d.graph.edges[c].sign);
        dsu.union(slots[o1 as usize], slots[o2 as usize]);
    }
    let (arc_of_segment, arc_count) = if segs == 0 {
        (Vec::new(), 0)
    } else {
        let labels = dsu.labels();
        let count = dsu.components();
        (labels, count)
    };
    let equations = d
        .slots
        .iter()
        .enumerate()
        .map(|(c, slots)| {
            let (o1, _) = Diagram::over_slots(d.graph.edges[c].sign);
            let (u1, u2) = Diagram::over_slots(d.graph.edges[c].sign.flip());
            [
                arc_of_segment[slots[o1 as usize]],
                arc_of_segment[slots[u1 as usize]],
                arc_of_segment[slots[u2 as usize]],
            ]
        })
        .collect();
    ArcStructure { arc_of_segment, arc_count, equations, free_loops: d.free_loops }
}

/// Diagonal of the Smith normal form (unimodular row/column reduction).
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut top = 0;
    while top < rows.min(cols) {
        // find smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for r in top..rows {
            for c in top..cols {
                if m[r][c] != 0
                    && pivot.is_none_or(|(pr, pc)| m[r][c].abs() < m[pr][pc].abs())
                {
                    pivot = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        m.swap(top, pr);
        for row in &mut m {
            row.swap(top, pc);
        }
        // clear the pivot row and column
        let mut clean = true;
        for r in top + 1..rows {
            let f = m[r][top] / m[top][top];
            if f != 0 {
                for c in top..cols {
                    m[r][c] -= f * m[top][c];
                }
            }
            if m[r][top] != 0 {
                clean = false;
            }
        }
        for c in top + 1..cols {
            let f = m[top][c] / m[top][top];
            if f != 0 {
                for r in top..rows {
                    m[r][c] -= f * m[r][top];
                }
            }
            if m[top][c] != 0 {
                clean = false;
            }
        }
        if clean {
            out.push(m[top][top].abs());
            top += 1;
        }
        // otherwise repeat with the smaller remainders now in the block
    }
    out
}

/// Number of colourings of the arcs by Z/m satisfying every crossing
/// relation. Constant colourings are included.
pub fn fox_colourings(d: &Diagram, m: u64) -> u128 {
    assert!(m >= 1);
    let arcs = arc_structure(d);
    if arcs.arc_count == 0 {
        return (m as u128).pow(arcs.free_loops as u32);
    }
    let mut matrix = vec![vec![0i128; arcs.arc_count]; arcs.equations.len()];
    for (row, eq) in arcs.equations.iter().enumerate() {
        matrix[row][eq[0]] += 2;
        matrix[row][eq[1]] -= 1;
        matrix[row][eq[2]] -= 1;
    }
    let diag = smith_diagonal(matrix);
    let rank = diag.len();
    let mut count: u128 = 1;
    for d in diag {
        count *= gcd(d.unsigned_abs(), m as u128);
    }
    count
        * (m as u128).pow((arcs.arc_count - rank) as u32)
        * (m as u128).pow(arcs.free_loops as u32)
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Colouring count of the element's diagram divided by m^leaves; unchanged
/// by the choice of representative.
pub fn col_function(g: &GroupElement, m: u64) -> Ratio<i128> {
    let d = element_diagram(g);
    let raw = fox_colourings(&d, m) as i128;
    Ratio::new(raw, (m as i128).pow(g.leaf_count() as u32))
}
