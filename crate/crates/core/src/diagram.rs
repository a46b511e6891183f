//! Link diagrams from signed graphs.
//!
//! The graph is drawn with vertices 1..=n in cyclic order, positive edges on
//! one side and negative edges on the other. Each edge carries one crossing
//! of the medial link. Crossings have four slots in counterclockwise order:
//! with the edge oriented from its smaller endpoint u to its larger endpoint
//! v, slot 0 is right-near-u, slot 1 right-near-v, slot 2 left-near-v,
//! slot 3 left-near-u. The strand entering slot k leaves through slot k+2;
//! on a positive edge the over strand is the (0,2) diagonal, on a negative
//! edge the (1,3) diagonal.
//!
//! Segments are the corner arcs between consecutive edges around a vertex;
//! they are the edges of the medial 4-valent graph.

use crate::dsu::Dsu;
use crate::element::{GroupElement, MarkedPair};
use crate::error::{Error, Result};
use crate::gamma::{gamma_graph, Sign, SignedGraph};
use serde::Serialize;

/// Corner arc at `vertex` from one crossing slot to the next, in the
/// counterclockwise sense around the vertex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Segment {
    pub vertex: usize,
    /// (crossing, slot) where the corner leaves its first edge.
    pub from: (usize, u8),
    /// (crossing, slot) where the corner reaches the next edge.
    pub to: (usize, u8),
}

#[derive(Clone)]
pub struct Diagram {
    pub graph: SignedGraph,
    /// Per vertex (0-indexed), edge indices in counterclockwise order.
    pub rotations: Vec<Vec<usize>>,
    pub segments: Vec<Segment>,
    /// Per crossing, the segment id attached at each slot.
    pub slots: Vec<[usize; 4]>,
    /// Crossing-free circles around isolated vertices.
    pub free_loops: usize,
}

impl Diagram {
    pub fn new(graph: SignedGraph) -> Diagram {
        let n = graph.n;
        let m = graph.edges.len();
        let mut rotations: Vec<Vec<usize>> = Vec::with_capacity(n);
        for v in 1..=n {
            let mut plus: Vec<usize> = Vec::new();
            let mut minus: Vec<usize> = Vec::new();
            for (i, e) in graph.edges.iter().enumerate() {
                if e.u == v || e.v == v {
                    match e.sign {
                        Sign::Plus => plus.push(i),
                        Sign::Minus => minus.push(i),
                    }
                }
            }
            let key = |i: usize| {
                let e = &graph.edges[i];
                let other = if e.u == v { e.v } else { e.u };
                (other + n - v) % n
            };
            // ties (parallel same-sign edges) nest by index, inner = lower index
            plus.sort_by_key(|&i| {
                let at_u = graph.edges[i].u == v;
                (key(i), if at_u { i as i64 } else { -(i as i64) })
            });
            minus.sort_by_key(|&i| {
                let at_u = graph.edges[i].u == v;
                (std::cmp::Reverse(key(i)), if at_u { -(i as i64) } else { i as i64 })
            });
            plus.extend(minus);
            rotations.push(plus);
        }

        let mut segments = Vec::new();
        let mut slots = vec![[usize::MAX; 4]; m];
        let mut free_loops = 0;
        for v in 1..=n {
            let rot = &rotations[v - 1];
            if rot.is_empty() {
                free_loops += 1;
                continue;
            }
            for k in 0..rot.len() {
                let f = rot[k];
                let g = rot[(k + 1) % rot.len()];
                let sl = if graph.edges[f].u == v { 3 } else { 1 };
                let sr = if graph.edges[g].u == v { 0 } else { 2 };
                let id = segments.len();
                segments.push(Segment { vertex: v, from: (f, sl), to: (g, sr) });
                slots[f][sl as usize] = id;
                slots[g][sr as usize] = id;
            }
        }
        debug_assert!(slots.iter().all(|s| s.iter().all(|&x| x != usize::MAX)));
        Diagram { graph, rotations, segments, slots, free_loops }
    }

    pub fn crossing_count(&self) -> usize {
        self.graph.edges.len()
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// Closed strands of the diagram, following each strand straight through
    /// every crossing.
    pub fn component_count(&self) -> usize {
        if self.segments.is_empty() {
            return self.free_loops;
        }
        let mut dsu = Dsu::new(self.segments.len());
        for s in &self.slots {
            dsu.union(s[0], s[2]);
            dsu.union(s[1], s[3]);
        }
        dsu.components() + self.free_loops
    }

    /// Component label per segment, numbered in first-appearance order.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut dsu = Dsu::new(self.segments.len());
        for s in &self.slots {
            dsu.union(s[0], s[2]);
            dsu.union(s[1], s[3]);
        }
        let labels = dsu.labels();
        let k = dsu.components();
        (labels, k)
    }

    /// The two slot pairs rejoined by a smoothing of one crossing.
    /// `a_choice` selects the smoothing that, rotating the over strand
    /// counterclockwise, merges the swept regions.
    pub fn smoothing_pairs(sign: Sign, a_choice: bool) -> [(u8, u8); 2] {
        match (sign, a_choice) {
            (Sign::Plus, true) | (Sign::Minus, false) => [(0, 1), (2, 3)],
            (Sign::Plus, false) | (Sign::Minus, true) => [(1, 2), (3, 0)],
        }
    }

    /// Slots of the over strand at a crossing of the given sign.
    pub fn over_slots(sign: Sign) -> (u8, u8) {
        match sign {
            Sign::Plus => (0, 2),
            Sign::Minus => (1, 3),
        }
    }

    pub fn orient(&self) -> Result<Orientation> {
        let colours = self.graph.two_colouring().ok_or(Error::NotOriented)?;
        // segment direction: counterclockwise around its vertex iff colour +
        let reversed: Vec<bool> =
            self.segments.iter().map(|s| !colours[s.vertex - 1]).collect();
        // a slot is an exit iff the strand departs the crossing there
        let departs = |c: usize, s: u8| -> bool {
            let id = self.slots[c][s as usize];
            let seg = &self.segments[id];
            if seg.from == (c, s) {
                !reversed[id]
            } else {
                debug_assert_eq!(seg.to, (c, s));
                reversed[id]
            }
        };
        let dir = |slot: u8| -> (i32, i32) {
            match slot {
                0 => (-1, -1),
                1 => (1, -1),
                2 => (1, 1),
                _ => (-1, 1),
            }
        };
        let mut signs = Vec::with_capacity(self.crossing_count());
        for (c, e) in self.graph.edges.iter().enumerate() {
            let (o1, o2) = Self::over_slots(e.sign);
            let (u1, u2) = Self::over_slots(e.sign.flip());
            let over_exit = match (departs(c, o1), departs(c, o2)) {
                (true, false) => o1,
                (false, true) => o2,
                _ => return Err(Error::Invalid("inconsistent strand orientation".into())),
            };
            let under_exit = match (departs(c, u1), departs(c, u2)) {
                (true, false) => u1,
                (false, true) => u2,
                _ => return Err(Error::Invalid("inconsistent strand orientation".into())),
            };
            let (ox, oy) = dir(over_exit);
            let (ux, uy) = dir(under_exit);
            signs.push(if ox * uy - oy * ux > 0 { 1i8 } else { -1i8 });
        }
        let writhe = signs.iter().map(|&s| s as i64).sum();
        Ok(Orientation { colours, reversed, crossing_signs: signs, writhe })
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.orient()?.writhe)
    }

    /// Cut every corner between edges of opposite sign. Fails unless each
    /// vertex meets both signs.
    pub fn split_boundary(&self) -> Result<SemiDiagram> {
        let n = self.graph.n;
        let mut crossings = Vec::new();
        let mut crossing_index = vec![usize::MAX; self.graph.edges.len()];
        for (i, e) in self.graph.edges.iter().enumerate() {
            if e.sign == Sign::Plus {
                crossing_index[i] = crossings.len();
                crossings.push(i);
            }
        }
        // map full-diagram segment id -> upper end bookkeeping
        let mut upper_id = vec![None; self.segments.len()];
        let mut internal_count = 0;
        let mut boundary_of_segment = vec![None; self.segments.len()];
        for v in 1..=n {
            let rot = &self.rotations[v - 1];
            let p = rot.iter().filter(|&&e| self.graph.edges[e].sign == Sign::Plus).count();
            if p == 0 || p == rot.len() {
                return Err(Error::Invalid(format!(
                    "vertex {v} lacks edges of both signs; cannot split"
                )));
            }
            // corners inside the + block are internal to the upper half
            for k in 0..p - 1 {
                let f = rot[k];
                let sl = if self.graph.edges[f].u == v { 3 } else { 1 };
                let id = self.slots[f][sl as usize];
                upper_id[id] = Some(internal_count);
                internal_count += 1;
            }
            // west cut: corner (last +, first -); east cut: corner (last -, first +)
            let last_plus = rot[p - 1];
            let sl = if self.graph.edges[last_plus].u == v { 3 } else { 1 };
            boundary_of_segment[self.slots[last_plus][sl as usize]] = Some(2 * (v - 1));
            let first_plus = rot[0];
            let sr = if self.graph.edges[first_plus].u == v { 0 } else { 2 };
            boundary_of_segment[self.slots[first_plus][sr as usize]] = Some(2 * (v - 1) + 1);
        }
        let mut slot_ends = Vec::with_capacity(crossings.len());
        for &e in &crossings {
            let mut ends = [UpperEnd::Boundary(0); 4];
            for s in 0..4 {
                let id = self.slots[e][s];
                ends[s] = if let Some(k) = upper_id[id] {
                    UpperEnd::Internal(k)
                } else if let Some(b) = boundary_of_segment[id] {
                    UpperEnd::Boundary(b)
                } else {
                    return Err(Error::Invalid("upper slot meets a lower segment".into()));
                };
            }
            slot_ends.push(ends);
        }
        Ok(SemiDiagram { n, crossings, slot_ends, internal_count })
    }

    /// Stable crossing-by-crossing export.
    pub fn pd_code(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Crossing {
            sign: String,
            endpoints: [usize; 2],
            slots: [usize; 4],
        }
        let crossings: Vec<Crossing> = self
            .graph
            .edges
            .iter()
            .zip(&self.slots)
            .map(|(e, s)| Crossing {
                sign: e.sign.to_string(),
                endpoints: [e.u, e.v],
                slots: *s,
            })
            .collect();
        serde_json::json!({
            "vertices": self.graph.n,
            "segments": self.segments.len(),
            "free_loops": self.free_loops,
            "crossings": crossings,
        })
    }
}

pub struct Orientation {
    /// Proper two-colouring of the vertices, vertex 1 positive.
    pub colours: Vec<bool>,
    /// Per segment: true when directed clockwise around its vertex.
    pub reversed: Vec<bool>,
    pub crossing_signs: Vec<i8>,
    pub writhe: i64,
}

/// What a slot of an upper crossing attaches to after the split.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UpperEnd {
    /// Upper-half segment, numbered stably per vertex block.
    Internal(usize),
    /// Cut point on the reference line: 2(v-1) west of v, 2(v-1)+1 east.
    Boundary(usize),
}

/// The upper half of a split diagram: positive crossings with their slot
/// attachments. Depends only on the positive edges and their rotation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemiDiagram {
    pub n: usize,
    /// Positive edge index behind each upper crossing.
    pub crossings: Vec<usize>,
    pub slot_ends: Vec<[UpperEnd; 4]>,
    pub internal_count: usize,
}

impl SemiDiagram {
    pub fn boundary_count(&self) -> usize {
        2 * self.n
    }
}

pub fn element_diagram(g: &GroupElement) -> Diagram {
    Diagram::new(gamma_graph(g.pair()))
}

pub fn pair_diagram(p: &MarkedPair) -> Diagram {
    Diagram::new(gamma_graph(p))
}

/// Closed-strand count minus leaf count; unchanged by choice of
/// representative.
pub fn c_value(g: &GroupElement) -> i64 {
    let d = element_diagram(g);
    d.component_count() as i64 - g.leaf_count() as i64
}
