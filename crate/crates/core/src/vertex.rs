//! Two vertex models on diagram states.
//!
//! The two-state model assigns a Z/2 spin to every segment; a crossing with
//! over strand entering at slot s weighs C when the spins pair as
//! (s,s+1)(s+2,s+3) with the pairs unequal, C^-1 when they pair as
//! (s,s+3)(s+1,s+2) with the pairs unequal, and 0 otherwise. Nonzero states
//! therefore factor through crossing smoothings: the model equals a sum over
//! smoothings of C^(#C - #C^-1) * 2^(components of the loop-disagreement
//! graph), zero unless that graph is bipartite. Both forms are implemented;
//! the raw sum is the test oracle.
//!
//! The k-state model weighs a crossing 1 when the spins are constant along
//! both through-strands and 0 otherwise, so its value is k^(closed strands).

use crate::diagram::{element_diagram, Diagram};
use crate::dsu::Dsu;
use crate::element::GroupElement;
use crate::error::Result;
use crate::laurent::LaurentPoly;
use num_complex::Complex64;
use num_rational::Ratio;
use std::collections::HashMap;

/// Over-strand inbound slot parity: slot 0 diagonal for positive crossings,
/// slot 1 diagonal for negative ones.
fn over_start(d: &Diagram, c: usize) -> u8 {
    match d.graph.edges[c].sign {
        crate::gamma::Sign::Plus => 0,
        crate::gamma::Sign::Minus => 1,
    }
}

/// Two-state partition sum as a Laurent polynomial in C, by smoothings.
pub fn lipson_poly(d: &Diagram) -> LaurentPoly {
    let m = d.crossing_count();
    assert!(m < 63, "too many crossings for a full state sum");
    let segs = d.segment_count();
    let mut hist: HashMap<i64, i64> = HashMap::new();
    for state in 0u64..(1u64 << m) {
        let mut dsu = Dsu::new(segs.max(1));
        for (c, slots) in d.slots.iter().enumerate() {
            let s = over_start(d, c) as usize;
            if state >> c & 1 == 0 {
                // C-type: pair (s, s+1) and (s+2, s+3)
                dsu.union(slots[s], slots[(s + 1) % 4]);
                dsu.union(slots[(s + 2) % 4], slots[(s + 3) % 4]);
            } else {
                // reciprocal type: pair (s, s+3) and (s+1, s+2)
                dsu.union(slots[s], slots[(s + 3) % 4]);
                dsu.union(slots[(s + 1) % 4], slots[(s + 2) % 4]);
            }
        }
        // loops at each crossing must take opposite spins
        let labels = if segs == 0 { Vec::new() } else { dsu.labels() };
        let loops = if segs == 0 { 0 } else { dsu.components() };
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); loops];
        let mut ok = true;
        for (c, slots) in d.slots.iter().enumerate() {
            let s = over_start(d, c) as usize;
            let a = labels[slots[s]];
            let b = labels[slots[(s + 2) % 4]];
            if a == b {
                ok = false;
                break;
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        if !ok {
            continue;
        }
        // bipartite check and component count of the disagreement graph
        let mut colour: Vec<Option<bool>> = vec![None; loops];
        let mut comps = 0usize;
        'outer: for start in 0..loops {
            if colour[start].is_some() {
                continue;
            }
            comps += 1;
            colour[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = colour[v].unwrap();
                for &w in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            ok = false;
                            break 'outer;
                        }
                        _ => {}
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let c_count = (m - state.count_ones() as usize) as i64;
        let diff = c_count - (m as i64 - c_count);
        let weight = 1i64 << (comps + d.free_loops);
        *hist.entry(diff).or_insert(0) += weight;
    }
    let mut out = LaurentPoly::zero();
    for (diff, w) in hist {
        out.add_term(diff, w);
    }
    out
}

pub fn lipson_z(d: &Diagram, c: Complex64) -> Complex64 {
    lipson_poly(d).eval(c)
}

/// Raw two-state sum over all spin assignments to segments. Exponential in
/// segment count; test scale only.
pub fn lipson_z_brute(d: &Diagram, c: Complex64) -> Complex64 {
    let segs = d.segment_count();
    assert!(segs <= 24, "raw state sum too large");
    let mut total = Complex64::new(0.0, 0.0);
    for state in 0u64..(1u64 << segs) {
        let spin = |seg: usize| state >> seg & 1;
        let mut term = Complex64::new(1.0, 0.0);
        let mut zero = false;
        for (cr, slots) in d.slots.iter().enumerate() {
            let s = over_start(d, cr) as usize;
            let tau: Vec<u64> = (0..4).map(|k| spin(slots[(s + k) % 4])).collect();
            term *= if tau[0] == tau[1] && tau[2] == tau[3] && tau[0] != tau[2] {
                c
            } else if tau[0] == tau[3] && tau[1] == tau[2] && tau[0] != tau[1] {
                c.inv()
            } else {
                zero = true;
                break;
            };
        }
        if !zero {
            total += term;
        }
    }
    total * 2f64.powi(d.free_loops as i32)
}

/// Normalized two-state value of an oriented element:
/// C^writhe * (-1)^(strands - 1) / 2 * Z / (-2)^(leaves - 1).
pub fn kauffman2_function(g: &GroupElement, c: f64) -> Result<f64> {
    let d = element_diagram(g);
    let w = d.orient()?.writhe;
    let strands = d.component_count();
    let z = lipson_poly(&d).eval(Complex64::new(c, 0.0)).re;
    let sign = if (strands as i64 - 1).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
    let n = g.leaf_count() as i32;
    Ok(c.powi(w as i32) * sign / 2.0 * z / (-2f64).powi(n - 1))
}

/// Raw k-state sum: spin assignments constant along both through-strands of
/// every crossing. Exponential; test scale only.
pub fn homfly_q1_brute(d: &Diagram, k: u32) -> u128 {
    let segs = d.segment_count();
    assert!((k as f64).powi(segs as i32) < 1e7, "raw state sum too large");
    let mut count: u128 = 0;
    let mut sigma = vec![0u32; segs.max(1)];
    loop {
        let ok = d.slots.iter().all(|slots| {
            sigma[slots[0]] == sigma[slots[2]] && sigma[slots[1]] == sigma[slots[3]]
        });
        if ok {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == segs {
                return count * (k as u128).pow(d.free_loops as u32);
            }
            sigma[i] += 1;
            if sigma[i] < k {
                break;
            }
            sigma[i] = 0;
            i += 1;
        }
    }
}

/// k^(closed strands minus leaves); the k-state sum normalized by k^leaves.
pub fn component_function(g: &GroupElement, k: i64) -> Ratio<i128> {
    let c = crate::diagram::c_value(g);
    let base = Ratio::from_integer(k as i128);
    let mut out = Ratio::from_integer(1i128);
    let step = if c < 0 { base.recip() } else { base };
    for _ in 0..c.unsigned_abs() {
        out *= &step;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::{Sign, SignedEdge, SignedGraph};

    fn kink(sign: Sign) -> Diagram {
        Diagram::new(SignedGraph::new(2, vec![SignedEdge::new(1, 2, sign)]))
    }

    #[test]
    fn kink_normalizations() {
        assert_eq!(lipson_poly(&kink(Sign::Plus)), LaurentPoly::monomial(-1, 2));
        assert_eq!(lipson_poly(&kink(Sign::Minus)), LaurentPoly::monomial(1, 2));
    }

    #[test]
    fn crossingless_loops() {
        let one = element_diagram(&GroupElement::identity());
        assert_eq!(lipson_poly(&one), LaurentPoly::monomial(0, 2));
    }

    #[test]
    fn smoothing_form_matches_raw_sum() {
        let c = Complex64::new(1.7, 0.4);
        for w in ["x0", "c1", "x0 x1", "x0 x1^-1", "c2"] {
            let g = GroupElement::parse_word(w).unwrap();
            let d = element_diagram(&g);
            let fast = lipson_z(&d, c);
            let raw = lipson_z_brute(&d, c);
            assert!((fast - raw).norm() < 1e-9, "{w}: {fast} vs {raw}");
        }
    }

    #[test]
    fn oriented_value_is_z_over_two_to_n() {
        for w in ["x0 x1", "x1 x2", "x0 x1 x2 x3"] {
            let g = GroupElement::parse_word(w).unwrap();
            let d = element_diagram(&g);
            for c in [0.6f64, 2.5, -1.3] {
                let f = kauffman2_function(&g, c).unwrap();
                let z = lipson_z(&d, Complex64::new(c, 0.0)).re;
                let direct = z / 2f64.powi(g.leaf_count() as i32);
                assert!((f - direct).abs() < 1e-9, "{w} c={c}");
            }
        }
    }

    #[test]
    fn k_state_sum_counts_strands() {
        for w in ["x0", "c1", "x0 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let d = element_diagram(&g);
            for k in [2u32, 3] {
                let brute = homfly_q1_brute(&d, k);
                assert_eq!(brute, (k as u128).pow(d.component_count() as u32), "{w} k={k}");
            }
        }
    }

    #[test]
    fn component_function_matches_raw_sum() {
        for w in ["x0", "x0 x1", "c1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let d = element_diagram(&g);
            let k = 3u32;
            let brute = Ratio::new(
                homfly_q1_brute(&d, k) as i128,
                (k as i128).pow(g.leaf_count() as u32),
            );
            assert_eq!(component_function(&g, k as i64), brute, "{w}");
        }
    }
}
