//! Kauffman bracket state sums and the normalized bracket / Jones values.

use crate::diagram::{element_diagram, Diagram};
use crate::dsu::Dsu;
use crate::element::GroupElement;
use crate::error::Result;
use crate::gamma::SignedGraph;
use crate::laurent::LaurentPoly;
use num_complex::Complex64;
use num_rational::Ratio;
use std::collections::HashMap;

/// Raw bracket of the diagram: sum over all smoothing states of
/// A^(#A - #B) * delta^(loops - 1).
pub fn bracket_poly(d: &Diagram) -> LaurentPoly {
    let m = d.crossing_count();
    assert!(m < 63, "too many crossings for a full state sum");
    let segs = d.segment_count();
    // histogram over (exponent difference, loop count)
    let mut hist: HashMap<(i64, usize), i64> = HashMap::new();
    for state in 0u64..(1u64 << m) {
        let mut dsu = Dsu::new(segs.max(1));
        for (c, slots) in d.slots.iter().enumerate() {
            let a_choice = state >> c & 1 == 0;
            for (p, q) in Diagram::smoothing_pairs(d.graph.edges[c].sign, a_choice) {
                dsu.union(slots[p as usize], slots[q as usize]);
            }
        }
        let loops = if segs == 0 { 0 } else { dsu.components() } + d.free_loops;
        let a_count = (m - state.count_ones() as usize) as i64;
        let diff = a_count - (m as i64 - a_count);
        *hist.entry((diff, loops)).or_insert(0) += 1;
    }
    let max_loops = hist.keys().map(|&(_, l)| l).max().unwrap_or(1);
    let delta = LaurentPoly::delta();
    let mut delta_pows = vec![LaurentPoly::one()];
    for k in 1..max_loops {
        delta_pows.push(delta_pows[k - 1].mul(&delta));
    }
    let mut out = LaurentPoly::zero();
    for ((diff, loops), count) in hist {
        out = out.add(&LaurentPoly::monomial(diff, count).mul(&delta_pows[loops - 1]));
    }
    out
}

pub fn bracket_poly_of_graph(g: &SignedGraph) -> LaurentPoly {
    bracket_poly(&Diagram::new(g.clone()))
}

/// A bracket value of the form poly / delta^delta_power. The quotient is in
/// general not a Laurent polynomial, so both parts are kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalizedBracket {
    pub poly: LaurentPoly,
    pub delta_power: u32,
}

impl NormalizedBracket {
    pub fn eval(&self, a: Complex64) -> Complex64 {
        self.poly.eval(a) / LaurentPoly::delta().eval(a).powi(self.delta_power as i32)
    }

    /// Exact equality of the two quotients, by cross-multiplying.
    pub fn eq_exact(&self, other: &NormalizedBracket) -> bool {
        let delta = LaurentPoly::delta();
        self.poly.mul(&delta.pow(other.delta_power)) == other.poly.mul(&delta.pow(self.delta_power))
    }
}

/// Bracket of the element's diagram, normalized by delta^(leaves - 1).
pub fn bracket_function(g: &GroupElement) -> NormalizedBracket {
    NormalizedBracket {
        poly: bracket_poly(&element_diagram(g)),
        delta_power: (g.leaf_count() - 1) as u32,
    }
}

/// Jones value: (-A^3)^(-writhe) times the normalized bracket, at the given
/// bracket-variable point. Defined only when the diagram orients.
pub fn jones_function(g: &GroupElement, a: Complex64) -> Result<Complex64> {
    let d = element_diagram(g);
    let w = d.orient()?.writhe;
    let nb = bracket_function(g);
    Ok((-a.powi(3)).powi(-w as i32) * nb.eval(a))
}

/// Exact Jones value at t = 1 (bracket variable i) as a Gaussian rational
/// (re, im). On elements whose diagram orients, the writhe vanishes, so this
/// is the plain normalized bracket at i.
pub fn jones_at_one_exact(g: &GroupElement) -> Result<(Ratio<i128>, Ratio<i128>)> {
    element_diagram(g).orient()?;
    let nb = bracket_function(g);
    let (re, im) = nb.poly.eval_at_i();
    // delta(i) = 2
    let denom = 1i128 << nb.delta_power;
    Ok((Ratio::new(re, denom), Ratio::new(im, denom)))
}

/// Bracket-variable points where the loop value is sqrt(Q) for an integer
/// Q >= 2; the positivity statements hold exactly at these.
pub struct AdmissiblePoint {
    pub a: Complex64,
    pub q: u32,
    pub label: &'static str,
}

pub fn admissible_bracket_points() -> Vec<AdmissiblePoint> {
    use std::f64::consts::PI;
    let unit = |theta: f64| Complex64::from_polar(1.0, theta);
    vec![
        AdmissiblePoint { a: unit(3.0 * PI / 8.0), q: 2, label: "exp(3*pi*i/8)" },
        AdmissiblePoint { a: unit(-3.0 * PI / 8.0), q: 2, label: "exp(-3*pi*i/8)" },
        AdmissiblePoint { a: -unit(3.0 * PI / 8.0), q: 2, label: "-exp(3*pi*i/8)" },
        AdmissiblePoint { a: -unit(-3.0 * PI / 8.0), q: 2, label: "-exp(-3*pi*i/8)" },
        AdmissiblePoint { a: unit(5.0 * PI / 12.0), q: 3, label: "exp(5*pi*i/12)" },
        AdmissiblePoint { a: unit(-5.0 * PI / 12.0), q: 3, label: "exp(-5*pi*i/12)" },
        AdmissiblePoint { a: -unit(5.0 * PI / 12.0), q: 3, label: "-exp(5*pi*i/12)" },
        AdmissiblePoint { a: -unit(-5.0 * PI / 12.0), q: 3, label: "-exp(-5*pi*i/12)" },
        AdmissiblePoint { a: Complex64::new(0.0, 1.0), q: 4, label: "i" },
        AdmissiblePoint { a: Complex64::new(0.0, -1.0), q: 4, label: "-i" },
    ]
}

/// Bracket-variable branch for a Jones-variable point t, following the
/// fixed table at the distinguished points and t^(-1/4) on the positive
/// real axis.
pub fn jones_branch(t: Complex64) -> Complex64 {
    use std::f64::consts::PI;
    let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-9;
    let unit = |theta: f64| Complex64::from_polar(1.0, theta);
    if close(t, Complex64::new(1.0, 0.0)) {
        Complex64::new(0.0, 1.0)
    } else if close(t, Complex64::new(0.0, 1.0)) {
        unit(3.0 * PI / 8.0)
    } else if close(t, unit(PI / 3.0)) {
        unit(5.0 * PI / 12.0)
    } else if close(t, unit(-PI / 3.0)) {
        unit(-5.0 * PI / 12.0)
    } else if t.im == 0.0 && t.re > 0.0 {
        Complex64::new(t.re.powf(-0.25), 0.0)
    } else {
        (-t.ln() / 4.0).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::c_value;
    use crate::gamma::{Sign, SignedEdge};

    fn graph(n: usize, edges: &[(usize, usize, Sign)]) -> SignedGraph {
        SignedGraph::new(
            n,
            edges.iter().map(|&(u, v, s)| SignedEdge::new(u, v, s)).collect(),
        )
    }

    #[test]
    fn single_crossing_kinks() {
        let plus = bracket_poly_of_graph(&graph(2, &[(1, 2, Sign::Plus)]));
        assert_eq!(plus, LaurentPoly::monomial(-3, -1));
        let minus = bracket_poly_of_graph(&graph(2, &[(1, 2, Sign::Minus)]));
        assert_eq!(minus, LaurentPoly::monomial(3, -1));
    }

    #[test]
    fn hopf_bracket() {
        let h = bracket_poly_of_graph(&graph(
            2,
            &[(1, 2, Sign::Plus), (1, 2, Sign::Plus)],
        ));
        let expect = LaurentPoly::monomial(4, -1).add(&LaurentPoly::monomial(-4, -1));
        assert_eq!(h, expect);
    }

    #[test]
    fn identity_brackets() {
        assert_eq!(bracket_function(&GroupElement::identity()).poly, LaurentPoly::one());
        let two_leaf = GroupElement::identity().pair().insert_opposing(1).unwrap();
        assert_eq!(
            bracket_poly(&crate::diagram::pair_diagram(&two_leaf)),
            LaurentPoly::delta()
        );
    }

    #[test]
    fn expansion_multiplies_bracket_by_delta() {
        for w in ["x0", "c1", "x0 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let base = bracket_poly(&element_diagram(&g));
            for j in 1..=g.leaf_count() {
                let p = g.pair().insert_opposing(j).unwrap();
                let expanded = bracket_poly(&crate::diagram::pair_diagram(&p));
                assert_eq!(expanded, base.mul(&LaurentPoly::delta()), "{w} at {j}");
            }
        }
    }

    #[test]
    fn mirror_inverts_the_variable() {
        for w in ["x0", "c1", "x0 x1", "c2 x1^-1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let p = bracket_poly(&element_diagram(&g));
            let q = bracket_poly(&element_diagram(&g.invert()));
            assert_eq!(q, p.reciprocal_substitution(), "{w}");
        }
    }

    #[test]
    fn jones_at_one_is_power_of_two() {
        for w in ["x0 x1", "x1 x2", "x0 x1 x1 x2", "x0 x1 x2 x3"] {
            let g = GroupElement::parse_word(w).unwrap();
            let (re, im) = jones_at_one_exact(&g).unwrap();
            assert_eq!(im, Ratio::new(0, 1), "{w}");
            let c = c_value(&g);
            let expect = if c >= 0 {
                Ratio::new(1i128 << c, 1)
            } else {
                Ratio::new(1, 1i128 << (-c))
            };
            assert_eq!(re, expect, "{w}");
        }
    }

    #[test]
    fn branch_rotation_route_agrees() {
        // second evaluation route: rotate the bracket variable by i and
        // correct by the strand-count parity
        let i = Complex64::new(0.0, 1.0);
        for w in ["x0 x1", "x1 x2", "x0 x1 x2 x3"] {
            let g = GroupElement::parse_word(w).unwrap();
            let c = c_value(&g);
            for pt in admissible_bracket_points() {
                let one = jones_function(&g, pt.a).unwrap();
                let two = jones_function(&g, i * pt.a).unwrap();
                let sign = if c.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                assert!((one - sign * two).norm() < 1e-9, "{w} at {}", pt.label);
            }
        }
    }

    #[test]
    fn admissible_points_have_root_q_loop_value() {
        for pt in admissible_bracket_points() {
            let d = LaurentPoly::delta().eval(pt.a);
            assert!((d - Complex64::new((pt.q as f64).sqrt(), 0.0)).norm() < 1e-12, "{}", pt.label);
        }
    }

    #[test]
    fn branch_table() {
        let i = Complex64::new(0.0, 1.0);
        assert!((jones_branch(Complex64::new(1.0, 0.0)) - i).norm() < 1e-12);
        let a = jones_branch(i);
        assert!((a.powi(-4) - i).norm() < 1e-12);
        let t = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        assert!((jones_branch(t).powi(-4) - t).norm() < 1e-12);
        assert!((jones_branch(Complex64::new(16.0, 0.0)) - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
}
