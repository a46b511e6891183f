//! Tutte polynomials of multigraphs, Potts partition functions, and the
//! signed-graph Potts sum that reproduces bracket values.
//!
//! Two independent Tutte backends are kept: a rank-nullity subset expansion
//! and a memoized deletion-contraction recursion whose memo key is a
//! canonical form computed by colour refinement with individualization.

use crate::dsu::Dsu;
use crate::element::GroupElement;
use crate::gamma::{gamma_graph, Sign, SignedGraph};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};

pub type Rat = Ratio<BigInt>;

pub fn rat_int(k: i64) -> Rat {
    Ratio::from_integer(BigInt::from(k))
}

pub fn rat_pow(base: &Rat, e: i64) -> Rat {
    let mut out = Rat::one();
    let b = if e < 0 { base.recip() } else { base.clone() };
    for _ in 0..e.unsigned_abs() {
        out *= &b;
    }
    out
}

/// Undirected multigraph on vertices 1..=n; loops allowed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multigraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn component_count(&self) -> usize {
        let mut dsu = Dsu::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u - 1, v - 1);
        }
        dsu.components()
    }

    pub fn rank(&self) -> usize {
        self.n - self.component_count()
    }
}

pub fn underlying_multigraph(g: &SignedGraph) -> Multigraph {
    Multigraph { n: g.n, edges: g.edges.iter().map(|e| (e.u, e.v)).collect() }
}

/// Integer bivariate polynomial, exponent pair -> coefficient.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TuttePoly {
    pub coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl TuttePoly {
    pub fn zero() -> Self {
        TuttePoly::default()
    }

    pub fn one() -> Self {
        TuttePoly::term(0, 0, 1)
    }

    pub fn term(i: u32, j: u32, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert((i, j), BigInt::from(c));
        }
        TuttePoly { coeffs }
    }

    pub fn add_assign(&mut self, other: &TuttePoly) {
        for (&k, c) in &other.coeffs {
            let slot = self.coeffs.entry(k).or_insert_with(BigInt::zero);
            *slot += c;
            if slot.is_zero() {
                self.coeffs.remove(&k);
            }
        }
    }

    /// Multiply by x^i y^j.
    pub fn shift(&self, i: u32, j: u32) -> TuttePoly {
        TuttePoly {
            coeffs: self.coeffs.iter().map(|(&(a, b), c)| ((a + i, b + j), c.clone())).collect(),
        }
    }

    pub fn eval_rational(&self, x: &Rat, y: &Rat) -> Rat {
        let mut out = Rat::zero();
        for (&(i, j), c) in &self.coeffs {
            out += Rat::from_integer(c.clone()) * rat_pow(x, i as i64) * rat_pow(y, j as i64);
        }
        out
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        let mut out = 0.0;
        for (&(i, j), c) in &self.coeffs {
            out += c.to_f64().unwrap() * x.powi(i as i32) * y.powi(j as i32);
        }
        out
    }
}

/// Subset-expansion backend: sum over edge subsets of
/// (x-1)^(r(E)-r(A)) (y-1)^(|A|-r(A)).
pub fn tutte_subset(g: &Multigraph) -> TuttePoly {
    let m = g.edges.len();
    assert!(m < 63, "too many edges for subset expansion");
    let r_full = g.rank();
    // histogram over (rank deficiency, nullity)
    let mut hist: HashMap<(u32, u32), i64> = HashMap::new();
    for mask in 0u64..(1u64 << m) {
        let mut dsu = Dsu::new(g.n);
        let mut size = 0u32;
        for (i, &(u, v)) in g.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                size += 1;
                dsu.union(u - 1, v - 1);
            }
        }
        let r = (g.n - dsu.components()) as u32;
        *hist.entry((r_full as u32 - r, size - r)).or_insert(0) += 1;
    }
    let mut out = TuttePoly::zero();
    for ((a, b), count) in hist {
        // (x-1)^a (y-1)^b, expanded
        let mut binom = TuttePoly::term(0, 0, count);
        for _ in 0..a {
            let mut next = binom.shift(1, 0);
            next.add_assign(&binom.shift(0, 0).scale(-1));
            binom = next;
        }
        for _ in 0..b {
            let mut next = binom.shift(0, 1);
            next.add_assign(&binom.shift(0, 0).scale(-1));
            binom = next;
        }
        out.add_assign(&binom);
    }
    out
}

impl TuttePoly {
    fn scale(&self, k: i64) -> TuttePoly {
        TuttePoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * BigInt::from(k))).collect(),
        }
    }
}

// --- canonical multigraph form -------------------------------------------

/// Canonical encoding of the multigraph restricted to non-isolated vertices.
fn canonical_key(g: &Multigraph) -> Vec<u32> {
    let mut present: Vec<usize> = g.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    present.sort_unstable();
    present.dedup();
    let k = present.len();
    if k == 0 {
        return Vec::new();
    }
    let index: HashMap<usize, usize> = present.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut mult = vec![vec![0u32; k]; k];
    for &(u, v) in &g.edges {
        let (a, b) = (index[&u], index[&v]);
        if a == b {
            mult[a][a] += 1;
        } else {
            mult[a][b] += 1;
            mult[b][a] += 1;
        }
    }
    search_canonical(&mult, vec![0; k])
}

fn refine_colours(mult: &[Vec<u32>], start: Vec<usize>) -> Vec<usize> {
    let k = start.len();
    let mut cur = start;
    loop {
        let mut sigs: Vec<(usize, u32, Vec<(usize, u32)>)> = Vec::with_capacity(k);
        for i in 0..k {
            let mut nb: Vec<(usize, u32)> =
                (0..k).filter(|&j| j != i && mult[i][j] > 0).map(|j| (cur[j], mult[i][j])).collect();
            nb.sort_unstable();
            let mut comb: Vec<(usize, u32)> = Vec::new();
            for (c, m) in nb {
                match comb.last_mut() {
                    Some(last) if last.0 == c => last.1 += m,
                    _ => comb.push((c, m)),
                }
            }
            sigs.push((cur[i], mult[i][i], comb));
        }
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = sigs.iter().map(|s| sorted.binary_search(s).unwrap()).collect();
        let classes = |v: &[usize]| v.iter().collect::<std::collections::HashSet<_>>().len();
        if classes(&next) == classes(&cur) {
            return next;
        }
        cur = next;
    }
}

fn search_canonical(mult: &[Vec<u32>], colours: Vec<usize>) -> Vec<u32> {
    let colours = refine_colours(mult, colours);
    let k = colours.len();
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colours.iter().enumerate() {
        by_class.entry(c).or_default().push(v);
    }
    if let Some((_, members)) = by_class.iter().find(|(_, m)| m.len() > 1) {
        let mut best: Option<Vec<u32>> = None;
        for &v in members {
            let mut c2 = colours.clone();
            c2[v] = k; // individualize
            let cand = search_canonical(mult, c2);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
        return best.unwrap();
    }
    // discrete colouring: colour id is the canonical label
    let mut label = vec![0usize; k];
    for (v, &c) in colours.iter().enumerate() {
        label[v] = c;
    }
    let mut triples: Vec<(u32, u32, u32)> = Vec::new();
    for a in 0..k {
        for b in a..k {
            if mult[a][b] > 0 {
                let (x, y) = (label[a].min(label[b]) as u32, label[a].max(label[b]) as u32);
                triples.push((x, y, mult[a][b]));
            }
        }
    }
    triples.sort_unstable();
    let mut out = vec![k as u32];
    for (a, b, m) in triples {
        out.extend([a, b, m]);
    }
    out
}

// --- deletion-contraction backend -----------------------------------------

/// Memoized deletion-contraction: loops contribute y, bridges x.
pub fn tutte_deletion_contraction(g: &Multigraph) -> TuttePoly {
    let mut memo: HashMap<Vec<u32>, TuttePoly> = HashMap::new();
    t_dc(g, &mut memo)
}

fn is_bridge(g: &Multigraph, skip: usize) -> bool {
    let (u, v) = g.edges[skip];
    let mut dsu = Dsu::new(g.n);
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if i != skip {
            dsu.union(a - 1, b - 1);
        }
    }
    !dsu.same(u - 1, v - 1)
}

fn contract(g: &Multigraph, at: usize) -> Multigraph {
    let (u, v) = g.edges[at];
    // merge v into u
    let map = |w: usize| if w == v { u } else { w };
    let edges = g
        .edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != at)
        .map(|(_, &(a, b))| (map(a), map(b)))
        .collect();
    Multigraph { n: g.n, edges }
}

fn t_dc(g: &Multigraph, memo: &mut HashMap<Vec<u32>, TuttePoly>) -> TuttePoly {
    if g.edges.is_empty() {
        return TuttePoly::one();
    }
    let key = canonical_key(g);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let (u, v) = g.edges[0];
    let result = if u == v {
        let rest = Multigraph { n: g.n, edges: g.edges[1..].to_vec() };
        t_dc(&rest, memo).shift(0, 1)
    } else if is_bridge(g, 0) {
        t_dc(&contract(g, 0), memo).shift(1, 0)
    } else {
        let deleted = Multigraph { n: g.n, edges: g.edges[1..].to_vec() };
        let mut out = t_dc(&deleted, memo);
        out.add_assign(&t_dc(&contract(g, 0), memo));
        out
    };
    memo.insert(key, result.clone());
    result
}

// --- element-level function and Potts sums ---------------------------------

/// Tutte value of an element: T of the underlying multigraph of the reduced
/// representative's graph, divided by (x+y)^(leaves-1).
#[derive(Clone, Debug)]
pub struct NormalizedTutte {
    pub poly: TuttePoly,
    pub norm_power: u32,
}

impl NormalizedTutte {
    pub fn eval_rational(&self, x: &Rat, y: &Rat) -> Rat {
        self.poly.eval_rational(x, y) / rat_pow(&(x + y), self.norm_power as i64)
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.poly.eval_f64(x, y) / (x + y).powi(self.norm_power as i32)
    }
}

pub fn tutte_function(g: &GroupElement) -> NormalizedTutte {
    let mg = underlying_multigraph(&gamma_graph(g.pair()));
    NormalizedTutte { poly: tutte_subset(&mg), norm_power: (g.leaf_count() - 1) as u32 }
}

/// Potts partition sum with equal-spin weight y per edge, normalized so each
/// unequal pair contributes 1/y: sum over colourings of (1/y)^(#unequal).
pub fn potts_z_rational(g: &Multigraph, q: u32, y: &Rat) -> Rat {
    assert!(q >= 1);
    let mut out = Rat::zero();
    let mut sigma = vec![0u32; g.n];
    loop {
        let unequal =
            g.edges.iter().filter(|&&(u, v)| sigma[u - 1] != sigma[v - 1]).count() as i64;
        out += rat_pow(&y.recip(), unequal);
        // odometer
        let mut i = 0;
        loop {
            if i == g.n {
                return out;
            }
            sigma[i] += 1;
            if sigma[i] < q {
                break;
            }
            sigma[i] = 0;
            i += 1;
        }
    }
}

/// The same Potts sum through the Tutte polynomial:
/// y^(-|E|) Q^k (y-1)^r T((y+Q-1)/(y-1), y).
pub fn potts_z_via_tutte(g: &Multigraph, q: u32, y: &Rat) -> Rat {
    let t = tutte_subset(g);
    let x = (y + rat_int(q as i64 - 1)) / (y - Rat::one());
    let k = g.component_count() as i64;
    let r = g.rank() as i64;
    rat_pow(y, -(g.edges.len() as i64))
        * rat_pow(&rat_int(q as i64), k)
        * rat_pow(&(y - Rat::one()), r)
        * t.eval_rational(&x, y)
}

/// Signed-graph Potts sum whose value equals the bracket state sum of the
/// associated diagram at admissible points:
/// (1/sqrt(Q))^(|V|+1) * sum over spin maps of the edge weights, where an
/// equal pair weighs -A^3 on positive edges and the reciprocals on negative.
pub fn signed_potts_value(g: &SignedGraph, a: Complex64, q: u32) -> Complex64 {
    let w_plus_eq = -a.powi(3);
    let w_plus_ne = a.powi(-1);
    let w_minus_eq = -a.powi(-3);
    let w_minus_ne = a;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut sigma = vec![0u32; g.n];
    loop {
        let mut term = Complex64::new(1.0, 0.0);
        for e in &g.edges {
            let eq = sigma[e.u - 1] == sigma[e.v - 1];
            term *= match (e.sign, eq) {
                (Sign::Plus, true) => w_plus_eq,
                (Sign::Plus, false) => w_plus_ne,
                (Sign::Minus, true) => w_minus_eq,
                (Sign::Minus, false) => w_minus_ne,
            };
        }
        sum += term;
        let mut i = 0;
        loop {
            if i == g.n {
                let norm = (q as f64).sqrt().powi(-(g.n as i32 + 1));
                return sum * norm;
            }
            sigma[i] += 1;
            if sigma[i] < q {
                break;
            }
            sigma[i] = 0;
            i += 1;
        }
    }
}

/// Proper q-colouring count via the Tutte specialization
/// (-1)^r q^k T(1-q, 0).
pub fn chromatic_value(g: &Multigraph, q: u32) -> BigInt {
    if g.edges.iter().any(|&(u, v)| u == v) {
        return BigInt::zero();
    }
    let t = tutte_subset(g);
    let x = rat_int(1 - q as i64);
    let v = t.eval_rational(&x, &Rat::zero());
    let r = g.rank() as u32;
    let signed = if r % 2 == 1 { -v } else { v };
    let out = signed * rat_pow(&rat_int(q as i64), g.component_count() as i64);
    assert!(out.is_integer());
    out.to_integer()
}

pub fn proper_colourings_brute(g: &Multigraph, q: u32) -> u64 {
    let mut count = 0;
    let mut sigma = vec![0u32; g.n];
    loop {
        if g.edges.iter().all(|&(u, v)| sigma[u - 1] != sigma[v - 1]) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == g.n {
                return count;
            }
            sigma[i] += 1;
            if sigma[i] < q {
                break;
            }
            sigma[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::{admissible_bracket_points, bracket_poly_of_graph};

    fn mg(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph { n, edges: edges.to_vec() }
    }

    #[test]
    fn small_classics() {
        // bridge, loop, doubled edge, triangle, four-cycle
        let cases: Vec<(Multigraph, TuttePoly)> = vec![
            (mg(2, &[(1, 2)]), TuttePoly::term(1, 0, 1)),
            (mg(1, &[(1, 1)]), TuttePoly::term(0, 1, 1)),
            (mg(2, &[(1, 2), (1, 2)]), {
                let mut p = TuttePoly::term(1, 0, 1);
                p.add_assign(&TuttePoly::term(0, 1, 1));
                p
            }),
            (mg(3, &[(1, 2), (2, 3), (1, 3)]), {
                let mut p = TuttePoly::term(2, 0, 1);
                p.add_assign(&TuttePoly::term(1, 0, 1));
                p.add_assign(&TuttePoly::term(0, 1, 1));
                p
            }),
        ];
        for (g, expect) in cases {
            assert_eq!(tutte_subset(&g), expect, "{g:?}");
            assert_eq!(tutte_deletion_contraction(&g), expect, "{g:?}");
        }
    }

    #[test]
    fn backends_agree_on_element_graphs() {
        for w in ["x0", "c1", "x0 x1", "c2 x1^-1", "x0 x1 x2", "c1 c2"] {
            let g = GroupElement::parse_word(w).unwrap();
            let m = underlying_multigraph(&gamma_graph(g.pair()));
            assert_eq!(tutte_subset(&m), tutte_deletion_contraction(&m), "{w}");
        }
    }

    #[test]
    fn potts_dictionary_exact() {
        let ys = [Ratio::new(BigInt::from(3), BigInt::from(2)), rat_int(-2), rat_int(5)];
        for w in ["x0", "c1", "x0 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let m = underlying_multigraph(&gamma_graph(g.pair()));
            for q in [2u32, 3] {
                for y in &ys {
                    assert_eq!(
                        potts_z_rational(&m, q, y),
                        potts_z_via_tutte(&m, q, y),
                        "{w} q={q} y={y}"
                    );
                }
            }
        }
    }

    #[test]
    fn signed_potts_reproduces_bracket() {
        for w in ["x0", "x1", "c1", "x0 x1", "c2 x0^-1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let graph = gamma_graph(g.pair());
            let bracket = bracket_poly_of_graph(&graph);
            for pt in admissible_bracket_points() {
                let lhs = bracket.eval(pt.a);
                let rhs = signed_potts_value(&graph, pt.a, pt.q);
                assert!((lhs - rhs).norm() < 1e-9, "{w} at {}", pt.label);
            }
        }
    }

    #[test]
    fn chromatic_specialization_matches_brute_force() {
        let triangle = mg(3, &[(1, 2), (2, 3), (1, 3)]);
        for q in 1..=6 {
            assert_eq!(
                chromatic_value(&triangle, q),
                BigInt::from(proper_colourings_brute(&triangle, q))
            );
        }
        for w in ["x0", "c1", "x0 x1"] {
            let g = GroupElement::parse_word(w).unwrap();
            let m = underlying_multigraph(&gamma_graph(g.pair()));
            for q in 1..=5 {
                assert_eq!(
                    chromatic_value(&m, q),
                    BigInt::from(proper_colourings_brute(&m, q)),
                    "{w} q={q}"
                );
            }
        }
    }

    #[test]
    fn canonical_key_is_label_invariant() {
        let a = mg(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]);
        let b = mg(4, &[(3, 1), (1, 4), (4, 2), (3, 2), (3, 4)]); // relabelled copy
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = mg(4, &[(1, 2), (2, 3), (3, 4), (1, 4), (2, 4)]);
        assert_eq!(canonical_key(&a), canonical_key(&c)); // isomorphic by symmetry
        let d = mg(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_ne!(canonical_key(&a), canonical_key(&d));
    }

    #[test]
    fn normalized_tutte_of_identity() {
        let t = tutte_function(&GroupElement::identity());
        assert_eq!(t.poly, TuttePoly::one());
        assert_eq!(t.norm_power, 0);
    }
}
