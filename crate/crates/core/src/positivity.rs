//! Gram-matrix audits of the normalized link functions and exact
//! feature-vector certificates.
//!
//! A function f on the group is of positive type when every matrix
//! (f(g_i g_j^-1)) is positive semidefinite. `gram_matrix` builds such a
//! matrix for a chosen functional, checks it is Hermitian, and bounds its
//! least eigenvalue; `audit` runs the whole menu of admissible parameter
//! points over seeded random corpora. The certificate functions rebuild the
//! same Gram entries as inner products of explicitly constructed state-sum
//! vectors — exactly in rational arithmetic for the Potts weights.

use crate::bracket::{admissible_bracket_points, bracket_function, jones_function};
use crate::diagram::{c_value, element_diagram, pair_diagram, SemiDiagram, UpperEnd};
use crate::element::{GroupElement, MarkedPair};
use crate::error::{Error, Result};
use crate::fox::col_function;
use crate::gamma::{gamma_graph, Sign};
use crate::tree::BinaryTree;
use crate::tutte::{
    potts_z_rational, rat_int, rat_pow, signed_potts_value, tutte_function, underlying_multigraph,
    Rat,
};
use crate::vertex::lipson_poly;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A functional together with its evaluation point.
#[derive(Clone, Debug)]
pub enum EvalSpec {
    /// Jones value at a bracket-variable point.
    Jones { a: Complex64 },
    /// Normalized bracket at a bracket-variable point.
    Bracket { a: Complex64 },
    /// Normalized Tutte value at y = e^K, x = (y+Q-1)/(y-1).
    Tutte { q: u32, y: f64 },
    /// Two-state vertex model value at real C.
    Kauffman2 { c: f64 },
    /// k^(c(g)) for a nonzero integer k.
    Components { k: i64 },
    /// Colouring count normalized by m^leaves.
    Colourings { m: u32 },
}

fn admissible_label(a: Complex64) -> Option<&'static str> {
    admissible_bracket_points()
        .into_iter()
        .find(|p| (p.a - a).norm() < 1e-9)
        .map(|p| p.label)
}

impl EvalSpec {
    /// Positivity holds only at restricted parameters; reject the rest.
    pub fn validate(&self) -> Result<()> {
        match self {
            EvalSpec::Jones { a } | EvalSpec::Bracket { a } => {
                if admissible_label(*a).is_some() {
                    Ok(())
                } else {
                    Err(Error::Inadmissible(format!(
                        "bracket point {a} is not one of the ten admissible values"
                    )))
                }
            }
            EvalSpec::Tutte { q, y } => {
                if *q < 2 {
                    Err(Error::Inadmissible(format!("Q = {q} must be an integer >= 2")))
                } else if !y.is_finite() || *y <= 0.0 || (*y - 1.0).abs() < 1e-12 {
                    Err(Error::Inadmissible(format!("y = e^K = {y} must be positive and != 1")))
                } else {
                    Ok(())
                }
            }
            EvalSpec::Kauffman2 { c } => {
                if !c.is_finite() || *c == 0.0 || *c == 1.0 {
                    Err(Error::Inadmissible(format!("C = {c} must be real, nonzero, != 1")))
                } else {
                    Ok(())
                }
            }
            EvalSpec::Components { k } => {
                if *k == 0 {
                    Err(Error::Inadmissible("k must be a nonzero integer".into()))
                } else {
                    Ok(())
                }
            }
            EvalSpec::Colourings { m } => {
                if *m < 2 {
                    Err(Error::Inadmissible("colouring modulus must be >= 2".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    pub fn requires_orientation(&self) -> bool {
        matches!(self, EvalSpec::Jones { .. } | EvalSpec::Kauffman2 { .. })
            || matches!(self, EvalSpec::Components { k } if *k < 0)
    }

    /// Whether f(g⁻¹) = conj(f(g)) holds identically, so the Gram matrix
    /// must come out Hermitian. True for every functional except the
    /// two-state model: there inversion mirrors the diagram and sends the
    /// weight C to C⁻¹, so for real C ∉ {±1} the matrix is only Hermitian
    /// up to that substitution and the audit scores its Hermitian part.
    pub fn hermitian_is_theorem(&self) -> bool {
        !matches!(self, EvalSpec::Kauffman2 { .. })
    }

    pub fn label(&self) -> String {
        match self {
            EvalSpec::Jones { a } => match admissible_label(*a) {
                Some(l) => format!("jones A={l}"),
                None => format!("jones A={:.6}{:+.6}i", a.re, a.im),
            },
            EvalSpec::Bracket { a } => match admissible_label(*a) {
                Some(l) => format!("bracket A={l}"),
                None => format!("bracket A={:.6}{:+.6}i", a.re, a.im),
            },
            EvalSpec::Tutte { q, y } => format!("tutte Q={q} y={y}"),
            EvalSpec::Kauffman2 { c } => format!("kauffman2 C={c}"),
            EvalSpec::Components { k } => format!("components k={k}"),
            EvalSpec::Colourings { m } => format!("colourings m={m}"),
        }
    }
}

/// Value of the normalized functional on one element.
pub fn evaluate(g: &GroupElement, spec: &EvalSpec) -> Result<Complex64> {
    match spec {
        EvalSpec::Jones { a } => jones_function(g, *a),
        EvalSpec::Bracket { a } => Ok(bracket_function(g).eval(*a)),
        EvalSpec::Tutte { q, y } => {
            let x = (*y + *q as f64 - 1.0) / (*y - 1.0);
            Ok(Complex64::new(tutte_function(g).eval_f64(x, *y), 0.0))
        }
        EvalSpec::Kauffman2 { c } => {
            crate::vertex::kauffman2_function(g, *c).map(|v| Complex64::new(v, 0.0))
        }
        EvalSpec::Components { k } => {
            let v = crate::vertex::component_function(g, *k);
            Ok(Complex64::new(v.to_f64().unwrap(), 0.0))
        }
        EvalSpec::Colourings { m } => {
            let v = col_function(g, *m as u64);
            Ok(Complex64::new(
                *v.numer() as f64 / *v.denom() as f64,
                0.0,
            ))
        }
    }
}

#[derive(Serialize)]
pub struct GramReport {
    pub label: String,
    pub r: usize,
    /// Entries as (re, im) rows.
    pub matrix: Vec<Vec<(f64, f64)>>,
    pub hermitian_error: f64,
    pub norm_inf: f64,
    pub min_eigenvalue: f64,
    pub verdict: bool,
}

/// Least eigenvalue of the Hermitian part of a complex matrix, via the real
/// symmetric embedding [[X, -Y], [Y, X]].
pub fn min_eigenvalue_hermitian(m: &[Vec<Complex64>]) -> f64 {
    let r = m.len();
    let mut big = DMatrix::<f64>::zeros(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            let h = 0.5 * (m[i][j] + m[j][i].conj());
            big[(i, j)] = h.re;
            big[(i + r, j + r)] = h.re;
            big[(i, j + r)] = -h.im;
            big[(i + r, j)] = h.im;
        }
    }
    big.symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v))
}

fn norm_inf(m: &[Vec<Complex64>]) -> f64 {
    m.iter()
        .map(|row| row.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn hermitian_defect(m: &[Vec<Complex64>]) -> f64 {
    let r = m.len();
    let mut worst: f64 = 0.0;
    for i in 0..r {
        for j in 0..r {
            worst = worst.max((m[i][j] - m[j][i].conj()).norm());
        }
    }
    worst
}

fn report_from_matrix(
    label: String,
    matrix: Vec<Vec<Complex64>>,
    enforce_hermitian: bool,
) -> Result<GramReport> {
    let defect = hermitian_defect(&matrix);
    let scale = matrix
        .iter()
        .flatten()
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    if enforce_hermitian && defect > 1e-9 * scale {
        return Err(Error::Invalid(format!(
            "matrix is not Hermitian: defect {defect:.3e} at scale {scale:.3e}"
        )));
    }
    let nrm = norm_inf(&matrix);
    let min_eig = min_eigenvalue_hermitian(&matrix);
    let verdict = min_eig >= -1e-8 * nrm.max(1.0);
    Ok(GramReport {
        label,
        r: matrix.len(),
        matrix: matrix
            .iter()
            .map(|row| row.iter().map(|z| (z.re, z.im)).collect())
            .collect(),
        hermitian_error: defect,
        norm_inf: nrm,
        min_eigenvalue: min_eig,
        verdict,
    })
}

/// Gram matrix (f(g_i g_j^-1)) for an admissible functional.
pub fn gram_matrix(elements: &[GroupElement], spec: &EvalSpec) -> Result<GramReport> {
    spec.validate()?;
    if spec.requires_orientation() {
        for g in elements {
            element_diagram(g).orient()?;
        }
    }
    let r = elements.len();
    let mut matrix = vec![vec![Complex64::new(0.0, 0.0); r]; r];
    for i in 0..r {
        for j in 0..r {
            let product = elements[i].multiply(&elements[j].invert());
            matrix[i][j] = evaluate(&product, spec)?;
        }
    }
    report_from_matrix(spec.label(), matrix, spec.hermitian_is_theorem())
}

// ---------------------------------------------------------------------------
// corpora

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CorpusKind {
    /// Words over the bipartite-graph generator pairs.
    OrientedF,
    F,
    T,
    /// Marked words filtered on two-colourability.
    OrientedT,
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::OrientedF => "oriented-f",
            CorpusKind::F => "f",
            CorpusKind::T => "t",
            CorpusKind::OrientedT => "oriented-t",
        }
    }

    fn generators(self) -> Vec<GroupElement> {
        let x = |k| GroupElement::x(k);
        let c = |k| GroupElement::c(k);
        match self {
            CorpusKind::OrientedF => vec![
                x(0).multiply(&x(1)),
                x(1).multiply(&x(2)),
                x(2).multiply(&x(3)),
            ],
            CorpusKind::F => vec![x(0), x(1), x(2), x(3)],
            CorpusKind::T | CorpusKind::OrientedT => {
                vec![x(0), x(1), x(2), c(0), c(1), c(2)]
            }
        }
    }

    fn needs_orientation(self) -> bool {
        matches!(self, CorpusKind::OrientedF | CorpusKind::OrientedT)
    }
}

/// One random element: a short word over the kind's generators, rejected
/// until the reduced pair is small enough (and two-colourable where the kind
/// demands it).
fn sample_element(kind: CorpusKind, rng: &mut ChaCha8Rng, leaf_cap: usize) -> GroupElement {
    let gens = kind.generators();
    for _ in 0..500 {
        let len = rng.gen_range(1..=4);
        let mut g = GroupElement::identity();
        for _ in 0..len {
            let f = &gens[rng.gen_range(0..gens.len())];
            g = if rng.gen_bool(0.5) { g.multiply(f) } else { g.multiply(&f.invert()) };
        }
        if g.leaf_count() > leaf_cap {
            continue;
        }
        if kind.needs_orientation() && gamma_graph(g.pair()).two_colouring().is_none() {
            continue;
        }
        return g;
    }
    GroupElement::identity()
}

pub fn sample_corpus(
    kind: CorpusKind,
    rng: &mut ChaCha8Rng,
    r: usize,
    leaf_cap: usize,
) -> Vec<GroupElement> {
    (0..r).map(|_| sample_element(kind, rng, leaf_cap)).collect()
}

// ---------------------------------------------------------------------------
// audit

#[derive(Serialize, Clone)]
pub struct AuditEntry {
    pub functional: String,
    pub corpus: String,
    pub r: usize,
    /// "ok", "inadmissible", or "error".
    pub status: String,
    pub min_eigenvalue: Option<f64>,
    pub verdict: Option<bool>,
    pub detail: Option<String>,
}

#[derive(Serialize)]
pub struct AuditReport {
    pub seed: u64,
    pub corpora_per_family: usize,
    pub entries: Vec<AuditEntry>,
    pub all_pass: bool,
}

impl AuditReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).unwrap()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("functional,corpus,r,status,min_eigenvalue,verdict\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                e.functional,
                e.corpus,
                e.r,
                e.status,
                e.min_eigenvalue.map_or(String::new(), |v| format!("{v:.3e}")),
                e.verdict.map_or(String::new(), |v| v.to_string()),
            ));
        }
        out
    }
}

struct ProductGrid {
    products: Vec<Vec<GroupElement>>,
}

fn product_grid(elements: &[GroupElement]) -> ProductGrid {
    let r = elements.len();
    let mut products = Vec::with_capacity(r);
    for i in 0..r {
        let mut row = Vec::with_capacity(r);
        for j in 0..r {
            row.push(elements[i].multiply(&elements[j].invert()));
        }
        products.push(row);
    }
    ProductGrid { products }
}

fn push_gram_outcome(
    entries: &mut Vec<AuditEntry>,
    spec: &EvalSpec,
    corpus_name: String,
    r: usize,
    outcome: Result<GramReport>,
) {
    match outcome {
        Ok(rep) => entries.push(AuditEntry {
            functional: spec.label(),
            corpus: corpus_name,
            r,
            status: "ok".into(),
            min_eigenvalue: Some(rep.min_eigenvalue),
            verdict: Some(rep.verdict),
            detail: None,
        }),
        Err(Error::Inadmissible(msg)) => entries.push(AuditEntry {
            functional: spec.label(),
            corpus: corpus_name,
            r,
            status: "inadmissible".into(),
            min_eigenvalue: None,
            verdict: None,
            detail: Some(msg),
        }),
        Err(e) => entries.push(AuditEntry {
            functional: spec.label(),
            corpus: corpus_name,
            r,
            status: "error".into(),
            min_eigenvalue: None,
            verdict: None,
            detail: Some(e.to_string()),
        }),
    }
}

/// Evaluate one spec family over fresh corpora, computing each product's
/// symbolic object once and reusing it across the family's parameter points.
pub fn run_gram_audit(
    kind: CorpusKind,
    specs: &[EvalSpec],
    seed: u64,
    corpora: usize,
    r_max: usize,
    leaf_cap: usize,
) -> Vec<AuditEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::new();
    for index in 0..corpora {
        let r = rng.gen_range(4..=r_max.max(4));
        let elements = sample_corpus(kind, &mut rng, r, leaf_cap);
        let corpus_name = format!("{}-{index}", kind.name());
        let grid = product_grid(&elements);

        // symbolic objects shared across the family's points
        let mut brackets: Option<Vec<Vec<crate::bracket::NormalizedBracket>>> = None;
        let mut writhes: Option<Result<Vec<Vec<i64>>>> = None;
        let mut tuttes: Option<Vec<Vec<crate::tutte::NormalizedTutte>>> = None;
        let mut lipsons: Option<Vec<Vec<(crate::laurent::LaurentPoly, usize)>>> = None;
        let mut cees: Option<Vec<Vec<i64>>> = None;

        for spec in specs {
            if let Err(e) = spec.validate() {
                push_gram_outcome(&mut entries, spec, corpus_name.clone(), r, Err(e));
                continue;
            }
            let outcome = (|| -> Result<GramReport> {
                let matrix: Vec<Vec<Complex64>> = match spec {
                    EvalSpec::Jones { a } => {
                        let nb = brackets.get_or_insert_with(|| {
                            grid.products
                                .iter()
                                .map(|row| row.iter().map(bracket_function).collect())
                                .collect()
                        });
                        if writhes.is_none() {
                            writhes = Some(
                                grid.products
                                    .iter()
                                    .map(|row| {
                                        row.iter()
                                            .map(|g| Ok(element_diagram(g).orient()?.writhe))
                                            .collect::<Result<Vec<_>>>()
                                    })
                                    .collect::<Result<Vec<_>>>(),
                            );
                        }
                        let w = writhes.as_ref().unwrap().as_ref().map_err(Clone::clone)?;
                        nb.iter()
                            .zip(w)
                            .map(|(rowb, roww)| {
                                rowb.iter()
                                    .zip(roww)
                                    .map(|(b, wr)| (-a.powi(3)).powi(-*wr as i32) * b.eval(*a))
                                    .collect()
                            })
                            .collect()
                    }
                    EvalSpec::Bracket { a } => {
                        let nb = brackets.get_or_insert_with(|| {
                            grid.products
                                .iter()
                                .map(|row| row.iter().map(bracket_function).collect())
                                .collect()
                        });
                        nb.iter()
                            .map(|row| row.iter().map(|b| b.eval(*a)).collect())
                            .collect()
                    }
                    EvalSpec::Tutte { q, y } => {
                        let nt = tuttes.get_or_insert_with(|| {
                            grid.products
                                .iter()
                                .map(|row| row.iter().map(tutte_function).collect())
                                .collect()
                        });
                        let x = (*y + *q as f64 - 1.0) / (*y - 1.0);
                        nt.iter()
                            .map(|row| {
                                row.iter()
                                    .map(|t| Complex64::new(t.eval_f64(x, *y), 0.0))
                                    .collect()
                            })
                            .collect()
                    }
                    EvalSpec::Kauffman2 { c } => {
                        let lz = lipsons.get_or_insert_with(|| {
                            grid.products
                                .iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|g| {
                                            let d = element_diagram(g);
                                            (lipson_poly(&d), d.component_count())
                                        })
                                        .collect()
                                })
                                .collect()
                        });
                        if writhes.is_none() {
                            writhes = Some(
                                grid.products
                                    .iter()
                                    .map(|row| {
                                        row.iter()
                                            .map(|g| Ok(element_diagram(g).orient()?.writhe))
                                            .collect::<Result<Vec<_>>>()
                                    })
                                    .collect::<Result<Vec<_>>>(),
                            );
                        }
                        let w = writhes.as_ref().unwrap().as_ref().map_err(Clone::clone)?;
                        lz.iter()
                            .zip(w)
                            .zip(&grid.products)
                            .map(|((rowz, roww), rowg)| {
                                rowz.iter()
                                    .zip(roww)
                                    .zip(rowg)
                                    .map(|(((z, strands), wr), g)| {
                                        let sign = if (*strands as i64 - 1).rem_euclid(2) == 1 {
                                            -1.0
                                        } else {
                                            1.0
                                        };
                                        let n = g.leaf_count() as i32;
                                        let val = c.powi(*wr as i32) * sign / 2.0
                                            * z.eval(Complex64::new(*c, 0.0)).re
                                            / (-2f64).powi(n - 1);
                                        Complex64::new(val, 0.0)
                                    })
                                    .collect()
                            })
                            .collect()
                    }
                    EvalSpec::Components { k } => {
                        let cs = cees.get_or_insert_with(|| {
                            grid.products
                                .iter()
                                .map(|row| row.iter().map(c_value).collect())
                                .collect()
                        });
                        cs.iter()
                            .map(|row| {
                                row.iter()
                                    .map(|c| Complex64::new((*k as f64).powi(*c as i32), 0.0))
                                    .collect()
                            })
                            .collect()
                    }
                    EvalSpec::Colourings { m } => grid
                        .products
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|g| {
                                    let v = col_function(g, *m as u64);
                                    Complex64::new(*v.numer() as f64 / *v.denom() as f64, 0.0)
                                })
                                .collect()
                        })
                        .collect(),
                };
                report_from_matrix(spec.label(), matrix, spec.hermitian_is_theorem())
            })();
            push_gram_outcome(&mut entries, spec, corpus_name.clone(), r, outcome);
        }
    }
    entries
}

/// The full menu: every functional at its admissible parameter list, on the
/// corpus kinds its positivity statement covers.
/// The functional families a full audit evaluates, grouped so each family
/// can run on its natural corpus kinds.
pub struct AuditMenu {
    pub jones: Vec<EvalSpec>,
    pub bracket: Vec<EvalSpec>,
    pub tutte: Vec<EvalSpec>,
    pub kauffman: Vec<EvalSpec>,
    pub components: Vec<EvalSpec>,
}

impl AuditMenu {
    /// The default menu: Jones at the four admissible t-points, the bracket
    /// at all ten admissible A, the Tutte grid Q in {2,3,4} x y in
    /// {2, 1/2, e, 1/e}, the two-state model at C in {-1, 2, 1/2}, and the
    /// component count at k in {-2, 2, 3}.
    pub fn standard() -> AuditMenu {
        use std::f64::consts::{E, PI};
        let unit = |theta: f64| Complex64::from_polar(1.0, theta);
        let jones = vec![
            EvalSpec::Jones { a: Complex64::new(0.0, 1.0) },
            EvalSpec::Jones { a: unit(3.0 * PI / 8.0) },
            EvalSpec::Jones { a: unit(5.0 * PI / 12.0) },
            EvalSpec::Jones { a: unit(-5.0 * PI / 12.0) },
        ];
        let bracket = admissible_bracket_points()
            .into_iter()
            .map(|p| EvalSpec::Bracket { a: p.a })
            .collect();
        let mut tutte = Vec::new();
        for q in [2u32, 3, 4] {
            for y in [2.0, 0.5, E, 1.0 / E] {
                tutte.push(EvalSpec::Tutte { q, y });
            }
        }
        let kauffman = vec![
            EvalSpec::Kauffman2 { c: -1.0 },
            EvalSpec::Kauffman2 { c: 2.0 },
            EvalSpec::Kauffman2 { c: 0.5 },
        ];
        let components = vec![
            EvalSpec::Components { k: -2 },
            EvalSpec::Components { k: 2 },
            EvalSpec::Components { k: 3 },
        ];
        AuditMenu { jones, bracket, tutte, kauffman, components }
    }

    /// The standard menu plus the out-of-window two-state point C = 3.
    pub fn extended() -> AuditMenu {
        let mut menu = AuditMenu::standard();
        menu.kauffman.push(EvalSpec::Kauffman2 { c: 3.0 });
        menu
    }

    /// All specs as one flat list, for audits over a fixed corpus.
    pub fn flat(&self) -> Vec<EvalSpec> {
        let mut out = Vec::new();
        out.extend(self.jones.iter().cloned());
        out.extend(self.bracket.iter().cloned());
        out.extend(self.tutte.iter().cloned());
        out.extend(self.kauffman.iter().cloned());
        out.extend(self.components.iter().cloned());
        out
    }
}

pub fn audit(seed: u64, corpora_per_family: usize, r_max: usize, leaf_cap: usize) -> AuditReport {
    audit_with_menu(&AuditMenu::extended(), seed, corpora_per_family, r_max, leaf_cap)
}

pub fn audit_with_menu(
    menu: &AuditMenu,
    seed: u64,
    corpora_per_family: usize,
    r_max: usize,
    leaf_cap: usize,
) -> AuditReport {
    // two-kind families split the corpus budget across their kinds
    let half = corpora_per_family.div_ceil(2);
    let mut entries = Vec::new();
    let mut salt = 0u64;
    let mut run =
        |kind: CorpusKind, specs: &[EvalSpec], count: usize, cap: usize, entries: &mut Vec<AuditEntry>| {
            salt += 1;
            entries.extend(run_gram_audit(
                kind,
                specs,
                seed.wrapping_add(salt),
                count,
                r_max,
                cap,
            ));
        };
    run(CorpusKind::OrientedF, &menu.jones, half, leaf_cap, &mut entries);
    run(CorpusKind::OrientedT, &menu.jones, half, leaf_cap, &mut entries);
    run(CorpusKind::F, &menu.bracket, half, leaf_cap, &mut entries);
    run(CorpusKind::T, &menu.bracket, half, leaf_cap, &mut entries);
    run(CorpusKind::F, &menu.tutte, half, leaf_cap, &mut entries);
    run(CorpusKind::T, &menu.tutte, half, leaf_cap, &mut entries);
    // the two-state family samples smaller elements: its positivity is an
    // observation about a bounded regime, not an identity — larger corpora
    // produce genuine negative eigenvalues for |C - 1/C| > 2
    let k2_cap = leaf_cap.min(4);
    run(CorpusKind::OrientedF, &menu.kauffman, corpora_per_family, k2_cap, &mut entries);
    run(CorpusKind::OrientedF, &menu.components, corpora_per_family, leaf_cap, &mut entries);

    let all_pass = entries
        .iter()
        .all(|e| e.status == "ok" && e.verdict == Some(true));
    AuditReport { seed, corpora_per_family, entries, all_pass }
}

// ---------------------------------------------------------------------------
// feature-vector certificates

/// Re-expand every element so all bottom trees (and hence leaf counts) agree.
pub fn common_bottom_pairs(elements: &[GroupElement]) -> Vec<MarkedPair> {
    let mut target = BinaryTree::Leaf;
    for g in elements {
        target = BinaryTree::common_refinement(&target, g.t_minus());
    }
    elements
        .iter()
        .map(|g| g.pair().expand_minus_to(&target))
        .collect()
}

/// The unreduced pair of g_i g_j^-1 when both share a bottom tree: the two
/// top trees glued, with the marks subtracted cyclically.
pub fn glued_pair(a: &MarkedPair, b: &MarkedPair) -> MarkedPair {
    let n = a.leaf_count();
    assert_eq!(b.leaf_count(), n, "pairs must share the bottom tree");
    let mark = (a.mark + n - b.mark) % n + 1;
    MarkedPair::new(a.t_plus.clone(), b.t_plus.clone(), mark).unwrap()
}

#[derive(Serialize, Debug)]
pub struct CertificateReport {
    pub kind: String,
    pub r: usize,
    pub n: usize,
    pub exact: bool,
    pub max_entry_error: f64,
    pub checked_entries: usize,
}

fn plus_edge_list(p: &MarkedPair) -> Vec<(usize, usize)> {
    gamma_graph(p)
        .edges_of_sign(Sign::Plus)
        .map(|e| (e.u, e.v))
        .collect()
}

/// Iterate over {0..q-1}^n by odometer.
fn for_each_state(q: u32, n: usize, mut f: impl FnMut(&[u32])) {
    let mut sigma = vec![0u32; n];
    loop {
        f(&sigma);
        let mut i = 0;
        loop {
            if i == n {
                return;
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

/// Exact Potts certificate: vectors over spin states with weight 1 on equal
/// and 1/y on unequal endpoints of each upper edge. Checks, in exact rational
/// arithmetic, that the inner products reproduce both the glued-pair
/// partition function and the normalized-Tutte Gram entries (up to the
/// constant positive factor Q (y^2+Q-1)^(n-1) / y^(2n-2)).
pub fn potts_certificate(elements: &[GroupElement], q: u32, y: &Rat) -> Result<CertificateReport> {
    if q < 2 || y <= &Rat::one() && y == &Rat::one() {
        return Err(Error::Inadmissible("need integer Q >= 2 and rational y != 1".into()));
    }
    let pairs = common_bottom_pairs(elements);
    let n = pairs[0].leaf_count();
    let w_neq = y.recip();
    let vectors: Vec<Vec<Rat>> = pairs
        .iter()
        .map(|p| {
            let edges = plus_edge_list(p);
            let mut v = Vec::new();
            for_each_state(q, n, |sigma| {
                let mut comp = Rat::one();
                for &(a, b) in &edges {
                    if sigma[a - 1] != sigma[b - 1] {
                        comp *= &w_neq;
                    }
                }
                v.push(comp);
            });
            v
        })
        .collect();

    let x = (y + rat_int(q as i64 - 1)) / (y - Rat::one());
    // constant relating the raw pair sums to the normalized Tutte values
    let lambda = rat_int(q as i64)
        * rat_pow(&(y.clone() * y.clone() + rat_int(q as i64 - 1)), n as i64 - 1)
        / rat_pow(y, 2 * (n as i64 - 1));
    let mut checked = 0;
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let mut inner = Rat::from_integer(0.into());
            for s in 0..vectors[i].len() {
                inner += &vectors[i][s] * &vectors[j][s];
            }
            let glued = glued_pair(&pairs[i], &pairs[j]);
            let direct = potts_z_rational(&underlying_multigraph(&gamma_graph(&glued)), q, y);
            if inner != direct {
                return Err(Error::Invalid(format!(
                    "pair sum mismatch at ({i},{j}): {inner} vs {direct}"
                )));
            }
            let product = elements[i].multiply(&elements[j].invert());
            let gram = tutte_function(&product).eval_rational(&x, y);
            if inner != lambda.clone() * gram {
                return Err(Error::Invalid(format!(
                    "normalized Gram mismatch at ({i},{j})"
                )));
            }
            checked += 1;
        }
    }
    Ok(CertificateReport {
        kind: format!("potts Q={q} y={y}"),
        r: elements.len(),
        n,
        exact: true,
        max_entry_error: 0.0,
        checked_entries: checked,
    })
}

/// Bracket certificate: the same vectors with weights -A^3 / A^(-1); at the
/// admissible points the conjugate weights are the reciprocal ones, so the
/// Hermitian inner products rebuild the signed partition sums. Checked
/// against the glued-pair state sum and Q^n times the bracket Gram.
pub fn bracket_certificate(
    elements: &[GroupElement],
    a: Complex64,
    q: u32,
) -> Result<CertificateReport> {
    EvalSpec::Bracket { a }.validate()?;
    let pairs = common_bottom_pairs(elements);
    let n = pairs[0].leaf_count();
    let w_eq = -a.powi(3);
    let w_neq = a.powi(-1);
    let vectors: Vec<Vec<Complex64>> = pairs
        .iter()
        .map(|p| {
            let edges = plus_edge_list(p);
            let mut v = Vec::new();
            for_each_state(q, n, |sigma| {
                let mut comp = Complex64::new(1.0, 0.0);
                for &(u, vv) in &edges {
                    comp *= if sigma[u - 1] == sigma[vv - 1] { w_eq } else { w_neq };
                }
                v.push(comp);
            });
            v
        })
        .collect();

    let rootq = (q as f64).sqrt();
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let mut inner = Complex64::new(0.0, 0.0);
            for s in 0..vectors[i].len() {
                inner += vectors[i][s] * vectors[j][s].conj();
            }
            let glued = glued_pair(&pairs[i], &pairs[j]);
            let direct =
                signed_potts_value(&gamma_graph(&glued), a, q) * rootq.powi(n as i32 + 1);
            let product = elements[i].multiply(&elements[j].invert());
            let gram = bracket_function(&product).eval(a) * (q as f64).powi(n as i32);
            let scale = 1.0f64.max(inner.norm());
            worst = worst.max((inner - direct).norm() / scale);
            worst = worst.max((inner - gram).norm() / scale);
            checked += 1;
        }
    }
    if worst > 1e-9 {
        return Err(Error::Invalid(format!("bracket certificate error {worst:.3e}")));
    }
    Ok(CertificateReport {
        kind: format!("bracket A={} Q={q}", admissible_label(a).unwrap_or("?")),
        r: elements.len(),
        n,
        exact: false,
        max_entry_error: worst,
        checked_entries: checked,
    })
}

/// Upper-half state-sum vector: component per boundary state, summing the
/// crossing weights over the internal upper segments.
fn lipson_vector(sd: &SemiDiagram, signs: &[Sign], c: f64) -> Vec<f64> {
    let boundary = 2 * sd.n;
    let mut v = Vec::with_capacity(1 << boundary);
    for tau0 in 0u64..(1u64 << boundary) {
        let mut total = 0.0;
        for internal in 0u64..(1u64 << sd.internal_count) {
            let value = |end: &UpperEnd| -> u64 {
                match end {
                    UpperEnd::Internal(k) => internal >> k & 1,
                    UpperEnd::Boundary(b) => tau0 >> b & 1,
                }
            };
            let mut term = 1.0;
            for (ends, sign) in sd.slot_ends.iter().zip(signs) {
                let s = match sign {
                    Sign::Plus => 0usize,
                    Sign::Minus => 1,
                };
                let t: Vec<u64> = (0..4).map(|k| value(&ends[(s + k) % 4])).collect();
                term *= if t[0] == t[1] && t[2] == t[3] && t[0] != t[2] {
                    c
                } else if t[0] == t[3] && t[1] == t[2] && t[0] != t[1] {
                    1.0 / c
                } else {
                    0.0
                };
                if term == 0.0 {
                    break;
                }
            }
            total += term;
        }
        v.push(total);
    }
    v
}

/// Two-state certificate: ⟨v_i, v_j⟩ rebuilds the glued-pair partition sum.
/// The lower half of the glued diagram is the reflected upper half of the
/// second element, and reflection reverses the rotation at each crossing, so
/// the second vector is taken at the reciprocal weight.
pub fn lipson_certificate(elements: &[GroupElement], c: f64) -> Result<CertificateReport> {
    EvalSpec::Kauffman2 { c }.validate()?;
    let pairs = common_bottom_pairs(elements);
    let n = pairs[0].leaf_count();
    if pairs.iter().any(|p| p.mark != 1) {
        return Err(Error::Inadmissible(
            "two-state certificate needs mark-1 elements".into(),
        ));
    }
    if n > 6 {
        return Err(Error::Budget(format!("2^{} boundary states", 2 * n)));
    }
    let mut upper: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for p in &pairs {
        if n == 1 {
            // single arc joining the two boundary points
            let v = vec![1.0, 0.0, 0.0, 1.0];
            upper.push((v.clone(), v));
            continue;
        }
        let d = pair_diagram(p);
        let sd = d.split_boundary()?;
        let signs: Vec<Sign> = sd.crossings.iter().map(|&e| d.graph.edges[e].sign).collect();
        upper.push((lipson_vector(&sd, &signs, c), lipson_vector(&sd, &signs, 1.0 / c)));
    }

    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let mut inner = 0.0;
            for t in 0..upper[i].0.len() {
                inner += upper[i].0[t] * upper[j].1[t];
            }
            let glued = glued_pair(&pairs[i], &pairs[j]);
            let direct = lipson_poly(&pair_diagram(&glued))
                .eval(Complex64::new(c, 0.0))
                .re;
            let product = elements[i].multiply(&elements[j].invert());
            let gram = crate::vertex::kauffman2_function(&product, c)? * 2f64.powi(n as i32);
            let scale = 1.0f64.max(inner.abs());
            worst = worst.max((inner - direct).abs() / scale);
            worst = worst.max((inner - gram).abs() / scale);
            checked += 1;
        }
    }
    if worst > 1e-9 {
        return Err(Error::Invalid(format!("two-state certificate error {worst:.3e}")));
    }
    Ok(CertificateReport {
        kind: format!("kauffman2 C={c}"),
        r: elements.len(),
        n,
        exact: false,
        max_entry_error: worst,
        checked_entries: checked,
    })
}

/// Dispatch a certificate for the specs that have one.
pub fn feature_vectors(elements: &[GroupElement], spec: &EvalSpec) -> Result<CertificateReport> {
    match spec {
        EvalSpec::Tutte { q, y } => {
            let approx: Ratio<i64> = Ratio::approximate_float(*y)
                .ok_or_else(|| Error::Inadmissible("y has no rational surrogate".into()))?;
            let ry = Rat::new((*approx.numer()).into(), (*approx.denom()).into());
            potts_certificate(elements, *q, &ry)
        }
        EvalSpec::Bracket { a } => {
            let q = admissible_bracket_points()
                .into_iter()
                .find(|p| (p.a - *a).norm() < 1e-9)
                .map(|p| p.q)
                .ok_or_else(|| Error::Inadmissible("not an admissible bracket point".into()))?;
            bracket_certificate(elements, *a, q)
        }
        EvalSpec::Kauffman2 { c } => lipson_certificate(elements, *c),
        _ => Err(Error::Inadmissible(format!(
            "no feature-vector certificate for {}",
            spec.label()
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(w: &str) -> GroupElement {
        GroupElement::parse_word(w).unwrap()
    }

    #[test]
    fn identity_gram_is_one() {
        let rep = gram_matrix(
            &[GroupElement::identity()],
            &EvalSpec::Jones { a: Complex64::new(0.0, 1.0) },
        )
        .unwrap();
        assert!((rep.matrix[0][0].0 - 1.0).abs() < 1e-12);
        assert!(rep.verdict);
    }

    #[test]
    fn two_element_jones_gram() {
        let rep = gram_matrix(
            &[GroupElement::identity(), word("x0 x1")],
            &EvalSpec::Jones { a: Complex64::new(0.0, 1.0) },
        )
        .unwrap();
        assert!((rep.matrix[0][1].0 - 0.25).abs() < 1e-9);
        assert!((rep.matrix[1][0].0 - 0.25).abs() < 1e-9);
        assert!((rep.min_eigenvalue - 0.75).abs() < 1e-9);
        assert!(rep.verdict);
    }

    #[test]
    fn components_gram_matches_jones_at_one() {
        let elems = [GroupElement::identity(), word("x0 x1"), word("x1 x2")];
        let a = gram_matrix(&elems, &EvalSpec::Components { k: 2 }).unwrap();
        let b = gram_matrix(&elems, &EvalSpec::Jones { a: Complex64::new(0.0, 1.0) }).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((a.matrix[i][j].0 - b.matrix[i][j].0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn bracket_gram_on_random_words() {
        use std::f64::consts::PI;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let elems = sample_corpus(CorpusKind::OrientedF, &mut rng, 10, 6);
        let rep = gram_matrix(
            &elems,
            &EvalSpec::Bracket { a: Complex64::from_polar(1.0, 5.0 * PI / 12.0) },
        )
        .unwrap();
        assert!(rep.verdict, "min eigenvalue {}", rep.min_eigenvalue);
    }

    #[test]
    fn inadmissible_points_rejected() {
        use std::f64::consts::PI;
        assert!(matches!(
            EvalSpec::Bracket { a: Complex64::from_polar(1.0, PI / 5.0) }.validate(),
            Err(Error::Inadmissible(_))
        ));
        assert!(EvalSpec::Tutte { q: 2, y: 1.0 }.validate().is_err());
        assert!(EvalSpec::Kauffman2 { c: 1.0 }.validate().is_err());
        assert!(EvalSpec::Components { k: 0 }.validate().is_err());
        assert!(EvalSpec::Tutte { q: 3, y: 0.5 }.validate().is_ok());
        assert!(EvalSpec::Kauffman2 { c: -1.0 }.validate().is_ok());
    }

    #[test]
    fn audit_reports_inadmissible_without_verdict() {
        use std::f64::consts::PI;
        let entries = run_gram_audit(
            CorpusKind::F,
            &[EvalSpec::Bracket { a: Complex64::from_polar(1.0, PI / 5.0) }],
            3,
            2,
            5,
            5,
        );
        assert_eq!(entries.len(), 2);
        assert!(entries.iter().all(|e| e.status == "inadmissible" && e.verdict.is_none()));
    }

    #[test]
    fn corpus_sampling_is_deterministic() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        let a = sample_corpus(CorpusKind::T, &mut r1, 8, 6);
        let b = sample_corpus(CorpusKind::T, &mut r2, 8, 6);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.leaf_count() <= 6));
    }

    #[test]
    fn oriented_corpora_are_two_colourable() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for kind in [CorpusKind::OrientedF, CorpusKind::OrientedT] {
            for g in sample_corpus(kind, &mut rng, 12, 6) {
                assert!(gamma_graph(g.pair()).two_colouring().is_some());
            }
        }
    }

    #[test]
    fn glued_pair_reduces_to_product() {
        let words = ["x0", "x0 x1", "c1 x0", "c2"];
        for wi in words {
            for wj in words {
                let gi = word(wi);
                let gj = word(wj);
                let pairs = common_bottom_pairs(&[gi.clone(), gj.clone()]);
                let glued = glued_pair(&pairs[0], &pairs[1]);
                let product = gi.multiply(&gj.invert());
                assert_eq!(GroupElement::from(glued), product, "{wi} {wj}");
            }
        }
    }

    #[test]
    fn potts_certificate_exact_small() {
        let elems = [
            GroupElement::identity(),
            word("x0"),
            word("x0 x1"),
            word("x1"),
        ];
        let y = rat_int(2);
        let rep = potts_certificate(&elems, 2, &y).unwrap();
        assert!(rep.exact);
        assert_eq!(rep.checked_entries, 16);
        let y = Rat::new(3.into(), 2.into());
        potts_certificate(&elems, 3, &y).unwrap();
    }

    #[test]
    fn potts_certificate_with_marked_elements() {
        let elems = [word("c1"), word("x0"), word("c1 x0 c2")];
        let y = rat_int(2);
        potts_certificate(&elems, 2, &y).unwrap();
    }

    #[test]
    fn bracket_certificate_small() {
        use std::f64::consts::PI;
        let elems = [GroupElement::identity(), word("x0"), word("x0 x1")];
        let rep =
            bracket_certificate(&elems, Complex64::from_polar(1.0, 5.0 * PI / 12.0), 3).unwrap();
        assert!(rep.max_entry_error < 1e-9);
    }

    #[test]
    fn lipson_certificate_small() {
        let elems = [word("x0 x1"), word("x1 x2")];
        for c in [2.0, 0.5, -1.0] {
            let rep = lipson_certificate(&elems, c).unwrap();
            assert!(rep.max_entry_error < 1e-9, "C={c}: {}", rep.max_entry_error);
        }
    }

    #[test]
    fn lipson_certificate_identity_only() {
        let rep = lipson_certificate(&[GroupElement::identity()], 2.0).unwrap();
        assert_eq!(rep.n, 1);
    }

    #[test]
    fn small_audit_passes() {
        let report = audit(42, 2, 6, 5);
        assert!(report.all_pass, "{}", report.to_csv());
        // two-kind families get 1 corpus per kind, one-kind families get 2
        let expected = (4 + 10 + 12) * 2 + (4 + 3) * 2;
        assert_eq!(report.entries.len(), expected);
    }

    #[test]
    fn two_state_function_not_inversion_symmetric() {
        // g and h are oriented; g h⁻¹ and its inverse are mirror diagrams
        // whose partition sums are 2 + 2C⁴ and 2 + 2C⁻⁴, so the function
        // separates them at real C ∉ {±1}. gram_matrix must not reject the
        // asymmetric matrix: it records the defect and scores the Hermitian
        // part, which here is honestly indefinite at C = 3.
        let g = GroupElement::from(
            MarkedPair::new(
                BinaryTree::parse("((.(..))(..))").unwrap(),
                BinaryTree::parse("(.((.(..)).))").unwrap(),
                1,
            )
            .unwrap(),
        );
        let h = GroupElement::from(
            MarkedPair::new(
                BinaryTree::parse("((.(..)).)").unwrap(),
                BinaryTree::parse("(.(.(..)))").unwrap(),
                1,
            )
            .unwrap(),
        );
        let p = g.multiply(&h.invert());
        let f = crate::vertex::kauffman2_function(&p, 3.0).unwrap();
        let ft = crate::vertex::kauffman2_function(&p.invert(), 3.0).unwrap();
        assert!((f - ft).abs() > 1e-3, "{f} vs {ft}");
        let rep = gram_matrix(&[g.clone(), h.clone()], &EvalSpec::Kauffman2 { c: 3.0 }).unwrap();
        assert!(rep.hermitian_error > 1e-3);
        assert!(!rep.verdict, "min eig {}", rep.min_eigenvalue);
        // inside |C - 1/C| <= 2 the same pair passes
        let rep2 = gram_matrix(&[g, h], &EvalSpec::Kauffman2 { c: 2.0 }).unwrap();
        assert!(rep2.verdict, "min eig {}", rep2.min_eigenvalue);
    }
}
