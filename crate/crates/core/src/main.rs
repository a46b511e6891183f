//! Command-line surface: element reports, single invariant evaluations, and
//! positivity audits over sampled corpora, corpus files, or the pair census.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use thompson_links::bracket::{bracket_function, jones_branch};
use thompson_links::diagram::{c_value, element_diagram};
use thompson_links::enumeration::{census, Census, JONES_SAMPLE_LABELS};
use thompson_links::fox::{col_function, fox_colourings};
use thompson_links::laurent::LaurentPoly;
use thompson_links::positivity::{
    audit_with_menu, evaluate, gram_matrix, AuditEntry, AuditMenu, AuditReport, EvalSpec,
};
use thompson_links::{gamma_graph, jones_function, BinaryTree, GroupElement};

#[derive(Parser)]
#[command(
    name = "thompson-links",
    version,
    about = "Tree-pair group elements, their link diagrams, and positivity audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Describe one element: reduced pair, orientation, c, writhe, graph
    Element(ElementArgs),
    /// Evaluate one invariant function at one parameter point
    Invariant(InvariantArgs),
    /// Positivity audit over sampled corpora, a corpus file, or the census
    Audit(AuditArgs),
}

#[derive(Args)]
struct ElementArgs {
    /// Word in the generators ("x0 x1^-1 c2"; "." is the identity)
    input: Option<String>,
    /// Word given as a flag instead of positionally
    #[arg(long = "word")]
    word: Option<String>,
    /// Explicit pair literal "T+,T-,mark", e.g. "((..).),(.(..)),1"
    #[arg(long = "element")]
    element: Option<String>,
    /// Print the report as one JSON object
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InvariantArgs {
    /// Functional by name: jones|bracket|tutte|kauffman2|components|colourings
    #[arg(long)]
    functional: Option<String>,
    #[arg(long)]
    jones: bool,
    #[arg(long)]
    bracket: bool,
    #[arg(long)]
    tutte: bool,
    #[arg(long)]
    kauffman2: bool,
    #[arg(long)]
    components: bool,
    #[arg(long)]
    colourings: bool,
    /// Jones parameter t: real, "re,im", "i", or "exp(5ipi/12)"
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Bracket variable A (same formats as --t)
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    /// Potts state count Q (integer >= 2)
    #[arg(long = "Q")]
    q: Option<u32>,
    /// Potts coupling K; the Tutte point is evaluated at y = exp(K)
    #[arg(long = "K", allow_negative_numbers = true)]
    coupling: Option<f64>,
    /// Two-state weight C (real, not 0 or 1)
    #[arg(long = "C", allow_negative_numbers = true)]
    c: Option<f64>,
    /// Component-count base k (nonzero integer)
    #[arg(long = "k", allow_negative_numbers = true)]
    k: Option<i64>,
    /// Colouring modulus m >= 2
    #[arg(long)]
    m: Option<u64>,
    /// Report whether the parameter point is admissible for positivity
    #[arg(long)]
    psd: bool,
    /// Print the Laurent polynomial (bracket and jones only)
    #[arg(long)]
    symbolic: bool,
    #[arg(long)]
    json: bool,
    /// Word in the generators ("." is the identity)
    input: Option<String>,
    #[arg(long = "word")]
    word: Option<String>,
    #[arg(long = "element")]
    element: Option<String>,
}

#[derive(Args)]
struct AuditArgs {
    /// Corpus file: one word or pair literal per line, '#' comments
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Audit the exhaustive pair census at n leaves instead of corpora
    #[arg(long)]
    census: Option<usize>,
    #[arg(long, default_value_t = 20260816)]
    seed: u64,
    /// Relative eigenvalue tolerance for the positivity verdict
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Corpora sampled per functional family (sampled mode)
    #[arg(long, default_value_t = 4)]
    corpora: usize,
    /// Largest Gram matrix size (sampled mode)
    #[arg(long, default_value_t = 8)]
    r_max: usize,
    /// Leaf-count cap for sampled words (sampled mode)
    #[arg(long, default_value_t = 8)]
    leaf_cap: usize,
    /// Add the out-of-window two-state point C = 3 to the menu
    #[arg(long)]
    extended: bool,
    /// Directory receiving the JSON and CSV reports
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout
    #[arg(long)]
    json: bool,
    /// Print the CSV report to stdout
    #[arg(long)]
    csv: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Element(a) => cmd_element(a),
        Command::Invariant(a) => cmd_invariant(a),
        Command::Audit(a) => cmd_audit(a),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

// ---------------------------------------------------------------------------
// element parsing shared by all commands

fn parse_element_spec(s: &str) -> Result<GroupElement, String> {
    let t = s.trim();
    if t == "." || t.is_empty() {
        return Ok(GroupElement::identity());
    }
    if t.contains(',') {
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(format!("pair literal must be \"T+,T-,mark\", got {} fields", parts.len()));
        }
        let t_plus = BinaryTree::parse(parts[0]).map_err(|e| e.to_string())?;
        let t_minus = BinaryTree::parse(parts[1]).map_err(|e| e.to_string())?;
        let mark: usize = parts[2]
            .parse()
            .map_err(|_| format!("mark '{}' is not a positive integer", parts[2]))?;
        return GroupElement::new(t_plus, t_minus, mark).map_err(|e| e.to_string());
    }
    GroupElement::parse_word(t).map_err(|e| e.to_string())
}

fn resolve_element(
    input: &Option<String>,
    word: &Option<String>,
    element: &Option<String>,
) -> Result<GroupElement, String> {
    let given = [input, word, element].iter().filter(|o| o.is_some()).count();
    if given == 0 {
        return Err("no element given; pass a word, --word, or --element".into());
    }
    if given > 1 {
        return Err("give the element exactly once".into());
    }
    if let Some(e) = element {
        return parse_element_spec(e);
    }
    parse_element_spec(word.as_deref().or(input.as_deref()).unwrap())
}

// ---------------------------------------------------------------------------
// value formatting

fn fmt_real(x: f64) -> String {
    let snapped = (x * 1e12).round() / 1e12;
    if snapped == 0.0 {
        "0".into()
    } else {
        format!("{snapped}")
    }
}

fn fmt_value(v: Complex64) -> String {
    if v.im.abs() < 1e-12 {
        fmt_real(v.re)
    } else if v.re.abs() < 1e-12 {
        format!("{}i", fmt_real(v.im))
    } else if v.im < 0.0 {
        format!("{}-{}i", fmt_real(v.re), fmt_real(-v.im))
    } else {
        format!("{}+{}i", fmt_real(v.re), fmt_real(v.im))
    }
}

/// Accepts reals ("1", "-0.5"), cartesian pairs ("re,im"), "i"/"-i", and
/// unit-circle constants like "exp(5ipi/12)" or "exp(-i*pi/3)".
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.trim().replace([' ', '*'], "");
    if t == "i" {
        return Ok(Complex64::new(0.0, 1.0));
    }
    if t == "-i" {
        return Ok(Complex64::new(0.0, -1.0));
    }
    if let Some(inner) = t.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
        return parse_unit_exponent(inner);
    }
    if let Some((re, im)) = t.split_once(',') {
        let re: f64 = re.parse().map_err(|_| format!("bad real part '{re}'"))?;
        let im: f64 = im.parse().map_err(|_| format!("bad imaginary part '{im}'"))?;
        return Ok(Complex64::new(re, im));
    }
    t.parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .map_err(|_| format!("cannot parse '{s}' as a number"))
}

/// Inner part of exp(...): an optional sign, optional integer coefficient,
/// "ipi" (or "i·pi"), and an optional "/denominator".
fn parse_unit_exponent(inner: &str) -> Result<Complex64, String> {
    let mut rest = inner;
    let mut sign = 1.0;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1.0;
        rest = r;
    } else if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    let Some(at) = rest.find("ipi") else {
        return Err(format!("exponent '{inner}' must contain 'ipi'"));
    };
    let coeff_str = &rest[..at];
    let coeff: f64 = if coeff_str.is_empty() {
        1.0
    } else {
        coeff_str
            .parse()
            .map_err(|_| format!("bad coefficient '{coeff_str}' in '{inner}'"))?
    };
    let tail = &rest[at + 3..];
    let denom: f64 = if tail.is_empty() {
        1.0
    } else if let Some(d) = tail.strip_prefix('/') {
        d.parse().map_err(|_| format!("bad denominator '{d}' in '{inner}'"))?
    } else {
        return Err(format!("unexpected '{tail}' after 'ipi' in '{inner}'"));
    };
    Ok(Complex64::from_polar(1.0, sign * coeff * std::f64::consts::PI / denom))
}

// ---------------------------------------------------------------------------
// element

fn cmd_element(args: ElementArgs) -> Result<ExitCode, String> {
    let g = resolve_element(&args.input, &args.word, &args.element)?;
    let graph = gamma_graph(g.pair());
    let oriented = graph.is_bipartite();
    let c = c_value(&g);
    let writhe = if oriented {
        Some(element_diagram(&g).writhe().map_err(|e| e.to_string())?)
    } else {
        None
    };
    let graph_json = serde_json::to_value(&graph).unwrap();
    if args.json {
        let mut report = json!({
            "t_plus": g.t_plus().to_string(),
            "t_minus": g.t_minus().to_string(),
            "n": g.leaf_count(),
            "mark": g.mark(),
            "oriented": oriented,
            "c": c,
            "gamma": graph_json,
        });
        if let Some(w) = writhe {
            report["writhe"] = json!(w);
        }
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("element: {g}");
        println!("t_plus: {}", g.t_plus());
        println!("t_minus: {}", g.t_minus());
        println!("n: {}", g.leaf_count());
        println!("mark: {}", g.mark());
        println!("oriented: {oriented}");
        println!("c: {c}");
        if let Some(w) = writhe {
            println!("writhe: {w}");
        }
        println!("gamma: {graph_json}");
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// invariant

enum Functional {
    Jones,
    Bracket,
    Tutte,
    Kauffman2,
    Components,
    Colourings,
}

fn resolve_functional(args: &InvariantArgs) -> Result<Functional, String> {
    let mut picks = Vec::new();
    if args.jones {
        picks.push(Functional::Jones);
    }
    if args.bracket {
        picks.push(Functional::Bracket);
    }
    if args.tutte {
        picks.push(Functional::Tutte);
    }
    if args.kauffman2 {
        picks.push(Functional::Kauffman2);
    }
    if args.components {
        picks.push(Functional::Components);
    }
    if args.colourings {
        picks.push(Functional::Colourings);
    }
    if let Some(name) = &args.functional {
        picks.push(match name.as_str() {
            "jones" => Functional::Jones,
            "bracket" => Functional::Bracket,
            "tutte" | "potts" => Functional::Tutte,
            "kauffman2" | "two-state" => Functional::Kauffman2,
            "components" => Functional::Components,
            "colourings" | "colorings" => Functional::Colourings,
            other => return Err(format!("unknown functional '{other}'")),
        });
    }
    match picks.len() {
        0 => Err("pick a functional: --jones, --bracket, --tutte, --kauffman2, --components, or --colourings".into()),
        1 => Ok(picks.pop().unwrap()),
        _ => Err("pick exactly one functional".into()),
    }
}

fn require<T: Copy>(opt: &Option<T>, flag: &str) -> Result<T, String> {
    opt.ok_or_else(|| format!("this functional needs {flag}"))
}

fn bracket_symbolic(g: &GroupElement, writhe_shift: bool) -> Result<String, String> {
    let nb = bracket_function(g);
    let mut poly = nb.poly.clone();
    if writhe_shift {
        let w = element_diagram(g).writhe().map_err(|e| e.to_string())?;
        let coeff = if w % 2 == 0 { 1 } else { -1 };
        poly = poly.mul(&LaurentPoly::monomial(-3 * w, coeff));
    }
    Ok(if nb.delta_power == 0 {
        format!("{poly}")
    } else {
        format!("({poly}) / delta^{}", nb.delta_power)
    })
}

fn cmd_invariant(args: InvariantArgs) -> Result<ExitCode, String> {
    let g = resolve_element(&args.input, &args.word, &args.element)?;
    let functional = resolve_functional(&args)?;

    let mut lines: Vec<(String, String)> = Vec::new();
    let mut out = json!({});
    let spec;
    match functional {
        Functional::Jones => {
            let t_str = args.t.as_deref().ok_or("jones needs --t")?;
            let t = parse_complex(t_str)?;
            let a = jones_branch(t);
            spec = EvalSpec::Jones { a };
            lines.push(("t".into(), fmt_value(t)));
            lines.push(("A".into(), fmt_value(a)));
            out["t"] = json!([t.re, t.im]);
            out["A"] = json!([a.re, a.im]);
            if args.symbolic {
                let s = bracket_symbolic(&g, true)?;
                lines.push(("symbolic".into(), s.clone()));
                out["symbolic"] = json!(s);
            }
        }
        Functional::Bracket => {
            let a_str = args.a.as_deref().ok_or("bracket needs --A")?;
            let a = parse_complex(a_str)?;
            spec = EvalSpec::Bracket { a };
            lines.push(("A".into(), fmt_value(a)));
            out["A"] = json!([a.re, a.im]);
            if args.symbolic {
                let s = bracket_symbolic(&g, false)?;
                lines.push(("symbolic".into(), s.clone()));
                out["symbolic"] = json!(s);
            }
        }
        Functional::Tutte => {
            let q = require(&args.q, "--Q")?;
            let k = require(&args.coupling, "--K")?;
            let y = k.exp();
            spec = EvalSpec::Tutte { q, y };
            spec.validate().map_err(|e| e.to_string())?;
            lines.push(("Q".into(), q.to_string()));
            lines.push(("K".into(), fmt_real(k)));
            lines.push(("y".into(), fmt_real(y)));
            out["Q"] = json!(q);
            out["K"] = json!(k);
            out["y"] = json!(y);
        }
        Functional::Kauffman2 => {
            let c = require(&args.c, "--C")?;
            spec = EvalSpec::Kauffman2 { c };
            spec.validate().map_err(|e| e.to_string())?;
            lines.push(("C".into(), fmt_real(c)));
            out["C"] = json!(c);
        }
        Functional::Components => {
            let k = require(&args.k, "--k")?;
            spec = EvalSpec::Components { k };
            spec.validate().map_err(|e| e.to_string())?;
            lines.push(("k".into(), k.to_string()));
            out["k"] = json!(k);
        }
        Functional::Colourings => {
            let m = require(&args.m, "--m")?;
            spec = EvalSpec::Colourings { m: m as u32 };
            spec.validate().map_err(|e| e.to_string())?;
            let raw = fox_colourings(&element_diagram(&g), m);
            let normalized = col_function(&g, m);
            lines.push(("m".into(), m.to_string()));
            lines.push(("raw".into(), raw.to_string()));
            lines.push(("normalized".into(), normalized.to_string()));
            out["m"] = json!(m);
            out["raw"] = json!(raw.to_string());
            out["normalized"] = json!(normalized.to_string());
            return finish_invariant(&spec, args.psd, args.json, lines, out, None);
        }
    }

    let value = evaluate(&g, &spec).map_err(|e| e.to_string())?;
    finish_invariant(&spec, args.psd, args.json, lines, out, Some(value))
}

fn finish_invariant(
    spec: &EvalSpec,
    psd: bool,
    as_json: bool,
    lines: Vec<(String, String)>,
    mut out: serde_json::Value,
    value: Option<Complex64>,
) -> Result<ExitCode, String> {
    let admissible = spec.validate().is_ok();
    out["functional"] = json!(spec.label());
    if psd {
        out["admissible"] = json!(admissible);
    }
    if let Some(v) = value {
        out["value"] = json!([v.re, v.im]);
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
        return Ok(ExitCode::SUCCESS);
    }
    println!("functional: {}", spec.label());
    for (k, v) in lines {
        println!("{k}: {v}");
    }
    if psd {
        if admissible {
            println!("positivity: admissible");
        } else {
            println!("positivity: inadmissible for positivity; value printed");
        }
    }
    if let Some(v) = value {
        println!("value: {}", fmt_value(v));
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// audit

fn cmd_audit(args: AuditArgs) -> Result<ExitCode, String> {
    if let Some(n) = args.census {
        return census_audit(n, &args);
    }
    let menu = if args.extended { AuditMenu::extended() } else { AuditMenu::standard() };
    let report = if let Some(path) = &args.corpus {
        corpus_audit(path, &menu, args.tol, args.seed)?
    } else {
        audit_with_menu(&menu, args.seed, args.corpora, args.r_max, args.leaf_cap)
    };
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        write_file(&dir.join("audit.json"), &serde_json::to_string_pretty(&report.to_json()).unwrap())?;
        write_file(&dir.join("audit.csv"), &report.to_csv())?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    }
    if args.csv {
        print!("{}", report.to_csv());
    }
    if !args.json && !args.csv {
        print_audit_summary(&report);
    }
    Ok(if report.all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn write_file(path: &Path, contents: &str) -> Result<(), String> {
    fs::write(path, contents).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn corpus_audit(
    path: &Path,
    menu: &AuditMenu,
    tol: f64,
    seed: u64,
) -> Result<AuditReport, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut elements = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let s = line.split('#').next().unwrap().trim();
        if s.is_empty() {
            continue;
        }
        let g = parse_element_spec(s).map_err(|e| format!("{}:{}: {e}", path.display(), idx + 1))?;
        elements.push(g);
    }
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".into());
    let mut entries = Vec::new();
    if elements.is_empty() {
        return Ok(AuditReport { seed, corpora_per_family: 0, entries, all_pass: true });
    }
    let oriented = elements.iter().all(|g| gamma_graph(g.pair()).is_bipartite());
    for spec in menu.flat() {
        if spec.requires_orientation() && !oriented {
            entries.push(AuditEntry {
                functional: spec.label(),
                corpus: name.clone(),
                r: elements.len(),
                status: "inapplicable".into(),
                min_eigenvalue: None,
                verdict: None,
                detail: Some("corpus contains non-oriented elements".into()),
            });
            continue;
        }
        match gram_matrix(&elements, &spec) {
            Ok(rep) => {
                let verdict = rep.min_eigenvalue >= -tol * rep.norm_inf.max(1.0);
                entries.push(AuditEntry {
                    functional: spec.label(),
                    corpus: name.clone(),
                    r: rep.r,
                    status: "ok".into(),
                    min_eigenvalue: Some(rep.min_eigenvalue),
                    verdict: Some(verdict),
                    detail: None,
                });
            }
            Err(e) => entries.push(AuditEntry {
                functional: spec.label(),
                corpus: name.clone(),
                r: elements.len(),
                status: "error".into(),
                min_eigenvalue: None,
                verdict: Some(false),
                detail: Some(e.to_string()),
            }),
        }
    }
    let all_pass = entries
        .iter()
        .all(|e| e.status == "inapplicable" || (e.status == "ok" && e.verdict == Some(true)));
    Ok(AuditReport { seed, corpora_per_family: 0, entries, all_pass })
}

fn print_audit_summary(report: &AuditReport) {
    struct Agg {
        grams: usize,
        failures: usize,
        errors: usize,
        inapplicable: usize,
        min_eig: f64,
    }
    let mut by_functional: BTreeMap<&str, Agg> = BTreeMap::new();
    for e in &report.entries {
        let agg = by_functional.entry(&e.functional).or_insert(Agg {
            grams: 0,
            failures: 0,
            errors: 0,
            inapplicable: 0,
            min_eig: f64::INFINITY,
        });
        agg.grams += 1;
        match e.status.as_str() {
            "ok" => {
                if e.verdict != Some(true) {
                    agg.failures += 1;
                }
                if let Some(m) = e.min_eigenvalue {
                    agg.min_eig = agg.min_eig.min(m);
                }
            }
            "inapplicable" | "inadmissible" => agg.inapplicable += 1,
            _ => agg.errors += 1,
        }
    }
    for (label, agg) in &by_functional {
        let mut line = format!("{label}: {} gram(s)", agg.grams);
        if agg.min_eig.is_finite() {
            line.push_str(&format!(", min eig {:.3e}", agg.min_eig));
        }
        if agg.inapplicable > 0 {
            line.push_str(&format!(", {} inapplicable", agg.inapplicable));
        }
        if agg.errors > 0 {
            line.push_str(&format!(", {} ERROR(S)", agg.errors));
        }
        if agg.failures > 0 {
            line.push_str(&format!(", {} FAILED", agg.failures));
        } else if agg.errors == 0 {
            line.push_str(", pass");
        }
        println!("{line}");
    }
    println!(
        "audit: {}",
        if report.all_pass { "all specs pass" } else { "FAILURES RECORDED" }
    );
}

// ---------------------------------------------------------------------------
// census audit

fn catalan(k: usize) -> usize {
    let mut binom: u128 = 1;
    for i in 1..=k {
        binom = binom * (k + i) as u128 / i as u128;
    }
    (binom / (k as u128 + 1).max(1)) as usize
}

fn census_checks(cen: &Census, tol: f64) -> Vec<(String, bool)> {
    use std::f64::consts::PI;
    let mut checks = Vec::new();
    let want_trees = catalan(cen.n_leaves - 1);
    checks.push((format!("tree count = {want_trees}"), cen.trees.len() == want_trees));
    let symmetric = cen
        .c_values
        .iter()
        .all(|(&(i, j), &c)| cen.c(j, i) == Some(c));
    checks.push(("c table symmetric".into(), symmetric));
    let diagonal = (1..=cen.trees.len()).all(|i| cen.c(i, i) == Some(0));
    checks.push(("diagonal pairs have c = 0".into(), diagonal));
    if cen.n_leaves == 5 {
        let multiset = cen.c_multiset();
        checks.push((
            "seven unordered pairs with c = -2".into(),
            multiset.get(&-2) == Some(&7),
        ));
        checks.push((
            "one unordered pair with c = -4".into(),
            multiset.get(&-4) == Some(&1),
        ));
        let stray: usize = multiset
            .iter()
            .filter(|(&c, _)| c != 0 && c != -2 && c != -4)
            .map(|(_, &k)| k)
            .sum();
        checks.push(("no other nonzero c values".into(), stray == 0));
    }

    let mut writhe_ok = true;
    let mut parity_ok = true;
    let mut jones_ok = true;
    let mut col_ok = true;
    for &(i, j) in &cen.bipartite_pairs {
        let g = cen.element(i, j).expect("census indices valid");
        writhe_ok &= element_diagram(&g).writhe().map_or(false, |w| w == 0);
        let c = cen.c(i, j).unwrap();
        parity_ok &= c <= 0 && c % 2 == 0;
        let v1 = jones_function(&g, jones_branch(Complex64::new(1.0, 0.0))).unwrap();
        jones_ok &= (v1 - 2f64.powi(c as i32)).norm() <= tol;
        let v3 = jones_function(&g, jones_branch(Complex64::from_polar(1.0, PI / 3.0))).unwrap();
        let col = col_function(&g, 3);
        let col_f = *col.numer() as f64 / *col.denom() as f64;
        col_ok &= (col_f - v3.norm_sqr()).abs() <= tol;
    }
    checks.push(("writhe = 0 on all bipartite pairs".into(), writhe_ok));
    checks.push(("c even and nonpositive".into(), parity_ok));
    checks.push(("V(1) = 2^c".into(), jones_ok));
    checks.push((
        format!("3-colouring count = |V(t={})|^2", JONES_SAMPLE_LABELS[2]),
        col_ok,
    ));
    checks
}

fn census_audit(n: usize, args: &AuditArgs) -> Result<ExitCode, String> {
    let cen = census(n).map_err(|e| e.to_string())?;
    let tol = args.tol.max(1e-12);
    let checks = census_checks(&cen, tol);
    let all_pass = checks.iter().all(|(_, ok)| *ok);

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        let doc = json!({
            "checks": checks.iter().map(|(name, ok)| json!({"name": name, "pass": ok})).collect::<Vec<_>>(),
            "census": cen.to_json(),
        });
        write_file(&dir.join("census.json"), &serde_json::to_string_pretty(&doc).unwrap())?;
        write_file(&dir.join("census.csv"), &cen.to_csv())?;
    }
    if args.json {
        let doc = json!({
            "checks": checks.iter().map(|(name, ok)| json!({"name": name, "pass": ok})).collect::<Vec<_>>(),
            "census": cen.to_json(),
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else if args.csv {
        print!("{}", cen.to_csv());
    } else {
        println!(
            "census n={}: {} trees, {} bipartite ordered pairs",
            cen.n_leaves,
            cen.trees.len(),
            cen.bipartite_pairs.len()
        );
        for (name, ok) in &checks {
            println!("{}: {name}", if *ok { "pass" } else { "FAIL" });
        }
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
