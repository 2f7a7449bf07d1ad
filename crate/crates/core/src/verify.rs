//! The verification harness: named checks over corpus entries or files,
//! each producing a deterministic report.

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bicat::{bridge_check, check_2category, is_equivalence_css, is_equivalence_qcat, HomTable};
use crate::bisset::{
    box_product, classifying_diagram, classifying_map, column_comparisons, ho, is_complete_1trunc, is_dk_equivalence,
    segal_check_strict, TruncBiSSet, Window,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::fincat::{
    count_functors, interval_category, is_categorical_equivalence, is_isomorphic, product_category,
    FinCat, Functor,
};
use crate::formats;
use crate::sset::{
    count_maps, is_isomorphic as sset_iso, j_space, nerve, nerve_map, product, standard_simplex,
    tau1, tau1_functor, TruncSSet,
};
use crate::totalize::{adjunction_count_check, counit, nerve_comparison, t_lower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    WindowInsufficient,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::WindowInsufficient => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::WindowInsufficient => "window-insufficient",
        }
    }
}

/// Exit code for inputs that cannot be resolved or parsed.
pub const INPUT_ERROR: i32 = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub anchor: String,
    pub inputs: Vec<String>,
    /// The window (or simplicial level) the check ran at.
    pub window: Option<String>,
    pub verdict: Outcome,
    pub witness: Value,
    /// Only filled in on request, so that reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

/// A registered check: its name, the statement it tests, the number of
/// inputs and the window used when none is given.
#[derive(Clone, Copy, Debug)]
pub struct CheckInfo {
    pub name: &'static str,
    pub anchor: &'static str,
    pub inputs: &'static [&'static str],
    pub window: Option<Window>,
}

const W22: Option<Window> = Some(Window::new(2, 2));

pub const CHECKS: &[CheckInfo] = &[
    CheckInfo {
        name: "adjunction-count",
        anchor: "fundamental category is left adjoint to the nerve",
        inputs: &["simplicial set", "category"],
        window: None,
    },
    CheckInfo {
        name: "tau1-product",
        anchor: "fundamental category preserves finite products",
        inputs: &["n", "m"],
        window: None,
    },
    CheckInfo {
        name: "strict-segal",
        anchor: "classifying diagram satisfies the strict Segal condition",
        inputs: &["bisimplicial set"],
        window: None,
    },
    CheckInfo {
        name: "classifying-row0",
        anchor: "row zero of the classifying diagram is the nerve",
        inputs: &["category"],
        window: None,
    },
    CheckInfo {
        name: "classifying-columns",
        anchor: "columns of the classifying diagram are nerves of isomorphism groupoids of functor categories",
        inputs: &["category"],
        window: None,
    },
    CheckInfo {
        name: "ho-reconstruction",
        anchor: "homotopy category of a Segal space is its fundamental category",
        inputs: &["category"],
        window: W22,
    },
    CheckInfo {
        name: "complete-1trunc",
        anchor: "classifying diagrams are complete Segal spaces",
        inputs: &["bisimplicial set"],
        window: W22,
    },
    CheckInfo {
        name: "tupper-classifying",
        anchor: "totalization right adjoint sends nerves to classifying diagrams",
        inputs: &["category"],
        window: None,
    },
    CheckInfo {
        name: "tlower-box",
        anchor: "totalization left adjoint sends box products to products with J",
        inputs: &["n", "m"],
        window: W22,
    },
    CheckInfo {
        name: "transposition",
        anchor: "totalization left adjoint is left adjoint to the right adjoint",
        inputs: &["bisimplicial set", "simplicial set"],
        window: W22,
    },
    CheckInfo {
        name: "counit-tau1-iso",
        anchor: "fundamental category of the totalization counit is an isomorphism",
        inputs: &["simplicial set"],
        window: W22,
    },
    CheckInfo {
        name: "2cat-axioms-qcat",
        anchor: "quasicategories form a 2-category",
        inputs: &["simplicial set", "simplicial set", "simplicial set"],
        window: None,
    },
    CheckInfo {
        name: "2cat-axioms-css",
        anchor: "complete Segal spaces form a 2-category",
        inputs: &["bisimplicial set", "bisimplicial set", "bisimplicial set"],
        window: W22,
    },
    CheckInfo {
        name: "equivalence-css",
        anchor: "equivalences of complete Segal spaces are Dwyer-Kan equivalences",
        inputs: &["functor"],
        window: W22,
    },
    CheckInfo {
        name: "equivalence-nerve",
        anchor: "nerve reflects and preserves equivalences",
        inputs: &["functor"],
        window: None,
    },
    CheckInfo {
        name: "bridge",
        anchor: "totalization induces an isomorphism of homotopy 2-categories",
        inputs: &["simplicial set", "simplicial set"],
        window: W22,
    },
];

pub fn check_info(name: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.name == name)
}

/// Levels used for simplicial inputs that do not carry a window.
const SSET_DIM: usize = 2;
const ADJUNCTION_DIM: usize = 3;

enum Problem {
    Input(Error),
    Compute(Error),
}

impl From<Error> for Problem {
    fn from(e: Error) -> Self {
        Problem::Compute(e)
    }
}

type Checked<T> = std::result::Result<T, Problem>;

fn input<T>(r: Result<T>) -> Checked<T> {
    r.map_err(Problem::Input)
}

fn unknown(kind: &str, id: &str) -> Problem {
    Problem::Input(Error::Config(format!("unknown {kind} `{id}`")))
}

fn read(path: &str) -> Checked<String> {
    std::fs::read_to_string(path).map_err(|e| Problem::Input(Error::Config(format!("{path}: {e}"))))
}

fn has_ext(id: &str, ext: &str) -> bool {
    Path::new(id).extension().is_some_and(|e| e == ext)
}

fn load_category(id: &str) -> Checked<FinCat> {
    if has_ext(id, "fincat") {
        return input(formats::parse_fincat(&read(id)?));
    }
    corpus::category(id).ok_or_else(|| unknown("category", id))
}

fn load_sset(id: &str, d: usize) -> Checked<TruncSSet> {
    if has_ext(id, "sset") {
        return input(formats::parse_sset(&read(id)?));
    }
    corpus::simplicial(id, d).ok_or_else(|| unknown("simplicial set", id))
}

/// Without a window, corpus entries use their bundled one.
fn load_bisset(id: &str, window: Option<Window>) -> Checked<TruncBiSSet> {
    if has_ext(id, "bisset") {
        return input(formats::parse_bisset(&read(id)?));
    }
    input(corpus::bisimplicial(id, window))
}

fn load_functor(id: &str) -> Checked<Functor> {
    corpus::functor(id).ok_or_else(|| unknown("functor", id))
}

fn small(id: &str) -> Checked<usize> {
    id.parse()
        .ok()
        .filter(|&n| n <= 4)
        .ok_or_else(|| Problem::Input(Error::Config(format!("expected a dimension up to 4, found `{id}`"))))
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn sizes(c: &FinCat) -> Value {
    json!([c.num_objects(), c.num_morphisms()])
}

/// Runs a named check. An `Err` means the request itself was malformed or
/// an input could not be resolved; everything else is a report.
pub fn run_check(name: &str, inputs: &[String], window: Option<Window>) -> Result<VerificationReport> {
    let info = check_info(name).ok_or_else(|| Error::Config(format!("unknown check `{name}`")))?;
    if inputs.len() != info.inputs.len() {
        return Err(Error::Config(format!(
            "check `{name}` takes {} input(s): {}",
            info.inputs.len(),
            info.inputs.join(", ")
        )));
    }
    let window = window.or(info.window);
    let start = Instant::now();
    let ids: Vec<&str> = inputs.iter().map(String::as_str).collect();
    let (used, verdict, witness) = match evaluate(name, &ids, window) {
        Ok((used, outcome, witness)) => (used, outcome, witness),
        Err(Problem::Input(e)) => return Err(e),
        Err(Problem::Compute(Error::WindowInsufficient { what, required })) => (
            window.map(|w| w.to_string()),
            Outcome::WindowInsufficient,
            json!({ "what": what, "required": required }),
        ),
        Err(Problem::Compute(e)) => (window.map(|w| w.to_string()), Outcome::Fail, json!({ "error": e.to_string() })),
    };
    Ok(VerificationReport {
        check: name.to_string(),
        anchor: info.anchor.to_string(),
        inputs: inputs.to_vec(),
        window: used,
        verdict,
        witness,
        wall_time_ms: Some(start.elapsed().as_millis() as u64),
    })
}

type Evaluated = (Option<String>, Outcome, Value);

fn evaluate(name: &str, ids: &[&str], window: Option<Window>) -> Checked<Evaluated> {
    let w = window.unwrap_or(Window::new(2, 2));
    let shown = Some(w.to_string());
    let level = |d: usize| Some(format!("level {d}"));
    Ok(match name {
        "adjunction-count" => {
            let d = window.map_or(ADJUNCTION_DIM, |w| w.p);
            let x = load_sset(ids[0], d)?;
            let c = load_category(ids[1])?;
            let maps = count_maps(&x, &nerve(&c, d))?;
            let functors = count_functors(&tau1(&x)?.cat, &c);
            (level(d), verdict(maps == functors), json!({ "maps": maps, "functors": functors }))
        }
        "tau1-product" => {
            let (n, m) = (small(ids[0])?, small(ids[1])?);
            let d = window.map_or(2, |w| w.p);
            let x = product(&standard_simplex(n, d), &standard_simplex(m, d))?;
            let t = tau1(&x)?;
            let expect = product_category(&interval_category(n), &interval_category(m));
            let ok = is_isomorphic(&t.cat, &expect);
            (level(d), verdict(ok), json!({ "tau1": sizes(&t.cat), "expected": sizes(&expect) }))
        }
        "strict-segal" => {
            let x = load_bisset(ids[0], window)?;
            let v = segal_check_strict(&x);
            (Some(x.window().to_string()), verdict(v.holds()), json!(v))
        }
        "classifying-row0" | "classifying-columns" => {
            let c = load_category(ids[0])?;
            let w = window.unwrap_or_else(|| corpus::window_for(ids[0]));
            let x = classifying_diagram(&c, w);
            let mut failures = Vec::new();
            if name == "classifying-row0" {
                let row = x.row(0)?;
                if !sset_iso(&row, &nerve(&c, row.dim())) {
                    failures.push(0);
                }
            } else {
                for (n, f) in column_comparisons(&c, w)?.iter().enumerate() {
                    if !f.is_isomorphism() {
                        failures.push(n);
                    }
                }
            }
            (Some(w.to_string()), verdict(failures.is_empty()), json!({ "failing": failures }))
        }
        "ho-reconstruction" => {
            let c = load_category(ids[0])?;
            let h = ho(&classifying_diagram(&c, w))?;
            let ok = is_isomorphic(&h.cat, &c);
            (shown, verdict(ok), json!({ "ho": sizes(&h.cat), "expected": sizes(&c) }))
        }
        "complete-1trunc" => {
            let x = load_bisset(ids[0], Some(w))?;
            let v = is_complete_1trunc(&x)?;
            (shown, verdict(v.holds()), json!(v))
        }
        "tupper-classifying" => {
            let c = load_category(ids[0])?;
            let w = window.unwrap_or_else(|| corpus::window_for(ids[0]));
            let f = nerve_comparison(&c, w)?;
            let ok = f.is_isomorphism();
            (Some(w.to_string()), verdict(ok), json!({ "counts": f.target.counts() }))
        }
        "tlower-box" => {
            let (n, m) = (small(ids[0])?, small(ids[1])?);
            let b = box_product(&standard_simplex(n, w.p), &standard_simplex(m, w.q));
            let l = t_lower(&b, w.p)?;
            let expect = product(&standard_simplex(n, w.p), &j_space(m, w.p))?;
            let ok = sset_iso(&l, &expect);
            (shown, verdict(ok), json!({ "lower": l.counts(), "expected": expect.counts() }))
        }
        "transposition" => {
            let y = load_bisset(ids[0], Some(w))?;
            let x = load_sset(ids[1], w.p)?;
            let r = adjunction_count_check(&y, &x)?;
            (shown, verdict(r.bijection && r.left == r.right), json!(r))
        }
        "counit-tau1-iso" => {
            let x = load_sset(ids[0], w.p)?;
            let e = counit(&x, w, w.p)?;
            let (ts, tt) = (tau1(&e.source)?, tau1(&e.target)?);
            let functor = tau1_functor(&e, &ts, &tt)?;
            let vertices = e.source.count(0) == e.target.count(0) && {
                let mut seen = e.level(0).to_vec();
                seen.sort_unstable();
                seen.dedup();
                seen.len() == e.target.count(0)
            };
            let ok = functor.is_isomorphism() && vertices;
            (shown, verdict(ok), json!({ "tau1_iso": functor.is_isomorphism(), "vertex_bijection": vertices }))
        }
        "2cat-axioms-qcat" => {
            let d = window.map_or(SSET_DIM, |w| w.p);
            let objs = ids.iter().map(|id| load_sset(id, d)).collect::<Checked<Vec<_>>>()?;
            let r = check_2category(&HomTable::qcat(&objs)?)?;
            (level(d), verdict(r.verdict.holds()), json!(r))
        }
        "2cat-axioms-css" => {
            let objs = ids.iter().map(|id| load_bisset(id, Some(w))).collect::<Checked<Vec<_>>>()?;
            let r = check_2category(&HomTable::css(&objs, Window::total2())?)?;
            (shown, verdict(r.verdict.holds()), json!(r))
        }
        "equivalence-css" => {
            let f = classifying_map(&load_functor(ids[0])?, w)?;
            let dk = is_dk_equivalence(&f)?;
            let two = is_equivalence_css(&f)?;
            let agree = dk.holds() == two.holds();
            (shown, verdict(agree), json!({ "dk": dk.holds(), "equivalence": two.holds(), "search": two }))
        }
        "equivalence-nerve" => {
            let d = window.map_or(SSET_DIM, |w| w.p);
            let f = load_functor(ids[0])?;
            let cat = is_categorical_equivalence(&f);
            let two = is_equivalence_qcat(&nerve_map(&f, d)?)?;
            let agree = cat.holds() == two.holds();
            (level(d), verdict(agree), json!({ "categorical": cat.holds(), "equivalence": two.holds(), "search": two }))
        }
        "bridge" => {
            let x = load_sset(ids[0], w.p)?;
            let y = load_sset(ids[1], w.p)?;
            let r = bridge_check(&x, &y, w)?;
            (shown, verdict(r.dk.holds() && r.hom_level), json!(r))
        }
        _ => unreachable!("registered check without an evaluator"),
    })
}

/// One entry of a suite configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRequest {
    pub check: String,
    pub inputs: Vec<String>,
    /// `[p, q]` or `[p, q, total]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub checks: Vec<CheckRequest>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputError {
    pub check: String,
    pub inputs: Vec<String>,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub results: Vec<VerificationReport>,
    pub input_errors: Vec<InputError>,
    pub passed: usize,
    pub failed: usize,
    pub window_insufficient: usize,
}

impl SuiteReport {
    pub fn exit_code(&self) -> i32 {
        if !self.input_errors.is_empty() {
            INPUT_ERROR
        } else if self.failed > 0 {
            1
        } else if self.window_insufficient > 0 {
            2
        } else {
            0
        }
    }

    /// Drops wall times so that the report is reproducible.
    pub fn without_timings(mut self) -> SuiteReport {
        for r in &mut self.results {
            r.wall_time_ms = None;
        }
        self
    }
}

pub fn parse_window(spec: &[usize]) -> Result<Window> {
    match *spec {
        [p, q] => Ok(Window::new(p, q)),
        [p, q, t] => Ok(Window::with_total(p, q, t)),
        _ => Err(Error::Config(format!("a window is [p, q] or [p, q, total], found {spec:?}"))),
    }
}

impl CheckRequest {
    pub fn new(check: &str, inputs: &[&str]) -> CheckRequest {
        CheckRequest {
            check: check.to_string(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            window: None,
        }
    }

    pub fn run(&self) -> Result<VerificationReport> {
        let window = self.window.as_deref().map(parse_window).transpose()?;
        run_check(&self.check, &self.inputs, window)
    }
}

// The map searches recurse once per generator.
const WORKER_STACK: usize = 256 << 20;

/// Runs every request, in parallel, and orders the results by check name
/// and then inputs.
pub fn verify_suite(config: &SuiteConfig) -> SuiteReport {
    let next = AtomicUsize::new(0);
    let done = Mutex::new(Vec::new());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(config.checks.len().max(1));
    std::thread::scope(|s| {
        for _ in 0..workers {
            std::thread::Builder::new()
                .stack_size(WORKER_STACK)
                .spawn_scoped(s, || loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(req) = config.checks.get(i) else { break };
                    let r = req.run();
                    done.lock().expect("no worker panics while holding the lock").push((i, r));
                })
                .expect("spawn verification worker");
        }
    });
    let mut results = Vec::new();
    let mut input_errors = Vec::new();
    for (i, r) in done.into_inner().expect("workers finished") {
        let req = &config.checks[i];
        match r {
            Ok(report) => results.push(report),
            Err(e) => input_errors.push(InputError {
                check: req.check.clone(),
                inputs: req.inputs.clone(),
                error: e.to_string(),
            }),
        }
    }
    results.sort_by(|a, b| (&a.check, &a.inputs, &a.window).cmp(&(&b.check, &b.inputs, &b.window)));
    input_errors.sort_by(|a, b| (&a.check, &a.inputs).cmp(&(&b.check, &b.inputs)));
    let count = |o: Outcome| results.iter().filter(|r| r.verdict == o).count();
    SuiteReport {
        passed: count(Outcome::Pass),
        failed: count(Outcome::Fail),
        window_insufficient: count(Outcome::WindowInsufficient),
        results,
        input_errors,
    }
}

/// The bundled suite over the corpus.
pub fn default_suite() -> SuiteConfig {
    let mut checks = Vec::new();
    let cats = ["[1]", "[2]", "I[1]", "idem"];
    for x in ["D2", "L2_1", "G3", "J1", "D1xD1"] {
        for c in cats {
            checks.push(CheckRequest::new("adjunction-count", &[x, c]));
        }
    }
    for n in ["0", "1", "2"] {
        for m in ["0", "1", "2"] {
            checks.push(CheckRequest::new("tau1-product", &[n, m]));
            checks.push(CheckRequest::new("tlower-box", &[n, m]));
        }
    }
    for c in corpus::CATEGORIES {
        let classifying = format!("C{c}");
        checks.push(CheckRequest::new("strict-segal", &[&classifying]));
        checks.push(CheckRequest::new("classifying-row0", &[c]));
        checks.push(CheckRequest::new("classifying-columns", &[c]));
        checks.push(CheckRequest::new("ho-reconstruction", &[c]));
        checks.push(CheckRequest::new("complete-1trunc", &[&classifying]));
        checks.push(CheckRequest::new("tupper-classifying", &[c]));
    }
    for (y, x) in TRANSPOSITION_PAIRS {
        checks.push(CheckRequest::new("transposition", &[y, x]));
    }
    for x in ["N[1]", "N[2]", "NI[1]"] {
        checks.push(CheckRequest::new("counit-tau1-iso", &[x]));
    }
    checks.push(CheckRequest::new("2cat-axioms-qcat", &["D0", "N[1]", "NI[1]"]));
    checks.push(CheckRequest::new("2cat-axioms-css", &["C[0]", "C[1]", "CI[1]"]));
    for f in EQUIVALENCE_FUNCTORS {
        checks.push(CheckRequest::new("equivalence-css", &[f]));
        checks.push(CheckRequest::new("equivalence-nerve", &[f]));
    }
    for (x, y) in BRIDGE_PAIRS {
        checks.push(CheckRequest::new("bridge", &[x, y]));
    }
    SuiteConfig { checks }
}

pub const TRANSPOSITION_PAIRS: [(&str, &str); 6] = [
    ("box:D1:D0", "N[1]"),
    ("box:D0:D1", "N[1]"),
    ("terminal", "N[1]"),
    ("box:D1:D0", "NI[1]"),
    ("box:D1:D1", "N[1]"),
    ("box:D0:D1", "N[2]"),
];

pub const EQUIVALENCE_FUNCTORS: [&str; 4] = ["I[1]>[0]", "[0]>I[1]", "[0]>[1]", "[1]>I[1]"];

pub const BRIDGE_PAIRS: [(&str, &str); 3] = [("D0", "N[1]"), ("N[1]", "N[1]"), ("NI[1]", "N[1]")];

/// A plain-text table of a suite report.
pub fn render_table(report: &SuiteReport) -> String {
    let mut rows = vec![[
        "check".to_string(),
        "inputs".to_string(),
        "window".to_string(),
        "verdict".to_string(),
        "ms".to_string(),
    ]];
    for r in &report.results {
        rows.push([
            r.check.clone(),
            r.inputs.join(" "),
            r.window.clone().unwrap_or_default(),
            r.verdict.label().to_string(),
            r.wall_time_ms.map(|t| t.to_string()).unwrap_or_default(),
        ]);
    }
    for e in &report.input_errors {
        rows.push([e.check.clone(), e.inputs.join(" "), String::new(), "input-error".into(), String::new()]);
    }
    let widths: Vec<usize> = (0..5).map(|i| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "{} passed, {} failed, {} window-insufficient, {} input errors\n",
        report.passed,
        report.failed,
        report.window_insufficient,
        report.input_errors.len()
    ));
    for e in &report.input_errors {
        out.push_str(&format!("{} {}: {}\n", e.check, e.inputs.join(" "), e.error));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(check: &str, inputs: &[&str]) -> VerificationReport {
        CheckRequest::new(check, inputs).run().unwrap()
    }

    #[test]
    fn documented_anchors_match_the_registry() {
        let doc = include_str!("../../../docs/checks.md");
        let rows: Vec<(&str, &str)> = doc
            .lines()
            .map(|l| l.split('|').map(str::trim).collect::<Vec<_>>())
            .filter(|cells| cells.len() == 7 && cells[1].starts_with('`'))
            .map(|cells| (cells[1].trim_matches('`'), cells[2]))
            .collect();
        let registered: Vec<(&str, &str)> = CHECKS.iter().map(|c| (c.name, c.anchor)).collect();
        assert_eq!(rows, registered);
    }

    #[test]
    fn registry_is_consistent() {
        let mut names: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CHECKS.len());
        for req in default_suite().checks {
            assert!(check_info(&req.check).is_some(), "{}", req.check);
        }
    }

    #[test]
    fn spec_examples() {
        let r = run("strict-segal", &["C[2]"]);
        assert_eq!(r.verdict, Outcome::Pass);
        assert_eq!(r.window.as_deref(), Some("(3,3)"));
        let r = run("complete-1trunc", &["box:NI[1]:D0"]);
        assert_eq!(r.verdict, Outcome::Fail);
        assert!(r.witness.to_string().contains("Components"), "{}", r.witness);
        let r = run("counit-tau1-iso", &["N[2]"]);
        assert_eq!(r.verdict, Outcome::Pass);
    }

    #[test]
    fn input_errors_and_windows() {
        assert!(CheckRequest::new("nope", &[]).run().is_err());
        assert!(CheckRequest::new("strict-segal", &["Cnope"]).run().is_err());
        assert!(CheckRequest::new("strict-segal", &["C[1]", "C[2]"]).run().is_err());
        let mut req = CheckRequest::new("ho-reconstruction", &["[1]"]);
        req.window = Some(vec![1, 1]);
        assert_eq!(req.run().unwrap().verdict, Outcome::WindowInsufficient);
    }

    #[test]
    fn suites() {
        let empty = verify_suite(&SuiteConfig::default());
        assert!(empty.results.is_empty());
        assert_eq!(empty.exit_code(), 0);
        let config = SuiteConfig {
            checks: vec![
                CheckRequest::new("tau1-product", &["1", "1"]),
                CheckRequest::new("adjunction-count", &["D2", "[1]"]),
                CheckRequest::new("complete-1trunc", &["box:NI[1]:D0"]),
            ],
        };
        let a = verify_suite(&config).without_timings();
        let b = verify_suite(&config).without_timings();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert_eq!(a.results[0].check, "adjunction-count");
        assert_eq!((a.passed, a.failed), (2, 1));
        assert_eq!(a.exit_code(), 1);
        assert!(render_table(&a).contains("complete-1trunc"));
    }
}
