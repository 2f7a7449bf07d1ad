//! `segal`: command-line front end for the core library.
//!
//! Inputs are corpus identifiers (`[1]`, `I[1]`, `N[2]`, `D1xD1`,
//! `C[1]`, `box:D1:D0`, ...) or paths to `.fincat`, `.sset` and `.bisset`
//! files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use segal_core::bicat::{
    bridge_check, hom_category_css, hom_category_qcat, is_equivalence_css, is_equivalence_qcat,
};
use segal_core::bisset::{
    classifying_diagram, classifying_map, ho, is_complete_1trunc, is_dk_equivalence, j_functor,
    reedy_fibrancy_check, segal_check_strict, TruncBiSSet, Window,
};
use segal_core::fincat::{is_categorical_equivalence, FinCat, Functor};
use segal_core::sset::{nerve, nerve_map, tau1, TruncSSet};
use segal_core::totalize::{t_lower_checked, t_upper};
use segal_core::verify::{self, CheckRequest, Outcome, SuiteConfig, INPUT_ERROR};
use segal_core::{corpus, formats, Error};

#[derive(Parser)]
#[command(name = "segal", version, about = "Finite checks for quasicategories and complete Segal spaces")]
struct Cli {
    /// Truncation level for simplicial inputs.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Bidegree window for bisimplicial inputs.
    #[arg(long, global = true, num_args = 2, value_names = ["P", "Q"])]
    window: Option<Vec<usize>>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental category of a simplicial set.
    Tau1 { input: String },
    /// Nerve of a category.
    Nerve { category: String },
    /// Classifying diagram of a category.
    Classify { category: String },
    /// Strict Segal condition and vertical Reedy fibrancy.
    Segal { input: String },
    /// Completeness at the level of homotopy 1-types.
    Complete { input: String },
    /// Homotopy category of a Segal space.
    Ho { input: String },
    /// Comparison functor from the vertex column to the homotopy category.
    Jfun { input: String },
    /// Right totalization adjoint of a simplicial set.
    Tshriek { input: String },
    /// Left totalization adjoint of a bisimplicial set.
    Tlower { input: String },
    /// Fundamental category of the totalization counit.
    CounitCheck { input: String },
    /// Hom-category between two quasicategories or two Segal spaces.
    Homcat { source: String, target: String },
    /// Search for a quasi-inverse of a bundled functor's nerve or classifying map.
    EquivSearch {
        functor: String,
        /// Use the classifying map instead of the nerve.
        #[arg(long)]
        css: bool,
    },
    /// Compare the hom-spaces of quasicategories with those of their totalizations.
    BridgeCheck { source: String, target: String },
    /// Dwyer-Kan equivalence test for the classifying map of a bundled functor.
    DkEquiv { functor: String },
    /// Run named checks, a suite file, or the bundled suite.
    Verify {
        /// A JSON suite configuration.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Run one check with the given inputs.
        #[arg(long)]
        check: Option<String>,
        inputs: Vec<String>,
        /// Record wall times (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
        /// List the registered checks.
        #[arg(long)]
        list: bool,
    },
}

/// What a command produced: a document, its rendering, and the exit code.
struct Output {
    value: Value,
    human: String,
    code: u8,
}

impl Output {
    fn new(value: Value, human: String) -> Output {
        Output { value, human, code: 0 }
    }

    fn verdict(value: Value, human: String, holds: bool) -> Output {
        Output {
            value,
            human,
            code: if holds { 0 } else { 1 },
        }
    }
}

fn has_ext(id: &str, ext: &str) -> bool {
    Path::new(id).extension().is_some_and(|e| e == ext)
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{path}: {e}")))
}

struct Loader {
    dim: usize,
    window: Window,
    explicit_window: bool,
}

impl Loader {
    fn category(&self, id: &str) -> Result<FinCat, Error> {
        if has_ext(id, "fincat") {
            return formats::parse_fincat(&read(id)?);
        }
        corpus::category(id).ok_or_else(|| Error::Config(format!("unknown category `{id}`")))
    }

    fn sset(&self, id: &str) -> Result<TruncSSet, Error> {
        if has_ext(id, "sset") {
            return formats::parse_sset(&read(id)?);
        }
        corpus::simplicial(id, self.dim).ok_or_else(|| Error::Config(format!("unknown simplicial set `{id}`")))
    }

    fn bisset(&self, id: &str) -> Result<TruncBiSSet, Error> {
        if has_ext(id, "bisset") {
            return formats::parse_bisset(&read(id)?);
        }
        corpus::bisimplicial(id, self.explicit_window.then_some(self.window))
    }

    fn is_sset(&self, id: &str) -> bool {
        has_ext(id, "sset") || corpus::simplicial(id, 0).is_some()
    }

    fn functor(&self, id: &str) -> Result<Functor, Error> {
        corpus::functor(id).ok_or_else(|| Error::Config(format!("unknown functor `{id}`")))
    }
}

fn category_json(c: &FinCat) -> Value {
    let morphisms: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| json!({ "name": m.name, "src": c.objects()[m.src], "tgt": c.objects()[m.tgt] }))
        .collect();
    json!({ "objects": c.objects(), "morphisms": morphisms })
}

fn category_text(c: &FinCat) -> String {
    let mut s = format!("{} objects, {} morphisms\n", c.num_objects(), c.num_morphisms());
    for m in c.morphisms() {
        if !c.is_identity(c.morphism_index(&m.name).unwrap_or(0)) {
            s.push_str(&format!("  {}: {} -> {}\n", m.name, c.objects()[m.src], c.objects()[m.tgt]));
        }
    }
    s
}

fn counts_text(counts: &[((usize, usize), usize)]) -> String {
    counts
        .iter()
        .map(|((n, m), k)| format!("  ({n},{m}): {k}\n"))
        .collect::<Vec<_>>()
        .concat()
}

fn run(cli: &Cli) -> Result<Output, Error> {
    let explicit_window = cli.window.is_some();
    let window = match cli.window.as_deref() {
        Some(w) => verify::parse_window(w)?,
        None => Window::new(3, 3),
    };
    let dim = cli.dim.unwrap_or(3);
    let load = Loader {
        dim,
        window,
        explicit_window,
    };
    Ok(match &cli.command {
        Command::Tau1 { input } => {
            let t = tau1(&load.sset(input)?)?;
            Output::new(json!({ "tau1": category_json(&t.cat) }), category_text(&t.cat))
        }
        Command::Nerve { category } => {
            let x = nerve(&load.category(category)?, dim);
            let human = format!("cells per level: {:?}\nnondegenerate: {:?}\n", x.counts(), x.generator_counts());
            Output::new(json!({ "dim": dim, "counts": x.counts(), "generators": x.generator_counts() }), human)
        }
        Command::Classify { category } => {
            let w = if explicit_window { window } else { corpus::window_for(category) };
            let x = classifying_diagram(&load.category(category)?, w);
            let counts = x.counts();
            Output::new(
                json!({ "window": w.to_string(), "counts": counts }),
                format!("window {w}\n{}", counts_text(&counts)),
            )
        }
        Command::Segal { input } => {
            let x = load.bisset(input)?;
            let strict = segal_check_strict(&x);
            let reedy = reedy_fibrancy_check(&x, x.window().q.min(2))?;
            let holds = strict.holds() && reedy.verdict.holds();
            let human = format!(
                "window {}\nstrict Segal: {}\nReedy fibrant up to level {}: {}\n",
                x.window(),
                strict.holds(),
                x.window().q.min(2),
                reedy.verdict.holds()
            );
            Output::verdict(json!({ "window": x.window().to_string(), "strict": strict, "reedy": reedy }), human, holds)
        }
        Command::Complete { input } => {
            let x = load.bisset(input)?;
            let v = is_complete_1trunc(&x)?;
            let human = format!("window {}\ncomplete (1-truncated): {}\n", x.window(), v.holds());
            Output::verdict(json!({ "window": x.window().to_string(), "verdict": v }), human, v.holds())
        }
        Command::Ho { input } => {
            let x = load.bisset(input)?;
            let h = ho(&x)?;
            Output::new(
                json!({ "window": x.window().to_string(), "ho": category_json(&h.cat) }),
                format!("window {}\n{}", x.window(), category_text(&h.cat)),
            )
        }
        Command::Jfun { input } => {
            let x = load.bisset(input)?;
            let j = j_functor(&x)?;
            let iso = j.functor.is_isomorphism();
            Output::new(
                json!({ "window": x.window().to_string(), "edge_image": j.edge_image, "isomorphism": iso }),
                format!("window {}\nedge images: {:?}\nisomorphism: {iso}\n", x.window(), j.edge_image),
            )
        }
        Command::Tshriek { input } => {
            let u = t_upper(&load.sset(input)?, window)?;
            let counts = u.counts();
            Output::new(
                json!({ "window": window.to_string(), "counts": counts }),
                format!("window {window}\n{}", counts_text(&counts)),
            )
        }
        Command::Tlower { input } => {
            let y = load.bisset(input)?;
            let l = t_lower_checked(&y, dim)?;
            let t = tau1(&l.carrier)?;
            Output::new(
                json!({
                    "window": y.window().to_string(),
                    "counts": l.carrier.counts(),
                    "exact": l.exact,
                    "tau1": category_json(&t.cat),
                }),
                format!(
                    "window {}\ncells per level: {:?}\nexact: {}\ntau1: {}",
                    y.window(),
                    l.carrier.counts(),
                    l.exact,
                    category_text(&t.cat)
                ),
            )
        }
        Command::CounitCheck { input } => {
            let w = explicit_window.then_some(window);
            let r = verify::run_check("counit-tau1-iso", &[input.clone()], w)?;
            report_output(r)
        }
        Command::Homcat { source, target } => {
            let h = if load.is_sset(source) && load.is_sset(target) {
                hom_category_qcat(&load.sset(source)?, &load.sset(target)?)?
            } else {
                hom_category_css(&load.bisset(source)?, &load.bisset(target)?, Window::total2())?
            };
            Output::new(
                json!({ "side": h.side, "window": h.window, "hom": category_json(&h.carrier) }),
                format!("window {}\n{}", h.window, category_text(&h.carrier)),
            )
        }
        Command::EquivSearch { functor, css } => {
            let f = load.functor(functor)?;
            let r = if *css {
                let w = if explicit_window { window } else { Window::new(2, 2) };
                is_equivalence_css(&classifying_map(&f, w)?)?
            } else {
                is_equivalence_qcat(&nerve_map(&f, cli.dim.unwrap_or(2))?)?
            };
            let human = format!(
                "window {}\ncandidates examined: {}\nequivalence: {}\ncategorical equivalence: {}\n",
                r.window,
                r.candidates,
                r.holds(),
                is_categorical_equivalence(&f).holds()
            );
            Output::verdict(serde_json::to_value(&r).map_err(|e| Error::Config(e.to_string()))?, human, r.holds())
        }
        Command::BridgeCheck { source, target } => {
            let w = if explicit_window { window } else { Window::new(2, 2) };
            let l = Loader { dim: w.p, ..load };
            let r = bridge_check(&l.sset(source)?, &l.sset(target)?, w)?;
            let holds = r.dk.holds() && r.hom_level;
            let human = format!(
                "window {}\nisomorphism: {}\nDwyer-Kan (1-truncated): {}\nhom-categories agree: {}\n",
                r.window,
                r.isomorphism,
                r.dk.holds(),
                r.hom_level
            );
            Output::verdict(serde_json::to_value(&r).map_err(|e| Error::Config(e.to_string()))?, human, holds)
        }
        Command::DkEquiv { functor } => {
            let w = if explicit_window { window } else { Window::new(2, 2) };
            let f = classifying_map(&load.functor(functor)?, w)?;
            let v = is_dk_equivalence(&f)?;
            let human = format!("window {w}\nDwyer-Kan equivalence (1-truncated): {}\n", v.holds());
            Output::verdict(json!({ "window": w.to_string(), "verdict": v }), human, v.holds())
        }
        Command::Verify {
            config,
            check,
            inputs,
            timings,
            list,
        } => {
            if *list {
                let value: Vec<Value> = verify::CHECKS
                    .iter()
                    .map(|c| json!({ "check": c.name, "anchor": c.anchor, "inputs": c.inputs }))
                    .collect();
                let human = verify::CHECKS
                    .iter()
                    .map(|c| format!("{:<22} [{}]  {}\n", c.name, c.inputs.join(", "), c.anchor))
                    .collect();
                return Ok(Output::new(Value::Array(value), human));
            }
            let suite = match (config, check) {
                (Some(path), None) => {
                    let text = read(&path.to_string_lossy())?;
                    serde_json::from_str::<SuiteConfig>(&text).map_err(|e| Error::Config(format!("suite: {e}")))?
                }
                (None, Some(name)) => {
                    let ids: Vec<&str> = inputs.iter().map(String::as_str).collect();
                    let mut req = CheckRequest::new(name, &ids);
                    req.window = cli.window.clone();
                    SuiteConfig { checks: vec![req] }
                }
                (None, None) => verify::default_suite(),
                (Some(_), Some(_)) => return Err(Error::Config("use either --config or --check".into())),
            };
            let mut report = verify::verify_suite(&suite);
            if !timings {
                report = report.without_timings();
            }
            let code = report.exit_code() as u8;
            let human = verify::render_table(&report);
            Output {
                value: serde_json::to_value(&report).map_err(|e| Error::Config(e.to_string()))?,
                human,
                code,
            }
        }
    })
}

fn report_output(mut r: verify::VerificationReport) -> Output {
    r.wall_time_ms = None;
    let human = format!(
        "{} {}\nwindow {}\nverdict: {}\nwitness: {}\n",
        r.check,
        r.inputs.join(" "),
        r.window.clone().unwrap_or_default(),
        r.verdict.label(),
        r.witness
    );
    let code = r.verdict.exit_code() as u8;
    Output {
        value: serde_json::to_value(&r).unwrap_or(Value::Null),
        human,
        code,
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::WindowInsufficient { .. } => Outcome::WindowInsufficient.exit_code() as u8,
        Error::Parse { .. }
        | Error::Config(_)
        | Error::UnknownObject(_)
        | Error::UnknownMorphism(_)
        | Error::Duplicate(_)
        | Error::Dangling { .. }
        | Error::MissingFace { .. }
        | Error::InvalidFace { .. }
        | Error::SimplicialIdentity { .. } => INPUT_ERROR as u8,
        _ => Outcome::Fail.exit_code() as u8,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Human => out.human,
                Format::Structured => {
                    let mut s = serde_json::to_string_pretty(&out.value).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
            };
            (text, out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code_for(&e));
        }
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(INPUT_ERROR as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
