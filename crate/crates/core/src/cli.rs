//! Command-line surface. [`run`] is pure apart from reading input files, so
//! it is exercised directly by tests.

use std::cmp::Ordering;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::complex::{is_knotlike, FreeComplex};
use crate::error::{Error, Result};
use crate::examples;
use crate::invariants::{report, InvariantReport};
use crate::io::{cert_document, complex_document, fuv_document, load_input, spec_document, Body, Input};
use crate::localeq::{standardize, Standardization};
use crate::ring::RingId;
use crate::standard::{lex_compare, StandardSpec};

#[derive(Debug, Parser)]
#[command(name = "gridlocal", version, about = "Local equivalence of complexes over grid rings")]
pub struct Cli {
    /// Emit one JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check gradings, homogeneity and d^2 = 0.
    Validate { file: String },
    /// Cancel unit entries.
    Reduce { file: String },
    /// Push an F2[U,V] complex forward to the ring named in the document.
    Basechange { file: String },
    /// Compute the standard representative.
    Standardize {
        file: String,
        /// Ambient correction term; overrides the document's `dY`.
        #[arg(long, allow_hyphen_values = true)]
        dy: Option<i64>,
    },
    /// Tensor product of two complexes or specs.
    Tensor { a: String, b: String },
    /// Dual complex, with dY negated.
    Dual { file: String },
    /// Order two local equivalence classes.
    Compare { a: String, b: String },
    /// Invariant report for a spec or a complex.
    Invariants { input: String },
    /// Built-in example complexes.
    Example {
        #[command(subcommand)]
        which: ExampleCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleCmd {
    Zhou {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Emit::Fuv)]
        emit: Emit,
    },
    Cable {
        #[arg(long, value_enum, default_value_t = Emit::Fuv)]
        emit: Emit,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Fuv,
    X,
    Spec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Result of the full pipeline on one input.
pub struct Pipeline {
    pub standardization: Standardization,
    pub normalization_shift: (i64, i64),
}

/// Shift by `dY`, reduce, test knotlikeness, normalize, standardize.
pub fn pipeline(c: &FreeComplex, d_y: i64) -> Result<Pipeline> {
    c.check()?;
    let reduced = c.shifted((-d_y, -d_y)).reduce();
    let info = is_knotlike(&reduced)?;
    if !info.knotlike {
        return Err(Error::NotKnotlike("quotient homology does not have exactly one tower on each side".into()));
    }
    let standardization = standardize(&reduced.shifted(info.shift))?;
    Ok(Pipeline { standardization, normalization_shift: info.shift })
}

fn render_complex(c: &FreeComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "ring {}, {} generators", c.ring.tag(), c.len());
    let width = c.generators.iter().map(|g| g.name.chars().count()).max().unwrap_or(0);
    for g in &c.generators {
        let pad = width - g.name.chars().count();
        let _ = writeln!(out, "  {}{}  ({}, {})", g.name, " ".repeat(pad), g.gr.0, g.gr.1);
    }
    for (k, g) in c.generators.iter().enumerate() {
        let terms: Vec<String> = c
            .boundary(k)
            .map(|(t, e)| {
                let coeff = if e.monomials().count() > 1 { format!("({e})") } else { e.to_string() };
                format!("{coeff} {}", c.generators[t].name)
            })
            .collect();
        if !terms.is_empty() {
            let _ = writeln!(out, "d {} = {}", g.name, terms.join(" + "));
        }
    }
    out
}

fn render_report(r: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "spec            {}", r.spec);
    let _ = writeln!(out, "phi");
    if r.phi.is_empty() {
        let _ = writeln!(out, "  (all zero)");
    }
    for (&(side, e), &c) in &r.phi.entries {
        let _ = writeln!(out, "  {}[{},{}]  {c:+}", side.letter(), e.i, e.j);
    }
    let flag = if r.tau_flagged { "  (spec is not symmetric)" } else { "" };
    let _ = writeln!(out, "tau             {}{flag}", r.tau);
    let eps = if r.epsilon_zero { "0".to_string() } else { format!("{:+} (sign convention: sgn b1)", r.epsilon_sign) };
    let _ = writeln!(out, "epsilon         {eps}");
    let _ = writeln!(out, "N               {}", r.big_n);
    let _ = writeln!(out, "genus bound     {}", r.genus_lb);
    let _ = writeln!(out, "unknotting      {}", r.unknotting_lb);
    let _ = writeln!(out, "P_U, P_V        {}, {}", r.p_u, r.p_v);
    let _ = writeln!(out, "symmetric       {}", r.symmetric);
    let _ = writeln!(out, "obstructions    lspace={} seifertPos={} seifertNeg={}",
        r.lspace_obstruction, r.seifert_pos_obstruction, r.seifert_neg_obstruction);
    out
}

fn ordering_word(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn spec_of(input: &Input) -> Result<StandardSpec> {
    match input {
        Input::Spec(s) => Ok(s.clone()),
        Input::Doc(d) => Ok(pipeline(&d.complex(), d.d_y)?.standardization.spec),
    }
}

fn complex_output(c: &FreeComplex, d_y: i64, as_json: bool) -> Result<String> {
    Ok(if as_json {
        serde_json::to_string(&complex_document(c, d_y)).map_err(|e| Error::Internal(e.to_string()))?
    } else {
        render_complex(c)
    })
}

fn checked(input: &Input) -> Result<FreeComplex> {
    let c = input.complex();
    c.check()?;
    Ok(c)
}

fn to_json(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Internal(e.to_string()))
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let js = cli.json;
    let text = match &cli.command {
        Command::Validate { file } => {
            let input = load_input(file)?;
            let violations = match &input {
                Input::Doc(d) => match &d.body {
                    Body::Fuv(f) => f.validate(),
                    Body::S(c) => c.validate(),
                },
                Input::Spec(_) => input.complex().validate(),
            };
            let ok = violations.is_empty();
            let out = if js {
                to_json(&json!({ "ok": ok, "violations": violations }))?
            } else if ok {
                "ok".to_string()
            } else {
                violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\n")
            };
            return Ok((if ok { 0 } else { 1 }, out));
        }
        Command::Reduce { file } => {
            let input = load_input(file)?;
            complex_output(&checked(&input)?.reduce(), input.d_y(), js)?
        }
        Command::Basechange { file } => {
            let input = load_input(file)?;
            let Input::Doc(doc) = &input else {
                return Err(Error::Parse("basechange expects an FUV document".into()));
            };
            let Body::Fuv(f) = &doc.body else {
                return Err(Error::Parse("basechange expects an FUV document".into()));
            };
            let v = f.validate();
            if !v.is_empty() {
                return Err(Error::Invalid(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")));
            }
            complex_output(&f.base_change(doc.ring), doc.d_y, js)?
        }
        Command::Standardize { file, dy } => {
            let input = load_input(file)?;
            let p = pipeline(&input.complex(), dy.unwrap_or(input.d_y()))?;
            let s = &p.standardization;
            if js {
                to_json(&json!({
                    "spec": s.spec.to_string(),
                    "specDocument": spec_document(&s.spec),
                    "normalizationShift": [p.normalization_shift.0, p.normalization_shift.1],
                    "forward": cert_document(&s.forward),
                    "backward": cert_document(&s.backward),
                }))?
            } else {
                let mut out = s.spec.to_string();
                if p.normalization_shift != (0, 0) {
                    let _ = write!(out, "\n(gradings shifted by {:?} to normalize)", p.normalization_shift);
                }
                out
            }
        }
        Command::Tensor { a, b } => {
            let (a, b) = (load_input(a)?, load_input(b)?);
            complex_output(&checked(&a)?.tensor(&checked(&b)?)?, a.d_y() + b.d_y(), js)?
        }
        Command::Dual { file } => {
            let input = load_input(file)?;
            complex_output(&checked(&input)?.dual(), -input.d_y(), js)?
        }
        Command::Compare { a, b } => {
            let (a, b) = (spec_of(&load_input(a)?)?, spec_of(&load_input(b)?)?);
            let word = ordering_word(lex_compare(&a, &b)?);
            if js {
                to_json(&json!({ "result": word, "a": a.to_string(), "b": b.to_string() }))?
            } else {
                word.to_string()
            }
        }
        Command::Invariants { input } => {
            let r = report(&spec_of(&load_input(input)?)?);
            if js {
                to_json(&r)?
            } else {
                render_report(&r)
            }
        }
        Command::Example { which } => {
            let (fuv, d_y, emit) = match which {
                ExampleCmd::Zhou { n, emit } => (examples::zhou(*n)?, 0, *emit),
                ExampleCmd::Cable { emit } => (examples::cable(), examples::CABLE_D_Y, *emit),
            };
            match emit {
                Emit::Fuv => {
                    let doc = fuv_document(&fuv, RingId::X, d_y);
                    if js {
                        to_json(&doc)?
                    } else {
                        serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))?
                    }
                }
                Emit::X => complex_output(&fuv.base_change(RingId::X), d_y, js)?,
                Emit::Spec => {
                    let spec = pipeline(&fuv.base_change(RingId::X), d_y)?.standardization.spec;
                    if js {
                        to_json(&json!({ "spec": spec.to_string(), "specDocument": spec_document(&spec) }))?
                    } else {
                        spec.to_string()
                    }
                }
            }
        }
    };
    Ok((0, text))
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (rendered, String::new()) } else { (String::new(), rendered) };
            return Outcome { code, stdout, stderr };
        }
    };
    match execute(&cli) {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stdout = if cli.json {
                format!("{}\n", json!({ "error": e.to_string(), "exitCode": e.exit_code() }))
            } else {
                String::new()
            };
            Outcome { code: e.exit_code(), stdout, stderr: format!("error: {e}\n") }
        }
    }
}
