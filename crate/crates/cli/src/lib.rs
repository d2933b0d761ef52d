//! The `dream` command line: parse ideals, centers and widths, run a pipeline, print JSON.
//!
//! Exit codes: 0 on success, 1 on domain errors (inadmissible or non-integral centers,
//! irrational points), 2 on parse, usage and resource errors.

pub mod encode;
pub mod replay;
pub mod staircase;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dream_core::blowup::{embedded_resolve, principalize, rees_generators, DriverOptions, TraceStatus};
use dream_core::center::CenterPresentation;
use dream_core::invariant::{multiorder_with, Limits};
use dream_core::parse::{collect_variables, parse_ideal};
use dream_core::tschirnhaus::{make_tschirnhaus, verify_tschirnhaus};
use dream_core::tube::{constant_tube, tube_center_correspondence};
use dream_core::{Ambient, Error, ErrorClass, MultiOrder, PolyIdeal, Polynomial};
use serde_json::{json, Value};

use crate::staircase::Staircase;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "dream", version, about = "Weighted centers, multiorders and weighted blowups over the rationals")]
pub struct Cli {
    /// Largest total degree of any intermediate polynomial.
    #[arg(long, env = "DREAM_DEGREE_CAP", default_value_t = 64, global = true)]
    pub degree_cap: u32,
    /// Output format; `svg` only applies to `staircase`.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write the output to a file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Run one command per line of this file; `#` starts a comment.
    #[arg(long)]
    pub batch: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The multiorder of an ideal, e.g. `"x^5 + x^3*y^3 + y^7"`.
    Mord {
        ideal: String,
        /// Comma-separated ambient variables; defaults to those occurring in the input.
        #[arg(long)]
        vars: Option<String>,
    },
    /// The canonical center, its leading-term basis and the maximal-contact chain.
    Center {
        ideal: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// The rounding of a center such as `"[x^5, y^(15/2)]"`.
    Round {
        center: String,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Certify a center by a Tschirnhaus presentation (the canonical center by default).
    Tschirnhaus {
        ideal: String,
        #[arg(long)]
        center: Option<String>,
        /// Only check the given presentation instead of searching for one.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Principalize an ideal by weighted blowups of canonical centers.
    Principalize {
        ideal: String,
        #[arg(long, default_value_t = 24)]
        max_steps: usize,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Embedded resolution of a subscheme of the given codimension.
    EmbedResolve {
        ideal: String,
        #[arg(long)]
        codim: usize,
        #[arg(long, default_value_t = 24)]
        max_steps: usize,
        #[arg(long)]
        vars: Option<String>,
    },
    /// A constant tube `"(5, 7)"` or the tube of an integral center `"[x^5, y^7]"`.
    Tube {
        input: String,
        /// Comma-separated base variables of a constant tube.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Generators of the Rees algebra of a center in degrees 0..=N.
    Rees {
        center: String,
        /// The root N; defaults to the minimal one.
        #[arg(long)]
        root: Option<u32>,
        /// Only this degree.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        vars: Option<String>,
    },
    /// Re-run a trace written by `principalize` or `embed-resolve` and compare.
    Replay { trace: PathBuf },
    /// The staircase of `I_d` for a pair `d`, optionally against a second pair.
    Staircase {
        width: String,
        #[arg(long)]
        overlay: Option<String>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

enum Output {
    Json(Value),
    Text(String),
}

struct Reply {
    json: Value,
    text: String,
    svg: Option<String>,
    code: i32,
}

impl Reply {
    fn new(json: Value, text: impl Into<String>) -> Self {
        Reply { json, text: text.into(), svg: None, code: 0 }
    }
}

fn ambient_for(text: &str, vars: Option<&str>) -> Result<Ambient, Failure> {
    let found = collect_variables(text)?;
    match vars {
        None => Ok(Ambient::new(found)),
        Some(v) => {
            let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if let Some(missing) = found.iter().find(|n| !names.contains(n)) {
                return Err(Failure::Usage(format!("variable {missing} is not listed in --vars")));
            }
            Ok(Ambient::new(names))
        }
    }
}

fn read_ideal(text: &str, vars: Option<&str>, cap: u32) -> Result<PolyIdeal, Failure> {
    let a = ambient_for(text, vars)?;
    Ok(parse_ideal(text, &a, cap)?)
}

fn trace_code(status: TraceStatus) -> i32 {
    match status {
        TraceStatus::IrrationalPoint => 1,
        TraceStatus::ResourceCapped => 2,
        _ => 0,
    }
}

fn trace_text(t: &dream_core::blowup::PrincipalizationTrace) -> String {
    let mut out = String::new();
    for s in &t.steps {
        out.push_str(&format!("{}: mord {} center {} N = {}\n", s.label, s.mord, s.center, s.root));
        for c in &s.charts {
            out.push_str(&format!("  chart {}: {}\n", c.chart.label(), c.transform));
        }
    }
    for s in &t.stops {
        out.push_str(&format!("{}: stop at mord {} center {}\n", s.label, s.mord, s.center));
    }
    out.push_str(&format!("status {}", t.status.as_str()));
    out
}

fn product(coords: &[Polynomial], a: &dream_core::ExponentVector, cap: u32) -> Result<Polynomial, Error> {
    let mut m = Polynomial::one(coords[0].ambient());
    for (u, &k) in coords.iter().zip(a.entries()) {
        if k > 0 {
            m = m.try_mul(&u.pow(k, cap)?)?;
        }
    }
    Ok(m)
}

fn execute(cmd: &Command, cap: u32) -> Result<Reply, Failure> {
    let limits = Limits::with_degree_cap(cap);
    match cmd {
        Command::Mord { ideal, vars } => {
            let i = read_ideal(ideal, vars.as_deref(), cap)?;
            let r = multiorder_with(&i, &limits)?;
            Ok(Reply::new(json!({ "mord": encode::mord(&r.mord) }), r.mord.to_string()))
        }
        Command::Center { ideal, vars } => {
            let i = read_ideal(ideal, vars.as_deref(), cap)?;
            let r = multiorder_with(&i, &limits)?;
            Ok(Reply::new(encode::invariant(&r), format!("mord {}\ncenter {}", r.mord, r.center)))
        }
        Command::Round { center, vars } => {
            let a = ambient_for(center, vars.as_deref())?;
            let j = CenterPresentation::parse(center, &a, cap)?;
            let r = j.rounding()?;
            Ok(Reply::new(json!({ "center": j.to_string(), "rounding": encode::ideal(&r) }), r.to_string()))
        }
        Command::Tschirnhaus { ideal, center, verify, vars } => {
            let joined = format!("{ideal} {}", center.as_deref().unwrap_or(""));
            let a = ambient_for(&joined, vars.as_deref())?;
            let i = parse_ideal(ideal, &a, cap)?;
            let j = match center {
                Some(c) => CenterPresentation::parse(c, &a, cap)?,
                None => multiorder_with(&i, &limits)?.center,
            };
            let cert = if *verify {
                verify_tschirnhaus(&i, &j)?.ok_or(Error::FailsToCertify)?
            } else {
                make_tschirnhaus(&i, &j)?
            };
            let text = format!("certified {}", cert.presentation);
            Ok(Reply::new(encode::certificate(&cert), text))
        }
        Command::Principalize { ideal, max_steps, vars } => {
            let i = read_ideal(ideal, vars.as_deref(), cap)?;
            let t = principalize(&i, &DriverOptions { limits, max_steps: *max_steps })?;
            let mut r = Reply::new(encode::trace(&t), trace_text(&t));
            r.code = trace_code(t.status);
            Ok(r)
        }
        Command::EmbedResolve { ideal, codim, max_steps, vars } => {
            let i = read_ideal(ideal, vars.as_deref(), cap)?;
            let t = embedded_resolve(&i, *codim, &DriverOptions { limits, max_steps: *max_steps })?;
            let mut r = Reply::new(encode::trace(&t), trace_text(&t));
            r.code = trace_code(t.status);
            Ok(r)
        }
        Command::Tube { input, base, vars } => {
            if input.trim_start().starts_with('[') {
                let a = ambient_for(input, vars.as_deref())?;
                let j = CenterPresentation::parse(input, &a, cap)?;
                let v = tube_center_correspondence(&j)?;
                let text = format!("width {} rank {} ideal {}", v.width, v.algebra.rank()?, v.ideal);
                Ok(Reply::new(encode::embedded_tube(&v, &j)?, text))
            } else {
                let d = MultiOrder::parse(input)?;
                let base: Vec<String> = base
                    .as_deref()
                    .map(|b| b.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
                    .unwrap_or_default();
                let t = constant_tube(&d, &base)?;
                let text = format!("width {} rank {}", t.width(), t.rank()?);
                Ok(Reply::new(encode::tube(&t)?, text))
            }
        }
        Command::Rees { center, root, degree, vars } => {
            let a = ambient_for(center, vars.as_deref())?;
            let j = CenterPresentation::parse(center, &a, cap)?;
            let n = match root {
                Some(n) => *n,
                None => dream_core::blowup::minimal_root(&j.multiorder())?,
            };
            let pieces = rees_generators(&j, n)?;
            let mut out = Vec::new();
            let mut text = String::new();
            for (k, piece) in pieces.iter().enumerate() {
                if degree.is_some_and(|d| d as usize != k) {
                    continue;
                }
                let gens = piece.iter().map(|e| product(j.coordinates(), e, cap).map(|p| p.to_string()));
                let gens = gens.collect::<Result<Vec<_>, _>>()?;
                text.push_str(&format!("{k}: {}\n", gens.join(", ")));
                out.push(json!({ "degree": k, "generators": gens }));
            }
            Ok(Reply::new(json!({ "center": j.to_string(), "N": n, "pieces": out }), text.trim_end().to_string()))
        }
        Command::Replay { trace } => {
            let text = std::fs::read_to_string(trace).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", trace.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse { position: e.column(), message: format!("invalid JSON: {e}") })?;
            let report = replay::replay(&value, cap)?;
            let summary = format!("{} steps, {} charts, {} mismatches", report.steps, report.charts, report.mismatches.len());
            let mut r = Reply::new(
                json!({ "steps": report.steps, "charts": report.charts, "mismatches": report.mismatches, "ok": report.ok() }),
                summary,
            );
            r.code = if report.ok() { 0 } else { 1 };
            Ok(r)
        }
        Command::Staircase { width, overlay } => {
            let d = MultiOrder::parse(width)?;
            let o = overlay.as_deref().map(MultiOrder::parse).transpose()?;
            let st = Staircase::new(d.clone(), o)?;
            let ascii = st.ascii();
            let gens: Vec<Vec<u32>> = st.generators().iter().map(|g| g.entries().to_vec()).collect();
            let mut r = Reply::new(json!({ "width": encode::mord(&d), "generators": gens, "ascii": ascii }), ascii);
            r.svg = Some(st.svg());
            Ok(r)
        }
    }
}

fn render(cli: &Cli, cmd: &Command) -> (i32, Output) {
    let default = if matches!(cmd, Command::Staircase { .. }) { Format::Svg } else { Format::Json };
    let format = cli.format.unwrap_or(default);
    match execute(cmd, cli.degree_cap) {
        Ok(r) => match format {
            Format::Json => (r.code, Output::Json(r.json)),
            Format::Text => (r.code, Output::Text(r.text)),
            Format::Svg => match r.svg {
                Some(svg) => (r.code, Output::Text(svg)),
                None => usage("svg output is only available for staircase"),
            },
        },
        Err(Failure::Usage(msg)) => usage(&msg),
        Err(Failure::Core(e)) => {
            let code = match e.class() {
                ErrorClass::Domain => 1,
                ErrorClass::Parse | ErrorClass::Resource => 2,
            };
            match format {
                Format::Text => (code, Output::Text(format!("error[{}]: {e}", e.code()))),
                _ => (code, Output::Json(encode::error(&e))),
            }
        }
    }
}

fn usage(msg: &str) -> (i32, Output) {
    (2, Output::Json(json!({ "error": { "code": "usage", "message": msg } })))
}

fn to_string(out: Output) -> String {
    match out {
        Output::Json(v) => v.to_string(),
        Output::Text(t) => t,
    }
}

fn run_batch(cli: &Cli, path: &PathBuf) -> (i32, String) {
    let content = match std::fs::read_to_string(path) {
        Ok(c) => c,
        Err(e) => return (2, json!({ "error": { "code": "io", "message": e.to_string() } }).to_string()),
    };
    let mut code = 0;
    let mut lines = Vec::new();
    for line in content.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(words) = shlex::split(line) else {
            code = code.max(2);
            lines.push(json!({ "error": { "code": "usage", "message": "unbalanced quotes" } }).to_string());
            continue;
        };
        let mut argv = vec!["dream".to_string(), "--degree-cap".to_string(), cli.degree_cap.to_string()];
        if let Some(f) = cli.format {
            argv.push("--format".into());
            argv.push(format!("{f:?}").to_lowercase());
        }
        argv.extend(words);
        let out = run(&argv);
        code = code.max(out.code);
        lines.push(out.stdout.trim_end().to_string());
    }
    (code, lines.join("\n"))
}

/// Runs the command line `args` (including the program name).
pub fn run<S: AsRef<str>>(args: &[S]) -> Outcome {
    let cli = match Cli::try_parse_from(args.iter().map(|s| s.as_ref())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let (code, text) = match (&cli.batch, &cli.command) {
        (Some(path), _) => run_batch(&cli, path),
        (None, Some(cmd)) => {
            let (code, out) = render(&cli, cmd);
            (code, to_string(out))
        }
        (None, None) => (2, to_string(usage("a command or --batch is required").1)),
    };
    let mut stdout = text;
    if !stdout.ends_with('\n') {
        stdout.push('\n');
    }
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, &stdout) {
            return Outcome { code: 2, stdout: String::new(), stderr: format!("cannot write {}: {e}\n", path.display()) };
        }
        return Outcome { code, stdout: String::new(), stderr: String::new() };
    }
    Outcome { code, stdout, stderr: String::new() }
}
