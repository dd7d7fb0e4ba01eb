use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fquandle::constructions::{periodic_link, satellite};
use fquandle::tangle::DSL_GRAMMAR;
use fquandle::tietze::DEFAULT_BUDGET;
use fquandle::verify::{self, Suite, DEFAULT_SEED};
use fquandle::*;

#[derive(Parser)]
#[command(name = "fquandle", version, about = "Fundamental quandles of oriented tangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the presentation and boundary maps of a tangle.
    Present {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Eliminate generators while keeping the boundary maps intact.
    Simplify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count colorings of a tangle or presentation by a finite quandle.
    Color {
        file: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Build a presentation from one or two inputs.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Images of the free generators under a braid word, e.g. `1,-2,1`.
    BraidAction {
        #[arg(allow_hyphen_values = true)]
        word: String,
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a property suite and report each check.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Suite::NAMES))]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Classical closure of a (φ,φ)-tangle.
    Closure {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Plat closure; boundary points pair up consecutively.
    Plat {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Closure of the p-th power of a (φ,φ)-tangle.
    Periodic {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Connected sum of two long knots.
    Sum {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Cable of a (1,1)-tangle with one sign per copy, e.g. `--eps +-`.
    Cable {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[command(flatten)]
        out: Output,
    },
    /// Satellite with the given pattern and companion.
    Satellite {
        pattern: PathBuf,
        companion: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct Target {
    /// `dihedral:N`, `conj-sym3`, or a path to a table file.
    #[arg(long)]
    quandle: String,
    /// List at most this many colorings.
    #[arg(long)]
    limit: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Output {
    /// Also count colorings by this quandle.
    #[arg(long)]
    quandle: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Bad input rather than a failed computation: exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl fmt::Display) -> anyhow::Error {
    Usage(msg.to_string()).into()
}

/// What an input file holds. Tangle files use the diagram language; files
/// starting with `gens:` are presentations, with boundary maps if present.
enum Input {
    Morphism(BorderedMorphism),
    Closed(QuandlePresentation),
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let bad = |e: &dyn fmt::Display| usage(format!("{}: {e}", path.display()));
    if text.trim_start().starts_with("gens:") {
        if text.lines().any(|l| l.trim_start().starts_with("bottom:")) {
            return BorderedMorphism::from_text(&text).map(Input::Morphism).map_err(|e| bad(&e));
        }
        return QuandlePresentation::from_text(&text).map(Input::Closed).map_err(|e| bad(&e));
    }
    let t = parse_tangle(&text).map_err(|e| bad(&e))?;
    Ok(Input::Morphism(bq(&t)))
}

fn load_morphism(path: &Path) -> Result<BorderedMorphism> {
    match load(path)? {
        Input::Morphism(m) => Ok(m),
        Input::Closed(_) => Err(usage(format!("{}: expected a tangle, got a closed presentation", path.display()))),
    }
}

fn quandle(spec: &str) -> Result<FiniteQuandle> {
    if Path::new(spec).is_file() {
        let text = read(Path::new(spec))?;
        return FiniteQuandle::from_text(&text).map_err(|e| usage(format!("{spec}: {e}")));
    }
    builtin_quandle(spec).map_err(usage)
}

fn signs(s: &str) -> Result<Vec<Sign>> {
    let b = SignedBoundary::parse(s).ok_or_else(|| usage(format!("--eps: expected signs like `+-`, got `{s}`")))?;
    Ok(b.signs().to_vec())
}

fn word(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|w| !w.is_empty())
        .map(|w| w.parse::<i64>().map_err(|_| usage(format!("bad braid letter `{w}`"))))
        .collect()
}

fn morphism_json(m: &BorderedMorphism) -> Value {
    serde_json::from_str(&m.to_json()).expect("morphisms serialize")
}

fn presentation_json(p: &QuandlePresentation) -> Value {
    serde_json::from_str(&p.to_json()).expect("presentations serialize")
}

fn emit(format: Format, text: String, value: Value) -> String {
    match format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&value).expect("json values serialize") + "\n",
    }
}

fn coloring_report(p: &QuandlePresentation, spec: &str, limit: Option<usize>, format: Format) -> Result<String> {
    let q = quandle(spec)?;
    let count = count_colorings(p, &q);
    let listed = limit.map(|n| enumerate_colorings(p, &q, Some(n)));
    let mut text = format!("quandle: {spec}\ngenerators: {}\ncount: {count}\n", p.generators().join(" "));
    if let Some(e) = &listed {
        for c in &e.colorings {
            let vals: Vec<String> = c.values().iter().map(|v| v.to_string()).collect();
            text += &format!("{}\n", vals.join(" "));
        }
    }
    let colorings: Vec<&[usize]> = listed.iter().flat_map(|e| e.colorings.iter().map(|c| c.values())).collect();
    let value = json!({
        "quandle": spec,
        "generators": p.generators(),
        "count": count,
        "colorings": colorings,
    });
    Ok(emit(format, text, value))
}

/// Prints a constructed closed presentation, with its count if asked.
fn closed_output(p: &QuandlePresentation, out: &Output) -> Result<String> {
    let Some(spec) = &out.quandle else {
        return Ok(emit(out.format, p.to_text(), presentation_json(p)));
    };
    let q = quandle(spec)?;
    let count = count_colorings(p, &q);
    let text = format!("{}count ({spec}): {count}\n", p.to_text());
    let value = json!({
        "presentation": presentation_json(p),
        "quandle": spec,
        "count": count,
    });
    Ok(emit(out.format, text, value))
}

fn construct(which: &Construction) -> Result<String> {
    match which {
        Construction::Closure { file, out } => {
            let p = classical_closure(&load_morphism(file)?)?;
            closed_output(&p, out)
        }
        Construction::Plat { file, out } => {
            let p = plat_closure(&load_morphism(file)?)?;
            closed_output(&p, out)
        }
        Construction::Periodic { file, p, out } => {
            if *p == 0 {
                return Err(usage("--p must be at least 1"));
            }
            let link = periodic_link(&load_morphism(file)?, *p)?;
            closed_output(&link, out)
        }
        Construction::Sum { first, second, out } => {
            let p = connected_sum(&load_morphism(first)?, &load_morphism(second)?)?;
            closed_output(&p, out)
        }
        Construction::Satellite { pattern, companion, eps, out } => {
            let p = satellite(&load_morphism(pattern)?, &load_morphism(companion)?, &signs(eps)?)?;
            closed_output(&p, out)
        }
        Construction::Cable { file, eps, out } => {
            let m = cable_presentation(&load_morphism(file)?, &signs(eps)?)?;
            let mut text = m.to_text();
            let mut value = morphism_json(&m);
            if let Some(spec) = &out.quandle {
                let q = quandle(spec)?;
                let count = count_colorings(m.presentation(), &q);
                text += &format!("count ({spec}): {count}\n");
                value = json!({ "morphism": value, "quandle": spec, "count": count });
            }
            Ok(emit(out.format, text, value))
        }
    }
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Present { file, format } => Ok(match load(&file)? {
            Input::Morphism(m) => emit(format, m.to_text(), morphism_json(&m)),
            Input::Closed(p) => emit(format, p.to_text(), presentation_json(&p)),
        }),
        Command::Simplify { file, budget, format } => Ok(match load(&file)? {
            Input::Morphism(m) => {
                let (m, _) = simplify_morphism(&m, budget);
                emit(format, m.to_text(), morphism_json(&m))
            }
            Input::Closed(p) => {
                let s = tietze_simplify(&p, &Default::default(), budget);
                emit(format, s.presentation.to_text(), presentation_json(&s.presentation))
            }
        }),
        Command::Color { file, target } => {
            let p = match load(&file)? {
                Input::Morphism(m) => m.presentation().clone(),
                Input::Closed(p) => p,
            };
            coloring_report(&p, &target.quandle, target.limit, target.format)
        }
        Command::Construct { which } => construct(&which),
        Command::BraidAction { word: w, k, format } => {
            let letters = word(&w)?;
            let b = braid_action(&letters, k)?;
            let images: Vec<String> = b.images().iter().map(|e| e.to_string()).collect();
            let text: String = images.iter().enumerate().map(|(i, e)| format!("a{} -> {e}\n", i + 1)).collect();
            Ok(emit(format, text, json!({ "word": letters, "strands": k, "images": images })))
        }
        Command::Verify { suite, seed, format } => {
            let suite: Suite = suite.parse().map_err(usage)?;
            let checks = verify::run(suite, seed);
            let failed = checks.iter().filter(|c| !c.passed).count();
            let mut text: String = checks.iter().map(|c| format!("{c}\n")).collect();
            text += &format!("{} checks, {failed} failed\n", checks.len());
            let value = json!({ "seed": seed, "checks": checks, "failed": failed });
            let out = emit(format, text, value);
            if failed > 0 {
                print!("{out}");
                bail!("{failed} checks failed");
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            eprintln!("\ntangle file grammar:\n{DSL_GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) if e.downcast_ref::<Usage>().is_some() => {
            eprintln!("error: {e}");
            eprintln!("\ntangle file grammar:\n{DSL_GRAMMAR}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
