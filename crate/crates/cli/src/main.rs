use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lbkit::covers::cyclic_cover_diagram;
use lbkit::diagrams::{AnnularLink, ColoredTangle, Sign};
use lbkit::homology::{boundary_h1, h1};
use lbkit::homotopy::{classify, crossed_class, lightbulb_check, rho_chain, CrossedClass, Relation};
use lbkit::kirby::{build_xpq, double, handle_slide, KirbyDiagram};
use lbkit::obstruction::obstruct;
use lbkit::render::{render, Drawable, Format};
use serde::Serialize;
use serde_json::json;

/// Kirby diagrams, covers, homology and concordance obstructions for the
/// sphere pairs in X_{p,q}.
#[derive(Debug, Parser)]
#[command(name = "lbkit", version)]
struct Cli {
    /// Output format; JSON unless the verb says otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<OutFormat>,
    /// Write output here instead of standard out.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Kirby diagram of X_{p,q}, or of its double.
    Build {
        #[arg(long, allow_negative_numbers = true)]
        p: i64,
        #[arg(long, allow_negative_numbers = true)]
        q: i64,
        #[arg(long)]
        double: bool,
    },
    /// First homology of the 4-manifold.
    Homology {
        #[arg(default_value = "-")]
        input: String,
    },
    /// First homology of the boundary.
    Boundary {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Cyclic cover of a one-dotted-circle diagram.
    Cover {
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(default_value = "-")]
        input: String,
    },
    /// The double of a diagram.
    Double {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Slide one 2-handle over another.
    Slide {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        handle: String,
        #[arg(long)]
        over: String,
        #[arg(long, default_value = "1", allow_negative_numbers = true, value_parser = parse_sign)]
        sign: Sign,
    },
    /// How Σ_i and Σ_j are related.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long)]
        closed: bool,
    },
    /// Classification of every pair in a range, as CSV.
    Table {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i64, i64),
        #[arg(long)]
        closed: bool,
    },
    /// Linking parity obstruction for the model concordance.
    Obstruct {
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
        #[arg(long)]
        closed: bool,
    },
    /// Crossed-cycle class of the standard homotopy from Σ_i to Σ_j.
    HomotopyClass {
        #[arg(long, allow_negative_numbers = true)]
        i: i64,
        #[arg(long, allow_negative_numbers = true)]
        j: i64,
    },
    /// Draw a Kirby diagram, annular link or tangle.
    Render {
        #[arg(default_value = "-")]
        input: String,
    },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    match s.trim() {
        "1" | "+1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        other => Err(format!("expected 1 or -1, got {other}")),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got {s}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("bad lower bound {a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("bad upper bound {b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

#[derive(Debug)]
enum Failure {
    Domain(lbkit::Error),
    Input(String),
}

impl From<lbkit::Error> for Failure {
    fn from(e: lbkit::Error) -> Self {
        Failure::Domain(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Input(s) => f.write_str(s),
        }
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(format!("reading standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {path}: {e}")))
    }
}

fn parse<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Failure> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid input {path}: {e}")))
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("output types serialize");
    s.push('\n');
    s
}

fn only_json(format: Option<OutFormat>, verb: &str) -> Result<(), Failure> {
    match format {
        None | Some(OutFormat::Json) => Ok(()),
        Some(f) => Err(lbkit::Error::UnsupportedFormat(format!("{f:?} output for {verb}").to_lowercase()).into()),
    }
}

fn table_csv(lo: i64, hi: i64, closed: bool) -> String {
    let mut out = String::from("i,j,equivalent,homotopic,concordant,isotopic\n");
    for i in lo..=hi {
        for j in lo..=hi {
            let r = classify(i, j, closed);
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                i, j, r.equivalent, r.homotopic, r.topologically_concordant, r.smoothly_isotopic
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct HomotopyReport {
    i: i64,
    j: i64,
    finger_moves: usize,
    whitney_moves: usize,
    crossed_cycles: usize,
    class: CrossedClass,
    lightbulb: bool,
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let format = cli.format;
    match &cli.verb {
        Verb::Build { p, q, double: d } => {
            only_json(format, "build")?;
            let x = build_xpq(*p, *q);
            Ok(to_json(&if *d { double(&x) } else { x }))
        }
        Verb::Homology { input } => {
            only_json(format, "homology")?;
            Ok(to_json(&h1(&parse::<KirbyDiagram>(input)?)))
        }
        Verb::Boundary { input } => {
            only_json(format, "boundary")?;
            Ok(to_json(&boundary_h1(&parse::<KirbyDiagram>(input)?)?))
        }
        Verb::Cover { degree, input } => {
            only_json(format, "cover")?;
            Ok(to_json(&cyclic_cover_diagram(&parse::<KirbyDiagram>(input)?, *degree)?))
        }
        Verb::Double { input } => {
            only_json(format, "double")?;
            Ok(to_json(&double(&parse::<KirbyDiagram>(input)?)))
        }
        Verb::Slide { input, handle, over, sign } => {
            only_json(format, "slide")?;
            Ok(to_json(&handle_slide(&parse::<KirbyDiagram>(input)?, handle, over, *sign)?))
        }
        Verb::Classify { i, j, closed } => {
            only_json(format, "classify")?;
            let r: Relation = classify(*i, *j, *closed);
            Ok(to_json(&r))
        }
        Verb::Table { range: (lo, hi), closed } => match format {
            None | Some(OutFormat::Csv) => Ok(table_csv(*lo, *hi, *closed)),
            Some(OutFormat::Json) => {
                let rows: Vec<Relation> =
                    (*lo..=*hi).flat_map(|i| (*lo..=*hi).map(move |j| classify(i, j, *closed))).collect();
                Ok(to_json(&rows))
            }
            Some(f) => Err(lbkit::Error::UnsupportedFormat(format!("{f:?} output for table").to_lowercase()).into()),
        },
        Verb::Obstruct { i, j, closed } => {
            only_json(format, "obstruct")?;
            Ok(to_json(&obstruct(*i, *j, *closed)?))
        }
        Verb::HomotopyClass { i, j } => {
            only_json(format, "homotopy-class")?;
            let t = rho_chain(*i, *j)?;
            Ok(to_json(&HomotopyReport {
                i: *i,
                j: *j,
                finger_moves: t.finger_moves(),
                whitney_moves: t.whitney_moves(),
                crossed_cycles: t.crossed_cycles(),
                class: crossed_class(&t),
                lightbulb: lightbulb_check(&t, true, true)?,
            }))
        }
        Verb::Render { input } => {
            let f = match format {
                None | Some(OutFormat::Svg) => Format::Svg,
                Some(OutFormat::Text) => Format::Text,
                Some(f) => {
                    return Err(lbkit::Error::UnsupportedFormat(format!("{f:?} output for render").to_lowercase()).into())
                }
            };
            let text = read_input(input)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid input {input}: {e}")))?;
            let bad = |e: serde_json::Error| Failure::Input(format!("invalid input {input}: {e}"));
            if value.get("dotted").is_some() {
                let d: KirbyDiagram = serde_json::from_value(value).map_err(bad)?;
                Ok(render(Drawable::Kirby(&d), f))
            } else if value.get("strands").is_some() {
                let l: AnnularLink = serde_json::from_value(value).map_err(bad)?;
                Ok(render(Drawable::Annular(&l), f))
            } else if value.get("arcs").is_some() {
                let t: ColoredTangle = serde_json::from_value(value).map_err(bad)?;
                Ok(render(Drawable::Tangle(&t), f))
            } else {
                Err(Failure::Input(format!("{input} is not a Kirby diagram, annular link or tangle")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, out.as_bytes()),
                None => io::stdout().lock().write_all(out.as_bytes()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    println!("{}", json!({ "error": format!("writing output: {e}") }));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(1)
        }
    }
}
