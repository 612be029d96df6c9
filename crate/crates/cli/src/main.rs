use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toratlas::catalog;
use toratlas::classify::DecorationKind;
use toratlas::enumerate::{enumerate_classes, minimum_genus, EnumerationReport, SearchOptions, DEFAULT_BUDGET};
use toratlas::extension::polygon_decomposition;
use toratlas::graph::Graph;
use toratlas::map::RotationMap;
use toratlas::render::{map_svg, polygons_svg};
use toratlas::verify::verify_paper;
use toratlas::Error;

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "toratlas", version, about = "Enumerate and classify torus embeddings of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum genus with a witness rotation system.
    Genus {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Classify the embeddings of a graph at a given genus.
    Catalog {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value = "none")]
        decoration: DecorationKind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Include the polygon decomposition of every class.
        #[arg(long)]
        polygons: bool,
        /// Draw every class; class i goes to `<stem>-<i>.svg`.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Recompute the reference classification and compare.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Draw the polygon decomposition of a map given as JSON.
    Render {
        /// Map JSON file, `-` for stdin.
        #[arg(long)]
        file: PathBuf,
        /// Output path; stdout when absent.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value = "")]
        title: String,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Built-in graph name (K33, K5, E42, F11, F12, F13, F14, G1).
    #[arg(long)]
    graph: Option<String>,
    /// Graph in text format: `n m` then one `u v` line per edge.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Core(Error),
    Io(String),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(format!("stdin: {e}")))
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

impl Input {
    fn load(&self) -> Result<(String, Graph), Failure> {
        match (&self.graph, &self.file) {
            (Some(name), _) => {
                let g = catalog::builtin(name)?;
                let canonical = catalog::NAMES.iter().find(|n| n.eq_ignore_ascii_case(name)).unwrap();
                Ok((canonical.to_string(), g))
            }
            (None, Some(path)) => Ok((path.display().to_string(), Graph::parse_text(&read_input(path)?)?)),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

fn budget() -> Result<u128, Failure> {
    match std::env::var("TORATLAS_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Io(format!("TORATLAS_BUDGET must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn options(threads: usize) -> Result<SearchOptions, Failure> {
    Ok(SearchOptions::default().with_threads(threads.max(1)).with_budget(budget()?))
}

/// Write to stdout; a closed pipe (`| head`) ends the program quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("toratlas: stdout: {e}");
        std::process::exit(EXIT_USAGE as i32);
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("reports always serialize")
}

fn cmd_genus(input: &Input, format: Format) -> Outcome {
    let (name, g) = input.load()?;
    let w = minimum_genus(&g, budget()?)?;
    let components: Vec<Value> = w.components.iter().map(|(vs, k)| json!({ "vertices": vs, "genus": k })).collect();
    match format {
        Format::Json => {
            let witness: Value = serde_json::from_str(&w.map.to_json()).unwrap();
            emit(
                &(pretty(&json!({ "graph": name, "genus": w.genus, "components": components, "witness": witness }))
                    + "\n"),
            );
        }
        Format::Text => {
            let mut s = format!("graph {name}: genus {}\n", w.genus);
            if w.components.len() > 1 {
                let parts: Vec<String> = w.components.iter().map(|(_, k)| k.to_string()).collect();
                s += &format!("components: {} = {}\n", parts.join(" + "), w.genus);
            }
            s += &format!("witness: {}\n", w.map.to_json());
            emit(&s);
        }
    }
    Ok(())
}

fn report_json(report: &EnumerationReport, polygons: bool) -> Value {
    let mut v = serde_json::to_value(report).unwrap();
    if polygons {
        for (c, out) in report.classes.iter().zip(v["classes"].as_array_mut().unwrap()) {
            out["polygons"] = serde_json::to_value(polygon_decomposition(&c.representative)).unwrap();
        }
    }
    v
}

fn report_text(report: &EnumerationReport, polygons: bool) -> String {
    let mut s = format!("graph {}: {} rotation systems\n", report.graph, report.total);
    let hist: Vec<String> = report.genus_histogram.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    s += &format!("genus histogram: {}\n", hist.join(" "));
    s += &format!(
        "genus {} classes ({} decoration): {}\n",
        report.target_genus,
        report.decoration,
        report.classes.len()
    );
    for (i, c) in report.classes.iter().enumerate() {
        s += &format!(
            "  {}. faces {:?}  labelled {}  canonical {}\n",
            i + 1,
            c.face_signature,
            c.labelled_count,
            c.canonical.to_hex()
        );
        s += &format!("     rotations {}\n", c.representative.to_json());
        if polygons {
            for p in polygon_decomposition(&c.representative) {
                s += &format!("     {}-gon {}\n", p.sides(), p.labels.join(" "));
            }
        }
    }
    s += &format!("time {} ms\n", report.wall_time_ms);
    s
}

fn class_svg_path(base: &Path, i: usize) -> PathBuf {
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "class".into());
    base.with_file_name(format!("{stem}-{i}.svg"))
}

#[allow(clippy::too_many_arguments)]
fn cmd_catalog(
    input: &Input,
    genus: usize,
    decoration: DecorationKind,
    format: Format,
    threads: usize,
    polygons: bool,
    svg: Option<&Path>,
) -> Outcome {
    let (name, g) = input.load()?;
    let report = enumerate_classes(&g, &name, genus, decoration, &options(threads)?)?;
    match format {
        Format::Json => emit(&(pretty(&report_json(&report, polygons)) + "\n")),
        Format::Text => emit(&report_text(&report, polygons)),
    }
    if let Some(base) = svg {
        for (i, c) in report.classes.iter().enumerate() {
            let title = format!("{name} class {} faces {:?}", i + 1, c.face_signature);
            let drawing = polygons_svg(&polygon_decomposition(&c.representative), &title);
            write_output(&class_svg_path(base, i + 1), &drawing)?;
        }
    }
    Ok(())
}

fn cmd_verify(format: Format, threads: usize) -> Outcome {
    let report = verify_paper(&options(threads)?);
    match format {
        Format::Json => emit(&(pretty(&report) + "\n")),
        Format::Text => emit(&report.summary()),
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn cmd_render(file: &Path, svg: Option<&Path>, title: &str) -> Outcome {
    let m = RotationMap::from_json(&read_input(file)?)?;
    let drawing = map_svg(&m, title);
    match svg {
        Some(path) => write_output(path, &drawing),
        None => {
            emit(&drawing);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Genus { input, format } => cmd_genus(input, *format),
        Command::Catalog { input, genus, decoration, format, threads, polygons, svg } => {
            cmd_catalog(input, *genus, *decoration, *format, *threads, *polygons, svg.as_deref())
        }
        Command::VerifyPaper { format, threads } => cmd_verify(*format, *threads),
        Command::Render { file, svg, title } => cmd_render(file, svg.as_deref(), title),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(EXIT_VERIFY),
        Err(Failure::Core(e @ Error::Budget { .. })) => {
            eprintln!("toratlas: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        Err(Failure::Core(e)) => {
            eprintln!("toratlas: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("toratlas: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
