use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use drgkit::families::{parse_params, FamilySpec};
use drgkit::pvt::{check_pvt, t_isomorphic_srg};
use drgkit::report::{analyze, AnalyzeOptions, VertexSelector};
use drgkit::reproduce::{reproduce, Table};
use drgkit::{load_graph, save_graph, Error, Graph};

const EXIT_USAGE: u8 = 1;
const EXIT_ANALYSIS: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Above this many vertices `--all-vertices` needs `--slow`.
const ALL_VERTICES_LIMIT: usize = 100;

#[derive(Parser)]
#[command(name = "drgkit", version, about = "Terwilliger algebras of small distance-regular graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a named family and write it as JSON.
    Construct {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write a JSON analysis report.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0, conflicts_with = "all_vertices")]
        base_vertex: usize,
        #[arg(long)]
        all_vertices: bool,
        /// Allow --all-vertices on graphs with more than 100 vertices.
        #[arg(long)]
        slow: bool,
        /// Report uncertified eigenvalues as floats instead of failing.
        #[arg(long)]
        float_fallback: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pseudo-vertex-transitivity verdict.
    Pvt {
        #[command(flatten)]
        input: Input,
    },
    /// T-isomorphism of two strongly regular graphs.
    Tiso { first: PathBuf, second: PathBuf },
    /// Regenerate a published table and compare.
    Reproduce {
        /// One of shrikhande, chang, gq, taylor, at4, j82; all when omitted.
        #[arg(long)]
        table: Option<String>,
        /// Include the 128-vertex halved 8-cube.
        #[arg(long)]
        slow: bool,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Comma-separated integers.
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Args)]
struct Input {
    /// Graph file (JSON or edge list).
    graph: Option<PathBuf>,
    #[arg(long, conflicts_with = "graph")]
    family: Option<String>,
    #[arg(long, default_value = "", requires = "family")]
    params: String,
}

enum Failure {
    Usage(String),
    Analysis(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidFamily(_) => Failure::Usage(e.to_string()),
            e => Failure::Analysis(e),
        }
    }
}

fn family_graph(family: &str, params: &str) -> Result<Graph, Failure> {
    let params = parse_params(params).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(FamilySpec::new(family, &params)?.construct()?)
}

fn load(input: &Input) -> Result<Graph, Failure> {
    match (&input.graph, &input.family) {
        (Some(path), None) => Ok(load_graph(path)?),
        (None, Some(f)) => family_graph(f, &input.params),
        _ => Err(Failure::Usage("give a graph file or --family".into())),
    }
}

fn emit(json: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, format!("{json}\n")).map_err(|e| Failure::Analysis(e.into())),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Construct { family, out } => {
            let g = family_graph(&family.family, &family.params)?;
            save_graph(&g, &out)?;
            let degree = g.regular_degree().map_or("not regular".to_string(), |k| format!("{k}-regular"));
            println!("{}: n = {}, {degree}, wrote {}", g.label().unwrap_or("graph"), g.n(), out.display());
            Ok(())
        }
        Command::Analyze { input, base_vertex, all_vertices, slow, float_fallback, out } => {
            let g = load(&input)?;
            if all_vertices && g.n() > ALL_VERTICES_LIMIT && !slow {
                return Err(Failure::Usage(format!(
                    "--all-vertices on {} vertices needs --slow",
                    g.n()
                )));
            }
            let vertices = if all_vertices { VertexSelector::All } else { VertexSelector::One(base_vertex) };
            let report = analyze(&g, &AnalyzeOptions { vertices, allow_float: float_fallback })?;
            emit(&report.to_json(), out.as_ref())
        }
        Command::Pvt { input } => {
            let g = load(&input)?;
            let v = check_pvt(&g)?;
            emit(&serde_json::to_string_pretty(&v).expect("verdict serializes"), None)
        }
        Command::Tiso { first, second } => {
            let (g1, g2) = (load_graph(&first)?, load_graph(&second)?);
            let r = t_isomorphic_srg(&g1, &g2)?;
            emit(&serde_json::to_string_pretty(&r).expect("result serializes"), None)
        }
        Command::Reproduce { table, slow } => {
            let tables = match table {
                Some(t) => vec![t.parse::<Table>().map_err(|e| Failure::Usage(e.to_string()))?],
                None => Table::ALL.to_vec(),
            };
            let mut ok = true;
            for t in tables {
                let rep = reproduce(t, slow)?;
                println!("{rep}");
                ok &= rep.all_match();
            }
            if ok {
                Ok(())
            } else {
                Err(Failure::Mismatch)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Analysis(e)) => {
            eprintln!("analysis failed: {e}");
            ExitCode::from(EXIT_ANALYSIS)
        }
        Err(Failure::Mismatch) => {
            eprintln!("reproduction mismatch");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}
