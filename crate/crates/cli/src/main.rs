use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use treecycle::format::{
    parse_graph, parse_tree, to_edge_list, to_graph6, tree_to_edge_list, GraphFormat,
};
use treecycle::generate::{random_bipartite_noise, random_graph, tree_of_shape, TreeShape};
use treecycle::oracle::{self, OracleError, DEFAULT_ENUM_CAP};
use treecycle::witness::{find_witness, verify_witness, Mode, WitnessError, WitnessResult};
use treecycle::{Graph, Tree};

/// Largest truncated order the brute-force fallback will search.
const FALLBACK_MAX_ORDER: usize = 40;

const EXIT_INPUT: u8 = 1;
const EXIT_BOUNDS: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(
    name = "treecycle",
    version,
    about = "Tree versus odd-cycle Ramsey witnesses"
)]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    EdgeList,
    Graph6,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::EdgeList => GraphFormat::EdgeList,
            FormatArg::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find an m-cycle in G or the tree in the complement of G.
    Witness {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        cycle_length: usize,
        /// Refuse to run unless n >= 50m.
        #[arg(long)]
        strict: bool,
        /// On a failed bound, search exhaustively (orders up to 40).
        #[arg(long)]
        fallback_brute: bool,
        /// Graph input format; detected from content when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Check a witness document.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        cycle_length: usize,
        #[arg(long)]
        witness: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Smallest N such that every graph on N vertices has C_m or the tree in its complement.
    Brute {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        cycle_length: usize,
        #[arg(long)]
        max_n: usize,
        /// Largest C(N,2) to enumerate [env: RAMSEY_ENUM_CAP, default 28].
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check every graph of the given order.
    Arrow {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        cycle_length: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// K_{n-1,n-1}.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
    },
    /// Edge list of a tree on n vertices.
    GenTree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "random")]
        shape: TreeShape,
    },
    /// G(n, p), or K_{h,h} with flipped pairs when --planted.
    GenGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "planted", conflicts_with = "planted")]
        p: Option<f64>,
        #[arg(long, requires = "flip")]
        planted: bool,
        #[arg(long)]
        flip: Option<f64>,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Display) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path, format: Option<FormatArg>) -> Result<Graph, Failure> {
    parse_graph(&read(path)?, format.map(Into::into))
        .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<Tree, Failure> {
    parse_tree(&read(path)?).map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn check_cycle_length(m: usize) -> Result<(), Failure> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(fail(
            EXIT_INPUT,
            format!("--cycle-length must be odd and at least 3, got {m}"),
        ));
    }
    Ok(())
}

fn enum_cap(flag: Option<usize>) -> Result<usize, Failure> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("RAMSEY_ENUM_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| fail(EXIT_INPUT, format!("RAMSEY_ENUM_CAP is not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn oracle_failure(e: OracleError) -> Failure {
    match e {
        OracleError::CapExceeded { .. } => {
            fail(EXIT_BOUNDS, format!("{e} (use --cap or RAMSEY_ENUM_CAP)"))
        }
        OracleError::NotFound { .. } => fail(EXIT_BOUNDS, e),
        OracleError::InvalidInput(_) => fail(EXIT_INPUT, e),
    }
}

fn brute_witness(g: &Graph, t: &Tree, m: usize) -> Result<WitnessResult, Failure> {
    let n = t.order();
    let g = g.prefix(2 * n - 1);
    if g.order() > FALLBACK_MAX_ORDER {
        return Err(fail(
            EXIT_BOUNDS,
            format!(
                "fallback search limited to order {FALLBACK_MAX_ORDER}, need {}",
                g.order()
            ),
        ));
    }
    if let Some(c) = oracle::contains_cycle_of_length(&g, m) {
        return Ok(WitnessResult::Cycle(c));
    }
    if let Some(e) = oracle::contains_tree(&g.complement(), t) {
        return Ok(WitnessResult::Tree(e));
    }
    Err(fail(EXIT_BOUNDS, format!("no witness exists: the first {} vertices have no C_{m} and the complement has no copy of the tree", 2 * n - 1)))
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Witness {
            graph,
            tree,
            cycle_length: m,
            strict,
            fallback_brute,
            format,
        } => {
            check_cycle_length(m)?;
            let g = load_graph(&graph, format)?;
            let t = load_tree(&tree)?;
            let mode = if strict { Mode::Strict } else { Mode::Lenient };
            let w = match find_witness(&g, &t, m, mode) {
                Ok(w) => w,
                Err(WitnessError::InvalidInput(e)) => return Err(fail(EXIT_INPUT, e)),
                Err(e @ WitnessError::BoundsNotMet { .. }) if fallback_brute => {
                    eprintln!("{e}; falling back to exhaustive search");
                    brute_witness(&g, &t, m)?
                }
                Err(e @ WitnessError::BoundsNotMet { .. }) => return Err(fail(EXIT_BOUNDS, e)),
                Err(e @ WitnessError::Defect(_)) => return Err(fail(EXIT_VERIFY, e)),
            };
            verify_witness(&g, &t, m, &w).map_err(|e| fail(EXIT_VERIFY, e))?;
            Ok(w.to_json())
        }
        Command::Verify {
            graph,
            tree,
            cycle_length: m,
            witness,
            format,
        } => {
            check_cycle_length(m)?;
            let g = load_graph(&graph, format)?;
            let t = load_tree(&tree)?;
            let w = WitnessResult::from_json(&read(&witness)?, t.order())
                .map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", witness.display())))?;
            verify_witness(&g, &t, m, &w).map_err(|e| fail(EXIT_VERIFY, e))?;
            Ok("ok".into())
        }
        Command::Brute {
            tree,
            cycle_length: m,
            max_n,
            cap,
        } => {
            check_cycle_length(m)?;
            let t = load_tree(&tree)?;
            let r = oracle::ramsey_number_brute(&t, m, max_n, enum_cap(cap)?)
                .map_err(oracle_failure)?;
            Ok(r.to_string())
        }
        Command::Arrow {
            order,
            tree,
            cycle_length: m,
            jobs,
            cap,
        } => {
            check_cycle_length(m)?;
            let t = load_tree(&tree)?;
            let report = oracle::arrows_parallel(order, &t, m, enum_cap(cap)?, jobs)
                .map_err(oracle_failure)?;
            Ok(report.to_json())
        }
        Command::Extremal { n, format } => {
            let g = oracle::extremal_bipartite(n).map_err(oracle_failure)?;
            Ok(write_graph(&g, format))
        }
        Command::GenTree { n, seed, shape } => {
            if n == 0 {
                return Err(fail(EXIT_INPUT, "--n must be at least 1"));
            }
            Ok(tree_to_edge_list(&tree_of_shape(shape, n, seed)))
        }
        Command::GenGraph {
            n,
            p,
            planted,
            flip,
            seed,
            format,
        } => {
            let g = if planted {
                random_bipartite_noise(n, flip.expect("clap requires --flip"), seed)
            } else {
                random_graph(n, p.expect("clap requires --p"), seed)
            }
            .map_err(|e| fail(EXIT_INPUT, e))?;
            Ok(write_graph(&g, format))
        }
    }
}

fn write_graph(g: &Graph, format: FormatArg) -> String {
    match format {
        FormatArg::EdgeList => to_edge_list(g),
        FormatArg::Graph6 => to_graph6(g),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            let written = match &output {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_INPUT)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
