use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use linkedsat::formula::{parse_dimacs, Assignment, Formula, Semantics, Var};
use linkedsat::gadgets::Variant;
use linkedsat::layout::{grid_embed, parity_scale, GridDrawing};
use linkedsat::planarity::{build_incidence_graph, planarity_test, PlanarityResult};
use linkedsat::reduction::{parse_linked_instance, reduce_formula, reduce_side, Method, ReductionError};
use linkedsat::render::{render_drawing_svg, render_linked_svg};
use linkedsat::satisfiers::{
    brute_count, brute_solve, exact_count, four_color_satisfy, matching_satisfy, SatError, BRUTE_VAR_CAP,
};
use linkedsat::verify::{gen_instance, parse_order_comment, verify_linked, GenClass};

#[derive(Parser)]
#[command(name = "linkedsat", version, about = "Planar and linked planar SAT reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a DIMACS file and print its classification.
    Parse { input: PathBuf },
    /// Compute a parity-scaled straight-line drawing of the incidence graph.
    Embed {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a formula to a linked instance.
    Reduce {
        input: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a satisfying assignment.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: SolveMethod,
        #[arg(long, value_enum, default_value = "cnf")]
        semantics: SemanticsArg,
    },
    /// Count satisfying assignments exactly.
    Count {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "cnf")]
        semantics: SemanticsArg,
    },
    /// Check a linked instance against the formula it came from.
    Verify {
        instance: PathBuf,
        #[arg(long)]
        against: PathBuf,
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    /// Generate a seeded planar instance.
    Gen {
        #[arg(long)]
        class: String,
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        seed: u64,
        /// Defaults to the number of variables.
        #[arg(long)]
        clauses: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a formula or linked instance as SVG.
    Render {
        input: PathBuf,
        /// Positions from `embed`; computed when absent.
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Basic,
    OneInThree,
    ThreeDistinct,
    Monotone,
    Side,
}

impl VariantArg {
    fn method(self) -> Method {
        match self {
            VariantArg::Basic => Method::Connector(Variant::Basic),
            VariantArg::OneInThree => Method::Connector(Variant::OneInThree),
            VariantArg::ThreeDistinct => Method::Connector(Variant::ThreeDistinct),
            VariantArg::Monotone => Method::Connector(Variant::Monotone),
            VariantArg::Side => Method::Side,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveMethod {
    Brute,
    Matching,
    FourColor,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Cnf,
    #[value(name = "1in3")]
    OneInThree,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Semantics {
        match s {
            SemanticsArg::Cnf => Semantics::Cnf,
            SemanticsArg::OneInThree => Semantics::OneInThree,
        }
    }
}

enum Failure {
    /// Usage, input or precondition problem: exit 2.
    Usage(String),
    /// The question has a negative answer: exit 1.
    Domain(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_formula(path: &Path) -> Result<(Formula, String), Failure> {
    let text = read(path)?;
    let f = parse_dimacs(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok((f, text))
}

/// Writes via a sibling temporary file so readers never see a partial output.
fn write_atomic(path: &Path, data: &str) -> Outcome {
    let err = |e: std::io::Error| usage(format!("{}: {e}", path.display()));
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().ok_or_else(|| usage(format!("{}: not a file path", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, data).map_err(err)?;
    fs::rename(&tmp, path).map_err(err)
}

fn emit(out: Option<&Path>, data: &str) -> Outcome {
    match out {
        Some(p) => write_atomic(p, data),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(data.as_bytes()).and_then(|_| so.flush()).map_err(|e| usage(format!("stdout: {e}")))
        }
    }
}

fn assignment_line(a: &Assignment) -> String {
    let lits: Vec<String> =
        (1..=a.len() as Var).map(|v| if a.get(v) { v.to_string() } else { format!("-{v}") }).collect();
    format!("v {} 0", lits.join(" "))
}

fn sat_failure(e: SatError) -> Failure {
    match e {
        SatError::VarCapExceeded { .. } | SatError::PreconditionViolated(_) => usage(e.to_string()),
        SatError::ColoringExhausted(_) | SatError::MatchingIncomplete { .. } => Failure::Domain(e.to_string()),
    }
}

fn drawing_for(f: &Formula, given: Option<&Path>) -> Result<GridDrawing, Failure> {
    let g = build_incidence_graph(f).map_err(|e| usage(e.to_string()))?;
    match given {
        Some(p) => {
            let nv = f.num_vars() as usize;
            let edges = g.edges.iter().map(|e| (e.var as usize - 1, nv + e.clause)).collect();
            GridDrawing::parse_pos_text(&read(p)?, nv, f.num_clauses(), edges)
                .map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        None => grid_embed(&g).map_err(|e| Failure::Domain(e.to_string())),
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Parse { input } => {
            let (f, _) = read_formula(&input)?;
            let mut s = format!("vars {}\nclauses {}\n", f.num_vars(), f.num_clauses());
            s.push_str(&f.classify().to_string());
            let planar = match build_incidence_graph(&f) {
                Ok(g) => linkedsat::planarity::is_planar(&g.graph).to_string(),
                Err(e) => format!("n/a ({e})"),
            };
            s.push_str(&format!("planar {planar}\n"));
            emit(None, &s)
        }
        Command::Embed { input, out } => {
            let (f, _) = read_formula(&input)?;
            let d = drawing_for(&f, None)?;
            let scaled = parity_scale(&d);
            emit(out.as_deref(), &format!("# scale factor {}\n{}", scaled.factor, scaled.drawing.to_pos_text()))
        }
        Command::Reduce { input, variant, out } => {
            let (f, text) = read_formula(&input)?;
            let li = match variant.method() {
                Method::Connector(v) => reduce_formula(&f, v),
                Method::Side => {
                    let order = parse_order_comment(&text).unwrap_or_else(|| (1..=f.num_vars()).collect());
                    reduce_side(&f, &order)
                }
            };
            let li = li.map_err(|e| match e {
                ReductionError::ClassMismatch { .. } | ReductionError::Layout(_) | ReductionError::Graph(_) => {
                    usage(e.to_string())
                }
                _ => Failure::Domain(e.to_string()),
            })?;
            emit(out.as_deref(), &li.to_text())
        }
        Command::Solve { input, method, semantics } => {
            let (f, _) = read_formula(&input)?;
            let a = match method {
                SolveMethod::Brute => brute_solve(&f, semantics.into()).map_err(sat_failure)?,
                SolveMethod::Matching => Some(matching_satisfy(&f).map_err(sat_failure)?.assignment),
                SolveMethod::FourColor => {
                    let g = build_incidence_graph(&f).map_err(|e| usage(e.to_string()))?;
                    let emb = match planarity_test(&g.graph) {
                        PlanarityResult::Planar(e) => e,
                        PlanarityResult::NonPlanar(_) => return Err(usage("precondition violated: incidence graph is not planar")),
                    };
                    Some(four_color_satisfy(&f, &emb).map_err(sat_failure)?.assignment)
                }
            };
            match a {
                Some(a) => emit(None, &format!("s SATISFIABLE\n{}\n", assignment_line(&a))),
                None => {
                    emit(None, "s UNSATISFIABLE\n")?;
                    Err(Failure::Domain("unsatisfiable".into()))
                }
            }
        }
        Command::Count { input, semantics } => {
            let (f, _) = read_formula(&input)?;
            let sem = semantics.into();
            let n = if f.num_vars() <= BRUTE_VAR_CAP {
                brute_count(&f, sem).map_err(sat_failure)?.to_string()
            } else {
                exact_count(&f, sem).to_string()
            };
            emit(None, &format!("{n}\n"))
        }
        Command::Verify { instance, against, variant } => {
            let li = parse_linked_instance(&read(&instance)?).map_err(|e| usage(format!("{}: {e}", instance.display())))?;
            let (orig, _) = read_formula(&against)?;
            let report = verify_linked(&li, &orig, variant.method());
            emit(None, &report.to_text())?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Domain("verification failed".into()))
            }
        }
        Command::Gen { class, vars, seed, clauses, out } => {
            let c = GenClass::parse(&class).ok_or_else(|| {
                let names: Vec<&str> = GenClass::ALL.iter().map(|c| c.name()).collect();
                usage(format!("unknown class `{class}` (expected one of {})", names.join(", ")))
            })?;
            let g = gen_instance(c, vars, clauses.unwrap_or(vars), seed).map_err(|e| usage(e.to_string()))?;
            emit(out.as_deref(), &g.to_text())
        }
        Command::Render { input, drawing, out } => {
            let text = read(&input)?;
            let svg = if text.trim_start().starts_with('[') {
                let li = parse_linked_instance(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
                render_linked_svg(&li)
            } else {
                let f = parse_dimacs(&text).map_err(|e| usage(format!("{}: {e}", input.display())))?;
                let d = drawing_for(&f, drawing.as_deref())?;
                render_drawing_svg(&f, &d)
            };
            write_atomic(&out, &svg.map_err(|e| usage(e.to_string()))?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("error: invalid arguments");
            eprintln!("{}", first.trim_end());
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
