//! Command-line front end: problem files in, result documents, heuristic
//! tables, verification reports and SVG plots out.

pub mod document;
pub mod plot;
pub mod problem;

use std::io::Write;
use std::path::PathBuf;

use cadkit::engine::{solve, verify_invariance, Algorithm, CadResult, EngineError};
use cadkit::heuristics::{
    enumerate_formulations, greedy_order, parse_blocks, rank_formulations, Dimensions, MeasureSpec, Ranking,
};
use cadkit::lifting::check_structure;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use problem::{parse_algorithm, Loaded, ProblemFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{summary}")]
    Fail { summary: String, details: Vec<String> },
    #[error("verification found {0} problem(s)")]
    Verify(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Verify(_) => 1,
            CliError::Fail { .. } => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cadkit", version, about = "Cylindrical algebraic decomposition")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Problem file (JSON).
    pub file: PathBuf,
    /// Print only the cell count.
    #[arg(long)]
    pub summary: bool,
    /// Include the projection set with provenance tags.
    #[arg(long)]
    pub dump_projection: bool,
    /// Report every failing cell, not just the first.
    #[arg(long)]
    pub all_failures: bool,
    /// Output format: json or text (default from the file, else json).
    #[arg(long)]
    pub format: Option<String>,
}

#[derive(Debug, Args)]
pub struct TaskArgs {
    /// Problem file (JSON).
    pub file: PathBuf,
    /// full, ec or tticad (default: the file's task, else full).
    #[arg(long)]
    pub algorithm: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign-invariant CAD of all polynomials.
    Full(BuildArgs),
    /// CAD invariant with respect to the (implicit) equational constraint.
    Ec(BuildArgs),
    /// Truth-table invariant CAD of the clauses.
    Tticad(BuildArgs),
    /// Rank problem formulations by projection measures.
    Heuristic {
        #[command(flatten)]
        task: TaskArgs,
        /// sotd, ndrr, sotd,ndrr (lexicographic) or weighted:w1,w2.
        #[arg(long, default_value = "sotd")]
        measure: String,
        /// order, ec, split or all (comma separated).
        #[arg(long, default_value = "order")]
        choose: String,
        /// Variable blocks, lowest first, e.g. "x;y,z".
        #[arg(long)]
        blocks: Option<String>,
        /// Maximum number of candidates.
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Build a CAD and re-check invariance at random points of every cell.
    Verify {
        #[command(flatten)]
        task: TaskArgs,
        /// Random points per cell (default: the file's option, else 5).
        #[arg(long)]
        samples: Option<usize>,
        /// Sampling seed (default: the file's option, else 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// SVG of the curves and cell samples of a two-variable problem.
    Plot {
        #[command(flatten)]
        task: TaskArgs,
        /// Output file (default: standard output).
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// xmin,xmax,ymin,ymax (default: around all samples).
        #[arg(long, allow_hyphen_values = true)]
        viewport: Option<String>,
    },
}

fn load(path: &PathBuf) -> Result<Loaded, CliError> {
    ProblemFile::read(path)?.load()
}

fn engine_error(e: EngineError, l: &Loaded) -> CliError {
    match e {
        EngineError::Input(m) => CliError::Input(m),
        EngineError::Fail(f) => CliError::Fail {
            summary: f.to_string(),
            details: f.failures.iter().map(|x| x.describe(&l.problem.order)).collect(),
        },
    }
}

fn build(l: &Loaded, alg: Algorithm, all_failures: bool) -> Result<CadResult, CliError> {
    solve(&l.problem.formula, alg, all_failures).map_err(|e| engine_error(e, l))
}

fn task_algorithm(t: &TaskArgs, l: &Loaded) -> Result<Algorithm, CliError> {
    match &t.algorithm {
        Some(a) => parse_algorithm(a),
        None => Ok(l.task.unwrap_or(Algorithm::Full)),
    }
}

fn run_build(a: &BuildArgs, alg: Algorithm, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load(&a.file)?;
    let r = build(&l, alg, a.all_failures)?;
    let order = &l.problem.order;
    let format = a.format.clone().or_else(|| l.options.format.clone()).unwrap_or_else(|| "json".into());
    let text = if a.summary {
        let mut s = format!("cells: {}\n", r.cell_count());
        if a.dump_projection {
            s.push_str(&r.cad.projection.dump(order));
        }
        s
    } else {
        match format.as_str() {
            "json" => {
                let doc = document::build(&r, order, &l.names, a.dump_projection);
                let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
                s.push('\n');
                s
            }
            "text" => {
                let mut s = document::text(&r, order);
                if a.dump_projection {
                    s.push_str(&r.cad.projection.dump(order));
                }
                s
            }
            other => return Err(CliError::Input(format!("unknown format '{}' (json or text)", other))),
        }
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, s: &str) -> Result<(), CliError> {
    out.write_all(s.as_bytes()).map_err(|e| CliError::Input(format!("write failed: {}", e)))
}

fn parse_dimensions(s: &str) -> Result<Dimensions, CliError> {
    let mut d = Dimensions::default();
    for part in s.split(',').map(str::trim) {
        match part {
            "order" => d.order = true,
            "ec" => d.ec = true,
            "split" => d.split = true,
            "all" => d = Dimensions::all(),
            other => return Err(CliError::Input(format!("unknown dimension '{}' (order, ec, split, all)", other))),
        }
    }
    Ok(d)
}

fn ranking_table(r: &Ranking) -> String {
    let mut s = format!("{:>3}  {:>6}  {:>5}  {:>8}  formulation\n", "#", "sotd", "ndrr", "score");
    for (i, row) in r.rows.iter().enumerate() {
        let mark = if i == r.best { "*" } else { " " };
        match &row.measures {
            Ok(m) => s.push_str(&format!(
                "{:>2}{}  {:>6}  {:>5}  {:>8}  {}\n",
                i + 1,
                mark,
                m.sotd,
                m.ndrr,
                row.score.map_or("-".into(), |v| format!("{:.4}", v)),
                row.formulation
            )),
            Err(e) => s.push_str(&format!("{:>2}{}  {:>6}  {:>5}  {:>8}  {} ({})\n", i + 1, mark, "-", "-", "-", row.formulation, e)),
        }
    }
    s
}

fn run_heuristic(
    t: &TaskArgs,
    measure: &str,
    choose: &str,
    blocks: Option<&str>,
    limit: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let l = load(&t.file)?;
    let alg = task_algorithm(t, &l)?;
    let spec = MeasureSpec::parse(measure).map_err(CliError::Input)?;
    let dims = parse_dimensions(choose)?;
    let blocks = blocks.map(|b| parse_blocks(b, &l.problem.order)).transpose().map_err(CliError::Input)?;
    let e = enumerate_formulations(&l.problem, dims, blocks.as_deref(), limit);
    let ranking = rank_formulations(&e.formulations, &l.problem, alg, &spec).map_err(|x| engine_error(x, &l))?;
    let mut s = format!("measure: {}\nalgorithm: {}\ncandidates: {}\n", spec, alg, e.formulations.len());
    if let Some(w) = e.warning() {
        s.push_str(&format!("warning: {}\n", w));
    }
    if matches!(spec, MeasureSpec::Weighted(_)) {
        s.push_str("note: each measure is divided by its maximum over the candidates before weighting\n");
    }
    s.push_str(&ranking_table(&ranking));
    s.push_str(&format!("chosen: {}\n", ranking.best()));
    if dims.order {
        let g = greedy_order(&l.problem.formula.all_polys(), &l.problem.order, blocks.as_deref());
        s.push_str(&format!("greedy order: {}\n", g.names().join("<")));
    }
    write_out(out, &s)
}

fn run_verify(t: &TaskArgs, samples: Option<usize>, seed: Option<u64>, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load(&t.file)?;
    let alg = task_algorithm(t, &l)?;
    let r = build(&l, alg, false)?;
    let samples = samples.or(l.options.samples).unwrap_or(5);
    let seed = seed.or(l.options.seed).unwrap_or(0);
    let rep = verify_invariance(&r, samples, seed);
    let structure = check_structure(&r.cad);
    let mut s = format!(
        "algorithm: {}\ncells: {}\nrandom points: {}\nviolations: {}\nstructure problems: {}\n",
        alg,
        r.cell_count(),
        rep.points_checked,
        rep.violations.len(),
        structure.len()
    );
    for v in &rep.violations {
        let idx: Vec<String> = v.cell_index.iter().map(|j| j.to_string()).collect();
        s.push_str(&format!("violation ({}): {}\n", idx.join(","), v.message));
    }
    for m in &structure {
        s.push_str(&format!("structure: {}\n", m));
    }
    write_out(out, &s)?;
    let bad = rep.violations.len() + structure.len();
    if bad > 0 {
        return Err(CliError::Verify(bad));
    }
    Ok(())
}

fn run_plot(t: &TaskArgs, output: Option<&PathBuf>, viewport: Option<&str>, out: &mut dyn Write) -> Result<(), CliError> {
    let l = load(&t.file)?;
    if l.problem.order.len() != 2 {
        return Err(CliError::Input(format!("plot needs two variables, the problem has {}", l.problem.order.len())));
    }
    let alg = task_algorithm(t, &l)?;
    let vp = viewport.map(plot::Viewport::parse).transpose()?;
    let r = build(&l, alg, false)?;
    let svg = plot::svg(&r, &l.names, vp)?;
    match output {
        Some(p) => std::fs::write(p, svg).map_err(|e| CliError::Input(format!("cannot write {}: {}", p.display(), e))),
        None => write_out(out, &svg),
    }
}

/// Caps the worker pool at `CADKIT_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("CADKIT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let msg = e.render().to_string();
            let _ = if code == 0 { out.write_all(msg.as_bytes()) } else { err.write_all(msg.as_bytes()) };
            return code;
        }
    };
    configure_threads();
    let res = match &cli.command {
        Command::Full(a) => run_build(a, Algorithm::Full, out),
        Command::Ec(a) => run_build(a, Algorithm::Ec, out),
        Command::Tticad(a) => run_build(a, Algorithm::Tticad, out),
        Command::Heuristic { task, measure, choose, blocks, limit } => {
            run_heuristic(task, measure, choose, blocks.as_deref(), *limit, out)
        }
        Command::Verify { task, samples, seed } => run_verify(task, *samples, *seed, out),
        Command::Plot { task, output, viewport } => run_plot(task, output.as_ref(), viewport.as_deref(), out),
    };
    match res {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            if let CliError::Fail { details, .. } = &e {
                for d in details {
                    let _ = writeln!(err, "  {}", d);
                }
            }
            e.exit_code()
        }
    }
}
