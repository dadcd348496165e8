//! `vcover`: numberings, cut systems and cyclic coverings of `.gauss` files.
//!
//! Exit status is 0 for success or an affirmative answer, 1 for a negative
//! answer and 2 for bad input.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use vcover::numbering::Solution;
use vcover::{
    apply_move, build_constraints, canonical_cut_system, canonical_key, cover, defect_gcd, generate,
    obstruct, parse_diagram, parse_unchecked, random_walk, serialize, solve, CutSystem, Diagram,
    Generator, RMove, Verdict,
};

#[derive(Parser)]
#[command(name = "vcover", version, about = "Cut systems and cyclic covering diagrams of virtual links")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every crossing has one Over, one Under and a sign.
    Validate { file: PathBuf },
    /// Solve for an Alexander numbering with the file's cut marks.
    Number {
        file: PathBuf,
        /// Modulus; 0 means the integers.
        #[arg(long = "mod")]
        modulus: u32,
    },
    /// Emit the canonical cut system or check the inline one.
    Cutsys {
        file: PathBuf,
        #[command(flatten)]
        mode: CutsysMode,
    },
    /// Build the m-fold cyclic covering diagram.
    Cover {
        file: PathBuf,
        #[arg(short)]
        m: u32,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Also emit the map from new crossings to (crossing, sheet).
        #[arg(long)]
        trace: bool,
    },
    /// Writhe, linking matrix, odd writhes and fingerprint.
    Invariants {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Worker threads for several files.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compare the covering with m copies of the diagram.
    Obstruct {
        file: PathBuf,
        #[arg(short)]
        m: u32,
    },
    /// Decide whether two diagrams are the same up to relabeling.
    Iso { a: PathBuf, b: PathBuf },
    /// Apply Reidemeister moves.
    Move {
        file: PathBuf,
        #[command(flatten)]
        how: MoveMode,
        #[arg(long, default_value_t = 0, requires = "random")]
        seed: u64,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Where to write the move log.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Print a generated diagram.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CutsysMode {
    #[arg(long)]
    canonical: bool,
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MoveMode {
    /// Number of random moves.
    #[arg(long)]
    random: Option<usize>,
    /// A move or an array of moves in the move-log format.
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Subcommand)]
enum GenKind {
    Torus2q { q: u32 },
    Vtrefoil,
    Hopf,
    Random { crossings: u32, components: u32, seed: u64 },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> Result<(Diagram, CutSystem)> {
    parse_diagram(&read(path)?).with_context(|| format!("{}", path.display()))
}

/// Inline marks if the file has any, the canonical system otherwise.
fn marks_or_canonical(d: &Diagram, p: CutSystem) -> CutSystem {
    if p.is_empty() {
        canonical_cut_system(d)
    } else {
        p
    }
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn validate(file: &Path, json: bool) -> Result<u8> {
    let (d, p) = parse_unchecked(&read(file)?).with_context(|| format!("{}", file.display()))?;
    let mut problems: Vec<String> = d.validate().iter().map(ToString::to_string).collect();
    if problems.is_empty() {
        if let Err(e) = p.check_located(&d) {
            problems.push(e.to_string());
        }
    }
    if json {
        print_json(&json!({ "valid": problems.is_empty(), "violations": problems }))?;
    } else if problems.is_empty() {
        println!("valid: {} components, {} crossings", d.component_count(), d.crossing_count());
    } else {
        for v in &problems {
            println!("{v}");
        }
    }
    Ok(status(problems.is_empty()))
}

fn number(file: &Path, m: u32, json: bool) -> Result<u8> {
    let (d, p) = load(file)?;
    let g = build_constraints(&d, &p)?;
    let gcd = defect_gcd(&g);
    match solve(&g, m) {
        Solution::Solved(n) => {
            if json {
                let values: BTreeMap<String, i64> = n.values.iter().map(|(a, v)| (a.to_string(), *v)).collect();
                print_json(&json!({ "solved": true, "modulus": m, "defect_gcd": gcd, "values": values }))?;
            } else {
                let width = n.values.keys().map(|a| a.to_string().len()).max().unwrap_or(0).max(3);
                println!("{:<width$}  value", "arc");
                for (a, v) in &n.values {
                    println!("{:<width$}  {v}", a.to_string());
                }
            }
            Ok(0)
        }
        Solution::Unsolvable(w) => {
            let steps: Vec<_> = w
                .steps
                .iter()
                .map(|s| json!({ "from": s.from.to_string(), "to": s.to.to_string(), "offset": s.offset }))
                .collect();
            if json {
                print_json(&json!({
                    "solved": false,
                    "modulus": m,
                    "defect_gcd": gcd,
                    "witness": { "residual": w.residual(), "steps": steps },
                }))?;
            } else {
                println!("no numbering mod {m}: cycle with residual {}", w.residual());
                let width = w.steps.iter().map(|s| s.from.to_string().len()).max().unwrap_or(0);
                for s in &w.steps {
                    println!("  {:<width$} -> {}  {:+}", s.from.to_string(), s.to, s.offset);
                }
            }
            Ok(1)
        }
    }
}

fn cutsys(file: &Path, mode: &CutsysMode, json: bool) -> Result<u8> {
    let (d, p) = load(file)?;
    if mode.canonical {
        let text = serialize(&d, &canonical_cut_system(&d))?;
        if json {
            print_json(&json!({ "gauss": text }))?;
        } else {
            println!("{text}");
        }
        return Ok(0);
    }
    p.check_located(&d)?;
    let valid = p.is_valid(&d);
    let (coh, incoh) = vcover::cuts::balance(&p);
    if json {
        print_json(&json!({ "valid": valid, "coherent": coh, "incoherent": incoh }))?;
    } else {
        println!("{}: {coh} coherent, {incoh} incoherent", if valid { "valid" } else { "invalid" });
    }
    Ok(status(valid))
}

fn cover_cmd(file: &Path, m: u32, out: Option<&Path>, trace: bool, json: bool) -> Result<u8> {
    let (d, p) = load(file)?;
    let p = marks_or_canonical(&d, p);
    let s = cover(&d, &p, m)?;
    let text = serialize(&s.diagram, &CutSystem::empty())?;
    let map: BTreeMap<u32, [u32; 2]> = s.crossing_origin.iter().map(|(&n, &(c, k))| (n, [c, k])).collect();
    if json && out.is_none() {
        let mut doc = json!({ "gauss": text, "components": s.diagram.component_count() });
        if trace {
            doc["trace"] = json!(map);
        }
        return print_json(&doc).map(|_| 0);
    }
    match out {
        Some(path) => {
            write_out(Some(path), &text)?;
            if trace {
                let mut side = path.as_os_str().to_owned();
                side.push(".trace.json");
                fs::write(&side, format!("{}\n", serde_json::to_string(&map)?))
                    .with_context(|| format!("cannot write {}", Path::new(&side).display()))?;
            }
        }
        None => {
            if trace {
                println!("# trace {}", serde_json::to_string(&map)?);
            }
            println!("{text}");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct FileReport {
    file: String,
    #[serde(flatten)]
    report: vcover::invariants::InvariantReport,
}

fn invariants(files: &[PathBuf], jobs: usize, json: bool) -> Result<u8> {
    let work = |f: &PathBuf| -> Result<FileReport> {
        let (d, _) = load(f)?;
        Ok(FileReport { file: f.display().to_string(), report: vcover::invariants::report(&d) })
    };
    let results: Vec<Result<FileReport>> = run_jobs(files, jobs, work)?;
    let reports: Vec<FileReport> = results.into_iter().collect::<Result<_>>()?;
    if json {
        if reports.len() == 1 {
            print_json(&reports[0].report)?;
        } else {
            print_json(&reports)?;
        }
        return Ok(0);
    }
    let width = reports.iter().map(|r| r.file.len()).max().unwrap_or(0).max(4);
    println!("{:<width$}  comps  writhe  fingerprint", "file");
    for r in &reports {
        println!("{:<width$}  {:>5}  {:>6}  {}", r.file, r.report.components, r.report.writhe, r.report.fingerprint);
    }
    Ok(0)
}

#[cfg(feature = "parallel")]
fn run_jobs<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    if jobs <= 1 {
        return Ok(vcover::batch::map_sequential(items, f));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(pool.install(|| vcover::batch::map_parallel(items, f)))
}

#[cfg(not(feature = "parallel"))]
fn run_jobs<T, R, F>(items: &[T], _jobs: usize, f: F) -> Result<Vec<R>>
where
    F: Fn(&T) -> R,
{
    Ok(vcover::batch::map_sequential(items, f))
}

fn obstruct_cmd(file: &Path, m: u32, json: bool) -> Result<u8> {
    let (d, p) = load(file)?;
    let verdict = obstruct(&d, &marks_or_canonical(&d, p), m)?;
    if json {
        print_json(&verdict)?;
    } else {
        println!("{verdict}");
    }
    Ok(status(matches!(verdict, Verdict::Obstructed { .. })))
}

fn iso(a: &Path, b: &Path, json: bool) -> Result<u8> {
    let (ka, kb) = (canonical_key(&load(a)?.0), canonical_key(&load(b)?.0));
    let same = ka == kb;
    if json {
        print_json(&json!({ "isomorphic": same, "keys": [ka.to_string(), kb.to_string()] }))?;
    } else {
        println!("{}", if same { "isomorphic" } else { "not isomorphic" });
    }
    Ok(status(same))
}

fn move_cmd(
    file: &Path,
    how: &MoveMode,
    seed: u64,
    out: Option<&Path>,
    log_path: Option<&Path>,
    json: bool,
) -> Result<u8> {
    let (d, _) = load(file)?;
    let (result, log) = match (&how.random, &how.spec) {
        (Some(n), _) => random_walk(&d, *n, seed),
        (None, Some(spec)) => {
            let moves: Vec<RMove> = match serde_json::from_str::<Vec<RMove>>(spec) {
                Ok(v) => v,
                Err(_) => vec![serde_json::from_str::<RMove>(spec).context("bad move spec")?],
            };
            let mut cur = d;
            for mv in &moves {
                cur = apply_move(&cur, mv)?;
            }
            (cur, moves)
        }
        (None, None) => bail!("one of --random or --spec is required"),
    };
    let text = serialize(&result, &CutSystem::empty())?;
    let log_text = serde_json::to_string(&log)?;
    if let Some(path) = log_path {
        fs::write(path, format!("{log_text}\n")).with_context(|| format!("cannot write {}", path.display()))?;
    }
    if json && out.is_none() {
        print_json(&json!({ "gauss": text, "log": log }))?;
    } else if out.is_some() {
        write_out(out, &text)?;
    } else {
        if log_path.is_none() {
            println!("# moves {log_text}");
        }
        println!("{text}");
    }
    Ok(0)
}

fn gen(kind: &GenKind, json: bool) -> Result<u8> {
    let g = match *kind {
        GenKind::Torus2q { q } => Generator::Torus2q(q),
        GenKind::Vtrefoil => Generator::VirtualTrefoil,
        GenKind::Hopf => Generator::Hopf,
        GenKind::Random { crossings, components, seed } => Generator::Random { crossings, components, seed },
    };
    let text = serialize(&generate(g), &CutSystem::empty())?;
    if json {
        print_json(&json!({ "gauss": text }))?;
    } else {
        println!("{text}");
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { file } => validate(file, json),
        Command::Number { file, modulus } => number(file, *modulus, json),
        Command::Cutsys { file, mode } => cutsys(file, mode, json),
        Command::Cover { file, m, out, trace } => cover_cmd(file, *m, out.as_deref(), *trace, json),
        Command::Invariants { files, jobs } => invariants(files, *jobs, json),
        Command::Obstruct { file, m } => obstruct_cmd(file, *m, json),
        Command::Iso { a, b } => iso(a, b, json),
        Command::Move { file, how, seed, out, log } => move_cmd(file, how, *seed, out.as_deref(), log.as_deref(), json),
        Command::Gen { kind } => gen(kind, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
