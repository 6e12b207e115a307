use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use irrtri::census::{
    check_census, enumerate_triangulations, parse_census_text, write_census, CensusFile, CensusOptions, Surface,
};
use irrtri::certificate::{
    build_good_s, build_simple_s, full_partition, move_postcondition_violations, verify_full_certificate,
    verify_simple_certificate, InequalityReport, Mode,
};
use irrtri::farkas::{builtin_table, parse_table, verify_derivation, Registry};
use irrtri::ops::{contract_edge, is_irreducible};
use irrtri::Triangulation;

#[derive(Parser)]
#[command(name = "irrtri", version, about = "Irreducible triangulations of surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that every entry of a census file is a triangulation of the declared surface.
    Validate { file: PathBuf },
    /// Print the Euler genus and orientability of each entry.
    Genus { file: PathBuf },
    /// Report whether each entry is irreducible, naming a contractible edge if not.
    Irreducible { file: PathBuf },
    /// Contract the edge `u v` of an entry and print the result.
    Contract {
        file: PathBuf,
        u: usize,
        v: usize,
        #[arg(long, default_value_t = 0)]
        entry: usize,
    },
    /// Build the independent-set certificate and check its inequalities.
    Certificate {
        file: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Replay a derivation table exactly.
    Farkas {
        #[command(flatten)]
        mode: ModeArgs,
        /// Table to replay instead of the built-in one.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// List all triangulations of a surface with at most `max-n` vertices.
    Enumerate {
        /// sphere, torus, projective, klein, S<h> or N<k>
        #[arg(long)]
        surface: Surface,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        irreducible_only: bool,
    },
    /// Run every check on every entry of a census.
    Census {
        file: PathBuf,
        /// Fail entries with more than 13g - 4 vertices.
        #[arg(long)]
        check_bound: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct ModeArgs {
    #[arg(long)]
    simple: bool,
    #[arg(long)]
    full: bool,
}

impl ModeArgs {
    fn mode(&self) -> Mode {
        if self.simple {
            Mode::Simple
        } else {
            Mode::Full
        }
    }
}

/// Exit codes: checks failed, or the input could not be used.
enum Failure {
    Check,
    Usage(String),
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl ToString) -> Failure {
    Failure::Usage(msg.to_string())
}

fn pretty(s: &str) -> String {
    s.replace("<=", "≤").replace(">=", "≥").replace(" - ", " − ")
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<CensusFile, Failure> {
    parse_census_text(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

type Loaded = (CensusFile, Vec<(usize, Triangulation)>, bool);

/// Validated entries; invalid ones are reported and make the command fail.
fn load_valid(path: &Path) -> Result<Loaded, Failure> {
    let file = load(path)?;
    let mut ok = true;
    let mut out = Vec::new();
    for (i, faces) in file.entries.iter().enumerate() {
        match Triangulation::from_faces(faces) {
            Ok(t) if Surface::of(&t) == file.surface => out.push((i, t)),
            Ok(t) => {
                ok = false;
                println!("entry {i}: lies on {}, header declares {}", Surface::of(&t), file.surface);
            }
            Err(e) => {
                ok = false;
                println!("entry {i}: invalid: {e}");
            }
        }
    }
    Ok((file, out, ok))
}

fn check(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn validate(path: &Path) -> Outcome {
    let (_, entries, ok) = load_valid(path)?;
    for (i, t) in &entries {
        println!(
            "entry {i}: ok  |V| = {}  |E| = {}  |F| = {}  {}",
            t.vertex_count(),
            t.edge_count(),
            t.face_count(),
            Surface::of(t)
        );
    }
    check(ok)
}

fn genus(path: &Path) -> Outcome {
    let (_, entries, ok) = load_valid(path)?;
    for (i, t) in &entries {
        println!(
            "entry {i}: euler genus {}  {}",
            t.euler_genus(),
            if t.is_orientable() { "orientable" } else { "nonorientable" }
        );
    }
    check(ok)
}

fn irreducible(path: &Path) -> Outcome {
    let (_, entries, mut ok) = load_valid(path)?;
    for (i, t) in &entries {
        let r = is_irreducible(t);
        match r.witness {
            None => println!("entry {i}: irreducible"),
            Some((u, v)) => {
                ok = false;
                println!("entry {i}: reducible, edge {u} {v} contracts");
            }
        }
    }
    check(ok)
}

fn contract(path: &Path, entry: usize, u: usize, v: usize) -> Outcome {
    let file = load(path)?;
    let faces = file
        .entries
        .get(entry)
        .ok_or_else(|| usage(format!("no entry {entry}")))?;
    let t = Triangulation::from_faces(faces).map_err(|e| usage(format!("entry {entry}: {e}")))?;
    let outcome = contract_edge(&t, u, v).map_err(usage)?;
    match outcome.result() {
        Some(r) => {
            let mut out = CensusFile::new(Surface::of(r));
            out.entries.push(r.face_triples());
            print!("{}", write_census(&out));
            Ok(())
        }
        None => {
            let f = outcome.failure().expect("invalid contraction has a reason");
            println!("contraction of {u} {v} is invalid: {}", serde_json::to_string(f).unwrap_or_default());
            Err(Failure::Check)
        }
    }
}

fn certificate_report(t: &Triangulation, mode: Mode) -> Result<(serde_json::Value, InequalityReport), String> {
    match mode {
        Mode::Simple => {
            let good = build_simple_s(t).map_err(|e| e.to_string())?;
            let r = verify_simple_certificate(t, &good).map_err(|e| e.to_string())?;
            Ok((json!({ "set": good.set }), r))
        }
        Mode::Full => {
            let good = build_good_s(t).map_err(|e| e.to_string())?;
            let stable = move_postcondition_violations(t, &good).is_empty();
            let p = full_partition(t, &good).map_err(|e| e.to_string())?;
            let r = verify_full_certificate(&p);
            Ok((
                json!({
                    "set": good.set,
                    "phi": good.phi(t).0,
                    "moves": good.history.len(),
                    "move_stable": stable,
                    "partition": p.variables(),
                }),
                r,
            ))
        }
    }
}

fn certificate(path: &Path, mode: Mode, as_json: bool) -> Outcome {
    let (_, entries, mut ok) = load_valid(path)?;
    let mut reports = Vec::new();
    for (i, t) in &entries {
        match certificate_report(t, mode) {
            Ok((extra, r)) => {
                ok &= r.all_hold() && extra.get("move_stable").is_none_or(|s| s == true);
                if as_json {
                    reports.push(json!({ "entry": i, "certificate": extra, "report": r }));
                    continue;
                }
                println!("entry {i}: S = {}", extra["set"]);
                for c in &r.checks {
                    println!("  {c}");
                }
                for b in &r.bounds {
                    println!("  {b}");
                }
                let last = r.bounds.last().expect("reports carry a bound");
                println!(
                    "bound {} {} {}  {}",
                    last.left,
                    pretty(&last.relation.to_string()),
                    last.right,
                    if r.all_hold() { "all inequalities hold" } else { "FAILED" }
                );
            }
            Err(e) => {
                ok = false;
                if as_json {
                    reports.push(json!({ "entry": i, "error": e }));
                } else {
                    println!("entry {i}: {e}");
                }
            }
        }
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&reports).expect("reports serialise"));
    }
    check(ok)
}

fn farkas(mode: Mode, table: Option<&Path>) -> Outcome {
    let text = match table {
        Some(p) => read(p)?,
        None => builtin_table(mode).to_string(),
    };
    let steps = parse_table(&text).map_err(usage)?;
    match verify_derivation(mode, &steps, Registry::for_mode(mode)) {
        Ok(log) => {
            for s in &log.steps {
                println!("{:<8} {}  ok", s.name, s.claim.pretty());
            }
            println!("{}", log.conclusion.pretty());
            if let Some(r) = &log.rounded {
                println!("⇒ {}", pretty(&r.to_string()));
            }
            Ok(())
        }
        Err(e) => {
            println!("derivation fails: {e}");
            Err(Failure::Check)
        }
    }
}

fn enumerate(surface: Surface, max_n: usize, irreducible_only: bool) -> Outcome {
    let file = enumerate_triangulations(surface, max_n, irreducible_only).map_err(usage)?;
    print!("{}", write_census(&file));
    Ok(())
}

fn census(path: &Path, check_bound: bool, as_json: bool) -> Outcome {
    let file = load(path)?;
    let r = check_census(&file, CensusOptions { check_bound });
    if as_json {
        println!("{}", serde_json::to_string_pretty(&r).expect("report serialises"));
    } else {
        for e in &r.entries {
            let status = if e.passed { "pass".to_string() } else { format!("FAIL: {}", e.errors.join("; ")) };
            println!("entry {}: |V| = {}  {status}", e.index, e.vertices);
        }
        println!("{}", pretty(&r.summary()));
        println!(
            "construction family floor({}/2): {} vertices (informational)",
            if r.surface.orientable { "17h" } else { "11k" },
            r.known_construction
        );
    }
    check(r.all_passed())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Validate { file } => validate(&file),
        Command::Genus { file } => genus(&file),
        Command::Irreducible { file } => irreducible(&file),
        Command::Contract { file, u, v, entry } => contract(&file, entry, u, v),
        Command::Certificate { file, mode, json } => certificate(&file, mode.mode(), json),
        Command::Farkas { mode, table } => farkas(mode.mode(), table.as_deref()),
        Command::Enumerate {
            surface,
            max_n,
            irreducible_only,
        } => enumerate(surface, max_n, irreducible_only),
        Command::Census {
            file,
            check_bound,
            json,
        } => census(&file, check_bound, json),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
