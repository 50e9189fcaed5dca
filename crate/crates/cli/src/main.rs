use anyhow::{bail, Context, Result};
use bolkit::classify::{find_isotopy, up_to_isomorphism};
use bolkit::constructions::{catalog_loop, elementary_abelian_square, CATALOG_NAMES};
use bolkit::invariants::{identify_in_catalog, profile};
use bolkit::report::{classify_all, table1, table2, Table1, Table1Column};
use bolkit::search::{
    central_extensions_in_variety, model_search_with, SearchOptions, SearchSpec, SubloopCase,
};
use bolkit::text::{parse_loop, write_loop};
use bolkit::LoopTable;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::time::Duration;

/// Finite loops: construction, invariants, isomorphism and the order 27
/// right Bol classification.
#[derive(Parser)]
#[command(name = "bolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a catalog loop in the loop text format.
    Construct {
        /// One of Z27, Z9xZ3, Z3^3, Heis3, Z9:Z3, B1..B10.
        name: String,
        /// Write to a file instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that files hold loops and report which identities they satisfy.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compute invariants of loops.
    Profile {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, conflicts_with = "table")]
        json: bool,
        /// Render all files as columns of one table.
        #[arg(long)]
        table: bool,
    },
    /// Group loops into isomorphism classes.
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two loops are isotopic.
    Isotopy {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the classification searches.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Invariants of B1..B10.
    Table1 {
        #[arg(long)]
        json: bool,
    },
    /// Right multiplication groups of B1..B10.
    Table2 {
        #[arg(long)]
        json: bool,
    },
    /// Classify all right Bol loops of order 27.
    ClassifyAll {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
        /// Write one file per isomorphism class.
        #[arg(long)]
        emit_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SearchKind {
    /// Right Bol central extensions of Z_p by Z_p x Z_p.
    CentralExt {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Order 27 loops with a prescribed normal subloop of order 9.
    TrivialCenter {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        emit_dir: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        /// Record finished subtrees here and skip them when rerun.
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    timeout_secs: Option<u64>,
    /// Branching depth at which the search tree is split.
    #[arg(long, default_value_t = 2)]
    split_depth: usize,
}

impl RunArgs {
    fn options(&self, checkpoint: Option<PathBuf>) -> SearchOptions {
        SearchOptions {
            jobs: self.jobs,
            timeout: self.timeout_secs.map(Duration::from_secs),
            checkpoint,
            split_depth: self.split_depth,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Ea,
    Cyc,
}

impl From<CaseArg> for SubloopCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Ea => SubloopCase::ElementaryAbelian,
            CaseArg::Cyc => SubloopCase::Cyclic,
        }
    }
}

fn read_loop(path: &Path) -> Result<LoopTable> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_loop(&text).with_context(|| format!("parsing {}", path.display()))
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Serializes a loop and checks that the text reads back to the same table.
fn checked_text(q: &LoopTable) -> Result<String> {
    let text = write_loop(q);
    if parse_loop(&text)? != *q {
        bail!("loop text does not round-trip");
    }
    Ok(text)
}

fn emit(dir: &Path, names: &[(String, &LoopTable)]) -> Result<()> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (name, q) in names {
        let path = dir.join(format!("{name}.loop"));
        std::fs::write(&path, checked_text(q)?).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct { name, output } => {
            let q = catalog_loop(&name)
                .with_context(|| format!("known names: {}", CATALOG_NAMES.join(", ")))?;
            let text = checked_text(&q)?;
            match output {
                Some(path) => std::fs::write(&path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Validate { files } => {
            for path in files {
                let q = read_loop(&path)?;
                println!(
                    "{}: loop of order {}; right Bol {}, left Bol {}, Moufang {}, associative {}, commutative {}",
                    path.display(),
                    q.order(),
                    yes_no(q.is_right_bol()),
                    yes_no(q.is_left_bol()),
                    yes_no(q.is_moufang()),
                    yes_no(q.is_associative()),
                    yes_no(q.is_commutative()),
                );
            }
        }
        Command::Profile { files, json, table } => {
            let mut columns = Vec::new();
            for path in &files {
                let q = read_loop(path)?;
                columns.push(Table1Column {
                    name: label(path),
                    profile: profile(&q)?,
                });
            }
            if json {
                let values: Vec<serde_json::Value> = columns
                    .iter()
                    .zip(&files)
                    .map(|(c, f)| {
                        let mut v = serde_json::to_value(&c.profile).expect("serializable");
                        v["file"] = serde_json::Value::String(f.display().to_string());
                        v
                    })
                    .collect();
                if values.len() == 1 {
                    print_json(&values[0]);
                } else {
                    print_json(&serde_json::Value::Array(values));
                }
            } else if table || columns.len() > 1 {
                print!("{}", Table1 { columns }.render());
            } else {
                let t = Table1 { columns };
                for (row, cells) in t.rows() {
                    println!("{row}: {}", cells[0]);
                }
            }
        }
        Command::Classify { files, json } => {
            let loops = files.iter().map(|f| read_loop(f)).collect::<Result<Vec<_>>>()?;
            let classes = up_to_isomorphism(&loops);
            if json {
                let reps: Vec<String> = classes
                    .representatives
                    .iter()
                    .map(|&i| files[i].display().to_string())
                    .collect();
                let members: serde_json::Map<String, serde_json::Value> = files
                    .iter()
                    .zip(&classes.class_of)
                    .map(|(f, &c)| (f.display().to_string(), serde_json::Value::from(c)))
                    .collect();
                print_json(&serde_json::json!({ "representatives": reps, "class_of": members }));
            } else {
                println!("{} classes", classes.representatives.len());
                for (k, &i) in classes.representatives.iter().enumerate() {
                    println!("class {k}: {}", files[i].display());
                }
                for (f, c) in files.iter().zip(&classes.class_of) {
                    println!("{} -> class {c}", f.display());
                }
            }
        }
        Command::Isotopy { a, b, json } => {
            let qa = read_loop(&a)?;
            let qb = read_loop(&b)?;
            let w = find_isotopy(&qa, &qb);
            if json {
                let v = match &w {
                    Some(w) => serde_json::json!({ "isotopic": true, "a": w.a, "b": w.b, "map": w.map }),
                    None => serde_json::json!({ "isotopic": false }),
                };
                print_json(&v);
            } else {
                match w {
                    Some(w) => println!("isotopic: a = {}, b = {}, phi = {:?}", w.a, w.b, w.map),
                    None => println!("not isotopic"),
                }
            }
        }
        Command::Search { kind } => search(kind)?,
        Command::Table1 { json } => {
            let t = table1()?;
            if json {
                print_json(&serde_json::to_value(&t)?);
            } else {
                print!("{}", t.render());
            }
        }
        Command::Table2 { json } => {
            let t = table2()?;
            if json {
                let mut v = serde_json::to_value(&t)?;
                v["groups"] = serde_json::to_value(t.groups())?;
                print_json(&v);
            } else {
                print!("{}", t.render());
            }
        }
        Command::ClassifyAll { run, json, emit_dir } => {
            let census = classify_all(&run.options(None))?;
            if json {
                let mut v = serde_json::to_value(&census)?;
                v["total"] = census.total().into();
                v["associative"] = census.associative().into();
                v["abelian"] = census.abelian().into();
                v["centrally_nilpotent"] = census.centrally_nilpotent().into();
                v["trivial_center"] = census.trivial_center().into();
                print_json(&v);
            } else {
                print!("{}", census.render());
            }
            if let Some(dir) = emit_dir {
                let loops: Vec<(String, LoopTable)> = census
                    .classes
                    .iter()
                    .map(|c| Ok((c.name.clone(), catalog_loop(&c.name)?)))
                    .collect::<Result<_>>()?;
                let named: Vec<(String, &LoopTable)> = loops
                    .iter()
                    .map(|(n, q)| (n.replace([':', '^'], "_"), q))
                    .collect();
                emit(&dir, &named)?;
            }
            if census.coverage.iter().any(|e| !e.ok) {
                bail!("coverage check failed");
            }
        }
    }
    Ok(())
}

fn search(kind: SearchKind) -> Result<()> {
    match kind {
        SearchKind::CentralExt { p, emit_dir, json } => {
            let loops = central_extensions_in_variety(p, &elementary_abelian_square(p))?;
            let assoc = loops.iter().filter(|q| q.is_associative()).count();
            if json {
                let classes: Vec<serde_json::Value> = loops
                    .iter()
                    .map(|q| {
                        serde_json::json!({
                            "associative": q.is_associative(),
                            "commutative": q.is_commutative(),
                            "catalog": identify_in_catalog(q),
                        })
                    })
                    .collect();
                print_json(&serde_json::json!({
                    "p": p,
                    "order": p * p * p,
                    "classes": loops.len(),
                    "associative": assoc,
                    "loops": classes,
                }));
            } else {
                println!(
                    "{} right Bol central extensions of Z{p} by Z{p} x Z{p} ({} associative, {} nonassociative)",
                    loops.len(),
                    assoc,
                    loops.len() - assoc
                );
                for (i, q) in loops.iter().enumerate() {
                    let name = identify_in_catalog(q).map(|s| format!(" = {s}")).unwrap_or_default();
                    println!("  {i}: associative {}{name}", yes_no(q.is_associative()));
                }
            }
            if let Some(dir) = emit_dir {
                let named: Vec<(String, &LoopTable)> =
                    loops.iter().enumerate().map(|(i, q)| (format!("ext{p}_{i:02}"), q)).collect();
                emit(&dir, &named)?;
            }
        }
        SearchKind::TrivialCenter {
            case,
            emit_dir,
            run,
            resume,
            json,
        } => {
            let case = SubloopCase::from(case);
            let outcome = model_search_with(&SearchSpec::trivial_center(case), &run.options(resume))?;
            let classes = up_to_isomorphism(&outcome.models);
            let reps: Vec<&LoopTable> = classes.representatives.iter().map(|&i| &outcome.models[i]).collect();
            let assoc = reps.iter().filter(|q| q.is_associative()).count();
            if json {
                let loops: Vec<serde_json::Value> = reps
                    .iter()
                    .map(|q| {
                        serde_json::json!({
                            "associative": q.is_associative(),
                            "catalog": identify_in_catalog(q),
                        })
                    })
                    .collect();
                print_json(&serde_json::json!({
                    "case": case.name(),
                    "models": outcome.models.len(),
                    "subtrees": outcome.subtrees,
                    "classes": reps.len(),
                    "associative": assoc,
                    "loops": loops,
                }));
            } else {
                println!(
                    "{} models in {} subtrees ({} resumed), {} classes ({} associative, {} nonassociative)",
                    outcome.models.len(),
                    outcome.subtrees,
                    outcome.resumed,
                    reps.len(),
                    assoc,
                    reps.len() - assoc
                );
                for (i, q) in reps.iter().enumerate() {
                    let name = identify_in_catalog(q).map(|s| format!(" = {s}")).unwrap_or_default();
                    println!("  {i}: associative {}{name}", yes_no(q.is_associative()));
                }
            }
            if let Some(dir) = emit_dir {
                let named: Vec<(String, &LoopTable)> = reps
                    .iter()
                    .enumerate()
                    .map(|(i, q)| (format!("{}_{i:02}", case.name()), *q))
                    .collect();
                emit(&dir, &named)?;
            }
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
