use clap::{Args, Parser, Subcommand};
use qsing::compactify::{acyclify, SplitOrientation};
use qsing::dot::{poset_dot, quiver_dot, setting_dot};
use qsing::jsonio::{PosetDoc, ProblemDoc, QuiverDoc, RepTypeDoc, ReportDoc, SettingDoc, TypeDoc};
use qsing::local::{local_quiver, RepType};
use qsing::moduli::analyze;
use qsing::poset::build_poset;
use qsing::quiver::quotient_dim;
use qsing::reduction::reduce_to_type;
use qsing::{QError, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qsing", about = "Singularities of quiver moduli spaces", version)]
struct Cli {
    /// Candidate cap for type enumeration (also via QSING_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker cap; accepted for forward compatibility, output is canonical
    /// regardless.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a DOT diagram to this path.
    #[arg(long)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a quiver setting to its irreducible type, tracing each step.
    Reduce {
        setting: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the irreducible type of a setting, without the step trace.
    Type {
        setting: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build the local quiver setting of a representation type.
    LocalQuiver {
        quiver: PathBuf,
        reptype: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate types up to a quotient dimension and build the poset.
    Poset {
        #[arg(long)]
        max_dim: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full analysis of a moduli problem: decompositions, closure, verdict.
    Analyze {
        problem: PathBuf,
        /// Optional poset cache; its display names are merged into the report.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Split vertices until the quiver has no loops or oriented cycles.
    Compactify {
        quiver: PathBuf,
        /// Comma-separated stability values, one per vertex.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<i64>,
        /// Comma-separated split weights consumed in step order.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<i64>,
        /// Weight used for every step when --weights is omitted.
        #[arg(long, default_value_t = 1)]
        default_weight: i64,
        /// Reverse the connecting arrows between split halves.
        #[arg(long)]
        reverse_split: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Render a stored quiver, setting, or poset JSON file as DOT.
    ExportDot { file: PathBuf },
    /// Write the bundled example instances as ready-to-use files.
    SeedExamples {
        #[arg(long, default_value = "examples-qsing")]
        out: PathBuf,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| QError::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| QError::Malformed(format!("{}: {e}", path.display())))
}

fn emit(output: &OutputArgs, json: &str, dot: Option<String>) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, json)
            .map_err(|e| QError::Malformed(format!("{}: {e}", path.display())))?,
        None => println!("{json}"),
    }
    if let (Some(path), Some(dot)) = (&output.dot, dot) {
        std::fs::write(path, dot)
            .map_err(|e| QError::Malformed(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn budget_from(cli: &Cli) -> Result<Option<u64>> {
    if cli.budget.is_some() {
        return Ok(cli.budget);
    }
    match std::env::var("QSING_BUDGET") {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| QError::Malformed("QSING_BUDGET must be an integer".into())),
        Err(_) => Ok(None),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialization cannot fail")
}

fn run(cli: &Cli) -> Result<()> {
    if cli.threads == 0 {
        return Err(QError::Malformed("--threads must be >= 1".into()));
    }
    let budget = budget_from(cli)?;
    match &cli.command {
        Command::Reduce { setting, output } => {
            let s = read_json::<SettingDoc>(setting)?.to_setting()?;
            let before = quotient_dim(&s)?;
            let (record, steps) = reduce_to_type(&s)?;
            for step in &steps {
                let line = serde_json::json!({
                    "kind": step.kind,
                    "vertex": step.vertex,
                    "before": SettingDoc::from_setting(&step.before),
                    "after": SettingDoc::from_setting(&step.after),
                });
                println!("{line}");
            }
            let doc = serde_json::json!({
                "type": TypeDoc::from_record(&record),
                "steps": steps.len(),
                "d": before - record.dim,
            });
            emit(output, &to_json(&doc), Some(setting_dot(&record.canonical.setting)))
        }
        Command::Type { setting, output } => {
            let s = read_json::<SettingDoc>(setting)?.to_setting()?;
            let before = quotient_dim(&s)?;
            let (record, steps) = reduce_to_type(&s)?;
            let doc = serde_json::json!({
                "type": TypeDoc::from_record(&record),
                "steps": steps.len(),
                "d": before - record.dim,
            });
            emit(output, &to_json(&doc), Some(setting_dot(&record.canonical.setting)))
        }
        Command::LocalQuiver { quiver, reptype, output } => {
            let q = read_json::<QuiverDoc>(quiver)?.to_quiver()?;
            let doc = read_json::<RepTypeDoc>(reptype)?;
            let sigma = RepType::new(doc.factors, q)?;
            let local = local_quiver(&sigma)?;
            emit(output, &to_json(&SettingDoc::from_setting(&local)), Some(setting_dot(&local)))
        }
        Command::Poset { max_dim, output } => {
            let p = build_poset(*max_dim, budget)?;
            emit(output, &to_json(&PosetDoc::from_poset(&p)), Some(poset_dot(&p)))
        }
        Command::Analyze { problem, poset, output } => {
            let p = read_json::<ProblemDoc>(problem)?.to_problem()?;
            let report = analyze(&p)?;
            let mut doc = ReportDoc::from_report(&report);
            if let Some(cache) = poset {
                let cached: PosetDoc = read_json(cache)?;
                for (hash, name) in cached.names {
                    doc.names.entry(hash).or_insert(name);
                }
            }
            let dot = degeneration_dot(&doc);
            emit(output, &to_json(&doc), Some(dot))
        }
        Command::Compactify { quiver, theta, weights, default_weight, reverse_split, output } => {
            let q = read_json::<QuiverDoc>(quiver)?.to_quiver()?;
            let orientation = if *reverse_split {
                SplitOrientation::PlusToMinus
            } else {
                SplitOrientation::MinusToPlus
            };
            let theta = if theta.is_empty() { vec![0; q.n] } else { theta.clone() };
            let plan = acyclify(&q, &theta, weights, *default_weight, orientation)?;
            let dot = quiver_dot(&plan.result.0, None);
            emit(output, &to_json(&plan), Some(dot))
        }
        Command::ExportDot { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| QError::Malformed(format!("{}: {e}", file.display())))?;
            let dot = if let Ok(doc) = serde_json::from_str::<SettingDoc>(&text) {
                setting_dot(&doc.to_setting()?)
            } else if let Ok(doc) = serde_json::from_str::<QuiverDoc>(&text) {
                quiver_dot(&doc.to_quiver()?, None)
            } else {
                return Err(QError::Malformed("expected a quiver or setting JSON".into()));
            };
            print!("{dot}");
            Ok(())
        }
        Command::SeedExamples { out } => seed_examples(out),
    }
}

fn degeneration_dot(doc: &ReportDoc) -> String {
    use std::fmt::Write;
    let mut s = String::from("digraph degeneration {\n");
    for t in &doc.closure {
        let name = doc.names.get(&t.id).cloned().unwrap_or_else(|| t.id.clone());
        writeln!(s, "  \"{name}\";").unwrap();
    }
    for (a, b) in &doc.edges {
        let an = doc.names.get(a).cloned().unwrap_or_else(|| a.clone());
        let bn = doc.names.get(b).cloned().unwrap_or_else(|| b.clone());
        writeln!(s, "  \"{an}\" -> \"{bn}\";").unwrap();
    }
    s.push_str("}\n");
    s
}

fn seed_examples(dir: &Path) -> Result<()> {
    use qsing::names::named_settings;
    std::fs::create_dir_all(dir)
        .map_err(|e| QError::Malformed(format!("{}: {e}", dir.display())))?;
    let write = |name: &str, json: String| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, json)
            .map_err(|e| QError::Malformed(format!("{}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(())
    };
    for (name, s) in named_settings() {
        if ["3_c", "4_2", "4_3a", "4_3b"].contains(&name) {
            let file = if name == "3_c" { "conifold.json".to_string() } else { format!("type_{name}.json") };
            write(&file, to_json(&SettingDoc::from_setting(&s)))?;
        }
    }
    // two dim-weight -1 sources feeding three weight +1 sinks
    let mut modular = qsing::quiver::Quiver::zero(5);
    for i in 0..2 {
        for j in 2..5 {
            modular.arrows[i][j] = 1;
        }
    }
    let generators = vec![
        vec![1, 0, 1, 0, 0],
        vec![0, 1, 0, 1, 0],
        vec![1, 0, 0, 0, 1],
        vec![0, 1, 1, 0, 0],
        vec![1, 0, 0, 1, 0],
        vec![0, 1, 0, 0, 1],
    ];
    let problem = |alpha: Vec<i64>| ProblemDoc {
        quiver: QuiverDoc::from_quiver(&modular),
        theta: vec![-1, -1, 1, 1, 1],
        alpha,
        generators: generators.clone(),
    };
    write("modular_332.json", to_json(&problem(vec![3, 3, 2, 2, 2])))?;
    write("modular_422.json", to_json(&problem(vec![4, 2, 2, 2, 2])))?;
    write("modular_quiver.json", to_json(&QuiverDoc::from_quiver(&modular)))?;
    write(
        "conifold_witness_reptype.json",
        to_json(&RepTypeDoc {
            factors: vec![(1, vec![2, 1, 1, 1, 1]), (1, vec![1, 2, 1, 1, 1])],
        }),
    )?;
    let mut hexagon = qsing::quiver::Quiver::zero(6);
    for i in 0..6 {
        let j = (i + 1) % 6;
        hexagon.arrows[i][j] = 1;
        hexagon.arrows[j][i] = 1;
    }
    write("hexagon.json", to_json(&QuiverDoc::from_quiver(&hexagon)))?;
    let plan = acyclify(&hexagon, &vec![0; 6], &[2, 3, 5], 1, SplitOrientation::default())?;
    write("hexagon_split_plan.json", to_json(&plan))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ QError::Malformed(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
