use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdst::format::{qmf_to_json, read_qmf, read_qmf_list, FusionReportFile};
use qdst::ood::{self, DmlParams, FeatureMatrix, Orientation, Policy, TestSet};
use qdst::report::CsvTable;
use qdst::scenarios::sweep_table;
use qdst::tabular::{monte_carlo_eval, Dataset, Method, SplitSize};
use qdst::{fuse, qcc, qci, Error};

#[derive(Parser)]
#[command(name = "qdst", version, about = "Quantum mass functions: conflict, fusion, classification and OOD scoring")]
struct Cli {
    /// Seed recorded in every CSV artifact and used by randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory; results go to stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// QCC/QCI grids for the four built-in parameter sweeps.
    Examples {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long, default_value_t = 11)]
        resolution: usize,
    },
    /// Print QCC and QCI between two QMF files.
    Conflict { a: PathBuf, b: PathBuf },
    /// Conflict-weighted fusion of a JSON array of QMFs.
    Fuse { list: PathBuf },
    /// Monte-Carlo accuracy of fusion methods on a labelled CSV table.
    Classify {
        data: PathBuf,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        /// Training fractions per class.
        #[arg(long, value_delimiter = ',', default_value = "0.2,0.4,0.6,0.8")]
        fractions: Vec<f64>,
        /// Absolute training rows per class; replaces --fractions.
        #[arg(long, value_delimiter = ',')]
        train_counts: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', default_value = "qci-fusion,drc-qm,drc-classic,murphy")]
        methods: Vec<Method>,
    },
    /// Class description domain spaces for out-of-distribution detection.
    Ood {
        #[command(subcommand)]
        command: OodCommand,
    },
}

#[derive(Args, Clone)]
struct DmlArgs {
    /// Logit CSV, one row per test instance.
    #[arg(long, requires = "weights")]
    logits: Option<PathBuf>,
    /// Classifier weight CSV, one row per class.
    #[arg(long, requires = "logits")]
    weights: Option<PathBuf>,
    /// Named parameter set: vgg, wrn, vit or swin.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    k2: Option<f64>,
}

#[derive(Subcommand)]
enum OodCommand {
    /// Build one class space per manifest entry and store them as JSON.
    Fit {
        manifest: PathBuf,
        #[arg(long)]
        keep_count: Option<usize>,
        #[arg(long)]
        policy: Option<Policy>,
    },
    /// Score a test CSV against a stored set of class spaces.
    Score {
        #[arg(long)]
        store: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[command(flatten)]
        dml: DmlArgs,
        #[arg(long)]
        policy: Option<Policy>,
    },
    /// AUC and FPR95 of every score column in a labelled scores CSV.
    Eval {
        scores: PathBuf,
        #[arg(long, default_value = "ood-high")]
        orientation: Orientation,
    },
    /// Refit and evaluate at several retained-feature counts.
    Sweep {
        manifest: PathBuf,
        #[arg(long)]
        test: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        keep_count: Vec<usize>,
        #[command(flatten)]
        dml: DmlArgs,
        #[arg(long, default_value = "ood-high")]
        orientation: Orientation,
    },
}

fn emit(out: Option<&Path>, name: &str, text: &str) -> qdst::Result<()> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn emit_csv(out: Option<&Path>, name: &str, table: CsvTable) -> qdst::Result<()> {
    emit(out, name, &table.render())
}

fn dml_params(args: &DmlArgs) -> Result<DmlParams, String> {
    let base = match &args.preset {
        Some(name) => ood::preset(name).ok_or_else(|| format!("unknown preset {name:?}"))?,
        None => DmlParams { lambda: 1.0, k1: 0.0, k2: 0.0 },
    };
    Ok(DmlParams {
        lambda: args.lambda.unwrap_or(base.lambda),
        k1: args.k1.unwrap_or(base.k1),
        k2: args.k2.unwrap_or(base.k2),
    })
}

fn load_dml(args: &DmlArgs) -> qdst::Result<Option<(FeatureMatrix, FeatureMatrix, DmlParams)>> {
    let params = dml_params(args).map_err(Error::InvalidInput)?;
    match (&args.logits, &args.weights) {
        (Some(l), Some(w)) => Ok(Some((FeatureMatrix::from_csv(l)?, FeatureMatrix::from_csv(w)?, params))),
        _ => Ok(None),
    }
}

fn run(cli: Cli) -> qdst::Result<()> {
    let out = cli.out.as_deref();
    let seed = cli.seed;
    let stamp = |t: CsvTable| t.meta("seed", seed).meta("version", qdst::VERSION);
    match cli.command {
        Command::Examples { which, resolution } => {
            emit_csv(out, &format!("sweep_{which}.csv"), stamp(sweep_table(which, resolution)?))
        }
        Command::Conflict { a, b } => {
            let q1 = read_qmf(&a)?;
            let q2 = read_qmf(&b)?;
            let text = format!("QCC {:.12}\nQCI {:.12}\n", qcc(&q1, &q2)?, qci(&q1, &q2)?);
            emit(out, "conflict.txt", &text)
        }
        Command::Fuse { list } => {
            let qmfs = read_qmf_list(&list)?;
            let report = fuse(&qmfs)?;
            let json = serde_json::to_string_pretty(&FusionReportFile::from_report(&report))? + "\n";
            emit(out, "fusion_report.json", &json)?;
            if out.is_some() {
                emit(out, "fused_qmf.json", &(qmf_to_json(&report.fused) + "\n"))?;
            }
            Ok(())
        }
        Command::Classify { data, runs, fractions, train_counts, methods } => {
            let data = Dataset::from_csv(&data)?;
            let sizes: Vec<SplitSize> = match train_counts {
                Some(c) => c.into_iter().map(SplitSize::PerClass).collect(),
                None => fractions.into_iter().map(SplitSize::Fraction).collect(),
            };
            let table = monte_carlo_eval(&data, &sizes, runs, &methods, seed)?;
            emit_csv(out, "accuracy.csv", table.to_csv(seed))
        }
        Command::Ood { command } => match command {
            OodCommand::Fit { manifest, keep_count, policy } => {
                let m = ood::Manifest::load(&manifest)?;
                let classes = m.load_data()?;
                let store = ood::fit(&classes, keep_count.or(m.keep_count), policy.unwrap_or(m.policy))?;
                match out {
                    Some(dir) => ood::write_store(dir, &store),
                    None => {
                        println!("{}", serde_json::to_string_pretty(&store)?);
                        Ok(())
                    }
                }
            }
            OodCommand::Score { store, test, dml, policy } => {
                let store = ood::read_store(&store)?;
                let test = TestSet::from_csv(&test)?;
                let dml = load_dml(&dml)?;
                let rows = ood::score(&store, &test, dml.as_ref().map(|(l, w, p)| (l, w, *p)), policy)?;
                emit_csv(out, "scores.csv", ood::scores_table(&rows, seed))
            }
            OodCommand::Eval { scores, orientation } => {
                let records = ood::read_score_records(&scores)?;
                let metrics = ood::evaluate(&records, orientation)?;
                emit_csv(out, "metrics.csv", ood::metrics_table(&metrics, orientation, seed))
            }
            OodCommand::Sweep { manifest, test, keep_count, dml, orientation } => {
                let classes = ood::Manifest::load(&manifest)?.load_data()?;
                let test = TestSet::from_csv(&test)?;
                let dml = load_dml(&dml)?;
                let rows = ood::keep_count_sweep(
                    &classes,
                    &test,
                    &keep_count,
                    dml.as_ref().map(|(l, w, p)| (l, w, *p)),
                    orientation,
                )?;
                emit_csv(out, "sweep.csv", ood::sweep_table(&rows, orientation, seed))
            }
        },
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 3 })
        }
    }
}
