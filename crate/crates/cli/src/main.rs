//! `eyestate`: benchmark CLI for EEG eye-state classification.
//!
//! Exit codes are stable: 0 success, 2 dataset problems (I/O, parse, fold
//! construction, degenerate data), 3 classifier-spec problems, 4 internal
//! invariant violations, 5 model-file/compatibility problems.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use eyestate_core::data::{detect_outliers, Dataset, OutlierPolicy};
use eyestate_core::model::Classifier;
use eyestate_core::FitError;

use eyestate_cli::dataset_io::{self, LoadError};
use eyestate_cli::eval::{compare_report, cross_validate, EvalError, EvalReport};
use eyestate_cli::modelfile::{self, ModelFile, ModelFileError};
use eyestate_cli::report;
use eyestate_cli::spec::{parse_spec, SpecError};

const EXIT_DATASET: i32 = 2;
const EXIT_SPEC: i32 = 3;
const EXIT_INTERNAL: i32 = 4;
const EXIT_MODEL: i32 = 5;

/// Specs evaluated by `reproduce`: the four baseline rows plus the two
/// standalone ensemble members.
const REPRODUCE_SPECS: [&str; 6] = [
    "svm",
    "hmm-standin",
    "rbf",
    "vote(kstar:b=20,forest:trees=180)",
    "kstar:b=20",
    "forest:trees=180",
];

#[derive(Parser)]
#[command(name = "eyestate", version, about = "EEG eye-state classification benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a dataset: size, attributes, class balance, outlier candidates
    Inspect {
        /// Dataset path (.arff or .csv); defaults to $EEG_CORPUS
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stratified k-fold cross-validation of one classifier spec
    Cv {
        /// Dataset path (.arff or .csv); defaults to $EEG_CORPUS
        #[arg(long)]
        data: Option<PathBuf>,
        /// Classifier spec, e.g. `vote(kstar:b=20,forest:trees=180)`
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Remove default-policy outliers before evaluation
        #[arg(long)]
        drop_outliers: bool,
        /// Cap worker threads (default: all cores); results are identical at any setting
        #[arg(long)]
        threads: Option<usize>,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-validate the whole benchmark suite and print a comparison table
    Reproduce {
        /// Dataset path (.arff or .csv); defaults to $EEG_CORPUS
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        drop_outliers: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Write the JSON document (table + per-spec reports) here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Fit a classifier on a whole dataset and save it
    Train {
        /// Dataset path (.arff or .csv); defaults to $EEG_CORPUS
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        drop_outliers: bool,
        #[arg(long)]
        threads: Option<usize>,
        /// Model file to write
        #[arg(long)]
        out: PathBuf,
    },
    /// Batch-predict a dataset with a saved model
    Predict {
        /// Model file written by `train`
        #[arg(long)]
        model: PathBuf,
        /// Dataset path (.arff or .csv); defaults to $EEG_CORPUS
        #[arg(long)]
        data: Option<PathBuf>,
        /// Predictions CSV destination (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<LoadError> for CliError {
    fn from(e: LoadError) -> Self {
        CliError::new(EXIT_DATASET, e.to_string())
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::new(EXIT_SPEC, e.to_string())
    }
}

impl From<ModelFileError> for CliError {
    fn from(e: ModelFileError) -> Self {
        CliError::new(EXIT_MODEL, e.to_string())
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        let code = match &e {
            EvalError::Folds(_) => EXIT_DATASET,
            // a config the parser accepted but the model rejected is still
            // a spec problem; data-shaped fit failures are dataset problems
            EvalError::Fit { source: FitError::InvalidConfig(_), .. } => EXIT_SPEC,
            EvalError::Fit { .. } => EXIT_DATASET,
            EvalError::Predict { .. } => EXIT_INTERNAL,
            EvalError::Invariant(_) => EXIT_INTERNAL,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        let code = match &e {
            FitError::InvalidConfig(_) => EXIT_SPEC,
            _ => EXIT_DATASET,
        };
        CliError::new(code, e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli.command) {
        eprintln!("error: {}", e.message);
        std::process::exit(e.code);
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Inspect { data, format } => cmd_inspect(data, format),
        Command::Cv { data, spec, folds, seed, drop_outliers, threads, out, format } => {
            configure_threads(threads)?;
            cmd_cv(data, &spec, folds, seed, drop_outliers, out, format)
        }
        Command::Reproduce { data, folds, seed, drop_outliers, threads, out, format } => {
            configure_threads(threads)?;
            cmd_reproduce(data, folds, seed, drop_outliers, out, format)
        }
        Command::Train { data, spec, seed, drop_outliers, threads, out } => {
            configure_threads(threads)?;
            cmd_train(data, &spec, seed, drop_outliers, &out)
        }
        Command::Predict { model, data, out } => cmd_predict(&model, data, out),
    }
}

fn configure_threads(threads: Option<usize>) -> Result<(), CliError> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::new(EXIT_SPEC, "--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::new(EXIT_INTERNAL, format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn resolve_data(data: Option<PathBuf>, retrieval_hint: bool) -> Result<PathBuf, CliError> {
    if let Some(path) = data {
        return Ok(path);
    }
    if let Some(env) = std::env::var_os("EEG_CORPUS") {
        if !env.is_empty() {
            return Ok(PathBuf::from(env));
        }
    }
    let mut message =
        String::from("no dataset: pass --data PATH or set EEG_CORPUS to the corpus file");
    if retrieval_hint {
        message.push_str(
            "\nThe benchmark corpus is the public \"EEG Eye State\" dataset \
             (14,980 instances: 14 numeric EEG channels plus a binary eye-state \
             class), distributed as an ARFF file by the UCI Machine Learning \
             Repository. Download it, then rerun with --data path/to/corpus.arff \
             or export EEG_CORPUS=path/to/corpus.arff.",
        );
    }
    Err(CliError::new(EXIT_DATASET, message))
}

fn load_dataset(data: Option<PathBuf>, drop_outliers: bool, retrieval_hint: bool) -> Result<Dataset, CliError> {
    let path = resolve_data(data, retrieval_hint)?;
    let ds = dataset_io::load(&path)?;
    if drop_outliers {
        let flagged = detect_outliers(&ds, &OutlierPolicy::default());
        if !flagged.is_empty() {
            eprintln!("dropping {} outlier(s)", flagged.len());
            return Ok(ds.without(&flagged));
        }
    }
    Ok(ds)
}

fn cmd_inspect(data: Option<PathBuf>, format: Format) -> Result<(), CliError> {
    let ds = load_dataset(data, false, false)?;
    let counts = ds.class_counts();
    let n = ds.len();
    let pct = |c: usize| if n == 0 { 0.0 } else { c as f64 / n as f64 * 100.0 };
    let outliers = detect_outliers(&ds, &OutlierPolicy::default());
    match format {
        Format::Text => println!(
            "{} instances, {} attributes, Open {} ({:.2}%), Closed {} ({:.2}%), {} outlier candidates",
            n,
            ds.num_attributes(),
            counts[0],
            pct(counts[0]),
            counts[1],
            pct(counts[1]),
            outliers.len()
        ),
        Format::Csv => {
            println!("n,attributes,open,closed,outlier_candidates");
            println!("{},{},{},{},{}", n, ds.num_attributes(), counts[0], counts[1], outliers.len());
        }
        Format::Json => {
            let doc = serde_json::json!({
                "schema": report::JSON_SCHEMA,
                "n": n,
                "attributes": ds.num_attributes(),
                "dataset_digest": format!("{:016x}", ds.digest()),
                "open": counts[0],
                "closed": counts[1],
                "open_pct": pct(counts[0]),
                "closed_pct": pct(counts[1]),
                "outlier_candidates": outliers,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
    }
    Ok(())
}

fn run_one(
    spec_text: &str,
    ds: &Dataset,
    folds: usize,
    seed: u64,
) -> Result<EvalReport, CliError> {
    let config = parse_spec(spec_text)?;
    Ok(cross_validate(spec_text, &config, ds, folds, seed)?)
}

fn write_out(path: &Path, doc: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(doc).expect("json");
    dataset_io::write_file(path, &text)?;
    Ok(())
}

fn cmd_cv(
    data: Option<PathBuf>,
    spec_text: &str,
    folds: usize,
    seed: u64,
    drop_outliers: bool,
    out: Option<PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    // parse before touching the filesystem so spec errors win
    let config = parse_spec(spec_text)?;
    let ds = load_dataset(data, drop_outliers, false)?;
    let report = cross_validate(spec_text, &config, &ds, folds, seed)?;
    match format {
        Format::Text => print!("{}", report::render_report_text(&report)),
        Format::Csv => print!("{}", report::render_report_csv(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report::report_json(&report)).expect("json")
        ),
    }
    if let Some(path) = out {
        write_out(&path, &report::report_json(&report))?;
    }
    Ok(())
}

fn cmd_reproduce(
    data: Option<PathBuf>,
    folds: usize,
    seed: u64,
    drop_outliers: bool,
    out: Option<PathBuf>,
    format: Format,
) -> Result<(), CliError> {
    let ds = load_dataset(data, drop_outliers, true)?;
    let mut reports = Vec::with_capacity(REPRODUCE_SPECS.len());
    for spec_text in REPRODUCE_SPECS {
        eprintln!("cross-validating {spec_text} ...");
        reports.push(run_one(spec_text, &ds, folds, seed)?);
    }
    let table = compare_report(&reports)?;
    match format {
        Format::Text => print!("{}", report::render_table_text(&table)),
        Format::Csv => print!("{}", report::render_table_csv(&table)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report::table_json(&table, &reports)).expect("json")
        ),
    }
    if let Some(path) = out {
        write_out(&path, &report::table_json(&table, &reports))?;
    }
    Ok(())
}

fn cmd_train(
    data: Option<PathBuf>,
    spec_text: &str,
    seed: u64,
    drop_outliers: bool,
    out: &Path,
) -> Result<(), CliError> {
    let config = parse_spec(spec_text)?;
    let ds = load_dataset(data, drop_outliers, false)?;
    let model = config.with_seed(seed).fit(&ds)?;
    modelfile::save(out, &ModelFile { spec: spec_text.to_string(), seed, model })?;
    eprintln!("trained {spec_text} on {} instances -> {}", ds.len(), out.display());
    Ok(())
}

fn cmd_predict(
    model_path: &Path,
    data: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let file = modelfile::load(model_path)?;
    let ds = load_dataset(data, false, false)?;
    let expected = file.model.num_attributes();
    if ds.num_attributes() != expected {
        return Err(CliError::new(
            EXIT_MODEL,
            format!(
                "arity mismatch: model expects {expected} attributes, dataset has {}",
                ds.num_attributes()
            ),
        ));
    }
    let rows: Vec<_> = ds
        .instances()
        .par_iter()
        .map(|inst| file.model.predict(&inst.features))
        .collect();
    let mut csv = String::from("index,p_open,p_closed,predicted_label\n");
    for (i, row) in rows.into_iter().enumerate() {
        let p = row.map_err(|e| CliError::new(EXIT_MODEL, format!("row {i}: {e}")))?;
        let label = p.argmax();
        csv.push_str(&format!(
            "{i},{},{},{}\n",
            p.open(),
            p.closed(),
            label.index()
        ));
    }
    match out {
        Some(path) => dataset_io::write_file(&path, &csv)?,
        None => print!("{csv}"),
    }
    Ok(())
}
