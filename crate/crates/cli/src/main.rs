//! `pairscore`: score, filter, convert and plot pairwise association tables.
//!
//! Thread count for scoring follows `RAYON_NUM_THREADS`.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pairscore::measures::mic::MicParams;
use pairscore::registry::{filter_methods, methods, MethodInfo};
use pairscore::{
    pairwise_by, pairwise_multi, pairwise_scores, plot_linear, plot_matrix, CorMethod, Dataset, Error,
    FilterCriteria, Geom, LabeledMatrix, MeasureOptions, MicStat, OrderName, PairType, PairwiseTable, PlotOptions,
    Schema, ScoreControl,
};

#[derive(Parser)]
#[command(name = "pairscore", version, about = "Pairwise association scores for tabular data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score every variable pair of a CSV file.
    Scores(ScoresArgs),
    /// Render a score CSV as a matrix or linear display.
    Plot(PlotArgs),
    /// Keep the pairs of a score CSV that pass the given thresholds.
    Filter(FilterArgs),
    /// List the registered measures.
    Methods(MethodsArgs),
    /// Turn a square matrix CSV into a score CSV.
    Convert(ConvertArgs),
    /// Spread a score CSV into one column per score.
    Pivot(PivotArgs),
}

#[derive(Args)]
struct ScoresArgs {
    /// Input data CSV with a header row.
    input: PathBuf,
    /// JSON schema fixing column kinds and level orders.
    #[arg(long)]
    schema: Option<PathBuf>,
    /// Comma-separated measure ids (e.g. `pearson,dcor,nmi`).
    #[arg(long, value_delimiter = ',', conflicts_with = "default")]
    measures: Vec<String>,
    /// Pick the measure from the pair type (see `--nn`, `--fn`, `--ff`, `--oo`).
    #[arg(long)]
    default: bool,
    /// Factor column to group by.
    #[arg(long)]
    by: Option<String>,
    /// Drop the ungrouped (`all`) rows when grouping.
    #[arg(long)]
    no_ungrouped: bool,
    #[arg(long, default_value = "pearson")]
    nn: String,
    #[arg(long = "fn", default_value = "cancor")]
    fn_: String,
    #[arg(long, default_value = "cancor")]
    ff: String,
    /// Measure for two ordered factors.
    #[arg(long, default_value = "polychor")]
    oo: String,
    /// Correlation flavour used by `cor`.
    #[arg(long, default_value = "pearson")]
    method: String,
    /// MIC statistics to report.
    #[arg(long, value_delimiter = ',', default_value = "MIC")]
    mic_stats: Vec<String>,
    #[arg(long, default_value_t = 0.6)]
    mic_alpha: f64,
    #[arg(long, default_value_t = 15.0)]
    mic_c: f64,
    /// Output path; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PlotType {
    Matrix,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Html,
}

#[derive(Args)]
struct PlotArgs {
    /// Score CSV.
    input: PathBuf,
    #[arg(long = "type", value_enum, default_value = "matrix")]
    kind: PlotType,
    /// Linear display geometry: `tile` or `point`.
    #[arg(long, default_value = "tile")]
    geom: String,
    /// `seriate_max_abs`, `seriate_max_diff` or `none`.
    #[arg(long, default_value = "seriate_max_abs")]
    order: String,
    /// Attach tooltips to every mark.
    #[arg(long)]
    interactive: bool,
    /// Output format; taken from the output extension when omitted.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct FilterArgs {
    /// Score CSV.
    input: PathBuf,
    /// Keep pairs whose largest |value| is at least this.
    #[arg(long)]
    min_max: Option<f64>,
    /// Keep pairs whose values span at least this much.
    #[arg(long)]
    min_range: Option<f64>,
    /// Keep only pairs involving this variable.
    #[arg(long)]
    var: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct MethodsArgs {
    /// Flags every listed method must have: any of `nn`, `ff`, `fn`, `ordinal`.
    #[arg(long, value_delimiter = ',')]
    filter_types: Vec<String>,
}

#[derive(Args)]
struct ConvertArgs {
    /// Square CSV: header of labels after an empty corner cell, one labelled row per variable.
    input: PathBuf,
    /// Score name for the rows.
    #[arg(long)]
    score: String,
    #[arg(long, default_value = "nn")]
    pair_type: String,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct PivotArgs {
    /// Score CSV.
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A failure with its exit code and diagnostic category.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Failure {
        Failure { code, kind, message: message.into() }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure::new(1, "usage", message)
    }

    /// Errors while reading or using a data set and its schema.
    fn data(e: Error) -> Failure {
        match e {
            Error::Io(m) => Failure::new(2, "io", m),
            e @ (Error::UnknownMeasure(_) | Error::IneligibleSlot { .. }) => Failure::new(4, "measure", e.to_string()),
            e @ (Error::InvalidParameter(_) | Error::UnknownOrder(_)) => Failure::usage(e.to_string()),
            e => Failure::new(3, "schema", e.to_string()),
        }
    }

    /// Errors while reading or using a score table.
    fn table(e: Error) -> Failure {
        match e {
            Error::Io(m) => Failure::new(2, "io", m),
            e @ (Error::InvalidParameter(_) | Error::UnknownOrder(_) | Error::NonFiniteThreshold) => {
                Failure::usage(e.to_string())
            }
            e => Failure::new(5, "table", e.to_string()),
        }
    }

    fn io(path: &Path, e: io::Error) -> Failure {
        Failure::new(2, "io", format!("{}: {e}", path.display()))
    }
}

type Outcome = Result<(), Failure>;

fn open(path: &Path) -> Result<File, Failure> {
    File::open(path).map_err(|e| Failure::io(path, e))
}

fn sink(output: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match output {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Failure::io(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_table(t: &PairwiseTable, output: Option<&Path>) -> Outcome {
    let mut w = sink(output)?;
    t.write_csv(&mut w).map_err(Failure::table)?;
    w.flush().map_err(|e| Failure::new(2, "io", e.to_string()))
}

fn read_table(path: &Path) -> Result<PairwiseTable, Failure> {
    let t = PairwiseTable::read_csv(open(path)?).map_err(Failure::table)?;
    if t.is_empty() {
        return Err(Failure::new(5, "table", format!("{}: no score rows", path.display())));
    }
    Ok(t)
}

fn scores(a: ScoresArgs) -> Outcome {
    let schema = match &a.schema {
        Some(p) => {
            let mut text = String::new();
            open(p)?.read_to_string(&mut text).map_err(|e| Failure::io(p, e))?;
            Schema::from_json(&text).map_err(Failure::data)?
        }
        None => Schema::default(),
    };
    let data = Dataset::read_csv(open(&a.input)?, &schema).map_err(Failure::data)?;
    let cor_method =
        CorMethod::parse(&a.method).ok_or_else(|| Failure::usage(format!("unknown correlation method `{}`", a.method)))?;
    let mic_stats = a
        .mic_stats
        .iter()
        .map(|s| MicStat::parse(s).ok_or_else(|| Failure::usage(format!("unknown MIC statistic `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    let mic = MicParams { alpha: a.mic_alpha, c: a.mic_c };
    mic.validate().map_err(Failure::data)?;
    let opts = MeasureOptions { cor_method, mic, mic_stats };
    let by = a.by.as_deref();
    let ungrouped = !a.no_ungrouped;

    let table = if a.default || a.measures.is_empty() {
        let control = ScoreControl { nn: a.nn, fn_: a.fn_, ff: a.ff, oo: a.oo };
        pairwise_scores(&data, &control, by, ungrouped, &opts)
    } else if a.measures.len() == 1 {
        pairwise_by(&data, by, &a.measures[0], ungrouped, &opts)
    } else if by.is_none() {
        let ids: Vec<&str> = a.measures.iter().map(String::as_str).collect();
        pairwise_multi(&data, &ids, &opts)
    } else {
        a.measures
            .iter()
            .map(|m| pairwise_by(&data, by, m, ungrouped, &opts))
            .collect::<pairscore::Result<Vec<_>>>()
            .and_then(PairwiseTable::concat)
    }
    .map_err(Failure::data)?;
    write_table(&table, a.output.as_deref())
}

fn plot(a: PlotArgs) -> Outcome {
    let table = read_table(&a.input)?;
    let order: OrderName = a.order.parse().map_err(Failure::table)?;
    let size = match (a.width, a.height) {
        (None, None) => None,
        (Some(w), Some(h)) if w > 0.0 && h > 0.0 => Some((w, h)),
        _ => return Err(Failure::usage("--width and --height must be given together and be positive")),
    };
    let opts = PlotOptions { size, interactive: a.interactive };
    let doc = match a.kind {
        PlotType::Matrix => plot_matrix(&table, order, &opts),
        PlotType::Linear => {
            let geom: Geom = a.geom.parse().map_err(Failure::table)?;
            plot_linear(&table, geom, order, &opts)
        }
    }
    .map_err(Failure::table)?;
    let html = a.output.as_deref().and_then(|p| p.extension()).is_some_and(|e| e == "html");
    let text = match a.format {
        Some(Format::Html) => doc.to_html(),
        Some(Format::Svg) => doc.to_svg(),
        None if html => doc.to_html(),
        None => doc.to_svg(),
    };
    let mut w = sink(a.output.as_deref())?;
    w.write_all(text.as_bytes())
        .and_then(|_| w.flush())
        .map_err(|e| Failure::new(2, "io", e.to_string()))
}

fn filter(a: FilterArgs) -> Outcome {
    let table = read_table(&a.input)?;
    let criteria = FilterCriteria {
        min_max_abs: a.min_max,
        min_range: a.min_range,
        with_variable: a.var,
    };
    let kept = table.filter_pairs(&criteria).map_err(|e| match e {
        e @ Error::UnknownVariable(_) => Failure::usage(e.to_string()),
        e => Failure::table(e),
    })?;
    write_table(&kept, a.output.as_deref())
}

fn flag(b: bool) -> &'static str {
    if b {
        "TRUE"
    } else {
        "FALSE"
    }
}

fn methods_cmd(a: MethodsArgs) -> Outcome {
    let tokens: Vec<&str> = a.filter_types.iter().map(String::as_str).collect();
    let list: Vec<&MethodInfo> = if tokens.is_empty() {
        methods().iter().collect()
    } else {
        filter_methods(&tokens).map_err(Failure::usage)?
    };
    let mut out = csv::Writer::from_writer(io::stdout().lock());
    let fail = |e: csv::Error| Failure::new(2, "io", e.to_string());
    out.write_record(["name", "nn", "ff", "fn", "from", "range", "ordinal"]).map_err(fail)?;
    for m in list {
        out.write_record([m.name, flag(m.nn), flag(m.ff), flag(m.fn_), m.from, m.range.label(), flag(m.ordinal)])
            .map_err(fail)?;
    }
    out.flush().map_err(|e| Failure::new(2, "io", e.to_string()))
}

fn read_matrix(path: &Path) -> Result<LabeledMatrix, Failure> {
    let bad = |m: String| Failure::new(5, "table", format!("{}: {m}", path.display()));
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(open(path)?);
    let labels: Vec<String> = reader
        .headers()
        .map_err(|e| bad(e.to_string()))?
        .iter()
        .skip(1)
        .map(str::to_string)
        .collect();
    let k = labels.len();
    let mut values = Vec::with_capacity(k * k);
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if rec.len() != k + 1 {
            return Err(bad(format!("row {} has {} fields, expected {}", i + 1, rec.len(), k + 1)));
        }
        if rec[0] != labels.get(i).cloned().unwrap_or_default() {
            return Err(bad(format!("row {} is labelled `{}`, expected the column order", i + 1, &rec[0])));
        }
        for cell in rec.iter().skip(1) {
            let cell = cell.trim();
            values.push(if cell.is_empty() || cell == "NA" {
                None
            } else {
                Some(cell.parse::<f64>().map_err(|_| bad(format!("cannot parse `{cell}`")))?)
            });
        }
    }
    LabeledMatrix::new(labels, values).map_err(|e| bad(e.to_string()))
}

fn convert(a: ConvertArgs) -> Outcome {
    let m = read_matrix(&a.input)?;
    let pair_type: PairType = a.pair_type.parse().map_err(|_| Failure::usage(format!("unknown pair type `{}`", a.pair_type)))?;
    let t = PairwiseTable::from_matrix(&m, &a.score, pair_type).map_err(Failure::table)?;
    write_table(&t, a.output.as_deref())
}

fn pivot(a: PivotArgs) -> Outcome {
    let table = read_table(&a.input)?;
    let mut w = sink(a.output.as_deref())?;
    table.pivot_wide().write_csv(&mut w).map_err(Failure::table)?;
    w.flush().map_err(|e| Failure::new(2, "io", e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scores(a) => scores(a),
        Command::Plot(a) => plot(a),
        Command::Filter(a) => filter(a),
        Command::Methods(a) => methods_cmd(a),
        Command::Convert(a) => convert(a),
        Command::Pivot(a) => pivot(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let message = f.message.replace('\n', " ");
            eprintln!("pairscore: {}: {message}", f.kind);
            ExitCode::from(f.code)
        }
    }
}
