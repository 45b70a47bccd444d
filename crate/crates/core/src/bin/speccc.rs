use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use speccc::corpus::{
    load_antonym_dictionary, load_config, load_requirements, parse_sign_policy, AntonymDictionary,
    CorpusError, RunConfig, Sign, SignPolicy,
};
use speccc::english::Lexicon;
use speccc::localize::GrowthOrder;
use speccc::ltl::parse_ltl_file;
use speccc::oracles::{run_selftest, SelftestOptions};
use speccc::partition::{parse_part_file, render_partition, PartFile};
use speccc::pipeline::{run_pipeline, write_artifacts, PipelineOptions, ReportFormat, Source, Stage};

const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "speccc", version, about = "Structured-English requirements to LTL and realizability checking")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate requirements and write the .ltl file.
    Translate {
        #[command(flatten)]
        common: Common,
        /// Keep the original durations.
        #[arg(long)]
        no_abstract: bool,
    },
    /// Translate and abstract durations; print the time profile.
    Abstract(Common),
    /// Classify variables as inputs or outputs; print the partition.
    Partition(Common),
    /// Full pipeline: realizability, plus a core when unrealizable.
    Check(Common),
    /// Full pipeline, always trying to locate a conflicting core.
    Core {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Order::Corpus)]
        order: Order,
    },
    /// Compare production results against the reference oracles.
    Selftest {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        cases: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Requirements file, or a formula file with --from-ltl.
    input: PathBuf,
    #[arg(long)]
    dict: Option<PathBuf>,
    #[arg(long)]
    lexicon: Option<PathBuf>,
    /// Partition file whose entries override the heuristic.
    #[arg(long)]
    overrides: Option<PathBuf>,
    /// Read formulas instead of English.
    #[arg(long)]
    from_ltl: bool,
    /// Fixed partition for --from-ltl input.
    #[arg(long, requires = "from_ltl")]
    part: Option<PathBuf>,
    /// key = value configuration file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Bound on the total deadline error of time abstraction.
    #[arg(long = "B", id = "bound")]
    bound: Option<u32>,
    /// nonneg, nonpos, or a file of `ID : sign` lines.
    #[arg(long)]
    signs: Option<String>,
    #[arg(long)]
    gcd_only: bool,
    #[arg(long)]
    kmax: Option<u32>,
    /// Seconds per next step before abstraction.
    #[arg(long)]
    unit_time: Option<u32>,
    /// Directory for output files.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include per-stage wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Corpus,
    Size,
}

fn config(c: &Common) -> Result<RunConfig, CorpusError> {
    let mut cfg = load_config(c.config.as_deref())?;
    if let Some(b) = c.bound {
        cfg.delta_bound = b;
    }
    if let Some(k) = c.kmax {
        cfg.k_max = k;
    }
    if let Some(u) = c.unit_time {
        cfg.unit_time = u;
    }
    if c.gcd_only {
        cfg.gcd_only = true;
    }
    if let Some(s) = &c.signs {
        cfg.sign_policy = match s.parse::<Sign>() {
            Ok(sign) => SignPolicy::global(sign),
            Err(_) => parse_sign_policy(&read(Path::new(s))?)?,
        };
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read(path: &Path) -> Result<String, CorpusError> {
    std::fs::read_to_string(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn part_file(path: &Path) -> Result<PartFile, String> {
    let text = read(path).map_err(|e| e.to_string())?;
    parse_part_file(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn source(c: &Common) -> Result<Source, String> {
    if c.from_ltl {
        let text = read(&c.input).map_err(|e| e.to_string())?;
        let entries = parse_ltl_file(&text).map_err(|e| format!("{}: {e}", c.input.display()))?;
        let part = c.part.as_deref().map(part_file).transpose()?;
        return Ok(Source::Ltl { entries, part });
    }
    let requirements =
        load_requirements(&c.input).map_err(|e| format!("{}: {e}", c.input.display()))?;
    let dictionary = match &c.dict {
        Some(p) => load_antonym_dictionary(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => AntonymDictionary::default(),
    };
    let lexicon = Lexicon::load(c.lexicon.as_deref()).map_err(|e| e.to_string())?;
    Ok(Source::English {
        requirements,
        dictionary,
        lexicon,
    })
}

fn run(c: &Common, stop_after: Stage, abstract_time: bool, order: GrowthOrder) -> Result<u8, String> {
    let opts = PipelineOptions {
        config: config(c).map_err(|e| e.to_string())?,
        abstract_time,
        overrides: c.overrides.as_deref().map(part_file).transpose()?,
        stop_after,
        order,
        timings: c.timings,
        ..PipelineOptions::default()
    };
    let src = source(c)?;
    let result = run_pipeline(&src, &opts);
    let format = match c.format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };

    if let Some(dir) = &c.out {
        let stem = c
            .input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "spec".into());
        let written = write_artifacts(&result, dir, &stem, stop_after, format)
            .map_err(|e| format!("writing to {}: {e}", dir.display()))?;
        for p in written {
            eprintln!("wrote {}", p.display());
        }
    }

    let stdout = match format {
        ReportFormat::Json => result.json(),
        ReportFormat::Text => match stop_after {
            Stage::Translate if result.report.error.is_none() => result.ltl_text(),
            Stage::Partition if result.report.error.is_none() => {
                result.report.partition.as_ref().map(render_partition).unwrap_or_default()
            }
            _ => result.text(),
        },
    };
    print!("{stdout}");
    // Text output already ends with the error.
    if let (Some(e), ReportFormat::Json) = (&result.report.error, format) {
        eprintln!("error in {} stage: {}", e.stage, e.message);
    }
    Ok(result.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Translate { common, no_abstract } => {
            run(common, Stage::Translate, !no_abstract, GrowthOrder::Corpus)
        }
        Command::Abstract(c) => run(c, Stage::Abstract, true, GrowthOrder::Corpus),
        Command::Partition(c) => run(c, Stage::Partition, true, GrowthOrder::Corpus),
        Command::Check(c) => run(c, Stage::Check, true, GrowthOrder::Corpus),
        Command::Core { common, order } => {
            let order = match order {
                Order::Corpus => GrowthOrder::Corpus,
                Order::Size => GrowthOrder::SizeAscending,
            };
            run(common, Stage::Core, true, order)
        }
        Command::Selftest { seed, cases } => {
            let results = run_selftest(&SelftestOptions {
                seed: *seed,
                cases: *cases,
            });
            for r in &results {
                println!("{r}");
            }
            Ok(if results.iter().all(|r| r.passed()) { 0 } else { 1 })
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
