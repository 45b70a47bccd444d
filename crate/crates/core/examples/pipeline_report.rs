//! The whole pipeline on a requirements file, ending in a JSON report.
//!
//!     cargo run --example pipeline_report [path/to/file.req]

use std::path::PathBuf;

use speccc::corpus::{load_requirements, AntonymDictionary};
use speccc::english::Lexicon;
use speccc::pipeline::{run_pipeline, PipelineOptions, Source};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/unreal.req"));
    let source = Source::English {
        requirements: load_requirements(&path)?,
        dictionary: AntonymDictionary::default(),
        lexicon: Lexicon::default(),
    };
    let run = run_pipeline(&source, &PipelineOptions::default());
    print!("{}", run.text());
    println!("\n-- json --");
    print!("{}", run.json());
    std::process::exit(run.exit_code());
}
