//! Translates the bundled medical-device corpus and compares every formula
//! with the reference list shipped next to it.
//!
//!     cargo run --example translate_cara

use std::path::PathBuf;

use speccc::corpus::{load_antonym_dictionary, load_requirements, Sign, SignPolicy};
use speccc::english::Lexicon;
use speccc::ltl::{equivalent_modulo_normalization, parse_ltl_file};
use speccc::time::abstract_units;
use speccc::translate::{translate_corpus, TranslateOptions};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reqs = load_requirements(&data("cara.req"))?;
    let dict = load_antonym_dictionary(&data("cara.dict"))?;
    let t = translate_corpus(&reqs, &Lexicon::default(), &dict, &TranslateOptions::default())?;
    let abs = abstract_units(&t.units, 5, &SignPolicy::global(Sign::Nonneg), false, 1)?;
    let golden = parse_ltl_file(&std::fs::read_to_string(data("cara.golden.ltl"))?)?;

    let mut matched = 0;
    for (u, g) in abs.units.iter().zip(&golden) {
        let ok = equivalent_modulo_normalization(&u.formula, &g.formula);
        matched += ok as usize;
        println!("{} {:<9} {}", if ok { "ok  " } else { "DIFF" }, u.id, u.formula);
    }
    println!("\n{matched}/{} formulas match the reference", golden.len());
    for (from, a) in &t.factory.abbreviations {
        println!("abbreviated {from} -> {}", a.to);
    }
    Ok(())
}
