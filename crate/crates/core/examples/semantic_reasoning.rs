//! Antonym reasoning: contrasting complements of the same subject share a
//! proposition, with the negative word rewritten as a negation.
//!
//!     cargo run --example semantic_reasoning

use speccc::corpus::{parse_dictionary, parse_requirements};
use speccc::english::Lexicon;
use speccc::translate::{translate_corpus, TranslateOptions};

const REQS: &str = "\
S-1: If the pump is available, the infusion is started.
S-2: If the pump is unavailable, the alarm is sounded.
S-3: If the battery is low, the pump is stopped.
";

const DICT: &str = "available : unavailable\nhigh : low\n";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reqs = parse_requirements(REQS)?;
    let dict = parse_dictionary(DICT)?;
    let t = translate_corpus(&reqs, &Lexicon::default(), &dict, &TranslateOptions::default())?;

    println!("candidate groups:");
    for g in &t.candidates.groups {
        println!("  {}: {:?}", g.subject, g.dep);
    }
    println!("antonym pairs:");
    for ((a, b), pos) in &t.antonyms.positive_of {
        println!("  {a} / {b}, positive side {pos}");
    }
    println!("word colors:");
    for (w, e) in &t.antonyms.words {
        println!("  {w}: {:?}", e.color);
    }
    println!("formulas:");
    for u in &t.units {
        println!("  {}: {}", u.id, u.formula);
    }
    Ok(())
}
