//! Finding why a specification is unrealizable: grow the requirement set
//! until it breaks, shrink it to a minimal conflict, and suggest a fix.
//!
//!     cargo run --example localize_core

use std::path::PathBuf;

use speccc::corpus::{load_requirements, AntonymDictionary};
use speccc::english::Lexicon;
use speccc::localize::{apply_suggestion, locate_core, render_core, suggest_fixes, GrowthOrder};
use speccc::ltl::{parse_formula, Formula};
use speccc::partition::partition_units;
use speccc::synthesis::{check_realizability, Signature, SynthesisOptions};
use speccc::translate::{translate_corpus, TranslateOptions, TranslationUnit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = SynthesisOptions::default();

    // A response obligation against a prohibition.
    let units = vec![
        TranslationUnit::new("A", parse_formula("G (i -> F g)")?),
        TranslationUnit::new("B", parse_formula("G (a -> b)")?),
        TranslationUnit::new("C", parse_formula("G !g")?),
    ];
    let sig = Signature::new(&["i", "a"], &["g", "b"]);
    let core = locate_core(&units, &sig, &opts, GrowthOrder::Corpus)?;
    let p = partition_units(&units);
    println!("{}", render_core(&core, &units, &[], &suggest_fixes(&core, &units, &p)));

    // A corpus without any condition: the partition has to guess an input
    // and guesses wrong.
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/telephony.req");
    let reqs = load_requirements(&path)?;
    let t = translate_corpus(&reqs, &Lexicon::default(), &AntonymDictionary::default(), &TranslateOptions::default())?;
    let p = partition_units(&t.units);
    let core = locate_core(&t.units, &Signature::from(&p), &opts, GrowthOrder::Corpus)?;
    let fixes = suggest_fixes(&core, &t.units, &p);
    let sources: Vec<(String, String)> = reqs.iter().map(|r| (r.id.clone(), r.text.clone())).collect();
    println!("{}", render_core(&core, &t.units, &sources, &fixes));

    let fixed = apply_suggestion(&p, &fixes[0]).expect("flip suggestion");
    let spec: Vec<Formula> = t.units.iter().map(|u| u.formula.clone()).collect();
    let v = check_realizability(&spec, &Signature::from(&fixed), &opts)?;
    println!("after {} {}: {}", fixes[0].kind, fixes[0].target, v.name());
    Ok(())
}
