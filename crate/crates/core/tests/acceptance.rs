//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness; exits non-zero when any criterion fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use speccc::corpus::{load_antonym_dictionary, load_requirements, AntonymDictionary, Sign, SignPolicy};
use speccc::english::Lexicon;
use speccc::localize::{apply_suggestion, locate_core, suggest_fixes, Core, GrowthOrder, SuggestionKind};
use speccc::ltl::{equivalent_modulo_normalization, parse_formula, parse_ltl_file, Formula};
use speccc::oracles::selftest::{all_time_cases, gcd_agreement, optimizer_agreement, synthesis_agreement};
use speccc::partition::{parse_part_file, partition_requirement, partition_units, Partition};
use speccc::synthesis::{check_realizability, Signature, SynthesisOptions, Verdict};
use speccc::time::{abstract_units, gcd_reduce, optimize};
use speccc::translate::{translate_corpus, TranslateOptions, TranslationUnit};

const SEED: u64 = 2024;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

type Outcome = Result<String, String>;

fn cara_units(bound: u32) -> Result<Vec<TranslationUnit>, String> {
    cara_units_with(bound, true)
}

fn cara_units_with(bound: u32, abbreviate: bool) -> Result<Vec<TranslationUnit>, String> {
    let reqs = load_requirements(&data("cara.req")).map_err(|e| e.to_string())?;
    let dict = load_antonym_dictionary(&data("cara.dict")).map_err(|e| e.to_string())?;
    let opts = TranslateOptions {
        abbreviate,
        ..TranslateOptions::default()
    };
    let t = translate_corpus(&reqs, &Lexicon::default(), &dict, &opts).map_err(|e| e.to_string())?;
    let abs = abstract_units(&t.units, bound, &SignPolicy::global(Sign::Nonneg), false, 1)
        .map_err(|e| e.to_string())?;
    Ok(abs.units)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        return Err(format!("{what} took {took:.1?}, limit {limit:?}"));
    }
    Ok(())
}

fn golden_translation() -> Outcome {
    let start = Instant::now();
    let units = cara_units(5)?;
    let text = std::fs::read_to_string(data("cara.golden.ltl")).map_err(|e| e.to_string())?;
    let golden = parse_ltl_file(&text).map_err(|e| e.to_string())?;
    if golden.len() != 29 || units.len() != 29 {
        return Err(format!("{} translated, {} expected", units.len(), golden.len()));
    }
    let mut bad = vec![];
    for (u, g) in units.iter().zip(&golden) {
        if g.label.as_deref() != Some(u.id.as_str())
            || !equivalent_modulo_normalization(&u.formula, &g.formula)
        {
            bad.push(u.id.clone());
        }
    }
    let next_count = |id: &str| {
        units
            .iter()
            .find(|u| u.id == id)
            .map(|u| u.formula.timed_next_lengths().into_iter().sum::<u32>())
    };
    let counts = (next_count("Req-08"), next_count("Req-28"), next_count("Req-42"));
    if counts != (Some(0), Some(3), Some(1)) {
        bad.push(format!("next counts {counts:?}"));
    }
    within(start, Duration::from_secs(5), "translation")?;
    if bad.is_empty() {
        Ok(format!("29/29 exact in {:.2?}", start.elapsed()))
    } else {
        Err(format!("mismatches: {}", bad.join(", ")))
    }
}

fn worked_abstraction() -> Outcome {
    let p = optimize(&[3, 180, 60], 5, &[Sign::Nonneg; 3]);
    let got = (p.divisor, p.reduced.clone(), p.errors.clone());
    if got != (60, vec![0, 3, 1], vec![3, 0, 0]) {
        return Err(format!("optimizer gave {got:?}"));
    }
    let g = gcd_reduce(&[3, 180, 60]);
    if (g.divisor, g.reduced.clone()) != (3, vec![1, 60, 20]) {
        return Err(format!("gcd gave d={} {:?}", g.divisor, g.reduced));
    }
    Ok("d=60 (0,3,1) Δ=(3,0,0); gcd d=3 (1,60,20)".into())
}

fn optimizer_oracle() -> Outcome {
    let start = Instant::now();
    let cases = all_time_cases(50, 10);
    let r = optimizer_agreement(&cases);
    within(start, Duration::from_secs(60), "optimizer agreement")?;
    if r.passed() && r.skipped == 0 {
        Ok(format!("{} cases agree in {:.1?}", r.compared, start.elapsed()))
    } else {
        Err(r.to_string())
    }
}

fn partition_example() -> Outcome {
    let mut seen = vec![];
    for (abbreviate, want) in [
        (false, ["available_arterial_line", "available_pulse_wave", "select_cuff"]),
        (true, ["arterial_line", "pulse_wave", "select_cuff"]),
    ] {
        let units = cara_units_with(5, abbreviate)?;
        let u = units.iter().find(|u| u.id == "Req-32.1").ok_or("Req-32.1 missing")?;
        let p = partition_requirement(&u.id, &u.formula);
        let ins: Vec<&str> = p.inputs.iter().map(String::as_str).collect();
        let outs: Vec<&str> = p.outputs.iter().map(String::as_str).collect();
        if ins != want || outs != ["trigger_corroboration"] {
            return Err(format!("abbreviate={abbreviate}: inputs {ins:?}, outputs {outs:?}"));
        }
        seen.push(format!("{ins:?}"));
    }
    Ok(format!("inputs {}, output trigger_corroboration", seen.join(" / abbreviated ")))
}

fn clairvoyance() -> Outcome {
    let opts = SynthesisOptions::default();
    let sig = Signature::new(&["input"], &["output"]);
    let mut notes = vec![];
    for n in 1..=3 {
        let src = format!("G (output <-> {}input)", "X ".repeat(n));
        let f = parse_formula(&src).map_err(|e| e.to_string())?;
        match check_realizability(std::slice::from_ref(&f), &sig, &opts).map_err(|e| e.to_string())? {
            Verdict::Unrealizable { counter, k } => {
                if !counter.refutes(&f, opts.automaton_budget).map_err(|e| e.to_string())? {
                    return Err(format!("{src}: counter-strategy does not refute"));
                }
                notes.push(format!("n={n} unrealizable@k={k}"));
            }
            v => return Err(format!("{src}: {}", v.name())),
        }
    }
    let f = parse_formula("G (output <-> input)").map_err(|e| e.to_string())?;
    match check_realizability(std::slice::from_ref(&f), &sig, &opts).map_err(|e| e.to_string())? {
        Verdict::Realizable { machine, .. } => {
            if !machine.satisfies(&f, opts.automaton_budget).map_err(|e| e.to_string())? {
                return Err("copy machine fails model check".into());
            }
            notes.push(format!("copy realizable ({} state)", machine.len()));
        }
        v => return Err(format!("G (output <-> input): {}", v.name())),
    }
    Ok(notes.join(", "))
}

fn synthesis_oracle() -> Outcome {
    let start = Instant::now();
    let r = synthesis_agreement(SEED, 200, &SynthesisOptions::default());
    within(start, Duration::from_secs(600), "synthesis agreement")?;
    if r.passed() {
        Ok(format!(
            "{} conclusive agree, {} inconclusive, {:.1?}",
            r.compared,
            r.skipped,
            start.elapsed()
        ))
    } else {
        Err(r.to_string())
    }
}

fn cara_end_to_end() -> Outcome {
    let start = Instant::now();
    let units = cara_units(5)?;
    let p = partition_units(&units);
    let spec: Vec<Formula> = units.iter().map(|u| u.formula.clone()).collect();
    let v = check_realizability(&spec, &Signature::from(&p), &SynthesisOptions::default())
        .map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(600), "CARA check")?;
    match v {
        Verdict::Realizable { machine, k } => Ok(format!(
            "realizable at k={k}, {} states, {:.1?}",
            machine.len(),
            start.elapsed()
        )),
        v => Err(v.name().to_string()),
    }
}

/// Conflict set refuted, and every single deletion is not.
fn check_minimal(core: &Core, units: &[TranslationUnit], sig: &Signature) -> Result<(), String> {
    let opts = SynthesisOptions::default();
    let pick = |skip: Option<&str>| -> Vec<Formula> {
        core.conflict_set
            .iter()
            .filter(|id| Some(id.as_str()) != skip)
            .map(|id| units.iter().find(|u| &u.id == id).unwrap().formula.clone())
            .collect()
    };
    let v = check_realizability(&pick(None), sig, &opts).map_err(|e| e.to_string())?;
    if !v.is_unrealizable() {
        return Err(format!("core {:?} is {}", core.conflict_set, v.name()));
    }
    if !core.conflict_set.contains(&core.culprit) {
        return Err("culprit outside the core".into());
    }
    for id in &core.conflict_set {
        let v = check_realizability(&pick(Some(id)), sig, &opts).map_err(|e| e.to_string())?;
        if v.is_unrealizable() {
            return Err(format!("core without {id} is still unrealizable"));
        }
    }
    Ok(())
}

fn localization() -> Outcome {
    let opts = SynthesisOptions::default();

    let text = std::fs::read_to_string(data("conflict.ltl")).map_err(|e| e.to_string())?;
    let units: Vec<TranslationUnit> = parse_ltl_file(&text)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|e| TranslationUnit::new(e.label.unwrap_or_default(), e.formula))
        .collect();
    let part = parse_part_file(&std::fs::read_to_string(data("conflict.part")).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let sig = Signature {
        inputs: part.inputs,
        outputs: part.outputs,
    };
    let core = locate_core(&units, &sig, &opts, GrowthOrder::Corpus).map_err(|e| e.to_string())?;
    if core.conflict_set != ["A", "B"] || core.culprit != "B" {
        return Err(format!("two-formula conflict gave {core:?}"));
    }
    check_minimal(&core, &units, &sig)?;

    let reqs = load_requirements(&data("telephony.req")).map_err(|e| e.to_string())?;
    let t = translate_corpus(&reqs, &Lexicon::default(), &AntonymDictionary::default(), &TranslateOptions::default())
        .map_err(|e| e.to_string())?;
    let p: Partition = partition_units(&t.units);
    let sig = Signature::from(&p);
    let spec: Vec<Formula> = t.units.iter().map(|u| u.formula.clone()).collect();
    let before = check_realizability(&spec, &sig, &opts).map_err(|e| e.to_string())?;
    if !before.is_unrealizable() {
        return Err(format!("analog sample is {} before the fix", before.name()));
    }
    let core = locate_core(&t.units, &sig, &opts, GrowthOrder::Corpus).map_err(|e| e.to_string())?;
    check_minimal(&core, &t.units, &sig)?;
    let fixes = suggest_fixes(&core, &t.units, &p);
    let flip = fixes
        .iter()
        .find(|s| s.kind != SuggestionKind::EditRequirement)
        .ok_or("no flip suggested")?;
    let fixed = apply_suggestion(&p, flip).ok_or("flip not applicable")?;
    let after = check_realizability(&spec, &Signature::from(&fixed), &opts).map_err(|e| e.to_string())?;
    if !after.is_realizable() {
        return Err(format!("after {} {}: {}", flip.kind, flip.target, after.name()));
    }
    Ok(format!(
        "conflict core [A, B]; analog core {:?}, {} {} makes it realizable",
        core.conflict_set, flip.kind, flip.target
    ))
}

fn gcd_soundness() -> Outcome {
    let r = gcd_agreement(SEED, 50, &SynthesisOptions::default());
    if r.passed() {
        Ok(format!("{} conclusive agree, {} inconclusive", r.compared, r.skipped))
    } else {
        Err(r.to_string())
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("golden translation", golden_translation),
        ("time abstraction worked example", worked_abstraction),
        ("optimizer oracle agreement", optimizer_oracle),
        ("partition example", partition_example),
        ("unrealizability sanity", clairvoyance),
        ("synthesis oracle agreement", synthesis_oracle),
        ("CARA end-to-end", cara_end_to_end),
        ("localization", localization),
        ("GCD soundness spot-check", gcd_soundness),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
