//! Bounded synthesis on small specifications: a system that must predict
//! its input loses, a system that only reacts wins, and both answers come
//! with a machine that witnesses them.
//!
//!     cargo run --example realizability

use speccc::ltl::{parse_formula, Formula};
use speccc::synthesis::{check_realizability, Signature, SynthesisOptions, Verdict};

fn run(src: &str, inputs: &[&str], outputs: &[&str]) -> Result<(), Box<dyn std::error::Error>> {
    let spec: Vec<Formula> = vec![parse_formula(src)?];
    let v = check_realizability(&spec, &Signature::new(inputs, outputs), &SynthesisOptions::default())?;
    println!("{src}  [inputs {inputs:?}, outputs {outputs:?}]");
    println!("  {} at k = {}", v.name(), v.k());
    match &v {
        Verdict::Realizable { machine, .. } => print!("{}", machine.to_text()),
        Verdict::Unrealizable { counter, .. } => print!("{}", counter.to_text()),
        Verdict::Unknown { .. } => {}
    }
    println!();
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run("G (out <-> in)", &["in"], &["out"])?;
    run("G (out <-> X X X in)", &["in"], &["out"])?;
    run("G (req -> F grant)", &["req"], &["grant"])?;
    run("G (req -> X grant) && G (cancel -> X !grant)", &["req", "cancel"], &["grant"])?;

    let spec = vec![parse_formula("G (r1 -> F g1) && G (r2 -> F g2) && G !(g1 && g2)")?];
    let sig = Signature::new(&["r1", "r2"], &["g1", "g2"]);
    if let Verdict::Realizable { machine, .. } = check_realizability(&spec, &sig, &SynthesisOptions::default())? {
        println!("arbiter as dot:\n{}", machine.to_dot());
    }
    Ok(())
}
