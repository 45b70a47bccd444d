//! Input/output classification: antecedents and until-releases are read
//! from the environment, everything else is driven by the system.
//!
//!     cargo run --example partition

use speccc::ltl::parse_formula;
use speccc::partition::{apply_overrides, parse_part_file, partition_units, render_partition};
use speccc::translate::TranslationUnit;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let src = [
        ("P-1", "G ((pulse_wave && arterial_line && select_cuff) -> X trigger_corroboration)"),
        ("P-2", "G (cuff_available -> X select_cuff)"),
        ("P-3", "G (waiting U start_pressed)"),
    ];
    let units: Vec<TranslationUnit> = src
        .iter()
        .map(|(id, f)| Ok(TranslationUnit::new(*id, parse_formula(f)?)))
        .collect::<Result<_, speccc::ltl::ParseError>>()?;

    let p = partition_units(&units);
    for r in &p.per_requirement {
        println!("{}: inputs {:?}, outputs {:?}", r.id, r.inputs, r.outputs);
    }
    println!("\nunified:\n{}", render_partition(&p));

    // select_cuff was an input for P-1 and an output for P-2; a user who
    // knows better can pin it.
    let fixed = apply_overrides(&p, &parse_part_file("inputs: select_cuff\n")?)?;
    println!("after override:\n{}", render_partition(&fixed));
    Ok(())
}
