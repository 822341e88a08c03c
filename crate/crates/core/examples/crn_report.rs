//! Reaction network extraction in both cooperation modes, with counts
//! compared against published reference figures.

use std::collections::BTreeMap;

use nick::kinetics::{count_report, extract_crn, CrnOptions, REFERENCE_COUNTS};
use nick::syntax::{elaborate, parse_dsd_script};

const CIRCUIT: &str = include_str!("../tests/data/fork_join.dsd");

fn main() {
    let e = elaborate(&parse_dsd_script(CIRCUIT).unwrap(), &BTreeMap::new()).unwrap();
    let crn = extract_crn(&e.soup, &e.settings, &CrnOptions::default()).unwrap();
    for r in crn.reactions.iter().take(8) {
        let side = |ix: &[usize]| {
            ix.iter().map(|&i| crn.species[i].label()).collect::<Vec<_>>().join(" + ")
        };
        println!("{} -> {}  ({})", side(&r.reactants), side(&r.products), r.rule);
    }
    println!("...\n");
    let r = REFERENCE_COUNTS;
    println!("reference: {} single, {} double, {} reactions, {} odes", r.single, r.double, r.reactions, r.odes);
    for track_displaced in [false, true] {
        let opts = CrnOptions { track_displaced, ..CrnOptions::default() };
        for (mode, c) in count_report(&e.soup, &e.settings, &opts).unwrap() {
            let flags = c.matches(&r).map(|m| if m { "match" } else { "mismatch" });
            println!(
                "{mode}{}: {} single [{}], {} double [{}], {} reactions [{}], {} odes [{}]",
                if track_displaced { " + displaced strands" } else { "" },
                c.single, flags[0], c.double, flags[1], c.reactions, flags[2], c.odes, flags[3]
            );
        }
    }
}
