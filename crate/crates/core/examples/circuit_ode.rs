//! Deterministic simulation of a script: two forks feeding four joins.
//! Pass a path to simulate a different script.

use std::collections::BTreeMap;

use nick::kinetics::{eval_plots, extract_crn, format_g9, simulate_ode, CrnOptions};
use nick::syntax::{elaborate, parse_dsd_script};

const CIRCUIT: &str = include_str!("../tests/data/fork_join.dsd");

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable script"),
        None => CIRCUIT.to_string(),
    };
    let program = parse_dsd_script(&text).expect("script parses");
    let e = elaborate(&program, &BTreeMap::new()).expect("script elaborates");
    let crn = extract_crn(&e.soup, &e.settings, &CrnOptions::default()).unwrap();
    println!("{} species, {} reactions", crn.species.len(), crn.reactions.len());

    let raw = simulate_ode(&crn, &crn.initial_concentrations(), &e.settings).unwrap();
    let (trace, warnings) = eval_plots(&raw, &crn, &e.plots);
    for w in warnings {
        eprintln!("warning: {w}");
    }
    println!("{:>10} {}", "time", trace.labels.join("  "));
    let step = (trace.times.len() / 10).max(1);
    for (t, row) in trace.times.iter().zip(&trace.values).step_by(step) {
        let cells: Vec<String> = row.iter().map(|v| format_g9(*v)).collect();
        println!("{:>10} {}", format_g9(*t), cells.join("  "));
    }
}
