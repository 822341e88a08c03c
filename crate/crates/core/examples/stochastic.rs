//! Stochastic runs of a large crosstalk population: a few gate pairs may
//! get stuck, most complete.

use nick::kinetics::{extract_crn, simulate_ssa, CrnOptions, SimSettings};
use nick::syntax::parse_soup;

const GATES: &str = "t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^> \
                     | t^:[y t^]:[a t^]:[a] | <t^ a> | [y]:[t^ x]:[t^ a]:t^ | <x t^>";

fn main() {
    let n = 100;
    let u = parse_soup(GATES)
        .unwrap()
        .replicate(n)
        .compose(&parse_soup(&format!("{n} * <t^ x>")).unwrap());
    for seed in 0..5 {
        let settings = SimSettings {
            end_time: 1000.0,
            points: 11,
            volume: n as f64,
            seed,
            ..SimSettings::default()
        };
        let crn = extract_crn(&u, &settings, &CrnOptions::default()).unwrap();
        let trace = simulate_ssa(&crn, &crn.initial, &settings).unwrap();
        let a = trace.column("<t^ a>").unwrap();
        let x = trace.column("<t^ x>").unwrap();
        println!("seed {seed}: <t^ x> {} -> {}, residual <t^ a> {}", x[0], x[10], a[10]);
    }
}
