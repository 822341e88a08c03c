//! The catalyst consumes x only when y is present, and gives y back.

use nick::gates::catalyst;
use nick::syntax::{parse_soup, print_soup, Style};
use nick::verify::{export_dot, may_reach, terminal_states, will_reach, StateGraph, DEFAULT_MAX_STATES};

fn main() {
    let c = catalyst("x", "y", "z", 1).unwrap();
    let both = c.clone().compose(&parse_soup("<t^ x> | <t^ y>").unwrap());
    let r = may_reach(&both, &parse_soup("<t^ y> | <t^ z>").unwrap(), DEFAULT_MAX_STATES);
    println!("x | y may-reach y | z: {} ({} states)", r.verdict.as_str(), r.graph.len());
    for t in terminal_states(&r.graph).unwrap() {
        println!("  terminal: {}", print_soup(r.graph.state(t).as_soup(), Style::Core));
    }

    let alone = c.compose(&parse_soup("<t^ x>").unwrap());
    let back = will_reach(&alone, &alone, DEFAULT_MAX_STATES);
    println!("x alone can always return to the start: {}", back.verdict.as_str());
    let g = StateGraph::explore(&alone, DEFAULT_MAX_STATES);
    println!("\n{}", export_dot(&g));
}
