//! Two transducers that share a private-looking domain `a` in the open
//! interfere with each other and can deadlock.

use nick::syntax::{parse_soup, print_soup, Style};
use nick::verify::{terminal_states, will_reach, DEFAULT_MAX_STATES};

const GATES: &str = "t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^> \
                     | t^:[y t^]:[a t^]:[a] | <t^ a> | [y]:[t^ x]:[t^ a]:t^ | <x t^>";

fn main() {
    let one = parse_soup(&format!("{GATES} | <t^ x>")).unwrap();
    let r = will_reach(&one, &parse_soup("<t^ x>").unwrap(), DEFAULT_MAX_STATES);
    println!("with <t^ x>: will-reach <t^ x> {} over {} states", r.verdict.as_str(), r.graph.len());
    for t in terminal_states(&r.graph).unwrap() {
        println!("  terminal: {}", print_soup(r.graph.state(t).as_soup(), Style::Core));
    }
    if let Some(c) = r.counterexample_state() {
        println!("  stuck in: {}", print_soup(c.as_soup(), Style::Core));
    }

    let two = parse_soup(&format!("{GATES} | <t^ x> | <t^ y>")).unwrap();
    let r = will_reach(&two, &parse_soup("<t^ x> | <t^ y>").unwrap(), DEFAULT_MAX_STATES);
    println!("with <t^ x> | <t^ y>: will-reach {} over {} states", r.verdict.as_str(), r.graph.len());

    // Private domains avoid the problem.
    let private = nick::gates::transducer("x", "y", 1)
        .unwrap()
        .compose(&nick::gates::transducer("y", "x", 1).unwrap())
        .compose(&parse_soup("<t^ x>").unwrap());
    let r = will_reach(&private, &parse_soup("<t^ x>").unwrap(), DEFAULT_MAX_STATES);
    println!("with private domains: will-reach {} over {} states", r.verdict.as_str(), r.graph.len());
}
