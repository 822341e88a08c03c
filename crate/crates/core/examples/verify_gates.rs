//! May- and will-correctness of the basic gates, with a replayed witness.

use nick::gates::{fork, join, signals, transducer};
use nick::syntax::{parse_soup, print_soup, Style};
use nick::verify::{describe_edge, may_reach, terminal_states, will_reach, DEFAULT_MAX_STATES};

fn main() {
    let x = parse_soup("<t^ x>").unwrap();
    let init = transducer("x", "y", 1).unwrap().compose(&x);
    let r = may_reach(&init, &parse_soup("<t^ y>").unwrap(), DEFAULT_MAX_STATES);
    println!("transducer may-reach <t^ y>: {} ({} states)", r.verdict.as_str(), r.graph.len());
    for e in r.witness.as_deref().unwrap_or(&[]) {
        println!("  {}", describe_edge(&r.graph, e));
    }

    for n in [1, 2] {
        let cases = [
            ("transducer", transducer("x", "y", n).unwrap().compose(&signals(&["x"], n).unwrap()), signals(&["y"], n).unwrap()),
            ("fork", fork("x", &["y", "z"], n).unwrap().compose(&signals(&["x"], n).unwrap()), signals(&["y", "z"], n).unwrap()),
            ("join", join(&["x", "y"], "z", n).unwrap().compose(&signals(&["x", "y"], n).unwrap()), signals(&["z"], n).unwrap()),
        ];
        for (name, init, target) in cases {
            let r = will_reach(&init, &target, DEFAULT_MAX_STATES);
            let terms = terminal_states(&r.graph).unwrap();
            println!(
                "{name} n={n}: will-reach {} ({} states, {} terminal: {}) in {:?}",
                r.verdict.as_str(),
                r.graph.len(),
                terms.len(),
                print_soup(r.graph.state(terms[0]).as_soup(), Style::Core),
                r.graph.elapsed()
            );
        }
    }
}
