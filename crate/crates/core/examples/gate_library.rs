//! Builds every gate kind and prints it in core syntax.

use nick::gates::{catalyst, fork, join, transducer};
use nick::syntax::{print_soup, Style};

fn main() {
    let gates = [
        ("transducer x -> y", transducer("x", "y", 1)),
        ("fork x -> y, z", fork("x", &["y", "z"], 1)),
        ("fork x -> y, z, w", fork("x", &["y", "z", "w"], 1)),
        ("catalyst x + y -> y + z", catalyst("x", "y", "z", 1)),
        ("join x + y -> z", join(&["x", "y"], "z", 1)),
        ("join w + x + y -> z", join(&["w", "x", "y"], "z", 1)),
        ("10 transducers sharing one private domain", transducer("x", "y", 10)),
    ];
    for (title, g) in gates {
        let g = g.expect("valid gate");
        println!("{title} ({} strands):", g.total_count());
        println!("  {}\n", print_soup(&g, Style::Core));
    }
    match transducer("x", "y", 0) {
        Ok(_) => unreachable!(),
        Err(e) => println!("zero copies: {e}"),
    }
}
