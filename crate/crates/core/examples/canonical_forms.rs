//! Parsing, printing and algebraic equality of soups.

use nick::syntax::{parse_soup, print_soup, Style};
use nick::terms::{alg_equal, canonicalize, name};

fn main() {
    let a = parse_soup("new p (<t^ p> | t^:[p t^]:[x]) | <x t^>").unwrap();
    let b = parse_soup("<x t^> | new q (t^:[q t^]:[x] | <t^ q>)").unwrap();
    println!("a = {}", print_soup(&a, Style::Core));
    println!("b = {}", print_soup(&b, Style::Core));
    println!("a == b up to renaming and order: {}", alg_equal(&a, &b));

    let c = canonicalize(&a);
    println!("canonical form: {}", print_soup(c.as_soup(), Style::Core));

    let renamed = a.substitute(&name("x"), &name("y"));
    println!("a{{y/x}} = {}", print_soup(&renamed, Style::Core));
    println!("public domains: {:?}", renamed.public_domains());

    println!("\n{}", print_soup(&a, Style::Pictogram));
}
