//! ASCII pictograms (output only).
//!
//! | element                    | glyph  | ASCII |
//! |----------------------------|--------|-------|
//! | signal `tx`, bound `tx`    | `⌐x`   | `_\|x` |
//! | cosignal `xt`, bound `xt`  | `x⌝`   | `x\|_` |
//! | open bottom toehold `t`    | `⌣`    | `~`   |
//! | long segment `x`           | `x`    | `x`   |
//! | unbroken pair `xy`         | `x.y`  | `x.y` |
//! | nick between long domains  | `†`    | `+`   |
//!
//! A duplex is wrapped in `[ ]` (the underline), segments are juxtaposed and
//! a nick is only drawn where two long domains would otherwise touch. The
//! transducer renders as `[~x|_a|_a] | _|a | [x_|y_|a~] | y|_`.

use super::term::{display_names, domain_text};
use crate::terms::{Molecule, Segment, SingleStrand, Soup};

fn starts_long(s: &Segment) -> bool {
    matches!(s, Segment::X(_) | Segment::XT(_) | Segment::XY(..))
}

fn ends_long(s: &Segment) -> bool {
    matches!(s, Segment::X(_) | Segment::TX(_) | Segment::XY(..))
}

fn molecule(m: &Molecule, names: &[String]) -> String {
    let n = |d| domain_text(d, names);
    match m {
        Molecule::Single(SingleStrand::Signal(x)) => format!("_|{}", n(x)),
        Molecule::Single(SingleStrand::Cosignal(x)) => format!("{}|_", n(x)),
        Molecule::Duplex(d) => {
            let mut out = String::from("[");
            let segs = d.segments();
            for (i, s) in segs.iter().enumerate() {
                if i > 0 && ends_long(&segs[i - 1]) && starts_long(s) {
                    out.push('+');
                }
                match s {
                    Segment::T => out.push('~'),
                    Segment::X(x) => out.push_str(n(x)),
                    Segment::TX(x) => {
                        out.push_str("_|");
                        out.push_str(n(x));
                    }
                    Segment::XT(x) => {
                        out.push_str(n(x));
                        out.push_str("|_");
                    }
                    Segment::XY(x, y) => {
                        out.push_str(n(x));
                        out.push('.');
                        out.push_str(n(y));
                    }
                }
            }
            out.push(']');
            out
        }
    }
}

pub fn render(u: &Soup) -> String {
    let names = display_names(u);
    let body: Vec<String> = u
        .molecules()
        .iter()
        .map(|(m, c)| {
            let t = molecule(m, &names);
            if *c == 1 {
                t
            } else {
                format!("{c}*{t}")
            }
        })
        .collect();
    let body = if body.is_empty() {
        "()".into()
    } else {
        body.join(" | ")
    };
    let binders: String = names.iter().map(|n| format!("(new {n}) ")).collect();
    format!("{binders}{body}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_soup;

    #[test]
    fn transducer_pictogram() {
        let u =
            parse_soup("t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^>").unwrap();
        assert_eq!(render(&u), "[~x|_a|_a] | _|a | [x_|y_|a~] | y|_");
    }

    #[test]
    fn nicks_between_long_domains() {
        let u = parse_soup("t^:[b y]:t^ | [x]:[y] | [x t^]:[y t^]").unwrap();
        assert_eq!(render(&u), "[~b.y~] | [x+y] | [x|_y|_]");
    }

    #[test]
    fn binders_prefix() {
        let u = parse_soup("new a (2 * <t^ a>)").unwrap();
        assert_eq!(render(&u), "(new a) 2*_|a");
    }
}
