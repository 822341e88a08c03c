//! Gate populations.
//!
//! Every constructor returns `n` copies of a gate sharing one private slot
//! per private letter, i.e. `(νa)(G^n)`, not `((νa)G)^n`.

use std::fmt;

use thiserror::Error;

use crate::terms::{Domain, Molecule, Name, Segment, Soup};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GateKind {
    Transducer,
    Fork,
    Catalyst,
    Join,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::Transducer => "transducer",
            GateKind::Fork => "fork",
            GateKind::Catalyst => "catalyst",
            GateKind::Join => "join",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GateError {
    #[error("gate populations need at least one copy")]
    ZeroCopies,
    #[error("`{0}` is not a usable long domain name")]
    BadName(String),
    #[error("a {kind} takes {expected}, got {inputs} inputs and {outputs} outputs")]
    Arity {
        kind: GateKind,
        expected: &'static str,
        inputs: usize,
        outputs: usize,
    },
    #[error("a catalyst's first output must be its second input")]
    CatalystMismatch,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GateSpec {
    pub kind: GateKind,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub copies: usize,
}

impl GateSpec {
    pub fn new(kind: GateKind, inputs: &[&str], outputs: &[&str], copies: usize) -> Self {
        GateSpec {
            kind,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            outputs: outputs.iter().map(|s| s.to_string()).collect(),
            copies,
        }
    }

    pub fn validate(&self) -> Result<(), GateError> {
        if self.copies == 0 {
            return Err(GateError::ZeroCopies);
        }
        for s in self.inputs.iter().chain(&self.outputs) {
            public(s)?;
        }
        let (i, o) = (self.inputs.len(), self.outputs.len());
        let (ok, expected) = match self.kind {
            GateKind::Transducer => (i == 1 && o == 1, "1 input and 1 output"),
            GateKind::Fork => (i == 1 && o >= 2, "1 input and at least 2 outputs"),
            GateKind::Catalyst => (i == 2 && o == 2, "2 inputs and 2 outputs"),
            GateKind::Join => (
                (2..=3).contains(&i) && o >= 1,
                "2 or 3 inputs and at least 1 output",
            ),
        };
        if !ok {
            return Err(GateError::Arity {
                kind: self.kind,
                expected,
                inputs: i,
                outputs: o,
            });
        }
        if self.kind == GateKind::Catalyst && self.outputs[0] != self.inputs[1] {
            return Err(GateError::CatalystMismatch);
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Soup, GateError> {
        self.validate()?;
        let ins: Vec<Domain> = self
            .inputs
            .iter()
            .map(|s| public(s))
            .collect::<Result<_, _>>()?;
        let outs: Vec<Domain> = self
            .outputs
            .iter()
            .map(|s| public(s))
            .collect::<Result<_, _>>()?;
        let mut u = Soup::new();
        let a = u.fresh_private("a");
        match self.kind {
            GateKind::Transducer | GateKind::Fork => {
                left_half(&mut u, &ins[..1], &a);
                right_half(&mut u, &ins[0], &[], &outs, &a);
                for y in &outs {
                    u.add(Molecule::cosignal(y.clone()), 1);
                }
            }
            GateKind::Catalyst => {
                left_half(&mut u, &ins, &a);
                right_half(&mut u, &ins[0], &[], &outs, &a);
                u.add(Molecule::cosignal(outs[1].clone()), 1);
            }
            GateKind::Join => {
                let hints = ["b", "c"];
                let relays: Vec<Domain> = (1..ins.len())
                    .map(|k| u.fresh_private(hints[k - 1]))
                    .collect();
                left_half(&mut u, &ins, &a);
                right_half(&mut u, &ins[0], &relays, &outs, &a);
                for r in &relays {
                    u.add(Molecule::cosignal(r.clone()), 1);
                }
                for y in &outs {
                    u.add(Molecule::cosignal(y.clone()), 1);
                }
                for (r, x) in relays.iter().zip(&ins[1..]) {
                    u.add(
                        Molecule::duplex(vec![
                            Segment::T,
                            Segment::XY(r.clone(), x.clone()),
                            Segment::T,
                        ]),
                        1,
                    );
                }
            }
        }
        Ok(u.replicate(self.copies))
    }
}

fn public(s: &str) -> Result<Domain, GateError> {
    let ok = s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    match Name::new(s) {
        Some(n) if ok => Ok(Domain::Public(n)),
        _ => Err(GateError::BadName(s.to_string())),
    }
}

/// `t^:[x1 t^]:…:[xk t^]:[a t^]:[a]` plus the fuel signal `<t^ a>`.
fn left_half(u: &mut Soup, inputs: &[Domain], a: &Domain) {
    let mut segs = vec![Segment::T];
    segs.extend(inputs.iter().map(|x| Segment::XT(x.clone())));
    segs.push(Segment::XT(a.clone()));
    segs.push(Segment::X(a.clone()));
    u.add(Molecule::duplex(segs), 1);
    u.add(Molecule::signal(a.clone()), 1);
}

/// `[x]:[t^ r1]:…:[t^ yk]:…:[t^ y1]:[t^ a]:t^`; relays are released first,
/// outputs in list order.
fn right_half(u: &mut Soup, x: &Domain, relays: &[Domain], outputs: &[Domain], a: &Domain) {
    let mut segs = vec![Segment::X(x.clone())];
    segs.extend(relays.iter().map(|r| Segment::TX(r.clone())));
    segs.extend(outputs.iter().rev().map(|y| Segment::TX(y.clone())));
    segs.push(Segment::TX(a.clone()));
    segs.push(Segment::T);
    u.add(Molecule::duplex(segs), 1);
}

/// `T^n_xy`: converts `<t^ x>` into `<t^ y>`.
pub fn transducer(x: &str, y: &str, n: usize) -> Result<Soup, GateError> {
    GateSpec::new(GateKind::Transducer, &[x], &[y], n).build()
}

/// `F^n_x(outs)`: converts `<t^ x>` into one signal per output.
pub fn fork(x: &str, outs: &[&str], n: usize) -> Result<Soup, GateError> {
    GateSpec::new(GateKind::Fork, &[x], outs, n).build()
}

/// `C^n_xyz`: consumes `<t^ x>` in the presence of `<t^ y>`, which is
/// returned alongside `<t^ z>`.
pub fn catalyst(x: &str, y: &str, z: &str, n: usize) -> Result<Soup, GateError> {
    GateSpec::new(GateKind::Catalyst, &[x, y], &[y, z], n).build()
}

/// `J^n_(inputs)z` for two or three inputs, with one collector per relay.
pub fn join(inputs: &[&str], z: &str, n: usize) -> Result<Soup, GateError> {
    GateSpec::new(GateKind::Join, inputs, &[z], n).build()
}

/// `n` copies of the signal `<t^ x>` for each listed domain.
pub fn signals(names: &[&str], n: usize) -> Result<Soup, GateError> {
    let mut u = Soup::new();
    for s in names {
        u.add(Molecule::signal(public(s)?), n);
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_soup, print_soup, Style};
    use crate::terms::{alg_equal, canonicalize};

    fn same(u: &Soup, text: &str) -> bool {
        alg_equal(u, &parse_soup(text).unwrap())
    }

    #[test]
    fn transducer_shape() {
        let t = transducer("x", "y", 1).unwrap();
        assert_eq!(t.total_count(), 4);
        assert_eq!(t.privates().len(), 1);
        assert!(same(
            &t,
            "new a (t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^>)"
        ));
        let t3 = transducer("x", "y", 3).unwrap();
        assert_eq!(t3.total_count(), 12);
        assert_eq!(canonicalize(&t3).privates().len(), 1);
        assert!(transducer("x", "x", 1).unwrap().is_well_formed());
    }

    #[test]
    fn fork_shapes() {
        let f = fork("x", &["y", "z"], 1).unwrap();
        assert_eq!(f.total_count(), 5);
        assert!(same(
            &f,
            "new a (t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ z]:[t^ y]:[t^ a]:t^ | <z t^> | <y t^>)"
        ));
        let f3 = fork("x", &["y", "z", "w"], 1).unwrap();
        assert!(same(
            &f3,
            "new a (t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ w]:[t^ z]:[t^ y]:[t^ a]:t^ \
             | <y t^> | <z t^> | <w t^>)"
        ));
    }

    #[test]
    fn catalyst_shape() {
        let c = catalyst("x", "y", "z", 1).unwrap();
        assert!(same(
            &c,
            "new a (t^:[x t^]:[y t^]:[a t^]:[a] | <t^ a> | [x]:[t^ z]:[t^ y]:[t^ a]:t^ | <z t^>)"
        ));
    }

    #[test]
    fn join_shapes() {
        let j = join(&["x", "y"], "z", 1).unwrap();
        assert_eq!(j.total_count(), 6);
        assert_eq!(canonicalize(&j).privates().len(), 2);
        assert!(same(
            &j,
            "new a new b (t^:[x t^]:[y t^]:[a t^]:[a] | <t^ a> | [x]:[t^ b]:[t^ z]:[t^ a]:t^ \
             | <b t^> | <z t^> | t^:[b y]:t^)"
        ));
        let j3 = join(&["w", "x", "y"], "z", 1).unwrap();
        assert!(same(
            &j3,
            "new a new b new c (t^:[w t^]:[x t^]:[y t^]:[a t^]:[a] | <t^ a> \
             | [w]:[t^ b]:[t^ c]:[t^ z]:[t^ a]:t^ | <b t^> | <c t^> | <z t^> \
             | t^:[b x]:t^ | t^:[c y]:t^)"
        ));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            transducer("x", "y", 0),
            Err(GateError::ZeroCopies)
        ));
        assert!(matches!(fork("x", &["y"], 1), Err(GateError::Arity { .. })));
        assert!(matches!(join(&["x"], "z", 1), Err(GateError::Arity { .. })));
        assert!(matches!(
            join(&["a", "b", "c", "d"], "z", 1),
            Err(GateError::Arity { .. })
        ));
        assert!(matches!(
            transducer("t", "y", 1),
            Err(GateError::BadName(_))
        ));
        assert!(matches!(
            transducer("x y", "y", 1),
            Err(GateError::BadName(_))
        ));
        let bad = GateSpec::new(GateKind::Catalyst, &["x", "y"], &["z", "y"], 1);
        assert!(matches!(bad.build(), Err(GateError::CatalystMismatch)));
    }

    #[test]
    fn printed_gates_round_trip() {
        for g in [
            transducer("x", "y", 2).unwrap(),
            fork("x", &["y", "z"], 1).unwrap(),
            catalyst("x", "y", "z", 1).unwrap(),
            join(&["x", "y"], "z", 3).unwrap(),
            join(&["w", "x", "y"], "z", 1).unwrap(),
            transducer("a", "b", 1).unwrap(),
        ] {
            let text = print_soup(&g, Style::Core);
            assert!(alg_equal(&g, &parse_soup(&text).unwrap()), "{text}");
        }
    }
}
