//! The script format: a small subset of the DSD language.
//!
//! ```text
//! program   := (directive | toehold | def)* term
//! directive := "directive" "sample" NUM INT
//!            | "directive" "plot" plot (";" plot)*
//! plot      := molecule | "sum" "(" "{" duplex-pattern "}" ")"
//! toehold   := "new" "t" "@" NUM "," NUM
//! def       := "def" IDENT "(" IDENT ("," IDENT)* ")" "=" term
//! term      := "new" IDENT term
//!            | "(" term ("|" term)* ")"
//!            | (INT | IDENT) "*" molecule
//!            | IDENT "(" arg ("," arg)* ")"
//!            | molecule
//! ```
//!
//! Each call of a definition gets its own private slot for every `new`
//! inside it; all `N*` copies of a molecule within that call share it.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::lexer::{Pos, Tok};
use super::term::{parse_molecule, starts_molecule, Cursor, RawId, RawMol, RawSeg};
use super::ParseError;
use crate::kinetics::SimSettings;
use crate::terms::{canonicalize, Domain, DoubleStrand, Molecule, Name, Segment, Soup, TOEHOLD};

/// A molecule as written in a script, before names are resolved.
#[derive(Clone, Debug, PartialEq)]
pub struct MoleculeTemplate(pub(crate) RawMol);

#[derive(Clone, Debug, PartialEq)]
pub enum Count {
    Lit(i64),
    Var(String, Pos),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Arg {
    Int(i64),
    Ident(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    Par(Vec<Term>),
    New(String, Box<Term>),
    Molecule {
        count: Count,
        molecule: MoleculeTemplate,
    },
    Call {
        name: String,
        args: Vec<Arg>,
        pos: Pos,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub name: String,
    pub params: Vec<String>,
    pub body: Term,
    pub pos: Pos,
}

/// One position of a duplex pattern; `None` is the wildcard `_`.
#[derive(Clone, Debug, PartialEq)]
pub enum SegmentPattern {
    T,
    X(Option<Name>),
    TX(Option<Name>),
    XT(Option<Name>),
    XY(Option<Name>, Option<Name>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum PlotSpec {
    /// A single species, written without wildcards.
    Exact(Molecule),
    /// Sum over every duplex matching the pattern.
    Sum(Vec<SegmentPattern>),
}

impl PlotSpec {
    /// True if `d` matches a sum pattern (always false for exact specs).
    pub fn matches_duplex(&self, d: &DoubleStrand) -> bool {
        let PlotSpec::Sum(pat) = self else {
            return false;
        };
        let ok = |p: &Option<Name>, x: &Domain| match (p, x) {
            (None, _) => true,
            (Some(n), Domain::Public(m)) => n == m,
            (Some(_), Domain::Private(_)) => false,
        };
        pat.len() == d.segments().len()
            && pat.iter().zip(d.segments()).all(|(p, s)| match (p, s) {
                (SegmentPattern::T, Segment::T) => true,
                (SegmentPattern::X(a), Segment::X(x))
                | (SegmentPattern::TX(a), Segment::TX(x))
                | (SegmentPattern::XT(a), Segment::XT(x)) => ok(a, x),
                (SegmentPattern::XY(a, b), Segment::XY(x, y)) => ok(a, x) && ok(b, y),
                _ => false,
            })
    }

    pub fn label(&self) -> String {
        match self {
            PlotSpec::Exact(m) => super::term::molecule_text(m, &[]),
            PlotSpec::Sum(pat) => {
                let n = |p: &Option<Name>| p.as_ref().map_or("_".to_string(), |n| n.to_string());
                let segs: Vec<String> = pat
                    .iter()
                    .map(|s| match s {
                        SegmentPattern::T => "t^".to_string(),
                        SegmentPattern::X(a) => format!("[{}]", n(a)),
                        SegmentPattern::TX(a) => format!("[t^ {}]", n(a)),
                        SegmentPattern::XT(a) => format!("[{} t^]", n(a)),
                        SegmentPattern::XY(a, b) => format!("[{} {}]", n(a), n(b)),
                    })
                    .collect();
                format!("sum({{{}}})", segs.join(":"))
            }
        }
    }
}

impl fmt::Display for PlotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScriptProgram {
    /// `directive sample END POINTS`
    pub sample: Option<(f64, usize)>,
    pub plots: Vec<PlotSpec>,
    /// `new t@BIND,UNBIND`
    pub toehold_rates: Option<(f64, f64)>,
    pub definitions: Vec<Definition>,
    /// Top-level parallel items.
    pub body: Vec<Term>,
}

impl ScriptProgram {
    pub fn definition(&self, name: &str) -> Option<&Definition> {
        self.definitions.iter().find(|d| d.name == name)
    }
}

struct ScriptParser {
    cur: Cursor,
}

fn number(cur: &mut Cursor, wanted: &str) -> Result<f64, ParseError> {
    match cur.peek() {
        Some(Tok::Float(x)) => {
            let x = *x;
            cur.next();
            Ok(x)
        }
        Some(Tok::Int(i)) => {
            let i = *i;
            cur.next();
            Ok(i as f64)
        }
        _ => Err(cur.unexpected(wanted)),
    }
}

fn pattern_name(r: &RawId) -> Result<Option<Name>, ParseError> {
    match &r.name {
        None => Ok(None),
        Some(s) => Name::new(s)
            .map(Some)
            .ok_or_else(|| ParseError::shape(r.pos, format!("`{s}` is not a long domain"))),
    }
}

impl ScriptParser {
    fn plot(&mut self) -> Result<PlotSpec, ParseError> {
        let pos = self.cur.pos();
        if self.cur.is_keyword("sum") {
            self.cur.next();
            self.cur.expect(Tok::LParen, "`(`")?;
            self.cur.expect(Tok::LBrace, "`{`")?;
            let raw = parse_molecule(&mut self.cur, true)?;
            self.cur.expect(Tok::RBrace, "`}`")?;
            self.cur.expect(Tok::RParen, "`)`")?;
            let RawMol::Duplex(segs) = raw else {
                return Err(ParseError::shape(pos, "sum patterns must be duplexes"));
            };
            let mut pat = Vec::with_capacity(segs.len());
            for s in &segs {
                pat.push(match s {
                    RawSeg::T => SegmentPattern::T,
                    RawSeg::X(a) => SegmentPattern::X(pattern_name(a)?),
                    RawSeg::TX(a) => SegmentPattern::TX(pattern_name(a)?),
                    RawSeg::XT(a) => SegmentPattern::XT(pattern_name(a)?),
                    RawSeg::XY(a, b) => SegmentPattern::XY(pattern_name(a)?, pattern_name(b)?),
                });
            }
            return Ok(PlotSpec::Sum(pat));
        }
        if !starts_molecule(self.cur.peek()) {
            return Err(self.cur.unexpected("a species or `sum(...)`"));
        }
        let raw = parse_molecule(&mut self.cur, true)?;
        if raw.has_wildcard() {
            return Err(ParseError::shape(
                pos,
                "wildcards are only allowed inside `sum(...)`",
            ));
        }
        let m =
            raw.resolve(|r| pattern_name(r).map(|n| Domain::Public(n.expect("no wildcard"))))?;
        Ok(PlotSpec::Exact(m))
    }

    fn directive(&mut self, prog: &mut ScriptProgram) -> Result<(), ParseError> {
        let (kind, pos) = self.cur.ident("a directive name")?;
        match kind.as_str() {
            "sample" => {
                let end = number(&mut self.cur, "an end time")?;
                let pts_pos = self.cur.pos();
                let points = match self.cur.next().map(|t| t.tok) {
                    Some(Tok::Int(n)) if n >= 0 => n as usize,
                    _ => return Err(ParseError::syntax(pts_pos, "expected a point count")),
                };
                prog.sample = Some((end, points));
            }
            "plot" => {
                prog.plots.push(self.plot()?);
                while self.cur.eat(&Tok::Semi) {
                    prog.plots.push(self.plot()?);
                }
            }
            _ => return Err(ParseError::UnknownDirective { pos, name: kind }),
        }
        Ok(())
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.cur.pos();
        match self.cur.peek().cloned() {
            Some(Tok::Ident(kw)) if kw == "new" => {
                self.cur.next();
                let (id, idpos) = self.cur.ident("a domain name after `new`")?;
                if id == TOEHOLD {
                    return Err(ParseError::shape(
                        idpos,
                        "the toehold cannot be made private",
                    ));
                }
                Ok(Term::New(id, Box::new(self.term()?)))
            }
            Some(Tok::LParen) => {
                self.cur.next();
                let mut items = vec![self.term()?];
                while self.cur.eat(&Tok::Bar) {
                    items.push(self.term()?);
                }
                self.cur.expect(Tok::RParen, "`)` or `|`")?;
                Ok(Term::Par(items))
            }
            Some(Tok::Int(n)) => {
                self.cur.next();
                self.cur.expect(Tok::Star, "`*`")?;
                let m = parse_molecule(&mut self.cur, false)?;
                Ok(Term::Molecule {
                    count: Count::Lit(n),
                    molecule: MoleculeTemplate(m),
                })
            }
            Some(Tok::Ident(id)) => match self.cur.peek_at(1) {
                Some(Tok::Star) => {
                    self.cur.next();
                    self.cur.next();
                    let m = parse_molecule(&mut self.cur, false)?;
                    Ok(Term::Molecule {
                        count: Count::Var(id, pos),
                        molecule: MoleculeTemplate(m),
                    })
                }
                Some(Tok::LParen) => {
                    self.cur.next();
                    self.cur.next();
                    let mut args = Vec::new();
                    loop {
                        match self.cur.next().map(|t| t.tok) {
                            Some(Tok::Int(n)) => args.push(Arg::Int(n)),
                            Some(Tok::Ident(s)) => args.push(Arg::Ident(s)),
                            _ => {
                                return Err(ParseError::syntax(
                                    pos,
                                    format!("malformed arguments in call to `{id}`"),
                                ))
                            }
                        }
                        if !self.cur.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.cur.expect(Tok::RParen, "`)` or `,`")?;
                    Ok(Term::Call {
                        name: id,
                        args,
                        pos,
                    })
                }
                _ => Err(self.cur.unexpected("a term")),
            },
            t if starts_molecule(t.as_ref()) => {
                let m = parse_molecule(&mut self.cur, false)?;
                Ok(Term::Molecule {
                    count: Count::Lit(1),
                    molecule: MoleculeTemplate(m),
                })
            }
            _ => Err(self.cur.unexpected("a term")),
        }
    }

    fn program(&mut self) -> Result<ScriptProgram, ParseError> {
        let mut prog = ScriptProgram {
            sample: None,
            plots: Vec::new(),
            toehold_rates: None,
            definitions: Vec::new(),
            body: Vec::new(),
        };
        loop {
            if self.cur.is_keyword("directive") {
                self.cur.next();
                self.directive(&mut prog)?;
            } else if self.cur.is_keyword("new") && self.cur.peek_at(2) == Some(&Tok::At) {
                self.cur.next();
                let (t, pos) = self.cur.ident("the toehold name")?;
                if t != TOEHOLD {
                    return Err(ParseError::shape(
                        pos,
                        format!("unknown toehold `{t}`; only `t` is supported"),
                    ));
                }
                self.cur.expect(Tok::At, "`@`")?;
                let bind = number(&mut self.cur, "a binding rate")?;
                self.cur.expect(Tok::Comma, "`,`")?;
                let unbind = number(&mut self.cur, "an unbinding rate")?;
                prog.toehold_rates = Some((bind, unbind));
            } else if self.cur.is_keyword("def") {
                self.cur.next();
                let (name, pos) = self.cur.ident("a definition name")?;
                if prog.definition(&name).is_some() {
                    return Err(ParseError::DuplicateDefinition { pos, name });
                }
                self.cur.expect(Tok::LParen, "`(`")?;
                let mut params = vec![self.cur.ident("a parameter name")?.0];
                while self.cur.eat(&Tok::Comma) {
                    params.push(self.cur.ident("a parameter name")?.0);
                }
                self.cur.expect(Tok::RParen, "`)` or `,`")?;
                self.cur.expect(Tok::Eq, "`=`")?;
                let body = self.term()?;
                prog.definitions.push(Definition {
                    name,
                    params,
                    body,
                    pos,
                });
            } else {
                break;
            }
        }
        if !self.cur.at_end() {
            prog.body = match self.term()? {
                Term::Par(items) => items,
                t => vec![t],
            };
        }
        if !self.cur.at_end() {
            return Err(self.cur.unexpected("end of script"));
        }
        Ok(prog)
    }
}

pub fn parse_dsd_script(text: &str) -> Result<ScriptProgram, ParseError> {
    ScriptParser {
        cur: Cursor::new(text)?,
    }
    .program()
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ElabError {
    #[error("{pos}: unbound identifier `{name}`")]
    UnboundIdentifier { name: String, pos: Pos },
    #[error("{pos}: negative count {value}")]
    NegativeCount { value: i64, pos: Pos },
    #[error("{pos}: unknown definition `{name}`")]
    UnknownDefinition { name: String, pos: Pos },
    #[error("{pos}: `{name}` expects {expected} arguments, found {found}")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
        pos: Pos,
    },
    #[error("{pos}: `{name}` is a count, not a domain")]
    ExpectedDomain { name: String, pos: Pos },
    #[error("{pos}: `{name}` is a domain, not a count")]
    ExpectedCount { name: String, pos: Pos },
    #[error("{pos}: definitions nest deeper than {limit} calls")]
    TooDeep { limit: usize, pos: Pos },
}

#[derive(Clone, Debug)]
enum Value {
    Count(i64),
    Domain(Domain),
    /// An identifier passed through unresolved; a public domain or an
    /// externally bound count depending on where it is used.
    Free(String),
}

/// Result of [`elaborate`].
#[derive(Clone, Debug)]
pub struct Elaborated {
    /// Canonical initial soup.
    pub soup: Soup,
    pub settings: SimSettings,
    pub plots: Vec<PlotSpec>,
}

const MAX_DEPTH: usize = 64;

struct Elaborator<'a> {
    prog: &'a ScriptProgram,
    bindings: &'a BTreeMap<String, i64>,
    soup: Soup,
}

type Env = Vec<(String, Value)>;

fn lookup<'e>(env: &'e Env, name: &str) -> Option<&'e Value> {
    env.iter().rev().find(|(n, _)| n == name).map(|(_, v)| v)
}

impl Elaborator<'_> {
    fn count(&self, c: &Count, env: &Env) -> Result<usize, ElabError> {
        let (value, pos) = match c {
            Count::Lit(n) => (*n, Pos::default()),
            Count::Var(name, pos) => {
                let free = |n: &str| {
                    self.bindings
                        .get(n)
                        .copied()
                        .ok_or_else(|| ElabError::UnboundIdentifier {
                            name: n.to_string(),
                            pos: *pos,
                        })
                };
                let v = match lookup(env, name) {
                    Some(Value::Count(n)) => *n,
                    Some(Value::Free(n)) => free(n)?,
                    Some(Value::Domain(_)) => {
                        return Err(ElabError::ExpectedCount {
                            name: name.clone(),
                            pos: *pos,
                        })
                    }
                    None => free(name)?,
                };
                (v, *pos)
            }
        };
        if value < 0 {
            return Err(ElabError::NegativeCount { value, pos });
        }
        Ok(value as usize)
    }

    fn domain(&self, r: &RawId, env: &Env) -> Result<Domain, ElabError> {
        let n = r.name.as_deref().expect("wildcards rejected outside plots");
        let public = |s: &str| {
            Name::new(s)
                .map(Domain::Public)
                .ok_or_else(|| ElabError::ExpectedDomain {
                    name: s.to_string(),
                    pos: r.pos,
                })
        };
        match lookup(env, n) {
            Some(Value::Domain(d)) => Ok(d.clone()),
            Some(Value::Free(s)) => public(s),
            Some(Value::Count(_)) => Err(ElabError::ExpectedDomain {
                name: n.to_string(),
                pos: r.pos,
            }),
            None => public(n),
        }
    }

    fn term(&mut self, t: &Term, env: &mut Env, depth: usize) -> Result<(), ElabError> {
        match t {
            Term::Par(items) => {
                for i in items {
                    self.term(i, env, depth)?;
                }
            }
            Term::New(name, body) => {
                let d = self.soup.fresh_private(name);
                env.push((name.clone(), Value::Domain(d)));
                let r = self.term(body, env, depth);
                env.pop();
                r?;
            }
            Term::Molecule { count, molecule } => {
                let n = self.count(count, env)?;
                let m = molecule.0.resolve(|r| self.domain(r, env))?;
                self.soup.add(m, n);
            }
            Term::Call { name, args, pos } => {
                let def =
                    self.prog
                        .definition(name)
                        .ok_or_else(|| ElabError::UnknownDefinition {
                            name: name.clone(),
                            pos: *pos,
                        })?;
                if def.params.len() != args.len() {
                    return Err(ElabError::Arity {
                        name: name.clone(),
                        expected: def.params.len(),
                        found: args.len(),
                        pos: *pos,
                    });
                }
                if depth >= MAX_DEPTH {
                    return Err(ElabError::TooDeep {
                        limit: MAX_DEPTH,
                        pos: *pos,
                    });
                }
                let mut inner: Env = def
                    .params
                    .iter()
                    .zip(args)
                    .map(|(p, a)| {
                        let v = match a {
                            Arg::Int(n) => Value::Count(*n),
                            Arg::Ident(s) => lookup(env, s)
                                .cloned()
                                .unwrap_or_else(|| Value::Free(s.clone())),
                        };
                        (p.clone(), v)
                    })
                    .collect();
                self.term(&def.body, &mut inner, depth + 1)?;
            }
        }
        Ok(())
    }
}

/// Expands definitions, binders and replication into an initial soup.
///
/// `bindings` supplies values for symbolic counts that are not parameters of
/// an enclosing definition; any other unresolved count is an error.
pub fn elaborate(
    p: &ScriptProgram,
    bindings: &BTreeMap<String, i64>,
) -> Result<Elaborated, ElabError> {
    let mut el = Elaborator {
        prog: p,
        bindings,
        soup: Soup::new(),
    };
    let mut env = Env::new();
    for t in &p.body {
        el.term(t, &mut env, 0)?;
    }
    let mut settings = SimSettings::default();
    if let Some((end, points)) = p.sample {
        settings.end_time = end;
        settings.points = points;
    }
    if let Some((bind, unbind)) = p.toehold_rates {
        settings.bind_rate = bind;
        settings.unbind_rate = unbind;
    }
    Ok(Elaborated {
        soup: canonicalize(&el.soup).into_soup(),
        settings,
        plots: p.plots.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_soup;
    use crate::terms::alg_equal;

    fn no_bindings() -> BTreeMap<String, i64> {
        BTreeMap::new()
    }

    const FORK: &str = "def F(N, x, y, z) = new a ( N* <t^ a> | N* <y t^> | N* <z t^> \
        | N* t^:[x t^]:[a t^]:[a] | N* [x]:[t^ z]:[t^ y]:[t^ a]:t^ )\n";

    #[test]
    fn single_molecule_body() {
        let p = parse_dsd_script("( 1 * <t^ x> )").unwrap();
        assert_eq!(p.body.len(), 1);
        let e = elaborate(&p, &no_bindings()).unwrap();
        assert_eq!(e.soup.total_count(), 1);
    }

    #[test]
    fn transducer_template() {
        let src = "def T(N,x,y) = new a (N* t^:[x t^]:[a t^]:[a] | N* <t^ a> | N* [x]:[t^ y]:[t^ a]:t^ | N* <y t^>)\n\
                   ( T(1, x, y) )";
        let p = parse_dsd_script(src).unwrap();
        let d = p.definition("T").unwrap();
        assert_eq!(d.params, vec!["N", "x", "y"]);
        let e = elaborate(&p, &no_bindings()).unwrap();
        let expected =
            parse_soup("new a (t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^>)")
                .unwrap();
        assert!(alg_equal(&e.soup, &expected));
    }

    #[test]
    fn sum_pattern_has_wildcards() {
        let p = parse_dsd_script("directive plot sum({[t^ _]:[_ t^]})\n( <t^ x> )").unwrap();
        assert_eq!(
            p.plots,
            vec![PlotSpec::Sum(vec![
                SegmentPattern::TX(None),
                SegmentPattern::XT(None)
            ])]
        );
        assert_eq!(p.plots[0].label(), "sum({[t^ _]:[_ t^]})");
    }

    #[test]
    fn wildcard_outside_sum_is_rejected() {
        assert!(parse_dsd_script("directive plot <t^ _>\n( <t^ x> )").is_err());
        assert!(parse_dsd_script("( <t^ _> )").is_err());
    }

    #[test]
    fn replication_shares_one_private_slot() {
        let p = parse_dsd_script(&format!("{FORK}( F(10, x, y, z) )")).unwrap();
        let e = elaborate(&p, &no_bindings()).unwrap();
        assert_eq!(e.soup.privates().len(), 1);
        assert_eq!(e.soup.molecules().len(), 5);
        assert!(e.soup.molecules().iter().all(|(_, c)| *c == 10));
        assert_eq!(e.soup.total_count(), 50);
    }

    #[test]
    fn separate_calls_get_separate_scopes() {
        let p = parse_dsd_script(&format!("{FORK}( F(1, x, y, z) | F(1, u, v, w) )")).unwrap();
        let e = elaborate(&p, &no_bindings()).unwrap();
        assert_eq!(e.soup.privates().len(), 2);
    }

    #[test]
    fn elaboration_errors() {
        let p = parse_dsd_script(&format!("{FORK}( F(-1, x, y, z) )")).unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::NegativeCount { .. })
        ));

        let p = parse_dsd_script(&format!("{FORK}( F(1, x, y) )")).unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::Arity { .. })
        ));

        let p = parse_dsd_script("( G(1) )").unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::UnknownDefinition { .. })
        ));

        let p = parse_dsd_script("( M * <t^ x> )").unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::UnboundIdentifier { .. })
        ));
        let bound = BTreeMap::from([("M".to_string(), 3)]);
        assert_eq!(elaborate(&p, &bound).unwrap().soup.total_count(), 3);

        let p = parse_dsd_script("def R(N) = R(N)\n( R(1) )").unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::TooDeep { .. })
        ));

        let p = parse_dsd_script(&format!("{FORK}( F(1, 2, y, z) )")).unwrap();
        assert!(matches!(
            elaborate(&p, &no_bindings()),
            Err(ElabError::ExpectedDomain { .. })
        ));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_dsd_script(&format!("{FORK}{FORK}( F(1, x, y, z) )")),
            Err(ParseError::DuplicateDefinition { .. })
        ));
        assert!(matches!(
            parse_dsd_script("directive duration 10\n( <t^ x> )"),
            Err(ParseError::UnknownDirective { .. })
        ));
        assert!(parse_dsd_script("new u@1.0,1.0 ( <t^ x> )").is_err());
        assert!(parse_dsd_script("( <t^ x> ) ( <t^ y> )").is_err());
    }

    #[test]
    fn settings_from_directives() {
        let p = parse_dsd_script("directive sample 50.0 11\nnew t@2.0,0.5\n( <t^ x> )").unwrap();
        let e = elaborate(&p, &no_bindings()).unwrap();
        assert_eq!(e.settings.end_time, 50.0);
        assert_eq!(e.settings.points, 11);
        assert_eq!(e.settings.bind_rate, 2.0);
        assert_eq!(e.settings.unbind_rate, 0.5);
    }
}
