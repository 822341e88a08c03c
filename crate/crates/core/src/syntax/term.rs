use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::lexer::{lex, Pos, Tok, Token};
use super::{pictogram, ParseError, Style};
use crate::terms::{
    fresh_name, name, CanonicalSoup, Domain, DoubleStrand, Molecule, Name, Segment, SingleStrand,
    Soup, TOEHOLD,
};

pub(crate) struct Cursor {
    toks: Vec<Token>,
    i: usize,
    end: Pos,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self, ParseError> {
        let toks = lex(src)?;
        let end = match src.lines().count() {
            0 => Pos { line: 1, col: 1 },
            n => Pos {
                line: n,
                col: src.lines().last().map_or(0, |l| l.chars().count()) + 1,
            },
        };
        Ok(Cursor { toks, i: 0, end })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    pub fn peek_at(&self, n: usize) -> Option<&Tok> {
        self.toks.get(self.i + n).map(|t| &t.tok)
    }

    pub fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    pub fn at_end(&self) -> bool {
        self.i >= self.toks.len()
    }

    pub fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    pub fn unexpected(&self, wanted: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError::syntax(self.pos(), format!("expected {wanted}, found {t}")),
            None => {
                ParseError::syntax(self.pos(), format!("expected {wanted}, found end of input"))
            }
        }
    }

    pub fn expect(&mut self, tok: Tok, wanted: &str) -> Result<Pos, ParseError> {
        if self.peek() == Some(&tok) {
            let pos = self.pos();
            self.i += 1;
            Ok(pos)
        } else {
            Err(self.unexpected(wanted))
        }
    }

    pub fn ident(&mut self, wanted: &str) -> Result<(String, Pos), ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                let pos = self.pos();
                self.i += 1;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }
}

/// A long-domain occurrence before name resolution.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RawId {
    /// `None` for the wildcard `_`.
    pub name: Option<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum RawSeg {
    T,
    X(RawId),
    TX(RawId),
    XT(RawId),
    XY(RawId, RawId),
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum RawMol {
    Signal(RawId),
    Cosignal(RawId),
    Duplex(Vec<RawSeg>),
}

impl RawMol {
    pub fn has_wildcard(&self) -> bool {
        let wild = |r: &RawId| r.name.is_none();
        match self {
            RawMol::Signal(r) | RawMol::Cosignal(r) => wild(r),
            RawMol::Duplex(segs) => segs.iter().any(|s| match s {
                RawSeg::T => false,
                RawSeg::X(r) | RawSeg::TX(r) | RawSeg::XT(r) => wild(r),
                RawSeg::XY(a, b) => wild(a) || wild(b),
            }),
        }
    }

    /// Resolves every long-domain occurrence through `f`.
    pub fn resolve<E>(
        &self,
        mut f: impl FnMut(&RawId) -> Result<Domain, E>,
    ) -> Result<Molecule, E> {
        Ok(match self {
            RawMol::Signal(r) => Molecule::signal(f(r)?),
            RawMol::Cosignal(r) => Molecule::cosignal(f(r)?),
            RawMol::Duplex(segs) => {
                let mut out = Vec::with_capacity(segs.len());
                for s in segs {
                    out.push(match s {
                        RawSeg::T => Segment::T,
                        RawSeg::X(r) => Segment::X(f(r)?),
                        RawSeg::TX(r) => Segment::TX(f(r)?),
                        RawSeg::XT(r) => Segment::XT(f(r)?),
                        RawSeg::XY(a, b) => Segment::XY(f(a)?, f(b)?),
                    });
                }
                Molecule::duplex(out)
            }
        })
    }
}

pub(crate) fn starts_molecule(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Lt | Tok::LBrack | Tok::Toehold(_)))
}

#[derive(Clone, Copy, PartialEq)]
enum Elem {
    Toe,
    Long,
}

fn element(cur: &mut Cursor, allow_wild: bool) -> Result<(Elem, Option<RawId>), ParseError> {
    let pos = cur.pos();
    match cur.next().map(|t| t.tok) {
        Some(Tok::Toehold(t)) if t == TOEHOLD => Ok((Elem::Toe, None)),
        Some(Tok::Toehold(t)) => Err(ParseError::shape(
            pos,
            format!("unknown toehold `{t}^`; only `t^` is supported"),
        )),
        Some(Tok::Ident(s)) if s == TOEHOLD => Err(ParseError::shape(
            pos,
            "`t` is reserved for the toehold; write `t^`",
        )),
        Some(Tok::Ident(s)) => Ok((Elem::Long, Some(RawId { name: Some(s), pos }))),
        Some(Tok::Wildcard) if allow_wild => Ok((Elem::Long, Some(RawId { name: None, pos }))),
        Some(Tok::Wildcard) => Err(ParseError::shape(
            pos,
            "wildcard `_` is only allowed in plot patterns",
        )),
        _ => {
            cur.i -= 1;
            Err(cur.unexpected("a domain"))
        }
    }
}

pub(crate) fn parse_molecule(cur: &mut Cursor, allow_wild: bool) -> Result<RawMol, ParseError> {
    let start = cur.pos();
    if cur.eat(&Tok::Lt) {
        let mut elems = Vec::new();
        while cur.peek() != Some(&Tok::Gt) {
            if cur.at_end() {
                return Err(cur.unexpected("`>`"));
            }
            elems.push(element(cur, allow_wild)?);
        }
        cur.expect(Tok::Gt, "`>`")?;
        return match elems.as_slice() {
            [(Elem::Toe, _), (Elem::Long, Some(x))] => Ok(RawMol::Signal(x.clone())),
            [(Elem::Long, Some(x)), (Elem::Toe, _)] => Ok(RawMol::Cosignal(x.clone())),
            _ => Err(ParseError::shape(
                start,
                "single strands must be a signal `<t^ x>` or a cosignal `<x t^>`",
            )),
        };
    }

    let mut segs = Vec::new();
    loop {
        let pos = cur.pos();
        match cur.peek() {
            Some(Tok::Toehold(_)) => {
                element(cur, allow_wild)?;
                segs.push(RawSeg::T);
            }
            Some(Tok::LBrack) => {
                cur.next();
                let mut elems = Vec::new();
                while cur.peek() != Some(&Tok::RBrack) {
                    if cur.at_end() {
                        return Err(cur.unexpected("`]`"));
                    }
                    elems.push(element(cur, allow_wild)?);
                }
                cur.expect(Tok::RBrack, "`]`")?;
                let seg = match elems.as_slice() {
                    [(Elem::Toe, _)] => RawSeg::T,
                    [(Elem::Long, Some(x))] => RawSeg::X(x.clone()),
                    [(Elem::Toe, _), (Elem::Long, Some(x))] => RawSeg::TX(x.clone()),
                    [(Elem::Long, Some(x)), (Elem::Toe, _)] => RawSeg::XT(x.clone()),
                    [(Elem::Long, Some(x)), (Elem::Long, Some(y))] => {
                        RawSeg::XY(x.clone(), y.clone())
                    }
                    [] => return Err(ParseError::shape(pos, "empty segment `[]`")),
                    [(Elem::Toe, _), (Elem::Toe, _)] => {
                        return Err(ParseError::shape(
                            pos,
                            "consecutive toeholds in one segment",
                        ))
                    }
                    _ => {
                        return Err(ParseError::shape(
                            pos,
                            format!("a segment holds at most two domains, found {}", elems.len()),
                        ))
                    }
                };
                segs.push(seg);
            }
            _ => return Err(cur.unexpected("a molecule")),
        }
        if !cur.eat(&Tok::Colon) {
            break;
        }
    }
    Ok(RawMol::Duplex(segs))
}

struct TermParser {
    cur: Cursor,
    soup: Soup,
    scopes: Vec<(String, Domain)>,
}

impl TermParser {
    fn resolve(&self, r: &RawId) -> Result<Domain, ParseError> {
        let n = r
            .name
            .as_deref()
            .expect("wildcards rejected by the core grammar");
        if let Some((_, d)) = self.scopes.iter().rev().find(|(s, _)| s == n) {
            return Ok(d.clone());
        }
        Ok(Domain::Public(name(n)))
    }

    fn soup_items(&mut self) -> Result<(), ParseError> {
        self.item()?;
        while self.cur.eat(&Tok::Bar) {
            self.item()?;
        }
        Ok(())
    }

    fn molecule(&mut self, count: usize) -> Result<(), ParseError> {
        let raw = parse_molecule(&mut self.cur, false)?;
        let m = raw.resolve(|r| self.resolve(r))?;
        self.soup.add(m, count);
        Ok(())
    }

    fn item(&mut self) -> Result<(), ParseError> {
        let pos = self.cur.pos();
        match self.cur.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.cur.next();
                if n < 0 {
                    return Err(ParseError::syntax(
                        pos,
                        format!("negative multiplicity {n}"),
                    ));
                }
                self.cur.expect(Tok::Star, "`*`")?;
                self.molecule(n as usize)
            }
            Some(Tok::Ident(kw)) if kw == "new" => {
                self.cur.next();
                let (id, idpos) = self.cur.ident("a domain name after `new`")?;
                if id == TOEHOLD {
                    return Err(ParseError::shape(
                        idpos,
                        "the toehold cannot be made private",
                    ));
                }
                let d = self.soup.fresh_private(&id);
                self.scopes.push((id, d));
                let r = self.item();
                self.scopes.pop();
                r
            }
            Some(Tok::LParen) => {
                self.cur.next();
                if !self.cur.eat(&Tok::RParen) {
                    self.soup_items()?;
                    self.cur.expect(Tok::RParen, "`)` or `|`")?;
                }
                Ok(())
            }
            t if starts_molecule(t.as_ref()) => self.molecule(1),
            _ => Err(self.cur.unexpected("a molecule, `new` or `(`")),
        }
    }
}

/// Parses a soup in the core term format. Binders are hoisted to the top.
pub fn parse_soup(text: &str) -> Result<Soup, ParseError> {
    let mut p = TermParser {
        cur: Cursor::new(text)?,
        soup: Soup::new(),
        scopes: Vec::new(),
    };
    if p.cur.at_end() {
        return Ok(p.soup);
    }
    p.soup_items()?;
    if !p.cur.at_end() {
        return Err(p.cur.unexpected("`|` or end of input"));
    }
    Ok(p.soup)
}

/// Display names for private slots: the hints, made distinct from each
/// other, from public names and from the toehold.
pub(crate) fn display_names(u: &Soup) -> Vec<String> {
    let mut taken: BTreeSet<Name> = u.public_domains();
    let mut out = Vec::with_capacity(u.privates().len());
    for h in u.privates() {
        let n = fresh_name(h.as_str(), &taken);
        taken.insert(n.clone());
        out.push(n.to_string());
    }
    out
}

pub(crate) fn domain_text<'a>(d: &'a Domain, names: &'a [String]) -> &'a str {
    match d {
        Domain::Public(n) => n.as_str(),
        Domain::Private(i) => &names[*i as usize],
    }
}

pub(crate) fn segment_text(s: &Segment, names: &[String]) -> String {
    let n = |d| domain_text(d, names);
    match s {
        Segment::T => "t^".to_string(),
        Segment::X(x) => format!("[{}]", n(x)),
        Segment::TX(x) => format!("[t^ {}]", n(x)),
        Segment::XT(x) => format!("[{} t^]", n(x)),
        Segment::XY(x, y) => format!("[{} {}]", n(x), n(y)),
    }
}

pub(crate) fn duplex_text(d: &DoubleStrand, names: &[String]) -> String {
    d.segments()
        .iter()
        .map(|s| segment_text(s, names))
        .collect::<Vec<_>>()
        .join(":")
}

pub(crate) fn molecule_text(m: &Molecule, names: &[String]) -> String {
    match m {
        Molecule::Single(SingleStrand::Signal(x)) => format!("<t^ {}>", domain_text(x, names)),
        Molecule::Single(SingleStrand::Cosignal(x)) => format!("<{} t^>", domain_text(x, names)),
        Molecule::Duplex(d) if d.is_empty() => "()".to_string(),
        Molecule::Duplex(d) => duplex_text(d, names),
    }
}

/// Prints a soup as given (no canonicalization). The core style parses
/// back to an algebraically equal soup.
pub fn print_soup(u: &Soup, style: Style) -> String {
    if style == Style::Pictogram {
        return pictogram::render(u);
    }
    let names = display_names(u);
    let body: Vec<String> = u
        .molecules()
        .iter()
        .map(|(m, c)| {
            let t = molecule_text(m, &names);
            if *c == 1 {
                t
            } else {
                format!("{c} * {t}")
            }
        })
        .collect();
    let body = if body.is_empty() {
        "()".to_string()
    } else {
        body.join(" | ")
    };
    if names.is_empty() {
        return body;
    }
    let mut out = String::new();
    for n in &names {
        let _ = write!(out, "new {n} ");
    }
    if u.molecules().len() == 1 && u.molecules()[0].1 == 1 {
        out.push_str(&body);
    } else if body == "()" {
        out.push_str("()");
    } else {
        let _ = write!(out, "({body})");
    }
    out
}

impl std::fmt::Display for CanonicalSoup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&print_soup(self.as_soup(), Style::Core))
    }
}
