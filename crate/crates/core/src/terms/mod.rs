//! Domains, strands, duplexes and soups.
//!
//! The constructors only admit the two-domain shapes of the calculus: single
//! strands are either a signal `t.x` or a cosignal `x.t`, and a duplex is a
//! nicked sequence of the elements `t`, `x`, `tx`, `xt` and `xy`. There is a
//! single toehold, written `t`, which is never a long-domain name.
//!
//! Private (ν-bound) domains are kept in prenex form: a [`Soup`] owns an
//! ordered list of private slots and molecules refer to them by index.

mod canon;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

pub use canon::{alg_equal, canonicalize, CanonicalSoup};

/// The reserved toehold token.
pub const TOEHOLD: &str = "t";

/// Name of a long domain.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

impl Name {
    /// Creates a long-domain name. Returns `None` for an empty string or the
    /// reserved toehold token.
    pub fn new(s: &str) -> Option<Self> {
        if s.is_empty() || s == TOEHOLD {
            None
        } else {
            Some(Name(Arc::from(s)))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for tests and gate construction. Panics on the reserved token.
pub fn name(s: &str) -> Name {
    Name::new(s).unwrap_or_else(|| panic!("`{s}` is not a valid long-domain name"))
}

/// A long domain: either a public name or a reference into the owning
/// soup's private list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Domain {
    Public(Name),
    Private(u32),
}

impl Domain {
    pub fn public(s: &str) -> Self {
        Domain::Public(name(s))
    }
}

/// Two-domain single strand.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SingleStrand {
    /// `t.x`
    Signal(Domain),
    /// `x.t`
    Cosignal(Domain),
}

impl SingleStrand {
    pub fn domain(&self) -> &Domain {
        match self {
            SingleStrand::Signal(d) | SingleStrand::Cosignal(d) => d,
        }
    }
}

/// One element of a top-nicked duplex, delimited by nicks on either side.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Segment {
    /// Open bottom toehold.
    T,
    X(Domain),
    TX(Domain),
    XT(Domain),
    XY(Domain, Domain),
}

impl Segment {
    fn domains(&self) -> impl Iterator<Item = &Domain> {
        let (a, b) = match self {
            Segment::T => (None, None),
            Segment::X(x) | Segment::TX(x) | Segment::XT(x) => (Some(x), None),
            Segment::XY(x, y) => (Some(x), Some(y)),
        };
        a.into_iter().chain(b)
    }

    fn map_domains(&self, f: &mut impl FnMut(&Domain) -> Domain) -> Segment {
        match self {
            Segment::T => Segment::T,
            Segment::X(x) => Segment::X(f(x)),
            Segment::TX(x) => Segment::TX(f(x)),
            Segment::XT(x) => Segment::XT(f(x)),
            Segment::XY(x, y) => Segment::XY(f(x), f(y)),
        }
    }
}

/// Top-nicked double strand; consecutive segments are separated by a nick.
/// The empty sequence is `ø`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DoubleStrand(pub Vec<Segment>);

impl DoubleStrand {
    pub fn new(segments: Vec<Segment>) -> Self {
        DoubleStrand(segments)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Nick concatenation `self † other`.
    pub fn nick(mut self, other: DoubleStrand) -> DoubleStrand {
        self.0.extend(other.0);
        self
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Molecule {
    Single(SingleStrand),
    Duplex(DoubleStrand),
}

impl Molecule {
    pub fn signal(d: Domain) -> Self {
        Molecule::Single(SingleStrand::Signal(d))
    }

    pub fn cosignal(d: Domain) -> Self {
        Molecule::Single(SingleStrand::Cosignal(d))
    }

    pub fn duplex(segments: Vec<Segment>) -> Self {
        Molecule::Duplex(DoubleStrand(segments))
    }

    pub fn domains(&self) -> Vec<&Domain> {
        match self {
            Molecule::Single(s) => vec![s.domain()],
            Molecule::Duplex(d) => d.0.iter().flat_map(Segment::domains).collect(),
        }
    }

    pub fn map_domains(&self, mut f: impl FnMut(&Domain) -> Domain) -> Molecule {
        match self {
            Molecule::Single(SingleStrand::Signal(d)) => Molecule::signal(f(d)),
            Molecule::Single(SingleStrand::Cosignal(d)) => Molecule::cosignal(f(d)),
            Molecule::Duplex(ds) => Molecule::Duplex(DoubleStrand(
                ds.0.iter().map(|s| s.map_domains(&mut f)).collect(),
            )),
        }
    }

    pub fn as_duplex(&self) -> Option<&DoubleStrand> {
        match self {
            Molecule::Duplex(d) => Some(d),
            Molecule::Single(_) => None,
        }
    }

    pub fn as_single(&self) -> Option<&SingleStrand> {
        match self {
            Molecule::Single(s) => Some(s),
            Molecule::Duplex(_) => None,
        }
    }
}

/// A finite multiset of molecules under a prenex list of private domains.
///
/// Molecules are stored with multiplicities; a raw soup may hold repeated
/// entries or `ø` duplexes, both of which [`canonicalize`] folds away.
/// `privates[i]` is the display hint for `Domain::Private(i)`.
#[derive(Clone, Debug, Default)]
pub struct Soup {
    molecules: Vec<(Molecule, usize)>,
    privates: Vec<Name>,
}

impl Soup {
    pub fn new() -> Self {
        Soup::default()
    }

    /// Builds a soup from parts, checking that every private index is bound.
    pub fn from_parts(molecules: Vec<(Molecule, usize)>, privates: Vec<Name>) -> Option<Self> {
        let soup = Soup {
            molecules,
            privates,
        };
        soup.is_well_formed().then_some(soup)
    }

    pub fn molecules(&self) -> &[(Molecule, usize)] {
        &self.molecules
    }

    pub fn privates(&self) -> &[Name] {
        &self.privates
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.privates.len() as u32;
        self.molecules.iter().all(|(m, _)| {
            m.domains()
                .into_iter()
                .all(|d| !matches!(d, Domain::Private(i) if *i >= n))
        })
    }

    /// Adds `count` copies of a molecule.
    ///
    /// Panics if the molecule refers to a private slot this soup does not have.
    pub fn add(&mut self, molecule: Molecule, count: usize) -> &mut Self {
        let n = self.privates.len() as u32;
        assert!(
            molecule
                .domains()
                .into_iter()
                .all(|d| !matches!(d, Domain::Private(i) if *i >= n)),
            "molecule refers to an unbound private domain"
        );
        if count > 0 {
            self.molecules.push((molecule, count));
        }
        self
    }

    pub fn with(mut self, molecule: Molecule, count: usize) -> Self {
        self.add(molecule, count);
        self
    }

    /// Extends the ν-list with a slot that nothing uses yet.
    pub fn fresh_private(&mut self, hint: &str) -> Domain {
        let hint = Name::new(hint).unwrap_or_else(|| name("p"));
        self.privates.push(hint);
        Domain::Private(self.privates.len() as u32 - 1)
    }

    /// Parallel composition; the other soup's private slots are appended so
    /// the two scopes stay distinct.
    pub fn compose(mut self, other: &Soup) -> Soup {
        let shift = self.privates.len() as u32;
        self.privates.extend(other.privates.iter().cloned());
        for (m, c) in &other.molecules {
            let m = m.map_domains(|d| match d {
                Domain::Private(i) => Domain::Private(i + shift),
                d => d.clone(),
            });
            self.molecules.push((m, *c));
        }
        self
    }

    /// `n` copies of every molecule sharing the same private slots, i.e.
    /// `(νa)(U^n)` rather than `((νa)U)^n`.
    pub fn replicate(mut self, n: usize) -> Soup {
        for (_, c) in &mut self.molecules {
            *c *= n;
        }
        self.molecules.retain(|(_, c)| *c > 0);
        self
    }

    /// Total number of molecules counted with multiplicity.
    pub fn total_count(&self) -> usize {
        self.molecules.iter().map(|(_, c)| c).sum()
    }

    /// Multiplicity of a molecule (entries are summed, so raw soups work too).
    pub fn count_of(&self, molecule: &Molecule) -> usize {
        self.molecules
            .iter()
            .filter(|(m, _)| m == molecule)
            .map(|(_, c)| c)
            .sum()
    }

    /// The public long-domain names occurring in the soup.
    pub fn public_domains(&self) -> BTreeSet<Name> {
        self.molecules
            .iter()
            .flat_map(|(m, _)| m.domains())
            .filter_map(|d| match d {
                Domain::Public(n) => Some(n.clone()),
                Domain::Private(_) => None,
            })
            .collect()
    }

    /// `self{to/from}`: replaces free occurrences of `from` by `to`.
    ///
    /// Bound domains are index-based, so capture cannot happen; a private
    /// hint equal to `to` is still renamed so the printed form stays
    /// unambiguous.
    pub fn substitute(&self, from: &Name, to: &Name) -> Soup {
        let molecules = self
            .molecules
            .iter()
            .map(|(m, c)| {
                let m = m.map_domains(|d| match d {
                    Domain::Public(n) if n == from => Domain::Public(to.clone()),
                    d => d.clone(),
                });
                (m, *c)
            })
            .collect();
        let mut taken: BTreeSet<Name> = self.public_domains();
        taken.insert(from.clone());
        taken.insert(to.clone());
        let privates = self
            .privates
            .iter()
            .map(|h| {
                if h == to {
                    fresh_name(h.as_str(), &taken)
                } else {
                    h.clone()
                }
            })
            .collect();
        Soup {
            molecules,
            privates,
        }
    }

    /// Multiset view with repeated entries merged and `ø` removed.
    pub fn multiset(&self) -> BTreeMap<Molecule, usize> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.molecules {
            if matches!(m, Molecule::Duplex(d) if d.is_empty()) || *c == 0 {
                continue;
            }
            *out.entry(m.clone()).or_insert(0) += c;
        }
        out
    }

    /// Replaces every private slot with a public name unused anywhere in the
    /// soup. Distinct slots get distinct names.
    pub fn instantiate_privates(&self) -> Soup {
        let mut taken = self.public_domains();
        let mut fresh = Vec::with_capacity(self.privates.len());
        for h in &self.privates {
            let n = fresh_name(&format!("{h}_"), &taken);
            taken.insert(n.clone());
            fresh.push(n);
        }
        let molecules = self
            .molecules
            .iter()
            .map(|(m, c)| {
                let m = m.map_domains(|d| match d {
                    Domain::Private(i) => Domain::Public(fresh[*i as usize].clone()),
                    d => d.clone(),
                });
                (m, *c)
            })
            .collect();
        Soup {
            molecules,
            privates: Vec::new(),
        }
    }
}

/// A name derived from `base` that is not in `taken`.
pub(crate) fn fresh_name(base: &str, taken: &BTreeSet<Name>) -> Name {
    let base = base.trim_end_matches('_');
    let base = if base.is_empty() || base == TOEHOLD {
        "p"
    } else {
        base
    };
    if let Some(n) = Name::new(base) {
        if !taken.contains(&n) {
            return n;
        }
    }
    (1..)
        .map(|i| name(&format!("{base}_{i}")))
        .find(|n| !taken.contains(n))
        .expect("unbounded search")
}

/// `publicDomains` as a free function.
pub fn public_domains(u: &Soup) -> BTreeSet<Name> {
    u.public_domains()
}

/// `u{to/from}` as a free function.
pub fn substitute(u: &Soup, from: &Name, to: &Name) -> Soup {
    u.substitute(from, to)
}

/// Extends `u` with a fresh private slot and returns the domain naming it.
pub fn fresh_private(u: &Soup, hint: &str) -> (Soup, Domain) {
    let mut u = u.clone();
    let d = u.fresh_private(hint);
    (u, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Domain {
        Domain::public(s)
    }

    #[test]
    fn public_domains_of_basic_terms() {
        let s = Soup::new().with(Molecule::signal(p("x")), 1);
        assert_eq!(s.public_domains(), [name("x")].into());

        let d = Soup::new().with(Molecule::duplex(vec![Segment::XY(p("x"), p("y"))]), 1);
        assert_eq!(d.public_domains(), [name("x"), name("y")].into());

        let mut u = Soup::new();
        let a = u.fresh_private("a");
        u.add(Molecule::signal(a), 1)
            .add(Molecule::cosignal(p("y")), 1);
        assert_eq!(u.public_domains(), [name("y")].into());

        let t = Soup::new().with(Molecule::duplex(vec![Segment::T]), 1);
        assert!(t.public_domains().is_empty());
    }

    #[test]
    fn substitution_cases() {
        let s = Soup::new().with(Molecule::signal(p("x")), 1);
        let r = s.substitute(&name("x"), &name("y"));
        assert!(alg_equal(
            &r,
            &Soup::new().with(Molecule::signal(p("y")), 1)
        ));

        let z = Soup::new().with(Molecule::signal(p("z")), 1);
        assert!(alg_equal(&z.substitute(&name("x"), &name("y")), &z));

        // ((νy) ty){y/x} = (νz) tz: the bound y is untouched and renamed.
        let mut b = Soup::new();
        let y = b.fresh_private("y");
        b.add(Molecule::signal(y), 1);
        let r = b.substitute(&name("x"), &name("y"));
        assert!(r.public_domains().is_empty());
        assert_ne!(r.privates()[0], name("y"));
        assert!(alg_equal(&r, &b));
    }

    #[test]
    fn fresh_private_slots() {
        let (u, d) = fresh_private(&Soup::new(), "a");
        assert_eq!(d, Domain::Private(0));
        assert_eq!(u.privates().len(), 1);
        let (u, d2) = fresh_private(&u, "a");
        assert_eq!(d2, Domain::Private(1));
        assert_eq!(u.privates().len(), 2);
    }

    #[test]
    fn reserved_toehold_is_not_a_long_domain() {
        assert!(Name::new("t").is_none());
        assert!(Name::new("").is_none());
        assert!(Name::new("tx").is_some());
    }

    #[test]
    fn instantiate_picks_distinct_unused_names() {
        let mut u = Soup::new();
        let a = u.fresh_private("a");
        let a2 = u.fresh_private("a");
        u.add(Molecule::signal(a), 1)
            .add(Molecule::signal(a2), 1)
            .add(Molecule::signal(p("a")), 1);
        let v = u.instantiate_privates();
        assert!(v.privates().is_empty());
        assert_eq!(v.public_domains().len(), 3);
    }
}
