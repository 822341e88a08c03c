//! Canonical forms modulo algebraic equality.
//!
//! Multiset laws and the `ø` identities are handled by merging and sorting.
//! The remaining freedom is the naming of private domains, which is fixed by
//! colour refinement over the occurrence pattern of each private name,
//! followed by individualization of symmetric cells. Among all labellings
//! reachable that way the lexicographically least sorted molecule list is
//! chosen; transpositions that are automorphisms of the soup are pruned.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::hash::{Hash, Hasher};

use super::{Domain, Molecule, Name, Soup};

/// A soup in canonical form: `ø` duplexes dropped, molecules merged and
/// sorted, private slots minimal and numbered canonically.
///
/// Equality and hashing ignore the private-slot display hints, so two
/// canonical soups compare equal exactly when the originals are
/// algebraically equal.
#[derive(Clone, Debug)]
pub struct CanonicalSoup(Soup);

impl CanonicalSoup {
    pub fn molecules(&self) -> &[(Molecule, usize)] {
        self.0.molecules()
    }

    pub fn privates(&self) -> &[Name] {
        self.0.privates()
    }

    pub fn as_soup(&self) -> &Soup {
        &self.0
    }

    pub fn into_soup(self) -> Soup {
        self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.molecules().is_empty()
    }

    /// Multiplicity of a molecule, 0 if absent.
    pub fn count_of(&self, m: &Molecule) -> usize {
        self.molecules()
            .binary_search_by(|(x, _)| x.cmp(m))
            .map(|i| self.molecules()[i].1)
            .unwrap_or(0)
    }

    fn key(&self) -> (&[(Molecule, usize)], usize) {
        (self.0.molecules(), self.0.privates().len())
    }
}

impl PartialEq for CanonicalSoup {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for CanonicalSoup {}

impl Hash for CanonicalSoup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

impl PartialOrd for CanonicalSoup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalSoup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl From<CanonicalSoup> for Soup {
    fn from(c: CanonicalSoup) -> Soup {
        c.0
    }
}

/// True iff the two soups are algebraically equal.
pub fn alg_equal(u1: &Soup, u2: &Soup) -> bool {
    canonicalize(u1) == canonicalize(u2)
}

type Form = Vec<(Molecule, usize)>;

pub fn canonicalize(u: &Soup) -> CanonicalSoup {
    let merged = u.multiset();

    let used: BTreeSet<u32> = merged
        .keys()
        .flat_map(|m| m.domains())
        .filter_map(|d| match d {
            Domain::Private(i) => Some(*i),
            Domain::Public(_) => None,
        })
        .collect();
    let old: Vec<u32> = used.into_iter().collect();
    if old.is_empty() {
        let molecules = merged.into_iter().collect();
        return CanonicalSoup(Soup::from_parts(molecules, Vec::new()).expect("no privates"));
    }

    // Compact the used slots to 0..n.
    let local: BTreeMap<u32, u32> = old
        .iter()
        .enumerate()
        .map(|(k, &o)| (o, k as u32))
        .collect();
    let mols: Form = merged
        .iter()
        .map(|(m, c)| (relabel(m, |i| local[&i]), *c))
        .collect();
    let n = old.len();

    let mut search = Search {
        mols: &mols,
        best: None,
    };
    search.run(vec![0; n]);
    let (form, labels) = search.best.expect("at least one leaf");

    let mut privates = vec![None; n];
    for (k, &slot) in labels.iter().enumerate() {
        privates[slot as usize] = Some(u.privates()[old[k] as usize].clone());
    }
    let privates = privates
        .into_iter()
        .map(|h| h.expect("bijection"))
        .collect();
    CanonicalSoup(Soup::from_parts(form, privates).expect("labels cover every slot"))
}

fn relabel(m: &Molecule, f: impl Fn(u32) -> u32) -> Molecule {
    m.map_domains(|d| match d {
        Domain::Private(i) => Domain::Private(f(*i)),
        d => d.clone(),
    })
}

fn sorted_form(mols: &Form, labels: &[u32]) -> Form {
    let mut out: Form = mols
        .iter()
        .map(|(m, c)| (relabel(m, |i| labels[i as usize]), *c))
        .collect();
    out.sort();
    out
}

struct Search<'a> {
    mols: &'a Form,
    best: Option<(Form, Vec<u32>)>,
}

impl Search<'_> {
    fn run(&mut self, colors: Vec<u32>) {
        let colors = refine(self.mols, colors);
        let n = colors.len();
        let cells = distinct(&colors);
        if cells == n {
            let form = sorted_form(self.mols, &colors);
            if self.best.as_ref().is_none_or(|(b, _)| form < *b) {
                self.best = Some((form, colors));
            }
            return;
        }

        // First non-singleton cell by colour.
        let mut size = BTreeMap::<u32, usize>::new();
        for &c in &colors {
            *size.entry(c).or_default() += 1;
        }
        let target = *size.iter().find(|(_, &s)| s > 1).expect("non-discrete").0;
        let cell: Vec<usize> = (0..n).filter(|&p| colors[p] == target).collect();

        let mut explored: Vec<usize> = Vec::new();
        for &p in &cell {
            if explored
                .iter()
                .any(|&q| is_transposition_automorphism(self.mols, q, p))
            {
                continue;
            }
            explored.push(p);
            let next = colors
                .iter()
                .enumerate()
                .map(|(q, &c)| 2 * c + u32::from(c == target && q != p))
                .collect();
            self.run(next);
        }
    }
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

/// Colour refinement: a private's new colour is the rank of its old colour
/// together with the multiset of molecules it occurs in, where itself is
/// marked and the other privates are replaced by their colours.
fn refine(mols: &Form, mut colors: Vec<u32>) -> Vec<u32> {
    let n = colors.len();
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, (m, _)) in mols.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for d in m.domains() {
            if let Domain::Private(i) = d {
                if seen.insert(*i) {
                    occurs[*i as usize].push(j);
                }
            }
        }
    }
    loop {
        let before = distinct(&colors);
        let keys: Vec<(u32, Form)> = (0..n)
            .map(|p| {
                let mut sig: Form = occurs[p]
                    .iter()
                    .map(|&j| {
                        let (m, c) = &mols[j];
                        let masked = relabel(m, |q| {
                            if q as usize == p {
                                0
                            } else {
                                colors[q as usize] + 1
                            }
                        });
                        (masked, *c)
                    })
                    .collect();
                sig.sort();
                (colors[p], sig)
            })
            .collect();
        let ranks: BTreeMap<&(u32, Form), u32> = keys
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(r, k)| (k, r as u32))
            .collect();
        colors = keys.iter().map(|k| ranks[k]).collect();
        if distinct(&colors) == before {
            return colors;
        }
    }
}

fn is_transposition_automorphism(mols: &Form, a: usize, b: usize) -> bool {
    let (a, b) = (a as u32, b as u32);
    let mut swapped: Form = mols
        .iter()
        .map(|(m, c)| {
            let m = relabel(m, |i| {
                if i == a {
                    b
                } else if i == b {
                    a
                } else {
                    i
                }
            });
            (m, *c)
        })
        .collect();
    swapped.sort();
    let mut orig = mols.clone();
    orig.sort();
    swapped == orig
}
