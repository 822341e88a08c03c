use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde_json::{json, Value};

use super::{SimError, SimSettings};
use crate::rewrite::{rewrite_sites, RuleTag, SiteRewrite};
use crate::syntax::molecule_text;
use crate::terms::{Domain, DoubleStrand, Molecule, SingleStrand, Soup};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Species {
    Molecule(Molecule),
    /// Two-step cooperation intermediate: one of the two strands has bound
    /// the `t † xy † t` site at `offset`.
    Partial {
        duplex: DoubleStrand,
        offset: usize,
        bound: SingleStrand,
    },
    /// Top strand displaced into solution (`x` or `xy`). Inert; only
    /// present when displaced strands are tracked.
    Displaced(Vec<Domain>),
}

impl Species {
    pub fn label(&self) -> String {
        match self {
            Species::Molecule(m) => molecule_text(m, &[]),
            Species::Partial {
                duplex,
                offset,
                bound,
            } => format!(
                "{{{} @{} {}}}",
                molecule_text(&Molecule::Duplex(duplex.clone()), &[]),
                offset,
                molecule_text(&Molecule::Single(bound.clone()), &[])
            ),
            Species::Displaced(ds) => {
                let names: Vec<String> = ds.iter().map(molecule_domain).collect();
                format!("<{}>", names.join(" "))
            }
        }
    }

    pub fn is_single_strand(&self) -> bool {
        matches!(
            self,
            Species::Molecule(Molecule::Single(_)) | Species::Displaced(_)
        )
    }

    pub fn as_molecule(&self) -> Option<&Molecule> {
        match self {
            Species::Molecule(m) => Some(m),
            _ => None,
        }
    }

    /// Long domains on top strands, with multiplicity. Bottom strands never
    /// change, so these are the quantities the rules move around.
    pub fn top_domains(&self) -> Vec<&Domain> {
        match self {
            Species::Molecule(m) => m.domains(),
            Species::Partial { duplex, bound, .. } => {
                let mut v: Vec<&Domain> = duplex_domains(duplex);
                v.push(bound.domain());
                v
            }
            Species::Displaced(ds) => ds.iter().collect(),
        }
    }
}

fn duplex_domains(d: &DoubleStrand) -> Vec<&Domain> {
    d.segments()
        .iter()
        .flat_map(|s| {
            use crate::terms::Segment::*;
            match s {
                T => vec![],
                X(x) | TX(x) | XT(x) => vec![x],
                XY(x, y) => vec![x, y],
            }
        })
        .collect()
}

fn molecule_domain(d: &Domain) -> String {
    match d {
        Domain::Public(n) => n.to_string(),
        Domain::Private(i) => format!("#{i}"),
    }
}

impl fmt::Display for Species {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// A mass-action reaction; reactant and product lists repeat an index for
/// stoichiometry above one and are sorted.
#[derive(Clone, PartialEq, Debug)]
pub struct Reaction {
    pub reactants: Vec<usize>,
    pub products: Vec<usize>,
    pub rate: f64,
    pub rule: RuleTag,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrnOptions {
    /// Split cooperation into a reversible partial binding and a completion.
    pub two_step: bool,
    /// Emit `duplex → ∅` for unreactive duplexes.
    pub eager_waste: bool,
    /// Keep displaced top strands as inert species.
    pub track_displaced: bool,
    pub max_species: usize,
}

impl Default for CrnOptions {
    fn default() -> Self {
        CrnOptions {
            two_step: false,
            eager_waste: false,
            track_displaced: false,
            max_species: 100_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Crn {
    pub species: Vec<Species>,
    pub reactions: Vec<Reaction>,
    /// Initial molecule counts per species.
    pub initial: Vec<u64>,
    pub options: CrnOptions,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CrnCounts {
    pub single: usize,
    pub double: usize,
    pub reactions: usize,
    pub odes: usize,
}

/// Counts reported for the fork/join test circuit by the original DSD
/// compilation.
pub const REFERENCE_COUNTS: CrnCounts = CrnCounts {
    single: 54,
    double: 108,
    reactions: 172,
    odes: 162,
};

impl CrnCounts {
    /// Per-field agreement: single, double, reactions, odes.
    pub fn matches(&self, other: &CrnCounts) -> [bool; 4] {
        [
            self.single == other.single,
            self.double == other.double,
            self.reactions == other.reactions,
            self.odes == other.odes,
        ]
    }
}

impl Crn {
    pub fn index_of(&self, s: &Species) -> Option<usize> {
        self.species.iter().position(|x| x == s)
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.species.iter().position(|x| x.label() == label)
    }

    pub fn labels(&self) -> Vec<String> {
        self.species.iter().map(|s| s.label()).collect()
    }

    pub fn initial_concentrations(&self) -> Vec<f64> {
        self.initial.iter().map(|&c| c as f64).collect()
    }

    pub fn counts(&self) -> CrnCounts {
        let single = self.species.iter().filter(|s| s.is_single_strand()).count();
        CrnCounts {
            single,
            double: self.species.len() - single,
            reactions: self.reactions.len(),
            odes: self.species.len(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "species": self.labels(),
            "reactions": self.reactions.iter().map(|r| json!({
                "reactants": r.reactants,
                "products": r.products,
                "rate": r.rate,
                "rule": r.rule.as_str(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Top-strand occurrences of each public long domain in state `x`.
    pub fn domain_totals(&self, x: &[f64]) -> HashMap<String, f64> {
        let mut out = HashMap::new();
        for (s, v) in self.species.iter().zip(x) {
            for d in s.top_domains() {
                *out.entry(molecule_domain(d)).or_insert(0.0) += v;
            }
        }
        out
    }
}

struct Builder {
    species: Vec<Species>,
    index: HashMap<Species, usize>,
    reactions: Vec<Reaction>,
    seen: BTreeSet<(Vec<usize>, Vec<usize>, RuleTag, u64)>,
    max: usize,
}

impl Builder {
    fn intern(&mut self, s: Species) -> Result<usize, SimError> {
        if let Some(&i) = self.index.get(&s) {
            return Ok(i);
        }
        if self.species.len() >= self.max {
            return Err(SimError::SpeciesBudget(self.max));
        }
        self.index.insert(s.clone(), self.species.len());
        self.species.push(s);
        Ok(self.species.len() - 1)
    }

    fn lookup_single(&self, s: &SingleStrand) -> Option<usize> {
        self.index
            .get(&Species::Molecule(Molecule::Single(s.clone())))
            .copied()
    }

    fn add(
        &mut self,
        mut reactants: Vec<usize>,
        products: Vec<Species>,
        rate: f64,
        rule: RuleTag,
    ) -> Result<bool, SimError> {
        let mut p = Vec::with_capacity(products.len());
        for s in products {
            p.push(self.intern(s)?);
        }
        reactants.sort_unstable();
        p.sort_unstable();
        if self
            .seen
            .insert((reactants.clone(), p.clone(), rule, rate.to_bits()))
        {
            self.reactions.push(Reaction {
                reactants,
                products: p,
                rate,
                rule,
            });
            return Ok(true);
        }
        Ok(false)
    }
}

fn completion_products(d: &DoubleStrand, site: &SiteRewrite, opts: &CrnOptions) -> Vec<Species> {
    let mut out = vec![Species::Molecule(Molecule::Duplex(site.apply_to(d)))];
    out.extend(
        site.produced
            .iter()
            .map(|s| Species::Molecule(Molecule::Single(s.clone()))),
    );
    if opts.track_displaced && !site.displaced.is_empty() {
        out.push(Species::Displaced(site.displaced.clone()));
    }
    out
}

/// Closes the soup's molecules under the reduction rules.
///
/// All strand-driven reactions run at `bind_rate`; in two-step mode the
/// partial cooperation binding is undone at `unbind_rate`.
pub fn extract_crn(
    initial: &Soup,
    settings: &SimSettings,
    opts: &CrnOptions,
) -> Result<Crn, SimError> {
    settings.validate()?;
    let (bind, unbind) = (settings.bind_rate, settings.unbind_rate);
    let ms = initial.instantiate_privates().multiset();
    let mut b = Builder {
        species: Vec::new(),
        index: HashMap::new(),
        reactions: Vec::new(),
        seen: BTreeSet::new(),
        max: opts.max_species.max(1),
    };
    for m in ms.keys() {
        b.intern(Species::Molecule(m.clone()))?;
    }
    loop {
        let before = (b.species.len(), b.reactions.len());
        let mut i = 0;
        while i < b.species.len() {
            match b.species[i].clone() {
                Species::Molecule(Molecule::Duplex(d)) => {
                    let sites = rewrite_sites(&d);
                    if sites.is_empty() && opts.eager_waste {
                        b.add(vec![i], vec![], bind, RuleTag::Waste)?;
                    }
                    for site in sites {
                        let needed: Option<Vec<usize>> =
                            site.consumed.iter().map(|s| b.lookup_single(s)).collect();
                        if site.rule == RuleTag::Cooperation && opts.two_step {
                            for s in &site.consumed {
                                if let Some(k) = b.lookup_single(s) {
                                    let partial = Species::Partial {
                                        duplex: d.clone(),
                                        offset: site.offset,
                                        bound: s.clone(),
                                    };
                                    let p = b.intern(partial.clone())?;
                                    b.add(vec![i, k], vec![partial], bind, RuleTag::Cooperation)?;
                                    b.add(
                                        vec![p],
                                        vec![
                                            Species::Molecule(Molecule::Duplex(d.clone())),
                                            Species::Molecule(Molecule::Single(s.clone())),
                                        ],
                                        unbind,
                                        RuleTag::Cooperation,
                                    )?;
                                }
                            }
                            continue;
                        }
                        if let Some(mut r) = needed {
                            r.push(i);
                            let products = completion_products(&d, &site, opts);
                            b.add(r, products, bind, site.rule)?;
                        }
                    }
                }
                Species::Partial {
                    duplex,
                    offset,
                    bound,
                } => {
                    let site = rewrite_sites(&duplex)
                        .into_iter()
                        .find(|s| s.rule == RuleTag::Cooperation && s.offset == offset)
                        .expect("partials come from cooperation sites");
                    let other = site
                        .consumed
                        .iter()
                        .find(|s| **s != bound)
                        .expect("two distinct strands");
                    if let Some(k) = b.lookup_single(other) {
                        let products = completion_products(&duplex, &site, opts);
                        b.add(vec![i, k], products, bind, RuleTag::Cooperation)?;
                    }
                }
                _ => {}
            }
            i += 1;
        }
        if (b.species.len(), b.reactions.len()) == before {
            break;
        }
    }
    let initial = b
        .species
        .iter()
        .map(|s| match s {
            Species::Molecule(m) => ms.get(m).copied().unwrap_or(0) as u64,
            _ => 0,
        })
        .collect();
    Ok(Crn {
        species: b.species,
        reactions: b.reactions,
        initial,
        options: *opts,
    })
}

/// Species and reaction counts with trimolecular and two-step cooperation,
/// each paired with its mode name.
pub fn count_report(
    initial: &Soup,
    settings: &SimSettings,
    opts: &CrnOptions,
) -> Result<Vec<(&'static str, CrnCounts)>, SimError> {
    let mut out = Vec::new();
    for (name, two_step) in [("trimolecular", false), ("two-step", true)] {
        let crn = extract_crn(initial, settings, &CrnOptions { two_step, ..*opts })?;
        out.push((name, crn.counts()));
    }
    Ok(out)
}
