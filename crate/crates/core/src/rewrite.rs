//! The reduction relation.
//!
//! Rules operate on a window of consecutive duplex segments:
//!
//! | rule           | window            | consumes     | becomes          | releases |
//! |----------------|-------------------|--------------|------------------|----------|
//! | exchange (fwd) | `t † xt`          | `tx`         | `tx † t`         | `xt`     |
//! | exchange (rev) | `tx † t`          | `xt`         | `t † xt`         | `tx`     |
//! | left coverage  | `t † x`           | `tx`         | `tx`             |          |
//! | right coverage | `x † t`           | `xt`         | `xt`             |          |
//! | cooperation    | `t † xy † t`      | `tx`, `yt`   | `tx † yt`        |          |
//! | waste          | unreactive duplex |              | `ø`              |          |
//!
//! Displaced single-stranded waste (`x`, `xy`) is never materialized.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::terms::{
    canonicalize, CanonicalSoup, Domain, DoubleStrand, Molecule, Segment, SingleStrand, Soup,
};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum RuleTag {
    ExchangeFwd,
    ExchangeRev,
    LeftCoverage,
    RightCoverage,
    Cooperation,
    Waste,
}

impl RuleTag {
    pub const ALL: [RuleTag; 6] = [
        RuleTag::ExchangeFwd,
        RuleTag::ExchangeRev,
        RuleTag::LeftCoverage,
        RuleTag::RightCoverage,
        RuleTag::Cooperation,
        RuleTag::Waste,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleTag::ExchangeFwd => "ExchangeFwd",
            RuleTag::ExchangeRev => "ExchangeRev",
            RuleTag::LeftCoverage => "LeftCoverage",
            RuleTag::RightCoverage => "RightCoverage",
            RuleTag::Cooperation => "Cooperation",
            RuleTag::Waste => "Waste",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One applicable rewrite of a canonical soup.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ReactionInstance {
    pub rule: RuleTag,
    /// Index of the target duplex in the canonical molecule list.
    pub duplex_index: usize,
    /// Leftmost segment of the matched window (0 for waste).
    pub seg_offset: usize,
    pub consumed: Vec<SingleStrand>,
    pub produced: Vec<SingleStrand>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("reaction {rule} at molecule {index}, offset {offset} does not apply to this soup")]
    Inapplicable {
        rule: RuleTag,
        index: usize,
        offset: usize,
    },
}

/// Local rewrite of a segment window, independent of any soup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SiteRewrite {
    pub rule: RuleTag,
    pub offset: usize,
    /// Number of segments replaced.
    pub width: usize,
    pub replacement: Vec<Segment>,
    pub consumed: Vec<SingleStrand>,
    pub produced: Vec<SingleStrand>,
    /// Long domains of the single strands displaced into implicit waste.
    pub displaced: Vec<Domain>,
}

impl SiteRewrite {
    /// The duplex after applying this rewrite.
    pub fn apply_to(&self, d: &DoubleStrand) -> DoubleStrand {
        let segs = d.segments();
        let mut out = Vec::with_capacity(segs.len());
        out.extend_from_slice(&segs[..self.offset]);
        out.extend(self.replacement.iter().cloned());
        out.extend_from_slice(&segs[self.offset + self.width..]);
        DoubleStrand::new(out)
    }
}

/// Every strand-driven rewrite site of a duplex, regardless of which strands
/// are available. Ordered by offset, then by rule.
pub fn rewrite_sites(d: &DoubleStrand) -> Vec<SiteRewrite> {
    use Segment::*;
    use SingleStrand::{Cosignal, Signal};
    let s = d.segments();
    let mut out = Vec::new();
    for i in 0..s.len() {
        let next = s.get(i + 1);
        match (&s[i], next) {
            (T, Some(XT(x))) => out.push(SiteRewrite {
                rule: RuleTag::ExchangeFwd,
                offset: i,
                width: 2,
                replacement: vec![TX(x.clone()), T],
                consumed: vec![Signal(x.clone())],
                produced: vec![Cosignal(x.clone())],
                displaced: vec![],
            }),
            (TX(x), Some(T)) => out.push(SiteRewrite {
                rule: RuleTag::ExchangeRev,
                offset: i,
                width: 2,
                replacement: vec![T, XT(x.clone())],
                consumed: vec![Cosignal(x.clone())],
                produced: vec![Signal(x.clone())],
                displaced: vec![],
            }),
            (T, Some(X(x))) => out.push(SiteRewrite {
                rule: RuleTag::LeftCoverage,
                offset: i,
                width: 2,
                replacement: vec![TX(x.clone())],
                consumed: vec![Signal(x.clone())],
                produced: vec![],
                displaced: vec![x.clone()],
            }),
            _ => {}
        }
        if let (X(x), Some(T)) = (&s[i], next) {
            out.push(SiteRewrite {
                rule: RuleTag::RightCoverage,
                offset: i,
                width: 2,
                replacement: vec![XT(x.clone())],
                consumed: vec![Cosignal(x.clone())],
                produced: vec![],
                displaced: vec![x.clone()],
            });
        }
        if let (T, Some(XY(x, y)), Some(T)) = (&s[i], next, s.get(i + 2)) {
            out.push(SiteRewrite {
                rule: RuleTag::Cooperation,
                offset: i,
                width: 3,
                replacement: vec![TX(x.clone()), XT(y.clone())],
                consumed: vec![Signal(x.clone()), Cosignal(y.clone())],
                produced: vec![],
                displaced: vec![x.clone(), y.clone()],
            });
        }
    }
    out
}

/// A duplex is reactive iff it contains one of the windows
/// `t†xt`, `tx†t`, `t†x`, `x†t` or `t†xy†t`.
pub fn is_reactive(d: &DoubleStrand) -> bool {
    !rewrite_sites(d).is_empty()
}

/// All rule instances applicable to `u`, in molecule order, then offset,
/// then rule.
pub fn applicable_reactions(u: &CanonicalSoup) -> Vec<ReactionInstance> {
    let mols = u.molecules();
    let available = |s: &[SingleStrand]| -> bool {
        // Consumed strands in one instance are always distinct species.
        s.iter()
            .all(|x| u.count_of(&Molecule::Single(x.clone())) > 0)
    };
    let mut out = Vec::new();
    for (index, (m, _)) in mols.iter().enumerate() {
        let Some(d) = m.as_duplex() else { continue };
        let sites = rewrite_sites(d);
        if sites.is_empty() {
            out.push(ReactionInstance {
                rule: RuleTag::Waste,
                duplex_index: index,
                seg_offset: 0,
                consumed: vec![],
                produced: vec![],
            });
            continue;
        }
        for site in sites {
            if available(&site.consumed) {
                out.push(ReactionInstance {
                    rule: site.rule,
                    duplex_index: index,
                    seg_offset: site.offset,
                    consumed: site.consumed,
                    produced: site.produced,
                });
            }
        }
    }
    out
}

fn find_site(d: &DoubleStrand, r: &ReactionInstance) -> Option<SiteRewrite> {
    rewrite_sites(d)
        .into_iter()
        .find(|s| s.rule == r.rule && s.offset == r.seg_offset)
}

/// Applies one instance and canonicalizes the result.
pub fn apply_reaction(
    u: &CanonicalSoup,
    r: &ReactionInstance,
) -> Result<CanonicalSoup, RewriteError> {
    let err = || RewriteError::Inapplicable {
        rule: r.rule,
        index: r.duplex_index,
        offset: r.seg_offset,
    };
    let (m, _) = u.molecules().get(r.duplex_index).ok_or_else(err)?;
    let d = m.as_duplex().ok_or_else(err)?;

    let mut counts: HashMap<Molecule, isize> = u
        .molecules()
        .iter()
        .map(|(m, c)| (m.clone(), *c as isize))
        .collect();
    *counts.get_mut(m).expect("present") -= 1;

    if r.rule == RuleTag::Waste {
        if is_reactive(d) {
            return Err(err());
        }
    } else {
        let site = find_site(d, r).ok_or_else(err)?;
        if site.consumed != r.consumed || site.produced != r.produced {
            return Err(err());
        }
        *counts
            .entry(Molecule::Duplex(site.apply_to(d)))
            .or_insert(0) += 1;
        for s in &site.consumed {
            let c = counts.entry(Molecule::Single(s.clone())).or_insert(0);
            *c -= 1;
            if *c < 0 {
                return Err(err());
            }
        }
        for s in &site.produced {
            *counts.entry(Molecule::Single(s.clone())).or_insert(0) += 1;
        }
    }

    let molecules = counts
        .into_iter()
        .filter(|(_, c)| *c > 0)
        .map(|(m, c)| (m, c as usize))
        .collect();
    let next = Soup::from_parts(molecules, u.privates().to_vec()).expect("private slots unchanged");
    Ok(canonicalize(&next))
}

/// Number of distinct molecule-level choices realizing an instance.
pub fn instance_multiplicity(u: &CanonicalSoup, r: &ReactionInstance) -> usize {
    let duplex = u.molecules()[r.duplex_index].1;
    r.consumed
        .iter()
        .map(|s| u.count_of(&Molecule::Single(s.clone())))
        .product::<usize>()
        * duplex
}

/// A distinct successor with one representative instance and the summed
/// multiplicity of every instance that leads to it.
#[derive(Clone, Debug)]
pub struct Successor {
    pub instance: ReactionInstance,
    pub state: CanonicalSoup,
    pub multiplicity: usize,
}

/// One-step successors up to algebraic equality, in instance order.
pub fn successors(u: &CanonicalSoup) -> Vec<Successor> {
    let mut out: Vec<Successor> = Vec::new();
    let mut index: HashMap<CanonicalSoup, usize> = HashMap::new();
    for r in applicable_reactions(u) {
        let v = apply_reaction(u, &r).expect("enumerated instances apply");
        let mult = instance_multiplicity(u, &r);
        match index.get(&v) {
            Some(&i) => out[i].multiplicity += mult,
            None => {
                index.insert(v.clone(), out.len());
                out.push(Successor {
                    instance: r,
                    state: v,
                    multiplicity: mult,
                });
            }
        }
    }
    out
}
