#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use nick::kinetics::SimSettings;
use nick::syntax::{elaborate, parse_dsd_script, parse_soup, Elaborated, PlotSpec};
use nick::terms::{Domain, Molecule, Segment, SingleStrand, Soup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn soup(s: &str) -> Soup {
    parse_soup(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn circuit_text() -> String {
    std::fs::read_to_string(data_path("fork_join.dsd")).unwrap()
}

pub fn circuit() -> Elaborated {
    let p = parse_dsd_script(&circuit_text()).unwrap();
    elaborate(&p, &BTreeMap::new()).unwrap()
}

pub fn circuit_parts() -> (Soup, SimSettings, Vec<PlotSpec>) {
    let e = circuit();
    (e.soup, e.settings, e.plots)
}

/// A domain slot: public names by index into `PUBLIC`, private slots by
/// index into the soup's ν-list.
#[derive(Clone, Debug)]
pub enum Slot {
    Public(usize),
    Private(usize),
}

pub const PUBLIC: [&str; 3] = ["x", "y", "z"];

#[derive(Clone, Debug)]
pub enum Shape {
    Signal(Slot),
    Cosignal(Slot),
    Duplex(Vec<(u8, Slot, Slot)>),
}

/// Generator description of a soup: private slot count and molecules with
/// counts. Kept separate from `Soup` so shrinking works on plain data.
#[derive(Clone, Debug)]
pub struct SoupPlan {
    pub privates: usize,
    pub molecules: Vec<(Shape, usize)>,
}

fn slot(privates: usize) -> BoxedStrategy<Slot> {
    if privates == 0 {
        (0..PUBLIC.len()).prop_map(Slot::Public).boxed()
    } else {
        prop_oneof![
            (0..PUBLIC.len()).prop_map(Slot::Public),
            (0..privates).prop_map(Slot::Private)
        ]
        .boxed()
    }
}

fn shape(privates: usize) -> BoxedStrategy<Shape> {
    let seg = (0u8..5, slot(privates), slot(privates));
    prop_oneof![
        slot(privates).prop_map(Shape::Signal),
        slot(privates).prop_map(Shape::Cosignal),
        prop::collection::vec(seg, 1..5).prop_map(Shape::Duplex),
    ]
    .boxed()
}

pub fn soup_plan() -> impl Strategy<Value = SoupPlan> {
    (0usize..4).prop_flat_map(|privates| {
        prop::collection::vec((shape(privates), 1usize..4), 0..7)
            .prop_map(move |molecules| SoupPlan { privates, molecules })
    })
}

fn domain(s: &Slot, slots: &[Domain]) -> Domain {
    match s {
        Slot::Public(i) => Domain::public(PUBLIC[*i]),
        Slot::Private(i) => slots[*i].clone(),
    }
}

pub fn build(plan: &SoupPlan) -> Soup {
    let mut u = Soup::new();
    let hints = ["a", "b", "x"];
    let slots: Vec<Domain> = (0..plan.privates).map(|i| u.fresh_private(hints[i % 3])).collect();
    for (shape, count) in &plan.molecules {
        let m = match shape {
            Shape::Signal(s) => Molecule::signal(domain(s, &slots)),
            Shape::Cosignal(s) => Molecule::cosignal(domain(s, &slots)),
            Shape::Duplex(segs) => Molecule::duplex(
                segs.iter()
                    .map(|(k, a, b)| match k {
                        0 => Segment::T,
                        1 => Segment::X(domain(a, &slots)),
                        2 => Segment::TX(domain(a, &slots)),
                        3 => Segment::XT(domain(a, &slots)),
                        _ => Segment::XY(domain(a, &slots), domain(b, &slots)),
                    })
                    .collect(),
            ),
        };
        u.add(m, *count);
    }
    u
}

/// The same soup with molecules reordered, entries split, and ν slots
/// permuted, all driven by `seed`.
pub fn scramble(u: &Soup, seed: u64) -> Soup {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = u.privates().len();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    let mut privates = u.privates().to_vec();
    for (i, &p) in perm.iter().enumerate() {
        privates[p as usize] = u.privates()[i].clone();
    }
    let mut molecules = Vec::new();
    for (m, c) in u.molecules() {
        let m = m.map_domains(|d| match d {
            Domain::Private(i) => Domain::Private(perm[*i as usize]),
            d => d.clone(),
        });
        // Split multiplicities into single entries half of the time.
        if rng.gen_bool(0.5) {
            for _ in 0..*c {
                molecules.push((m.clone(), 1));
            }
        } else {
            molecules.push((m, *c));
        }
    }
    molecules.shuffle(&mut rng);
    Soup::from_parts(molecules, privates).expect("permutation keeps slots bound")
}

pub fn all_strands(domains: &[&str]) -> Vec<SingleStrand> {
    domains
        .iter()
        .flat_map(|d| [SingleStrand::Signal(Domain::public(d)), SingleStrand::Cosignal(Domain::public(d))])
        .collect()
}
