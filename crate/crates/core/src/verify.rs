//! State graphs and reachability.
//!
//! States are canonical soups, numbered in breadth-first discovery order.
//! Each layer's successors are computed in parallel and inserted
//! sequentially, so numbering does not depend on thread scheduling.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::rewrite::{apply_reaction, is_reactive, successors, ReactionInstance};
use crate::syntax::{display_names, molecule_text};
use crate::terms::{canonicalize, CanonicalSoup, Molecule, Soup};

pub const DEFAULT_MAX_STATES: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub instance: ReactionInstance,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct StateGraph {
    states: Vec<CanonicalSoup>,
    index: HashMap<CanonicalSoup, usize>,
    edges: Vec<Edge>,
    /// Outgoing edge indices per state.
    out: Vec<Vec<usize>>,
    /// The edge that first discovered each state.
    parent: Vec<Option<usize>>,
    complete: bool,
    elapsed: Duration,
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("state budget of {max_states} exceeded after {} states", partial.len())]
    BudgetExceeded {
        max_states: usize,
        partial: Box<StateGraph>,
    },
    #[error("the state graph is truncated; terminal states are unknown")]
    Truncated,
}

impl StateGraph {
    /// Breadth-first closure from `initial`, stopping once `max_states`
    /// states are known. Check [`StateGraph::is_complete`] afterwards.
    pub fn explore(initial: &Soup, max_states: usize) -> StateGraph {
        assert!(max_states >= 1, "max_states must be positive");
        let start = Instant::now();
        let init = canonicalize(initial);
        let mut g = StateGraph {
            states: vec![init.clone()],
            index: HashMap::from([(init, 0)]),
            edges: Vec::new(),
            out: vec![Vec::new()],
            parent: vec![None],
            complete: true,
            elapsed: Duration::ZERO,
        };
        let mut frontier = vec![0usize];
        'layers: while !frontier.is_empty() {
            let succ: Vec<_> = frontier
                .par_iter()
                .map(|&i| successors(&g.states[i]))
                .collect();
            let mut next = Vec::new();
            for (&from, list) in frontier.iter().zip(succ) {
                for s in list {
                    let to = match g.index.get(&s.state) {
                        Some(&to) => to,
                        None => {
                            if g.states.len() >= max_states {
                                g.complete = false;
                                break 'layers;
                            }
                            let to = g.states.len();
                            g.index.insert(s.state.clone(), to);
                            g.states.push(s.state);
                            g.out.push(Vec::new());
                            g.parent.push(Some(g.edges.len()));
                            next.push(to);
                            to
                        }
                    };
                    g.out[from].push(g.edges.len());
                    g.edges.push(Edge {
                        from,
                        to,
                        instance: s.instance,
                        multiplicity: s.multiplicity,
                    });
                }
            }
            frontier = next;
        }
        g.elapsed = start.elapsed();
        g
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn states(&self) -> &[CanonicalSoup] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &CanonicalSoup {
        &self.states[i]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn outgoing(&self, i: usize) -> impl Iterator<Item = &Edge> {
        self.out[i].iter().map(|&e| &self.edges[e])
    }

    pub fn index_of(&self, u: &CanonicalSoup) -> Option<usize> {
        self.index.get(u).copied()
    }

    pub fn elapsed(&self) -> Duration {
        self.elapsed
    }

    /// Shortest edge path from the initial state to `i`.
    pub fn path_to(&self, mut i: usize) -> Vec<&Edge> {
        let mut path = Vec::new();
        while let Some(e) = self.parent[i] {
            path.push(&self.edges[e]);
            i = self.edges[e].from;
        }
        path.reverse();
        path
    }

    /// States from which some state in `targets` is reachable.
    pub fn reverse_reachable(&self, targets: &[usize]) -> Vec<bool> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for e in &self.edges {
            rev[e.to].push(e.from);
        }
        let mut seen = vec![false; self.len()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &t in targets {
            if !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &rev[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// States reachable from `from`.
    pub fn forward_reachable(&self, from: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for e in self.outgoing(v) {
                if !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }

    pub fn is_terminal(&self, i: usize) -> bool {
        self.out[i].is_empty()
    }
}

pub fn build_state_graph(initial: &Soup, max_states: usize) -> Result<StateGraph, VerifyError> {
    let g = StateGraph::explore(initial, max_states);
    if g.is_complete() {
        Ok(g)
    } else {
        Err(VerifyError::BudgetExceeded {
            max_states,
            partial: Box::new(g),
        })
    }
}

pub fn terminal_states(g: &StateGraph) -> Result<Vec<usize>, VerifyError> {
    if !g.is_complete() {
        return Err(VerifyError::Truncated);
    }
    Ok((0..g.len()).filter(|&i| g.is_terminal(i)).collect())
}

/// Removes unreactive duplexes.
pub fn strip_waste(u: &CanonicalSoup) -> CanonicalSoup {
    let molecules = u
        .molecules()
        .iter()
        .filter(|(m, _)| !matches!(m, Molecule::Duplex(d) if !is_reactive(d)))
        .cloned()
        .collect();
    canonicalize(&Soup::from_parts(molecules, u.privates().to_vec()).expect("same slots"))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails,
    /// The state budget ran out before the question was settled.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub max_states: usize,
    /// Compare states with unreactive duplexes removed.
    pub strip_waste: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_states: DEFAULT_MAX_STATES,
            strip_waste: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyResult {
    pub verdict: Verdict,
    pub graph: StateGraph,
    /// States equal to the target.
    pub targets: Vec<usize>,
    /// For may-reachability: a shortest trace to the target.
    pub witness: Option<Vec<Edge>>,
    /// For will-reachability: a reachable state that cannot reach the
    /// target. Prefers a terminal one.
    pub counterexample: Option<usize>,
}

impl VerifyResult {
    pub fn counterexample_state(&self) -> Option<&CanonicalSoup> {
        self.counterexample.map(|i| self.graph.state(i))
    }
}

fn matching_states(g: &StateGraph, target: &Soup, strip: bool) -> Vec<usize> {
    let t = canonicalize(target);
    if strip {
        let t = strip_waste(&t);
        (0..g.len())
            .filter(|&i| strip_waste(g.state(i)) == t)
            .collect()
    } else {
        g.index_of(&t).into_iter().collect()
    }
}

/// `initial →* target`.
pub fn may_reach(initial: &Soup, target: &Soup, max_states: usize) -> VerifyResult {
    may_reach_with(
        initial,
        target,
        VerifyOptions {
            max_states,
            ..Default::default()
        },
    )
}

pub fn may_reach_with(initial: &Soup, target: &Soup, opts: VerifyOptions) -> VerifyResult {
    let graph = StateGraph::explore(initial, opts.max_states);
    let targets = matching_states(&graph, target, opts.strip_waste);
    // BFS order makes the lowest-numbered match a nearest one.
    let witness = targets
        .iter()
        .min()
        .map(|&t| graph.path_to(t).into_iter().cloned().collect());
    let verdict = match (&witness, graph.is_complete()) {
        (Some(_), _) => Verdict::Holds,
        (None, true) => Verdict::Fails,
        (None, false) => Verdict::Inconclusive,
    };
    VerifyResult {
        verdict,
        graph,
        targets,
        witness,
        counterexample: None,
    }
}

/// `initial →∀ target`: every reachable state can still reach the target.
pub fn will_reach(initial: &Soup, target: &Soup, max_states: usize) -> VerifyResult {
    will_reach_with(
        initial,
        target,
        VerifyOptions {
            max_states,
            ..Default::default()
        },
    )
}

pub fn will_reach_with(initial: &Soup, target: &Soup, opts: VerifyOptions) -> VerifyResult {
    let graph = StateGraph::explore(initial, opts.max_states);
    let targets = matching_states(&graph, target, opts.strip_waste);
    if !graph.is_complete() {
        return VerifyResult {
            verdict: Verdict::Inconclusive,
            graph,
            targets,
            witness: None,
            counterexample: None,
        };
    }
    let good = graph.reverse_reachable(&targets);
    let bad: Vec<usize> = (0..graph.len()).filter(|&i| !good[i]).collect();
    let counterexample = bad
        .iter()
        .copied()
        .find(|&i| graph.is_terminal(i))
        .or_else(|| bad.first().copied());
    VerifyResult {
        verdict: if counterexample.is_some() {
            Verdict::Fails
        } else {
            Verdict::Holds
        },
        graph,
        targets,
        witness: None,
        counterexample,
    }
}

/// Checks that every edge replays: applying its instance to the source
/// state yields the target state.
pub fn replays(g: &StateGraph, e: &Edge) -> bool {
    apply_reaction(g.state(e.from), &e.instance).is_ok_and(|v| &v == g.state(e.to))
}

/// One trace step in human-readable form: the rule, the strands it
/// consumes and the strands it releases.
pub fn describe_edge(g: &StateGraph, e: &Edge) -> String {
    let u = g.state(e.from).as_soup();
    let names = display_names(u);
    let list = |v: &[crate::terms::SingleStrand]| {
        if v.is_empty() {
            "nothing".to_string()
        } else {
            v.iter()
                .map(|s| molecule_text(&Molecule::Single(s.clone()), &names))
                .collect::<Vec<_>>()
                .join(" + ")
        }
    };
    let duplex = molecule_text(&u.molecules()[e.instance.duplex_index].0, &names);
    format!(
        "{} on {}: consumes {}, releases {}",
        e.instance.rule,
        duplex,
        list(&e.instance.consumed),
        list(&e.instance.produced)
    )
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering. Nodes are labelled with the core-format state text,
/// edges with rule tags; output is a function of the graph alone.
pub fn export_dot(g: &StateGraph) -> String {
    let mut out = String::from("digraph states {\n  node [shape=box];\n");
    for (i, s) in g.states().iter().enumerate() {
        let extra = if i == g.initial() { ", style=bold" } else { "" };
        let _ = writeln!(
            out,
            "  s{i} [label=\"{}\"{extra}];",
            dot_escape(&s.to_string())
        );
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{}\"];",
            e.from, e.to, e.instance.rule
        );
    }
    out.push_str("}\n");
    out
}

pub fn graph_json(g: &StateGraph) -> Value {
    json!({
        "states": g.states().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        "edges": g.edges().iter().map(|e| json!({
            "from": e.from,
            "to": e.to,
            "rule": e.instance.rule.as_str(),
            "mult": e.multiplicity,
        })).collect::<Vec<_>>(),
        "complete": g.is_complete(),
    })
}

pub fn result_json(r: &VerifyResult) -> Value {
    let mut v = graph_json(&r.graph);
    v["verdict"] = json!(r.verdict.as_str());
    v["witness"] = match &r.witness {
        Some(w) => json!(w
            .iter()
            .map(|e| json!({
                "from": e.from,
                "to": e.to,
                "rule": e.instance.rule.as_str(),
                "step": describe_edge(&r.graph, e),
            }))
            .collect::<Vec<_>>()),
        None => json!([]),
    };
    v["counterexample"] = match r.counterexample {
        Some(i) => json!({ "index": i, "state": r.graph.state(i).to_string() }),
        None => Value::Null,
    };
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::transducer;
    use crate::rewrite::RuleTag;
    use crate::syntax::parse_soup;
    use crate::terms::alg_equal;

    fn soup(s: &str) -> Soup {
        parse_soup(s).unwrap()
    }

    fn t_xy_x() -> Soup {
        transducer("x", "y", 1).unwrap().compose(&soup("<t^ x>"))
    }

    #[test]
    fn empty_soup_graph() {
        let g = build_state_graph(&Soup::new(), 10).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(terminal_states(&g).unwrap(), vec![0]);
        assert_eq!(export_dot(&g).matches("label=").count(), 1);
    }

    #[test]
    fn transducer_graph() {
        let g = build_state_graph(&t_xy_x(), 1000).unwrap();
        assert_eq!(g.len(), 15);
        let term = terminal_states(&g).unwrap();
        assert_eq!(term.len(), 1);
        assert!(alg_equal(g.state(term[0]).as_soup(), &soup("<t^ y>")));
        assert!(g.edges().iter().all(|e| replays(&g, e)));
        assert!(g.edges().iter().any(|e| e.instance.rule == RuleTag::Waste));
    }

    #[test]
    fn budget_is_reported() {
        match build_state_graph(&t_xy_x(), 5) {
            Err(VerifyError::BudgetExceeded { partial, .. }) => assert_eq!(partial.len(), 5),
            other => panic!("expected budget error, got {other:?}"),
        }
        let r = will_reach(&t_xy_x(), &soup("<t^ y>"), 5);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        let r = may_reach(&t_xy_x(), &soup("<t^ z>"), 5);
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(terminal_states(&r.graph).is_err());
    }

    #[test]
    fn may_and_will() {
        let r = may_reach(&t_xy_x(), &soup("<t^ y>"), 1000);
        assert_eq!(r.verdict, Verdict::Holds);
        let w = r.witness.unwrap();
        let last = w.last().unwrap().to;
        assert!(alg_equal(r.graph.state(last).as_soup(), &soup("<t^ y>")));
        assert_eq!(
            may_reach(&t_xy_x(), &soup("<t^ z>"), 1000).verdict,
            Verdict::Fails
        );
        assert_eq!(
            will_reach(&t_xy_x(), &soup("<t^ y>"), 1000).verdict,
            Verdict::Holds
        );
        let r = will_reach(&t_xy_x(), &soup("<t^ z>"), 1000);
        assert_eq!(r.verdict, Verdict::Fails);
        assert!(r.graph.is_terminal(r.counterexample.unwrap()));
    }

    #[test]
    fn strip_waste_matching() {
        let init = soup("<t^ x> | t^:[x] | [y t^]:[z t^]");
        let target = soup("<t^ x> | t^:[x]");
        let plain = may_reach(&init, &target, 100);
        assert!(!plain.targets.contains(&0));
        let opts = VerifyOptions {
            strip_waste: true,
            ..Default::default()
        };
        let stripped = may_reach_with(&init, &target, opts);
        assert!(stripped.targets.contains(&0));
        assert!(stripped.witness.unwrap().is_empty());
    }

    #[test]
    fn exports_are_deterministic() {
        let a = build_state_graph(&t_xy_x(), 1000).unwrap();
        let b = build_state_graph(&t_xy_x(), 1000).unwrap();
        assert_eq!(export_dot(&a), export_dot(&b));
        assert_eq!(graph_json(&a), graph_json(&b));
        let j = graph_json(&a);
        assert_eq!(j["states"].as_array().unwrap().len(), 15);
        assert_eq!(j["edges"][0]["rule"], "ExchangeFwd");
    }
}
