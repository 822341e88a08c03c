//! The `nick` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code and
//! captured output, so the binary is a thin wrapper and every subcommand can
//! be exercised in tests.
//!
//! Exit codes: 0 success or verdict holds, 1 verdict fails, 2 inconclusive
//! or state budget exceeded, 64 usage error, 65 malformed input, 70
//! simulation failure, 73 output file not writable.

use std::collections::BTreeMap;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::gates::{GateKind, GateSpec};
use crate::kinetics::{
    eval_plots, extract_crn, simulate_ode, simulate_ssa, Crn, CrnOptions, SimSettings, SimTrace,
    REFERENCE_COUNTS,
};
use crate::syntax::{elaborate, parse_dsd_script, parse_soup, print_soup, PlotSpec, Style};
use crate::terms::{canonicalize, Soup};
use crate::verify::{
    describe_edge, export_dot, graph_json, may_reach_with, result_json, terminal_states,
    will_reach_with, StateGraph, Verdict, VerifyOptions, DEFAULT_MAX_STATES,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_SOFTWARE: u8 = 70;
pub const EXIT_CANT_CREATE: u8 = 73;

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "nick",
    version,
    about = "Two-domain strand displacement: reduce, verify and simulate"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format; not every subcommand supports every format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the primary output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    /// Emit waste-removal reactions for unreactive duplexes.
    #[arg(long, global = true)]
    pub eager_waste: bool,
    /// Model cooperation as reversible partial binding plus completion.
    #[arg(long, global = true)]
    pub two_step: bool,
    /// State budget for graph exploration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: usize,
    /// Seed for stochastic simulation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the canonical form of a term, `.nick` file or `.dsd` script.
    Parse {
        input: String,
        /// Render as an ASCII pictogram instead of the core format.
        #[arg(long)]
        pictogram: bool,
    },
    /// Print a gate population.
    Gate {
        #[arg(value_enum)]
        kind: GateArg,
        /// Domains: inputs then outputs (transducer x y; fork x y z..;
        /// catalyst x y z; join x y [w] z).
        #[arg(required = true)]
        domains: Vec<String>,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Expand `steps` breadth-first layers and print the last frontier.
    Reduce {
        input: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Build the state graph and report its size and terminal states.
    States { input: String },
    /// Decide may- or will-reachability of a target.
    Verify {
        #[arg(value_enum)]
        mode: VerifyMode,
        #[arg(long)]
        init: String,
        #[arg(long)]
        target: String,
        /// Ignore unreactive duplexes when comparing with the target.
        #[arg(long)]
        strip_waste: bool,
    },
    /// Simulate a `.dsd` script or a soup and print the sampled trace.
    Simulate {
        #[arg(value_enum)]
        method: SimMethod,
        input: String,
        #[arg(long)]
        end: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
        /// SSA volume (propensities of order k are divided by volume^(k-1)).
        #[arg(long)]
        volume: Option<f64>,
        /// Bind a symbolic top-level count, e.g. `--bind N=10`.
        #[arg(long, value_parser = parse_binding)]
        bind: Vec<(String, i64)>,
    },
    /// Extract the reaction network and report its size.
    Crn {
        input: String,
        #[arg(long, value_parser = parse_binding)]
        bind: Vec<(String, i64)>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GateArg {
    Transducer,
    Fork,
    Catalyst,
    Join,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyMode {
    May,
    Will,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimMethod {
    Ode,
    Ssa,
}

fn parse_binding(s: &str) -> Result<(String, i64), String> {
    let (k, v) = s.split_once('=').ok_or("expected NAME=INT")?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| format!("`{v}` is not an integer"))?;
    Ok((k.trim().to_string(), v))
}

struct Failure {
    code: u8,
    msg: String,
}

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    Failure {
        code,
        msg: msg.into(),
    }
}

/// A loaded input: a plain soup, or an elaborated script with its settings
/// and plots.
struct Input {
    soup: Soup,
    script: Option<(SimSettings, Vec<PlotSpec>)>,
}

/// Reads `arg` as a file if one exists at that path, otherwise as inline
/// text. Scripts are recognized by the `.dsd` extension or a leading
/// `directive`/`def`.
fn load(arg: &str, bindings: &[(String, i64)]) -> Result<Input, Failure> {
    let path = Path::new(arg);
    let (text, is_file) = if path.is_file() {
        let t =
            std::fs::read_to_string(path).map_err(|e| fail(EXIT_DATA, format!("{arg}: {e}")))?;
        (t, true)
    } else {
        (arg.to_string(), false)
    };
    let first = text.split_whitespace().next().unwrap_or("");
    let script = (is_file && path.extension().is_some_and(|e| e == "dsd"))
        || matches!(first, "directive" | "def");
    let what = if is_file { arg } else { "input" };
    if script {
        let p = parse_dsd_script(&text).map_err(|e| fail(EXIT_DATA, format!("{what}:{e}")))?;
        let b: BTreeMap<String, i64> = bindings.iter().cloned().collect();
        let e = elaborate(&p, &b).map_err(|e| fail(EXIT_DATA, format!("{what}:{e}")))?;
        Ok(Input {
            soup: e.soup,
            script: Some((e.settings, e.plots)),
        })
    } else {
        let soup = parse_soup(&text).map_err(|e| fail(EXIT_DATA, format!("{what}:{e}")))?;
        Ok(Input { soup, script: None })
    }
}

fn check_format(f: Format, allowed: &[Format], cmd: &str) -> Result<(), Failure> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        Err(fail(
            EXIT_USAGE,
            format!("`{cmd}` does not support --format {f:?}").to_lowercase(),
        ))
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

struct Done {
    code: u8,
    data: String,
    notes: String,
}

fn ok(data: String) -> Done {
    Done {
        code: EXIT_OK,
        data,
        notes: String::new(),
    }
}

fn graph_text(g: &StateGraph) -> String {
    let mut out = String::new();
    match terminal_states(g) {
        Ok(t) => {
            out.push_str(&format!("{} states, {} terminal\n", g.len(), t.len()));
            for i in t {
                out.push_str(&format!("terminal {i}: {}\n", g.state(i)));
            }
        }
        Err(_) => out.push_str(&format!(
            "{} states (budget exceeded, graph truncated)\n",
            g.len()
        )),
    }
    out
}

fn cmd_parse(c: &Common, input: &str, pictogram: bool) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json], "parse")?;
    let u = canonicalize(&load(input, &[])?.soup);
    let style = if pictogram {
        Style::Pictogram
    } else {
        Style::Core
    };
    let text = print_soup(u.as_soup(), style);
    Ok(ok(match f {
        Format::Json => pretty(&json!({ "canonical": text })),
        _ => text + "\n",
    }))
}

fn cmd_gate(c: &Common, kind: GateArg, domains: &[String], n: usize) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json], "gate")?;
    let d: Vec<&str> = domains.iter().map(|s| s.as_str()).collect();
    let (kind, split) = match kind {
        GateArg::Transducer => (GateKind::Transducer, 1),
        GateArg::Fork => (GateKind::Fork, 1),
        GateArg::Catalyst => (GateKind::Catalyst, 2),
        GateArg::Join => (GateKind::Join, d.len().saturating_sub(1)),
    };
    if d.len() <= split {
        return Err(fail(EXIT_USAGE, "not enough domains for this gate"));
    }
    let (ins, outs): (&[&str], Vec<&str>) = if kind == GateKind::Catalyst {
        // `catalyst x y z` means inputs x, y and outputs y, z.
        if d.len() != 3 {
            return Err(fail(
                EXIT_USAGE,
                "a catalyst takes exactly three domains: x y z",
            ));
        }
        (&d[..2], vec![d[1], d[2]])
    } else {
        (&d[..split], d[split..].to_vec())
    };
    let u = GateSpec::new(kind, ins, &outs, n)
        .build()
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let text = print_soup(canonicalize(&u).as_soup(), Style::Core);
    Ok(ok(match f {
        Format::Json => pretty(&json!({ "gate": text })),
        _ => text + "\n",
    }))
}

fn cmd_reduce(c: &Common, input: &str, steps: usize) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json], "reduce")?;
    let u = load(input, &[])?.soup;
    let mut frontier = vec![canonicalize(&u)];
    let mut seen: std::collections::HashSet<_> = frontier.iter().cloned().collect();
    for _ in 0..steps {
        let mut next = Vec::new();
        for s in &frontier {
            for succ in crate::rewrite::successors(s) {
                if seen.insert(succ.state.clone()) {
                    if seen.len() > c.max_states {
                        return Ok(Done {
                            code: EXIT_INCONCLUSIVE,
                            data: String::new(),
                            notes: format!("state budget of {} exceeded\n", c.max_states),
                        });
                    }
                    next.push(succ.state);
                }
            }
        }
        frontier = next;
    }
    let texts: Vec<String> = frontier.iter().map(|s| s.to_string()).collect();
    Ok(ok(match f {
        Format::Json => pretty(&json!({ "steps": steps, "frontier": texts })),
        _ => texts.iter().map(|t| format!("{t}\n")).collect(),
    }))
}

fn cmd_states(c: &Common, input: &str) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json, Format::Dot], "states")?;
    let u = load(input, &[])?.soup;
    let g = StateGraph::explore(&u, c.max_states);
    let code = if g.is_complete() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    let summary = graph_text(&g);
    let (data, notes) = match f {
        Format::Dot => (export_dot(&g), summary),
        Format::Json => {
            let mut v = graph_json(&g);
            v["terminals"] = json!(terminal_states(&g).ok());
            (pretty(&v), String::new())
        }
        _ => (summary, String::new()),
    };
    Ok(Done { code, data, notes })
}

fn cmd_verify(
    c: &Common,
    mode: VerifyMode,
    init: &str,
    target: &str,
    strip: bool,
) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json, Format::Dot], "verify")?;
    let u = load(init, &[])?.soup;
    let t = load(target, &[])?.soup;
    let opts = VerifyOptions {
        max_states: c.max_states,
        strip_waste: strip,
    };
    let r = match mode {
        VerifyMode::May => may_reach_with(&u, &t, opts),
        VerifyMode::Will => will_reach_with(&u, &t, opts),
    };
    let code = match r.verdict {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails => EXIT_FAILS,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    };
    let mut text = format!(
        "{}-reach {}: {}",
        if mode == VerifyMode::May {
            "may"
        } else {
            "will"
        },
        r.verdict.as_str(),
        graph_text(&r.graph)
    );
    if let Some(w) = &r.witness {
        text.push_str(&format!("witness ({} steps):\n", w.len()));
        for (k, e) in w.iter().enumerate() {
            text.push_str(&format!("  {}. {}\n", k + 1, describe_edge(&r.graph, e)));
        }
    }
    if let Some(i) = r.counterexample {
        text.push_str(&format!(
            "counterexample {i}: {}\n  the target is unreachable from this state\n",
            r.graph.state(i)
        ));
    }
    Ok(match f {
        Format::Json => Done {
            code,
            data: pretty(&result_json(&r)),
            notes: String::new(),
        },
        Format::Dot => Done {
            code,
            data: export_dot(&r.graph),
            notes: text,
        },
        _ => Done {
            code,
            data: text,
            notes: String::new(),
        },
    })
}

fn crn_options(c: &Common, track_displaced: bool) -> CrnOptions {
    CrnOptions {
        two_step: c.two_step,
        eager_waste: c.eager_waste,
        track_displaced,
        ..CrnOptions::default()
    }
}

fn sim_failure(e: crate::kinetics::SimError) -> Failure {
    use crate::kinetics::SimError::*;
    match e {
        InvalidSettings(_) => fail(EXIT_USAGE, e.to_string()),
        _ => fail(EXIT_SOFTWARE, e.to_string()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    c: &Common,
    method: SimMethod,
    input: &str,
    end: Option<f64>,
    points: Option<usize>,
    volume: Option<f64>,
    bind: &[(String, i64)],
) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Csv);
    check_format(f, &[Format::Csv, Format::Json], "simulate")?;
    let inp = load(input, bind)?;
    let (mut settings, plots) = inp.script.unwrap_or_default();
    if let Some(e) = end {
        settings.end_time = e;
    }
    if let Some(p) = points {
        settings.points = p;
    }
    if let Some(v) = volume {
        settings.volume = v;
    }
    settings.seed = c.seed;
    settings.validate().map_err(sim_failure)?;
    let crn = extract_crn(&inp.soup, &settings, &crn_options(c, false)).map_err(sim_failure)?;
    let trace = match method {
        SimMethod::Ode => simulate_ode(&crn, &crn.initial_concentrations(), &settings),
        SimMethod::Ssa => simulate_ssa(&crn, &crn.initial, &settings),
    }
    .map_err(sim_failure)?;
    let (trace, warnings) = if plots.is_empty() {
        (trace, Vec::new())
    } else {
        eval_plots(&trace, &crn, &plots)
    };
    let notes: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    let data = match f {
        Format::Json => pretty(&trace_json(&trace)),
        _ => trace.to_csv(),
    };
    Ok(Done {
        code: EXIT_OK,
        data,
        notes,
    })
}

fn trace_json(t: &SimTrace) -> serde_json::Value {
    json!({ "times": t.times, "labels": t.labels, "values": t.values })
}

fn counts_json(crn: &Crn) -> serde_json::Value {
    let c = crn.counts();
    let m = c.matches(&REFERENCE_COUNTS);
    json!({
        "single": c.single, "double": c.double, "reactions": c.reactions, "odes": c.odes,
        "matches_reference": { "single": m[0], "double": m[1], "reactions": m[2], "odes": m[3] },
    })
}

fn cmd_crn(c: &Common, input: &str, bind: &[(String, i64)]) -> Result<Done, Failure> {
    let f = c.format.unwrap_or(Format::Text);
    check_format(f, &[Format::Text, Format::Json], "crn")?;
    let inp = load(input, bind)?;
    let settings = inp.script.map(|s| s.0).unwrap_or_default();
    let crn = extract_crn(&inp.soup, &settings, &crn_options(c, false)).map_err(sim_failure)?;
    // Displaced strands are counted as species for the comparison, as the
    // reference compilation materializes them.
    let mut modes = Vec::new();
    for (name, two_step) in [("trimolecular", false), ("two-step", true)] {
        let opts = CrnOptions {
            two_step,
            ..crn_options(c, true)
        };
        let m = extract_crn(&inp.soup, &settings, &opts).map_err(sim_failure)?;
        modes.push((name, m));
    }
    let r = REFERENCE_COUNTS;
    let data = match f {
        Format::Json => {
            let mut v = crn.to_json();
            v["counts"] = counts_json(&crn);
            v["reference"] = json!({ "single": r.single, "double": r.double, "reactions": r.reactions, "odes": r.odes });
            v["report"] = json!(modes
                .iter()
                .map(|(name, m)| {
                    let mut j = counts_json(m);
                    j["mode"] = json!(name);
                    j
                })
                .collect::<Vec<_>>());
            pretty(&v)
        }
        _ => {
            let mut out = String::new();
            for (i, s) in crn.species.iter().enumerate() {
                out.push_str(&format!("s{i} = {s}\n"));
            }
            for rx in &crn.reactions {
                let side = |v: &[usize]| {
                    if v.is_empty() {
                        "0".to_string()
                    } else {
                        v.iter()
                            .map(|i| format!("s{i}"))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    }
                };
                out.push_str(&format!(
                    "{} -> {} @ {} ({})\n",
                    side(&rx.reactants),
                    side(&rx.products),
                    rx.rate,
                    rx.rule
                ));
            }
            let c0 = crn.counts();
            out.push_str(&format!(
                "{} species ({} single, {} double), {} reactions\n",
                c0.odes, c0.single, c0.double, c0.reactions
            ));
            out.push_str(&format!(
                "reference: {} single, {} double, {} reactions, {} odes\n",
                r.single, r.double, r.reactions, r.odes
            ));
            for (name, m) in &modes {
                let k = m.counts();
                let flag = |b: bool| if b { "match" } else { "mismatch" };
                let mm = k.matches(&r);
                out.push_str(&format!(
                    "{name} (displaced strands counted): {} single [{}], {} double [{}], {} reactions [{}], {} odes [{}]\n",
                    k.single,
                    flag(mm[0]),
                    k.double,
                    flag(mm[1]),
                    k.reactions,
                    flag(mm[2]),
                    k.odes,
                    flag(mm[3])
                ));
            }
            out
        }
    };
    Ok(ok(data))
}

/// Runs the command line given the full argument vector (program name
/// first).
pub fn run<S: AsRef<str>>(args: &[S]) -> Output {
    let args: Vec<&str> = args.iter().map(|s| s.as_ref()).collect();
    let cfg = match CliConfig::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Output {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let c = &cfg.common;
    let result = match &cfg.command {
        Command::Parse { input, pictogram } => cmd_parse(c, input, *pictogram),
        Command::Gate { kind, domains, n } => cmd_gate(c, *kind, domains, *n),
        Command::Reduce { input, steps } => cmd_reduce(c, input, *steps),
        Command::States { input } => cmd_states(c, input),
        Command::Verify {
            mode,
            init,
            target,
            strip_waste,
        } => cmd_verify(c, *mode, init, target, *strip_waste),
        Command::Simulate {
            method,
            input,
            end,
            points,
            volume,
            bind,
        } => cmd_simulate(c, *method, input, *end, *points, *volume, bind),
        Command::Crn { input, bind } => cmd_crn(c, input, bind),
    };
    match result {
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: format!("nick: {}\n", f.msg),
        },
        Ok(done) => match &c.out {
            Some(path) => match std::fs::write(path, &done.data) {
                Ok(()) => Output {
                    code: done.code,
                    stdout: done.notes,
                    stderr: String::new(),
                },
                Err(e) => Output {
                    code: EXIT_CANT_CREATE,
                    stdout: String::new(),
                    stderr: format!("nick: {path}: {e}\n"),
                },
            },
            None => Output {
                code: done.code,
                stdout: done.data,
                stderr: done.notes,
            },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nick(args: &[&str]) -> Output {
        let mut v = vec!["nick"];
        v.extend_from_slice(args);
        run(&v)
    }

    #[test]
    fn parse_echoes_canonical_form() {
        let o = nick(&["parse", "<t^ x> | <t^ x>"]);
        assert_eq!(o.code, 0);
        assert_eq!(o.stdout, "2 * <t^ x>\n");
        let o = nick(&["parse", "<t^ x"]);
        assert_eq!(o.code, EXIT_DATA);
        assert!(o.stderr.contains("1:"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(nick(&[]).code, EXIT_USAGE);
        assert_eq!(nick(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(
            nick(&["verify", "maybe", "--init", "<t^ x>", "--target", "<t^ x>"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            nick(&["parse", "<t^ x>", "--format", "csv"]).code,
            EXIT_USAGE
        );
        assert_eq!(nick(&["gate", "fork", "x", "y"]).code, EXIT_USAGE);
        assert_eq!(nick(&["--help"]).code, 0);
    }

    #[test]
    fn gate_prints_parseable_core_text() {
        let o = nick(&["gate", "transducer", "x", "y", "--n", "3"]);
        assert_eq!(o.code, 0);
        let u = parse_soup(&o.stdout).unwrap();
        assert_eq!(u.total_count(), 12);
        let o = nick(&["gate", "join", "w", "x", "y", "z"]);
        assert_eq!(o.code, 0);
        assert_eq!(parse_soup(&o.stdout).unwrap().privates().len(), 3);
        let o = nick(&["gate", "catalyst", "x", "y", "z", "--format", "json"]);
        assert!(serde_json::from_str::<serde_json::Value>(&o.stdout).is_ok());
    }

    #[test]
    fn verify_exit_codes() {
        let t = "new a (t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^> | <t^ x>)";
        let o = nick(&["verify", "will", "--init", t, "--target", "<t^ y>"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("15 states, 1 terminal"));
        let o = nick(&["verify", "may", "--init", t, "--target", "<t^ z>"]);
        assert_eq!(o.code, 1);
        let o = nick(&[
            "verify",
            "will",
            "--init",
            t,
            "--target",
            "<t^ y>",
            "--max-states",
            "3",
        ]);
        assert_eq!(o.code, 2);
        let o = nick(&[
            "verify", "may", "--init", t, "--target", "<t^ y>", "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["verdict"], "holds");
        assert!(!v["witness"].as_array().unwrap().is_empty());
    }

    #[test]
    fn states_formats() {
        let t = "<t^ x> | t^:[x]";
        let o = nick(&["states", t]);
        assert_eq!(o.stdout.lines().next(), Some("3 states, 1 terminal"));
        let o = nick(&["states", t, "--format", "dot"]);
        assert!(o.stdout.starts_with("digraph"));
        assert!(o.stdout.contains("LeftCoverage"));
        let o = nick(&["states", t, "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["states"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn reduce_layers() {
        let o = nick(&["reduce", "<t^ x> | t^:[x]", "--steps", "1"]);
        assert_eq!(o.stdout, "[t^ x]\n");
        let o = nick(&["reduce", "<t^ x> | t^:[x]", "--steps", "2"]);
        assert_eq!(o.stdout, "()\n");
    }

    #[test]
    fn simulate_soup_and_crn() {
        let o = nick(&[
            "simulate",
            "ode",
            "<t^ x> | t^:[x]",
            "--end",
            "1",
            "--points",
            "3",
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let lines: Vec<&str> = o.stdout.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], "time,<t^ x>,t^:[x],[t^ x]");
        let last: Vec<f64> = lines[3].split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(last[0], 1.0);
        assert!(last[1..].iter().all(|v| (v - 0.5).abs() < 1e-6), "{}", lines[3]);
        let o = nick(&[
            "simulate",
            "ssa",
            "<t^ x> | t^:[x]",
            "--end",
            "100",
            "--points",
            "2",
            "--seed",
            "3",
        ]);
        assert_eq!(o.stdout.lines().nth(2), Some("100,0,0,1"));
        let o = nick(&["simulate", "ode", "<t^ x>", "--points", "1"]);
        assert_eq!(o.code, EXIT_USAGE);
        let o = nick(&["crn", "<t^ x> | t^:[x]", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["species"].as_array().unwrap().len(), 3);
        assert_eq!(v["reactions"][0]["rule"], "LeftCoverage");
    }

    #[test]
    fn out_flag_writes_file() {
        let dir = std::env::temp_dir().join(format!("nick-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("g.dot");
        let p = path.to_str().unwrap();
        let o = nick(&["states", "<t^ x> | t^:[x]", "--format", "dot", "--out", p]);
        assert_eq!(o.code, 0);
        assert!(std::fs::read_to_string(&path)
            .unwrap()
            .starts_with("digraph"));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
