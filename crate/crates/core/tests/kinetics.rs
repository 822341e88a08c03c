mod common;

use common::*;
use nick::gates::fork;
use nick::kinetics::{eval_plots, extract_crn, simulate_ode, simulate_ssa, CrnOptions, SimSettings};
use nick::syntax::parse_soup;

const CROSSTALK: &str = "t^:[x t^]:[a t^]:[a] | <t^ a> | [x]:[t^ y]:[t^ a]:t^ | <y t^> \
                         | t^:[y t^]:[a t^]:[a] | <t^ a> | [y]:[t^ x]:[t^ a]:t^ | <x t^>";

fn settings(end_time: f64, points: usize) -> SimSettings {
    SimSettings {
        end_time,
        points,
        ..SimSettings::default()
    }
}

#[test]
fn ssa_tracks_ode_for_bimolecular_binding() {
    let u = parse_soup("1000 * t^:[x] | 1000 * <t^ x>").unwrap();
    let s = SimSettings {
        volume: 1000.0,
        seed: 3,
        ..settings(2.0, 21)
    };
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let init: Vec<f64> = crn.initial.iter().map(|&c| c as f64 / 1000.0).collect();
    let ode = simulate_ode(&crn, &init, &s).unwrap();
    let ssa = simulate_ssa(&crn, &crn.initial, &s).unwrap();
    for (o, q) in ode.values.iter().zip(&ssa.values) {
        for (a, b) in o.iter().zip(q) {
            assert!((a - b / 1000.0).abs() <= 0.05, "{a} vs {b}");
        }
    }
}

#[test]
fn ode_matches_closed_form() {
    let u = parse_soup("t^:[x] | <t^ x>").unwrap();
    let s = settings(1.0, 101);
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
    let c = tr.column("[t^ x]").unwrap();
    for (t, v) in tr.times.iter().zip(&c) {
        assert!((v - t / (1.0 + t)).abs() <= 1e-6);
    }
    assert!((c[100] - 0.5).abs() <= 1e-6);
}

#[test]
fn crosstalk_residual_fades_in_ode() {
    let u = soup(&format!("{CROSSTALK} | <t^ x>"));
    let mut last = f64::INFINITY;
    for end in [10.0, 100.0, 1000.0] {
        let s = settings(end, 11);
        let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
        let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
        let a = tr.column("<t^ a>").unwrap()[10];
        assert!(a < last);
        last = a;
    }
    assert!(last < 0.01, "{last}");
}

#[test]
fn crosstalk_population_mostly_completes() {
    let u = soup(CROSSTALK).replicate(100).compose(&soup("100 * <t^ x>"));
    let s = SimSettings {
        volume: 100.0,
        seed: 11,
        ..settings(1000.0, 11)
    };
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let tr = simulate_ssa(&crn, &crn.initial, &s).unwrap();
    let a = tr.column("<t^ a>").unwrap();
    let x = tr.column("<t^ x>").unwrap();
    assert_eq!(a[0], 200.0);
    // A residual fuel strand marks one stuck gate pair out of 100.
    assert!(a[10] <= 10.0, "{a:?}");
    assert!(x[10] >= 90.0, "{x:?}");
}

#[test]
fn tracked_domains_are_conserved() {
    let (u, s, _) = circuit_parts();
    let s = SimSettings {
        end_time: 50.0,
        points: 51,
        ..s
    };
    let opts = CrnOptions {
        track_displaced: true,
        ..CrnOptions::default()
    };
    let crn = extract_crn(&u, &s, &opts).unwrap();
    let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
    let start = crn.domain_totals(&tr.values[0]);
    for row in &tr.values {
        let now = crn.domain_totals(row);
        for (d, v) in &start {
            assert!((now[d] - v).abs() <= 1e-6, "{d}: {} vs {v}", now[d]);
        }
    }
}

#[test]
fn fork_releases_first_output_first() {
    let u = fork("x", &["y", "z"], 1).unwrap().compose(&soup("<t^ x>"));
    let s = settings(20.0, 21);
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
    let y = tr.column("<t^ y>").unwrap();
    let z = tr.column("<t^ z>").unwrap();
    for (a, b) in y.iter().zip(&z).skip(1) {
        assert!(a > b);
    }
}

#[test]
fn two_step_cooperation_barely_moves_the_endpoint() {
    let (u, s, plots) = circuit_parts();
    let mut ends = Vec::new();
    for two_step in [false, true] {
        let opts = CrnOptions {
            two_step,
            ..CrnOptions::default()
        };
        let crn = extract_crn(&u, &s, &opts).unwrap();
        let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
        let (p, w) = eval_plots(&tr, &crn, &plots);
        assert!(w.is_empty());
        ends.push(p.final_values().unwrap()[..4].to_vec());
    }
    for (a, b) in ends[0].iter().zip(&ends[1]) {
        assert!(*a >= 0.45 && *b >= 0.45);
        assert!((a - b).abs() <= 0.01);
    }
}

#[test]
fn garbage_sum_is_monotone_and_catches_up() {
    let (u, s, plots) = circuit_parts();
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
    let (p, _) = eval_plots(&tr, &crn, &plots);
    let garbage: Vec<f64> = p.values.iter().map(|r| r[4]).collect();
    assert!(garbage.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    let last = p.final_values().unwrap();
    let outputs: f64 = last[..4].iter().sum();
    assert!((outputs - last[4]).abs() < 0.01, "{outputs} vs {}", last[4]);
}

#[test]
fn ssa_runs_repeat_for_a_seed() {
    let u = fork("x", &["y", "z"], 20).unwrap().compose(&soup("20 * <t^ x>"));
    let s = SimSettings {
        volume: 20.0,
        seed: 5,
        ..settings(50.0, 26)
    };
    let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
    let a = simulate_ssa(&crn, &crn.initial, &s).unwrap();
    let b = simulate_ssa(&crn, &crn.initial, &s).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
}
