use super::{Crn, SimError, SimSettings, SimTrace};

const ATOL: f64 = 1e-9;
const RTOL: f64 = 1e-6;
const MAX_STEPS: usize = 50_000_000;

/// Reactions flattened for fast derivative evaluation.
struct System {
    reactants: Vec<Vec<usize>>,
    rates: Vec<f64>,
    /// Net stoichiometric change per reaction, as (species, delta).
    deltas: Vec<Vec<(usize, f64)>>,
}

impl System {
    fn new(crn: &Crn) -> Self {
        let mut deltas = Vec::with_capacity(crn.reactions.len());
        for r in &crn.reactions {
            let mut d: Vec<(usize, f64)> = Vec::new();
            let mut bump = |i: usize, v: f64| match d.iter_mut().find(|(j, _)| *j == i) {
                Some((_, x)) => *x += v,
                None => d.push((i, v)),
            };
            r.reactants.iter().for_each(|&i| bump(i, -1.0));
            r.products.iter().for_each(|&i| bump(i, 1.0));
            d.retain(|(_, v)| *v != 0.0);
            deltas.push(d);
        }
        System {
            reactants: crn.reactions.iter().map(|r| r.reactants.clone()).collect(),
            rates: crn.reactions.iter().map(|r| r.rate).collect(),
            deltas,
        }
    }

    fn eval(&self, y: &[f64], dy: &mut [f64]) {
        dy.iter_mut().for_each(|v| *v = 0.0);
        for ((rs, k), d) in self.reactants.iter().zip(&self.rates).zip(&self.deltas) {
            let flux = rs.iter().fold(*k, |acc, &i| acc * y[i]);
            if flux != 0.0 {
                for &(i, v) in d {
                    dy[i] += v * flux;
                }
            }
        }
    }
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrates the mass-action equations of `crn` from `init` and samples
/// every species on the settings grid.
///
/// Adaptive Dormand–Prince with absolute tolerance 1e-9 and relative
/// tolerance 1e-6; steps are shortened to land on sample times, and values
/// that undershoot zero are clamped after each accepted step.
pub fn simulate_ode(crn: &Crn, init: &[f64], settings: &SimSettings) -> Result<SimTrace, SimError> {
    settings.validate()?;
    let n = crn.species.len();
    if init.len() != n {
        return Err(SimError::InitialMismatch {
            expected: n,
            found: init.len(),
        });
    }
    if init.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
        return Err(SimError::NegativeInitial);
    }
    let sys = System::new(crn);
    let times = settings.sample_times();
    let mut values = Vec::with_capacity(times.len());
    let mut y = init.to_vec();
    values.push(y.clone());

    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y5 = vec![0.0; n];
    let mut t = 0.0;
    let mut h = settings.ode_step.unwrap_or(settings.end_time / 1e4);
    let mut steps = 0usize;
    sys.eval(&y, &mut k[0]);

    for &t_next in &times[1..] {
        while t < t_next {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(SimError::StepFailure {
                    time: t,
                    reason: "too many steps".into(),
                });
            }
            let landing = t + h >= t_next;
            let h_try = if landing { t_next - t } else { h };
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, a) in A[s][..s].iter().enumerate() {
                        acc += h_try * a * k[j][i];
                    }
                    tmp[i] = acc;
                }
                sys.eval(&tmp, &mut k[s]);
            }
            let mut err: f64 = 0.0;
            for i in 0..n {
                let mut hi = y[i];
                let mut lo = y[i];
                for s in 0..7 {
                    hi += h_try * B5[s] * k[s][i];
                    lo += h_try * B4[s] * k[s][i];
                }
                y5[i] = hi;
                let scale = ATOL + RTOL * y[i].abs().max(hi.abs());
                err = err.max(((hi - lo) / scale).abs());
            }
            if !err.is_finite() {
                return Err(SimError::StepFailure {
                    time: t,
                    reason: "non-finite state".into(),
                });
            }
            if err <= 1.0 {
                t = if landing { t_next } else { t + h_try };
                let mut clamped = false;
                for (yi, v) in y.iter_mut().zip(&y5) {
                    *yi = if *v < 0.0 {
                        clamped = true;
                        0.0
                    } else {
                        *v
                    };
                }
                // First-same-as-last: stage 7 was evaluated at the new point.
                if clamped {
                    sys.eval(&y, &mut k[0]);
                } else {
                    k.swap(0, 6);
                }
                let grow = if err == 0.0 {
                    5.0
                } else {
                    (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                };
                // A step shortened to land on a sample says nothing about
                // how large steps may be.
                if !landing || h_try >= h {
                    h = h_try * grow;
                }
            } else {
                h = h_try * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
                if h < 1e-14 * t.abs().max(1.0) {
                    return Err(SimError::StepFailure {
                        time: t,
                        reason: "step size underflow".into(),
                    });
                }
            }
        }
        values.push(y.clone());
    }
    Ok(SimTrace {
        times,
        labels: crn.labels(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::CrnOptions;
    use crate::kinetics::{Reaction, Species};
    use crate::rewrite::RuleTag;
    use crate::terms::Molecule;

    fn toy(reactions: Vec<(Vec<usize>, Vec<usize>, f64)>, n: usize) -> Crn {
        Crn {
            species: (0..n)
                .map(|i| {
                    Species::Molecule(Molecule::signal(crate::terms::Domain::public(&format!(
                        "s{i}"
                    ))))
                })
                .collect(),
            reactions: reactions
                .into_iter()
                .map(|(reactants, products, rate)| Reaction {
                    reactants,
                    products,
                    rate,
                    rule: RuleTag::LeftCoverage,
                })
                .collect(),
            initial: vec![0; n],
            options: CrnOptions::default(),
        }
    }

    #[test]
    fn bimolecular_closed_form() {
        let crn = toy(vec![(vec![0, 1], vec![2], 1.0)], 3);
        let s = SimSettings {
            end_time: 1.0,
            points: 11,
            ..Default::default()
        };
        let tr = simulate_ode(&crn, &[1.0, 1.0, 0.0], &s).unwrap();
        for (t, row) in tr.times.iter().zip(&tr.values) {
            assert!((row[2] - t / (1.0 + t)).abs() < 1e-6, "t={t}: {}", row[2]);
        }
        assert!((tr.values[10][2] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn exponential_decay() {
        let crn = toy(vec![(vec![0], vec![1], 2.0)], 2);
        let s = SimSettings {
            end_time: 5.0,
            points: 6,
            ..Default::default()
        };
        let tr = simulate_ode(&crn, &[1.0, 0.0], &s).unwrap();
        for (t, row) in tr.times.iter().zip(&tr.values) {
            assert!((row[0] - (-2.0 * t).exp()).abs() < 1e-6);
            assert!((row[0] + row[1] - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_network_is_constant() {
        let crn = toy(vec![], 2);
        let s = SimSettings::default();
        let tr = simulate_ode(&crn, &[3.0, 0.5], &s).unwrap();
        assert!(tr.values.iter().all(|r| r == &vec![3.0, 0.5]));
        assert_eq!(tr.times.len(), 101);
    }

    #[test]
    fn rejects_bad_input() {
        let crn = toy(vec![], 2);
        assert!(simulate_ode(&crn, &[1.0], &SimSettings::default()).is_err());
        assert!(simulate_ode(&crn, &[1.0, -1.0], &SimSettings::default()).is_err());
        let s = SimSettings {
            points: 1,
            ..Default::default()
        };
        assert!(simulate_ode(&crn, &[1.0, 1.0], &s).is_err());
    }
}
