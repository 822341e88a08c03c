use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Crn, SimError, SimSettings, SimTrace};

fn propensity(rate: f64, reactants: &[usize], x: &[u64], volume: f64) -> f64 {
    let mut a = rate;
    let mut i = 0;
    while i < reactants.len() {
        let s = reactants[i];
        let mut k = 0;
        while i < reactants.len() && reactants[i] == s {
            a *= x[s].saturating_sub(k) as f64;
            k += 1;
            i += 1;
        }
    }
    if reactants.len() > 1 {
        a /= volume.powi(reactants.len() as i32 - 1);
    }
    a
}

/// Gillespie's direct method from integer counts, sampled on the settings
/// grid. Deterministic for a given seed. If no reaction can fire the
/// remaining samples repeat the final counts.
pub fn simulate_ssa(crn: &Crn, init: &[u64], settings: &SimSettings) -> Result<SimTrace, SimError> {
    settings.validate()?;
    let n = crn.species.len();
    if init.len() != n {
        return Err(SimError::InitialMismatch {
            expected: n,
            found: init.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let times = settings.sample_times();
    let mut x = init.to_vec();
    let rx = &crn.reactions;

    let mut deltas: Vec<Vec<(usize, i64)>> = Vec::with_capacity(rx.len());
    for r in rx {
        let mut d: Vec<(usize, i64)> = Vec::new();
        for (&i, v) in r
            .reactants
            .iter()
            .map(|i| (i, -1))
            .chain(r.products.iter().map(|i| (i, 1)))
        {
            match d.iter_mut().find(|(j, _)| *j == i) {
                Some((_, c)) => *c += v,
                None => d.push((i, v)),
            }
        }
        d.retain(|(_, c)| *c != 0);
        deltas.push(d);
    }
    // Reactions whose propensity depends on each species.
    let mut depends: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (j, r) in rx.iter().enumerate() {
        for &s in &r.reactants {
            if depends[s].last() != Some(&j) {
                depends[s].push(j);
            }
        }
    }
    let mut a: Vec<f64> = rx
        .iter()
        .map(|r| propensity(r.rate, &r.reactants, &x, settings.volume))
        .collect();

    let mut values = Vec::with_capacity(times.len());
    let mut t = 0.0;
    let mut sample = 0;
    let mut affected: Vec<usize> = Vec::new();
    loop {
        let a0: f64 = a.iter().sum();
        let tau = if a0 > 0.0 {
            -(1.0 - rng.gen::<f64>()).ln() / a0
        } else {
            f64::INFINITY
        };
        while sample < times.len() && times[sample] < t + tau {
            values.push(x.iter().map(|&c| c as f64).collect());
            sample += 1;
        }
        if sample == times.len() {
            break;
        }
        t += tau;
        let target = rng.gen::<f64>() * a0;
        let mut acc = 0.0;
        let mut chosen = None;
        for (j, &aj) in a.iter().enumerate() {
            if aj > 0.0 {
                acc += aj;
                chosen = Some(j);
                if acc > target {
                    break;
                }
            }
        }
        let j = chosen.expect("positive total propensity");
        affected.clear();
        for &(s, d) in &deltas[j] {
            x[s] = (x[s] as i64 + d) as u64;
            affected.extend_from_slice(&depends[s]);
        }
        for &k in &affected {
            a[k] = propensity(rx[k].rate, &rx[k].reactants, &x, settings.volume);
        }
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
    use crate::kinetics::{CrnOptions, Reaction, Species};
    use crate::rewrite::RuleTag;
    use crate::terms::{Domain, Molecule};

    fn toy(reactions: Vec<(Vec<usize>, Vec<usize>)>, n: usize) -> Crn {
        Crn {
            species: (0..n)
                .map(|i| Species::Molecule(Molecule::signal(Domain::public(&format!("s{i}")))))
                .collect(),
            reactions: reactions
                .into_iter()
                .map(|(reactants, products)| Reaction {
                    reactants,
                    products,
                    rate: 1.0,
                    rule: RuleTag::LeftCoverage,
                })
                .collect(),
            initial: vec![0; n],
            options: CrnOptions::default(),
        }
    }

    #[test]
    fn falling_factorial_propensities() {
        assert_eq!(propensity(2.0, &[0, 0], &[5], 1.0), 40.0);
        assert_eq!(propensity(1.0, &[0, 0, 0], &[3], 1.0), 6.0);
        assert_eq!(propensity(1.0, &[0, 1, 2], &[2, 3, 4], 2.0), 6.0);
        assert_eq!(propensity(1.0, &[0, 0], &[1], 1.0), 0.0);
    }

    #[test]
    fn single_firing() {
        let crn = toy(vec![(vec![0], vec![1])], 2);
        let s = SimSettings {
            end_time: 100.0,
            points: 11,
            ..Default::default()
        };
        let tr = simulate_ssa(&crn, &[1, 0], &s).unwrap();
        assert_eq!(tr.values.len(), 11);
        assert_eq!(tr.values[10], vec![0.0, 1.0]);
        assert_eq!(tr.values[0], vec![1.0, 0.0]);
    }

    #[test]
    fn seeded_runs_repeat() {
        let crn = toy(vec![(vec![0, 1], vec![2]), (vec![2], vec![0, 1])], 3);
        let s = SimSettings {
            end_time: 5.0,
            points: 51,
            seed: 7,
            volume: 50.0,
            ..Default::default()
        };
        let a = simulate_ssa(&crn, &[50, 50, 0], &s).unwrap();
        let b = simulate_ssa(&crn, &[50, 50, 0], &s).unwrap();
        assert_eq!(a.values, b.values);
        let c = simulate_ssa(&crn, &[50, 50, 0], &SimSettings { seed: 8, ..s }).unwrap();
        assert_ne!(a.values, c.values);
        for row in &a.values {
            assert_eq!(row[0] + row[2], 50.0);
        }
    }
}
