use super::{Crn, Species};
use crate::syntax::PlotSpec;
use crate::terms::Molecule;

/// Sampled trajectories; `values[k][j]` is quantity `j` at `times[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimTrace {
    pub times: Vec<f64>,
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl SimTrace {
    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let j = self.labels.iter().position(|l| l == label)?;
        Some(self.values.iter().map(|row| row[j]).collect())
    }

    pub fn final_values(&self) -> Option<&[f64]> {
        self.values.last().map(|v| v.as_slice())
    }

    /// `time,<labels>` header, then one row per sample with 9 significant
    /// digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("time");
        for l in &self.labels {
            out.push(',');
            out.push_str(&csv_field(l));
        }
        out.push('\n');
        for (t, row) in self.times.iter().zip(&self.values) {
            out.push_str(&format_g9(*t));
            for v in row {
                out.push(',');
                out.push_str(&format_g9(*v));
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `printf("%.9g")`.
pub fn format_g9(x: f64) -> String {
    const P: i32 = 9;
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if !(-4..P).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim(mantissa), sign, exp.abs())
    } else {
        trim(&format!("{:.*}", (P - 1 - exp) as usize, x))
    }
}

/// Projects a full species trace onto plot specifications. Returns the
/// projected trace and one warning per spec that matches no species (its
/// column is all zeros).
pub fn eval_plots(trace: &SimTrace, crn: &Crn, specs: &[PlotSpec]) -> (SimTrace, Vec<String>) {
    let mut warnings = Vec::new();
    let columns: Vec<Vec<usize>> = specs
        .iter()
        .map(|spec| {
            let cols: Vec<usize> = match spec {
                PlotSpec::Exact(m) => crn.index_of(&Species::Molecule(m.clone())).into_iter().collect(),
                PlotSpec::Sum(_) => crn
                    .species
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| matches!(s, Species::Molecule(Molecule::Duplex(d)) if spec.matches_duplex(d)))
                    .map(|(i, _)| i)
                    .collect(),
            };
            if cols.is_empty() {
                warnings.push(format!("plot `{spec}` matches no species"));
            }
            cols
        })
        .collect();
    let values = trace
        .values
        .iter()
        .map(|row| {
            columns
                .iter()
                .map(|cols| cols.iter().map(|&i| row[i]).sum())
                .collect()
        })
        .collect();
    let projected = SimTrace {
        times: trace.times.clone(),
        labels: specs.iter().map(|s| s.label()).collect(),
        values,
    };
    (projected, warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinetics::{extract_crn, simulate_ode, CrnOptions, SimSettings};
    use crate::syntax::{parse_dsd_script, parse_soup};

    #[test]
    fn g9_matches_printf() {
        assert_eq!(format_g9(0.0), "0");
        assert_eq!(format_g9(1.0), "1");
        assert_eq!(format_g9(0.5), "0.5");
        assert_eq!(format_g9(300.0), "300");
        assert_eq!(format_g9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_g9(2.0 / 3.0), "0.666666667");
        assert_eq!(format_g9(123456789.0), "123456789");
        assert_eq!(format_g9(1234567890.0), "1.23456789e+09");
        assert_eq!(format_g9(0.0001), "0.0001");
        assert_eq!(format_g9(0.00001234), "1.234e-05");
        assert_eq!(format_g9(-2.5), "-2.5");
        assert_eq!(format_g9(999999999.6), "1e+09");
    }

    #[test]
    fn exact_sum_and_missing_plots() {
        let u = parse_soup("t^:[x] | t^:[y] | <t^ x> | <t^ y>").unwrap();
        let s = SimSettings {
            end_time: 2.0,
            points: 3,
            ..Default::default()
        };
        let crn = extract_crn(&u, &s, &CrnOptions::default()).unwrap();
        let tr = simulate_ode(&crn, &crn.initial_concentrations(), &s).unwrap();
        let specs = parse_dsd_script("directive plot <t^ x>; sum({[t^ _]}); <t^ q>\n( <t^ x> )")
            .unwrap()
            .plots;
        let (p, warnings) = eval_plots(&tr, &crn, &specs);
        assert_eq!(p.labels, vec!["<t^ x>", "sum({[t^ _]})", "<t^ q>"]);
        assert_eq!(warnings.len(), 1);
        for row in &p.values {
            assert!((row[0] * 2.0 + row[1] - 2.0).abs() < 1e-9);
            assert_eq!(row[2], 0.0);
        }
        let csv = p.to_csv();
        assert!(csv.starts_with("time,<t^ x>,sum({[t^ _]}),<t^ q>\n0,1,0,0\n"));
        assert_eq!(csv.lines().count(), 4);
    }
}
