//! Reaction networks and simulation.
//!
//! [`extract_crn`] closes a soup's species under the reduction rules and
//! turns every rule instance into a mass-action reaction. Private domains
//! are first instantiated to fresh public names, so every species is a
//! plain molecule. Unreactive duplexes stay in the network as inert
//! species unless eager waste removal is requested.
//!
//! ```
//! use nick::kinetics::{extract_crn, simulate_ode, CrnOptions, SimSettings};
//! use nick::syntax::parse_soup;
//!
//! let u = parse_soup("t^:[x] | <t^ x>").unwrap();
//! let settings = SimSettings { end_time: 1.0, points: 11, ..SimSettings::default() };
//! let crn = extract_crn(&u, &settings, &CrnOptions::default()).unwrap();
//! assert_eq!((crn.species.len(), crn.reactions.len()), (3, 1));
//! let trace = simulate_ode(&crn, &crn.initial_concentrations(), &settings).unwrap();
//! assert!((trace.column("[t^ x]").unwrap()[10] - 0.5).abs() < 1e-6);
//! ```

mod crn;
mod ode;
mod plots;
mod ssa;

use thiserror::Error;

pub use crn::{
    count_report, extract_crn, Crn, CrnCounts, CrnOptions, Reaction, Species, REFERENCE_COUNTS,
};
pub use ode::simulate_ode;
pub use plots::{eval_plots, format_g9, SimTrace};
pub use ssa::simulate_ssa;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Method {
    #[default]
    Ode,
    Ssa,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimSettings {
    pub end_time: f64,
    pub points: usize,
    pub bind_rate: f64,
    pub unbind_rate: f64,
    pub method: Method,
    /// Initial ODE step; `None` means `end_time / 1e4`.
    pub ode_step: Option<f64>,
    pub seed: u64,
    /// SSA volume: a reaction of order `k` has propensity
    /// `rate * (falling factorial counts) / volume^(k-1)`.
    pub volume: f64,
}

impl Default for SimSettings {
    fn default() -> Self {
        SimSettings {
            end_time: 1.0,
            points: 101,
            bind_rate: 1.0,
            unbind_rate: 1.0,
            method: Method::Ode,
            ode_step: None,
            seed: 0,
            volume: 1.0,
        }
    }
}

impl SimSettings {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |msg: &str| Err(SimError::InvalidSettings(msg.to_string()));
        if !(self.end_time > 0.0 && self.end_time.is_finite()) {
            return bad("end time must be positive");
        }
        if self.points < 2 {
            return bad("at least 2 sample points are needed");
        }
        if !(self.bind_rate > 0.0 && self.unbind_rate > 0.0) {
            return bad("rates must be positive");
        }
        if !(self.volume > 0.0) {
            return bad("volume must be positive");
        }
        if self.ode_step.is_some_and(|h| !(h > 0.0)) {
            return bad("the initial ODE step must be positive");
        }
        Ok(())
    }

    /// The sampling grid: `points` equally spaced times in `[0, end_time]`.
    pub fn sample_times(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|k| self.end_time * k as f64 / n as f64)
            .collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid settings: {0}")]
    InvalidSettings(String),
    #[error("species budget of {0} exceeded")]
    SpeciesBudget(usize),
    #[error("integrator failed at t = {time}: {reason}")]
    StepFailure { time: f64, reason: String },
    #[error("initial state has {found} entries, the network has {expected} species")]
    InitialMismatch { expected: usize, found: usize },
    #[error("initial values must be finite and nonnegative")]
    NegativeInitial,
}
