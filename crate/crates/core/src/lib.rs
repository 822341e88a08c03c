//! A two-domain DNA strand displacement calculus.
//!
//! Molecules are signals `<t^ x>`, cosignals `<x t^>` and top-nicked double
//! strands built from a single shared toehold `t` and long domains. A soup is
//! a multiset of molecules under `new` binders for private domains.
//!
//! * [`terms`]: the term model and canonical forms up to algebraic equality;
//! * [`syntax`]: the core term format, the script format and pictograms;
//! * [`rewrite`]: the reduction rules;
//! * [`gates`]: transducer, fork, catalyst and join populations;
//! * [`verify`]: state graphs, may/will reachability and terminal states;
//! * [`kinetics`]: reaction network extraction, ODE and stochastic simulation;
//! * [`cli`]: the `nick` command line.
//!
//! ```
//! use nick::syntax::parse_soup;
//! use nick::verify::{will_reach, Verdict};
//!
//! let init = nick::gates::transducer("x", "y", 1).unwrap().compose(&parse_soup("<t^ x>").unwrap());
//! let result = will_reach(&init, &parse_soup("<t^ y>").unwrap(), 1_000_000);
//! assert_eq!(result.verdict, Verdict::Holds);
//! assert_eq!(result.graph.len(), 15);
//! ```

pub mod cli;
pub mod gates;
pub mod kinetics;
pub mod rewrite;
pub mod syntax;
pub mod terms;
pub mod verify;
