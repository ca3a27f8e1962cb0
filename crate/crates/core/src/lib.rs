//! Generalised runtime monitors.
//!
//! A generalised monitor runs a safety-completion monitor and a
//! cosafety-completion monitor side by side and reports one of six verdicts,
//! including `giveup` once no conclusive verdict can ever be reached. This
//! crate synthesises such monitors from LTL formulas (through Büchi
//! automata and subset construction) and from pairs of linear-time
//! ν-calculus terms, and contains a finite laboratory for observation
//! structures that checks the underlying closure/monitorability facts by
//! enumeration.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alphabet;
pub mod automata;
pub mod encoder;
pub mod gen;
pub mod lasso;
pub mod ltl;
pub mod ltl2nba;
pub mod ltnu;
pub mod monitor;
pub mod obslab;
pub mod verdict;

pub use alphabet::{Event, Interpretation, Mode, Prop};
pub use lasso::LassoWord;
pub use ltl::Formula;
pub use verdict::{combine, InconsistentVerdicts, Verdict3, Verdict6};
