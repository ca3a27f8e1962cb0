//! Finite observation structures.
//!
//! An observation structure relates a set of behaviours `B` to a preordered
//! set of observations `(O, ◁)` through an approximation relation
//! `◁_b ⊆ O × B`. Everything here is explicit and finite, so abstract
//! monitors, monitorability, safety and the completions can be computed by
//! enumeration. Properties are bitsets over `B`.

mod models;
mod random;
mod suite;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;

use crate::verdict::{combine, Verdict3, Verdict6};

pub use models::{
    branching_sets, branching_traces, example4_witness, example5_lassos, hyper_sets, linear_words,
    BranchingModel, LassoModel, Tree,
};
pub use random::random_structure;
pub use suite::{
    check_lemma3, check_property, run_suite, sample_properties, Outcome, PropertyChecks, SuiteConfig,
    SuiteReport, TheoryItem,
};

/// A property: a subset of the behaviours.
pub type Property = FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteObservationStructure {
    behaviours: Vec<String>,
    observations: Vec<String>,
    /// `refine[o]` holds every `p` with `o ◁ p`.
    refine: Vec<FixedBitSet>,
    /// `approx[o]` is `B(o)`.
    approx: Vec<FixedBitSet>,
    /// `observed[a]` is `O(a)`.
    observed: Vec<FixedBitSet>,
}

/// A failed structure invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive { o: usize },
    NotTransitive { o: usize, p: usize, q: usize },
    NotDownwardClosed { o: usize, p: usize, behaviour: usize },
    ApproximatesNothing { o: usize },
}

/// The two completions of a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completions {
    /// Safety completion: the smallest safety property containing `P`.
    pub gamma: Property,
    /// Cosafety completion: the largest cosafety property inside `P`.
    pub delta: Property,
}

impl FiniteObservationStructure {
    /// A structure with the given names and empty relations.
    pub fn new(behaviours: Vec<String>, observations: Vec<String>) -> Self {
        let nb = behaviours.len();
        let no = observations.len();
        FiniteObservationStructure {
            refine: (0..no).map(|_| FixedBitSet::with_capacity(no)).collect(),
            approx: (0..no).map(|_| FixedBitSet::with_capacity(nb)).collect(),
            observed: (0..nb).map(|_| FixedBitSet::with_capacity(no)).collect(),
            behaviours,
            observations,
        }
    }

    pub fn add_refine(&mut self, o: usize, p: usize) {
        self.refine[o].insert(p);
    }

    pub fn add_approx(&mut self, o: usize, behaviour: usize) {
        self.approx[o].insert(behaviour);
        self.observed[behaviour].insert(o);
    }

    /// Makes `◁` reflexive and transitive.
    pub fn close_refine(&mut self) {
        let n = self.num_observations();
        for o in 0..n {
            self.refine[o].insert(o);
        }
        // Warshall on rows.
        for k in 0..n {
            let row_k = self.refine[k].clone();
            for o in 0..n {
                if self.refine[o].contains(k) {
                    self.refine[o].union_with(&row_k);
                }
            }
        }
    }

    /// Adds `o ◁_b α` whenever `o ◁ p` and `p ◁_b α`.
    pub fn close_approx(&mut self) {
        for o in 0..self.num_observations() {
            let mut row = self.approx[o].clone();
            for p in self.refine[o].ones() {
                row.union_with(&self.approx[p]);
            }
            for a in row.ones() {
                self.observed[a].insert(o);
            }
            self.approx[o] = row;
        }
    }

    pub fn num_behaviours(&self) -> usize {
        self.behaviours.len()
    }

    pub fn num_observations(&self) -> usize {
        self.observations.len()
    }

    pub fn behaviour_names(&self) -> &[String] {
        &self.behaviours
    }

    pub fn observation_names(&self) -> &[String] {
        &self.observations
    }

    pub fn behaviour_index(&self, name: &str) -> Option<usize> {
        self.behaviours.iter().position(|b| b == name)
    }

    pub fn observation_index(&self, name: &str) -> Option<usize> {
        self.observations.iter().position(|o| o == name)
    }

    pub fn refines(&self, o: usize, p: usize) -> bool {
        self.refine[o].contains(p)
    }

    pub fn approximates(&self, o: usize, behaviour: usize) -> bool {
        self.approx[o].contains(behaviour)
    }

    /// `{p | o ◁ p}`.
    pub fn refinements(&self, o: usize) -> &FixedBitSet {
        &self.refine[o]
    }

    /// `B(o)`.
    pub fn behaviours_of(&self, o: usize) -> &FixedBitSet {
        &self.approx[o]
    }

    /// `O(α)`.
    pub fn observations_of(&self, behaviour: usize) -> &FixedBitSet {
        &self.observed[behaviour]
    }

    /// Every violated structure invariant; empty iff the structure is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let n = self.num_observations();
        let mut out = Vec::new();
        for o in 0..n {
            if !self.refine[o].contains(o) {
                out.push(Violation::NotReflexive { o });
            }
        }
        for o in 0..n {
            for p in self.refine[o].ones() {
                for q in self.refine[p].difference(&self.refine[o]) {
                    out.push(Violation::NotTransitive { o, p, q });
                }
                for behaviour in self.approx[p].difference(&self.approx[o]) {
                    out.push(Violation::NotDownwardClosed { o, p, behaviour });
                }
            }
            if self.approx[o].is_clear() {
                out.push(Violation::ApproximatesNothing { o });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn describe(&self, v: &Violation) -> String {
        let o = |i: usize| &self.observations[i];
        match *v {
            Violation::NotReflexive { o: a } => format!("{} does not refine itself", o(a)),
            Violation::NotTransitive { o: a, p, q } => {
                format!("{} ◁ {} ◁ {} but not {} ◁ {}", o(a), o(p), o(q), o(a), o(q))
            }
            Violation::NotDownwardClosed { o: a, p, behaviour } => format!(
                "{} ◁ {} and {} approximates {}, but {} does not",
                o(a),
                o(p),
                o(p),
                self.behaviours[behaviour],
                o(a)
            ),
            Violation::ApproximatesNothing { o: a } => {
                format!("{} approximates no behaviour", o(a))
            }
        }
    }

    /// Whether every `O(α)` is directed: two observations of the same
    /// behaviour always have a common refinement that still observes it.
    pub fn is_directed(&self) -> bool {
        self.directedness_witness().is_none()
    }

    /// A triple `(o, p, α)` without common refinement in `O(α)`, if any.
    pub fn directedness_witness(&self) -> Option<(usize, usize, usize)> {
        let mut common = FixedBitSet::with_capacity(self.num_observations());
        for (a, obs) in self.observed.iter().enumerate() {
            let obs_list: Vec<usize> = obs.ones().collect();
            for (i, &o) in obs_list.iter().enumerate() {
                for &p in &obs_list[i + 1..] {
                    if self.refine[o].contains(p) || self.refine[p].contains(o) {
                        continue;
                    }
                    common.clone_from(obs);
                    common.intersect_with(&self.refine[o]);
                    common.intersect_with(&self.refine[p]);
                    if common.is_clear() {
                        return Some((o, p, a));
                    }
                }
            }
        }
        None
    }

    pub fn empty_property(&self) -> Property {
        FixedBitSet::with_capacity(self.num_behaviours())
    }

    pub fn full_property(&self) -> Property {
        let mut p = self.empty_property();
        p.insert_range(..);
        p
    }

    pub fn complement(&self, p: &Property) -> Property {
        let mut c = p.clone();
        c.toggle_range(..);
        c
    }

    /// `M_P(o)`.
    pub fn abstract_monitor(&self, p: &Property, o: usize) -> Verdict3 {
        let b = &self.approx[o];
        if b.is_subset(p) {
            Verdict3::Yes
        } else if b.is_disjoint(p) {
            Verdict3::No
        } else {
            Verdict3::Unknown
        }
    }

    /// `M_P` on every observation.
    pub fn monitor_table(&self, p: &Property) -> Vec<Verdict3> {
        (0..self.num_observations()).map(|o| self.abstract_monitor(p, o)).collect()
    }

    /// Observations on which `table` is conclusive.
    fn conclusive(&self, table: &[Verdict3]) -> FixedBitSet {
        let mut c = FixedBitSet::with_capacity(self.num_observations());
        for (o, v) in table.iter().enumerate() {
            if v.is_conclusive() {
                c.insert(o);
            }
        }
        c
    }

    /// Every observation has a refinement that determines `p`.
    pub fn is_monitorable(&self, p: &Property) -> bool {
        let good = self.conclusive(&self.monitor_table(p));
        self.refine.iter().all(|up| !up.is_disjoint(&good))
    }

    /// Observations `o` whose `B(o)` misses `p`.
    fn refuting(&self, p: &Property) -> FixedBitSet {
        let mut r = FixedBitSet::with_capacity(self.num_observations());
        for (o, b) in self.approx.iter().enumerate() {
            if b.is_disjoint(p) {
                r.insert(o);
            }
        }
        r
    }

    /// Every behaviour outside `p` is observed by some `o` with
    /// `B(o) ∩ P = ∅`.
    pub fn is_safety(&self, p: &Property) -> bool {
        let refuting = self.refuting(p);
        (0..self.num_behaviours())
            .filter(|&a| !p.contains(a))
            .all(|a| !self.observed[a].is_disjoint(&refuting))
    }

    /// Every behaviour inside `p` is observed by some `o` with `B(o) ⊆ P`.
    pub fn is_cosafety(&self, p: &Property) -> bool {
        let mut confirming = FixedBitSet::with_capacity(self.num_observations());
        for (o, b) in self.approx.iter().enumerate() {
            if b.is_subset(p) {
                confirming.insert(o);
            }
        }
        p.ones().all(|a| !self.observed[a].is_disjoint(&confirming))
    }

    /// `NR(P)`: the behaviours all of whose observations meet `p`.
    pub fn nr_closure(&self, p: &Property) -> Property {
        let refuting = self.refuting(p);
        let mut out = self.empty_property();
        for (a, obs) in self.observed.iter().enumerate() {
            if obs.is_disjoint(&refuting) {
                out.insert(a);
            }
        }
        out
    }

    pub fn completions(&self, p: &Property) -> Completions {
        let gamma = self.nr_closure(p);
        let delta = self.complement(&self.nr_closure(&self.complement(p)));
        Completions { gamma, delta }
    }

    /// `M̂_P(o)`.
    pub fn generalized_abstract_monitor(&self, p: &Property, o: usize) -> Verdict6 {
        let c = self.completions(p);
        self.generalized_verdict(&c, o)
    }

    /// `M̂_P` on every observation.
    pub fn generalized_table(&self, p: &Property) -> Vec<Verdict6> {
        let c = self.completions(p);
        (0..self.num_observations()).map(|o| self.generalized_verdict(&c, o)).collect()
    }

    fn generalized_verdict(&self, c: &Completions, o: usize) -> Verdict6 {
        combine(self.abstract_monitor(&c.gamma, o), self.abstract_monitor(&c.delta, o))
            .expect("the cosafety completion is contained in the safety completion")
    }

    /// Builds a property from behaviour indices.
    pub fn property(&self, members: impl IntoIterator<Item = usize>) -> Property {
        let mut p = self.empty_property();
        p.extend(members);
        p
    }

    /// Renders `p` as `{b1, b2, ...}` with behaviour names.
    pub fn show_property(&self, p: &Property) -> String {
        let names: Vec<&str> = p.ones().map(|a| self.behaviours[a].as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Display for FiniteObservationStructure {
    /// The structure file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "behaviours: {}", self.behaviours.join(" "))?;
        writeln!(f, "observations: {}", self.observations.join(" "))?;
        for (o, up) in self.refine.iter().enumerate() {
            for p in up.ones() {
                writeln!(f, "refine: {} {}", self.observations[o], self.observations[p])?;
            }
        }
        for (o, b) in self.approx.iter().enumerate() {
            for a in b.ones() {
                writeln!(f, "approx: {} {}", self.observations[o], self.behaviours[a])?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn chain() -> FiniteObservationStructure {
        // o0 ◁ o1, o0 observes both behaviours, o1 only the first.
        let mut s = FiniteObservationStructure::new(
            alloc::vec!["x".to_string(), "y".to_string()],
            alloc::vec!["o0".to_string(), "o1".to_string(), "o2".to_string()],
        );
        s.add_refine(0, 1);
        s.add_refine(0, 2);
        s.add_approx(1, 0);
        s.add_approx(2, 1);
        s.close_refine();
        s.close_approx();
        s
    }

    #[test]
    fn validation_diagnostics() {
        let s = chain();
        assert!(s.is_valid());
        assert_eq!(s.behaviours_of(0).ones().collect::<Vec<_>>(), [0, 1]);

        let mut t = s.clone();
        t.refine[1].remove(1);
        assert_eq!(t.violations(), [Violation::NotReflexive { o: 1 }]);

        let mut t = s.clone();
        t.approx[2].clear();
        assert!(t.violations().contains(&Violation::ApproximatesNothing { o: 2 }));
        assert!(!t.is_valid());
    }

    #[test]
    fn monitors_and_completions() {
        let s = chain();
        let p = s.property([0]);
        assert_eq!(s.monitor_table(&p), [Verdict3::Unknown, Verdict3::Yes, Verdict3::No]);
        assert!(s.is_monitorable(&p));
        assert!(s.is_safety(&p) && s.is_cosafety(&p));
        assert_eq!(s.monitor_table(&s.full_property()), [Verdict3::Yes; 3]);
        assert_eq!(s.monitor_table(&s.empty_property()), [Verdict3::No; 3]);
        assert_eq!(s.nr_closure(&s.full_property()), s.full_property());
        let c = s.completions(&p);
        assert_eq!((c.gamma, c.delta), (p.clone(), p));
    }

    #[test]
    fn directedness() {
        let s = chain();
        assert!(s.is_directed());
        let mut one =
            FiniteObservationStructure::new(alloc::vec!["x".to_string()], alloc::vec!["o".to_string()]);
        one.add_approx(0, 0);
        one.close_refine();
        assert!(one.is_valid() && one.is_directed());
    }

    #[test]
    fn file_format_lists_every_pair() {
        let text = chain().to_string();
        assert!(text.starts_with("behaviours: x y\nobservations: o0 o1 o2\n"));
        assert!(text.contains("refine: o0 o2\n"));
        assert!(text.contains("approx: o0 y\n"));
    }
}
