//! Brute-force checks of the closure and monitorability results on one
//! finite structure.
//!
//! Most results are statements about a single property `P`; they are
//! checked on every property when `|B|` is small and on a seeded sample
//! otherwise. Closure of safety properties under intersection is checked
//! on families of safety properties. Results whose statement assumes a
//! directed structure are skipped on other structures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use fixedbitset::FixedBitSet;
use hashbrown::HashSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteObservationStructure, Property};
use crate::verdict::{Verdict3, Verdict6};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoryItem {
    Proposition1,
    Lemma1,
    Lemma2,
    Proposition2,
    Proposition3,
    Proposition4,
    Lemma3,
    Proposition5,
    Corollary1,
    Theorem1,
    Proposition6,
    Corollary2,
    Proposition7Forward,
    Proposition7Backward,
    Theorem2,
    Remark1,
}

impl TheoryItem {
    pub const ALL: [TheoryItem; 16] = [
        TheoryItem::Proposition1,
        TheoryItem::Lemma1,
        TheoryItem::Lemma2,
        TheoryItem::Proposition2,
        TheoryItem::Proposition3,
        TheoryItem::Proposition4,
        TheoryItem::Lemma3,
        TheoryItem::Proposition5,
        TheoryItem::Corollary1,
        TheoryItem::Theorem1,
        TheoryItem::Proposition6,
        TheoryItem::Corollary2,
        TheoryItem::Proposition7Forward,
        TheoryItem::Proposition7Backward,
        TheoryItem::Theorem2,
        TheoryItem::Remark1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryItem::Proposition1 => "Proposition 1",
            TheoryItem::Lemma1 => "Lemma 1",
            TheoryItem::Lemma2 => "Lemma 2",
            TheoryItem::Proposition2 => "Proposition 2",
            TheoryItem::Proposition3 => "Proposition 3",
            TheoryItem::Proposition4 => "Proposition 4",
            TheoryItem::Lemma3 => "Lemma 3",
            TheoryItem::Proposition5 => "Proposition 5",
            TheoryItem::Corollary1 => "Corollary 1",
            TheoryItem::Theorem1 => "Theorem 1",
            TheoryItem::Proposition6 => "Proposition 6",
            TheoryItem::Corollary2 => "Corollary 2",
            TheoryItem::Proposition7Forward => "Proposition 7 (left to right)",
            TheoryItem::Proposition7Backward => "Proposition 7 (right to left)",
            TheoryItem::Theorem2 => "Theorem 2",
            TheoryItem::Remark1 => "Remark 1",
        }
    }

    /// Results that assume a directed structure.
    pub fn needs_directed(self) -> bool {
        matches!(
            self,
            TheoryItem::Proposition4
                | TheoryItem::Proposition7Backward
                | TheoryItem::Theorem2
                | TheoryItem::Remark1
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Held on every checked instance.
    Pass {
        checked: usize,
    },
    Fail {
        counterexample: String,
    },
    Skipped {
        reason: &'static str,
    },
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Enumerate every property when `|B|` is at most this.
    pub exhaustive_limit: usize,
    /// Number of sampled properties (and families) otherwise.
    pub samples: usize,
    /// Supersets and subsets of a property are enumerated when there are
    /// at most `2^superset_limit` of them, and sampled otherwise.
    pub superset_limit: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { exhaustive_limit: 12, samples: 1000, superset_limit: 10, seed: 0 }
    }
}

/// The properties the suite checks: all of them, or `∅`, `B` and a sample.
pub fn sample_properties(s: &FiniteObservationStructure, cfg: &SuiteConfig) -> Vec<Property> {
    let n = s.num_behaviours();
    if n <= cfg.exhaustive_limit {
        return (0u64..1 << n).map(|m| s.property((0..n).filter(|&a| m >> a & 1 == 1))).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = alloc::vec![s.empty_property(), s.full_property()];
    while out.len() < cfg.samples.max(2) {
        let density = rng.random_range(0.0..1.0);
        out.push(s.property((0..n).filter(|_| rng.random_bool(density))));
    }
    out
}

/// Failures found for one property.
#[derive(Clone, Debug, Default)]
pub struct PropertyChecks {
    pub failures: Vec<(TheoryItem, String)>,
}

struct Ctx<'a> {
    s: &'a FiniteObservationStructure,
    p: &'a Property,
    out: PropertyChecks,
}

impl Ctx<'_> {
    fn check(&mut self, item: TheoryItem, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && !self.out.failures.iter().any(|(i, _)| *i == item) {
            let msg = format!("P = {}: {}", self.s.show_property(self.p), detail());
            self.out.failures.push((item, msg));
        }
    }
}

/// `n` supersets of `p` (all of them when few enough, starting with `p`).
fn supersets(
    s: &FiniteObservationStructure,
    p: &Property,
    limit: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Property> {
    let free: Vec<usize> = (0..s.num_behaviours()).filter(|&a| !p.contains(a)).collect();
    if free.len() <= limit {
        (0u64..1 << free.len())
            .map(|m| {
                let mut q = p.clone();
                q.extend(free.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &a)| a));
                q
            })
            .collect()
    } else {
        (0..1 << limit.min(6))
            .map(|_| {
                let mut q = p.clone();
                q.extend(free.iter().copied().filter(|_| rng.random_bool(0.5)));
                q
            })
            .collect()
    }
}

/// Runs every single-property check on `p`.
pub fn check_property(
    s: &FiniteObservationStructure,
    p: &Property,
    directed: bool,
    cfg: &SuiteConfig,
) -> PropertyChecks {
    let mut rng = ChaCha8Rng::seed_from_u64(
        cfg.seed ^ p.ones().fold(0u64, |h, a| h.wrapping_mul(31).wrapping_add(a as u64 + 1)),
    );
    let mut cx = Ctx { s, p, out: PropertyChecks::default() };
    let no = s.num_observations();
    let name = |o: usize| &s.observation_names()[o];
    let comp = s.complement(p);
    let m = s.monitor_table(p);
    let mc = s.monitor_table(&comp);
    let c = s.completions(p);
    let mg = s.monitor_table(&c.gamma);
    let md = s.monitor_table(&c.delta);
    let g = s.generalized_table(p);
    let monitorable = s.is_monitorable(p);
    let safety = s.is_safety(p);

    for o in 0..no {
        for q in s.refinements(o).ones() {
            cx.check(TheoryItem::Proposition1, m[o].leq(m[q]) && g[o].leq(g[q]), || {
                format!("{} ◁ {} but {} then {} ({} then {})", name(o), name(q), m[o], m[q], g[o], g[q])
            });
        }
        cx.check(TheoryItem::Lemma2, mc[o] == m[o].invert(), || {
            format!("at {} M_P = {} and M_(B∖P) = {}", name(o), m[o], mc[o])
        });
        cx.check(TheoryItem::Theorem1, (m[o] == Verdict3::No) == (mg[o] == Verdict3::No), || {
            format!("at {} M_P = {} but M_Γ(P) = {}", name(o), m[o], mg[o])
        });
        cx.check(TheoryItem::Corollary2, (m[o] == Verdict3::Yes) == (md[o] == Verdict3::Yes), || {
            format!("at {} M_P = {} but M_Δ(P) = {}", name(o), m[o], md[o])
        });
        let ugly = s.refinements(o).ones().all(|q| m[q] == Verdict3::Unknown);
        let split = mg[o] == Verdict3::Yes && md[o] == Verdict3::No;
        cx.check(TheoryItem::Proposition7Forward, !split || ugly, || {
            format!("completions split at {} but a refinement determines P", name(o))
        });
        if directed {
            cx.check(TheoryItem::Proposition7Backward, !ugly || split, || {
                format!(
                    "no refinement of {} determines P but M_Γ(P) = {}, M_Δ(P) = {}",
                    name(o),
                    mg[o],
                    md[o]
                )
            });
            cx.check(TheoryItem::Theorem2, s.refinements(o).ones().any(|q| g[q].is_final()), || {
                format!("no refinement of {} reaches a final verdict", name(o))
            });
        }
    }

    cx.check(TheoryItem::Proposition2, !monitorable || s.is_monitorable(&comp), || {
        String::from("monitorable but its complement is not")
    });
    let nr_in_p = c.gamma.is_subset(p);
    cx.check(TheoryItem::Proposition3, safety == nr_in_p, || {
        format!("safety = {safety} but NR(P) ⊆ P = {nr_in_p}")
    });
    if directed {
        cx.check(TheoryItem::Proposition4, !safety || monitorable, || {
            String::from("safety but not monitorable")
        });
        let giveup = g.iter().position(|&v| v == Verdict6::Giveup);
        cx.check(TheoryItem::Remark1, monitorable == giveup.is_none(), || match giveup {
            Some(o) => format!("monitorable but giveup at {}", name(o)),
            None => String::from("not monitorable yet no giveup"),
        });
    }
    cx.check(TheoryItem::Proposition5, p.is_subset(&c.gamma) && s.nr_closure(&c.gamma) == c.gamma, || {
        format!("NR(P) = {} is not extensive or not idempotent", s.show_property(&c.gamma))
    });
    let cosafety = s.is_cosafety(p);
    let comp_safety = s.is_safety(&comp);
    cx.check(TheoryItem::Proposition6, cosafety == comp_safety, || {
        format!("cosafety = {cosafety} but complement safety = {comp_safety}")
    });
    cx.check(TheoryItem::Corollary2, c.delta.is_subset(p) && p.is_subset(&c.gamma), || {
        format!("Δ(P) = {} ⊄ P or P ⊄ Γ(P)", s.show_property(&c.delta))
    });

    let ups = supersets(s, p, cfg.superset_limit, &mut rng);
    let enumerated = ups.len() == 1 << (s.num_behaviours() - p.count_ones(..)).min(63);
    let mut meet = s.full_property();
    for q in &ups {
        for o in 0..no {
            let mq = s.abstract_monitor(q, o);
            cx.check(
                TheoryItem::Lemma1,
                (m[o] != Verdict3::Yes || mq == Verdict3::Yes)
                    && (mq != Verdict3::No || m[o] == Verdict3::No),
                || format!("Q = {}, at {} M_P = {} and M_Q = {}", s.show_property(q), name(o), m[o], mq),
            );
        }
        let nr_q = s.nr_closure(q);
        cx.check(TheoryItem::Proposition5, c.gamma.is_subset(&nr_q), || {
            format!("not monotone: Q = {} has NR(Q) = {}", s.show_property(q), s.show_property(&nr_q))
        });
        if s.is_safety(q) {
            meet.intersect_with(q);
            cx.check(TheoryItem::Corollary1, c.gamma.is_subset(q), || {
                format!("NR(P) = {} ⊄ safety superset {}", s.show_property(&c.gamma), s.show_property(q))
            });
        }
    }
    if enumerated {
        cx.check(TheoryItem::Corollary1, meet == c.gamma, || {
            format!(
                "NR(P) = {} but meet of safety supersets = {}",
                s.show_property(&c.gamma),
                s.show_property(&meet)
            )
        });
    }
    cx.check(TheoryItem::Corollary1, s.is_safety(&c.gamma), || String::from("NR(P) is not safety"));

    // Δ(P) against the union of cosafety subsets, through complements.
    let downs: Vec<Property> =
        supersets(s, &comp, cfg.superset_limit, &mut rng).into_iter().map(|q| s.complement(&q)).collect();
    let mut join = s.empty_property();
    for q in &downs {
        if s.is_cosafety(q) {
            join.union_with(q);
            cx.check(TheoryItem::Corollary2, q.is_subset(&c.delta), || {
                format!("cosafety subset {} ⊄ Δ(P)", s.show_property(q))
            });
        }
    }
    if downs.len() == 1 << p.count_ones(..).min(63) {
        cx.check(TheoryItem::Corollary2, join == c.delta, || {
            format!(
                "Δ(P) = {} but join of cosafety subsets = {}",
                s.show_property(&c.delta),
                s.show_property(&join)
            )
        });
    }
    cx.out
}

/// Intersections of safety properties are safety properties. The family
/// is `NR(P)` over the given properties; all pairs are checked when it is
/// small, random subfamilies otherwise.
pub fn check_lemma3(s: &FiniteObservationStructure, properties: &[Property], cfg: &SuiteConfig) -> Outcome {
    let mut seen: HashSet<Property> = HashSet::new();
    let family: Vec<Property> =
        properties.iter().map(|p| s.nr_closure(p)).filter(|q| seen.insert(q.clone())).collect();
    let fail = |qs: &[&Property], meet: &FixedBitSet| Outcome::Fail {
        counterexample: format!(
            "{} has intersection {}, which is not safety",
            qs.iter().map(|q| s.show_property(q)).collect::<Vec<_>>().join(" ∩ "),
            s.show_property(meet)
        ),
    };
    let mut checked = 0;
    let mut everything = s.full_property();
    for q in &family {
        everything.intersect_with(q);
    }
    if !s.is_safety(&everything) {
        return fail(&family.iter().collect::<Vec<_>>(), &everything);
    }
    if family.len() <= 300 {
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                let mut meet = a.clone();
                meet.intersect_with(b);
                checked += 1;
                if !s.is_safety(&meet) {
                    return fail(&[a, b], &meet);
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x1e33a3);
        for _ in 0..cfg.samples {
            let k = rng.random_range(2..=5);
            let qs: Vec<&Property> = (0..k).map(|_| &family[rng.random_range(0..family.len())]).collect();
            let mut meet = s.full_property();
            for q in &qs {
                meet.intersect_with(q);
            }
            checked += 1;
            if !s.is_safety(&meet) {
                return fail(&qs, &meet);
            }
        }
    }
    Outcome::Pass { checked: checked + 1 }
}

/// Pass/fail matrix for one structure.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub directed: bool,
    /// Whether every property was checked.
    pub exhaustive: bool,
    pub properties: usize,
    pub items: Vec<(TheoryItem, Outcome)>,
}

impl SuiteReport {
    /// A report with nothing checked yet.
    pub fn new(directed: bool, exhaustive: bool) -> SuiteReport {
        let items = TheoryItem::ALL
            .iter()
            .map(|&i| {
                let o = if i.needs_directed() && !directed {
                    Outcome::Skipped { reason: "structure is not directed" }
                } else {
                    Outcome::Pass { checked: 0 }
                };
                (i, o)
            })
            .collect();
        SuiteReport { directed, exhaustive, properties: 0, items }
    }

    fn slot(&mut self, item: TheoryItem) -> &mut Outcome {
        &mut self.items.iter_mut().find(|(i, _)| *i == item).expect("every item has a slot").1
    }

    /// Records the checks of one property.
    pub fn absorb(&mut self, checks: PropertyChecks) {
        self.properties += 1;
        for (item, msg) in checks.failures {
            let slot = self.slot(item);
            if !slot.is_fail() {
                *slot = Outcome::Fail { counterexample: msg };
            }
        }
        for (item, outcome) in &mut self.items {
            if let Outcome::Pass { checked } = outcome {
                if *item != TheoryItem::Lemma3 {
                    *checked += 1;
                }
            }
        }
    }

    pub fn set(&mut self, item: TheoryItem, outcome: Outcome) {
        *self.slot(item) = outcome;
    }

    pub fn outcome(&self, item: TheoryItem) -> &Outcome {
        &self.items.iter().find(|(i, _)| *i == item).expect("every item has a slot").1
    }

    /// No item failed.
    pub fn passed(&self) -> bool {
        self.items.iter().all(|(_, o)| !o.is_fail())
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (item, outcome) in &self.items {
            write!(f, "{:<30} ", item.name())?;
            match outcome {
                Outcome::Pass { checked } => writeln!(f, "pass ({checked} checked)")?,
                Outcome::Fail { counterexample } => writeln!(f, "FAIL {counterexample}")?,
                Outcome::Skipped { reason } => writeln!(f, "skipped ({reason})")?,
            }
        }
        Ok(())
    }
}

/// Runs the whole suite sequentially.
pub fn run_suite(s: &FiniteObservationStructure, cfg: &SuiteConfig) -> SuiteReport {
    let directed = s.is_directed();
    let properties = sample_properties(s, cfg);
    let mut report = SuiteReport::new(directed, s.num_behaviours() <= cfg.exhaustive_limit);
    for p in &properties {
        report.absorb(check_property(s, p, directed, cfg));
    }
    report.set(TheoryItem::Lemma3, check_lemma3(s, &properties, cfg));
    report
}
