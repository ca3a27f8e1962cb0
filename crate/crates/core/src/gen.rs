//! Seeded random instances: formulas, terms, traces, automata and
//! observation structures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alphabet::{Event, Interpretation, Prop};
use crate::automata::Nba;
use crate::ltl::Formula;
use crate::ltnu::Term;

pub use crate::obslab::random_structure;

/// The generator used everywhere: ChaCha8 seeded from a `u64`.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_prop<R: Rng + ?Sized>(rng: &mut R, interp: &Interpretation) -> Prop {
    Prop(rng.random_range(0..interp.num_props()) as u8)
}

/// A formula with exactly `size` nodes (as counted by [`Formula::size`]).
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, interp: &Interpretation, size: usize) -> Formula {
    assert!(size >= 1);
    match size {
        1 => match rng.random_range(0..6) {
            0 => Formula::True,
            1 => Formula::False,
            2 | 3 => Formula::Prop(random_prop(rng, interp)),
            _ => Formula::NotProp(random_prop(rng, interp)),
        },
        2 => Formula::next(random_formula(rng, interp, 1)),
        _ if rng.random_range(0..5) == 0 => Formula::next(random_formula(rng, interp, size - 1)),
        _ => {
            let left = rng.random_range(1..size - 1);
            let a = random_formula(rng, interp, left);
            let b = random_formula(rng, interp, size - 1 - left);
            match rng.random_range(0..4) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::until(a, b),
                _ => Formula::release(a, b),
            }
        }
    }
}

/// A closed contractive term with exactly `size` nodes.
pub fn random_term<R: Rng + ?Sized>(rng: &mut R, interp: &Interpretation, size: usize) -> Term {
    assert!(size >= 1);
    // (name, guarded) for every enclosing binder.
    fn go<R: Rng + ?Sized>(
        rng: &mut R,
        interp: &Interpretation,
        size: usize,
        scope: &mut Vec<(String, bool)>,
    ) -> Term {
        if size == 1 {
            let guarded: Vec<&String> = scope.iter().filter(|(_, g)| *g).map(|(x, _)| x).collect();
            if !guarded.is_empty() && rng.random_bool(0.4) {
                return Term::Var(guarded[rng.random_range(0..guarded.len())].clone());
            }
            return match rng.random_range(0..6) {
                0 => Term::Top,
                1 => Term::Bot,
                2 | 3 => Term::Prop(random_prop(rng, interp)),
                _ => Term::CoProp(random_prop(rng, interp)),
            };
        }
        let choice = if size == 2 { rng.random_range(0..2) } else { rng.random_range(0..5) };
        match choice {
            0 => {
                let saved: Vec<bool> = scope.iter().map(|(_, g)| *g).collect();
                scope.iter_mut().for_each(|(_, g)| *g = true);
                let body = go(rng, interp, size - 1, scope);
                scope.iter_mut().zip(saved).for_each(|((_, g), s)| *g = s);
                Term::next(body)
            }
            1 => {
                let x = format!("X{}", scope.len());
                scope.push((x.clone(), false));
                let body = go(rng, interp, size - 1, scope);
                scope.pop();
                Term::Nu(x, alloc::boxed::Box::new(body))
            }
            _ => {
                let left = rng.random_range(1..size - 1);
                let a = go(rng, interp, left, scope);
                let b = go(rng, interp, size - 1 - left, scope);
                if choice == 2 {
                    Term::and(a, b)
                } else {
                    Term::or(a, b)
                }
            }
        }
    }
    go(rng, interp, size, &mut Vec::new())
}

/// A trace of `len` events drawn uniformly from the alphabet.
pub fn random_trace<R: Rng + ?Sized>(rng: &mut R, interp: &Interpretation, len: usize) -> Vec<Event> {
    let n = interp.num_events();
    (0..len).map(|_| interp.event(rng.random_range(0..n))).collect()
}

/// An NBA with `states` states over `events` events in which every state
/// is final, reachable from the initial state 0 and on a cycle, so that
/// safety closure leaves it unchanged.
pub fn random_nba<R: Rng + ?Sized>(rng: &mut R, states: usize, events: usize) -> Nba {
    assert!(states >= 1 && events >= 1);
    let mut a = Nba::new(states, events);
    a.set_initial(0);
    let mut order: Vec<usize> = (1..states).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    for (i, &q) in order.iter().enumerate() {
        a.set_accepting(q, true);
        let next = order[(i + 1) % states];
        a.add_transition(q, rng.random_range(0..events), next);
    }
    let extra = rng.random_range(0..=states * events);
    for _ in 0..extra {
        let q = rng.random_range(0..states);
        a.add_transition(q, rng.random_range(0..events), rng.random_range(0..states));
    }
    a
}
