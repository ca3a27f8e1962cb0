//! Hash-consed terms, derivatives, proof search and residual sets.
//!
//! Conjunctions are stored n-ary, flattened, sorted and deduplicated, with
//! `top` dropped and `bot` absorbing; an empty conjunction is `top`. Under
//! this normalisation the derivatives of a closed contractive term range
//! over a finite set, so residual sets can be interned and stepped with
//! memoised transitions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::Term;
use crate::alphabet::{Interpretation, Prop};
use crate::lasso::LassoWord;
use crate::verdict::Verdict3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TermId(u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetId(u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    Top,
    Bot,
    Prop(Prop),
    CoProp(Prop),
    And(Vec<TermId>),
    Or(TermId, TermId),
    Next(TermId),
    Var(u32),
    Nu(u32, TermId),
}

const TOP: TermId = TermId(0);
const BOT: TermId = TermId(1);

/// Shared state for working with terms over one interpretation.
#[derive(Clone, Debug)]
pub struct Engine {
    interp: Interpretation,
    events: Vec<u32>,
    nodes: Vec<Node>,
    /// Free variables of every node, sorted.
    free: Vec<Vec<u32>>,
    ids: HashMap<Node, TermId>,
    vars: Vec<String>,
    subst_memo: HashMap<(TermId, u32, TermId), TermId>,
    deriv_memo: HashMap<(TermId, usize), Vec<TermId>>,
    valid_memo: HashMap<Vec<TermId>, bool>,
    clause_memo: HashMap<TermId, Vec<Clause>>,
    sets: Vec<Vec<TermId>>,
    set_ids: HashMap<Vec<TermId>, SetId>,
    set_next: HashMap<(SetId, usize), SetId>,
    set_verdict: Vec<Option<Verdict3>>,
}

/// A saturated sequent: positive and negated propositions, and the bodies
/// of its `o`-terms (sorted).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
struct Clause {
    pos: u32,
    neg: u32,
    next: Vec<TermId>,
}

impl Clause {
    fn weight(&self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones() + self.next.len() as u32
    }

    fn within(&self, other: &Clause) -> bool {
        self.pos & !other.pos == 0
            && self.neg & !other.neg == 0
            && self.next.iter().all(|t| other.next.binary_search(t).is_ok())
    }
}

/// Drops duplicates and every clause that contains another.
fn minimise(mut cs: Vec<Clause>) -> Vec<Clause> {
    cs.sort_unstable_by_key(Clause::weight);
    let mut out: Vec<Clause> = Vec::new();
    for c in cs {
        if !out.iter().any(|k| k.within(&c)) {
            out.push(c);
        }
    }
    out
}

fn merge(a: &[TermId], b: &[TermId]) -> Vec<TermId> {
    let mut out: Vec<TermId> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Node kinds of the proof-search graph.
enum Goal {
    Proved,
    Failed,
    /// Valid iff every child is.
    All(Vec<usize>),
}

impl Engine {
    pub fn new(interp: &Interpretation) -> Engine {
        let mut e = Engine {
            interp: interp.clone(),
            events: interp.events().map(|e| e.0).collect(),
            nodes: Vec::new(),
            free: Vec::new(),
            ids: HashMap::new(),
            vars: Vec::new(),
            subst_memo: HashMap::new(),
            deriv_memo: HashMap::new(),
            valid_memo: HashMap::new(),
            clause_memo: HashMap::new(),
            sets: Vec::new(),
            set_ids: HashMap::new(),
            set_next: HashMap::new(),
            set_verdict: Vec::new(),
        };
        e.node(Node::Top);
        e.node(Node::Bot);
        e
    }

    pub fn interpretation(&self) -> &Interpretation {
        &self.interp
    }

    /// Number of distinct terms interned so far.
    pub fn num_terms(&self) -> usize {
        self.nodes.len()
    }

    /// Number of distinct residual sets interned so far.
    pub fn num_sets(&self) -> usize {
        self.sets.len()
    }

    fn node(&mut self, n: Node) -> TermId {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let free = match &n {
            Node::Top | Node::Bot | Node::Prop(_) | Node::CoProp(_) => Vec::new(),
            Node::Var(x) => vec![*x],
            Node::Next(a) => self.free[a.0 as usize].clone(),
            Node::Or(a, b) => union(&self.free[a.0 as usize], &self.free[b.0 as usize]),
            Node::And(ts) => ts.iter().fold(Vec::new(), |acc, t| union(&acc, &self.free[t.0 as usize])),
            Node::Nu(x, a) => self.free[a.0 as usize].iter().copied().filter(|y| y != x).collect(),
        };
        let id = TermId(self.nodes.len() as u32);
        self.nodes.push(n.clone());
        self.free.push(free);
        self.ids.insert(n, id);
        id
    }

    fn var_id(&mut self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i as u32,
            None => {
                self.vars.push(name.into());
                self.vars.len() as u32 - 1
            }
        }
    }

    pub fn top(&self) -> TermId {
        TOP
    }

    pub fn bot(&self) -> TermId {
        BOT
    }

    /// Normalised conjunction.
    pub fn and(&mut self, terms: &[TermId]) -> TermId {
        let mut flat = Vec::with_capacity(terms.len());
        for &t in terms {
            match &self.nodes[t.0 as usize] {
                Node::Top => {}
                Node::Bot => return BOT,
                Node::And(ts) => flat.extend_from_slice(ts),
                _ => flat.push(t),
            }
        }
        flat.sort_unstable();
        flat.dedup();
        match flat.len() {
            0 => TOP,
            1 => flat[0],
            _ => self.node(Node::And(flat)),
        }
    }

    pub fn or(&mut self, a: TermId, b: TermId) -> TermId {
        self.node(Node::Or(a, b))
    }

    /// Interns a syntax tree. The term should be closed and contractive
    /// ([`Term::check`]); open terms are accepted but have no derivatives
    /// at free variables.
    pub fn intern(&mut self, t: &Term) -> TermId {
        match t {
            Term::Top => TOP,
            Term::Bot => BOT,
            Term::Prop(p) => self.node(Node::Prop(*p)),
            Term::CoProp(p) => self.node(Node::CoProp(*p)),
            Term::And(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.and(&[a, b])
            }
            Term::Or(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                self.or(a, b)
            }
            Term::Next(a) => {
                let a = self.intern(a);
                self.node(Node::Next(a))
            }
            Term::Var(x) => {
                let x = self.var_id(x);
                self.node(Node::Var(x))
            }
            Term::Nu(x, a) => {
                let x = self.var_id(x);
                let a = self.intern(a);
                self.node(Node::Nu(x, a))
            }
        }
    }

    /// Syntax tree of an interned term; n-ary conjunctions come out
    /// left-nested.
    pub fn term(&self, t: TermId) -> Term {
        match &self.nodes[t.0 as usize] {
            Node::Top => Term::Top,
            Node::Bot => Term::Bot,
            Node::Prop(p) => Term::Prop(*p),
            Node::CoProp(p) => Term::CoProp(*p),
            Node::And(ts) => Term::conj(ts.iter().map(|&s| self.term(s))),
            Node::Or(a, b) => Term::or(self.term(*a), self.term(*b)),
            Node::Next(a) => Term::next(self.term(*a)),
            Node::Var(x) => Term::Var(self.vars[*x as usize].clone()),
            Node::Nu(x, a) => Term::Nu(self.vars[*x as usize].clone(), alloc::boxed::Box::new(self.term(*a))),
        }
    }

    /// `t{s/X}`.
    fn subst(&mut self, t: TermId, x: u32, s: TermId) -> TermId {
        if self.free[t.0 as usize].binary_search(&x).is_err() {
            return t;
        }
        if let Some(&r) = self.subst_memo.get(&(t, x, s)) {
            return r;
        }
        let r = match self.nodes[t.0 as usize].clone() {
            Node::Var(_) => s,
            Node::Next(a) => {
                let a = self.subst(a, x, s);
                self.node(Node::Next(a))
            }
            Node::Or(a, b) => {
                let (a, b) = (self.subst(a, x, s), self.subst(b, x, s));
                self.or(a, b)
            }
            Node::And(ts) => {
                let ts: Vec<TermId> = ts.iter().map(|&u| self.subst(u, x, s)).collect();
                self.and(&ts)
            }
            Node::Nu(y, a) => {
                // y != x, since x is free in t.
                let a = self.subst(a, x, s);
                self.node(Node::Nu(y, a))
            }
            Node::Top | Node::Bot | Node::Prop(_) | Node::CoProp(_) => t,
        };
        self.subst_memo.insert((t, x, s), r);
        r
    }

    /// `νX.t ↦ t{νX.t/X}`; other terms are returned unchanged.
    pub fn unfold(&mut self, t: TermId) -> TermId {
        match self.nodes[t.0 as usize] {
            Node::Nu(x, body) => self.subst(body, x, t),
            _ => t,
        }
    }

    /// `{ s | t →e s }` for the event with index `event`, sorted.
    pub fn derivatives(&mut self, t: TermId, event: usize) -> Vec<TermId> {
        if let Some(ds) = self.deriv_memo.get(&(t, event)) {
            return ds.clone();
        }
        let bits = self.events[event];
        let mut out = match self.nodes[t.0 as usize].clone() {
            Node::Top => vec![TOP],
            Node::Bot | Node::Var(_) => Vec::new(),
            Node::Prop(p) => {
                if bits & (1 << p.0) != 0 {
                    vec![TOP]
                } else {
                    Vec::new()
                }
            }
            Node::CoProp(p) => {
                if bits & (1 << p.0) == 0 {
                    vec![TOP]
                } else {
                    Vec::new()
                }
            }
            Node::Next(a) => vec![a],
            Node::Or(a, b) => {
                let mut ds = self.derivatives(a, event);
                ds.extend(self.derivatives(b, event));
                ds
            }
            Node::And(ts) => {
                let mut combos: Vec<Vec<TermId>> = vec![Vec::new()];
                for u in ts {
                    let ds = self.derivatives(u, event);
                    let mut next = Vec::with_capacity(combos.len() * ds.len());
                    for c in &combos {
                        for &d in &ds {
                            let mut c2 = c.clone();
                            c2.push(d);
                            next.push(c2);
                        }
                    }
                    combos = next;
                    if combos.is_empty() {
                        break;
                    }
                }
                combos.iter().map(|c| self.and(c)).collect()
            }
            Node::Nu(..) => {
                let u = self.unfold(t);
                self.derivatives(u, event)
            }
        };
        out.sort_unstable();
        out.dedup();
        self.deriv_memo.insert((t, event), out.clone());
        out
    }

    /// Whether `t` has no derivative on any event.
    pub fn is_stuck(&mut self, t: TermId) -> bool {
        (0..self.events.len()).all(|e| self.derivatives(t, e).is_empty())
    }

    /// `⊢ t`: whether `⟦t⟧ = E^ω`.
    pub fn is_valid(&mut self, t: TermId) -> bool {
        self.is_valid_sequent(&[t])
    }

    /// `⊢ t1, …, tn`: whether every word satisfies some `ti`.
    ///
    /// Sequents are saturated by the invertible rules (`top` closes, `bot`
    /// is dropped, `|` splits, `nu` unfolds, `&` branches) into clauses of
    /// literals and `o`-terms. A clause whose literals cover every event is
    /// an axiom; a clause that contains another one is dropped, since it
    /// follows by weakening. The remaining clauses continue with their
    /// `o`-terms stripped. The resulting finite goal graph is solved as a
    /// greatest fixpoint, so every cycle counts as a proof.
    pub fn is_valid_sequent(&mut self, terms: &[TermId]) -> bool {
        let mut root: Vec<TermId> = terms.to_vec();
        root.sort_unstable();
        root.dedup();
        if let Some(&v) = self.valid_memo.get(&root) {
            return v;
        }

        let mut index: HashMap<Vec<TermId>, usize> = HashMap::new();
        let mut seqs: Vec<Vec<TermId>> = vec![root.clone()];
        let mut goals: Vec<Goal> = Vec::new();
        index.insert(root, 0);

        while goals.len() < seqs.len() {
            let seq = seqs[goals.len()].clone();
            if let Some(&v) = self.valid_memo.get(&seq) {
                goals.push(if v { Goal::Proved } else { Goal::Failed });
                continue;
            }
            let clauses = self.saturate(&seq);
            if clauses.iter().any(|c| c.next.is_empty()) {
                goals.push(Goal::Failed);
                continue;
            }
            let ids = clauses
                .into_iter()
                .map(|c| {
                    *index.entry(c.next.clone()).or_insert_with(|| {
                        seqs.push(c.next);
                        seqs.len() - 1
                    })
                })
                .collect();
            goals.push(Goal::All(ids));
        }

        // Greatest fixpoint: propagate failures backwards.
        let n = goals.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut valid = vec![true; n];
        let mut work = Vec::new();
        for (i, g) in goals.iter().enumerate() {
            match g {
                Goal::Failed => {
                    valid[i] = false;
                    work.push(i);
                }
                Goal::All(cs) => {
                    for &c in cs {
                        preds[c].push(i);
                    }
                }
                Goal::Proved => {}
            }
        }
        while let Some(i) = work.pop() {
            for &p in &preds[i] {
                if valid[p] {
                    valid[p] = false;
                    work.push(p);
                }
            }
        }
        for (seq, v) in seqs.into_iter().zip(valid.iter()) {
            self.valid_memo.insert(seq, *v);
        }
        valid[0]
    }

    fn covers(&self, c: &Clause) -> bool {
        !self.events.iter().any(|&e| e & c.pos == 0 && e & c.neg == c.neg)
    }

    /// The open clauses of a sequent: it is provable iff every one is.
    fn saturate(&mut self, seq: &[TermId]) -> Vec<Clause> {
        let mut acc = vec![Clause::default()];
        for &t in seq {
            let cs = self.clauses(t);
            acc = self.product(&acc, &cs);
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    fn clauses(&mut self, t: TermId) -> Vec<Clause> {
        if let Some(cs) = self.clause_memo.get(&t) {
            return cs.clone();
        }
        let single = |c: Clause| vec![c];
        let cs = match self.nodes[t.0 as usize].clone() {
            Node::Top => Vec::new(),
            Node::Bot | Node::Var(_) => single(Clause::default()),
            Node::Prop(p) => single(Clause { pos: 1 << p.0, ..Clause::default() }),
            Node::CoProp(p) => single(Clause { neg: 1 << p.0, ..Clause::default() }),
            Node::Next(a) => single(Clause { next: vec![a], ..Clause::default() }),
            Node::Or(a, b) => {
                let (x, y) = (self.clauses(a), self.clauses(b));
                self.product(&x, &y)
            }
            Node::And(ts) => {
                let mut all = Vec::new();
                for u in ts {
                    all.extend(self.clauses(u));
                }
                minimise(all)
            }
            Node::Nu(..) => {
                let u = self.unfold(t);
                self.clauses(u)
            }
        };
        let cs: Vec<Clause> = cs.into_iter().filter(|c| !self.covers(c)).collect();
        self.clause_memo.insert(t, cs.clone());
        cs
    }

    fn product(&self, xs: &[Clause], ys: &[Clause]) -> Vec<Clause> {
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for x in xs {
            for y in ys {
                let c = Clause { pos: x.pos | y.pos, neg: x.neg | y.neg, next: merge(&x.next, &y.next) };
                if !self.covers(&c) {
                    out.push(c);
                }
            }
        }
        minimise(out)
    }

    /// Interns a residual set.
    pub fn set(&mut self, terms: &[TermId]) -> SetId {
        let mut key = terms.to_vec();
        key.sort_unstable();
        key.dedup();
        if let Some(&id) = self.set_ids.get(&key) {
            return id;
        }
        let id = SetId(self.sets.len() as u32);
        self.sets.push(key.clone());
        self.set_verdict.push(None);
        self.set_ids.insert(key, id);
        id
    }

    pub fn set_members(&self, s: SetId) -> &[TermId] {
        &self.sets[s.0 as usize]
    }

    /// The residual set after reading one more event.
    pub fn step_set(&mut self, s: SetId, event: usize) -> SetId {
        if let Some(&t) = self.set_next.get(&(s, event)) {
            return t;
        }
        let members = self.sets[s.0 as usize].clone();
        let mut out = Vec::new();
        for t in members {
            out.extend(self.derivatives(t, event));
        }
        let t = self.set(&out);
        self.set_next.insert((s, event), t);
        t
    }

    /// Verdict of a residual set: `yes` when the set, read as one sequent,
    /// is provable; `no` when every member is stuck; `unknown` otherwise.
    pub fn set_verdict(&mut self, s: SetId) -> Verdict3 {
        if let Some(v) = self.set_verdict[s.0 as usize] {
            return v;
        }
        let members = self.sets[s.0 as usize].clone();
        let v = if members.iter().all(|&t| self.is_stuck(t)) {
            Verdict3::No
        } else if self.is_valid_sequent(&members) {
            Verdict3::Yes
        } else {
            Verdict3::Unknown
        };
        self.set_verdict[s.0 as usize] = Some(v);
        v
    }

    /// Whether `t` reduces infinitely often along the lasso `w`: a cycle is
    /// reachable in the graph of (term, position) pairs linked by
    /// derivatives.
    pub fn run_exists(&mut self, t: TermId, w: &LassoWord) -> bool {
        let letters: Vec<Option<usize>> =
            (0..w.positions()).map(|i| self.interp.event_index(w.at(i))).collect();
        let mut index: HashMap<(TermId, usize), usize> = HashMap::new();
        let mut keys = vec![(t, 0usize)];
        let mut succ: Vec<Vec<usize>> = Vec::new();
        index.insert((t, 0), 0);
        while succ.len() < keys.len() {
            let (u, pos) = keys[succ.len()];
            let ds = match letters[pos] {
                Some(e) => self.derivatives(u, e),
                None => Vec::new(),
            };
            let next_pos = w.succ(pos);
            let out = ds
                .into_iter()
                .map(|d| {
                    *index.entry((d, next_pos)).or_insert_with(|| {
                        keys.push((d, next_pos));
                        keys.len() - 1
                    })
                })
                .collect();
            succ.push(out);
        }
        // Nodes with an infinite path: repeatedly discard nodes without
        // surviving successors.
        let n = succ.len();
        let mut alive = vec![true; n];
        let mut count: Vec<usize> = succ.iter().map(Vec::len).collect();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, ws) in succ.iter().enumerate() {
            for &w in ws {
                preds[w].push(v);
            }
        }
        let mut work: Vec<usize> = (0..n).filter(|&v| count[v] == 0).collect();
        for &v in &work {
            alive[v] = false;
        }
        while let Some(v) = work.pop() {
            for &p in &preds[v] {
                count[p] -= 1;
                if count[p] == 0 && alive[p] {
                    alive[p] = false;
                    work.push(p);
                }
            }
        }
        alive[0]
    }
}

fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}
