//! Colorings, complete and partial automata, and the exhaustive SRCW oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{tarjan, Graph, StateSet};
use crate::word::{Letter, Word};

/// The edges a state labels with `a` and with `b`, as edge-list positions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct EdgePair {
    pub a_edge: usize,
    pub b_edge: usize,
}

impl EdgePair {
    pub fn edge(&self, letter: Letter) -> usize {
        match letter {
            Letter::A => self.a_edge,
            Letter::B => self.b_edge,
        }
    }
}

/// Per-state assignment of the letters to the two out-edges.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(Vec<EdgePair>);

impl Coloring {
    pub fn new(pairs: Vec<EdgePair>) -> Self {
        Coloring(pairs)
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.0
    }

    pub fn pair(&self, state: usize) -> EdgePair {
        self.0[state]
    }

    pub fn edge(&self, state: usize, letter: Letter) -> usize {
        self.0[state].edge(letter)
    }

    /// Letter carried by edge position `edge`, if the edge is labeled at all.
    pub fn letter_of(&self, g: &Graph, edge: usize) -> Option<Letter> {
        let s = g.edge(edge).0;
        let pair = self.0.get(s)?;
        if pair.a_edge == edge {
            Some(Letter::A)
        } else if pair.b_edge == edge {
            Some(Letter::B)
        } else {
            None
        }
    }

    pub fn swap_letters(&self) -> Coloring {
        Coloring(
            self.0
                .iter()
                .map(|p| EdgePair {
                    a_edge: p.b_edge,
                    b_edge: p.a_edge,
                })
                .collect(),
        )
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.0.len() != g.state_count() {
            return Err(Error::InvalidColoring(format!(
                "{} entries for {} states",
                self.0.len(),
                g.state_count()
            )));
        }
        for (s, p) in self.0.iter().enumerate() {
            let out = g.out_edges(s);
            let ok = out.len() == 2
                && p.a_edge != p.b_edge
                && out.contains(&p.a_edge)
                && out.contains(&p.b_edge);
            if !ok {
                return Err(Error::InvalidColoring(format!(
                    "state {s} does not label its two out-edges with distinct letters"
                )));
            }
        }
        Ok(())
    }

    pub fn to_automaton(&self, g: &Graph) -> Result<Automaton> {
        self.validate(g)?;
        Automaton::new(
            self.0
                .iter()
                .map(|p| [g.edge(p.a_edge).1, g.edge(p.b_edge).1])
                .collect(),
        )
    }
}

/// Incrementally fixes letters on edges; unfixed states fall back to `a` on slot 0.
pub struct ColoringBuilder<'g> {
    graph: &'g Graph,
    a_slot: Vec<Option<usize>>,
}

impl<'g> ColoringBuilder<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        graph.require_out_degree_two()?;
        Ok(ColoringBuilder {
            graph,
            a_slot: vec![None; graph.state_count()],
        })
    }

    /// Labels slot `slot` (0 or 1) of `state` with `letter`.
    pub fn set_slot(&mut self, state: usize, slot: usize, letter: Letter) -> &mut Self {
        let a = if letter == Letter::A { slot } else { 1 - slot };
        self.a_slot[state] = Some(a);
        self
    }

    /// Labels edge position `edge` with `letter`.
    pub fn set_edge(&mut self, edge: usize, letter: Letter) -> &mut Self {
        let s = self.graph.edge(edge).0;
        let slot = self.graph.slots(s).iter().position(|&e| e == edge).unwrap();
        self.set_slot(s, slot, letter)
    }

    /// Labels `letter` on the first out-edge of `state` leading to `target`.
    pub fn set_target(&mut self, state: usize, target: usize, letter: Letter) -> &mut Self {
        let slot = self
            .graph
            .slot_targets(state)
            .iter()
            .position(|&t| t == target)
            .unwrap_or_else(|| panic!("no edge {state} -> {target}"));
        self.set_slot(state, slot, letter)
    }

    pub fn is_set(&self, state: usize) -> bool {
        self.a_slot[state].is_some()
    }

    pub fn finish(&self) -> Coloring {
        Coloring(
            (0..self.graph.state_count())
                .map(|s| {
                    let [e0, e1] = self.graph.slots(s);
                    match self.a_slot[s].unwrap_or(0) {
                        0 => EdgePair {
                            a_edge: e0,
                            b_edge: e1,
                        },
                        _ => EdgePair {
                            a_edge: e1,
                            b_edge: e0,
                        },
                    }
                })
                .collect(),
        )
    }
}

/// A complete deterministic automaton over `{a, b}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Automaton {
    transitions: Vec<[usize; 2]>,
}

impl Automaton {
    pub fn new(transitions: Vec<[usize; 2]>) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if let Some(bad) = transitions.iter().flatten().find(|&&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "target {bad} out of range"
            )));
        }
        Ok(Automaton { transitions })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn step(&self, state: usize, letter: Letter) -> usize {
        self.transitions[state][letter.index()]
    }

    pub fn run(&self, state: usize, w: &Word) -> usize {
        w.letters().iter().fold(state, |s, &l| self.step(s, l))
    }

    /// Image of `set` under `w`, reading left to right.
    pub fn apply(&self, set: &StateSet, w: &Word) -> StateSet {
        let n = self.state_count();
        let mut current = set.clone();
        for &l in w.letters() {
            let mut next = StateSet::empty(n);
            for s in current.iter() {
                next.insert(self.step(s, l));
            }
            current = next;
        }
        current
    }

    pub fn image(&self, w: &Word) -> StateSet {
        self.apply(&StateSet::full(self.state_count()), w)
    }

    pub fn is_reset_word(&self, w: &Word) -> bool {
        self.image(w).len() == 1
    }

    /// Pair-merging criterion: every pair of states can be sent to a common state.
    pub fn is_synchronizing(&self) -> bool {
        let n = self.state_count();
        let idx = |p: usize, q: usize| p * n + q;
        // predecessors in the pair automaton, on unordered pairs stored as (min, max)
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n * n];
        for p in 0..n {
            for q in p + 1..n {
                for l in Letter::ALL {
                    let (x, y) = (self.step(p, l), self.step(q, l));
                    let (x, y) = (x.min(y), x.max(y));
                    preds[idx(x, y)].push(idx(p, q));
                }
            }
        }
        let mut mergeable = vec![false; n * n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            mergeable[idx(s, s)] = true;
            queue.push_back(idx(s, s));
        }
        while let Some(v) = queue.pop_front() {
            for &u in &preds[v] {
                if !mergeable[u] {
                    mergeable[u] = true;
                    queue.push_back(u);
                }
            }
        }
        (0..n).all(|p| (p + 1..n).all(|q| mergeable[idx(p, q)]))
    }
}

/// A partial automaton: transitions may be undefined.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartialAutomaton {
    transitions: Vec<[Option<usize>; 2]>,
}

impl PartialAutomaton {
    pub fn new(transitions: Vec<[Option<usize>; 2]>) -> Result<Self> {
        let n = transitions.len();
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if let Some(bad) = transitions.iter().flatten().flatten().find(|&&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!(
                "target {bad} out of range"
            )));
        }
        Ok(PartialAutomaton { transitions })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions[state][letter.index()]
    }

    pub fn run(&self, state: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(state, |s, &l| self.step(s, l))
    }

    pub fn is_incomplete(&self) -> bool {
        self.transitions.iter().flatten().any(|t| t.is_none())
    }

    /// Undefined transitions in state-then-letter order.
    pub fn undefined(&self) -> Vec<(usize, Letter)> {
        let mut out = Vec::new();
        for (s, row) in self.transitions.iter().enumerate() {
            for l in Letter::ALL {
                if row[l.index()].is_none() {
                    out.push((s, l));
                }
            }
        }
        out
    }

    pub fn is_strongly_connected(&self) -> bool {
        let adj: Vec<Vec<usize>> = self
            .transitions
            .iter()
            .map(|row| row.iter().flatten().copied().collect())
            .collect();
        let roots: Vec<usize> = (0..adj.len()).collect();
        tarjan(&adj, &roots).0 == 1
    }
}

/// The coloring search space of an out-degree-2 graph.
///
/// States whose two out-edges share a target are "fixed": swapping their letters
/// does not change the automaton, so only one labeling is emitted. Coloring number
/// `i` labels the `j`-th free state (ascending state order) with `a` on slot 1 when
/// bit `j` of `i` is set, and on slot 0 otherwise; the lowest free state toggles
/// fastest.
#[derive(Clone, Debug)]
pub struct ColoringSpace {
    targets: Vec<[usize; 2]>,
    slots: Vec<[usize; 2]>,
    bit: Vec<Option<u32>>,
    free: u32,
}

impl ColoringSpace {
    pub fn new(g: &Graph) -> Result<Self> {
        g.require_out_degree_two()?;
        let n = g.state_count();
        let targets: Vec<[usize; 2]> = (0..n).map(|s| g.slot_targets(s)).collect();
        let mut free = 0;
        let bit = targets
            .iter()
            .map(|t| {
                (t[0] != t[1]).then(|| {
                    free += 1;
                    free - 1
                })
            })
            .collect();
        Ok(ColoringSpace {
            targets,
            slots: (0..n).map(|s| g.slots(s)).collect(),
            bit,
            free,
        })
    }

    pub fn free_states(&self) -> u32 {
        self.free
    }

    /// Number of colorings, or `None` if it does not fit in a `u64`.
    pub fn len(&self) -> Option<u64> {
        1u64.checked_shl(self.free)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn swapped(&self, index: u64, state: usize) -> bool {
        self.bit[state].is_some_and(|b| index.checked_shr(b).unwrap_or(0) & 1 == 1)
    }

    pub fn coloring(&self, index: u64) -> Coloring {
        Coloring(
            self.slots
                .iter()
                .enumerate()
                .map(|(s, &[e0, e1])| {
                    if self.swapped(index, s) {
                        EdgePair {
                            a_edge: e1,
                            b_edge: e0,
                        }
                    } else {
                        EdgePair {
                            a_edge: e0,
                            b_edge: e1,
                        }
                    }
                })
                .collect(),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = Coloring> + '_ {
        let len = self.len().expect("coloring space too large to enumerate");
        (0..len).map(move |i| self.coloring(i))
    }

    fn target(&self, index: u64, state: usize, letter: Letter) -> usize {
        let slot = letter.index() ^ self.swapped(index, state) as usize;
        self.targets[state][slot]
    }

    /// Whether coloring `index` sends the whole state set to one state under `w`.
    pub fn resets(&self, index: u64, w: &Word) -> bool {
        let n = self.targets.len();
        if n <= 64 {
            let mut mask: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
            for &l in w.letters() {
                if mask.count_ones() == 1 {
                    return true;
                }
                let mut next = 0u64;
                let mut rest = mask;
                while rest != 0 {
                    let s = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    next |= 1 << self.target(index, s, l);
                }
                mask = next;
            }
            mask.count_ones() == 1
        } else {
            let mut current: Vec<usize> = (0..n).collect();
            let mut seen = vec![usize::MAX; n];
            for (round, &l) in w.letters().iter().enumerate() {
                let mut next = Vec::with_capacity(current.len());
                for &s in &current {
                    let t = self.target(index, s, l);
                    if seen[t] != round {
                        seen[t] = round;
                        next.push(t);
                    }
                }
                current = next;
            }
            current.len() == 1
        }
    }
}

/// Largest number of free states the exhaustive search accepts.
pub const BRUTE_FREE_LIMIT: u32 = 40;

pub fn enumerate_colorings(g: &Graph) -> Result<impl Iterator<Item = Coloring>> {
    let space = ColoringSpace::new(g)?;
    if space.len().is_none() {
        return Err(Error::ResourceLimit(format!(
            "{} free states",
            space.free_states()
        )));
    }
    let len = space.len().unwrap();
    Ok((0..len).map(move |i| space.coloring(i)))
}

pub fn brute_srcw(g: &Graph, w: &Word) -> Result<Option<Coloring>> {
    brute_srcw_with(g, w, Exec::default())
}

/// First coloring (in enumeration order) under which `w` is a reset word.
pub fn brute_srcw_with(g: &Graph, w: &Word, exec: Exec) -> Result<Option<Coloring>> {
    let space = ColoringSpace::new(g)?;
    if space.free_states() > BRUTE_FREE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "{} free states exceed the limit of {BRUTE_FREE_LIMIT}",
            space.free_states()
        )));
    }
    let len = space.len().unwrap();
    let found = exec::find_first(exec, len, |i| space.resets(i, w));
    let witness = found.map(|i| space.coloring(i));
    if cfg!(debug_assertions) {
        if let Some(c) = &witness {
            debug_assert!(c.to_automaton(g)?.is_reset_word(w));
        }
    }
    Ok(witness)
}

/// Number of colorings under which `w` resets; used for diagnostics and tests.
pub fn count_reset_colorings(g: &Graph, w: &Word) -> Result<u64> {
    let space = ColoringSpace::new(g)?;
    let len = space
        .len()
        .ok_or_else(|| Error::ResourceLimit("too many colorings".into()))?;
    Ok((0..len).filter(|&i| space.resets(i, w)).count() as u64)
}
