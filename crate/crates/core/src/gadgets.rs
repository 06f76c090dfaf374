//! Reductions from W-SAT: the `ab^k` gadget, the sink-state gadget for
//! `ab^k a^l`, their chain-extended forms for arbitrary words, and the strongly
//! connected composition with a sink device.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automata::{Automaton, Coloring, ColoringBuilder};
use crate::device::{build_sink_device, SinkDevice};
use crate::error::{Error, Result};
use crate::graph::{Graph, StateSet};
use crate::word::{classify, Letter, Word, WordClass};
use crate::wsat::{check, Assignment, WSatInstance};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    T3,
    T4,
    Sc,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t3" => Ok(Family::T3),
            "t4" => Ok(Family::T4),
            "sc" => Ok(Family::Sc),
            other => Err(Error::Parse(format!("unknown gadget family {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum CoreKind {
    /// `a b^k`, k >= 2
    T3 { k: usize },
    /// `a b^k a^l`, k, l >= 1
    T4 { k: usize, l: usize },
}

/// Index arithmetic for the gadget of a normalized core word.
#[derive(Clone, Debug)]
struct Core {
    kind: CoreKind,
    vars: usize,
    clauses: Vec<[usize; 4]>,
    block: usize,
    clause_base: usize,
    sink: usize,
    states: usize,
}

impl Core {
    fn new(kind: CoreKind, phi: &WSatInstance) -> Core {
        let (vars, m) = (phi.variables(), phi.clauses().len());
        let block = match kind {
            CoreKind::T3 { k } => k,
            CoreKind::T4 { k, l } => k + l + 1,
        };
        let clause_base = vars * block;
        let d_states = match kind {
            CoreKind::T3 { .. } => 3,
            CoreKind::T4 { .. } => 1,
        };
        Core {
            kind,
            vars,
            clauses: phi.clauses().to_vec(),
            block,
            clause_base,
            sink: clause_base + 3 * m,
            states: clause_base + 3 * m + d_states,
        }
    }

    fn x(&self, i: usize) -> usize {
        i * self.block
    }

    fn v(&self, i: usize, j: usize) -> usize {
        i * self.block + j
    }

    fn clause(&self, j: usize) -> [usize; 3] {
        let c = self.clause_base + 3 * j;
        [c, c + 1, c + 2]
    }

    fn d(&self, j: usize) -> usize {
        self.sink + j
    }

    /// T3: the state the unused letter falls into (`D_0` for even `k`, `D_1` for odd).
    fn fall(&self, k: usize) -> usize {
        self.d(k % 2)
    }

    /// T3: `V_{i,j}`, with `V_{i,k}` meaning `D_0`.
    fn chain(&self, i: usize, j: usize, k: usize) -> usize {
        if j >= k {
            self.d(0)
        } else {
            self.v(i, j)
        }
    }

    /// T4 per-variable states: the branching state, `W`, `W'`, and the `Z` entry.
    fn t4_parts(&self, i: usize) -> (usize, usize, usize, usize) {
        let CoreKind::T4 { k, l } = self.kind else {
            unreachable!()
        };
        let base = i * self.block;
        let branch = base + k - 1;
        let w = base + k;
        let z1 = if l >= 2 { base + k + 2 } else { self.sink };
        (branch, w, w + 1, z1)
    }

    fn targets(&self) -> Vec<[usize; 2]> {
        let mut t = vec![[usize::MAX; 2]; self.states];
        match self.kind {
            CoreKind::T3 { k } => {
                let f = self.fall(k);
                for i in 0..self.vars {
                    t[self.x(i)] = [self.v(i, 1), f];
                    t[self.v(i, 1)] = [self.chain(i, 2, k), self.x(i)];
                    for j in 2..k {
                        t[self.v(i, j)] = [self.chain(i, j + 1, k), f];
                    }
                }
                let d = [self.d(0), self.d(1), self.d(2)];
                t[d[0]] = [d[1], d[2]];
                t[d[1]] = [d[0], d[2]];
                t[d[2]] = [d[0], d[1]];
            }
            CoreKind::T4 { k, l } => {
                for i in 0..self.vars {
                    let base = i * self.block;
                    for j in 0..k - 1 {
                        t[base + j] = [base + j + 1; 2];
                    }
                    let (branch, w, w2, z1) = self.t4_parts(i);
                    t[branch] = [z1, w];
                    t[w] = [w2; 2];
                    t[w2] = [z1; 2];
                    for j in 1..l {
                        let z = base + k + 1 + j;
                        t[z] = [if j + 1 < l { z + 1 } else { self.sink }; 2];
                    }
                }
                t[self.sink] = [self.sink; 2];
            }
        }
        for (j, c) in self.clauses.iter().enumerate() {
            let [cj, c1, c2] = self.clause(j);
            t[cj] = [c1, c2];
            t[c1] = [self.x(c[0]), self.x(c[1])];
            t[c2] = [self.x(c[2]), self.x(c[3])];
        }
        debug_assert!(t.iter().flatten().all(|&s| s < self.states));
        t
    }

    fn roles(&self) -> Vec<String> {
        let mut r = vec![String::new(); self.states];
        for i in 0..self.vars {
            let n = i + 1;
            r[self.x(i)] = format!("x_{n}");
            match self.kind {
                CoreKind::T3 { k } => {
                    for j in 1..k {
                        r[self.v(i, j)] = format!("V_{n},{j}");
                    }
                }
                CoreKind::T4 { k, l } => {
                    for j in 1..k {
                        r[self.v(i, j)] = format!("V_{n},{j}");
                    }
                    let (_, w, w2, _) = self.t4_parts(i);
                    r[w] = format!("W_{n}");
                    r[w2] = format!("W'_{n}");
                    for j in 1..l {
                        r[i * self.block + k + 1 + j] = format!("Z_{n},{j}");
                    }
                }
            }
        }
        for j in 0..self.clauses.len() {
            let [c, c1, c2] = self.clause(j);
            r[c] = format!("C_{}", j + 1);
            r[c1] = format!("C'_{}", j + 1);
            r[c2] = format!("C''_{}", j + 1);
        }
        let d_states = self.states - self.sink;
        for j in 0..d_states {
            r[self.d(j)] = format!("D_{j}");
        }
        r
    }

    /// The coloring a satisfying assignment induces, in normalized letters.
    fn color(&self, xi: &Assignment, b: &mut ColoringBuilder<'_>) {
        match self.kind {
            CoreKind::T3 { k } => {
                let f = self.fall(k);
                for i in 0..self.vars {
                    let (on, off) = if xi.get(i) {
                        (Letter::A, Letter::B)
                    } else {
                        (Letter::B, Letter::A)
                    };
                    b.set_target(self.x(i), self.v(i, 1), on);
                    b.set_target(self.v(i, 1), self.x(i), off);
                    for j in 2..k {
                        b.set_target(self.v(i, j), f, Letter::A);
                    }
                }
                let d = [self.d(0), self.d(1), self.d(2)];
                b.set_target(d[0], d[1], Letter::B);
                b.set_target(d[1], d[0], Letter::B);
                if k % 2 == 0 {
                    b.set_target(d[2], d[1], Letter::B);
                } else {
                    b.set_target(d[2], d[0], Letter::B);
                }
            }
            CoreKind::T4 { .. } => {
                for i in 0..self.vars {
                    let (branch, _, _, z1) = self.t4_parts(i);
                    let letter = if xi.get(i) { Letter::A } else { Letter::B };
                    b.set_target(branch, z1, letter);
                }
            }
        }
        for (j, c) in self.clauses.iter().enumerate() {
            let [cj, c1, c2] = self.clause(j);
            let (chosen, rest, pos) = if xi.get(c[0]) || xi.get(c[1]) {
                (c1, c2, 0)
            } else {
                (c2, c1, 2)
            };
            b.set_target(cj, chosen, Letter::A);
            // chosen: b to a true variable, a to the false one beside it
            let true_slot = (0..2).find(|&s| xi.get(c[pos + s])).unwrap();
            b.set_slot(chosen, true_slot, Letter::B);
            let rest_pos = 2 - pos;
            let false_slot = (0..2).find(|&s| !xi.get(c[rest_pos + s])).unwrap();
            b.set_slot(rest, false_slot, Letter::A);
        }
    }
}

/// Placement of the device and connector states in the strongly connected composition.
#[derive(Clone, Debug)]
struct ScLayout {
    device: SinkDevice,
    q1: usize,
    q1_letter: Letter,
    f_base: usize,
    beta: usize,
    /// Number of states of the sink-state gadget being embedded.
    z_states: usize,
    z_sink: usize,
}

impl ScLayout {
    fn device_index(&self, d: usize) -> usize {
        if d == self.device.q0 {
            self.z_sink
        } else {
            self.z_states + d - 1
        }
    }

    fn f(&self, i: usize, j: usize) -> usize {
        self.f_base + (i - 1) * (self.beta + 1) + j
    }

    /// Targets of the completed device state `d`, in `[a, b]` order.
    fn device_targets(&self, d: usize) -> [usize; 2] {
        Letter::ALL.map(|x| match self.device.automaton.step(d, x) {
            Some(t) => self.device_index(t),
            None if (d, x) == (self.q1, self.q1_letter) => self.f(1, 0),
            None => self.device_index(self.device.q0),
        })
    }
}

#[derive(Clone, Debug)]
struct Layout {
    core: Core,
    prefix_len: usize,
    /// Core letters are swapped relative to the word the sink-state gadget reads.
    core_mirrored: bool,
    /// The composition was built for the letter-swapped word.
    outer_mirrored: bool,
    sc: Option<ScLayout>,
}

/// A reduction output: the graph, its role annotations, and its source.
#[derive(Clone, Debug)]
pub struct GadgetGraph {
    pub family: Family,
    pub graph: Graph,
    pub roles: Vec<String>,
    pub word: Word,
    pub wsat: WSatInstance,
    layout: Layout,
}

#[derive(Serialize, Deserialize)]
struct GadgetJson {
    states: usize,
    edges: Vec<[usize; 2]>,
    roles: BTreeMap<usize, String>,
    word: Word,
    wsat: WSatInstance,
    family: Family,
}

fn validate_instance(phi: &WSatInstance) -> Result<()> {
    if phi.clauses().is_empty() {
        return Err(Error::NoClauses);
    }
    if let Some(&v) = phi.unused_variables().first() {
        return Err(Error::UnusedVariable(v));
    }
    Ok(())
}

fn normalize(w: &Word) -> (Word, bool) {
    if w.first() == Some(Letter::B) {
        (w.swap_letters(), true)
    } else {
        (w.clone(), false)
    }
}

fn wrong_class(w: &Word, expected: &'static str) -> Error {
    Error::WrongWordClass {
        word: w.clone(),
        class: classify(w),
        expected,
    }
}

/// Gadget for `a b^k` (k >= 2).
pub fn build_gadget_t3(k: usize, phi: &WSatInstance) -> Result<GadgetGraph> {
    if k < 2 {
        return Err(Error::Precondition(format!("k = {k}, need k >= 2")));
    }
    let w = Word::new(
        std::iter::once(Letter::A)
            .chain(vec![Letter::B; k])
            .collect(),
    );
    build_gadget_for_word(&w, phi)
}

/// Sink-state gadget for `a b^k a^l` (k, l >= 1).
pub fn build_gadget_t4(k: usize, l: usize, phi: &WSatInstance) -> Result<GadgetGraph> {
    if k < 1 || l < 1 {
        return Err(Error::Precondition(format!(
            "k = {k}, l = {l}, need both >= 1"
        )));
    }
    let w = Word::new(
        std::iter::once(Letter::A)
            .chain(vec![Letter::B; k])
            .chain(vec![Letter::A; l])
            .collect(),
    );
    build_gadget_for_word(&w, phi)
}

/// Gadget for any word of class T3 or T4: the gadget of its last two or three runs,
/// with a chain of fresh states in front of every state absorbing the rest.
pub fn build_gadget_for_word(w: &Word, phi: &WSatInstance) -> Result<GadgetGraph> {
    validate_instance(phi)?;
    let runs = w.runs();
    let r = runs.len();
    // the core is x y^k (T3) or x y^k x^l (T4) over the last runs; mirrored if x is b
    let (family, kind, core_len, x) = match classify(w) {
        WordClass::T3 => {
            let k = runs[1].1;
            (Family::T3, CoreKind::T3 { k }, 1 + k, runs[0].0)
        }
        WordClass::T4 => {
            let (k, l) = (runs[r - 2].1, runs[r - 1].1);
            (Family::T4, CoreKind::T4 { k, l }, 1 + k + l, runs[r - 3].0)
        }
        _ => return Err(wrong_class(w, "T3 or T4")),
    };
    let core_mirrored = x == Letter::B;
    let core = Core::new(kind, phi);
    let prefix_len = w.len() - core_len;
    let core_graph = Graph::from_targets(&core.targets())?;
    let graph = core_graph.chain_extension(prefix_len)?;
    let core_roles = core.roles();
    let mut roles = core_roles.clone();
    for role in &core_roles {
        for j in 1..=prefix_len {
            roles.push(format!("chain[{role},{j}]"));
        }
    }
    Ok(GadgetGraph {
        family,
        graph,
        roles,
        word: w.clone(),
        wsat: phi.clone(),
        layout: Layout {
            core,
            prefix_len,
            core_mirrored,
            outer_mirrored: false,
            sc: None,
        },
    })
}

/// Strongly connected composition of the sink-state gadget with the device `D(w)`.
pub fn build_gadget_sc(w: &Word, phi: &WSatInstance) -> Result<GadgetGraph> {
    if classify(w) != WordClass::T4 {
        return Err(wrong_class(w, "T4"));
    }
    let (norm, mirrored) = normalize(w);
    let device = build_sink_device(&norm)?;
    let Some(&(q1, q1_letter)) = device.automaton.undefined().first() else {
        return Err(Error::CompleteDevice(w.clone()));
    };
    let z = build_gadget_for_word(&norm, phi)?;
    let n = z.graph.state_count();
    let z_sink = z.layout.core.sink;
    let beta = norm.runs()[1].1;
    let mut sc = ScLayout {
        device,
        q1,
        q1_letter,
        f_base: 0,
        beta,
        z_states: n,
        z_sink,
    };
    sc.f_base = n + sc.device.state_count() - 1;
    let total = sc.f_base + n * (beta + 1);

    let mut targets = vec![[usize::MAX; 2]; total];
    for s in (0..n).filter(|&s| s != z_sink) {
        targets[s] = z.graph.slot_targets(s);
    }
    for d in 0..sc.device.state_count() {
        targets[sc.device_index(d)] = sc.device_targets(d);
    }
    let others: Vec<usize> = (0..n).filter(|&s| s != z_sink).collect();
    let q0 = z_sink;
    for i in 1..=n {
        for j in 0..beta {
            let next_row = if i == n { 1 } else { i + 1 };
            targets[sc.f(i, j)] = [sc.f(i, j + 1), sc.f(next_row, 0)];
        }
        targets[sc.f(i, beta)] = match others.get(i - 1) {
            Some(&s) => [q0, s],
            None => [q0, q0],
        };
    }
    let graph = Graph::from_targets(&targets)?;

    let mut roles = vec![String::new(); total];
    for s in (0..n).filter(|&s| s != z_sink) {
        roles[s] = z.roles[s].clone();
    }
    for (d, label) in sc.device.labels.iter().enumerate() {
        let name = if label.is_empty() {
            "ε".to_string()
        } else {
            label.to_string()
        };
        roles[sc.device_index(d)] = format!("dev[{name}]");
    }
    roles[q0] = "D_0=dev[ε]".to_string();
    for i in 1..=n {
        for j in 0..=beta {
            roles[sc.f(i, j)] = format!("F_{i},{j}");
        }
    }
    let mut layout = z.layout;
    layout.outer_mirrored = mirrored;
    layout.sc = Some(sc);
    Ok(GadgetGraph {
        family: Family::Sc,
        graph,
        roles,
        word: w.clone(),
        wsat: phi.clone(),
        layout,
    })
}

/// Rebuilds a gadget from its family, word and instance.
pub fn build_gadget(family: Family, w: &Word, phi: &WSatInstance) -> Result<GadgetGraph> {
    let g = match family {
        Family::Sc => build_gadget_sc(w, phi)?,
        _ => build_gadget_for_word(w, phi)?,
    };
    if g.family != family {
        return Err(wrong_class(
            w,
            if family == Family::T3 { "T3" } else { "T4" },
        ));
    }
    Ok(g)
}

impl GadgetGraph {
    /// Length of the chains absorbing the word's prefix.
    pub fn prefix_len(&self) -> usize {
        self.layout.prefix_len
    }

    /// Whether the core gadget reads the letter-swapped word.
    pub fn mirrored(&self) -> bool {
        self.layout.core_mirrored != self.layout.outer_mirrored
    }

    /// States of the W-SAT gadget proper (without chains, device or connectors).
    pub fn core_states(&self) -> usize {
        self.layout.core.states
    }

    pub fn variable_state(&self, i: usize) -> usize {
        self.layout.core.x(i)
    }

    /// The state every reset coloring of the core gadget collapses onto.
    pub fn sink_state(&self) -> usize {
        self.layout.core.sink
    }

    pub fn role_index(&self, role: &str) -> Option<usize> {
        self.roles.iter().position(|r| r == role)
    }

    /// A coloring under which the gadget's word is a reset word.
    pub fn color(&self, xi: &Assignment) -> Result<Coloring> {
        if !check(&self.wsat, xi)? {
            return Err(Error::UnsatisfyingAssignment);
        }
        let core = &self.layout.core;
        let mut b = ColoringBuilder::new(&self.graph)?;
        core.color(xi, &mut b);
        let core_part = b.finish();
        let core_part = if self.layout.core_mirrored {
            core_part.swap_letters()
        } else {
            core_part
        };
        let mut b = ColoringBuilder::new(&self.graph)?;
        if let Some(sc) = &self.layout.sc {
            for d in 0..sc.device.state_count() {
                let [ta, tb] = sc.device_targets(d);
                let s = sc.device_index(d);
                b.set_target(s, ta, Letter::A);
                b.set_target(s, tb, Letter::B);
            }
            for i in 1..=sc.z_states {
                for j in 0..sc.beta {
                    b.set_target(sc.f(i, j), sc.f(i, j + 1), Letter::B);
                }
                b.set_target(sc.f(i, sc.beta), sc.z_sink, Letter::A);
            }
        }
        let outer_part = b.finish();
        let sink_is_device = self.layout.sc.is_some();
        let c = Coloring::new(
            (0..self.graph.state_count())
                .map(|s| {
                    if s < core.states && !(sink_is_device && s == core.sink) {
                        core_part.pair(s)
                    } else {
                        outer_part.pair(s)
                    }
                })
                .collect(),
        );
        let c = if self.layout.outer_mirrored {
            c.swap_letters()
        } else {
            c
        };
        if !c.to_automaton(&self.graph)?.is_reset_word(&self.word) {
            return Err(Error::Internal(format!(
                "gadget coloring does not reset with {}",
                self.word
            )));
        }
        Ok(c)
    }

    /// Reads the assignment off a reset coloring: a variable is true iff its state
    /// lies in the image of `ab` (normalized letters) within the core gadget.
    pub fn extract_assignment(&self, c: &Coloring) -> Result<Assignment> {
        let core = &self.layout.core;
        let full = c.to_automaton(&self.graph)?;
        let mirrored = self.mirrored();
        let letter = |x: Letter| if mirrored { x.other() } else { x };
        let transitions = (0..core.states)
            .map(|s| {
                if s == core.sink && self.layout.sc.is_some() {
                    return [s, s];
                }
                Letter::ALL.map(|x| full.step(s, letter(x)))
            })
            .collect::<Vec<_>>();
        if transitions.iter().flatten().any(|&t| t >= core.states) {
            return Err(Error::Internal("core gadget is not closed".into()));
        }
        let core_aut = Automaton::new(transitions)?;
        let image = core_aut.apply(&StateSet::full(core.states), &"ab".parse().unwrap());
        Ok(Assignment::new(
            (0..core.vars).map(|i| image.contains(core.x(i))).collect(),
        ))
    }

    pub fn to_json(&self) -> String {
        let j = GadgetJson {
            states: self.graph.state_count(),
            edges: self.graph.edges().iter().map(|&(s, t)| [s, t]).collect(),
            roles: self.roles.iter().cloned().enumerate().collect(),
            word: self.word.clone(),
            wsat: self.wsat.clone(),
            family: self.family,
        };
        serde_json::to_string(&j).expect("gadget serializes")
    }

    /// Parses a gadget file and rebuilds it, rejecting files whose graph differs from
    /// the construction for the recorded family, word and instance.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: GadgetJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let g = build_gadget(j.family, &j.word, &j.wsat)?;
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|&[s, t]| (s, t)).collect();
        if g.graph.state_count() != j.states || g.graph.edges() != edges.as_slice() {
            return Err(Error::Parse(
                "graph does not match the construction for its family, word and instance".into(),
            ));
        }
        Ok(g)
    }
}

pub fn color_gadget_t3(g: &GadgetGraph, xi: &Assignment) -> Result<Coloring> {
    expect_family(g, Family::T3)?;
    g.color(xi)
}

pub fn color_gadget_t4(g: &GadgetGraph, xi: &Assignment) -> Result<Coloring> {
    expect_family(g, Family::T4)?;
    g.color(xi)
}

pub fn color_gadget_sc(g: &GadgetGraph, xi: &Assignment) -> Result<Coloring> {
    expect_family(g, Family::Sc)?;
    g.color(xi)
}

pub fn extract_assignment(g: &GadgetGraph, c: &Coloring) -> Result<Assignment> {
    g.extract_assignment(c)
}

fn expect_family(g: &GadgetGraph, family: Family) -> Result<()> {
    if g.family == family {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "gadget family is {:?}, expected {family:?}",
            g.family
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::brute_srcw;
    use crate::wsat::solve;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn phi(n: usize, c: &[[usize; 4]]) -> WSatInstance {
        WSatInstance::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn t3_sizes_and_roles() {
        let g = build_gadget_t3(2, &phi(2, &[[0, 1, 0, 1]])).unwrap();
        assert_eq!(g.graph.state_count(), 10);
        assert_eq!(g.role_index("x_2"), Some(2));
        assert_eq!(g.role_index("C''_1"), Some(6));
        assert_eq!(g.role_index("D_0"), Some(7));
        assert!(g.graph.is_aperiodic());
        assert!((0..10).all(|s| !g.graph.has_self_loop(s)));
    }

    #[test]
    fn t3_contract_on_small_cases() {
        for (n, c) in [(2, vec![[0, 1, 0, 1]]), (1, vec![[0, 0, 0, 0]])] {
            let p = phi(n, &c);
            let g = build_gadget_t3(2, &p).unwrap();
            let brute = brute_srcw(&g.graph, &w("abb")).unwrap();
            let sat = solve(&p).unwrap();
            assert_eq!(brute.is_some(), sat.is_some());
            if let Some(c) = brute {
                assert!(check(&p, &g.extract_assignment(&c).unwrap()).unwrap());
            }
            if let Some(xi) = sat {
                let c = g.color(&xi).unwrap();
                assert_eq!(
                    c.to_automaton(&g.graph).unwrap().image(&g.word).to_vec(),
                    vec![g.sink_state()]
                );
            }
        }
    }

    #[test]
    fn t3_colorings_for_longer_words() {
        let p = phi(3, &[[0, 1, 2, 0], [1, 2, 1, 2]]);
        let xi = solve(&p).unwrap().unwrap();
        for k in 2..7 {
            let g = build_gadget_t3(k, &p).unwrap();
            assert!(g.graph.is_aperiodic());
            g.color(&xi).unwrap();
        }
    }

    #[test]
    fn t4_structure() {
        for (k, l) in [(1, 1), (2, 1), (1, 3), (3, 2)] {
            let p = phi(2, &[[0, 1, 0, 1]]);
            let g = build_gadget_t4(k, l, &p).unwrap();
            assert!(g.graph.sink_states().contains(g.sink_state()));
            assert_eq!(g.graph.state_count(), 2 * (k + l + 1) + 3 + 1);
            g.color(&solve(&p).unwrap().unwrap()).unwrap();
        }
        assert!(build_gadget_t4(0, 1, &phi(1, &[[0, 0, 0, 0]])).is_err());
    }

    #[test]
    fn t4_reversed_variant_for_false_variables() {
        let p = phi(2, &[[0, 1, 0, 1]]);
        let g = build_gadget_t4(2, 2, &p).unwrap();
        let xi = Assignment::new(vec![false, true]);
        let c = g.color(&xi).unwrap();
        let v = g.role_index("V_1,1").unwrap();
        let z = g.role_index("Z_1,1").unwrap();
        assert_eq!(g.graph.edge(c.edge(v, Letter::B)).1, z);
        let v2 = g.role_index("V_2,1").unwrap();
        let z2 = g.role_index("Z_2,1").unwrap();
        assert_eq!(g.graph.edge(c.edge(v2, Letter::A)).1, z2);
    }

    #[test]
    fn rejects_bad_instances() {
        assert_eq!(
            build_gadget_t3(2, &phi(2, &[[0, 0, 0, 0]])).unwrap_err(),
            Error::UnusedVariable(1)
        );
        assert_eq!(
            build_gadget_t3(2, &phi(1, &[])).unwrap_err(),
            Error::NoClauses
        );
        assert!(build_gadget_t3(1, &phi(1, &[[0, 0, 0, 0]])).is_err());
        let g = build_gadget_t3(2, &phi(1, &[[0, 0, 0, 0]])).unwrap();
        assert_eq!(
            g.color(&Assignment::new(vec![true])).unwrap_err(),
            Error::UnsatisfyingAssignment
        );
    }

    #[test]
    fn general_words_use_chains_and_mirroring() {
        let p = phi(2, &[[0, 1, 0, 1]]);
        let xi = solve(&p).unwrap().unwrap();
        for word in ["aabbb", "bbaa", "babba", "bbaab", "abaab", "aabab"] {
            let g = build_gadget_for_word(&w(word), &p).unwrap();
            let c = g.color(&xi).unwrap();
            assert_eq!(g.extract_assignment(&c).unwrap(), xi, "{word}");
        }
        assert!(build_gadget_for_word(&w("aab"), &p).is_err());
    }

    #[test]
    fn sc_composition() {
        let p = phi(2, &[[0, 1, 0, 1]]);
        let g = build_gadget_sc(&w("abba"), &p).unwrap();
        assert!(g.graph.is_strongly_connected());
        assert!(g.graph.is_aperiodic());
        g.graph.require_out_degree_two().unwrap();
        let xi = solve(&p).unwrap().unwrap();
        let c = g.color(&xi).unwrap();
        assert_eq!(g.extract_assignment(&c).unwrap(), xi);
        assert_eq!(
            build_gadget_sc(&w("abab"), &p).unwrap_err(),
            Error::CompleteDevice(w("abab"))
        );
        assert!(build_gadget_sc(&w("baab"), &p).unwrap().color(&xi).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let p = phi(2, &[[0, 1, 0, 1]]);
        let g = build_gadget_sc(&w("aba"), &p).unwrap();
        let back = GadgetGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back.graph, g.graph);
        assert_eq!(back.roles, g.roles);
        let tampered = g.to_json().replacen("\"edges\":[[0,", "\"edges\":[[1,", 1);
        assert!(GadgetGraph::from_json(&tampered).is_err());
    }
}
