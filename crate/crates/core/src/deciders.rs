//! Polynomial-time deciders: `x^k`, `x^k y`, and `abb` on strongly connected graphs.

use serde::{Deserialize, Serialize};

use crate::automata::{brute_srcw_with, Coloring, ColoringBuilder};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::graph::{Graph, StateSet};
use crate::twosat::{twosat_solve, Lit, TwoSatFormula};
use crate::word::{classify, Letter, Word, WordClass};

fn verified(g: &Graph, w: &Word, c: Coloring) -> Result<Coloring> {
    if c.to_automaton(g)?.is_reset_word(w) {
        Ok(c)
    } else {
        Err(Error::Internal(format!(
            "constructed coloring does not reset with {w}"
        )))
    }
}

fn wrong_class(w: &Word, expected: &'static str) -> Error {
    Error::WrongWordClass {
        word: w.clone(),
        class: classify(w),
        expected,
    }
}

/// Lowest slot of `s` whose target is strictly closer under `dist`.
fn descending_slot(g: &Graph, dist: &[Option<usize>], s: usize) -> Option<usize> {
    let d = dist[s]?;
    g.slot_targets(s)
        .iter()
        .position(|&t| dist[t].is_some_and(|dt| dt + 1 == d))
}

/// Decides `w = x^k`: some state with a loop lies within distance `k` of everything.
pub fn decide_t1(g: &Graph, w: &Word) -> Result<Option<Coloring>> {
    g.require_out_degree_two()?;
    if classify(w) != WordClass::T1 {
        return Err(wrong_class(w, "T1"));
    }
    let n = g.state_count();
    let Some(x) = w.first() else {
        return if n == 1 {
            Ok(Some(ColoringBuilder::new(g)?.finish()))
        } else {
            Err(Error::EmptyWord)
        };
    };
    let k = w.len();
    for q0 in 0..n {
        let Some(loop_slot) = g.slot_targets(q0).iter().position(|&t| t == q0) else {
            continue;
        };
        let dist = g.distances_to(q0);
        if !dist.iter().all(|d| d.is_some_and(|d| d <= k)) {
            continue;
        }
        let mut b = ColoringBuilder::new(g)?;
        for s in 0..n {
            let slot = if s == q0 {
                loop_slot
            } else {
                descending_slot(g, &dist, s).expect("finite distance")
            };
            b.set_slot(s, slot, x);
        }
        return verified(g, w, b.finish()).map(Some);
    }
    Ok(None)
}

/// Decides `w = x^k y` with `k >= 1`.
pub fn decide_t2(g: &Graph, w: &Word) -> Result<Option<Coloring>> {
    g.require_out_degree_two()?;
    let runs = w.runs();
    if classify(w) != WordClass::T2 {
        return Err(wrong_class(w, "T2"));
    }
    let (x, k) = runs[0];
    let y = x.other();
    let n = g.state_count();
    for q0 in 0..n {
        let dist = g.distances_to(q0);
        if !dist.iter().all(|d| d.is_some_and(|d| d <= k + 1)) {
            continue;
        }
        let in_q1: Vec<bool> = (0..n).map(|s| g.successors(s).any(|t| t == q0)).collect();
        // for s in Q1: the slot spent on q0, and the remaining edge if it stays in Q1
        let mut removed = vec![usize::MAX; n];
        let mut h1: Vec<Option<usize>> = vec![None; n];
        for s in (0..n).filter(|&s| in_q1[s]) {
            let targets = g.slot_targets(s);
            let r = targets.iter().position(|&t| t == q0).unwrap();
            removed[s] = r;
            let other = targets[1 - r];
            if in_q1[other] {
                h1[s] = Some(other);
            }
        }
        let in_r = functional_reaches_cycle(&h1);
        let r_set = StateSet::from_states(n, (0..n).filter(|&s| in_r[s]));
        if r_set.is_empty() {
            continue;
        }
        let to_r = g.distances_to_set(&r_set);
        if !to_r.iter().all(|d| d.is_some_and(|d| d <= k)) {
            continue;
        }
        let mut b = ColoringBuilder::new(g)?;
        for s in 0..n {
            if in_r[s] {
                b.set_slot(s, removed[s], y);
            } else {
                let slot = descending_slot(g, &to_r, s).expect("finite distance");
                b.set_slot(s, slot, x);
            }
        }
        return verified(g, w, b.finish()).map(Some);
    }
    Ok(None)
}

/// States of a functional graph from which a cycle is reachable.
fn functional_reaches_cycle(next: &[Option<usize>]) -> Vec<bool> {
    let n = next.len();
    // 0 unvisited, 1 on current path, 2 done
    let mut mark = vec![0u8; n];
    let mut result = vec![false; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = Some(start);
        let reaches = loop {
            match v {
                None => break false,
                Some(u) if mark[u] == 2 => break result[u],
                Some(u) if mark[u] == 1 => break true,
                Some(u) => {
                    mark[u] = 1;
                    path.push(u);
                    v = next[u];
                }
            }
        };
        for u in path {
            mark[u] = 2;
            result[u] = reaches;
        }
    }
    result
}

/// Coloring of a `k`-lifting graph under which `a b^k` resets to `q0`.
pub fn lifting_coloring(g: &Graph, k: usize, q0: usize) -> Result<Coloring> {
    g.require_out_degree_two()?;
    if q0 >= g.state_count() {
        return Err(Error::InvalidState(q0));
    }
    if !g.is_k_lifting_at(k, q0) {
        return Err(Error::Precondition(format!(
            "graph is not {k}-lifting at state {q0}"
        )));
    }
    let dist = g.distances_to(q0);
    let mut b = ColoringBuilder::new(g)?;
    for s in 0..g.state_count() {
        let slot = g
            .slot_targets(s)
            .iter()
            .position(|&t| dist[t] == Some(k))
            .unwrap();
        b.set_slot(s, slot, Letter::A);
    }
    let w = Word::new(
        std::iter::once(Letter::A)
            .chain(vec![Letter::B; k])
            .collect(),
    );
    verified(g, &w, b.finish())
}

pub fn decide_abb_sc(g: &Graph) -> Result<Option<Coloring>> {
    decide_abb_sc_with(g, Exec::default())
}

/// Decides `abb` on a strongly connected graph, trying candidate sink states in
/// ascending order and returning the witness of the smallest one that works.
pub fn decide_abb_sc_with(g: &Graph, exec: Exec) -> Result<Option<Coloring>> {
    g.require_out_degree_two()?;
    if !g.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    if let Some(q0) = g.is_k_lifting(2) {
        return lifting_coloring(g, 2, q0).map(Some);
    }
    let abb: Word = "abb".parse().unwrap();
    exec::find_map_first(exec, g.state_count(), |q0| abb_at(g, q0).transpose())
        .transpose()?
        .map(|c| verified(g, &abb, c))
        .transpose()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Term {
    Const(bool),
    Lit(Lit),
}

impl Term {
    fn negate(self) -> Term {
        match self {
            Term::Const(c) => Term::Const(!c),
            Term::Lit(l) => Term::Lit(l.negate()),
        }
    }
}

/// Two-clause builder that folds constants; records a constant-false clause.
struct Clauses {
    formula: TwoSatFormula,
    contradiction: bool,
}

impl Clauses {
    fn or(&mut self, p: Term, q: Term) {
        match (p, q) {
            (Term::Const(true), _) | (_, Term::Const(true)) => {}
            (Term::Const(false), Term::Const(false)) => self.contradiction = true,
            (Term::Const(false), Term::Lit(l)) | (Term::Lit(l), Term::Const(false)) => {
                self.formula.add_unit(l)
            }
            (Term::Lit(l), Term::Lit(m)) => self.formula.add_clause(l, m),
        }
    }

    fn implies(&mut self, p: Term, q: Term) {
        self.or(p.negate(), q)
    }
}

/// Candidate `q0` for `abb` on a strongly connected graph that is not 2-lifting.
///
/// Variable `s` means "slot 0 of `s` is labeled `a`". With all distances at most 2
/// and no loop on `q0`, the word resets to `q0` iff every state `t` in the image of
/// `a` has `b(t)` in `P = { u at distance 1 : b(u) = q0 }`. Edges into distance 2
/// must carry `a`, which puts every distance-2 state (and `q0`) in the image; their
/// constraints are unconditional. Distance-1 targets give implications whose
/// right-hand sides are conjunctions. Everything stays within 2-CNF.
fn abb_at(g: &Graph, q0: usize) -> Result<Option<Coloring>> {
    let n = g.state_count();
    let dist = g.distances_to(q0);
    if !dist.iter().all(|d| d.is_some_and(|d| d <= 2)) {
        return Ok(None);
    }
    let dist: Vec<usize> = dist.into_iter().map(Option::unwrap).collect();
    let targets: Vec<[usize; 2]> = (0..n).map(|s| g.slot_targets(s)).collect();
    let free = |s: usize| targets[s][0] != targets[s][1];

    if let Some(loop_slot) = targets[q0].iter().position(|&t| t == q0) {
        // b-paths of length two reach q0 from everywhere
        let mut b = ColoringBuilder::new(g)?;
        for s in 0..n {
            let slot = if s == q0 {
                loop_slot
            } else {
                descending_slot(g, &dist.iter().map(|&d| Some(d)).collect::<Vec<_>>(), s).unwrap()
            };
            b.set_slot(s, slot, Letter::B);
        }
        return Ok(Some(b.finish()));
    }

    let slot_is_a = |s: usize, j: usize| -> Term {
        if !free(s) {
            Term::Const(true)
        } else if j == 0 {
            Term::Lit(Lit::pos(s))
        } else {
            Term::Lit(Lit::neg(s))
        }
    };
    let slot_is_b = |s: usize, j: usize| -> Term {
        if free(s) {
            slot_is_a(s, j).negate()
        } else {
            Term::Const(true)
        }
    };
    // u in P
    let in_p = |u: usize| -> Term {
        if dist[u] != 1 {
            return Term::Const(false);
        }
        match targets[u].iter().position(|&t| t == q0) {
            _ if !free(u) => Term::Const(true),
            Some(j) => slot_is_b(u, j),
            None => Term::Const(false),
        }
    };

    let mut cl = Clauses {
        formula: TwoSatFormula::new(n),
        contradiction: false,
    };
    for s in 0..n {
        let into_2: Vec<usize> = (0..2).filter(|&j| dist[targets[s][j]] == 2).collect();
        match into_2.as_slice() {
            [] => {}
            [j] => cl.or(slot_is_a(s, *j), Term::Const(false)),
            _ => return Ok(None),
        }
    }
    for t in 0..n {
        if dist[t] == 1 {
            continue;
        }
        // t is in the image of a: its b-successor must lie in P
        if free(t) {
            cl.implies(slot_is_b(t, 0), in_p(targets[t][0]));
            cl.implies(slot_is_b(t, 1), in_p(targets[t][1]));
        } else {
            cl.or(in_p(targets[t][0]), Term::Const(false));
        }
    }
    for s in 0..n {
        for j in 0..2 {
            let t = targets[s][j];
            if dist[t] != 1 {
                continue;
            }
            // b(t) in P forces b(t) to be t's edge away from q0, inside distance 1
            let lhs = slot_is_a(s, j);
            match targets[t].iter().position(|&u| u == q0) {
                Some(qj) if free(t) => {
                    let v = targets[t][1 - qj];
                    cl.implies(lhs, slot_is_a(t, qj));
                    cl.implies(lhs, in_p(v));
                }
                _ => cl.implies(lhs, Term::Const(false)),
            }
        }
    }
    if cl.contradiction {
        return Ok(None);
    }
    let Some(values) = twosat_solve(&cl.formula) else {
        return Ok(None);
    };
    let mut b = ColoringBuilder::new(g)?;
    for s in (0..n).filter(|&s| free(s)) {
        b.set_slot(s, if values[s] { 0 } else { 1 }, Letter::A);
    }
    Ok(Some(b.finish()))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    #[default]
    Auto,
    Poly,
    Brute,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PowerOfLetter,
    PowerThenLetter,
    AbbStronglyConnected,
    BruteForce,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decision {
    pub coloring: Option<Coloring>,
    pub method: Method,
    pub warnings: Vec<String>,
}

/// The polynomial decider that applies to `(g, w)`, if any.
pub fn poly_method(g: &Graph, w: &Word) -> Option<Method> {
    match classify(w) {
        WordClass::T1 if !w.is_empty() || g.state_count() == 1 => Some(Method::PowerOfLetter),
        WordClass::T2 => Some(Method::PowerThenLetter),
        _ if matches!(w.to_string().as_str(), "abb" | "baa") && g.is_strongly_connected() => {
            Some(Method::AbbStronglyConnected)
        }
        _ => None,
    }
}

/// Decides whether some coloring of `g` makes `w` a reset word.
pub fn decide(g: &Graph, w: &Word, algorithm: Algorithm, exec: Exec) -> Result<Decision> {
    g.require_out_degree_two()?;
    let mut warnings = Vec::new();
    if !g.is_aperiodic() {
        warnings.push("graph is not aperiodic, so no coloring is synchronizing".to_string());
    }
    let method = match (algorithm, poly_method(g, w)) {
        (Algorithm::Brute, _) => Method::BruteForce,
        (_, Some(m)) => m,
        (Algorithm::Poly, None) => {
            return Err(Error::Precondition(format!(
                "no polynomial-time decider for {w} ({}) on this graph",
                classify(w)
            )))
        }
        (Algorithm::Auto, None) => {
            warnings.push(format!(
                "no polynomial-time decider for {w} ({}); exhaustive search is exponential",
                classify(w)
            ));
            Method::BruteForce
        }
    };
    let coloring = match method {
        Method::PowerOfLetter => decide_t1(g, w)?,
        Method::PowerThenLetter => decide_t2(g, w)?,
        Method::AbbStronglyConnected if w.first() == Some(Letter::A) => {
            decide_abb_sc_with(g, exec)?
        }
        Method::AbbStronglyConnected => decide_abb_sc_with(g, exec)?.map(|c| c.swap_letters()),
        Method::BruteForce => brute_srcw_with(g, w, exec)?,
    };
    Ok(Decision {
        coloring,
        method,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::brute_srcw;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn g(t: &[[usize; 2]]) -> Graph {
        Graph::from_targets(t).unwrap()
    }

    #[test]
    fn t1_examples() {
        let sink = g(&[[0, 0]]);
        assert!(decide_t1(&sink, &w("a")).unwrap().is_some());
        let complete = g(&[[0, 1], [0, 1]]);
        assert!(decide_t1(&complete, &w("a")).unwrap().is_some());
        // chain 3 -> 2 -> 1 -> 0 with a loop on 0
        let chain = g(&[[0, 0], [0, 0], [1, 1], [2, 2]]);
        assert!(decide_t1(&chain, &w("a")).unwrap().is_none());
        assert!(decide_t1(&chain, &w("bbb")).unwrap().is_some());
        assert_eq!(decide_t1(&chain, &Word::empty()), Err(Error::EmptyWord));
        assert!(decide_t1(&sink, &Word::empty()).unwrap().is_some());
        assert!(decide_t1(&sink, &w("ab")).is_err());
    }

    #[test]
    fn t2_examples() {
        let two = g(&[[0, 1], [0, 0]]);
        let c = decide_t2(&two, &w("ab")).unwrap().unwrap();
        assert!(c.to_automaton(&two).unwrap().is_reset_word(&w("ab")));
        assert!(brute_srcw(&two, &w("ab")).unwrap().is_some());
        // a 2-cycle of double edges has no state with two in-edges from a cycle
        let doubled = g(&[[1, 1], [0, 0]]);
        assert!(decide_t2(&doubled, &w("ab")).unwrap().is_none());
        assert!(decide_t2(&two, &w("abb")).is_err());
    }

    #[test]
    fn functional_cycles() {
        let next = [Some(1), Some(2), Some(1), None, Some(3), Some(0)];
        assert_eq!(
            functional_reaches_cycle(&next),
            [true, true, true, false, false, true]
        );
    }

    #[test]
    fn lifting_examples() {
        // k = 0: every state has an edge to 0, and 0 has a loop
        let star = g(&[[0, 1], [2, 0], [0, 1]]);
        let c = lifting_coloring(&star, 0, 0).unwrap();
        assert!(c.to_automaton(&star).unwrap().is_reset_word(&w("a")));
        let cycle = g(&[[1, 1], [2, 2], [3, 3], [0, 0]]);
        assert!(matches!(
            lifting_coloring(&cycle, 2, 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn dispatch() {
        let sink = g(&[[0, 0]]);
        let d = decide(&sink, &w("ab"), Algorithm::Auto, Exec::Sequential).unwrap();
        assert_eq!(d.method, Method::PowerThenLetter);
        assert!(d.coloring.is_some());
        let cyc = g(&[[1, 2], [2, 0], [0, 1]]);
        let d = decide(&cyc, &w("baa"), Algorithm::Auto, Exec::Sequential).unwrap();
        assert_eq!(d.method, Method::AbbStronglyConnected);
        if let Some(c) = d.coloring {
            assert!(c.to_automaton(&cyc).unwrap().is_reset_word(&w("baa")));
        }
        assert_eq!(
            decide(&cyc, &w("abab"), Algorithm::Brute, Exec::Sequential)
                .unwrap()
                .method,
            Method::BruteForce
        );
        let d = decide(&cyc, &w("abab"), Algorithm::Auto, Exec::Sequential).unwrap();
        assert_eq!(d.warnings.len(), 1);
        assert!(decide(&cyc, &w("abab"), Algorithm::Poly, Exec::Sequential).is_err());
    }

    #[test]
    fn abb_rejects_disconnected() {
        let two_sinks = g(&[[0, 0], [1, 1]]);
        assert_eq!(decide_abb_sc(&two_sinks), Err(Error::NotStronglyConnected));
    }

    #[test]
    fn abb_matches_oracle_on_three_states() {
        let mut checked = 0;
        for code in 0..729usize {
            let t: Vec<[usize; 2]> = (0..3)
                .map(|s| {
                    [
                        code / 9usize.pow(s as u32) % 3,
                        code / 9usize.pow(s as u32) / 3 % 3,
                    ]
                })
                .collect();
            let graph = g(&t);
            if !graph.is_strongly_connected() {
                continue;
            }
            let fast = decide_abb_sc(&graph).unwrap().is_some();
            let slow = brute_srcw(&graph, &w("abb")).unwrap().is_some();
            assert_eq!(fast, slow, "{t:?}");
            checked += 1;
        }
        assert!(checked > 0);
    }
}
