//! Directed multigraphs and the structural predicates the deciders consume.
//!
//! Edges are identified by their position in the edge list, so parallel edges
//! stay distinguishable. A state's out-edges are kept in edge-list order; for
//! out-degree-2 graphs the first of them is "slot 0" and the second "slot 1".

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A set of states backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct StateSet {
    universe: usize,
    bits: Vec<u64>,
}

impl StateSet {
    pub fn empty(universe: usize) -> Self {
        StateSet {
            universe,
            bits: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for s in 0..universe {
            set.insert(s);
        }
        set
    }

    pub fn singleton(universe: usize, state: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(state);
        set
    }

    pub fn from_states(universe: usize, states: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for s in states {
            set.insert(s);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, state: usize) -> bool {
        assert!(state < self.universe, "state {state} outside universe");
        let (w, b) = (state / 64, state % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, state: usize) -> bool {
        if state >= self.universe {
            return false;
        }
        let (w, b) = (state / 64, state % 64);
        let present = self.bits[w] & (1 << b) != 0;
        self.bits[w] &= !(1 << b);
        present
    }

    pub fn contains(&self, state: usize) -> bool {
        state < self.universe && self.bits[state / 64] & (1 << (state % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&s| self.contains(s))
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.iter().all(|s| other.contains(s))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    states: usize,
    edges: Vec<[usize; 2]>,
}

/// A directed multigraph with positional edge identity.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    states: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        Graph::new(
            json.states,
            json.edges.into_iter().map(|[s, t]| (s, t)).collect(),
        )
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            states: g.states,
            edges: g.edges.into_iter().map(|(s, t)| [s, t]).collect(),
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} states; ", self.states)?;
        for (i, (s, t)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}->{t}")?;
        }
        write!(f, ")")
    }
}

impl Graph {
    pub fn new(states: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if states == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out = vec![Vec::new(); states];
        for (index, &(s, t)) in edges.iter().enumerate() {
            for state in [s, t] {
                if state >= states {
                    return Err(Error::StateOutOfRange {
                        index,
                        state,
                        states,
                    });
                }
            }
            out[s].push(index);
        }
        Ok(Graph { states, edges, out })
    }

    /// Builds an out-degree-2 graph from per-state target pairs.
    pub fn from_targets(targets: &[[usize; 2]]) -> Result<Self> {
        let edges = targets
            .iter()
            .enumerate()
            .flat_map(|(s, pair)| pair.iter().map(move |&t| (s, t)))
            .collect();
        Graph::new(targets.len(), edges)
    }

    pub fn state_count(&self) -> usize {
        self.states
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> (usize, usize) {
        self.edges[index]
    }

    /// Positions of the out-edges of `state`, in edge-list order.
    pub fn out_edges(&self, state: usize) -> &[usize] {
        &self.out[state]
    }

    pub fn successors(&self, state: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[state].iter().map(move |&e| self.edges[e].1)
    }

    /// The two out-edge positions of `state`. Panics unless the out-degree is 2.
    pub fn slots(&self, state: usize) -> [usize; 2] {
        let out = &self.out[state];
        assert_eq!(out.len(), 2, "state {state} does not have out-degree 2");
        [out[0], out[1]]
    }

    /// Targets of the two out-edges of `state`, in slot order.
    pub fn slot_targets(&self, state: usize) -> [usize; 2] {
        let [e0, e1] = self.slots(state);
        [self.edges[e0].1, self.edges[e1].1]
    }

    pub fn has_self_loop(&self, state: usize) -> bool {
        self.successors(state).any(|t| t == state)
    }

    pub fn constant_out_degree(&self) -> Option<usize> {
        let k = self.out[0].len();
        (k > 0 && self.out.iter().all(|o| o.len() == k)).then_some(k)
    }

    pub fn require_out_degree_two(&self) -> Result<()> {
        match self.constant_out_degree() {
            Some(2) => Ok(()),
            _ => Err(Error::NotOutDegreeTwo),
        }
    }

    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.states)
            .map(|s| self.successors(s).collect())
            .collect()
    }

    fn reverse_adjacency(&self) -> Vec<Vec<usize>> {
        let mut rev = vec![Vec::new(); self.states];
        for &(s, t) in &self.edges {
            rev[t].push(s);
        }
        rev
    }

    /// Shortest-path distance from every state to `target`.
    pub fn distances_to(&self, target: usize) -> Vec<Option<usize>> {
        self.distances_to_set(&StateSet::singleton(self.states, target))
    }

    /// Shortest-path distance from every state into `targets`.
    pub fn distances_to_set(&self, targets: &StateSet) -> Vec<Option<usize>> {
        let rev = self.reverse_adjacency();
        let mut dist = vec![None; self.states];
        let mut queue = VecDeque::new();
        for t in targets.iter() {
            dist[t] = Some(0);
            queue.push_back(t);
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &u in &rev[v] {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// States at distance exactly `k` from `target`.
    pub fn level_set(&self, target: usize, k: usize) -> StateSet {
        let dist = self.distances_to(target);
        StateSet::from_states(
            self.states,
            (0..self.states).filter(|&s| dist[s] == Some(k)),
        )
    }

    pub fn strongly_connected_components(&self) -> Vec<usize> {
        tarjan(&self.adjacency(), &(0..self.states).collect::<Vec<_>>()).1
    }

    pub fn is_strongly_connected(&self) -> bool {
        let (count, _) = tarjan(&self.adjacency(), &(0..self.states).collect::<Vec<_>>());
        count == 1
    }

    /// Greatest common divisor of all cycle lengths, or `None` for an acyclic graph.
    pub fn period(&self) -> Option<usize> {
        let comp = self.strongly_connected_components();
        let adj = self.adjacency();
        let mut level = vec![usize::MAX; self.states];
        let mut period = 0usize;
        for root in 0..self.states {
            if level[root] != usize::MAX {
                continue;
            }
            // BFS levels inside the root's component
            level[root] = 0;
            let mut queue = VecDeque::from([root]);
            let mut members = Vec::new();
            while let Some(v) = queue.pop_front() {
                members.push(v);
                for &u in &adj[v] {
                    if comp[u] == comp[root] && level[u] == usize::MAX {
                        level[u] = level[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            for &v in &members {
                for &u in &adj[v] {
                    if comp[u] == comp[root] {
                        period = gcd(period, (level[v] + 1).abs_diff(level[u]));
                    }
                }
            }
        }
        // every cycle contributes a nonzero level difference, so a cyclic graph
        // never leaves `period` at 0
        let cyclic = self.edges.iter().any(|&(s, t)| comp[s] == comp[t]);
        cyclic.then_some(period)
    }

    /// Aperiodicity; acyclic graphs count as not aperiodic.
    pub fn is_aperiodic(&self) -> bool {
        self.period() == Some(1)
    }

    /// Induced subgraph on `keep`, together with the original index of each new state.
    pub fn induced_subgraph(&self, keep: &StateSet) -> Result<(Graph, Vec<usize>)> {
        let map: Vec<usize> = keep.iter().collect();
        let mut new_index = vec![usize::MAX; self.states];
        for (i, &s) in map.iter().enumerate() {
            new_index[s] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(s, t)| keep.contains(s) && keep.contains(t))
            .map(|&(s, t)| (new_index[s], new_index[t]))
            .collect();
        Ok((Graph::new(map.len(), edges)?, map))
    }

    /// States whose out-edges are exactly two self-loops.
    pub fn sink_states(&self) -> StateSet {
        StateSet::from_states(
            self.states,
            (0..self.states)
                .filter(|&s| self.out[s].len() == 2 && self.successors(s).all(|t| t == s)),
        )
    }

    /// Smallest `q0` such that every state has an edge into the states at distance
    /// exactly `k` from `q0`.
    pub fn is_k_lifting(&self, k: usize) -> Option<usize> {
        (0..self.states).find(|&q0| self.is_k_lifting_at(k, q0))
    }

    pub fn is_k_lifting_at(&self, k: usize, q0: usize) -> bool {
        let level = self.level_set(q0, k);
        (0..self.states).all(|s| self.successors(s).any(|t| level.contains(t)))
    }

    /// Prepends a chain of `m` fresh states to every state.
    ///
    /// Chain state `c(q, j)` (for `1 <= j <= m`) has index `n + q * m + (j - 1)` and
    /// two parallel edges to `c(q, j - 1)`, where `c(q, 0) = q`. Reading any word of
    /// length `m` therefore maps the whole state set onto the original states.
    pub fn chain_extension(&self, m: usize) -> Result<Graph> {
        self.require_out_degree_two()?;
        let n = self.states;
        let mut edges = self.edges.clone();
        for q in 0..n {
            for j in 1..=m {
                let prev = if j == 1 { q } else { n + q * m + (j - 2) };
                let this = n + q * m + (j - 1);
                edges.push((this, prev));
                edges.push((this, prev));
            }
        }
        Graph::new(n * (m + 1), edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Iterative Tarjan. Returns the number of components and the component id of each
/// node; ids are assigned in reverse topological order (sink components first).
/// Roots are tried in the order given by `roots`.
pub(crate) fn tarjan(adj: &[Vec<usize>], roots: &[usize]) -> (usize, Vec<usize>) {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSET; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0;
    let mut count = 0;

    for &root in roots {
        if index[root] != UNSET {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < adj[v].len() {
                let u = adj[v][*pos];
                *pos += 1;
                if index[u] == UNSET {
                    index[u] = next_index;
                    low[u] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let u = stack.pop().unwrap();
                        on_stack[u] = false;
                        comp[u] = count;
                        if u == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }
    (count, comp)
}
