//! 2-SAT by strongly connected components of the implication graph.

use serde::{Deserialize, Serialize};

use crate::graph::tarjan;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Lit {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negate(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }
}

/// A conjunction of two-literal disjunctions.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct TwoSatFormula {
    variables: usize,
    clauses: Vec<(Lit, Lit)>,
}

impl TwoSatFormula {
    pub fn new(variables: usize) -> Self {
        TwoSatFormula {
            variables,
            clauses: Vec::new(),
        }
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn add_variable(&mut self) -> usize {
        self.variables += 1;
        self.variables - 1
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        assert!(
            a.var < self.variables && b.var < self.variables,
            "literal out of range"
        );
        self.clauses.push((a, b));
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    pub fn add_implication(&mut self, from: Lit, to: Lit) {
        self.add_clause(from.negate(), to);
    }

    pub fn satisfied_by(&self, values: &[bool]) -> bool {
        let holds = |l: Lit| values[l.var] == l.positive;
        self.clauses.iter().all(|&(a, b)| holds(a) || holds(b))
    }
}

/// A satisfying assignment, or `None`. Variables left free by the formula are false.
pub fn twosat_solve(f: &TwoSatFormula) -> Option<Vec<bool>> {
    let n = f.variables;
    let mut adj = vec![Vec::new(); 2 * n];
    for &(a, b) in &f.clauses {
        adj[a.negate().node()].push(b.node());
        adj[b.negate().node()].push(a.node());
    }
    // negative literals first, so unconstrained variables settle on false
    let roots: Vec<usize> = (0..n).flat_map(|v| [2 * v + 1, 2 * v]).collect();
    let (_, comp) = tarjan(&adj, &roots);
    (0..n)
        .map(|v| {
            let (p, q) = (comp[2 * v], comp[2 * v + 1]);
            // components are numbered sinks first
            (p != q).then_some(p < q)
        })
        .collect()
}
