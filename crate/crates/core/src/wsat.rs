//! W-SAT: every clause `(z1, z2, z3, z4)` needs a true variable somewhere, a false
//! one among `z1, z2`, and a false one among `z3, z4`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest instance `solve` enumerates.
pub const SOLVE_VARIABLE_LIMIT: usize = 24;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "WSatJson")]
pub struct WSatInstance {
    variables: usize,
    clauses: Vec<[usize; 4]>,
}

#[derive(Deserialize)]
struct WSatJson {
    variables: usize,
    clauses: Vec<[usize; 4]>,
}

impl TryFrom<WSatJson> for WSatInstance {
    type Error = Error;

    fn try_from(j: WSatJson) -> Result<Self> {
        WSatInstance::new(j.variables, j.clauses)
    }
}

impl WSatInstance {
    pub fn new(variables: usize, clauses: Vec<[usize; 4]>) -> Result<Self> {
        for (clause, c) in clauses.iter().enumerate() {
            if let Some(&var) = c.iter().find(|&&v| v >= variables) {
                return Err(Error::VariableOutOfRange {
                    clause,
                    var,
                    vars: variables,
                });
            }
        }
        Ok(WSatInstance { variables, clauses })
    }

    pub fn variables(&self) -> usize {
        self.variables
    }

    pub fn clauses(&self) -> &[[usize; 4]] {
        &self.clauses
    }

    /// Variables that occur in no clause.
    pub fn unused_variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.variables];
        for &v in self.clauses.iter().flatten() {
            used[v] = true;
        }
        (0..self.variables).filter(|&v| !used[v]).collect()
    }

    pub fn without_clause(&self, index: usize) -> WSatInstance {
        let mut clauses = self.clauses.clone();
        clauses.remove(index);
        WSatInstance {
            variables: self.variables,
            clauses,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment(values)
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `index`-th assignment in lexicographic order (variable 0 most significant).
    pub fn nth(variables: usize, index: u64) -> Assignment {
        Assignment(
            (0..variables)
                .map(|i| index >> (variables - 1 - i) & 1 == 1)
                .collect(),
        )
    }
}

pub fn clause_satisfied(clause: &[usize; 4], xi: &Assignment) -> bool {
    let v = |i: usize| xi.get(clause[i]);
    (0..4).any(v) && (!v(0) || !v(1)) && (!v(2) || !v(3))
}

pub fn check(phi: &WSatInstance, xi: &Assignment) -> Result<bool> {
    if xi.len() != phi.variables {
        return Err(Error::AssignmentSize {
            expected: phi.variables,
            got: xi.len(),
        });
    }
    Ok(phi.clauses.iter().all(|c| clause_satisfied(c, xi)))
}

/// Lexicographically first satisfying assignment, by exhaustive enumeration.
pub fn solve(phi: &WSatInstance) -> Result<Option<Assignment>> {
    let n = phi.variables;
    if n > SOLVE_VARIABLE_LIMIT {
        return Err(Error::ResourceLimit(format!(
            "{n} variables exceed the limit of {SOLVE_VARIABLE_LIMIT}"
        )));
    }
    Ok((0..1u64 << n)
        .map(|i| Assignment::nth(n, i))
        .find(|xi| phi.clauses.iter().all(|c| clause_satisfied(c, xi))))
}

/// Random instance with every variable used, when `clauses * 4 >= variables`.
pub fn random_instance<R: Rng>(rng: &mut R, variables: usize, clauses: usize) -> WSatInstance {
    assert!(variables >= 1);
    let mut flat: Vec<usize> = (0..clauses * 4)
        .map(|_| rng.gen_range(0..variables))
        .collect();
    // pin each variable to its own random position
    let mut positions: Vec<usize> = (0..flat.len()).collect();
    positions.shuffle(rng);
    for (v, &p) in positions.iter().take(variables).enumerate() {
        flat[p] = v;
    }
    let out = flat.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
    WSatInstance::new(variables, out).expect("indices in range")
}

/// Fixed instances with at most 3 variables and 2 clauses, every variable used,
/// mixing satisfiable and unsatisfiable cases.
pub fn validation_matrix() -> Vec<WSatInstance> {
    let raw: [(usize, &[[usize; 4]]); 20] = [
        (1, &[[0, 0, 0, 0]]),
        (2, &[[0, 1, 0, 1]]),
        (2, &[[0, 0, 1, 1]]),
        (2, &[[0, 1, 1, 0]]),
        (2, &[[0, 0, 0, 1]]),
        (2, &[[1, 0, 0, 0]]),
        (2, &[[0, 1, 0, 1], [1, 0, 1, 0]]),
        (2, &[[0, 0, 1, 1], [1, 1, 0, 0]]),
        (2, &[[0, 1, 0, 1], [0, 0, 0, 0]]),
        (2, &[[0, 0, 0, 1], [1, 1, 1, 0]]),
        (3, &[[0, 1, 2, 0]]),
        (3, &[[0, 1, 1, 2]]),
        (3, &[[0, 0, 1, 2]]),
        (3, &[[2, 2, 0, 1]]),
        (3, &[[0, 1, 2, 2], [2, 2, 0, 1]]),
        (3, &[[0, 1, 0, 2], [1, 2, 1, 2]]),
        (3, &[[0, 0, 1, 1], [2, 2, 2, 2]]),
        (3, &[[0, 1, 2, 0], [1, 2, 0, 1]]),
        (3, &[[0, 0, 1, 2], [1, 1, 2, 0]]),
        (3, &[[0, 0, 0, 1], [2, 2, 2, 1]]),
    ];
    raw.iter()
        .map(|(n, cs)| WSatInstance::new(*n, cs.to_vec()).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn a(v: &[u8]) -> Assignment {
        Assignment::new(v.iter().map(|&b| b == 1).collect())
    }

    #[test]
    fn check_examples() {
        let empty = WSatInstance::new(1, vec![]).unwrap();
        assert!(check(&empty, &a(&[1])).unwrap());
        let xxxx = WSatInstance::new(1, vec![[0, 0, 0, 0]]).unwrap();
        assert!(!check(&xxxx, &a(&[0])).unwrap());
        assert!(!check(&xxxx, &a(&[1])).unwrap());
        let xyxy = WSatInstance::new(2, vec![[0, 1, 0, 1]]).unwrap();
        assert!(check(&xyxy, &a(&[1, 0])).unwrap());
        assert_eq!(
            check(&xyxy, &a(&[1])),
            Err(Error::AssignmentSize {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn solve_examples() {
        let empty = WSatInstance::new(1, vec![]).unwrap();
        assert_eq!(solve(&empty).unwrap(), Some(a(&[0])));
        let xxxx = WSatInstance::new(1, vec![[0, 0, 0, 0]]).unwrap();
        assert_eq!(solve(&xxxx).unwrap(), None);
        // 00 fails condition 1; 01 satisfies all three
        let xyxy = WSatInstance::new(2, vec![[0, 1, 0, 1]]).unwrap();
        assert_eq!(solve(&xyxy).unwrap(), Some(a(&[0, 1])));
        let big = WSatInstance::new(25, vec![]).unwrap();
        assert!(matches!(solve(&big), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn rejects_bad_indices() {
        assert_eq!(
            WSatInstance::new(2, vec![[0, 1, 2, 0]]),
            Err(Error::VariableOutOfRange {
                clause: 0,
                var: 2,
                vars: 2
            })
        );
        assert!(WSatInstance::from_json(r#"{"variables":1,"clauses":[[0,0,0,1]]}"#).is_err());
    }

    #[test]
    fn json_round_trip() {
        let phi = WSatInstance::new(3, vec![[0, 1, 2, 0]]).unwrap();
        let s = phi.to_json();
        assert_eq!(s, r#"{"variables":3,"clauses":[[0,1,2,0]]}"#);
        assert_eq!(WSatInstance::from_json(&s).unwrap(), phi);
    }

    #[test]
    fn matrix_is_mixed_and_fully_used() {
        let m = validation_matrix();
        assert_eq!(m.len(), 20);
        let sat = m.iter().filter(|p| solve(p).unwrap().is_some()).count();
        assert!(sat > 0 && sat < 20, "{sat} satisfiable");
        assert!(m.iter().all(|p| p.unused_variables().is_empty()));
    }

    #[test]
    fn random_instances_use_every_variable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let phi = random_instance(&mut rng, 4, 2);
            assert!(phi.unused_variables().is_empty());
        }
    }
}
