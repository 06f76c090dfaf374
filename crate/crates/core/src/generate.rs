//! Seeded random graphs and exhaustive graph enumeration.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Attempts `random_graph_with` makes before giving up.
pub const MAX_ATTEMPTS: usize = 100_000;

/// Uniform out-degree-2 graph: every target drawn independently.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let targets: Vec<[usize; 2]> = (0..n)
        .map(|_| [rng.gen_range(0..n), rng.gen_range(0..n)])
        .collect();
    Graph::from_targets(&targets).expect("targets in range")
}

/// Uniform graph conditioned on the requested properties, by rejection sampling.
pub fn random_graph_with<R: Rng>(
    rng: &mut R,
    n: usize,
    strongly_connected: bool,
    aperiodic: bool,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    for _ in 0..MAX_ATTEMPTS {
        let g = random_graph(rng, n);
        if (!strongly_connected || g.is_strongly_connected()) && (!aperiodic || g.is_aperiodic()) {
            return Ok(g);
        }
    }
    Err(Error::ResourceLimit(format!(
        "no graph with the requested properties in {MAX_ATTEMPTS} samples"
    )))
}

/// Strongly connected graph: a random Hamiltonian cycle plus one random edge per
/// state, in random slot order. Not uniform, but cheap at any size.
pub fn random_strongly_connected<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut targets = vec![[0; 2]; n];
    for (i, &s) in order.iter().enumerate() {
        let mut pair = [order[(i + 1) % n], rng.gen_range(0..n)];
        if rng.gen_bool(0.5) {
            pair.swap(0, 1);
        }
        targets[s] = pair;
    }
    Graph::from_targets(&targets).expect("targets in range")
}

/// A `k`-lifting graph on `n >= k + 1` states together with its witness state.
///
/// States are placed on levels `0..=k` (level 0 is the witness alone) or left
/// unleveled. A leveled state at level `j >= 1` gets one edge to level `j - 1`;
/// every state gets one edge into level `k`; the remaining edges are arbitrary
/// for unleveled states and the witness.
pub fn random_lifting_graph<R: Rng>(rng: &mut R, n: usize, k: usize) -> Result<(Graph, usize)> {
    if n < k + 1 {
        return Err(Error::Precondition(format!(
            "a {k}-lifting graph needs at least {} states",
            k + 1
        )));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    // perm[0] is the witness, perm[1..=k] seed levels 1..=k
    let mut level: Vec<Option<usize>> = vec![None; n];
    level[perm[0]] = Some(0);
    for (j, &s) in perm.iter().enumerate().take(k + 1).skip(1) {
        level[s] = Some(j);
    }
    for &s in &perm[k + 1..] {
        if k > 0 && rng.gen_bool(0.7) {
            level[s] = Some(rng.gen_range(1..=k));
        }
    }
    let at = |j: usize| -> Vec<usize> { (0..n).filter(|&s| level[s] == Some(j)).collect() };
    let by_level: Vec<Vec<usize>> = (0..=k).map(at).collect();
    let top = &by_level[k];
    let targets: Vec<[usize; 2]> = (0..n)
        .map(|s| {
            let lift = *top.choose(rng).unwrap();
            let other = match level[s] {
                Some(j) if j >= 1 => *by_level[j - 1].choose(rng).unwrap(),
                _ => rng.gen_range(0..n),
            };
            if rng.gen_bool(0.5) {
                [lift, other]
            } else {
                [other, lift]
            }
        })
        .collect();
    Ok((Graph::from_targets(&targets)?, perm[0]))
}

/// Every out-degree-2 graph on `n` states with ordered target pairs (`n^(2n)` graphs).
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let total = n.pow(2 * n as u32);
    (0..total).map(move |mut code| {
        let targets: Vec<[usize; 2]> = (0..n)
            .map(|_| {
                let t = [code % n, code / n % n];
                code /= n * n;
                t
            })
            .collect();
        Graph::from_targets(&targets).unwrap()
    })
}

/// Every out-degree-2 graph on `n` states up to the order of each state's two
/// out-edges; colorability does not depend on that order.
pub fn all_graphs_unordered(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (i..n).map(move |j| [i, j])).collect();
    let total = pairs.len().pow(n as u32);
    (0..total).map(move |mut code| {
        let targets: Vec<[usize; 2]> = (0..n)
            .map(|_| {
                let p = pairs[code % pairs.len()];
                code /= pairs.len();
                p
            })
            .collect();
        Graph::from_targets(&targets).unwrap()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_graphs(2).count(), 16);
        assert_eq!(all_graphs(3).count(), 729);
        assert_eq!(all_graphs_unordered(3).count(), 216);
    }

    #[test]
    fn seeded_generation_is_deterministic() {
        let a = random_graph_with(&mut ChaCha8Rng::seed_from_u64(3), 6, true, true).unwrap();
        let b = random_graph_with(&mut ChaCha8Rng::seed_from_u64(3), 6, true, true).unwrap();
        assert_eq!(a, b);
        assert!(a.is_strongly_connected() && a.is_aperiodic());
    }

    #[test]
    fn generated_graphs_have_their_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..40 {
            assert!(random_strongly_connected(&mut rng, n).is_strongly_connected());
        }
        for k in 0..4 {
            for n in k + 1..k + 8 {
                let (g, q0) = random_lifting_graph(&mut rng, n, k).unwrap();
                assert!(g.is_k_lifting_at(k, q0), "{g:?} {k} {q0}");
            }
        }
        assert!(random_lifting_graph(&mut rng, 2, 2).is_err());
    }
}
