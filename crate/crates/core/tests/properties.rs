use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use srcw::automata::{brute_srcw_with, enumerate_colorings};
use srcw::deciders::{decide, decide_abb_sc_with, decide_t1, decide_t2, Algorithm};
use srcw::gadgets::{build_gadget_sc, build_gadget_t3, build_gadget_t4};
use srcw::word::{factors, prefixes, suffixes};
use srcw::wsat::{check, random_instance, solve};
use srcw::{brute_srcw, classify, Assignment, Exec, Graph, StateSet, WSatInstance, Word};

fn graph(max_states: usize) -> impl Strategy<Value = Graph> {
    (1..=max_states).prop_flat_map(|n| {
        prop::collection::vec([0..n, 0..n], n)
            .prop_map(|targets| Graph::from_targets(&targets).unwrap())
    })
}

fn strongly_connected(max_states: usize) -> impl Strategy<Value = Graph> {
    graph(max_states).prop_filter("strongly connected", Graph::is_strongly_connected)
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    proptest::string::string_regex(&format!("[ab]{{0,{max_len}}}"))
        .unwrap()
        .prop_map(|s| s.parse().unwrap())
}

fn instance(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = WSatInstance> {
    (1..=max_vars, 1..=max_clauses, any::<u64>()).prop_map(|(v, c, seed)| {
        let c = c.max(v.div_ceil(4));
        random_instance(&mut ChaCha8Rng::seed_from_u64(seed), v, c)
    })
}

fn multiplicities(g: &Graph) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &e in g.edges() {
        *m.entry(e).or_default() += 1;
    }
    m
}

proptest! {
    #[test]
    fn graph_json_round_trips_with_edge_order(g in graph(12)) {
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn level_sets_partition_the_states_reaching_target(g in graph(10), q in 0usize..10) {
        let n = g.state_count();
        let q0 = q % n;
        let mut seen = StateSet::empty(n);
        for j in 0..n {
            for s in g.level_set(q0, j).iter() {
                prop_assert!(seen.insert(s), "state {} in two level sets", s);
            }
        }
        let dist = g.distances_to(q0);
        for (s, d) in dist.iter().enumerate() {
            prop_assert_eq!(seen.contains(s), d.is_some());
        }
    }

    #[test]
    fn induced_subgraph_keeps_multiplicities(g in graph(8), mask in any::<u8>()) {
        let n = g.state_count();
        let keep = StateSet::from_states(n, (0..n).filter(|s| mask >> s & 1 == 1));
        prop_assume!(!keep.is_empty());
        let (sub, map) = g.induced_subgraph(&keep).unwrap();
        let original = multiplicities(&g);
        let induced = multiplicities(&sub);
        for (&(s, t), &count) in &induced {
            prop_assert_eq!(original[&(map[s], map[t])], count);
        }
        let kept: usize = original
            .iter()
            .filter(|((s, t), _)| keep.contains(*s) && keep.contains(*t))
            .map(|(_, c)| c)
            .sum();
        prop_assert_eq!(kept, sub.edges().len());
    }

    #[test]
    fn chain_extension_is_admissible(g in graph(8), m in 0usize..5) {
        let ext = g.chain_extension(m).unwrap();
        prop_assert_eq!(ext.state_count(), g.state_count() * (m + 1));
        prop_assert_eq!(ext.constant_out_degree(), Some(2));
        if g.is_aperiodic() {
            prop_assert!(ext.is_aperiodic());
        }
    }

    #[test]
    fn classification_is_letter_symmetric(w in word(10)) {
        prop_assert_eq!(classify(&w), classify(&w.swap_letters()));
    }

    #[test]
    fn factor_sets_are_bounded_and_nested(w in word(10)) {
        let f = factors(&w);
        let n = w.len();
        prop_assert!(f.len() <= n * (n + 1) / 2 + 1);
        prop_assert!(prefixes(&w).is_subset(&f));
        prop_assert!(suffixes(&w).is_subset(&f));
    }

    #[test]
    fn colorings_use_every_edge_once(g in graph(4)) {
        let m = g.edges().len();
        for c in enumerate_colorings(&g).unwrap() {
            let mut used = vec![0; m];
            for p in c.pairs() {
                used[p.a_edge] += 1;
                used[p.b_edge] += 1;
            }
            prop_assert!(used.iter().all(|&u| u == 1));
        }
    }

    #[test]
    fn reset_words_stay_reset_under_extension(g in graph(5), w in word(5), u in word(3), v in word(3)) {
        if let Some(c) = brute_srcw(&g, &w).unwrap() {
            let a = c.to_automaton(&g).unwrap();
            prop_assert!(a.is_reset_word(&w));
            prop_assert!(a.is_reset_word(&u.concat(&w).concat(&v)));
        }
    }

    #[test]
    fn execution_strategies_agree(g in graph(7), w in word(6)) {
        prop_assert_eq!(
            brute_srcw_with(&g, &w, Exec::Sequential).unwrap(),
            brute_srcw_with(&g, &w, Exec::Parallel).unwrap()
        );
        if g.is_strongly_connected() {
            prop_assert_eq!(
                decide_abb_sc_with(&g, Exec::Sequential).unwrap(),
                decide_abb_sc_with(&g, Exec::Parallel).unwrap()
            );
        }
    }

    #[test]
    fn solve_agrees_with_enumeration(phi in instance(10, 6)) {
        let n = phi.variables();
        let any = (0..1u64 << n).any(|i| check(&phi, &Assignment::nth(n, i)).unwrap());
        match solve(&phi).unwrap() {
            Some(xi) => prop_assert!(check(&phi, &xi).unwrap()),
            None => prop_assert!(!any),
        }
        prop_assert_eq!(solve(&phi).unwrap().is_some(), any);
    }

    #[test]
    fn dropping_clauses_keeps_assignments_satisfying(phi in instance(6, 5), bits in any::<u64>(), j in 0usize..5) {
        let n = phi.variables();
        let xi = Assignment::nth(n, bits & ((1 << n) - 1));
        if check(&phi, &xi).unwrap() && j < phi.clauses().len() {
            let smaller = phi.without_clause(j);
            prop_assert!(check(&smaller, &xi).unwrap());
        }
    }

    #[test]
    fn wsat_json_round_trips(phi in instance(8, 6)) {
        prop_assert_eq!(WSatInstance::from_json(&phi.to_json()).unwrap(), phi);
    }

    #[test]
    fn power_deciders_agree_with_oracle(g in graph(6), k in 1usize..5, swap in any::<bool>()) {
        let mut t1 = Word::power(srcw::Letter::A, k);
        let mut t2 = t1.push(srcw::Letter::B);
        if swap {
            t1 = t1.swap_letters();
            t2 = t2.swap_letters();
        }
        for (w, fast) in [(&t1, decide_t1(&g, &t1).unwrap()), (&t2, decide_t2(&g, &t2).unwrap())] {
            prop_assert_eq!(fast.is_some(), brute_srcw(&g, w).unwrap().is_some());
            if let Some(c) = fast {
                prop_assert!(c.to_automaton(&g).unwrap().is_reset_word(w));
            }
        }
    }

    #[test]
    fn abb_decider_agrees_with_oracle(g in strongly_connected(7)) {
        let abb: Word = "abb".parse().unwrap();
        let fast = decide_abb_sc_with(&g, Exec::Sequential).unwrap();
        prop_assert_eq!(fast.is_some(), brute_srcw(&g, &abb).unwrap().is_some());
        if let Some(c) = fast {
            prop_assert!(c.to_automaton(&g).unwrap().is_reset_word(&abb));
        }
    }

    #[test]
    fn auto_dispatch_agrees_with_oracle(g in graph(6), w in word(5)) {
        if let Ok(d) = decide(&g, &w, Algorithm::Auto, Exec::Parallel) {
            prop_assert_eq!(d.coloring.is_some(), brute_srcw(&g, &w).unwrap().is_some());
        }
    }

    #[test]
    fn gadgets_are_admissible(phi in instance(3, 2), k in 2usize..5, l in 1usize..3) {
        let abba: Word = "abba".parse().unwrap();
        let gadgets = [
            build_gadget_t3(k, &phi).unwrap(),
            build_gadget_t4(k, l, &phi).unwrap(),
            build_gadget_sc(&abba, &phi).unwrap(),
        ];
        for g in &gadgets {
            prop_assert_eq!(g.graph.constant_out_degree(), Some(2));
            prop_assert!(g.graph.is_aperiodic());
            prop_assert_eq!(g.roles.len(), g.graph.state_count());
        }
        prop_assert!(gadgets[2].graph.is_strongly_connected());
    }
}
