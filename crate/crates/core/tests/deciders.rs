use srcw::automata::brute_srcw;
use srcw::deciders::{decide_abb_sc, decide_t1, decide_t2};
use srcw::{Graph, Word};

/// Every out-degree-2 graph on `n` states, with unordered target pairs.
fn graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<[usize; 2]> = (0..n).flat_map(|i| (i..n).map(move |j| [i, j])).collect();
    let total = pairs.len().pow(n as u32);
    (0..total).map(move |mut code| {
        let t: Vec<[usize; 2]> = (0..n)
            .map(|_| {
                let p = pairs[code % pairs.len()];
                code /= pairs.len();
                p
            })
            .collect();
        Graph::from_targets(&t).unwrap()
    })
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn t1_agrees_with_oracle_up_to_four_states() {
    for n in 1..=4 {
        for g in graphs(n) {
            for word in ["a", "aa", "bbb"] {
                let fast = decide_t1(&g, &w(word)).unwrap();
                let slow = brute_srcw(&g, &w(word)).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{g:?} {word}");
            }
        }
    }
}

#[test]
fn t2_agrees_with_oracle_up_to_four_states() {
    for n in 1..=4 {
        for g in graphs(n) {
            for word in ["ab", "aab", "ba"] {
                let fast = decide_t2(&g, &w(word)).unwrap();
                let slow = brute_srcw(&g, &w(word)).unwrap();
                assert_eq!(fast.is_some(), slow.is_some(), "{g:?} {word}");
            }
        }
    }
}

#[test]
fn abb_agrees_with_oracle_up_to_four_states() {
    let abb = w("abb");
    for n in 1..=4 {
        for g in graphs(n).filter(Graph::is_strongly_connected) {
            let fast = decide_abb_sc(&g).unwrap();
            let slow = brute_srcw(&g, &abb).unwrap();
            assert_eq!(fast.is_some(), slow.is_some(), "{g:?}");
        }
    }
}
