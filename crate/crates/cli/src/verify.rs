//! Self-check suites run by `srcw verify`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use srcw::automata::brute_srcw;
use srcw::deciders::{decide_abb_sc, decide_t1, decide_t2};
use srcw::device::{build_sink_device, lemma9_witness};
use srcw::gadgets::{build_gadget_sc, build_gadget_t3, build_gadget_t4, GadgetGraph};
use srcw::generate::{all_graphs, all_graphs_unordered, random_graph_with};
use srcw::wsat::{check, solve, validation_matrix, WSatInstance};
use srcw::{Coloring, Graph, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Scope {
    Device,
    T1,
    T2,
    T3,
    T4,
    Sc,
    Lemma1,
    Theorem6,
}

pub struct Suite {
    pub passed: bool,
    pub details: Value,
}

/// Runs `scope`; `bound` caps the state count (or word length for `device`).
pub fn run(scope: Scope, bound: Option<usize>, seed: u64) -> anyhow::Result<Suite> {
    match scope {
        Scope::Device => device(bound.unwrap_or(6)),
        Scope::T1 => poly(bound.unwrap_or(3), &["a", "aa", "aaa", "aaaa"], decide_t1),
        Scope::T2 => poly(bound.unwrap_or(3), &["ab", "aab", "aaab"], decide_t2),
        Scope::T3 => contract(|phi| build_gadget_t3(2, phi)),
        Scope::T4 => {
            let a = contract(|phi| build_gadget_t4(1, 1, phi))?;
            let b = contract(|phi| build_gadget_t4(2, 1, phi))?;
            Ok(Suite {
                passed: a.passed && b.passed,
                details: json!({ "aba": a.details, "abba": b.details }),
            })
        }
        Scope::Sc => sc(),
        Scope::Lemma1 => lemma1(bound.unwrap_or(3).min(3)),
        Scope::Theorem6 => theorem6(bound.unwrap_or(4), seed),
    }
}

fn resets(g: &Graph, w: &Word, c: &Coloring) -> bool {
    c.to_automaton(g).is_ok_and(|a| a.is_reset_word(w))
}

fn device(max_len: usize) -> anyhow::Result<Suite> {
    let mut failures = Vec::new();
    let mut cond1_exceptions = Vec::new();
    let mut incomplete = 0;
    let mut words = 0;
    for w in Word::all_up_to(max_len).skip(1) {
        words += 1;
        let d = build_sink_device(&w)?;
        let r = d.report();
        if !r.cond2 || !r.strongly_connected {
            failures.push(w.to_string());
        }
        if lemma9_witness(&w)?.is_some() && !r.incomplete {
            failures.push(format!("{w} (witness but complete)"));
        }
        if !r.cond1 {
            cond1_exceptions.push(w.to_string());
        }
        incomplete += usize::from(r.incomplete);
    }
    Ok(Suite {
        passed: failures.is_empty(),
        details: json!({
            "words": words,
            "incomplete": incomplete,
            "failures": failures,
            "cond1_exceptions": cond1_exceptions,
        }),
    })
}

fn poly<F>(max_states: usize, words: &[&str], decider: F) -> anyhow::Result<Suite>
where
    F: Fn(&Graph, &Word) -> srcw::Result<Option<Coloring>>,
{
    let mut graphs = 0;
    let mut disagreements = Vec::new();
    for n in 1..=max_states {
        for g in all_graphs(n) {
            graphs += 1;
            for w in words {
                let w: Word = w.parse()?;
                let fast = decider(&g, &w)?;
                let slow = brute_srcw(&g, &w)?;
                let witness_ok = fast.as_ref().is_none_or(|c| resets(&g, &w, c));
                if fast.is_some() != slow.is_some() || !witness_ok {
                    disagreements.push(format!("{} {w}", g.to_json()));
                }
            }
        }
    }
    Ok(Suite {
        passed: disagreements.is_empty(),
        details: json!({ "graphs": graphs, "disagreements": disagreements }),
    })
}

fn round_trip(g: &GadgetGraph, phi: &WSatInstance) -> anyhow::Result<bool> {
    let brute = brute_srcw(&g.graph, &g.word)?;
    let sat = solve(phi)?;
    let mut ok = brute.is_some() == sat.is_some();
    if let Some(c) = brute {
        ok &= check(phi, &g.extract_assignment(&c)?)?;
    }
    if let Some(xi) = sat {
        ok &= resets(&g.graph, &g.word, &g.color(&xi)?);
    }
    Ok(ok)
}

fn contract<F>(build: F) -> anyhow::Result<Suite>
where
    F: Fn(&WSatInstance) -> srcw::Result<GadgetGraph>,
{
    let mut failures = Vec::new();
    let matrix = validation_matrix();
    for (i, phi) in matrix.iter().enumerate() {
        if !round_trip(&build(phi)?, phi)? {
            failures.push(i);
        }
    }
    Ok(Suite {
        passed: failures.is_empty(),
        details: json!({ "instances": matrix.len(), "failures": failures }),
    })
}

fn sc() -> anyhow::Result<Suite> {
    let w: Word = "abba".parse()?;
    let mut results = Vec::new();
    let mut passed = true;
    for phi in validation_matrix()
        .into_iter()
        .filter(|p| solve(p).is_ok_and(|s| s.is_some()))
        .take(5)
    {
        let g = build_gadget_sc(&w, &phi)?;
        let structural = g.graph.is_strongly_connected()
            && g.graph.is_aperiodic()
            && g.graph.constant_out_degree() == Some(2);
        let colored = g.color(&solve(&phi)?.expect("satisfiable")).is_ok();
        passed &= structural && colored;
        results.push(json!({
            "states": g.graph.state_count(),
            "structural": structural,
            "reset_coloring": colored,
        }));
    }
    Ok(Suite {
        passed,
        details: json!({ "word": "abba", "instances": results }),
    })
}

fn lemma1(max_states: usize) -> anyhow::Result<Suite> {
    let words: Vec<Word> = Word::all_up_to(2).collect();
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for n in 1..=max_states {
        for g in all_graphs(n) {
            for w in &words {
                let base = brute_srcw(&g, w)?.is_some();
                for u in &words {
                    let extended = g.chain_extension(u.len())?;
                    let uw = u.concat(w);
                    checked += 1;
                    if brute_srcw(&extended, &uw)?.is_some() != base {
                        disagreements.push(format!("{} u={u} w={w}", g.to_json()));
                    }
                }
            }
        }
    }
    Ok(Suite {
        passed: disagreements.is_empty(),
        details: json!({ "cases": checked, "disagreements": disagreements }),
    })
}

fn theorem6(max_states: usize, seed: u64) -> anyhow::Result<Suite> {
    let abb: Word = "abb".parse()?;
    let mut disagreements = Vec::new();
    let mut compare = |g: &Graph| -> anyhow::Result<()> {
        let fast = decide_abb_sc(g)?;
        let slow = brute_srcw(g, &abb)?;
        let witness_ok = fast.as_ref().is_none_or(|c| resets(g, &abb, c));
        if fast.is_some() != slow.is_some() || !witness_ok {
            disagreements.push(g.to_json());
        }
        Ok(())
    };
    let mut exhaustive = 0;
    for n in 1..=max_states {
        for g in all_graphs_unordered(n).filter(Graph::is_strongly_connected) {
            exhaustive += 1;
            compare(&g)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampled = 1000;
    for i in 0..sampled {
        let n = max_states + 1 + i % 3;
        compare(&random_graph_with(&mut rng, n, true, false)?)?;
    }
    Ok(Suite {
        passed: disagreements.is_empty(),
        details: json!({
            "exhaustive": exhaustive,
            "sampled": sampled,
            "disagreements": disagreements,
        }),
    })
}
