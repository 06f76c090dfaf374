use srcw::automata::brute_srcw;
use srcw::device::build_sink_device;
use srcw::gadgets::{build_gadget_sc, build_gadget_t3, build_gadget_t4, GadgetGraph};
use srcw::word::{classify, WordClass};
use srcw::wsat::{check, solve, validation_matrix, WSatInstance};
use srcw::Word;

fn contract(g: &GadgetGraph, phi: &WSatInstance) {
    let brute = brute_srcw(&g.graph, &g.word).unwrap();
    let sat = solve(phi).unwrap();
    assert_eq!(brute.is_some(), sat.is_some(), "{} {phi:?}", g.word);
    if let Some(c) = brute {
        let xi = g.extract_assignment(&c).unwrap();
        assert!(check(phi, &xi).unwrap());
    }
    if let Some(xi) = sat {
        let c = g.color(&xi).unwrap();
        assert!(c.to_automaton(&g.graph).unwrap().is_reset_word(&g.word));
    }
}

#[test]
fn t3_contract_on_the_matrix() {
    for phi in validation_matrix() {
        contract(&build_gadget_t3(2, &phi).unwrap(), &phi);
    }
}

#[test]
fn t4_contract_on_the_matrix() {
    for phi in validation_matrix() {
        for (k, l) in [(1, 1), (2, 1)] {
            contract(&build_gadget_t4(k, l, &phi).unwrap(), &phi);
        }
    }
}

#[test]
fn sc_colorings_for_every_incomplete_device() {
    let sat: Vec<WSatInstance> = validation_matrix()
        .into_iter()
        .filter(|p| solve(p).unwrap().is_some())
        .take(3)
        .collect();
    let mut built = 0;
    for w in Word::all_up_to(7).filter(|w| classify(w) == WordClass::T4) {
        if !build_sink_device(&w).unwrap().automaton.is_incomplete() {
            assert!(build_gadget_sc(&w, &sat[0]).is_err());
            continue;
        }
        for phi in &sat {
            let g = build_gadget_sc(&w, phi).unwrap();
            assert!(
                g.graph.is_strongly_connected() && g.graph.is_aperiodic(),
                "{w}"
            );
            let xi = solve(phi).unwrap().unwrap();
            let c = g.color(&xi).unwrap();
            assert!(check(phi, &g.extract_assignment(&c).unwrap()).unwrap());
            built += 1;
        }
    }
    assert!(built > 0);
}
