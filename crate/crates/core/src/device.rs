//! Sink devices: partial automata in which a word sends every state to `q0`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::automata::PartialAutomaton;
use crate::error::{Error, Result};
use crate::word::{factors, prefixes, suffixes, Letter, Word};

/// The device `D(w)`; state `i` is named by `labels[i]`, and `q0 = [ε]` is state 0.
#[derive(Clone, Debug, Serialize)]
pub struct SinkDevice {
    pub word: Word,
    pub automaton: PartialAutomaton,
    pub labels: Vec<Word>,
    pub q0: usize,
}

impl SinkDevice {
    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &Word) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn report(&self) -> DeviceReport {
        verify_sink_device(&self.automaton, self.q0, &self.word)
    }
}

/// States are the factors `u` of `w` none of whose nonempty prefixes is a suffix of `w`.
fn device_states(f: &BTreeSet<Word>, s: &BTreeSet<Word>) -> Vec<Word> {
    f.iter()
        .filter(|u| (1..=u.len()).all(|i| !s.contains(&u.slice(0, i))))
        .cloned()
        .collect()
}

pub fn build_sink_device(w: &Word) -> Result<SinkDevice> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let f = factors(w);
    let s = suffixes(w);
    let p = prefixes(w);
    let labels = device_states(&f, &s);
    let index: BTreeMap<&Word, usize> = labels.iter().enumerate().map(|(i, u)| (u, i)).collect();
    let transitions = labels
        .iter()
        .map(|u| {
            Letter::ALL.map(|x| {
                let ux = u.push(x);
                if let Some(&t) = index.get(&ux) {
                    Some(t)
                } else if s.contains(&ux)
                    || (0..=u.len()).any(|i| p.contains(&u.slice(i, u.len()).push(x)))
                {
                    Some(0)
                } else {
                    None
                }
            })
        })
        .collect();
    debug_assert!(labels[0].is_empty());
    Ok(SinkDevice {
        word: w.clone(),
        automaton: PartialAutomaton::new(transitions)?,
        labels,
        q0: 0,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DeviceReport {
    /// `q0` is fixed by every prefix of the word.
    pub cond1: bool,
    /// The word sends every state to `q0` through defined transitions.
    pub cond2: bool,
    pub strongly_connected: bool,
    pub incomplete: bool,
    /// `q0` is fixed by every suffix of the word.
    pub suffix_closed: bool,
}

impl DeviceReport {
    pub fn is_sink_device(&self) -> bool {
        self.cond1 && self.cond2
    }
}

pub fn verify_sink_device(p: &PartialAutomaton, q0: usize, w: &Word) -> DeviceReport {
    let fixes = |u: &Word| p.run(q0, u) == Some(q0);
    DeviceReport {
        cond1: prefixes(w).iter().all(fixes),
        cond2: (0..p.state_count()).all(|s| p.run(s, w) == Some(q0)),
        strongly_connected: p.is_strongly_connected(),
        incomplete: p.is_incomplete(),
        suffix_closed: suffixes(w).iter().all(fixes),
    }
}

/// A word `u` certifying that `D(w)` is incomplete: `[u]` is a state, `uy` is not a
/// factor, and no nonempty suffix of `uy` is a prefix, where `y` is the letter `w`
/// does not start with. The first such state label in shortlex order.
pub fn lemma9_witness(w: &Word) -> Result<Option<Word>> {
    let x = w.first().ok_or(Error::EmptyWord)?;
    let y = x.other();
    let f = factors(w);
    let p = prefixes(w);
    Ok(device_states(&f, &suffixes(w)).into_iter().find(|u| {
        let uy = u.push(y);
        !f.contains(&uy) && (0..uy.len()).all(|i| !p.contains(&uy.slice(i, uy.len())))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn aba_device() {
        let d = build_sink_device(&w("aba")).unwrap();
        assert_eq!(d.labels, vec![w(""), w("b")]);
        let a = &d.automaton;
        assert_eq!(a.step(0, Letter::A), Some(0));
        assert_eq!(a.step(0, Letter::B), Some(1));
        assert_eq!(a.step(1, Letter::A), Some(0));
        assert_eq!(a.step(1, Letter::B), None);
        let r = d.report();
        assert!(r.cond2 && r.strongly_connected && r.incomplete && r.suffix_closed);
        // δ([ε], ab) = [b]
        assert!(!r.cond1);
    }

    #[test]
    fn abab_device_is_complete() {
        let d = build_sink_device(&w("abab")).unwrap();
        assert!(!d.automaton.is_incomplete());
        assert_eq!(lemma9_witness(&w("abab")).unwrap(), None);
    }

    #[test]
    fn trivial_sink_device() {
        let sink = PartialAutomaton::new(vec![[Some(0), Some(0)]]).unwrap();
        let r = verify_sink_device(&sink, 0, &w("abba"));
        assert!(r.cond1 && r.cond2 && r.strongly_connected && !r.incomplete);
    }

    #[test]
    fn undefined_step_on_the_word_path() {
        let p = PartialAutomaton::new(vec![[Some(0), None]]).unwrap();
        assert!(!verify_sink_device(&p, 0, &w("ab")).cond2);
    }

    #[test]
    fn lemma9_examples() {
        assert_eq!(lemma9_witness(&w("aba")).unwrap(), Some(w("b")));
        assert!(lemma9_witness(&Word::empty()).is_err());
    }
}
