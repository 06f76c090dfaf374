//! Binary words, the four-way word classification, and factor sets.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::A, Letter::B];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Letter> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

/// A finite word over `{a, b}`, possibly empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn power(letter: Letter, k: usize) -> Self {
        Word(vec![letter; k])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// The image under the letter exchange `a <-> b`.
    pub fn swap_letters(&self) -> Word {
        Word(self.0.iter().map(|l| l.other()).collect())
    }

    /// Maximal blocks of equal letters, in order.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut runs: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match runs.last_mut() {
                Some((last, n)) if *last == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }

    pub fn is_prefix_of(&self, w: &Word) -> bool {
        w.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, w: &Word) -> bool {
        w.0.ends_with(&self.0)
    }

    pub fn is_factor_of(&self, w: &Word) -> bool {
        self.is_empty() || w.0.windows(self.len()).any(|win| win == self.0.as_slice())
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn all_of_length(len: usize) -> impl Iterator<Item = Word> {
        (0u64..1 << len).map(move |bits| {
            Word(
                (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 0 {
                            Letter::A
                        } else {
                            Letter::B
                        }
                    })
                    .collect(),
            )
        })
    }

    /// All words of length at most `max_len`, shortest first.
    pub fn all_up_to(max_len: usize) -> impl Iterator<Item = Word> {
        (0..=max_len).flat_map(Word::all_of_length)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Letter::from_char)
            .collect::<Result<_>>()
            .map(Word)
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex order: shorter words first, then lexicographic.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum WordClass {
    T1,
    T2,
    T3,
    T4,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// T1: `x^k` (k >= 0); T2: `x^k y` (k >= 1); T3: `x^l y^k` (l >= 1, k >= 2); T4: the rest.
pub fn classify(w: &Word) -> WordClass {
    match w.runs().as_slice() {
        [] | [_] => WordClass::T1,
        [_, (_, 1)] => WordClass::T2,
        [_, _] => WordClass::T3,
        _ => WordClass::T4,
    }
}

pub fn prefixes(w: &Word) -> BTreeSet<Word> {
    (0..=w.len()).map(|i| w.slice(0, i)).collect()
}

pub fn suffixes(w: &Word) -> BTreeSet<Word> {
    (0..=w.len()).map(|i| w.slice(i, w.len())).collect()
}

pub fn factors(w: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    out.insert(Word::empty());
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            out.insert(w.slice(i, j));
        }
    }
    out
}

/// The two sufficient conditions under which a T4 word admits an incomplete
/// strongly connected sink device, evaluated literally.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct IncompletenessConditions {
    /// First and last letter coincide.
    pub same_ends: bool,
    /// Ends differ and `x^k y^l x` is a factor while `x^(k+1)` and `y^(l+1)` are not.
    pub block_factor: bool,
}

impl IncompletenessConditions {
    pub fn any(&self) -> bool {
        self.same_ends || self.block_factor
    }
}

pub fn incompleteness_conditions(w: &Word) -> Result<IncompletenessConditions> {
    let class = classify(w);
    if class != WordClass::T4 {
        return Err(Error::WrongWordClass {
            word: w.clone(),
            class,
            expected: "T4",
        });
    }
    let x = w.first().unwrap();
    let y = x.other();
    let same_ends = w.last() == Some(x);
    let block_factor = !same_ends && {
        let max_x = (1..=w.len())
            .take_while(|&k| Word::power(x, k).is_factor_of(w))
            .last()
            .unwrap_or(0);
        let max_y = (1..=w.len())
            .take_while(|&l| Word::power(y, l).is_factor_of(w))
            .last()
            .unwrap_or(0);
        // x^(k+1) not a factor pins k to the longest x-block; same for l
        max_x >= 1 && max_y >= 1 && {
            let probe = Word::power(x, max_x).concat(&Word::power(y, max_y)).push(x);
            probe.is_factor_of(w)
        }
    };
    Ok(IncompletenessConditions {
        same_ends,
        block_factor,
    })
}

pub fn theorem10_applicable(w: &Word) -> Result<bool> {
    incompleteness_conditions(w).map(|c| c.any())
}
