//! The free left restriction monoid on a finite alphabet: pairs `(A, w)`
//! with A a finite prefix-closed set of words and w ∈ A.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Letter names used in the text form. `e` is reserved for ε.
pub const LETTERS: &str = "xyzuvwpqrstabcdfghijklmno";

/// A word as letter indices into the alphabet.
pub type LWord = Vec<u8>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LrError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),
    #[error("alphabet of size {0} is not supported")]
    BadAlphabet(usize),
    #[error("word is not a member of the prefix set")]
    NotAMember,
    #[error("cannot parse {0:?}")]
    Parse(String),
}

fn shortlex(a: &LWord, b: &LWord) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// A finite prefix-closed set of words, stored sorted in shortlex order.
/// Always contains ε.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LWord>", into = "Vec<LWord>")]
pub struct PrefixSet {
    words: Vec<LWord>,
}

impl TryFrom<Vec<LWord>> for PrefixSet {
    type Error = LrError;

    fn try_from(words: Vec<LWord>) -> Result<Self, LrError> {
        let set = PrefixSet::closure(words.iter().map(|w| w.as_slice()));
        let mut given = words;
        given.push(Vec::new());
        given.sort_by(shortlex);
        given.dedup();
        if set.words != given {
            return Err(LrError::Parse("set is not prefix-closed".into()));
        }
        Ok(set)
    }
}

impl From<PrefixSet> for Vec<LWord> {
    fn from(p: PrefixSet) -> Self {
        p.words
    }
}

impl PrefixSet {
    /// `{ε}`, the identity of the semilattice.
    pub fn trivial() -> Self {
        PrefixSet {
            words: vec![Vec::new()],
        }
    }

    /// The prefix closure of a family of words.
    pub fn closure<'a>(words: impl IntoIterator<Item = &'a [u8]>) -> Self {
        let mut all: Vec<LWord> = vec![Vec::new()];
        for w in words {
            for k in 1..=w.len() {
                all.push(w[..k].to_vec());
            }
        }
        all.sort_by(shortlex);
        all.dedup();
        PrefixSet { words: all }
    }

    /// `w↓`, the set of prefixes of w.
    pub fn down(w: &[u8]) -> Self {
        PrefixSet::closure([w])
    }

    pub fn words(&self) -> &[LWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.words
            .binary_search_by(|x| shortlex(x, &w.to_vec()))
            .is_ok()
    }

    pub fn union(&self, other: &PrefixSet) -> PrefixSet {
        let mut all = self.words.clone();
        all.extend(other.words.iter().cloned());
        all.sort_by(shortlex);
        all.dedup();
        PrefixSet { words: all }
    }

    pub fn is_subset(&self, other: &PrefixSet) -> bool {
        self.words.iter().all(|w| other.contains(w))
    }

    fn max_letter(&self) -> Option<u8> {
        self.words.iter().flatten().copied().max()
    }
}

/// `ʷA = w↓ ∪ wA`.
pub fn act_word(w: &[u8], a: &PrefixSet) -> PrefixSet {
    let shifted: Vec<LWord> = a.words.iter().map(|v| [w, v.as_slice()].concat()).collect();
    PrefixSet::closure(shifted.iter().map(|v| v.as_slice()))
}

/// An element `(A, w)` of the free left restriction monoid on `alphabet`
/// letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LRElement {
    pub alphabet: usize,
    pub set: PrefixSet,
    pub word: LWord,
}

impl LRElement {
    pub fn new(alphabet: usize, set: PrefixSet, word: LWord) -> Result<Self, LrError> {
        if alphabet == 0 || alphabet > LETTERS.len() {
            return Err(LrError::BadAlphabet(alphabet));
        }
        if set.max_letter().is_some_and(|m| m as usize >= alphabet) {
            return Err(LrError::Parse("letter outside the alphabet".into()));
        }
        if !set.contains(&word) {
            return Err(LrError::NotAMember);
        }
        Ok(LRElement {
            alphabet,
            set,
            word,
        })
    }

    pub fn identity(alphabet: usize) -> Self {
        LRElement {
            alphabet,
            set: PrefixSet::trivial(),
            word: Vec::new(),
        }
    }

    /// The projection `(A, ε)`.
    pub fn projection(alphabet: usize, set: PrefixSet) -> Self {
        LRElement {
            alphabet,
            set,
            word: Vec::new(),
        }
    }

    /// The copy `(w↓, w)` of a word.
    pub fn from_word(alphabet: usize, w: &[u8]) -> Self {
        LRElement {
            alphabet,
            set: PrefixSet::down(w),
            word: w.to_vec(),
        }
    }

    pub fn is_projection(&self) -> bool {
        self.word.is_empty()
    }
}

/// `(A, w)(B, v) = (A ∪ wB, wv)`.
pub fn lr_product(x: &LRElement, y: &LRElement) -> Result<LRElement, LrError> {
    if x.alphabet != y.alphabet {
        return Err(LrError::AlphabetMismatch(x.alphabet, y.alphabet));
    }
    let set = x.set.union(&act_word(&x.word, &y.set));
    Ok(LRElement {
        alphabet: x.alphabet,
        set,
        word: [x.word.as_slice(), &y.word].concat(),
    })
}

/// `(A, w)⁺ = (A, ε)`.
pub fn lr_plus(x: &LRElement) -> LRElement {
    LRElement::projection(x.alphabet, x.set.clone())
}

/// The least proper congruence: equal second coordinates.
pub fn sigma_related(x: &LRElement, y: &LRElement) -> bool {
    x.word == y.word
}

/// The minimum monoid generating set, truncated to words of length at most
/// `max_len`: the projections `w↓` for nonempty w, then the letters.
pub fn min_genset(alphabet: usize, max_len: usize) -> Vec<LRElement> {
    let mut out: Vec<LRElement> = words_up_to(alphabet, max_len)
        .iter()
        .map(|w| LRElement::projection(alphabet, PrefixSet::down(w)))
        .collect();
    out.extend((0..alphabet as u8).map(|x| LRElement::from_word(alphabet, &[x])));
    out
}

/// Nonempty words of length at most `max_len`, in shortlex order.
pub fn words_up_to(alphabet: usize, max_len: usize) -> Vec<LWord> {
    let mut out = Vec::new();
    let mut layer: Vec<LWord> = vec![Vec::new()];
    for _ in 0..max_len {
        let next: Vec<LWord> = layer
            .iter()
            .flat_map(|w| (0..alphabet as u8).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// A random element: the prefix closure of up to `max_words` random words of
/// length at most `max_len`, with a uniformly chosen member as the word.
pub fn sample_element<R: Rng>(
    rng: &mut R,
    alphabet: usize,
    max_words: usize,
    max_len: usize,
) -> LRElement {
    let k = rng.gen_range(0..=max_words);
    let words: Vec<LWord> = (0..k)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).map(|_| rng.gen_range(0..alphabet as u8)).collect()
        })
        .collect();
    let set = PrefixSet::closure(words.iter().map(|w| w.as_slice()));
    let word = set.words[rng.gen_range(0..set.len())].clone();
    LRElement {
        alphabet,
        set,
        word,
    }
}

pub fn format_word(w: &[u8]) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter()
        .map(|&x| LETTERS.as_bytes()[x as usize] as char)
        .collect()
}

fn parse_word(s: &str) -> Result<LWord, LrError> {
    if s == "e" {
        return Ok(Vec::new());
    }
    s.chars()
        .map(|c| {
            LETTERS
                .find(c)
                .map(|i| i as u8)
                .ok_or_else(|| LrError::Parse(s.into()))
        })
        .collect()
}

impl fmt::Display for LRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.set.words.iter().map(|w| format_word(w)).collect();
        write!(f, "{{{}}}@{}", inner.join(","), format_word(&self.word))
    }
}

impl LRElement {
    /// Parses the text form `{e,x,xy}@xy` over an alphabet of the given size.
    pub fn parse(alphabet: usize, s: &str) -> Result<Self, LrError> {
        let err = || LrError::Parse(s.into());
        let (set, word) = s.trim().split_once('@').ok_or_else(err)?;
        let inner = set
            .trim()
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(err)?;
        let words: Vec<LWord> = inner
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(parse_word)
            .collect::<Result<_, _>>()?;
        let set = PrefixSet::try_from(words).map_err(|_| err())?;
        LRElement::new(alphabet, set, parse_word(word.trim())?)
    }
}

impl FromStr for LRElement {
    type Err = LrError;

    /// Parses with the alphabet taken from the largest letter used.
    fn from_str(s: &str) -> Result<Self, LrError> {
        let largest = s
            .chars()
            .filter_map(|c| LETTERS.find(c))
            .max()
            .map_or(1, |i| i + 1);
        LRElement::parse(largest, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let x: LRElement = "{e,x,xy}@xy".parse().unwrap();
        assert_eq!(x.to_string(), "{e,x,xy}@xy");
        assert!("{e,xy}@xy".parse::<LRElement>().is_err());
        assert!("{e,x}@y".parse::<LRElement>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = LRElement::parse(2, "{e,x,y,yx}@y").unwrap();
        let s = serde_json::to_string(&x).unwrap();
        let back: LRElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }
}
