use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FmError;

/// A word over an alphabet, as letter indices. The empty word is ε.
pub type Word = Vec<usize>;

/// Shortlex order: shorter words first, then lexicographic.
pub fn shortlex_cmp(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Monoid,
    Semigroup,
}

/// A finite presentation. Relations are kept with the shortlex-larger side
/// first, without duplicates or trivial relations, in insertion order.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPresentation")]
pub struct Presentation {
    pub kind: Kind,
    alphabet: Vec<String>,
    relations: Vec<(Word, Word)>,
    #[serde(skip)]
    seen: HashSet<(Word, Word)>,
}

#[derive(Deserialize)]
struct RawPresentation {
    kind: Kind,
    alphabet: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl TryFrom<RawPresentation> for Presentation {
    type Error = FmError;

    fn try_from(raw: RawPresentation) -> Result<Self, FmError> {
        let mut p = Presentation::new(raw.kind);
        for name in raw.alphabet {
            if p.letter(&name).is_some() {
                return Err(FmError::BadInput(format!("duplicate letter {name}")));
            }
            p.add_letter(&name);
        }
        for (u, v) in raw.relations {
            p.try_add_relation(u, v)?;
        }
        Ok(p)
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.alphabet == other.alphabet
            && self.relations == other.relations
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new(kind: Kind) -> Self {
        Presentation {
            kind,
            alphabet: Vec::new(),
            relations: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn with_letters<S: AsRef<str>>(kind: Kind, names: &[S]) -> Self {
        let mut p = Presentation::new(kind);
        for n in names {
            p.add_letter(n.as_ref());
        }
        p
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn num_letters(&self) -> usize {
        self.alphabet.len()
    }

    /// Appends a letter and returns its index.
    pub fn add_letter(&mut self, name: &str) -> usize {
        self.alphabet.push(name.to_string());
        self.alphabet.len() - 1
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|a| a == name)
    }

    /// Adds a relation, panicking on invalid input. Use in builders where the
    /// words are constructed from the alphabet itself.
    pub fn add_relation(&mut self, u: Word, v: Word) {
        self.try_add_relation(u, v).expect("invalid relation");
    }

    /// Adds a relation after validation; returns whether it was new.
    pub fn try_add_relation(&mut self, u: Word, v: Word) -> Result<bool, FmError> {
        let n = self.alphabet.len();
        if u.iter().chain(v.iter()).any(|&x| x >= n) {
            return Err(FmError::BadInput(
                "relation uses a letter outside the alphabet".into(),
            ));
        }
        if self.kind == Kind::Semigroup && (u.is_empty() || v.is_empty()) {
            return Err(FmError::BadInput(
                "empty word in a semigroup presentation".into(),
            ));
        }
        if u == v {
            return Ok(false);
        }
        let pair = if shortlex_cmp(&u, &v) == Ordering::Greater {
            (u, v)
        } else {
            (v, u)
        };
        if self.seen.contains(&pair) {
            return Ok(false);
        }
        self.seen.insert(pair.clone());
        self.relations.push(pair);
        Ok(true)
    }

    /// Adds every relation of `other`, whose letters are renamed through `map`.
    pub fn absorb(&mut self, other: &Presentation, map: &[usize]) {
        for (u, v) in other.relations() {
            let u2 = u.iter().map(|&x| map[x]).collect();
            let v2 = v.iter().map(|&x| map[x]).collect();
            self.add_relation(u2, v2);
        }
    }

    /// Parses a whitespace-separated list of letter names. A token "ε" that is
    /// not a letter name contributes nothing.
    pub fn parse_word(&self, s: &str) -> Result<Word, FmError> {
        let mut w = Vec::new();
        for tok in s.split_whitespace() {
            match self.letter(tok) {
                Some(i) => w.push(i),
                None if tok == "ε" => {}
                None => return Err(FmError::BadInput(format!("unknown letter {tok}"))),
            }
        }
        Ok(w)
    }

    pub fn format_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter()
            .map(|&x| self.alphabet[x].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Deletes the letters for which `keep` is false, dropping every relation
    /// that mentions one of them. Returns the old-to-new index map.
    pub fn restrict_letters(&self, keep: &[bool]) -> (Presentation, Vec<Option<usize>>) {
        let mut p = Presentation::new(self.kind);
        let mut map = vec![None; self.alphabet.len()];
        for (i, name) in self.alphabet.iter().enumerate() {
            if keep[i] {
                map[i] = Some(p.add_letter(name));
            }
        }
        for (u, v) in &self.relations {
            let mu: Option<Word> = u.iter().map(|&x| map[x]).collect();
            let mv: Option<Word> = v.iter().map(|&x| map[x]).collect();
            if let (Some(a), Some(b)) = (mu, mv) {
                p.add_relation(a, b);
            }
        }
        (p, map)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, FmError> {
        serde_json::from_str(s).map_err(|e| FmError::BadInput(e.to_string()))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Monoid => "Mon",
            Kind::Semigroup => "Sgp",
        };
        writeln!(f, "{kind}⟨{}⟩", self.alphabet.join(", "))?;
        for (u, v) in &self.relations {
            writeln!(f, "  {} = {}", self.format_word(u), self.format_word(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations_are_canonical() {
        let mut p = Presentation::with_letters(Kind::Monoid, &["a", "b"]);
        assert!(p.try_add_relation(vec![0], vec![1, 1]).unwrap());
        assert!(!p.try_add_relation(vec![1, 1], vec![0]).unwrap());
        assert!(!p.try_add_relation(vec![0, 1], vec![0, 1]).unwrap());
        assert_eq!(p.relations(), &[(vec![1, 1], vec![0])]);
        assert!(p.try_add_relation(vec![0, 1], vec![1, 0]).unwrap());
        assert_eq!(p.relations()[1], (vec![1, 0], vec![0, 1]));
    }

    #[test]
    fn json_round_trip() {
        let mut p = Presentation::with_letters(Kind::Semigroup, &["x", "y"]);
        p.add_relation(vec![0, 0], vec![0]);
        p.add_relation(vec![0, 1], vec![1, 0]);
        let s = p.to_json();
        assert_eq!(
            s,
            r#"{"kind":"semigroup","alphabet":["x","y"],"relations":[[[0,0],[0]],[[1,0],[0,1]]]}"#
        );
        assert_eq!(Presentation::from_json(&s).unwrap(), p);
    }

    #[test]
    fn semigroup_rejects_empty_side() {
        let mut p = Presentation::with_letters(Kind::Semigroup, &["x"]);
        assert!(p.try_add_relation(vec![0, 0], vec![]).is_err());
    }
}
