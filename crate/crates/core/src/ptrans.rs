//! Partial transformations of `{1..n}`, composed left to right, and the
//! standard monoids and singular parts built from them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::fmonoid::{closure_from_generators, CayleyTable, FmError};

const UNDEF: u8 = u8::MAX;
/// Largest supported degree.
pub const MAX_DEGREE: usize = 64;
/// Largest degree for which whole families are listed.
pub const FAMILY_CAP: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PtError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// A partial map on `{1..n}`. Points are 1-based in the public interface.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialMap {
    img: Vec<u8>,
}

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        PartialMap {
            img: (0..n as u8).collect(),
        }
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DEGREE);
        PartialMap {
            img: vec![UNDEF; n],
        }
    }

    /// Builds a map from 1-based images, `None` meaning undefined.
    pub fn from_images(images: &[Option<usize>]) -> Result<Self, PtError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PtError::BadParams(format!("degree {n} too large")));
        }
        let mut img = Vec::with_capacity(n);
        for &y in images {
            img.push(match y {
                None => UNDEF,
                Some(y) if (1..=n).contains(&y) => (y - 1) as u8,
                Some(y) => return Err(PtError::BadParams(format!("image {y} outside 1..{n}"))),
            });
        }
        Ok(PartialMap { img })
    }

    /// Builds a total map from 1-based images.
    pub fn total(images: &[usize]) -> Result<Self, PtError> {
        Self::from_images(&images.iter().map(|&y| Some(y)).collect::<Vec<_>>())
    }

    fn check_point(n: usize, x: usize) -> Result<(), PtError> {
        if (1..=n).contains(&x) {
            Ok(())
        } else {
            Err(PtError::BadParams(format!("point {x} outside 1..{n}")))
        }
    }

    /// ε_{xy}: the idempotent sending y to x and fixing every other point.
    pub fn eps(n: usize, x: usize, y: usize) -> Result<Self, PtError> {
        Self::check_point(n, x)?;
        Self::check_point(n, y)?;
        if x == y {
            return Err(PtError::BadParams("eps needs distinct points".into()));
        }
        let mut m = Self::identity(n);
        m.img[y - 1] = (x - 1) as u8;
        Ok(m)
    }

    /// τ_{xy}: the transposition of x and y.
    pub fn tau(n: usize, x: usize, y: usize) -> Result<Self, PtError> {
        Self::check_point(n, x)?;
        Self::check_point(n, y)?;
        if x == y {
            return Err(PtError::BadParams("tau needs distinct points".into()));
        }
        let mut m = Self::identity(n);
        m.img.swap(x - 1, y - 1);
        Ok(m)
    }

    /// The partial identity on a set of 1-based points.
    pub fn id_on(n: usize, set: &[usize]) -> Result<Self, PtError> {
        let mut m = Self::empty(n);
        for &x in set {
            Self::check_point(n, x)?;
            m.img[x - 1] = (x - 1) as u8;
        }
        Ok(m)
    }

    /// The partial identity on `{1..n}` minus the point `i`.
    pub fn id_without(n: usize, i: usize) -> Result<Self, PtError> {
        Self::check_point(n, i)?;
        let mut m = Self::identity(n);
        m.img[i - 1] = UNDEF;
        Ok(m)
    }

    /// Partial identity on the points whose bit is set in `mask`.
    pub fn id_mask(n: usize, mask: u64) -> Self {
        let mut m = Self::empty(n);
        for x in 0..n {
            if mask >> x & 1 == 1 {
                m.img[x] = x as u8;
            }
        }
        m
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> Option<usize> {
        match self.img[x - 1] {
            UNDEF => None,
            y => Some(y as usize + 1),
        }
    }

    /// 0-based image, for tight loops.
    pub fn image0(&self, x: usize) -> Option<usize> {
        match self.img[x] {
            UNDEF => None,
            y => Some(y as usize),
        }
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        (1..=self.degree()).map(|x| self.apply(x)).collect()
    }

    pub fn dom(&self) -> Vec<usize> {
        (1..=self.degree())
            .filter(|&x| self.apply(x).is_some())
            .collect()
    }

    /// Domain as a bit mask over 0-based points.
    pub fn dom_mask(&self) -> u64 {
        self.img
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != UNDEF)
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    pub fn im(&self) -> Vec<usize> {
        let mask = self.im_mask();
        (1..=self.degree())
            .filter(|&x| mask >> (x - 1) & 1 == 1)
            .collect()
    }

    pub fn im_mask(&self) -> u64 {
        self.img
            .iter()
            .filter(|&&y| y != UNDEF)
            .fold(0, |m, &y| m | 1 << y)
    }

    pub fn rank(&self) -> usize {
        self.im_mask().count_ones() as usize
    }

    pub fn is_total(&self) -> bool {
        self.img.iter().all(|&y| y != UNDEF)
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.dom_mask().count_ones() as usize
    }

    pub fn is_permutation(&self) -> bool {
        self.is_total() && self.is_injective()
    }

    /// Whether this is a partial identity.
    pub fn is_idempotent_identity(&self) -> bool {
        self.img
            .iter()
            .enumerate()
            .all(|(x, &y)| y == UNDEF || y as usize == x)
    }

    pub fn is_idempotent(&self) -> bool {
        self.compose(self).map(|c| &c == self).unwrap_or(false)
    }

    /// Left-to-right composition: `x(ab) = (xa)b`.
    pub fn compose(&self, b: &PartialMap) -> Result<PartialMap, PtError> {
        if self.degree() != b.degree() {
            return Err(PtError::DegreeMismatch(self.degree(), b.degree()));
        }
        Ok(self.mul(b))
    }

    /// Composition for maps known to share a degree.
    pub fn mul(&self, b: &PartialMap) -> PartialMap {
        debug_assert_eq!(self.degree(), b.degree());
        PartialMap {
            img: self
                .img
                .iter()
                .map(|&y| if y == UNDEF { UNDEF } else { b.img[y as usize] })
                .collect(),
        }
    }

    /// `a⁺ = id_{dom a}`.
    pub fn plus(&self) -> PartialMap {
        Self::id_mask(self.degree(), self.dom_mask())
    }

    /// Preimage of a 0-based point mask.
    pub fn preimage_mask(&self, mask: u64) -> u64 {
        self.img
            .iter()
            .enumerate()
            .filter(|(_, &y)| y != UNDEF && mask >> y & 1 == 1)
            .fold(0, |m, (x, _)| m | 1 << x)
    }

    /// Restriction to a 0-based point mask, `id_A · a`.
    pub fn restrict_mask(&self, mask: u64) -> PartialMap {
        Self::id_mask(self.degree(), mask).mul(self)
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, y) in self.images().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            match y {
                Some(y) => write!(f, "{y}")?,
                None => write!(f, "⊥")?,
            }
        }
        write!(f, "]")
    }
}

/// Two-line notation, e.g. `1 2 3 / 2 - 3`.
impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = (1..=self.degree()).map(|x| x.to_string()).collect();
        let bottom: Vec<String> = self
            .images()
            .iter()
            .map(|y| y.map_or("-".to_string(), |y| y.to_string()))
            .collect();
        write!(f, "{} / {}", top.join(" "), bottom.join(" "))
    }
}

impl FromStr for PartialMap {
    type Err = PtError;

    /// Accepts two-line notation or just the bottom row.
    fn from_str(s: &str) -> Result<Self, PtError> {
        let (top, bottom) = match s.split_once('/') {
            Some((t, b)) => (Some(t), b),
            None => (None, s),
        };
        let parse_pt = |tok: &str| -> Result<Option<usize>, PtError> {
            match tok {
                "-" | "⊥" => Ok(None),
                _ => tok
                    .parse()
                    .map(Some)
                    .map_err(|_| PtError::BadParams(format!("bad point {tok}"))),
            }
        };
        let bottom: Vec<Option<usize>> = bottom
            .split_whitespace()
            .map(parse_pt)
            .collect::<Result<_, _>>()?;
        let n = bottom.len();
        let images = match top {
            None => bottom,
            Some(top) => {
                let top: Vec<usize> = top
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|_| PtError::BadParams(format!("bad point {t}")))
                    })
                    .collect::<Result<_, _>>()?;
                if top.len() != n {
                    return Err(PtError::BadParams("rows differ in length".into()));
                }
                let mut images = vec![None; n];
                let mut seen = vec![false; n];
                for (&x, &y) in top.iter().zip(&bottom) {
                    Self::check_point(n, x)?;
                    if std::mem::replace(&mut seen[x - 1], true) {
                        return Err(PtError::BadParams(format!("point {x} listed twice")));
                    }
                    images[x - 1] = y;
                }
                images
            }
        };
        PartialMap::from_images(&images)
    }
}

impl Serialize for PartialMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PartialMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<Option<usize>>::deserialize(d)?;
        PartialMap::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// The named families of partial transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// All partial maps.
    PT,
    /// Total maps.
    T,
    /// Injective partial maps.
    I,
    /// Permutations.
    G,
    /// Partial identities.
    E,
    SingPT,
    SingT,
    SingI,
    /// Partial identities other than the identity.
    SingE,
    /// Partial maps that are not total.
    PTminusT,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::PT,
        Family::T,
        Family::I,
        Family::G,
        Family::E,
        Family::SingPT,
        Family::SingT,
        Family::SingI,
        Family::SingE,
        Family::PTminusT,
    ];

    pub fn contains(self, a: &PartialMap) -> bool {
        match self {
            Family::PT => true,
            Family::T => a.is_total(),
            Family::I => a.is_injective(),
            Family::G => a.is_permutation(),
            Family::E => a.is_idempotent_identity(),
            Family::SingPT => !a.is_permutation(),
            Family::SingT => a.is_total() && !a.is_permutation(),
            Family::SingI => a.is_injective() && !a.is_permutation(),
            Family::SingE => a.is_idempotent_identity() && !a.is_total(),
            Family::PTminusT => !a.is_total(),
        }
    }

    /// Whether the family contains the identity map.
    pub fn is_monoid(self) -> bool {
        matches!(
            self,
            Family::PT | Family::T | Family::I | Family::G | Family::E
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PT => "PT",
            Family::T => "T",
            Family::I => "I",
            Family::G => "G",
            Family::E => "E",
            Family::SingPT => "SingPT",
            Family::SingT => "SingT",
            Family::SingI => "SingI",
            Family::SingE => "SingE",
            Family::PTminusT => "PTminusT",
        }
    }

    /// Lists the members of the family of degree `n`, in lexicographic order
    /// of image sequences with undefined first.
    pub fn elements(self, n: usize) -> Result<Vec<PartialMap>, PtError> {
        if n > FAMILY_CAP {
            return Err(PtError::BadParams(format!(
                "degree {n} above the listing cap {FAMILY_CAP}"
            )));
        }
        let mut out = Vec::new();
        let mut digits = vec![0usize; n];
        loop {
            let img = digits
                .iter()
                .map(|&d| if d == 0 { UNDEF } else { (d - 1) as u8 })
                .collect();
            let a = PartialMap { img };
            if self.contains(&a) {
                out.push(a);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                digits[k] += 1;
                if digits[k] <= n {
                    break;
                }
                digits[k] = 0;
            }
        }
    }

    /// A standard generating set: as a monoid for the monoid families and as
    /// a semigroup otherwise.
    pub fn generators(self, n: usize) -> Result<Vec<PartialMap>, PtError> {
        if n > MAX_DEGREE {
            return Err(PtError::BadParams(format!("degree {n} too large")));
        }
        let s: Vec<PartialMap> = (1..n)
            .map(|i| PartialMap::tau(n, i, i + 1).unwrap())
            .collect();
        let t: Vec<PartialMap> = (1..=n)
            .map(|i| PartialMap::id_without(n, i).unwrap())
            .collect();
        let e12: Vec<PartialMap> = if n >= 2 {
            vec![PartialMap::eps(n, 1, 2).unwrap()]
        } else {
            vec![]
        };
        let t1: Vec<PartialMap> = t.iter().take(1).cloned().collect();
        let all_eps = || -> Vec<PartialMap> {
            let mut v = Vec::new();
            for x in 1..=n {
                for y in 1..=n {
                    if x != y {
                        v.push(PartialMap::eps(n, x, y).unwrap());
                    }
                }
            }
            v
        };
        Ok(match self {
            Family::G => s,
            Family::T => [s, e12].concat(),
            Family::I => [s, t1].concat(),
            Family::PT => [s, e12, t1].concat(),
            Family::E | Family::SingE => t,
            Family::SingT => all_eps(),
            Family::SingPT => [all_eps(), t].concat(),
            Family::SingI | Family::PTminusT => greedy_generators(&self.elements(n)?),
        })
    }
}

/// A monoid of partial maps of degree n with its Cayley table.
#[derive(Clone, Debug)]
pub struct MapMonoid {
    pub table: CayleyTable,
    pub elems: Vec<PartialMap>,
    index: HashMap<PartialMap, usize>,
}

impl MapMonoid {
    /// The monoid generated by `gens` and the identity; the identity is element 0.
    pub fn generated(n: usize, gens: &[PartialMap], cap: usize) -> Result<Self, FmError> {
        if gens.iter().any(|g| g.degree() != n) {
            return Err(FmError::BadInput("generator degree differs".into()));
        }
        let (table, elems) =
            closure_from_generators(gens, |a, b| a.mul(b), Some(PartialMap::identity(n)), cap)?;
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        Ok(MapMonoid {
            table,
            elems,
            index,
        })
    }

    /// `PT_n` generated by its standard generators.
    pub fn full(n: usize) -> Result<Self, FmError> {
        let gens = Family::PT
            .generators(n)
            .map_err(|e| FmError::BadInput(e.to_string()))?;
        Self::generated(n, &gens, usize::MAX)
    }

    pub fn index_of(&self, a: &PartialMap) -> Option<usize> {
        self.index.get(a).copied()
    }

    /// Indices of the members of a family, in table order.
    pub fn family(&self, f: Family) -> Vec<usize> {
        (0..self.elems.len())
            .filter(|&i| f.contains(&self.elems[i]))
            .collect()
    }

    /// Indices of the members satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&PartialMap) -> bool) -> Vec<usize> {
        (0..self.elems.len())
            .filter(|&i| keep(&self.elems[i]))
            .collect()
    }
}

/// Picks elements in order, keeping each one not already generated by the
/// earlier picks.
fn greedy_generators(elems: &[PartialMap]) -> Vec<PartialMap> {
    use std::collections::HashSet;
    let mut gens: Vec<PartialMap> = Vec::new();
    let mut generated: HashSet<PartialMap> = HashSet::new();
    let mut sorted: Vec<&PartialMap> = elems.iter().collect();
    sorted.sort_by_key(|a| std::cmp::Reverse(a.rank()));
    for a in sorted {
        if generated.contains(a) {
            continue;
        }
        gens.push(a.clone());
        let mut frontier: Vec<PartialMap> = generated.iter().cloned().chain([a.clone()]).collect();
        generated.insert(a.clone());
        while let Some(x) = frontier.pop() {
            for g in &gens {
                for y in [x.mul(g), g.mul(&x)] {
                    if generated.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(s: &str) -> PartialMap {
        s.parse().unwrap()
    }

    #[test]
    fn composition_from_diagram() {
        let a = pm("2 - 3 2 6 6");
        let b = pm("1 1 - 4 - 4");
        assert_eq!(a.compose(&b).unwrap(), pm("1 - - 1 4 4"));
        assert_eq!(PartialMap::empty(6).mul(&a), PartialMap::empty(6));
        assert_eq!(PartialMap::identity(6).mul(&a), a);
        assert!(a.compose(&PartialMap::identity(3)).is_err());
    }

    #[test]
    fn plus_is_domain_identity() {
        let a = pm("2 - 3 2 6 6");
        assert_eq!(a.plus(), PartialMap::id_on(6, &[1, 3, 4, 5, 6]).unwrap());
        assert_eq!(a.plus().plus(), a.plus());
        assert_eq!(pm("2 1 1").plus(), PartialMap::identity(3));
    }

    #[test]
    fn constructors() {
        assert_eq!(PartialMap::eps(6, 2, 4).unwrap(), pm("1 2 3 2 5 6"));
        assert_eq!(PartialMap::tau(2, 1, 2).unwrap(), pm("2 1"));
        assert_eq!(PartialMap::id_on(3, &[]).unwrap(), PartialMap::empty(3));
        assert!(PartialMap::eps(3, 2, 2).is_err());
        assert!(PartialMap::tau(3, 1, 4).is_err());
    }

    #[test]
    fn text_and_json_forms() {
        let a = pm("1 2 3 / 2 - 3");
        assert_eq!(a.to_string(), "1 2 3 / 2 - 3");
        assert_eq!(pm("3 1 2 / 3 2 -"), a);
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, "[2,null,3]");
        assert_eq!(serde_json::from_str::<PartialMap>(&j).unwrap(), a);
        assert!(serde_json::from_str::<PartialMap>("[4,null,3]").is_err());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(Family::PT.elements(2).unwrap().len(), 9);
        assert_eq!(Family::T.elements(3).unwrap().len(), 27);
        assert_eq!(Family::G.elements(3).unwrap().len(), 6);
        assert_eq!(Family::I.elements(2).unwrap().len(), 7);
        assert_eq!(
            Family::SingT.elements(2).unwrap(),
            vec![pm("1 1"), pm("2 2")]
        );
    }
}
