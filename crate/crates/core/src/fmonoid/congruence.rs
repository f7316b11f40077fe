use std::collections::HashMap;
use std::hash::Hash;

use super::presentation::Word;
use super::table::CayleyTable;
use super::FmError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

impl Side {
    fn right(self) -> bool {
        matches!(self, Side::Right | Side::TwoSided)
    }

    fn left(self) -> bool {
        matches!(self, Side::Left | Side::TwoSided)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes; returns the two old roots if they differed.
    fn union(&mut self, a: usize, b: usize) -> Option<(usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        Some((lo, hi))
    }
}

/// An equivalence on `0..n`. Classes are numbered by their least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruencePartition {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl CongruencePartition {
    fn from_uf(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let roots: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
        Self::from_key(n, |x| roots[x])
    }

    /// The partition whose classes are the fibres of `key`.
    pub fn from_key<K: Eq + Hash, F: Fn(usize) -> K>(n: usize, key: F) -> Self {
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut class_of = Vec::with_capacity(n);
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let next = classes.len();
            let c = *ids.entry(key(x)).or_insert(next);
            if c == next {
                classes.push(Vec::new());
            }
            classes[c].push(x);
            class_of.push(c);
        }
        CongruencePartition { class_of, classes }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_key(n, |x| x)
    }

    pub fn universal(n: usize) -> Self {
        Self::from_key(n, |_| ())
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.classes.len() == self.class_of.len()
    }

    pub fn is_universal(&self) -> bool {
        self.classes.len() <= 1
    }

    /// Every class is contained in a class of `other`.
    pub fn refines(&self, other: &CongruencePartition) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| other.related(c[0], x)))
    }

    /// The join in the lattice of equivalences.
    pub fn join(&self, other: &CongruencePartition) -> CongruencePartition {
        let mut uf = UnionFind::new(self.len());
        for p in [self, other] {
            for c in &p.classes {
                for &x in &c[1..] {
                    uf.union(c[0], x);
                }
            }
        }
        Self::from_uf(&mut uf)
    }

    pub fn meet(&self, other: &CongruencePartition) -> CongruencePartition {
        Self::from_key(self.len(), |x| (self.class_of[x], other.class_of[x]))
    }

    /// Pairs `(least member, x)` that generate the partition as an equivalence.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        self.classes
            .iter()
            .flat_map(|c| c[1..].iter().map(move |&x| (c[0], x)))
            .collect()
    }

    /// Re-scans compatibility with multiplication by generators on `side`.
    pub fn check_compatible(&self, t: &CayleyTable, side: Side) -> Result<(), FmError> {
        for c in &self.classes {
            let a = c[0];
            for &b in &c[1..] {
                for j in 0..t.num_gens() {
                    if side.right() && !self.related(t.right_gen(a, j), t.right_gen(b, j)) {
                        return Err(FmError::NotACongruence(a, b));
                    }
                    if side.left() && !self.related(t.left_gen(j, a), t.left_gen(j, b)) {
                        return Err(FmError::NotACongruence(a, b));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_compatible(&self, t: &CayleyTable, side: Side) -> bool {
        self.check_compatible(t, side).is_ok()
    }
}

/// The least equivalence containing `pairs` that is compatible on `side`.
pub fn congruence_closure(
    t: &CayleyTable,
    pairs: &[(usize, usize)],
    side: Side,
) -> Result<CongruencePartition, FmError> {
    let m = t.size();
    if pairs.iter().any(|&(a, b)| a >= m || b >= m) {
        return Err(FmError::BadInput("pair index out of range".into()));
    }
    let mut uf = UnionFind::new(m);
    let mut queue: Vec<(usize, usize)> =
        pairs.iter().filter_map(|&(a, b)| uf.union(a, b)).collect();
    while let Some((a, b)) = queue.pop() {
        for j in 0..t.num_gens() {
            if side.right() {
                if let Some(p) = uf.union(t.right_gen(a, j), t.right_gen(b, j)) {
                    queue.push(p);
                }
            }
            if side.left() {
                if let Some(p) = uf.union(t.left_gen(j, a), t.left_gen(j, b)) {
                    queue.push(p);
                }
            }
        }
    }
    Ok(CongruencePartition::from_uf(&mut uf))
}

/// The least equivalence on `0..n` containing `pairs` and stable under each
/// of the self-maps in `maps`.
pub fn closure_under_maps(
    n: usize,
    pairs: &[(usize, usize)],
    maps: &[Vec<usize>],
) -> CongruencePartition {
    let mut uf = UnionFind::new(n);
    let mut queue: Vec<(usize, usize)> =
        pairs.iter().filter_map(|&(a, b)| uf.union(a, b)).collect();
    while let Some((a, b)) = queue.pop() {
        for f in maps {
            if let Some(p) = uf.union(f[a], f[b]) {
                queue.push(p);
            }
        }
    }
    CongruencePartition::from_uf(&mut uf)
}

impl CayleyTable {
    /// The quotient by a two-sided congruence. Class `c` of the partition is
    /// element `c` of the result, with the normal form of its least member.
    pub fn quotient(&self, part: &CongruencePartition) -> Result<CayleyTable, FmError> {
        if part.len() != self.size() {
            return Err(FmError::BadInput(
                "partition size differs from table size".into(),
            ));
        }
        part.check_compatible(self, Side::TwoSided)?;
        let g = self.num_gens();
        let mut right = Vec::with_capacity(part.num_classes() * g);
        let mut nf: Vec<Word> = Vec::with_capacity(part.num_classes());
        for c in part.classes() {
            for j in 0..g {
                right.push(part.class_of(self.right_gen(c[0], j)) as u32);
            }
            nf.push(self.normal_form(c[0]).clone());
        }
        let gens = self.gens().iter().map(|&x| part.class_of(x)).collect();
        let identity = self.identity().map(|e| part.class_of(e));
        Ok(CayleyTable::from_right(gens, right, nf, identity))
    }
}
