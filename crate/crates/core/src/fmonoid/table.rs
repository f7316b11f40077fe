use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use super::presentation::{Kind, Presentation, Word};
use super::{FmError, FULL_TABLE_CAP};

/// A concretely enumerated finite semigroup or monoid.
///
/// Elements are `0..size`, numbered in shortlex order of their normal forms.
/// `right[x * g + j]` is `x · gens[j]` and `left[j * size + x]` is `gens[j] · x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CayleyTable {
    size: usize,
    gens: Vec<usize>,
    right: Vec<u32>,
    left: Vec<u32>,
    full: Option<Vec<u32>>,
    identity: Option<usize>,
    nf: Vec<Word>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    size: usize,
    gens: Vec<usize>,
    table: Vec<Vec<usize>>,
    nf: Vec<Word>,
    #[serde(default)]
    identity: Option<usize>,
}

impl From<CayleyTable> for RawTable {
    fn from(t: CayleyTable) -> Self {
        let g = t.gens.len();
        let table = (0..t.size)
            .map(|x| (0..g).map(|j| t.right[x * g + j] as usize).collect())
            .collect();
        RawTable {
            size: t.size,
            gens: t.gens,
            table,
            nf: t.nf,
            identity: t.identity,
        }
    }
}

impl TryFrom<RawTable> for CayleyTable {
    type Error = FmError;

    fn try_from(raw: RawTable) -> Result<Self, FmError> {
        let m = raw.size;
        let g = raw.gens.len();
        if raw.table.len() != m || raw.nf.len() != m {
            return Err(FmError::BadInput(
                "table and nf must have one row per element".into(),
            ));
        }
        if raw.gens.iter().any(|&x| x >= m) || raw.identity.is_some_and(|e| e >= m) {
            return Err(FmError::BadInput("element index out of range".into()));
        }
        let mut right = Vec::with_capacity(m * g);
        for row in &raw.table {
            if row.len() != g || row.iter().any(|&y| y >= m) {
                return Err(FmError::BadInput("malformed table row".into()));
            }
            right.extend(row.iter().map(|&y| y as u32));
        }
        if raw.nf.iter().flatten().any(|&j| j >= g) {
            return Err(FmError::BadInput(
                "normal form uses an unknown generator".into(),
            ));
        }
        let t = CayleyTable::from_right(raw.gens, right, raw.nf, raw.identity);
        for x in 0..m {
            if t.eval(&t.nf[x]) != Some(x) {
                return Err(FmError::BadInput(format!(
                    "normal form of {x} does not evaluate to it"
                )));
            }
        }
        Ok(t)
    }
}

impl CayleyTable {
    /// Builds a table from its right Cayley graph and normal forms, deriving
    /// the left action of the generators and, when small, the full product.
    /// Without a hint the identity is detected.
    pub(crate) fn from_right(
        gens: Vec<usize>,
        right: Vec<u32>,
        nf: Vec<Word>,
        identity: Option<usize>,
    ) -> Self {
        let m = nf.len();
        let g = gens.len();
        let mut t = CayleyTable {
            size: m,
            gens,
            right,
            left: Vec::new(),
            full: None,
            identity,
            nf,
        };
        let mut left = vec![0u32; g * m];
        for j in 0..g {
            for x in 0..m {
                left[j * m + x] = t.eval_from(t.gens[j], &t.nf[x]) as u32;
            }
        }
        t.left = left;
        if t.identity.is_none() {
            t.identity = (0..m).find(|&e| {
                (0..g).all(|j| t.right_gen(e, j) == t.gens[j] && t.left_gen(j, e) == t.gens[j])
            });
        }
        if m <= FULL_TABLE_CAP {
            t.full = Some(t.build_full());
        }
        t
    }

    fn build_full(&self) -> Vec<u32> {
        let m = self.size;
        let mut full = vec![0u32; m * m];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&y| self.nf[y].len());
        for &y in &order {
            let w = &self.nf[y];
            match w.len() {
                0 => {
                    for x in 0..m {
                        full[x * m + y] = x as u32;
                    }
                }
                1 => {
                    for x in 0..m {
                        full[x * m + y] = self.right[x * self.gens.len() + w[0]];
                    }
                }
                _ => {
                    let parent = self.eval(&w[..w.len() - 1]).expect("non-empty prefix");
                    let last = *w.last().unwrap();
                    for x in 0..m {
                        let xp = full[x * m + parent] as usize;
                        full[x * m + y] = self.right[xp * self.gens.len() + last];
                    }
                }
            }
        }
        full
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn has_full_table(&self) -> bool {
        self.full.is_some()
    }

    /// The stored shortlex normal form of `e`.
    pub fn normal_form(&self, e: usize) -> &Word {
        &self.nf[e]
    }

    pub fn normal_forms(&self) -> &[Word] {
        &self.nf
    }

    /// `x · gens[j]`
    pub fn right_gen(&self, x: usize, j: usize) -> usize {
        self.right[x * self.gens.len() + j] as usize
    }

    /// `gens[j] · x`
    pub fn left_gen(&self, j: usize, x: usize) -> usize {
        self.left[j * self.size + x] as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.full {
            Some(f) => f[x * self.size + y] as usize,
            None => self.eval_from(x, &self.nf[y]),
        }
    }

    pub fn eval_from(&self, mut x: usize, w: &[usize]) -> usize {
        for &j in w {
            x = self.right_gen(x, j);
        }
        x
    }

    /// Evaluates a word in the generators. The empty word evaluates to the
    /// identity, if there is one.
    pub fn eval(&self, w: &[usize]) -> Option<usize> {
        match w.split_first() {
            None => self.identity,
            Some((&j, rest)) => Some(self.eval_from(self.gens[j], rest)),
        }
    }

    /// Product of a sequence of elements; `None` for the empty sequence
    /// without identity.
    pub fn product_of(&self, xs: &[usize]) -> Option<usize> {
        let mut it = xs.iter();
        let mut acc = match it.next() {
            Some(&x) => x,
            None => return self.identity,
        };
        for &y in it {
            acc = self.mul(acc, y);
        }
        Some(acc)
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size).filter(|&x| self.is_idempotent(x)).collect()
    }

    /// Exhaustive associativity audit over all triples.
    pub fn is_associative(&self) -> bool {
        let m = self.size;
        (0..m).all(|x| {
            (0..m).all(|y| {
                let xy = self.mul(x, y);
                (0..m).all(|z| self.mul(xy, z) == self.mul(x, self.mul(y, z)))
            })
        })
    }

    pub fn is_commutative(&self) -> bool {
        let g = self.gens.len();
        (0..g).all(|i| {
            (0..g).all(|j| self.right_gen(self.gens[i], j) == self.right_gen(self.gens[j], i))
        })
    }

    /// Elements of the subsemigroup generated by `elems`, together with the
    /// identity when `with_identity` is set, in increasing order.
    pub fn generated(&self, elems: &[usize], with_identity: bool) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::new();
        if with_identity {
            if let Some(e) = self.identity {
                seen[e] = true;
                out.push(e);
            }
        }
        for &x in elems {
            if !seen[x] {
                seen[x] = true;
                out.push(x);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in elems {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Whether `elems` is closed under multiplication.
    pub fn is_closed(&self, elems: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in elems {
            member[x] = true;
        }
        elems
            .iter()
            .all(|&x| elems.iter().all(|&y| member[self.mul(x, y)]))
    }
}

/// Builds a table from a full multiplication table `rows[x][y] = xy`,
/// checking associativity. Returns the table and, for each of its elements,
/// the row index it came from. An identity, if present, becomes element 0.
pub fn from_multiplication(rows: &[Vec<usize>]) -> Result<(CayleyTable, Vec<usize>), FmError> {
    let n = rows.len();
    if n == 0 {
        return Err(FmError::BadInput("empty multiplication table".into()));
    }
    if rows
        .iter()
        .any(|r| r.len() != n || r.iter().any(|&y| y >= n))
    {
        return Err(FmError::BadInput(
            "multiplication table must be square with entries in range".into(),
        ));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                    return Err(FmError::BadInput(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    let identity = (0..n).find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x));
    // greedy generating set in index order
    let mut gens: Vec<usize> = Vec::new();
    let mut reached = vec![false; n];
    if let Some(e) = identity {
        reached[e] = true;
    }
    for x in 0..n {
        if reached[x] {
            continue;
        }
        gens.push(x);
        let mut queue: Vec<usize> = (0..n).filter(|&y| reached[y]).chain([x]).collect();
        reached[x] = true;
        while let Some(y) = queue.pop() {
            for &g in &gens {
                for z in [rows[y][g], rows[g][y]] {
                    if !reached[z] {
                        reached[z] = true;
                        queue.push(z);
                    }
                }
            }
        }
    }
    closure_from_generators(&gens, |&a, &b| rows[a][b], identity, n + 1)
}

/// Enumerates the semigroup generated by `gens` under `product`.
///
/// With an identity hint the result is the generated monoid: the identity is
/// element 0 with normal form ε. Otherwise the generators seed the search and
/// an identity is reported only if one is reached. Returns the table and the
/// elements in table order.
pub fn closure_from_generators<T, F>(
    gens: &[T],
    product: F,
    identity_hint: Option<T>,
    cap: usize,
) -> Result<(CayleyTable, Vec<T>), FmError>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    if gens.is_empty() && identity_hint.is_none() {
        return Err(FmError::BadInput("no generators".into()));
    }
    let g = gens.len();
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems: Vec<T> = Vec::new();
    let mut nf: Vec<Word> = Vec::new();
    let mut right: Vec<u32> = Vec::new();
    let push =
        |x: T, w: Word, index: &mut HashMap<T, usize>, elems: &mut Vec<T>, nf: &mut Vec<Word>| {
            let i = elems.len();
            index.insert(x.clone(), i);
            elems.push(x);
            nf.push(w);
            i
        };
    let has_identity = identity_hint.is_some();
    if let Some(e) = identity_hint {
        push(e, Vec::new(), &mut index, &mut elems, &mut nf);
    } else {
        for (j, x) in gens.iter().enumerate() {
            if !index.contains_key(x) {
                push(x.clone(), vec![j], &mut index, &mut elems, &mut nf);
            }
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for (j, gen) in gens.iter().enumerate().take(g) {
            let y = product(&elems[i], gen);
            let k = match index.get(&y) {
                Some(&k) => k,
                None => {
                    if elems.len() >= cap {
                        return Err(FmError::SizeBoundExceeded { cap });
                    }
                    let mut w = nf[i].clone();
                    w.push(j);
                    push(y, w, &mut index, &mut elems, &mut nf)
                }
            };
            right.push(k as u32);
        }
        i += 1;
    }
    let gen_idx = gens.iter().map(|x| index[x]).collect();
    let table = CayleyTable::from_right(
        gen_idx,
        right,
        nf,
        if has_identity { Some(0) } else { None },
    );
    Ok((table, elems))
}

/// Checks whether the map sending generator `j` of `a` to element
/// `gen_map[j]` of `b` extends to an isomorphism; returns it if so.
pub fn isomorphic_via_gens(
    a: &CayleyTable,
    b: &CayleyTable,
    gen_map: &[usize],
) -> Option<Vec<usize>> {
    if a.size() != b.size() || gen_map.len() != a.num_gens() {
        return None;
    }
    let eval_b = |w: &[usize]| -> Option<usize> {
        let (&first, rest) = match w.split_first() {
            Some(p) => p,
            None => return b.identity(),
        };
        let mut x = gen_map[first];
        for &j in rest {
            x = b.mul(x, gen_map[j]);
        }
        Some(x)
    };
    let mut phi = Vec::with_capacity(a.size());
    for x in 0..a.size() {
        phi.push(eval_b(a.normal_form(x))?);
    }
    let mut hit = vec![false; b.size()];
    for &y in &phi {
        if std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    for x in 0..a.size() {
        for (j, &gj) in gen_map.iter().enumerate() {
            if phi[a.right_gen(x, j)] != b.mul(phi[x], gj) {
                return None;
            }
        }
    }
    Some(phi)
}

/// A presentation read off the right Cayley graph: letters are the table's
/// generators, named by `names`, with relations `nf(x)·g = nf(x·g)`.
pub fn table_presentation<S: AsRef<str>>(t: &CayleyTable, names: &[S]) -> Presentation {
    assert_eq!(names.len(), t.num_gens(), "one name per generator");
    let monoid = t.identity().is_some_and(|e| t.normal_form(e).is_empty());
    let kind = if monoid {
        Kind::Monoid
    } else {
        Kind::Semigroup
    };
    let mut p = Presentation::with_letters(kind, names);
    for j in 0..t.num_gens() {
        p.add_relation(vec![j], t.normal_form(t.gens()[j]).clone());
    }
    for x in 0..t.size() {
        for j in 0..t.num_gens() {
            let mut w = t.normal_form(x).clone();
            w.push(j);
            p.add_relation(w, t.normal_form(t.right_gen(x, j)).clone());
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[allow(clippy::ptr_arg)]
    fn compose(a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
        a.iter().map(|&x| b[x as usize]).collect()
    }

    #[test]
    fn cyclic_group_of_order_two() {
        let (t, _) =
            closure_from_generators(&[vec![1u8, 0]], compose, Some(vec![0, 1]), 100).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.identity(), Some(0));
        assert!(t.normal_form(0).is_empty());
    }

    #[test]
    fn full_transformation_monoid_of_degree_two() {
        let (t, els) =
            closure_from_generators(&[vec![1u8, 0], vec![0, 0]], compose, None, 100).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(els[0], vec![1, 0]);
        assert!(t.identity().is_some());
        assert!(t.is_associative());
    }

    #[test]
    fn cap_is_enforced() {
        let r = closure_from_generators(&[vec![1u8, 2, 0]], compose, None, 2);
        assert_eq!(r.unwrap_err(), FmError::SizeBoundExceeded { cap: 2 });
    }

    #[test]
    fn json_round_trip() {
        let (t, _) =
            closure_from_generators(&[vec![1u8, 0], vec![0, 0]], compose, Some(vec![0, 1]), 100)
                .unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let back: CayleyTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
    }
}
