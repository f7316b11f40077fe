use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{AlgebraInstance, IaError};

/// Largest lattice `all_subalgebras` will build.
pub const LATTICE_CAP: usize = 1 << 16;

/// All subalgebras of an instance, found by closing each known subalgebra
/// with one more element at a time.
#[derive(Clone, Debug)]
pub struct SubalgebraLattice {
    pub subs: Vec<FixedBitSet>,
    index: HashMap<FixedBitSet, usize>,
    /// `ext[b][x]`: the subalgebra generated by `subs[b] ∪ {x}`.
    ext: Vec<Vec<usize>>,
    /// Whether the exchange property holds; dimensions are only
    /// meaningful when it does.
    pub exchange: bool,
    dims: Vec<usize>,
    codims: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

/// A failure of the dimension identity for a pair of subalgebras.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionExclusionWitness {
    pub b: usize,
    pub c: usize,
    /// `(dim B, dim C, dim B∩C, dim B∨C)`.
    pub dims: (usize, usize, usize, usize),
    /// `(codim B, codim C, codim B∩C, codim B∨C)`.
    pub codims: (usize, usize, usize, usize),
}

/// Independent sets violating the strong property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

pub fn all_subalgebras(alg: &AlgebraInstance) -> Result<SubalgebraLattice, IaError> {
    let m = alg.carrier;
    let c = alg.closure(&[]);
    let mut subs = vec![c.clone()];
    let mut index = HashMap::from([(c, 0usize)]);
    let mut ext: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < subs.len() {
        let base = subs[i].clone();
        let base_elems: Vec<usize> = base.ones().collect();
        let mut row = Vec::with_capacity(m);
        for x in 0..m {
            if base.contains(x) {
                row.push(i);
                continue;
            }
            let mut s = base.clone();
            let mut elems = base_elems.clone();
            alg.extend_closed(&mut s, &mut elems, [x]);
            let k = match index.get(&s) {
                Some(&k) => k,
                None => {
                    if subs.len() >= LATTICE_CAP {
                        return Err(IaError::SizeBoundExceeded { cap: LATTICE_CAP });
                    }
                    index.insert(s.clone(), subs.len());
                    subs.push(s);
                    subs.len() - 1
                }
            };
            row.push(k);
        }
        ext.push(row);
        i += 1;
    }
    let top = index[&alg.full_set()];
    let mut lat = SubalgebraLattice {
        subs,
        index,
        ext,
        exchange: false,
        dims: Vec::new(),
        codims: Vec::new(),
        bottom: 0,
        top,
    };
    lat.exchange = lat.exchange_counterexample().is_none();
    if lat.exchange {
        lat.dims = (0..lat.len()).map(|b| lat.greedy_basis(b).len()).collect();
        lat.codims = (0..lat.len())
            .map(|b| lat.greedy_relative_basis(b).len())
            .collect();
    }
    Ok(lat)
}

impl SubalgebraLattice {
    pub fn len(&self) -> usize {
        self.subs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subs.is_empty()
    }

    pub fn index_of(&self, s: &FixedBitSet) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn elems(&self, b: usize) -> Vec<usize> {
        self.subs[b].ones().collect()
    }

    pub fn contains(&self, b: usize, x: usize) -> bool {
        self.subs[b].contains(x)
    }

    /// The subalgebra generated by `subs[b] ∪ {x}`.
    pub fn adjoin(&self, b: usize, x: usize) -> usize {
        self.ext[b][x]
    }

    /// The subalgebra generated by a set of elements.
    pub fn generated(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.bottom, |b, &x| self.ext[b][x])
    }

    pub fn meet(&self, b: usize, c: usize) -> usize {
        let mut s = self.subs[b].clone();
        s.intersect_with(&self.subs[c]);
        self.index[&s]
    }

    pub fn join(&self, b: usize, c: usize) -> usize {
        self.subs[c].ones().fold(b, |acc, x| self.ext[acc][x])
    }

    pub fn is_below(&self, b: usize, c: usize) -> bool {
        self.subs[b].is_subset(&self.subs[c])
    }

    /// `(B, x, y)` with `x ∈ ⟨B ∪ y⟩ ∖ B` but `y ∉ ⟨B ∪ x⟩`. Checking
    /// subalgebras suffices, as `⟨X ∪ y⟩ = ⟨⟨X⟩ ∪ y⟩`.
    pub fn exchange_counterexample(&self) -> Option<(usize, usize, usize)> {
        let m = self.ext.first().map_or(0, |r| r.len());
        for b in 0..self.len() {
            for y in 0..m {
                let by = self.ext[b][y];
                for x in self.subs[by].ones() {
                    if !self.subs[b].contains(x) && !self.subs[self.ext[b][x]].contains(y) {
                        return Some((b, x, y));
                    }
                }
            }
        }
        None
    }

    /// Grows an independent subset of `subs[b]` one element at a time,
    /// taking each element not yet generated.
    pub fn greedy_basis(&self, b: usize) -> Vec<usize> {
        let mut cur = self.bottom;
        let mut basis = Vec::new();
        for x in self.subs[b].ones() {
            if !self.subs[cur].contains(x) {
                basis.push(x);
                cur = self.ext[cur][x];
            }
        }
        basis
    }

    /// Grows a `B`-basis: elements outside the subalgebra generated by `B`
    /// and the elements already chosen.
    pub fn greedy_relative_basis(&self, b: usize) -> Vec<usize> {
        let mut cur = b;
        let mut basis = Vec::new();
        for x in self.subs[self.top].ones() {
            if !self.subs[cur].contains(x) {
                basis.push(x);
                cur = self.ext[cur][x];
            }
        }
        basis
    }

    fn need_exchange(&self) -> Result<(), IaError> {
        if self.exchange {
            Ok(())
        } else {
            Err(IaError::NotIndependence(
                "the exchange property fails, so dimensions are undefined".into(),
            ))
        }
    }

    pub fn dim(&self, b: usize) -> Result<usize, IaError> {
        self.need_exchange()?;
        Ok(self.dims[b])
    }

    pub fn codim(&self, b: usize) -> Result<usize, IaError> {
        self.need_exchange()?;
        Ok(self.codims[b])
    }

    /// The subalgebras of codimension 1.
    pub fn maximal(&self) -> Result<Vec<usize>, IaError> {
        self.need_exchange()?;
        Ok((0..self.len()).filter(|&b| self.codims[b] == 1).collect())
    }

    /// Proper subalgebras not contained in any other proper subalgebra.
    pub fn maximal_by_inclusion(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&b| {
                b != self.top
                    && (0..self.len()).all(|c| c == b || c == self.top || !self.is_below(b, c))
            })
            .collect()
    }

    /// Maximal subalgebras `C_1, …, C_k` with `B = C_1 ∩ ⋯ ∩ C_k`, where
    /// `k = codim B`: with X a basis of B and Y a B-basis of A, each
    /// `C_i = ⟨X ∪ Y∖y_i⟩`.
    pub fn decompose_into_maximals(&self, b: usize) -> Result<Vec<usize>, IaError> {
        self.need_exchange()?;
        let x = self.greedy_basis(b);
        let y = self.greedy_relative_basis(b);
        Ok((0..y.len())
            .map(|i| {
                let gens: Vec<usize> = x
                    .iter()
                    .chain(
                        y.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != i)
                            .map(|(_, v)| v),
                    )
                    .copied()
                    .collect();
                self.generated(&gens)
            })
            .collect())
    }

    /// Checks `dim(B∨C) + dim(B∩C) = dim B + dim C` and the same for
    /// codimensions over all pairs, returning the first failure in
    /// lexicographic order of the element lists.
    pub fn inclusion_exclusion_check(&self) -> Result<Option<InclusionExclusionWitness>, IaError> {
        self.need_exchange()?;
        let order = self.sorted();
        for &b in &order {
            for &c in &order {
                let (i, j) = (self.meet(b, c), self.join(b, c));
                let d = |s: usize| self.dims[s];
                let k = |s: usize| self.codims[s];
                if d(j) + d(i) != d(b) + d(c) || k(j) + k(i) != k(b) + k(c) {
                    return Ok(Some(InclusionExclusionWitness {
                        b,
                        c,
                        dims: (d(b), d(c), d(i), d(j)),
                        codims: (k(b), k(c), k(i), k(j)),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// The strong property, checked on pairs of subalgebras: for independent
    /// X, Y with `⟨X⟩ ∩ ⟨Y⟩ = C(A)`, the union is independent exactly when
    /// `dim(⟨X⟩ ∨ ⟨Y⟩) = |X| + |Y|`. Returns a violating pair of bases.
    pub fn strong_counterexample(&self) -> Result<Option<StrongWitness>, IaError> {
        self.need_exchange()?;
        let order = self.sorted();
        for &b in &order {
            for &c in &order {
                if self.meet(b, c) == self.bottom
                    && self.dims[self.join(b, c)] != self.dims[b] + self.dims[c]
                {
                    return Ok(Some(StrongWitness {
                        x: self.greedy_basis(b),
                        y: self.greedy_basis(c),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Subalgebra indices ordered by their sorted element lists.
    fn sorted(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        let keys: Vec<Vec<usize>> = (0..self.len()).map(|b| self.elems(b)).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        order
    }
}
