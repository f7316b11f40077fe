use std::collections::HashMap;

use crate::fmonoid::{closure_from_generators, CayleyTable};

use super::{ActionTable, AmbientContext, ApError};

/// `U ⋊ S` with product `(u,s)(v,t) = (u·ˢv, st)`.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub table: CayleyTable,
    /// Element i of the table as an ambient pair `(u, s)`.
    pub elems: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    /// `{u = us⁺}`.
    pub m1: Vec<usize>,
    /// `{u = ¹u}`.
    pub m2: Vec<usize>,
    pub m: Vec<usize>,
    /// `(u,s) ↦ (¹u·s⁺, s)` on table indices, present when `¹u ∈ U` for all u.
    pub retraction: Option<Vec<usize>>,
    /// The retraction is a morphism onto M fixing M pointwise.
    pub retraction_ok: Option<bool>,
    pub is_monoid: bool,
}

impl SemidirectProduct {
    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, u: usize, s: usize) -> Option<usize> {
        self.index.get(&(u, s)).copied()
    }

    /// The image of element i under `(u, s) ↦ us`.
    pub fn project(&self, ctx: &AmbientContext, i: usize) -> usize {
        let (u, s) = self.elems[i];
        ctx.mul(u, s)
    }
}

pub fn semidirect(ctx: &AmbientContext, act: &ActionTable) -> Result<SemidirectProduct, ApError> {
    if let Some((which, w)) = act.law_failure(ctx) {
        return Err(ApError::ActionInvalid(format!(
            "{which} law fails at {w:?}"
        )));
    }
    let one = ctx.one();
    let all: Vec<(usize, usize)> = ctx
        .u()
        .iter()
        .flat_map(|&u| ctx.s().iter().map(move |&s| (u, s)))
        .collect();
    let prod = |&(u, s): &(usize, usize), &(v, t): &(usize, usize)| {
        (ctx.mul(u, act.act(ctx, s, v)), ctx.mul(s, t))
    };
    let (table, elems) = closure_from_generators(&all, prod, None, all.len())?;
    if elems.len() != all.len() {
        return Err(ApError::ActionInvalid("products leave U × S".into()));
    }
    let index: HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let plus = |s| act.act(ctx, s, one);
    let m1: Vec<usize> = (0..elems.len())
        .filter(|&i| elems[i].0 == ctx.mul(elems[i].0, plus(elems[i].1)))
        .collect();
    let m2: Vec<usize> = (0..elems.len())
        .filter(|&i| elems[i].0 == act.act(ctx, one, elems[i].0))
        .collect();
    let m: Vec<usize> = m1
        .iter()
        .copied()
        .filter(|i| m2.binary_search(i).is_ok())
        .collect();
    let retraction: Option<Vec<usize>> = ctx
        .u()
        .iter()
        .all(|&u| ctx.in_u(act.act(ctx, one, u)))
        .then(|| {
            elems
                .iter()
                .map(|&(u, s)| index[&(ctx.mul(act.act(ctx, one, u), plus(s)), s)])
                .collect()
        });
    let retraction_ok = retraction.as_ref().map(|f| {
        let n = elems.len();
        let mut image: Vec<usize> = f.clone();
        image.sort_unstable();
        image.dedup();
        image == m
            && m.iter().all(|&i| f[i] == i)
            && (0..n).all(|i| (0..n).all(|j| f[table.mul(i, j)] == table.mul(f[i], f[j])))
    });
    let is_monoid = table.identity().is_some();
    Ok(SemidirectProduct {
        table,
        elems,
        index,
        m1,
        m2,
        m,
        retraction,
        retraction_ok,
        is_monoid,
    })
}
