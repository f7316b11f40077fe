//! Finite independence algebras: sets, small vector spaces, free group
//! acts, a non-strong four-element example and custom tables, with their
//! subalgebra lattices, dimensions, automorphisms and partial endomorphisms.

mod algebra;
mod auto;
mod conditions;
mod lattice;

use thiserror::Error;

use crate::fmonoid::{closure_from_generators, isomorphic_via_gens, CayleyTable};
use crate::presentations::{suba, Expectation, MaxFamily, PresError, PresentationBundle};
use crate::ptrans::Family;
use crate::wreath::{enumerate_wreath, WreathError, ZERO};

pub use algebra::{cyclic, tuples, AlgebraFamily, AlgebraInstance, Operation, MAX_CARRIER};
pub use auto::{automorphisms, compose, AutGroup, AUT_CAP, AUT_SEARCH_CAP};
pub use conditions::{
    bases, check_gamma_generates, classify_conditions, is_independent, ConditionReport,
    GammaReport, BASIS_CAP,
};
pub use lattice::{
    all_subalgebras, InclusionExclusionWitness, StrongWitness, SubalgebraLattice, LATTICE_CAP,
};

#[derive(Debug, Error)]
pub enum IaError {
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("size bound {cap} exceeded")]
    SizeBoundExceeded { cap: usize },
    #[error("not an independence algebra: {0}")]
    NotIndependence(String),
    #[error(transparent)]
    Pres(#[from] PresError),
}

impl From<WreathError> for IaError {
    fn from(e: WreathError) -> Self {
        IaError::BadInput(e.to_string())
    }
}

/// `(dim B, codim B)` for the subalgebra generated by `b`.
pub fn dim_codim(lat: &SubalgebraLattice, b: usize) -> Result<(usize, usize), IaError> {
    Ok((lat.dim(b)?, lat.codim(b)?))
}

/// The strong property, with a violating pair of independent sets when it
/// fails.
pub fn is_strong(lat: &SubalgebraLattice) -> Result<(bool, Option<StrongWitness>), IaError> {
    let w = lat.strong_counterexample()?;
    Ok((w.is_none(), w))
}

/// The maximal subalgebras as element lists.
pub fn max_subalgebras(lat: &SubalgebraLattice) -> Result<Vec<Vec<usize>>, IaError> {
    Ok(lat.maximal()?.into_iter().map(|b| lat.elems(b)).collect())
}

/// The meet-semilattice presentation on the maximal subalgebras. It is
/// expected to pass for strong algebras; for the four-element non-strong
/// example the plain relations present 15 elements.
pub fn suba_bundle(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
    enlarged: bool,
) -> Result<PresentationBundle, IaError> {
    let maxes = max_subalgebras(lat)?;
    if maxes.is_empty() {
        return Err(IaError::BadInput("no maximal subalgebras".into()));
    }
    let mf = MaxFamily::new(alg.carrier, maxes)?;
    let mut b = suba(&mf, enlarged)?;
    if alg.family == AlgebraFamily::Fl93 && !enlarged {
        b.expect = Expectation::SizeMismatch { presented: 15 };
    }
    Ok(b)
}

/// A partial endomorphism: `map[x]` is the image of x, on a subalgebra.
pub type PartialEndo = Vec<Option<usize>>;

/// Largest partial endomorphism monoid built.
pub const PEND_CAP: usize = 20_000;

/// Every morphism from a subalgebra into the algebra.
pub fn partial_endomorphisms(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
) -> Result<Vec<PartialEndo>, IaError> {
    let m = alg.carrier;
    let mut out = Vec::new();
    for b in 0..lat.len() {
        let dom = lat.elems(b);
        let count = u32::try_from(dom.len()).ok().and_then(|k| m.checked_pow(k));
        if count.is_none_or(|c| c > PEND_CAP * 64) {
            return Err(IaError::SizeBoundExceeded { cap: PEND_CAP });
        }
        for t in tuples(m, dom.len()) {
            let mut map = vec![None; m];
            for (&x, &y) in dom.iter().zip(&t) {
                map[x] = Some(y);
            }
            if alg.is_partial_morphism(&map) {
                if out.len() >= PEND_CAP {
                    return Err(IaError::SizeBoundExceeded { cap: PEND_CAP });
                }
                out.push(map);
            }
        }
    }
    Ok(out)
}

/// Left-to-right composition of partial maps.
pub fn compose_partial(a: &[Option<usize>], b: &[Option<usize>]) -> PartialEndo {
    a.iter().map(|x| x.and_then(|v| b[v])).collect()
}

/// The monoid of partial endomorphisms under composition, generated by all
/// of its elements.
pub fn pend_monoid(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
) -> Result<(CayleyTable, Vec<PartialEndo>), IaError> {
    let all = partial_endomorphisms(alg, lat)?;
    let id: PartialEndo = (0..alg.carrier).map(Some).collect();
    let (t, elems) =
        closure_from_generators(&all, |a, b| compose_partial(a, b), Some(id), PEND_CAP)
            .map_err(|_| IaError::SizeBoundExceeded { cap: PEND_CAP })?;
    Ok((t, elems))
}

/// Compares the partial endomorphisms of the free G-act on `rank`
/// generators with `G ≀ PT_rank`, sending `(a, α)` to
/// `(g, x) ↦ (g·a_x, xα)`. Returns the wreath order and whether this map
/// is an isomorphism.
pub fn free_act_pend_vs_wreath(g: &CayleyTable, rank: usize) -> Result<(usize, bool), IaError> {
    let alg = AlgebraInstance::free_act(g, rank)?;
    let lat = all_subalgebras(&alg)?;
    let (pt, pend) = pend_monoid(&alg, &lat)?;
    let (wt, welems) = enumerate_wreath(g, Family::PT, rank, PEND_CAP)?;
    let k = g.size();
    let index: std::collections::HashMap<&PartialEndo, usize> =
        pend.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut gen_map = Vec::with_capacity(wt.num_gens());
    for &w in wt.gens() {
        let e = &welems[w];
        let map: PartialEndo = (0..alg.carrier)
            .map(|i| {
                let (h, x) = (i % k, i / k);
                let a = e.tup[x];
                e.map
                    .image0(x)
                    .filter(|_| a != ZERO)
                    .map(|y| y * k + g.mul(h, a as usize))
            })
            .collect();
        match index.get(&map) {
            Some(&j) => gen_map.push(j),
            None => return Ok((wt.size(), false)),
        }
    }
    Ok((wt.size(), isomorphic_via_gens(&wt, &pt, &gen_map).is_some()))
}
