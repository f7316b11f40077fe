use std::collections::HashMap;

use super::proper::lemma_w_conditions;
use super::{ActionTable, AmbientContext, ApError, PairReport, Verdict};

/// Largest `|U¹|·|S¹|` for which the mid-identity law is scanned.
const MID_IDENTITY_CAP: usize = 400;

fn sa1_failure(ctx: &AmbientContext) -> Option<Vec<usize>> {
    let n = ctx.m().size();
    for &s in ctx.s() {
        let mut us = vec![false; n];
        for &u in ctx.u1() {
            us[ctx.mul(u, s)] = true;
        }
        if let Some(&u) = ctx.u1().iter().find(|&&u| !us[ctx.mul(s, u)]) {
            return Some(vec![s, u]);
        }
    }
    None
}

/// Scans pairs `(u, s) ∈ U¹ × S` with equal products `us` and reports the
/// first two whose values under `f` differ, as `[u, s, v, t]`.
fn fibre_failure(ctx: &AmbientContext, f: impl Fn(usize, usize) -> usize) -> Option<Vec<usize>> {
    let mut first: HashMap<usize, (usize, usize, usize)> = HashMap::new();
    for &s in ctx.s() {
        for &u in ctx.u1() {
            let val = f(u, s);
            match first.get(&ctx.mul(u, s)) {
                Some(&(v, t, w)) if w != val => return Some(vec![v, t, u, s]),
                Some(_) => {}
                None => {
                    first.insert(ctx.mul(u, s), (u, s, val));
                }
            }
        }
    }
    None
}

fn plus_laws(ctx: &AmbientContext) -> [Verdict; 4] {
    let p = |s| ctx.plus(s);
    let s_all = ctx.s();
    let law1 = s_all
        .iter()
        .find(|&&s| ctx.mul(p(s), s) != s)
        .map(|&s| vec![s]);
    let mut law2 = None;
    let mut law3 = None;
    'outer: for &s in s_all {
        for &t in s_all {
            let st = ctx.mul(s, t);
            if law2.is_none() && ctx.mul(s, p(t)) != ctx.mul(p(st), s) {
                law2 = Some(vec![s, t]);
            }
            if law3.is_none() && p(st) != ctx.mul(p(st), p(s)) {
                law3 = Some(vec![s, t]);
            }
            if law2.is_some() && law3.is_some() {
                break 'outer;
            }
        }
    }
    let law4 = fibre_failure(ctx, |u, s| ctx.mul(u, p(s)));
    [law1, law2, law3, law4].map(Verdict::from_failure)
}

/// Rebuilds `ˢu = v·s⁺` from the least `v ∈ U¹` with `su = vs`. The second
/// component reports `[s, u, v, v′]` when two witnesses disagree.
fn reconstruct(ctx: &AmbientContext) -> (ActionTable, Verdict) {
    let mut bad: Option<Vec<usize>> = None;
    let mut vals: HashMap<(usize, usize), usize> = HashMap::new();
    for &s in ctx.s() {
        let sp = ctx.plus(s);
        for &u in ctx.u1() {
            let su = ctx.mul(s, u);
            let mut chosen: Option<(usize, usize)> = None;
            for &v in ctx.u1() {
                if ctx.mul(v, s) != su {
                    continue;
                }
                let val = ctx.mul(v, sp);
                match chosen {
                    None => chosen = Some((v, val)),
                    Some((v0, val0)) if val0 != val && bad.is_none() => {
                        bad = Some(vec![s, u, v0, v])
                    }
                    Some(_) => {}
                }
            }
            // SA1 guarantees a witness
            vals.insert((s, u), chosen.expect("SA1 witness").1);
        }
    }
    let act = ActionTable::from_fn(ctx, |s, u| vals[&(s, u)]).expect("values lie in U¹");
    (act, Verdict::from_failure(bad))
}

/// Checks SA1 and (+1)–(+4) for the attached `s ↦ s⁺`, reconstructs the
/// action and classifies the pair.
pub fn check_pair_from_plus(ctx: &AmbientContext) -> Result<(PairReport, ActionTable), ApError> {
    if !ctx.has_plus() {
        return Err(ApError::BadInput("context carries no s ↦ s⁺ map".into()));
    }
    if let Some(w) = sa1_failure(ctx) {
        return Err(ApError::AxiomFailed("SA1", w));
    }
    let laws = plus_laws(ctx);
    let (act, well_defined) = reconstruct(ctx);
    let mut report = assess(ctx, &act, Verdict::Holds);
    report.action &= well_defined.holds();
    report.strong &= report.action;
    report.plus_laws = Some(laws);
    report.well_defined = Some(well_defined);
    Ok((report, act))
}

/// Checks A1, A2, SA1 and SA2 for a given action.
pub fn check_weak_pair(ctx: &AmbientContext, act: &ActionTable) -> Result<PairReport, ApError> {
    if let Some((which, w)) = act.law_failure(ctx) {
        return Err(ApError::AxiomFailed(which, w));
    }
    let sa1 = Verdict::from_failure(sa1_failure(ctx));
    Ok(assess(ctx, act, sa1))
}

fn assess(ctx: &AmbientContext, act: &ActionTable, sa1: Verdict) -> PairReport {
    let one = ctx.one();
    let a1 = ctx
        .s()
        .iter()
        .flat_map(|&s| ctx.u1().iter().map(move |&u| (s, u)))
        .find(|&(s, u)| ctx.mul(s, u) != ctx.mul(act.act(ctx, s, u), s))
        .map(|(s, u)| vec![s, u]);
    let a1 = Verdict::from_failure(a1);
    let a2 = Verdict::from_failure(fibre_failure(ctx, |u, s| ctx.mul(u, act.act(ctx, s, one))));
    let sa2 = Verdict::from_failure(fibre_failure(ctx, |u, _| u));
    let weak = a1.holds();
    let action = weak && a2.holds();
    let strong = action && sa1.holds() && sa2.holds();
    let plus_trivial = ctx.s().iter().all(|&s| act.act(ctx, s, one) == one);
    let disjoint_ok = strong.then(|| ctx.u().iter().all(|&x| x == one || !ctx.in_s(x)));
    let mid_identity_ok =
        (ctx.u1().len() * ctx.s1().len() <= MID_IDENTITY_CAP).then(|| mid_identity(ctx, act));
    PairReport {
        sa1,
        plus_laws: None,
        well_defined: None,
        a1,
        a2,
        sa2,
        monoidal: act.is_monoidal(ctx),
        by_monoid_morphisms: act.by_monoid_morphisms(ctx),
        weak,
        action,
        strong,
        plus_trivial,
        disjoint_ok,
        lemma_w: lemma_w_conditions(ctx, act),
        mid_identity_ok,
        proper: None,
    }
}

/// `x·(1,1)·y = x·y` throughout `U¹ ⋊ S¹`.
fn mid_identity(ctx: &AmbientContext, act: &ActionTable) -> bool {
    let one = ctx.one();
    let prod = |(u, s): (usize, usize), (v, t): (usize, usize)| {
        (ctx.mul(u, act.act(ctx, s, v)), ctx.mul(s, t))
    };
    let all: Vec<(usize, usize)> = ctx
        .u1()
        .iter()
        .flat_map(|&u| ctx.s1().iter().map(move |&s| (u, s)))
        .collect();
    all.iter().all(|&x| {
        let x1 = prod(x, (one, one));
        all.iter().all(|&y| prod(x1, y) == prod(x, y))
    })
}
