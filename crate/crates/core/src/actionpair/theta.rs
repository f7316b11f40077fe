use std::collections::BTreeMap;

use crate::fmonoid::{closure_under_maps, congruence_closure, CongruencePartition, Side};

use super::{ActionTable, AmbientContext, ApError, PairReport, SemidirectProduct, Verdict};

/// The kernel of `(u, s) ↦ us` on `U ⋊ S`.
pub fn theta(ctx: &AmbientContext, sd: &SemidirectProduct) -> CongruencePartition {
    CongruencePartition::from_key(sd.size(), |i| sd.project(ctx, i))
}

/// `{(s, t) ∈ S × S : us = ut}` on positions of S.
pub fn theta_u(ctx: &AmbientContext, u: usize) -> CongruencePartition {
    let s = ctx.s();
    CongruencePartition::from_key(s.len(), |i| ctx.mul(u, s[i]))
}

/// `{(s, t) ∈ S¹ × S¹ : us = ut}` on positions of S¹.
pub fn big_theta_u(ctx: &AmbientContext, u: usize) -> CongruencePartition {
    let s1 = ctx.s1();
    CongruencePartition::from_key(s1.len(), |i| ctx.mul(u, s1[i]))
}

/// `{s ∈ S : us = u}`.
pub fn stabilizer(ctx: &AmbientContext, u: usize) -> Vec<usize> {
    ctx.s()
        .iter()
        .copied()
        .filter(|&s| ctx.mul(u, s) == u)
        .collect()
}

/// Compares θ with `us⁺ = vt⁺ and (s, t) ∈ θ_{us⁺}`; witness `[u, s, v, t]`.
pub fn check_theta_lemma(
    ctx: &AmbientContext,
    act: &ActionTable,
    sd: &SemidirectProduct,
) -> Verdict {
    let th = theta(ctx, sd);
    let one = ctx.one();
    let n = sd.size();
    for i in 0..n {
        let (u, s) = sd.elems[i];
        let w = ctx.mul(u, act.act(ctx, s, one));
        for j in i + 1..n {
            let (v, t) = sd.elems[j];
            let rhs = w == ctx.mul(v, act.act(ctx, t, one)) && ctx.mul(w, s) == ctx.mul(w, t);
            if rhs != th.related(i, j) {
                return Verdict::Fails {
                    witness: vec![u, s, v, t],
                };
            }
        }
    }
    Verdict::Holds
}

/// Pairs of S elements per element of U.
pub type PairFamily = BTreeMap<usize, Vec<(usize, usize)>>;
/// Group generating sets per element of U.
pub type GenFamily = BTreeMap<usize, Vec<usize>>;

/// Which generating set for θ to build, with its inputs (ambient indices).
#[derive(Clone, Debug)]
pub enum OmegaInput {
    /// All of each θ_u together with `((u,s),(us⁺,s))`.
    Om1,
    /// All of each θ_u together with `((1,s),(s⁺,s))`; U and S submonoids.
    Om2,
    /// Right-congruence generators of each θ_u; strong pair.
    Om3 { omega: PairFamily },
    /// Generators of θ_v for v ∈ V, with θ_u the join over `v ≼ u`.
    Om4Join { v: Vec<usize>, omega: PairFamily },
    /// Generators of θ_v for a monoid generating set V of a commutative U.
    Om4Commutative { v: Vec<usize>, omega: PairFamily },
    /// Group generators of each stabilizer; S a group.
    Om5 { gamma: GenFamily },
    /// Group generators of `S_v` for v ∈ V, with `S_u` the join over `v ≼ u`.
    Om6Join { v: Vec<usize>, gamma: GenFamily },
    /// Group generators of `S_v` for a monoid generating set V of a commutative U.
    Om6Commutative { v: Vec<usize>, gamma: GenFamily },
}

#[derive(Clone, Debug)]
pub struct OmegaOutcome {
    /// Generating pairs as indices of the semidirect product.
    pub omega: Vec<(usize, usize)>,
    pub closure: CongruencePartition,
    pub equals_theta: bool,
}

fn failed(what: &'static str, w: Vec<usize>) -> ApError {
    ApError::HypothesisFailed(what, w)
}

/// The right congruence on S generated by pairs of ambient elements.
fn right_closure_on_s(
    ctx: &AmbientContext,
    pairs: &[(usize, usize)],
) -> Result<CongruencePartition, ApError> {
    let s = ctx.s();
    let pos = |x: usize| {
        ctx.s_index(x)
            .ok_or_else(|| ApError::BadInput(format!("{x} is not in S")))
    };
    let idx: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| Ok((pos(a)?, pos(b)?)))
        .collect::<Result<_, ApError>>()?;
    let maps: Vec<Vec<usize>> = s
        .iter()
        .map(|&g| {
            s.iter()
                .map(|&x| ctx.s_index(ctx.mul(x, g)).expect("S closed"))
                .collect()
        })
        .collect();
    Ok(closure_under_maps(s.len(), &idx, &maps))
}

/// `v ≼ u`: u = wv for some w ∈ U¹.
fn below(ctx: &AmbientContext, v: usize, u: usize) -> bool {
    ctx.u1().iter().any(|&w| ctx.mul(w, v) == u)
}

fn check_generates_theta(
    ctx: &AmbientContext,
    fam: &PairFamily,
    keys: &[usize],
) -> Result<(), ApError> {
    for &u in keys {
        let pairs = fam.get(&u).map(Vec::as_slice).unwrap_or(&[]);
        if right_closure_on_s(ctx, pairs)? != theta_u(ctx, u) {
            return Err(failed("Ω_u generates θ_u", vec![u]));
        }
    }
    Ok(())
}

fn check_generates_stabilizer(
    ctx: &AmbientContext,
    fam: &GenFamily,
    keys: &[usize],
) -> Result<(), ApError> {
    for &u in keys {
        let gens = fam.get(&u).map(Vec::as_slice).unwrap_or(&[]);
        if gens.iter().any(|&g| !ctx.in_s(g)) {
            return Err(failed("Γ_u ⊆ S", vec![u]));
        }
        if ctx.m().generated(gens, true) != stabilizer(ctx, u) {
            return Err(failed("Γ_u generates S_u", vec![u]));
        }
    }
    Ok(())
}

fn check_monoid_generating(ctx: &AmbientContext, v: &[usize]) -> Result<(), ApError> {
    if ctx.m().generated(v, true) != ctx.u() {
        return Err(failed("V generates U", v.to_vec()));
    }
    Ok(())
}

fn check_commutative(ctx: &AmbientContext) -> Result<(), ApError> {
    for &a in ctx.u() {
        for &b in ctx.u() {
            if ctx.mul(a, b) != ctx.mul(b, a) {
                return Err(failed("U commutative", vec![a, b]));
            }
        }
    }
    Ok(())
}

fn check_group(ctx: &AmbientContext) -> Result<(), ApError> {
    let one = ctx.one();
    for &s in ctx.s() {
        if !ctx
            .s()
            .iter()
            .any(|&t| ctx.mul(s, t) == one && ctx.mul(t, s) == one)
        {
            return Err(failed("S a group", vec![s]));
        }
    }
    Ok(())
}

fn check_subset(ctx: &AmbientContext, v: &[usize]) -> Result<(), ApError> {
    match v.iter().find(|&&x| !ctx.in_u(x)) {
        Some(&x) => Err(failed("V ⊆ U", vec![x])),
        None => Ok(()),
    }
}

/// Verifies the hypotheses of the chosen generating-set result, builds Ω and
/// compares its closure with θ. The closure is two-sided except for `Om3`,
/// whose Ω generates θ as a right congruence.
pub fn omega_check(
    ctx: &AmbientContext,
    act: &ActionTable,
    report: &PairReport,
    sd: &SemidirectProduct,
    input: &OmegaInput,
) -> Result<OmegaOutcome, ApError> {
    let one = ctx.one();
    if !report.action {
        return Err(failed("action pair", Vec::new()));
    }
    let submonoids = || {
        if ctx.u_is_monoid() && ctx.s_is_monoid() {
            Ok(())
        } else {
            Err(failed("U and S submonoids", Vec::new()))
        }
    };
    let strong = || {
        if report.strong {
            Ok(())
        } else {
            Err(failed("strong pair", Vec::new()))
        }
    };
    let idx = |u: usize, s: usize| {
        sd.index_of(u, s)
            .ok_or_else(|| ApError::BadInput(format!("({u}, {s}) not in U ⋊ S")))
    };
    let theta_pairs = |u: usize| -> Result<Vec<(usize, usize)>, ApError> {
        let s = ctx.s();
        theta_u(ctx, u)
            .spanning_pairs()
            .into_iter()
            .map(|(a, b)| Ok((idx(u, s[a])?, idx(u, s[b])?)))
            .collect()
    };
    let pair_omega = |keys: &[usize], fam: &PairFamily| -> Result<Vec<(usize, usize)>, ApError> {
        let mut out = Vec::new();
        for &u in keys {
            for &(a, b) in fam.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                out.push((idx(u, a)?, idx(u, b)?));
            }
        }
        Ok(out)
    };
    let gen_omega = |keys: &[usize], fam: &GenFamily| -> Result<Vec<(usize, usize)>, ApError> {
        let mut out = Vec::new();
        for &u in keys {
            for &g in fam.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                out.push((idx(u, one)?, idx(u, g)?));
            }
        }
        Ok(out)
    };
    let u_all = ctx.u().to_vec();
    let mut side = Side::TwoSided;
    let omega = match input {
        OmegaInput::Om1 => {
            let mut out = Vec::new();
            for &u in ctx.u() {
                out.extend(theta_pairs(u)?);
                for &s in ctx.s() {
                    out.push((idx(u, s)?, idx(ctx.mul(u, act.act(ctx, s, one)), s)?));
                }
            }
            out
        }
        OmegaInput::Om2 => {
            submonoids()?;
            let mut out = Vec::new();
            for &u in ctx.u() {
                out.extend(theta_pairs(u)?);
            }
            for &s in ctx.s() {
                out.push((idx(one, s)?, idx(act.act(ctx, s, one), s)?));
            }
            out
        }
        OmegaInput::Om3 { omega } => {
            strong()?;
            if !report.lemma_w.iter().any(|&b| b) {
                return Err(failed("one of the ten U-absorption conditions", Vec::new()));
            }
            check_generates_theta(ctx, omega, &u_all)?;
            side = Side::Right;
            pair_omega(&u_all, omega)?
        }
        OmegaInput::Om4Join { v, omega } => {
            strong()?;
            submonoids()?;
            check_subset(ctx, v)?;
            check_generates_theta(ctx, omega, v)?;
            for &u in ctx.u() {
                let join = v
                    .iter()
                    .filter(|&&x| below(ctx, x, u))
                    .fold(CongruencePartition::discrete(ctx.s().len()), |acc, &x| {
                        acc.join(&theta_u(ctx, x))
                    });
                if join != theta_u(ctx, u) {
                    return Err(failed("θ_u is the join of θ_v over v ≼ u", vec![u]));
                }
            }
            pair_omega(v, omega)?
        }
        OmegaInput::Om4Commutative { v, omega } => {
            strong()?;
            submonoids()?;
            check_subset(ctx, v)?;
            check_commutative(ctx)?;
            check_monoid_generating(ctx, v)?;
            check_generates_theta(ctx, omega, v)?;
            for &a in ctx.u() {
                for &b in ctx.u() {
                    if theta_u(ctx, ctx.mul(a, b)) != theta_u(ctx, a).join(&theta_u(ctx, b)) {
                        return Err(failed("θ_uv = θ_u ∨ θ_v", vec![a, b]));
                    }
                }
            }
            pair_omega(v, omega)?
        }
        OmegaInput::Om5 { gamma } => {
            strong()?;
            submonoids()?;
            check_group(ctx)?;
            check_generates_stabilizer(ctx, gamma, &u_all)?;
            gen_omega(&u_all, gamma)?
        }
        OmegaInput::Om6Join { v, gamma } => {
            strong()?;
            submonoids()?;
            check_group(ctx)?;
            check_subset(ctx, v)?;
            check_generates_stabilizer(ctx, gamma, v)?;
            for &u in ctx.u() {
                let union: Vec<usize> = v
                    .iter()
                    .filter(|&&x| below(ctx, x, u))
                    .flat_map(|&x| stabilizer(ctx, x))
                    .collect();
                if ctx.m().generated(&union, true) != stabilizer(ctx, u) {
                    return Err(failed("S_u is the join of S_v over v ≼ u", vec![u]));
                }
            }
            gen_omega(v, gamma)?
        }
        OmegaInput::Om6Commutative { v, gamma } => {
            strong()?;
            submonoids()?;
            check_group(ctx)?;
            check_subset(ctx, v)?;
            check_commutative(ctx)?;
            check_monoid_generating(ctx, v)?;
            check_generates_stabilizer(ctx, gamma, v)?;
            for &a in ctx.u() {
                for &b in ctx.u() {
                    let mut union = stabilizer(ctx, a);
                    union.extend(stabilizer(ctx, b));
                    if ctx.m().generated(&union, true) != stabilizer(ctx, ctx.mul(a, b)) {
                        return Err(failed("S_uv = S_u ∨ S_v", vec![a, b]));
                    }
                }
            }
            gen_omega(v, gamma)?
        }
    };
    let closure = congruence_closure(&sd.table, &omega, side)?;
    let equals_theta = closure == theta(ctx, sd);
    Ok(OmegaOutcome {
        omega,
        closure,
        equals_theta,
    })
}

/// Verdicts for the eight conditions defining a special congruence.
#[derive(Clone, Debug)]
pub struct SpecialReport {
    pub laws: [Verdict; 8],
}

impl SpecialReport {
    pub fn special(&self) -> bool {
        self.laws.iter().all(Verdict::holds)
    }
}

/// Checks conditions (S1)–(S8) for a congruence σ on `U ⋊ S`. When U has
/// no identity, `σ₁` is the diagonal; otherwise it is read off σ.
pub fn check_special_congruence(
    ctx: &AmbientContext,
    act: &ActionTable,
    sd: &SemidirectProduct,
    sigma: &CongruencePartition,
) -> Result<SpecialReport, ApError> {
    if sigma.len() != sd.size() {
        return Err(ApError::BadInput(
            "partition size differs from U ⋊ S".into(),
        ));
    }
    let one = ctx.one();
    let (u_all, s_all) = (ctx.u(), ctx.s());
    let idx = |u: usize, s: usize| sd.index_of(u, s).expect("pair in U ⋊ S");
    let plus = |s: usize| act.act(ctx, s, one);
    let rel = |u: usize, s: usize, t: usize| {
        if ctx.in_u(u) {
            sigma.related(idx(u, s), idx(u, t))
        } else {
            s == t
        }
    };
    let sigma_u = |u: usize| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &s in s_all {
            for &t in s_all {
                if rel(u, s, t) {
                    out.push((s, t));
                }
            }
        }
        out
    };
    let first = |it: &mut dyn Iterator<Item = Vec<usize>>| Verdict::from_failure(it.next());

    let s1 = first(
        &mut u_all
            .iter()
            .flat_map(|&u| s_all.iter().map(move |&s| (u, s)))
            .filter(|&(u, s)| !sigma.related(idx(u, s), idx(ctx.mul(u, plus(s)), s)))
            .map(|(u, s)| vec![u, s]),
    );
    let s2 = first(
        &mut s_all
            .iter()
            .flat_map(|&s| s_all.iter().map(move |&t| (s, t)))
            .filter(|&(s, t)| s != t && ctx.in_u(plus(s)) && ctx.in_u(plus(t)))
            .filter(|&(s, t)| sigma.related(idx(plus(s), s), idx(plus(t), t)))
            .map(|(s, t)| vec![s, t]),
    );
    let mut s3 = None;
    for c in sigma.classes() {
        let (u, s) = sd.elems[c[0]];
        if let Some(&j) = c.iter().find(|&&j| {
            let (v, t) = sd.elems[j];
            ctx.mul(u, plus(s)) != ctx.mul(v, plus(t))
        }) {
            let (v, t) = sd.elems[j];
            s3 = Some(vec![u, s, v, t]);
            break;
        }
    }
    let s3 = Verdict::from_failure(s3);
    let s4 = first(
        &mut sigma_u(one)
            .into_iter()
            .filter(|&(s, t)| s != t)
            .map(|(s, t)| vec![s, t]),
    );
    let mut s5 = None;
    let mut s6 = None;
    let mut s7 = None;
    let mut s8 = None;
    for &u in u_all {
        for (s, t) in sigma_u(u) {
            for &x in s_all {
                if s5.is_none() && !rel(u, ctx.mul(s, x), ctx.mul(t, x)) {
                    s5 = Some(vec![u, s, t, x]);
                }
                if s7.is_none() && !rel(act.act(ctx, x, u), ctx.mul(x, s), ctx.mul(x, t)) {
                    s7 = Some(vec![u, s, t, x]);
                }
            }
            for &w in u_all {
                if s6.is_none() && !rel(ctx.mul(w, u), s, t) {
                    s6 = Some(vec![u, s, t, w]);
                }
                let a = ctx.mul(u, act.act(ctx, s, w));
                let b = ctx.mul(u, act.act(ctx, t, w));
                if s8.is_none() && (a != b || !rel(a, s, t)) {
                    s8 = Some(vec![u, s, t, w]);
                }
            }
        }
    }
    let laws = [
        s1,
        s2,
        s3,
        s4,
        Verdict::from_failure(s5),
        Verdict::from_failure(s6),
        Verdict::from_failure(s7),
        Verdict::from_failure(s8),
    ];
    Ok(SpecialReport { laws })
}
