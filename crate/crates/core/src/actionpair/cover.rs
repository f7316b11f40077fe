use std::collections::{BTreeSet, HashMap};

use crate::fmonoid::{closure_from_generators, CayleyTable};

use super::{
    check_pair_from_plus, classify_proper, ActionTable, AmbientContext, ApError, PairReport,
};

/// `embed_central` refuses pairs with more elements in US than this.
pub const EMBED_SIZE_CAP: usize = 10_000;
/// `embed_central` refuses pairs with more σ-classes than this.
pub const EMBED_CLASS_CAP: usize = 64;

/// The proper pair `(U̲, S̄)` built inside `M′ = {(u,s) ∈ U¹ ⋊ S¹ : u = us⁺}`.
#[derive(Clone, Debug)]
pub struct CoverReport {
    /// The monoid M′ and its elements as ambient pairs.
    pub m_prime: CayleyTable,
    pub m_prime_elems: Vec<(usize, usize)>,
    /// `U̲ = {(u,1)}` and `S̄ = {(s⁺,s)}` as indices of M′, in the order of U and S.
    pub u_bar: Vec<usize>,
    pub s_bar: Vec<usize>,
    /// `U̲·S̄` as indices of M′.
    pub carrier: Vec<usize>,
    pub cover_pair: PairReport,
    pub u_iso: bool,
    pub s_iso: bool,
    pub sigma_trivial: bool,
    pub proper: bool,
    /// `|US|`.
    pub target_size: usize,
    pub psi_surjective: bool,
    pub psi_morphism: bool,
    /// `U̲ ⊆ U̲·S̄` and `ψ` maps it isomorphically onto U; present when S is a submonoid.
    pub u_restriction_iso: Option<bool>,
    /// For `(P, M)` with S all of M and U the set of `s⁺`: the carrier is left
    /// restriction under `(u,s)⁺ = (u,1)` and ψ respects `⁺` and separates projections.
    pub left_restriction: Option<bool>,
    pub projection_separating: Option<bool>,
}

/// Builds the proper cover of a weak action pair and checks its properties.
pub fn proper_cover(
    ctx: &AmbientContext,
    act: &ActionTable,
    report: &PairReport,
) -> Result<CoverReport, ApError> {
    if !report.weak {
        return Err(ApError::HypothesisFailed("weak action pair", Vec::new()));
    }
    if !act.is_monoidal(ctx) {
        return Err(ApError::HypothesisFailed(
            "monoidal action",
            vec![ctx.one()],
        ));
    }
    let one = ctx.one();
    let plus = |s: usize| act.act(ctx, s, one);
    let all: Vec<(usize, usize)> = ctx
        .u1()
        .iter()
        .flat_map(|&u| ctx.s1().iter().map(move |&s| (u, s)))
        .filter(|&(u, s)| u == ctx.mul(u, plus(s)))
        .collect();
    let prod = |&(u, s): &(usize, usize), &(v, t): &(usize, usize)| {
        (ctx.mul(u, act.act(ctx, s, v)), ctx.mul(s, t))
    };
    let (m_prime, elems) = closure_from_generators(&all, prod, Some((one, one)), all.len())?;
    if elems.len() != all.len() {
        return Err(ApError::ActionInvalid("M′ is not closed".into()));
    }
    let index: HashMap<(usize, usize), usize> =
        elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let u_bar: Vec<usize> = ctx.u().iter().map(|&u| index[&(u, one)]).collect();
    let s_bar: Vec<usize> = ctx.s().iter().map(|&s| index[&(plus(s), s)]).collect();

    let u_iso = ctx.u().iter().enumerate().all(|(i, &a)| {
        ctx.u()
            .iter()
            .enumerate()
            .all(|(j, &b)| m_prime.mul(u_bar[i], u_bar[j]) == index[&(ctx.mul(a, b), one)])
    });
    let s_iso = ctx.s().iter().enumerate().all(|(i, &a)| {
        ctx.s().iter().enumerate().all(|(j, &b)| {
            let ab = ctx.mul(a, b);
            m_prime.mul(s_bar[i], s_bar[j]) == index[&(plus(ab), ab)]
        })
    });

    let cctx = AmbientContext::new(&m_prime, &u_bar, &s_bar)?
        .with_plus(|x| index[&(plus(elems[x].1), one)])?;
    let (cr, cact) = check_pair_from_plus(&cctx)?;
    let cover_pair = if cr.action {
        classify_proper(&cctx, &cact, cr)?
    } else {
        cr
    };
    let sigma_trivial = cover_pair
        .proper
        .as_ref()
        .is_some_and(|p| p.sigma.is_discrete());
    let proper = cover_pair.is_proper();

    let mp = &m_prime;
    let carrier: BTreeSet<usize> = u_bar
        .iter()
        .flat_map(|&a| s_bar.iter().map(move |&b| mp.mul(a, b)))
        .collect();
    let carrier: Vec<usize> = carrier.into_iter().collect();
    let psi = |i: usize| ctx.mul(elems[i].0, elems[i].1);
    let us: BTreeSet<usize> = ctx
        .u()
        .iter()
        .flat_map(|&u| ctx.s().iter().map(move |&s| ctx.mul(u, s)))
        .collect();
    let image: BTreeSet<usize> = carrier.iter().map(|&i| psi(i)).collect();
    let psi_surjective = image == us;
    let psi_morphism = carrier.iter().all(|&i| {
        carrier
            .iter()
            .all(|&j| psi(m_prime.mul(i, j)) == ctx.mul(psi(i), psi(j)))
    });
    let u_restriction_iso = ctx.s_is_monoid().then(|| {
        u_bar.iter().all(|x| carrier.binary_search(x).is_ok())
            && u_bar.iter().zip(ctx.u()).all(|(&x, &u)| psi(x) == u)
    });

    let lr_instance = ctx.s().len() == ctx.m().size() && {
        let mut pl: Vec<usize> = ctx.s().iter().map(|&s| plus(s)).collect();
        pl.sort_unstable();
        pl.dedup();
        pl == ctx.u()
    };
    let (left_restriction, projection_separating) = if lr_instance {
        let cplus = |i: usize| index[&(elems[i].0, one)];
        let mul = |a, b| m_prime.mul(a, b);
        let c = &carrier;
        let lr = c
            .iter()
            .all(|&x| c.binary_search(&cplus(x)).is_ok() && mul(cplus(x), x) == x)
            && c.iter().all(|&x| {
                c.iter().all(|&y| {
                    let (xp, yp) = (cplus(x), cplus(y));
                    mul(xp, yp) == mul(yp, xp)
                        && cplus(mul(xp, y)) == mul(xp, yp)
                        && mul(x, yp) == mul(cplus(mul(x, y)), x)
                })
            });
        let proj: Vec<usize> = c
            .iter()
            .map(|&x| cplus(x))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let proj_images: BTreeSet<usize> = proj.iter().map(|&x| psi(x)).collect();
        let sep =
            proj_images.len() == proj.len() && c.iter().all(|&x| psi(cplus(x)) == plus(psi(x)));
        (Some(lr), Some(sep))
    } else {
        (None, None)
    };

    Ok(CoverReport {
        m_prime,
        m_prime_elems: elems,
        u_bar,
        s_bar,
        carrier,
        cover_pair,
        u_iso,
        s_iso,
        sigma_trivial,
        proper,
        target_size: us.len(),
        psi_surjective,
        psi_morphism,
        u_restriction_iso,
        left_restriction,
        projection_separating,
    })
}

/// Outcome of mapping US into `𝒰 ⋊ (S/σ)`.
#[derive(Clone, Debug)]
pub struct EmbedReport {
    pub us_size: usize,
    pub num_classes: usize,
    /// Every element's natural factorisations share the U-part and have
    /// σ-related S-parts.
    pub factorisations_ok: bool,
    pub injective: bool,
    pub morphism: bool,
    /// Whether the morphism check ran over all pairs or over `US × (U ∪ S)`.
    pub checked_all_pairs: bool,
    /// Images of U are idempotent and commute; present when U = P.
    pub image_semilattice: Option<bool>,
}

type SetFn = Vec<Vec<usize>>;

/// Checks that `a ↦ (f_u, ŝ)`, for a natural factorisation `a = us`, is an
/// injective morphism from US into `𝒰 ⋊ (S/σ)`, where `f_u(x̂)` is the set
/// `{ᵗu : t ∈ x̂}·P`.
pub fn embed_central(
    ctx: &AmbientContext,
    act: &ActionTable,
    report: &PairReport,
) -> Result<EmbedReport, ApError> {
    let info = match &report.proper {
        Some(p) if p.proper.holds() => p,
        _ => return Err(ApError::HypothesisFailed("proper pair", Vec::new())),
    };
    if !ctx.u_is_monoid() || !ctx.s_is_monoid() {
        return Err(ApError::HypothesisFailed("U and S submonoids", Vec::new()));
    }
    let p = &info.p;
    for &x in p {
        if let Some(&u) = ctx.u().iter().find(|&&u| ctx.mul(x, u) != ctx.mul(u, x)) {
            return Err(ApError::HypothesisFailed("P central in U", vec![x, u]));
        }
    }
    let one = ctx.one();
    let s = ctx.s();
    let us: Vec<usize> = ctx
        .u()
        .iter()
        .flat_map(|&u| s.iter().map(move |&t| ctx.mul(u, t)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if us.len() > EMBED_SIZE_CAP {
        return Err(ApError::SizeBoundExceeded(format!(
            "|US| = {} > {EMBED_SIZE_CAP}",
            us.len()
        )));
    }
    let sigma = &info.sigma;
    let k = sigma.num_classes();
    if k > EMBED_CLASS_CAP {
        return Err(ApError::SizeBoundExceeded(format!(
            "|S/σ| = {k} > {EMBED_CLASS_CAP}"
        )));
    }
    let class = |t: usize| sigma.class_of(ctx.s_index(t).expect("in S"));
    let reps: Vec<usize> = sigma.classes().iter().map(|c| s[c[0]]).collect();
    let class_mul: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| class(ctx.mul(reps[a], reps[b]))).collect())
        .collect();
    let plus = |t: usize| act.act(ctx, t, one);

    let set_mul = |a: &[usize], b: &[usize]| -> Vec<usize> {
        let out: BTreeSet<usize> = a
            .iter()
            .flat_map(|&x| b.iter().map(move |&y| ctx.mul(x, y)))
            .collect();
        out.into_iter().collect()
    };
    let f_of = |u: usize| -> SetFn {
        sigma
            .classes()
            .iter()
            .map(|c| {
                let v: Vec<usize> = c.iter().map(|&i| act.act(ctx, s[i], u)).collect();
                set_mul(&v, p)
            })
            .collect()
    };

    // natural factorisations
    let mut nat: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut factorisations_ok = true;
    for &u in ctx.u() {
        for &t in s {
            if ctx.mul(u, plus(t)) != u {
                continue;
            }
            let a = ctx.mul(u, t);
            match nat.get(&a) {
                None => {
                    nat.insert(a, (u, t));
                }
                Some(&(v, r)) => factorisations_ok &= v == u && class(r) == class(t),
            }
        }
    }
    factorisations_ok &= us.iter().all(|a| nat.contains_key(a));
    let mut f_cache: HashMap<usize, SetFn> = HashMap::new();
    let mut image: HashMap<usize, (SetFn, usize)> = HashMap::new();
    for &a in &us {
        let (u, t) = nat[&a];
        let f = f_cache.entry(u).or_insert_with(|| f_of(u)).clone();
        image.insert(a, (f, class(t)));
    }
    let distinct: BTreeSet<&(SetFn, usize)> = image.values().collect();
    let injective = distinct.len() == us.len();

    let mul_image = |(f, a): &(SetFn, usize), (g, b): &(SetFn, usize)| -> (SetFn, usize) {
        let h: SetFn = (0..k)
            .map(|x| set_mul(&f[x], &g[class_mul[x][*a]]))
            .collect();
        (h, class_mul[*a][*b])
    };
    let checked_all_pairs = us.len() * us.len() <= 1_000_000;
    let right: Vec<usize> = if checked_all_pairs {
        us.clone()
    } else {
        let gens: BTreeSet<usize> = ctx.u().iter().chain(s).copied().collect();
        gens.into_iter().collect()
    };
    let morphism = us.iter().all(|&a| {
        right
            .iter()
            .all(|&b| image[&ctx.mul(a, b)] == mul_image(&image[&a], &image[&b]))
    });

    let image_semilattice = (ctx.u() == p.as_slice()).then(|| {
        let fs: Vec<SetFn> = ctx.u().iter().map(|&u| f_of(u)).collect();
        let star =
            |f: &SetFn, g: &SetFn| -> SetFn { (0..k).map(|x| set_mul(&f[x], &g[x])).collect() };
        fs.iter()
            .all(|f| &star(f, f) == f && fs.iter().all(|g| star(f, g) == star(g, f)))
    });

    Ok(EmbedReport {
        us_size: us.len(),
        num_classes: k,
        factorisations_ok,
        injective,
        morphism,
        checked_all_pairs,
        image_semilattice,
    })
}
