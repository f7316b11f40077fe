use std::collections::{BTreeSet, HashMap};

use crate::actionpair::{
    big_theta_u, check_weak_pair, omega_check, semidirect, theta_u, ActionTable, AmbientContext,
    ApError, OmegaInput, PairFamily, PairReport, SemidirectProduct,
};
use crate::fmonoid::{
    closure_from_generators, closure_under_maps, congruence_closure, verify_presentation_with,
    CayleyTable, CongruencePartition, EnumConfig, Kind, Presentation, Side, Word,
};

use super::{
    index_map, shortlex_words, subtable, with_kind, Expectation, PresError, PresentationBundle,
    Target, TARGET_CAP,
};

/// Pairs of semidirect-product elements, each given as `(u, s)`.
type SdPairs = Vec<((usize, usize), (usize, usize))>;
/// Generating pairs of S keyed by an element of U.
type KeyedPairs = Vec<(usize, Vec<(usize, usize)>)>;

/// A presentation whose letters are labelled by elements of an ambient
/// monoid.
#[derive(Clone, Debug)]
pub struct Labelled {
    pub pres: Presentation,
    /// Ambient element of each letter.
    pub images: Vec<usize>,
}

impl Labelled {
    /// The presentation read off the Cayley graph of the submonoid (or
    /// subsemigroup) generated by `gens`, with letters `{prefix}0, {prefix}1, …`.
    pub fn from_generators(
        m: &CayleyTable,
        gens: &[usize],
        prefix: &str,
        monoid: bool,
    ) -> Result<Self, PresError> {
        let one = m.identity();
        let (t, elems) = closure_from_generators(
            gens,
            |&a, &b| m.mul(a, b),
            monoid.then_some(one).flatten(),
            TARGET_CAP,
        )?;
        let names: Vec<String> = (0..gens.len()).map(|i| format!("{prefix}{i}")).collect();
        let pres = crate::fmonoid::table_presentation(&t, &names);
        let pres = with_kind(
            &pres,
            if monoid {
                Kind::Monoid
            } else {
                Kind::Semigroup
            },
        )?;
        Ok(Labelled {
            pres,
            images: t.gens().iter().map(|&g| elems[g]).collect(),
        })
    }
}

/// The presentation theorems for products `US` of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// Weak pair of submonoids, action by monoid morphisms, `θ = Ω♯`.
    ESmon0,
    /// Action pair of submonoids.
    ESmon,
    /// As `ESmon` with θ_u the join of θ_v over `v ≼ u`, v ∈ V.
    Msimp1,
    /// As `ESmon` with U commutative and `θ_uv = θ_u ∨ θ_v`.
    Msimp2,
    /// Action pair with U a submonoid, `U∖{1}` a subsemigroup inside US and
    /// `(U, S¹)` an action pair; semigroup presentation.
    ES,
    Simp1,
    Simp2,
    /// Weak pair of submonoids, with Ω generating the kernel of `(u,s) ↦ us`
    /// on the local monoid.
    ESmon00,
}

impl PairKind {
    pub fn provenance(self) -> &'static str {
        match self {
            PairKind::ESmon0 => "Thm ESmon0",
            PairKind::ESmon => "Thm ESmon",
            PairKind::Msimp1 => "Thm Msimp(1)",
            PairKind::Msimp2 => "Thm Msimp(2)",
            PairKind::ES => "Thm ES",
            PairKind::Simp1 => "Thm simp(1)",
            PairKind::Simp2 => "Thm simp(2)",
            PairKind::ESmon00 => "Thm ESmon00",
        }
    }

    fn semigroup(self) -> bool {
        matches!(self, PairKind::ES | PairKind::Simp1 | PairKind::Simp2)
    }
}

impl std::str::FromStr for PairKind {
    type Err = PresError;

    fn from_str(s: &str) -> Result<Self, PresError> {
        let all = [
            ("ESmon0", PairKind::ESmon0),
            ("ESmon", PairKind::ESmon),
            ("Msimp1", PairKind::Msimp1),
            ("Msimp2", PairKind::Msimp2),
            ("ES", PairKind::ES),
            ("simp1", PairKind::Simp1),
            ("simp2", PairKind::Simp2),
            ("ESmon00", PairKind::ESmon00),
        ];
        all.iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(s))
            .map(|&(_, k)| k)
            .ok_or_else(|| PresError::BadParams(format!("unknown pair kind {s}")))
    }
}

/// How the relations identifying elements of `U ⋊ S` (or of the local
/// monoid) are generated.
#[derive(Clone, Debug, Default)]
pub enum OmegaSpec {
    /// Spanning pairs computed from the tables; for the simplified kinds, V
    /// is the set of letter images.
    #[default]
    Default,
    /// A generating set from one of the congruence lemmas.
    Lemma(OmegaInput),
    /// Explicit generating pairs `((u, s), (v, t))` of ambient elements.
    Congruence(SdPairs),
    /// Right-congruence generators per element of U, with the subset V for
    /// the simplified kinds.
    Family {
        v: Option<Vec<usize>>,
        omega: PairFamily,
    },
}

fn failed(what: impl Into<String>) -> PresError {
    PresError::HypothesisFailed(what.into())
}

fn from_ap(e: ApError) -> PresError {
    match e {
        ApError::HypothesisFailed(what, w) => failed(format!("{what} (at {w:?})")),
        ApError::ActionInvalid(s) => failed(format!("action: {s}")),
        e => PresError::Pair(e),
    }
}

/// Which side of the pair a labelled presentation describes.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Side2 {
    U,
    S,
}

/// Checks that `lab` presents the expected subset (U or S, with or without
/// the identity) via its images, converting to the required kind.
fn check_part(
    ctx: &AmbientContext,
    lab: &Labelled,
    side: Side2,
    kind: Kind,
    drop_one: bool,
) -> Result<Presentation, PresError> {
    let m = ctx.m();
    let one = ctx.one();
    let name = if side == Side2::U { "U" } else { "S" };
    if lab.images.len() != lab.pres.num_letters() {
        return Err(PresError::BadParams(format!(
            "one image per letter of the {name} presentation"
        )));
    }
    let set: Vec<usize> = if side == Side2::U { ctx.u() } else { ctx.s() }
        .iter()
        .copied()
        .filter(|&x| !(drop_one && x == one))
        .collect();
    let mut seen = BTreeSet::new();
    for &x in &lab.images {
        if x == one {
            return Err(failed(format!("no letter of X_{name} maps to 1")));
        }
        if !set.contains(&x) {
            return Err(failed(format!("letter image {x} lies outside {name}")));
        }
        if !seen.insert(x) {
            return Err(failed(format!("letters of X_{name} have distinct images")));
        }
    }
    let with_identity = kind == Kind::Monoid && set.contains(&one);
    if m.generated(&lab.images, with_identity) != set {
        return Err(failed(format!("X_{name} generates {name}")));
    }
    let pres = with_kind(&lab.pres, kind)?;
    if set.is_empty() {
        return Ok(pres);
    }
    let hint = with_identity.then_some(one);
    let members: Vec<usize> = set.iter().copied().filter(|&x| Some(x) != hint).collect();
    let (t, elems) = subtable(m, &members, hint)?;
    let idx = index_map(&elems);
    let gen_map: Vec<usize> = lab.images.iter().map(|x| idx[x]).collect();
    let r = verify_presentation_with(&pres, &t, &gen_map, EnumConfig::default())?;
    if !r.passed() {
        return Err(failed(format!("the given presentation presents {name}")));
    }
    Ok(pres)
}

/// The joint alphabet `X_U ∪ X_S` with `R_U ∪ R_S`.
fn join(pu: &Presentation, ps: &Presentation, kind: Kind) -> Result<Presentation, PresError> {
    let mut names: Vec<String> = pu.alphabet().to_vec();
    for n in ps.alphabet() {
        if names.contains(n) {
            return Err(PresError::BadParams(format!(
                "letter {n} is used for both U and S"
            )));
        }
        names.push(n.clone());
    }
    let mut p = Presentation::with_letters(kind, &names);
    p.absorb(pu, &(0..pu.num_letters()).collect::<Vec<_>>());
    let off = pu.num_letters();
    p.absorb(ps, &(off..off + ps.num_letters()).collect::<Vec<_>>());
    Ok(p)
}

/// Normal forms over the joint alphabet.
struct Normal {
    nu: HashMap<usize, Word>,
    ns: HashMap<usize, Word>,
    one: usize,
}

impl Normal {
    fn new(ctx: &AmbientContext, u: &Labelled, s: &Labelled, monoid: bool) -> Self {
        let m = ctx.m();
        let off = u.images.len();
        let mut nu = shortlex_words(m, &u.images, monoid);
        let ns: HashMap<usize, Word> = shortlex_words(m, &s.images, monoid)
            .into_iter()
            .map(|(k, w)| (k, w.into_iter().map(|j| j + off).collect()))
            .collect();
        nu.entry(ctx.one()).or_default();
        Normal {
            nu,
            ns,
            one: ctx.one(),
        }
    }

    fn u(&self, x: usize) -> Word {
        self.nu[&x].clone()
    }

    /// `N_S(s)`, with ε for 1 when 1 ∉ S.
    fn s(&self, x: usize) -> Word {
        match self.ns.get(&x) {
            Some(w) => w.clone(),
            None if x == self.one => Vec::new(),
            None => panic!("no normal form for {x}"),
        }
    }

    fn pair(&self, u: usize, s: usize) -> Word {
        let mut w = self.u(u);
        w.extend(self.s(s));
        w
    }
}

/// `R₁ = {(xy, ˣy·x)}` for x ∈ X_S, y ∈ X_U.
fn add_r1(
    p: &mut Presentation,
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
    s: &Labelled,
    nf: &Normal,
) {
    let off = u.images.len();
    for (xi, &x) in s.images.iter().enumerate() {
        for (yi, &y) in u.images.iter().enumerate() {
            let mut rhs = nf.u(act.act(ctx, x, y));
            rhs.push(off + xi);
            p.add_relation(vec![off + xi, yi], rhs);
        }
    }
}

/// `R₃ = {(x, x⁺x)}` for x ∈ X_S with `x̄⁺ ≠ 1`.
fn add_r3(
    p: &mut Presentation,
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
    s: &Labelled,
    nf: &Normal,
) {
    let off = u.images.len();
    for (xi, &x) in s.images.iter().enumerate() {
        let plus = act.act(ctx, x, ctx.one());
        if plus != ctx.one() {
            let mut rhs = nf.u(plus);
            rhs.push(off + xi);
            p.add_relation(vec![off + xi], rhs);
        }
    }
}

fn monoids(ctx: &AmbientContext) -> Result<(), PresError> {
    if !ctx.u_is_monoid() {
        return Err(failed("U is a submonoid"));
    }
    if !ctx.s_is_monoid() {
        return Err(failed("S is a submonoid"));
    }
    Ok(())
}

fn sd_of(ctx: &AmbientContext, act: &ActionTable) -> Result<SemidirectProduct, PresError> {
    semidirect(ctx, act).map_err(from_ap)
}

fn bundle(
    name: String,
    provenance: &'static str,
    pres: Presentation,
    table: CayleyTable,
    gen_map: Vec<usize>,
) -> PresentationBundle {
    PresentationBundle {
        name,
        provenance,
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    }
}

/// The semidirect product `U ⋊ S` of monoids with S acting monoidally by
/// monoid morphisms, presented by `R_U ∪ R_S ∪ R₁`.
pub fn lavers(
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
    s: &Labelled,
) -> Result<PresentationBundle, PresError> {
    monoids(ctx)?;
    if !act.is_monoidal(ctx) {
        return Err(failed("the action is monoidal"));
    }
    if !act.by_monoid_morphisms(ctx) {
        return Err(failed("S acts by monoid morphisms"));
    }
    let pu = check_part(ctx, u, Side2::U, Kind::Monoid, false)?;
    let ps = check_part(ctx, s, Side2::S, Kind::Monoid, false)?;
    let sd = sd_of(ctx, act)?;
    let mut pres = join(&pu, &ps, Kind::Monoid)?;
    let nf = Normal::new(ctx, u, s, true);
    add_r1(&mut pres, ctx, act, u, s, &nf);
    let one = ctx.one();
    let id = sd.index_of(one, one).expect("(1,1) in U ⋊ S");
    let (table, elems) = subtable(
        &sd.table,
        &(0..sd.size()).filter(|&i| i != id).collect::<Vec<_>>(),
        Some(id),
    )?;
    let idx = index_map(&elems);
    let mut gen_map: Vec<usize> = u
        .images
        .iter()
        .map(|&x| idx[&sd.index_of(x, one).expect("pair")])
        .collect();
    gen_map.extend(
        s.images
            .iter()
            .map(|&x| idx[&sd.index_of(one, x).expect("pair")]),
    );
    Ok(bundle(
        format!("Lavers(|U|={},|S|={})", ctx.u().len(), ctx.s().len()),
        "Thm Lavers",
        pres,
        table,
        gen_map,
    ))
}

/// The local monoid `{(u, s) : u = us⁺}` of `U ⋊ S`, presented by
/// `R_U ∪ R_S ∪ R₁ ∪ R₃`.
pub fn local_monoid_pres(
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
    s: &Labelled,
) -> Result<PresentationBundle, PresError> {
    monoids(ctx)?;
    if !act.is_monoidal(ctx) {
        return Err(failed("the action is monoidal"));
    }
    let pu = check_part(ctx, u, Side2::U, Kind::Monoid, false)?;
    let ps = check_part(ctx, s, Side2::S, Kind::Monoid, false)?;
    let sd = sd_of(ctx, act)?;
    let mut pres = join(&pu, &ps, Kind::Monoid)?;
    let nf = Normal::new(ctx, u, s, true);
    add_r1(&mut pres, ctx, act, u, s, &nf);
    add_r3(&mut pres, ctx, act, u, s, &nf);
    let (table, gen_map) = local_target(ctx, act, &sd, u, s)?;
    Ok(bundle(
        format!("M(|U|={},|S|={})", ctx.u().len(), ctx.s().len()),
        "Thm M",
        pres,
        table,
        gen_map,
    ))
}

/// The local monoid's table, with `x_U ↦ (x̄, 1)` and `x_S ↦ (x̄⁺, x̄)`.
fn local_target(
    ctx: &AmbientContext,
    act: &ActionTable,
    sd: &SemidirectProduct,
    u: &Labelled,
    s: &Labelled,
) -> Result<(CayleyTable, Vec<usize>), PresError> {
    let one = ctx.one();
    let id = sd.index_of(one, one).expect("(1,1) in U ⋊ S");
    let members: Vec<usize> = sd.m.iter().copied().filter(|&i| i != id).collect();
    let (table, elems) = subtable(&sd.table, &members, Some(id))?;
    let idx = index_map(&elems);
    let mut gen_map: Vec<usize> = u
        .images
        .iter()
        .map(|&x| idx[&sd.index_of(x, one).expect("pair")])
        .collect();
    gen_map.extend(
        s.images
            .iter()
            .map(|&x| idx[&sd.index_of(act.act(ctx, x, one), x).expect("pair")]),
    );
    Ok((table, gen_map))
}

/// Right congruence on the listed elements generated by ambient pairs.
fn right_closure(
    ctx: &AmbientContext,
    elems: &[usize],
    pairs: &[(usize, usize)],
) -> Result<CongruencePartition, PresError> {
    let pos: HashMap<usize, usize> = index_map(elems);
    let at = |x: usize| {
        pos.get(&x)
            .copied()
            .ok_or_else(|| PresError::BadParams(format!("{x} is not in S or S¹")))
    };
    let idx: Vec<(usize, usize)> = pairs
        .iter()
        .map(|&(a, b)| Ok((at(a)?, at(b)?)))
        .collect::<Result<_, PresError>>()?;
    let maps: Vec<Vec<usize>> = elems
        .iter()
        .map(|&g| elems.iter().map(|&x| pos[&ctx.mul(x, g)]).collect())
        .collect();
    Ok(closure_under_maps(elems.len(), &idx, &maps))
}

/// `θ_u` on S, or `Θ_u` on S¹.
fn kernel_at(ctx: &AmbientContext, u: usize, big: bool) -> CongruencePartition {
    if big {
        big_theta_u(ctx, u)
    } else {
        theta_u(ctx, u)
    }
}

fn spanning(ctx: &AmbientContext, u: usize, big: bool) -> Vec<(usize, usize)> {
    let elems = if big { ctx.s1() } else { ctx.s() };
    kernel_at(ctx, u, big)
        .spanning_pairs()
        .into_iter()
        .map(|(a, b)| (elems[a], elems[b]))
        .collect()
}

/// `v ≼ u`: u = wv for some w ∈ U¹.
fn below(ctx: &AmbientContext, v: usize, u: usize) -> bool {
    ctx.u1().iter().any(|&w| ctx.mul(w, v) == u)
}

/// Ω_u for each requested u: the given family (checked to generate) or
/// spanning pairs.
fn omega_family(
    ctx: &AmbientContext,
    keys: &[usize],
    given: Option<&PairFamily>,
    big: bool,
) -> Result<KeyedPairs, PresError> {
    let elems = if big { ctx.s1() } else { ctx.s() };
    keys.iter()
        .map(|&u| match given {
            None => Ok((u, spanning(ctx, u, big))),
            Some(fam) => {
                let pairs = fam.get(&u).cloned().unwrap_or_default();
                if right_closure(ctx, elems, &pairs)? != kernel_at(ctx, u, big) {
                    let which = if big { "Θ_u" } else { "θ_u" };
                    return Err(failed(format!(
                        "Ω_u generates {which} as a right congruence (u = {u})"
                    )));
                }
                Ok((u, pairs))
            }
        })
        .collect()
}

/// `US` as a monoid or semigroup, generated by the letter images.
fn us_target(
    ctx: &AmbientContext,
    u: &Labelled,
    s: &Labelled,
    monoid: bool,
) -> Result<(CayleyTable, Vec<usize>), PresError> {
    let m = ctx.m();
    let images: Vec<usize> = u.images.iter().chain(&s.images).copied().collect();
    let (table, elems) = closure_from_generators(
        &images,
        |&a, &b| m.mul(a, b),
        monoid.then_some(ctx.one()),
        TARGET_CAP,
    )?;
    let us: BTreeSet<usize> = ctx
        .u1()
        .iter()
        .flat_map(|&a| ctx.s().iter().map(move |&b| m.mul(a, b)))
        .collect();
    let got: BTreeSet<usize> = elems.iter().copied().collect();
    let us = if monoid {
        let mut us = us;
        us.insert(ctx.one());
        us
    } else {
        us
    };
    if got != us {
        return Err(failed("the letters generate US"));
    }
    let idx = index_map(&elems);
    Ok((table, images.iter().map(|x| idx[x]).collect()))
}

/// Builds the presentation of `US` given by the chosen theorem, checking
/// each of its hypotheses first.
pub fn general_pair_pres(
    kind: PairKind,
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
    s: &Labelled,
    omega: &OmegaSpec,
) -> Result<PresentationBundle, PresError> {
    let report = check_weak_pair(ctx, act).map_err(from_ap)?;
    let pkind = if kind.semigroup() {
        Kind::Semigroup
    } else {
        Kind::Monoid
    };
    let needs_weak = matches!(kind, PairKind::ESmon0 | PairKind::ESmon00);
    if needs_weak && !report.weak {
        return Err(failed("(U, S) is a weak action pair"));
    }
    if !needs_weak && !report.action {
        return Err(failed("(U, S) is an action pair"));
    }
    let (pu, ps) = if kind.semigroup() {
        assumption_us(ctx, act)?;
        (
            check_part(ctx, u, Side2::U, Kind::Semigroup, true)?,
            check_part(ctx, s, Side2::S, Kind::Semigroup, false)?,
        )
    } else {
        monoids(ctx)?;
        (
            check_part(ctx, u, Side2::U, Kind::Monoid, false)?,
            check_part(ctx, s, Side2::S, Kind::Monoid, false)?,
        )
    };
    let mut pres = join(&pu, &ps, pkind)?;
    let nf = Normal::new(ctx, u, s, !kind.semigroup());
    add_r1(&mut pres, ctx, act, u, s, &nf);
    let one = ctx.one();
    let big = kind.semigroup();
    let r2 = |pres: &mut Presentation, fam: KeyedPairs, letter: Option<&HashMap<usize, usize>>| {
        for (key, pairs) in fam {
            for (a, b) in pairs {
                let head = match letter {
                    Some(l) => vec![l[&key]],
                    None => nf.u(key),
                };
                let lhs = [head.clone(), nf.s(a)].concat();
                let rhs = [head, nf.s(b)].concat();
                pres.try_add_relation(lhs, rhs)?;
            }
        }
        Ok::<(), PresError>(())
    };
    let letters: HashMap<usize, usize> =
        u.images.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let (given_v, given_fam) = match omega {
        OmegaSpec::Default => (None, None),
        OmegaSpec::Family { v, omega } => (v.clone(), Some(omega)),
        _ if matches!(kind, PairKind::ESmon0 | PairKind::ESmon00) => (None, None),
        _ => {
            return Err(PresError::BadParams(format!(
                "{} takes Ω as a per-element family",
                kind.provenance()
            )))
        }
    };
    let u_keys: Vec<usize> = ctx
        .u()
        .iter()
        .copied()
        .filter(|&x| !(big && x == one))
        .collect();
    match kind {
        PairKind::ESmon0 => {
            if !report.by_monoid_morphisms {
                return Err(failed("S acts by monoid morphisms"));
            }
            let sd = sd_of(ctx, act)?;
            let pairs = theta_generators(ctx, act, &report, &sd, omega)?;
            for (a, b) in pairs {
                let (ua, sa) = sd.elems[a];
                let (ub, sb) = sd.elems[b];
                pres.try_add_relation(nf.pair(ua, sa), nf.pair(ub, sb))?;
            }
        }
        PairKind::ESmon00 => {
            if !act.is_monoidal(ctx) {
                return Err(failed("the action is monoidal"));
            }
            add_r3(&mut pres, ctx, act, u, s, &nf);
            let sd = sd_of(ctx, act)?;
            for ((ua, sa), (ub, sb)) in local_kernel_generators(ctx, &sd, omega)? {
                pres.try_add_relation(nf.pair(ua, sa), nf.pair(ub, sb))?;
            }
        }
        PairKind::ESmon | PairKind::ES => {
            add_r3(&mut pres, ctx, act, u, s, &nf);
            r2(&mut pres, omega_family(ctx, &u_keys, given_fam, big)?, None)?;
        }
        PairKind::Msimp1 | PairKind::Simp1 => {
            add_r3(&mut pres, ctx, act, u, s, &nf);
            let v = given_v.unwrap_or_else(|| u.images.clone());
            if let Some(&x) = v.iter().find(|&&x| !u_keys.contains(&x)) {
                return Err(failed(format!(
                    "V ⊆ U{} (element {x})",
                    if big { "∖{1}" } else { "" }
                )));
            }
            for &x in &u_keys {
                let join = v
                    .iter()
                    .filter(|&&y| below(ctx, y, x))
                    .fold(kernel_at(ctx, one, big), |acc, &y| {
                        acc.join(&kernel_at(ctx, y, big))
                    });
                if join != kernel_at(ctx, x, big) {
                    return Err(failed(format!(
                        "θ_u is the join of θ_v over v ≼ u, v ∈ V (u = {x})"
                    )));
                }
            }
            r2(&mut pres, omega_family(ctx, &v, given_fam, big)?, None)?;
        }
        PairKind::Msimp2 | PairKind::Simp2 => {
            add_r3(&mut pres, ctx, act, u, s, &nf);
            for &a in ctx.u() {
                for &b in ctx.u() {
                    if ctx.mul(a, b) != ctx.mul(b, a) {
                        return Err(failed(format!("U is commutative (at {a}, {b})")));
                    }
                    let lhs = kernel_at(ctx, ctx.mul(a, b), big);
                    if lhs != kernel_at(ctx, a, big).join(&kernel_at(ctx, b, big)) {
                        return Err(failed(format!("θ_uv = θ_u ∨ θ_v (at {a}, {b})")));
                    }
                }
            }
            r2(
                &mut pres,
                omega_family(ctx, &u.images, given_fam, big)?,
                Some(&letters),
            )?;
        }
    }
    let (table, gen_map) = us_target(ctx, u, s, !big)?;
    Ok(bundle(
        format!("{:?}(|U|={},|S|={})", kind, ctx.u().len(), ctx.s().len()),
        kind.provenance(),
        pres,
        table,
        gen_map,
    ))
}

/// Items (i)–(iii) of the standing assumption for the semigroup theorems.
fn assumption_us(ctx: &AmbientContext, act: &ActionTable) -> Result<(), PresError> {
    let one = ctx.one();
    if !ctx.u_is_monoid() {
        return Err(failed("(i) U is a submonoid"));
    }
    let proper: Vec<usize> = ctx.u().iter().copied().filter(|&x| x != one).collect();
    for &a in &proper {
        for &b in &proper {
            if ctx.mul(a, b) == one {
                return Err(failed(format!(
                    "(ii) U∖{{1}} is a subsemigroup (at {a}, {b})"
                )));
            }
        }
        if !ctx
            .u()
            .iter()
            .any(|&v| ctx.s().iter().any(|&s| ctx.mul(v, s) == a))
        {
            return Err(failed(format!("(ii) U∖{{1}} ⊆ US (element {a})")));
        }
    }
    for &s in ctx.s() {
        let plus = act.act(ctx, s, one);
        for &u in ctx.u1() {
            let us = ctx.mul(u, s);
            if ctx.in_u1(us) && ctx.mul(u, plus) != us {
                return Err(failed(format!(
                    "(iii) us = v implies us⁺ = v (at u = {u}, s = {s})"
                )));
            }
        }
    }
    Ok(())
}

/// Generating pairs of θ on `U ⋊ S`, as table indices.
fn theta_generators(
    ctx: &AmbientContext,
    act: &ActionTable,
    report: &PairReport,
    sd: &SemidirectProduct,
    omega: &OmegaSpec,
) -> Result<Vec<(usize, usize)>, PresError> {
    let th = CongruencePartition::from_key(sd.size(), |i| sd.project(ctx, i));
    match omega {
        OmegaSpec::Default => Ok(th.spanning_pairs()),
        OmegaSpec::Lemma(input) => {
            let out = omega_check(ctx, act, report, sd, input).map_err(from_ap)?;
            if !out.equals_theta {
                return Err(failed("θ = Ω♯"));
            }
            Ok(out.omega)
        }
        OmegaSpec::Congruence(pairs) => {
            let at = |(u, s): (usize, usize)| {
                sd.index_of(u, s)
                    .ok_or_else(|| PresError::BadParams(format!("({u}, {s}) is not in U ⋊ S")))
            };
            let idx: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| Ok((at(a)?, at(b)?)))
                .collect::<Result<_, PresError>>()?;
            if congruence_closure(&sd.table, &idx, Side::TwoSided)? != th {
                return Err(failed("θ = Ω♯"));
            }
            Ok(idx)
        }
        OmegaSpec::Family { .. } => Err(PresError::BadParams(
            "ESmon0 takes Ω as a congruence generating set".into(),
        )),
    }
}

/// Generating pairs of the kernel of `(u, s) ↦ us` on the local monoid, as
/// ambient pairs.
fn local_kernel_generators(
    ctx: &AmbientContext,
    sd: &SemidirectProduct,
    omega: &OmegaSpec,
) -> Result<SdPairs, PresError> {
    let one = ctx.one();
    let id = sd.index_of(one, one).expect("(1,1) in U ⋊ S");
    let members: Vec<usize> = sd.m.iter().copied().filter(|&i| i != id).collect();
    let (table, elems) = subtable(&sd.table, &members, Some(id))?;
    let kernel = CongruencePartition::from_key(table.size(), |i| sd.project(ctx, elems[i]));
    match omega {
        OmegaSpec::Default => Ok(kernel
            .spanning_pairs()
            .into_iter()
            .map(|(a, b)| (sd.elems[elems[a]], sd.elems[elems[b]]))
            .collect()),
        OmegaSpec::Congruence(pairs) => {
            let idx = index_map(&elems);
            let at = |(x, y): (usize, usize)| {
                sd.index_of(x, y)
                    .and_then(|i| idx.get(&i).copied())
                    .ok_or_else(|| {
                        PresError::BadParams(format!("({x}, {y}) is not in the local monoid"))
                    })
            };
            let ix: Vec<(usize, usize)> = pairs
                .iter()
                .map(|&(a, b)| Ok((at(a)?, at(b)?)))
                .collect::<Result<_, PresError>>()?;
            if congruence_closure(&table, &ix, Side::TwoSided)? != kernel {
                return Err(failed("the kernel on the local monoid is Ω♯"));
            }
            Ok(pairs.clone())
        }
        _ => Err(PresError::BadParams(
            "ESmon00 takes Ω as a congruence generating set".into(),
        )),
    }
}

/// `U ⋊ S` for a semigroup U presented by `u` and a monoid S acting
/// monoidally on U¹: letters `x_s`, relations `R₁ ∪ R₂`.
pub fn us_sd_pres(
    ctx: &AmbientContext,
    act: &ActionTable,
    u: &Labelled,
) -> Result<PresentationBundle, PresError> {
    let one = ctx.one();
    if !ctx.s_is_monoid() {
        return Err(failed("S is a monoid"));
    }
    if !act.is_monoidal(ctx) {
        return Err(failed("the action on U¹ is monoidal"));
    }
    let sd = sd_of(ctx, act)?;
    let pu = if ctx.u_is_monoid() {
        // a semigroup presentation of U itself, identity included
        let p = with_kind(&u.pres, Kind::Semigroup)?;
        let set = ctx.u().to_vec();
        if ctx.m().generated(&u.images, false) != set {
            return Err(failed("X generates U"));
        }
        let (t, elems) = subtable(ctx.m(), &set, None)?;
        let idx = index_map(&elems);
        let gm: Vec<usize> = u.images.iter().map(|x| idx[x]).collect();
        if !verify_presentation_with(&p, &t, &gm, EnumConfig::default())?.passed() {
            return Err(failed("the given presentation presents U"));
        }
        p
    } else {
        check_part(ctx, u, Side2::U, Kind::Semigroup, false)?
    };
    let sl = ctx.s();
    let sone = sl.iter().position(|&x| x == one).expect("1 ∈ S");
    let nx = u.images.len();
    // letter x_s is at index s_pos * nx + x
    let mut names = Vec::with_capacity(nx * sl.len());
    for (k, _) in sl.iter().enumerate() {
        for x in pu.alphabet() {
            names.push(if k == sone {
                x.clone()
            } else {
                format!("{x}_{k}")
            });
        }
    }
    let mut pres = Presentation::with_letters(Kind::Semigroup, &names);
    let y = |x: usize, k: usize| k * nx + x;
    let sub = |w: &Word, k: usize| -> Word {
        let mut out: Word = w.iter().map(|&x| y(x, sone)).collect();
        if let Some(last) = out.last_mut() {
            *last = y(w[w.len() - 1], k);
        }
        out
    };
    for (a, b) in pu.relations() {
        for k in 0..sl.len() {
            pres.try_add_relation(sub(a, k), sub(b, k))?;
        }
    }
    let n: HashMap<usize, Word> = shortlex_words(ctx.m(), &u.images, false);
    let spos = index_map(sl);
    for (ks, &s) in sl.iter().enumerate() {
        for (kt, &t) in sl.iter().enumerate() {
            let kst = spos[&ctx.mul(s, t)];
            for (xi, _) in u.images.iter().enumerate() {
                for (yi, &yv) in u.images.iter().enumerate() {
                    let v = act.act(ctx, s, yv);
                    let mut w: Word = vec![xi];
                    if v != one || ctx.in_u(one) {
                        w.extend(n[&v].iter().copied());
                    }
                    pres.try_add_relation(vec![y(xi, ks), y(yi, kt)], sub(&w, kst))?;
                }
            }
        }
    }
    let mut gen_map = Vec::with_capacity(names.len());
    for &s in sl {
        for &x in &u.images {
            gen_map.push(sd.index_of(x, s).expect("pair"));
        }
    }
    Ok(bundle(
        format!("US_sd(|U|={},|S|={})", ctx.u().len(), sl.len()),
        "Thm US_sd",
        pres,
        sd.table,
        gen_map,
    ))
}
