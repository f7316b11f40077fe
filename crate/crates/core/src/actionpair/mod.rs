//! Pairs `(U, S)` of subsemigroups of a finite monoid where S acts on
//! `U¹` compatibly with the product: verification, classification,
//! semidirect products and the kernel of `(u, s) ↦ us`.

mod check;
mod cover;
mod proper;
mod semidirect;
mod theta;

use serde::Serialize;
use thiserror::Error;

use crate::fmonoid::{CayleyTable, FmError};

pub use check::{check_pair_from_plus, check_weak_pair};
pub use cover::{
    embed_central, proper_cover, CoverReport, EmbedReport, EMBED_CLASS_CAP, EMBED_SIZE_CAP,
};
pub use proper::{classify_proper, lemma_w_conditions};
pub use semidirect::{semidirect, SemidirectProduct};
pub use theta::{
    big_theta_u, check_special_congruence, check_theta_lemma, omega_check, stabilizer, theta,
    theta_u, GenFamily, OmegaInput, OmegaOutcome, PairFamily, SpecialReport,
};

const NONE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApError {
    #[error("{0} is not closed under the product")]
    NotSubsemigroup(&'static str),
    #[error("axiom {0} fails at {1:?}")]
    AxiomFailed(&'static str, Vec<usize>),
    #[error("invalid action: {0}")]
    ActionInvalid(String),
    #[error("hypothesis {0} fails at {1:?}")]
    HypothesisFailed(&'static str, Vec<usize>),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("size bound exceeded: {0}")]
    SizeBoundExceeded(String),
    #[error(transparent)]
    Engine(#[from] FmError),
}

/// Outcome of an exhaustive check, carrying the ambient elements of the
/// first counterexample found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { witness: Vec<usize> },
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails { witness } => Some(witness),
        }
    }

    pub(crate) fn from_failure(w: Option<Vec<usize>>) -> Self {
        match w {
            None => Verdict::Holds,
            Some(witness) => Verdict::Fails { witness },
        }
    }

    fn to_json(&self, word: &dyn Fn(usize) -> String) -> serde_json::Value {
        match self {
            Verdict::Holds => serde_json::json!({"holds": true}),
            Verdict::Fails { witness } => serde_json::json!({
                "holds": false,
                "witness": witness.iter().map(|&x| word(x)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// A finite monoid M with subsemigroups U, S and optionally a map `s ↦ s⁺`.
#[derive(Clone, Debug)]
pub struct AmbientContext<'a> {
    m: &'a CayleyTable,
    one: usize,
    u: Vec<usize>,
    s: Vec<usize>,
    u1: Vec<usize>,
    s1: Vec<usize>,
    u_pos: Vec<usize>,
    s_pos: Vec<usize>,
    u1_pos: Vec<usize>,
    s1_pos: Vec<usize>,
    plus: Option<Vec<usize>>,
}

fn sorted_set(xs: &[usize]) -> Vec<usize> {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn positions(n: usize, xs: &[usize]) -> Vec<usize> {
    let mut pos = vec![NONE; n];
    for (i, &x) in xs.iter().enumerate() {
        pos[x] = i;
    }
    pos
}

impl<'a> AmbientContext<'a> {
    pub fn new(m: &'a CayleyTable, u: &[usize], s: &[usize]) -> Result<Self, ApError> {
        let one = m
            .identity()
            .ok_or_else(|| ApError::BadInput("ambient table has no identity".into()))?;
        let n = m.size();
        if u.iter().chain(s).any(|&x| x >= n) {
            return Err(ApError::BadInput("element index out of range".into()));
        }
        if u.is_empty() || s.is_empty() {
            return Err(ApError::BadInput("U and S must be non-empty".into()));
        }
        let u = sorted_set(u);
        let s = sorted_set(s);
        if !m.is_closed(&u) {
            return Err(ApError::NotSubsemigroup("U"));
        }
        if !m.is_closed(&s) {
            return Err(ApError::NotSubsemigroup("S"));
        }
        let mut u1 = u.clone();
        u1.push(one);
        let u1 = sorted_set(&u1);
        let mut s1 = s.clone();
        s1.push(one);
        let s1 = sorted_set(&s1);
        Ok(AmbientContext {
            m,
            one,
            u_pos: positions(n, &u),
            s_pos: positions(n, &s),
            u1_pos: positions(n, &u1),
            s1_pos: positions(n, &s1),
            u,
            s,
            u1,
            s1,
            plus: None,
        })
    }

    /// Attaches `s ↦ s⁺`, which must land in `U¹`.
    pub fn with_plus(mut self, plus: impl Fn(usize) -> usize) -> Result<Self, ApError> {
        let vals: Vec<usize> = self.s.iter().map(|&s| plus(s)).collect();
        if let Some(i) = vals
            .iter()
            .position(|&p| p >= self.m.size() || !self.in_u1(p))
        {
            return Err(ApError::BadInput(format!(
                "s⁺ of element {} is not in U¹",
                self.s[i]
            )));
        }
        self.plus = Some(vals);
        Ok(self)
    }

    pub fn m(&self) -> &'a CayleyTable {
        self.m
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    pub fn s(&self) -> &[usize] {
        &self.s
    }

    pub fn u1(&self) -> &[usize] {
        &self.u1
    }

    pub fn s1(&self) -> &[usize] {
        &self.s1
    }

    pub fn in_u(&self, x: usize) -> bool {
        self.u_pos[x] != NONE
    }

    pub fn in_s(&self, x: usize) -> bool {
        self.s_pos[x] != NONE
    }

    pub fn in_u1(&self, x: usize) -> bool {
        self.u1_pos[x] != NONE
    }

    pub fn in_s1(&self, x: usize) -> bool {
        self.s1_pos[x] != NONE
    }

    /// Position of x in the sorted list of S.
    pub fn s_index(&self, x: usize) -> Option<usize> {
        (self.s_pos[x] != NONE).then_some(self.s_pos[x])
    }

    pub fn u_index(&self, x: usize) -> Option<usize> {
        (self.u_pos[x] != NONE).then_some(self.u_pos[x])
    }

    pub fn s1_index(&self, x: usize) -> Option<usize> {
        (self.s1_pos[x] != NONE).then_some(self.s1_pos[x])
    }

    pub fn u1_index(&self, x: usize) -> Option<usize> {
        (self.u1_pos[x] != NONE).then_some(self.u1_pos[x])
    }

    pub fn u_is_monoid(&self) -> bool {
        self.in_u(self.one)
    }

    pub fn s_is_monoid(&self) -> bool {
        self.in_s(self.one)
    }

    pub fn has_plus(&self) -> bool {
        self.plus.is_some()
    }

    /// `s⁺` for s ∈ S, and 1 for the adjoined identity.
    pub fn plus(&self, s: usize) -> usize {
        let p = self.plus.as_ref().expect("no plus map attached");
        match self.s_index(s) {
            Some(i) => p[i],
            None if s == self.one => self.one,
            None => panic!("element {s} is not in S¹"),
        }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.m.mul(a, b)
    }

    /// Normal form of an ambient element written with the given letter names.
    pub fn word(&self, x: usize, names: Option<&[String]>) -> String {
        let w = self.m.normal_form(x);
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&j| {
                names
                    .and_then(|n| n.get(j).cloned())
                    .unwrap_or_else(|| format!("x{j}"))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A left action of `S¹` on `U¹`, stored densely over positions in the
/// context's `S¹` and `U¹` lists. The adjoined identity (when `1 ∉ S`) acts
/// trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionTable {
    nu: usize,
    table: Vec<usize>,
}

impl ActionTable {
    /// Builds the table from `f(s, u) = ˢu` for s ∈ S.
    pub fn from_fn(
        ctx: &AmbientContext,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ApError> {
        let nu = ctx.u1.len();
        let mut table = Vec::with_capacity(ctx.s1.len() * nu);
        for &s in &ctx.s1 {
            for &u in &ctx.u1 {
                let v = if ctx.in_s(s) { f(s, u) } else { u };
                if v >= ctx.m.size() || !ctx.in_u1(v) {
                    return Err(ApError::ActionInvalid(format!(
                        "element {s} sends {u} outside U¹"
                    )));
                }
                table.push(v);
            }
        }
        Ok(ActionTable { nu, table })
    }

    /// The constant action with image e.
    pub fn constant(ctx: &AmbientContext, e: usize) -> Result<Self, ApError> {
        Self::from_fn(ctx, |_, _| e)
    }

    pub fn trivial(ctx: &AmbientContext) -> Self {
        Self::from_fn(ctx, |_, u| u).expect("trivial action stays in U¹")
    }

    /// `ˢu` for s ∈ S¹ and u ∈ U¹ (ambient indices).
    pub fn act(&self, ctx: &AmbientContext, s: usize, u: usize) -> usize {
        let i = ctx.s1_index(s).expect("acting element outside S¹");
        let j = ctx.u1_index(u).expect("acted element outside U¹");
        self.table[i * self.nu + j]
    }

    /// First failure of `ˢ(ᵗu) = ˢᵗu` or `ˢ(uv) = ˢu·ˢv`, as `[s, t, u]` or `[s, u, v]`.
    pub fn law_failure(&self, ctx: &AmbientContext) -> Option<(&'static str, Vec<usize>)> {
        for &s in &ctx.s1 {
            for &t in &ctx.s1 {
                let st = ctx.mul(s, t);
                for &u in &ctx.u1 {
                    if self.act(ctx, s, self.act(ctx, t, u)) != self.act(ctx, st, u) {
                        return Some(("action", vec![s, t, u]));
                    }
                }
            }
        }
        for &s in &ctx.s1 {
            for &u in &ctx.u1 {
                for &v in &ctx.u1 {
                    let lhs = self.act(ctx, s, ctx.mul(u, v));
                    if lhs != ctx.mul(self.act(ctx, s, u), self.act(ctx, s, v)) {
                        return Some(("morphism", vec![s, u, v]));
                    }
                }
            }
        }
        None
    }

    /// `¹u = u` for every u.
    pub fn is_monoidal(&self, ctx: &AmbientContext) -> bool {
        ctx.u1.iter().all(|&u| self.act(ctx, ctx.one, u) == u)
    }

    /// `ˢ1 = 1` for every s.
    pub fn by_monoid_morphisms(&self, ctx: &AmbientContext) -> bool {
        ctx.s1.iter().all(|&s| self.act(ctx, s, ctx.one) == ctx.one)
    }
}

/// Properness data for an action pair.
#[derive(Clone, Debug)]
pub struct ProperInfo {
    /// `P = ⟨S⁺⟩`, sorted ambient indices.
    pub p: Vec<usize>,
    /// σ on positions of S.
    pub sigma: crate::fmonoid::CongruencePartition,
    /// Whether κ was already transitive.
    pub kappa_transitive: bool,
    pub proper: Verdict,
    pub left_dense: bool,
    /// Agreement of σ with the equational description available when P is
    /// commutative or a left-regular band and the pair is proper.
    pub sigma_formula_ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct PairReport {
    pub sa1: Verdict,
    /// Laws (+1)–(+4) for the supplied `s ↦ s⁺`, when one was supplied.
    pub plus_laws: Option<[Verdict; 4]>,
    /// For a reconstructed action: independence of the choice of witness.
    pub well_defined: Option<Verdict>,
    pub a1: Verdict,
    pub a2: Verdict,
    pub sa2: Verdict,
    pub monoidal: bool,
    pub by_monoid_morphisms: bool,
    pub weak: bool,
    pub action: bool,
    pub strong: bool,
    /// `s⁺ = 1` for every s.
    pub plus_trivial: bool,
    /// `U ∩ S ⊆ {1}`, checked for strong pairs.
    pub disjoint_ok: Option<bool>,
    pub lemma_w: [bool; 10],
    pub mid_identity_ok: Option<bool>,
    pub proper: Option<ProperInfo>,
}

impl PairReport {
    pub fn is_proper(&self) -> bool {
        self.proper.as_ref().is_some_and(|p| p.proper.holds())
    }

    /// P as ambient indices, when computed.
    pub fn p_set(&self) -> Option<&[usize]> {
        self.proper.as_ref().map(|p| p.p.as_slice())
    }

    /// Conditions (i)–(x) as a bitset, bit k for condition k+1.
    pub fn lemma_w_bits(&self) -> u16 {
        self.lemma_w
            .iter()
            .enumerate()
            .fold(0, |b, (k, &on)| if on { b | 1 << k } else { b })
    }

    pub fn to_json(&self, ctx: &AmbientContext, names: Option<&[String]>) -> serde_json::Value {
        let word = |x: usize| ctx.word(x, names);
        let mut v = serde_json::json!({
            "weak": self.weak,
            "action": self.action,
            "strong": self.strong,
            "sa1": self.sa1.to_json(&word),
            "a1": self.a1.to_json(&word),
            "a2": self.a2.to_json(&word),
            "sa2": self.sa2.to_json(&word),
            "monoidal": self.monoidal,
            "by_monoid_morphisms": self.by_monoid_morphisms,
            "plus_trivial": self.plus_trivial,
            "lemma_w": self.lemma_w_bits(),
            "mid_identity_ok": self.mid_identity_ok,
        });
        let o = v.as_object_mut().expect("object");
        if let Some(pl) = &self.plus_laws {
            o.insert(
                "plus_laws".into(),
                pl.iter().map(|x| x.to_json(&word)).collect(),
            );
        }
        if let Some(w) = &self.well_defined {
            o.insert("well_defined".into(), w.to_json(&word));
        }
        if let Some(d) = self.disjoint_ok {
            o.insert("disjoint_ok".into(), d.into());
        }
        if let Some(p) = &self.proper {
            o.insert("proper".into(), p.proper.to_json(&word));
            o.insert("P".into(), p.p.iter().map(|&x| word(x)).collect());
            o.insert(
                "sigma".into(),
                p.sigma
                    .classes()
                    .iter()
                    .map(|c| c.iter().map(|&i| word(ctx.s()[i])).collect::<Vec<_>>())
                    .collect(),
            );
            o.insert("left_dense".into(), p.left_dense.into());
            o.insert("sigma_formula_ok".into(), p.sigma_formula_ok.into());
        }
        v
    }
}
