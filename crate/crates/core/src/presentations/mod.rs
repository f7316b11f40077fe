//! Presentations for catalogued monoids and semigroups, and constructions of
//! presentations for semidirect products and for products `US` of action
//! pairs, each packaged with a target it can be checked against.

mod families;
mod free;
mod general;
mod meet;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::actionpair::ApError;
use crate::fmonoid::{
    closure_from_generators, verify_presentation_with, CayleyTable, EnumConfig, FmError, Kind,
    Presentation, VerificationReport, Word,
};
use crate::freelrm::{lr_product, LRElement};
use crate::wreath::WreathError;

pub use families::{
    base_presentation, e_letter_map, en_presentation, gn_presentation, tn_presentation,
    wreath_presentation, WreathFamily,
};
pub use free::{lx_truncated, px_truncated};
pub use general::{
    general_pair_pres, lavers, local_monoid_pres, us_sd_pres, Labelled, OmegaSpec, PairKind,
};
pub use meet::{suba, MaxFamily};

/// Default cap on enumerated target elements.
pub const TARGET_CAP: usize = 200_000;

#[derive(Debug, Error)]
pub enum PresError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("hypothesis fails: {0}")]
    HypothesisFailed(String),
    #[error("target enumeration exceeded its bound: {0}")]
    SizeBoundExceeded(String),
    #[error(transparent)]
    Engine(FmError),
    #[error(transparent)]
    Pair(#[from] ApError),
}

impl From<FmError> for PresError {
    fn from(e: FmError) -> Self {
        match e {
            FmError::SizeBoundExceeded { cap } => {
                PresError::SizeBoundExceeded(format!("more than {cap} elements"))
            }
            e => PresError::Engine(e),
        }
    }
}

impl From<WreathError> for PresError {
    fn from(e: WreathError) -> Self {
        match e {
            WreathError::Engine(e) => e.into(),
            e => PresError::BadParams(e.to_string()),
        }
    }
}

/// What a presentation is checked against.
#[derive(Clone, Debug)]
pub enum Target {
    /// A finite table, with each letter sent to an element.
    Table {
        table: CayleyTable,
        gen_map: Vec<usize>,
    },
    /// The free left restriction monoid, with each letter sent to an element.
    FreeLeftRestriction { images: Vec<LRElement> },
}

/// The verdict a bundle is expected to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "expect", rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    /// Relations hold and the letters generate, but the presented object
    /// has this many elements.
    SizeMismatch {
        presented: usize,
    },
    /// Only the relations can be checked.
    RelationsOnly,
}

/// A presentation together with the object it presents.
#[derive(Clone, Debug)]
pub struct PresentationBundle {
    /// Family and parameters, e.g. `MwrPTn(n=2,|M|=2)`.
    pub name: String,
    /// The result the presentation is taken from.
    pub provenance: &'static str,
    pub pres: Presentation,
    pub target: Target,
    pub expect: Expectation,
}

/// Outcome of checking a bundle.
#[derive(Clone, Debug, Serialize)]
pub struct BundleCheck {
    pub name: String,
    pub provenance: &'static str,
    pub letters: usize,
    pub relations: usize,
    pub relations_hold: bool,
    pub surjective: Option<bool>,
    pub target_size: Option<usize>,
    pub presented_size: Option<usize>,
    pub inconclusive: bool,
    pub passed: bool,
    pub as_expected: bool,
}

impl PresentationBundle {
    pub fn target_size(&self) -> Option<usize> {
        match &self.target {
            Target::Table { table, .. } => Some(table.size()),
            Target::FreeLeftRestriction { .. } => None,
        }
    }

    /// Evaluates both sides of every relation in the target; returns the
    /// first relation that fails.
    pub fn failed_relation(&self) -> Option<(Word, Word)> {
        match &self.target {
            Target::Table { table, gen_map } => {
                let eval = |w: &[usize]| match w.split_first() {
                    None => table.identity(),
                    Some((&a, rest)) => Some(
                        rest.iter()
                            .fold(gen_map[a], |x, &j| table.mul(x, gen_map[j])),
                    ),
                };
                self.pres
                    .relations()
                    .iter()
                    .find(|(u, v)| eval(u).is_none() || eval(u) != eval(v))
                    .cloned()
            }
            Target::FreeLeftRestriction { images } => {
                let k = images.first().map_or(1, |x| x.alphabet);
                let eval = |w: &[usize]| {
                    w.iter().fold(LRElement::identity(k), |x, &j| {
                        lr_product(&x, &images[j]).expect("one alphabet")
                    })
                };
                self.pres
                    .relations()
                    .iter()
                    .find(|(u, v)| eval(u) != eval(v))
                    .cloned()
            }
        }
    }

    /// Full verification against a finite target; relations only otherwise.
    pub fn verify(
        &self,
        cfg: EnumConfig,
    ) -> Result<(Option<VerificationReport>, BundleCheck), PresError> {
        let mut check = BundleCheck {
            name: self.name.clone(),
            provenance: self.provenance,
            letters: self.pres.num_letters(),
            relations: self.pres.relations().len(),
            relations_hold: false,
            surjective: None,
            target_size: self.target_size(),
            presented_size: None,
            inconclusive: false,
            passed: false,
            as_expected: false,
        };
        match &self.target {
            Target::Table { table, gen_map } => {
                let r = verify_presentation_with(&self.pres, table, gen_map, cfg)?;
                check.relations_hold = r.relations_hold;
                check.surjective = Some(r.surjective);
                check.presented_size = match r.size_match {
                    crate::fmonoid::SizeVerdict::Match => Some(table.size()),
                    crate::fmonoid::SizeVerdict::Mismatch { presented } => Some(presented),
                    crate::fmonoid::SizeVerdict::Inconclusive { .. } => None,
                };
                check.inconclusive = r.inconclusive();
                check.passed = r.passed();
                check.as_expected = match self.expect {
                    Expectation::Pass => r.passed(),
                    Expectation::SizeMismatch { presented } => {
                        r.relations_hold && r.surjective && check.presented_size == Some(presented)
                    }
                    Expectation::RelationsOnly => r.relations_hold,
                };
                Ok((Some(r), check))
            }
            Target::FreeLeftRestriction { .. } => {
                check.relations_hold = self.failed_relation().is_none();
                check.passed = check.relations_hold;
                check.as_expected = check.relations_hold;
                Ok((None, check))
            }
        }
    }

    /// Human-readable relation listing.
    pub fn listing(&self) -> String {
        format!("{} [{}]\n{}", self.name, self.provenance, self.pres)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pres: serde_json::Value = serde_json::from_str(&self.pres.to_json()).expect("json");
        serde_json::json!({
            "name": self.name,
            "provenance": { "result": self.provenance },
            "presentation": pres,
            "target_size": self.target_size(),
            "expect": self.expect,
        })
    }
}

/// The catalogued families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogFamily {
    En,
    Gn,
    Tn,
    Mn,
    M0n,
    MwrSingTn,
    MwrSingPTn,
    MwrPTn,
    MwrGn,
    MwrTn,
    MwrIn,
    SubA,
    SubAEnlarged,
    PXTruncated,
    LXTruncated,
}

impl CatalogFamily {
    pub const ALL: [CatalogFamily; 15] = [
        CatalogFamily::En,
        CatalogFamily::Gn,
        CatalogFamily::Tn,
        CatalogFamily::Mn,
        CatalogFamily::M0n,
        CatalogFamily::MwrSingTn,
        CatalogFamily::MwrSingPTn,
        CatalogFamily::MwrPTn,
        CatalogFamily::MwrGn,
        CatalogFamily::MwrTn,
        CatalogFamily::MwrIn,
        CatalogFamily::SubA,
        CatalogFamily::SubAEnlarged,
        CatalogFamily::PXTruncated,
        CatalogFamily::LXTruncated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogFamily::En => "En",
            CatalogFamily::Gn => "Gn",
            CatalogFamily::Tn => "Tn",
            CatalogFamily::Mn => "Mn",
            CatalogFamily::M0n => "M0n",
            CatalogFamily::MwrSingTn => "MwrSingTn",
            CatalogFamily::MwrSingPTn => "MwrSingPTn",
            CatalogFamily::MwrPTn => "MwrPTn",
            CatalogFamily::MwrGn => "MwrGn",
            CatalogFamily::MwrTn => "MwrTn",
            CatalogFamily::MwrIn => "MwrIn",
            CatalogFamily::SubA => "SubA",
            CatalogFamily::SubAEnlarged => "SubA_enlarged",
            CatalogFamily::PXTruncated => "PX_truncated",
            CatalogFamily::LXTruncated => "LX_truncated",
        }
    }

    pub fn needs_monoid(self) -> bool {
        matches!(
            self,
            CatalogFamily::Mn
                | CatalogFamily::M0n
                | CatalogFamily::MwrSingTn
                | CatalogFamily::MwrSingPTn
                | CatalogFamily::MwrPTn
                | CatalogFamily::MwrGn
                | CatalogFamily::MwrTn
                | CatalogFamily::MwrIn
        )
    }
}

impl fmt::Display for CatalogFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogFamily {
    type Err = PresError;

    fn from_str(s: &str) -> Result<Self, PresError> {
        CatalogFamily::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<&str> = CatalogFamily::ALL.iter().map(|f| f.name()).collect();
                PresError::BadParams(format!("unknown family {s}; known: {}", names.join(", ")))
            })
    }
}

/// Parameters for [`build_catalog`]; each family reads the fields it needs.
#[derive(Clone, Debug, Default)]
pub struct CatalogParams {
    pub n: usize,
    /// The base monoid of the power and wreath families.
    pub monoid: Option<CayleyTable>,
    /// The maximal subalgebras for the subalgebra-lattice families.
    pub max_family: Option<MaxFamily>,
    /// Alphabet size and word-length bound for the truncated free families.
    pub alphabet: usize,
    pub max_len: usize,
}

pub fn build_catalog(
    family: CatalogFamily,
    params: &CatalogParams,
) -> Result<PresentationBundle, PresError> {
    let monoid = || {
        params
            .monoid
            .as_ref()
            .ok_or_else(|| PresError::BadParams(format!("{family} needs a base monoid")))
    };
    let max_family = || {
        params
            .max_family
            .as_ref()
            .ok_or_else(|| PresError::BadParams(format!("{family} needs a lattice")))
    };
    match family {
        CatalogFamily::En => families::en_bundle(params.n),
        CatalogFamily::Gn => families::gn_bundle(params.n),
        CatalogFamily::Tn => families::tn_bundle(params.n),
        CatalogFamily::Mn => families::mn_bundle(monoid()?, params.n, false),
        CatalogFamily::M0n => families::mn_bundle(monoid()?, params.n, true),
        CatalogFamily::MwrSingTn => {
            families::wreath_bundle(monoid()?, WreathFamily::SingT, params.n)
        }
        CatalogFamily::MwrSingPTn => {
            families::wreath_bundle(monoid()?, WreathFamily::SingPT, params.n)
        }
        CatalogFamily::MwrPTn => families::wreath_bundle(monoid()?, WreathFamily::PT, params.n),
        CatalogFamily::MwrGn => families::wreath_bundle(monoid()?, WreathFamily::G, params.n),
        CatalogFamily::MwrTn => families::wreath_bundle(monoid()?, WreathFamily::T, params.n),
        CatalogFamily::MwrIn => families::wreath_bundle(monoid()?, WreathFamily::I, params.n),
        CatalogFamily::SubA => suba(max_family()?, false),
        CatalogFamily::SubAEnlarged => suba(max_family()?, true),
        CatalogFamily::PXTruncated => px_truncated(params.alphabet, params.max_len),
        CatalogFamily::LXTruncated => lx_truncated(params.alphabet, params.max_len),
    }
}

/// Shortlex-least words over `images` for every element they generate in
/// `table`. With `monoid` the empty word names the identity.
pub fn shortlex_words(table: &CayleyTable, images: &[usize], monoid: bool) -> HashMap<usize, Word> {
    let mut words: HashMap<usize, Word> = HashMap::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    if monoid {
        if let Some(e) = table.identity() {
            words.insert(e, Vec::new());
            queue.push_back(e);
        }
    }
    let extend = |x: Option<usize>, j: usize| match x {
        None => images[j],
        Some(x) => table.mul(x, images[j]),
    };
    if !monoid || table.identity().is_none() {
        for (j, &g) in images.iter().enumerate() {
            if let std::collections::hash_map::Entry::Vacant(e) = words.entry(g) {
                e.insert(vec![j]);
                queue.push_back(g);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        for j in 0..images.len() {
            let y = extend(Some(x), j);
            if !words.contains_key(&y) {
                let mut w = words[&x].clone();
                w.push(j);
                words.insert(y, w);
                queue.push_back(y);
            }
        }
    }
    words
}

/// The table of a subset of `table` closed under multiplication, with
/// `elems[i]` the original index of element i.
pub fn subtable(
    table: &CayleyTable,
    members: &[usize],
    identity: Option<usize>,
) -> Result<(CayleyTable, Vec<usize>), PresError> {
    let cap = members.len().max(1);
    let not_closed = || PresError::BadParams("subset is not closed".into());
    let (t, elems) =
        match closure_from_generators(members, |&a, &b| table.mul(a, b), identity, cap + 1) {
            Err(FmError::SizeBoundExceeded { .. }) => return Err(not_closed()),
            r => r?,
        };
    if elems.len() != members.len() + usize::from(identity.is_some_and(|e| !members.contains(&e))) {
        return Err(not_closed());
    }
    Ok((t, elems))
}

pub(crate) fn index_map(elems: &[usize]) -> HashMap<usize, usize> {
    elems.iter().enumerate().map(|(i, &x)| (x, i)).collect()
}

/// A presentation with the same letters and relations and the other kind.
pub(crate) fn with_kind(p: &Presentation, kind: Kind) -> Result<Presentation, PresError> {
    let mut q = Presentation::with_letters(kind, p.alphabet());
    for (u, v) in p.relations() {
        q.try_add_relation(u.clone(), v.clone())?;
    }
    Ok(q)
}
