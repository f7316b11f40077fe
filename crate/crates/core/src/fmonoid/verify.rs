use serde::Serialize;

use super::presentation::{Presentation, Word};
use super::table::CayleyTable;
use super::todd_coxeter::{enumerate_presentation_with, EnumConfig};
use super::FmError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SizeVerdict {
    Match,
    Mismatch { presented: usize },
    Inconclusive { nodes: usize },
}

/// Outcome of checking that a presentation presents a given table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub relations_hold: bool,
    /// First relation whose sides evaluate differently.
    pub failed_relation: Option<(Word, Word)>,
    pub surjective: bool,
    pub size_match: SizeVerdict,
    pub target_size: usize,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.relations_hold && self.surjective && self.size_match == SizeVerdict::Match
    }

    pub fn inconclusive(&self) -> bool {
        matches!(self.size_match, SizeVerdict::Inconclusive { .. })
    }
}

pub fn verify_presentation(
    p: &Presentation,
    m: &CayleyTable,
    gen_map: &[usize],
) -> Result<VerificationReport, FmError> {
    verify_presentation_with(p, m, gen_map, EnumConfig::default())
}

/// Checks that the relations hold under `gen_map`, that the letter images
/// generate `m`, and that the presented object has exactly `|m|` elements.
pub fn verify_presentation_with(
    p: &Presentation,
    m: &CayleyTable,
    gen_map: &[usize],
    cfg: EnumConfig,
) -> Result<VerificationReport, FmError> {
    if gen_map.len() != p.num_letters() {
        return Err(FmError::BadInput(
            "generator map must cover the alphabet".into(),
        ));
    }
    if gen_map.iter().any(|&x| x >= m.size()) {
        return Err(FmError::BadInput("generator image out of range".into()));
    }
    let eval = |w: &[usize]| -> Option<usize> {
        let (&first, rest) = match w.split_first() {
            Some(s) => s,
            None => return m.identity(),
        };
        Some(
            rest.iter()
                .fold(gen_map[first], |acc, &j| m.mul(acc, gen_map[j])),
        )
    };
    let failed_relation = p
        .relations()
        .iter()
        .find(|(u, v)| eval(u).is_none() || eval(u) != eval(v))
        .cloned();
    let with_identity = p.kind == super::Kind::Monoid;
    let surjective = m.generated(gen_map, with_identity).len() == m.size();
    let size_match = match enumerate_presentation_with(p, m.size() + 1, cfg) {
        Ok(t) if t.size() == m.size() => SizeVerdict::Match,
        Ok(t) => SizeVerdict::Mismatch {
            presented: t.size(),
        },
        Err(FmError::BoundExceeded {
            completed_size: Some(k),
            ..
        }) => SizeVerdict::Mismatch { presented: k },
        Err(FmError::BoundExceeded {
            nodes,
            completed_size: None,
        }) => SizeVerdict::Inconclusive { nodes },
        Err(e) => return Err(e),
    };
    Ok(VerificationReport {
        relations_hold: failed_relation.is_none(),
        failed_relation,
        surjective,
        size_match,
        target_size: m.size(),
    })
}
