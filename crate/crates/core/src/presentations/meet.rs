use serde::{Deserialize, Serialize};

use crate::fmonoid::{closure_from_generators, Kind, Presentation};

use super::{Expectation, PresError, PresentationBundle, Target, TARGET_CAP};

/// A family of subsets of `{0, …, carrier_size-1}`, typically the maximal
/// subalgebras of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxFamily {
    pub carrier_size: usize,
    pub maxes: Vec<Vec<usize>>,
}

impl MaxFamily {
    pub fn new(carrier_size: usize, maxes: Vec<Vec<usize>>) -> Result<Self, PresError> {
        if carrier_size > 64 {
            return Err(PresError::BadParams("carrier larger than 64 points".into()));
        }
        let mut clean = Vec::with_capacity(maxes.len());
        for mut b in maxes {
            b.sort_unstable();
            b.dedup();
            if b.iter().any(|&x| x >= carrier_size) {
                return Err(PresError::BadParams(format!(
                    "subset {b:?} leaves the carrier"
                )));
            }
            if clean.contains(&b) {
                return Err(PresError::BadParams(format!("subset {b:?} listed twice")));
            }
            clean.push(b);
        }
        Ok(MaxFamily {
            carrier_size,
            maxes: clean,
        })
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.maxes[i].iter().fold(0, |m, &x| m | 1 << x)
    }

    pub fn full_mask(&self) -> u64 {
        if self.carrier_size == 64 {
            u64::MAX
        } else {
            (1u64 << self.carrier_size) - 1
        }
    }
}

fn letter_name(b: &[usize]) -> String {
    let inner: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    format!("x{{{}}}", inner.join(","))
}

/// Idempotent commuting letters `x_B`, one per member of the family, with
/// `x_B x_C = x_B x_D` whenever `B ∩ C = B ∩ D`. The enlarged variant instead
/// identifies any two products of two letters with the same intersection.
/// The target is the family's closure under intersection, with the whole
/// carrier as identity.
pub fn suba(mf: &MaxFamily, enlarged: bool) -> Result<PresentationBundle, PresError> {
    let k = mf.maxes.len();
    let names: Vec<String> = mf.maxes.iter().map(|b| letter_name(b)).collect();
    let mut pres = Presentation::with_letters(Kind::Monoid, &names);
    let masks: Vec<u64> = (0..k).map(|i| mf.mask(i)).collect();
    for b in 0..k {
        pres.add_relation(vec![b, b], vec![b]);
        for c in 0..k {
            pres.add_relation(vec![b, c], vec![c, b]);
        }
    }
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|b| (0..k).map(move |c| (b, c))).collect();
    for &(b, c) in &pairs {
        if enlarged {
            for &(b2, c2) in &pairs {
                if masks[b] & masks[c] == masks[b2] & masks[c2] {
                    pres.add_relation(vec![b, c], vec![b2, c2]);
                }
            }
        } else {
            for d in 0..k {
                if masks[b] & masks[c] == masks[b] & masks[d] {
                    pres.add_relation(vec![b, c], vec![b, d]);
                }
            }
        }
    }
    let (table, elems) =
        closure_from_generators(&masks, |a, b| a & b, Some(mf.full_mask()), TARGET_CAP)?;
    let gen_map = masks
        .iter()
        .map(|m| elems.iter().position(|x| x == m).expect("generator"))
        .collect();
    let (name, provenance) = if enlarged {
        ("SubA_enlarged", "Prop SubA (enlarged)")
    } else {
        ("SubA", "Prop SubA")
    };
    Ok(PresentationBundle {
        name: format!("{name}(|A|={},|Max|={k})", mf.carrier_size),
        provenance,
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}
