//! Tuples over `M ⊔ {0}`, the action of partial maps on them, and the
//! transformational wreath products `M ≀ S` for `S` a family of partial maps.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fmonoid::{closure_from_generators, CayleyTable, FmError};
use crate::ptrans::{Family, PartialMap, PtError};

/// Marker for the adjoined zero.
pub const ZERO: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WreathError {
    #[error("the base table has no identity")]
    NotAMonoid,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("support does not match domain")]
    SupportMismatch,
    #[error("entry {0} is not an element of the base monoid")]
    BadEntry(u32),
    #[error(transparent)]
    Map(#[from] PtError),
    #[error(transparent)]
    Engine(#[from] FmError),
}

/// A tuple of length n with entries in M (element indices) or [`ZERO`].
pub type MTuple = Vec<u32>;

/// An element `(a, α)` of `M ≀ PT_n`, with `supp(a) = dom(α)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElement {
    pub tup: MTuple,
    pub map: PartialMap,
}

#[derive(Serialize, Deserialize)]
struct WreathJson {
    tuple: Vec<Option<u32>>,
    map: PartialMap,
}

impl WreathElement {
    pub fn to_json(&self) -> String {
        let tuple = self.tup.iter().map(|&x| (x != ZERO).then_some(x)).collect();
        serde_json::to_string(&WreathJson {
            tuple,
            map: self.map.clone(),
        })
        .expect("serializable")
    }
}

pub fn support(t: &[u32]) -> u64 {
    t.iter()
        .enumerate()
        .filter(|(_, &x)| x != ZERO)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// Arithmetic in `M₀^n` and `M ≀ PT_n` over a fixed base monoid.
#[derive(Clone, Copy, Debug)]
pub struct WreathContext<'a> {
    pub base: &'a CayleyTable,
    pub n: usize,
    one: u32,
}

impl<'a> WreathContext<'a> {
    pub fn new(base: &'a CayleyTable, n: usize) -> Result<Self, WreathError> {
        let one = base.identity().ok_or(WreathError::NotAMonoid)? as u32;
        Ok(WreathContext { base, n, one })
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    /// `1_B` for a 0-based point mask B.
    pub fn ones_on(&self, mask: u64) -> MTuple {
        (0..self.n)
            .map(|x| if mask >> x & 1 == 1 { self.one } else { ZERO })
            .collect()
    }

    /// Componentwise product, zero absorbing.
    pub fn tmul(&self, a: &[u32], b: &[u32]) -> MTuple {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                if x == ZERO || y == ZERO {
                    ZERO
                } else {
                    self.base.mul(x as usize, y as usize) as u32
                }
            })
            .collect()
    }

    /// `ᵅt`: position x holds `t_{xα}` when x ∈ dom α and 0 otherwise.
    pub fn act(&self, alpha: &PartialMap, t: &[u32]) -> Result<MTuple, WreathError> {
        if alpha.degree() != t.len() {
            return Err(WreathError::DegreeMismatch(alpha.degree(), t.len()));
        }
        Ok(self.act_unchecked(alpha, t))
    }

    fn act_unchecked(&self, alpha: &PartialMap, t: &[u32]) -> MTuple {
        (0..t.len())
            .map(|x| alpha.image0(x).map_or(ZERO, |y| t[y]))
            .collect()
    }

    pub fn element(&self, tup: MTuple, map: PartialMap) -> Result<WreathElement, WreathError> {
        if tup.len() != self.n || map.degree() != self.n {
            return Err(WreathError::DegreeMismatch(
                self.n,
                tup.len().max(map.degree()),
            ));
        }
        if let Some(&bad) = tup
            .iter()
            .find(|&&x| x != ZERO && x as usize >= self.base.size())
        {
            return Err(WreathError::BadEntry(bad));
        }
        if support(&tup) != map.dom_mask() {
            return Err(WreathError::SupportMismatch);
        }
        Ok(WreathElement { tup, map })
    }

    /// The copy `(1_{dom α}, α)` of a partial map.
    pub fn embed(&self, alpha: &PartialMap) -> WreathElement {
        WreathElement {
            tup: self.ones_on(alpha.dom_mask()),
            map: alpha.clone(),
        }
    }

    /// `(t, id_{supp t})`.
    pub fn embed_tuple(&self, t: &[u32]) -> WreathElement {
        WreathElement {
            tup: t.to_vec(),
            map: PartialMap::id_mask(self.n, support(t)),
        }
    }

    /// `(a, α)(b, β) = (a · ᵅb, αβ)`.
    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let acted = self.act_unchecked(&x.map, &y.tup);
        WreathElement {
            tup: self.tmul(&x.tup, &acted),
            map: x.map.mul(&y.map),
        }
    }

    /// `(a, α)⁺ = (1_{dom α}, id_{dom α})`.
    pub fn plus(&self, x: &WreathElement) -> WreathElement {
        self.embed(&x.map.plus())
    }

    pub fn identity(&self) -> WreathElement {
        self.embed(&PartialMap::identity(self.n))
    }

    /// All tuples with support exactly `mask`.
    pub fn tuples_on(&self, mask: u64) -> Vec<MTuple> {
        let pts: Vec<usize> = (0..self.n).filter(|&x| mask >> x & 1 == 1).collect();
        let m = self.base.size() as u32;
        let mut out = Vec::new();
        let mut t = self.ones_on(mask);
        for &p in &pts {
            t[p] = 0;
        }
        loop {
            out.push(t.clone());
            let mut k = pts.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                t[pts[k]] += 1;
                if t[pts[k]] < m {
                    break;
                }
                t[pts[k]] = 0;
            }
        }
    }

    /// Two-row picture: points, images, labels.
    pub fn diagram(&self, x: &WreathElement) -> String {
        let cell = |s: String| format!("{s:>4}");
        let top: String = (1..=self.n).map(|i| cell(i.to_string())).collect();
        let mid: String = x
            .map
            .images()
            .iter()
            .map(|y| cell(y.map_or("-".into(), |y| y.to_string())))
            .collect();
        let lab: String = x
            .tup
            .iter()
            .map(|&a| {
                cell(if a == ZERO {
                    "0".into()
                } else {
                    format!("m{a}")
                })
            })
            .collect();
        format!("{top}\n{mid}\n{lab}")
    }
}

/// Expected order of `M ≀ S`: the sum over α ∈ S of `|M|^{|dom α|}`.
pub fn expected_size(base_size: usize, family: Family, n: usize) -> Result<usize, WreathError> {
    Ok(family
        .elements(n)?
        .iter()
        .map(|a| base_size.pow(a.dom_mask().count_ones()))
        .sum())
}

/// Enumerates `M ≀ S` for a family S of degree n.
///
/// Monoid families are generated by the base generators placed at each
/// point together with the embedded family generators; the others by every
/// labelling of the family generators.
pub fn enumerate_wreath(
    base: &CayleyTable,
    family: Family,
    n: usize,
    cap: usize,
) -> Result<(CayleyTable, Vec<WreathElement>), WreathError> {
    let ctx = WreathContext::new(base, n)?;
    let fam_gens = family.generators(n)?;
    let mut gens: Vec<WreathElement> = Vec::new();
    if family.is_monoid() {
        for i in 0..n {
            for &a in base.gens() {
                let mut t = ctx.ones_on((1u64 << n) - 1);
                t[i] = a as u32;
                gens.push(ctx.embed_tuple(&t));
            }
        }
        gens.extend(fam_gens.iter().map(|a| ctx.embed(a)));
    } else {
        for a in &fam_gens {
            for t in ctx.tuples_on(a.dom_mask()) {
                gens.push(WreathElement {
                    tup: t,
                    map: a.clone(),
                });
            }
        }
    }
    if gens.is_empty() && !family.is_monoid() {
        return Err(WreathError::Map(PtError::BadParams(format!(
            "{} of degree {n} is empty",
            family.name()
        ))));
    }
    let hint = family.is_monoid().then(|| ctx.identity());
    let (t, els) = closure_from_generators(&gens, |x, y| ctx.mul(x, y), hint, cap)?;
    Ok((t, els))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fmonoid::{Kind, Presentation};

    fn c2() -> CayleyTable {
        let mut p = Presentation::with_letters(Kind::Monoid, &["a"]);
        p.add_relation(vec![0, 0], vec![]);
        crate::fmonoid::enumerate_presentation(&p, 10).unwrap()
    }

    #[test]
    fn action_matches_picture() {
        let m = c2();
        let ctx = WreathContext::new(&m, 6).unwrap();
        let alpha: PartialMap = "2 - 3 2 6 6".parse().unwrap();
        let t = vec![0, 1, 1, 0, 0, 1];
        assert_eq!(ctx.act(&alpha, &t).unwrap(), vec![1, ZERO, 1, 1, 1, 1]);
        assert_eq!(
            ctx.act(&alpha, &ctx.ones_on(63)).unwrap(),
            ctx.ones_on(alpha.dom_mask())
        );
    }

    #[test]
    fn sizes() {
        let m = c2();
        assert_eq!(
            enumerate_wreath(&m, Family::PT, 2, 1000).unwrap().0.size(),
            25
        );
        assert_eq!(
            enumerate_wreath(&m, Family::G, 2, 1000).unwrap().0.size(),
            8
        );
        assert_eq!(expected_size(2, Family::PT, 2).unwrap(), 25);
    }

    #[test]
    fn json_form() {
        let m = c2();
        let ctx = WreathContext::new(&m, 2).unwrap();
        let x = ctx.element(vec![1, ZERO], "2 -".parse().unwrap()).unwrap();
        assert_eq!(x.to_json(), r#"{"tuple":[1,null],"map":[2,null]}"#);
        assert!(ctx.element(vec![1, 1], "2 -".parse().unwrap()).is_err());
    }
}
