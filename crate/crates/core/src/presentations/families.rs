use std::collections::HashMap;

use crate::fmonoid::{
    closure_from_generators, table_presentation, CayleyTable, Kind, Presentation,
};
use crate::ptrans::{Family, MapMonoid, PartialMap};
use crate::wreath::{enumerate_wreath, WreathContext, WreathElement};

use super::{Expectation, PresError, PresentationBundle, Target, TARGET_CAP};

fn need_n(n: usize, least: usize, what: &str) -> Result<(), PresError> {
    if n < least {
        return Err(PresError::BadParams(format!(
            "{what} needs n ≥ {least}, got {n}"
        )));
    }
    if n > 8 {
        return Err(PresError::BadParams(format!(
            "{what} with n = {n} is beyond the supported range"
        )));
    }
    Ok(())
}

fn map(r: Result<PartialMap, crate::ptrans::PtError>) -> PartialMap {
    r.expect("indices in range")
}

/// Letters `t_i ↦ id_{n∖i}` for i = 1..n.
pub fn e_letter_map(n: usize) -> Vec<PartialMap> {
    (1..=n).map(|i| map(PartialMap::id_without(n, i))).collect()
}

fn add_e_relations(p: &mut Presentation, t: &[usize]) {
    for &a in t {
        p.add_relation(vec![a, a], vec![a]);
    }
    for &a in t {
        for &b in t {
            p.add_relation(vec![a, b], vec![b, a]);
        }
    }
}

/// Idempotent commuting letters `t_1, …, t_n` for the semilattice of partial
/// identities.
pub fn en_presentation(n: usize) -> (Presentation, Vec<PartialMap>) {
    let names: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let mut p = Presentation::with_letters(Kind::Monoid, &names);
    add_e_relations(&mut p, &(0..n).collect::<Vec<_>>());
    (p, e_letter_map(n))
}

fn add_g_relations(p: &mut Presentation, s: &[usize]) {
    let m = s.len();
    for i in 0..m {
        p.add_relation(vec![s[i], s[i]], vec![]);
        for j in 0..m {
            if i.abs_diff(j) > 1 {
                p.add_relation(vec![s[i], s[j]], vec![s[j], s[i]]);
            }
            if i.abs_diff(j) == 1 {
                p.add_relation(vec![s[i], s[j], s[i]], vec![s[j], s[i], s[j]]);
            }
        }
    }
}

/// Coxeter generators `s_i ↦ (i, i+1)` of the symmetric group.
pub fn gn_presentation(n: usize) -> (Presentation, Vec<PartialMap>) {
    let names: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    let mut p = Presentation::with_letters(Kind::Monoid, &names);
    add_g_relations(&mut p, &(0..n - 1).collect::<Vec<_>>());
    (
        p,
        (1..n).map(|i| map(PartialMap::tau(n, i, i + 1))).collect(),
    )
}

fn add_t_relations(p: &mut Presentation, s: &[usize], l: &[usize], r: &[usize]) {
    let m = s.len();
    let mut rel = |a: Vec<usize>, b: Vec<usize>| p.add_relation(a, b);
    for i in 0..m {
        rel(vec![s[i], s[i]], vec![]);
        for w in [
            vec![l[i], l[i]],
            vec![r[i], l[i]],
            vec![s[i], l[i]],
            vec![r[i], s[i]],
        ] {
            rel(w, vec![l[i]]);
        }
        for w in [
            vec![r[i], r[i]],
            vec![l[i], r[i]],
            vec![s[i], r[i]],
            vec![l[i], s[i]],
        ] {
            rel(w, vec![r[i]]);
        }
        if i + 1 < m {
            let j = i + 1;
            rel(vec![l[i], l[j]], vec![l[i], s[j]]);
            rel(vec![r[j], r[i]], vec![r[j], s[i]]);
            rel(vec![l[i], r[j]], vec![l[i]]);
            rel(vec![r[j], l[i]], vec![r[j]]);
            rel(vec![l[i], l[j], l[i]], vec![l[j], l[i]]);
            rel(vec![l[j], l[i], l[j]], vec![l[j], l[i]]);
            rel(vec![r[i], r[j], r[i]], vec![r[i], r[j]]);
            rel(vec![r[j], r[i], r[j]], vec![r[i], r[j]]);
            rel(vec![l[j], s[i]], vec![s[i], s[j], l[i], l[j]]);
            rel(vec![r[i], s[j]], vec![s[j], s[i], r[j], r[i]]);
        }
        for j in 0..m {
            if i.abs_diff(j) > 1 {
                rel(vec![s[i], s[j]], vec![s[j], s[i]]);
                rel(vec![l[i], l[j]], vec![l[j], l[i]]);
                rel(vec![r[i], r[j]], vec![r[j], r[i]]);
                rel(vec![s[i], l[j]], vec![l[j], s[i]]);
                rel(vec![s[i], r[j]], vec![r[j], s[i]]);
            }
            if i.abs_diff(j) == 1 {
                rel(vec![s[i], s[j], s[i]], vec![s[j], s[i], s[j]]);
            }
            if j != i && j != i + 1 {
                rel(vec![l[i], r[j]], vec![r[j], l[i]]);
            }
        }
    }
}

/// Letters `s_i ↦ (i, i+1)`, `l_i ↦ ε_{i,i+1}`, `r_i ↦ ε_{i+1,i}` for the
/// full transformation monoid.
pub fn tn_presentation(n: usize) -> (Presentation, Vec<PartialMap>) {
    let mut names: Vec<String> = (1..n).map(|i| format!("s{i}")).collect();
    names.extend((1..n).map(|i| format!("l{i}")));
    names.extend((1..n).map(|i| format!("r{i}")));
    let mut p = Presentation::with_letters(Kind::Monoid, &names);
    let m = n - 1;
    let idx = |off: usize| (off * m..(off + 1) * m).collect::<Vec<_>>();
    add_t_relations(&mut p, &idx(0), &idx(1), &idx(2));
    let mut images: Vec<PartialMap> = (1..n).map(|i| map(PartialMap::tau(n, i, i + 1))).collect();
    images.extend((1..n).map(|i| map(PartialMap::eps(n, i, i + 1))));
    images.extend((1..n).map(|i| map(PartialMap::eps(n, i + 1, i))));
    (p, images)
}

/// A monoid presentation of a base monoid on its non-identity generators,
/// read off its Cayley table. Letters are named `m<element>`.
pub fn base_presentation(m: &CayleyTable) -> Result<(Presentation, Vec<usize>), PresError> {
    let one = m
        .identity()
        .ok_or_else(|| PresError::BadParams("base table has no identity".into()))?;
    let mut gens: Vec<usize> = m.gens().iter().copied().filter(|&g| g != one).collect();
    gens.sort_unstable();
    gens.dedup();
    if gens.is_empty() {
        if m.size() != 1 {
            return Err(PresError::BadParams(
                "base table lists no generators".into(),
            ));
        }
        return Ok((Presentation::new(Kind::Monoid), Vec::new()));
    }
    let (t, elems) = closure_from_generators(&gens, |&a, &b| m.mul(a, b), Some(one), m.size() + 1)?;
    if t.size() != m.size() {
        return Err(PresError::BadParams(
            "base generators do not generate the table".into(),
        ));
    }
    debug_assert_eq!(elems[0], one);
    let names: Vec<String> = gens.iter().map(|g| format!("m{g}")).collect();
    Ok((table_presentation(&t, &names), gens))
}

fn map_target(n: usize, letters: &[PartialMap]) -> Result<(CayleyTable, Vec<usize>), PresError> {
    let mm = MapMonoid::generated(n, letters, TARGET_CAP)?;
    let gen_map = letters
        .iter()
        .map(|a| mm.index_of(a).expect("letter generated"))
        .collect();
    Ok((mm.table, gen_map))
}

pub(super) fn en_bundle(n: usize) -> Result<PresentationBundle, PresError> {
    need_n(n, 0, "En")?;
    let (pres, images) = en_presentation(n);
    let (table, gen_map) = if n == 0 {
        let (t, _) = closure_from_generators::<u8, _>(&[], |a, _| *a, Some(0), 1)?;
        (t, Vec::new())
    } else {
        map_target(n, &images)?
    };
    Ok(PresentationBundle {
        name: format!("En(n={n})"),
        provenance: "Thm En",
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}

pub(super) fn gn_bundle(n: usize) -> Result<PresentationBundle, PresError> {
    need_n(n, 2, "Gn")?;
    let (pres, images) = gn_presentation(n);
    let (table, gen_map) = map_target(n, &images)?;
    Ok(PresentationBundle {
        name: format!("Gn(n={n})"),
        provenance: "Thm Gn",
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}

pub(super) fn tn_bundle(n: usize) -> Result<PresentationBundle, PresError> {
    need_n(n, 2, "Tn")?;
    let (pres, images) = tn_presentation(n);
    let (table, gen_map) = map_target(n, &images)?;
    Ok(PresentationBundle {
        name: format!("Tn(n={n})"),
        provenance: "Thm Tn",
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}

/// The transformational wreath products with catalogued presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WreathFamily {
    PT,
    T,
    I,
    G,
    SingT,
    SingPT,
}

impl WreathFamily {
    fn family(self) -> Family {
        match self {
            WreathFamily::PT => Family::PT,
            WreathFamily::T => Family::T,
            WreathFamily::I => Family::I,
            WreathFamily::G => Family::G,
            WreathFamily::SingT => Family::SingT,
            WreathFamily::SingPT => Family::SingPT,
        }
    }

    fn provenance(self) -> &'static str {
        match self {
            WreathFamily::PT => "Thm MwrPTn",
            WreathFamily::T => "Thm MwrTn",
            WreathFamily::I => "Thm MwrIn",
            WreathFamily::G => "Thm MwrGn",
            WreathFamily::SingT => "Thm MwrSingTn",
            WreathFamily::SingPT => "Thm MwrSingPTn",
        }
    }
}

/// Assembles an alphabet with a wreath-product image for every letter.
struct Builder<'a> {
    ctx: WreathContext<'a>,
    p: Presentation,
    images: Vec<WreathElement>,
}

impl<'a> Builder<'a> {
    fn add(&mut self, name: String, image: WreathElement) -> usize {
        self.images.push(image);
        self.p.add_letter(&name)
    }

    fn rel(&mut self, a: Vec<usize>, b: Vec<usize>) {
        self.p.add_relation(a, b);
    }

    fn n(&self) -> usize {
        self.ctx.n
    }

    fn full(&self) -> u64 {
        (1u64 << self.n()) - 1
    }

    /// `x^(i)` for each base letter x and point i: `xs[i][k]`.
    fn power_letters(&mut self, base: &Presentation, gens: &[usize]) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut xs = vec![Vec::new(); n];
        for (i, row) in xs.iter_mut().enumerate() {
            for (k, &g) in gens.iter().enumerate() {
                let mut t = self.ctx.ones_on(self.full());
                t[i] = g as u32;
                let e = self.ctx.embed_tuple(&t);
                row.push(self.add(format!("{}({})", base.alphabet()[k], i + 1), e));
            }
        }
        for row in &xs {
            self.p.absorb(base, row);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    for a in 0..gens.len() {
                        for b in 0..gens.len() {
                            self.rel(vec![xs[i][a], xs[j][b]], vec![xs[j][b], xs[i][a]]);
                        }
                    }
                }
            }
        }
        xs
    }

    fn t_letters(&mut self) -> Vec<usize> {
        let n = self.n();
        let t: Vec<usize> = (1..=n)
            .map(|i| {
                let e = self.ctx.embed(&map(PartialMap::id_without(n, i)));
                self.add(format!("t{i}"), e)
            })
            .collect();
        add_e_relations(&mut self.p, &t);
        t
    }

    /// The extra relations of the zero-padded power.
    fn zero_relations(&mut self, xs: &[Vec<usize>], t: &[usize]) {
        let n = self.n();
        for (i, &ti) in t.iter().enumerate().take(n) {
            for (j, xj) in xs.iter().enumerate().take(n) {
                for &x in xj {
                    if i != j {
                        self.rel(vec![ti, x], vec![x, ti]);
                    } else {
                        self.rel(vec![ti, x], vec![ti]);
                        self.rel(vec![x, ti], vec![ti]);
                    }
                }
            }
        }
    }

    fn perm_letters(
        &mut self,
        prefix: &str,
        make: impl Fn(usize, usize) -> PartialMap,
    ) -> Vec<usize> {
        let n = self.n();
        (1..n)
            .map(|i| {
                let e = self.ctx.embed(&make(n, i));
                self.add(format!("{prefix}{i}"), e)
            })
            .collect()
    }
}

/// Builds the presentation of `M ≀ S` for the chosen family, with each
/// letter's image.
pub fn wreath_presentation(
    m: &CayleyTable,
    fam: WreathFamily,
    n: usize,
) -> Result<(Presentation, Vec<WreathElement>), PresError> {
    need_n(n, 2, fam.provenance())?;
    let ctx = WreathContext::new(m, n)?;
    let kind = match fam {
        WreathFamily::SingT | WreathFamily::SingPT => Kind::Semigroup,
        _ => Kind::Monoid,
    };
    let mut b = Builder {
        ctx,
        p: Presentation::new(kind),
        images: Vec::new(),
    };
    match fam {
        WreathFamily::SingT => {
            sing_t_block(&mut b)?;
        }
        WreathFamily::SingPT => {
            let t = b.t_letters();
            let e = sing_t_block(&mut b)?;
            let one = m.identity().expect("monoid");
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for x in 0..m.size() {
                        for y in 0..m.size() {
                            let l = e[&(i, j, x, y)];
                            for k in 0..n {
                                let rhs = if k == j {
                                    vec![l]
                                } else if k == i {
                                    vec![t[i], t[j], l]
                                } else {
                                    vec![t[k], l]
                                };
                                b.rel(vec![l, t[k]], rhs);
                            }
                        }
                    }
                    b.rel(vec![t[j], e[&(i, j, one, one)]], vec![t[j]]);
                }
            }
        }
        _ => {
            let (base, gens) = base_presentation(m)?;
            let zero = matches!(fam, WreathFamily::PT | WreathFamily::I);
            let xs = b.power_letters(&base, &gens);
            let t = if zero {
                let t = b.t_letters();
                b.zero_relations(&xs, &t);
                t
            } else {
                Vec::new()
            };
            let s = b.perm_letters("s", |n, i| map(PartialMap::tau(n, i, i + 1)));
            let with_t = matches!(fam, WreathFamily::PT | WreathFamily::T);
            let (l, r) = if with_t {
                let l = b.perm_letters("l", |n, i| map(PartialMap::eps(n, i, i + 1)));
                let r = b.perm_letters("r", |n, i| map(PartialMap::eps(n, i + 1, i)));
                add_t_relations(&mut b.p, &s, &l, &r);
                (l, r)
            } else {
                add_g_relations(&mut b.p, &s);
                (Vec::new(), Vec::new())
            };
            // letters on points: x^(k) for every base letter, or t_k
            let mut point_blocks: Vec<Vec<usize>> = (0..gens.len())
                .map(|a| (0..n).map(|k| xs[k][a]).collect())
                .collect();
            let x_blocks = point_blocks.len();
            if zero {
                point_blocks.push(t.clone());
            }
            for (bi, y) in point_blocks.iter().enumerate() {
                let is_t = bi >= x_blocks;
                for i in 0..n - 1 {
                    for k in 0..n {
                        let rhs = if k == i {
                            vec![y[i + 1], s[i]]
                        } else if k == i + 1 {
                            vec![y[i], s[i]]
                        } else {
                            vec![y[k], s[i]]
                        };
                        b.rel(vec![s[i], y[k]], rhs);
                        if with_t {
                            let lhs = if k == i {
                                vec![y[i], y[i + 1], l[i]]
                            } else if k == i + 1 {
                                vec![l[i]]
                            } else {
                                vec![y[k], l[i]]
                            };
                            b.rel(vec![l[i], y[k]], lhs);
                            let rhs = if k == i {
                                vec![r[i]]
                            } else if k == i + 1 {
                                vec![y[i], y[i + 1], r[i]]
                            } else {
                                vec![y[k], r[i]]
                            };
                            b.rel(vec![r[i], y[k]], rhs);
                        }
                    }
                    if is_t && with_t {
                        b.rel(vec![t[i], r[i]], vec![t[i]]);
                    }
                    if is_t && fam == WreathFamily::I {
                        b.rel(vec![t[i], t[i + 1], s[i]], vec![t[i], t[i + 1]]);
                    }
                }
            }
        }
    }
    Ok((b.p, b.images))
}

/// Letter of `e(i,j;a,b)`, keyed by `(i, j, a, b)`.
type BlockLetters = HashMap<(usize, usize, usize, usize), usize>;

/// Letters `e(i,j;a,b)` and the relations of the singular full part; returns
/// the letter for each `(i, j, a, b)` with 0-based points.
fn sing_t_block(b: &mut Builder) -> Result<BlockLetters, PresError> {
    let n = b.n();
    let m = b.ctx.base;
    let one = m.identity().expect("monoid");
    let size = m.size();
    let mut e = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for x in 0..size {
                for y in 0..size {
                    let mut t = b.ctx.ones_on(b.full());
                    t[i] = x as u32;
                    t[j] = y as u32;
                    let img = WreathElement {
                        tup: t,
                        map: map(PartialMap::eps(n, i + 1, j + 1)),
                    };
                    let l = b.add(format!("e({},{};{x},{y})", i + 1, j + 1), img);
                    e.insert((i, j, x, y), l);
                }
            }
        }
    }
    let mul = |x: usize, y: usize| m.mul(x, y);
    let el = |i, j, x, y| e[&(i, j, x, y)];
    let ones = |i, j| e[&(i, j, one, one)];
    let distinct = |v: &[usize]| {
        v.iter()
            .enumerate()
            .all(|(p, x)| v[p + 1..].iter().all(|y| y != x))
    };
    let elems: Vec<usize> = (0..size).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &elems {
                for &bb in &elems {
                    for &c in &elems {
                        for &d in &elems {
                            let lhs = vec![el(i, j, a, bb), el(i, j, c, d)];
                            let mid = vec![el(i, j, mul(a, c), mul(bb, c))];
                            b.rel(lhs, mid.clone());
                            b.rel(vec![el(j, i, bb, a), el(i, j, d, c)], mid);
                        }
                    }
                }
            }
            for k in 0..n {
                if !distinct(&[i, j, k]) {
                    continue;
                }
                for &a in &elems {
                    for &bb in &elems {
                        for &c in &elems {
                            // i, k, j play the roles of the printed i, k, j
                            b.rel(
                                vec![el(i, k, a, bb), el(j, k, one, c)],
                                vec![el(i, k, a, bb)],
                            );
                            b.rel(
                                vec![el(i, k, a, bb), el(j, k, c, one)],
                                vec![el(k, i, bb, a), el(j, i, c, one), el(i, k, one, one)],
                            );
                            for &d in &elems {
                                let lhs = vec![el(i, j, a, bb), el(i, k, c, d)];
                                b.rel(
                                    lhs.clone(),
                                    vec![el(i, k, mul(a, c), d), el(i, j, one, mul(bb, c))],
                                );
                                b.rel(lhs, vec![el(j, k, mul(bb, c), d), el(i, j, mul(a, c), one)]);
                                let rhs = vec![el(j, k, a, bb), el(i, j, c, d)];
                                b.rel(
                                    vec![el(i, j, c, mul(a, d)), el(i, k, one, mul(bb, d))],
                                    rhs.clone(),
                                );
                                b.rel(vec![el(i, k, c, mul(bb, d)), el(i, j, one, mul(a, d))], rhs);
                            }
                        }
                        b.rel(
                            vec![el(i, k, a, a), el(j, k, bb, one)],
                            vec![ones(i, k), el(j, k, bb, one), el(i, k, a, one)],
                        );
                    }
                }
                b.rel(
                    vec![ones(k, i), ones(i, j), ones(j, k)],
                    vec![ones(i, k), ones(k, j), ones(j, i), ones(i, k)],
                );
                for l in 0..n {
                    if !distinct(&[i, j, k, l]) {
                        continue;
                    }
                    for &a in &elems {
                        for &bb in &elems {
                            for &c in &elems {
                                for &d in &elems {
                                    b.rel(
                                        vec![el(i, j, a, bb), el(k, l, c, d)],
                                        vec![el(k, l, c, d), el(i, j, a, bb)],
                                    );
                                }
                            }
                        }
                    }
                    b.rel(
                        vec![ones(k, i), ones(i, j), ones(j, k), ones(k, l)],
                        vec![ones(i, k), ones(k, l), ones(l, i), ones(i, j), ones(j, l)],
                    );
                }
            }
        }
    }
    Ok(e)
}

pub(super) fn wreath_bundle(
    m: &CayleyTable,
    fam: WreathFamily,
    n: usize,
) -> Result<PresentationBundle, PresError> {
    let (pres, images) = wreath_presentation(m, fam, n)?;
    let (table, elems) = enumerate_wreath(m, fam.family(), n, TARGET_CAP)?;
    let index: HashMap<&WreathElement, usize> =
        elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let gen_map = images
        .iter()
        .map(|x| {
            index
                .get(x)
                .copied()
                .ok_or_else(|| PresError::BadParams("letter image outside the product".into()))
        })
        .collect::<Result<_, _>>()?;
    let name = match fam {
        WreathFamily::PT => "MwrPTn",
        WreathFamily::T => "MwrTn",
        WreathFamily::I => "MwrIn",
        WreathFamily::G => "MwrGn",
        WreathFamily::SingT => "MwrSingTn",
        WreathFamily::SingPT => "MwrSingPTn",
    };
    Ok(PresentationBundle {
        name: format!("{name}(n={n},|M|={})", m.size()),
        provenance: fam.provenance(),
        pres,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}

pub(super) fn mn_bundle(
    m: &CayleyTable,
    n: usize,
    zero: bool,
) -> Result<PresentationBundle, PresError> {
    need_n(n, 1, if zero { "M0n" } else { "Mn" })?;
    let ctx = WreathContext::new(m, n)?;
    let (base, gens) = base_presentation(m)?;
    let mut b = Builder {
        ctx,
        p: Presentation::new(Kind::Monoid),
        images: Vec::new(),
    };
    let xs = b.power_letters(&base, &gens);
    if zero {
        let t = b.t_letters();
        b.zero_relations(&xs, &t);
    }
    let (table, elems) = closure_from_generators(
        &b.images,
        |x, y| b.ctx.mul(x, y),
        Some(b.ctx.identity()),
        TARGET_CAP,
    )?;
    let index: HashMap<&WreathElement, usize> =
        elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let gen_map = b.images.iter().map(|x| index[x]).collect();
    let (name, provenance) = if zero {
        ("M0n", "Thm M0n")
    } else {
        ("Mn", "Thm Mn")
    };
    Ok(PresentationBundle {
        name: format!("{name}(n={n},|M|={})", m.size()),
        provenance,
        pres: b.p,
        target: Target::Table { table, gen_map },
        expect: Expectation::Pass,
    })
}
