use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use super::{automorphisms, AlgebraInstance, AutGroup, IaError, SubalgebraLattice};

/// Bases enumerated before giving up on a basis-quantified condition.
pub const BASIS_CAP: usize = 100_000;
/// Largest `|A ∖ C(A)|` for which partial automorphisms are checked.
pub const PAUT_POINTS: usize = 6;
/// Largest group for which each automorphism is factorised separately.
pub const FIX_CHECK_CAP: usize = 5000;

/// The conditions on maximal subalgebras and automorphisms, each evaluated
/// on its own so that the stated equivalences can be cross-checked.
/// `None` marks a condition that was too large to evaluate.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport {
    /// `C = C(A)`, the subalgebra generated by the constants.
    pub c: Vec<usize>,
    /// `X = A ∖ C`.
    pub x: Vec<usize>,
    pub dim: usize,
    pub strong: bool,
    /// Proper subalgebras B: some `x ∉ B` with `⟨B ∪ x⟩ = A`; all such x;
    /// `codim B = 1`. One row per proper subalgebra.
    pub max_rows: Vec<[bool; 3]>,
    /// (1) `A∖x ≤ A` for some x ∈ X, (2) for all x ∈ X, (3) X independent,
    /// (4) X the unique basis, (5) Sub(A) all sets between C and A,
    /// (6) Max(A) the sets `A∖x`.
    pub sub1: [Option<bool>; 6],
    /// (1) `X∖x` independent for some x, (2) for all x, (3) Aut(A) is
    /// `{id_C ∪ α : α ∈ G_X}`.
    pub sub2: [Option<bool>; 3],
    /// (1) X independent, (2) PAut(A) is `{id_C ∪ α : α ∈ I_X}`.
    pub sub5: [Option<bool>; 2],
    /// Evaluated when `dim A ≠ 0` and the first family fails: (1), (2) as
    /// for sub2, (3) `A∖{x,y} ≤ A` for distinct x, y, (4) Sub(A) the sets
    /// between C and A not missing exactly one point, (5) Max(A) the sets
    /// `A∖{x,y}`.
    pub sub3: Option<[bool; 5]>,
    /// (i) no two maximal subalgebras cover A, (ii) for every basis X and
    /// x, y ∈ X, `⟨X∖x⟩ ∪ ⟨X∖y⟩ ≠ A`.
    pub sub4: [Option<bool>; 2],
    pub aut_order: Option<usize>,
}

fn all_equal(v: &[Option<bool>]) -> bool {
    let known: BTreeSet<bool> = v.iter().flatten().copied().collect();
    known.len() <= 1
}

impl ConditionReport {
    /// Divergences between conditions that are asserted to be equivalent.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, r) in self.max_rows.iter().enumerate() {
            if !(r[0] == r[1] && r[1] == r[2]) {
                out.push(format!(
                    "maximality conditions disagree on proper subalgebra {i}: {r:?}"
                ));
            }
        }
        if self.dim != 0 {
            if !all_equal(&self.sub1) {
                out.push(format!("sub1 conditions disagree: {:?}", self.sub1));
            }
            if !all_equal(&self.sub2) {
                out.push(format!("sub2 conditions disagree: {:?}", self.sub2));
            }
            if self.sub1[0] == Some(true) && self.sub2[0] == Some(false) {
                out.push("sub1 holds but sub2 fails".into());
            }
        }
        if !all_equal(&self.sub5) {
            out.push(format!("sub5 conditions disagree: {:?}", self.sub5));
        }
        if let Some(s) = self.sub3 {
            if !s.iter().all(|&b| b == s[0]) {
                out.push(format!("sub3 conditions disagree: {s:?}"));
            }
        }
        if let [Some(true), Some(false)] = self.sub4 {
            out.push("sub4 (i) holds but (ii) fails".into());
        }
        if self.strong && !all_equal(&self.sub4) {
            out.push(format!(
                "strong algebra with sub4 conditions differing: {:?}",
                self.sub4
            ));
        }
        out
    }
}

/// Bases of A as sorted lists, or `None` past [`BASIS_CAP`].
pub fn bases(lat: &SubalgebraLattice) -> Option<Vec<Vec<usize>>> {
    fn go(
        lat: &SubalgebraLattice,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        m: usize,
    ) -> bool {
        let span = lat.generated(cur);
        if span == lat.top {
            if out.len() >= BASIS_CAP {
                return false;
            }
            out.push(cur.clone());
            return true;
        }
        for y in start..m {
            if !lat.contains(span, y) {
                cur.push(y);
                let ok = go(lat, y + 1, cur, out, m);
                cur.pop();
                if !ok {
                    return false;
                }
            }
        }
        true
    }
    let m = lat.subs[lat.top].len();
    let mut out = Vec::new();
    go(lat, 0, &mut Vec::new(), &mut out, m).then_some(out)
}

pub fn is_independent(lat: &SubalgebraLattice, xs: &[usize]) -> bool {
    (0..xs.len()).all(|i| {
        let rest: Vec<usize> = xs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &v)| v)
            .collect();
        !lat.contains(lat.generated(&rest), xs[i])
    })
}

/// Partial injections of `points`, as lists of `(x, xα)` pairs.
fn partial_injections(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let mut out = vec![Vec::new()];
    for &x in points {
        let mut next = Vec::new();
        for f in out {
            next.push(f.clone());
            for &y in points {
                if f.iter().all(|&(_, v)| v != y) {
                    let mut g = f.clone();
                    g.push((x, y));
                    next.push(g);
                }
            }
        }
        out = next;
    }
    out
}

pub fn classify_conditions(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
    aut: Option<&AutGroup>,
) -> Result<ConditionReport, IaError> {
    let m = alg.carrier;
    let c = lat.elems(lat.bottom);
    let x: Vec<usize> = (0..m).filter(|v| !c.contains(v)).collect();
    let dim = lat.dim(lat.top)?;
    let strong = lat.strong_counterexample()?.is_none();
    let minus = |drop: &[usize]| -> Vec<usize> { (0..m).filter(|v| !drop.contains(v)).collect() };
    let is_sub = |s: &[usize]| lat.index_of(&alg.subset(s)).is_some();

    let mut max_rows = Vec::new();
    for b in 0..lat.len() {
        if b == lat.top {
            continue;
        }
        let outside: Vec<usize> = minus(&lat.elems(b));
        let fills: Vec<bool> = outside
            .iter()
            .map(|&v| lat.adjoin(b, v) == lat.top)
            .collect();
        max_rows.push([
            fills.iter().any(|&f| f),
            fills.iter().all(|&f| f),
            lat.codim(b)? == 1,
        ]);
    }
    let maxes: BTreeSet<Vec<usize>> = lat.maximal()?.into_iter().map(|b| lat.elems(b)).collect();
    let all_bases = bases(lat);

    let x_indep = is_independent(lat, &x);
    let drop_one: Vec<bool> = x.iter().map(|&v| is_sub(&minus(&[v]))).collect();
    let sub1 = [
        Some(drop_one.iter().any(|&b| b)),
        Some(drop_one.iter().all(|&b| b)),
        Some(x_indep),
        all_bases.as_ref().map(|bs| bs.len() == 1 && bs[0] == x),
        (x.len() < 63).then(|| lat.len() == 1usize << x.len()),
        Some(maxes == x.iter().map(|&v| minus(&[v])).collect()),
    ];

    let minus_indep: Vec<bool> = (0..x.len())
        .map(|i| {
            let rest: Vec<usize> = x
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &v)| v)
                .collect();
            is_independent(lat, &rest)
        })
        .collect();
    let owned;
    let aut = match aut {
        Some(a) => Some(a),
        None => match automorphisms(alg, lat) {
            Ok(a) => {
                owned = a;
                Some(&owned)
            }
            Err(IaError::SizeBoundExceeded { .. }) => None,
            Err(e) => return Err(e),
        },
    };
    let x_factorial = (1..=x.len()).try_fold(1usize, |f, k| f.checked_mul(k));
    let sub2 = [
        Some(minus_indep.iter().any(|&b| b)),
        Some(minus_indep.iter().all(|&b| b)),
        aut.map(|a| {
            Some(a.order()) == x_factorial
                && a.perms
                    .iter()
                    .all(|p| c.iter().all(|&v| p[v] == v) && x.iter().all(|v| x.contains(&p[*v])))
        }),
    ];

    let paut = (x.len() <= PAUT_POINTS).then(|| {
        partial_injections(&x).iter().all(|f| {
            let dom: Vec<usize> = c.iter().copied().chain(f.iter().map(|&(a, _)| a)).collect();
            let im: Vec<usize> = c.iter().copied().chain(f.iter().map(|&(_, b)| b)).collect();
            let mut map = vec![None; m];
            for &v in &c {
                map[v] = Some(v);
            }
            for &(a, b) in f {
                map[a] = Some(b);
            }
            is_sub(&dom) && is_sub(&im) && alg.is_partial_morphism(&map)
        })
    });
    let sub5 = [Some(x_indep), paut];

    let sub3 = (dim != 0 && !x_indep).then(|| {
        let mut pairs = Vec::new();
        for (i, &a) in x.iter().enumerate() {
            for &b in &x[i + 1..] {
                pairs.push(minus(&[a, b]));
            }
        }
        let none_miss_one = lat.subs.iter().all(|s| m - s.count_ones(..) != 1);
        let count_ok = x.len() < 63 && lat.len() == (1usize << x.len()) - x.len();
        [
            minus_indep.iter().any(|&b| b),
            minus_indep.iter().all(|&b| b),
            pairs.iter().all(|s| is_sub(s)),
            none_miss_one && count_ok,
            maxes == pairs.into_iter().collect(),
        ]
    });

    let max_list: Vec<usize> = lat.maximal()?;
    let full = alg.full_set();
    let cover_free = max_list.iter().all(|&b| {
        max_list.iter().all(|&d| {
            let mut u = lat.subs[b].clone();
            u.union_with(&lat.subs[d]);
            u != full
        })
    });
    let basis_cond = all_bases.as_ref().map(|bs| {
        bs.iter().all(|basis| {
            let hyper: Vec<usize> = (0..basis.len())
                .map(|i| {
                    let rest: Vec<usize> = basis
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, &v)| v)
                        .collect();
                    lat.generated(&rest)
                })
                .collect();
            hyper.iter().all(|&b| {
                hyper.iter().all(|&d| {
                    let mut u = lat.subs[b].clone();
                    u.union_with(&lat.subs[d]);
                    u != full
                })
            })
        })
    });

    Ok(ConditionReport {
        c,
        x,
        dim,
        strong,
        max_rows,
        sub1,
        sub2,
        sub5,
        sub3,
        sub4: [Some(cover_free), basis_cond],
        aut_order: aut.map(|a| a.order()),
    })
}

/// Which generating sets of Aut(A) were checked, and how they fared.
#[derive(Clone, Debug, Serialize)]
pub struct GammaReport {
    pub aut_order: usize,
    /// `|Γ_κ|` for κ = 0, 1, 2, ….
    pub gamma_sizes: Vec<usize>,
    pub gen_gamma1: usize,
    pub gen_gamma2: usize,
    pub gen_gamma12: usize,
    /// Claims of the form "Γ_κ alone generates", with the reason each applies.
    pub refined: Vec<(String, bool)>,
    /// Whether every α is a product of elements of `Γ_1 ∪ Γ_2` fixing
    /// `Fix(α)` pointwise; `None` for large groups.
    pub fix_preserving: Option<bool>,
    pub passed: bool,
}

pub fn check_gamma_generates(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
    aut: &AutGroup,
) -> Result<GammaReport, IaError> {
    let rep = classify_conditions(alg, lat, Some(aut))?;
    let top = lat.dim(lat.top)?;
    let gamma_sizes: Vec<usize> = (0..=top).map(|k| aut.gamma(k).len()).collect();
    let g1 = aut.gamma(1);
    let g2 = aut.gamma(2);
    let g12: Vec<usize> = g1.iter().chain(&g2).copied().collect();
    let size = |gens: &[usize]| aut.generated(gens).len();
    let (gen_gamma1, gen_gamma2, gen_gamma12) = (size(&g1), size(&g2), size(&g12));
    let n = aut.order();
    let mut refined = Vec::new();
    if rep.sub1[2] == Some(true) && top != 0 {
        refined.push(("X independent: Γ_2 generates".to_string(), gen_gamma2 == n));
    }
    if rep.sub2[0] == Some(true) && rep.sub1[2] == Some(false) {
        refined.push((
            "X∖x independent, X dependent: Γ_1 generates".to_string(),
            gen_gamma1 == n,
        ));
    }
    if rep.sub4.contains(&Some(true)) {
        refined.push((
            "maximal subalgebras never cover A: Γ_1 generates".to_string(),
            gen_gamma1 == n,
        ));
    }
    let fix_preserving = (n <= FIX_CHECK_CAP).then(|| {
        let mut by_fix: HashMap<usize, Vec<usize>> = HashMap::new();
        for i in 0..n {
            by_fix.entry(aut.fix[i]).or_default().push(i);
        }
        by_fix.iter().all(|(&f, members)| {
            let gens: Vec<usize> = g12
                .iter()
                .copied()
                .filter(|&b| lat.is_below(f, aut.fix[b]))
                .collect();
            let sub: BTreeSet<Vec<usize>> = aut.generated(&gens).into_iter().collect();
            members.iter().all(|&a| sub.contains(&aut.perms[a]))
        })
    });
    let passed = gen_gamma12 == n && refined.iter().all(|r| r.1) && fix_preserving != Some(false);
    Ok(GammaReport {
        aut_order: n,
        gamma_sizes,
        gen_gamma1,
        gen_gamma2,
        gen_gamma12,
        refined,
        fix_preserving,
        passed,
    })
}
