use std::collections::BTreeSet;

use proptest::prelude::*;
use semiact::actionpair::*;
use semiact::ptrans::MapMonoid;

fn ambient(n: usize) -> &'static MapMonoid {
    use std::sync::OnceLock;
    static PT2: OnceLock<MapMonoid> = OnceLock::new();
    static PT3: OnceLock<MapMonoid> = OnceLock::new();
    match n {
        2 => PT2.get_or_init(|| MapMonoid::full(2).unwrap()),
        _ => PT3.get_or_init(|| MapMonoid::full(3).unwrap()),
    }
}

/// A random pair of generated subsemigroups with one of two `s ↦ s⁺` maps.
fn build(
    pt: &'static MapMonoid,
    ug: &[usize],
    sg: &[usize],
    dom_plus: bool,
) -> Option<AmbientContext<'static>> {
    let m = pt.table.size();
    let u = pt
        .table
        .generated(&ug.iter().map(|x| x % m).collect::<Vec<_>>(), false);
    let s = pt
        .table
        .generated(&sg.iter().map(|x| x % m).collect::<Vec<_>>(), false);
    let ctx = AmbientContext::new(&pt.table, &u, &s).ok()?;
    let one = ctx.one();
    if dom_plus {
        ctx.with_plus(|x| pt.index_of(&pt.elems[x].plus()).unwrap())
            .ok()
    } else {
        ctx.with_plus(|_| one).ok()
    }
}

fn naive_proper(ctx: &AmbientContext, act: &ActionTable, r: &PairReport) -> bool {
    let info = r.proper.as_ref().unwrap();
    let one = ctx.one();
    let p = |s| act.act(ctx, s, one);
    let sig = |s, t| {
        info.sigma
            .related(ctx.s_index(s).unwrap(), ctx.s_index(t).unwrap())
    };
    ctx.u1().iter().all(|&u| {
        ctx.u1().iter().all(|&v| {
            ctx.s().iter().all(|&s| {
                ctx.s().iter().all(|&t| {
                    (ctx.mul(u, s) == ctx.mul(v, t))
                        == (ctx.mul(u, p(s)) == ctx.mul(v, p(t)) && sig(s, t))
                })
            })
        })
    })
}

/// σ recomputed as the transitive closure of κ by repeated squaring.
fn naive_sigma(ctx: &AmbientContext, p: &[usize]) -> Vec<Vec<bool>> {
    let s = ctx.s();
    let mut p1 = p.to_vec();
    p1.push(ctx.one());
    let k = s.len();
    let mut r: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    p1.iter()
                        .any(|&a| p1.iter().any(|&b| ctx.mul(a, s[i]) == ctx.mul(b, s[j])))
                })
                .collect()
        })
        .collect();
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if !r[i][j] && (0..k).any(|m| r[i][m] && r[m][j]) {
                    r[i][j] = true;
                    changed = true;
                }
            }
        }
        if !changed {
            return r;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn classification_invariants(
        n in 2usize..=3,
        ug in prop::collection::vec(0usize..64, 1..3),
        sg in prop::collection::vec(0usize..64, 1..3),
        dom_plus in any::<bool>(),
    ) {
        let pt = ambient(n);
        let ctx = build(pt, &ug, &sg, dom_plus);
        prop_assume!(ctx.is_some());
        let ctx = ctx.unwrap();
        let res = check_pair_from_plus(&ctx);
        prop_assume!(res.is_ok());
        let (r, act) = res.unwrap();

        prop_assert!(!r.strong || r.action);
        prop_assert!(!r.action || r.weak);
        let laws_hold = r.plus_laws.as_ref().unwrap().iter().all(Verdict::holds);
        prop_assert_eq!(r.action, laws_hold);
        if r.strong {
            prop_assert_eq!(r.disjoint_ok, Some(true));
        }
        // S inside the right units forces strongness
        let one = ctx.one();
        let right_units = ctx.s().iter().all(|&s| (0..pt.table.size()).any(|t| ctx.mul(s, t) == one));
        if r.action && right_units {
            prop_assert!(r.strong);
        }
        if !r.action {
            return Ok(());
        }
        prop_assert_ne!(r.mid_identity_ok, Some(false));
        let r = classify_proper(&ctx, &act, r).unwrap();
        let info = r.proper.as_ref().unwrap();
        prop_assert_eq!(r.is_proper(), naive_proper(&ctx, &act, &r));
        let ns = naive_sigma(&ctx, &info.p);
        for (i, row) in ns.iter().enumerate() {
            for (j, &related) in row.iter().enumerate() {
                prop_assert_eq!(related, info.sigma.related(i, j));
            }
        }
        prop_assert_ne!(info.sigma_formula_ok, Some(false));
        if info.left_dense && info.sigma.is_discrete() {
            prop_assert!(r.is_proper());
        }

        let sd = semidirect(&ctx, &act).unwrap();
        prop_assert!(check_theta_lemma(&ctx, &act, &sd).holds());
        let th = theta(&ctx, &sd);
        let us: BTreeSet<usize> = sd.elems.iter().map(|&(u, s)| ctx.mul(u, s)).collect();
        prop_assert_eq!(sd.table.quotient(&th).unwrap().size(), us.len());
        prop_assert!(check_special_congruence(&ctx, &act, &sd, &th).unwrap().special());
        prop_assert!(omega_check(&ctx, &act, &r, &sd, &OmegaInput::Om1).unwrap().equals_theta);

        let c = proper_cover(&ctx, &act, &r).unwrap();
        prop_assert!(c.proper && c.sigma_trivial && c.u_iso && c.s_iso);
        prop_assert!(c.psi_surjective && c.psi_morphism);
    }
}
