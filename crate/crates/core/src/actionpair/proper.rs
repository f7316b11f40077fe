use std::collections::HashMap;

use crate::fmonoid::closure_under_maps;

use super::{ActionTable, AmbientContext, ApError, PairReport, ProperInfo, Verdict};

/// Evaluates the ten conditions on (U, S) that relate S to right and left
/// multiplication by U, in their listed order.
pub fn lemma_w_conditions(ctx: &AmbientContext, act: &ActionTable) -> [bool; 10] {
    let (u, s) = (ctx.u(), ctx.s());
    let m = |a, b| ctx.mul(a, b);
    let c1 = u.iter().any(|&x| s.iter().all(|&t| m(t, x) == t));
    let c2 = s.iter().all(|&t| u.iter().any(|&x| m(t, x) == t));
    let c3 = u.iter().any(|&x| s.iter().all(|&t| m(x, t) == t));
    let c4 = s.iter().all(|&t| u.iter().any(|&x| m(x, t) == t));
    let c5 = s
        .iter()
        .all(|&t| u.iter().any(|&x| s.iter().any(|&r| m(x, r) == t)));
    let c6 = u.iter().any(|&x| s.iter().any(|&r| ctx.in_s(m(x, r))));
    let c7 = u.iter().any(|&v| {
        u.iter()
            .all(|&x| s.iter().all(|&t| m(x, t) == m(m(x, t), v)))
    });
    let c8 = u.iter().all(|&x| {
        s.iter()
            .all(|&t| u.iter().any(|&v| m(x, t) == m(m(x, t), v)))
    });
    let c9 = u.iter().any(|&v| {
        u.iter()
            .all(|&x| s.iter().all(|&t| x == m(x, act.act(ctx, t, v))))
    });
    let c10 = u.iter().all(|&x| {
        s.iter()
            .all(|&t| u.iter().any(|&v| x == m(x, act.act(ctx, t, v))))
    });
    [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10]
}

/// Fills in P, κ, σ, properness and left-density for an action pair.
pub fn classify_proper(
    ctx: &AmbientContext,
    act: &ActionTable,
    mut report: PairReport,
) -> Result<PairReport, ApError> {
    if !report.action {
        return Err(ApError::HypothesisFailed("action pair", Vec::new()));
    }
    let one = ctx.one();
    let n = ctx.m().size();
    let s = ctx.s();
    let plus: Vec<usize> = s.iter().map(|&x| act.act(ctx, x, one)).collect();
    let p = ctx.m().generated(&plus, false);
    let mut p1 = p.clone();
    if !p1.contains(&one) {
        p1.push(one);
    }
    // P¹s for every s, as membership vectors over M
    let orbit: Vec<Vec<bool>> = s
        .iter()
        .map(|&x| {
            let mut v = vec![false; n];
            for &q in &p1 {
                v[ctx.mul(q, x)] = true;
            }
            v
        })
        .collect();
    let mut kappa = Vec::new();
    let mut kappa_count = 0usize;
    for i in 0..s.len() {
        for j in 0..s.len() {
            if (0..n).any(|k| orbit[i][k] && orbit[j][k]) {
                kappa_count += 1;
                if i < j {
                    kappa.push((i, j));
                }
            }
        }
    }
    let sigma = closure_under_maps(s.len(), &kappa, &[]);
    let sigma_count: usize = sigma.classes().iter().map(|c| c.len() * c.len()).sum();
    let kappa_transitive = sigma_count == kappa_count;

    let key_eq = |a: usize, t: usize| ctx.mul(a, t);
    let key_sig = |a: usize, i: usize| (ctx.mul(a, plus[i]), sigma.class_of(i));
    let mut by_eq: HashMap<usize, (usize, usize)> = HashMap::new();
    let mut by_sig: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut witness = None;
    'scan: for (i, &t) in s.iter().enumerate() {
        for &a in ctx.u1() {
            let e = key_eq(a, t);
            let g = key_sig(a, i);
            if let Some(&(b, k)) = by_eq.get(&e) {
                if key_sig(b, k) != g {
                    witness = Some(vec![b, s[k], a, t]);
                    break 'scan;
                }
            } else {
                by_eq.insert(e, (a, i));
            }
            if let Some(&(b, k)) = by_sig.get(&g) {
                if key_eq(b, s[k]) != e {
                    witness = Some(vec![b, s[k], a, t]);
                    break 'scan;
                }
            } else {
                by_sig.insert(g, (a, i));
            }
        }
    }
    let proper = Verdict::from_failure(witness);

    let left_dense = ctx
        .u()
        .iter()
        .all(|&t| p.iter().any(|&a| p.binary_search(&ctx.mul(a, t)).is_ok()));

    let sigma_formula_ok = if proper.holds() {
        let commutative = p
            .iter()
            .all(|&x| p.iter().all(|&y| ctx.mul(x, y) == ctx.mul(y, x)));
        let lrb = p.iter().all(|&x| {
            ctx.mul(x, x) == x
                && p.iter()
                    .all(|&y| ctx.mul(ctx.mul(x, y), x) == ctx.mul(x, y))
        });
        let formula: Option<Box<dyn Fn(usize, usize) -> bool>> = if commutative {
            Some(Box::new(|i, j| {
                ctx.mul(plus[j], s[i]) == ctx.mul(plus[i], s[j])
            }))
        } else if lrb {
            Some(Box::new(|i, j| {
                ctx.mul(ctx.mul(plus[i], plus[j]), s[i]) == ctx.mul(plus[i], s[j])
            }))
        } else {
            None
        };
        formula.map(|f| {
            kappa_transitive
                && (0..s.len()).all(|i| (0..s.len()).all(|j| f(i, j) == sigma.related(i, j)))
        })
    } else {
        None
    };

    report.proper = Some(ProperInfo {
        p,
        sigma,
        kappa_transitive,
        proper,
        left_dense,
        sigma_formula_ok,
    });
    Ok(report)
}
