use std::collections::BTreeMap;

use semiact::actionpair::*;
use semiact::fmonoid::{enumerate_presentation, CayleyTable, EnumConfig, Kind, Presentation};
use semiact::presentations::*;
use semiact::ptrans::{Family, MapMonoid, PartialMap};
use semiact::wreath::{enumerate_wreath, expected_size};

fn c2() -> CayleyTable {
    let mut p = Presentation::with_letters(Kind::Monoid, &["a"]);
    p.add_relation(vec![0, 0], vec![]);
    enumerate_presentation(&p, 10).unwrap()
}

/// `{1, 0}` under multiplication.
fn semilattice2() -> CayleyTable {
    let mut p = Presentation::with_letters(Kind::Monoid, &["z"]);
    p.add_relation(vec![0, 0], vec![0]);
    enumerate_presentation(&p, 10).unwrap()
}

fn trivial() -> CayleyTable {
    let mut p = Presentation::with_letters(Kind::Monoid, &["e"]);
    p.add_relation(vec![0], vec![]);
    enumerate_presentation(&p, 10).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn check(b: &PresentationBundle) -> BundleCheck {
    let (_, c) = b.verify(EnumConfig::default()).unwrap();
    assert!(c.as_expected, "{} not as expected: {c:?}", b.name);
    c
}

fn params(n: usize, monoid: Option<CayleyTable>) -> CatalogParams {
    CatalogParams {
        n,
        monoid,
        ..Default::default()
    }
}

#[test]
fn transformation_families_present_their_monoids() {
    for n in 1..=4 {
        let b = build_catalog(CatalogFamily::En, &params(n, None)).unwrap();
        assert_eq!(check(&b).presented_size, Some(1 << n));
    }
    for n in 2..=5 {
        let b = build_catalog(CatalogFamily::Gn, &params(n, None)).unwrap();
        assert_eq!(b.pres.num_letters(), n - 1);
        assert_eq!(check(&b).presented_size, Some(factorial(n)));
    }
    for n in 2..=4 {
        let b = build_catalog(CatalogFamily::Tn, &params(n, None)).unwrap();
        assert_eq!(b.pres.num_letters(), 3 * (n - 1));
        assert_eq!(check(&b).presented_size, Some(n.pow(n as u32)));
    }
}

#[test]
fn symmetric_group_of_degree_three_has_two_letters_and_six_elements() {
    let b = build_catalog(CatalogFamily::Gn, &params(3, None)).unwrap();
    assert_eq!(b.pres.num_letters(), 2);
    assert_eq!(enumerate_presentation(&b.pres, 100).unwrap().size(), 6);
}

#[test]
fn powers_of_a_base_monoid() {
    for (m, k) in [(c2(), 2usize), (semilattice2(), 2), (trivial(), 1)] {
        for n in 1..=3 {
            let b = build_catalog(CatalogFamily::Mn, &params(n, Some(m.clone()))).unwrap();
            assert_eq!(check(&b).presented_size, Some(k.pow(n as u32)));
            let b = build_catalog(CatalogFamily::M0n, &params(n, Some(m.clone()))).unwrap();
            assert_eq!(check(&b).presented_size, Some((k + 1).pow(n as u32)));
        }
    }
}

#[test]
fn wreath_families_present_their_products() {
    let cases = [
        (CatalogFamily::MwrPTn, Family::PT),
        (CatalogFamily::MwrTn, Family::T),
        (CatalogFamily::MwrGn, Family::G),
        (CatalogFamily::MwrIn, Family::I),
        (CatalogFamily::MwrSingTn, Family::SingT),
        (CatalogFamily::MwrSingPTn, Family::SingPT),
    ];
    for m in [trivial(), c2(), semilattice2()] {
        for n in 2..=3 {
            for (cf, fam) in cases {
                let b = build_catalog(cf, &params(n, Some(m.clone()))).unwrap();
                let c = check(&b);
                assert_eq!(
                    c.presented_size,
                    Some(expected_size(m.size(), fam, n).unwrap()),
                    "{}",
                    b.name
                );
            }
        }
    }
}

#[test]
fn wreath_of_c2_with_partial_maps_of_degree_two_has_25_elements() {
    let b = build_catalog(CatalogFamily::MwrPTn, &params(2, Some(c2()))).unwrap();
    assert_eq!(check(&b).presented_size, Some(25));
}

#[test]
fn letter_counts_follow_the_alphabets() {
    let m = c2();
    for n in 2..=4 {
        let count = |cf| {
            build_catalog(cf, &params(n, Some(m.clone())))
                .unwrap()
                .pres
                .num_letters()
        };
        // one base generator per point, n partial identities, n-1 of each permutation letter
        assert_eq!(count(CatalogFamily::MwrPTn), n + n + 3 * (n - 1));
        assert_eq!(count(CatalogFamily::MwrTn), n + 3 * (n - 1));
        assert_eq!(count(CatalogFamily::MwrGn), n + (n - 1));
        assert_eq!(count(CatalogFamily::MwrIn), n + n + (n - 1));
        assert_eq!(count(CatalogFamily::MwrSingTn), 4 * n * (n - 1));
        assert_eq!(count(CatalogFamily::MwrSingPTn), 4 * n * (n - 1) + n);
    }
}

#[test]
fn trivial_base_recovers_the_partial_map_presentation() {
    for n in 2..=4 {
        let (p1, _) = wreath_presentation(&trivial(), WreathFamily::PT, n).unwrap();
        let (p2, _) = wreath_presentation(&c2(), WreathFamily::PT, n).unwrap();
        let keep: Vec<bool> = p2.alphabet().iter().map(|a| !a.starts_with('m')).collect();
        let (p2, _) = p2.restrict_letters(&keep);
        assert_eq!(p1, p2);
        let target = MapMonoid::generated(n, &Family::PT.generators(n).unwrap(), 100_000).unwrap();
        assert_eq!(
            enumerate_presentation(&p1, 10_000).unwrap().size(),
            target.table.size()
        );
    }
}

#[test]
fn single_letter_relations_of_singular_part_match_the_display() {
    let (p, images) = wreath_presentation(&c2(), WreathFamily::SingT, 3).unwrap();
    let l = |s: &str| p.letter(s).unwrap();
    // e(1,2;a,b) is the tuple with a at 1, b at 2, mapped by ε_{12}
    let e = &images[l("e(1,2;1,0)")];
    assert_eq!(e.tup, vec![1, 0, 0]);
    assert_eq!(e.map, PartialMap::eps(3, 1, 2).unwrap());
    let w = |s: &str| p.parse_word(s).unwrap();
    let rels = p.relations();
    let has = |a: &str, b: &str| {
        let (x, y) = (w(a), w(b));
        rels.iter()
            .any(|(u, v)| (u == &x && v == &y) || (u == &y && v == &x))
    };
    assert!(has(
        "e(3,1;0,0) e(1,2;0,0) e(2,3;0,0)",
        "e(1,3;0,0) e(3,2;0,0) e(2,1;0,0) e(1,3;0,0)"
    ));
    assert!(has("e(1,2;1,1) e(3,2;0,1)", "e(1,2;1,1)"));
}

fn fl93_max() -> MaxFamily {
    let mut maxes = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            maxes.push(vec![a, b]);
        }
    }
    MaxFamily::new(4, maxes).unwrap()
}

#[test]
fn meet_semilattice_presentation_fails_for_the_exceptional_algebra() {
    let mf = fl93_max();
    let b = suba(&mf, false).unwrap();
    assert_eq!(b.target_size(), Some(12));
    assert_eq!(enumerate_presentation(&b.pres, 1000).unwrap().size(), 15);
    let (_, c) = b.verify(EnumConfig::default()).unwrap();
    assert!(c.relations_hold && c.surjective == Some(true));
    assert!(!c.passed);

    let b = suba(&mf, true).unwrap();
    assert_eq!(enumerate_presentation(&b.pres, 1000).unwrap().size(), 12);
    assert!(check(&b).passed);
}

#[test]
fn meet_semilattice_presentation_for_a_boolean_lattice() {
    // the three 2-subsets of a 3-point set: coatoms of the Boolean lattice
    let mf = MaxFamily::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
    let b = suba(&mf, false).unwrap();
    assert_eq!(check(&b).presented_size, Some(8));
}

#[test]
fn truncated_free_presentations_hold_in_the_model() {
    for k in 1..=3 {
        for l in 1..=3 {
            for cf in [CatalogFamily::PXTruncated, CatalogFamily::LXTruncated] {
                let b = build_catalog(
                    cf,
                    &CatalogParams {
                        alphabet: k,
                        max_len: l,
                        ..Default::default()
                    },
                )
                .unwrap();
                assert_eq!(b.failed_relation(), None, "{}", b.name);
                assert!(check(&b).relations_hold);
            }
        }
    }
}

#[test]
fn catalog_rejects_bad_parameters() {
    assert!(matches!(
        build_catalog(CatalogFamily::Gn, &params(1, None)),
        Err(PresError::BadParams(_))
    ));
    assert!(matches!(
        build_catalog(CatalogFamily::MwrPTn, &params(2, None)),
        Err(PresError::BadParams(_))
    ));
    assert!("Nope".parse::<CatalogFamily>().is_err());
    assert_eq!(
        "mwrptn".parse::<CatalogFamily>().unwrap(),
        CatalogFamily::MwrPTn
    );
}

#[test]
fn bundle_json_names_its_source() {
    let b = build_catalog(CatalogFamily::Gn, &params(3, None)).unwrap();
    let j = b.to_json();
    assert_eq!(j["provenance"]["result"], "Thm Gn");
    assert_eq!(j["target_size"], 6);
    assert!(b.listing().contains("s1 s1"));
}

// ---- general pair constructions ----

fn labelled(pt: &MapMonoid, pres: Presentation, maps: &[PartialMap]) -> Labelled {
    Labelled {
        pres,
        images: maps.iter().map(|a| pt.index_of(a).unwrap()).collect(),
    }
}

fn pair<'a>(pt: &'a MapMonoid, u: &[usize], s: &[usize], dom_plus: bool) -> AmbientContext<'a> {
    let ctx = AmbientContext::new(&pt.table, u, s).unwrap();
    let one = ctx.one();
    if dom_plus {
        ctx.with_plus(|x| pt.index_of(&pt.elems[x].plus()).unwrap())
            .unwrap()
    } else {
        ctx.with_plus(|_| one).unwrap()
    }
}

fn e_and_t(pt: &MapMonoid, n: usize) -> (Labelled, Labelled) {
    let (pu, iu) = en_presentation(n);
    let (ps, is) = tn_presentation(n);
    (labelled(pt, pu, &iu), labelled(pt, ps, &is))
}

#[test]
fn identities_under_full_maps_present_partial_maps() {
    let pt = MapMonoid::full(2).unwrap();
    let ctx = pair(&pt, &pt.family(Family::E), &pt.family(Family::T), false);
    let (_, act) = check_pair_from_plus(&ctx).unwrap();
    let (u, s) = e_and_t(&pt, 2);
    // Ω_{id_{n∖i}} = {(ε_{xi}, id)}
    let v: Vec<usize> = (1..=2)
        .map(|i| pt.index_of(&PartialMap::id_without(2, i).unwrap()).unwrap())
        .collect();
    let id = pt.index_of(&PartialMap::identity(2)).unwrap();
    let mut omega = BTreeMap::new();
    for i in 1..=2 {
        let x = 3 - i;
        omega.insert(
            v[i - 1],
            vec![(pt.index_of(&PartialMap::eps(2, x, i).unwrap()).unwrap(), id)],
        );
    }
    let lemma = OmegaSpec::Lemma(OmegaInput::Om4Commutative {
        v: v.clone(),
        omega: omega.clone(),
    });
    for spec in [lemma, OmegaSpec::Default] {
        let b = general_pair_pres(PairKind::ESmon0, &ctx, &act, &u, &s, &spec).unwrap();
        assert_eq!(b.target_size(), Some(9));
        assert_eq!(check(&b).presented_size, Some(9));
    }
    for kind in [
        PairKind::ESmon,
        PairKind::Msimp1,
        PairKind::Msimp2,
        PairKind::ESmon00,
    ] {
        let b = general_pair_pres(kind, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap();
        assert_eq!(check(&b).presented_size, Some(9), "{kind:?}");
    }
    let fam = OmegaSpec::Family { v: None, omega };
    let b = general_pair_pres(PairKind::Msimp2, &ctx, &act, &u, &s, &fam).unwrap();
    assert_eq!(check(&b).presented_size, Some(9));
}

#[test]
fn three_point_identities_under_full_maps() {
    let pt = MapMonoid::full(3).unwrap();
    let ctx = pair(&pt, &pt.family(Family::E), &pt.family(Family::T), false);
    let (_, act) = check_pair_from_plus(&ctx).unwrap();
    let (u, s) = e_and_t(&pt, 3);
    let b = general_pair_pres(PairKind::Msimp2, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap();
    assert_eq!(check(&b).presented_size, Some(64));
}

#[test]
fn identities_under_partial_maps_need_r3() {
    let pt = MapMonoid::full(2).unwrap();
    let ctx = pair(&pt, &pt.family(Family::E), &pt.family(Family::PT), true);
    let (r, act) = check_pair_from_plus(&ctx).unwrap();
    assert!(r.action && !r.strong);
    let (pu, iu) = en_presentation(2);
    let u = labelled(&pt, pu, &iu);
    let gens: Vec<usize> = Family::PT
        .generators(2)
        .unwrap()
        .iter()
        .map(|a| pt.index_of(a).unwrap())
        .collect();
    let s = Labelled::from_generators(&pt.table, &gens, "p", true).unwrap();
    let b = general_pair_pres(PairKind::ESmon, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap();
    // some letter of S has a proper domain, so x = x⁺x appears
    let r3 = s
        .images
        .iter()
        .filter(|&&x| !pt.elems[x].is_total())
        .count();
    assert!(r3 > 0);
    assert!(b
        .pres
        .relations()
        .iter()
        .any(|(a, c)| a.len() == 1 || c.len() == 1));
    assert_eq!(check(&b).presented_size, Some(9));
    let b = general_pair_pres(PairKind::ESmon00, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap();
    assert_eq!(check(&b).presented_size, Some(9));
    let err =
        general_pair_pres(PairKind::ESmon0, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap_err();
    assert!(
        matches!(err, PresError::HypothesisFailed(ref w) if w.contains("monoid morphisms")),
        "{err}"
    );

    // the local monoid is {(id_B, α) : B ⊆ dom α}
    let b = local_monoid_pres(&ctx, &act, &u, &s).unwrap();
    let oracle = pt
        .family(Family::E)
        .iter()
        .flat_map(|&e| pt.family(Family::PT).into_iter().map(move |a| (e, a)))
        .filter(|&(e, a)| pt.elems[e].dom_mask() & !pt.elems[a].dom_mask() == 0)
        .count();
    assert_eq!(b.target_size(), Some(oracle));
    assert_eq!(check(&b).presented_size, Some(oracle));
}

#[test]
fn singular_part_from_identities_and_constants() {
    let pt = MapMonoid::full(2).unwrap();
    let consts = pt.family(Family::SingT);
    let ctx = pair(&pt, &pt.family(Family::E), &consts, false);
    let (r, act) = check_pair_from_plus(&ctx).unwrap();
    assert!(r.action);
    let (pu, iu) = en_presentation(2);
    let u = labelled(&pt, pu, &iu);
    let s = Labelled::from_generators(&pt.table, &consts, "c", false).unwrap();
    for kind in [PairKind::ES, PairKind::Simp1, PairKind::Simp2] {
        let b = general_pair_pres(kind, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap();
        assert_eq!(b.pres.kind, Kind::Semigroup);
        assert_eq!(check(&b).presented_size, Some(7), "{kind:?}");
    }
    // agrees with the wreath presentation at a trivial base
    let w = build_catalog(CatalogFamily::MwrSingPTn, &params(2, Some(trivial()))).unwrap();
    assert_eq!(check(&w).presented_size, Some(7));
    // the monoid theorems need S to be a submonoid
    let err =
        general_pair_pres(PairKind::ESmon, &ctx, &act, &u, &s, &OmegaSpec::Default).unwrap_err();
    assert!(
        matches!(err, PresError::HypothesisFailed(ref w) if w.contains("S is a submonoid")),
        "{err}"
    );
}

#[test]
fn semidirect_square_of_c2_by_swap() {
    let m = c2();
    let (t, elems) = enumerate_wreath(&m, Family::G, 2, 100).unwrap();
    let one = m.identity().unwrap() as u32;
    let u: Vec<usize> = (0..t.size())
        .filter(|&i| elems[i].map.is_permutation() && elems[i].map == PartialMap::identity(2))
        .collect();
    let s: Vec<usize> = (0..t.size())
        .filter(|&i| elems[i].tup.iter().all(|&x| x == one))
        .collect();
    assert_eq!((u.len(), s.len()), (4, 2));
    let ctx = AmbientContext::new(&t, &u, &s).unwrap();
    let e = ctx.one();
    let ctx = ctx.with_plus(|_| e).unwrap();
    let (_, act) = check_pair_from_plus(&ctx).unwrap();
    let ug: Vec<usize> = u
        .iter()
        .copied()
        .filter(|&x| x != e && elems[x].tup.contains(&one))
        .collect();
    let lu = Labelled::from_generators(&t, &ug, "u", true).unwrap();
    let ls = Labelled::from_generators(
        &t,
        &s.iter().copied().filter(|&x| x != e).collect::<Vec<_>>(),
        "g",
        true,
    )
    .unwrap();
    let b = lavers(&ctx, &act, &lu, &ls).unwrap();
    assert_eq!(check(&b).presented_size, Some(8));
    // with monoid morphisms the local monoid is the whole product
    let b = local_monoid_pres(&ctx, &act, &lu, &ls).unwrap();
    assert_eq!(check(&b).presented_size, Some(8));
}

#[test]
fn semidirect_from_a_semigroup_presentation() {
    let pt = MapMonoid::full(2).unwrap();
    let sing_e = pt.family(Family::SingE);
    assert_eq!(sing_e.len(), 3);
    let ctx = pair(&pt, &sing_e, &pt.family(Family::G), false);
    let (_, act) = check_pair_from_plus(&ctx).unwrap();
    let gens: Vec<usize> = (1..=2)
        .map(|i| pt.index_of(&PartialMap::id_without(2, i).unwrap()).unwrap())
        .collect();
    let u = Labelled::from_generators(&pt.table, &gens, "t", false).unwrap();
    let b = us_sd_pres(&ctx, &act, &u).unwrap();
    assert_eq!(b.pres.num_letters(), 2 * 2);
    assert_eq!(check(&b).presented_size, Some(6));
}

#[test]
fn one_generator_and_trivial_acting_monoid() {
    // U = C₂ as a semigroup, S = {1}: R₂ is the multiplication table of U
    let m = c2();
    let ctx = AmbientContext::new(&m, &[0, 1], &[0]).unwrap();
    let act = ActionTable::trivial(&ctx);
    let u = Labelled::from_generators(&m, &[1], "a", false).unwrap();
    let b = us_sd_pres(&ctx, &act, &u).unwrap();
    assert_eq!(b.pres.num_letters(), 1);
    assert_eq!(check(&b).presented_size, Some(2));
}

#[test]
fn hypothesis_failures_name_the_clause() {
    let pt = MapMonoid::full(2).unwrap();
    let ctx = pair(&pt, &pt.family(Family::E), &pt.family(Family::T), false);
    let (_, act) = check_pair_from_plus(&ctx).unwrap();
    let (u, s) = e_and_t(&pt, 2);
    // a presentation of U that forgets a relation
    let mut bad = Presentation::with_letters(Kind::Monoid, &["t1", "t2"]);
    bad.add_relation(vec![0, 0], vec![0]);
    bad.add_relation(vec![1, 1], vec![1]);
    let bad_u = Labelled {
        pres: bad,
        images: u.images.clone(),
    };
    let err = general_pair_pres(PairKind::ESmon, &ctx, &act, &bad_u, &s, &OmegaSpec::Default)
        .unwrap_err();
    assert!(
        matches!(err, PresError::HypothesisFailed(ref w) if w.contains("presents U")),
        "{err}"
    );
    // a family that does not generate θ_u
    let fam = OmegaSpec::Family {
        v: None,
        omega: BTreeMap::new(),
    };
    let err = general_pair_pres(PairKind::ESmon, &ctx, &act, &u, &s, &fam).unwrap_err();
    assert!(
        matches!(err, PresError::HypothesisFailed(ref w) if w.contains("Ω_u")),
        "{err}"
    );
    // clashing letter names
    let clash = Labelled {
        pres: Presentation::with_letters(Kind::Monoid, &["t1"]),
        images: vec![s.images[0]],
    };
    assert!(
        general_pair_pres(PairKind::ESmon, &ctx, &act, &u, &clash, &OmegaSpec::Default).is_err()
    );
}
