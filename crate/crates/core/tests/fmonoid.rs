use semiact::fmonoid::*;

/// Permutation group generated by `gens`, closed by brute force.
fn perm_group(gens: &[Vec<usize>]) -> (CayleyTable, Vec<usize>) {
    let n = gens[0].len();
    let compose =
        |a: &Vec<usize>, b: &Vec<usize>| -> Vec<usize> { a.iter().map(|&x| b[x]).collect() };
    let mut elems = vec![(0..n).collect::<Vec<_>>()];
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = compose(&elems[i], g);
            if !elems.contains(&y) {
                elems.push(y);
            }
        }
        i += 1;
    }
    let rows: Vec<Vec<usize>> = elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| elems.iter().position(|c| *c == compose(a, b)).unwrap())
                .collect()
        })
        .collect();
    let (table, order) = from_multiplication(&rows).unwrap();
    let of_row = |r: usize| order.iter().position(|&x| x == r).unwrap();
    let gen_map = gens
        .iter()
        .map(|g| of_row(elems.iter().position(|e| e == g).unwrap()))
        .collect();
    (table, gen_map)
}

fn coxeter_pair(braid: bool) -> Presentation {
    let mut p = Presentation::with_letters(Kind::Monoid, &["s1", "s2"]);
    p.add_relation(vec![0, 0], vec![]);
    p.add_relation(vec![1, 1], vec![]);
    if braid {
        p.add_relation(vec![0, 1, 0], vec![1, 0, 1]);
    }
    p
}

/// The two reflections generating the dihedral group of order 2m.
fn reflections(m: usize) -> Vec<Vec<usize>> {
    vec![
        (0..m).map(|i| (m - i) % m).collect(),
        (0..m).map(|i| (m + 1 - i) % m).collect(),
    ]
}

#[test]
fn moore_presentation_of_s3() {
    let (s3, gens) = perm_group(&[vec![1, 0, 2], vec![0, 2, 1]]);
    assert_eq!(s3.size(), 6);
    let r = verify_presentation(&coxeter_pair(true), &s3, &gens).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(
        enumerate_presentation(&coxeter_pair(true), 100)
            .unwrap()
            .size(),
        6
    );
}

#[test]
fn deleting_the_braid_relation_is_not_a_presentation_of_s3() {
    let (s3, gens) = perm_group(&[vec![1, 0, 2], vec![0, 2, 1]]);
    let p = coxeter_pair(false);
    let r = verify_presentation_with(&p, &s3, &gens, EnumConfig::with_node_cap(20_000)).unwrap();
    assert!(r.relations_hold && r.surjective);
    assert!(!r.passed());
    // The presented monoid maps onto every dihedral group, so no finite
    // size is ever reached and the verdict stays inconclusive.
    assert!(r.inconclusive(), "{r:?}");
    for m in 3..=12 {
        let (d, gens) = perm_group(&reflections(m));
        assert_eq!(d.size(), 2 * m);
        let r = verify_presentation_with(&p, &d, &gens, EnumConfig::with_node_cap(20_000)).unwrap();
        assert!(r.relations_hold && r.surjective, "D{m}");
    }
}

#[test]
fn wrong_generator_images_are_caught() {
    let (s3, gens) = perm_group(&[vec![1, 0, 2], vec![0, 2, 1]]);
    let cyc = perm_group(&[vec![1, 2, 0]]).0;
    assert_eq!(cyc.size(), 3);
    // both letters sent to the same transposition: relations hold, not onto
    let r = verify_presentation(&coxeter_pair(true), &s3, &[gens[0], gens[0]]).unwrap();
    assert!(r.relations_hold);
    assert!(!r.surjective);
    // a letter sent to the identity breaks nothing but the braid relation
    let one = s3.identity().unwrap();
    let r = verify_presentation(&coxeter_pair(true), &s3, &[gens[0], one]).unwrap();
    assert!(!r.relations_hold);
    assert!(verify_presentation(&coxeter_pair(true), &s3, &[gens[0]]).is_err());
}
