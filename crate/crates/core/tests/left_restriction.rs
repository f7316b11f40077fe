mod common;

use common::*;
use semiact::ptrans::{Family, PartialMap};
use semiact::wreath::{expected_size, WreathContext};

#[test]
fn partial_maps_satisfy_identities() {
    for n in 1..=4 {
        let elems = Family::PT.elements(n).unwrap();
        assert_eq!(elems.len(), (n + 1).pow(n as u32));
        let fails = lr_identity_failures(&elems, |a, b| a.mul(b), |a| a.plus());
        assert_eq!(fails, [0; 6], "PT_{n}");
    }
}

#[test]
fn partial_map_product_matches_model() {
    let rows = trivial_rows();
    for n in 1..=3 {
        let raw = raw_wreath_elements(1, n);
        let conv = |x: &RawWreath| to_wreath(x, &[0]).map;
        for x in &raw {
            assert_eq!(conv(&raw_plus(x)), conv(x).plus());
            for y in &raw {
                assert_eq!(conv(&raw_mul(&rows, x, y)), conv(x).mul(&conv(y)));
            }
        }
    }
}

#[test]
fn wreath_products_satisfy_identities() {
    for rows in [trivial_rows(), c2_rows(), semilattice2_rows()] {
        let (base, elems) = monoid(&rows);
        let r2e = row_to_elem(&elems);
        for n in 1..=3 {
            let ctx = WreathContext::new(&base, n).unwrap();
            let raw = raw_wreath_elements(rows.len(), n);
            assert_eq!(raw.len(), expected_size(rows.len(), Family::PT, n).unwrap());
            let lib: Vec<_> = raw.iter().map(|x| to_wreath(x, &r2e)).collect();
            let fails = lr_identity_failures(&lib, |a, b| ctx.mul(a, b), |a| ctx.plus(a));
            assert_eq!(fails, [0; 6], "|M|={} n={n}", rows.len());
            for (x, lx) in raw.iter().zip(&lib) {
                assert_eq!(to_wreath(&raw_plus(x), &r2e), ctx.plus(lx));
                for (y, ly) in raw.iter().zip(&lib) {
                    assert_eq!(to_wreath(&raw_mul(&rows, x, y), &r2e), ctx.mul(lx, ly));
                }
            }
        }
    }
}

#[test]
fn checker_rejects_a_wrong_plus() {
    // id on the image in place of id on the domain breaks x⁺x = x.
    let elems = Family::PT.elements(2).unwrap();
    let by_image = |a: &PartialMap| PartialMap::id_mask(2, a.im_mask());
    let fails = lr_identity_failures(&elems, |a, b| a.mul(b), by_image);
    assert!(fails[0] > 0);
}
