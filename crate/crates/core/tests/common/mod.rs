//! Shared brute-force models for integration tests.
#![allow(dead_code)]

use semiact::fmonoid::{from_multiplication, CayleyTable};
use semiact::ptrans::PartialMap;
use semiact::wreath::{WreathElement, ZERO};

/// Small monoids by multiplication table, identity at index 0.
pub fn trivial_rows() -> Vec<Vec<usize>> {
    vec![vec![0]]
}

pub fn c2_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 0]]
}

pub fn semilattice2_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 1]]
}

pub fn c3_rows() -> Vec<Vec<usize>> {
    (0..3)
        .map(|a| (0..3).map(|b| (a + b) % 3).collect())
        .collect()
}

/// A monoid table with the row index of each of its elements.
pub fn monoid(rows: &[Vec<usize>]) -> (CayleyTable, Vec<usize>) {
    from_multiplication(rows).unwrap()
}

/// `x ↦ (label, image)` on 0-based points, undefined as `None`.
pub type RawWreath = Vec<Option<(usize, usize)>>;

/// Every element of `M ≀ PT_n` for M given by rows.
pub fn raw_wreath_elements(m: usize, n: usize) -> Vec<RawWreath> {
    let choices: Vec<Option<(usize, usize)>> = std::iter::once(None)
        .chain((0..m).flat_map(|a| (0..n).map(move |y| Some((a, y)))))
        .collect();
    let mut out: Vec<RawWreath> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|p| choices.iter().map(move |c| [p.as_slice(), &[*c]].concat()))
            .collect();
    }
    out
}

/// `(a, α)(b, β)`: x ↦ `(a_x b_{xα}, xαβ)` when defined.
pub fn raw_mul(rows: &[Vec<usize>], x: &RawWreath, y: &RawWreath) -> RawWreath {
    x.iter()
        .map(|p| p.and_then(|(a, t)| y[t].map(|(b, u)| (rows[a][b], u))))
        .collect()
}

/// `(1_{dom α}, id_{dom α})`, with the identity at row 0.
pub fn raw_plus(x: &RawWreath) -> RawWreath {
    x.iter()
        .enumerate()
        .map(|(i, p)| p.map(|_| (0, i)))
        .collect()
}

pub fn to_wreath(x: &RawWreath, row_to_elem: &[usize]) -> WreathElement {
    let tup = x
        .iter()
        .map(|p| p.map_or(ZERO, |(a, _)| row_to_elem[a] as u32))
        .collect();
    let map = PartialMap::from_images(&x.iter().map(|p| p.map(|(_, y)| y + 1)).collect::<Vec<_>>())
        .unwrap();
    WreathElement { tup, map }
}

/// Inverse of the element list returned by `from_multiplication`.
pub fn row_to_elem(elems: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; elems.len()];
    for (i, &r) in elems.iter().enumerate() {
        inv[r] = i;
    }
    inv
}

/// Counts failures of L1–L6 over all pairs of a finite unary monoid.
pub fn lr_identity_failures<T: PartialEq>(
    elems: &[T],
    mul: impl Fn(&T, &T) -> T,
    plus: impl Fn(&T) -> T,
) -> [usize; 6] {
    let mut fails = [0; 6];
    let pl: Vec<T> = elems.iter().map(&plus).collect();
    for (x, xp) in elems.iter().zip(&pl) {
        fails[0] += usize::from(mul(xp, x) != *x);
        fails[4] += usize::from(mul(xp, xp) != *xp);
        fails[5] += usize::from(plus(xp) != *xp);
        for (y, yp) in elems.iter().zip(&pl) {
            fails[1] += usize::from(mul(xp, yp) != mul(yp, xp));
            fails[2] += usize::from(plus(&mul(xp, y)) != mul(xp, yp));
            fails[3] += usize::from(mul(x, yp) != mul(&plus(&mul(x, y)), x));
        }
    }
    fails
}

/// `{1, a, 0}` with `a² = 0`.
pub fn nil3_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]
}

/// The chain `1 > a > 0`.
pub fn chain3_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]
}

/// `C₂` with a zero adjoined.
pub fn c2_zero_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 2]]
}

/// Two left zeros with an identity adjoined.
pub fn left_zero_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 2]]
}

/// Two right zeros with an identity adjoined.
pub fn right_zero_rows() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 2]]
}

/// Monoids of order at most 2, identity first.
pub fn small_monoids() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    vec![
        ("trivial", trivial_rows()),
        ("C2", c2_rows()),
        ("semilattice2", semilattice2_rows()),
    ]
}

/// Monoids of order 3, one per isomorphism type.
pub fn order3_monoids() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    vec![
        ("C3", c3_rows()),
        ("chain3", chain3_rows()),
        ("nil3", nil3_rows()),
        ("C2zero", c2_zero_rows()),
        ("leftzero1", left_zero_rows()),
        ("rightzero1", right_zero_rows()),
    ]
}
