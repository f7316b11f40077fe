use std::collections::HashMap;

use crate::fmonoid::closure_from_generators;

use super::{AlgebraInstance, IaError, SubalgebraLattice};

/// Search nodes allowed when enumerating automorphisms.
pub const AUT_SEARCH_CAP: usize = 2_000_000;
/// Largest automorphism group returned.
pub const AUT_CAP: usize = 50_000;

/// An automorphism group as a list of permutations of the carrier, with the
/// identity first. Composition is left to right: `(αβ)(x) = β(α(x))`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub perms: Vec<Vec<usize>>,
    /// `Fix(α)` for each automorphism, as a lattice index.
    pub fix: Vec<usize>,
    /// `cofix(α) = codim Fix(α)`.
    pub cofix: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Seed,
    Apply(usize),
}

/// How each element arises from the generating sequence: element `order[i]`
/// is a seed (a constant or a generator) or an operation applied to earlier
/// elements.
struct Derivation {
    order: Vec<usize>,
    steps: Vec<(Step, Vec<usize>)>,
}

fn derive(alg: &AlgebraInstance, gens: &[usize]) -> Derivation {
    let m = alg.carrier;
    let mut known = vec![false; m];
    let mut order = Vec::new();
    let mut steps = Vec::new();
    for (o, op) in alg.ops.iter().enumerate() {
        if op.arity == 0 && !known[op.table[0]] {
            known[op.table[0]] = true;
            order.push(op.table[0]);
            steps.push((Step::Apply(o), Vec::new()));
        }
    }
    for &g in gens {
        if !known[g] {
            known[g] = true;
            order.push(g);
            steps.push((Step::Seed, Vec::new()));
        }
    }
    loop {
        let before = order.len();
        for (o, op) in alg.ops.iter().enumerate() {
            if op.arity == 0 {
                continue;
            }
            let cur = order.clone();
            for t in super::tuples(cur.len(), op.arity) {
                let args: Vec<usize> = t.iter().map(|&j| cur[j]).collect();
                let v = op.apply(m, &args);
                if !known[v] {
                    known[v] = true;
                    order.push(v);
                    steps.push((Step::Apply(o), args));
                }
            }
        }
        if order.len() == before {
            break;
        }
    }
    Derivation { order, steps }
}

/// All automorphisms, by sending a generating sequence `x_1, …, x_k` with
/// each `x_i ∉ ⟨x_1, …, x_{i-1}⟩` to sequences with the same property and
/// extending along the derivation of every element.
pub fn automorphisms(alg: &AlgebraInstance, lat: &SubalgebraLattice) -> Result<AutGroup, IaError> {
    let m = alg.carrier;
    let gens = lat.greedy_basis(lat.top);
    let der = derive(alg, &gens);
    if der.order.len() != m {
        return Err(IaError::BadInput(
            "generating sequence does not reach the carrier".into(),
        ));
    }
    let mut perms = Vec::new();
    let mut nodes = 0usize;
    let mut images: Vec<usize> = Vec::new();
    search(alg, lat, &gens, &der, &mut images, &mut perms, &mut nodes)?;
    perms.sort();
    let fix: Vec<usize> = perms
        .iter()
        .map(|p| {
            let fixed: Vec<usize> = (0..m).filter(|&x| p[x] == x).collect();
            lat.index_of(&alg.subset(&fixed))
                .expect("fixed points form a subalgebra")
        })
        .collect();
    let cofix = if lat.exchange {
        fix.iter()
            .map(|&f| lat.codim(f))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    Ok(AutGroup { perms, fix, cofix })
}

fn search(
    alg: &AlgebraInstance,
    lat: &SubalgebraLattice,
    gens: &[usize],
    der: &Derivation,
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    nodes: &mut usize,
) -> Result<(), IaError> {
    *nodes += 1;
    if *nodes > AUT_SEARCH_CAP {
        return Err(IaError::SizeBoundExceeded {
            cap: AUT_SEARCH_CAP,
        });
    }
    let k = images.len();
    if k == gens.len() {
        if let Some(p) = extend(alg, der, images) {
            if out.len() >= AUT_CAP {
                return Err(IaError::SizeBoundExceeded { cap: AUT_CAP });
            }
            out.push(p);
        }
        return Ok(());
    }
    let span = lat.generated(images);
    for y in 0..alg.carrier {
        if !lat.contains(span, y) {
            images.push(y);
            search(alg, lat, gens, der, images, out, nodes)?;
            images.pop();
        }
    }
    Ok(())
}

/// The map determined by sending generator `i` to `images[i]`, if it is a
/// well-defined bijective endomorphism.
fn extend(alg: &AlgebraInstance, der: &Derivation, images: &[usize]) -> Option<Vec<usize>> {
    let m = alg.carrier;
    let mut map = vec![usize::MAX; m];
    let mut g = 0;
    for (&x, (step, args)) in der.order.iter().zip(&der.steps) {
        map[x] = match step {
            Step::Seed => {
                g += 1;
                images[g - 1]
            }
            Step::Apply(o) => {
                let a: Vec<usize> = args.iter().map(|&v| map[v]).collect();
                alg.ops[*o].apply(m, &a)
            }
        };
    }
    let mut hit = vec![false; m];
    for &y in &map {
        if std::mem::replace(&mut hit[y], true) {
            return None;
        }
    }
    alg.is_endomorphism(&map).then_some(map)
}

pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x]).collect()
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn identity(&self) -> &[usize] {
        &self.perms[0]
    }

    /// `Γ_κ`: the automorphisms with `cofix = κ`.
    pub fn gamma(&self, kappa: usize) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| self.cofix.get(i) == Some(&kappa))
            .collect()
    }

    /// The elements of the subgroup generated by the listed automorphisms.
    pub fn generated(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let g: Vec<Vec<usize>> = gens.iter().map(|&i| self.perms[i].clone()).collect();
        let (_, elems) = closure_from_generators(
            &g,
            |a, b| compose(a, b),
            Some(self.perms[0].clone()),
            self.order() + 1,
        )
        .expect("a subgroup is no larger than the group");
        elems
    }

    /// Positions of the listed permutations in `perms`.
    pub fn positions(&self) -> HashMap<&[usize], usize> {
        self.perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect()
    }
}
