use super::presentation::{Kind, Presentation, Word};
use super::table::CayleyTable;
use super::{FmError, DEFAULT_NODE_CAP};

const UNDEF: u32 = u32::MAX;

/// Tuning for the coset-style enumeration of presented monoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Total number of nodes that may be defined before giving up.
    pub node_cap: usize,
    /// Live node count that triggers the first full lookahead.
    pub lookahead_start: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            node_cap: DEFAULT_NODE_CAP,
            lookahead_start: 1 << 14,
        }
    }
}

impl EnumConfig {
    pub fn with_node_cap(node_cap: usize) -> Self {
        EnumConfig {
            node_cap,
            ..Self::default()
        }
    }
}

/// Right Cayley graph under construction. Node 0 stands for the empty word.
struct Graph {
    ngens: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    queue: Vec<(u32, u32)>,
}

impl Graph {
    fn new(ngens: usize) -> Self {
        Graph {
            ngens,
            table: vec![UNDEF; ngens],
            parent: vec![0],
            live: 1,
            defined: 1,
            queue: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    fn is_live(&self, x: usize) -> bool {
        self.parent[x] as usize == x
    }

    fn edge(&mut self, x: u32, j: usize) -> u32 {
        let y = self.table[x as usize * self.ngens + j];
        if y == UNDEF {
            UNDEF
        } else {
            let r = self.find(y);
            self.table[x as usize * self.ngens + j] = r;
            r
        }
    }

    fn new_node(&mut self, cap: usize) -> Result<u32, FmError> {
        if self.defined >= cap {
            return Err(FmError::BoundExceeded {
                nodes: self.defined,
                completed_size: None,
            });
        }
        let id = self.parent.len() as u32;
        self.parent.push(id);
        self.table.extend(std::iter::repeat_n(UNDEF, self.ngens));
        self.live += 1;
        self.defined += 1;
        Ok(id)
    }

    fn define(&mut self, x: u32, j: usize, cap: usize) -> Result<u32, FmError> {
        let y = self.new_node(cap)?;
        self.table[x as usize * self.ngens + j] = y;
        Ok(y)
    }

    /// Follows `w` from `x`, creating nodes for missing edges.
    fn trace_define(&mut self, mut x: u32, w: &[usize], cap: usize) -> Result<u32, FmError> {
        for &j in w {
            let y = self.edge(x, j);
            x = if y == UNDEF {
                self.define(x, j, cap)?
            } else {
                y
            };
        }
        Ok(x)
    }

    /// Follows `w` from `x` as far as edges exist; returns the node reached
    /// and how many letters were consumed.
    fn trace(&mut self, mut x: u32, w: &[usize]) -> (u32, usize) {
        for (k, &j) in w.iter().enumerate() {
            let y = self.edge(x, j);
            if y == UNDEF {
                return (x, k);
            }
            x = y;
        }
        (x, w.len())
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.push((a, b));
        while let Some((a, b)) = self.queue.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            let (keep, kill) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[kill as usize] = keep;
            self.live -= 1;
            for j in 0..self.ngens {
                let d = self.table[kill as usize * self.ngens + j];
                if d == UNDEF {
                    continue;
                }
                let k = self.table[keep as usize * self.ngens + j];
                if k == UNDEF {
                    self.table[keep as usize * self.ngens + j] = d;
                } else {
                    self.queue.push((k, d));
                }
            }
        }
    }

    /// Makes `x·u` and `x·v` agree, defining nodes along `u` and along all
    /// but the last letter of `v`.
    fn scan_and_fill(
        &mut self,
        x: u32,
        u: &[usize],
        v: &[usize],
        cap: usize,
    ) -> Result<(), FmError> {
        let end_u = self.trace_define(x, u, cap)?;
        match v.split_last() {
            None => {
                let x = self.find(x);
                if end_u != x {
                    self.coincidence(end_u, x);
                }
            }
            Some((&last, prefix)) => {
                let pre = self.trace_define(x, prefix, cap)?;
                let end_u = self.find(end_u);
                let e = self.edge(pre, last);
                if e == UNDEF {
                    self.table[pre as usize * self.ngens + last] = end_u;
                } else if e != end_u {
                    self.coincidence(e, end_u);
                }
            }
        }
        Ok(())
    }

    /// Applies every relation at every live node without defining anything.
    /// Returns whether anything changed.
    fn lookahead(&mut self, rels: &[(Word, Word)]) -> bool {
        let mut changed = false;
        let mut x = 0;
        while x < self.len() {
            if self.is_live(x) {
                for (u, v) in rels {
                    if !self.is_live(x) {
                        break;
                    }
                    changed |= self.deduce(x as u32, u, v);
                }
            }
            x += 1;
        }
        changed
    }

    fn deduce(&mut self, x: u32, u: &[usize], v: &[usize]) -> bool {
        let (eu, ku) = self.trace(x, u);
        let (ev, kv) = self.trace(x, v);
        if ku == u.len() && kv == v.len() {
            if eu != ev {
                self.coincidence(eu, ev);
                return true;
            }
        } else if ku == u.len() && kv + 1 == v.len() {
            self.table[ev as usize * self.ngens + v[kv]] = eu;
            return true;
        } else if kv == v.len() && ku + 1 == u.len() {
            self.table[eu as usize * self.ngens + u[ku]] = ev;
            return true;
        }
        false
    }

    /// Renumbers live nodes densely, preserving their relative order.
    fn compact(&mut self) {
        let n = self.len();
        let mut new_id = vec![UNDEF; n];
        let mut next = 0u32;
        for (x, id) in new_id.iter_mut().enumerate() {
            if self.is_live(x) {
                *id = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ngens);
        for x in 0..n {
            if !self.is_live(x) {
                continue;
            }
            for j in 0..self.ngens {
                let y = self.edge(x as u32, j);
                table.push(if y == UNDEF {
                    UNDEF
                } else {
                    new_id[y as usize]
                });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
    }
}

/// Enumerates the monoid or semigroup presented by `p`, with the default
/// node budget. Fails with `BoundExceeded` if the budget runs out or the
/// result has more than `bound` elements.
pub fn enumerate_presentation(p: &Presentation, bound: usize) -> Result<CayleyTable, FmError> {
    enumerate_presentation_with(p, bound, EnumConfig::default())
}

pub fn enumerate_presentation_with(
    p: &Presentation,
    bound: usize,
    cfg: EnumConfig,
) -> Result<CayleyTable, FmError> {
    let g = p.num_letters();
    if g == 0 && p.kind == Kind::Semigroup {
        return Err(FmError::BadInput("empty alphabet".into()));
    }
    let rels = p.relations();
    let cap = cfg.node_cap.max(1);
    let mut gr = Graph::new(g);
    let mut next_lookahead = cfg.lookahead_start.max(16);
    let mut x = 0usize;
    while x < gr.len() {
        if gr.is_live(x) {
            for (u, v) in rels {
                if !gr.is_live(x) {
                    break;
                }
                gr.scan_and_fill(x as u32, u, v, cap)?;
            }
            for j in 0..g {
                if !gr.is_live(x) {
                    break;
                }
                if gr.edge(x as u32, j) == UNDEF {
                    gr.define(x as u32, j, cap)?;
                }
            }
        }
        x += 1;
        if gr.live > next_lookahead {
            while gr.lookahead(rels) {}
            if 2 * gr.live < gr.len() {
                let before: usize = (0..x).filter(|&y| gr.is_live(y)).count();
                gr.compact();
                x = before;
            }
            next_lookahead = next_lookahead.max(2 * gr.live);
        }
    }
    // Every live node now has all edges and satisfies every relation.
    canonical_table(&mut gr, p.kind, bound)
}

fn canonical_table(gr: &mut Graph, kind: Kind, bound: usize) -> Result<CayleyTable, FmError> {
    let g = gr.ngens;
    let n = gr.len();
    let mut index = vec![UNDEF; n];
    let mut order: Vec<u32> = Vec::new();
    let mut nf: Vec<Word> = Vec::new();
    let mut gens = Vec::with_capacity(g);
    let root = gr.find(0);
    match kind {
        Kind::Monoid => {
            index[root as usize] = 0;
            order.push(root);
            nf.push(Vec::new());
        }
        Kind::Semigroup => {
            for j in 0..g {
                let y = gr.edge(root, j);
                if index[y as usize] == UNDEF {
                    index[y as usize] = order.len() as u32;
                    order.push(y);
                    nf.push(vec![j]);
                }
            }
        }
    }
    let mut right = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for j in 0..g {
            let y = gr.edge(x, j);
            if index[y as usize] == UNDEF {
                index[y as usize] = order.len() as u32;
                order.push(y);
                let mut w = nf[i].clone();
                w.push(j);
                nf.push(w);
            }
            right.push(index[y as usize]);
        }
        i += 1;
    }
    for j in 0..g {
        let y = gr.edge(root, j);
        gens.push(index[y as usize] as usize);
    }
    let size = order.len();
    if size > bound {
        return Err(FmError::BoundExceeded {
            nodes: gr.defined,
            completed_size: Some(size),
        });
    }
    let identity = match kind {
        Kind::Monoid => Some(0),
        Kind::Semigroup => None,
    };
    Ok(CayleyTable::from_right(gens, right, nf, identity))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_letter() {
        let mut p = Presentation::with_letters(Kind::Monoid, &["x"]);
        p.add_relation(vec![0, 0], vec![0]);
        let t = enumerate_presentation(&p, 10).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.normal_form(1), &vec![0]);
    }

    #[test]
    fn semigroup_kind_drops_isolated_identity() {
        let mut p = Presentation::with_letters(Kind::Semigroup, &["x"]);
        p.add_relation(vec![0, 0, 0], vec![0]);
        let t = enumerate_presentation(&p, 10).unwrap();
        assert_eq!(t.size(), 2);
        assert_eq!(t.identity(), Some(1));
    }

    #[test]
    fn symmetric_group_of_degree_three() {
        let mut p = Presentation::with_letters(Kind::Monoid, &["a", "b"]);
        p.add_relation(vec![0, 0], vec![]);
        p.add_relation(vec![1, 1], vec![]);
        p.add_relation(vec![0, 1, 0], vec![1, 0, 1]);
        assert_eq!(enumerate_presentation(&p, 100).unwrap().size(), 6);
        assert!(matches!(
            enumerate_presentation(&p, 5),
            Err(FmError::BoundExceeded {
                completed_size: Some(6),
                ..
            })
        ));
    }

    #[test]
    fn infinite_monoid_exhausts_budget() {
        let mut p = Presentation::with_letters(Kind::Monoid, &["a", "b"]);
        p.add_relation(vec![0, 0], vec![]);
        p.add_relation(vec![1, 1], vec![]);
        let r = enumerate_presentation_with(&p, 100, EnumConfig::with_node_cap(5000));
        assert!(matches!(
            r,
            Err(FmError::BoundExceeded {
                completed_size: None,
                ..
            })
        ));
    }

    #[test]
    fn bicyclic_like_collapse() {
        // ab = 1 together with ba = 1 gives the integers; adding a^3 = 1 gives C3.
        let mut p = Presentation::with_letters(Kind::Monoid, &["a", "b"]);
        p.add_relation(vec![0, 1], vec![]);
        p.add_relation(vec![1, 0], vec![]);
        p.add_relation(vec![0, 0, 0], vec![]);
        let t = enumerate_presentation(&p, 100).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.gens(), &[1, 2]);
    }
}
