use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::fmonoid::CayleyTable;

use super::IaError;

/// Largest carrier accepted by any instance.
pub const MAX_CARRIER: usize = 512;

/// A finitary operation given by its full value table. The argument tuple
/// `(x_1, …, x_k)` sits at index `x_1·m^{k-1} + … + x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Operation {
    pub arity: usize,
    pub table: Vec<usize>,
}

impl Operation {
    pub fn apply(&self, m: usize, args: &[usize]) -> usize {
        self.table[args.iter().fold(0, |i, &a| i * m + a)]
    }
}

/// Which construction an instance came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum AlgebraFamily {
    Set { n: usize },
    Vecspace { p: usize, d: usize },
    FreeAct { group_order: usize, rank: usize },
    Fl93,
    Custom,
}

/// A finite algebra on `{0, …, m-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraInstance {
    pub family: AlgebraFamily,
    pub carrier: usize,
    pub ops: Vec<Operation>,
    /// Display name of each element.
    pub names: Vec<String>,
}

fn bad(msg: impl Into<String>) -> IaError {
    IaError::BadInput(msg.into())
}

impl AlgebraInstance {
    pub fn new(
        family: AlgebraFamily,
        carrier: usize,
        ops: Vec<Operation>,
        names: Vec<String>,
    ) -> Result<Self, IaError> {
        if carrier > MAX_CARRIER {
            return Err(bad(format!(
                "carrier of {carrier} elements exceeds {MAX_CARRIER}"
            )));
        }
        if names.len() != carrier {
            return Err(bad("one name per element"));
        }
        for (i, op) in ops.iter().enumerate() {
            let len = u32::try_from(op.arity)
                .ok()
                .and_then(|k| carrier.checked_pow(k));
            if len != Some(op.table.len()) {
                return Err(bad(format!(
                    "operation {i} has {} entries for arity {}",
                    op.table.len(),
                    op.arity
                )));
            }
            if carrier == 0 && op.arity == 0 {
                return Err(bad("a constant needs a non-empty carrier"));
            }
            if let Some(&v) = op.table.iter().find(|&&v| v >= carrier) {
                return Err(bad(format!(
                    "operation {i} takes value {v} outside the carrier"
                )));
            }
        }
        Ok(AlgebraInstance {
            family,
            carrier,
            ops,
            names,
        })
    }

    /// A set with no operations.
    pub fn set(n: usize) -> Result<Self, IaError> {
        let names = (1..=n).map(|i| i.to_string()).collect();
        Self::new(AlgebraFamily::Set { n }, n, Vec::new(), names)
    }

    /// `GF(p)^d` with addition, negation, zero and one scalar multiplication
    /// per field element. Vector `v` is stored as `Σ v_i p^i`.
    pub fn vecspace(p: usize, d: usize) -> Result<Self, IaError> {
        if p != 2 && p != 3 {
            return Err(bad(format!("field order {p} not supported (2 or 3)")));
        }
        if d > 4 {
            return Err(bad(format!("dimension {d} exceeds 4")));
        }
        let m = p.pow(d as u32);
        let digits = |x: usize| -> Vec<usize> { (0..d).map(|i| x / p.pow(i as u32) % p).collect() };
        let pack = |v: &[usize]| -> usize { v.iter().rev().fold(0, |x, &c| x * p + c) };
        let vecs: Vec<Vec<usize>> = (0..m).map(digits).collect();
        let mut add = Vec::with_capacity(m * m);
        for x in &vecs {
            for y in &vecs {
                let s: Vec<usize> = x.iter().zip(y).map(|(a, b)| (a + b) % p).collect();
                add.push(pack(&s));
            }
        }
        let scale = |l: usize| -> Vec<usize> {
            vecs.iter()
                .map(|x| pack(&x.iter().map(|a| a * l % p).collect::<Vec<_>>()))
                .collect()
        };
        let mut ops = vec![
            Operation {
                arity: 2,
                table: add,
            },
            Operation {
                arity: 1,
                table: scale(p - 1),
            },
            Operation {
                arity: 0,
                table: vec![0],
            },
        ];
        ops.extend((0..p).map(|l| Operation {
            arity: 1,
            table: scale(l),
        }));
        let names = vecs
            .iter()
            .map(|v| {
                format!(
                    "({})",
                    v.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            })
            .collect();
        Self::new(AlgebraFamily::Vecspace { p, d }, m, ops, names)
    }

    /// The free left G-act on `rank` generators: carrier `G × X`, with
    /// `(g, x)` stored as `x·|G| + g` and an operation `f_a(b, x) = (ab, x)`
    /// for each `a ∈ G`.
    pub fn free_act(g: &CayleyTable, rank: usize) -> Result<Self, IaError> {
        let k = g.size();
        if k > 4 || rank > 3 {
            return Err(bad("free acts need |G| ≤ 4 and |X| ≤ 3"));
        }
        let e = g.identity().ok_or_else(|| bad("G has no identity"))?;
        if (0..k).any(|a| !(0..k).any(|b| g.mul(a, b) == e && g.mul(b, a) == e)) {
            return Err(bad("G is not a group"));
        }
        let m = k * rank;
        let ops = (0..k)
            .map(|a| Operation {
                arity: 1,
                table: (0..m).map(|i| (i / k) * k + g.mul(a, i % k)).collect(),
            })
            .collect();
        let names = (0..m)
            .map(|i| format!("(g{},x{})", i % k, i / k + 1))
            .collect();
        Self::new(
            AlgebraFamily::FreeAct {
                group_order: k,
                rank,
            },
            m,
            ops,
            names,
        )
    }

    /// The four-element algebra with one ternary operation that is not
    /// strong: `f(a,a,a) = a`, `f` of two equal arguments and one other is
    /// the odd one out, and `f` of three distinct arguments is the fourth.
    pub fn fl93() -> Self {
        let mut table = Vec::with_capacity(64);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let v = if i == j && j == k {
                        i
                    } else if i == j {
                        k
                    } else if i == k {
                        j
                    } else if j == k {
                        i
                    } else {
                        6 - i - j - k
                    };
                    table.push(v);
                }
            }
        }
        let names = (1..=4).map(|i| format!("a{i}")).collect();
        Self::new(
            AlgebraFamily::Fl93,
            4,
            vec![Operation { arity: 3, table }],
            names,
        )
        .expect("valid table")
    }

    /// Reads `{"carrier": m, "ops": [{"arity": k, "table": …}]}` with each
    /// table nested k deep (a bare number for a constant).
    pub fn from_json(s: &str) -> Result<Self, IaError> {
        let v: Value = serde_json::from_str(s).map_err(|e| bad(e.to_string()))?;
        let m = v["carrier"]
            .as_u64()
            .ok_or_else(|| bad("missing carrier"))? as usize;
        let ops_v = match &v["ops"] {
            Value::Null => Vec::new(),
            Value::Array(a) => a.clone(),
            _ => return Err(bad("ops must be a list")),
        };
        let mut ops = Vec::with_capacity(ops_v.len());
        for (i, o) in ops_v.iter().enumerate() {
            let arity = o["arity"]
                .as_u64()
                .ok_or_else(|| bad(format!("operation {i} lacks an arity")))?
                as usize;
            let mut table = Vec::new();
            flatten(&o["table"], arity, m, &mut table)
                .map_err(|e| bad(format!("operation {i}: {e}")))?;
            ops.push(Operation { arity, table });
        }
        let names = match v.get("names") {
            Some(n) => serde_json::from_value(n.clone()).map_err(|e| bad(e.to_string()))?,
            None => (0..m).map(|i| i.to_string()).collect(),
        };
        Self::new(AlgebraFamily::Custom, m, ops, names)
    }

    /// The instance named `set<n>`, `gf<p>^<d>`, `fl93`, or
    /// `free_c<k>^<r>` (free act of the cyclic group of order k).
    pub fn builtin(name: &str) -> Result<Self, IaError> {
        let lower = name.to_ascii_lowercase();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad(format!("unknown instance {name}")))
        };
        if lower == "fl93" {
            return Ok(Self::fl93());
        }
        if let Some(n) = lower.strip_prefix("set") {
            return Self::set(num(n)?);
        }
        if let Some(rest) = lower.strip_prefix("gf") {
            let (p, d) = rest
                .split_once('^')
                .ok_or_else(|| bad(format!("unknown instance {name}")))?;
            return Self::vecspace(num(p)?, num(d)?);
        }
        if let Some(rest) = lower.strip_prefix("free_c") {
            let (k, r) = rest
                .split_once('^')
                .ok_or_else(|| bad(format!("unknown instance {name}")))?;
            return Self::free_act(&cyclic(num(k)?)?, num(r)?);
        }
        Err(bad(format!(
            "unknown instance {name}; known: set<n>, gf<p>^<d>, free_c<k>^<r>, fl93"
        )))
    }

    /// Elements produced by the nullary operations.
    pub fn constants(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter(|o| o.arity == 0)
            .map(|o| o.table[0])
            .collect()
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.carrier)
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn subset(&self, elems: &[usize]) -> FixedBitSet {
        let mut s = self.empty_set();
        for &x in elems {
            s.insert(x);
        }
        s
    }

    /// The subalgebra generated by `seed`.
    pub fn closure(&self, seed: &[usize]) -> FixedBitSet {
        let mut set = self.empty_set();
        let mut elems = Vec::new();
        self.extend_closed(
            &mut set,
            &mut elems,
            seed.iter().copied().chain(self.constants()),
        );
        set
    }

    /// Closes `set ∪ new`, where `elems` lists `set` and `set` is already
    /// closed. Only argument tuples involving a new element are evaluated.
    pub fn extend_closed(
        &self,
        set: &mut FixedBitSet,
        elems: &mut Vec<usize>,
        new: impl IntoIterator<Item = usize>,
    ) {
        let mut done = elems.len();
        for x in new {
            if !set.put(x) {
                elems.push(x);
            }
        }
        let mut args = Vec::new();
        while done < elems.len() {
            let i = done;
            done += 1;
            for op in &self.ops {
                let k = op.arity;
                // tuples over elems[..=i] whose first occurrence of i is at position p
                for p in 0..k {
                    let radix = |q: usize| if q < p { i } else { i + 1 };
                    let count: usize = (0..k).filter(|&q| q != p).map(radix).product();
                    for c in 0..count {
                        let mut c = c;
                        args.clear();
                        args.resize(k, 0);
                        for q in (0..k).rev() {
                            if q == p {
                                args[q] = elems[i];
                            } else {
                                args[q] = elems[c % radix(q)];
                                c /= radix(q);
                            }
                        }
                        let v = op.apply(self.carrier, &args);
                        if !set.put(v) {
                            elems.push(v);
                        }
                    }
                }
            }
        }
    }

    pub fn is_subalgebra(&self, s: &FixedBitSet) -> bool {
        let elems: Vec<usize> = s.ones().collect();
        self.constants().iter().all(|&c| s.contains(c))
            && self.ops.iter().all(|op| {
                tuples(elems.len(), op.arity).all(|t| {
                    let args: Vec<usize> = t.iter().map(|&j| elems[j]).collect();
                    s.contains(op.apply(self.carrier, &args))
                })
            })
    }

    /// Whether `map` (total on the carrier) commutes with every operation.
    pub fn is_endomorphism(&self, map: &[usize]) -> bool {
        self.ops.iter().all(|op| {
            tuples(self.carrier, op.arity).all(|args| {
                let img: Vec<usize> = args.iter().map(|&a| map[a]).collect();
                map[op.apply(self.carrier, &args)] == op.apply(self.carrier, &img)
            })
        })
    }

    /// Whether the partial map (defined on a subalgebra) commutes with every
    /// operation on its domain.
    pub fn is_partial_morphism(&self, map: &[Option<usize>]) -> bool {
        let dom: Vec<usize> = (0..self.carrier).filter(|&x| map[x].is_some()).collect();
        self.ops.iter().all(|op| {
            tuples(dom.len(), op.arity).all(|t| {
                let args: Vec<usize> = t.iter().map(|&j| dom[j]).collect();
                let img: Vec<usize> = args.iter().map(|&a| map[a].expect("in domain")).collect();
                map[op.apply(self.carrier, &args)] == Some(op.apply(self.carrier, &img))
            })
        })
    }

    pub fn format_set(&self, s: &FixedBitSet) -> String {
        let parts: Vec<&str> = s.ones().map(|x| self.names[x].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// All k-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = if n == 0 && k > 0 { 0 } else { n.pow(k as u32) };
    (0..total).map(move |mut i| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = i % n;
            i /= n;
        }
        t
    })
}

fn flatten(v: &Value, depth: usize, m: usize, out: &mut Vec<usize>) -> Result<(), String> {
    if depth == 0 {
        let x = v.as_u64().ok_or("expected an element index")? as usize;
        out.push(x);
        return Ok(());
    }
    let rows = v.as_array().ok_or("expected a nested list")?;
    if rows.len() != m {
        return Err(format!("expected {m} entries, found {}", rows.len()));
    }
    rows.iter().try_for_each(|r| flatten(r, depth - 1, m, out))
}

/// The cyclic group of order k as a table, generator 1.
pub fn cyclic(k: usize) -> Result<CayleyTable, IaError> {
    if k == 0 {
        return Err(bad("group order must be positive"));
    }
    let rows: Vec<Vec<usize>> = (0..k)
        .map(|a| (0..k).map(|b| (a + b) % k).collect())
        .collect();
    let (t, _) = crate::fmonoid::from_multiplication(&rows).map_err(|e| bad(e.to_string()))?;
    Ok(t)
}
