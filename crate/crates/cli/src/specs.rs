//! Resolution of command-line names into monoids, algebras and subsets.

use std::path::Path;

use semiact::fmonoid::{from_multiplication, CayleyTable};
use semiact::indalg::AlgebraInstance;
use semiact::ptrans::{Family, MapMonoid, PartialMap};
use semiact::wreath::{enumerate_wreath, WreathContext, WreathElement};
use serde_json::Value;

use crate::CliError;

const MONOID_NAMES: &str = "trivial, c<k>, chain<k>, semilattice2, or a JSON file";

fn bad(msg: impl Into<String>) -> CliError {
    CliError::BadInput(msg.into())
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))
}

fn rows_from_json(v: &Value) -> Result<Vec<Vec<usize>>, CliError> {
    let rows = v.get("table").unwrap_or(v);
    serde_json::from_value(rows.clone())
        .map_err(|_| bad("monoid JSON must be a square table of indices"))
}

fn builtin_rows(name: &str) -> Option<Vec<Vec<usize>>> {
    let lower = name.to_ascii_lowercase();
    let k = |prefix: &str| {
        lower
            .strip_prefix(prefix)
            .and_then(|s| s.parse::<usize>().ok())
            .filter(|&k| (1..=64).contains(&k))
    };
    if lower == "trivial" {
        Some(vec![vec![0]])
    } else if lower == "semilattice2" {
        Some(vec![vec![0, 1], vec![1, 1]])
    } else if let Some(k) = k("chain") {
        Some((0..k).map(|a| (0..k).map(|b| a.max(b)).collect()).collect())
    } else {
        k("c").map(|k| {
            (0..k)
                .map(|a| (0..k).map(|b| (a + b) % k).collect())
                .collect()
        })
    }
}

/// A monoid by built-in name or from a JSON multiplication table.
pub fn monoid(spec: &str) -> Result<CayleyTable, CliError> {
    let rows = match builtin_rows(spec) {
        Some(rows) => rows,
        None if Path::new(spec).exists() => rows_from_json(&read_json(Path::new(spec))?)?,
        None => return Err(bad(format!("unknown monoid {spec}; known: {MONOID_NAMES}"))),
    };
    let (t, _) = from_multiplication(&rows).map_err(|e| bad(e.to_string()))?;
    if t.identity().is_none() {
        return Err(bad(format!("{spec} has no identity")));
    }
    Ok(t)
}

/// An independence algebra by built-in name or from a JSON file.
pub fn algebra(spec: &str) -> Result<AlgebraInstance, CliError> {
    if Path::new(spec).exists() {
        let text = std::fs::read_to_string(spec).map_err(|e| bad(format!("{spec}: {e}")))?;
        return AlgebraInstance::from_json(&text).map_err(CliError::from);
    }
    AlgebraInstance::builtin(spec).map_err(CliError::from)
}

/// The ambient monoid of a pair: `PT<n>`, `MwrPT<n>` over a base monoid, or
/// a JSON table `{"table": [[..]], "plus": [..]}` with an optional `⁺`.
pub enum Ambient {
    Maps(MapMonoid),
    Table {
        table: CayleyTable,
        /// Ambient index of each input row.
        of_row: Vec<usize>,
        plus: Option<Vec<usize>>,
    },
    Wreath {
        base: CayleyTable,
        table: CayleyTable,
        elems: Vec<WreathElement>,
        n: usize,
    },
}

fn split_degree(s: &str) -> (&str, Option<usize>) {
    let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    (&s[..cut], s[cut..].parse().ok())
}

impl Ambient {
    pub fn parse(spec: &str, base: Option<&str>, cap: usize) -> Result<Self, CliError> {
        if Path::new(spec).is_file() {
            return Self::from_file(Path::new(spec));
        }
        let (name, n) = split_degree(spec);
        let n = n
            .filter(|&n| (1..=6).contains(&n))
            .ok_or_else(|| bad(format!("{spec}: degree 1..6 required")))?;
        match name.to_ascii_lowercase().as_str() {
            "pt" => Ok(Ambient::Maps(MapMonoid::full(n)?)),
            "mwrpt" => {
                let base = monoid(base.ok_or_else(|| bad("MwrPT ambients need --M"))?)?;
                let (table, elems) = enumerate_wreath(&base, Family::PT, n, cap)?;
                Ok(Ambient::Wreath {
                    base,
                    table,
                    elems,
                    n,
                })
            }
            _ => Err(bad(format!(
                "unknown ambient {spec}; known: PT<n>, MwrPT<n>"
            ))),
        }
    }

    fn from_file(path: &Path) -> Result<Self, CliError> {
        let v = read_json(path)?;
        let rows = rows_from_json(&v)?;
        let (table, elems) = from_multiplication(&rows).map_err(|e| bad(e.to_string()))?;
        if table.identity().is_none() {
            return Err(bad(format!("{}: no identity", path.display())));
        }
        let mut of_row = vec![0; elems.len()];
        for (i, &row) in elems.iter().enumerate() {
            of_row[row] = i;
        }
        let plus = match v.get("plus") {
            None => None,
            Some(p) => {
                let p: Vec<usize> = serde_json::from_value(p.clone())
                    .map_err(|_| bad("plus must be a list of row indices"))?;
                if p.len() != rows.len() || p.iter().any(|&y| y >= rows.len()) {
                    return Err(bad("plus must give one row index per row"));
                }
                let mut by_elem = vec![0; p.len()];
                for (row, &y) in p.iter().enumerate() {
                    by_elem[of_row[row]] = of_row[y];
                }
                Some(by_elem)
            }
        };
        Ok(Ambient::Table {
            table,
            of_row,
            plus,
        })
    }

    /// Whether `dom_plus` is available.
    pub fn has_plus(&self) -> bool {
        !matches!(self, Ambient::Table { plus: None, .. })
    }

    pub fn table(&self) -> &CayleyTable {
        match self {
            Ambient::Maps(pt) => &pt.table,
            Ambient::Table { table, .. } => table,
            Ambient::Wreath { table, .. } => table,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Ambient::Maps(pt) => pt.elems.first().map_or(0, PartialMap::degree),
            Ambient::Wreath { n, .. } => *n,
            Ambient::Table { .. } => 0,
        }
    }

    /// Elements named by a family (`E2`, `Tn`, `SingPT`), or for wreath
    /// ambients also `M0n` (tuples over M₀), `Mn` (tuples over M) and
    /// `Mwr<family>` (all labelled maps of a family). Table ambients take
    /// row indices, as `0,2,3` or a JSON file holding a list.
    pub fn subset(&self, spec: &str) -> Result<Vec<usize>, CliError> {
        if let Ambient::Table { of_row, .. } = self {
            let rows: Vec<usize> = if Path::new(spec).is_file() {
                serde_json::from_value(read_json(Path::new(spec))?)
                    .map_err(|_| bad(format!("{spec}: expected a list of row indices")))?
            } else {
                spec.split(',')
                    .map(|t| t.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| bad(format!("{spec}: expected row indices such as 0,1,3")))?
            };
            if let Some(&r) = rows.iter().find(|&&r| r >= of_row.len()) {
                return Err(bad(format!("row {r} out of range")));
            }
            let mut out: Vec<usize> = rows.iter().map(|&r| of_row[r]).collect();
            out.sort_unstable();
            out.dedup();
            return Ok(out);
        }
        let lower = spec.to_ascii_lowercase();
        let (name, n) = match lower.as_str() {
            "m0n" | "m0" => ("m0", None),
            "mn" | "m" => ("m", None),
            _ => match split_degree(spec) {
                (name, Some(k)) => (name, Some(k)),
                (name, None) => (name.strip_suffix('n').unwrap_or(name), None),
            },
        };
        if let Some(k) = n.filter(|&k| k != self.degree()) {
            return Err(bad(format!(
                "{spec}: degree {k} differs from the ambient degree {}",
                self.degree()
            )));
        }
        let family = |s: &str| {
            Family::ALL
                .into_iter()
                .find(|f| f.name().eq_ignore_ascii_case(s))
                .ok_or_else(|| {
                    let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                    bad(format!(
                        "unknown subset {spec}; known: {}, M0n, Mn, Mwr<family>",
                        names.join(", ")
                    ))
                })
        };
        match self {
            Ambient::Table { .. } => unreachable!("handled above"),
            Ambient::Maps(pt) => Ok(pt.family(family(name)?)),
            Ambient::Wreath { base, elems, n, .. } => {
                let one = base.identity().expect("monoid") as u32;
                let select = |keep: &dyn Fn(&WreathElement) -> bool| -> Vec<usize> {
                    (0..elems.len()).filter(|&i| keep(&elems[i])).collect()
                };
                let embedded = |e: &WreathElement| {
                    e.tup
                        .iter()
                        .zip(e.map.images())
                        .all(|(&a, y)| y.is_none() || a == one)
                };
                let lower = name.to_ascii_lowercase();
                if lower == "m0" {
                    Ok(select(&|e| Family::E.contains(&e.map)))
                } else if lower == "m" {
                    let id = PartialMap::identity(*n);
                    Ok(select(&|e| e.map == id))
                } else if let Some(rest) = lower.strip_prefix("mwr") {
                    let f = family(rest)?;
                    Ok(select(&|e| f.contains(&e.map)))
                } else {
                    let f = family(name)?;
                    Ok(select(&|e| embedded(e) && f.contains(&e.map)))
                }
            }
        }
    }

    /// The domain projection `x ↦ x⁺`, or the one supplied with a table.
    pub fn dom_plus(&self, x: usize) -> usize {
        match self {
            Ambient::Table { plus, .. } => plus.as_ref().expect("checked by has_plus")[x],
            Ambient::Maps(pt) => pt
                .index_of(&pt.elems[x].plus())
                .expect("PT contains partial identities"),
            Ambient::Wreath { base, elems, n, .. } => {
                let ctx = WreathContext::new(base, *n).expect("monoid");
                let p = ctx.plus(&elems[x]);
                elems
                    .iter()
                    .position(|e| *e == p)
                    .expect("partial identities are present")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_monoids() {
        assert_eq!(monoid("c3").unwrap().size(), 3);
        assert_eq!(monoid("chain4").unwrap().size(), 4);
        assert_eq!(monoid("trivial").unwrap().size(), 1);
        assert!(matches!(monoid("nonsense"), Err(CliError::BadInput(_))));
    }

    #[test]
    fn subsets_by_name() {
        let pt = Ambient::parse("PT2", None, 1000).unwrap();
        assert_eq!(pt.subset("E2").unwrap().len(), 4);
        assert_eq!(pt.subset("Tn").unwrap().len(), 4);
        assert_eq!(pt.subset("SingT").unwrap().len(), 2);
        assert!(pt.subset("E3").is_err());
        let w = Ambient::parse("MwrPT2", Some("c2"), 1000).unwrap();
        assert_eq!(w.table().size(), 25);
        assert_eq!(w.subset("M0n").unwrap().len(), 9);
        assert_eq!(w.subset("Mn").unwrap().len(), 4);
        assert_eq!(w.subset("Tn").unwrap().len(), 4);
        assert_eq!(w.subset("MwrT").unwrap().len(), 16);
    }

    #[test]
    fn table_ambient() {
        let dir = std::env::temp_dir().join(format!("semiact-specs-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chain.json");
        std::fs::write(&path, r#"{"table": [[0,0],[0,1]], "plus": [0,1]}"#).unwrap();
        let a = Ambient::parse(path.to_str().unwrap(), None, 10).unwrap();
        std::fs::remove_dir_all(&dir).ok();
        assert!(a.has_plus());
        // Row 1 is the identity.
        let id = a.subset("1").unwrap()[0];
        assert_eq!(a.table().identity(), Some(id));
        assert_eq!(a.subset("1, 0").unwrap().len(), 2);
        assert!(a.subset("2").is_err());
        assert!(a.subset("x").is_err());
        for x in 0..2 {
            assert_eq!(a.dom_plus(x), x);
        }
    }
}
