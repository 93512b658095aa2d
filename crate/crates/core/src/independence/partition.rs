use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{AtomUniverse, Scope};

/// A three-way split `(a1, a2 | a3)` of a set of atoms; `a3` is the pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition3 {
    pub a1: Scope,
    pub a2: Scope,
    pub a3: Scope,
}

/// On-disk form of a partition: atom names per block.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<String>,
    pub a1: Vec<String>,
    pub a2: Vec<String>,
    pub a3: Vec<String>,
}

impl Partition3 {
    pub fn new(a1: Scope, a2: Scope, a3: Scope) -> Result<Self> {
        if !a1.is_disjoint(&a2) || !a1.is_disjoint(&a3) || !a2.is_disjoint(&a3) {
            return Err(Error::InvalidPartition("blocks are not pairwise disjoint".into()));
        }
        Ok(Partition3 { a1, a2, a3 })
    }

    /// The partition `(scope, ∅ | ∅)`.
    pub fn trivial(scope: Scope) -> Self {
        Partition3 {
            a1: scope,
            a2: Scope::empty(),
            a3: Scope::empty(),
        }
    }

    pub fn from_names<'a>(
        universe: &AtomUniverse,
        a1: impl IntoIterator<Item = &'a str>,
        a2: impl IntoIterator<Item = &'a str>,
        a3: impl IntoIterator<Item = &'a str>,
    ) -> Result<Self> {
        let block = |names: Vec<&str>| -> Result<Scope> {
            let n = names.len();
            let s = universe
                .scope_of(names)
                .map_err(|e| Error::InvalidPartition(e.to_string()))?;
            if s.len() != n {
                return Err(Error::InvalidPartition("an atom is listed twice in one block".into()));
            }
            Ok(s)
        };
        Partition3::new(
            block(a1.into_iter().collect())?,
            block(a2.into_iter().collect())?,
            block(a3.into_iter().collect())?,
        )
    }

    pub fn scope(&self) -> Scope {
        self.a1.union(&self.a2).union(&self.a3)
    }

    /// Both sides are non-empty.
    pub fn is_split(&self) -> bool {
        !self.a1.is_empty() && !self.a2.is_empty()
    }

    pub fn swapped(&self) -> Partition3 {
        Partition3 {
            a1: self.a2.clone(),
            a2: self.a1.clone(),
            a3: self.a3.clone(),
        }
    }

    /// Side `j ∈ {1, 2}` together with the pivot.
    pub fn side(&self, j: usize) -> Scope {
        match j {
            1 => self.a1.union(&self.a3),
            2 => self.a2.union(&self.a3),
            _ => panic!("a partition has sides 1 and 2, not {j}"),
        }
    }

    /// Fails unless the blocks cover exactly `scope`.
    pub fn check_covers(&self, scope: &Scope) -> Result<()> {
        let own = self.scope();
        if own != *scope {
            let missing = scope.difference(&own);
            let extra = own.difference(scope);
            return Err(Error::InvalidPartition(format!(
                "blocks must cover the scope exactly ({} missing, {} extra)",
                missing.len(),
                extra.len()
            )));
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&Scope) -> Scope) -> Partition3 {
        Partition3 {
            a1: f(&self.a1),
            a2: f(&self.a2),
            a3: f(&self.a3),
        }
    }

    pub fn to_file(&self, universe: &AtomUniverse) -> PartitionFile {
        let names = |s: &Scope| s.names(universe).into_iter().map(str::to_owned).collect();
        PartitionFile {
            schema: None,
            a1: names(&self.a1),
            a2: names(&self.a2),
            a3: names(&self.a3),
        }
    }

    pub fn from_file(universe: &AtomUniverse, file: &PartitionFile) -> Result<Self> {
        Partition3::from_names(
            universe,
            file.a1.iter().map(String::as_str),
            file.a2.iter().map(String::as_str),
            file.a3.iter().map(String::as_str),
        )
    }

    /// Parses the JSON partition format and checks that it covers the universe.
    pub fn from_json(universe: &AtomUniverse, text: &str) -> Result<Self> {
        let file: PartitionFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidPartition(e.to_string()))?;
        let part = Partition3::from_file(universe, &file)?;
        part.check_covers(&universe.full_scope())?;
        Ok(part)
    }

    pub fn to_json(&self, universe: &AtomUniverse) -> String {
        serde_json::to_string(&self.to_file(universe)).expect("partition serialises")
    }

    pub fn display<'a>(&'a self, universe: &'a AtomUniverse) -> impl fmt::Display + 'a {
        DisplayPartition { part: self, universe }
    }
}

struct DisplayPartition<'a> {
    part: &'a Partition3,
    universe: &'a AtomUniverse,
}

impl fmt::Display for DisplayPartition<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = |s: &Scope| format!("{{{}}}", s.names(self.universe).join(", "));
        write!(
            f,
            "<{}, {}, {}>",
            b(&self.part.a1),
            b(&self.part.a2),
            b(&self.part.a3)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let u = AtomUniverse::new(["a", "b", "c"]).unwrap();
        let p = Partition3::from_names(&u, ["a"], ["b"], ["c"]).unwrap();
        let text = p.to_json(&u);
        assert_eq!(text, r#"{"a1":["a"],"a2":["b"],"a3":["c"]}"#);
        assert_eq!(Partition3::from_json(&u, &text).unwrap(), p);
        assert_eq!(p.display(&u).to_string(), "<{a}, {b}, {c}>");
    }

    #[test]
    fn rejects_bad_partitions() {
        let u = AtomUniverse::new(["a", "b", "c"]).unwrap();
        let bad = [
            r#"{"a1":["a"],"a2":["a"],"a3":["b","c"]}"#,
            r#"{"a1":["a"],"a2":["b"],"a3":[]}"#,
            r#"{"a1":["a"],"a2":["b"],"a3":["z"]}"#,
            r#"{"a1":["a","a"],"a2":["b"],"a3":["c"]}"#,
            r#"{"a1":["a"],"a2":["b"]}"#,
            r#"not json"#,
        ];
        for text in bad {
            assert!(
                matches!(Partition3::from_json(&u, text), Err(Error::InvalidPartition(_))),
                "{text}"
            );
        }
    }
}
