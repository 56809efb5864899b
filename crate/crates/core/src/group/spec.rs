//! TOML group descriptions.
//!
//! ```toml
//! name = "D4"
//! degree = 4
//! generators = ["(1 2 3 4)", "(1 3)"]
//!
//! [subgroups]
//! tau = ["(1 3)"]
//! ```
//!
//! A group may instead give `table = [[...], ...]` (0-based ids, row `a`
//! column `b` holding `a·b`); its subgroup generators are then written `#id`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{perm, Group};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<String>>,
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<GroupSpec> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("group spec serializes")
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let mut g = match (&self.table, self.degree) {
            (Some(_), Some(_)) => {
                return Err(Error::Parse(
                    "give either `degree` with `generators` or `table`, not both".into(),
                ))
            }
            (Some(rows), None) => {
                if !self.generators.is_empty() {
                    return Err(Error::Parse("table groups take no `generators`".into()));
                }
                Group::from_table(&self.name, rows, cap)?
            }
            (None, Some(degree)) => {
                if degree == 0 {
                    return Err(Error::Parse("degree must be positive".into()));
                }
                let gens = self
                    .generators
                    .iter()
                    .map(|s| perm::parse_cycles(s, degree))
                    .collect::<Result<Vec<_>>>()?;
                Group::from_permutations(&self.name, degree, &gens, cap)?
            }
            (None, None) => return Err(Error::Parse("missing `degree` or `table`".into())),
        };
        for (name, gens) in &self.subgroups {
            let ids = gens
                .iter()
                .map(|s| g.parse_element(s))
                .collect::<Result<Vec<_>>>()?;
            g.add_subgroup(name, &ids);
        }
        Ok(g)
    }
}

pub fn group_from_spec(text: &str, cap: usize) -> Result<Group> {
    GroupSpec::parse(text)?.build(cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    const D4: &str = r#"
name = "D4"
degree = 4
generators = ["(1 2 3 4)", "(1 3)"]

[subgroups]
tau = ["(1 3)"]
"#;

    #[test]
    fn parses_and_round_trips() {
        let spec = GroupSpec::parse(D4).unwrap();
        assert_eq!(GroupSpec::parse(&spec.to_toml()).unwrap(), spec);
        let g = spec.build(200).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.named_subgroup("tau").unwrap().order(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(GroupSpec::parse("name = 3"), Err(Error::Parse(_))));
        let bad = GroupSpec::parse("name = \"x\"\ndegree = 2\ngenerators = [\"(1 3)\"]").unwrap();
        assert!(matches!(bad.build(200), Err(Error::Parse(_))));
        let trivial = GroupSpec::parse("name = \"1\"\ndegree = 1\ngenerators = []").unwrap();
        assert_eq!(trivial.build(200).unwrap().order(), 1);
        let table = GroupSpec::parse(
            "name = \"C2\"\ntable = [[0, 1], [1, 0]]\n[subgroups]\nall = [\"#1\"]",
        )
        .unwrap();
        let g = table.build(200).unwrap();
        assert_eq!(g.named_subgroup("all").unwrap().order(), 2);
        assert_eq!(GroupSpec::parse(&table.to_toml()).unwrap(), table);
    }
}
