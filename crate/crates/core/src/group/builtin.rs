//! Group specs shipped with the crate.

use super::spec::group_from_spec;
use super::Group;
use crate::error::{Error, Result};

pub const SPECS: &[(&str, &str)] = &[
    ("C2", include_str!("../../data/groups/C2.toml")),
    ("C3", include_str!("../../data/groups/C3.toml")),
    ("V4", include_str!("../../data/groups/V4.toml")),
    ("S3", include_str!("../../data/groups/S3.toml")),
    ("D4", include_str!("../../data/groups/D4.toml")),
    ("A4", include_str!("../../data/groups/A4.toml")),
    ("S4", include_str!("../../data/groups/S4.toml")),
    ("A5", include_str!("../../data/groups/A5.toml")),
    ("S5", include_str!("../../data/groups/S5.toml")),
];

pub fn names() -> Vec<&'static str> {
    SPECS.iter().map(|(n, _)| *n).collect()
}

pub fn spec_text(name: &str) -> Option<&'static str> {
    SPECS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A shipped group by name; `Cn` for any `n ≥ 1` gives the cyclic group.
pub fn builtin(name: &str) -> Result<Group> {
    if let Some(text) = spec_text(name) {
        return group_from_spec(text, usize::MAX);
    }
    if let Some(n) = name.strip_prefix('C').and_then(|s| s.parse::<usize>().ok()) {
        if n >= 1 {
            return Ok(Group::cyclic(n));
        }
    }
    Err(Error::NotFound(format!("no built-in group named `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        let expect = [
            ("C2", 2),
            ("C3", 3),
            ("V4", 4),
            ("S3", 6),
            ("D4", 8),
            ("A4", 12),
            ("S4", 24),
            ("A5", 60),
            ("S5", 120),
        ];
        for (name, order) in expect {
            let g = builtin(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
        }
        let a5 = builtin("A5").unwrap();
        assert_eq!(a5.named_subgroup("S3_twisted").unwrap().order(), 6);
        assert_eq!(a5.named_subgroup("A4").unwrap().order(), 12);
        assert_eq!(builtin("C7").unwrap().order(), 7);
        assert!(builtin("Q8").is_err());
    }
}
