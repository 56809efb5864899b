//! Integer partitions with weakly decreasing parts.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        Partition(
            (1..=self.largest())
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// `λ'_k`, the number of parts of size at least `k` (k ≥ 1).
    pub fn conjugate_part(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p >= k).count() as u32
    }

    /// Number of parts equal to `k`.
    pub fn multiplicity(&self, k: u32) -> u32 {
        self.0.iter().filter(|&&p| p == k).count() as u32
    }

    /// Partition from the multiset of cyclic exponents of an abelian p-group
    /// whose factors each occur `h` times.
    pub fn from_exponents(exponents: &[u32], h: usize) -> Option<Partition> {
        let mut e: Vec<u32> = exponents.iter().copied().filter(|&x| x > 0).collect();
        e.sort_unstable_by(|a, b| b.cmp(a));
        if e.len() % h != 0 {
            return None;
        }
        let parts: Vec<u32> = e.chunks(h).map(|c| c[0]).collect();
        let ok = e.chunks(h).all(|c| c.iter().all(|&x| x == c[0]));
        ok.then(|| Partition(parts))
    }

    /// Partition from `λ'` given as `|A[p^k]|` exponent increments.
    pub fn from_transpose(t: &[u32]) -> Partition {
        Partition::new(t.to_vec()).transpose()
    }

    /// All partitions with parts at most `max_part` and size at most `max_size`.
    pub fn enumerate(max_part: u32, max_size: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(cur: &mut Vec<u32>, cap: u32, remaining: u32, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            for p in (1..=cap.min(remaining)).rev() {
                cur.push(p);
                rec(cur, p, remaining - p, out);
                cur.pop();
            }
        }
        rec(&mut cur, max_part, max_size, &mut out);
        out.sort();
        out
    }

    pub fn parse(text: &str) -> Result<Partition> {
        let t = text.trim();
        let t = match (t.strip_prefix('('), t.strip_suffix(')')) {
            (Some(_), Some(_)) if t.len() >= 2 => t[1..t.len() - 1].trim(),
            (None, None) => t,
            _ => return Err(Error::Parse(format!("unbalanced parentheses in `{text}`"))),
        };
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(|c: char| c == ',' || c == '.' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| match s.parse::<u32>() {
                Ok(k) if k > 0 => Ok(k),
                _ => Err(Error::Parse(format!("bad partition `{text}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Partition::new(parts))
    }
}

/// Orders by number of parts, then lexicographically on the parts.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_and_order() {
        let p = Partition::new(vec![1, 3, 3]);
        assert_eq!(p.parts(), &[3, 3, 1]);
        assert_eq!(p.transpose().parts(), &[3, 2, 2]);
        assert_eq!(p.transpose().transpose(), p);
        let all = Partition::enumerate(2, 4);
        let shown: Vec<String> = all.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown[..7],
            ["()", "(1)", "(2)", "(1,1)", "(2,1)", "(2,2)", "(1,1,1)"]
        );
        assert_eq!(all.len(), 9);
        assert_eq!(
            Partition::parse("(2,1)").unwrap(),
            Partition::new(vec![2, 1])
        );
        assert_eq!(Partition::parse("1 2").unwrap(), Partition::new(vec![2, 1]));
        for bad in ["(", "(2,1", "2)", "(0)", "(x)"] {
            assert!(Partition::parse(bad).is_err(), "{bad}");
        }
        assert_eq!(
            Partition::from_exponents(&[1, 1, 2, 2], 2),
            Some(Partition::new(vec![2, 1]))
        );
        assert_eq!(Partition::from_exponents(&[1, 2, 2], 2), None);
    }
}
