//! Permutations in cycle notation. Points are 1-based in text and 0-based in memory.

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u32).collect()
}

/// `(a∘b)(x) = a(b(x))`.
pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u32]) -> Perm {
    let mut inv = vec![0u32; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Parses a product of cycles such as `(1 2 3)(4 5)`, `(1,2)` or `()`.
/// Cycles are applied right to left.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
    let mut perm = identity(degree);
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err(Error::Parse(format!("empty permutation `{text}`")));
    }
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let body_start = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` in `{text}`")))?;
        let close = body_start
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{text}`")))?;
        let body = &body_start[..close];
        let mut points = Vec::new();
        for tok in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let p: usize = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point `{tok}` in `{text}`")))?;
            if p == 0 || p > degree {
                return Err(Error::Parse(format!(
                    "point {p} outside 1..={degree} in `{text}`"
                )));
            }
            if points.contains(&(p - 1)) {
                return Err(Error::Parse(format!("repeated point {p} in `{text}`")));
            }
            points.push(p - 1);
        }
        cycles.push(points);
        rest = body_start[close + 1..].trim_start();
    }
    for cycle in cycles.iter().rev() {
        let mut c = identity(degree);
        for (k, &p) in cycle.iter().enumerate() {
            c[p] = cycle[(k + 1) % cycle.len()] as u32;
        }
        perm = compose(&c, &perm);
    }
    Ok(perm)
}

/// Disjoint cycle form, smallest point first in each cycle; `()` for the identity.
pub fn format_cycles(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x] as usize;
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let p = parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(p, vec![1, 2, 0]);
        assert_eq!(format_cycles(&p), "(1 2 3)");
        assert_eq!(format_cycles(&identity(4)), "()");
        assert_eq!(parse_cycles("()", 2).unwrap(), identity(2));
        // right to left: (1 2)(2 3) sends 3 -> 2 -> 1
        let q = parse_cycles("(1 2)(2 3)", 3).unwrap();
        assert_eq!(q[2], 0);
        assert!(parse_cycles("(1 4)", 3).is_err());
        assert!(parse_cycles("1 2", 3).is_err());
        assert!(parse_cycles("(1 1)", 3).is_err());
    }

    #[test]
    fn compose_inverse() {
        let a = parse_cycles("(1 2 3 4)", 4).unwrap();
        assert_eq!(compose(&a, &inverse(&a)), identity(4));
    }
}
