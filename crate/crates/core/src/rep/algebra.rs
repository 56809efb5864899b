//! Elements of Q[Γ] as dense coefficient vectors indexed by element id.

use num_traits::{One, Zero};

use crate::arith::Q;
use crate::group::Group;

pub type AlgElem = Vec<Q>;

pub fn zero(g: &Group) -> AlgElem {
    vec![Q::zero(); g.order()]
}

pub fn basis(g: &Group, x: usize) -> AlgElem {
    let mut v = zero(g);
    v[x] = Q::one();
    v
}

pub fn one(g: &Group) -> AlgElem {
    basis(g, 0)
}

pub fn add(a: &[Q], b: &[Q]) -> AlgElem {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> AlgElem {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], s: &Q) -> AlgElem {
    a.iter().map(|x| x * s).collect()
}

pub fn mul(g: &Group, a: &[Q], b: &[Q]) -> AlgElem {
    let mut out = zero(g);
    for (x, ax) in a.iter().enumerate() {
        if ax.is_zero() {
            continue;
        }
        for (y, by) in b.iter().enumerate() {
            if by.is_zero() {
                continue;
            }
            out[g.mul(x, y)] += ax * by;
        }
    }
    out
}

/// `x · a` for a group element `x`.
pub fn left_mul_elem(g: &Group, x: usize, a: &[Q]) -> AlgElem {
    let mut out = zero(g);
    for (y, ay) in a.iter().enumerate() {
        if !ay.is_zero() {
            out[g.mul(x, y)] = ay.clone();
        }
    }
    out
}

/// `a · x` for a group element `x`.
pub fn right_mul_elem(g: &Group, a: &[Q], x: usize) -> AlgElem {
    let mut out = zero(g);
    for (y, ay) in a.iter().enumerate() {
        if !ay.is_zero() {
            out[g.mul(y, x)] = ay.clone();
        }
    }
    out
}

pub fn is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_central(g: &Group, a: &[Q]) -> bool {
    g.generators()
        .iter()
        .all(|&s| left_mul_elem(g, s, a) == right_mul_elem(g, a, s))
}

/// `(1/|H|) Σ_{h∈H} h`.
pub fn subgroup_idempotent(g: &Group, elements: &[usize]) -> AlgElem {
    let mut v = zero(g);
    let c = Q::new(1.into(), (elements.len() as i64).into());
    for &h in elements {
        v[h] = c.clone();
    }
    v
}

/// Human-readable form such as `1/2*() - 1/2*(1 3)(2 4)`.
pub fn format(g: &Group, a: &[Q]) -> String {
    let mut terms = Vec::new();
    for (x, c) in a.iter().enumerate() {
        if !c.is_zero() {
            terms.push(format!("{}*{}", crate::arith::fmt_q(c), g.element_label(x)));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}
