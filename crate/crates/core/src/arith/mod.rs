//! Exact arithmetic: rationals, p-adic valuations, integer normal forms,
//! p-local lattices, cyclotomic coordinates and prime-field linear algebra.

pub mod cyclotomic;
pub mod modp;
pub mod plocal;
pub mod qmat;
pub mod snf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// p-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn val(x: &Q, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(val_int(x.numer(), p) as i64 - val_int(x.denom(), p) as i64)
}

/// True when `x` lies in the localization Z_(p).
pub fn is_p_integral(x: &Q, p: u64) -> bool {
    x.is_zero() || val_int(x.denom(), p) == 0
}

/// Reduce a p-integral rational into Z/p^k.
pub fn reduce_mod(x: &Q, modulus: u64) -> u64 {
    let m = BigInt::from(modulus);
    let num = x.numer().mod_floor(&m);
    let den = x.denom().mod_floor(&m);
    let inv = mod_inverse(den.to_u64().unwrap(), modulus).expect("denominator not invertible");
    ((num.to_u64().unwrap() as u128 * inv as u128) % modulus as u128) as u64
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u128 % m as u128;
    let mut b128 = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = r as u64;
    b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a.lcm(&b)
}

/// Exact integer power as a rational, allowing negative exponents.
pub fn q_pow(base: u64, exp: i64) -> Q {
    let b = BigInt::from(base);
    let mag = num_traits::pow::pow(b, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Q::from_integer(mag)
    } else {
        Q::new(BigInt::one(), mag)
    }
}

/// Decimal rendering with `sig` significant digits, used only at report
/// boundaries.
pub fn render_decimal(x: &Q, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    render_f64(q_to_f64(x), sig)
}

/// Same rendering for a float.
pub fn render_f64(v: f64, sig: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let mag = v.abs().log10().floor() as i32;
    if (-5..15).contains(&mag) {
        let decimals = (sig as i32 - 1 - mag).max(0) as usize;
        let s = format!("{:.*}", decimals, v);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{:.*e}", sig - 1, v)
    }
}

pub fn q_to_f64(x: &Q) -> f64 {
    // Scale to keep both parts within f64 range for large denominators.
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 60).max(0);
    let nf = (n >> shift as usize).to_f64().unwrap_or(0.0);
    let df = (d >> shift as usize).to_f64().unwrap_or(1.0);
    if df == 0.0 {
        // Denominator vanished under the shift: value is huge.
        return nf * 2f64.powi(60);
    }
    nf / df
}

/// `a/b` printed as an exact fraction.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        Some(Q::new(a, b))
    } else {
        let a: BigInt = s.parse().ok()?;
        Some(Q::from_integer(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(val(&q_frac(12, 5), 2), Some(2));
        assert_eq!(val(&q_frac(5, 24), 2), Some(-3));
        assert_eq!(val(&q_int(0), 3), None);
        assert!(is_p_integral(&q_frac(1, 3), 2));
        assert!(!is_p_integral(&q_frac(1, 6), 2));
    }

    #[test]
    fn modular_reduction() {
        // 1/2 mod 9 = 5
        assert_eq!(reduce_mod(&q_frac(1, 2), 9), 5);
        assert_eq!(reduce_mod(&q_frac(-1, 2), 9), 4);
        assert_eq!(mod_inverse(4, 6), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(render_decimal(&q_frac(1, 3), 12), "0.333333333333");
        assert_eq!(render_decimal(&q_int(6), 12), "6");
        assert_eq!(render_decimal(&q_frac(6, 7), 4), "0.8571");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_q("3/6"), Some(q_frac(1, 2)));
        assert_eq!(parse_q("-2"), Some(q_int(-2)));
        assert_eq!(parse_q("1/0"), None);
    }
}
