//! Exact integer / rational vector helpers used throughout the crate.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, Integer, Signed, ToPrimitive, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn to_int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Int::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

pub fn norm_sq(a: &[Int]) -> Int {
    dot(a, a)
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += x * y;
    }
    acc
}

/// gcd of the entries, always nonnegative; zero only for the zero vector.
pub fn content(a: &[Int]) -> Int {
    let mut g = Int::zero();
    for x in a {
        g = g.gcd(x);
    }
    g
}

pub fn is_zero_vec(a: &[Int]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn is_primitive(a: &[Int]) -> bool {
    content(a) == Int::from(1)
}

/// Canonical sign: first nonzero entry positive. Returns true if the sign was flipped.
pub fn canonical_sign(a: &mut [Int]) -> bool {
    for x in a.iter() {
        if x.is_positive() {
            return false;
        }
        if x.is_negative() {
            for y in a.iter_mut() {
                *y = -std::mem::take(y);
            }
            return true;
        }
    }
    false
}

pub fn dot_i128(a: &[i64], b: &[i64]) -> i128 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0i128;
    for (x, y) in a.iter().zip(b) {
        acc += (*x as i128) * (*y as i128);
    }
    acc
}

pub fn norm_sq_i64(a: &[i64]) -> i64 {
    a.iter().map(|&x| x * x).sum()
}

pub fn gcd_i64(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Branch-light binary gcd for the hot pair loops.
#[inline]
pub fn gcd_u64_binary(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

pub fn content_i64(a: &[i64]) -> i64 {
    let mut g = 0;
    for &x in a {
        g = gcd_i64(g, x);
        if g == 1 {
            return 1;
        }
    }
    g
}

/// Checked conversion for the machine-integer fast paths.
pub fn to_i64_vec(a: &[Int]) -> Result<Vec<i64>> {
    a.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::Budget(format!("entry {x} exceeds the machine-integer range")))
        })
        .collect()
}

/// Parses "1,-2,3" into an integer vector.
pub fn parse_int_vec(s: &str) -> Result<Vec<Int>> {
    let v: Result<Vec<Int>> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Int>()
                .map_err(|_| Error::Invalid(format!("bad integer entry {t:?}")))
        })
        .collect();
    let v = v?;
    if v.is_empty() {
        return Err(Error::Invalid("empty vector".into()));
    }
    Ok(v)
}

/// Parses a decimal string such as "256", "54.25" or "1e6" into an exact rational.
pub fn parse_decimal(s: &str) -> Result<Rat> {
    let t = s.trim();
    let bad = || Error::Invalid(format!("bad decimal {t:?}"));
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (sign, digits) = match mant.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ipart, fpart) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    if ipart.is_empty() && fpart.is_empty() {
        return Err(bad());
    }
    let mut numer = Int::zero();
    for c in ipart.chars().chain(fpart.chars()) {
        let d = c.to_digit(10).ok_or_else(bad)?;
        numer = numer * 10 + Int::from(d);
    }
    numer *= Int::from(sign);
    let scale = fpart.len() as i32 - exp;
    let ten = Int::from(10);
    Ok(if scale >= 0 {
        Rat::new(numer, ten.pow(scale as u32))
    } else {
        Rat::from(numer * ten.pow((-scale) as u32))
    })
}

/// Largest integer m >= 0 with m^2 <= q. Requires q >= 0.
pub fn floor_sqrt_rat(q: &Rat) -> Int {
    assert!(!q.is_negative());
    q.numer().div_floor(q.denom()).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_forms() {
        assert_eq!(parse_decimal("256").unwrap(), rat(256, 1));
        assert_eq!(parse_decimal("54.25").unwrap(), rat(217, 4));
        assert_eq!(parse_decimal("1e6").unwrap(), rat(1_000_000, 1));
        assert_eq!(parse_decimal("-2.5e-1").unwrap(), rat(-1, 4));
        assert!(parse_decimal("abc").is_err());
    }

    #[test]
    fn content_and_sign() {
        let mut v = to_int_vec(&[0, -2, 4]);
        assert_eq!(content(&v), int(2));
        assert!(canonical_sign(&mut v));
        assert_eq!(v, to_int_vec(&[0, 2, -4]));
    }

    #[test]
    fn floor_sqrt_of_rationals() {
        assert_eq!(floor_sqrt_rat(&rat(89, 10)), int(2));
        assert_eq!(floor_sqrt_rat(&rat(91, 10)), int(3));
        assert_eq!(floor_sqrt_rat(&rat(0, 1)), int(0));
    }
}
