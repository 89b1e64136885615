//! Exact rational scalars shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `"p"` for integers, `"p/q"` otherwise; denominators are always positive.
pub fn exact_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_exact(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().ok()?;
            let d = d.trim().parse::<BigInt>().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
    }
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Binomial coefficient C(n, k) extended to negative `n` as the polynomial
/// n(n-1)...(n-k+1)/k!.
pub fn binomial(n: i64, k: u32) -> i64 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= n as i128 - i;
        den *= i + 1;
    }
    (num / den) as i64
}

/// Nonnegative binomial: zero when `n < k` or `n < 0`.
pub fn choose(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    binomial(n, k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_strings() {
        assert_eq!(exact_string(&frac(6, 4)), "3/2");
        assert_eq!(exact_string(&frac(-6, 3)), "-2");
        assert_eq!(exact_string(&frac(1, -2)), "-1/2");
        assert_eq!(parse_exact("-3/6"), Some(frac(-1, 2)));
        assert_eq!(parse_exact("1/0"), None);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(-1, 2), 1);
        assert_eq!(binomial(1, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(choose(2, 3), 0);
        assert_eq!(choose(-1, 0), 0);
        assert_eq!(choose(4, 0), 1);
    }
}
