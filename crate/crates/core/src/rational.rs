//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or an integer.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical text form: `"n"` for integers, `"p/q"` otherwise.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: usize) -> Q {
    let mut r = Q::one();
    for i in 2..=n {
        r *= q(i as i64);
    }
    r
}

/// `H_n(x) = x(x-1)...(x-n+1)/n!`, with `H_0 = 1`.
pub fn hilbert(n: usize, x: &Q) -> Q {
    let mut r = Q::one();
    for i in 0..n {
        r *= x - q(i as i64);
    }
    r / factorial(n)
}

pub fn pow(x: &Q, n: i64) -> Q {
    if n >= 0 {
        let mut r = Q::one();
        for _ in 0..n {
            r *= x;
        }
        r
    } else {
        pow(x, -n).recip()
    }
}

pub fn sign(n: usize) -> Q {
    if n.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

pub fn is_negative(x: &Q) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_q("-4").unwrap(), q(-4));
        assert_eq!(fmt_q(&frac(-2, 4)), "-1/2");
        assert_eq!(fmt_q(&q(0)), "0");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn hilbert_values() {
        assert_eq!(hilbert(0, &q(7)), q(1));
        assert_eq!(hilbert(1, &frac(2, 3)), frac(2, 3));
        assert_eq!(hilbert(2, &q(2)), q(1));
        assert_eq!(hilbert(3, &q(-1)), q(-1));
        for k in 0..6 {
            assert_eq!(hilbert(k, &q(-1)), sign(k));
        }
    }
}
