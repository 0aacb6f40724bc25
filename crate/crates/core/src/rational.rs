//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"a/b"`, `"-a/b"` or an integer. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` rendering; integers render with denominator 1.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Best rational approximation of `v` with denominator at most `max_den`,
/// computed from the continued-fraction expansion.
pub fn rationalize(v: f64, max_den: u64) -> Rational {
    assert!(max_den >= 1, "max_den must be positive");
    if !v.is_finite() {
        return Rational::zero();
    }
    let negative = v < 0.0;
    let mut x = v.abs();
    // convergents h/k
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let max_den = BigInt::from(max_den);
    for _ in 0..64 {
        let a = x.floor();
        let ai = BigInt::from(a as u64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > max_den {
            // semiconvergent check
            let t = (&max_den - &k0) / &k1;
            let hs = &t * &h1 + &h0;
            let ks = &t * &k1 + &k0;
            let cand_conv = Rational::new(h1.clone(), k1.clone());
            if ks.is_positive() {
                let cand_semi = Rational::new(hs, ks);
                let target = exact_from_f64(v.abs());
                if (&cand_semi - &target).abs() < (&cand_conv - &target).abs() {
                    return signed(cand_semi, negative);
                }
            }
            return signed(cand_conv, negative);
        }
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
        let frac = x - a;
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    signed(Rational::new(h1, k1), negative)
}

fn signed(r: Rational, negative: bool) -> Rational {
    if negative {
        -r
    } else {
        r
    }
}

fn exact_from_f64(v: f64) -> Rational {
    Rational::from_float(v).unwrap_or_else(Rational::zero)
}
