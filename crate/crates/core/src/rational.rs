//! Exact rational scalars and small helpers shared across the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (guaranteed by `BigRational`).
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_i(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer power with negative exponents allowed. Panics on `0^negative`.
pub fn rat_pow(x: &Rat, k: i64) -> Rat {
    if k >= 0 {
        x.pow(k as i32)
    } else {
        assert!(!x.is_zero(), "zero to a negative power");
        x.pow(k as i32)
    }
}

/// Binomial coefficient as a rational.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut out = Rat::one();
    for i in 0..k {
        out *= rat_i((n - i) as i64);
        out /= rat_i((i + 1) as i64);
    }
    out
}

/// Lossless f64 conversion for reporting and float-side numerics.
pub fn rat_to_f64(x: &Rat) -> f64 {
    // num-rational's conversion is exact up to f64 rounding
    let n = x.numer();
    let d = x.denom();
    big_to_f64(n) / big_to_f64(d)
}

fn big_to_f64(n: &BigInt) -> f64 {
    // `to_string().parse()` round-trips correctly for magnitudes f64 can hold
    // and degrades to +-inf beyond, which is what the float callers want.
    n.to_string().parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// Serialize a rational as `"p/q"` (or `"p"` when integral).
pub fn rat_string(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"` into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, crate::Error> {
    let s = s.trim();
    let bad = || crate::Error::Config(format!("malformed rational: {s:?}"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
        Some((p, q)) => {
            let n: BigInt = p.trim().parse().map_err(|_| bad())?;
            let d: BigInt = q.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
    }
}
