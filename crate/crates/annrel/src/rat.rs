//! Exact rational scalars. Every coefficient in this crate is a `Rat`;
//! there is no floating point anywhere.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Binomial coefficient C(m, i) for integer m (possibly negative) and i >= 0.
pub fn binomial(m: i64, i: u32) -> Rat {
    let mut acc = Rat::one();
    for j in 0..i as i64 {
        acc *= rat(m - j);
    }
    for j in 1..=i as i64 {
        acc /= rat(j);
    }
    acc
}

/// Parse "3", "-3" or "p/q" into an exact rational.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rat::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(p))
    }
}

/// Render a rational as "p" or "p/q" without spaces.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}
