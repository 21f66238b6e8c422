//! Exact rational scalars for torus coordinates.
//!
//! Coordinates are `BigRational` so preimage trees can multiply denominators
//! by |det A| per level without overflow. Values are exchanged in text form
//! as `p/q` (or a bare integer for whole values).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Reduce into the half-open unit interval [0, 1).
pub fn frac(x: &Rat) -> Rat {
    let f = x - x.floor();
    debug_assert!(!f.is_negative() && f < Rat::one());
    f
}

pub fn rat_from_i64(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back through a reduced quotient when numerator/denominator
        // individually overflow f64 range.
        let (n, d) = (x.numer(), x.denom());
        let q = n / d;
        let r = n - &q * d;
        q.to_f64().unwrap_or(f64::NAN) + r.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(f64::NAN)
    })
}

pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(num)?, d))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["0", "1/2", "-7/3", "22"] {
            let r = rat_from_string(s).unwrap();
            assert_eq!(rat_to_string(&r), s.trim_start_matches('+'));
        }
        assert_eq!(rat_to_string(&rat_from_string("4/6").unwrap()), "2/3");
        assert!(rat_from_string("1/0").is_err());
        assert!(rat_from_string("a/b").is_err());
    }

    #[test]
    fn frac_reduces_into_unit_interval() {
        assert_eq!(frac(&rat_from_i64(-1, 3)), rat_from_i64(2, 3));
        assert_eq!(frac(&rat_from_i64(7, 3)), rat_from_i64(1, 3));
        assert_eq!(frac(&rat_from_i64(-6, 3)), Rat::zero());
    }
}
