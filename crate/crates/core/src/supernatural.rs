//! Supernatural numbers: formal products `∏ p^{n_p}` with `n_p ∈ ℕ ∪ {∞}`
//! and finite support.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::primes::{is_prime, prime_factors};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    fn add(self, other: Exponent) -> Exponent {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => {
                Exponent::Finite(a.checked_add(b).expect("supernatural exponent overflow"))
            }
            _ => Exponent::Infinite,
        }
    }
}

/// Canonical form: no zero exponents are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SupernaturalNumber {
    exps: BTreeMap<u64, Exponent>,
}

impl SupernaturalNumber {
    pub fn one() -> SupernaturalNumber {
        SupernaturalNumber::default()
    }

    pub fn from_natural(n: u128) -> Result<SupernaturalNumber> {
        if n == 0 {
            return Err(Error::Arithmetic("0 is not a supernatural number".into()));
        }
        Ok(SupernaturalNumber {
            exps: prime_factors(n).into_iter().map(|(p, e)| (p, Exponent::Finite(e))).collect(),
        })
    }

    pub fn prime_power(p: u64, e: Exponent) -> Result<SupernaturalNumber> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut exps = BTreeMap::new();
        if e != Exponent::Finite(0) {
            exps.insert(p, e);
        }
        Ok(SupernaturalNumber { exps })
    }

    /// Exponent of `p` (zero outside the support).
    pub fn exponent(&self, p: u64) -> Exponent {
        self.exps.get(&p).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_finite(&self) -> bool {
        self.exps.values().all(|e| matches!(e, Exponent::Finite(_)))
    }

    /// The natural number this represents, if finite and small enough.
    pub fn to_natural(&self) -> Option<u128> {
        self.exps.iter().try_fold(1u128, |acc, (&p, e)| match e {
            Exponent::Finite(k) => (p as u128).checked_pow(*k).and_then(|q| acc.checked_mul(q)),
            Exponent::Infinite => None,
        })
    }

    fn combine(&self, other: &Self, f: impl Fn(Exponent, Exponent) -> Exponent) -> SupernaturalNumber {
        let mut exps = BTreeMap::new();
        for p in self.support().chain(other.support()) {
            let e = f(self.exponent(p), other.exponent(p));
            if e != Exponent::Finite(0) {
                exps.insert(p, e);
            }
        }
        SupernaturalNumber { exps }
    }

    pub fn multiply(&self, other: &Self) -> SupernaturalNumber {
        self.combine(other, Exponent::add)
    }

    pub fn lcm(&self, other: &Self) -> SupernaturalNumber {
        self.combine(other, Exponent::max)
    }

    pub fn gcd(&self, other: &Self) -> SupernaturalNumber {
        self.combine(other, Exponent::min)
    }

    /// Whether `self` divides `other` (componentwise `≤`).
    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().all(|(&p, &e)| e <= other.exponent(p))
    }

    /// The `c` with `divisor · c = self`. Fails when `divisor` does not
    /// divide `self`, or when both have exponent `∞` at some prime.
    pub fn divide_exact(&self, divisor: &Self) -> Result<SupernaturalNumber> {
        let mut exps = self.exps.clone();
        for (&p, &d) in &divisor.exps {
            let quotient = match (self.exponent(p), d) {
                (Exponent::Infinite, Exponent::Infinite) => {
                    return Err(Error::Arithmetic(format!("{p}^inf / {p}^inf is indeterminate")));
                }
                (Exponent::Infinite, Exponent::Finite(_)) => Exponent::Infinite,
                (Exponent::Finite(a), Exponent::Finite(b)) if a >= b => Exponent::Finite(a - b),
                _ => return Err(Error::Arithmetic(format!("{divisor} does not divide {self}"))),
            };
            if quotient == Exponent::Finite(0) {
                exps.remove(&p);
            } else {
                exps.insert(p, quotient);
            }
        }
        Ok(SupernaturalNumber { exps })
    }

    /// Restriction to the primes in `pi`.
    pub fn pi_part(&self, pi: &[u64]) -> SupernaturalNumber {
        SupernaturalNumber { exps: self.exps.iter().filter(|(p, _)| pi.contains(p)).map(|(&p, &e)| (p, e)).collect() }
    }

    pub fn is_pi_number(&self, pi: &[u64]) -> bool {
        self.support().all(|p| pi.contains(&p))
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return f.write_str("1");
        }
        for (i, (p, e)) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{p}")?,
                Exponent::Finite(k) => write!(f, "{p}^{k}")?,
                Exponent::Infinite => write!(f, "{p}^inf")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SupernaturalNumber {
    type Err = Error;

    /// Accepts forms like `2^inf*3^2*5` and `1`; repeated primes multiply.
    fn from_str(s: &str) -> Result<SupernaturalNumber> {
        let bad = |msg: String| Error::Parse { line: None, msg };
        let s = s.trim();
        if s == "1" {
            return Ok(SupernaturalNumber::one());
        }
        let mut acc = SupernaturalNumber::one();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (factor, None),
            };
            let p: u64 = base.parse().map_err(|_| bad(format!("bad prime {base:?} in {s:?}")))?;
            let e = match exp {
                None => Exponent::Finite(1),
                Some("inf") | Some("∞") => Exponent::Infinite,
                Some(e) => Exponent::Finite(e.parse().map_err(|_| bad(format!("bad exponent {e:?} in {s:?}")))?),
            };
            acc = acc.multiply(&SupernaturalNumber::prime_power(p, e)?);
        }
        Ok(acc)
    }
}

impl Serialize for SupernaturalNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sn(s: &str) -> SupernaturalNumber {
        s.parse().unwrap()
    }

    #[test]
    fn products_and_lcms() {
        assert_eq!(sn("2^inf*3").multiply(&sn("2")), sn("2^inf*3"));
        assert_eq!(sn("2^inf*3").lcm(&sn("2*5")), sn("2^inf*3*5"));
        assert_eq!(SupernaturalNumber::one().multiply(&sn("7^2")), sn("7^2"));
    }

    #[test]
    fn exact_division() {
        assert_eq!(sn("2^inf*3").divide_exact(&sn("2*3")).unwrap(), sn("2^inf"));
        assert_eq!(sn("2^3*5").divide_exact(&sn("2^3*5")).unwrap(), SupernaturalNumber::one());
        assert!(sn("2^3").divide_exact(&sn("2^inf")).is_err());
        assert!(sn("2^inf").divide_exact(&sn("2^inf")).is_err());
        assert!(sn("3").divide_exact(&sn("2")).is_err());
    }

    #[test]
    fn pi_parts() {
        assert_eq!(sn("2^inf*3*5").pi_part(&[2, 3]), sn("2^inf*3"));
        assert!(SupernaturalNumber::from_natural(8).unwrap().is_pi_number(&[2]));
        assert_eq!(sn("2*3").pi_part(&[]), SupernaturalNumber::one());
    }

    #[test]
    fn text_form() {
        assert_eq!(sn("5*2^inf*3^2").to_string(), "2^inf*3^2*5");
        assert_eq!(SupernaturalNumber::from_natural(18).unwrap().to_string(), "2*3^2");
        assert_eq!(sn("2^0*3").to_string(), "3");
        assert_eq!(sn("1").to_string(), "1");
        assert!("4".parse::<SupernaturalNumber>().is_err());
        assert!("2^x".parse::<SupernaturalNumber>().is_err());
        assert_eq!(sn("2*2").to_natural(), Some(4));
    }
}
