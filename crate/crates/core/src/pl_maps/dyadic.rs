use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::PlError;

/// `numerator / 2^exponent`, kept canonical (odd numerator or exponent 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.canonicalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic::new(0, 0)
    }

    pub fn one() -> Self {
        Dyadic::new(1, 0)
    }

    /// `1 / 2^k`.
    pub fn pow2_inv(k: u32) -> Self {
        Dyadic::new(1, k)
    }

    fn canonicalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exp as u64) as u32;
        if shift > 0 {
            self.num >>= shift;
            self.exp -= shift;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplies by `2^k`.
    pub fn shl(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u64;
            if k <= self.exp as u64 {
                Dyadic::new(self.num.clone(), self.exp - k as u32)
            } else {
                Dyadic::new(&self.num << (k - self.exp as u64), 0)
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    pub fn half(&self) -> Dyadic {
        self.shl(-1)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &other.num, self.exp + other.exp)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), BigInt::one() << self.exp)
    }

    /// `Some` iff `q` has a power-of-two denominator.
    pub fn from_rational(q: &BigRational) -> Option<Dyadic> {
        let d = q.denom();
        let tz = d.trailing_zeros().unwrap_or(0);
        if (d >> tz) != BigInt::one() {
            return None;
        }
        Some(Dyadic::new(q.numer().clone(), tz as u32))
    }

    /// `log2(self)` when `self` is a (positive) power of two.
    pub fn log2_exact(&self) -> Option<i64> {
        if !self.num.is_positive() {
            return None;
        }
        let tz = self.num.trailing_zeros().unwrap_or(0);
        if (&self.num >> tz) != BigInt::one() {
            return None;
        }
        Some(tz as i64 - self.exp as i64)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;

    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(
            (&self.num << (e - self.exp)) + (&rhs.num << (e - rhs.exp)),
            e,
        )
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;

    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;

    fn neg(self) -> Dyadic {
        Dyadic {
            num: -&self.num,
            exp: self.exp,
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

impl FromStr for Dyadic {
    type Err = PlError;

    /// Accepts `a`, `a/2^k` and `a/b` with `b` a power of two.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PlError::Parse(format!("not a dyadic rational: `{s}`"));
        let s = s.trim();
        match s.split_once('/') {
            None => Ok(Dyadic::new(s.parse::<BigInt>().map_err(|_| bad())?, 0)),
            Some((n, d)) => {
                let num: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d = d.trim();
                if let Some(k) = d.strip_prefix("2^") {
                    let k: u32 = k.parse().map_err(|_| bad())?;
                    return Ok(Dyadic::new(num, k));
                }
                let den: BigInt = d.parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Dyadic::from_rational(&BigRational::new(num, den)).ok_or_else(bad)
            }
        }
    }
}

/// Parses `a`, `a/b` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, PlError> {
    let bad = || PlError::Parse(format!("not a rational: `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d = d.trim();
            let d: BigInt = match d.strip_prefix("2^") {
                Some(k) => BigInt::one() << k.parse::<u32>().map_err(|_| bad())?,
                None => d.parse().map_err(|_| bad())?,
            };
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// True iff `q`'s reduced denominator is a power of two.
pub fn is_dyadic(q: &BigRational) -> bool {
    Dyadic::from_rational(q).is_some()
}
