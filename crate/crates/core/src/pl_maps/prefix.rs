use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::Dyadic;
use super::plmap::PlMap;
use super::PlError;
use crate::bits::{is_ordered_complete_code, BitString};

/// An eventually periodic binary expansion `.preperiod(period)` of a
/// rational in `[0,1]`.
///
/// Canonical form: dyadic points have an empty period and no trailing
/// zeros, except `1` which is `.(1)`; otherwise the period is primitive and
/// cannot be rolled back into the preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryPoint {
    preperiod: BitString,
    period: BitString,
}

impl BinaryPoint {
    pub fn new(preperiod: BitString, period: BitString) -> Self {
        let mut p = BinaryPoint { preperiod, period };
        p.canonicalize();
        p
    }

    pub fn zero() -> Self {
        BinaryPoint::new(BitString::new(), BitString::new())
    }

    pub fn one() -> Self {
        BinaryPoint::new(BitString::new(), BitString(vec![true]))
    }

    pub fn preperiod(&self) -> &BitString {
        &self.preperiod
    }

    pub fn period(&self) -> &BitString {
        &self.period
    }

    pub fn is_dyadic(&self) -> bool {
        self.period.is_empty()
    }

    fn canonicalize(&mut self) {
        let pre = &mut self.preperiod.0;
        let per = &mut self.period.0;
        if per.iter().all(|&b| !b) {
            per.clear();
        }
        if per.is_empty() {
            while pre.last() == Some(&false) {
                pre.pop();
            }
            return;
        }
        if per.iter().all(|&b| b) {
            // .p0(1) = .p1, and .(1) = 1 stays as it is
            while pre.last() == Some(&true) {
                pre.pop();
            }
            if pre.is_empty() {
                per.truncate(1);
            } else {
                *pre.last_mut().unwrap() = true;
                per.clear();
            }
            return;
        }
        let n = per.len();
        if let Some(d) =
            (1..n).find(|d| n.is_multiple_of(*d) && (0..n).all(|i| per[i] == per[i % d]))
        {
            per.truncate(d);
        }
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
    }

    /// Bit `k` (0-based) of the infinite expansion.
    pub fn bit(&self, k: usize) -> bool {
        let m = self.preperiod.len();
        if k < m {
            self.preperiod.0[k]
        } else if self.period.is_empty() {
            false
        } else {
            self.period.0[(k - m) % self.period.len()]
        }
    }

    pub fn starts_with(&self, u: &BitString) -> bool {
        u.0.iter().enumerate().all(|(k, &b)| self.bit(k) == b)
    }

    /// The expansion with its first `n` bits removed.
    pub fn shift(&self, n: usize) -> BinaryPoint {
        let m = self.preperiod.len();
        if n <= m {
            return BinaryPoint::new(
                BitString(self.preperiod.0[n..].to_vec()),
                self.period.clone(),
            );
        }
        let mut per = self.period.0.clone();
        if !per.is_empty() {
            let r = (n - m) % per.len();
            per.rotate_left(r);
        }
        BinaryPoint::new(BitString::new(), BitString(per))
    }

    pub fn prepend(&self, v: &BitString) -> BinaryPoint {
        BinaryPoint::new(v.concat(&self.preperiod), self.period.clone())
    }

    pub fn to_rational(&self) -> BigRational {
        let m = self.preperiod.len();
        let value = |bits: &BitString| {
            bits.0
                .iter()
                .fold(BigInt::zero(), |acc, &b| (acc << 1) + if b { 1 } else { 0 })
        };
        let scale = BigInt::one() << m;
        let mut q = BigRational::new(value(&self.preperiod), scale.clone());
        if !self.period.is_empty() {
            let p = self.period.len();
            let den = ((BigInt::one() << p) - 1) * scale;
            q += BigRational::new(value(&self.period), den);
        }
        q
    }

    pub fn from_rational(q: &BigRational) -> Result<BinaryPoint, PlError> {
        if *q < BigRational::zero() || *q > BigRational::one() {
            return Err(PlError::OutOfRange(q.to_string()));
        }
        if q.is_one() {
            return Ok(BinaryPoint::one());
        }
        let den = q.denom().clone();
        let mut r = q.numer().clone();
        let mut bits = Vec::new();
        let mut seen: HashMap<BigInt, usize> = HashMap::new();
        while !r.is_zero() {
            if let Some(&start) = seen.get(&r) {
                let period = bits.split_off(start);
                return Ok(BinaryPoint::new(BitString(bits), BitString(period)));
            }
            seen.insert(r.clone(), bits.len());
            r <<= 1;
            let b = r >= den;
            if b {
                r -= &den;
            }
            bits.push(b);
        }
        Ok(BinaryPoint::new(BitString(bits), BitString::new()))
    }

    pub fn from_dyadic(d: &Dyadic) -> Result<BinaryPoint, PlError> {
        BinaryPoint::from_rational(&d.to_rational())
    }
}

impl fmt::Display for BinaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.preperiod.is_empty() && self.period.is_empty() {
            return f.write_str(".0");
        }
        write!(f, ".{}", self.preperiod)?;
        if !self.period.is_empty() {
            write!(f, "({})", self.period)?;
        }
        Ok(())
    }
}

impl FromStr for BinaryPoint {
    type Err = PlError;

    /// `.bits` optionally followed by `(bits)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| PlError::Parse(format!("binary point `{s}`: {m}"));
        let body = s
            .trim()
            .strip_prefix('.')
            .ok_or_else(|| bad("must start with `.`"))?;
        let (pre, per) = match body.split_once('(') {
            None => (body, ""),
            Some((pre, rest)) => {
                let per = rest
                    .strip_suffix(')')
                    .ok_or_else(|| bad("unclosed period"))?;
                if per.is_empty() {
                    return Err(bad("empty period"));
                }
                (pre, per)
            }
        };
        let pre: BitString = pre.parse().map_err(|e: String| bad(&e))?;
        let per: BitString = per.parse().map_err(|e: String| bad(&e))?;
        Ok(BinaryPoint::new(pre, per))
    }
}

/// A finite list of prefix substitutions `u_i -> v_i`; both sides are
/// complete prefix codes listed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixMap {
    pairs: Vec<(BitString, BitString)>,
}

impl PrefixMap {
    pub fn new(pairs: Vec<(BitString, BitString)>) -> Result<Self, PlError> {
        let us: Vec<BitString> = pairs.iter().map(|p| p.0.clone()).collect();
        let vs: Vec<BitString> = pairs.iter().map(|p| p.1.clone()).collect();
        if !is_ordered_complete_code(&us) {
            return Err(PlError::Invalid(
                "domain side is not an ordered complete prefix code".into(),
            ));
        }
        if !is_ordered_complete_code(&vs) {
            return Err(PlError::Invalid(
                "range side is not an ordered complete prefix code".into(),
            ));
        }
        Ok(PrefixMap { pairs })
    }

    pub fn identity() -> Self {
        PrefixMap {
            pairs: vec![(BitString::new(), BitString::new())],
        }
    }

    pub fn pairs(&self) -> &[(BitString, BitString)] {
        &self.pairs
    }

    pub fn apply(&self, p: &BinaryPoint) -> BinaryPoint {
        if *p == BinaryPoint::zero() || *p == BinaryPoint::one() {
            return p.clone();
        }
        let (u, v) = self
            .pairs
            .iter()
            .find(|(u, _)| p.starts_with(u))
            .expect("complete prefix code covers every expansion");
        p.shift(u.len()).prepend(v)
    }

    /// Breakpoints `(.u_i, .v_i)` plus `(1, 1)`.
    pub fn to_plmap(&self) -> PlMap {
        let mut pts: Vec<(Dyadic, Dyadic)> = self
            .pairs
            .iter()
            .map(|(u, v)| (bits_value(u), bits_value(v)))
            .collect();
        pts.push((Dyadic::one(), Dyadic::one()));
        PlMap::from_breakpoints(pts).expect("prefix maps are elements of F")
    }

    /// The coarsest prefix map of `f`: split standard dyadic intervals until
    /// `f` is linear on each and maps it onto a standard dyadic interval.
    pub fn from_plmap(f: &PlMap) -> PrefixMap {
        let mut pairs = Vec::new();
        let mut stack = vec![BitString::new()];
        while let Some(u) = stack.pop() {
            match standard_image(f, &u) {
                Some(v) => pairs.push((u, v)),
                None => {
                    stack.push(u.child(true));
                    stack.push(u.child(false));
                }
            }
        }
        PrefixMap { pairs }
    }
}

impl fmt::Display for PrefixMap {
    /// One pair per line: `u -> v`, with `ε` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: &BitString| {
            if b.is_empty() {
                "ε".to_string()
            } else {
                b.to_string()
            }
        };
        for (i, (u, v)) in self.pairs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} -> {}", show(u), show(v))?;
        }
        Ok(())
    }
}

/// `.u` as a dyadic number.
fn bits_value(u: &BitString) -> Dyadic {
    let n =
        u.0.iter()
            .fold(BigInt::zero(), |acc, &b| (acc << 1) + if b { 1 } else { 0 });
    Dyadic::new(n, u.len() as u32)
}

/// If `f` is linear on the interval of `u` and maps it onto a standard
/// dyadic interval, that interval's address.
fn standard_image(f: &PlMap, u: &BitString) -> Option<BitString> {
    let a = bits_value(u);
    let b = &a + &Dyadic::pow2_inv(u.len() as u32);
    if f.breakpoints().iter().any(|(x, _)| a < *x && *x < b) {
        return None;
    }
    let fa = f.evaluate(&a);
    let width = &f.evaluate(&b) - &fa;
    let m = -width.log2_exact()?;
    if m < 0 || fa.exponent() as i64 > m {
        return None;
    }
    let k = fa.shl(m);
    let bits = k.numerator().to_str_radix(2);
    let m = m as usize;
    let mut v = vec![false; m];
    if !k.is_zero() {
        for (i, c) in bits.chars().rev().enumerate() {
            v[m - 1 - i] = c == '1';
        }
    }
    Some(BitString(v))
}

pub fn apply_prefix(m: &PrefixMap, p: &BinaryPoint) -> BinaryPoint {
    m.apply(p)
}
