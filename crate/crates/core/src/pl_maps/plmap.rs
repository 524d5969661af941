use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use super::dyadic::Dyadic;
use super::PlError;
use crate::word_calculus::{Letter, Word};

/// An element of F as a piecewise-linear homeomorphism of `[0,1]`.
///
/// Stored as its breakpoints `(0,0) = p_0 < p_1 < ... < p_n = (1,1)` with
/// collinear interior points removed, so equal maps have equal lists.
/// Products compose left to right: `(f * g)(t) = g(f(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlMap {
    points: Vec<(Dyadic, Dyadic)>,
    // slopes[i] = log2 of the slope on [x_i, x_{i+1}]
    slopes: Vec<i64>,
}

impl PlMap {
    pub fn identity() -> Self {
        PlMap {
            points: vec![
                (Dyadic::zero(), Dyadic::zero()),
                (Dyadic::one(), Dyadic::one()),
            ],
            slopes: vec![0],
        }
    }

    /// Validates and canonicalizes a breakpoint list.
    pub fn from_breakpoints(points: Vec<(Dyadic, Dyadic)>) -> Result<Self, PlError> {
        let invalid = |m: String| Err(PlError::Invalid(m));
        let (Some(first), Some(last)) = (points.first(), points.last()) else {
            return invalid("empty breakpoint list".into());
        };
        if !first.0.is_zero() || !first.1.is_zero() {
            return invalid(format!(
                "first breakpoint ({}, {}) is not (0, 0)",
                first.0, first.1
            ));
        }
        if last.0 != Dyadic::one() || last.1 != Dyadic::one() {
            return invalid(format!(
                "last breakpoint ({}, {}) is not (1, 1)",
                last.0, last.1
            ));
        }
        let mut slopes = Vec::with_capacity(points.len() - 1);
        for w in points.windows(2) {
            let dx = &w[1].0 - &w[0].0;
            let dy = &w[1].1 - &w[0].1;
            if dx <= Dyadic::zero() || dy <= Dyadic::zero() {
                return invalid(format!(
                    "breakpoints ({}, {}) and ({}, {}) are not strictly increasing",
                    w[0].0, w[0].1, w[1].0, w[1].1
                ));
            }
            let ratio = Dyadic::from_rational(&(dy.to_rational() / dx.to_rational()));
            match ratio.and_then(|r| r.log2_exact()) {
                Some(k) => slopes.push(k),
                None => {
                    return invalid(format!(
                        "slope between x = {} and x = {} is not a power of 2",
                        w[0].0, w[1].0
                    ))
                }
            }
        }
        Ok(PlMap { points, slopes }.canonical())
    }

    fn canonical(self) -> Self {
        let mut points = Vec::with_capacity(self.points.len());
        let mut slopes: Vec<i64> = Vec::with_capacity(self.slopes.len());
        points.push(self.points[0].clone());
        for (i, &s) in self.slopes.iter().enumerate() {
            if slopes.last() == Some(&s) {
                points.pop();
            } else {
                slopes.push(s);
            }
            points.push(self.points[i + 1].clone());
        }
        PlMap { points, slopes }
    }

    /// `x_i`: the identity on `[0, 1 - 2^-i]` and a scaled copy of `x_0` above.
    pub fn generator(i: usize) -> Self {
        let h = Dyadic::pow2_inv(i as u32);
        let a = &Dyadic::one() - &h;
        let q = h.shl(-2);
        let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
        if !a.is_zero() {
            pts.push((a.clone(), a.clone()));
        }
        pts.push((&a + &q, &a + &h.half()));
        pts.push((&a + &h.half(), &(&a + &h) - &q));
        pts.push((Dyadic::one(), Dyadic::one()));
        PlMap::from_breakpoints(pts).expect("generator breakpoints are valid")
    }

    pub fn letter(l: Letter) -> Self {
        let g = PlMap::generator(l.index);
        if l.inverse {
            g.inverse()
        } else {
            g
        }
    }

    pub fn breakpoints(&self) -> &[(Dyadic, Dyadic)] {
        &self.points
    }

    /// `log2` of the slope on each linear piece.
    pub fn slopes(&self) -> &[i64] {
        &self.slopes
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2
    }

    fn piece_of(&self, x: &Dyadic) -> usize {
        // last i with x_i <= x, clamped to a valid piece
        let i = self.points.partition_point(|p| p.0 <= *x);
        i.saturating_sub(1).min(self.slopes.len() - 1)
    }

    pub fn evaluate(&self, x: &Dyadic) -> Dyadic {
        let i = self.piece_of(x);
        let (x0, y0) = &self.points[i];
        &(x - x0).shl(self.slopes[i]) + y0
    }

    pub fn evaluate_rational(&self, q: &BigRational) -> BigRational {
        let i = self
            .points
            .partition_point(|p| p.0.to_rational() <= *q)
            .saturating_sub(1)
            .min(self.slopes.len() - 1);
        let (x0, y0) = &self.points[i];
        let k = self.slopes[i];
        let scale = if k >= 0 {
            BigRational::from_integer(BigInt::one() << k as u64)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-k) as u64)
        };
        (q - x0.to_rational()) * scale + y0.to_rational()
    }

    pub fn inverse(&self) -> PlMap {
        PlMap {
            points: self
                .points
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
            slopes: self.slopes.iter().map(|s| -s).collect(),
        }
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &PlMap) -> PlMap {
        let inv = self.inverse();
        let mut xs: Vec<Dyadic> = self.points.iter().map(|p| p.0.clone()).collect();
        xs.extend(other.points.iter().map(|p| inv.evaluate(&p.0)));
        xs.sort();
        xs.dedup();
        let points = xs
            .into_iter()
            .map(|x| {
                let y = other.evaluate(&self.evaluate(&x));
                (x, y)
            })
            .collect();
        PlMap::from_breakpoints(points).expect("composition stays in F")
    }

    /// `f ⊕ g`: `f` squeezed into `[0,1/2]`, `g` into `[1/2,1]`.
    pub fn oplus(&self, other: &PlMap) -> PlMap {
        let half = Dyadic::new(1, 1);
        let mut points: Vec<(Dyadic, Dyadic)> = self
            .points
            .iter()
            .map(|(x, y)| (x.half(), y.half()))
            .collect();
        points.extend(
            other
                .points
                .iter()
                .skip(1)
                .map(|(x, y)| (&x.half() + &half, &y.half() + &half)),
        );
        PlMap::from_breakpoints(points).expect("direct sum stays in F")
    }

    /// True iff every point of `u` is fixed.
    pub fn stabilizes(&self, u: &[BigRational]) -> bool {
        u.iter().all(|q| self.evaluate_rational(q) == *q)
    }

    /// `[[x_num, x_exp, y_num, y_exp], ...]`; numerators too wide for `i64`
    /// are written as decimal strings.
    pub fn to_json(&self) -> Value {
        fn num(n: &BigInt) -> Value {
            match n.to_i64() {
                Some(v) => json!(v),
                None => json!(n.to_string()),
            }
        }
        Value::Array(
            self.points
                .iter()
                .map(|(x, y)| {
                    json!([
                        num(x.numerator()),
                        x.exponent(),
                        num(y.numerator()),
                        y.exponent()
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<PlMap, PlError> {
        let bad = |m: &str| PlError::Parse(format!("PL map JSON: {m}"));
        let num = |v: &Value| -> Result<BigInt, PlError> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("numerator is not an integer")),
                Value::String(s) => s.parse().map_err(|_| bad("numerator is not an integer")),
                _ => Err(bad("numerator must be a number or string")),
            }
        };
        let exp = |v: &Value| -> Result<u32, PlError> {
            v.as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| bad("exponent must be a small non-negative integer"))
        };
        let rows = v.as_array().ok_or_else(|| bad("expected an array"))?;
        let mut points = Vec::with_capacity(rows.len());
        for row in rows {
            let r = row
                .as_array()
                .filter(|r| r.len() == 4)
                .ok_or_else(|| bad("each breakpoint must have 4 entries"))?;
            points.push((
                Dyadic::new(num(&r[0])?, exp(&r[1])?),
                Dyadic::new(num(&r[2])?, exp(&r[3])?),
            ));
        }
        PlMap::from_breakpoints(points)
    }
}

impl fmt::Display for PlMap {
    /// One breakpoint per line: `x -> y`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{x} -> {y}")?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &PlMap {
    type Output = PlMap;

    fn mul(self, rhs: &PlMap) -> PlMap {
        self.compose(rhs)
    }
}

pub fn word_to_plmap(w: &Word) -> PlMap {
    w.letters()
        .iter()
        .fold(PlMap::identity(), |acc, &l| acc.compose(&PlMap::letter(l)))
}

pub fn oplus(f: &PlMap, g: &PlMap) -> PlMap {
    f.oplus(g)
}

pub fn stabilizes(f: &PlMap, u: &[BigRational]) -> bool {
    f.stabilizes(u)
}
