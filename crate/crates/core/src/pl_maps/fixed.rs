use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::dyadic::{is_dyadic, Dyadic};
use super::plmap::PlMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPiece {
    Point(BigRational),
    /// Closed interval `[a, b]` with `a < b`.
    Interval(Dyadic, Dyadic),
}

impl FixedPiece {
    fn lo(&self) -> BigRational {
        match self {
            FixedPiece::Point(q) => q.clone(),
            FixedPiece::Interval(a, _) => a.to_rational(),
        }
    }

    fn hi(&self) -> BigRational {
        match self {
            FixedPiece::Point(q) => q.clone(),
            FixedPiece::Interval(_, b) => b.to_rational(),
        }
    }
}

/// Fixed points of an element, as disjoint sorted pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSet {
    pub pieces: Vec<FixedPiece>,
}

impl FixedSet {
    pub fn contains(&self, q: &BigRational) -> bool {
        self.pieces.iter().any(|p| p.lo() <= *q && *q <= p.hi())
    }

    /// The isolated fixed points, in order.
    pub fn points(&self) -> Vec<BigRational> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                FixedPiece::Point(q) => Some(q.clone()),
                FixedPiece::Interval(..) => None,
            })
            .collect()
    }

    /// True iff the only fixed points are 0 and 1.
    pub fn is_trivial(&self) -> bool {
        self.pieces.len() == 2
            && self.pieces[0] == FixedPiece::Point(BigRational::zero())
            && self.pieces[1] == FixedPiece::Point(BigRational::one())
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| match p {
                FixedPiece::Point(q) => format!("{{{q}}}"),
                FixedPiece::Interval(a, b) => format!("[{a}, {b}]"),
            })
            .collect();
        f.write_str(&parts.join(" u "))
    }
}

pub fn fixed_set(f: &PlMap) -> FixedSet {
    let pts = f.breakpoints();
    let mut raw: Vec<FixedPiece> = Vec::new();
    for (i, &k) in f.slopes().iter().enumerate() {
        let (x0, y0) = &pts[i];
        let x1 = &pts[i + 1].0;
        if k == 0 {
            if x0 == y0 {
                raw.push(FixedPiece::Interval(x0.clone(), x1.clone()));
            }
            continue;
        }
        // y0 + s (t - x0) = t  =>  t = (y0 - s x0) / (1 - s)
        let s = if k > 0 {
            BigRational::from_integer(num_bigint::BigInt::one() << k as u64)
        } else {
            BigRational::new(1.into(), num_bigint::BigInt::one() << (-k) as u64)
        };
        let t = (y0.to_rational() - &s * x0.to_rational()) / (BigRational::one() - &s);
        if x0.to_rational() <= t && t <= x1.to_rational() {
            raw.push(FixedPiece::Point(t));
        }
    }
    let mut pieces: Vec<FixedPiece> = Vec::new();
    for p in raw {
        match pieces.last_mut() {
            Some(last) if p.lo() <= last.hi() => {
                // overlapping or touching: merge
                if p.hi() > last.hi() {
                    let a = match last {
                        FixedPiece::Interval(a, _) => a.clone(),
                        FixedPiece::Point(q) => {
                            Dyadic::from_rational(q).expect("touches an interval")
                        }
                    };
                    let FixedPiece::Interval(_, b) = &p else {
                        unreachable!("a point above last.hi cannot start at or below it")
                    };
                    *last = FixedPiece::Interval(a, b.clone());
                }
            }
            _ => pieces.push(p),
        }
    }
    FixedSet { pieces }
}

/// Minimal components of an element, cut at dyadic fixed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub factors: Vec<PlMap>,
    /// Non-dyadic isolated fixed points inside a support; the factors are
    /// not split there.
    pub non_dyadic_cuts: Vec<BigRational>,
}

impl Components {
    pub fn product(&self) -> PlMap {
        self.factors
            .iter()
            .fold(PlMap::identity(), |acc, g| acc.compose(g))
    }
}

/// `f` restricted to `[a, b]` (both fixed, dyadic), identity elsewhere.
fn restrict(f: &PlMap, a: &Dyadic, b: &Dyadic) -> PlMap {
    let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
    pts.push((a.clone(), a.clone()));
    pts.extend(
        f.breakpoints()
            .iter()
            .filter(|(x, _)| a < x && x < b)
            .cloned(),
    );
    pts.push((b.clone(), b.clone()));
    pts.push((Dyadic::one(), Dyadic::one()));
    pts.dedup_by(|p, q| p.0 == q.0);
    PlMap::from_breakpoints(pts).expect("restriction to a fixed dyadic interval stays in F")
}

pub fn components(f: &PlMap) -> Components {
    let fixed = fixed_set(f);
    let mut factors = Vec::new();
    let mut non_dyadic_cuts = Vec::new();
    // Gaps between consecutive fixed pieces are the open support intervals.
    let mut start: Option<Dyadic> = None;
    for w in fixed.pieces.windows(2) {
        let lo = w[0].hi();
        let hi = w[1].lo();
        if lo == hi {
            continue;
        }
        let a = match start.take() {
            Some(a) => a,
            None => Dyadic::from_rational(&lo).expect("gap opens at a dyadic point"),
        };
        if is_dyadic(&hi) {
            factors.push(restrict(f, &a, &Dyadic::from_rational(&hi).unwrap()));
        } else {
            non_dyadic_cuts.push(hi);
            start = Some(a);
        }
    }
    debug_assert!(start.is_none(), "1 is dyadic");
    Components {
        factors,
        non_dyadic_cuts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl_maps::{parse_rational, word_to_plmap};
    use crate::word_calculus::parse_word;

    fn pl(s: &str) -> PlMap {
        word_to_plmap(&parse_word(s).unwrap())
    }

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn fixed_sets() {
        assert!(fixed_set(&pl("x0")).is_trivial());
        assert_eq!(fixed_set(&pl("x1")).to_string(), "[0, 1/2] u {1}");
        assert!(fixed_set(&pl("x0 x1 x2^-1")).is_trivial());
        assert_eq!(fixed_set(&PlMap::identity()).to_string(), "[0, 1]");
    }

    #[test]
    fn fixed_set_matches_probes() {
        let f = pl("x0 x2 x1^-1 x4");
        let fs = fixed_set(&f);
        for den in 1..40u32 {
            for num in 0..=den {
                let t = BigRational::new(num.into(), den.into());
                assert_eq!(fs.contains(&t), f.evaluate_rational(&t) == t, "{t}");
            }
        }
    }

    #[test]
    fn component_examples() {
        let x0 = pl("x0");
        assert_eq!(components(&x0).factors, vec![x0.clone()]);
        assert!(components(&PlMap::identity()).factors.is_empty());
        let id = PlMap::identity();
        let h = x0.oplus(&x0);
        let c = components(&h);
        assert_eq!(c.factors, vec![x0.oplus(&id), id.oplus(&x0)]);
        assert_eq!(c.product(), h);
    }

    #[test]
    fn non_dyadic_fixed_point_is_reported() {
        let d = |s: &str| s.parse::<Dyadic>().unwrap();
        let f = PlMap::from_breakpoints(
            [
                ("0", "0"),
                ("1/8", "1/16"),
                ("1/4", "9/16"),
                ("1/2", "5/8"),
                ("3/4", "3/4"),
                ("1", "1"),
            ]
            .iter()
            .map(|(x, y)| (d(x), d(y)))
            .collect(),
        )
        .unwrap();
        assert_eq!(fixed_set(&f).to_string(), "{0} u {7/48} u [3/4, 1]");
        let c = components(&f);
        assert_eq!(c.non_dyadic_cuts, vec![q("7/48")]);
        assert_eq!(c.factors, vec![f.clone()]);
    }
}
