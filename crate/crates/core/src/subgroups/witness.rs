use std::fmt;

use super::jones::jones_member;
use super::SubgroupError;
use crate::word_calculus::{normalize, NormalForm, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LeafTag {
    /// The element whose consequences are being derived.
    InputW,
    /// An element of Jones' subgroup, certified by its 2-core.
    JonesCertified,
    /// A generator `y0 = x0 x2` or `y1 = x1 x2` of G.
    GGen,
    /// A word in F taken at face value.
    FGen,
}

/// An expression over named group elements. Evaluation normalizes at
/// every node; `Conj(a, b)` is `b^-1 a b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessExpr {
    Leaf(LeafTag, Word),
    Product(Vec<WitnessExpr>),
    Inverse(Box<WitnessExpr>),
    Conj(Box<WitnessExpr>, Box<WitnessExpr>),
}

impl WitnessExpr {
    pub fn input(w: &Word) -> Self {
        WitnessExpr::Leaf(LeafTag::InputW, w.clone())
    }

    pub fn jones(w: Word) -> Self {
        WitnessExpr::Leaf(LeafTag::JonesCertified, w)
    }

    pub fn y0() -> Self {
        WitnessExpr::Leaf(LeafTag::GGen, Word::pair(0, 2))
    }

    pub fn y1() -> Self {
        WitnessExpr::Leaf(LeafTag::GGen, Word::pair(1, 2))
    }

    pub fn product(parts: impl IntoIterator<Item = WitnessExpr>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                WitnessExpr::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            WitnessExpr::Product(flat)
        }
    }

    pub fn inv(self) -> Self {
        match self {
            WitnessExpr::Inverse(e) => *e,
            other => WitnessExpr::Inverse(Box::new(other)),
        }
    }

    /// `b^-1 self b`.
    pub fn conj(self, b: WitnessExpr) -> Self {
        match b {
            WitnessExpr::Product(ref p) if p.is_empty() => self,
            _ => WitnessExpr::Conj(Box::new(self), Box::new(b)),
        }
    }

    pub fn pow(&self, n: usize) -> Self {
        WitnessExpr::product(std::iter::repeat_n(self.clone(), n))
    }

    pub fn evaluate(&self) -> NormalForm {
        self.evaluate_with(&|_, w| normalize(w))
    }

    /// Evaluates with leaves mapped through `leaf`.
    pub fn evaluate_with(&self, leaf: &dyn Fn(LeafTag, &Word) -> NormalForm) -> NormalForm {
        match self {
            WitnessExpr::Leaf(tag, w) => leaf(*tag, w),
            WitnessExpr::Product(parts) => parts.iter().fold(NormalForm::identity(), |acc, p| {
                acc.mul(&p.evaluate_with(leaf))
            }),
            WitnessExpr::Inverse(e) => e.evaluate_with(leaf).inverse(),
            WitnessExpr::Conj(a, b) => a.evaluate_with(leaf).conjugate(&b.evaluate_with(leaf)),
        }
    }

    pub fn leaves(&self) -> Vec<(LeafTag, &Word)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(LeafTag, &'a Word)>) {
        match self {
            WitnessExpr::Leaf(tag, w) => out.push((*tag, w)),
            WitnessExpr::Product(parts) => parts.iter().for_each(|p| p.collect_leaves(out)),
            WitnessExpr::Inverse(e) => e.collect_leaves(out),
            WitnessExpr::Conj(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Checks that the expression evaluates to `target` and that every
    /// Jones-certified leaf lies in Jones' subgroup.
    pub fn verify(&self, target: &NormalForm) -> Result<(), SubgroupError> {
        for (tag, w) in self.leaves() {
            if tag == LeafTag::JonesCertified && !jones_member(w) {
                return Err(SubgroupError::Witness(format!(
                    "leaf `{w}` is not in Jones' subgroup"
                )));
            }
        }
        let got = self.evaluate();
        if got != *target {
            return Err(SubgroupError::Witness(format!(
                "expression evaluates to `{got}`, expected `{target}`"
            )));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        match self {
            WitnessExpr::Leaf(..) => 1,
            WitnessExpr::Product(parts) => 1 + parts.iter().map(|p| p.node_count()).sum::<usize>(),
            WitnessExpr::Inverse(e) => 1 + e.node_count(),
            WitnessExpr::Conj(a, b) => 1 + a.node_count() + b.node_count(),
        }
    }
}

impl fmt::Display for WitnessExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessExpr::Leaf(LeafTag::InputW, _) => f.write_str("w"),
            WitnessExpr::Leaf(LeafTag::GGen, w) if *w == Word::pair(0, 2) => f.write_str("y0"),
            WitnessExpr::Leaf(LeafTag::GGen, w) if *w == Word::pair(1, 2) => f.write_str("y1"),
            WitnessExpr::Leaf(LeafTag::GGen, w) => write!(f, "G[{w}]"),
            WitnessExpr::Leaf(LeafTag::JonesCertified, w) => write!(f, "J[{w}]"),
            WitnessExpr::Leaf(LeafTag::FGen, w) => write!(f, "[{w}]"),
            WitnessExpr::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match p {
                        WitnessExpr::Product(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            WitnessExpr::Inverse(e) => match **e {
                WitnessExpr::Leaf(..) => write!(f, "{e}^-1"),
                _ => write!(f, "({e})^-1"),
            },
            WitnessExpr::Conj(a, b) => write!(f, "({a})^({b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_calculus::parse_word;

    #[test]
    fn evaluation_and_display() {
        let e = WitnessExpr::product([
            WitnessExpr::y0(),
            WitnessExpr::y1().inv(),
            WitnessExpr::y0(),
        ]);
        assert_eq!(e.to_string(), "y0 y1^-1 y0");
        assert_eq!(e.evaluate().to_string(), "x0^2");
        let c = WitnessExpr::Leaf(LeafTag::FGen, parse_word("x1").unwrap())
            .conj(WitnessExpr::Leaf(LeafTag::FGen, parse_word("x0").unwrap()));
        assert_eq!(c.evaluate().to_string(), "x2");
    }

    #[test]
    fn verification_checks_certified_leaves() {
        let good = WitnessExpr::jones(parse_word("x0 x1").unwrap());
        assert!(good
            .verify(&normalize(&parse_word("x0 x1").unwrap()))
            .is_ok());
        let bad = WitnessExpr::jones(parse_word("x0").unwrap());
        assert!(bad.verify(&normalize(&parse_word("x0").unwrap())).is_err());
        assert!(good.verify(&NormalForm::identity()).is_err());
    }
}
