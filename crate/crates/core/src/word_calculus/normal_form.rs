use std::fmt;

use super::rewrite::{leftmost_from, semi_normal_form, Strategy};
use super::word::{Letter, Word};

/// The unique normal form `x_{i_1} ... x_{i_m} x_{j_n}^-1 ... x_{j_1}^-1` of an
/// element of F.
///
/// `positive` is nondecreasing; `negative` lists the indices of the inverse
/// letters in reading order and is therefore nonincreasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    positive: Vec<usize>,
    negative: Vec<usize>,
}

impl NormalForm {
    pub fn identity() -> Self {
        NormalForm::default()
    }

    pub fn positive(&self) -> &[usize] {
        &self.positive
    }

    pub fn negative(&self) -> &[usize] {
        &self.negative
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_positive(&self) -> bool {
        self.negative.is_empty()
    }

    pub fn to_word(&self) -> Word {
        self.positive
            .iter()
            .map(|&i| Letter::pos(i))
            .chain(self.negative.iter().map(|&j| Letter::neg(j)))
            .collect()
    }

    /// Builds a positive normal form from a nondecreasing index sequence.
    pub fn from_positive(indices: Vec<usize>) -> Option<Self> {
        indices
            .windows(2)
            .all(|p| p[0] <= p[1])
            .then_some(NormalForm {
                positive: indices,
                negative: Vec::new(),
            })
    }

    pub fn last_letter(&self) -> Option<Letter> {
        self.negative
            .last()
            .map(|&j| Letter::neg(j))
            .or_else(|| self.positive.last().map(|&i| Letter::pos(i)))
    }

    /// Checks conditions (1) and (2) of the normal form.
    pub fn is_valid(&self) -> bool {
        let sorted = self.positive.windows(2).all(|p| p[0] <= p[1])
            && self.negative.windows(2).all(|p| p[0] >= p[1]);
        let no_cancel = match (self.positive.last(), self.negative.first()) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        };
        sorted && no_cancel && condition_two_violation(&self.positive, &self.negative).is_none()
    }

    pub fn mul(&self, other: &NormalForm) -> NormalForm {
        let mut letters = self.to_word().0;
        let boundary = letters.len().saturating_sub(1);
        letters.extend(other.to_word().0);
        leftmost_from(&mut letters, boundary);
        eliminate(Word(letters))
    }

    pub fn inverse(&self) -> NormalForm {
        // (p q^-1)^-1 = q p^-1 is already semi-normal; condition (2) is symmetric.
        let mut positive = self.negative.clone();
        positive.reverse();
        let mut negative = self.positive.clone();
        negative.reverse();
        NormalForm { positive, negative }
    }

    /// `b^-1 self b`.
    pub fn conjugate(&self, b: &NormalForm) -> NormalForm {
        b.inverse().mul(self).mul(b)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Smallest `i` occurring in both parts with `i + 1` in neither.
fn condition_two_violation(positive: &[usize], negative: &[usize]) -> Option<usize> {
    let occurs = |k: usize| positive.contains(&k) || negative.contains(&k);
    positive
        .iter()
        .copied()
        .filter(|i| negative.contains(i) && !occurs(i + 1))
        .min()
}

/// Turns a semi-normal form into the normal form by repeatedly deleting a
/// pair `x_i`, `x_i^-1` with no `x_{i+1}^{±1}` present and shifting every
/// larger index down by one.
fn eliminate(semi: Word) -> NormalForm {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for l in semi.0 {
        if l.inverse {
            negative.push(l.index);
        } else {
            debug_assert!(negative.is_empty(), "not semi-normal");
            positive.push(l.index);
        }
    }
    while let Some(i) = condition_two_violation(&positive, &negative) {
        let p = positive.iter().rposition(|&k| k == i).expect("present");
        positive.remove(p);
        let n = negative.iter().position(|&k| k == i).expect("present");
        negative.remove(n);
        for k in positive.iter_mut().chain(negative.iter_mut()) {
            if *k > i {
                *k -= 1;
            }
        }
    }
    NormalForm { positive, negative }
}

/// Normal form of `w` with the default (leftmost) rewriting strategy.
pub fn normalize(w: &Word) -> NormalForm {
    normalize_with(w, Strategy::Leftmost)
}

pub fn normalize_with(w: &Word, strategy: Strategy) -> NormalForm {
    eliminate(semi_normal_form(w, strategy))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Multiply,
    Invert,
    Conjugate,
}

/// `multiply`: `a b`; `invert`: `a^-1`; `conjugate`: `b^-1 a b`.
/// `b` is ignored for `Invert` and treated as the identity when absent.
pub fn group_op(kind: GroupOp, a: &Word, b: Option<&Word>) -> NormalForm {
    let a = normalize(a);
    let b = b.map(normalize).unwrap_or_default();
    match kind {
        GroupOp::Multiply => a.mul(&b),
        GroupOp::Invert => a.inverse(),
        GroupOp::Conjugate => a.conjugate(&b),
    }
}

/// Membership in the index-2 subgroup `G = <x0 x2, x1 x2>`: even normal form length.
pub fn parity_in_g(w: &Word) -> bool {
    normalize(w).len().is_multiple_of(2)
}
