//! The terminating, confluent rewriting system whose irreducible words are
//! exactly the semi-normal forms.
//!
//! | rule | redex                 | result                  | side condition |
//! |------|-----------------------|-------------------------|----------------|
//! | σ1   | `x_i x_j`             | `x_j x_{i+1}`           | `i > j`        |
//! | σ2   | `x_i^-1 x_j`          | `x_j x_{i+1}^-1`        | `i > j`        |
//! | σ3   | `x_i^-1 x_j`          | `x_{j+1} x_i^-1`        | `j > i`        |
//! | σ4   | `x_i^-1 x_j^-1`       | `x_{j+1}^-1 x_i^-1`     | `j > i`        |
//! | σ5   | `x_i^-1 x_i`          | empty                   |                |
//! | σ6   | `x_i x_i^-1`          | empty                   |                |

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::word::{Letter, Word};

/// Which redex to contract next. All strategies reach the same irreducible
/// word; the choice only matters for exercising confluence.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
    /// Uniformly random redex, seeded.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

/// The rule applicable to the adjacent pair `(a, b)`, if any.
pub fn redex(a: Letter, b: Letter) -> Option<Rule> {
    match (a.inverse, b.inverse) {
        (false, false) => (a.index > b.index).then_some(Rule::S1),
        (true, false) => Some(if a.index > b.index {
            Rule::S2
        } else if b.index > a.index {
            Rule::S3
        } else {
            Rule::S5
        }),
        (true, true) => (b.index > a.index).then_some(Rule::S4),
        (false, true) => (a.index == b.index).then_some(Rule::S6),
    }
}

enum Outcome {
    Swap(Letter, Letter),
    Cancel,
}

fn contract(rule: Rule, a: Letter, b: Letter) -> Outcome {
    match rule {
        Rule::S1 => Outcome::Swap(b, Letter::pos(a.index + 1)),
        Rule::S2 => Outcome::Swap(b, Letter::neg(a.index + 1)),
        Rule::S3 => Outcome::Swap(Letter::pos(b.index + 1), a),
        Rule::S4 => Outcome::Swap(Letter::neg(b.index + 1), a),
        Rule::S5 | Rule::S6 => Outcome::Cancel,
    }
}

/// Contracts the redex at `pos` if there is one. Returns whether a rule fired.
fn step_at(letters: &mut Vec<Letter>, pos: usize) -> bool {
    let (a, b) = (letters[pos], letters[pos + 1]);
    let Some(rule) = redex(a, b) else {
        return false;
    };
    match contract(rule, a, b) {
        Outcome::Swap(c, d) => {
            letters[pos] = c;
            letters[pos + 1] = d;
        }
        Outcome::Cancel => {
            letters.drain(pos..pos + 2);
        }
    }
    true
}

/// Rewrites `w` to its semi-normal form.
pub fn semi_normal_form(w: &Word, strategy: Strategy) -> Word {
    let mut letters = w.0.clone();
    match strategy {
        Strategy::Leftmost => leftmost_from(&mut letters, 0),
        Strategy::Rightmost => {
            // Invariant: no redex strictly to the right of `i`.
            let mut i = letters.len().saturating_sub(2) as isize;
            while i >= 0 && letters.len() >= 2 {
                let p = i as usize;
                if p + 1 < letters.len() && step_at(&mut letters, p) {
                    i = (p as isize + 1).min(letters.len() as isize - 2);
                } else {
                    i -= 1;
                }
            }
        }
        Strategy::Random(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut redexes = Vec::new();
            loop {
                redexes.clear();
                redexes.extend(
                    (0..letters.len().saturating_sub(1))
                        .filter(|&p| redex(letters[p], letters[p + 1]).is_some()),
                );
                if redexes.is_empty() {
                    break;
                }
                let p = redexes[rng.gen_range(0..redexes.len())];
                step_at(&mut letters, p);
            }
        }
    }
    Word(letters)
}

/// Leftmost rewriting assuming no redex lies strictly left of `start`.
pub(crate) fn leftmost_from(letters: &mut Vec<Letter>, start: usize) {
    let mut i = start;
    while i + 1 < letters.len() {
        if step_at(letters, i) {
            i = i.saturating_sub(1);
        } else {
            i += 1;
        }
    }
}

/// True iff no rule applies anywhere in `w`.
pub fn is_irreducible(w: &Word) -> bool {
    w.0.windows(2).all(|p| redex(p[0], p[1]).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word_calculus::parse_word;

    fn snf(s: &str) -> String {
        semi_normal_form(&parse_word(s).unwrap(), Strategy::Leftmost).to_string()
    }

    #[test]
    fn single_rules() {
        assert_eq!(snf("x1 x0"), "x0 x2");
        assert_eq!(snf("x2^-1 x0"), "x0 x3^-1");
        assert_eq!(snf("x0^-1 x2"), "x3 x0^-1");
        assert_eq!(snf("x0^-1 x2^-1"), "x3^-1 x0^-1");
        assert_eq!(snf("x4^-1 x4"), "");
        assert_eq!(snf("x0 x0^-1"), "");
    }

    #[test]
    fn irreducible_words_are_semi_normal() {
        let w = snf("x3 x1^-1 x0 x2 x0^-1 x5");
        let w = parse_word(&w).unwrap();
        assert!(is_irreducible(&w));
        let first_neg = w.0.iter().position(|l| l.inverse).unwrap_or(w.len());
        assert!(w.0[first_neg..].iter().all(|l| l.inverse));
    }
}
