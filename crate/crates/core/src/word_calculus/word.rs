use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use super::WordError;

/// A single generator symbol `x_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(index: usize) -> Self {
        Letter {
            index,
            inverse: false,
        }
    }

    pub const fn neg(index: usize) -> Self {
        Letter {
            index,
            inverse: true,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "x{}^-1", self.index)
        } else {
            write!(f, "x{}", self.index)
        }
    }
}

/// An arbitrary word over `{x_0, x_1, ...}^{±1}`, stored letter by letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    /// `x_i`.
    pub fn x(i: usize) -> Self {
        Word(vec![Letter::pos(i)])
    }

    /// `x_i x_j`, the shape of every generator pair used around Jones' subgroup.
    pub fn pair(i: usize, j: usize) -> Self {
        Word(vec![Letter::pos(i), Letter::pos(j)])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Formal inverse: reversed, every sign flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            out.extend_from_slice(&base.0);
        }
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().map(|l| l.index).max()
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    /// Runs of one letter are folded into a single exponent (`x2^3`, `x1^-2`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let exp = run as i64 * l.sign() as i64;
            if exp == 1 {
                write!(f, "x{}", l.index)?;
            } else {
                write!(f, "x{}^{}", l.index, exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

/// Parses `x<n>` tokens with optional `^<signed n>` exponents, separated by
/// whitespace or `*`. The empty string is the identity.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut letters = Vec::new();
    let err = |position: usize, message: &str| WordError::Parse {
        position,
        message: message.to_string(),
    };

    let read_digits = |pos: &mut usize| -> Option<(usize, usize)> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (*pos > start).then_some((start, *pos))
    };

    loop {
        while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b'*') {
            pos += 1;
        }
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'x' {
            return Err(err(pos, "expected generator `x<n>`"));
        }
        pos += 1;
        let (s, e) = read_digits(&mut pos).ok_or_else(|| err(pos, "expected generator index"))?;
        let index: usize = text[s..e]
            .parse()
            .map_err(|_| err(s, "generator index out of range"))?;
        let mut exp: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let neg = if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
                bytes[pos - 1] == b'-'
            } else {
                false
            };
            let (s, e) = read_digits(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
            let mag: i64 = text[s..e]
                .parse()
                .map_err(|_| err(s, "exponent out of range"))?;
            exp = if neg { -mag } else { mag };
        }
        if pos < bytes.len() && !(bytes[pos].is_ascii_whitespace() || bytes[pos] == b'*') {
            return Err(err(pos, "unexpected character"));
        }
        let l = if exp < 0 {
            Letter::neg(index)
        } else {
            Letter::pos(index)
        };
        letters.extend(std::iter::repeat_n(l, exp.unsigned_abs() as usize));
    }
    Ok(Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse_word("x0 x1^-1").unwrap(),
            Word(vec![Letter::pos(0), Letter::neg(1)])
        );
        assert_eq!(parse_word("").unwrap(), Word::empty());
        assert_eq!(parse_word("x2^3").unwrap(), Word(vec![Letter::pos(2); 3]));
        assert_eq!(parse_word("x0*x1 *x2^0").unwrap(), Word::pair(0, 1));
    }

    #[test]
    fn reports_position() {
        match parse_word("x0 y1") {
            Err(WordError::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_word("x").is_err());
        assert!(parse_word("x1^").is_err());
        assert!(parse_word("x1x2").is_err());
    }

    #[test]
    fn printer_folds_runs() {
        let w = parse_word("x0 x1^-1 x1^-1 x2 x2 x2").unwrap();
        assert_eq!(w.to_string(), "x0 x1^-2 x2^3");
        assert_eq!(Word::empty().to_string(), "");
    }
}
