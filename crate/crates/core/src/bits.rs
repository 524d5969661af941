use std::fmt;
use std::str::FromStr;

/// A finite binary word; used for prefix codes, tree addresses and binary
/// expansions. Bit `false` is `0` (left), `true` is `1` (right).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(pub Vec<bool>);

impl BitString {
    pub fn new() -> Self {
        BitString(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn child(&self, bit: bool) -> BitString {
        let mut v = self.0.clone();
        v.push(bit);
        BitString(v)
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BitString(v)
    }

    pub fn all(&self, bit: bool) -> bool {
        self.0.iter().all(|&b| b == bit)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit `{other}`")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString)
    }
}

/// Checks that `code`, in the given order, lists the leaves of a finite
/// binary tree from left to right.
pub fn is_ordered_complete_code(code: &[BitString]) -> bool {
    // Walk the leaves as a depth-first traversal of the tree they span.
    fn walk(code: &[BitString], pos: &mut usize, prefix: &mut Vec<bool>) -> bool {
        let Some(next) = code.get(*pos) else {
            return false;
        };
        if next.0 == *prefix {
            *pos += 1;
            return true;
        }
        if !next.0.starts_with(prefix) {
            return false;
        }
        prefix.push(false);
        let ok = walk(code, pos, prefix);
        prefix.pop();
        if !ok {
            return false;
        }
        prefix.push(true);
        let ok = walk(code, pos, prefix);
        prefix.pop();
        ok
    }
    let mut pos = 0;
    walk(code, &mut pos, &mut Vec::new()) && pos == code.len()
}
