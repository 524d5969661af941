use std::fmt;
use std::str::FromStr;

use super::DiagramError;
use crate::bits::BitString;

/// A finite rooted binary tree; every caret is one cell `x -> x x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinTree {
    Leaf,
    Caret(Box<BinTree>, Box<BinTree>),
}

impl BinTree {
    pub fn caret(l: BinTree, r: BinTree) -> BinTree {
        BinTree::Caret(Box::new(l), Box::new(r))
    }

    /// The tree with one caret.
    pub fn single() -> BinTree {
        BinTree::caret(BinTree::Leaf, BinTree::Leaf)
    }

    /// The right vine with `n` leaves.
    pub fn right_comb(n: usize) -> BinTree {
        assert!(n >= 1, "a tree has at least one leaf");
        (1..n).fold(BinTree::Leaf, |t, _| BinTree::caret(BinTree::Leaf, t))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, BinTree::Leaf)
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            BinTree::Leaf => 1,
            BinTree::Caret(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn caret_count(&self) -> usize {
        self.leaf_count() - 1
    }

    /// Leaf addresses, left to right.
    pub fn leaves(&self) -> Vec<BitString> {
        fn go(t: &BinTree, path: &mut Vec<bool>, out: &mut Vec<BitString>) {
            match t {
                BinTree::Leaf => out.push(BitString(path.clone())),
                BinTree::Caret(l, r) => {
                    path.push(false);
                    go(l, path, out);
                    path.pop();
                    path.push(true);
                    go(r, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Rebuilds a tree from its ordered leaf addresses.
    pub fn from_leaves(leaves: &[BitString]) -> Option<BinTree> {
        fn go(leaves: &[BitString], pos: &mut usize, depth: usize) -> Option<BinTree> {
            let next = leaves.get(*pos)?;
            if next.len() == depth {
                *pos += 1;
                return Some(BinTree::Leaf);
            }
            if next.len() < depth {
                return None;
            }
            let l = go(leaves, pos, depth + 1)?;
            let r = go(leaves, pos, depth + 1)?;
            Some(BinTree::caret(l, r))
        }
        let mut pos = 0;
        let t = go(leaves, &mut pos, 0)?;
        (pos == leaves.len() && t.leaves() == leaves).then_some(t)
    }

    /// Replaces leaf `k` (left to right) by a caret.
    pub fn split_leaf(&self, k: usize) -> BinTree {
        let mut leaves = self.leaves();
        let u = leaves.remove(k);
        leaves.splice(k..k, [u.child(false), u.child(true)]);
        BinTree::from_leaves(&leaves).expect("splitting a leaf keeps a complete code")
    }
}

impl fmt::Display for BinTree {
    /// Leaf `()`, caret `(L R)` written without separators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinTree::Leaf => f.write_str("()"),
            BinTree::Caret(l, r) => write!(f, "({l}{r})"),
        }
    }
}

impl FromStr for BinTree {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |pos: usize, m: &str| DiagramError::Parse {
            position: pos,
            message: m.to_string(),
        };
        fn node(
            chars: &[(usize, char)],
            i: &mut usize,
            end: usize,
            err: &dyn Fn(usize, &str) -> DiagramError,
        ) -> Result<BinTree, DiagramError> {
            let pos = |i: usize| chars.get(i).map(|c| c.0).unwrap_or(end);
            match chars.get(*i) {
                Some((_, '(')) => *i += 1,
                _ => return Err(err(pos(*i), "expected `(`")),
            }
            if let Some((_, ')')) = chars.get(*i) {
                *i += 1;
                return Ok(BinTree::Leaf);
            }
            let l = node(chars, i, end, err)?;
            let r = node(chars, i, end, err)?;
            match chars.get(*i) {
                Some((_, ')')) => {
                    *i += 1;
                    Ok(BinTree::caret(l, r))
                }
                _ => Err(err(pos(*i), "expected `)` closing a caret")),
            }
        }
        let mut i = 0;
        let t = node(&chars, &mut i, s.len(), &err)?;
        if let Some((p, _)) = chars.get(i) {
            return Err(err(*p, "trailing input"));
        }
        Ok(t)
    }
}
