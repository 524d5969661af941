use std::fmt;
use std::str::FromStr;

use super::tree::BinTree;
use super::DiagramError;
use crate::bits::BitString;
use crate::pl_maps::{PlMap, PrefixMap};
use crate::word_calculus::{normalize, Letter, NormalForm, Word};

/// A diagram over the Dunce hat: the domain tree is read top-down from the
/// top edge, the range tree bottom-up to the bottom edge. Leaf `k` of the
/// domain is glued to leaf `k` of the range.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreePair {
    domain: BinTree,
    range: BinTree,
}

impl TreePair {
    pub fn new(domain: BinTree, range: BinTree) -> Result<Self, DiagramError> {
        if domain.leaf_count() != range.leaf_count() {
            return Err(DiagramError::LeafCount(
                domain.leaf_count(),
                range.leaf_count(),
            ));
        }
        Ok(TreePair { domain, range })
    }

    pub fn trivial() -> Self {
        TreePair {
            domain: BinTree::Leaf,
            range: BinTree::Leaf,
        }
    }

    /// From leaf-address pairs `(u_k, v_k)`.
    pub fn from_leaf_pairs(pairs: &[(BitString, BitString)]) -> Result<Self, DiagramError> {
        let us: Vec<BitString> = pairs.iter().map(|p| p.0.clone()).collect();
        let vs: Vec<BitString> = pairs.iter().map(|p| p.1.clone()).collect();
        match (BinTree::from_leaves(&us), BinTree::from_leaves(&vs)) {
            (Some(domain), Some(range)) => Ok(TreePair { domain, range }),
            _ => Err(DiagramError::NotATree),
        }
    }

    pub fn domain(&self) -> &BinTree {
        &self.domain
    }

    pub fn range(&self) -> &BinTree {
        &self.range
    }

    pub fn leaf_count(&self) -> usize {
        self.domain.leaf_count()
    }

    /// Total number of cells (carets in both trees).
    pub fn cell_count(&self) -> usize {
        2 * self.domain.caret_count()
    }

    pub fn leaf_pairs(&self) -> Vec<(BitString, BitString)> {
        self.domain
            .leaves()
            .into_iter()
            .zip(self.range.leaves())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.domain.is_leaf()
    }

    /// Positions `j` where leaves `j, j+1` are siblings in both trees.
    pub fn dipoles(&self) -> Vec<usize> {
        let pairs = self.leaf_pairs();
        (0..pairs.len().saturating_sub(1))
            .filter(|&j| {
                siblings(&pairs[j].0, &pairs[j + 1].0) && siblings(&pairs[j].1, &pairs[j + 1].1)
            })
            .collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.dipoles().is_empty()
    }

    pub fn inverse(&self) -> TreePair {
        TreePair {
            domain: self.range.clone(),
            range: self.domain.clone(),
        }
    }

    pub fn to_prefix_map(&self) -> PrefixMap {
        PrefixMap::new(self.leaf_pairs()).expect("tree leaves form complete codes")
    }

    pub fn from_prefix_map(m: &PrefixMap) -> TreePair {
        TreePair::from_leaf_pairs(m.pairs()).expect("prefix map sides are complete codes")
    }

    pub fn to_plmap(&self) -> PlMap {
        self.to_prefix_map().to_plmap()
    }

    /// The reduced pair of `f`.
    pub fn from_plmap(f: &PlMap) -> TreePair {
        TreePair::from_prefix_map(&PrefixMap::from_plmap(f))
    }
}

fn siblings(a: &BitString, b: &BitString) -> bool {
    let n = a.len();
    n > 0 && b.len() == n && a.0[..n - 1] == b.0[..n - 1] && !a.0[n - 1] && b.0[n - 1]
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {}", self.domain, self.range)
    }
}

impl FromStr for TreePair {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (d, r) = s.split_once('|').ok_or(DiagramError::Parse {
            position: s.len(),
            message: "expected `domain | range`".into(),
        })?;
        let shift = |e: DiagramError| match e {
            DiagramError::Parse { position, message } => DiagramError::Parse {
                position: position + d.len() + 1,
                message,
            },
            other => other,
        };
        TreePair::new(d.parse()?, r.parse().map_err(shift)?)
    }
}

/// `x_0` is `((()())()) | (()(()()))`; `x_i` hangs `x_{i-1}` under the
/// right child of a caret on both sides.
pub fn generator_diagram(i: usize) -> TreePair {
    let mut d = BinTree::caret(BinTree::single(), BinTree::Leaf);
    let mut r = BinTree::caret(BinTree::Leaf, BinTree::single());
    for _ in 0..i {
        d = BinTree::caret(BinTree::Leaf, d);
        r = BinTree::caret(BinTree::Leaf, r);
    }
    TreePair {
        domain: d,
        range: r,
    }
}

fn letter_diagram(l: Letter) -> TreePair {
    let g = generator_diagram(l.index);
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

/// Removes the dipole at leaf position `j` (which must be one).
fn collapse(pairs: &mut Vec<(BitString, BitString)>, j: usize) {
    let (u, v) = pairs.remove(j + 1);
    let parent = |b: &BitString| BitString(b.0[..b.len() - 1].to_vec());
    pairs[j] = (parent(&u), parent(&v));
}

/// Removes dipoles until none is left, choosing each time among the
/// available positions with `choose` (given the sorted candidate list).
pub fn reduce_dipoles_with(d: &TreePair, mut choose: impl FnMut(&[usize]) -> usize) -> TreePair {
    let mut pairs = d.leaf_pairs();
    loop {
        let cands: Vec<usize> = (0..pairs.len().saturating_sub(1))
            .filter(|&j| {
                siblings(&pairs[j].0, &pairs[j + 1].0) && siblings(&pairs[j].1, &pairs[j + 1].1)
            })
            .collect();
        if cands.is_empty() {
            break;
        }
        let j = cands[choose(&cands) % cands.len()];
        collapse(&mut pairs, j);
    }
    TreePair::from_leaf_pairs(&pairs).expect("dipole removal keeps trees")
}

pub fn reduce_dipoles(d: &TreePair) -> TreePair {
    // A single left-to-right sweep with backtracking by one position is enough:
    // collapsing at j can only create a new dipole at j - 1 or j.
    let mut pairs = d.leaf_pairs();
    let mut j = 0;
    while j + 1 < pairs.len() {
        if siblings(&pairs[j].0, &pairs[j + 1].0) && siblings(&pairs[j].1, &pairs[j + 1].1) {
            collapse(&mut pairs, j);
            j = j.saturating_sub(1);
        } else {
            j += 1;
        }
    }
    TreePair::from_leaf_pairs(&pairs).expect("dipole removal keeps trees")
}

/// The product diagram `a` then `b` over the common refinement of
/// `range(a)` and `domain(b)`, without dipole reduction.
pub fn concat(a: &TreePair, b: &TreePair) -> TreePair {
    let pa = a.leaf_pairs();
    let pb = b.leaf_pairs();
    let mut out = Vec::with_capacity(pa.len() + pb.len());
    let (mut i, mut k) = (0, 0);
    while i < pa.len() && k < pb.len() {
        let (u, v) = &pa[i];
        let (s, t) = &pb[k];
        if v == s {
            out.push((u.clone(), t.clone()));
            i += 1;
            k += 1;
        } else if v.is_prefix_of(s) {
            let w = BitString(s.0[v.len()..].to_vec());
            out.push((u.concat(&w), t.clone()));
            k += 1;
            if k == pb.len() || !v.is_prefix_of(&pb[k].0) {
                i += 1;
            }
        } else {
            debug_assert!(s.is_prefix_of(v));
            let w = BitString(v.0[s.len()..].to_vec());
            out.push((u.clone(), t.concat(&w)));
            i += 1;
            if i == pa.len() || !s.is_prefix_of(&pa[i].1) {
                k += 1;
            }
        }
    }
    TreePair::from_leaf_pairs(&out).expect("refinement of complete codes")
}

pub fn concat_reduce(a: &TreePair, b: &TreePair) -> TreePair {
    reduce_dipoles(&concat(a, b))
}

pub fn word_to_diagram(w: &Word) -> TreePair {
    w.letters().iter().fold(TreePair::trivial(), |acc, &l| {
        concat_reduce(&acc, &letter_diagram(l))
    })
}

/// Exponent of `x_k` contributed by leaf address `u` at position `k`.
fn leaf_exponent(u: &BitString) -> usize {
    let t = u.0.iter().rev().take_while(|&&b| !b).count();
    let prefix = &u.0[..u.len() - t];
    if t >= 1 && prefix.iter().all(|&b| b) {
        t - 1
    } else {
        t
    }
}

fn tree_word(t: &BinTree) -> Word {
    t.leaves()
        .iter()
        .enumerate()
        .flat_map(|(k, u)| std::iter::repeat_n(Letter::pos(k), leaf_exponent(u)))
        .collect()
}

/// The normal form of the element a (reduced) diagram represents.
///
/// Each tree contributes a positive word read off its leaf depths; the
/// element is the domain word times the inverse of the range word.
pub fn diagram_to_word(d: &TreePair) -> NormalForm {
    normalize(&tree_word(d.domain()).concat(&tree_word(d.range()).inverse()))
}
