//! Skips, blocks, and reduction of an element inside its double coset of
//! Jones' subgroup `F→ = <x_k x_{k+1} : k ≥ 0>`.

use super::normal_form::{normalize, NormalForm};
use super::word::{Letter, Word};
use super::WordError;

/// `x_i` skips over the positive word `w` (`x_i w = w x_{i+n}`) iff
/// `w[j-1] < i + j - 1` for every 1-based position `j`.
pub fn skips_indices(i: usize, w: &[usize]) -> bool {
    w.iter().enumerate().all(|(j, &ij)| ij + 1 < i + j + 1)
}

pub fn skips(i: usize, w: &NormalForm) -> Result<bool, WordError> {
    if !w.is_positive() {
        return Err(WordError::NotPositive(w.to_string()));
    }
    Ok(skips_indices(i, w.positive()))
}

/// A half-open range `start..end` of positions in a positive normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }
}

/// Distinct first and last letters and `f[j-1] < f[0] + j` for all `j`.
pub fn is_block(f: &[usize]) -> bool {
    match (f.first(), f.last()) {
        (Some(a), Some(b)) if a != b => f.iter().enumerate().all(|(j, &x)| x < f[0] + j + 1),
        _ => false,
    }
}

/// A block whose proper suffix (first letter removed) is not a block.
pub fn is_minimal_block(f: &[usize]) -> bool {
    is_block(f) && !is_block(&f[1..])
}

/// Every contiguous factor of `w` that is a block, ordered by start then end.
pub fn find_blocks_indices(w: &[usize]) -> Vec<Block> {
    let mut out = Vec::new();
    for s in 0..w.len() {
        for e in s + 1..w.len() {
            // The inequality is prefix-closed: once it fails, longer factors fail too.
            if w[e] > w[s] + (e - s) {
                break;
            }
            if w[e] != w[s] {
                out.push(Block {
                    start: s,
                    end: e + 1,
                });
            }
        }
    }
    out
}

pub fn find_blocks(w: &NormalForm) -> Result<Vec<Block>, WordError> {
    if !w.is_positive() {
        return Err(WordError::NotPositive(w.to_string()));
    }
    Ok(find_blocks_indices(w.positive()))
}

/// `normalize(left · input · right) = representative`, where `left` and
/// `right` are products of the elements `x_k x_{k+1}` and their inverses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCertificate {
    pub left: Word,
    pub right: Word,
    pub representative: NormalForm,
}

impl CosetCertificate {
    /// Structural check; membership of `left`/`right` in `F→` is checked by
    /// the subgroup layer against the Jones core.
    pub fn check(&self, input: &Word) -> bool {
        normalize(&self.left.concat(input).concat(&self.right)) == self.representative
            && self.representative.is_positive()
    }

    pub fn is_block_free(&self) -> bool {
        find_blocks_indices(self.representative.positive()).is_empty()
    }
}

fn jones_pair(k: usize) -> Word {
    Word::pair(k, k + 1)
}

struct Reducer {
    left: Word,
    right: Word,
    current: NormalForm,
}

impl Reducer {
    fn new(w: &Word) -> Self {
        Reducer {
            left: Word::empty(),
            right: Word::empty(),
            current: normalize(w),
        }
    }

    fn mul_right(&mut self, g: Word) {
        self.current = self.current.mul(&normalize(&g));
        self.right = self.right.concat(&g);
    }

    fn mul_left(&mut self, g: Word) {
        self.current = normalize(&g).mul(&self.current);
        self.left = g.concat(&self.left);
    }

    /// While the normal form ends in `x_i^-1`, right-multiply by `x_i x_{i+1}`.
    fn positivize(&mut self) {
        while let Some(Letter {
            index,
            inverse: true,
        }) = self.current.last_letter()
        {
            self.mul_right(jones_pair(index));
        }
    }

    fn finish(self) -> CosetCertificate {
        CosetCertificate {
            left: self.left,
            right: self.right,
            representative: self.current,
        }
    }
}

/// Moves `w` to a positive element of `F→ w F→` by right multiplications only.
/// The length never increases.
pub fn coset_positivize(w: &Word) -> CosetCertificate {
    let mut r = Reducer::new(w);
    r.positivize();
    r.finish()
}

/// Picks the minimal block with the leftmost start, shortest first.
fn choose_block(w: &[usize]) -> Option<Block> {
    find_blocks_indices(w)
        .into_iter()
        .find(|b| is_minimal_block(&w[b.start..b.end]))
}

/// Reduces `w` to a positive, block-free element of its double coset.
///
/// Each round positivizes, then if a minimal block `B` remains, shifts it to
/// the front with left multiplications by `(x_j x_{j+1})^-1` (which keep the
/// length or shorten it), and finally left-multiplies by
/// `(x_{i_1} x_{i_1+1})^-1`, which cancels a letter inside `B`. Every round
/// strictly shortens the element.
pub fn coset_minimize(w: &Word) -> CosetCertificate {
    let mut r = Reducer::new(w);
    'round: loop {
        r.positivize();
        let Some(mut block) = choose_block(r.current.positive()) else {
            break;
        };
        let round_len = r.current.len();
        let shape: Vec<usize> = r.current.positive()[block.start..block.end].to_vec();

        while block.start > 0 {
            let j = r.current.positive()[0];
            r.mul_left(jones_pair(j).inverse());
            if r.current.len() < round_len {
                continue 'round;
            }
            // The block survives as a translate, one position further left.
            let start = block.start - 1;
            let pos = r.current.positive();
            let moved = pos.get(start..start + shape.len()).filter(|f| {
                let k = f[0].wrapping_sub(shape[0]);
                f.iter().zip(&shape).all(|(a, b)| a.wrapping_sub(*b) == k)
            });
            assert!(
                moved.is_some(),
                "block translate lost while shifting {} (input {})",
                r.current,
                w
            );
            block = Block {
                start,
                end: start + shape.len(),
            };
        }

        let i1 = r.current.positive()[0];
        r.mul_left(jones_pair(i1).inverse());
        assert!(
            r.current.len() < round_len,
            "block removal did not shorten {} (input {})",
            r.current,
            w
        );
    }
    r.finish()
}
