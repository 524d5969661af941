//! Identity chains expressing elements of G over `y0, y1`, and `x0 x2`
//! over Jones' subgroup together with an element outside it.

use super::jones::jones_member;
use super::witness::{LeafTag, WitnessExpr};
use super::SubgroupError;
use crate::word_calculus::{
    coset_minimize, normalize, parity_in_g, skips_indices, Letter, NormalForm, Word,
};

fn j(w: Word) -> WitnessExpr {
    WitnessExpr::jones(w)
}

fn jp(k: usize) -> WitnessExpr {
    j(Word::pair(k, k + 1))
}

fn prod<const N: usize>(parts: [WitnessExpr; N]) -> WitnessExpr {
    WitnessExpr::product(parts)
}

// Elements of G over y0 = x0x2 and y1 = x1x2.

/// `x0^2`.
fn sq0() -> WitnessExpr {
    prod([
        WitnessExpr::y0(),
        WitnessExpr::y1().inv(),
        WitnessExpr::y0(),
    ])
}

/// `x0 x3^-1`.
fn x0x3inv() -> WitnessExpr {
    prod([WitnessExpr::y0().inv(), sq0()])
}

fn x0x1() -> WitnessExpr {
    let x0x4 = prod([x0x3inv().inv(), sq0()]);
    let x0x5inv = prod([x0x4.inv(), sq0()]);
    let x2x5inv = prod([sq0().inv(), sq0().conj(WitnessExpr::y0())]);
    let x0x2inv = prod([x0x5inv, x2x5inv.inv()]);
    prod([sq0(), x0x2inv.inv()])
}

fn sq1() -> WitnessExpr {
    prod([WitnessExpr::y0(), sq0().inv(), x0x1()])
}

fn x0x3() -> WitnessExpr {
    prod([x0x3inv(), sq1().conj(sq0())])
}

/// `x2^2 = (x2 x0) x0^-2 (x0 x2)` with `x2 x0 = x0 x3`.
fn sq2() -> WitnessExpr {
    prod([x0x3(), sq0().inv(), WitnessExpr::y0()])
}

/// `x_n^2`.
fn sq(n: usize) -> WitnessExpr {
    match n {
        0 => sq0(),
        _ if n % 2 == 1 => sq1().conj(sq0().pow((n - 1) / 2)),
        _ => sq2().conj(sq0().pow((n - 2) / 2)),
    }
}

/// `x_n x_{n+1}`.
fn consecutive(n: usize) -> WitnessExpr {
    match n {
        0 => x0x1(),
        1 => WitnessExpr::y1(),
        2 => prod([x0x3(), sq0().inv(), x0x3()]),
        _ if n % 2 == 1 => WitnessExpr::y1().conj(sq0().pow((n - 1) / 2)),
        _ => consecutive(2).conj(sq0().pow((n - 2) / 2)),
    }
}

/// `x_i x_j` for `i <= j`, by induction on `j - i`.
fn positive_pair(i: usize, j: usize) -> WitnessExpr {
    debug_assert!(i <= j);
    if (i, j) == (0, 2) {
        return WitnessExpr::y0();
    }
    if (i, j) == (1, 2) {
        return WitnessExpr::y1();
    }
    match j - i {
        0 => sq(i),
        1 => consecutive(i),
        _ => prod([consecutive(i), sq(i + 1).inv(), positive_pair(i + 1, j)]),
    }
}

/// `a b` for two letters, with signs moved out through squares.
fn letter_pair(a: Letter, b: Letter) -> WitnessExpr {
    let core = if a.index <= b.index {
        positive_pair(a.index, b.index)
    } else {
        // x_i x_j = x_j x_{i+1} for i > j
        positive_pair(b.index, a.index + 1)
    };
    let mut parts = Vec::new();
    if a.inverse {
        parts.push(sq(a.index).inv());
    }
    parts.push(core);
    if b.inverse {
        parts.push(sq(b.index).inv());
    }
    WitnessExpr::product(parts)
}

/// Expresses an element of G over `y0, y1`.
pub fn g_witness(w: &Word) -> Result<WitnessExpr, SubgroupError> {
    if !parity_in_g(w) {
        return Err(SubgroupError::OddParity(w.to_string()));
    }
    let nf = normalize(w).to_word();
    let letters = nf.letters();
    Ok(WitnessExpr::product(
        letters.chunks(2).map(|p| letter_pair(p[0], p[1])),
    ))
}

/// `psi^-1` on G: read a G-witness with `y_i -> x_i`.
pub fn psi_inverse(g: &Word) -> Result<NormalForm, SubgroupError> {
    let e = g_witness(g)?;
    Ok(e.evaluate_with(&|tag, w| {
        debug_assert_eq!(tag, LeafTag::GGen);
        if *w == Word::pair(0, 2) {
            normalize(&Word::x(0))
        } else {
            normalize(&Word::x(1))
        }
    }))
}

/// `x0 x2 = x0^-2 (x0^2 x1 (x0 x1 x2)^-1) x0^2 (x2 x3)` given `e = x0^2`.
fn from_square(e: WitnessExpr) -> WitnessExpr {
    let certified = Word::x(0)
        .pow(2)
        .concat(&Word::x(1))
        .concat(&Word::x(0).concat(&Word::pair(1, 2)).inverse());
    prod([e.clone().inv(), j(certified), e, jp(2)])
}

/// Given `e` evaluating to `x_i x_j` (`i <= j`, `j != i + 1`), derives `x0 x2`.
fn from_pair(i: usize, jx: usize, e: WitnessExpr) -> WitnessExpr {
    debug_assert!(i <= jx && jx != i + 1);
    if i == jx && i > 0 {
        // x_{i-1} x_{i+1} = (x_{i-1} x_i) x_i^-2 (x_i x_{i+1})
        return from_pair(i - 1, i + 1, prod([jp(i - 1), e.inv(), jp(i)]));
    }
    match i {
        0 => match jx {
            0 => from_square(e),
            2 => e,
            // x0^2 = (x0 x1)(x0 x3)(x2 x3)^-1
            3 => from_square(prod([jp(0), e, jp(2).inv()])),
            // x0 x_{j-2} = (x_{j-3} x_{j-2}) (x0 x_j) (x_{j-1} x_j)^-1
            _ => from_pair(0, jx - 2, prod([jp(jx - 3), e, jp(jx - 1).inv()])),
        },
        // x0 x_{j-2} = (x0 x1)(x2 x_j)(x1 x2)^-1
        2 => from_pair(0, jx - 2, prod([jp(0), e, jp(1).inv()])),
        // (x_i x_j)^{(x0 x1)^-1} = x_{i-2} x_{j-2}
        _ if i.is_multiple_of(2) => from_pair(i - 2, jx - 2, e.conj(jp(0).inv())),
        // x_{i+1} x_{j+2} = (x_i x_j)^-1 (x_i x_{i+1}) (x_{j+1} x_{j+2})
        _ => from_pair(i + 1, jx + 2, prod([e.inv(), jp(i), jp(jx + 1)])),
    }
}

/// Derives `x0 x2` from Jones' subgroup and `w`, for `w` outside it.
pub fn augmentation_witness(w: &Word) -> Result<WitnessExpr, SubgroupError> {
    if jones_member(w) {
        return Err(SubgroupError::InJones(w.to_string()));
    }
    let cert = coset_minimize(w);
    let mut parts = Vec::new();
    if !cert.left.is_empty() {
        parts.push(j(cert.left.clone()));
    }
    parts.push(WitnessExpr::input(w));
    if !cert.right.is_empty() {
        parts.push(j(cert.right.clone()));
    }
    let e = WitnessExpr::product(parts);
    let rep = cert.representative.positive().to_vec();

    match rep.len() {
        0 => Err(SubgroupError::Witness(format!(
            "`{w}` minimizes to the identity but is not in Jones' subgroup"
        ))),
        1 => {
            // descend x_k -> x_{k-1} -> ... -> x0, then climb to x2
            let mut e = e;
            for k in (1..=rep[0]).rev() {
                e = prod([jp(k - 1), e.inv()]);
            }
            let x0 = e;
            let x1 = prod([x0.clone().inv(), jp(0)]);
            let x2 = prod([x1.inv(), jp(1)]);
            Ok(prod([x0, x2]))
        }
        2 => Ok(from_pair(rep[0], rep[1], e)),
        _ => {
            let last = *rep.last().unwrap();
            let n = rep.iter().rev().take_while(|&&i| i == last).count();
            let head = &rep[..rep.len() - n];
            if head.is_empty() {
                // (x_j x_{j+1})^{x_j^n} = x_j x_{j+1+n}
                return Ok(from_pair(last, last + 1 + n, jp(last).conj(e)));
            }
            let k = head.len();
            if last < k || !skips_indices(last - k, head) {
                return Err(SubgroupError::Witness(format!(
                    "skip condition fails for the minimized form `{}` of `{w}`",
                    cert.representative
                )));
            }
            // (x_{j-k} x_{j-k+1})^w = x_j x_{j+n+1}
            Ok(from_pair(last, last + n + 1, jp(last - k).conj(e)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroups::jones::psi_map;
    use crate::word_calculus::parse_word;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn building_blocks() {
        let cases: Vec<(WitnessExpr, &str)> = vec![
            (sq0(), "x0^2"),
            (x0x1(), "x0 x1"),
            (sq1(), "x1^2"),
            (sq2(), "x2^2"),
            (x0x3(), "x0 x3"),
            (consecutive(2), "x2 x3"),
            (consecutive(5), "x5 x6"),
            (consecutive(6), "x6 x7"),
            (sq(5), "x5^2"),
            (sq(6), "x6^2"),
            (positive_pair(1, 4), "x1 x4"),
        ];
        for (e, target) in cases {
            assert_eq!(e.evaluate(), normalize(&w(target)), "{target}");
        }
    }

    #[test]
    fn g_witness_examples() {
        assert_eq!(g_witness(&w("x0 x2")).unwrap().to_string(), "y0");
        assert_eq!(g_witness(&w("x0^2")).unwrap().to_string(), "y0 y1^-1 y0");
        let e = g_witness(&w("x1^2")).unwrap();
        assert_eq!(e.evaluate(), normalize(&w("x1^2")));
        assert!(g_witness(&w("x0")).is_err());
        for s in ["x3^-1 x0^-1", "x4 x1^-1", "x2^-1 x5", "x0 x1 x2 x3^-1"] {
            let target = normalize(&w(s));
            assert!(g_witness(&w(s)).unwrap().verify(&target).is_ok(), "{s}");
        }
    }

    #[test]
    fn psi_inverse_examples() {
        assert_eq!(psi_inverse(&w("x0 x2")).unwrap().to_string(), "x0");
        assert_eq!(
            psi_inverse(&w("x0 x1")).unwrap(),
            normalize(&w("x0 x1 x2^-1"))
        );
        assert_eq!(
            psi_inverse(&w("x0^2")).unwrap(),
            normalize(&w("x0 x1^-1 x0"))
        );
        for s in ["x3 x1^-1", "x0^2 x4^-2"] {
            let g = w(s);
            assert_eq!(psi_map(&psi_inverse(&g).unwrap().to_word()), normalize(&g));
        }
    }

    #[test]
    fn augmentation_examples() {
        let target = normalize(&w("x0 x2"));
        let e = augmentation_witness(&w("x0 x2")).unwrap();
        assert_eq!(e, WitnessExpr::input(&w("x0 x2")));
        for s in [
            "x0 x3",
            "x2 x7",
            "x0",
            "x3",
            "x0^2",
            "x1^3",
            "x0 x2 x4 x4",
            "x1^-1 x5",
        ] {
            let e = augmentation_witness(&w(s)).unwrap();
            assert!(e.verify(&target).is_ok(), "{s}: {e}");
        }
        assert!(augmentation_witness(&w("x0 x1")).is_err());
    }
}
