use num_rational::BigRational;

use super::SubgroupError;
use crate::dunce_diagrams::{diagram_to_word, word_to_diagram, TreePair};
use crate::pl_maps::{parse_rational, word_to_plmap, Dyadic, PlMap};
use crate::stallings_core::{build_core, TwoAutomaton};
use crate::word_calculus::Word;

/// Splits `[a, b]` into maximal standard dyadic intervals, left to right.
fn dyadic_pieces(a: &Dyadic, b: &Dyadic) -> Vec<(Dyadic, Dyadic)> {
    let mut out = Vec::new();
    let mut x = a.clone();
    while x < *b {
        let mut e = x.exponent();
        let len = loop {
            let len = Dyadic::pow2_inv(e);
            if &x + &len <= *b {
                break len;
            }
            e += 1;
        };
        out.push((x.clone(), len.clone()));
        x = &x + &len;
    }
    out
}

/// The piecewise-linear map from `[0, 1]` onto `[a, b]` sending the leaves
/// of a right comb onto the maximal dyadic pieces of `[a, b]`.
struct Transport {
    // (source start, log2 source length, target start, log2 target length)
    pieces: Vec<(Dyadic, i64, Dyadic, i64)>,
}

impl Transport {
    fn new(a: &Dyadic, b: &Dyadic) -> Self {
        let targets = dyadic_pieces(a, b);
        let n = targets.len();
        let mut start = Dyadic::zero();
        let pieces = targets
            .into_iter()
            .enumerate()
            .map(|(m, (t, len))| {
                let depth = if m + 1 < n { m + 1 } else { n - 1 };
                let s = start.clone();
                start = &start + &Dyadic::pow2_inv(depth as u32);
                (
                    s,
                    -(depth as i64),
                    t,
                    len.log2_exact().expect("piece lengths are powers of 2"),
                )
            })
            .collect();
        Transport { pieces }
    }

    fn breakpoints(&self) -> impl Iterator<Item = &Dyadic> {
        self.pieces.iter().map(|p| &p.0)
    }

    fn apply(&self, s: &Dyadic) -> Dyadic {
        let i = self.pieces.partition_point(|p| p.0 <= *s).saturating_sub(1);
        let (s0, ls, t0, lt) = &self.pieces[i];
        &(s - s0).shl(lt - ls) + t0
    }
}

/// `g` moved onto `[a, b]` and extended by the identity.
fn transported(g: &PlMap, a: &Dyadic, b: &Dyadic) -> PlMap {
    let t = Transport::new(a, b);
    let g_inv = g.inverse();
    let mut src: Vec<Dyadic> = t.breakpoints().cloned().collect();
    src.extend(g.breakpoints().iter().map(|p| p.0.clone()));
    src.extend(t.breakpoints().map(|s| g_inv.evaluate(s)));
    src.sort();
    src.dedup();
    let mut pts = vec![(Dyadic::zero(), Dyadic::zero())];
    pts.push((a.clone(), a.clone()));
    for s in &src {
        pts.push((t.apply(s), t.apply(&g.evaluate(s))));
    }
    pts.push((b.clone(), b.clone()));
    pts.push((Dyadic::one(), Dyadic::one()));
    pts.dedup();
    PlMap::from_breakpoints(pts).expect("transported maps are elements of F")
}

fn check_points(u: &[Dyadic]) -> Result<Vec<Dyadic>, SubgroupError> {
    let mut pts = u.to_vec();
    pts.sort();
    pts.dedup();
    if let Some(p) = pts.iter().find(|p| p.is_zero() || **p >= Dyadic::one()) {
        return Err(SubgroupError::OutOfRange(p.to_string()));
    }
    Ok(pts)
}

/// Two generators per interval cut out by `u`: copies of `x0` and `x1`
/// supported on that interval.
pub fn stabilizer_generators(u: &[Dyadic]) -> Result<Vec<Word>, SubgroupError> {
    let pts = check_points(u)?;
    let mut cuts = vec![Dyadic::zero()];
    cuts.extend(pts);
    cuts.push(Dyadic::one());
    let mut gens = Vec::new();
    for w in cuts.windows(2) {
        for i in 0..2 {
            let f = transported(&PlMap::generator(i), &w[0], &w[1]);
            gens.push(diagram_to_word(&TreePair::from_plmap(&f)).to_word());
        }
    }
    Ok(gens)
}

/// Parses comma-separated dyadic points, rejecting anything else.
pub fn parse_points(text: &str) -> Result<Vec<Dyadic>, SubgroupError> {
    text.split(',')
        .map(|p| {
            let q = parse_rational(p.trim()).map_err(|e| SubgroupError::Parse(e.to_string()))?;
            Dyadic::from_rational(&q).ok_or_else(|| SubgroupError::NotDyadic(p.trim().to_string()))
        })
        .collect()
}

/// The stabilizer of a finite set of dyadic points, with its 2-core.
#[derive(Clone, Debug)]
pub struct Stabilizer {
    points: Vec<Dyadic>,
    generators: Vec<Word>,
    core: TwoAutomaton,
}

impl Stabilizer {
    pub fn new(u: &[Dyadic]) -> Result<Self, SubgroupError> {
        let points = check_points(u)?;
        let generators = stabilizer_generators(&points)?;
        let core = build_core(&generators);
        Ok(Stabilizer {
            points,
            generators,
            core,
        })
    }

    pub fn points(&self) -> &[Dyadic] {
        &self.points
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    pub fn core(&self) -> &TwoAutomaton {
        &self.core
    }

    /// Membership by evaluation at the points.
    pub fn member_pl(&self, w: &Word) -> bool {
        let q: Vec<BigRational> = self.points.iter().map(|p| p.to_rational()).collect();
        word_to_plmap(w).stabilizes(&q)
    }

    /// Membership by acceptance in the core.
    pub fn member_core(&self, w: &Word) -> bool {
        self.core
            .accepts(&word_to_diagram(w))
            .expect("built cores are folded")
    }

    /// Both routes; they must agree.
    pub fn member(&self, w: &Word) -> Result<bool, SubgroupError> {
        let pl = self.member_pl(w);
        let core = self.member_core(w);
        if pl != core {
            return Err(SubgroupError::RoutesDisagree {
                word: w.to_string(),
                pl,
                core,
            });
        }
        Ok(pl)
    }
}

pub fn stabilizer_member(w: &Word, u: &[Dyadic]) -> Result<bool, SubgroupError> {
    Stabilizer::new(u)?.member(w)
}
