use std::sync::{Mutex, OnceLock};

use crate::dunce_diagrams::word_to_diagram;
use crate::stallings_core::{build_core, TwoAutomaton};
use crate::word_calculus::{normalize, parity_in_g, NormalForm, Word};

pub fn jones_generators() -> Vec<Word> {
    (0..3).map(|k| Word::pair(k, k + 1)).collect()
}

/// The folded 2-core of `<x0x1, x1x2, x2x3>`, built once.
pub fn jones_core() -> &'static TwoAutomaton {
    static CORE: OnceLock<TwoAutomaton> = OnceLock::new();
    CORE.get_or_init(|| build_core(&jones_generators()))
}

/// Membership in Jones' subgroup. The subgroup is closed, so core
/// acceptance decides it exactly.
pub fn jones_member(w: &Word) -> bool {
    jones_core()
        .accepts(&word_to_diagram(w))
        .expect("the Jones core is folded")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extension {
    Jones,
    G,
    F,
}

/// Which subgroup `<F→, w>` is.
pub fn classify_jones_extension(w: &Word) -> Extension {
    if jones_member(w) {
        Extension::Jones
    } else if parity_in_g(w) {
        Extension::G
    } else {
        Extension::F
    }
}

/// `psi(x_i)` for every `i` seen so far.
fn psi_images(upto: usize) -> Vec<NormalForm> {
    static CACHE: OnceLock<Mutex<Vec<NormalForm>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        Mutex::new(vec![
            normalize(&Word::pair(0, 2)),
            normalize(&Word::pair(1, 2)),
        ])
    });
    let mut imgs = cache.lock().unwrap_or_else(|e| e.into_inner());
    while imgs.len() <= upto {
        let next = imgs[imgs.len() - 1].conjugate(&imgs[0]);
        imgs.push(next);
    }
    imgs[..=upto].to_vec()
}

/// The isomorphism `F -> G` with `x0 -> x0x2`, `x1 -> x1x2`.
pub fn psi_map(w: &Word) -> NormalForm {
    let Some(top) = w.max_index() else {
        return NormalForm::identity();
    };
    let imgs = psi_images(top);
    w.letters().iter().fold(NormalForm::identity(), |acc, l| {
        let g = &imgs[l.index];
        acc.mul(&if l.inverse { g.inverse() } else { g.clone() })
    })
}

/// Membership in `H = psi^-1(F→)`.
pub fn savchuk_member(w: &Word) -> bool {
    jones_member(&psi_map(w).to_word())
}
