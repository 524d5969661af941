//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::hash::{Hash, Hasher};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use thompson_core::bits::BitString;
use thompson_core::dunce_diagrams::{
    diagram_to_word, generator_diagram, word_to_diagram, TreePair,
};
use thompson_core::pl_maps::{components, fixed_set, oplus, word_to_plmap, Dyadic, PlMap};
use thompson_core::stallings_core::{
    bouquet, build_core, core_canonical, fold_to_fixpoint, CanonicalCore, FoldOrder, Side,
    TwoAutomaton,
};
use thompson_core::subgroups::{
    augmentation_witness, classify_jones_extension, g_witness, jones_generators, jones_member,
    Extension, Stabilizer, WitnessExpr,
};
use thompson_core::word_calculus::{
    coset_minimize, normalize, normalize_with, parity_in_g, parse_word, Letter, NormalForm,
    Strategy, Word,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn w(s: &str) -> Word {
    parse_word(s).expect("literal word")
}

fn nf(s: &str) -> NormalForm {
    normalize(&w(s))
}

fn random_letter(rng: &mut StdRng, max_index: usize) -> Letter {
    let i = rng.gen_range(0..=max_index);
    if rng.gen_bool(0.5) {
        Letter::pos(i)
    } else {
        Letter::neg(i)
    }
}

fn random_word(rng: &mut StdRng, min_len: usize, max_len: usize, max_index: usize) -> Word {
    let n = rng.gen_range(min_len..=max_len);
    Word((0..n).map(|_| random_letter(rng, max_index)).collect())
}

fn random_product(rng: &mut StdRng, gens: &[Word], max_len: usize) -> Word {
    let n = rng.gen_range(1..=max_len);
    (0..n).fold(Word::empty(), |acc, _| {
        let g = &gens[rng.gen_range(0..gens.len())];
        if rng.gen_bool(0.5) {
            acc.concat(g)
        } else {
            acc.concat(&g.inverse())
        }
    })
}

fn confluence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let strategies = [
        Strategy::Leftmost,
        Strategy::Rightmost,
        Strategy::Random(11),
        Strategy::Random(22),
        Strategy::Random(33),
    ];
    for _ in 0..1000 {
        let word = random_word(&mut rng, 0, 20, 6);
        let base = normalize_with(&word, strategies[0]);
        for s in &strategies[1..] {
            let other = normalize_with(&word, *s);
            ensure(other == base, || {
                format!("{word}: {base} vs {other} under {s:?}")
            })?;
        }
        let again = normalize(&base.to_word());
        ensure(again == base, || format!("not idempotent on {word}"))?;
    }
    Ok("1000 words, 5 strategies, idempotent".into())
}

fn relations() -> Outcome {
    // [a, b] = a^-1 b^-1 a b, and x1^x0 = x2, x1^(x0^2) = x3
    let a = w("x0 x1^-1");
    let mut count = 0;
    for b in [w("x0^-1 x1 x0"), w("x0^-2 x1 x0^2")] {
        let comm = a.inverse().concat(&b.inverse()).concat(&a).concat(&b);
        ensure(normalize(&comm).is_empty(), || {
            format!("commutator with {b}")
        })?;
        count += 1;
    }
    for i in 0..=6 {
        for j in 0..i {
            let rel = Word::letter(Letter::neg(j))
                .concat(&Word::x(i))
                .concat(&Word::x(j))
                .concat(&Word::letter(Letter::neg(i + 1)));
            ensure(normalize(&rel).is_empty(), || {
                format!("x{j}^-1 x{i} x{j} != x{}", i + 1)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} relators reduce to the empty word"))
}

/// A word equal to `w` in F but not letter for letter.
fn disguise(rng: &mut StdRng, word: &Word) -> Word {
    let mut letters = word.0.clone();
    for _ in 0..rng.gen_range(1..=3) {
        let i = rng.gen_range(1..=5);
        let j = rng.gen_range(0..i);
        let rel = Word::letter(Letter::neg(j))
            .concat(&Word::x(i))
            .concat(&Word::x(j))
            .concat(&Word::letter(Letter::neg(i + 1)));
        let v = random_word(rng, 0, 3, 4);
        let insert = v.concat(&rel).concat(&v.inverse());
        let at = rng.gen_range(0..=letters.len());
        letters.splice(at..at, insert.0);
    }
    Word(letters)
}

fn three_way() -> Outcome {
    let mut rng = StdRng::seed_from_u64(3);
    let mut equal = 0;
    for k in 0..500 {
        let a = random_word(&mut rng, 0, 10, 5);
        let b = if k % 2 == 0 {
            disguise(&mut rng, &a)
        } else {
            random_word(&mut rng, 0, 10, 5)
        };
        let by_nf = normalize(&a) == normalize(&b);
        let by_tree = word_to_diagram(&a) == word_to_diagram(&b);
        let by_pl = word_to_plmap(&a) == word_to_plmap(&b);
        ensure(by_nf == by_tree && by_tree == by_pl, || {
            format!("{a} vs {b}: nf {by_nf}, tree {by_tree}, pl {by_pl}")
        })?;
        if k % 2 == 0 {
            ensure(by_nf, || format!("disguised copy of {a} judged different"))?;
        }
        equal += by_nf as usize;
    }
    Ok(format!("500 pairs agree ({equal} equal)"))
}

fn prefix_table(word: &str) -> Vec<(String, String)> {
    word_to_diagram(&w(word))
        .to_prefix_map()
        .pairs()
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect()
}

fn tables() -> Outcome {
    let cases: [(&str, &[(&str, &str)]); 3] = [
        ("x0", &[("00", "0"), ("01", "10"), ("1", "11")]),
        (
            "x1",
            &[("0", "0"), ("100", "10"), ("101", "110"), ("11", "111")],
        ),
        (
            "x0 x1 x2^-1",
            &[
                ("00", "0"),
                ("010", "10"),
                ("011", "1100"),
                ("10", "1101"),
                ("11", "111"),
            ],
        ),
    ];
    for (word, want) in cases {
        let got = prefix_table(word);
        let want: Vec<(String, String)> = want
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        ensure(got == want, || format!("{word}: {got:?}"))?;
    }
    let fixed = fixed_set(&word_to_plmap(&w("x0 x1 x2^-1")));
    ensure(fixed.to_string() == "{0} u {1}", || {
        format!("fixed set of g: {fixed}")
    })?;
    Ok("x0, x1, g tables exact; fixed_set(g) = {0} u {1}".into())
}

// Labels of the two spheres of <x0, x1 x2 x1^-1> as (generator, tree, node address),
// numbered from 1.
const EDGES: [(usize, Side, &str); 20] = [
    (0, Side::Domain, ""),
    (0, Side::Domain, "0"),
    (0, Side::Domain, "00"),
    (0, Side::Domain, "01"),
    (0, Side::Domain, "1"),
    (0, Side::Range, "1"),
    (0, Side::Range, ""),
    (1, Side::Domain, ""),
    (1, Side::Domain, "1"),
    (1, Side::Domain, "0"),
    (1, Side::Domain, "10"),
    (1, Side::Domain, "100"),
    (1, Side::Domain, "101"),
    (1, Side::Domain, "1010"),
    (1, Side::Domain, "1011"),
    (1, Side::Domain, "11"),
    (1, Side::Range, "10"),
    (1, Side::Range, "11"),
    (1, Side::Range, "1"),
    (1, Side::Range, ""),
];

const CELLS: [(usize, Side, &str); 12] = [
    (0, Side::Domain, ""),
    (0, Side::Domain, "0"),
    (0, Side::Range, "1"),
    (0, Side::Range, ""),
    (1, Side::Domain, ""),
    (1, Side::Domain, "1"),
    (1, Side::Domain, "10"),
    (1, Side::Domain, "101"),
    (1, Side::Range, "11"),
    (1, Side::Range, "10"),
    (1, Side::Range, "1"),
    (1, Side::Range, ""),
];

fn labelled(a: &TwoAutomaton, ks: &[usize], cells: bool) -> Vec<usize> {
    let mut v: Vec<usize> = ks
        .iter()
        .map(|&k| {
            let (g, s, addr) = if cells { CELLS[k - 1] } else { EDGES[k - 1] };
            let addr: BitString = addr.parse().expect("address");
            if cells {
                a.cell_id(g, s, &addr)
            } else {
                a.edge_id(g, s, &addr)
            }
            .expect("label exists")
        })
        .collect();
    v.sort();
    v
}

fn canonical(gens: &[Word]) -> CanonicalCore {
    core_canonical(&build_core(gens)).expect("built cores are folded")
}

fn worked_core() -> Outcome {
    let gens = [w("x0"), w("x1 x2 x1^-1")];
    let raw = bouquet(&[generator_diagram(0), word_to_diagram(&gens[1])]);
    let (core, trace) = fold_to_fixpoint(&raw, FoldOrder::Fifo);
    ensure(
        trace.identifies_edges(&labelled(&raw, &[1, 7, 8, 20], false)),
        || format!("e1=e7=e8=e20 missing from\n{trace}"),
    )?;
    ensure(
        trace.identifies_cells(&labelled(&raw, &[1, 4, 5, 12], true)),
        || format!("c1=c4=c5=c12 missing from\n{trace}"),
    )?;

    let classes = |groups: &[&[usize]], cells: bool| {
        let mut v: Vec<Vec<usize>> = groups.iter().map(|g| labelled(&raw, g, cells)).collect();
        v.sort();
        v
    };
    let want_edges = classes(
        &[
            &[1, 7, 8, 20],
            &[2, 3, 10],
            &[4, 11, 15, 17],
            &[5, 6, 9, 16, 18, 19],
            &[12],
            &[13, 14],
        ],
        false,
    );
    let want_cells = classes(
        &[&[1, 4, 5, 12], &[2], &[3, 6, 9, 11], &[7, 10], &[8]],
        true,
    );
    let mut edges = core.edge_classes();
    edges.sort();
    let mut cells = core.cell_classes();
    cells.sort();
    ensure(edges == want_edges, || format!("edge classes {edges:?}"))?;
    ensure(cells == want_cells, || format!("cell classes {cells:?}"))?;

    ensure(!core.accepts(&generator_diagram(1)).unwrap(), || {
        "x1 accepted".into()
    })?;
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..100 {
        let p = random_product(&mut rng, &gens, 6);
        ensure(core.accepts(&word_to_diagram(&p)).unwrap(), || {
            format!("{p} rejected")
        })?;
    }
    let direct = core_canonical(&core).unwrap();
    let alt = canonical(&[w("x0"), w("x0 x1 x2 x1^-1")]);
    ensure(direct == alt, || {
        "alternative generating set gives a different core".into()
    })?;
    let shuffled = core_canonical(&fold_to_fixpoint(&raw, FoldOrder::Shuffled(9)).0).unwrap();
    ensure(direct == shuffled, || "fold order changed the core".into())?;
    Ok(format!(
        "{} edges, {} cells; trace, classes, 100 products, alternative set",
        edges.len(),
        cells.len()
    ))
}

fn jones_core_checks() -> Outcome {
    for n in 0..=8 {
        ensure(jones_member(&Word::pair(n, n + 1)), || {
            format!("x{n} x{} rejected", n + 1)
        })?;
    }
    for s in ["x0", "x1", "x2", "x0^2"] {
        ensure(!jones_member(&w(s)), || format!("{s} accepted"))?;
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut checked = 0;
    while checked < 200 {
        let v = random_word(&mut rng, 1, 8, 5);
        if jones_member(&v) {
            continue;
        }
        let want = if parity_in_g(&v) {
            Extension::G
        } else {
            Extension::F
        };
        let got = classify_jones_extension(&v);
        ensure(got == want, || format!("{v}: {got:?}"))?;
        checked += 1;
    }
    let gens = jones_generators();
    for _ in 0..200 {
        let p = random_product(&mut rng, &gens, 8);
        let got = classify_jones_extension(&p);
        ensure(got == Extension::Jones, || format!("{p}: {got:?}"))?;
    }
    Ok("pairs accepted, x0, x1, x2, x0^2 rejected, 400 classifications".into())
}

/// Every word `x_{p1}..x_{pk} x_{qm}^-1..x_{q1}^-1` with sorted indices that
/// is already in normal form.
fn normal_forms(max_len: usize, max_index: usize) -> Vec<NormalForm> {
    fn sorted(len: usize, max_index: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for mut s in sorted(len - 1, max_index) {
            let lo = s.last().copied().unwrap_or(0);
            for i in lo..=max_index {
                s.push(i);
                out.push(s.clone());
                s.pop();
            }
        }
        out
    }
    let mut out = Vec::new();
    for total in 0..=max_len {
        for p in 0..=total {
            for pos in sorted(p, max_index) {
                for neg in sorted(total - p, max_index) {
                    let mut letters: Vec<Letter> = pos.iter().map(|&i| Letter::pos(i)).collect();
                    letters.extend(neg.iter().rev().map(|&i| Letter::neg(i)));
                    let word = Word(letters);
                    let n = normalize(&word);
                    if n.to_word() == word {
                        out.push(n);
                    }
                }
            }
        }
    }
    out
}

fn witnesses() -> Outcome {
    let mut g_count = 0;
    for n in normal_forms(6, 4).into_iter().filter(|n| n.len() % 2 == 0) {
        let e = g_witness(&n.to_word()).map_err(|e| format!("{n}: {e}"))?;
        e.verify(&n).map_err(|e| format!("{n}: {e}"))?;
        g_count += 1;
    }

    let target = nf("x0 x2");
    let mut pairs = 0;
    for i in 0..=5 {
        for j in 0..=5 {
            if j == i + 1 {
                continue;
            }
            let v = Word::pair(i, j);
            let e = augmentation_witness(&v).map_err(|e| format!("{v}: {e}"))?;
            e.verify(&target).map_err(|e| format!("{v}: {e}"))?;
            pairs += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut random = 0;
    while random < 100 {
        let v = random_word(&mut rng, 3, 8, 5);
        if jones_member(&v) {
            continue;
        }
        let e = augmentation_witness(&v).map_err(|e| format!("{v}: {e}"))?;
        e.verify(&target).map_err(|e| format!("{v}: {e}"))?;
        random += 1;
    }

    let square = nf("x0^-2 x0^2 x1 x2^-1 x1^-1 x0^-1 x0^2 x2 x3");
    ensure(square == target, || {
        format!("x0 x2 identity gives {square}")
    })?;
    ensure(jones_member(&w("x0^2 x1 x2^-1 x1^-1 x0^-1")), || {
        "x0^2 x1 (x0 x1 x2)^-1 not in Jones' subgroup".into()
    })?;
    ensure(nf("x0 x1 x0 x3 x3^-1 x2^-1") == nf("x0^2"), || {
        "x0^2 identity fails".into()
    })?;
    let y = WitnessExpr::product([
        WitnessExpr::y0(),
        WitnessExpr::y1(),
        WitnessExpr::y0().inv(),
        WitnessExpr::y1().inv(),
        WitnessExpr::y0(),
    ]);
    ensure(y.evaluate() == nf("x0 x1"), || {
        format!("y0 y1 y0^-1 y1^-1 y0 = {}", y.evaluate())
    })?;
    Ok(format!(
        "{g_count} G witnesses, {pairs} letter pairs, {random} random, identities exact"
    ))
}

/// Exact minimum of `|l w r|` over `l, r` in the ball `B` of radius 6 in
/// the generators of Jones' subgroup.
///
/// Every element of the ball is even, so `|l w r|` has the parity of `|w|`,
/// and `w` itself is in `B w B`. Only shorter lengths of the same parity
/// need testing, which for these inputs means 0 or 1:
///
/// * 0 is reached iff `w r` lies in `B` for some `r` in `B`;
/// * 1 is reached iff `w r = b x_k^(+-1)` for some `b`, `r` in `B`.
///
/// Reduced diagrams have subadditive caret counts and `x_k` has `k + 2`
/// carets, so `k` is at most `2 c + carets(w) - 2` where `c` bounds the
/// carets over `B`.
struct CosetOracle {
    ball: Vec<NormalForm>,
    members: HashSet<NormalForm>,
    max_carets: usize,
    max_k: usize,
    shifted: HashSet<u64>,
}

fn fingerprint(n: &NormalForm) -> u64 {
    let mut h = DefaultHasher::new();
    n.hash(&mut h);
    h.finish()
}

fn carets(n: &NormalForm) -> usize {
    word_to_diagram(&n.to_word()).domain().caret_count()
}

impl CosetOracle {
    fn new(radius: usize, max_input_carets: usize) -> Self {
        let gens: Vec<NormalForm> = jones_generators()
            .iter()
            .flat_map(|g| [normalize(g), normalize(&g.inverse())])
            .collect();
        let mut members: HashSet<NormalForm> = HashSet::from([NormalForm::identity()]);
        let mut ball = vec![NormalForm::identity()];
        let mut frontier = ball.clone();
        for _ in 0..radius {
            let mut next = Vec::new();
            for b in &frontier {
                for g in &gens {
                    let p = b.mul(g);
                    if members.insert(p.clone()) {
                        next.push(p);
                    }
                }
            }
            ball.extend(next.iter().cloned());
            frontier = next;
        }
        let max_carets = ball.iter().map(carets).max().unwrap_or(0);
        let max_k = 2 * max_carets + max_input_carets - 2;
        let mut shifted = HashSet::new();
        for k in 0..=max_k {
            for l in [Letter::pos(k), Letter::neg(k)] {
                let x = normalize(&Word::letter(l));
                for b in &ball {
                    shifted.insert(fingerprint(&b.mul(&x)));
                }
            }
        }
        CosetOracle {
            ball,
            members,
            max_carets,
            max_k,
            shifted,
        }
    }

    fn reaches_zero(&self, w: &NormalForm) -> bool {
        self.ball.iter().any(|r| self.members.contains(&w.mul(r)))
    }

    fn reaches_one(&self, w: &NormalForm) -> bool {
        assert!(carets(w) + 2 * self.max_carets - 2 <= self.max_k);
        self.ball.iter().any(|r| {
            let p = w.mul(r);
            self.shifted.contains(&fingerprint(&p))
                && (0..=self.max_k).any(|k| {
                    [Letter::pos(k), Letter::neg(k)].into_iter().any(|l| {
                        self.members
                            .contains(&p.mul(&normalize(&Word::letter(l.inv()))))
                    })
                })
        })
    }

    fn minimum(&self, w: &NormalForm) -> usize {
        let n = w.len();
        for target in (n % 2..n).step_by(2) {
            let hit = match target {
                0 => self.reaches_zero(w),
                1 => self.reaches_one(w),
                _ => panic!("the oracle only decides lengths 0 and 1, asked for {target}"),
            };
            if hit {
                return target;
            }
        }
        n
    }
}

fn all_words(max_len: usize, max_index: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..=max_index)
        .flat_map(|i| [Letter::pos(i), Letter::neg(i)])
        .collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|v| letters.iter().map(move |&l| v.concat(&Word::letter(l))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn coset_oracle() -> Outcome {
    let words = all_words(3, 2);
    let forms: Vec<NormalForm> = words.iter().map(normalize).collect();
    let input_carets = forms.iter().map(carets).max().unwrap_or(0);
    let oracle = CosetOracle::new(6, input_carets);
    for (v, n) in words.iter().zip(&forms) {
        let got = coset_minimize(v).representative.len();
        let want = oracle.minimum(n);
        ensure(got == want, || {
            format!("{v}: minimize gives {got}, oracle {want}")
        })?;
    }
    Ok(format!(
        "{} words, ball of {} elements, indices up to {}",
        words.len(),
        oracle.ball.len(),
        oracle.max_k
    ))
}

fn stabilizers() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let mut summary = Vec::new();
    for pts in [&["1/2"][..], &["1/4", "1/2"]] {
        let u: Vec<Dyadic> = pts.iter().map(|p| p.parse().expect("dyadic")).collect();
        let s = Stabilizer::new(&u).map_err(|e| e.to_string())?;
        ensure(s.generators().len() == 2 * u.len() + 2, || {
            format!("{pts:?}: {} generators", s.generators().len())
        })?;
        for g in s.generators() {
            ensure(s.member_pl(g), || format!("{g} moves {pts:?}"))?;
        }
        let mut members = 0;
        for k in 0..200 {
            let v = if k % 2 == 0 {
                random_word(&mut rng, 1, 8, 4)
            } else {
                random_product(&mut rng, s.generators(), 4)
            };
            let pl = s.member_pl(&v);
            let core = s.member_core(&v);
            ensure(pl == core, || format!("{v}: pl {pl}, core {core}"))?;
            members += pl as usize;
        }
        ensure(!s.member_pl(&w("x0")) && !s.member_core(&w("x0")), || {
            format!("x0 accepted for {pts:?}")
        })?;
        summary.push(format!("{{{}}}: {members}/200 members", pts.join(",")));
    }
    Ok(summary.join(", "))
}

fn plmap_word(f: &PlMap) -> Word {
    diagram_to_word(&TreePair::from_plmap(f)).to_word()
}

fn components_closure() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let mut total = 0;
    for _ in 0..100 {
        let f = word_to_plmap(&random_word(&mut rng, 0, 5, 3));
        let g = word_to_plmap(&random_word(&mut rng, 0, 5, 3));
        let h = oplus(&f, &g);
        let parts = components(&h);
        ensure(parts.product() == h, || {
            format!("components of {h} do not multiply back")
        })?;
        let core = build_core(&[plmap_word(&h)]);
        for c in &parts.factors {
            let cw = plmap_word(c);
            ensure(core.accepts(&word_to_diagram(&cw)).unwrap(), || {
                format!("component {cw} of {} rejected", plmap_word(&h))
            })?;
        }
        total += parts.factors.len();
    }
    Ok(format!("100 sums, {total} components accepted"))
}

fn cli_golden() -> Outcome {
    let (n, failures) = common::check_examples();
    ensure(failures.is_empty(), || failures.join("\n"))?;

    let run = |args: &[&str]| {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (out, code) = common::run(&args);
        ensure(code == 0, || format!("{args:?} exited {code}")).map(|_| out)
    };
    let golden = "tests/golden/two_generator_core.json";
    let expected = canonical(&[w("x0"), w("x1 x2 x1^-1")]);
    let parsed = CanonicalCore::from_json(&run(&["core", "--from", golden, "--json"])?)
        .map_err(|e| e.to_string())?;
    ensure(parsed == expected, || "golden JSON core differs".into())?;

    let dot = std::env::temp_dir().join(format!("thompson-acceptance-{}.dot", std::process::id()));
    let dot_arg = dot.to_string_lossy().to_string();
    run(&["core", "x0", "x1 x2 x1^-1", "--dot", &dot_arg])?;
    let text = std::fs::read_to_string(&dot).map_err(|e| e.to_string())?;
    let from_dot = CanonicalCore::from_dot(&text).map_err(|e| e.to_string())?;
    let reread = CanonicalCore::from_json(&run(&["core", "--from", &dot_arg, "--json"])?)
        .map_err(|e| e.to_string())?;
    let _ = std::fs::remove_file(&dot);
    ensure(from_dot == expected && reread == expected, || {
        "DOT round trip differs".into()
    })?;

    let jones = CanonicalCore::from_json(&run(&[
        "core",
        "--gens",
        "tests/golden/jones_gens.txt",
        "--json",
    ])?)
    .map_err(|e| e.to_string())?;
    ensure(jones == canonical(&jones_generators()), || {
        "Jones core JSON differs".into()
    })?;

    for s in ["x0", "x1 x2^-1", "x3 x0^-2 x5", ""] {
        let json: serde_json::Value =
            serde_json::from_str(&run(&["export", s, "--json"])?).map_err(|e| e.to_string())?;
        let pl = serde_json::to_string(&json["plmap"]).map_err(|e| e.to_string())?;
        let back = PlMap::from_json(&json["plmap"]).map_err(|e| e.to_string())?;
        ensure(back == word_to_plmap(&w(s)), || {
            format!("PL JSON of `{s}` differs")
        })?;
        let word = run(&["export", &pl, "--format", "word"])?;
        ensure(word.trim() == normalize(&w(s)).to_string(), || {
            format!("`{s}` through PL JSON gives `{}`", word.trim())
        })?;
        let tree = json["tree_pair"].as_str().unwrap_or_default().to_string();
        let word = run(&["export", &tree, "--format", "word"])?;
        ensure(word.trim() == normalize(&w(s)).to_string(), || {
            format!("`{s}` through its tree pair gives `{}`", word.trim())
        })?;
    }
    Ok(format!("{n} examples, JSON and DOT round trips"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("rewriting confluence", confluence),
        ("presentation relators", relations),
        ("three-way equality oracle", three_way),
        ("prefix tables", tables),
        ("worked 2-core", worked_core),
        ("Jones core", jones_core_checks),
        ("witness engines", witnesses),
        ("coset minimization", coset_oracle),
        ("stabilizers", stabilizers),
        ("components and closure", components_closure),
        ("CLI golden files", cli_golden),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
