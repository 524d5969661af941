use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use thompson_core::dunce_diagrams::{diagram_to_dot, diagram_to_word, word_to_diagram, TreePair};
use thompson_core::pl_maps::{
    components, fixed_set, parse_rational, word_to_plmap, BinaryPoint, PlMap, PrefixMap,
};
use thompson_core::stallings_core::{bouquet, core_canonical, CanonicalCore, FoldOrder};
use thompson_core::subgroups::{
    augmentation_witness, classify_jones_extension, g_witness, jones_generators, jones_member,
    psi_inverse, psi_map, verify_coset_certificate, Extension, NamedSubgroup, WitnessExpr,
};
use thompson_core::word_calculus::{
    coset_minimize, coset_positivize, find_blocks, normalize, parse_word, skips, NormalForm, Word,
};

use crate::{Cli, Command, Format, WitnessKind};

pub struct Output {
    pub text: String,
    pub code: u8,
}

type Res<T> = Result<T, String>;

fn word(s: &str) -> Res<Word> {
    parse_word(s).map_err(|e| format!("cannot parse word `{s}`: {e}"))
}

fn bool_code(b: bool) -> u8 {
    if b {
        0
    } else {
        1
    }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_dot(cli: &Cli, dot: impl FnOnce() -> String) -> Res<()> {
    if let Some(p) = &cli.dot {
        fs::write(p, dot()).map_err(|e| format!("cannot write {}: {e}", p.display()))?;
    }
    Ok(())
}

fn gens_file(cli: &Cli) -> Res<Vec<Word>> {
    let Some(p) = &cli.gens else {
        return Ok(Vec::new());
    };
    read(p)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(word)
        .collect()
}

fn load_core(path: &Path) -> Res<CanonicalCore> {
    let text = read(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        CanonicalCore::from_json(&text)
    } else {
        CanonicalCore::from_dot(&text)
    };
    parsed.map_err(|e| e.to_string())
}

/// The normal form of an element given as a PL map.
fn plmap_word(f: &PlMap) -> NormalForm {
    diagram_to_word(&TreePair::from_plmap(f))
}

fn prefix_json(m: &PrefixMap) -> Value {
    Value::Array(
        m.pairs()
            .iter()
            .map(|(u, v)| json!([u.to_string(), v.to_string()]))
            .collect(),
    )
}

fn text_or_json(cli: &Cli, text: String, value: Value, code: u8) -> Output {
    let text = if cli.json {
        serde_json::to_string_pretty(&value).expect("values serialize")
    } else {
        text
    };
    Output { text, code }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Nf {
            word: w,
            psi,
            psi_inverse: inv,
        } => {
            let w = word(w)?;
            let nf = if *psi {
                psi_map(&w)
            } else if *inv {
                psi_inverse(&w).map_err(|e| e.to_string())?
            } else {
                normalize(&w)
            };
            let value = json!({
                "input": w.to_string(),
                "normal_form": nf.to_string(),
                "length": nf.len(),
                "even": nf.len() % 2 == 0,
            });
            Ok(text_or_json(cli, nf.to_string(), value, 0))
        }
        Command::Mul {
            a,
            b,
            conjugate,
            oplus,
        } => {
            let (a, b) = (word(a)?, word(b)?);
            let r = if *oplus {
                plmap_word(&word_to_plmap(&a).oplus(&word_to_plmap(&b)))
            } else if *conjugate {
                normalize(&a).conjugate(&normalize(&b))
            } else {
                normalize(&a).mul(&normalize(&b))
            };
            let value =
                json!({ "result": r.to_string(), "plmap": word_to_plmap(&r.to_word()).to_json() });
            Ok(text_or_json(cli, r.to_string(), value, 0))
        }
        Command::Inv { word: w } => {
            let r = normalize(&word(w)?).inverse();
            Ok(text_or_json(
                cli,
                r.to_string(),
                json!({ "result": r.to_string() }),
                0,
            ))
        }
        Command::Act { word: w, point } => {
            let w = word(w)?;
            if point.trim_start().starts_with('.') {
                let p: BinaryPoint = point.parse().map_err(|e| format!("{e}"))?;
                let m = word_to_diagram(&w).to_prefix_map();
                let img = m.apply(&p);
                let value = json!({
                    "point": p.to_string(),
                    "image": img.to_string(),
                    "value": img.to_rational().to_string(),
                });
                Ok(text_or_json(cli, img.to_string(), value, 0))
            } else {
                let q = parse_rational(point).map_err(|e| e.to_string())?;
                let img = word_to_plmap(&w).evaluate_rational(&q);
                let value = json!({ "point": q.to_string(), "image": img.to_string() });
                Ok(text_or_json(cli, img.to_string(), value, 0))
            }
        }
        Command::Fix {
            word: w,
            components: comps,
            stabilizes,
        } => {
            let f = word_to_plmap(&word(w)?);
            if let Some(pts) = stabilizes {
                let u = pts
                    .split(',')
                    .map(str::trim)
                    .filter(|p| !p.is_empty())
                    .map(|p| parse_rational(p).map_err(|e| e.to_string()))
                    .collect::<Res<Vec<_>>>()?;
                let ok = f.stabilizes(&u);
                return Ok(text_or_json(
                    cli,
                    ok.to_string(),
                    json!({ "stabilizes": ok }),
                    bool_code(ok),
                ));
            }
            if *comps {
                let c = components(&f);
                let words: Vec<String> = c
                    .factors
                    .iter()
                    .map(|g| plmap_word(g).to_string())
                    .collect();
                let cuts: Vec<String> = c.non_dyadic_cuts.iter().map(|q| q.to_string()).collect();
                let mut text = words.join("\n");
                if !cuts.is_empty() {
                    text.push_str(&format!("\nnon-dyadic cuts: {}", cuts.join(", ")));
                }
                let value = json!({ "components": words, "non_dyadic_cuts": cuts });
                return Ok(text_or_json(cli, text, value, 0));
            }
            let fs = fixed_set(&f);
            let points: Vec<String> = fs.points().iter().map(|q| q.to_string()).collect();
            let value = json!({ "fixed_set": fs.to_string(), "isolated_points": points });
            Ok(text_or_json(cli, fs.to_string(), value, 0))
        }
        Command::Core {
            words,
            trace,
            raw,
            order,
            from,
        } => {
            let (canon, mut lines) = if let Some(p) = from {
                (load_core(p)?, Vec::new())
            } else {
                let mut gens = words.iter().map(|s| word(s)).collect::<Res<Vec<_>>>()?;
                gens.extend(gens_file(cli)?);
                let order = parse_order(order)?;
                let diagrams: Vec<TreePair> = gens.iter().map(word_to_diagram).collect();
                let mut a = bouquet(&diagrams);
                let mut lines = Vec::new();
                if *raw {
                    lines.push(format!("raw edges: {}", a.raw_edge_count()));
                    lines.push(format!("raw cells: {}", a.raw_cell_count()));
                }
                let t = a.fold(order);
                if *trace {
                    lines.extend(t.events.iter().map(|e| e.to_string()));
                }
                (core_canonical(&a).map_err(|e| e.to_string())?, lines)
            };
            write_dot(cli, || canon.to_dot())?;
            if cli.json {
                return Ok(Output {
                    text: canon.to_json(),
                    code: 0,
                });
            }
            lines.push(format!("edges: {}", canon.edges.len()));
            lines.push(format!("cells: {}", canon.cells.len()));
            for (i, c) in canon.cells.iter().enumerate() {
                lines.push(format!("c{i}: e{} -> e{} e{}", c.top, c.left, c.right));
            }
            Ok(Output {
                text: lines.join("\n"),
                code: 0,
            })
        }
        Command::Accept {
            word: w,
            generator,
            core,
        } => {
            let d = word_to_diagram(&word(w)?);
            let canon = match core {
                Some(p) => load_core(p)?,
                None => {
                    let mut gens = generator.iter().map(|s| word(s)).collect::<Res<Vec<_>>>()?;
                    gens.extend(gens_file(cli)?);
                    let diagrams: Vec<TreePair> = gens.iter().map(word_to_diagram).collect();
                    let mut a = bouquet(&diagrams);
                    a.fold(FoldOrder::Fifo);
                    core_canonical(&a).map_err(|e| e.to_string())?
                }
            };
            let ok = canon.accepts(&d);
            let text = if ok { "accepted" } else { "rejected" };
            Ok(text_or_json(
                cli,
                text.into(),
                json!({ "accepted": ok }),
                bool_code(ok),
            ))
        }
        Command::Member {
            word: w,
            subgroup,
            generators,
        } => {
            let h: NamedSubgroup = subgroup.parse().map_err(|e| format!("{e}"))?;
            if *generators {
                let gens = subgroup_generators(&h)?;
                let list: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                return Ok(text_or_json(
                    cli,
                    list.join("\n"),
                    json!({ "generators": list }),
                    0,
                ));
            }
            let w = w
                .as_deref()
                .ok_or("a word is required unless --generators is given")?;
            let ok = h.member(&word(w)?).map_err(|e| e.to_string())?;
            let value = json!({ "subgroup": h.to_string(), "member": ok });
            Ok(text_or_json(cli, ok.to_string(), value, bool_code(ok)))
        }
        Command::Classify { word: w } => {
            let name = match classify_jones_extension(&word(w)?) {
                Extension::Jones => "jones",
                Extension::G => "g",
                Extension::F => "f",
            };
            Ok(text_or_json(
                cli,
                name.into(),
                json!({ "extension": name }),
                0,
            ))
        }
        Command::Witness { word: w, kind } => {
            let w = word(w)?;
            let (expr, target): (WitnessExpr, NormalForm) = match kind {
                WitnessKind::G => (g_witness(&w).map_err(|e| e.to_string())?, normalize(&w)),
                WitnessKind::Augment => (
                    augmentation_witness(&w).map_err(|e| e.to_string())?,
                    normalize(&Word::pair(0, 2)),
                ),
            };
            let value_nf = expr.evaluate();
            let verified = expr.verify(&target);
            if let Err(e) = &verified {
                eprintln!("{e}");
            }
            let ok = verified.is_ok();
            let text =
                format!("expression: {expr}\nvalue: {value_nf}\ntarget: {target}\nverified: {ok}");
            let value = json!({
                "expression": expr.to_string(),
                "value": value_nf.to_string(),
                "target": target.to_string(),
                "verified": ok,
                "nodes": expr.node_count(),
            });
            Ok(text_or_json(cli, text, value, bool_code(ok)))
        }
        Command::Minimize {
            word: w,
            positivize,
            blocks,
            skips: skip,
        } => {
            let w = word(w)?;
            if *blocks || skip.is_some() {
                let nf = normalize(&w);
                if let Some(i) = skip {
                    let ok = skips(*i, &nf).map_err(|e| e.to_string())?;
                    return Ok(text_or_json(
                        cli,
                        ok.to_string(),
                        json!({ "skips": ok }),
                        bool_code(ok),
                    ));
                }
                let bs = find_blocks(&nf).map_err(|e| e.to_string())?;
                let pos = nf.positive();
                let list: Vec<String> = bs
                    .iter()
                    .map(|b| {
                        let block = NormalForm::from_positive(pos[b.start..b.end].to_vec())
                            .expect("a factor of a normal form is one");
                        format!("{}..{}: {}", b.start, b.end, block)
                    })
                    .collect();
                return Ok(text_or_json(
                    cli,
                    list.join("\n"),
                    json!({ "blocks": list }),
                    0,
                ));
            }
            let cert = if *positivize {
                coset_positivize(&w)
            } else {
                coset_minimize(&w)
            };
            let certified = if *positivize {
                cert.check(&w) && jones_member(&cert.right)
            } else {
                verify_coset_certificate(&cert, &w)
            };
            let text = format!(
                "representative: {}\nleft: {}\nright: {}\ncertified: {certified}",
                cert.representative, cert.left, cert.right
            );
            let value = json!({
                "representative": cert.representative.to_string(),
                "length": cert.representative.len(),
                "left": cert.left.to_string(),
                "right": cert.right.to_string(),
                "certified": certified,
            });
            Ok(text_or_json(cli, text, value, bool_code(certified)))
        }
        Command::Export { input, format } => {
            let d = parse_element(input)?;
            write_dot(cli, || diagram_to_dot(&d))?;
            let nf = diagram_to_word(&d);
            let prefix = d.to_prefix_map();
            let pl = prefix.to_plmap();
            if cli.json {
                let value = json!({
                    "normal_form": nf.to_string(),
                    "tree_pair": d.to_string(),
                    "plmap": pl.to_json(),
                    "prefix": prefix_json(&prefix),
                });
                return Ok(text_or_json(cli, String::new(), value, 0));
            }
            let text = match format {
                Format::Word => nf.to_string(),
                Format::Tree => d.to_string(),
                Format::Plmap => pl.to_string(),
                Format::Prefix => prefix.to_string(),
            };
            Ok(Output { text, code: 0 })
        }
    }
}

fn parse_order(s: &str) -> Res<FoldOrder> {
    match s {
        "fifo" => Ok(FoldOrder::Fifo),
        _ => s
            .strip_prefix("shuffled:")
            .and_then(|n| n.parse().ok())
            .map(FoldOrder::Shuffled)
            .ok_or_else(|| format!("unknown order `{s}` (expected fifo or shuffled:<seed>)")),
    }
}

/// A word, a tree pair `D | R` (reduced on input) or a JSON breakpoint list.
fn parse_element(s: &str) -> Res<TreePair> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: Value = serde_json::from_str(t).map_err(|e| format!("invalid JSON: {e}"))?;
        let f = PlMap::from_json(&v).map_err(|e| e.to_string())?;
        Ok(TreePair::from_plmap(&f))
    } else if t.contains('|') {
        let d: TreePair = t.parse().map_err(|e| format!("{e}"))?;
        Ok(thompson_core::dunce_diagrams::reduce_dipoles(&d))
    } else {
        Ok(word_to_diagram(&word(t)?))
    }
}

fn subgroup_generators(h: &NamedSubgroup) -> Res<Vec<Word>> {
    Ok(match h {
        NamedSubgroup::Jones => jones_generators(),
        NamedSubgroup::G => vec![Word::pair(0, 2), Word::pair(1, 2)],
        NamedSubgroup::SavchukH => jones_generators()
            .iter()
            .map(|g| psi_inverse(g).map(|n| n.to_word()))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?,
        NamedSubgroup::Stabilizer(s) => s.generators().to_vec(),
    })
}
