use std::fmt::Write;

use super::pair::TreePair;
use super::tree::BinTree;

/// The plane diagram as a DOT graph: the domain tree hangs from the top
/// vertex, the range tree grows up from the bottom vertex, and they share
/// their leaves. Each caret is drawn as a vertex labelled by its cell.
pub fn diagram_to_dot(d: &TreePair) -> String {
    fn walk(
        t: &BinTree,
        name: String,
        prefix: &str,
        leaf: &mut usize,
        up: bool,
        out: &mut String,
    ) -> String {
        match t {
            BinTree::Leaf => {
                let id = format!("leaf{}", *leaf);
                *leaf += 1;
                id
            }
            BinTree::Caret(l, r) => {
                let id = format!("{prefix}{name}");
                writeln!(out, "  {id} [shape=triangle, label=\"\"];").unwrap();
                let a = walk(l, format!("{name}0"), prefix, leaf, up, out);
                let b = walk(r, format!("{name}1"), prefix, leaf, up, out);
                for c in [a, b] {
                    if up {
                        writeln!(out, "  {c} -> {id};").unwrap();
                    } else {
                        writeln!(out, "  {id} -> {c};").unwrap();
                    }
                }
                id
            }
        }
    }
    let mut out = String::from(
        "digraph diagram {\n  rankdir=TB;\n  top [shape=point];\n  bottom [shape=point];\n",
    );
    for k in 0..d.leaf_count() {
        writeln!(out, "  leaf{k} [shape=point];").unwrap();
    }
    let mut leaf = 0;
    let root = walk(d.domain(), "r".into(), "d_", &mut leaf, false, &mut out);
    writeln!(out, "  top -> {root} [label=x];").unwrap();
    let mut leaf = 0;
    let root = walk(d.range(), "r".into(), "b_", &mut leaf, true, &mut out);
    writeln!(out, "  {root} -> bottom [label=x];").unwrap();
    out.push_str("}\n");
    out
}
