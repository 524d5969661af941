use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::automaton::{Cell, TwoAutomaton};
use super::CoreError;
use crate::dunce_diagrams::{BinTree, TreePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellRecord {
    pub top: usize,
    pub left: usize,
    pub right: usize,
}

/// An isomorphism-invariant encoding of a folded automaton: edges are
/// relabelled `0..n` with the base as `0`, cells are sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalCore {
    pub base: usize,
    pub edges: Vec<usize>,
    pub cells: Vec<CellRecord>,
}

/// Relabels breadth-first from the base. An edge is reached either
/// downward, as a child of the unique cell on a labelled top, or upward, as
/// the top of the unique cell on a labelled bottom pair; upward steps are
/// taken only when the queue is empty, smallest bottom pair first.
pub fn core_canonical(a: &TwoAutomaton) -> Result<CanonicalCore, CoreError> {
    if !a.is_folded() {
        return Err(CoreError::NotFolded(
            "canonical form needs a folded automaton".into(),
        ));
    }
    let cells: Vec<Cell> = a.canonical_cells();
    let n_edges = a.edge_classes().len();
    let mut label: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::new();
    label.insert(a.base(), 0);
    queue.push_back(a.base());
    loop {
        while let Some(e) = queue.pop_front() {
            if let Some(c) = a.cell_with_top(e) {
                for child in [c.left, c.right] {
                    if !label.contains_key(&child) {
                        label.insert(child, label.len());
                        queue.push_back(child);
                    }
                }
            }
        }
        let up = cells
            .iter()
            .filter(|c| !label.contains_key(&c.top))
            .filter_map(|c| Some(((*label.get(&c.left)?, *label.get(&c.right)?), c.top)))
            .min();
        match up {
            Some((_, top)) => {
                label.insert(top, label.len());
                queue.push_back(top);
            }
            None => break,
        }
    }
    if label.len() != n_edges {
        return Err(CoreError::Disconnected(n_edges - label.len()));
    }
    let mut out: Vec<CellRecord> = cells
        .iter()
        .map(|c| CellRecord {
            top: label[&c.top],
            left: label[&c.left],
            right: label[&c.right],
        })
        .collect();
    out.sort();
    Ok(CanonicalCore {
        base: 0,
        edges: (0..n_edges).collect(),
        cells: out,
    })
}

impl CanonicalCore {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CoreError> {
        let c: CanonicalCore =
            serde_json::from_str(s).map_err(|e| CoreError::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), CoreError> {
        let ok = self.edges.contains(&self.base)
            && self.cells.iter().all(|c| {
                [c.top, c.left, c.right]
                    .iter()
                    .all(|e| self.edges.contains(e))
            });
        if ok {
            Ok(())
        } else {
            Err(CoreError::Parse("cell refers to an unknown edge".into()))
        }
    }

    /// Edges as ellipse nodes, cells as triangles pointing from their top
    /// edge to their left and right bottom edges.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph core {\n");
        for &e in &self.edges {
            let shape = if e == self.base {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(s, "  e{e} [shape={shape}, label=\"e{e}\"];").unwrap();
        }
        for (i, c) in self.cells.iter().enumerate() {
            writeln!(s, "  c{i} [shape=triangle, label=\"c{i}\"];").unwrap();
            writeln!(s, "  e{} -> c{i} [label=\"top\"];", c.top).unwrap();
            writeln!(s, "  c{i} -> e{} [label=\"left\"];", c.left).unwrap();
            writeln!(s, "  c{i} -> e{} [label=\"right\"];", c.right).unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Parses the DOT subset written by [`CanonicalCore::to_dot`].
    pub fn from_dot(s: &str) -> Result<Self, CoreError> {
        let bad = |line: &str| CoreError::Parse(format!("unexpected DOT line `{line}`"));
        let id = |tok: &str, p: char| tok.strip_prefix(p).and_then(|t| t.parse::<usize>().ok());
        let mut edges = Vec::new();
        let mut base = None;
        let mut partial: HashMap<usize, [Option<usize>; 3]> = HashMap::new();
        for line in s.lines().map(str::trim) {
            if line.is_empty() || line.starts_with("digraph") || line == "}" {
                continue;
            }
            let body = line.strip_suffix(';').ok_or_else(|| bad(line))?;
            let (head, attrs) = body.split_once(" [").ok_or_else(|| bad(line))?;
            if let Some((a, b)) = head.split_once(" -> ") {
                let slot = if attrs.contains("\"top\"") {
                    0
                } else if attrs.contains("\"left\"") {
                    1
                } else if attrs.contains("\"right\"") {
                    2
                } else {
                    return Err(bad(line));
                };
                let (cell, edge) = if slot == 0 { (b, a) } else { (a, b) };
                let cell = id(cell, 'c').ok_or_else(|| bad(line))?;
                let edge = id(edge, 'e').ok_or_else(|| bad(line))?;
                partial.entry(cell).or_default()[slot] = Some(edge);
            } else if let Some(e) = id(head, 'e') {
                edges.push(e);
                if attrs.contains("doublecircle") {
                    base = Some(e);
                }
            } else if id(head, 'c').is_some() {
                partial.entry(id(head, 'c').unwrap()).or_default();
            } else {
                return Err(bad(line));
            }
        }
        let mut cells = Vec::new();
        for (c, slots) in partial {
            match slots {
                [Some(top), Some(left), Some(right)] => cells.push(CellRecord { top, left, right }),
                _ => return Err(CoreError::Parse(format!("cell c{c} is incomplete"))),
            }
        }
        cells.sort();
        let core = CanonicalCore {
            base: base.ok_or_else(|| CoreError::Parse("no base edge".into()))?,
            edges,
            cells,
        };
        core.validate()?;
        Ok(core)
    }

    /// Acceptance read off the encoding alone, as in [`TwoAutomaton::accepts`].
    pub fn accepts(&self, d: &TreePair) -> bool {
        let by_top: HashMap<usize, &CellRecord> = self.cells.iter().map(|c| (c.top, c)).collect();
        let by_bottom: HashMap<(usize, usize), usize> = self
            .cells
            .iter()
            .map(|c| ((c.left, c.right), c.top))
            .collect();
        fn down(
            t: &BinTree,
            e: usize,
            m: &HashMap<usize, &CellRecord>,
            out: &mut Vec<usize>,
        ) -> bool {
            match t {
                BinTree::Leaf => {
                    out.push(e);
                    true
                }
                BinTree::Caret(l, r) => match m.get(&e) {
                    Some(c) => down(l, c.left, m, out) && down(r, c.right, m, out),
                    None => false,
                },
            }
        }
        fn up(
            t: &BinTree,
            leaves: &mut std::slice::Iter<usize>,
            m: &HashMap<(usize, usize), usize>,
        ) -> Option<usize> {
            match t {
                BinTree::Leaf => leaves.next().copied(),
                BinTree::Caret(l, r) => {
                    let a = up(l, leaves, m)?;
                    let b = up(r, leaves, m)?;
                    m.get(&(a, b)).copied()
                }
            }
        }
        let mut leaves = Vec::new();
        down(d.domain(), self.base, &by_top, &mut leaves)
            && up(d.range(), &mut leaves.iter(), &by_bottom) == Some(self.base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings_core::build_core;
    use crate::word_calculus::{parse_word, Word};

    fn core(gens: &[&str]) -> CanonicalCore {
        let gens: Vec<Word> = gens.iter().map(|s| parse_word(s).unwrap()).collect();
        core_canonical(&build_core(&gens)).unwrap()
    }

    #[test]
    fn generating_set_independence() {
        assert_eq!(
            core(&["x0 x2", "x1 x2"]),
            core(&["x0 x2", "x1 x2", "x0 x2 x1 x2"])
        );
        assert_eq!(core(&["x0"]), core(&["x0^-1"]));
        assert_ne!(core(&["x0"]), core(&["x1"]));
        let fig = core(&["x0", "x1 x2 x1^-1"]);
        let d = |s: &str| crate::dunce_diagrams::word_to_diagram(&parse_word(s).unwrap());
        assert!(fig.accepts(&d("x0 x1 x2^-1 x1^-1")));
        assert!(!fig.accepts(&d("x1")));
    }

    #[test]
    fn export_round_trips() {
        let c = core(&["x0", "x1 x2 x1^-1"]);
        assert_eq!(c.edges.len(), 6);
        assert_eq!(c.cells.len(), 5);
        assert_eq!(CanonicalCore::from_json(&c.to_json()).unwrap(), c);
        assert_eq!(CanonicalCore::from_dot(&c.to_dot()).unwrap(), c);
        assert!(CanonicalCore::from_json("{\"base\":3,\"edges\":[0],\"cells\":[]}").is_err());
    }
}
