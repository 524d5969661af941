use std::collections::{HashMap, VecDeque};
use std::fmt;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::CoreError;
use crate::bits::BitString;
use crate::dunce_diagrams::{word_to_diagram, BinTree, TreePair};
use crate::word_calculus::Word;

/// A cell `top -> left right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub top: usize,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Domain,
    Range,
}

/// Where a raw edge or cell of a bouquet comes from: the generator, the
/// tree it sits in, and its node address there. Leaf edges are shared by
/// both trees and are recorded on the domain side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Origin {
    pub generator: usize,
    pub side: Side,
    pub address: BitString,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shared {
    Top,
    Bottom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FoldEvent {
    /// The base edge glued to the boundary edges of the generators.
    Glue { edges: Vec<usize> },
    /// Cell classes sharing a top (or bottom pair) merged; `edges` lists the
    /// edge groups identified as a consequence.
    Fold {
        shared: Shared,
        cells: Vec<usize>,
        edges: Vec<Vec<usize>>,
    },
}

impl fmt::Display for FoldEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |p: &str, v: &[usize]| {
            v.iter()
                .map(|i| format!("{p}{i}"))
                .collect::<Vec<_>>()
                .join("=")
        };
        match self {
            FoldEvent::Glue { edges } => write!(f, "glue {}", join("e", edges)),
            FoldEvent::Fold {
                shared,
                cells,
                edges,
            } => {
                let kind = match shared {
                    Shared::Top => "top",
                    Shared::Bottom => "bottom",
                };
                write!(f, "fold {kind} {}", join("c", cells))?;
                for g in edges.iter().filter(|g| g.len() > 1) {
                    write!(f, "; {}", join("e", g))?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FoldTrace {
    pub events: Vec<FoldEvent>,
}

impl FoldTrace {
    /// True iff some event identifies exactly the raw edges in `group`.
    pub fn identifies_edges(&self, group: &[usize]) -> bool {
        let mut want = group.to_vec();
        want.sort_unstable();
        self.events.iter().any(|e| match e {
            FoldEvent::Glue { edges } => sorted(edges) == want,
            FoldEvent::Fold { edges, .. } => edges.iter().any(|g| sorted(g) == want),
        })
    }

    /// True iff some event merges exactly the raw cells in `group`.
    pub fn identifies_cells(&self, group: &[usize]) -> bool {
        let mut want = group.to_vec();
        want.sort_unstable();
        self.events
            .iter()
            .any(|e| matches!(e, FoldEvent::Fold { cells, .. } if sorted(cells) == want))
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

impl fmt::Display for FoldTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.events.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Processing order of the folding worklist.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FoldOrder {
    #[default]
    Fifo,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Check {
    Top(usize),
    Bottom(usize),
}

/// A 2-automaton over the Dunce hat.
///
/// Raw edges and cells are kept as created; identifications live in two
/// union-find forests whose roots are always the smallest raw id in a class.
#[derive(Clone, Debug)]
pub struct TwoAutomaton {
    edge_parent: Vec<usize>,
    cell_parent: Vec<usize>,
    cells: Vec<Cell>,
    edge_origin: Vec<Option<Origin>>,
    cell_origin: Vec<Origin>,
    base: usize,
    generators: usize,
    pending_glue: Vec<usize>,
    folded: bool,
    top_index: HashMap<usize, usize>,
    bottom_index: HashMap<(usize, usize), usize>,
}

impl TwoAutomaton {
    /// A single base edge and no cells.
    pub fn empty() -> Self {
        TwoAutomaton {
            edge_parent: vec![0],
            cell_parent: Vec::new(),
            cells: Vec::new(),
            edge_origin: vec![None],
            cell_origin: Vec::new(),
            base: 0,
            generators: 0,
            pending_glue: Vec::new(),
            folded: true,
            top_index: HashMap::new(),
            bottom_index: HashMap::new(),
        }
    }

    fn new_edge(&mut self, origin: Origin) -> usize {
        let id = self.edge_parent.len();
        self.edge_parent.push(id);
        self.edge_origin.push(Some(origin));
        id
    }

    /// Adds the sphere of one diagram; its boundary edges wait to be glued
    /// to the base by the next fold.
    ///
    /// Edge numbering per generator: domain-tree nodes in preorder (leaves
    /// included), then range-tree internal non-root nodes in postorder, then
    /// the range root. Cells: domain carets in preorder, then range carets
    /// in reverse preorder.
    pub fn add_generator(&mut self, d: &TreePair) {
        let g = self.generators;
        self.generators += 1;
        let origin = |side, address: &[bool]| Origin {
            generator: g,
            side,
            address: BitString(address.to_vec()),
        };

        let mut dom_edges: Vec<(Vec<bool>, usize)> = Vec::new();
        let mut stack: Vec<(&BinTree, Vec<bool>)> = vec![(d.domain(), Vec::new())];
        while let Some((t, addr)) = stack.pop() {
            let id = if addr.is_empty() && self.cells.is_empty() && self.edge_origin[0].is_none() {
                // The first generator's top edge is the base itself.
                self.edge_origin[0] = Some(origin(Side::Domain, &addr));
                0
            } else {
                let id = self.new_edge(origin(Side::Domain, &addr));
                if addr.is_empty() {
                    self.pending_glue.push(id);
                }
                id
            };
            dom_edges.push((addr.clone(), id));
            if let BinTree::Caret(l, r) = t {
                let mut ra = addr.clone();
                ra.push(true);
                let mut la = addr;
                la.push(false);
                stack.push((r, ra));
                stack.push((l, la));
            }
        }
        let dom: HashMap<Vec<bool>, usize> = dom_edges.into_iter().collect();

        // Range edges: leaves are the domain leaves, in order.
        let leaf_ids: Vec<usize> = d.domain().leaves().iter().map(|u| dom[&u.0]).collect();
        let mut range_ids: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut leaf_pos = 0;
        fn post(
            t: &BinTree,
            addr: &mut Vec<bool>,
            leaf_pos: &mut usize,
            leaf_ids: &[usize],
            out: &mut Vec<(Vec<bool>, Option<usize>)>,
        ) {
            match t {
                BinTree::Leaf => {
                    out.push((addr.clone(), Some(leaf_ids[*leaf_pos])));
                    *leaf_pos += 1;
                }
                BinTree::Caret(l, r) => {
                    addr.push(false);
                    post(l, addr, leaf_pos, leaf_ids, out);
                    addr.pop();
                    addr.push(true);
                    post(r, addr, leaf_pos, leaf_ids, out);
                    addr.pop();
                    out.push((addr.clone(), None));
                }
            }
        }
        let mut order = Vec::new();
        post(
            d.range(),
            &mut Vec::new(),
            &mut leaf_pos,
            &leaf_ids,
            &mut order,
        );
        for (addr, leaf) in order {
            let id = match leaf {
                Some(id) => id,
                None if addr.is_empty() => {
                    let id = self.new_edge(origin(Side::Range, &addr));
                    self.pending_glue.push(id);
                    id
                }
                None => self.new_edge(origin(Side::Range, &addr)),
            };
            range_ids.insert(addr, id);
        }

        let mut domain_carets = Vec::new();
        preorder_carets(d.domain(), &mut Vec::new(), &mut domain_carets);
        for addr in domain_carets {
            self.push_cell(&dom, &addr, origin(Side::Domain, &addr));
        }
        let mut range_carets = Vec::new();
        preorder_carets(d.range(), &mut Vec::new(), &mut range_carets);
        for addr in range_carets.into_iter().rev() {
            self.push_cell(&range_ids, &addr, origin(Side::Range, &addr));
        }
        self.folded = false;
    }

    fn push_cell(&mut self, ids: &HashMap<Vec<bool>, usize>, addr: &[bool], origin: Origin) {
        let child = |b: bool| {
            let mut a = addr.to_vec();
            a.push(b);
            ids[&a]
        };
        let id = self.cells.len();
        self.cells.push(Cell {
            top: ids[addr],
            left: child(false),
            right: child(true),
        });
        self.cell_parent.push(id);
        self.cell_origin.push(origin);
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    pub fn raw_edge_count(&self) -> usize {
        self.edge_parent.len()
    }

    pub fn raw_cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn raw_cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// Raw edge with the given origin.
    pub fn edge_id(&self, generator: usize, side: Side, address: &BitString) -> Option<usize> {
        self.edge_origin.iter().position(|o| {
            o.as_ref().is_some_and(|o| {
                o.generator == generator && o.side == side && o.address == *address
            })
        })
    }

    /// Raw cell with the given origin.
    pub fn cell_id(&self, generator: usize, side: Side, address: &BitString) -> Option<usize> {
        self.cell_origin
            .iter()
            .position(|o| o.generator == generator && o.side == side && o.address == *address)
    }

    pub fn edge_origin(&self, e: usize) -> Option<&Origin> {
        self.edge_origin.get(e).and_then(|o| o.as_ref())
    }

    fn find_edge(&mut self, e: usize) -> usize {
        let mut r = e;
        while self.edge_parent[r] != r {
            r = self.edge_parent[r];
        }
        let mut x = e;
        while self.edge_parent[x] != r {
            let next = self.edge_parent[x];
            self.edge_parent[x] = r;
            x = next;
        }
        r
    }

    fn find_cell(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.cell_parent[r] != r {
            r = self.cell_parent[r];
        }
        let mut x = c;
        while self.cell_parent[x] != r {
            let next = self.cell_parent[x];
            self.cell_parent[x] = r;
            x = next;
        }
        r
    }

    /// Canonical class of a raw edge.
    pub fn edge_class(&self, e: usize) -> usize {
        let mut r = e;
        while self.edge_parent[r] != r {
            r = self.edge_parent[r];
        }
        r
    }

    pub fn cell_class(&self, c: usize) -> usize {
        let mut r = c;
        while self.cell_parent[r] != r {
            r = self.cell_parent[r];
        }
        r
    }

    /// Edge classes as sorted lists of raw ids, ordered by representative.
    pub fn edge_classes(&self) -> Vec<Vec<usize>> {
        classes((0..self.edge_parent.len()).map(|e| self.edge_class(e)))
    }

    pub fn cell_classes(&self) -> Vec<Vec<usize>> {
        classes((0..self.cells.len()).map(|c| self.cell_class(c)))
    }

    /// The cells on canonical edges, one per class.
    pub fn canonical_cells(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = (0..self.cells.len())
            .filter(|&c| self.cell_class(c) == c)
            .map(|c| self.canonical_cell(c))
            .collect();
        out.sort();
        out
    }

    fn canonical_cell(&self, c: usize) -> Cell {
        let raw = self.cells[c];
        Cell {
            top: self.edge_class(raw.top),
            left: self.edge_class(raw.left),
            right: self.edge_class(raw.right),
        }
    }

    /// Folds until no two cell classes share a top or a bottom pair.
    pub fn fold(&mut self, order: FoldOrder) -> FoldTrace {
        let mut trace = FoldTrace::default();
        let mut by_top: Vec<Vec<usize>> = vec![Vec::new(); self.edge_parent.len()];
        let mut by_left: Vec<Vec<usize>> = vec![Vec::new(); self.edge_parent.len()];
        let mut by_right: Vec<Vec<usize>> = vec![Vec::new(); self.edge_parent.len()];
        for c in 0..self.cells.len() {
            let cell = self.canonical_cell(c);
            by_top[cell.top].push(c);
            by_left[cell.left].push(c);
            by_right[cell.right].push(c);
        }
        let mut queue: VecDeque<Check> = VecDeque::new();
        let mut rng = match order {
            FoldOrder::Fifo => None,
            FoldOrder::Shuffled(seed) => Some(StdRng::seed_from_u64(seed)),
        };
        let mut lists = Lists {
            by_top: &mut by_top,
            by_left: &mut by_left,
            by_right: &mut by_right,
        };

        if !self.pending_glue.is_empty() {
            let mut group = vec![self.base];
            group.append(&mut self.pending_glue);
            for &e in &group[1..] {
                self.union_edges(self.base, e, &mut lists, &mut queue);
            }
            trace.events.push(FoldEvent::Glue { edges: group });
        }
        for e in 0..self.edge_parent.len() {
            if self.edge_parent[e] == e {
                queue.push_back(Check::Top(e));
                queue.push_back(Check::Bottom(e));
            }
        }

        loop {
            let next = match rng.as_mut() {
                None => queue.pop_front(),
                Some(rng) if !queue.is_empty() => {
                    let i = rng.gen_range(0..queue.len());
                    queue.swap_remove_back(i)
                }
                Some(_) => None,
            };
            let Some(check) = next else { break };
            match check {
                Check::Top(e) => {
                    let e = self.find_edge(e);
                    let mut cls: Vec<usize> = lists.by_top[e]
                        .clone()
                        .into_iter()
                        .map(|c| self.find_cell(c))
                        .collect();
                    cls.sort_unstable();
                    cls.dedup();
                    if cls.len() > 1 {
                        self.fold_cells(Shared::Top, cls, &mut lists, &mut queue, &mut trace);
                    }
                }
                Check::Bottom(e) => {
                    let e = self.find_edge(e);
                    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
                    for c in lists.by_left[e].clone() {
                        let cls = self.find_cell(c);
                        let r = self.find_edge(self.cells[c].right);
                        groups.entry(r).or_default().push(cls);
                    }
                    let mut keys: Vec<usize> = groups.keys().copied().collect();
                    keys.sort_unstable();
                    for k in keys {
                        let mut cls = groups.remove(&k).unwrap();
                        cls.iter_mut().for_each(|c| *c = self.find_cell(*c));
                        cls.sort_unstable();
                        cls.dedup();
                        if cls.len() > 1 {
                            self.fold_cells(
                                Shared::Bottom,
                                cls,
                                &mut lists,
                                &mut queue,
                                &mut trace,
                            );
                        }
                    }
                }
            }
        }

        for e in 0..self.edge_parent.len() {
            self.find_edge(e);
        }
        for c in 0..self.cells.len() {
            self.find_cell(c);
        }
        self.base = self.edge_parent[self.base];
        self.top_index.clear();
        self.bottom_index.clear();
        for c in (0..self.cells.len()).filter(|&c| self.cell_parent[c] == c) {
            let cell = self.canonical_cell(c);
            self.top_index.insert(cell.top, c);
            self.bottom_index.insert((cell.left, cell.right), c);
        }
        self.folded = true;
        debug_assert!(self.check_folded().is_ok());
        trace
    }

    fn fold_cells(
        &mut self,
        shared: Shared,
        cls: Vec<usize>,
        lists: &mut Lists<'_>,
        queue: &mut VecDeque<Check>,
        trace: &mut FoldTrace,
    ) {
        let raw: Vec<Cell> = cls.iter().map(|&c| self.cells[c]).collect();
        let groups: Vec<Vec<usize>> = match shared {
            Shared::Top => vec![
                dedup_keep_order(raw.iter().map(|c| c.left)),
                dedup_keep_order(raw.iter().map(|c| c.right)),
            ],
            Shared::Bottom => vec![dedup_keep_order(raw.iter().map(|c| c.top))],
        };
        let root = cls[0];
        for &c in &cls[1..] {
            self.cell_parent[c] = root;
        }
        for g in &groups {
            for &e in &g[1..] {
                self.union_edges(g[0], e, lists, queue);
            }
        }
        trace.events.push(FoldEvent::Fold {
            shared,
            cells: cls,
            edges: groups,
        });
    }

    fn union_edges(
        &mut self,
        a: usize,
        b: usize,
        lists: &mut Lists<'_>,
        queue: &mut VecDeque<Check>,
    ) {
        let (ra, rb) = (self.find_edge(a), self.find_edge(b));
        if ra == rb {
            return;
        }
        let (root, other) = (ra.min(rb), ra.max(rb));
        self.edge_parent[other] = root;
        for l in [
            &mut *lists.by_top,
            &mut *lists.by_left,
            &mut *lists.by_right,
        ] {
            let moved = std::mem::take(&mut l[other]);
            l[root].extend(moved);
        }
        queue.push_back(Check::Top(root));
        queue.push_back(Check::Bottom(root));
        for c in lists.by_right[root].clone() {
            let left = self.cells[c].left;
            queue.push_back(Check::Bottom(left));
        }
    }

    /// Checks the folded invariants on canonical representatives.
    pub fn check_folded(&self) -> Result<(), CoreError> {
        let cells = self.canonical_cells();
        let mut tops = HashMap::new();
        let mut bottoms = HashMap::new();
        for c in &cells {
            if let Some(o) = tops.insert(c.top, *c) {
                return Err(CoreError::NotFolded(format!(
                    "cells {o:?} and {c:?} share a top"
                )));
            }
            if let Some(o) = bottoms.insert((c.left, c.right), *c) {
                return Err(CoreError::NotFolded(format!(
                    "cells {o:?} and {c:?} share a bottom"
                )));
            }
        }
        Ok(())
    }

    fn require_folded(&self) -> Result<(), CoreError> {
        if self.folded {
            Ok(())
        } else {
            Err(CoreError::NotFolded("automaton has not been folded".into()))
        }
    }

    /// The unique cell class with top edge class `e`.
    pub fn cell_with_top(&self, e: usize) -> Option<Cell> {
        self.top_index
            .get(&self.edge_class(e))
            .map(|&c| self.canonical_cell(c))
    }

    pub fn cell_with_bottom(&self, left: usize, right: usize) -> Option<Cell> {
        self.bottom_index
            .get(&(self.edge_class(left), self.edge_class(right)))
            .map(|&c| self.canonical_cell(c))
    }

    /// Deterministic acceptance of a diagram (reduced or not).
    pub fn accepts(&self, d: &TreePair) -> Result<bool, CoreError> {
        self.require_folded()?;
        let mut leaf_images = Vec::with_capacity(d.leaf_count());
        if !self.map_down(d.domain(), self.base, &mut leaf_images) {
            return Ok(false);
        }
        let mut pos = 0;
        Ok(self.map_up(d.range(), &leaf_images, &mut pos) == Some(self.base))
    }

    fn map_down(&self, t: &BinTree, e: usize, leaves: &mut Vec<usize>) -> bool {
        match t {
            BinTree::Leaf => {
                leaves.push(e);
                true
            }
            BinTree::Caret(l, r) => match self.cell_with_top(e) {
                Some(c) => self.map_down(l, c.left, leaves) && self.map_down(r, c.right, leaves),
                None => false,
            },
        }
    }

    fn map_up(&self, t: &BinTree, leaves: &[usize], pos: &mut usize) -> Option<usize> {
        match t {
            BinTree::Leaf => {
                *pos += 1;
                Some(leaves[*pos - 1])
            }
            BinTree::Caret(l, r) => {
                let a = self.map_up(l, leaves, pos)?;
                let b = self.map_up(r, leaves, pos)?;
                self.cell_with_bottom(a, b).map(|c| c.top)
            }
        }
    }
}

struct Lists<'a> {
    by_top: &'a mut Vec<Vec<usize>>,
    by_left: &'a mut Vec<Vec<usize>>,
    by_right: &'a mut Vec<Vec<usize>>,
}

fn dedup_keep_order(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for x in it {
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

fn classes(reps: impl Iterator<Item = usize>) -> Vec<Vec<usize>> {
    let mut map: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, r) in reps.enumerate() {
        map.entry(r).or_default().push(i);
    }
    map.into_values().collect()
}

fn preorder_carets(t: &BinTree, addr: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
    if let BinTree::Caret(l, r) = t {
        out.push(addr.clone());
        addr.push(false);
        preorder_carets(l, addr, out);
        addr.pop();
        addr.push(true);
        preorder_carets(r, addr, out);
        addr.pop();
    }
}

/// The unfolded bouquet of spheres of the given diagrams.
pub fn bouquet(gens: &[TreePair]) -> TwoAutomaton {
    let mut a = TwoAutomaton::empty();
    for g in gens {
        a.add_generator(g);
    }
    a
}

pub fn fold_to_fixpoint(a: &TwoAutomaton, order: FoldOrder) -> (TwoAutomaton, FoldTrace) {
    let mut a = a.clone();
    let trace = a.fold(order);
    (a, trace)
}

pub fn build_core(gens: &[Word]) -> TwoAutomaton {
    let diagrams: Vec<TreePair> = gens.iter().map(word_to_diagram).collect();
    let mut a = bouquet(&diagrams);
    a.fold(FoldOrder::Fifo);
    a
}

/// Membership of `w` in the closure of the subgroup generated by `gens`.
pub fn closure_member(gens: &[Word], w: &Word) -> bool {
    build_core(gens)
        .accepts(&word_to_diagram(w))
        .expect("built cores are folded")
}
