//! Alexander numberings as a difference-constraint system.
//!
//! Nodes are the arc segments left after cutting every semi-arc at its cut
//! marks. An edge `(from, to, offset)` demands `value(to) - value(from) =
//! offset`, over the integers (modulus 0) or modulo `m`.
//!
//! At a crossing of sign `s` with over-in/over-out/under-in/under-out ends
//! `oi, oo, ui, uo`:
//!
//! | relation            | `s = +1` | `s = -1` |
//! |---------------------|----------|----------|
//! | `oo - oi`           | `-1`     | `+1`     |
//! | `uo - ui`           | `+1`     | `-1`     |
//! | `ui - oi`           | `-1`     | `+1`     |
//!
//! This is the "number of the region on the right" convention. A coherent
//! mark raises the value by one along the orientation, an incoherent mark
//! lowers it by one.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cuts::CutSystem;
use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, SemiArcId};

/// A piece of a semi-arc after cutting at its marks, numbered along the
/// orientation from 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcId {
    pub arc: SemiArcId,
    pub segment: usize,
}

impl ArcId {
    pub fn new(arc: SemiArcId, segment: usize) -> Self {
        ArcId { arc, segment }
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}s{}", self.arc, self.segment)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Source {
    Crossing(CrossingId),
    Cut,
    /// Closes the last segment of a marked free loop onto its first.
    Loop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub from: ArcId,
    pub to: ArcId,
    pub offset: i64,
    pub source: Source,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    nodes: Vec<ArcId>,
    edges: Vec<Relation>,
}

impl ConstraintGraph {
    pub fn nodes(&self) -> &[ArcId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Relation] {
        &self.edges
    }

    pub fn index_of(&self, a: ArcId) -> Option<usize> {
        self.nodes.binary_search(&a).ok()
    }

    /// Same graph with every offset negated (the mirror convention).
    pub fn negated(&self) -> ConstraintGraph {
        ConstraintGraph {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(|e| Relation { offset: -e.offset, ..*e }).collect(),
        }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, i64, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (k, e) in self.edges.iter().enumerate() {
            let u = self.index_of(e.from).expect("edge endpoint is a node");
            let v = self.index_of(e.to).expect("edge endpoint is a node");
            adj[u].push((v, e.offset, k));
            adj[v].push((u, -e.offset, k));
        }
        adj
    }
}

/// Segment at the start (out-end) of a semi-arc.
pub(crate) fn head(arc: SemiArcId) -> ArcId {
    ArcId::new(arc, 0)
}

/// Segment at the end (in-end) of a semi-arc.
pub(crate) fn tail(arc: SemiArcId, p: &CutSystem) -> ArcId {
    ArcId::new(arc, p.on(arc).len())
}

pub fn build_constraints(d: &Diagram, p: &CutSystem) -> Result<ConstraintGraph> {
    p.check_located(d)?;
    let mut nodes = Vec::new();
    for arc in d.semi_arcs() {
        for s in 0..=p.on(arc).len() {
            nodes.push(ArcId::new(arc, s));
        }
    }
    nodes.sort();

    let mut edges = Vec::new();
    for (c, slots) in d.slots() {
        let s = d.sign(c).value();
        let oi = tail(d.gap_before(slots.over), p);
        let oo = head(d.gap_after(slots.over));
        let ui = tail(d.gap_before(slots.under), p);
        let uo = head(d.gap_after(slots.under));
        let src = Source::Crossing(c);
        edges.push(Relation { from: oi, to: oo, offset: -s, source: src });
        edges.push(Relation { from: ui, to: uo, offset: s, source: src });
        edges.push(Relation { from: oi, to: ui, offset: -s, source: src });
    }
    for (arc, marks) in p.gaps() {
        for (j, e) in marks.iter().enumerate() {
            edges.push(Relation {
                from: ArcId::new(*arc, j),
                to: ArcId::new(*arc, j + 1),
                offset: e.value(),
                source: Source::Cut,
            });
        }
        if d.is_free_loop(arc.component) {
            // a loop without crossings closes on itself
            edges.push(Relation {
                from: ArcId::new(*arc, marks.len()),
                to: ArcId::new(*arc, 0),
                offset: 0,
                source: Source::Loop,
            });
        }
    }
    Ok(ConstraintGraph { nodes, edges })
}

/// Values on arc segments; `modulus == 0` means integers, otherwise values
/// are residues in `0..modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Numbering {
    pub modulus: u32,
    pub values: BTreeMap<ArcId, i64>,
}

impl Numbering {
    pub fn get(&self, a: ArcId) -> Option<i64> {
        self.values.get(&a).copied()
    }

    pub fn reduce(&self, m: u32) -> Numbering {
        Numbering {
            modulus: m,
            values: self.values.iter().map(|(&a, &v)| (a, residue(v, m))).collect(),
        }
    }

    /// Every node has a value and every edge holds (mod `modulus`).
    pub fn satisfies(&self, g: &ConstraintGraph) -> bool {
        g.nodes.iter().all(|a| self.values.contains_key(a))
            && g.edges.iter().all(|e| {
                let diff = self.values[&e.to] - self.values[&e.from] - e.offset;
                residue(diff, self.modulus) == 0
            })
    }
}

pub(crate) fn residue(v: i64, m: u32) -> i64 {
    if m == 0 {
        v
    } else {
        v.rem_euclid(m as i64)
    }
}

/// One traversed edge of a witness cycle: `value(to) - value(from)` should be
/// `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub from: ArcId,
    pub to: ArcId,
    pub offset: i64,
}

/// A closed walk whose offsets do not sum to zero (mod m).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub modulus: u32,
    pub steps: Vec<Step>,
}

impl Witness {
    pub fn residual(&self) -> i64 {
        self.steps.iter().map(|s| s.offset).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Solved(Numbering),
    Unsolvable(Witness),
}

impl Solution {
    pub fn is_solved(&self) -> bool {
        matches!(self, Solution::Solved(_))
    }

    pub fn numbering(self) -> Option<Numbering> {
        match self {
            Solution::Solved(n) => Some(n),
            Solution::Unsolvable(_) => None,
        }
    }
}

struct Tree {
    pot: Vec<i64>,
    // (parent node, edge index, offset from parent to this node)
    parent: Vec<Option<(usize, usize, i64)>>,
    depth: Vec<usize>,
}

/// Breadth-first potential assignment; the smallest node of each connected
/// component is the root and gets 0.
fn spanning_tree(g: &ConstraintGraph, adj: &[Vec<(usize, i64, usize)>], m: u32) -> Tree {
    let n = g.nodes.len();
    let mut pot = vec![0i64; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &(v, off, k) in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    pot[v] = residue(pot[u] + off, m);
                    parent[v] = Some((u, k, off));
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    Tree { pot, parent, depth }
}

pub fn solve(g: &ConstraintGraph, m: u32) -> Solution {
    let adj = g.adjacency();
    let tree = spanning_tree(g, &adj, m);
    for e in &g.edges {
        let u = g.index_of(e.from).unwrap();
        let v = g.index_of(e.to).unwrap();
        if residue(tree.pot[u] + e.offset - tree.pot[v], m) != 0 {
            return Solution::Unsolvable(witness(g, &tree, u, v, e.offset, m));
        }
    }
    Solution::Solved(Numbering {
        modulus: m,
        values: g.nodes.iter().copied().zip(tree.pot).collect(),
    })
}

/// Cycle through the violated edge `u -> v` closed along the tree via the
/// lowest common ancestor.
fn witness(g: &ConstraintGraph, tree: &Tree, u: usize, v: usize, offset: i64, m: u32) -> Witness {
    let mut up_from_v = Vec::new();
    let mut down_to_u = Vec::new();
    let (mut a, mut b) = (v, u);
    while a != b {
        if tree.depth[a] >= tree.depth[b] {
            let (p, _, off) = tree.parent[a].unwrap();
            up_from_v.push(Step { from: g.nodes[a], to: g.nodes[p], offset: -off });
            a = p;
        } else {
            let (p, _, off) = tree.parent[b].unwrap();
            down_to_u.push(Step { from: g.nodes[p], to: g.nodes[b], offset: off });
            b = p;
        }
    }
    let mut steps = vec![Step { from: g.nodes[u], to: g.nodes[v], offset }];
    steps.extend(up_from_v);
    steps.extend(down_to_u.into_iter().rev());
    Witness { modulus: m, steps }
}

/// gcd of the integer residuals of a fundamental cycle basis. The system is
/// solvable modulo `m > 0` iff `m` divides it, and over the integers iff it
/// is 0.
pub fn defect_gcd(g: &ConstraintGraph) -> u64 {
    let adj = g.adjacency();
    let tree = spanning_tree(g, &adj, 0);
    g.edges.iter().fold(0u64, |acc, e| {
        let u = g.index_of(e.from).unwrap();
        let v = g.index_of(e.to).unwrap();
        acc.gcd(&(tree.pot[u] + e.offset - tree.pot[v]).unsigned_abs())
    })
}

/// Checks the endpoint jump of every semi-arc against its mark balance.
/// Loop semi-arcs must have balance 0.
pub fn check_jump(d: &Diagram, p: &CutSystem, f: &Numbering) -> bool {
    d.semi_arcs().all(|arc| {
        let marks = p.on(arc);
        let balance: i64 = marks.iter().map(|e| e.value()).sum();
        if d.is_free_loop(arc.component) {
            return balance == 0;
        }
        match (f.get(ArcId::new(arc, 0)), f.get(ArcId::new(arc, marks.len()))) {
            (Some(start), Some(end)) => residue(end - start - balance, f.modulus) == 0,
            _ => false,
        }
    })
}

/// Solves `(d, p)` over the integers, failing if `p` is not a cut system.
pub fn integer_numbering(d: &Diagram, p: &CutSystem) -> Result<Numbering> {
    solve(&build_constraints(d, p)?, 0).numbering().ok_or(Error::InvalidCutSystem)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::Eps;
    use crate::format::parse_diagram;
    use crate::generate::{generate, Generator};

    fn parse(t: &str) -> (Diagram, CutSystem) {
        parse_diagram(t).unwrap()
    }

    #[test]
    fn free_loop_graph() {
        let g = build_constraints(&Diagram::free_loop(), &CutSystem::empty()).unwrap();
        assert_eq!(g.nodes().len(), 1);
        assert!(g.edges().is_empty());
    }

    #[test]
    fn kink_graph_counts() {
        let (d, p) = parse("O1+ U1+");
        let g = build_constraints(&d, &p).unwrap();
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.edges().len(), 3);

        let (d, p) = parse("O1+ !+ U1+");
        let g = build_constraints(&d, &p).unwrap();
        assert_eq!(g.nodes().len(), 3);
        let cuts: Vec<_> = g.edges().iter().filter(|e| e.source == Source::Cut).collect();
        assert_eq!(g.edges().len() - cuts.len(), 3);
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].offset, 1);
    }

    #[test]
    fn edgeless_graph_is_all_zero() {
        let (d, p) = parse("()\n()");
        for m in [0, 2, 7] {
            let n = solve(&build_constraints(&d, &p).unwrap(), m).numbering().unwrap();
            assert!(n.values.values().all(|&v| v == 0));
        }
    }

    #[test]
    fn trefoil_is_numberable() {
        let d = generate(Generator::Torus2q(3));
        let g = build_constraints(&d, &CutSystem::empty()).unwrap();
        let n = solve(&g, 0).numbering().unwrap();
        assert!(n.satisfies(&g));
        assert_eq!(defect_gcd(&g), 0);
    }

    #[test]
    fn virtual_trefoil_has_no_numbering() {
        let d = generate(Generator::VirtualTrefoil);
        let g = build_constraints(&d, &CutSystem::empty()).unwrap();
        for m in [0, 2, 3, 4, 5] {
            match solve(&g, m) {
                Solution::Unsolvable(w) => assert_ne!(residue(w.residual(), m), 0),
                Solution::Solved(_) => panic!("solved mod {m}"),
            }
        }
        assert_eq!(defect_gcd(&g), 1);
    }

    #[test]
    fn roots_get_zero() {
        let (d, p) = parse("O1- U1- !+ !-");
        let g = build_constraints(&d, &p).unwrap();
        let n = solve(&g, 0).numbering().unwrap();
        assert_eq!(n.get(g.nodes()[0]), Some(0));
    }

    #[test]
    fn jump_arithmetic() {
        // Hopf code: marks (+,+,-) on the first gap, endpoint difference +1
        let (d, p) = parse("O1+ !+ !+ !- U2+ !-\nU1+ !+ O2+ !-");
        let f = integer_numbering(&d, &p).unwrap();
        let arc = SemiArcId::new(0, 0);
        assert_eq!(f.get(ArcId::new(arc, 3)).unwrap() - f.get(ArcId::new(arc, 0)).unwrap(), 1);
        assert!(check_jump(&d, &p, &f));

        // a kink forces jump 0 on both gaps
        let (d, p) = parse("O1+ U1+ !+ !+ !-");
        assert!(integer_numbering(&d, &p).is_err());

        let (d, p) = parse("() !+ !-");
        let f = integer_numbering(&d, &p).unwrap();
        assert!(check_jump(&d, &p, &f));
        assert_eq!(p.on(SemiArcId::new(0, 0)), &[Eps::Coherent, Eps::Incoherent]);
    }

    #[test]
    fn unbalanced_loop_is_rejected_by_jump_check() {
        let (d, p) = parse("() !+");
        let f = Numbering { modulus: 0, values: BTreeMap::new() };
        assert!(!check_jump(&d, &p, &f));
        assert!(integer_numbering(&d, &p).is_err());
    }
}
