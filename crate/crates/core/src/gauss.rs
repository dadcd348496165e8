//! Signed Gauss codes of virtual link diagrams.
//!
//! Only classical crossings are stored. Two diagrams with the same Gauss code
//! differ by detour moves, so virtual crossings carry no information here.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CrossingId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Passage {
    pub crossing: CrossingId,
    pub role: Role,
}

impl Passage {
    pub fn over(crossing: CrossingId) -> Self {
        Passage { crossing, role: Role::Over }
    }

    pub fn under(crossing: CrossingId) -> Self {
        Passage { crossing, role: Role::Under }
    }
}

/// A semi-arc: the gap following passage `gap` of `component` in cyclic
/// order. A free loop has the single gap 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemiArcId {
    pub component: usize,
    pub gap: usize,
}

impl SemiArcId {
    pub fn new(component: usize, gap: usize) -> Self {
        SemiArcId { component, gap }
    }
}

impl fmt::Display for SemiArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}g{}", self.component, self.gap)
    }
}

/// Position of a passage inside a diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub component: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Violation {
    /// Crossing does not appear exactly once as Over and once as Under.
    Pairing { crossing: CrossingId, overs: usize, unders: usize },
    /// Crossing used in a component but absent from the sign table.
    MissingSign(CrossingId),
    /// Sign table entry for a crossing that never appears.
    OrphanSign(CrossingId),
    /// Crossing ids are positive.
    ZeroId,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Pairing { crossing, overs, unders } => write!(
                f,
                "pairing violation at crossing {crossing} ({overs} over, {unders} under)"
            ),
            Violation::MissingSign(c) => write!(f, "crossing {c} has no sign"),
            Violation::OrphanSign(c) => write!(f, "orphan sign for unused crossing {c}"),
            Violation::ZeroId => write!(f, "crossing id 0 is not allowed"),
        }
    }
}

/// Multi-component signed Gauss code. Component orientation is the sequence
/// order; a component with no passages is a free loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Diagram {
    components: Vec<Vec<Passage>>,
    signs: BTreeMap<CrossingId, Sign>,
}

impl Diagram {
    /// Builds a diagram, rejecting codes that break the pairing invariants.
    pub fn new(components: Vec<Vec<Passage>>, signs: BTreeMap<CrossingId, Sign>) -> Result<Self> {
        let d = Diagram { components, signs };
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDiagram(violations))
        }
    }

    /// Builds a diagram without checking it. Use [`Diagram::validate`] to
    /// inspect the result.
    pub fn from_parts_unchecked(
        components: Vec<Vec<Passage>>,
        signs: BTreeMap<CrossingId, Sign>,
    ) -> Self {
        Diagram { components, signs }
    }

    pub fn empty() -> Self {
        Diagram::default()
    }

    pub fn free_loop() -> Self {
        Diagram { components: vec![Vec::new()], signs: BTreeMap::new() }
    }

    /// Lists every violated invariant; empty iff the diagram is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut counts: BTreeMap<CrossingId, (usize, usize)> = BTreeMap::new();
        for p in self.components.iter().flatten() {
            let e = counts.entry(p.crossing).or_default();
            match p.role {
                Role::Over => e.0 += 1,
                Role::Under => e.1 += 1,
            }
        }
        let mut out = Vec::new();
        if counts.contains_key(&0) || self.signs.contains_key(&0) {
            out.push(Violation::ZeroId);
        }
        for (&c, &(overs, unders)) in &counts {
            if c == 0 {
                continue;
            }
            if overs != 1 || unders != 1 {
                out.push(Violation::Pairing { crossing: c, overs, unders });
            }
            if !self.signs.contains_key(&c) {
                out.push(Violation::MissingSign(c));
            }
        }
        for &c in self.signs.keys() {
            if c != 0 && !counts.contains_key(&c) {
                out.push(Violation::OrphanSign(c));
            }
        }
        out
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &[Passage] {
        &self.components[i]
    }

    pub fn signs(&self) -> &BTreeMap<CrossingId, Sign> {
        &self.signs
    }

    pub fn sign(&self, c: CrossingId) -> Sign {
        self.signs[&c]
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn passage_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    pub fn crossings(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.signs.keys().copied()
    }

    pub fn max_crossing_id(&self) -> CrossingId {
        self.signs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn is_free_loop(&self, component: usize) -> bool {
        self.components[component].is_empty()
    }

    /// Number of gaps (semi-arcs) on a component.
    pub fn gap_count(&self, component: usize) -> usize {
        self.components[component].len().max(1)
    }

    pub fn semi_arcs(&self) -> impl Iterator<Item = SemiArcId> + '_ {
        (0..self.components.len())
            .flat_map(move |c| (0..self.gap_count(c)).map(move |g| SemiArcId::new(c, g)))
    }

    pub fn has_semi_arc(&self, arc: SemiArcId) -> bool {
        arc.component < self.components.len() && arc.gap < self.gap_count(arc.component)
    }

    /// Gap entering the passage at `slot`.
    pub fn gap_before(&self, slot: Slot) -> SemiArcId {
        let n = self.components[slot.component].len();
        SemiArcId::new(slot.component, (slot.index + n - 1) % n)
    }

    /// Gap leaving the passage at `slot`.
    pub fn gap_after(&self, slot: Slot) -> SemiArcId {
        SemiArcId::new(slot.component, slot.index)
    }

    /// Locates the Over and Under passages of every crossing.
    pub fn slots(&self) -> BTreeMap<CrossingId, CrossingSlots> {
        let mut over = BTreeMap::new();
        let mut under = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for (i, p) in comp.iter().enumerate() {
                let slot = Slot { component: ci, index: i };
                match p.role {
                    Role::Over => over.insert(p.crossing, slot),
                    Role::Under => under.insert(p.crossing, slot),
                };
            }
        }
        over.into_iter()
            .filter_map(|(c, o)| under.get(&c).map(|&u| (c, CrossingSlots { over: o, under: u })))
            .collect()
    }

    /// Renames crossings through `map`. Ids missing from `map` keep their name.
    pub fn relabel(&self, map: &BTreeMap<CrossingId, CrossingId>) -> Diagram {
        let rename = |c: CrossingId| map.get(&c).copied().unwrap_or(c);
        Diagram {
            components: self
                .components
                .iter()
                .map(|comp| {
                    comp.iter()
                        .map(|p| Passage { crossing: rename(p.crossing), role: p.role })
                        .collect()
                })
                .collect(),
            signs: self.signs.iter().map(|(&c, &s)| (rename(c), s)).collect(),
        }
    }

    pub(crate) fn into_parts(self) -> (Vec<Vec<Passage>>, BTreeMap<CrossingId, Sign>) {
        (self.components, self.signs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingSlots {
    pub over: Slot,
    pub under: Slot,
}

/// Disjoint union: components concatenated in input order, crossings renamed
/// 1, 2, ... in input order.
pub fn disjoint_union(ds: &[Diagram]) -> Diagram {
    let mut components = Vec::new();
    let mut signs = BTreeMap::new();
    let mut next: CrossingId = 1;
    for d in ds {
        let map: BTreeMap<CrossingId, CrossingId> = d
            .crossings()
            .map(|c| {
                let fresh = next;
                next += 1;
                (c, fresh)
            })
            .collect();
        let r = d.relabel(&map);
        let (comps, s) = r.into_parts();
        components.extend(comps);
        signs.extend(s);
    }
    Diagram { components, signs }
}

/// Components that share at least one crossing, grouped transitively.
pub(crate) fn linked_blocks(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.component_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for s in d.slots().values() {
        let a = find(&mut parent, s.over.component);
        let b = find(&mut parent, s.under.component);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..n {
        let r = find(&mut parent, c);
        groups.entry(r).or_default().push(c);
    }
    groups.into_values().collect()
}

/// Crossings whose both passages lie on `component`.
pub(crate) fn self_crossings(d: &Diagram, component: usize) -> BTreeSet<CrossingId> {
    d.slots()
        .into_iter()
        .filter(|(_, s)| s.over.component == component && s.under.component == component)
        .map(|(c, _)| c)
        .collect()
}
