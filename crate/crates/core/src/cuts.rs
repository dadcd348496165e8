//! Oriented cut points, cut systems and the moves between them.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, SemiArcId, Sign};
use crate::numbering::{build_constraints, solve};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Eps {
    #[serde(rename = "+")]
    Coherent,
    #[serde(rename = "-")]
    Incoherent,
}

impl Eps {
    pub fn value(self) -> i64 {
        match self {
            Eps::Coherent => 1,
            Eps::Incoherent => -1,
        }
    }

    pub fn flip(self) -> Eps {
        match self {
            Eps::Coherent => Eps::Incoherent,
            Eps::Incoherent => Eps::Coherent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CutPoint {
    pub arc: SemiArcId,
    pub ordinal: usize,
    pub eps: Eps,
}

/// Cut marks grouped by semi-arc, in orientation order. Ordinals are the
/// positions inside each list, so they stay dense after every edit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CutSystem {
    gaps: BTreeMap<SemiArcId, Vec<Eps>>,
}

impl CutSystem {
    pub fn empty() -> Self {
        CutSystem::default()
    }

    pub fn from_gaps(gaps: BTreeMap<SemiArcId, Vec<Eps>>) -> Self {
        CutSystem { gaps: gaps.into_iter().filter(|(_, v)| !v.is_empty()).collect() }
    }

    pub fn from_points(points: impl IntoIterator<Item = CutPoint>) -> Self {
        let mut sorted: Vec<CutPoint> = points.into_iter().collect();
        sorted.sort();
        let mut gaps: BTreeMap<SemiArcId, Vec<Eps>> = BTreeMap::new();
        for p in sorted {
            gaps.entry(p.arc).or_default().push(p.eps);
        }
        CutSystem { gaps }
    }

    pub fn on(&self, arc: SemiArcId) -> &[Eps] {
        self.gaps.get(&arc).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn gaps(&self) -> impl Iterator<Item = (&SemiArcId, &Vec<Eps>)> {
        self.gaps.iter()
    }

    pub fn points(&self) -> impl Iterator<Item = CutPoint> + '_ {
        self.gaps.iter().flat_map(|(&arc, marks)| {
            marks.iter().enumerate().map(move |(ordinal, &eps)| CutPoint { arc, ordinal, eps })
        })
    }

    pub fn len(&self) -> usize {
        self.gaps.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn check_located(&self, d: &Diagram) -> Result<()> {
        match self.gaps.keys().find(|a| !d.has_semi_arc(**a)) {
            Some(&arc) => Err(Error::DanglingMark(arc)),
            None => Ok(()),
        }
    }

    /// A cut system in the proper sense: the diagram with these marks admits
    /// an integer Alexander numbering.
    pub fn is_valid(&self, d: &Diagram) -> bool {
        match build_constraints(d, self) {
            Ok(g) => solve(&g, 0).is_solved(),
            Err(_) => false,
        }
    }

    pub fn ensure_valid(&self, d: &Diagram) -> Result<()> {
        self.check_located(d)?;
        if self.is_valid(d) {
            Ok(())
        } else {
            Err(Error::InvalidCutSystem)
        }
    }

    fn edit(&mut self, arc: SemiArcId) -> &mut Vec<Eps> {
        self.gaps.entry(arc).or_default()
    }

    fn prune(&mut self) {
        self.gaps.retain(|_, v| !v.is_empty());
    }
}

/// Number of coherent and incoherent marks.
pub fn balance(p: &CutSystem) -> (usize, usize) {
    p.gaps.values().flatten().fold((0, 0), |(c, i), e| match e {
        Eps::Coherent => (c + 1, i),
        Eps::Incoherent => (c, i + 1),
    })
}

/// Two marks per crossing. A positive crossing gets a coherent mark at the
/// end of its over-in arc and an incoherent mark at the start of its
/// under-out arc; a negative crossing gets them on the under-in and
/// over-out arcs.
pub fn canonical_cut_system(d: &Diagram) -> CutSystem {
    let mut starts: BTreeMap<SemiArcId, Eps> = BTreeMap::new();
    let mut ends: BTreeMap<SemiArcId, Eps> = BTreeMap::new();
    for (c, s) in d.slots() {
        let (into, out) = match d.sign(c) {
            Sign::Pos => (s.over, s.under),
            Sign::Neg => (s.under, s.over),
        };
        ends.insert(d.gap_before(into), Eps::Coherent);
        starts.insert(d.gap_after(out), Eps::Incoherent);
    }
    let mut gaps: BTreeMap<SemiArcId, Vec<Eps>> = BTreeMap::new();
    for (arc, e) in starts {
        gaps.entry(arc).or_default().push(e);
    }
    for (arc, e) in ends {
        gaps.entry(arc).or_default().push(e);
    }
    CutSystem { gaps }
}

/// The four arc ends meeting at a crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CrossingEnd {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

impl CrossingEnd {
    pub const ALL: [CrossingEnd; 4] =
        [CrossingEnd::OverIn, CrossingEnd::OverOut, CrossingEnd::UnderIn, CrossingEnd::UnderOut];

    fn incoming(self) -> bool {
        matches!(self, CrossingEnd::OverIn | CrossingEnd::UnderIn)
    }

    /// The mark that points at the crossing (`toward`) or away from it.
    fn mark(self, toward: bool) -> Eps {
        if self.incoming() == toward {
            Eps::Coherent
        } else {
            Eps::Incoherent
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum CutMove {
    /// Insert the adjacent pair `first, first.flip()` before mark `position`.
    Insert { arc: SemiArcId, position: usize, first: Eps },
    /// Remove the opposite adjacent pair at `position, position + 1`.
    Delete { arc: SemiArcId, position: usize },
    /// Swap the distinct adjacent marks at `position, position + 1`.
    Transpose { arc: SemiArcId, position: usize },
    /// At `crossing`, remove the marks next to the crossing on `ends`, which
    /// all point toward it (or all away from it), and put oppositely
    /// directed marks next to the crossing on the two remaining ends.
    Exchange { crossing: CrossingId, ends: [CrossingEnd; 2], toward: bool },
}

impl fmt::Display for CutMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

fn end_arc(d: &Diagram, c: CrossingId, end: CrossingEnd) -> Option<SemiArcId> {
    let s = d.slots().get(&c).copied()?;
    Some(match end {
        CrossingEnd::OverIn => d.gap_before(s.over),
        CrossingEnd::OverOut => d.gap_after(s.over),
        CrossingEnd::UnderIn => d.gap_before(s.under),
        CrossingEnd::UnderOut => d.gap_after(s.under),
    })
}

fn complement(ends: [CrossingEnd; 2]) -> [CrossingEnd; 2] {
    let rest: Vec<CrossingEnd> =
        CrossingEnd::ALL.iter().copied().filter(|e| !ends.contains(e)).collect();
    [rest[0], rest[1]]
}

fn exchange_applicable(
    d: &Diagram,
    p: &CutSystem,
    crossing: CrossingId,
    ends: [CrossingEnd; 2],
    toward: bool,
) -> bool {
    if ends[0] == ends[1] {
        return false;
    }
    let arcs = match (end_arc(d, crossing, ends[0]), end_arc(d, crossing, ends[1])) {
        (Some(a), Some(b)) => [a, b],
        _ => return false,
    };
    for (end, arc) in ends.iter().zip(arcs) {
        let marks = p.on(arc);
        let adjacent = if end.incoming() { marks.last() } else { marks.first() };
        if adjacent != Some(&end.mark(toward)) {
            return false;
        }
    }
    // both ends on one gap need two distinct marks
    arcs[0] != arcs[1] || p.on(arcs[0]).len() >= 2
}

pub fn apply_cut_move(d: &Diagram, p: &CutSystem, mv: &CutMove) -> Result<CutSystem> {
    let fail = || Error::InapplicableCutMove(mv.to_string());
    let mut out = p.clone();
    match *mv {
        CutMove::Insert { arc, position, first } => {
            if !d.has_semi_arc(arc) || position > p.on(arc).len() {
                return Err(fail());
            }
            let marks = out.edit(arc);
            marks.insert(position, first.flip());
            marks.insert(position, first);
        }
        CutMove::Delete { arc, position } => {
            let marks = p.on(arc);
            if position + 1 >= marks.len() || marks[position] == marks[position + 1] {
                return Err(fail());
            }
            out.edit(arc).drain(position..position + 2);
        }
        CutMove::Transpose { arc, position } => {
            let marks = p.on(arc);
            if position + 1 >= marks.len() || marks[position] == marks[position + 1] {
                return Err(fail());
            }
            out.edit(arc).swap(position, position + 1);
        }
        CutMove::Exchange { crossing, ends, toward } => {
            if !exchange_applicable(d, p, crossing, ends, toward) {
                return Err(fail());
            }
            for end in ends {
                let marks = out.edit(end_arc(d, crossing, end).unwrap());
                if end.incoming() {
                    marks.pop();
                } else {
                    marks.remove(0);
                }
            }
            for end in complement(ends) {
                let eps = end.mark(!toward);
                let marks = out.edit(end_arc(d, crossing, end).unwrap());
                if end.incoming() {
                    marks.push(eps);
                } else {
                    marks.insert(0, eps);
                }
            }
        }
    }
    out.prune();
    Ok(out)
}

/// Every applicable move, in a fixed order: inserts, deletes, transposes,
/// then crossing exchanges.
pub fn enumerate_cut_moves(d: &Diagram, p: &CutSystem) -> Vec<CutMove> {
    let mut out = Vec::new();
    for arc in d.semi_arcs() {
        for position in 0..=p.on(arc).len() {
            for first in [Eps::Coherent, Eps::Incoherent] {
                out.push(CutMove::Insert { arc, position, first });
            }
        }
    }
    for arc in d.semi_arcs() {
        let marks = p.on(arc);
        for position in 0..marks.len().saturating_sub(1) {
            if marks[position] != marks[position + 1] {
                out.push(CutMove::Delete { arc, position });
            }
        }
    }
    for arc in d.semi_arcs() {
        let marks = p.on(arc);
        for position in 0..marks.len().saturating_sub(1) {
            if marks[position] != marks[position + 1] {
                out.push(CutMove::Transpose { arc, position });
            }
        }
    }
    for c in d.crossings() {
        for i in 0..4 {
            for j in i + 1..4 {
                let ends = [CrossingEnd::ALL[i], CrossingEnd::ALL[j]];
                for toward in [true, false] {
                    if exchange_applicable(d, p, c, ends, toward) {
                        out.push(CutMove::Exchange { crossing: c, ends, toward });
                    }
                }
            }
        }
    }
    out
}
