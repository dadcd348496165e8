//! m-fold cyclic covering diagrams.
//!
//! Take `m` sheets of `(D, P)`. Walking a component on sheet `k`, a cut mark
//! of sign `eps` moves the walk to sheet `k - eps`; a passage of crossing `c`
//! on sheet `k` becomes a passage of the lifted crossing `(c, k)`. Lifted
//! crossings are renamed `(c - 1) * m + k + 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cuts::CutSystem;
use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Passage, SemiArcId};
use crate::numbering::{build_constraints, ArcId, Numbering};

/// Net sheet displacement of one traversal of each component:
/// `t_i = -sum(eps)` over the marks on component `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftVector(pub Vec<i64>);

impl ShiftVector {
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

fn shifts(d: &Diagram, p: &CutSystem) -> Vec<i64> {
    let mut t = vec![0i64; d.component_count()];
    for cp in p.points() {
        t[cp.arc.component] -= cp.eps.value();
    }
    t
}

pub fn component_shifts(d: &Diagram, p: &CutSystem) -> Result<ShiftVector> {
    p.ensure_valid(d)?;
    Ok(ShiftVector(shifts(d, p)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentOrigin {
    pub component: usize,
    pub start_sheet: u32,
    /// Number of traversals of the base component before the walk closes.
    pub laps: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapOrigin {
    pub base: SemiArcId,
    /// Sheet at the start of the base gap.
    pub sheet: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetedDiagram {
    pub diagram: Diagram,
    pub sheets: u32,
    pub crossing_origin: BTreeMap<CrossingId, (CrossingId, u32)>,
    pub component_origin: Vec<ComponentOrigin>,
    /// For every gap of every covering component, where it came from.
    pub gap_origin: Vec<Vec<GapOrigin>>,
    pub base: Diagram,
    pub base_cuts: CutSystem,
}

fn lift_id(c: CrossingId, k: u32, m: u32) -> Result<CrossingId> {
    let id = (c as u64 - 1) * m as u64 + k as u64 + 1;
    CrossingId::try_from(id).map_err(|_| Error::IdOverflow)
}

fn shift_sheet(k: u32, delta: i64, m: u32) -> u32 {
    (k as i64 + delta).rem_euclid(m as i64) as u32
}

pub fn cover(d: &Diagram, p: &CutSystem, m: u32) -> Result<SheetedDiagram> {
    if m == 0 {
        return Err(Error::BadModulus { min: 1, got: m });
    }
    p.ensure_valid(d)?;
    let t = shifts(d, p);

    let mut components = Vec::new();
    let mut component_origin = Vec::new();
    let mut gap_origin = Vec::new();
    let mut crossing_origin = BTreeMap::new();
    let mut signs = BTreeMap::new();

    for (ci, comp) in d.components().iter().enumerate() {
        let laps = (m as u64 / (m as u64).gcd(&t[ci].unsigned_abs())) as u32;
        let mut consumed = BTreeSet::new();
        for start in 0..m {
            if consumed.contains(&start) {
                continue;
            }
            let mut passages = Vec::new();
            let mut gaps = Vec::new();
            let mut k = start;
            loop {
                consumed.insert(k);
                if comp.is_empty() {
                    gaps.push(GapOrigin { base: SemiArcId::new(ci, 0), sheet: k });
                }
                for (i, pass) in comp.iter().enumerate() {
                    let id = lift_id(pass.crossing, k, m)?;
                    crossing_origin.insert(id, (pass.crossing, k));
                    signs.insert(id, d.sign(pass.crossing));
                    passages.push(Passage { crossing: id, role: pass.role });
                    let arc = SemiArcId::new(ci, i);
                    gaps.push(GapOrigin { base: arc, sheet: k });
                    for e in p.on(arc) {
                        k = shift_sheet(k, -e.value(), m);
                    }
                }
                if comp.is_empty() {
                    for e in p.on(SemiArcId::new(ci, 0)) {
                        k = shift_sheet(k, -e.value(), m);
                    }
                }
                if k == start {
                    break;
                }
            }
            components.push(passages);
            gap_origin.push(gaps);
            component_origin.push(ComponentOrigin { component: ci, start_sheet: start, laps });
        }
    }

    let diagram = Diagram::new(components, signs)?;
    Ok(SheetedDiagram {
        diagram,
        sheets: m,
        crossing_origin,
        component_origin,
        gap_origin,
        base: d.clone(),
        base_cuts: p.clone(),
    })
}

/// Component count predicted from the shift vector: `sum gcd(m, t_i)`.
pub fn predicted_components(t: &ShiftVector, m: u32) -> u64 {
    t.0.iter().map(|&ti| (m as u64).gcd(&ti.unsigned_abs())).sum()
}

/// Pushes an integer numbering of the base through the covering: a covering
/// arc over base segment `a` on sheet `k` gets `f(a) + k mod m`.
pub fn induced_numbering(s: &SheetedDiagram, f: &Numbering) -> Result<Numbering> {
    let base = build_constraints(&s.base, &s.base_cuts)?;
    if f.modulus != 0 || !f.satisfies(&base) {
        return Err(Error::NotASolution);
    }
    let m = s.sheets as i64;
    let mut values = BTreeMap::new();
    for (ci, gaps) in s.gap_origin.iter().enumerate() {
        for (gi, origin) in gaps.iter().enumerate() {
            let marks = s.base_cuts.on(origin.base);
            let mut k = origin.sheet as i64;
            let value = (f.values[&ArcId::new(origin.base, 0)] + k).rem_euclid(m);
            for (j, e) in marks.iter().enumerate() {
                k -= e.value();
                let along = f.values[&ArcId::new(origin.base, j + 1)] + k;
                if along.rem_euclid(m) != value {
                    return Err(Error::NotASolution);
                }
            }
            values.insert(ArcId::new(SemiArcId::new(ci, gi), 0), value);
        }
    }
    Ok(Numbering { modulus: s.sheets, values })
}
