//! Reidemeister moves on Gauss codes.
//!
//! The virtual moves only reroute crossing-free paths, which leaves the
//! Gauss code unchanged, so they are identities here and have no variant.
//!
//! | family     | site                                  | variants                          |
//! |------------|---------------------------------------|-----------------------------------|
//! | `R1Insert` | any gap                               | sign, which passage comes first   |
//! | `R1Delete` | crossing with adjacent passages       | -                                 |
//! | `R2Insert` | ordered pair of gaps (may coincide)   | over strand, parallel/anti, sign  |
//! | `R2Delete` | opposite-sign pair, Os and Us adjacent| -                                 |
//! | `R3`       | triangle `x, y, z` (below)            | -                                 |
//!
//! R3 triangles: the top strand carries `Ox, Oy` adjacently, the middle
//! strand `Ux, Oz`, the bottom strand `Uy, Uz`. Write `oT = +1` when `x`
//! comes first on the top strand, `oM = +1` when `x` comes first on the
//! middle strand and `oB = +1` when `y` comes first on the bottom strand.
//! Three oriented straight lines realise the triangle exactly when
//!
//! ```text
//! oT * oM = sign(y) * sign(z)    and    oT * oB = sign(x) * sign(z)
//! ```
//!
//! The move reverses all three adjacent pairs; the condition is preserved,
//! so R3 is its own inverse.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauss::{CrossingId, Diagram, Passage, Role, SemiArcId, Sign, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::R1Insert, Family::R1Delete, Family::R2Insert, Family::R2Delete, Family::R3];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum RMove {
    R1Insert { arc: SemiArcId, sign: Sign, over_first: bool },
    R1Delete { crossing: CrossingId },
    /// Adds crossings `a` (sign `sign`) and `b` (opposite sign). The strand
    /// at `first` meets `a` then `b`; the strand at `second` meets them in
    /// the same order when `parallel`, reversed otherwise. When both gaps
    /// coincide the `first` pair comes first along the orientation.
    R2Insert { first: SemiArcId, second: SemiArcId, over_first: bool, parallel: bool, sign: Sign },
    R2Delete { a: CrossingId, b: CrossingId },
    R3 { x: CrossingId, y: CrossingId, z: CrossingId },
}

impl RMove {
    pub fn family(&self) -> Family {
        match self {
            RMove::R1Insert { .. } => Family::R1Insert,
            RMove::R1Delete { .. } => Family::R1Delete,
            RMove::R2Insert { .. } => Family::R2Insert,
            RMove::R2Delete { .. } => Family::R2Delete,
            RMove::R3 { .. } => Family::R3,
        }
    }
}

fn next_slot(d: &Diagram, s: Slot) -> Slot {
    let n = d.component(s.component).len();
    Slot { component: s.component, index: (s.index + 1) % n }
}

fn at(d: &Diagram, s: Slot) -> Passage {
    d.component(s.component)[s.index]
}

/// Orders in which two slots can be read as consecutive: `+1` when `b`
/// directly follows `a`, `-1` when `a` directly follows `b`.
fn adjacency(d: &Diagram, a: Slot, b: Slot) -> Vec<i64> {
    let mut out = Vec::new();
    if a == b || a.component != b.component {
        return out;
    }
    if next_slot(d, a) == b {
        out.push(1);
    }
    if next_slot(d, b) == a {
        out.push(-1);
    }
    out
}

fn r3_applicable(d: &Diagram, x: CrossingId, y: CrossingId, z: CrossingId) -> bool {
    if x == y || y == z || x == z {
        return false;
    }
    let slots = d.slots();
    let (Some(sx), Some(sy), Some(sz)) = (slots.get(&x), slots.get(&y), slots.get(&z)) else {
        return false;
    };
    let (vx, vy, vz) = (d.sign(x).value(), d.sign(y).value(), d.sign(z).value());
    let top = adjacency(d, sx.over, sy.over);
    let mid = adjacency(d, sx.under, sz.over);
    let bot = adjacency(d, sy.under, sz.under);
    top.iter().any(|&ot| {
        mid.iter().any(|&om| ot * om == vy * vz) && bot.iter().any(|&ob| ot * ob == vx * vz)
    })
}

fn r2_delete_applicable(d: &Diagram, a: CrossingId, b: CrossingId) -> bool {
    if a == b {
        return false;
    }
    let slots = d.slots();
    let (Some(sa), Some(sb)) = (slots.get(&a), slots.get(&b)) else {
        return false;
    };
    d.sign(a) != d.sign(b)
        && !adjacency(d, sa.over, sb.over).is_empty()
        && !adjacency(d, sa.under, sb.under).is_empty()
}

fn r1_delete_applicable(d: &Diagram, c: CrossingId) -> bool {
    d.slots().get(&c).is_some_and(|s| !adjacency(d, s.over, s.under).is_empty())
}

pub fn enumerate_sites(d: &Diagram, family: Family) -> Vec<RMove> {
    let signs = [Sign::Pos, Sign::Neg];
    let bools = [true, false];
    match family {
        Family::R1Insert => d
            .semi_arcs()
            .flat_map(|arc| {
                signs.into_iter().flat_map(move |sign| {
                    bools.into_iter().map(move |over_first| RMove::R1Insert { arc, sign, over_first })
                })
            })
            .collect(),
        Family::R1Delete => d
            .crossings()
            .filter(|&c| r1_delete_applicable(d, c))
            .map(|crossing| RMove::R1Delete { crossing })
            .collect(),
        Family::R2Insert => {
            let arcs: Vec<SemiArcId> = d.semi_arcs().collect();
            let mut out = Vec::new();
            for (i, &first) in arcs.iter().enumerate() {
                for &second in &arcs[i..] {
                    for over_first in bools {
                        for parallel in bools {
                            for sign in signs {
                                out.push(RMove::R2Insert { first, second, over_first, parallel, sign });
                            }
                        }
                    }
                }
            }
            out
        }
        Family::R2Delete => {
            let ids: Vec<CrossingId> = d.crossings().collect();
            let mut out = Vec::new();
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    if r2_delete_applicable(d, a, b) {
                        out.push(RMove::R2Delete { a, b });
                    }
                }
            }
            out
        }
        Family::R3 => {
            let slots = d.slots();
            let mut found = BTreeSet::new();
            for (&x, sx) in &slots {
                for top in [next_slot(d, sx.over), prev_slot(d, sx.over)] {
                    let p = at(d, top);
                    if p.role != Role::Over || p.crossing == x {
                        continue;
                    }
                    let y = p.crossing;
                    for mid in [next_slot(d, sx.under), prev_slot(d, sx.under)] {
                        let q = at(d, mid);
                        if q.role != Role::Over || q.crossing == x || q.crossing == y {
                            continue;
                        }
                        if r3_applicable(d, x, y, q.crossing) {
                            found.insert((x, y, q.crossing));
                        }
                    }
                }
            }
            found.into_iter().map(|(x, y, z)| RMove::R3 { x, y, z }).collect()
        }
    }
}

fn prev_slot(d: &Diagram, s: Slot) -> Slot {
    let n = d.component(s.component).len();
    Slot { component: s.component, index: (s.index + n - 1) % n }
}

pub fn all_sites(d: &Diagram) -> Vec<RMove> {
    Family::ALL.iter().flat_map(|&f| enumerate_sites(d, f)).collect()
}

fn fresh_ids(d: &Diagram, count: u32) -> Result<Vec<CrossingId>> {
    let base = d.max_crossing_id();
    (1..=count).map(|i| base.checked_add(i).ok_or(Error::IdOverflow)).collect()
}

/// Inserts passage runs after the given gaps. Runs for the same gap keep
/// their listed order.
fn insert_runs(d: &Diagram, runs: Vec<(SemiArcId, Vec<Passage>)>) -> Vec<Vec<Passage>> {
    let mut grouped: BTreeMap<SemiArcId, Vec<Passage>> = BTreeMap::new();
    for (arc, run) in runs {
        grouped.entry(arc).or_default().extend(run);
    }
    let mut comps = d.components().to_vec();
    for (arc, run) in grouped.into_iter().rev() {
        let comp = &mut comps[arc.component];
        let at = if comp.is_empty() { 0 } else { arc.gap + 1 };
        comp.splice(at..at, run);
    }
    comps
}

fn remove_crossings(d: &Diagram, gone: &[CrossingId]) -> Diagram {
    let comps = d
        .components()
        .iter()
        .map(|c| c.iter().copied().filter(|p| !gone.contains(&p.crossing)).collect())
        .collect();
    let signs = d.signs().iter().filter(|(c, _)| !gone.contains(c)).map(|(&c, &s)| (c, s)).collect();
    Diagram::from_parts_unchecked(comps, signs)
}

pub fn apply_move(d: &Diagram, mv: &RMove) -> Result<Diagram> {
    let fail = || Error::InapplicableMove(serde_json::to_string(mv).unwrap_or_default());
    let out = match *mv {
        RMove::R1Insert { arc, sign, over_first } => {
            if !d.has_semi_arc(arc) {
                return Err(fail());
            }
            let c = fresh_ids(d, 1)?[0];
            let run = if over_first {
                vec![Passage::over(c), Passage::under(c)]
            } else {
                vec![Passage::under(c), Passage::over(c)]
            };
            let mut signs = d.signs().clone();
            signs.insert(c, sign);
            Diagram::from_parts_unchecked(insert_runs(d, vec![(arc, run)]), signs)
        }
        RMove::R1Delete { crossing } => {
            if !r1_delete_applicable(d, crossing) {
                return Err(fail());
            }
            remove_crossings(d, &[crossing])
        }
        RMove::R2Insert { first, second, over_first, parallel, sign } => {
            if !d.has_semi_arc(first) || !d.has_semi_arc(second) {
                return Err(fail());
            }
            let ids = fresh_ids(d, 2)?;
            let (a, b) = (ids[0], ids[1]);
            let (r1, r2) = if over_first { (Role::Over, Role::Under) } else { (Role::Under, Role::Over) };
            let run1 = vec![Passage { crossing: a, role: r1 }, Passage { crossing: b, role: r1 }];
            let run2 = if parallel {
                vec![Passage { crossing: a, role: r2 }, Passage { crossing: b, role: r2 }]
            } else {
                vec![Passage { crossing: b, role: r2 }, Passage { crossing: a, role: r2 }]
            };
            let mut signs = d.signs().clone();
            signs.insert(a, sign);
            signs.insert(b, sign.flip());
            Diagram::from_parts_unchecked(insert_runs(d, vec![(first, run1), (second, run2)]), signs)
        }
        RMove::R2Delete { a, b } => {
            if !r2_delete_applicable(d, a, b) {
                return Err(fail());
            }
            remove_crossings(d, &[a, b])
        }
        RMove::R3 { x, y, z } => {
            if !r3_applicable(d, x, y, z) {
                return Err(fail());
            }
            let slots = d.slots();
            let (sx, sy, sz) = (slots[&x], slots[&y], slots[&z]);
            let mut comps = d.components().to_vec();
            for (p, q) in [(sx.over, sy.over), (sx.under, sz.over), (sy.under, sz.under)] {
                let tmp = comps[p.component][p.index];
                comps[p.component][p.index] = comps[q.component][q.index];
                comps[q.component][q.index] = tmp;
            }
            Diagram::from_parts_unchecked(comps, d.signs().clone())
        }
    };
    debug_assert!(out.validate().is_empty());
    Ok(out)
}

/// Applies `steps` moves. Each step picks a family uniformly among those
/// with at least one site, then a site of that family uniformly.
pub fn random_walk(d: &Diagram, steps: usize, seed: u64) -> (Diagram, Vec<RMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut log = Vec::with_capacity(steps);
    for _ in 0..steps {
        let options: Vec<Vec<RMove>> = Family::ALL
            .iter()
            .map(|&f| enumerate_sites(&cur, f))
            .filter(|s| !s.is_empty())
            .collect();
        let Some(family) = options.choose(&mut rng) else {
            break;
        };
        let mv = *family.choose(&mut rng).unwrap();
        cur = apply_move(&cur, &mv).expect("enumerated site applies");
        log.push(mv);
    }
    (cur, log)
}
