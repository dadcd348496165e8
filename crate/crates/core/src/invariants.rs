//! Link invariants and the covering obstruction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covering::cover;
use crate::cuts::CutSystem;
use crate::error::{Error, Result};
use crate::gauss::{disjoint_union, self_crossings, Diagram, Role};

pub fn writhe(d: &Diagram) -> i64 {
    d.signs().values().map(|s| s.value()).sum()
}

/// `lk[i][j]` sums the signs of crossings where component `i` passes over
/// component `j`. The diagonal is 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkingMatrix(pub Vec<Vec<i64>>);

impl LinkingMatrix {
    pub fn size(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[i][j]
    }

    /// Canonical representative under simultaneous row/column permutation.
    ///
    /// Components with an all-zero row and column go last. The others are
    /// ordered to minimise the sequence that lists, for k = 0, 1, ..., the
    /// entries `(0,k), (k,0), (1,k), (k,1), ..., (k,k)`. Each step appends a
    /// block of fixed length, so the minimum is built greedily while keeping
    /// every tied partial order.
    pub fn canonical(&self) -> LinkingMatrix {
        let n = self.size();
        let m = &self.0;
        let (linked, isolated): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| (0..n).any(|j| m[i][j] != 0 || m[j][i] != 0));

        let mut states: Vec<Vec<usize>> = vec![Vec::new()];
        for k in 0..linked.len() {
            let mut best: Option<Vec<i64>> = None;
            let mut next = Vec::new();
            for order in &states {
                for &j in &linked {
                    if order.contains(&j) {
                        continue;
                    }
                    let mut block = Vec::with_capacity(2 * k + 1);
                    for &i in order {
                        block.push(m[i][j]);
                        block.push(m[j][i]);
                    }
                    block.push(m[j][j]);
                    match best.as_ref().map(|b| block.cmp(b)) {
                        Some(std::cmp::Ordering::Greater) => continue,
                        Some(std::cmp::Ordering::Equal) => {}
                        _ => {
                            best = Some(block);
                            next.clear();
                        }
                    }
                    let mut o = order.clone();
                    o.push(j);
                    next.push(o);
                }
            }
            states = next;
        }
        let order: Vec<usize> = states.swap_remove(0).into_iter().chain(isolated).collect();
        LinkingMatrix(order.iter().map(|&i| order.iter().map(|&j| m[i][j]).collect()).collect())
    }
}

pub fn linking_matrix(d: &Diagram) -> LinkingMatrix {
    let n = d.component_count();
    let mut lk = vec![vec![0i64; n]; n];
    for (c, s) in d.slots() {
        let (i, j) = (s.over.component, s.under.component);
        if i != j {
            lk[i][j] += d.sign(c).value();
        }
    }
    LinkingMatrix(lk)
}

/// Sum of signs of the odd self-crossings of `component`. A self-crossing is
/// odd when an odd number of self-crossing passages lie strictly between its
/// two passages. Passages of crossings with other components are ignored,
/// so this is the odd writhe of the component taken as a knot.
///
/// Panics if `component` is out of range.
pub fn odd_writhe(d: &Diagram, component: usize) -> i64 {
    let own = self_crossings(d, component);
    let seq: Vec<_> = d.component(component).iter().filter(|p| own.contains(&p.crossing)).collect();
    let mut total = 0;
    for (i, p) in seq.iter().enumerate() {
        if p.role != Role::Over {
            continue;
        }
        let j = seq.iter().position(|q| q.crossing == p.crossing && q.role == Role::Under).unwrap();
        let between = if j > i { j - i - 1 } else { i - j - 1 };
        if between % 2 == 1 {
            total += d.sign(p.crossing).value();
        }
    }
    total
}

/// Comparison object for equivalence arguments: component count, canonical
/// linking matrix and the sorted per-component odd writhes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    pub components: usize,
    pub linking: LinkingMatrix,
    pub odd_writhes: Vec<i64>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .linking
            .0
            .iter()
            .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let ow: Vec<String> = self.odd_writhes.iter().map(i64::to_string).collect();
        write!(f, "c={} lk=[{}] ow=[{}]", self.components, rows.join(","), ow.join(","))
    }
}

pub fn fingerprint(d: &Diagram) -> Fingerprint {
    let mut odd_writhes: Vec<i64> = (0..d.component_count()).map(|c| odd_writhe(d, c)).collect();
    odd_writhes.sort_unstable();
    Fingerprint {
        components: d.component_count(),
        linking: linking_matrix(d).canonical(),
        odd_writhes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Verdict {
    /// The covering and the m-fold union of the diagram have different
    /// fingerprints, so the link is not mod-m almost classical.
    Obstructed { cover: Fingerprint, union: Fingerprint },
    Inconclusive,
}

impl Verdict {
    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Obstructed { cover, union } => {
                write!(f, "Obstructed(cover: {cover}; union: {union})")
            }
            Verdict::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

/// Compares the fingerprint of the m-fold covering with that of m disjoint
/// copies of `d`.
pub fn obstruct(d: &Diagram, p: &CutSystem, m: u32) -> Result<Verdict> {
    if m < 2 {
        return Err(Error::BadModulus { min: 2, got: m });
    }
    let lifted = fingerprint(&cover(d, p, m)?.diagram);
    let copies = vec![d.clone(); m as usize];
    let union = fingerprint(&disjoint_union(&copies));
    Ok(if lifted != union {
        Verdict::Obstructed { cover: lifted, union }
    } else {
        Verdict::Inconclusive
    })
}

/// The invariants JSON document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub components: usize,
    pub writhe: i64,
    pub linking: Vec<Vec<i64>>,
    pub odd_writhe: Vec<i64>,
    pub fingerprint: String,
}

pub fn report(d: &Diagram) -> InvariantReport {
    InvariantReport {
        components: d.component_count(),
        writhe: writhe(d),
        linking: linking_matrix(d).0,
        odd_writhe: (0..d.component_count()).map(|c| odd_writhe(d, c)).collect(),
        fingerprint: fingerprint(d).to_string(),
    }
}
