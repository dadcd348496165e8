// Independent oracles and random inputs shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vcover::cuts::{apply_cut_move, canonical_cut_system, enumerate_cut_moves, CutMove, CutSystem, Eps};
use vcover::gauss::{CrossingId, Diagram, Passage, SemiArcId, Sign};
use vcover::numbering::ConstraintGraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Searches every component bijection and every rotation tuple for a
/// crossing bijection that preserves roles and signs.
pub fn brute_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    if a.component_count() != b.component_count() || a.crossing_count() != b.crossing_count() {
        return false;
    }
    let n = a.component_count();
    permutations(n).into_iter().any(|perm| {
        if (0..n).any(|i| a.component(i).len() != b.component(perm[i]).len()) {
            return false;
        }
        rotations(a, b, &perm, 0, &mut BTreeMap::new(), &mut BTreeMap::new())
    })
}

fn rotations(
    a: &Diagram,
    b: &Diagram,
    perm: &[usize],
    i: usize,
    fwd: &mut BTreeMap<CrossingId, CrossingId>,
    back: &mut BTreeMap<CrossingId, CrossingId>,
) -> bool {
    if i == perm.len() {
        return true;
    }
    let ca = a.component(i);
    let cb = b.component(perm[i]);
    if ca.is_empty() {
        return rotations(a, b, perm, i + 1, fwd, back);
    }
    for r in 0..ca.len() {
        let (mut f, mut g) = (fwd.clone(), back.clone());
        let ok = (0..ca.len()).all(|j| {
            let (pa, pb) = (ca[j], cb[(j + r) % cb.len()]);
            if pa.role != pb.role || a.sign(pa.crossing) != b.sign(pb.crossing) {
                return false;
            }
            *f.entry(pa.crossing).or_insert(pb.crossing) == pb.crossing
                && *g.entry(pb.crossing).or_insert(pa.crossing) == pa.crossing
        });
        if ok && rotations(a, b, perm, i + 1, &mut f, &mut g) {
            return true;
        }
    }
    false
}

/// Every diagram with the given crossing count whose components have the
/// given lengths (0 for a free loop), up to nothing: all passage orders and
/// all sign tables.
pub fn all_diagrams(n: u32, lengths: &[usize]) -> Vec<Diagram> {
    assert_eq!(lengths.iter().sum::<usize>(), 2 * n as usize);
    let passages: Vec<Passage> = (1..=n).flat_map(|c| [Passage::over(c), Passage::under(c)]).collect();
    let mut out = Vec::new();
    for perm in permutations(passages.len()) {
        let seq: Vec<Passage> = perm.iter().map(|&i| passages[i]).collect();
        let mut comps = Vec::new();
        let mut at = 0;
        for &l in lengths {
            comps.push(seq[at..at + l].to_vec());
            at += l;
        }
        for mask in 0..(1u32 << n) {
            let signs = (1..=n)
                .map(|c| (c, if mask >> (c - 1) & 1 == 0 { Sign::Pos } else { Sign::Neg }))
                .collect();
            out.push(Diagram::new(comps.clone(), signs).unwrap());
        }
    }
    out
}

/// Renames crossings at random, permutes components and rotates each one.
pub fn scramble(d: &Diagram, rng: &mut ChaCha8Rng) -> Diagram {
    let mut ids: Vec<CrossingId> = (1..=1000).collect();
    ids.shuffle(rng);
    let rename: BTreeMap<CrossingId, CrossingId> = d.crossings().zip(ids).collect();
    let mut comps: Vec<Vec<Passage>> = d
        .components()
        .iter()
        .map(|c| {
            let mut c: Vec<Passage> =
                c.iter().map(|p| Passage { crossing: rename[&p.crossing], role: p.role }).collect();
            if !c.is_empty() {
                let r = rng.gen_range(0..c.len());
                c.rotate_left(r);
            }
            c
        })
        .collect();
    comps.shuffle(rng);
    let signs = d.signs().iter().map(|(c, &s)| (rename[c], s)).collect();
    Diagram::new(comps, signs).unwrap()
}

/// Up to `max` marks dropped on random gaps with random directions.
pub fn random_marks(d: &Diagram, max: usize, rng: &mut ChaCha8Rng) -> CutSystem {
    let arcs: Vec<SemiArcId> = d.semi_arcs().collect();
    let mut gaps: BTreeMap<SemiArcId, Vec<Eps>> = BTreeMap::new();
    if arcs.is_empty() {
        return CutSystem::empty();
    }
    for _ in 0..rng.gen_range(0..=max) {
        let arc = *arcs.choose(rng).unwrap();
        let e = if rng.gen_bool(0.5) { Eps::Coherent } else { Eps::Incoherent };
        gaps.entry(arc).or_default().push(e);
    }
    CutSystem::from_gaps(gaps)
}

/// The canonical system followed by up to `moves` random cut moves.
pub fn random_valid_system(d: &Diagram, moves: usize, rng: &mut ChaCha8Rng) -> CutSystem {
    random_cut_moves(d, &canonical_cut_system(d), moves, rng)
}

/// Applies up to `moves` random cut moves. Each step picks a move kind
/// uniformly among the applicable kinds, so inserts do not swamp the others.
pub fn random_cut_moves(d: &Diagram, p: &CutSystem, moves: usize, rng: &mut ChaCha8Rng) -> CutSystem {
    let mut p = p.clone();
    for _ in 0..rng.gen_range(0..=moves) {
        let mut kinds: BTreeMap<u8, Vec<CutMove>> = BTreeMap::new();
        for mv in enumerate_cut_moves(d, &p) {
            let k = match mv {
                CutMove::Insert { .. } => 0,
                CutMove::Delete { .. } => 1,
                CutMove::Transpose { .. } => 2,
                CutMove::Exchange { .. } => 3,
            };
            kinds.entry(k).or_default().push(mv);
        }
        let kinds: Vec<Vec<CutMove>> = kinds.into_values().collect();
        let Some(kind) = kinds.choose(rng) else { break };
        p = apply_cut_move(d, &p, kind.choose(rng).unwrap()).unwrap();
    }
    p
}

/// Backtracking over every assignment of residues to nodes in node order,
/// rejecting a partial assignment as soon as an edge between two assigned
/// nodes fails.
pub fn exhaustive_solvable(g: &ConstraintGraph, m: u32) -> bool {
    let n = g.nodes().len();
    let idx: Vec<(usize, usize, i64)> = g
        .edges()
        .iter()
        .map(|e| (g.index_of(e.from).unwrap(), g.index_of(e.to).unwrap(), e.offset))
        .collect();
    // edges checked once both endpoints are assigned, i.e. at the later one
    let mut due: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); n];
    for &(u, v, o) in &idx {
        due[u.max(v)].push((u, v, o));
    }
    let mut vals = vec![0i64; n];
    fn go(i: usize, m: i64, vals: &mut Vec<i64>, due: &[Vec<(usize, usize, i64)>]) -> bool {
        if i == vals.len() {
            return true;
        }
        for x in 0..m {
            vals[i] = x;
            if due[i].iter().all(|&(u, v, o)| (vals[v] - vals[u] - o).rem_euclid(m) == 0)
                && go(i + 1, m, vals, due)
            {
                return true;
            }
        }
        false
    }
    go(0, m as i64, &mut vals, &due)
}

pub fn random_diagram(rng: &mut ChaCha8Rng, max_crossings: u32, max_components: u32) -> Diagram {
    let crossings = rng.gen_range(0..=max_crossings);
    let components = rng.gen_range(1..=max_components);
    vcover::generate(vcover::Generator::Random { crossings, components, seed: rng.gen() })
}

