//! Canonical keys: a complete invariant of diagrams up to renaming
//! crossings, permuting components and rotating each component.
//!
//! Components that share crossings form a block; blocks are encoded
//! separately and the block codes are sorted. Inside a block, components are
//! emitted one at a time, each as `[length, token...]` where a token packs
//! (label, role, sign) and labels are handed out in order of first
//! appearance. The block code is the lexicographic minimum over every
//! choice of component order and starting gap. Because each segment begins
//! with its length, the minimum is found greedily, keeping every tied
//! partial state.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use crate::gauss::{linked_blocks, CrossingId, Diagram, Passage, Role, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

// components used, labels handed out
type Signature = (Vec<bool>, Vec<(CrossingId, u32)>);

#[derive(Clone)]
struct State {
    used: Vec<bool>,
    labels: BTreeMap<CrossingId, u32>,
}

fn token(label: u32, p: Passage, s: Sign) -> u32 {
    let role = match p.role {
        Role::Over => 0,
        Role::Under => 2,
    };
    let sign = match s {
        Sign::Pos => 0,
        Sign::Neg => 1,
    };
    (label << 2) | role | sign
}

fn encode(d: &Diagram, comp: &[Passage], start: usize, state: &State) -> (Vec<u32>, BTreeMap<CrossingId, u32>) {
    let mut labels = state.labels.clone();
    let mut out = Vec::with_capacity(comp.len() + 1);
    out.push(comp.len() as u32);
    for i in 0..comp.len() {
        let p = comp[(start + i) % comp.len()];
        let next = labels.len() as u32;
        let label = *labels.entry(p.crossing).or_insert(next);
        out.push(token(label, p, d.sign(p.crossing)));
    }
    (out, labels)
}

fn block_code(d: &Diagram, block: &[usize]) -> Vec<u32> {
    let mut states = vec![State { used: vec![false; block.len()], labels: BTreeMap::new() }];
    let mut code = Vec::new();
    for _ in 0..block.len() {
        let mut best: Option<Vec<u32>> = None;
        let mut next: Vec<State> = Vec::new();
        let mut seen: HashSet<Signature> = HashSet::new();
        for st in &states {
            for (bi, &ci) in block.iter().enumerate() {
                if st.used[bi] {
                    continue;
                }
                let comp = d.component(ci);
                for start in 0..comp.len().max(1) {
                    let (seg, labels) = encode(d, comp, start, st);
                    let ord = best.as_ref().map(|b| seg.cmp(b));
                    if ord == Some(std::cmp::Ordering::Greater) {
                        continue;
                    }
                    if ord == Some(std::cmp::Ordering::Less) || best.is_none() {
                        best = Some(seg);
                        next.clear();
                        seen.clear();
                    }
                    let mut used = st.used.clone();
                    used[bi] = true;
                    let sig = (used.clone(), labels.iter().map(|(&a, &b)| (a, b)).collect());
                    if seen.insert(sig) {
                        next.push(State { used, labels });
                    }
                }
            }
        }
        code.extend(best.expect("block has an unused component"));
        states = next;
    }
    code
}

pub fn canonical_key(d: &Diagram) -> CanonicalKey {
    let mut blocks: Vec<Vec<u32>> =
        linked_blocks(d).iter().map(|b| block_code(d, b)).collect();
    blocks.sort();
    let mut words = vec![blocks.len() as u32];
    for b in blocks {
        words.push(b.len() as u32);
        words.extend(b);
    }
    CanonicalKey(words.iter().flat_map(|w| w.to_be_bytes()).collect())
}

pub fn isomorphic(a: &Diagram, b: &Diagram) -> bool {
    canonical_key(a) == canonical_key(b)
}

/// The representative spelled out by the canonical key: crossings renamed
/// 1, 2, ... and components reordered and rotated into canonical position.
pub fn canonical_form(d: &Diagram) -> Diagram {
    let key = canonical_key(d);
    let words: Vec<u32> =
        key.0.chunks(4).map(|c| u32::from_be_bytes([c[0], c[1], c[2], c[3]])).collect();
    let mut components = Vec::new();
    let mut signs = BTreeMap::new();
    let mut offset = 0u32;
    let mut i = 1;
    for _ in 0..words[0] {
        let len = words[i] as usize;
        let block = &words[i + 1..i + 1 + len];
        i += 1 + len;
        let mut j = 0;
        let mut block_max = 0;
        while j < block.len() {
            let n = block[j] as usize;
            let mut comp = Vec::with_capacity(n);
            for &t in &block[j + 1..j + 1 + n] {
                let crossing = (t >> 2) + 1 + offset;
                block_max = block_max.max(crossing);
                let role = if t & 2 == 0 { Role::Over } else { Role::Under };
                let sign = if t & 1 == 0 { Sign::Pos } else { Sign::Neg };
                comp.push(Passage { crossing, role });
                signs.insert(crossing, sign);
            }
            components.push(comp);
            j += 1 + n;
        }
        offset = offset.max(block_max);
    }
    Diagram::from_parts_unchecked(components, signs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_diagram;
    use crate::gauss::disjoint_union;

    fn key(t: &str) -> CanonicalKey {
        canonical_key(&parse_diagram(t).unwrap().0)
    }

    #[test]
    fn relabeling_and_rotation() {
        assert_eq!(key("O1+ U1+"), key("O7+ U7+"));
        assert_eq!(key("O1+ U2+ O2+ U1+"), key("U2+ O2+ U1+ O1+"));
        // a kink read from either passage is the same cyclic word
        assert_eq!(key("O1+ U1+"), key("U1+ O1+"));
    }

    #[test]
    fn distinguishes_signs_roles_and_orientation() {
        assert_ne!(key("O1+ U1+"), key("O1- U1-"));
        assert_ne!(key("O1+ O2+ U1+ U2+"), key("O1+ O2+ U2+ U1+"));
        // reversing a component is not an isomorphism
        assert_ne!(key("O1+ O2+ O3+ U1+ U3+ U2+"), key("U2+ U3+ U1+ O3+ O2+ O1+"));
    }

    #[test]
    fn component_order_does_not_matter() {
        assert_eq!(key("O1+ U2+\nU1+ O2+\n()"), key("()\nO5+ U6+\nU5+ O6+"));
    }

    #[test]
    fn union_with_empty_is_identity() {
        let d = parse_diagram("O1+ U2+ O3+ U1+ O2+ U3+").unwrap().0;
        assert_eq!(canonical_key(&disjoint_union(&[d.clone(), Diagram::empty()])), canonical_key(&d));
    }

    #[test]
    fn canonical_form_is_isomorphic() {
        let d = parse_diagram("O4+ U9-\nU4+ O2- U2-\nO9- \n()").unwrap().0;
        let c = canonical_form(&d);
        assert!(c.validate().is_empty());
        assert_eq!(canonical_key(&c), canonical_key(&d));
    }
}
