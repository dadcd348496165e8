//! Test-corpus generators.
//!
//! `Random` is reproducible across platforms: it draws from a ChaCha8 stream
//! seeded with the given `u64`. The 2n passages (one Over and one Under per
//! crossing) are shuffled uniformly, split into the requested number of
//! components at uniformly chosen distinct cut positions, and every crossing
//! gets an independent uniform sign.

use std::collections::BTreeMap;

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::gauss::{CrossingId, Diagram, Passage, Role, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    /// Closure of the two-strand braid with `q` equal crossings.
    Torus2q(u32),
    VirtualTrefoil,
    Hopf,
    Random { crossings: u32, components: u32, seed: u64 },
}

pub fn generate(kind: Generator) -> Diagram {
    match kind {
        Generator::Torus2q(q) => torus_2q(q),
        Generator::VirtualTrefoil => Diagram::new(
            vec![vec![Passage::over(1), Passage::over(2), Passage::under(1), Passage::under(2)]],
            BTreeMap::from([(1, Sign::Pos), (2, Sign::Pos)]),
        )
        .unwrap(),
        Generator::Hopf => torus_2q(2),
        Generator::Random { crossings, components, seed } => random(crossings, components, seed),
    }
}

/// Walks the braid closure: step `i` meets crossing `i mod q + 1`. Each
/// strand alternates over and under; for even `q` the second strand starts
/// under and each strand closes after `q` steps.
fn torus_2q(q: u32) -> Diagram {
    let steps: Vec<Passage> = (0..2 * q)
        .map(|i| Passage {
            crossing: i % q + 1,
            role: if (i % q) % 2 == (i / q) % 2 { Role::Over } else { Role::Under },
        })
        .collect();
    let components = if q == 0 {
        Vec::new()
    } else if q.is_multiple_of(2) {
        steps.chunks(q as usize).map(<[Passage]>::to_vec).collect()
    } else {
        vec![steps]
    };
    let signs = (1..=q).map(|c| (c, Sign::Pos)).collect();
    Diagram::new(components, signs).unwrap()
}

fn random(n: u32, comps: u32, seed: u64) -> Diagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<Passage> =
        (1..=n).flat_map(|c| [Passage::over(c), Passage::under(c)]).collect();
    slots.shuffle(&mut rng);
    let signs: BTreeMap<CrossingId, Sign> = (1..=n)
        .map(|c| (c, if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
        .collect();

    let total = slots.len();
    let comps = comps as usize;
    let mut components = Vec::with_capacity(comps);
    if comps == 0 {
        // nothing to place the passages on
        return Diagram::new(Vec::new(), BTreeMap::new()).unwrap();
    }
    if total >= comps {
        let mut cuts: Vec<usize> = if comps > 1 {
            index::sample(&mut rng, total - 1, comps - 1).into_iter().map(|i| i + 1).collect()
        } else {
            Vec::new()
        };
        cuts.sort_unstable();
        let mut start = 0;
        for end in cuts.into_iter().chain(std::iter::once(total)) {
            components.push(slots[start..end].to_vec());
            start = end;
        }
    } else {
        components.extend(slots.into_iter().map(|p| vec![p]));
        components.resize(comps, Vec::new());
    }
    Diagram::new(components, signs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{parse_diagram, serialize};
    use crate::cuts::CutSystem;

    #[test]
    fn trefoil_code() {
        let d = generate(Generator::Torus2q(3));
        assert_eq!(serialize(&d, &CutSystem::empty()).unwrap(), "O1+ U2+ O3+ U1+ O2+ U3+");
    }

    #[test]
    fn hopf_code() {
        let d = generate(Generator::Hopf);
        assert_eq!(d, parse_diagram("O1+ U2+\nU1+ O2+").unwrap().0);
    }

    #[test]
    fn virtual_trefoil_code() {
        let d = generate(Generator::VirtualTrefoil);
        assert_eq!(serialize(&d, &CutSystem::empty()).unwrap(), "O1+ O2+ U1+ U2+");
    }

    #[test]
    fn torus_component_counts() {
        for q in 1..10 {
            let d = generate(Generator::Torus2q(q));
            assert_eq!(d.component_count(), if q % 2 == 0 { 2 } else { 1 });
            assert_eq!(d.crossing_count(), q as usize);
        }
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        let a = generate(Generator::Random { crossings: 5, components: 1, seed: 42 });
        let b = generate(Generator::Random { crossings: 5, components: 1, seed: 42 });
        assert_eq!(a, b);
        assert_eq!(a.crossing_count(), 5);
        for seed in 0..200 {
            for comps in 0..5 {
                let d = generate(Generator::Random { crossings: seed as u32 % 7, components: comps, seed });
                assert!(d.validate().is_empty());
                assert_eq!(d.component_count(), comps as usize);
                if d.passage_count() >= comps as usize {
                    assert!(d.components().iter().all(|c| !c.is_empty()));
                }
            }
        }
    }
}
