//! Corpus-level evaluation. With the `parallel` feature the work is spread
//! over the rayon pool; without it everything runs on the calling thread.
//! Output order always follows input order.

use serde::{Deserialize, Serialize};

use crate::covering::cover;
use crate::cuts::canonical_cut_system;
use crate::error::Result;
use crate::gauss::Diagram;
use crate::invariants::obstruct;
use crate::numbering::{build_constraints, defect_gcd};

pub fn map_sequential<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_parallel<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

/// `map_parallel` when the feature is on, `map_sequential` otherwise.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        map_parallel(items, f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_sequential(items, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub crossings: usize,
    pub components: usize,
    /// gcd of the empty-cut-system defects; `m` is solvable iff it divides this.
    pub defect_gcd: u64,
    pub cover_components: usize,
    pub obstructed: bool,
}

/// Numberability, covering size and obstruction verdict for one diagram,
/// using its canonical cut system.
pub fn survey_one(d: &Diagram, m: u32) -> Result<SurveyRow> {
    let g = build_constraints(d, &crate::cuts::CutSystem::empty())?;
    let p = canonical_cut_system(d);
    Ok(SurveyRow {
        crossings: d.crossing_count(),
        components: d.component_count(),
        defect_gcd: defect_gcd(&g),
        cover_components: cover(d, &p, m)?.diagram.component_count(),
        obstructed: obstruct(d, &p, m)?.is_obstructed(),
    })
}

pub fn survey(ds: &[Diagram], m: u32) -> Vec<Result<SurveyRow>> {
    map(ds, |d| survey_one(d, m))
}

pub fn survey_sequential(ds: &[Diagram], m: u32) -> Vec<Result<SurveyRow>> {
    map_sequential(ds, |d| survey_one(d, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Generator};

    #[test]
    fn survey_matches_sequential() {
        let ds: Vec<Diagram> = (0..40)
            .map(|s| generate(Generator::Random { crossings: 4, components: 1 + s as u32 % 3, seed: s }))
            .collect();
        assert_eq!(survey(&ds, 2), survey_sequential(&ds, 2));
    }

    #[test]
    fn survey_of_known_diagrams() {
        let rows = survey(&[generate(Generator::Torus2q(3)), generate(Generator::VirtualTrefoil)], 2);
        let t = rows[0].as_ref().unwrap();
        assert_eq!((t.defect_gcd, t.cover_components, t.obstructed), (0, 2, false));
        let v = rows[1].as_ref().unwrap();
        assert_eq!((v.defect_gcd, v.cover_components, v.obstructed), (1, 2, true));
    }
}
