//! Alexander numberings, cut systems and cyclic covering diagrams of
//! virtual links given as signed Gauss codes.

pub mod batch;
pub mod canon;
pub mod covering;
pub mod cuts;
pub mod error;
pub mod format;
pub mod gauss;
pub mod generate;
pub mod invariants;
pub mod moves;
pub mod numbering;

pub use canon::{canonical_form, canonical_key, isomorphic, CanonicalKey};
pub use covering::{component_shifts, cover, induced_numbering, predicted_components, SheetedDiagram, ShiftVector};
pub use cuts::{apply_cut_move, canonical_cut_system, enumerate_cut_moves, CutMove, CutSystem, Eps};
pub use error::{Error, Result};
pub use format::{parse_diagram, parse_unchecked, serialize};
pub use gauss::{disjoint_union, CrossingId, Diagram, Passage, Role, SemiArcId, Sign};
pub use generate::{generate, Generator};
pub use invariants::{fingerprint, linking_matrix, obstruct, odd_writhe, writhe, Fingerprint, LinkingMatrix, Verdict};
pub use moves::{apply_move, enumerate_sites, random_walk, Family, RMove};
pub use numbering::{build_constraints, defect_gcd, solve, ArcId, ConstraintGraph, Numbering, Solution, Witness};
