use crate::gauss::{CrossingId, SemiArcId, Violation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("crossing {0} must appear exactly once as O and once as U")]
    Pairing(CrossingId),

    #[error("crossing {0} is written with both signs")]
    SignConflict(CrossingId),

    #[error("diagram is malformed: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidDiagram(Vec<Violation>),

    #[error("cut mark on component {}, gap {} does not lie on the diagram", .0.component, .0.gap)]
    DanglingMark(SemiArcId),

    #[error("cut marks do not admit an integer Alexander numbering")]
    InvalidCutSystem,

    #[error("sheet count must be at least {min}, got {got}")]
    BadModulus { min: u32, got: u32 },

    #[error("cut move not applicable: {0}")]
    InapplicableCutMove(String),

    #[error("move not applicable: {0}")]
    InapplicableMove(String),

    #[error("numbering does not satisfy the constraint graph")]
    NotASolution,

    #[error("crossing id overflow while relabeling")]
    IdOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
