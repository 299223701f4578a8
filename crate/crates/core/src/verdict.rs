use serde::Serialize;

use crate::finite_sets::FinSet;
use crate::soft_core::{SoftElement, SoftSet};

/// Which topology of a bitopological pair a set is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
    Both,
}

impl Side {
    pub fn includes_first(self) -> bool {
        matches!(self, Side::First | Side::Both)
    }

    pub fn includes_second(self) -> bool {
        matches!(self, Side::Second | Side::Both)
    }
}

/// Evidence attached to a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two soft elements that could not be separated.
    ElementPair {
        first: SoftElement,
        second: SoftElement,
    },
    /// Two points of a component space `F(param)` that could not be separated.
    PointPair {
        param: usize,
        first: usize,
        second: usize,
    },
    /// Two points of `SE(F)` (by index) not separated in the induced bitopology.
    InducedPair {
        first: usize,
        second: usize,
    },
    /// A point of the target's section at `param` missed by the cover.
    Uncovered {
        param: usize,
        point: usize,
    },
    /// A cover member that is not open on its tagged side.
    NonOpenMember {
        index: usize,
        side: Side,
    },
    /// A finite subfamily (indices into the cover).
    Subfamily {
        members: Vec<usize>,
    },
    /// Symbolic parameter whose section is not covered: the union of the
    /// relevant member sections and the target section there.
    UncoveredLabel {
        label: u64,
        union: FinSet,
        target: FinSet,
    },
    /// Finite subfamily of a symbolic family: template indices and explicit
    /// member positions.
    SymbolicSubfamily {
        template_indices: Vec<u64>,
        explicit_members: Vec<usize>,
    },
    /// Two members of an induced family whose intersection or union is
    /// missing from it.
    InducedSets {
        first: Vec<SoftElement>,
        second: Vec<SoftElement>,
    },
    /// A soft set relevant to a failed structural check.
    SoftSet {
        set: SoftSet,
    },
    Detail {
        message: String,
    },
}

/// Outcome of a decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
        }
    }

    pub fn holds_with(witness: Witness) -> Self {
        Verdict {
            holds: true,
            witness: Some(witness),
        }
    }
}
