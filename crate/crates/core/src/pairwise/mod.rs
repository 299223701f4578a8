//! Soft bitopological spaces: pairwise soft separation, the induced
//! bitopology on soft elements, pairwise soft open covers and cylinders.

mod search;
mod theorems;

pub use search::{search_counterexamples, CounterexampleCensus, FoundEnlargement, FoundSpace};
pub use theorems::{verify_theorems, Status, TheoremCheck, TheoremReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_sets::{
    decide_separation, minimal_subcover, smallest_cover, Axiom, BitopPair, FamilyPair, FinSet,
    PairReading, Separation,
};
use crate::soft_core::{enumerate_soft_elements, SoftElements, SoftSet};
use crate::soft_topology::{induced_topology, SoftTopology};
use crate::verdict::{Side, Verdict, Witness};

/// A soft set with two soft topologies on it, plus its enumerated soft elements.
#[derive(Clone, Debug)]
pub struct SoftBitopSpace {
    se: SoftElements,
    tau1: SoftTopology,
    tau2: SoftTopology,
}

impl SoftBitopSpace {
    pub fn new(tau1: SoftTopology, tau2: SoftTopology) -> Result<Self> {
        if tau1.ambient() != tau2.ambient() {
            return Err(Error::Input(format!(
                "soft topologies live on different soft sets: {} and {}",
                tau1.ambient(),
                tau2.ambient()
            )));
        }
        let se = enumerate_soft_elements(tau1.ambient())?;
        Ok(SoftBitopSpace { se, tau1, tau2 })
    }

    pub fn ambient(&self) -> &SoftSet {
        self.se.ambient()
    }

    pub fn soft_elements(&self) -> &SoftElements {
        &self.se
    }

    pub fn tau1(&self) -> &SoftTopology {
        &self.tau1
    }

    pub fn tau2(&self) -> &SoftTopology {
        &self.tau2
    }

    pub fn param_count(&self) -> usize {
        self.ambient().param_count()
    }

    pub fn is_canonical(&self) -> bool {
        self.tau1.is_canonical() && self.tau2.is_canonical()
    }

    /// The same soft set with both topologies replaced by their canonical
    /// enlargements.
    pub fn canonicalized(&self) -> Result<SoftBitopSpace> {
        SoftBitopSpace::new(
            self.tau1.canonical_enlargement()?,
            self.tau2.canonical_enlargement()?,
        )
    }

    fn is_open_on(&self, side: Side, h: &SoftSet) -> bool {
        (!side.includes_first() || self.tau1.is_open(h))
            && (!side.includes_second() || self.tau2.is_open(h))
    }
}

/// Smallest soft open around every soft element, for one soft topology.
#[derive(Clone, Debug)]
pub(crate) struct NeighbourhoodTable {
    nbhd: Vec<SoftSet>,
}

impl NeighbourhoodTable {
    pub(crate) fn new(se: &SoftElements, tau: &SoftTopology) -> Self {
        NeighbourhoodTable {
            nbhd: se.elements().iter().map(|a| tau.neighbourhood(a)).collect(),
        }
    }
}

pub(crate) fn soft_separation_from_tables(
    se: &SoftElements,
    first: &NeighbourhoodTable,
    second: &NeighbourhoodTable,
    axiom: Axiom,
    reading: PairReading,
) -> Separation {
    decide_separation(
        se.len(),
        axiom,
        reading,
        |a, b| first.nbhd[a].contains_element(se.get(b)),
        |a, b| second.nbhd[a].contains_element(se.get(b)),
        |a, b| first.nbhd[a].intersection(&second.nbhd[b]).is_null(),
    )
}

/// Pairwise soft separation over `SE(F)`; the witness is the least failing
/// pair of soft-element indices.
///
/// `a ∈_s H` fails as soon as one coordinate misses, and `H ∩_s K = Φ`
/// requires every section of the intersection to be empty. Since soft opens
/// are closed under finite intersections, each quantifier over opens reduces
/// to the smallest soft open around the element.
pub fn pairwise_soft_separation(
    space: &SoftBitopSpace,
    axiom: Axiom,
    reading: PairReading,
) -> Separation {
    let n1 = NeighbourhoodTable::new(&space.se, &space.tau1);
    let n2 = NeighbourhoodTable::new(&space.se, &space.tau2);
    soft_separation_from_tables(&space.se, &n1, &n2, axiom, reading)
}

fn separation_verdict(space: &SoftBitopSpace, outcome: Separation) -> Verdict {
    match outcome {
        Separation::Holds => Verdict::holds(),
        Separation::FailsAt(a, b) => Verdict::fails(Witness::ElementPair {
            first: space.se.get(a).clone(),
            second: space.se.get(b).clone(),
        }),
    }
}

pub fn pairwise_soft(space: &SoftBitopSpace, axiom: Axiom) -> Verdict {
    separation_verdict(
        space,
        pairwise_soft_separation(space, axiom, PairReading::Ordered),
    )
}

pub fn pairwise_soft_t0(space: &SoftBitopSpace) -> Verdict {
    pairwise_soft(space, Axiom::T0)
}

pub fn pairwise_soft_t1(space: &SoftBitopSpace) -> Verdict {
    pairwise_soft(space, Axiom::T1)
}

pub fn pairwise_soft_t2(space: &SoftBitopSpace) -> Verdict {
    pairwise_soft(space, Axiom::T2)
}

/// `((τ1)*, (τ2)*)` on the soft-element indices, as set families since
/// either may fail to be a topology.
pub fn induced_bitop(space: &SoftBitopSpace) -> Result<FamilyPair> {
    FamilyPair::new(
        induced_topology(&space.se, &space.tau1)?,
        induced_topology(&space.se, &space.tau2)?,
    )
}

/// `(F(t), (τ1)_t, (τ2)_t)`.
pub fn component_bitop(space: &SoftBitopSpace, t: usize) -> Result<BitopPair> {
    BitopPair::new(
        space.tau1.component_topology(t)?,
        space.tau2.component_topology(t)?,
    )
}

/// A cover member tagged with the topology it is claimed to be open in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverMember {
    pub set: SoftSet,
    pub side: Side,
}

/// A candidate pairwise soft open cover of `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SoftCover {
    pub target: SoftSet,
    pub members: Vec<CoverMember>,
}

impl SoftCover {
    /// Every open of both topologies, each tagged with the side(s) it is open on.
    pub fn all_opens(space: &SoftBitopSpace, target: SoftSet) -> Self {
        let mut members: Vec<CoverMember> = Vec::new();
        for h in space.tau1.opens() {
            let side = if space.tau2.is_open(h) {
                Side::Both
            } else {
                Side::First
            };
            members.push(CoverMember {
                set: h.clone(),
                side,
            });
        }
        for h in space.tau2.opens() {
            if !space.tau1.is_open(h) {
                members.push(CoverMember {
                    set: h.clone(),
                    side: Side::Second,
                });
            }
        }
        SoftCover { target, members }
    }

    fn union(&self) -> SoftSet {
        let null = SoftSet::null(self.target.param_count(), self.target.universe_size());
        self.members.iter().fold(null, |acc, m| acc.union(&m.set))
    }
}

/// Members must be open on their tagged side and their soft union must
/// contain the target parameterwise.
pub fn is_pairwise_soft_cover(space: &SoftBitopSpace, cover: &SoftCover) -> Verdict {
    for (index, m) in cover.members.iter().enumerate() {
        if m.set.same_shape(space.ambient()).is_err() || !space.is_open_on(m.side, &m.set) {
            return Verdict::fails(Witness::NonOpenMember {
                index,
                side: m.side,
            });
        }
    }
    if cover.target.same_shape(space.ambient()).is_err() {
        return Verdict::fails(Witness::Detail {
            message: "target shape differs from the ambient soft set".into(),
        });
    }
    let union = cover.union();
    for t in 0..cover.target.param_count() {
        let missing = *cover.target.section(t) - *union.section(t);
        let first = missing.iter().next();
        if let Some(point) = first {
            return Verdict::fails(Witness::Uncovered { param: t, point });
        }
    }
    Verdict::holds()
}

/// Certificate of a finite subcover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteSubcover {
    /// For each parameter, a minimum subfamily whose sections cover the target section.
    pub per_parameter: Vec<Vec<usize>>,
    /// Union of the per-parameter subfamilies; always a subcover.
    pub parameter_union: Vec<usize>,
    /// A minimum-cardinality subcover, lexicographically least among those.
    pub members: Vec<usize>,
}

/// Finite subcover of a pairwise soft open cover over a finite parameter set.
///
/// The per-parameter subcovers are combined first (their union is a subcover
/// because only finitely many parameters exist); the global minimum is then
/// found by exhaustive search, which never needs more members than that union.
pub fn find_finite_subcover(space: &SoftBitopSpace, cover: &SoftCover) -> Result<FiniteSubcover> {
    let verdict = is_pairwise_soft_cover(space, cover);
    if !verdict.holds {
        return Err(Error::NotACover(format!("{:?}", verdict.witness)));
    }
    let per_parameter = (0..cover.target.param_count())
        .map(|t| {
            let sections: Vec<FinSet> = cover.members.iter().map(|m| *m.set.section(t)).collect();
            minimal_subcover(&sections, cover.target.section(t))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut parameter_union: Vec<usize> = per_parameter.iter().flatten().copied().collect();
    parameter_union.sort_unstable();
    parameter_union.dedup();

    let sets: Vec<SoftSet> = cover.members.iter().map(|m| m.set.clone()).collect();
    let null = SoftSet::null(cover.target.param_count(), cover.target.universe_size());
    let members = smallest_cover(
        &sets,
        &cover.target,
        null,
        |a, b| a.union(b),
        |a, b| b.is_soft_subset_of(a),
        |a, b| a.meets(b),
    )
    .expect("a verified cover has a finite subcover");
    debug_assert!(members.len() <= parameter_union.len());
    Ok(FiniteSubcover {
        per_parameter,
        parameter_union,
        members,
    })
}

/// A cylinder soft set and whether it is open on the requested side(s).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cylinder {
    pub set: SoftSet,
    pub open: bool,
}

/// `K_V`: `V` at `t0`, the full section `F(t)` elsewhere.
///
/// `V` must be open in the component topology at `t0` of each tagged side.
/// Canonical topologies always contain the cylinder; a non-canonical one may
/// not, which is reported through [`Cylinder::open`].
pub fn cylinder(space: &SoftBitopSpace, t0: usize, v: &FinSet, side: Side) -> Result<Cylinder> {
    if t0 >= space.param_count() {
        return Err(Error::ParamOutOfRange {
            param: t0,
            count: space.param_count(),
        });
    }
    for (included, tau) in [
        (side.includes_first(), &space.tau1),
        (side.includes_second(), &space.tau2),
    ] {
        if included && !tau.component_topology(t0)?.is_open(v) {
            return Err(Error::NotComponentOpen {
                param: t0,
                set: v.to_string(),
            });
        }
    }
    let set = space.ambient().with_section(t0, *v);
    let open = space.is_open_on(side, &set);
    if (!side.includes_first() || space.tau1.is_canonical())
        && (!side.includes_second() || space.tau2.is_canonical())
    {
        assert!(
            open,
            "canonical soft topologies contain every cylinder over a component open"
        );
    }
    Ok(Cylinder { set, open })
}
