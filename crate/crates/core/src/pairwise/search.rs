//! Exhaustive search for small spaces that illustrate two gaps: soft
//! separation failing while the induced bitopology is Hausdorff, and soft
//! topologies strictly smaller than their canonical enlargement.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::{soft_separation_from_tables, NeighbourhoodTable, SoftBitopSpace};
use crate::error::{Error, Result};
use crate::finite_sets::{
    enumerate_topologies, family_separation_from_minimal, Axiom, ClassicalTopology, FinSet,
    MinimalMembers, PairReading, MAX_ENUMERATION_POINTS,
};
use crate::soft_core::{enumerate_soft_elements, SoftSet};
use crate::soft_topology::{canonical_topology, induced_topology, SoftTopology};

pub const MAX_SEARCH_UNIVERSE: usize = 3;
pub const MAX_SEARCH_PARAMS: usize = 2;

/// A pair of candidates `(first, second)` with `first <= second`; the
/// searched properties are symmetric in the two topologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoundSpace {
    pub first: usize,
    pub second: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoundEnlargement {
    pub candidate: usize,
    pub opens: usize,
    pub canonical_opens: usize,
}

/// Results for one ambient soft set `F(t) = {0, .., k_t - 1}`.
#[derive(Debug, Clone, Serialize)]
pub struct ShapeCensus {
    pub section_sizes: Vec<usize>,
    /// Whether every soft topology was enumerated, or only canonical ones.
    pub raw: bool,
    #[serde(skip)]
    pub ambient: SoftSet,
    #[serde(skip)]
    pub candidates: Vec<SoftTopology>,
    pub candidate_count: usize,
    pub not_t0_induced_t2: Vec<FoundSpace>,
    pub strict_enlargements: Vec<FoundEnlargement>,
}

impl ShapeCensus {
    pub fn space(&self, found: FoundSpace) -> Result<SoftBitopSpace> {
        SoftBitopSpace::new(
            self.candidates[found.first].clone(),
            self.candidates[found.second].clone(),
        )
    }

    fn position(&self, tau: &SoftTopology) -> Option<usize> {
        self.candidates.iter().position(|c| c == tau)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleCensus {
    pub max_universe: usize,
    pub max_params: usize,
    pub shapes: Vec<ShapeCensus>,
}

impl CounterexampleCensus {
    pub fn not_t0_induced_t2_count(&self) -> usize {
        self.shapes.iter().map(|s| s.not_t0_induced_t2.len()).sum()
    }

    pub fn strict_enlargement_count(&self) -> usize {
        self.shapes
            .iter()
            .map(|s| s.strict_enlargements.len())
            .sum()
    }

    /// Whether `(tau1, tau2)`, in either order, was reported as soft non-T0
    /// with a Hausdorff induced pair.
    pub fn reports_space(&self, tau1: &SoftTopology, tau2: &SoftTopology) -> bool {
        self.shapes
            .iter()
            .filter(|s| &s.ambient == tau1.ambient())
            .any(|s| match (s.position(tau1), s.position(tau2)) {
                (Some(i), Some(j)) => {
                    let (first, second) = (i.min(j), i.max(j));
                    s.not_t0_induced_t2.contains(&FoundSpace { first, second })
                }
                _ => false,
            })
    }

    pub fn reports_enlargement(&self, tau: &SoftTopology) -> bool {
        self.shapes
            .iter()
            .filter(|s| &s.ambient == tau.ambient())
            .any(|s| match s.position(tau) {
                Some(i) => s.strict_enlargements.iter().any(|e| e.candidate == i),
                None => false,
            })
    }
}

fn shapes(max_universe: usize, max_params: usize) -> Vec<Vec<usize>> {
    (1..=max_params)
        .flat_map(|p| {
            (0..p)
                .map(|_| 1..=max_universe)
                .multi_cartesian_product()
                .collect::<Vec<_>>()
        })
        .collect()
}

fn canonical_candidates(ambient: &SoftSet, n: usize) -> Result<Vec<SoftTopology>> {
    let per_param = ambient
        .sections()
        .iter()
        .map(|section| {
            enumerate_topologies(section.len())?
                .into_iter()
                .map(|t| {
                    let opens = t
                        .opens()
                        .iter()
                        .map(|o| FinSet::from_mask(n, o.mask()))
                        .collect::<Result<Vec<_>>>()?;
                    ClassicalTopology::new(*section, opens)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    per_param
        .into_iter()
        .multi_cartesian_product()
        .map(|sigmas| canonical_topology(ambient, &sigmas))
        .collect()
}

fn census_for_shape(sizes: Vec<usize>, n: usize) -> Result<ShapeCensus> {
    let lists: Vec<Vec<usize>> = sizes.iter().map(|&k| (0..k).collect()).collect();
    let refs: Vec<&[usize]> = lists.iter().map(Vec::as_slice).collect();
    let ambient = SoftSet::from_lists(n, &refs)?;
    let raw = sizes.iter().sum::<usize>() <= MAX_ENUMERATION_POINTS;
    let candidates = if raw {
        SoftTopology::enumerate_all(&ambient)?
    } else {
        canonical_candidates(&ambient, n)?
    };

    let se = enumerate_soft_elements(&ambient)?;
    let tables: Vec<NeighbourhoodTable> = candidates
        .par_iter()
        .map(|tau| NeighbourhoodTable::new(&se, tau))
        .collect();
    let induced: Vec<MinimalMembers> = candidates
        .par_iter()
        .map(|tau| induced_topology(&se, tau).map(|star| MinimalMembers::new(&star)))
        .collect::<Result<_>>()?;
    let points = FinSet::full(se.len());

    let not_t0_induced_t2: Vec<FoundSpace> = (0..candidates.len())
        .into_par_iter()
        .map(|i| {
            (i..candidates.len())
                .filter(|&j| {
                    !soft_separation_from_tables(
                        &se,
                        &tables[i],
                        &tables[j],
                        Axiom::T0,
                        PairReading::Ordered,
                    )
                    .holds()
                        && family_separation_from_minimal(
                            &points,
                            &induced[i],
                            &induced[j],
                            Axiom::T2,
                            PairReading::Ordered,
                        )
                        .holds()
                })
                .map(|j| FoundSpace {
                    first: i,
                    second: j,
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();

    let strict_enlargements: Vec<FoundEnlargement> = candidates
        .par_iter()
        .enumerate()
        .filter(|(_, tau)| !tau.is_canonical())
        .map(|(i, tau)| {
            Ok(FoundEnlargement {
                candidate: i,
                opens: tau.len(),
                canonical_opens: tau.canonical_enlargement()?.len(),
            })
        })
        .collect::<Result<_>>()?;

    Ok(ShapeCensus {
        section_sizes: sizes,
        raw,
        ambient,
        candidate_count: candidates.len(),
        candidates,
        not_t0_induced_t2,
        strict_enlargements,
    })
}

/// Searches every ambient soft set with at most `max_params` parameters and
/// sections `{0, .., k-1}`, `k <= max_universe`. All soft topologies are
/// enumerated when the sections have at most four points in total;
/// otherwise only canonical ones. Output order is deterministic.
pub fn search_counterexamples(
    max_universe: usize,
    max_params: usize,
) -> Result<CounterexampleCensus> {
    if max_universe == 0 || max_params == 0 {
        return Err(Error::Input("search bounds must be positive".into()));
    }
    if max_universe > MAX_SEARCH_UNIVERSE {
        return Err(Error::Capacity {
            what: "search universe size",
            requested: max_universe as u128,
            limit: MAX_SEARCH_UNIVERSE as u128,
        });
    }
    if max_params > MAX_SEARCH_PARAMS {
        return Err(Error::Capacity {
            what: "search parameter count",
            requested: max_params as u128,
            limit: MAX_SEARCH_PARAMS as u128,
        });
    }
    let shapes = shapes(max_universe, max_params)
        .into_iter()
        .map(|sizes| census_for_shape(sizes, max_universe))
        .collect::<Result<Vec<_>>>()?;
    Ok(CounterexampleCensus {
        max_universe,
        max_params,
        shapes,
    })
}
