//! Soft topologies on a soft set, their component topologies, canonical
//! (sectionwise generated) soft topologies, and the induced topology on the
//! soft elements.
//!
//! Families and topologies on `SE(F)` use indices into the enumerated
//! [`SoftElements`] as points. The induced family `τ*` is kept as a
//! [`SetFamily`]: it always contains `∅` and `SE(F)` and is closed under
//! unions, but with two or more parameters it can miss intersections, e.g.
//! `{(0,0),(1,1)} ∩ {(0,0),(0,1),(1,0)}` under the soft indiscrete topology
//! on a 2×2 soft set.

use std::collections::HashSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_sets::{
    enumerate_topologies, generate_topology, generate_topology_on, is_topology, ClassicalTopology,
    FinSet, SetFamily,
};
use crate::soft_core::{SoftElement, SoftElements, SoftSet};

/// Largest soft-open family materialized by the canonical constructions.
pub const MAX_SOFT_OPENS: u128 = 1 << 20;

/// Largest `|SE(F)|` for which the induced topology is computed.
pub const MAX_INDUCED_POINTS: usize = 20;

fn check_members(ambient: &SoftSet, opens: &[SoftSet]) -> Result<()> {
    for (index, h) in opens.iter().enumerate() {
        h.same_shape(ambient)?;
        if !h.is_soft_subset_of(ambient) {
            return Err(Error::NotASoftSubset { index });
        }
    }
    Ok(())
}

/// Soft topology axioms for a finite family of soft subsets of `ambient`.
pub fn is_soft_topology(ambient: &SoftSet, opens: &[SoftSet]) -> Result<bool> {
    check_members(ambient, opens)?;
    Ok(closure_defect(ambient, opens).is_none())
}

/// First violated axiom, if any.
fn closure_defect(ambient: &SoftSet, opens: &[SoftSet]) -> Option<String> {
    let family: HashSet<&SoftSet> = opens.iter().collect();
    let null = SoftSet::null(ambient.param_count(), ambient.universe_size());
    if !family.contains(&null) {
        return Some("the null soft set is missing".into());
    }
    if !family.contains(ambient) {
        return Some(format!("the ambient soft set {ambient} is missing"));
    }
    for (a, b) in opens.iter().tuple_combinations() {
        let u = a.union(b);
        if !family.contains(&u) {
            return Some(format!("{a} ∪ {b} = {u} is missing"));
        }
        let i = a.intersection(b);
        if !family.contains(&i) {
            return Some(format!("{a} ∩ {b} = {i} is missing"));
        }
    }
    None
}

/// Points `(t, x)` with `x ∈ F(t)`, in lexicographic order.
struct DisjointUnion<'a> {
    ambient: &'a SoftSet,
    points: Vec<(usize, usize)>,
}

impl<'a> DisjointUnion<'a> {
    fn new(ambient: &'a SoftSet) -> Result<Self> {
        let points: Vec<(usize, usize)> = ambient
            .sections()
            .iter()
            .enumerate()
            .flat_map(|(t, s)| s.iter().map(move |x| (t, x)))
            .collect();
        if points.len() > crate::finite_sets::MAX_UNIVERSE {
            return Err(Error::Capacity {
                what: "points in the disjoint union of sections",
                requested: points.len() as u128,
                limit: crate::finite_sets::MAX_UNIVERSE as u128,
            });
        }
        Ok(DisjointUnion { ambient, points })
    }

    fn encode(&self, h: &SoftSet) -> FinSet {
        let members = self
            .points
            .iter()
            .enumerate()
            .filter(|(_, &(t, x))| h.section(t).contains(x))
            .map(|(p, _)| p);
        FinSet::from_elements(self.points.len(), members).expect("point index")
    }

    fn decode(&self, u: &FinSet) -> SoftSet {
        let mut sections =
            vec![FinSet::empty(self.ambient.universe_size()); self.ambient.param_count()];
        for p in u.iter() {
            let (t, x) = self.points[p];
            sections[t].insert(x);
        }
        SoftSet::new(self.ambient.universe_size(), sections).expect("shape")
    }

    fn decode_topology(&self, top: &ClassicalTopology) -> SoftTopology {
        let mut opens: Vec<SoftSet> = top.opens().iter().map(|u| self.decode(u)).collect();
        opens.sort();
        SoftTopology::from_sorted_unchecked(self.ambient.clone(), opens)
    }
}

/// A finite soft topology on an ambient soft set, opens sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SoftTopology {
    ambient: SoftSet,
    opens: Vec<SoftSet>,
}

impl SoftTopology {
    pub fn new(ambient: SoftSet, mut opens: Vec<SoftSet>) -> Result<Self> {
        check_members(&ambient, &opens)?;
        opens.sort();
        opens.dedup();
        if let Some(why) = closure_defect(&ambient, &opens) {
            return Err(Error::NotASoftTopology(why));
        }
        Ok(SoftTopology { ambient, opens })
    }

    pub(crate) fn from_sorted_unchecked(ambient: SoftSet, opens: Vec<SoftSet>) -> Self {
        debug_assert!(opens.windows(2).all(|w| w[0] < w[1]));
        SoftTopology { ambient, opens }
    }

    /// `{Φ, F}`.
    pub fn indiscrete(ambient: SoftSet) -> Self {
        let null = SoftSet::null(ambient.param_count(), ambient.universe_size());
        let mut opens = vec![null, ambient.clone()];
        opens.sort();
        opens.dedup();
        SoftTopology { ambient, opens }
    }

    /// Every soft subset of the ambient.
    pub fn discrete(ambient: SoftSet) -> Result<Self> {
        let sigmas: Vec<ClassicalTopology> = ambient
            .sections()
            .iter()
            .map(|s| ClassicalTopology::discrete(*s))
            .collect();
        canonical_topology(&ambient, &sigmas)
    }

    /// Every soft topology on `ambient`, sorted.
    ///
    /// Soft subsets of `F` are exactly subsets of the disjoint union of its
    /// sections, with soft union and intersection acting pointwise, so soft
    /// topologies on `F` are topologies on that disjoint union.
    pub fn enumerate_all(ambient: &SoftSet) -> Result<Vec<SoftTopology>> {
        let du = DisjointUnion::new(ambient)?;
        if du.points.is_empty() {
            return Ok(vec![SoftTopology::indiscrete(ambient.clone())]);
        }
        let mut out: Vec<SoftTopology> = enumerate_topologies(du.points.len())?
            .iter()
            .map(|top| du.decode_topology(top))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Smallest soft topology on `ambient` containing `subbase`.
    pub fn generate(ambient: &SoftSet, subbase: &[SoftSet]) -> Result<SoftTopology> {
        check_members(ambient, subbase)?;
        let du = DisjointUnion::new(ambient)?;
        if du.points.is_empty() {
            return Ok(SoftTopology::indiscrete(ambient.clone()));
        }
        let encoded: Vec<FinSet> = subbase.iter().map(|h| du.encode(h)).collect();
        let top = generate_topology(&encoded, du.points.len())?;
        Ok(du.decode_topology(&top))
    }

    pub fn ambient(&self) -> &SoftSet {
        &self.ambient
    }

    pub fn opens(&self) -> &[SoftSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, h: &SoftSet) -> bool {
        self.opens.binary_search(h).is_ok()
    }

    /// `τ_t = {H(t) : H ∈ τ}` as a topology on `F(t)`.
    pub fn component_topology(&self, t: usize) -> Result<ClassicalTopology> {
        if t >= self.ambient.param_count() {
            return Err(Error::ParamOutOfRange {
                param: t,
                count: self.ambient.param_count(),
            });
        }
        let sections: Vec<FinSet> = self.opens.iter().map(|h| *h.section(t)).collect();
        let top = ClassicalTopology::new(*self.ambient.section(t), sections)?;
        Ok(top)
    }

    pub fn component_topologies(&self) -> Vec<ClassicalTopology> {
        (0..self.ambient.param_count())
            .map(|t| {
                self.component_topology(t)
                    .expect("sections of a soft topology form a topology")
            })
            .collect()
    }

    /// `τ^can = Top({τ_t})`.
    pub fn canonical_enlargement(&self) -> Result<SoftTopology> {
        canonical_topology(&self.ambient, &self.component_topologies())
    }

    /// True when the topology equals its canonical enlargement.
    ///
    /// Since `τ ⊆ τ^can` always holds, it suffices to compare sizes, which
    /// avoids materializing the enlargement.
    pub fn is_canonical(&self) -> bool {
        let product: u128 = self
            .component_topologies()
            .iter()
            .map(|c| c.len() as u128)
            .product();
        product == self.opens.len() as u128
    }

    /// Smallest soft open containing the soft element `a`.
    pub fn neighbourhood(&self, a: &SoftElement) -> SoftSet {
        self.opens
            .iter()
            .filter(|h| h.contains_element(a))
            .fold(self.ambient.clone(), |acc, h| acc.intersection(h))
    }
}

impl fmt::Debug for SoftTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SoftTopology[{}]", self.opens.iter().format(" "))
    }
}

/// `Top({σ_t})`: all soft subsets `H` of `ambient` with `H(t) ∈ σ_t` for every `t`.
pub fn canonical_topology(ambient: &SoftSet, sigmas: &[ClassicalTopology]) -> Result<SoftTopology> {
    if sigmas.len() != ambient.param_count() {
        return Err(Error::Input(format!(
            "expected {} component topologies, got {}",
            ambient.param_count(),
            sigmas.len()
        )));
    }
    for (t, sigma) in sigmas.iter().enumerate() {
        if sigma.carrier() != ambient.section(t) {
            return Err(Error::Input(format!(
                "component topology {t} lives on {}, expected F({t}) = {}",
                sigma.carrier(),
                ambient.section(t)
            )));
        }
    }
    let count: u128 = sigmas.iter().map(|s| s.len() as u128).product();
    if count > MAX_SOFT_OPENS {
        return Err(Error::Capacity {
            what: "canonical soft opens",
            requested: count,
            limit: MAX_SOFT_OPENS,
        });
    }
    // The cartesian product walks in lexicographic order, which is already
    // the canonical order of soft sets.
    let opens: Vec<SoftSet> = sigmas
        .iter()
        .map(|s| s.opens().iter().copied())
        .multi_cartesian_product()
        .map(|sections| SoftSet::new(ambient.universe_size(), sections).expect("shape"))
        .collect();
    Ok(SoftTopology::from_sorted_unchecked(ambient.clone(), opens))
}

fn check_induced_capacity(se: &SoftElements) -> Result<()> {
    if se.len() > MAX_INDUCED_POINTS {
        return Err(Error::Capacity {
            what: "soft elements for the induced topology",
            requested: se.len() as u128,
            limit: MAX_INDUCED_POINTS as u128,
        });
    }
    Ok(())
}

/// `τ* = {T ⊆ SE(F) : T(t) ∈ τ_t for all t}`, over element indices.
///
/// Computed by filtering all `2^|SE(F)|` subsets one parameter at a time; the
/// sections of each subset are built incrementally from the subset with its
/// lowest element removed.
pub fn induced_topology(se: &SoftElements, tau: &SoftTopology) -> Result<SetFamily> {
    if tau.ambient() != se.ambient() {
        return Err(Error::Input(
            "soft topology and SE(F) have different ambients".into(),
        ));
    }
    check_induced_capacity(se)?;
    let n = se.len();
    let total = 1usize << n;
    let mut alive = vec![true; total];
    let mut section = vec![0u64; total];
    for t in 0..se.param_count() {
        let open: HashSet<u64> = tau.opens().iter().map(|h| h.section(t).mask()).collect();
        let coord: Vec<u64> = (0..n).map(|i| 1u64 << se.coordinate(i, t)).collect();
        section[0] = 0;
        alive[0] &= open.contains(&0);
        for mask in 1..total {
            let low = mask.trailing_zeros() as usize;
            section[mask] = section[mask & (mask - 1)] | coord[low];
            if alive[mask] && !open.contains(&section[mask]) {
                alive[mask] = false;
            }
        }
    }
    let opens: Vec<FinSet> = alive
        .iter()
        .enumerate()
        .filter(|(_, &ok)| ok)
        .map(|(mask, _)| FinSet::from_mask(n, mask as u64).expect("mask within SE"))
        .collect();
    Ok(SetFamily::from_sorted_unchecked(FinSet::full(n), opens))
}

fn check_se_topology(se: &SoftElements, candidate: &ClassicalTopology) -> Result<()> {
    if se.is_empty() || candidate.carrier() != &FinSet::full(se.len()) {
        return Err(Error::Input(format!(
            "candidate topology must live on all {} soft elements",
            se.len()
        )));
    }
    Ok(())
}

/// True when every open of `candidate` has all its sections open in the
/// component topologies of `tau`, i.e. every projection is an open map.
/// Equivalently `candidate ⊆ τ*`.
pub fn check_finest_open_projections(
    se: &SoftElements,
    tau: &SoftTopology,
    candidate: &ClassicalTopology,
) -> Result<bool> {
    check_se_topology(se, candidate)?;
    if !is_topology(candidate.opens(), se.len())? {
        return Err(Error::NotATopology("candidate on SE(F)".into()));
    }
    let components = tau.component_topologies();
    Ok(candidate.opens().iter().all(|u| {
        components
            .iter()
            .enumerate()
            .all(|(t, c)| c.is_open(&se.section_of_mask(u, t)))
    }))
}

/// A canonical soft topology recovered from a topology on `SE(F)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    /// Topologies on each `F(t)` generated by the sections of the input opens.
    pub sigmas: Vec<ClassicalTopology>,
    /// `Top({σ_t})`.
    pub tau_hat: SoftTopology,
    /// Whether the input topology is contained in the topology induced by `tau_hat`.
    pub contained: bool,
}

/// Builds `σ_t` from the sections of `u`, then `τ̂ = Top({σ_t})`, and checks
/// `u ⊆ τ̂*`.
///
/// Panics if the containment fails, which would contradict the construction.
pub fn reconstruct(se: &SoftElements, u: &ClassicalTopology) -> Result<Reconstruction> {
    check_se_topology(se, u)?;
    let ambient = se.ambient();
    let sigmas = (0..ambient.param_count())
        .map(|t| {
            let subbase: Vec<FinSet> = u.opens().iter().map(|o| se.section_of_mask(o, t)).collect();
            generate_topology_on(ambient.section(t), &subbase)
        })
        .collect::<Result<Vec<_>>>()?;
    let tau_hat = canonical_topology(ambient, &sigmas)?;
    let induced = induced_topology(se, &tau_hat)?;
    let contained = u.opens().iter().all(|o| induced.contains(o));
    assert!(
        contained,
        "reconstructed canonical topology must induce a finer topology"
    );
    Ok(Reconstruction {
        sigmas,
        tau_hat,
        contained,
    })
}

/// All soft subsets of `ambient`, in canonical order.
pub fn all_soft_subsets(ambient: &SoftSet) -> Result<Vec<SoftSet>> {
    Ok(SoftTopology::discrete(ambient.clone())?.opens().to_vec())
}

pub(crate) fn nonempty_opens(sigma: &ClassicalTopology) -> impl Iterator<Item = FinSet> + '_ {
    sigma.opens().iter().copied().filter(|u| !u.is_empty())
}
