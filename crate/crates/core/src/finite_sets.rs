//! Bitmask subsets of a small enumerated universe, finite classical topologies,
//! and pairwise separation in classical bitopological spaces.
//!
//! Every finite family closed under binary unions is closed under arbitrary
//! unions, so the topology checks here only look at pairs.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest universe a [`FinSet`] can index.
pub const MAX_UNIVERSE: usize = 64;

/// Largest point count accepted by [`enumerate_topologies`].
pub const MAX_ENUMERATION_POINTS: usize = 4;

/// A subset of `{0, .., universe_size - 1}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FinSet {
    universe_size: usize,
    members: u64,
}

fn universe_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_universe(n: usize) -> Result<()> {
    if n == 0 || n > MAX_UNIVERSE {
        Err(Error::UnsupportedUniverse(n))
    } else {
        Ok(())
    }
}

impl FinSet {
    /// The empty subset of an `n`-point universe.
    ///
    /// Panics unless `1 <= n <= 64`; use [`FinSet::from_mask`] for checked input.
    pub fn empty(n: usize) -> Self {
        check_universe(n).expect("FinSet universe size");
        FinSet {
            universe_size: n,
            members: 0,
        }
    }

    /// The whole `n`-point universe.
    pub fn full(n: usize) -> Self {
        check_universe(n).expect("FinSet universe size");
        FinSet {
            universe_size: n,
            members: universe_mask(n),
        }
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_universe(n)?;
        if mask & !universe_mask(n) != 0 {
            return Err(Error::OutOfUniverse {
                element: 63 - mask.leading_zeros() as usize,
                universe_size: n,
            });
        }
        Ok(FinSet {
            universe_size: n,
            members: mask,
        })
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(n: usize, elements: I) -> Result<Self> {
        check_universe(n)?;
        let mut set = FinSet::empty(n);
        for x in elements {
            if x >= n {
                return Err(Error::OutOfUniverse {
                    element: x,
                    universe_size: n,
                });
            }
            set.members |= 1 << x;
        }
        Ok(set)
    }

    pub fn singleton(n: usize, x: usize) -> Result<Self> {
        Self::from_elements(n, [x])
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.universe_size && self.members & (1 << x) != 0
    }

    pub fn insert(&mut self, x: usize) {
        assert!(x < self.universe_size, "element {x} outside universe");
        self.members |= 1 << x;
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        debug_assert_eq!(self.universe_size, other.universe_size);
        FinSet {
            universe_size: self.universe_size,
            members: self.members | other.members,
        }
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        debug_assert_eq!(self.universe_size, other.universe_size);
        FinSet {
            universe_size: self.universe_size,
            members: self.members & other.members,
        }
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        debug_assert_eq!(self.universe_size, other.universe_size);
        FinSet {
            universe_size: self.universe_size,
            members: self.members & !other.members,
        }
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.members & !other.members == 0
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        self.members & other.members == 0
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.members;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(x)
            }
        })
    }

    /// Position of `x` among the members, counting from zero.
    pub fn rank(&self, x: usize) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        Some((self.members & ((1u64 << x) - 1)).count_ones() as usize)
    }

    /// Renders the set with element names, e.g. `{x1,x2}`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedSet { set: self, names }
    }
}

struct NamedSet<'a> {
    set: &'a FinSet,
    names: &'a [String],
}

impl fmt::Display for NamedSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .set
            .iter()
            .map(|x| self.names.get(x).cloned().unwrap_or_else(|| x.to_string()));
        write!(f, "{{{}}}", parts.format(","))
    }
}

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sets order by bitmask value first, which is the canonical order of opens.
impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.members
            .cmp(&other.members)
            .then(self.universe_size.cmp(&other.universe_size))
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}/{}", self.iter().format(","), self.universe_size)
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().format(","))
    }
}

impl Serialize for FinSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl BitOr for FinSet {
    type Output = FinSet;
    fn bitor(self, rhs: FinSet) -> FinSet {
        self.union(&rhs)
    }
}

impl BitAnd for FinSet {
    type Output = FinSet;
    fn bitand(self, rhs: FinSet) -> FinSet {
        self.intersection(&rhs)
    }
}

impl Sub for FinSet {
    type Output = FinSet;
    fn sub(self, rhs: FinSet) -> FinSet {
        self.difference(&rhs)
    }
}

fn check_family(n: usize, family: &[FinSet]) -> Result<()> {
    for s in family {
        if s.universe_size != n {
            return Err(Error::UniverseMismatch {
                expected: n,
                found: s.universe_size,
            });
        }
    }
    Ok(())
}

/// Topology axioms on the full `n`-point universe.
pub fn is_topology(opens: &[FinSet], n: usize) -> Result<bool> {
    check_universe(n)?;
    is_topology_on(&FinSet::full(n), opens)
}

/// Topology axioms relative to `carrier`: every member lies in the carrier,
/// the empty set and the carrier are present, and the family is closed under
/// binary unions and intersections.
pub fn is_topology_on(carrier: &FinSet, opens: &[FinSet]) -> Result<bool> {
    check_family(carrier.universe_size, opens)?;
    if opens.iter().any(|s| !s.is_subset(carrier)) {
        return Ok(false);
    }
    let masks: HashSet<u64> = opens.iter().map(FinSet::mask).collect();
    if !masks.contains(&0) || !masks.contains(&carrier.members) {
        return Ok(false);
    }
    for (a, b) in masks.iter().tuple_combinations() {
        if !masks.contains(&(a | b)) || !masks.contains(&(a & b)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite topology on a carrier set, opens deduplicated and sorted by mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassicalTopology {
    carrier: FinSet,
    opens: Vec<FinSet>,
}

impl ClassicalTopology {
    /// Validates `opens` as a topology on `carrier`.
    pub fn new(carrier: FinSet, mut opens: Vec<FinSet>) -> Result<Self> {
        opens.sort();
        opens.dedup();
        if !is_topology_on(&carrier, &opens)? {
            return Err(Error::NotATopology(format!(
                "family {:?} on carrier {carrier}",
                opens.iter().map(ToString::to_string).collect::<Vec<_>>()
            )));
        }
        Ok(ClassicalTopology { carrier, opens })
    }

    /// Validates `opens` as a topology on the full `n`-point universe.
    pub fn on_universe(n: usize, opens: Vec<FinSet>) -> Result<Self> {
        check_universe(n)?;
        Self::new(FinSet::full(n), opens)
    }

    /// Caller guarantees the family is sorted, deduplicated and a topology.
    pub(crate) fn from_sorted_unchecked(carrier: FinSet, opens: Vec<FinSet>) -> Self {
        debug_assert!(opens.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(is_topology_on(&carrier, &opens).unwrap_or(false));
        ClassicalTopology { carrier, opens }
    }

    pub fn discrete(carrier: FinSet) -> Self {
        let mut opens: Vec<FinSet> = subsets_of(&carrier).collect();
        opens.sort();
        ClassicalTopology { carrier, opens }
    }

    pub fn indiscrete(carrier: FinSet) -> Self {
        let empty = FinSet::empty(carrier.universe_size);
        let opens = if carrier.is_empty() {
            vec![empty]
        } else {
            vec![empty, carrier]
        };
        ClassicalTopology { carrier, opens }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn universe_size(&self) -> usize {
        self.carrier.universe_size
    }

    pub fn opens(&self) -> &[FinSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, set: &FinSet) -> bool {
        self.opens.binary_search(set).is_ok()
    }

    pub fn is_discrete(&self) -> bool {
        self.opens.len() == 1 << self.carrier.len()
    }

    /// Smallest open set containing `x`; `None` when `x` is not in the carrier.
    pub fn neighbourhood(&self, x: usize) -> Option<FinSet> {
        if !self.carrier.contains(x) {
            return None;
        }
        Some(
            self.opens
                .iter()
                .filter(|u| u.contains(x))
                .fold(self.carrier, |acc, u| acc & *u),
        )
    }

    /// Minimal neighbourhoods indexed by point (empty for points off the carrier).
    pub fn neighbourhoods(&self) -> Vec<FinSet> {
        (0..self.universe_size())
            .map(|x| {
                self.neighbourhood(x)
                    .unwrap_or_else(|| FinSet::empty(self.universe_size()))
            })
            .collect()
    }

    /// True when every open of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &ClassicalTopology) -> bool {
        self.opens.iter().all(|u| other.is_open(u))
    }
}

impl fmt::Debug for ClassicalTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Topology{}[{}]",
            self.carrier,
            self.opens.iter().format(" ")
        )
    }
}

/// A family of subsets of a carrier with no closure assumed, sorted by mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SetFamily {
    carrier: FinSet,
    members: Vec<FinSet>,
}

impl SetFamily {
    pub fn new(carrier: FinSet, mut members: Vec<FinSet>) -> Result<Self> {
        check_family(carrier.universe_size, &members)?;
        if let Some(bad) = members.iter().find(|m| !m.is_subset(&carrier)) {
            return Err(Error::Input(format!("{bad} is not contained in {carrier}")));
        }
        members.sort();
        members.dedup();
        Ok(SetFamily { carrier, members })
    }

    /// Caller guarantees members are sorted, distinct and inside the carrier.
    pub(crate) fn from_sorted_unchecked(carrier: FinSet, members: Vec<FinSet>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { carrier, members }
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn members(&self) -> &[FinSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &FinSet) -> bool {
        self.members.binary_search(set).is_ok()
    }

    pub fn is_topology(&self) -> bool {
        is_topology_on(&self.carrier, &self.members).unwrap_or(false)
    }

    /// Least pair of members (in mask order) whose union or intersection is
    /// missing from the family.
    pub fn closure_defect(&self) -> Option<(FinSet, FinSet)> {
        self.members
            .iter()
            .tuple_combinations()
            .find(|(a, b)| !self.contains(&(**a | **b)) || !self.contains(&(**a & **b)))
            .map(|(a, b)| (*a, *b))
    }

    /// The family as a topology, when it is one.
    pub fn to_topology(&self) -> Option<ClassicalTopology> {
        self.is_topology()
            .then(|| ClassicalTopology::from_sorted_unchecked(self.carrier, self.members.clone()))
    }

    /// Inclusion-minimal members containing each point (empty lists off the
    /// carrier). Any separating member can be shrunk to one of these.
    pub fn minimal_members(&self) -> Vec<Vec<FinSet>> {
        (0..self.carrier.universe_size)
            .map(|x| {
                let around: Vec<FinSet> = self
                    .members
                    .iter()
                    .filter(|m| m.contains(x))
                    .copied()
                    .collect();
                around
                    .iter()
                    .filter(|m| !around.iter().any(|o| o != *m && o.is_subset(m)))
                    .copied()
                    .collect()
            })
            .collect()
    }
}

impl From<&ClassicalTopology> for SetFamily {
    fn from(t: &ClassicalTopology) -> Self {
        SetFamily {
            carrier: t.carrier,
            members: t.opens.clone(),
        }
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Family{}[{}]",
            self.carrier,
            self.members.iter().format(" ")
        )
    }
}

/// All subsets of `set`, in increasing mask order.
pub fn subsets_of(set: &FinSet) -> impl Iterator<Item = FinSet> {
    let n = set.universe_size;
    let full = set.members;
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let current = next?;
        // Standard submask walk, ascending.
        next = if current == full {
            None
        } else {
            Some((current.wrapping_sub(full)) & full)
        };
        Some(FinSet {
            universe_size: n,
            members: current,
        })
    })
}

/// Smallest topology on the full `n`-point universe containing `subbase`.
pub fn generate_topology(subbase: &[FinSet], n: usize) -> Result<ClassicalTopology> {
    check_universe(n)?;
    generate_topology_on(&FinSet::full(n), subbase)
}

/// Smallest topology on `carrier` containing `subbase`: first all finite
/// intersections (the empty intersection being the carrier), then all unions.
pub fn generate_topology_on(carrier: &FinSet, subbase: &[FinSet]) -> Result<ClassicalTopology> {
    check_family(carrier.universe_size, subbase)?;
    if let Some(s) = subbase.iter().find(|s| !s.is_subset(carrier)) {
        return Err(Error::Input(format!(
            "subbase member {s} is not contained in the carrier {carrier}"
        )));
    }

    let mut basis: Vec<u64> = vec![carrier.members];
    let mut seen: HashSet<u64> = basis.iter().copied().collect();
    for s in subbase {
        let current = basis.clone();
        for b in current {
            let m = b & s.members;
            if seen.insert(m) {
                basis.push(m);
            }
        }
    }

    let mut opens: Vec<u64> = vec![0];
    let mut seen: HashSet<u64> = opens.iter().copied().collect();
    for b in basis {
        let current = opens.clone();
        for u in current {
            let m = u | b;
            if seen.insert(m) {
                opens.push(m);
            }
        }
    }
    opens.sort_unstable();
    let n = carrier.universe_size;
    let opens = opens
        .into_iter()
        .map(|members| FinSet {
            universe_size: n,
            members,
        })
        .collect();
    Ok(ClassicalTopology::from_sorted_unchecked(*carrier, opens))
}

/// Every labeled topology on an `n`-point set (`1 <= n <= 4`), sorted by
/// their open families.
///
/// Finite topologies correspond to preorders: the opens are the up-closed
/// sets. Each reflexive transitive relation is enumerated once.
pub fn enumerate_topologies(n: usize) -> Result<Vec<ClassicalTopology>> {
    if n == 0 {
        return Err(Error::Input(
            "cannot enumerate topologies on an empty set".into(),
        ));
    }
    if n > MAX_ENUMERATION_POINTS {
        return Err(Error::Capacity {
            what: "topology enumeration points",
            requested: n as u128,
            limit: MAX_ENUMERATION_POINTS as u128,
        });
    }
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();

    let carrier = FinSet::full(n);
    let mut out = Vec::new();
    for choice in 0u64..(1 << off_diagonal.len()) {
        // up[i] = points above i, including i.
        let mut up: Vec<u64> = (0..n).map(|i| 1 << i).collect();
        for (bit, &(i, j)) in off_diagonal.iter().enumerate() {
            if choice & (1 << bit) != 0 {
                up[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n)
                .filter(|&j| up[i] & (1 << j) != 0)
                .all(|j| up[j] & !up[i] == 0)
        });
        if !transitive {
            continue;
        }
        let opens: Vec<FinSet> = subsets_of(&carrier)
            .filter(|u| u.iter().all(|i| up[i] & !u.members == 0))
            .collect();
        out.push(ClassicalTopology::from_sorted_unchecked(carrier, opens));
    }
    out.sort();
    Ok(out)
}

/// Two topologies on one carrier.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BitopPair {
    pub first: ClassicalTopology,
    pub second: ClassicalTopology,
}

impl BitopPair {
    pub fn new(first: ClassicalTopology, second: ClassicalTopology) -> Result<Self> {
        if first.carrier != second.carrier {
            return Err(Error::Input(format!(
                "bitopological pair needs one carrier, got {} and {}",
                first.carrier, second.carrier
            )));
        }
        Ok(BitopPair { first, second })
    }

    pub fn carrier(&self) -> &FinSet {
        &self.first.carrier
    }

    pub fn universe_size(&self) -> usize {
        self.first.universe_size()
    }
}

/// The three pairwise separation axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    T0,
    T1,
    T2,
}

impl Axiom {
    pub const ALL: [Axiom; 3] = [Axiom::T0, Axiom::T1, Axiom::T2];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::T0 => "T0",
            Axiom::T1 => "T1",
            Axiom::T2 => "T2",
        })
    }
}

/// How `T1`/`T2` quantify over a pair of distinct points.
///
/// `Ordered` demands the separating configuration for both orders of the
/// pair (with the roles of the two topologies fixed); `Unordered` accepts
/// either order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PairReading {
    #[default]
    Ordered,
    Unordered,
}

/// Outcome of a separation check: the least failing ordered pair, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Separation {
    Holds,
    FailsAt(usize, usize),
}

impl Separation {
    pub fn holds(&self) -> bool {
        matches!(self, Separation::Holds)
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match *self {
            Separation::Holds => None,
            Separation::FailsAt(a, b) => Some((a, b)),
        }
    }
}

/// Separation over abstract points.
///
/// `first_nbhd_contains(x, y)` answers whether every first-open containing
/// `x` also contains `y`; `disjoint(x, y)` whether some first-open around `x`
/// misses some second-open around `y`. Shared by the classical, family and
/// soft deciders.
pub(crate) fn decide_separation<N1, N2, D>(
    points: usize,
    axiom: Axiom,
    reading: PairReading,
    first_nbhd_contains: N1,
    second_nbhd_contains: N2,
    disjoint: D,
) -> Separation
where
    N1: Fn(usize, usize) -> bool,
    N2: Fn(usize, usize) -> bool,
    D: Fn(usize, usize) -> bool,
{
    let ordered_ok = |x: usize, y: usize| match axiom {
        Axiom::T0 => unreachable!(),
        Axiom::T1 => !first_nbhd_contains(x, y) && !second_nbhd_contains(y, x),
        Axiom::T2 => disjoint(x, y),
    };
    for x in 0..points {
        for y in 0..points {
            if x == y {
                continue;
            }
            let ok = match (axiom, reading) {
                (Axiom::T0, _) => {
                    if y < x {
                        continue;
                    }
                    !first_nbhd_contains(x, y)
                        || !first_nbhd_contains(y, x)
                        || !second_nbhd_contains(x, y)
                        || !second_nbhd_contains(y, x)
                }
                (_, PairReading::Ordered) => ordered_ok(x, y),
                (_, PairReading::Unordered) => ordered_ok(x, y) || ordered_ok(y, x),
            };
            if !ok {
                return Separation::FailsAt(x, y);
            }
        }
    }
    Separation::Holds
}

/// Pairwise separation of a classical bitopological space, with the least
/// failing ordered pair of carrier points as witness.
pub fn pairwise_separation(b: &BitopPair, axiom: Axiom, reading: PairReading) -> Separation {
    let points: Vec<usize> = b.carrier().iter().collect();
    let n1: Vec<FinSet> = points
        .iter()
        .map(|&x| b.first.neighbourhood(x).expect("carrier point"))
        .collect();
    let n2: Vec<FinSet> = points
        .iter()
        .map(|&x| b.second.neighbourhood(x).expect("carrier point"))
        .collect();
    let outcome = decide_separation(
        points.len(),
        axiom,
        reading,
        |i, j| n1[i].contains(points[j]),
        |i, j| n2[i].contains(points[j]),
        |i, j| n1[i].is_disjoint(&n2[j]),
    );
    match outcome {
        Separation::Holds => Separation::Holds,
        Separation::FailsAt(i, j) => Separation::FailsAt(points[i], points[j]),
    }
}

/// Two set families on one carrier, for pairs that need not be topologies.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FamilyPair {
    pub first: SetFamily,
    pub second: SetFamily,
}

impl FamilyPair {
    pub fn new(first: SetFamily, second: SetFamily) -> Result<Self> {
        if first.carrier != second.carrier {
            return Err(Error::Input(format!(
                "family pair needs one carrier, got {} and {}",
                first.carrier, second.carrier
            )));
        }
        Ok(FamilyPair { first, second })
    }

    pub fn carrier(&self) -> &FinSet {
        &self.first.carrier
    }

    pub fn to_bitop(&self) -> Option<BitopPair> {
        Some(BitopPair {
            first: self.first.to_topology()?,
            second: self.second.to_topology()?,
        })
    }
}

/// Inclusion-minimal members around each point, precomputed for repeated
/// separation queries.
#[derive(Clone, Debug)]
pub(crate) struct MinimalMembers {
    around: Vec<Vec<FinSet>>,
}

impl MinimalMembers {
    pub(crate) fn new(family: &SetFamily) -> Self {
        MinimalMembers {
            around: family.minimal_members(),
        }
    }

    /// Whether every member containing `x` also contains `y`.
    fn all_contain(&self, x: usize, y: usize) -> bool {
        self.around[x].iter().all(|m| m.contains(y))
    }
}

pub(crate) fn family_separation_from_minimal(
    carrier: &FinSet,
    first: &MinimalMembers,
    second: &MinimalMembers,
    axiom: Axiom,
    reading: PairReading,
) -> Separation {
    let points: Vec<usize> = carrier.iter().collect();
    let outcome = decide_separation(
        points.len(),
        axiom,
        reading,
        |i, j| first.all_contain(points[i], points[j]),
        |i, j| second.all_contain(points[i], points[j]),
        |i, j| {
            first.around[points[i]]
                .iter()
                .any(|u| second.around[points[j]].iter().any(|v| u.is_disjoint(v)))
        },
    );
    match outcome {
        Separation::Holds => Separation::Holds,
        Separation::FailsAt(i, j) => Separation::FailsAt(points[i], points[j]),
    }
}

/// Pairwise separation read off the definitions for two arbitrary families:
/// "there is a member containing x and not y", "there are disjoint members
/// around x and y".
pub fn family_separation(pair: &FamilyPair, axiom: Axiom, reading: PairReading) -> Separation {
    family_separation_from_minimal(
        pair.carrier(),
        &MinimalMembers::new(&pair.first),
        &MinimalMembers::new(&pair.second),
        axiom,
        reading,
    )
}

pub fn pairwise_t0(b: &BitopPair) -> Separation {
    pairwise_separation(b, Axiom::T0, PairReading::Ordered)
}

pub fn pairwise_t1(b: &BitopPair) -> Separation {
    pairwise_separation(b, Axiom::T1, PairReading::Ordered)
}

pub fn pairwise_t2(b: &BitopPair) -> Separation {
    pairwise_separation(b, Axiom::T2, PairReading::Ordered)
}

/// Indices of a minimum-size subfamily of `members` whose union contains
/// `target`, ties broken by the lexicographically least index set.
///
/// Members that miss the target entirely never occur in a minimum cover and
/// are skipped.
pub(crate) fn smallest_cover<T, U, C, M>(
    members: &[T],
    target: &T,
    empty: T,
    union: U,
    contains: C,
    meets: M,
) -> Option<Vec<usize>>
where
    T: Clone,
    U: Fn(&T, &T) -> T,
    C: Fn(&T, &T) -> bool,
    M: Fn(&T, &T) -> bool,
{
    let useful: Vec<usize> = (0..members.len())
        .filter(|&i| meets(&members[i], target))
        .collect();
    let everything = useful
        .iter()
        .fold(empty.clone(), |acc, &i| union(&acc, &members[i]));
    if !contains(&everything, target) {
        return None;
    }
    for k in 0..=useful.len() {
        for combo in useful.iter().copied().combinations(k) {
            let u = combo
                .iter()
                .fold(empty.clone(), |acc, &i| union(&acc, &members[i]));
            if contains(&u, target) {
                return Some(combo);
            }
        }
    }
    None
}

/// Minimum-cardinality subfamily of `cover` whose union contains `target`,
/// returned as indices into `cover`.
pub fn minimal_subcover(cover: &[FinSet], target: &FinSet) -> Result<Vec<usize>> {
    check_family(target.universe_size, cover)?;
    smallest_cover(
        cover,
        target,
        FinSet::empty(target.universe_size),
        |a, b| *a | *b,
        |a, b| b.is_subset(a),
        |a, b| !a.is_disjoint(b),
    )
    .ok_or_else(|| {
        let all = cover
            .iter()
            .fold(FinSet::empty(target.universe_size), |acc, s| acc | *s);
        Error::NotACover(format!("points {} are not covered", *target - all))
    })
}
