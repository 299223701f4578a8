//! Soft sets over a finite parameter set, their soft elements, and the
//! section operator on subsets of `SE(F)`.

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_sets::FinSet;

/// Largest number of soft elements that is materialized.
pub const MAX_SOFT_ELEMENTS: usize = 1 << 20;

/// A map from parameters `0..param_count` to subsets of a shared universe.
///
/// Ordering compares the section bitmasks parameter by parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SoftSet {
    sections: Vec<FinSet>,
    universe_size: usize,
}

impl SoftSet {
    pub fn new(universe_size: usize, sections: Vec<FinSet>) -> Result<Self> {
        if sections.is_empty() {
            return Err(Error::Input(
                "a soft set needs at least one parameter".into(),
            ));
        }
        for s in &sections {
            if s.universe_size() != universe_size {
                return Err(Error::UniverseMismatch {
                    expected: universe_size,
                    found: s.universe_size(),
                });
            }
        }
        Ok(SoftSet {
            sections,
            universe_size,
        })
    }

    /// Builds a soft set from per-parameter element lists.
    pub fn from_lists(universe_size: usize, lists: &[&[usize]]) -> Result<Self> {
        let sections = lists
            .iter()
            .map(|xs| FinSet::from_elements(universe_size, xs.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(universe_size, sections)
    }

    /// The null soft set Φ: every section empty.
    pub fn null(param_count: usize, universe_size: usize) -> Self {
        assert!(param_count > 0, "soft sets need at least one parameter");
        SoftSet {
            sections: vec![FinSet::empty(universe_size); param_count],
            universe_size,
        }
    }

    pub fn param_count(&self) -> usize {
        self.sections.len()
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn section(&self, t: usize) -> &FinSet {
        &self.sections[t]
    }

    pub fn sections(&self) -> &[FinSet] {
        &self.sections
    }

    pub fn is_null(&self) -> bool {
        self.sections.iter().all(FinSet::is_empty)
    }

    /// Index of the first empty section, if any.
    pub fn first_empty_section(&self) -> Option<usize> {
        self.sections.iter().position(FinSet::is_empty)
    }

    /// Soft membership `a ∈_s self`: `a(t) ∈ self(t)` for every parameter.
    pub fn contains_element(&self, a: &SoftElement) -> bool {
        a.values.len() == self.sections.len()
            && self
                .sections
                .iter()
                .zip(&a.values)
                .all(|(s, &x)| s.contains(x))
    }

    /// Parameterwise inclusion; shapes are assumed equal.
    pub fn is_soft_subset_of(&self, other: &SoftSet) -> bool {
        self.sections
            .iter()
            .zip(&other.sections)
            .all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &SoftSet) -> SoftSet {
        self.zip_with(other, |a, b| *a | *b)
    }

    pub fn intersection(&self, other: &SoftSet) -> SoftSet {
        self.zip_with(other, |a, b| *a & *b)
    }

    /// True when some parameter has a point in both sections.
    pub fn meets(&self, other: &SoftSet) -> bool {
        self.sections
            .iter()
            .zip(&other.sections)
            .any(|(a, b)| !a.is_disjoint(b))
    }

    fn zip_with(&self, other: &SoftSet, f: impl Fn(&FinSet, &FinSet) -> FinSet) -> SoftSet {
        debug_assert!(self.same_shape(other).is_ok());
        SoftSet {
            sections: self
                .sections
                .iter()
                .zip(&other.sections)
                .map(|(a, b)| f(a, b))
                .collect(),
            universe_size: self.universe_size,
        }
    }

    /// Replaces the section at `t`.
    pub fn with_section(&self, t: usize, section: FinSet) -> SoftSet {
        let mut out = self.clone();
        out.sections[t] = section;
        out
    }

    pub(crate) fn same_shape(&self, other: &SoftSet) -> Result<()> {
        if self.sections.len() != other.sections.len() || self.universe_size != other.universe_size
        {
            return Err(Error::ShapeMismatch {
                left_params: self.sections.len(),
                left_universe: self.universe_size,
                right_params: other.sections.len(),
                right_universe: other.universe_size,
            });
        }
        Ok(())
    }

    /// Renders as `({x1},{x3,x4})` using element names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedSoftSet { set: self, names }
    }
}

struct NamedSoftSet<'a> {
    set: &'a SoftSet,
    names: &'a [String],
}

impl fmt::Display for NamedSoftSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.set
                .sections
                .iter()
                .map(|s| s.display_with(self.names))
                .format(",")
        )
    }
}

impl fmt::Debug for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Soft({})", self.sections.iter().format(","))
    }
}

impl fmt::Display for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.sections.iter().format(","))
    }
}

impl Serialize for SoftSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.sections)
    }
}

pub fn soft_subset(h: &SoftSet, f: &SoftSet) -> Result<bool> {
    h.same_shape(f)?;
    Ok(h.is_soft_subset_of(f))
}

pub fn soft_union(f: &SoftSet, h: &SoftSet) -> Result<SoftSet> {
    f.same_shape(h)?;
    Ok(f.union(h))
}

pub fn soft_intersection(f: &SoftSet, h: &SoftSet) -> Result<SoftSet> {
    f.same_shape(h)?;
    Ok(f.intersection(h))
}

pub fn soft_equal(f: &SoftSet, h: &SoftSet) -> Result<bool> {
    f.same_shape(h)?;
    Ok(f == h)
}

/// A selection `t -> a(t)` of one point per parameter.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
#[serde(transparent)]
pub struct SoftElement {
    values: Vec<usize>,
}

impl SoftElement {
    pub fn new(values: Vec<usize>) -> Self {
        SoftElement { values }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn at(&self, t: usize) -> usize {
        self.values[t]
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedElement { a: self, names }
    }
}

struct NamedElement<'a> {
    a: &'a SoftElement,
    names: &'a [String],
}

impl fmt::Display for NamedElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self
            .a
            .values
            .iter()
            .map(|&x| self.names.get(x).cloned().unwrap_or_else(|| x.to_string()));
        write!(f, "({})", parts.format(","))
    }
}

impl fmt::Display for SoftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.values.iter().format(","))
    }
}

/// The enumerated soft elements `SE(F)` of an ambient soft set, in
/// lexicographic order with the first parameter most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SoftElements {
    ambient: SoftSet,
    elements: Vec<SoftElement>,
    /// Mixed-radix weight of each parameter's rank.
    strides: Vec<usize>,
}

/// Materializes `SE(F)`.
pub fn enumerate_soft_elements(f: &SoftSet) -> Result<SoftElements> {
    if let Some(param) = f.first_empty_section() {
        return Err(Error::EmptySection { param });
    }
    let count = f
        .sections
        .iter()
        .try_fold(1u128, |acc, s| {
            let next = acc * s.len() as u128;
            (next <= MAX_SOFT_ELEMENTS as u128).then_some(next)
        })
        .ok_or_else(|| Error::Capacity {
            what: "soft elements",
            requested: f.sections.iter().map(|s| s.len() as u128).product(),
            limit: MAX_SOFT_ELEMENTS as u128,
        })? as usize;

    let mut strides = vec![1usize; f.param_count()];
    for t in (0..f.param_count().saturating_sub(1)).rev() {
        strides[t] = strides[t + 1] * f.sections[t + 1].len();
    }
    let elements: Vec<SoftElement> = f
        .sections
        .iter()
        .map(|s| s.iter().collect::<Vec<_>>())
        .multi_cartesian_product()
        .map(SoftElement::new)
        .collect();
    debug_assert_eq!(elements.len(), count);
    Ok(SoftElements {
        ambient: f.clone(),
        elements,
        strides,
    })
}

impl SoftElements {
    pub fn ambient(&self) -> &SoftSet {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &SoftElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[SoftElement] {
        &self.elements
    }

    pub fn param_count(&self) -> usize {
        self.ambient.param_count()
    }

    /// Position of `a` in the enumeration, if it is a soft element of the ambient.
    pub fn index_of(&self, a: &SoftElement) -> Option<usize> {
        if a.values.len() != self.param_count() {
            return None;
        }
        a.values
            .iter()
            .zip(&self.ambient.sections)
            .zip(&self.strides)
            .try_fold(0usize, |acc, ((&x, s), &stride)| {
                s.rank(x).map(|r| acc + r * stride)
            })
    }

    /// The t-th coordinate of element `i`.
    pub fn coordinate(&self, i: usize, t: usize) -> usize {
        self.elements[i].values[t]
    }

    pub fn empty_subset(&self) -> SeSubset {
        SeSubset {
            bits: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full_subset(&self) -> SeSubset {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        SeSubset { bits }
    }

    pub fn subset_from_indices<I: IntoIterator<Item = usize>>(
        &self,
        indices: I,
    ) -> Result<SeSubset> {
        let mut s = self.empty_subset();
        for i in indices {
            if i >= self.len() {
                return Err(Error::OutOfUniverse {
                    element: i,
                    universe_size: self.len(),
                });
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    pub fn subset_from_elements<'a, I>(&self, elements: I) -> Result<SeSubset>
    where
        I: IntoIterator<Item = &'a SoftElement>,
    {
        let indices = elements
            .into_iter()
            .map(|a| {
                self.index_of(a).ok_or_else(|| {
                    Error::Input(format!("{a} is not a soft element of {}", self.ambient))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.subset_from_indices(indices)
    }

    /// The section `T(t) = {a(t) : a ∈ T}`.
    pub fn section(&self, subset: &SeSubset, t: usize) -> FinSet {
        let mut out = FinSet::empty(self.ambient.universe_size());
        for i in subset.bits.ones() {
            out.insert(self.elements[i].values[t]);
        }
        out
    }

    /// All sections of `subset`, as a soft set.
    pub fn sections_of(&self, subset: &SeSubset) -> SoftSet {
        SoftSet {
            sections: (0..self.param_count())
                .map(|t| self.section(subset, t))
                .collect(),
            universe_size: self.ambient.universe_size,
        }
    }

    /// Section of a subset given as a bitmask over element indices.
    pub fn section_of_mask(&self, mask: &FinSet, t: usize) -> FinSet {
        let mut out = FinSet::empty(self.ambient.universe_size());
        for i in mask.iter() {
            out.insert(self.elements[i].values[t]);
        }
        out
    }

    /// `SE(H)` as a subset of `SE(F)`; empty when some section of `H` is empty.
    pub fn se_of_softset(&self, h: &SoftSet) -> Result<SeSubset> {
        h.same_shape(&self.ambient)?;
        if !h.is_soft_subset_of(&self.ambient) {
            return Err(Error::NotASoftSubset { index: 0 });
        }
        let mut out = self.empty_subset();
        if h.first_empty_section().is_some() {
            return Ok(out);
        }
        for (i, a) in self.elements.iter().enumerate() {
            if h.contains_element(a) {
                out.bits.insert(i);
            }
        }
        Ok(out)
    }

    /// Decides whether `K = SE(H)` for some soft subset `H` of the ambient.
    ///
    /// `SE(H) = K` forces `H(t) = K(t)`, so the sectionwise candidate is the
    /// only one to test. On failure the witness is the least element of
    /// `SE(H) \ K`.
    pub fn is_se_representable(&self, k: &SeSubset) -> Result<Representability> {
        if k.is_empty() {
            return Err(Error::EmptyRepresentation);
        }
        let candidate = self.sections_of(k);
        let generated = self.se_of_softset(&candidate)?;
        let witness = generated.difference(k).indices().next();
        Ok(Representability {
            representable: witness.is_none(),
            candidate,
            witness: witness.map(|i| self.elements[i].clone()),
        })
    }
}

/// Result of [`SoftElements::is_se_representable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Representability {
    pub representable: bool,
    /// The sectionwise soft set `H(t) := K(t)`.
    pub candidate: SoftSet,
    /// Least soft element of `SE(H)` missing from `K`.
    pub witness: Option<SoftElement>,
}

/// A subset of `SE(F)`, as a bitset over enumeration indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SeSubset {
    bits: FixedBitSet,
}

impl SeSubset {
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn union(&self, other: &SeSubset) -> SeSubset {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        SeSubset { bits }
    }

    pub fn intersection(&self, other: &SeSubset) -> SeSubset {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        SeSubset { bits }
    }

    pub fn difference(&self, other: &SeSubset) -> SeSubset {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        SeSubset { bits }
    }

    pub fn is_subset(&self, other: &SeSubset) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Same subset as a [`FinSet`] over element indices (needs `|SE(F)| <= 64`).
    pub fn to_finset(&self) -> Result<FinSet> {
        FinSet::from_elements(self.bits.len(), self.bits.ones())
    }

    pub fn from_finset(set: &FinSet) -> SeSubset {
        let mut bits = FixedBitSet::with_capacity(set.universe_size());
        for i in set.iter() {
            bits.insert(i);
        }
        SeSubset { bits }
    }
}
