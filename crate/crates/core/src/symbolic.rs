//! Soft sets over the parameter set of all non-negative integers, given by a
//! default section plus finitely many exceptions, and covers made of one
//! indexed template family plus finitely many explicit members.
//!
//! Everything is decided by looking at the finitely many labels that appear
//! in some exception together with a few fresh labels. Sections at two
//! labels outside that set can only differ through membership in the chosen
//! template indices, so fresh labels stand in for all of them.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_sets::FinSet;
use crate::soft_core::SoftSet;
use crate::verdict::{Verdict, Witness};

/// Upper bound on `|explicit members| + |special labels| + 2` for the
/// exhaustive witness search.
pub const MAX_SYMBOLIC_SEARCH: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CofiniteSoftSet {
    universe_size: usize,
    default_section: FinSet,
    exceptions: BTreeMap<u64, FinSet>,
}

impl CofiniteSoftSet {
    /// Exceptions equal to the default are dropped.
    pub fn new(default_section: FinSet, exceptions: BTreeMap<u64, FinSet>) -> Result<Self> {
        let n = default_section.universe_size();
        for s in exceptions.values() {
            if s.universe_size() != n {
                return Err(Error::UniverseMismatch {
                    expected: n,
                    found: s.universe_size(),
                });
            }
        }
        let exceptions = exceptions
            .into_iter()
            .filter(|(_, s)| *s != default_section)
            .collect();
        Ok(CofiniteSoftSet {
            universe_size: n,
            default_section,
            exceptions,
        })
    }

    pub fn constant(default_section: FinSet) -> Self {
        CofiniteSoftSet {
            universe_size: default_section.universe_size(),
            default_section,
            exceptions: BTreeMap::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn default_section(&self) -> &FinSet {
        &self.default_section
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, FinSet> {
        &self.exceptions
    }

    pub fn section(&self, t: u64) -> FinSet {
        cf_section(self, t)
    }
}

pub fn cf_section(s: &CofiniteSoftSet, t: u64) -> FinSet {
    s.exceptions.get(&t).copied().unwrap_or(s.default_section)
}

/// `{S_t : t ∈ ℕ}` with `S_t(t) = at_index` and `S_t(s) = default` for `s ≠ t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IndexedTemplate {
    pub at_index: FinSet,
    pub default: FinSet,
}

impl IndexedTemplate {
    pub fn member(&self, index: u64, t: u64) -> FinSet {
        if index == t {
            self.at_index
        } else {
            self.default
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateFamily {
    universe_size: usize,
    template: Option<IndexedTemplate>,
    explicit: Vec<CofiniteSoftSet>,
}

impl TemplateFamily {
    pub fn new(
        universe_size: usize,
        template: Option<IndexedTemplate>,
        explicit: Vec<CofiniteSoftSet>,
    ) -> Result<Self> {
        let sizes = template
            .iter()
            .flat_map(|t| [t.at_index.universe_size(), t.default.universe_size()])
            .chain(explicit.iter().map(CofiniteSoftSet::universe_size));
        for found in sizes {
            if found != universe_size {
                return Err(Error::UniverseMismatch {
                    expected: universe_size,
                    found,
                });
            }
        }
        Ok(TemplateFamily {
            universe_size,
            template,
            explicit,
        })
    }

    /// Builds a family from a list of templates, of which at most one is
    /// supported.
    pub fn with_templates(
        universe_size: usize,
        templates: Vec<IndexedTemplate>,
        explicit: Vec<CofiniteSoftSet>,
    ) -> Result<Self> {
        if templates.len() > 1 {
            return Err(Error::MultipleTemplates);
        }
        TemplateFamily::new(universe_size, templates.into_iter().next(), explicit)
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn template(&self) -> Option<&IndexedTemplate> {
        self.template.as_ref()
    }

    pub fn explicit(&self) -> &[CofiniteSoftSet] {
        &self.explicit
    }
}

/// Labels mentioned by some exception of the family or the target.
fn special_labels(family: &TemplateFamily, target: &CofiniteSoftSet) -> BTreeSet<u64> {
    family
        .explicit
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|s| s.exceptions.keys().copied())
        .collect()
}

fn first_fresh(special: &BTreeSet<u64>) -> u64 {
    special.last().map_or(0, |m| m + 1)
}

fn check_universe(family: &TemplateFamily, target: &CofiniteSoftSet) -> Result<()> {
    if family.universe_size != target.universe_size {
        return Err(Error::UniverseMismatch {
            expected: target.universe_size,
            found: family.universe_size,
        });
    }
    Ok(())
}

/// Section at `t` of the union of the chosen members.
fn union_at(
    family: &TemplateFamily,
    template_indices: &[u64],
    explicit: &[usize],
    t: u64,
) -> FinSet {
    let mut acc = FinSet::empty(family.universe_size);
    if let Some(tpl) = &family.template {
        for &i in template_indices {
            acc = acc | tpl.member(i, t);
        }
    }
    for &e in explicit {
        acc = acc | family.explicit[e].section(t);
    }
    acc
}

/// Section at a label `t` outside every exception of the whole family's union.
fn full_union_at(family: &TemplateFamily, t: u64) -> FinSet {
    let all: Vec<usize> = (0..family.explicit.len()).collect();
    let mut acc = union_at(family, &[], &all, t);
    if let Some(tpl) = &family.template {
        // S_t contributes `at_index`, every other member the default.
        acc = acc | tpl.at_index | tpl.default;
    }
    acc
}

/// Whether the whole (infinite) family covers `target` sectionwise.
pub fn cf_is_cover(family: &TemplateFamily, target: &CofiniteSoftSet) -> Result<Verdict> {
    check_universe(family, target)?;
    let special = special_labels(family, target);
    let labels = special
        .iter()
        .copied()
        .chain(std::iter::once(first_fresh(&special)));
    for t in labels {
        let union = full_union_at(family, t);
        let goal = target.section(t);
        if !goal.is_subset(&union) {
            return Ok(Verdict::fails(Witness::UncoveredLabel {
                label: t,
                union,
                target: goal,
            }));
        }
    }
    Ok(Verdict::holds())
}

/// Whether a finite subfamily covers `target`: the chosen template indices
/// and explicit members are checked at every special label, every chosen
/// index, and one label outside all of them.
pub fn covers_target(
    family: &TemplateFamily,
    target: &CofiniteSoftSet,
    template_indices: &[u64],
    explicit: &[usize],
) -> Result<Verdict> {
    check_universe(family, target)?;
    let special = special_labels(family, target);
    let beyond = special
        .iter()
        .chain(template_indices)
        .max()
        .map_or(0, |m| m + 1);
    let labels: BTreeSet<u64> = special
        .iter()
        .chain(template_indices)
        .copied()
        .chain(std::iter::once(beyond))
        .collect();
    for t in labels {
        let union = union_at(family, template_indices, explicit, t);
        let goal = target.section(t);
        if !goal.is_subset(&union) {
            return Ok(Verdict::fails(Witness::UncoveredLabel {
                label: t,
                union,
                target: goal,
            }));
        }
    }
    Ok(Verdict::holds())
}

/// Decides whether some finite subfamily of a cover covers `target`.
///
/// On success the witness is a smallest subfamily, ties broken by
/// lexicographic order of (explicit members, template indices). Otherwise the
/// certificate is a label outside every mentioned label and every possible
/// finite index set, with the union of sections any finite subfamily can
/// reach there.
pub fn decide_finite_subcover(
    family: &TemplateFamily,
    target: &CofiniteSoftSet,
) -> Result<Verdict> {
    let cover = cf_is_cover(family, target)?;
    if !cover.holds {
        return Err(Error::NotACover(format!(
            "the family does not cover the target: {:?}",
            cover.witness
        )));
    }
    let special = special_labels(family, target);
    let fresh = first_fresh(&special);

    // Away from special labels and chosen indices, a finite subfamily only
    // reaches the explicit defaults and the template default.
    let mut reachable = family
        .explicit
        .iter()
        .fold(FinSet::empty(family.universe_size), |acc, e| {
            acc | e.default_section
        });
    if let Some(tpl) = &family.template {
        reachable = reachable | tpl.default;
    }
    if !target.default_section.is_subset(&reachable) {
        return Ok(Verdict::fails(Witness::UncoveredLabel {
            label: fresh + 2,
            union: reachable,
            target: target.default_section,
        }));
    }

    // Labels outside the special set are interchangeable, and two of them
    // already realise every pattern of the template conditions.
    let index_pool: Vec<u64> = if family.template.is_some() {
        special.iter().copied().chain([fresh, fresh + 1]).collect()
    } else {
        Vec::new()
    };
    let pool = family.explicit.len() + index_pool.len();
    if pool > MAX_SYMBOLIC_SEARCH {
        return Err(Error::Capacity {
            what: "symbolic subcover search pool",
            requested: pool as u128,
            limit: MAX_SYMBOLIC_SEARCH as u128,
        });
    }
    for size in 1..=pool {
        for chosen in (0..pool).combinations(size) {
            let explicit: Vec<usize> = chosen
                .iter()
                .copied()
                .filter(|&c| c < family.explicit.len())
                .collect();
            let indices: Vec<u64> = chosen
                .iter()
                .filter(|&&c| c >= family.explicit.len())
                .map(|&c| index_pool[c - family.explicit.len()])
                .collect();
            if covers_target(family, target, &indices, &explicit)?.holds {
                return Ok(Verdict::holds_with(Witness::SymbolicSubfamily {
                    template_indices: indices,
                    explicit_members: explicit,
                }));
            }
        }
    }
    Err(Error::NotACover(
        "no finite subfamily found although the reachable sections cover the target".into(),
    ))
}

fn check_truncation(m: u64, max_label: Option<u64>) -> Result<()> {
    match max_label {
        Some(max_label) if m <= max_label => Err(Error::TruncationTooSmall { m, max_label }),
        None if m == 0 => Err(Error::TruncationTooSmall { m, max_label: 0 }),
        _ => Ok(()),
    }
}

/// The soft set over parameters `0..m` agreeing with `s` there.
pub fn truncate(s: &CofiniteSoftSet, m: u64) -> Result<SoftSet> {
    check_truncation(m, s.exceptions.keys().last().copied())?;
    SoftSet::new(s.universe_size, (0..m).map(|t| s.section(t)).collect())
}

/// Truncated members: `S_0, .., S_{m-1}` first, then the explicit members.
pub fn truncate_family(family: &TemplateFamily, m: u64) -> Result<Vec<SoftSet>> {
    let max_label = family
        .explicit
        .iter()
        .flat_map(|s| s.exceptions.keys().copied())
        .max();
    check_truncation(m, max_label)?;
    let mut out = Vec::new();
    if let Some(tpl) = &family.template {
        for i in 0..m {
            out.push(SoftSet::new(
                family.universe_size,
                (0..m).map(|t| tpl.member(i, t)).collect(),
            )?);
        }
    }
    for e in &family.explicit {
        out.push(truncate(e, m)?);
    }
    Ok(out)
}
