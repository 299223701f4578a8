//! JSON space descriptions: elements and parameters are referenced by name
//! and resolved to indices here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_sets::{generate_topology_on, FinSet};
use crate::pairwise::SoftBitopSpace;
use crate::soft_core::{SoftElement, SoftSet};
use crate::soft_topology::{canonical_topology, SoftTopology};
use crate::symbolic::{CofiniteSoftSet, IndexedTemplate, TemplateFamily};

/// A soft set given as parameter name → element names; missing parameters
/// have empty sections.
pub type NamedSoftSet = BTreeMap<String, Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDescription {
    pub universe: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sections: NamedSoftSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<TopologyInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau2: Option<TopologyInput>,
    /// Subsets of `SE(F)` to test for representability; each soft element
    /// lists one element name per parameter, in parameter order.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub representability: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic: Option<SymbolicInput>,
}

/// Either an explicit list of soft opens (the null soft set and `F` are
/// added), or `"generate": "canonical"` with one subbase per parameter.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyInput {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<NamedSoftSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generate: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subbases: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CofiniteInput {
    pub default: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub exceptions: BTreeMap<u64, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemplateInput {
    pub at_index: Vec<String>,
    pub default: Vec<String>,
}

/// Cover of a cofinite target over parameters `0, 1, 2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolicInput {
    pub target: CofiniteInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub template: Option<TemplateInput>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub explicit: Vec<CofiniteInput>,
}

/// Everything a description resolves to.
#[derive(Debug, Clone)]
pub struct ResolvedDescription {
    pub names: Vec<String>,
    pub params: Vec<String>,
    pub space: Option<SoftBitopSpace>,
    pub representability: Vec<Vec<SoftElement>>,
    pub symbolic: Option<(TemplateFamily, CofiniteSoftSet)>,
}

impl SpaceDescription {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("invalid description: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    pub fn resolve(&self) -> Result<ResolvedDescription> {
        let r = Resolver::new(self)?;
        let ambient = if self.params.is_empty() && self.sections.is_empty() {
            None
        } else {
            Some(r.ambient()?)
        };
        let space = match (&self.tau1, &self.tau2) {
            (Some(t1), Some(t2)) => {
                let ambient = ambient.ok_or_else(|| {
                    Error::Input("params: at least one parameter is required".into())
                })?;
                Some(SoftBitopSpace::new(
                    r.topology(&ambient, t1, "tau1")?,
                    r.topology(&ambient, t2, "tau2")?,
                )?)
            }
            (None, None) => None,
            _ => return Err(Error::Input("tau1 and tau2 must be given together".into())),
        };
        if space.is_none() && !self.representability.is_empty() {
            return Err(Error::Input("representability needs tau1 and tau2".into()));
        }
        let representability = self
            .representability
            .iter()
            .enumerate()
            .map(|(i, k)| {
                k.iter()
                    .enumerate()
                    .map(|(j, a)| r.element(a, &format!("representability[{i}][{j}]")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let symbolic = self.symbolic.as_ref().map(|s| r.symbolic(s)).transpose()?;
        Ok(ResolvedDescription {
            names: self.universe.clone(),
            params: self.params.clone(),
            space,
            representability,
            symbolic,
        })
    }
}

struct Resolver<'a> {
    desc: &'a SpaceDescription,
    n: usize,
}

impl<'a> Resolver<'a> {
    fn new(desc: &'a SpaceDescription) -> Result<Self> {
        let n = desc.universe.len();
        if n == 0 || n > crate::finite_sets::MAX_UNIVERSE {
            return Err(Error::UnsupportedUniverse(n));
        }
        for (i, name) in desc.universe.iter().enumerate() {
            if desc.universe[..i].contains(name) {
                return Err(Error::Input(format!(
                    "universe: duplicate element \"{name}\""
                )));
            }
        }
        for (i, name) in desc.params.iter().enumerate() {
            if desc.params[..i].contains(name) {
                return Err(Error::Input(format!(
                    "params: duplicate parameter \"{name}\""
                )));
            }
        }
        Ok(Resolver { desc, n })
    }

    fn point(&self, name: &str, at: &str) -> Result<usize> {
        self.desc
            .universe
            .iter()
            .position(|u| u == name)
            .ok_or_else(|| Error::Input(format!("{at}: unknown element \"{name}\"")))
    }

    fn param(&self, name: &str, at: &str) -> Result<usize> {
        self.desc
            .params
            .iter()
            .position(|p| p == name)
            .ok_or_else(|| Error::Input(format!("{at}: unknown parameter \"{name}\"")))
    }

    fn set(&self, names: &[String], at: &str) -> Result<FinSet> {
        let points = names
            .iter()
            .map(|x| self.point(x, at))
            .collect::<Result<Vec<_>>>()?;
        FinSet::from_elements(self.n, points)
    }

    fn soft_set(&self, named: &NamedSoftSet, at: &str) -> Result<SoftSet> {
        let mut sections = vec![FinSet::empty(self.n); self.desc.params.len()];
        for (p, xs) in named {
            let t = self.param(p, at)?;
            sections[t] = self.set(xs, &format!("{at}.{p}"))?;
        }
        SoftSet::new(self.n, sections)
    }

    fn ambient(&self) -> Result<SoftSet> {
        if self.desc.params.is_empty() {
            return Err(Error::Input(
                "params: at least one parameter is required".into(),
            ));
        }
        self.soft_set(&self.desc.sections, "sections")
    }

    fn topology(&self, ambient: &SoftSet, input: &TopologyInput, at: &str) -> Result<SoftTopology> {
        match (&input.opens, input.generate.as_deref(), &input.subbases) {
            (Some(opens), None, None) => {
                let mut family = opens
                    .iter()
                    .enumerate()
                    .map(|(i, o)| self.soft_set(o, &format!("{at}.opens[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                if let Some(i) = family.iter().position(|h| !h.is_soft_subset_of(ambient)) {
                    return Err(Error::Input(format!(
                        "{at}.opens[{i}]: not a soft subset of the sections"
                    )));
                }
                family.push(SoftSet::null(ambient.param_count(), self.n));
                family.push(ambient.clone());
                SoftTopology::new(ambient.clone(), family)
                    .map_err(|e| Error::Input(format!("{at}.opens: {e}")))
            }
            (None, Some("canonical"), subbases) => {
                let empty = BTreeMap::new();
                let subbases = subbases.as_ref().unwrap_or(&empty);
                for p in subbases.keys() {
                    self.param(p, &format!("{at}.subbases"))?;
                }
                let sigmas = self
                    .desc
                    .params
                    .iter()
                    .enumerate()
                    .map(|(t, p)| {
                        let sets = subbases
                            .get(p)
                            .map(|list| {
                                list.iter()
                                    .enumerate()
                                    .map(|(i, xs)| self.set(xs, &format!("{at}.subbases.{p}[{i}]")))
                                    .collect::<Result<Vec<_>>>()
                            })
                            .transpose()?
                            .unwrap_or_default();
                        if let Some(bad) = sets.iter().find(|s| !s.is_subset(ambient.section(t))) {
                            return Err(Error::Input(format!(
                                "{at}.subbases.{p}: {} is not inside the section",
                                bad.display_with(&self.desc.universe)
                            )));
                        }
                        generate_topology_on(ambient.section(t), &sets)
                    })
                    .collect::<Result<Vec<_>>>()?;
                canonical_topology(ambient, &sigmas)
            }
            (None, Some(other), _) => Err(Error::Input(format!(
                "{at}.generate: unsupported directive \"{other}\" (expected \"canonical\")"
            ))),
            _ => Err(Error::Input(format!(
                "{at}: give either \"opens\" or \"generate\" with \"subbases\""
            ))),
        }
    }

    fn element(&self, names: &[String], at: &str) -> Result<SoftElement> {
        if names.len() != self.desc.params.len() {
            return Err(Error::Input(format!(
                "{at}: expected {} coordinates, got {}",
                self.desc.params.len(),
                names.len()
            )));
        }
        let values = names
            .iter()
            .map(|x| self.point(x, at))
            .collect::<Result<Vec<_>>>()?;
        Ok(SoftElement::new(values))
    }

    fn cofinite(&self, input: &CofiniteInput, at: &str) -> Result<CofiniteSoftSet> {
        let default = self.set(&input.default, &format!("{at}.default"))?;
        let exceptions = input
            .exceptions
            .iter()
            .map(|(&t, xs)| Ok((t, self.set(xs, &format!("{at}.exceptions.{t}"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        CofiniteSoftSet::new(default, exceptions)
    }

    fn symbolic(&self, input: &SymbolicInput) -> Result<(TemplateFamily, CofiniteSoftSet)> {
        let target = self.cofinite(&input.target, "symbolic.target")?;
        let template = input
            .template
            .as_ref()
            .map(|t| {
                Ok::<_, Error>(IndexedTemplate {
                    at_index: self.set(&t.at_index, "symbolic.template.at_index")?,
                    default: self.set(&t.default, "symbolic.template.default")?,
                })
            })
            .transpose()?;
        let explicit = input
            .explicit
            .iter()
            .enumerate()
            .map(|(i, e)| self.cofinite(e, &format!("symbolic.explicit[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        Ok((TemplateFamily::new(self.n, template, explicit)?, target))
    }
}
