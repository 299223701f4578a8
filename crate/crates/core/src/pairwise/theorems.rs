//! Mechanical check of the structural results on one finite space.
//!
//! Every implication is evaluated on the given space: the antecedent and the
//! consequent are computed independently and the implication is asserted.
//! Results that need canonical soft topologies are reported as not
//! applicable on other inputs.

use serde::Serialize;

use super::{
    component_bitop, cylinder, find_finite_subcover, induced_bitop, is_pairwise_soft_cover,
    soft_separation_from_tables, CoverMember, NeighbourhoodTable, SoftBitopSpace, SoftCover,
};
use crate::error::Result;
use crate::finite_sets::{
    family_separation, generate_topology, minimal_subcover, pairwise_separation, subsets_of, Axiom,
    ClassicalTopology, FinSet, PairReading, Separation,
};
use crate::soft_topology::{
    check_finest_open_projections, induced_topology, nonempty_opens, reconstruct,
};
use crate::verdict::{Side, Witness};

/// Largest `|SE(F)|` for which maximality of the induced topology is checked
/// against every one-set extension.
const MAX_FINEST_EXHAUSTIVE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub checks: Vec<TheoremCheck>,
    /// Facts worth flagging that are not failures, e.g. a converse failing.
    pub observations: Vec<String>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn failures(&self) -> impl Iterator<Item = &TheoremCheck> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&TheoremCheck> {
        self.checks.iter().find(|c| c.id == id)
    }
}

struct Recorder {
    checks: Vec<TheoremCheck>,
}

impl Recorder {
    fn push(
        &mut self,
        id: impl Into<String>,
        status: Status,
        witness: Option<Witness>,
        note: Option<String>,
    ) {
        self.checks.push(TheoremCheck {
            id: id.into(),
            status,
            witness,
            note,
        });
    }

    fn pass(&mut self, id: impl Into<String>, note: Option<String>) {
        self.push(id, Status::Pass, None, note);
    }

    fn fail(&mut self, id: impl Into<String>, witness: Witness) {
        self.push(id, Status::Fail, Some(witness), None);
    }

    fn not_applicable(&mut self, id: impl Into<String>, note: &str) {
        self.push(id, Status::NotApplicable, None, Some(note.to_string()));
    }

    fn outcome(&mut self, id: impl Into<String>, failure: Option<Witness>) {
        match failure {
            None => self.pass(id, None),
            Some(w) => self.fail(id, w),
        }
    }
}

fn axiom_slug(axiom: Axiom) -> &'static str {
    match axiom {
        Axiom::T0 => "t0",
        Axiom::T1 => "t1",
        Axiom::T2 => "t2",
    }
}

fn detail(message: impl Into<String>) -> Witness {
    Witness::Detail {
        message: message.into(),
    }
}

/// Runs every check on `space`.
pub fn verify_theorems(space: &SoftBitopSpace) -> Result<TheoremReport> {
    let se = space.soft_elements();
    let taus = [space.tau1(), space.tau2()];
    let n1 = NeighbourhoodTable::new(se, space.tau1());
    let n2 = NeighbourhoodTable::new(se, space.tau2());
    let soft: Vec<Separation> = Axiom::ALL
        .iter()
        .map(|&j| soft_separation_from_tables(se, &n1, &n2, j, PairReading::Ordered))
        .collect();
    let components = (0..space.param_count())
        .map(|t| component_bitop(space, t))
        .collect::<Result<Vec<_>>>()?;
    let component_sep: Vec<Vec<Separation>> = components
        .iter()
        .map(|b| {
            Axiom::ALL
                .iter()
                .map(|&j| pairwise_separation(b, j, PairReading::Ordered))
                .collect()
        })
        .collect();
    let induced = induced_bitop(space)?;
    let induced_sep: Vec<Separation> = Axiom::ALL
        .iter()
        .map(|&j| family_separation(&induced, j, PairReading::Ordered))
        .collect();
    let stars = [&induced.first, &induced.second];
    let canonical = space.is_canonical();
    let n = se.len();

    let element_pair = |s: Separation| {
        s.witness().map(|(a, b)| Witness::ElementPair {
            first: se.get(a).clone(),
            second: se.get(b).clone(),
        })
    };
    let first_component_failure = |j: usize| {
        component_sep.iter().enumerate().find_map(|(t, seps)| {
            seps[j].witness().map(|(x, y)| Witness::PointPair {
                param: t,
                first: x,
                second: y,
            })
        })
    };

    let mut rec = Recorder { checks: Vec::new() };

    // Induced families are topologies.
    let elements = |mask: FinSet| mask.iter().map(|i| se.get(i).clone()).collect::<Vec<_>>();
    let failure = stars.iter().find_map(|star| {
        star.closure_defect().map(|(a, b)| Witness::InducedSets {
            first: elements(a),
            second: elements(b),
        })
    });
    rec.outcome("induced-topologies", failure);

    // SE(H) is induced-open for every soft open H with nonempty sections.
    let mut failure = None;
    'outer: for (tau, star) in taus.iter().zip(stars) {
        for h in tau
            .opens()
            .iter()
            .filter(|h| h.first_empty_section().is_none())
        {
            let image = se.se_of_softset(h)?.to_finset()?;
            if !star.contains(&image) {
                failure = Some(Witness::SoftSet { set: h.clone() });
                break 'outer;
            }
        }
    }
    rec.outcome("soft-opens-induce-opens", failure);

    // T2 => T1 => T0 for the soft deciders.
    let chain_broken =
        (soft[2].holds() && !soft[1].holds()) || (soft[1].holds() && !soft[0].holds());
    rec.outcome(
        "separation-chain",
        chain_broken.then(|| {
            detail(format!(
                "soft verdicts T0/T1/T2 = {}/{}/{}",
                soft[0].holds(),
                soft[1].holds(),
                soft[2].holds()
            ))
        }),
    );

    for (j, axiom) in Axiom::ALL.iter().enumerate() {
        let slug = axiom_slug(*axiom);
        let all_components = component_sep.iter().all(|seps| seps[j].holds());

        // Soft separation passes to every component bitopology.
        let id = format!("soft-to-component-{slug}");
        if soft[j].holds() {
            rec.outcome(id, first_component_failure(j));
        } else {
            rec.pass(id, Some("antecedent false".into()));
        }

        // Componentwise separation lifts to the soft space when canonical.
        let id = format!("component-to-soft-{slug}");
        if !canonical {
            rec.not_applicable(id, "needs canonical soft topologies");
        } else if !all_components {
            rec.pass(id, Some("antecedent false".into()));
        } else if soft[j].holds() {
            rec.pass(id, None);
        } else {
            let mut w = element_pair(soft[j]);
            rec.push(
                id,
                Status::Fail,
                w.take(),
                Some(format!(
                    "every component bitopology is pairwise {axiom} but the soft space is not"
                )),
            );
        }

        // Equivalence for canonical spaces.
        let id = format!("canonical-componentwise-equivalence-{slug}");
        if !canonical {
            rec.not_applicable(id, "needs canonical soft topologies");
        } else if soft[j].holds() == all_components {
            rec.pass(id, None);
        } else if soft[j].holds() {
            rec.fail(
                id,
                first_component_failure(j).expect("some component fails"),
            );
        } else {
            rec.fail(id, element_pair(soft[j]).expect("soft separation fails"));
        }

        // Soft separation passes to the induced bitopology.
        let id = format!("soft-to-induced-{slug}");
        if soft[j].holds() {
            let w = induced_sep[j].witness().map(|(a, b)| Witness::InducedPair {
                first: a,
                second: b,
            });
            rec.outcome(id, w);
        } else {
            rec.pass(id, Some("antecedent false".into()));
        }
    }

    // τ* is a topology making every projection open, and no strictly finer
    // topology does.
    let mut failure = None;
    let mut exhaustive = true;
    for (tau, star) in taus.iter().zip(stars) {
        let Some(star) = star.to_topology() else {
            failure = Some(detail("induced family is not a topology"));
            break;
        };
        if !check_finest_open_projections(se, tau, &star)? {
            failure = Some(detail("induced topology has a non-open projection"));
            break;
        }
        if !check_finest_open_projections(se, tau, &ClassicalTopology::indiscrete(FinSet::full(n)))?
        {
            failure = Some(detail(
                "indiscrete topology on SE(F) has a non-open projection",
            ));
            break;
        }
        if n > MAX_FINEST_EXHAUSTIVE {
            exhaustive = false;
            continue;
        }
        for extra in subsets_of(&FinSet::full(n)).filter(|s| !star.is_open(s)) {
            let mut subbase = star.opens().to_vec();
            subbase.push(extra);
            let finer = generate_topology(&subbase, n)?;
            if check_finest_open_projections(se, tau, &finer)? {
                failure = Some(detail(format!(
                    "adding {extra} to the induced topology keeps projections open"
                )));
                break;
            }
        }
    }
    let note = (!exhaustive)
        .then(|| format!("maximality not enumerated for |SE(F)| > {MAX_FINEST_EXHAUSTIVE}"));
    match failure {
        None => rec.pass("finest-open-projections", note),
        Some(w) => rec.fail("finest-open-projections", w),
    }

    // The canonical enlargement keeps components and the induced topology.
    let mut failure = None;
    for (tau, star) in taus.iter().zip(stars) {
        let enlarged = tau.canonical_enlargement()?;
        if enlarged.component_topologies() != tau.component_topologies() {
            failure = Some(detail("canonical enlargement changed a component topology"));
        } else if induced_topology(se, &enlarged)? != *star {
            failure = Some(detail("canonical enlargement changed the induced topology"));
        } else if let Some(h) = tau.opens().iter().find(|h| !enlarged.is_open(h)) {
            failure = Some(Witness::SoftSet { set: h.clone() });
        } else if tau.is_canonical() != (&enlarged == *tau) {
            failure = Some(detail("canonicality test disagrees with the enlargement"));
        }
        if failure.is_some() {
            break;
        }
    }
    rec.outcome("canonical-enlargement-invariance", failure);

    // Any topology on SE(F) embeds in the one induced by its reconstruction.
    let mut failure = None;
    let candidates = [
        generate_topology(stars[0].members(), n)?,
        generate_topology(stars[1].members(), n)?,
        ClassicalTopology::indiscrete(FinSet::full(n)),
        ClassicalTopology::discrete(FinSet::full(n)),
    ];
    for u in &candidates {
        let r = reconstruct(se, u)?;
        if !r.contained || !r.tau_hat.is_canonical() {
            failure = Some(detail(format!(
                "reconstruction of a {}-open topology",
                u.len()
            )));
            break;
        }
    }
    rec.outcome("reconstruction-containment", failure);

    // Component covers transported by cylinders (canonical spaces only).
    if canonical {
        rec.outcome(
            "cylinder-cover-transport",
            cylinder_transport_failure(space)?,
        );
    } else {
        rec.not_applicable(
            "cylinder-cover-transport",
            "needs canonical soft topologies",
        );
    }

    rec.outcome(
        "finite-parameter-compactness",
        finite_compactness_failure(space)?,
    );

    let mut observations = Vec::new();
    for (j, axiom) in Axiom::ALL.iter().enumerate() {
        if !soft[j].holds() && induced_sep[j].holds() {
            observations.push(format!(
                "not pairwise soft {axiom} while the induced pair is pairwise {axiom}: \
                 the converse of soft-to-induced fails here"
            ));
        }
    }
    if !canonical && space.tau1().canonical_enlargement()? != *space.tau1() {
        observations.push(
            "the first soft topology is strictly smaller than its canonical enlargement".into(),
        );
    }
    if !canonical && space.tau2().canonical_enlargement()? != *space.tau2() {
        observations.push(
            "the second soft topology is strictly smaller than its canonical enlargement".into(),
        );
    }

    Ok(TheoremReport {
        checks: rec.checks,
        observations,
    })
}

/// For each parameter, lifts the cover of `F(t0)` by all nonempty component
/// opens to cylinders and checks that the soft subcover found restricts to a
/// component subcover of the same minimum size.
fn cylinder_transport_failure(space: &SoftBitopSpace) -> Result<Option<Witness>> {
    let f = space.ambient();
    for t0 in 0..space.param_count() {
        let mut opens: Vec<(FinSet, Side)> = Vec::new();
        let (c1, c2) = (
            space.tau1().component_topology(t0)?,
            space.tau2().component_topology(t0)?,
        );
        for v in nonempty_opens(&c1) {
            let side = if c2.is_open(&v) {
                Side::Both
            } else {
                Side::First
            };
            opens.push((v, side));
        }
        for v in nonempty_opens(&c2).filter(|v| !c1.is_open(v)) {
            opens.push((v, Side::Second));
        }
        let members = opens
            .iter()
            .map(|(v, side)| {
                cylinder(space, t0, v, *side).map(|c| CoverMember {
                    set: c.set,
                    side: *side,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cover = SoftCover {
            target: f.clone(),
            members,
        };
        if !is_pairwise_soft_cover(space, &cover).holds {
            return Ok(Some(detail(format!(
                "cylinders at parameter {t0} do not cover"
            ))));
        }
        let soft_sub = find_finite_subcover(space, &cover)?;
        let section_union = soft_sub
            .members
            .iter()
            .fold(FinSet::empty(f.universe_size()), |acc, &i| acc | opens[i].0);
        if !f.section(t0).is_subset(&section_union) {
            return Ok(Some(Witness::Subfamily {
                members: soft_sub.members,
            }));
        }
        let component_opens: Vec<FinSet> = opens.iter().map(|(v, _)| *v).collect();
        let component_sub = minimal_subcover(&component_opens, f.section(t0))?;
        if component_sub.len() != soft_sub.members.len() {
            return Ok(Some(detail(format!(
                "parameter {t0}: soft subcover size {} vs component subcover size {}",
                soft_sub.members.len(),
                component_sub.len()
            ))));
        }
    }
    Ok(None)
}

/// Finite subcovers exist for the cover by all opens and for the cover by
/// all proper opens (when that is still a cover).
fn finite_compactness_failure(space: &SoftBitopSpace) -> Result<Option<Witness>> {
    let f = space.ambient();
    let everything = SoftCover::all_opens(space, f.clone());
    let mut proper = everything.clone();
    proper.members.retain(|m| &m.set != f);
    let mut covers = vec![everything];
    if is_pairwise_soft_cover(space, &proper).holds {
        covers.push(proper);
    }
    for cover in &covers {
        let sub = find_finite_subcover(space, cover)?;
        for subfamily in [&sub.parameter_union, &sub.members] {
            let restricted = SoftCover {
                target: cover.target.clone(),
                members: subfamily
                    .iter()
                    .map(|&i| cover.members[i].clone())
                    .collect(),
            };
            if !is_pairwise_soft_cover(space, &restricted).holds {
                return Ok(Some(Witness::Subfamily {
                    members: subfamily.clone(),
                }));
            }
        }
        if sub.members.len() > sub.parameter_union.len() {
            return Ok(Some(detail(
                "minimum subcover larger than the per-parameter union",
            )));
        }
    }
    Ok(None)
}
