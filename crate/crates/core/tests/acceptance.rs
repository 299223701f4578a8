//! Acceptance suite: one PASS/FAIL line per criterion, then a single
//! verdict. Run with `cargo test --release --test acceptance -- --nocapture`
//! to see the lines when everything passes.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;

use soft_bitop::finite_sets::{
    enumerate_topologies, family_separation, is_topology, FinSet, PairReading,
};
use soft_bitop::pairwise::{
    pairwise_soft, search_counterexamples, verify_theorems, SoftBitopSpace,
};
use soft_bitop::sampling::{
    random_sigma_family, random_soft_set, random_soft_topology, seeded_rng, DEFAULT_SEED,
};
use soft_bitop::soft_core::enumerate_soft_elements;
use soft_bitop::soft_topology::{canonical_topology, induced_topology, is_soft_topology};
use soft_bitop::symbolic::{
    decide_finite_subcover, truncate, truncate_family, CofiniteSoftSet, IndexedTemplate,
    TemplateFamily,
};
use soft_bitop::{Axiom, SoftElement, SoftSet, SoftTopology, Witness};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn set(n: usize, xs: &[usize]) -> FinSet {
    FinSet::from_elements(n, xs.iter().copied()).unwrap()
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let elapsed = start.elapsed();
    if elapsed <= limit {
        Ok(format!("{detail}, {elapsed:.2?}"))
    } else {
        Err(format!(
            "{detail}, but took {elapsed:.2?} (limit {limit:?})"
        ))
    }
}

fn indiscrete_square() -> SoftBitopSpace {
    let f = SoftSet::from_lists(2, &[&[0, 1], &[0, 1]]).unwrap();
    SoftBitopSpace::new(
        SoftTopology::indiscrete(f.clone()),
        SoftTopology::indiscrete(f),
    )
    .unwrap()
}

fn representability() -> Outcome {
    let start = Instant::now();
    // x1..x4 are points 0..3; F(alpha) = {x1,x2}, F(beta) = {x3,x4}.
    let f = SoftSet::from_lists(4, &[&[0, 1], &[2, 3]]).unwrap();
    let se = enumerate_soft_elements(&f).unwrap();
    let k = [SoftElement::new(vec![0, 2]), SoftElement::new(vec![1, 3])];
    let r = se
        .is_se_representable(&se.subset_from_elements(k.iter()).unwrap())
        .unwrap();
    let expected = SoftElement::new(vec![0, 3]);
    if r.representable || r.witness.as_ref() != Some(&expected) {
        return Err(format!(
            "representable={} witness={:?}",
            r.representable, r.witness
        ));
    }
    within(
        Duration::from_secs(1),
        start,
        "non-representable, witness (x1,x4)".into(),
    )
}

fn induced_hausdorff() -> Outcome {
    let start = Instant::now();
    let space = indiscrete_square();
    let se = space.soft_elements();
    let soft_t0 = pairwise_soft(&space, Axiom::T0).holds;
    let induced = induced_topology(se, space.tau1()).unwrap();
    let idx = |a: &[usize]| se.index_of(&SoftElement::new(a.to_vec())).unwrap();
    let u = set(4, &[idx(&[0, 0]), idx(&[1, 1])]);
    let v = set(4, &[idx(&[0, 1]), idx(&[1, 0])]);
    let has_uv = induced.contains(&u) && induced.contains(&v);
    let pair = soft_bitop::pairwise::induced_bitop(&space).unwrap();
    let t2 = family_separation(&pair, Axiom::T2, PairReading::Ordered);
    let detail = format!(
        "soft T0={soft_t0}, U and V induced open={has_uv}, induced pairwise T2={}",
        t2.holds()
    );
    if soft_t0 || !has_uv || !t2.holds() {
        let witness = t2
            .witness()
            .map(|(a, b)| {
                format!(
                    " (unseparated {:?} vs {:?})",
                    se.get(a).values(),
                    se.get(b).values()
                )
            })
            .unwrap_or_default();
        return Err(detail + &witness);
    }
    within(Duration::from_secs(1), start, detail)
}

fn infinite_parameters() -> Outcome {
    let start = Instant::now();
    let family = TemplateFamily::new(
        2,
        Some(IndexedTemplate {
            at_index: set(2, &[1]),
            default: set(2, &[0]),
        }),
        Vec::new(),
    )
    .unwrap();
    let target = CofiniteSoftSet::constant(set(2, &[0, 1]));
    let v = decide_finite_subcover(&family, &target).unwrap();
    match (&v.holds, &v.witness) {
        (
            false,
            Some(Witness::UncoveredLabel {
                label,
                union,
                target: t,
            }),
        ) if *union == set(2, &[0]) => within(
            Duration::from_secs(1),
            start,
            format!(
                "NO, generic label {label} has union {{0}} against {{{}}}",
                t.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        ),
        _ => Err(format!("unexpected verdict {v:?}")),
    }
}

/// Theorem rows named by the criterion.
const THEOREM_ROWS: [&str; 17] = [
    "separation-chain",
    "soft-to-component-t0",
    "soft-to-component-t1",
    "soft-to-component-t2",
    "component-to-soft-t0",
    "component-to-soft-t1",
    "component-to-soft-t2",
    "canonical-componentwise-equivalence-t0",
    "canonical-componentwise-equivalence-t1",
    "canonical-componentwise-equivalence-t2",
    "soft-to-induced-t0",
    "soft-to-induced-t1",
    "soft-to-induced-t2",
    "finest-open-projections",
    "canonical-enlargement-invariance",
    "reconstruction-containment",
    "finite-parameter-compactness",
];

fn theorem_suite() -> Outcome {
    let start = Instant::now();
    let shapes: [&[&[usize]]; 6] = [
        &[&[0]],
        &[&[0, 1]],
        &[&[0], &[0]],
        &[&[0], &[0, 1]],
        &[&[0, 1], &[0]],
        &[&[0, 1], &[0, 1]],
    ];
    let mut failures: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut spaces = 0usize;
    for lists in shapes {
        let f = SoftSet::from_lists(2, lists).unwrap();
        let candidates = SoftTopology::enumerate_all(&f).unwrap();
        let pairs: Vec<(usize, usize)> = (0..candidates.len())
            .flat_map(|i| (0..candidates.len()).map(move |j| (i, j)))
            .collect();
        let results: Vec<Vec<(String, String)>> = pairs
            .par_iter()
            .map(|&(i, j)| {
                let raw =
                    SoftBitopSpace::new(candidates[i].clone(), candidates[j].clone()).unwrap();
                let canonical = raw.canonicalized().unwrap();
                let mut failed = Vec::new();
                for (label, space) in [("raw", &raw), ("canonicalized", &canonical)] {
                    let report = verify_theorems(space).unwrap();
                    for c in report
                        .failures()
                        .filter(|c| THEOREM_ROWS.contains(&c.id.as_str()))
                    {
                        failed.push((
                            c.id.clone(),
                            format!("{label} tau1={:?} tau2={:?}", space.tau1(), space.tau2()),
                        ));
                    }
                }
                failed
            })
            .collect();
        spaces += 2 * pairs.len();
        for (id, example) in results.into_iter().flatten() {
            let entry = failures.entry(id).or_insert((0, example));
            entry.0 += 1;
        }
    }
    if failures.is_empty() {
        return within(
            Duration::from_secs(300),
            start,
            format!("{spaces} spaces, zero failures"),
        );
    }
    let summary: Vec<String> = failures
        .iter()
        .map(|(id, (count, example))| format!("{id}: {count} failures, first {example}"))
        .collect();
    Err(format!("{spaces} spaces; {}", summary.join("; ")))
}

fn structural_oracles() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded_rng(DEFAULT_SEED);
    let mut problems = Vec::new();

    let mut not_topologies = 0;
    let mut first = None;
    for _ in 0..1000 {
        let params = rng.random_range(1..=2);
        let universe = rng.random_range(1..=4);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let tau = random_soft_topology(&mut rng, &f, 4).unwrap();
        let induced = induced_topology(&se, &tau).unwrap();
        if !is_topology(induced.members(), se.len()).unwrap() {
            not_topologies += 1;
            first.get_or_insert_with(|| format!("{tau:?}"));
        }
    }
    if not_topologies > 0 {
        problems.push(format!(
            "induced family not a topology for {not_topologies}/1000 soft topologies (first {})",
            first.unwrap()
        ));
    }

    let mut bad_canonical = 0;
    for _ in 0..1000 {
        let params = rng.random_range(1..=3);
        let universe = rng.random_range(1..=3);
        let f = random_soft_set(&mut rng, params, universe);
        let sigmas = random_sigma_family(&mut rng, &f, 3).unwrap();
        let can = canonical_topology(&f, &sigmas).unwrap();
        if !is_soft_topology(&f, can.opens()).unwrap() {
            bad_canonical += 1;
        }
    }
    if bad_canonical > 0 {
        problems.push(format!(
            "canonical topology invalid for {bad_canonical}/1000 families"
        ));
    }

    let mut union_failures = 0;
    let mut intersection_failures = 0;
    let mut first_intersection = None;
    for _ in 0..10_000 {
        let params = rng.random_range(1..=3);
        let universe = rng.random_range(1..=3);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let k = rng.random_range(1..=4);
        let family: Vec<_> = (0..k)
            .map(|_| {
                se.subset_from_indices((0..se.len()).filter(|_| rng.random_bool(0.5)))
                    .unwrap()
            })
            .collect();
        let union = family.iter().fold(se.empty_subset(), |acc, t| acc.union(t));
        if (0..params).any(|t| {
            let expected = family.iter().fold(FinSet::empty(universe), |acc, s| {
                acc.union(&se.section(s, t))
            });
            se.section(&union, t) != expected
        }) {
            union_failures += 1;
        }
        let (t1, t2) = (&family[0], family.last().unwrap());
        let meet = t1.intersection(t2);
        if meet.is_empty() {
            continue;
        }
        if let Some(t) = (0..params)
            .find(|&t| se.section(&meet, t) != se.section(t1, t).intersection(&se.section(t2, t)))
        {
            intersection_failures += 1;
            first_intersection.get_or_insert_with(|| {
                let show = |s: &soft_bitop::SeSubset| {
                    s.indices()
                        .map(|i| format!("{:?}", se.get(i).values()))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                format!("T1={{{}}} T2={{{}}} at parameter {t}", show(t1), show(t2))
            });
        }
    }
    if union_failures > 0 {
        problems.push(format!(
            "union section identity failed {union_failures} times"
        ));
    }
    if intersection_failures > 0 {
        problems.push(format!(
            "intersection section identity failed on {intersection_failures} of 10000 families (first {})",
            first_intersection.unwrap()
        ));
    }
    if problems.is_empty() {
        within(
            Duration::from_secs(120),
            start,
            "all structural oracles hold".into(),
        )
    } else {
        Err(problems.join("; "))
    }
}

/// Filters every family of subsets of an `n`-point set that contains the
/// empty set and the whole set.
fn filter_count(n: usize) -> usize {
    let full = (1u64 << n) - 1;
    let inner: Vec<u64> = (1..full).collect();
    (0u64..(1 << inner.len()))
        .filter(|choice| {
            let mut opens = vec![FinSet::empty(n), FinSet::full(n)];
            opens.extend(
                inner
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| choice >> i & 1 == 1)
                    .map(|(_, &m)| FinSet::from_mask(n, m).unwrap()),
            );
            opens.iter().all(|a| {
                opens
                    .iter()
                    .all(|b| opens.contains(&a.union(b)) && opens.contains(&a.intersection(b)))
            })
        })
        .count()
}

fn enumeration_counts() -> Outcome {
    let expected = [1, 4, 29];
    let mut seen = Vec::new();
    for (n, want) in (1..=3).zip(expected) {
        let got = enumerate_topologies(n).unwrap().len();
        let oracle = filter_count(n);
        if got != want || oracle != want {
            return Err(format!(
                "n={n}: enumerated {got}, filter oracle {oracle}, expected {want}"
            ));
        }
        seen.push(got.to_string());
    }
    Ok(format!(
        "counts {} match the filter oracle",
        seen.join(", ")
    ))
}

/// Smallest subfamily (by size, then index order) covering `target`.
fn brute_minimal_subcover(members: &[SoftSet], target: &SoftSet) -> Option<Vec<usize>> {
    let k = members.len();
    let mut best: Option<Vec<usize>> = None;
    for choice in 0u64..(1 << k) {
        let chosen: Vec<usize> = (0..k).filter(|i| choice >> i & 1 == 1).collect();
        if best.as_ref().is_some_and(|b| b.len() <= chosen.len()) {
            continue;
        }
        let union = chosen.iter().fold(
            SoftSet::null(target.param_count(), target.universe_size()),
            |acc, &i| acc.union(&members[i]),
        );
        if target.is_soft_subset_of(&union) {
            best = Some(chosen);
        }
    }
    best
}

fn truncation_consistency() -> Outcome {
    let start = Instant::now();
    let f = CofiniteSoftSet::constant(set(2, &[0, 1]));
    let houses = TemplateFamily::new(
        2,
        Some(IndexedTemplate {
            at_index: set(2, &[1]),
            default: set(2, &[0]),
        }),
        Vec::new(),
    )
    .unwrap();
    let patched = TemplateFamily::new(
        2,
        Some(IndexedTemplate {
            at_index: set(2, &[1]),
            default: set(2, &[0]),
        }),
        vec![CofiniteSoftSet::constant(set(2, &[1]))],
    )
    .unwrap();
    let mut exceptions = BTreeMap::new();
    exceptions.insert(1, set(2, &[0, 1]));
    let one_label = TemplateFamily::new(
        2,
        Some(IndexedTemplate {
            at_index: set(2, &[1]),
            default: set(2, &[0]),
        }),
        vec![CofiniteSoftSet::new(set(2, &[]), exceptions).unwrap()],
    )
    .unwrap();
    let families = [
        ("houses", &houses),
        ("patched", &patched),
        ("one-label", &one_label),
    ];
    let mut checked = 0;
    for (name, family) in families {
        let verdict = decide_finite_subcover(family, &f).unwrap();
        for m in 2..=6u64 {
            let members = truncate_family(family, m).unwrap();
            let target = truncate(&f, m).unwrap();
            let minimal = brute_minimal_subcover(&members, &target);
            match (&verdict.holds, &verdict.witness) {
                (
                    true,
                    Some(Witness::SymbolicSubfamily {
                        template_indices,
                        explicit_members,
                    }),
                ) => {
                    if template_indices.iter().all(|&i| i < m) {
                        let mut chosen: Vec<usize> =
                            template_indices.iter().map(|&i| i as usize).collect();
                        chosen.extend(explicit_members.iter().map(|&e| m as usize + e));
                        let union = chosen.iter().fold(SoftSet::null(m as usize, 2), |acc, &i| {
                            acc.union(&members[i])
                        });
                        if minimal.is_none() || !target.is_soft_subset_of(&union) {
                            return Err(format!(
                                "{name}, m={m}: symbolic YES witness does not cover the truncation"
                            ));
                        }
                    }
                }
                (false, _) => {
                    let Some(minimal) = minimal else {
                        return Err(format!("{name}, m={m}: truncated family is not a cover"));
                    };
                    let special: Vec<u64> = family
                        .explicit()
                        .iter()
                        .flat_map(|e| e.exceptions().keys().copied())
                        .collect();
                    if let Some(t) =
                        (0..m).find(|t| !special.contains(t) && !minimal.contains(&(*t as usize)))
                    {
                        return Err(format!(
                            "{name}, m={m}: minimal truncated subcover {minimal:?} skips S_{t}"
                        ));
                    }
                }
                _ => return Err(format!("{name}: unexpected verdict {verdict:?}")),
            }
            checked += 1;
        }
    }
    within(
        Duration::from_secs(60),
        start,
        format!("{checked} family/truncation pairs agree"),
    )
}

fn search_census() -> Outcome {
    let start = Instant::now();
    let census = search_counterexamples(2, 2).unwrap();
    let again = search_counterexamples(2, 2).unwrap();
    let bytes = serde_json::to_string(&census).unwrap();
    let identical = bytes == serde_json::to_string(&again).unwrap();
    let class_i = census.not_t0_induced_t2_count();
    let class_ii = census.strict_enlargement_count();
    let indiscrete = indiscrete_square();
    let contains_example = census.reports_space(indiscrete.tau1(), indiscrete.tau2());
    let detail = format!(
        "class (i) {class_i} spaces, class (ii) {class_ii} enlargements, indiscrete square in class (i)={contains_example}, byte-identical={identical}"
    );
    if class_i == 0 || class_ii == 0 || !contains_example || !identical {
        return Err(detail);
    }
    within(Duration::from_secs(60), start, detail)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("representability example", representability),
        ("induced Hausdorff example", induced_hausdorff),
        ("infinite parameter example", infinite_parameters),
        ("exhaustive theorem suite", theorem_suite),
        ("structural oracles", structural_oracles),
        ("topology enumeration counts", enumeration_counts),
        ("truncation consistency", truncation_consistency),
        ("counterexample search", search_census),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
