//! Randomized invariants. Set `SOFT_BITOP_SEED` to reproduce a different
//! stream; the default seed is fixed.

use std::collections::BTreeMap;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;

use soft_bitop::cli::description::{
    CofiniteInput, SpaceDescription, SymbolicInput, TemplateInput, TopologyInput,
};
use soft_bitop::finite_sets::{
    family_separation, generate_topology, is_topology, pairwise_separation, BitopPair,
    ClassicalTopology, FinSet, PairReading,
};
use soft_bitop::pairwise::{component_bitop, induced_bitop, pairwise_soft};
use soft_bitop::sampling::{
    random_sigma_family, random_soft_set, random_soft_subset, random_soft_topology, random_space,
    seeded_rng, DEFAULT_SEED,
};
use soft_bitop::soft_core::enumerate_soft_elements;
use soft_bitop::soft_topology::{
    canonical_topology, induced_topology, is_soft_topology, reconstruct,
};
use soft_bitop::symbolic::{
    cf_is_cover, covers_target, decide_finite_subcover, CofiniteSoftSet, IndexedTemplate,
    TemplateFamily,
};
use soft_bitop::{Axiom, SoftSet, Witness};

fn config(cases: u32) -> Config {
    let seed = std::env::var("SOFT_BITOP_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn finset(n: usize) -> impl Strategy<Value = FinSet> {
    (0u64..(1 << n)).prop_map(move |m| FinSet::from_mask(n, m).unwrap())
}

fn all_sections_nonempty(h: &SoftSet) -> bool {
    h.first_empty_section().is_none()
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn generated_topologies_are_topologies_and_idempotent(
        n in 1usize..=5,
        subbase in prop::collection::vec(0u64..32, 0..5),
    ) {
        let subbase: Vec<FinSet> = subbase
            .into_iter()
            .map(|m| FinSet::from_mask(n, m & ((1 << n) - 1)).unwrap())
            .collect();
        let top = generate_topology(&subbase, n).unwrap();
        prop_assert!(is_topology(top.opens(), n).unwrap());
        prop_assert_eq!(generate_topology(top.opens(), n).unwrap(), top.clone());
        for s in &subbase {
            prop_assert!(top.is_open(s));
        }
    }

    #[test]
    fn classical_separation_chain(
        n in 1usize..=3,
        a in prop::collection::vec(finset(3), 0..4),
        b in prop::collection::vec(finset(3), 0..4),
    ) {
        let clip = |v: Vec<FinSet>| -> Vec<FinSet> {
            v.into_iter().map(|s| FinSet::from_mask(n, s.mask() & ((1 << n) - 1)).unwrap()).collect()
        };
        let pair = BitopPair::new(
            generate_topology(&clip(a), n).unwrap(),
            generate_topology(&clip(b), n).unwrap(),
        ).unwrap();
        let t0 = pairwise_separation(&pair, Axiom::T0, PairReading::Ordered).holds();
        let t1 = pairwise_separation(&pair, Axiom::T1, PairReading::Ordered).holds();
        let t2 = pairwise_separation(&pair, Axiom::T2, PairReading::Ordered).holds();
        prop_assert!(!t2 || t1);
        prop_assert!(!t1 || t0);
    }

    #[test]
    fn soft_element_count_is_the_product(seed: u64, params in 1usize..=4, universe in 1usize..=4) {
        let f = random_soft_set(&mut seeded_rng(seed), params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let product: usize = f.sections().iter().map(FinSet::len).product();
        prop_assert_eq!(se.len(), product);
    }

    #[test]
    fn se_of_softset_sections_and_order(seed: u64, params in 1usize..=3, universe in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let h1 = random_soft_subset(&mut rng, &f);
        let h2 = h1.union(&random_soft_subset(&mut rng, &f));
        let s1 = se.se_of_softset(&h1).unwrap();
        let s2 = se.se_of_softset(&h2).unwrap();
        prop_assert!(s1.is_subset(&s2));
        if all_sections_nonempty(&h1) {
            for t in 0..params {
                prop_assert_eq!(&se.section(&s1, t), h1.section(t));
            }
        }
    }

    #[test]
    fn union_section_identity(seed: u64, params in 1usize..=3, universe in 1usize..=3, k in 0usize..5) {
        let mut rng = seeded_rng(seed);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let family: Vec<_> = (0..k)
            .map(|_| se.subset_from_indices((0..se.len()).filter(|_| rng.random_bool(0.5))).unwrap())
            .collect();
        let union = family.iter().fold(se.empty_subset(), |acc, t| acc.union(t));
        for t in 0..params {
            let sectionwise = family
                .iter()
                .fold(FinSet::empty(universe), |acc, s| acc.union(&se.section(s, t)));
            prop_assert_eq!(se.section(&union, t), sectionwise);
        }
    }

    // Only the inclusion holds for arbitrary subsets; equality holds when both
    // sets are of the form SE(H).
    #[test]
    fn intersection_sections(seed: u64, params in 1usize..=3, universe in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let t1 = se.subset_from_indices((0..se.len()).filter(|_| rng.random_bool(0.5))).unwrap();
        let t2 = se.subset_from_indices((0..se.len()).filter(|_| rng.random_bool(0.5))).unwrap();
        let meet = t1.intersection(&t2);
        for t in 0..params {
            prop_assert!(se.section(&meet, t).is_subset(&se.section(&t1, t).intersection(&se.section(&t2, t))));
        }
        let h1 = se.se_of_softset(&random_soft_subset(&mut rng, &f)).unwrap();
        let h2 = se.se_of_softset(&random_soft_subset(&mut rng, &f)).unwrap();
        let meet = h1.intersection(&h2);
        if !meet.is_empty() {
            for t in 0..params {
                prop_assert_eq!(se.section(&meet, t), se.section(&h1, t).intersection(&se.section(&h2, t)));
            }
        }
    }

    #[test]
    fn soft_topology_structure(seed: u64, params in 1usize..=2, universe in 1usize..=3) {
        let mut rng = seeded_rng(seed);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let tau = random_soft_topology(&mut rng, &f, 4).unwrap();
        let induced = induced_topology(&se, &tau).unwrap();
        for h in tau.opens().iter().filter(|h| all_sections_nonempty(h)) {
            prop_assert!(induced.contains(&se.se_of_softset(h).unwrap().to_finset().unwrap()));
        }
        let can = tau.canonical_enlargement().unwrap();
        for h in tau.opens() {
            prop_assert!(can.is_open(h));
        }
        prop_assert_eq!(can.component_topologies(), tau.component_topologies());
        prop_assert_eq!(induced_topology(&se, &can).unwrap(), induced);
        let sigmas = random_sigma_family(&mut rng, &f, 3).unwrap();
        let canonical = canonical_topology(&f, &sigmas).unwrap();
        prop_assert!(is_soft_topology(&f, canonical.opens()).unwrap());
        prop_assert!(canonical.is_canonical());
    }

    #[test]
    fn reconstruction_contains_the_topology(seed: u64, params in 1usize..=2, universe in 1usize..=2) {
        let mut rng = seeded_rng(seed);
        let f = random_soft_set(&mut rng, params, universe);
        let se = enumerate_soft_elements(&f).unwrap();
        let n = se.len();
        let subbase: Vec<FinSet> = (0..3)
            .map(|_| FinSet::from_mask(n, rng.random::<u64>() & ((1u64 << n) - 1)).unwrap())
            .collect();
        let u: ClassicalTopology = generate_topology(&subbase, n).unwrap();
        prop_assert!(reconstruct(&se, &u).unwrap().contained);
    }

    #[test]
    fn soft_separation_transfers(seed: u64) {
        let space = random_space(&mut seeded_rng(seed), 2, 3).unwrap();
        let induced = induced_bitop(&space).unwrap();
        let soft: Vec<bool> = Axiom::ALL.iter().map(|&a| pairwise_soft(&space, a).holds).collect();
        prop_assert!(!soft[2] || soft[1]);
        prop_assert!(!soft[1] || soft[0]);
        for (axiom, holds) in Axiom::ALL.into_iter().zip(soft) {
            if !holds {
                continue;
            }
            for t in 0..space.param_count() {
                let c = component_bitop(&space, t).unwrap();
                prop_assert!(pairwise_separation(&c, axiom, PairReading::Ordered).holds());
            }
            prop_assert!(family_separation(&induced, axiom, PairReading::Ordered).holds());
        }
    }

    #[test]
    fn cover_check_ignores_redundant_exceptions(
        target_default in finset(2),
        at_index in finset(2),
        default in finset(2),
        explicit in prop::collection::vec((finset(2), prop::collection::btree_map(0u64..6, finset(2), 0..3)), 0..3),
        label in 0u64..6,
    ) {
        let template = Some(IndexedTemplate { at_index, default });
        let members: Vec<CofiniteSoftSet> = explicit
            .iter()
            .map(|(d, ex)| CofiniteSoftSet::new(*d, ex.clone()).unwrap())
            .collect();
        let target = CofiniteSoftSet::constant(target_default);
        let family = TemplateFamily::new(2, template, members.clone()).unwrap();
        let padded_target = CofiniteSoftSet::new(
            target_default,
            BTreeMap::from([(label, target_default)]),
        ).unwrap();
        let padded: Vec<CofiniteSoftSet> = explicit
            .iter()
            .map(|(d, ex)| {
                let mut ex = ex.clone();
                ex.entry(label).or_insert_with(|| *d);
                CofiniteSoftSet::new(*d, ex).unwrap()
            })
            .collect();
        let padded_family = TemplateFamily::new(2, template, padded).unwrap();
        prop_assert_eq!(
            cf_is_cover(&family, &target).unwrap().holds,
            cf_is_cover(&padded_family, &padded_target).unwrap().holds
        );
        if cf_is_cover(&family, &target).unwrap().holds {
            let v = decide_finite_subcover(&family, &target).unwrap();
            if let Some(Witness::SymbolicSubfamily { template_indices, explicit_members }) = &v.witness {
                prop_assert!(v.holds);
                prop_assert!(covers_target(&family, &target, template_indices, explicit_members).unwrap().holds);
            }
        }
    }

    #[test]
    fn descriptions_round_trip(
        universe in 1usize..=4,
        params in 1usize..=3,
        masks in prop::collection::vec(1u64..16, 3),
        opens in prop::collection::vec(prop::collection::vec(0u64..16, 3), 0..3),
        with_symbolic: bool,
    ) {
        let names: Vec<String> = (0..universe).map(|i| format!("x{i}")).collect();
        let pnames: Vec<String> = (0..params).map(|i| format!("p{i}")).collect();
        let named = |m: u64| -> Vec<String> {
            (0..universe).filter(|i| m >> i & 1 == 1).map(|i| names[i].clone()).collect()
        };
        let soft = |ms: &[u64]| -> BTreeMap<String, Vec<String>> {
            pnames.iter().cloned().zip(ms.iter().map(|&m| named(m))).collect()
        };
        let desc = SpaceDescription {
            universe: names.clone(),
            params: pnames.clone(),
            sections: soft(&masks),
            tau1: Some(TopologyInput { opens: Some(opens.iter().map(|o| soft(o)).collect()), generate: None, subbases: None }),
            tau2: Some(TopologyInput { opens: Some(Vec::new()), generate: None, subbases: None }),
            representability: Vec::new(),
            symbolic: with_symbolic.then(|| SymbolicInput {
                target: CofiniteInput { default: named(masks[0]), exceptions: BTreeMap::from([(3, named(masks[1]))]) },
                template: Some(TemplateInput { at_index: named(masks[2]), default: Vec::new() }),
                explicit: Vec::new(),
            }),
        };
        let back = SpaceDescription::from_json(&desc.to_json()).unwrap();
        prop_assert_eq!(back, desc);
    }
}
