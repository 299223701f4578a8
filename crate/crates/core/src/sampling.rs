//! Seeded random soft sets, soft topologies and spaces for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::finite_sets::{generate_topology_on, ClassicalTopology, FinSet};
use crate::pairwise::SoftBitopSpace;
use crate::soft_core::SoftSet;
use crate::soft_topology::SoftTopology;

pub const DEFAULT_SEED: u64 = 0x5eed_50f7;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform subset of `carrier`.
pub fn random_subset<R: Rng>(rng: &mut R, carrier: &FinSet) -> FinSet {
    let mask = rng.random::<u64>() & carrier.mask();
    FinSet::from_mask(carrier.universe_size(), mask).expect("submask of carrier")
}

/// Soft set with `params` parameters over `universe` points, every section
/// nonempty.
pub fn random_soft_set<R: Rng>(rng: &mut R, params: usize, universe: usize) -> SoftSet {
    let full = FinSet::full(universe);
    let sections = (0..params)
        .map(|_| loop {
            let s = random_subset(rng, &full);
            if !s.is_empty() {
                break s;
            }
        })
        .collect();
    SoftSet::new(universe, sections).expect("shape")
}

pub fn random_soft_subset<R: Rng>(rng: &mut R, ambient: &SoftSet) -> SoftSet {
    let sections = ambient
        .sections()
        .iter()
        .map(|s| random_subset(rng, s))
        .collect();
    SoftSet::new(ambient.universe_size(), sections).expect("shape")
}

/// Soft topology generated by up to `generators` random soft subsets.
pub fn random_soft_topology<R: Rng>(
    rng: &mut R,
    ambient: &SoftSet,
    generators: usize,
) -> Result<SoftTopology> {
    let k = rng.random_range(0..=generators);
    let subbase: Vec<SoftSet> = (0..k).map(|_| random_soft_subset(rng, ambient)).collect();
    SoftTopology::generate(ambient, &subbase)
}

/// Topology on `carrier` generated by up to `generators` random subsets.
pub fn random_topology_on<R: Rng>(
    rng: &mut R,
    carrier: &FinSet,
    generators: usize,
) -> Result<ClassicalTopology> {
    let k = rng.random_range(0..=generators);
    let subbase: Vec<FinSet> = (0..k).map(|_| random_subset(rng, carrier)).collect();
    generate_topology_on(carrier, &subbase)
}

/// One random topology per section of `ambient`.
pub fn random_sigma_family<R: Rng>(
    rng: &mut R,
    ambient: &SoftSet,
    generators: usize,
) -> Result<Vec<ClassicalTopology>> {
    ambient
        .sections()
        .iter()
        .map(|s| random_topology_on(rng, s, generators))
        .collect()
}

/// Random soft bitopological space with at most `max_params` parameters
/// over at most `max_universe` points.
pub fn random_space<R: Rng>(
    rng: &mut R,
    max_params: usize,
    max_universe: usize,
) -> Result<SoftBitopSpace> {
    let params = rng.random_range(1..=max_params);
    let universe = rng.random_range(1..=max_universe);
    let ambient = random_soft_set(rng, params, universe);
    let tau1 = random_soft_topology(rng, &ambient, 4)?;
    let tau2 = random_soft_topology(rng, &ambient, 4)?;
    SoftBitopSpace::new(tau1, tau2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::soft_topology::is_soft_topology;

    #[test]
    fn same_seed_same_output() {
        let a = random_space(&mut seeded_rng(7), 2, 3).unwrap();
        let b = random_space(&mut seeded_rng(7), 2, 3).unwrap();
        assert_eq!(a.tau1(), b.tau1());
        assert_eq!(a.tau2(), b.tau2());
    }

    #[test]
    fn outputs_are_well_formed() {
        let mut rng = seeded_rng(DEFAULT_SEED);
        for _ in 0..50 {
            let f = random_soft_set(&mut rng, 3, 4);
            assert!(f.first_empty_section().is_none());
            let tau = random_soft_topology(&mut rng, &f, 3).unwrap();
            assert!(is_soft_topology(&f, tau.opens()).unwrap());
            for (t, sigma) in random_sigma_family(&mut rng, &f, 3)
                .unwrap()
                .iter()
                .enumerate()
            {
                assert_eq!(sigma.carrier(), f.section(t));
            }
        }
    }
}
