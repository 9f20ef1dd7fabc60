//! Seeded verification campaigns: batches of random elements pushed through
//! the depth, independence, and Loewy-consistency checkers.
//!
//! Each sample derives its own PRNG state from the master seed and the
//! sample index, so samples are independent and the batch can be evaluated
//! in parallel (feature `parallel`, on by default) with results identical to
//! the sequential run, merged in sample order.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::coalgebra::{
    left_module_generated, right_module_generated, subcoalgebra_generated, Coalgebra,
};
use crate::error::Result;
use crate::filtration::{
    loewy_length, radical_power_hits, subspace_loewy_length, CoradicalFiltration, RadicalTower,
};
use crate::linalg::{int, Scalar};
use crate::theorem::{check_prop21, check_remark, perturb_representation, TensorRep};

/// Campaign parameters. `perturbations` only matters for the depth check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CampaignConfig {
    pub samples: usize,
    pub perturbations: usize,
    pub seed: u64,
}

/// One failed sample with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleFailure {
    pub sample_index: usize,
    pub sample_seed: u64,
    /// Perturbation number within the sample, when applicable.
    pub perturbation: Option<usize>,
    pub message: String,
}

/// Outcome of a campaign; failures are expected to be empty (the checked
/// statements are theorems), so any entry flags an implementation bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignOutcome {
    pub samples: usize,
    pub perturbations: usize,
    pub seed: u64,
    pub failures: Vec<SampleFailure>,
}

impl CampaignOutcome {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable per-sample seed derivation from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ index.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// A random nonzero element with small integer coordinates; roughly half the
/// coordinates are zero so sparse and dense shapes both occur.
pub fn random_element(c: &Coalgebra, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..c.dim())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Scalar::zero()
                } else {
                    int(rng.gen_range(-3..=3))
                }
            })
            .collect();
        if !crate::linalg::is_zero_vec(&v) {
            return v;
        }
    }
}

fn eval_prop21_sample(
    c: &Coalgebra,
    f: &CoradicalFiltration,
    cfg: &CampaignConfig,
    index: usize,
) -> Result<Vec<SampleFailure>> {
    let sample_seed = derive_seed(cfg.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let x = random_element(c, &mut rng);
    let mut failures = Vec::new();
    let rep = TensorRep::minimal(&x, c)?;
    let verdict = check_prop21(c, &rep, f)?;
    if !verdict.passed() {
        failures.push(SampleFailure {
            sample_index: index,
            sample_seed,
            perturbation: None,
            message: format!("depth check failed on the minimal representation: {verdict:?}"),
        });
    }
    for p in 0..cfg.perturbations {
        let pseed = derive_seed(sample_seed, p as u64 + 1);
        let perturbed = perturb_representation(&rep, pseed, c)?;
        let verdict = check_prop21(c, &perturbed, f)?;
        if !verdict.passed() {
            failures.push(SampleFailure {
                sample_index: index,
                sample_seed,
                perturbation: Some(p),
                message: format!(
                    "depth check failed on perturbation {p} (seed {pseed}): {verdict:?}"
                ),
            });
        }
    }
    Ok(failures)
}

fn eval_remark_sample(
    c: &Coalgebra,
    f: &CoradicalFiltration,
    cfg: &CampaignConfig,
    index: usize,
) -> Result<Vec<SampleFailure>> {
    let _ = f;
    let sample_seed = derive_seed(cfg.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let x = random_element(c, &mut rng);
    let verdict = check_remark(c, &x)?;
    if verdict.independent {
        Ok(Vec::new())
    } else {
        Ok(vec![SampleFailure {
            sample_index: index,
            sample_seed,
            perturbation: None,
            message: format!(
                "right tensorands dependent: rank {} of {}",
                verdict.b_rank, verdict.module_dim
            ),
        }])
    }
}

fn eval_loewy_sample(
    c: &Coalgebra,
    f: &CoradicalFiltration,
    tower: &RadicalTower,
    cfg: &CampaignConfig,
    index: usize,
) -> Result<Vec<SampleFailure>> {
    let sample_seed = derive_seed(cfg.seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(sample_seed);
    let x = random_element(c, &mut rng);
    let mut failures = Vec::new();
    let lw = loewy_length(&x, f);
    let left = subspace_loewy_length(&left_module_generated(&x, c)?, f);
    let right = subspace_loewy_length(&right_module_generated(&x, c)?, f);
    let both = subspace_loewy_length(&subcoalgebra_generated(&x, c)?, f);
    if !(lw == left && lw == right && lw == both) {
        failures.push(SampleFailure {
            sample_index: index,
            sample_seed,
            perturbation: None,
            message: format!(
                "loewy lengths disagree: element {lw}, left module {left}, right module {right}, subcoalgebra {both}"
            ),
        });
    }
    for k in 0..=tower.nilpotency_index() {
        let annihilated = radical_power_hits(tower, k, &x, c)?.is_zero();
        if annihilated != (lw <= k) {
            failures.push(SampleFailure {
                sample_index: index,
                sample_seed,
                perturbation: None,
                message: format!(
                    "annihilation duality fails at power {k}: lw = {lw}, hits zero = {annihilated}"
                ),
            });
        }
    }
    Ok(failures)
}

macro_rules! campaign_runner {
    ($seq:ident, $par:ident, $pub_fn:ident, $eval:ident $(, $extra:ident : $ty:ty)*) => {
        /// Sequential evaluation in sample order.
        pub fn $seq(
            c: &Coalgebra,
            f: &CoradicalFiltration,
            $($extra: $ty,)*
            cfg: &CampaignConfig,
        ) -> Result<CampaignOutcome> {
            let mut failures = Vec::new();
            for index in 0..cfg.samples {
                failures.extend($eval(c, f, $($extra,)* cfg, index)?);
            }
            Ok(CampaignOutcome {
                samples: cfg.samples,
                perturbations: cfg.perturbations,
                seed: cfg.seed,
                failures,
            })
        }

        /// Data-parallel evaluation; identical output to the sequential run.
        #[cfg(feature = "parallel")]
        pub fn $par(
            c: &Coalgebra,
            f: &CoradicalFiltration,
            $($extra: $ty,)*
            cfg: &CampaignConfig,
        ) -> Result<CampaignOutcome> {
            let per_sample: Vec<Vec<SampleFailure>> = (0..cfg.samples)
                .into_par_iter()
                .map(|index| $eval(c, f, $($extra,)* cfg, index))
                .collect::<Result<_>>()?;
            Ok(CampaignOutcome {
                samples: cfg.samples,
                perturbations: cfg.perturbations,
                seed: cfg.seed,
                failures: per_sample.into_iter().flatten().collect(),
            })
        }

        /// Runs the campaign with the default strategy for the build
        /// (parallel when the feature is enabled).
        pub fn $pub_fn(
            c: &Coalgebra,
            f: &CoradicalFiltration,
            $($extra: $ty,)*
            cfg: &CampaignConfig,
        ) -> Result<CampaignOutcome> {
            #[cfg(feature = "parallel")]
            {
                $par(c, f, $($extra,)* cfg)
            }
            #[cfg(not(feature = "parallel"))]
            {
                $seq(c, f, $($extra,)* cfg)
            }
        }
    };
}

campaign_runner!(
    run_prop21_campaign_seq,
    run_prop21_campaign_par,
    run_prop21_campaign,
    eval_prop21_sample
);

campaign_runner!(
    run_remark_campaign_seq,
    run_remark_campaign_par,
    run_remark_campaign,
    eval_remark_sample
);

campaign_runner!(
    run_loewy_campaign_seq,
    run_loewy_campaign_par,
    run_loewy_campaign,
    eval_loewy_sample,
    tower: &RadicalTower
);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::fixtures::{chain, thick_arrow_3};
    use crate::coalgebra::dual_algebra;
    use crate::filtration::{coradical_filtration, radical_tower};

    fn cfg(samples: usize, perturbations: usize, seed: u64) -> CampaignConfig {
        CampaignConfig {
            samples,
            perturbations,
            seed,
        }
    }

    #[test]
    fn prop21_campaign_passes_on_fixtures() {
        for c in [thick_arrow_3(), chain(6)] {
            let f = coradical_filtration(&c).unwrap();
            let outcome = run_prop21_campaign(&c, &f, &cfg(25, 5, 7)).unwrap();
            assert!(outcome.all_passed(), "{:?}", outcome.failures);
        }
    }

    #[test]
    fn remark_campaign_passes_on_fixtures() {
        for c in [thick_arrow_3(), chain(5)] {
            let f = coradical_filtration(&c).unwrap();
            let outcome = run_remark_campaign(&c, &f, &cfg(200, 0, 11)).unwrap();
            assert!(outcome.all_passed());
        }
    }

    #[test]
    fn loewy_campaign_passes_on_fixtures() {
        for c in [thick_arrow_3(), chain(5)] {
            let a = dual_algebra(&c).unwrap();
            let tower = radical_tower(&a).unwrap();
            let f = coradical_filtration(&c).unwrap();
            let outcome = run_loewy_campaign(&c, &f, &tower, &cfg(30, 0, 13)).unwrap();
            assert!(outcome.all_passed(), "{:?}", outcome.failures);
        }
    }

    #[test]
    fn campaigns_are_deterministic_per_seed() {
        let c = chain(5);
        let f = coradical_filtration(&c).unwrap();
        let a = run_prop21_campaign(&c, &f, &cfg(10, 3, 42)).unwrap();
        let b = run_prop21_campaign(&c, &f, &cfg(10, 3, 42)).unwrap();
        assert_eq!(a, b);
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_agree() {
        let c = chain(6);
        let f = coradical_filtration(&c).unwrap();
        let config = cfg(16, 4, 99);
        assert_eq!(
            run_prop21_campaign_seq(&c, &f, &config).unwrap(),
            run_prop21_campaign_par(&c, &f, &config).unwrap()
        );
        assert_eq!(
            run_remark_campaign_seq(&c, &f, &config).unwrap(),
            run_remark_campaign_par(&c, &f, &config).unwrap()
        );
        let a = dual_algebra(&c).unwrap();
        let tower = radical_tower(&a).unwrap();
        assert_eq!(
            run_loewy_campaign_seq(&c, &f, &tower, &config).unwrap(),
            run_loewy_campaign_par(&c, &f, &tower, &config).unwrap()
        );
    }

    #[test]
    fn random_elements_are_nonzero_and_reproducible() {
        let c = chain(4);
        let mut r1 = ChaCha8Rng::seed_from_u64(5);
        let mut r2 = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_element(&c, &mut r1);
            let b = random_element(&c, &mut r2);
            assert_eq!(a, b);
            assert!(!crate::linalg::is_zero_vec(&a));
        }
    }
}
