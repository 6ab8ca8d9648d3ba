//! Scratch measurement harness (not part of the test suite).
use num_rational::BigRational;
use weakchaos_core::complexity::*;
use weakchaos_core::infocontent::Estimator;
use weakchaos_core::map::MapDescriptor;
use weakchaos_core::num::ratio_from_u64;
use weakchaos_core::seeding;

fn main() {
    let map = MapDescriptor::doubling();
    let mut rng = seeding::stream(9, "profile-doubling");
    let n = 1u64 << 16;
    let x0 = seeding::dyadic_point(&mut rng, n + 64);
    let eps: Vec<BigRational> = (1..=6).map(|j| ratio_from_u64(1, 1 << j)).collect();
    for est in [Estimator::Lz78, Estimator::PairGrowth] {
        let p = orbit_complexity_profile(&map, &[x0.clone()], &eps, n, est).unwrap();
        println!("doubling {est}:");
        for r in &p.rows {
            println!(
                "  eps={} regime={:?} alpha={:.3} rate={:.3} klin={:.3} div={}",
                r.epsilon, r.fit.regime, r.fit.exponent, r.fit.rate, r.k_linear.value,
                r.k_linear.diverging
            );
        }
    }
    for z in [3u64, 4] {
        let map = MapDescriptor::pl_manneville_u64(z, 1, 1, 2).unwrap();
        for seed in [12u64, 13, 14] {
            let mut rng = seeding::stream(seed, "profile-z");
            let x0 = seeding::dyadic_point(&mut rng, 60);
            let eps = vec![ratio_from_u64(1, 16)];
            let p =
                orbit_complexity_profile(&map, &[x0], &eps, 1 << 19, Estimator::PairGrowth)
                    .unwrap();
            let f = &p.rows[0].fit;
            println!(
                "plm z={z} seed={seed}: regime={:?} alpha={:.3} rate={:.4}",
                f.regime, f.exponent, f.rate
            );
        }
    }
}
