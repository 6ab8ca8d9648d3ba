use num_rational::BigRational;
use weakchaos_core::complexity::*;
use weakchaos_core::infocontent::Estimator;
use weakchaos_core::map::MapDescriptor;
use weakchaos_core::num::ratio_from_u64;
use weakchaos_core::seeding;

fn main() {
    let map = MapDescriptor::pl_manneville_u64(3, 1, 1, 2).unwrap();
    for eps_den in [8u64, 16] {
        for seed in 0..8u64 {
            let mut rng = seeding::stream(seed, "criterion2");
            let x0 = seeding::dyadic_point(&mut rng, 60);
            let eps: Vec<BigRational> = vec![ratio_from_u64(1, eps_den)];
            let p = orbit_complexity_profile(&map, &[x0], &eps, 1 << 20, Estimator::PairGrowth)
                .unwrap();
            let f = &p.rows[0].fit;
            println!("eps=1/{eps_den} seed={seed}: {:?} alpha={:.3}", f.regime, f.exponent);
        }
    }
}
