//! Scratch: criterion-2-shaped measurement (5 seeds × z ∈ {3,4}, n = 2^20).
use num_rational::BigRational;
use weakchaos_core::complexity::*;
use weakchaos_core::infocontent::Estimator;
use weakchaos_core::map::MapDescriptor;
use weakchaos_core::num::ratio_from_u64;
use weakchaos_core::seeding;

fn main() {
    let t0 = std::time::Instant::now();
    for eps_den in [4u64, 8, 16] {
        for z in [3u64, 4] {
            let map = MapDescriptor::pl_manneville_u64(z, 1, 1, 2).unwrap();
            let mut alphas = Vec::new();
            for seed in 0..5u64 {
                let mut rng = seeding::stream(seed, "criterion2");
                let x0 = seeding::dyadic_point(&mut rng, 60);
                let eps: Vec<BigRational> = vec![ratio_from_u64(1, eps_den)];
                let p = orbit_complexity_profile(&map, &[x0], &eps, 1 << 20, Estimator::PairGrowth)
                    .unwrap();
                let f = &p.rows[0].fit;
                alphas.push(f.exponent);
                println!("z={z} eps=1/{eps_den} seed={seed}: regime={:?} alpha={:.3}", f.regime, f.exponent);
            }
            alphas.sort_by(f64::total_cmp);
            println!("z={z} eps=1/{eps_den} MEDIAN alpha = {:.3}  [{:.1?}s]", alphas[2], t0.elapsed().as_secs_f32());
        }
    }
}
