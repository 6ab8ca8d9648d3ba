use num_rational::BigRational;
use weakchaos_core::complexity::*;
use weakchaos_core::infocontent::Estimator;
use weakchaos_core::map::MapDescriptor;
use weakchaos_core::num::ratio_from_u64;
use weakchaos_core::seeding;
use weakchaos_core::sensitivity::*;

fn main() {
    let map = MapDescriptor::pl_manneville_u64(2, 1, 1, 2).unwrap();
    for seed in 0..4u64 {
        let mut rng = seeding::stream(seed, "golden-plm2");
        let x0 = seeding::dyadic_point(&mut rng, 60);
        let eps = vec![ratio_from_u64(1, 2), ratio_from_u64(1, 4)];
        let p = orbit_complexity_profile(&map, &[x0.clone()], &eps, 1 << 17, Estimator::PairGrowth).unwrap();
        for r in &p.rows {
            println!("seed {seed} K row eps={}: {:?} alpha={:.3} rate={:.4} klin={:.4} kdiv={}",
                r.epsilon, r.fit.regime, r.fit.exponent, r.fit.rate, r.k_linear.value, r.k_linear.diverging);
        }
        let schedule: Vec<u64> = (3..=10).map(|j| 1u64 << j).collect();
        let c = sensitivity_curve(&map, &[x0], &ratio_from_u64(1, 8), &schedule).unwrap();
        println!("  neglog_r: {:?}", c.neglog_r.iter().map(|v| (v*10.0).round()/10.0).collect::<Vec<_>>());
        let fi = fit_sensitivity(&c, WhichRadius::Inner).unwrap();
        let fo = fit_sensitivity(&c, WhichRadius::Outer).unwrap();
        println!("  inner: {:?} coef={:.3}  outer: {:?} coef={:.3}", fi.regime, fi.coefficient, fo.regime, fo.coefficient);
    }
}
