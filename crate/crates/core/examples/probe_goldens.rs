//! Scratch: full golden reports for the four systems.
use num_rational::BigRational;
use num_traits::Zero;
use weakchaos_core::infocontent::Estimator;
use weakchaos_core::map::MapDescriptor;
use weakchaos_core::report::*;
use weakchaos_core::seeding;

fn show(name: &str, rep: &weakchaos_core::report::PointReport) {
    println!("== {name}: fails={} floor={} K={:?}(a={:.2},rate={:.3},klin={:.3}) r={:?}({:.3},settled={}) R={:?}({:.3},settled={}) d={:.3} dlo={:.3} dmu={:.3}",
        rep.fail_count(), rep.floor_dominated, rep.k_fit.regime, rep.k_fit.exponent, rep.k_fit.rate,
        rep.k_linear.value,
        rep.r_fit.regime, rep.r_fit.coefficient, rep.r_fit.settled,
        rep.big_r_fit.regime, rep.big_r_fit.coefficient, rep.big_r_fit.settled,
        rep.d_upper, rep.d_lower, rep.d_mu);
    for r in &rep.rows {
        println!("   {} @{}  lhs={:?} rhs={:.3} margin={:?} {:?} {}", r.inequality, r.clock, r.lhs, r.rhs, r.margin, r.verdict, r.note);
    }
    for p in &rep.prop39 {
        println!("   n={}: eq11 {:.1} vs {:.1} {:?} | eq12 {:.1} vs {:.1} {:?}",
            p.n, p.eq11_lhs, p.eq11_rhs, p.eq11_verdict, p.eq12_lhs, p.eq12_rhs, p.eq12_verdict);
    }
}

fn main() {
    let t0 = std::time::Instant::now();
    // identity
    let mut cfg = ReportSettings::default_1d();
    cfg.estimator = Estimator::PairGrowth;
    cfg.n_info = 1 << 16;
    cfg.prop39_schedule = Some(vec![8, 16, 32, 64, 128]);
    cfg.prop39_epsilon = Some("1/16".into());
    let mut rng = seeding::stream(0, "golden-identity");
    let x = seeding::dyadic_point(&mut rng, 60);
    let rep = build_point_report(&MapDescriptor::identity(), &[x], &cfg).unwrap();
    show("identity", &rep);
    println!("t = {:.1}s", t0.elapsed().as_secs_f32());

    // rotation
    let mut cfg = ReportSettings::default_1d();
    cfg.estimator = Estimator::PairGrowth;
    cfg.n_info = 1 << 16;
    let mut rng = seeding::stream(0, "golden-rotation");
    let x = seeding::dyadic_point(&mut rng, 60);
    let rep = build_point_report(&MapDescriptor::rotation_golden(), &[x], &cfg).unwrap();
    show("rotation", &rep);
    println!("t = {:.1}s", t0.elapsed().as_secs_f32());

    // doubling
    let mut cfg = ReportSettings::default_1d();
    cfg.estimator = Estimator::Lz78;
    cfg.n_info = 1 << 18;
    cfg.sens_schedule = (1..=8).map(|i| 4 * i as u64).collect();
    cfg.prop39_schedule = Some(vec![8, 16, 32, 64, 128, 256]);
    cfg.prop39_epsilon = Some("1/4".into());
    let mut rng = seeding::stream(0, "golden-doubling");
    let x = seeding::dyadic_point(&mut rng, (1 << 18) + 64);
    let rep = build_point_report(&MapDescriptor::doubling(), &[x], &cfg).unwrap();
    show("doubling", &rep);
    println!("t = {:.1}s", t0.elapsed().as_secs_f32());

    // piecewise-linear intermittent map at the origin
    let mut cfg = ReportSettings::default_1d();
    cfg.estimator = Estimator::PairGrowth;
    cfg.info_epsilons = vec!["1/4".into()];
    cfg.n_info = 1 << 17;
    cfg.sens_epsilon = "1/4".into();
    cfg.sens_schedule = (3..=12).map(|j| 1u64 << j).collect();
    cfg.prop39_schedule = Some(vec![16, 32, 64, 128, 256, 512, 1024]);
    cfg.prop39_epsilon = Some("1/4".into());
    let map = MapDescriptor::pl_manneville_u64(2, 1, 1, 2).unwrap();
    let rep = build_point_report(&map, &[BigRational::zero()], &cfg).unwrap();
    show("plm2@0", &rep);
    println!("t = {:.1}s", t0.elapsed().as_secs_f32());
}
