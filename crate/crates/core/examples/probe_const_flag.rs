use weakchaos_core::coding::SymbolSequence;
use weakchaos_core::complexity::{k_indicator, ScalingLaw};
use weakchaos_core::infocontent::{info_curve, Estimator};

fn main() {
    let s = SymbolSequence::from_symbols(vec![0; 1 << 17], 4);
    let schedule: Vec<u64> = (6..=17).map(|j| 1u64 << j).collect();
    let c = info_curve(&s, &schedule, Estimator::PairGrowth).unwrap();
    for (n, v) in c.schedule.iter().zip(c.values.iter()) {
        println!("n=2^{} I={} ratio={:.3}", (*n as f64).log2() as u32, v, v / (*n as f64).log2());
    }
    let k = k_indicator(&c, ScalingLaw::Log, 0.5).unwrap();
    println!("log-clock indicator: value {:.3} diverging {}", k.value, k.diverging);
    let k = k_indicator(&c, ScalingLaw::Linear, 0.5).unwrap();
    println!("linear-clock: value {:.5} diverging {}", k.value, k.diverging);
}
