//! Greedy ε-nets, box-counting dimension from net-count scaling, local
//! measure dimension from empirical orbit measures, and the point-complexity
//! curve S(x,ε) realized as net-index description length.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalog::{iterate, Orbit, OrbitPoint};
use crate::error::{Error, Result};
use crate::map::{f64_distance, MapDescriptor, Metric};
use crate::num::ratio_to_f64;

/// A finite point set with its metric and per-point accuracy (0 for exact
/// synthetic sets; 2^-m for orbit samples). Scales below 4× the accuracy
/// are rejected: below its resolution the set carries no geometry.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub points: Points,
    pub metric: Metric,
    pub period: f64,
    pub accuracy: f64,
}

#[derive(Debug, Clone)]
pub enum Points {
    One(Vec<f64>),
    Two(Vec<[f64; 2]>),
}

impl PointSet {
    pub fn one_d(values: Vec<f64>) -> PointSet {
        PointSet { points: Points::One(values), metric: Metric::Interval, period: 1.0, accuracy: 0.0 }
    }

    pub fn from_orbit(orbit: &Orbit) -> PointSet {
        let metric = orbit.map.metric();
        let period = ratio_to_f64(&orbit.map.domain_width());
        let accuracy = 2f64.powi(-(orbit.error_exponent as i32)) + 1e-14;
        let points = match orbit.points.first() {
            Some(OrbitPoint::Two(..)) => Points::Two(
                orbit
                    .points
                    .iter()
                    .map(|p| {
                        let v = p.to_f64s();
                        [v[0], v[1]]
                    })
                    .collect(),
            ),
            _ => Points::One(orbit.points.iter().map(|p| p.to_f64s()[0]).collect()),
        };
        PointSet { points, metric, period, accuracy }
    }

    pub fn len(&self) -> usize {
        match &self.points {
            Points::One(v) => v.len(),
            Points::Two(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn ambient_dim(&self) -> usize {
        match &self.points {
            Points::One(_) => 1,
            Points::Two(_) => 2,
        }
    }

    pub fn coords(&self, i: usize) -> Vec<f64> {
        match &self.points {
            Points::One(v) => vec![v[i]],
            Points::Two(v) => v[i].to_vec(),
        }
    }

    fn dist_idx(&self, i: usize, j: usize) -> f64 {
        match &self.points {
            Points::One(v) => f64_distance(self.metric, self.period, &[v[i]], &[v[j]]),
            Points::Two(v) => f64_distance(self.metric, self.period, &v[i], &v[j]),
        }
    }

    fn dist_to(&self, i: usize, q: &[f64]) -> f64 {
        match &self.points {
            Points::One(v) => f64_distance(self.metric, self.period, &[v[i]], q),
            Points::Two(v) => f64_distance(self.metric, self.period, &v[i], q),
        }
    }
}

/// A greedy ε-net: centers in discovery order, pairwise ≥ ε apart, with
/// every input point within 3ε of some center.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetIndex {
    pub epsilon: f64,
    /// indices into the input enumeration, in discovery order
    pub centers: Vec<u32>,
}

impl NetIndex {
    pub fn count(&self) -> u64 {
        self.centers.len() as u64
    }
}

/// Scan points in input order, admitting a point iff it is ≥ ε from every
/// admitted center.
pub fn greedy_net(points: &PointSet, epsilon: f64) -> Result<NetIndex> {
    if !(epsilon > 0.0) {
        return Err(Error::Usage("epsilon must be positive".into()));
    }
    if points.is_empty() {
        return Err(Error::Usage("empty point set".into()));
    }
    let n = points.len();
    let mut centers: Vec<u32> = Vec::new();
    for i in 0..n {
        let mut admit = true;
        // the most recent center is the likeliest rejector for orbit-ordered
        // and sorted inputs; check it first
        for &c in centers.iter().rev() {
            if points.dist_idx(c as usize, i) < epsilon {
                admit = false;
                break;
            }
        }
        if admit {
            centers.push(i as u32);
        }
    }
    Ok(NetIndex { epsilon, centers })
}

/// Check net validity: pairwise ≥ ε and 3ε-coverage of every input point.
pub fn net_is_valid(points: &PointSet, net: &NetIndex) -> bool {
    let eps = net.epsilon;
    for (a, &ca) in net.centers.iter().enumerate() {
        for &cb in net.centers.iter().skip(a + 1) {
            if points.dist_idx(ca as usize, cb as usize) < eps {
                return false;
            }
        }
    }
    (0..points.len()).all(|i| {
        net.centers
            .iter()
            .any(|&c| points.dist_idx(c as usize, i) <= 3.0 * eps)
    })
}

/// Upper/lower box-counting estimates from net counts over a scale list.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionEstimate {
    /// max two-point slope over the finest half of scales
    pub upper: f64,
    /// min two-point slope over the finest half
    pub lower: f64,
    /// global least-squares slope of log2 count vs -log2 scale
    pub lsq_slope: f64,
    pub scales: Vec<f64>,
    pub counts: Vec<u64>,
}

/// Net sizes against -log scale. Scales must be strictly decreasing, ≥ 5 of
/// them spanning ≥ 2 decades, all above the set's resolution.
pub fn box_dimension(points: &PointSet, scales: &[f64]) -> Result<DimensionEstimate> {
    if scales.len() < 5 {
        return Err(Error::Usage("box_dimension needs ≥ 5 scales".into()));
    }
    if scales.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Usage("scales must be strictly decreasing".into()));
    }
    // the reference scale lists run 2^-2..2^-8 (factor 64), so the span
    // check sits just under two decades
    if scales[0] / scales[scales.len() - 1] < 50.0 {
        return Err(Error::Usage("scales must span close to 2 decades".into()));
    }
    let min_scale = scales[scales.len() - 1];
    if points.accuracy > 0.0 && min_scale < 4.0 * points.accuracy {
        return Err(Error::Scale(format!(
            "scale {min_scale} below the point-set resolution {}",
            points.accuracy
        )));
    }
    let mut counts = Vec::with_capacity(scales.len());
    for &s in scales {
        let net = greedy_net(points, s)?;
        counts.push(net.count());
    }
    Ok(estimate_from_counts(scales, &counts))
}

pub fn estimate_from_counts(scales: &[f64], counts: &[u64]) -> DimensionEstimate {
    let xs: Vec<f64> = scales.iter().map(|s| -s.log2()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).log2()).collect();
    let k = xs.len();
    // two-point slopes over the finest half
    let start = k / 2;
    let mut upper = f64::NEG_INFINITY;
    let mut lower = f64::INFINITY;
    for i in start.max(1)..k {
        let slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        upper = upper.max(slope);
        lower = lower.min(slope);
    }
    if !upper.is_finite() {
        upper = 0.0;
        lower = 0.0;
    }
    let n = k as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    let lsq_slope = if den == 0.0 { 0.0 } else { num / den };
    DimensionEstimate {
        upper,
        lower: lower.min(upper),
        lsq_slope,
        scales: scales.to_vec(),
        counts: counts.to_vec(),
    }
}

/// Box dimension of a finite orbit segment (the closure's finite stand-in).
pub fn orbit_closure_dimension(
    map: &MapDescriptor,
    x0: &[BigRational],
    n: u64,
    scales: &[f64],
) -> Result<DimensionEstimate> {
    let min_scale = scales.last().copied().ok_or_else(|| Error::Usage("no scales".into()))?;
    let m = ((-(min_scale / 4.0).log2()).ceil() as u32).max(8) + 1;
    let orbit = iterate(map, x0, n, m)?;
    let points = PointSet::from_orbit(&orbit);
    box_dimension(&points, scales)
}

/// Lower local dimension of the empirical orbit measure at x.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalDimension {
    /// min two-point slope of log2 mass vs log2 ε over the finest half
    pub estimate: f64,
    pub scales: Vec<f64>,
    pub masses: Vec<f64>,
    /// some ball was empty and its mass was floored at 1/n
    pub floored: bool,
}

pub fn local_measure_dimension(
    map: &MapDescriptor,
    x: &[BigRational],
    n_orbit: u64,
    scales: &[f64],
) -> Result<LocalDimension> {
    if scales.len() < 2 || scales.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Usage("need ≥ 2 strictly decreasing scales".into()));
    }
    let min_scale = scales[scales.len() - 1];
    let m = ((-(min_scale / 4.0).log2()).ceil() as u32).max(8) + 1;
    let orbit = iterate(map, x, n_orbit, m)?;
    let points = PointSet::from_orbit(&orbit);
    let xq: Vec<f64> = x.iter().map(ratio_to_f64).collect();
    let total = points.len() as f64;
    let mut masses = Vec::with_capacity(scales.len());
    let mut floored = false;
    for &s in scales {
        let hits = (0..points.len()).filter(|&i| points.dist_to(i, &xq) <= s).count();
        if hits == 0 {
            floored = true;
            masses.push(1.0 / total);
        } else {
            masses.push(hits as f64 / total);
        }
    }
    let xs: Vec<f64> = scales.iter().map(|s| s.log2()).collect();
    let ys: Vec<f64> = masses.iter().map(|m| m.log2()).collect();
    let k = xs.len();
    let start = k / 2;
    let mut est = f64::INFINITY;
    for i in start.max(1)..k {
        let slope = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
        est = est.min(slope);
    }
    if !est.is_finite() {
        est = 0.0;
    }
    Ok(LocalDimension { estimate: est.max(0.0), scales: scales.to_vec(), masses, floored })
}

/// Description length of x at accuracy ε through a greedy net: the discovery
/// index of the first center within 3ε, plus the cost of naming the scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointComplexityCurve {
    pub scales: Vec<f64>,
    pub bits: Vec<f64>,
    pub center_indices: Vec<u64>,
}

pub fn point_complexity_curve(
    points: &PointSet,
    x: &[f64],
    scales: &[f64],
) -> Result<PointComplexityCurve> {
    if scales.is_empty() || scales.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::Usage("scales must be strictly decreasing".into()));
    }
    let mut bits = Vec::with_capacity(scales.len());
    let mut idxs = Vec::with_capacity(scales.len());
    for &s in scales {
        let net = greedy_net(points, s)?;
        let found = net
            .centers
            .iter()
            .position(|&c| points.dist_to(c as usize, x) <= 3.0 * s);
        let idx = match found {
            Some(i) => i as u64,
            None => {
                return Err(Error::Coverage(format!(
                    "query point not within 3ε of any net center at scale {s}"
                )));
            }
        };
        let index_bits = ((idx + 1) as f64).log2().ceil();
        let scale_bits = {
            let l = (1.0 / s).log2();
            if l <= 1.0 {
                0.0
            } else {
                l.log2().ceil().max(0.0)
            }
        };
        bits.push(index_bits + scale_bits);
        idxs.push(idx);
    }
    Ok(PointComplexityCurve { scales: scales.to_vec(), bits, center_indices: idxs })
}

/// Least-squares slope of the S-curve bits against -log2 ε.
pub fn s_curve_slope(curve: &PointComplexityCurve) -> f64 {
    let ys = curve.bits.clone();
    slope_vs_neglog(&curve.scales, &ys)
}

/// Slope of the net-index term alone (the dimension-carrying part; the
/// scale-naming term ceil(log2 log2 1/ε) decays too slowly to vanish over
/// practical scale ranges and is excluded here).
pub fn s_curve_index_slope(curve: &PointComplexityCurve) -> f64 {
    let ys: Vec<f64> =
        curve.center_indices.iter().map(|&i| ((i + 1) as f64).log2().ceil()).collect();
    slope_vs_neglog(&curve.scales, &ys)
}

fn slope_vs_neglog(scales: &[f64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = scales.iter().map(|s| -s.log2()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Minimal closed-ball cover count for a sorted 1D point list (greedy sweep;
/// optimal in 1D). Test oracle for the net/cover count sandwich.
pub fn interval_cover_count(sorted: &[f64], radius: f64) -> u64 {
    let mut count = 0u64;
    let mut i = 0usize;
    while i < sorted.len() {
        let reach = sorted[i] + 2.0 * radius;
        count += 1;
        while i < sorted.len() && sorted[i] <= reach {
            i += 1;
        }
    }
    count
}

/// n+1 equispaced points spanning [0,1].
pub fn equispaced_unit(n: usize) -> PointSet {
    PointSet::one_d((0..=n).map(|i| i as f64 / n as f64).collect())
}

/// Endpoints of the depth-d middle-thirds construction, sorted ascending.
pub fn cantor_endpoints(depth: u32) -> PointSet {
    let mut intervals = vec![(0.0f64, 1.0f64)];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(intervals.len() * 2);
        for (a, b) in intervals {
            let third = (b - a) / 3.0;
            next.push((a, a + third));
            next.push((b - third, b));
        }
        intervals = next;
    }
    let mut pts = Vec::with_capacity(intervals.len() * 2);
    for (a, b) in intervals {
        pts.push(a);
        pts.push(b);
    }
    pts.dedup();
    PointSet::one_d(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{parse_ratio, ratio_from_u64};
    use crate::seeding;
    use num_traits::Zero;

    #[test]
    fn greedy_examples() {
        let p = PointSet::one_d(vec![0.0, 0.5, 1.0]);
        let n = greedy_net(&p, 0.4).unwrap();
        assert_eq!(n.centers, vec![0, 1, 2]);
        let n = greedy_net(&p, 0.6).unwrap();
        assert_eq!(n.centers, vec![0, 2]);
        let single = PointSet::one_d(vec![0.3]);
        assert_eq!(greedy_net(&single, 0.1).unwrap().count(), 1);
    }

    #[test]
    fn net_validity_on_random_sets() {
        let mut rng = seeding::stream(4, "nets");
        for trial in 0..5 {
            let pts: Vec<f64> = crate::seeding::random_symbols(&mut rng, 400, 1000)
                .iter()
                .map(|&v| v as f64 / 1000.0)
                .collect();
            let set = PointSet::one_d(pts);
            for &eps in &[0.3, 0.05, 0.01] {
                let net = greedy_net(&set, eps).unwrap();
                assert!(net_is_valid(&set, &net), "trial {trial}, eps {eps}");
            }
        }
    }

    #[test]
    fn box_dimension_goldens() {
        // equispaced interval sample at the spec's scales
        let set = equispaced_unit(4096);
        let scales: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        let d = box_dimension(&set, &scales).unwrap();
        assert!((d.lsq_slope - 1.0).abs() <= 0.05, "interval slope {}", d.lsq_slope);

        // a 5-point set below its minimum gap: counts constant, slope → 0
        let five = PointSet::one_d(vec![0.0, 0.21, 0.45, 0.7, 0.93]);
        let tiny: Vec<f64> = (6..=13).map(|k| 2f64.powi(-k)).collect();
        let d = box_dimension(&five, &tiny).unwrap();
        assert!(d.counts.iter().all(|&c| c == 5));
        assert!(d.lsq_slope.abs() <= 0.05);

        // ternary Cantor endpoints at depth 8
        let cantor = cantor_endpoints(8);
        let scales: Vec<f64> = (2..=7).map(|k| 3f64.powi(-k)).collect();
        let d = box_dimension(&cantor, &scales).unwrap();
        let target = 2f64.ln() / 3f64.ln();
        assert!((d.lsq_slope - target).abs() <= 0.05, "cantor slope {}", d.lsq_slope);
        assert!(d.lower <= d.upper);
    }

    #[test]
    fn box_dimension_guards() {
        let set = equispaced_unit(16);
        assert!(box_dimension(&set, &[0.5, 0.25, 0.1]).is_err());
        assert!(box_dimension(&set, &[0.5, 0.25, 0.12, 0.06, 0.03]).is_err());
        let mut o = set.clone();
        o.accuracy = 0.01;
        let scales: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        assert!(matches!(box_dimension(&o, &scales), Err(Error::Scale(_))));
    }

    #[test]
    fn count_sandwich_against_cover_oracle() {
        // greedy net count at δ ≥ minimal ball-cover count at 4δ
        for set in [equispaced_unit(2048), cantor_endpoints(7)] {
            let sorted = match &set.points {
                Points::One(v) => {
                    let mut s = v.clone();
                    s.sort_by(f64::total_cmp);
                    s
                }
                _ => unreachable!(),
            };
            for &delta in &[0.1, 0.03, 0.01, 0.003] {
                let net = greedy_net(&set, delta).unwrap();
                let cover4 = interval_cover_count(&sorted, 4.0 * delta);
                assert!(
                    net.count() >= cover4,
                    "sandwich failed at δ={delta}: net {} < cover {}",
                    net.count(),
                    cover4
                );
            }
        }
    }

    #[test]
    fn orbit_closure_examples() {
        // dense rotation orbit fills the interval
        let scales: Vec<f64> = (3..=9).map(|k| 2f64.powi(-k)).collect();
        let d = orbit_closure_dimension(
            &MapDescriptor::rotation_golden(),
            &[num_rational::BigRational::zero()],
            1 << 14,
            &scales,
        )
        .unwrap();
        assert!((d.lsq_slope - 1.0).abs() <= 0.1, "rotation closure {}", d.lsq_slope);

        // a period-2 orbit is a finite set: dimension 0
        let m = MapDescriptor::pl_manneville_u64(2, 1, 1, 2).unwrap();
        let d = orbit_closure_dimension(&m, &[ratio_from_u64(1, 3)], 512, &scales).unwrap();
        assert!(d.lsq_slope.abs() <= 0.05, "periodic closure {}", d.lsq_slope);

        // generic doubling orbit is dense
        let mut rng = seeding::stream(14, "closure");
        let x0 = seeding::dyadic_point(&mut rng, (1 << 14) + 64);
        let d = orbit_closure_dimension(&MapDescriptor::doubling(), &[x0], 1 << 14, &scales)
            .unwrap();
        assert!((d.lsq_slope - 1.0).abs() <= 0.1, "doubling closure {}", d.lsq_slope);
    }

    #[test]
    fn local_measure_examples() {
        let scales: Vec<f64> = (3..=8).map(|k| 2f64.powi(-k)).collect();
        let mut rng = seeding::stream(15, "localdim");
        let x = seeding::dyadic_point(&mut rng, (1 << 18) + 64);
        let d = local_measure_dimension(&MapDescriptor::doubling(), &[x], 1 << 18, &scales)
            .unwrap();
        assert!((d.estimate - 1.0).abs() <= 0.1, "doubling d_mu {}", d.estimate);
        assert!(!d.floored);

        // identity at a fixed point: all mass in every ball
        let d = local_measure_dimension(
            &MapDescriptor::identity(),
            &[parse_ratio("0.4").unwrap()],
            4096,
            &scales,
        )
        .unwrap();
        assert_eq!(d.estimate, 0.0);

        let d = local_measure_dimension(
            &MapDescriptor::rotation_golden(),
            &[parse_ratio("0.3").unwrap()],
            1 << 16,
            &scales,
        )
        .unwrap();
        assert!((d.estimate - 1.0).abs() <= 0.1, "rotation d_mu {}", d.estimate);
    }

    #[test]
    fn s_curve_examples() {
        // x = first enumerated point → index 0 → only the scale term
        let set = equispaced_unit(4096);
        let scales: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        let c = point_complexity_curve(&set, &[0.0], &scales).unwrap();
        for (i, &s) in scales.iter().enumerate() {
            assert_eq!(c.center_indices[i], 0);
            let expect = (1.0f64 / s).log2().log2().ceil().max(0.0);
            assert_eq!(c.bits[i], expect, "scale {s}");
        }

        // x = 1/2 at ε = 2^-6: the net index is ≤ 1/ε, so
        // bits ≤ (1+0.2)·6 + log2 6 + 4
        let c = point_complexity_curve(&set, &[0.5], &[2f64.powi(-6)]).unwrap();
        assert!(c.bits[0] <= 1.2 * 6.0 + 6f64.log2() + 4.0, "bits {}", c.bits[0]);

        // last sorted point of the Cantor set: index grows like the net
        // count, so the slope reads the dimension (self-similar count
        // oracle: N(3^-k) ≈ 2^k up to a constant factor)
        let cantor = cantor_endpoints(8);
        let scales: Vec<f64> = (2..=7).map(|k| 3f64.powi(-k)).collect();
        let c = point_complexity_curve(&cantor, &[1.0], &scales).unwrap();
        let slope = s_curve_index_slope(&c);
        let target = 2f64.ln() / 3f64.ln();
        assert!((slope - target).abs() <= 0.08, "cantor S slope {slope}");
        assert!(s_curve_slope(&c) >= slope, "full bits include the scale term");
    }

    #[test]
    fn s_curve_coverage_error() {
        let set = equispaced_unit(16);
        let r = point_complexity_curve(&set, &[55.0], &[0.01]);
        assert!(matches!(r, Err(Error::Coverage(_))));
    }

    #[test]
    fn lemma33_style_perturbation_stability() {
        // perturbing point j by ≤ 2^-j moves the estimate by ≤ 0.05
        let set = equispaced_unit(16384);
        let scales: Vec<f64> = (4..=10).map(|k| 2f64.powi(-k)).collect();
        let base = box_dimension(&set, &scales).unwrap();
        let perturbed = match &set.points {
            Points::One(v) => PointSet::one_d(
                v.iter()
                    .enumerate()
                    .map(|(j, &x)| x + 2f64.powi(-(j.min(60) as i32 + 1)))
                    .collect(),
            ),
            _ => unreachable!(),
        };
        let d = box_dimension(&perturbed, &scales).unwrap();
        assert!(
            (d.lsq_slope - base.lsq_slope).abs() <= 0.05,
            "{} vs {}",
            d.lsq_slope,
            base.lsq_slope
        );
    }

    #[test]
    fn octave_shift_stability() {
        let set = equispaced_unit(8192);
        let a: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        let b: Vec<f64> = (3..=9).map(|k| 2f64.powi(-k)).collect();
        let da = box_dimension(&set, &a).unwrap();
        let db = box_dimension(&set, &b).unwrap();
        assert!((da.lsq_slope - db.lsq_slope).abs() <= 0.1);

        let cantor = cantor_endpoints(9);
        let a: Vec<f64> = (2..=7).map(|k| 3f64.powi(-k)).collect();
        let b: Vec<f64> = (3..=8).map(|k| 3f64.powi(-k)).collect();
        let da = box_dimension(&cantor, &a).unwrap();
        let db = box_dimension(&cantor, &b).unwrap();
        assert!((da.lsq_slope - db.lsq_slope).abs() <= 0.1);
    }

    #[test]
    fn prop32_style_bound_on_goldens() {
        // bits(ε) ≤ (d̂ + 0.25)·(-log2 ε) + 16 for interval and Cantor sets
        let mut rng = seeding::stream(23, "s-bound");
        let interval = equispaced_unit(4096);
        let iscales: Vec<f64> = (2..=8).map(|k| 2f64.powi(-k)).collect();
        let d_int = box_dimension(&interval, &iscales).unwrap().upper;
        for _ in 0..5 {
            let x = seeding::random_symbols(&mut rng, 1, 4097)[0] as f64 / 4096.0;
            let c = point_complexity_curve(&interval, &[x], &iscales).unwrap();
            for (i, &s) in iscales.iter().enumerate() {
                let bound = (d_int + 0.25) * (-s.log2()) + 16.0;
                assert!(c.bits[i] <= bound, "interval x={x}, ε={s}: {} > {bound}", c.bits[i]);
            }
        }
        let cantor = cantor_endpoints(8);
        let cscales: Vec<f64> = (2..=7).map(|k| 3f64.powi(-k)).collect();
        let d_c = box_dimension(&cantor, &cscales).unwrap().upper;
        for &x in &[0.0, 1.0, 1.0 / 3.0, 2.0 / 3.0, 1.0 / 9.0] {
            let c = point_complexity_curve(&cantor, &[x], &cscales).unwrap();
            for (i, &s) in cscales.iter().enumerate() {
                let bound = (d_c + 0.25) * (-s.log2()) + 16.0;
                assert!(c.bits[i] <= bound, "cantor x={x}, ε={s}: {} > {bound}", c.bits[i]);
            }
        }
    }
}
