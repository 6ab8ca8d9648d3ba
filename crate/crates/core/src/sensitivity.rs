//! Dynamical-ball radii r(x,n,ε) and R(x,n,ε): how far a start may be
//! perturbed so its first n images stay ε-close, found by binary search
//! along a star of rays, and the growth-regime fits of -log radius.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{has_exact_orbits, orbit_stream, ExactOrbit};
use crate::error::{Error, Result};
use crate::map::{rational_distance, MapDescriptor, MapKind, Metric};
use crate::num::ratio_to_f64;

/// Grid depth of the radius search: candidates are ε·k/2^GRID_DEPTH. A fixed
/// dyadic grid makes the reported radii exactly monotone across nested
/// horizons (same candidates, nested predicates).
const GRID_DEPTH: u32 = 40;

/// Extra accuracy (bits below ε) for the error-bounded comparison path.
const LEDGER_GUARD: u32 = 24;

/// Does every point of the first n steps of y's orbit stay within ε of x's?
///
/// Exact-rational kinds are compared exactly; the others subtract the orbit
/// error budget from ε, so a `true` is always certified.
pub fn stays_close(
    map: &MapDescriptor,
    x: &[BigRational],
    y: &[BigRational],
    n: u64,
    epsilon: &BigRational,
) -> Result<bool> {
    if !map.contains(x) || !map.contains(y) {
        return Err(Error::Domain("points must lie in the domain".into()));
    }
    let metric = map.metric();
    let period = map.domain_width();
    if let Some(answer) = stays_close_dyadic_fast(map, x, y, n, epsilon)? {
        return Ok(answer);
    }
    if has_exact_orbits(map) {
        let mut ox = ExactOrbit::start(map, x)?;
        let mut oy = ExactOrbit::start(map, y)?;
        for _ in 0..=n {
            let d = rational_distance(metric, &period, &ox.point(), &oy.point());
            if d > *epsilon {
                return Ok(false);
            }
            ox.step()?;
            oy.step()?;
        }
        Ok(true)
    } else {
        let eps_f = ratio_to_f64(epsilon);
        let m = ((-eps_f.log2()).ceil() as u32).saturating_add(LEDGER_GUARD).max(30);
        let mut ox = orbit_stream(map, x, n, m)?;
        let mut oy = orbit_stream(map, y, n, m)?;
        let budget = BigRational::new(BigInt::from(2), BigInt::one() << (m as u64 - 1));
        let margin = epsilon - budget;
        if margin <= BigRational::zero() {
            return Err(Error::Precision("epsilon below the comparison budget".into()));
        }
        while let (Some(px), Some(py)) = (ox.next_point()?, oy.next_point()?) {
            let d = rational_distance(metric, &period, &px.to_ratios(), &py.to_ratios());
            if d > margin {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Dyadic mantissa of a rational, if it is dyadic: returns (mant, prec) with
/// value = mant / 2^prec.
fn dyadic_mant(r: &BigRational, prec: u64) -> Option<num_bigint::BigInt> {
    let scaled = r * BigRational::from_integer(BigInt::one() << prec);
    if scaled.denom().is_one() {
        Some(scaled.numer().clone())
    } else {
        None
    }
}

fn dyadic_bits(r: &BigRational) -> Option<u64> {
    let den = r.denom().magnitude();
    let bits = den.bits();
    if den == &(num_bigint::BigUint::one() << (bits - 1)) {
        Some(bits - 1)
    } else {
        None
    }
}

/// Raw-mantissa comparison loop for Identity, Doubling, Rotation and
/// SkewShift2D with dyadic inputs: exact, no rational reduction, no error
/// budget. Returns None when the kind or the inputs don't fit this path.
fn stays_close_dyadic_fast(
    map: &MapDescriptor,
    x: &[BigRational],
    y: &[BigRational],
    n: u64,
    epsilon: &BigRational,
) -> Result<Option<bool>> {
    use crate::map::MapKind;
    use num_bigint::BigInt as I;

    // common dyadic precision of all inputs
    let mut prec = 0u64;
    for v in x.iter().chain(y.iter()).chain(std::iter::once(epsilon)) {
        match dyadic_bits(v) {
            Some(b) => prec = prec.max(b),
            None => return Ok(None),
        }
    }
    match &map.kind {
        MapKind::Identity => {
            let d = rational_distance(map.metric(), &map.domain_width(), x, y);
            Ok(Some(d <= *epsilon))
        }
        MapKind::Doubling | MapKind::Rotation { .. } => {
            if let MapKind::Rotation { t } = &map.kind {
                match dyadic_bits(t) {
                    Some(b) => prec = prec.max(b),
                    None => return Ok(None),
                }
            }
            let modulus: I = I::one() << prec;
            let wrap = |v: I| -> I {
                let m = v % &modulus;
                if m.sign() == num_bigint::Sign::Minus {
                    m + &modulus
                } else {
                    m
                }
            };
            let mut a = wrap(dyadic_mant(&x[0], prec).expect("checked"));
            let mut b = wrap(dyadic_mant(&y[0], prec).expect("checked"));
            let e = dyadic_mant(epsilon, prec).expect("checked");
            let t_m = match &map.kind {
                MapKind::Rotation { t } => Some(dyadic_mant(t, prec).expect("checked")),
                _ => None,
            };
            for _ in 0..=n {
                let diff = I::from((&a - &b).magnitude().clone());
                let wrapped = &modulus - &diff;
                let d = if diff <= wrapped { diff } else { wrapped };
                if d > e {
                    return Ok(Some(false));
                }
                match &t_m {
                    Some(t) => {
                        a += t;
                        if a >= modulus {
                            a -= &modulus;
                        }
                        b += t;
                        if b >= modulus {
                            b -= &modulus;
                        }
                    }
                    None => {
                        a = wrap(a << 1);
                        b = wrap(b << 1);
                    }
                }
            }
            Ok(Some(true))
        }
        MapKind::SkewShift2D => {
            // coordinates in [-1,1) scaled by 2^prec; wrap modulo 2^(prec+1)
            let modulus: I = I::one() << (prec + 1);
            let half: I = I::one() << prec;
            let wrap = |mut v: I| -> I {
                v = ((v + &half) % &modulus + &modulus) % &modulus;
                v - &half
            };
            let mut ax = dyadic_mant(&x[0], prec).expect("checked");
            let ay = dyadic_mant(&x[1], prec).expect("checked");
            let mut bx = dyadic_mant(&y[0], prec).expect("checked");
            let by = dyadic_mant(&y[1], prec).expect("checked");
            let e = dyadic_mant(epsilon, prec).expect("checked");
            let dy = (&ay - &by).magnitude().clone();
            if I::from(dy.clone()) > e {
                return Ok(Some(false));
            }
            for _ in 0..=n {
                let dx = (&ax - &bx).magnitude().clone();
                if I::from(dx) > e {
                    return Ok(Some(false));
                }
                ax = wrap(ax + &ay);
                bx = wrap(bx + &by);
            }
            Ok(Some(true))
        }
        _ => Ok(None),
    }
}

/// One certified radius value from the grid search.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RadiusEstimate {
    /// the radius (may underflow to 0.0 in f64; neglog2 is authoritative)
    pub value: f64,
    /// -log2 of the radius
    pub neglog2: f64,
    /// the search bottomed out at the grid floor
    pub floored: bool,
}

/// Unit ray directions of the search star.
fn ray_star(map: &MapDescriptor) -> Vec<Vec<f64>> {
    match map.dimension() {
        1 => vec![vec![1.0], vec![-1.0]],
        _ => vec![
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
            vec![1.0, 1.0],
            vec![1.0, -1.0],
            vec![-1.0, 1.0],
            vec![-1.0, -1.0],
        ],
    }
}

/// The per-ray sup of staying offsets, as a grid index in [0, 2^GRID_DEPTH].
/// Offsets whose perturbed point leaves the domain hold vacuously (those
/// points are not in the space). The predicate is treated as monotone along
/// the ray (exact for monotone-branch 1D maps; a documented heuristic in 2D).
fn ray_sup_index(
    map: &MapDescriptor,
    x: &[BigRational],
    dir: &[f64],
    n: u64,
    epsilon: &BigRational,
) -> Result<u64> {
    let top = 1u64 << GRID_DEPTH;
    let probe = |k: u64| -> Result<bool> {
        if k == 0 {
            return Ok(true);
        }
        let delta = epsilon * BigRational::new(BigInt::from(k), BigInt::one() << GRID_DEPTH);
        let mut y = Vec::with_capacity(x.len());
        for (c, d) in x.iter().zip(dir.iter()) {
            let off = if *d > 0.0 {
                delta.clone()
            } else if *d < 0.0 {
                -delta.clone()
            } else {
                BigRational::zero()
            };
            y.push(c + off);
        }
        // wrap for circle metrics; clamp-check otherwise
        match map.metric() {
            Metric::Circle => {
                let f = y[0].fract();
                y[0] = if f.is_negative() { f + BigRational::one() } else { f };
            }
            _ => {
                if !map.contains(&y) {
                    return Ok(true); // vacuous: no such point in the space
                }
            }
        }
        stays_close(map, x, &y, n, epsilon)
    };
    if probe(top)? {
        return Ok(top);
    }
    let mut lo = 0u64; // stays
    let mut hi = top; // fails
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

fn estimate_from_index(epsilon: &BigRational, k: u64) -> RadiusEstimate {
    let eps_log2 = ratio_to_f64(epsilon).log2();
    if k == 0 {
        // below the grid floor: report the floor with a flag
        RadiusEstimate {
            value: ratio_to_f64(epsilon) * 2f64.powi(-(GRID_DEPTH as i32)),
            neglog2: -(eps_log2 - GRID_DEPTH as f64),
            floored: true,
        }
    } else {
        let neglog2 = -(eps_log2 + (k as f64).log2() - GRID_DEPTH as f64);
        RadiusEstimate {
            value: ratio_to_f64(epsilon) * k as f64 * 2f64.powi(-(GRID_DEPTH as i32)),
            neglog2,
            floored: false,
        }
    }
}

/// r(x,n,ε): radius of the largest centered ball inside the dynamical ball,
/// reported as the certified staying grid offset (min over the ray star).
pub fn inner_radius(
    map: &MapDescriptor,
    x: &[BigRational],
    n: u64,
    epsilon: &BigRational,
) -> Result<RadiusEstimate> {
    let mut min_k = u64::MAX;
    for dir in ray_star(map) {
        let k = ray_sup_index(map, x, &dir, n, epsilon)?;
        min_k = min_k.min(k);
    }
    Ok(estimate_from_index(epsilon, min_k))
}

/// R(x,n,ε): distance of the farthest staying point found (max over rays).
pub fn outer_radius(
    map: &MapDescriptor,
    x: &[BigRational],
    n: u64,
    epsilon: &BigRational,
) -> Result<RadiusEstimate> {
    let mut max_k = 0u64;
    for dir in ray_star(map) {
        let k = ray_sup_index(map, x, &dir, n, epsilon)?;
        max_k = max_k.max(k);
    }
    Ok(estimate_from_index(epsilon, max_k))
}

/// Sampled n ↦ (r, R) with -log2 values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SensitivityCurve {
    pub x: Vec<String>,
    pub epsilon: String,
    pub epsilon_f64: f64,
    pub schedule: Vec<u64>,
    pub r_values: Vec<f64>,
    pub big_r_values: Vec<f64>,
    pub neglog_r: Vec<f64>,
    pub neglog_big_r: Vec<f64>,
    pub r_floored: Vec<bool>,
}

impl SensitivityCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,r,R,neglog_r,neglog_R\n");
        for i in 0..self.schedule.len() {
            out.push_str(&format!(
                "{},{:e},{:e},{},{}\n",
                self.schedule[i],
                self.r_values[i],
                self.big_r_values[i],
                self.neglog_r[i],
                self.neglog_big_r[i]
            ));
        }
        out
    }
}

pub fn sensitivity_curve(
    map: &MapDescriptor,
    x: &[BigRational],
    epsilon: &BigRational,
    schedule: &[u64],
) -> Result<SensitivityCurve> {
    if schedule.is_empty() || schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Usage("schedule must be strictly increasing".into()));
    }
    let mut curve = SensitivityCurve {
        x: x.iter().map(|c| c.to_string()).collect(),
        epsilon: epsilon.to_string(),
        epsilon_f64: ratio_to_f64(epsilon),
        schedule: schedule.to_vec(),
        r_values: Vec::new(),
        big_r_values: Vec::new(),
        neglog_r: Vec::new(),
        neglog_big_r: Vec::new(),
        r_floored: Vec::new(),
    };
    for &n in schedule {
        let r = inner_radius(map, x, n, epsilon)?;
        let rr = outer_radius(map, x, n, epsilon)?;
        curve.r_values.push(r.value);
        curve.big_r_values.push(rr.value);
        curve.neglog_r.push(r.neglog2);
        curve.neglog_big_r.push(rr.neglog2);
        curve.r_floored.push(r.floored);
    }
    Ok(curve)
}

/// Sensitivity growth regime of -log radius against its clock.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SensRegime {
    /// radius bounded away from 0 over the schedule
    None,
    /// -log r ~ c·log2 n (radius decays polynomially)
    PowerLaw,
    /// -log r ~ c·n^β
    StretchedExp(f64),
    /// -log r ~ c·n
    Exponential,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SensitivityFit {
    pub regime: SensRegime,
    /// slope of -log2 radius against the winning clock; the indicator value
    /// under that clock.
    pub coefficient: f64,
    pub residual: f64,
    pub epsilon: f64,
    /// false when the slope is still drifting across the window (the two
    /// half-window slopes differ by more than 15%): the finite-horizon fit
    /// has not converged and the coefficient is not a limsup estimate.
    pub settled: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhichRadius {
    Inner,
    Outer,
}

/// Regression of -log radius against n, n^β (β on a 0.1 grid) and log2 n,
/// regime chosen by residual with a 0.8 margin; ties prefer the slowest
/// regime (no overclaiming of sensitivity).
pub fn fit_sensitivity(curve: &SensitivityCurve, which: WhichRadius) -> Result<SensitivityFit> {
    let ys = match which {
        WhichRadius::Inner => &curve.neglog_r,
        WhichRadius::Outer => &curve.neglog_big_r,
    };
    let k = ys.len();
    if k < 6 {
        return Err(Error::Usage("fit_sensitivity needs ≥ 6 schedule points".into()));
    }
    let spread = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ys.iter().cloned().fold(f64::INFINITY, f64::min);
    if spread < 1.0 {
        return Ok(SensitivityFit {
            regime: SensRegime::None,
            coefficient: 0.0,
            residual: 0.0,
            epsilon: curve.epsilon_f64,
            settled: true,
        });
    }
    let ns: Vec<f64> = curve.schedule.iter().map(|&n| n as f64).collect();
    let fit = |clock: &dyn Fn(f64) -> f64| -> (f64, f64) {
        let xs: Vec<f64> = ns.iter().map(|&n| clock(n)).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let mut num = 0.0;
        let mut den = 0.0;
        for (x, y) in xs.iter().zip(ys.iter()) {
            num += (x - mx) * (y - my);
            den += (x - mx) * (x - mx);
        }
        let slope = if den == 0.0 { 0.0 } else { num / den };
        let b = my - slope * mx;
        let rms = (xs
            .iter()
            .zip(ys.iter())
            .map(|(x, y)| (slope * x + b - y).powi(2))
            .sum::<f64>()
            / n)
            .sqrt();
        (slope, rms)
    };
    // candidates ordered slowest → fastest
    let mut cands: Vec<(SensRegime, f64, f64)> = Vec::new();
    let (c_pow, r_pow) = fit(&|n: f64| n.max(2.0).log2());
    cands.push((SensRegime::PowerLaw, c_pow, r_pow));
    let mut best_beta = (0.1, f64::INFINITY, 0.0);
    for i in 1..=9 {
        let beta = i as f64 / 10.0;
        let (c, r) = fit(&|n: f64| n.powf(beta));
        if r < best_beta.1 {
            best_beta = (beta, r, c);
        }
    }
    cands.push((SensRegime::StretchedExp(best_beta.0), best_beta.2, best_beta.1));
    let (c_exp, r_exp) = fit(&|n: f64| n);
    cands.push((SensRegime::Exponential, c_exp, r_exp));

    let best = cands
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .2.total_cmp(&b.1 .2))
        .map(|(i, _)| i)
        .unwrap();
    let best_res = cands[best].2;
    let tiny = 1e-9 * spread;
    let decisive = cands
        .iter()
        .enumerate()
        .all(|(i, c)| i == best || best_res <= tiny.max(0.8 * c.2));
    let chosen = if decisive {
        best
    } else {
        // prefer the slowest regime among those close to the best residual
        (0..cands.len())
            .find(|&i| cands[i].2 <= best_res * 1.25 + tiny)
            .unwrap_or(best)
    };
    // drift check: slope of the winning clock over the two window halves
    let clock_of = |r: SensRegime| -> Box<dyn Fn(f64) -> f64> {
        match r {
            SensRegime::PowerLaw => Box::new(|n: f64| n.max(2.0).log2()),
            SensRegime::StretchedExp(b) => Box::new(move |n: f64| n.powf(b)),
            _ => Box::new(|n: f64| n),
        }
    };
    let clock = clock_of(cands[chosen].0);
    let half = k / 2;
    let slope_of = |lo: usize, hi: usize| -> f64 {
        let xs: Vec<f64> = ns[lo..hi].iter().map(|&n| clock(n)).collect();
        let ysw = &ys[lo..hi];
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ysw.iter().sum::<f64>() / n;
        let mut num = 0.0;
        let mut den = 0.0;
        for (x, y) in xs.iter().zip(ysw.iter()) {
            num += (x - mx) * (y - my);
            den += (x - mx) * (x - mx);
        }
        if den == 0.0 {
            0.0
        } else {
            num / den
        }
    };
    let s1 = slope_of(0, half.max(2));
    let s2 = slope_of(half.min(k - 2), k);
    let scale = s1.abs().max(s2.abs()).max(1e-12);
    let settled = (s2 - s1).abs() / scale <= 0.15;
    Ok(SensitivityFit {
        regime: cands[chosen].0,
        coefficient: cands[chosen].1,
        residual: cands[chosen].2,
        epsilon: curve.epsilon_f64,
        settled,
    })
}

/// Convenience: is this map's point expected to show no sensitivity?
pub fn is_isometry_kind(map: &MapDescriptor) -> bool {
    matches!(map.kind, MapKind::Identity | MapKind::Rotation { .. })
}
