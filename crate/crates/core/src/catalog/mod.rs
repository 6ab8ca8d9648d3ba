//! The example dynamical systems: constructive (error-bounded) iteration and
//! an exact-rational oracle path for the rational-affine kinds.

pub mod plm;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::map::{MapDescriptor, MapKind, Metric};
use crate::num::{Dyadic, UpBound};
use plm::{PlmDyadicIter, PlmExactIter, PlmParams, PRECISION_HARD_CAP};

/// Effective modulus of continuity: d(x,y) < 2^-(n+shift) implies
/// d(Tx,Ty) < 2^-n away from the maps' discontinuity points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Modulus {
    pub shift: u32,
}

/// One orbit point (1 or 2 coordinates, exact dyadic storage).
#[derive(Debug, Clone, PartialEq)]
pub enum OrbitPoint {
    One(Dyadic),
    Two(Dyadic, Dyadic),
}

impl OrbitPoint {
    pub fn dim(&self) -> usize {
        match self {
            OrbitPoint::One(_) => 1,
            OrbitPoint::Two(..) => 2,
        }
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        match self {
            OrbitPoint::One(x) => vec![x.to_f64()],
            OrbitPoint::Two(x, y) => vec![x.to_f64(), y.to_f64()],
        }
    }

    pub fn to_ratios(&self) -> Vec<BigRational> {
        match self {
            OrbitPoint::One(x) => vec![x.to_ratio()],
            OrbitPoint::Two(x, y) => vec![x.to_ratio(), y.to_ratio()],
        }
    }
}

/// Distance between stored points under the map's metric, exact.
pub fn point_distance(metric: Metric, x: &OrbitPoint, y: &OrbitPoint) -> BigRational {
    crate::map::rational_distance(
        metric,
        &BigRational::one(),
        &x.to_ratios(),
        &y.to_ratios(),
    )
}

/// A finite precision-tagged trajectory. `points[0]` is the start; every
/// stored point is within 2^-error_exponent of the true orbit point in the
/// map's metric.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub map: MapDescriptor,
    pub points: Vec<OrbitPoint>,
    pub error_exponent: u32,
}

impl Orbit {
    pub fn start(&self) -> &OrbitPoint {
        &self.points[0]
    }

    pub fn steps(&self) -> u64 {
        (self.points.len() - 1) as u64
    }
}

fn wrap_unit(x: BigRational) -> BigRational {
    let f = x.fract();
    if f.is_negative() {
        f + BigRational::one()
    } else {
        f
    }
}

fn wrap_two(x: BigRational) -> BigRational {
    // into [-1, 1)
    let two = BigRational::from_integer(2.into());
    let shifted = (&x + BigRational::one()) / &two;
    let f = wrap_unit(shifted);
    f * two - BigRational::one()
}

/// Apply the map once, in exact rational arithmetic.
///
/// Supported exactly: Identity, Doubling, Rotation with rational angle,
/// PLManneville with z = 2, SkewShift2D. The other kinds have irrational
/// branch data; use [`iterate`] for an error-bounded step.
pub fn eval(map: &MapDescriptor, x: &[BigRational]) -> Result<Vec<BigRational>> {
    if !map.contains(x) {
        return Err(Error::Domain(format!(
            "point outside the domain of {}",
            map.kind_name()
        )));
    }
    match &map.kind {
        MapKind::Identity => Ok(x.to_vec()),
        MapKind::Doubling => Ok(vec![wrap_unit(&x[0] * BigRational::from_integer(2.into()))]),
        MapKind::Rotation { t } => Ok(vec![wrap_unit(&x[0] + t)]),
        MapKind::SkewShift2D => Ok(vec![wrap_two(&x[0] + &x[1]), x[1].clone()]),
        MapKind::PlManneville { z, a } => {
            let params = PlmParams::new(z, a)?;
            if !params.is_rational() {
                return Err(Error::Capability(
                    "exact eval needs z = 2; use iterate for other z".into(),
                ));
            }
            let mut it = PlmExactIter::start(params, &x[0])?;
            it.step()?;
            Ok(vec![it.point()])
        }
        MapKind::SmoothManneville { .. } => Err(Error::Capability(
            "SmoothManneville has no exact-arithmetic path; use iterate".into(),
        )),
    }
}

/// Bit-exact orbit under arbitrary-precision rational arithmetic.
/// Supported kinds: Identity, Doubling, PLManneville with z = 2 and rational
/// a, SkewShift2D with rational start.
pub fn iterate_exact(
    map: &MapDescriptor,
    x0: &[BigRational],
    n: u64,
) -> Result<Vec<Vec<BigRational>>> {
    if !map.contains(x0) {
        return Err(Error::Domain("start point outside domain".into()));
    }
    let mut out = Vec::with_capacity(n as usize + 1);
    match &map.kind {
        MapKind::Identity => {
            for _ in 0..=n {
                out.push(x0.to_vec());
            }
        }
        MapKind::Doubling => {
            let two = BigRational::from_integer(2.into());
            let mut x = wrap_unit(x0[0].clone());
            for _ in 0..=n {
                out.push(vec![x.clone()]);
                x = wrap_unit(&x * &two);
            }
        }
        MapKind::PlManneville { z, a } => {
            let params = PlmParams::new(z, a)?;
            if !params.is_rational() {
                return Err(Error::Capability(
                    "iterate_exact supports PLManneville only for z = 2".into(),
                ));
            }
            let mut it = PlmExactIter::start(params, &x0[0])?;
            for _ in 0..=n {
                out.push(vec![it.point()]);
                it.step()?;
            }
        }
        MapKind::SkewShift2D => {
            let y = x0[1].clone();
            let mut x = x0[0].clone();
            for _ in 0..=n {
                out.push(vec![x.clone(), y.clone()]);
                x = wrap_two(&x + &y);
            }
        }
        MapKind::Rotation { .. } | MapKind::SmoothManneville { .. } => {
            return Err(Error::Capability(format!(
                "iterate_exact does not support {}",
                map.kind_name()
            )));
        }
    }
    Ok(out)
}

/// Modulus of continuity shift for the map (worst branch slope).
pub fn modulus(map: &MapDescriptor) -> Modulus {
    let shift = match &map.kind {
        MapKind::Identity | MapKind::Rotation { .. } => 0,
        MapKind::Doubling => 1,
        MapKind::SkewShift2D => 1,
        MapKind::PlManneville { z, a } => {
            let params = PlmParams::new(z, a).expect("validated at construction");
            let slope = params.max_slope_f64();
            (slope - 1e-9).log2().ceil().max(0.0) as u32
        }
        MapKind::SmoothManneville { z } => {
            let zf = crate::num::ratio_to_f64(z);
            (1.0 + zf).log2().ceil() as u32
        }
    };
    Modulus { shift }
}

const STORAGE_GUARD: u32 = 16;

/// Streaming orbit generator; see [`iterate`] for the materialized form.
pub struct OrbitStream {
    state: StreamState,
    produced: u64,
    total: u64,
    m: u32,
    storage: u32,
}

enum StreamState {
    Const(OrbitPoint),
    Doubling {
        limbs: Vec<u64>,
        mant: BigUint,
        prec: u64,
    },
    Rotation {
        cur: Dyadic,
        t: Dyadic,
        one: Dyadic,
    },
    Skew {
        x: Dyadic,
        y: Dyadic,
        two: Dyadic,
        one: Dyadic,
    },
    PlmExact {
        iter: PlmExactIter,
    },
    PlmDyadic {
        iter: PlmDyadicIter,
        params: PlmParams,
        x0: BigRational,
        prec: u32,
        mat_cache: Option<(u64, Dyadic, Dyadic)>,
    },
    Smooth {
        x: Dyadic,
        err: UpBound,
        zf: f64,
        p: u32,
        q: u32,
        prec: u32,
    },
}

impl OrbitStream {
    pub fn error_exponent(&self) -> u32 {
        self.m
    }

    pub fn total_points(&self) -> u64 {
        self.total + 1
    }

    /// Produce the next orbit point (step `produced`), or None past step n.
    pub fn next_point(&mut self) -> Result<Option<OrbitPoint>> {
        if self.produced > self.total {
            return Ok(None);
        }
        let t = self.produced;
        self.produced += 1;
        let storage = self.storage;
        match &mut self.state {
            StreamState::Const(p) => Ok(Some(p.clone())),
            StreamState::Doubling { limbs, mant, prec } => {
                let lo = *prec - t - storage as u64;
                let mant_out = if storage <= 112 {
                    extract_window(limbs, lo, storage)
                } else {
                    let mask = (BigUint::one() << storage as u64) - BigUint::one();
                    BigInt::from((&*mant >> lo) & mask)
                };
                Ok(Some(OrbitPoint::One(Dyadic::new(mant_out, -(storage as i64)))))
            }
            StreamState::Rotation { cur, t: ang, one } => {
                let out = cur.clone();
                let mut next = cur.add(ang);
                if next.cmp_val(one) != std::cmp::Ordering::Less {
                    next = next.sub(one);
                }
                *cur = next;
                Ok(Some(OrbitPoint::One(out)))
            }
            StreamState::Skew { x, y, two, one } => {
                let out = OrbitPoint::Two(x.clone(), y.clone());
                let mut next = x.add(y);
                if next.cmp_val(one) != std::cmp::Ordering::Less {
                    next = next.sub(two);
                } else if next.cmp_val(&one.neg()) == std::cmp::Ordering::Less {
                    next = next.add(two);
                }
                *x = next;
                Ok(Some(out))
            }
            StreamState::PlmExact { iter } => {
                let r = iter.point();
                let d = Dyadic::from_ratio(&r, storage);
                iter.step()?;
                Ok(Some(OrbitPoint::One(d)))
            }
            StreamState::PlmDyadic { iter, params, x0, prec, mat_cache } => {
                loop {
                    // Ledger check: the claimed exponent must still hold.
                    let total_err = iter.err.add(&UpBound::pow2(-(storage as i64) + 3));
                    if !total_err.le_pow2(-(self.m as i64) - 1) {
                        escalate_plm(iter, params, x0, prec, t, mat_cache)?;
                        continue;
                    }
                    let point = plm_materialize(iter, params, storage, mat_cache);
                    if !iter.step()? {
                        // ambiguous branch decision ahead: rebuild at state t
                        escalate_plm(iter, params, x0, prec, t, mat_cache)?;
                        continue;
                    }
                    return Ok(Some(point));
                }
            }
            StreamState::Smooth { x, err, zf, p, q, prec } => {
                let out = x.round_to(storage);
                let total_err = err.add(&UpBound::pow2(-(storage as i64)));
                if !total_err.le_pow2(-(self.m as i64) - 1) {
                    return Err(Error::Precision(
                        "smooth-map error ledger exhausted before the horizon".into(),
                    ));
                }
                smooth_step(x, err, *zf, *p, *q, *prec)?;
                Ok(Some(OrbitPoint::One(out)))
            }
        }
    }
}

fn plm_materialize(
    iter: &PlmDyadicIter,
    params: &PlmParams,
    storage: u32,
    cache: &mut Option<(u64, Dyadic, Dyadic)>,
) -> OrbitPoint {
    match iter.branch() {
        None => OrbitPoint::One(iter.u_value().round_to(storage)),
        Some(k) => {
            let sprec = storage + 8;
            let (xi_lo, xi_hi) = match cache.take() {
                Some((ck, lo, hi)) if ck == k => (lo, hi),
                Some((ck, _, hi)) if ck == k + 1 => {
                    // descent: the previous upper breakpoint ξ_k becomes the
                    // new lower one; only ξ_{k-1} is fresh
                    (hi, params.xi_dyadic_above(k, sprec))
                }
                _ => (params.xi_dyadic(k, sprec), params.xi_dyadic_above(k, sprec)),
            };
            let u = iter.u_value().round_to(sprec);
            let width = xi_hi.sub(&xi_lo);
            let x = xi_lo.add(&u.mul(&width)).round_to(storage);
            *cache = Some((k, xi_lo, xi_hi));
            OrbitPoint::One(x)
        }
    }
}

fn escalate_plm(
    iter: &mut PlmDyadicIter,
    params: &PlmParams,
    x0: &BigRational,
    prec: &mut u32,
    replay: u64,
    cache: &mut Option<(u64, Dyadic, Dyadic)>,
) -> Result<()> {
    let new_prec = (*prec * 2).max(*prec + 256);
    if new_prec > PRECISION_HARD_CAP {
        return Err(Error::Resource(format!(
            "working precision escalation past hard cap {PRECISION_HARD_CAP} bits"
        )));
    }
    *prec = new_prec;
    *cache = None;
    let mut fresh = PlmDyadicIter::start(params.clone(), x0, new_prec)?;
    for _ in 0..replay {
        if !fresh.step()? {
            return escalate_plm(iter, params, x0, prec, replay, cache);
        }
    }
    *iter = fresh;
    Ok(())
}

/// One step of x ← x + x^z (mod 1) at fixed dyadic precision with ledger.
fn smooth_step(x: &mut Dyadic, err: &mut UpBound, zf: f64, p: u32, q: u32, prec: u32) -> Result<()> {
    // x^z = (x^p)^(1/q), mantissa arithmetic at prec bits.
    let xr = x.round_to(prec);
    let mant = xr.mant.magnitude().clone();
    let powed = mant.pow(p);
    // x^p has scale 2^-(prec·p); bring to 2^-prec after the q-th root.
    let shift_back = (p as u64 - q as u64) * prec as u64;
    let scaled = powed >> shift_back;
    let rooted = if q == 1 { scaled } else { scaled.nth_root(q) };
    let xz = Dyadic::new(BigInt::from(rooted), -(prec as i64));
    let mut next = x.add(&xz);
    let one = Dyadic::one();
    let xf = x.to_f64();
    let slope = UpBound::from_f64(1.0 + zf * (xf + err.to_f64()).max(0.0).powf(zf - 1.0) + 1e-9);
    let new_err = slope.mul(err).add(&UpBound::pow2(4 - prec as i64));
    // Wrap: the interval metric is discontinuous at the wrap point, so an
    // uncertainty interval straddling it cannot be carried further.
    let near_wrap = (1.0 - next.to_f64()).abs() < new_err.to_f64() * 4.0 + 1e-300;
    if next.cmp_val(&one) != std::cmp::Ordering::Less {
        if near_wrap {
            return Err(Error::Precision(
                "orbit within the error budget of the wrap point".into(),
            ));
        }
        next = next.sub(&one);
    } else if near_wrap {
        return Err(Error::Precision(
            "orbit within the error budget of the wrap point".into(),
        ));
    }
    *x = next.round_to(prec);
    *err = new_err.add(&UpBound::pow2(-(prec as i64)));
    Ok(())
}

fn extract_window(limbs: &[u64], lo: u64, width: u32) -> BigInt {
    debug_assert!(width <= 112);
    let idx = (lo / 64) as usize;
    let off = (lo % 64) as u32;
    let g = |i: usize| -> u128 { limbs.get(i).copied().unwrap_or(0) as u128 };
    let mut v: u128 = g(idx) >> off;
    if off > 0 {
        v |= g(idx + 1) << (64 - off);
        v |= (g(idx + 2) << (64 - off)) << 64;
    } else {
        v |= g(idx + 1) << 64;
    }
    let mask = if width >= 128 { u128::MAX } else { (1u128 << width) - 1 };
    BigInt::from(v & mask)
}

/// Open a streaming orbit of `n` steps with guaranteed accuracy 2^-m.
pub fn orbit_stream(
    map: &MapDescriptor,
    x0: &[BigRational],
    n: u64,
    m: u32,
) -> Result<OrbitStream> {
    if n < 1 || m < 1 {
        return Err(Error::Usage("iterate needs n ≥ 1 and m ≥ 1".into()));
    }
    if !map.contains(x0) {
        return Err(Error::Domain("start point outside domain".into()));
    }
    let storage = m + STORAGE_GUARD;
    let state = match &map.kind {
        MapKind::Identity => {
            StreamState::Const(OrbitPoint::One(Dyadic::from_ratio(&x0[0], storage)))
        }
        MapKind::Doubling => {
            let prec = n + storage as u64;
            if prec > PRECISION_HARD_CAP as u64 {
                return Err(Error::Resource(format!(
                    "doubling at n={n} needs {prec} bits, beyond the hard cap"
                )));
            }
            let x = wrap_unit(x0[0].clone());
            let scaled = &x * BigRational::from_integer(BigInt::one() << prec);
            let mant = scaled.round().to_integer().magnitude().clone();
            let mant = &mant % (BigUint::one() << prec); // x0 = 1 wraps to 0
            let limbs = mant.to_u64_digits();
            StreamState::Doubling { limbs, mant, prec }
        }
        MapKind::Rotation { t } => {
            // The angle error accumulates linearly; pad by log2(n).
            let prec = storage + 4 + (64 - n.leading_zeros()).max(1);
            let td = Dyadic::from_ratio(t, prec);
            let cur = Dyadic::from_ratio(&wrap_unit(x0[0].clone()), prec);
            StreamState::Rotation { cur, t: td, one: Dyadic::one() }
        }
        MapKind::SkewShift2D => {
            let prec = storage + 4 + (64 - n.leading_zeros()).max(1);
            let x = Dyadic::from_ratio(&x0[0], prec);
            let y = Dyadic::from_ratio(&x0[1], prec);
            StreamState::Skew { x, y, two: Dyadic::from_int(2), one: Dyadic::one() }
        }
        MapKind::PlManneville { z, a } => {
            let params = PlmParams::new(z, a)?;
            if params.is_rational() {
                StreamState::PlmExact { iter: PlmExactIter::start(params, &x0[0])? }
            } else {
                let budget = plm_prepass_bits(&params, crate::num::ratio_to_f64(&x0[0]), n);
                let mut prec = (m as f64 + 96.0 + 1.25 * budget).ceil() as u32;
                prec = prec.max(160);
                if prec > PRECISION_HARD_CAP {
                    return Err(Error::Resource(format!(
                        "estimated working precision {prec} exceeds hard cap {PRECISION_HARD_CAP}"
                    )));
                }
                let iter = PlmDyadicIter::start(params.clone(), &x0[0], prec)?;
                StreamState::PlmDyadic {
                    iter,
                    params,
                    x0: x0[0].clone(),
                    prec,
                    mat_cache: None,
                }
            }
        }
        MapKind::SmoothManneville { z } => {
            let shift = modulus(map).shift as u64;
            let prec64 = m as u64 + n * shift + 32;
            if prec64 > PRECISION_HARD_CAP as u64 {
                return Err(Error::Resource(format!(
                    "smooth map at n={n} needs {prec64} bits, beyond the hard cap"
                )));
            }
            let prec = prec64 as u32;
            let zr = z.reduced();
            let p = zr.numer().to_u32().ok_or_else(|| Error::Capability("z too large".into()))?;
            let q = zr.denom().to_u32().ok_or_else(|| Error::Capability("z too large".into()))?;
            StreamState::Smooth {
                x: Dyadic::from_ratio(&x0[0], prec),
                err: UpBound::pow2(-(prec as i64) - 1),
                zf: crate::num::ratio_to_f64(z),
                p,
                q,
                prec,
            }
        }
    };
    Ok(OrbitStream { state, produced: 0, total: n, m, storage })
}

/// f64 prepass over the excursion dynamics: estimated total log2 error
/// amplification for an n-step orbit (sizing only; correctness comes from
/// the exact ledger).
fn plm_prepass_bits(params: &PlmParams, x0: f64, n: u64) -> f64 {
    let mut bits = 0.0;
    let mut steps = 0u64;
    let mut u = if x0 <= 0.0 || x0 >= 1.0 {
        return 64.0;
    } else {
        x0
    };
    // normalize into a relative coordinate
    let k0 = params.branch_guess_f64(u);
    let lo = params.xi_f64(k0 as f64);
    let hi = if k0 == 0 { 1.0 } else { params.xi_f64(k0 as f64 - 1.0) };
    let w0 = (hi - lo).max(1e-300);
    bits += -w0.log2();
    u = ((u - lo) / w0).clamp(1e-12, 1.0 - 1e-12);
    steps += k0;
    while steps < n {
        let k = params.branch_guess_f64(u);
        let lo = params.xi_f64(k as f64);
        let hi = if k == 0 { 1.0 } else { params.xi_f64(k as f64 - 1.0) };
        let w = (hi - lo).max(1e-300);
        bits += -w.log2();
        u = ((u - lo) / w).clamp(1e-12, 1.0 - 1e-12);
        // mix in fresh pseudo-randomness so degenerate f64 cycling cannot
        // underestimate the budget
        u = (u + std::f64::consts::FRAC_1_SQRT_2 * 1e-9).fract().clamp(1e-12, 1.0 - 1e-12);
        steps += k + 1;
    }
    bits
}

/// Streaming exact-rational orbit for the rational-affine kinds (internal
/// workhorse behind `iterate_exact` and the sensitivity module's certified
/// comparisons). Rotation is supported here with its (rational) angle.
pub enum ExactOrbit {
    Const(Vec<BigRational>),
    Doubling(BigRational),
    Rotation { x: BigRational, t: BigRational },
    Skew { x: BigRational, y: BigRational },
    Plm(PlmExactIter),
}

impl ExactOrbit {
    pub fn start(map: &MapDescriptor, x0: &[BigRational]) -> Result<ExactOrbit> {
        if !map.contains(x0) {
            return Err(Error::Domain("start point outside domain".into()));
        }
        match &map.kind {
            MapKind::Identity => Ok(ExactOrbit::Const(x0.to_vec())),
            MapKind::Doubling => Ok(ExactOrbit::Doubling(wrap_unit(x0[0].clone()))),
            MapKind::Rotation { t } => {
                Ok(ExactOrbit::Rotation { x: wrap_unit(x0[0].clone()), t: t.clone() })
            }
            MapKind::SkewShift2D => {
                Ok(ExactOrbit::Skew { x: x0[0].clone(), y: x0[1].clone() })
            }
            MapKind::PlManneville { z, a } => {
                let params = PlmParams::new(z, a)?;
                if !params.is_rational() {
                    return Err(Error::Capability(
                        "exact orbits need z = 2 for PLManneville".into(),
                    ));
                }
                Ok(ExactOrbit::Plm(PlmExactIter::start(params, &x0[0])?))
            }
            MapKind::SmoothManneville { .. } => Err(Error::Capability(
                "SmoothManneville has no exact-arithmetic path".into(),
            )),
        }
    }

    pub fn point(&self) -> Vec<BigRational> {
        match self {
            ExactOrbit::Const(p) => p.clone(),
            ExactOrbit::Doubling(x) => vec![x.clone()],
            ExactOrbit::Rotation { x, .. } => vec![x.clone()],
            ExactOrbit::Skew { x, y } => vec![x.clone(), y.clone()],
            ExactOrbit::Plm(it) => vec![it.point()],
        }
    }

    pub fn step(&mut self) -> Result<()> {
        match self {
            ExactOrbit::Const(_) => Ok(()),
            ExactOrbit::Doubling(x) => {
                *x = wrap_unit(&*x * BigRational::from_integer(2.into()));
                Ok(())
            }
            ExactOrbit::Rotation { x, t } => {
                *x = wrap_unit(&*x + &*t);
                Ok(())
            }
            ExactOrbit::Skew { x, y } => {
                *x = wrap_two(&*x + &*y);
                Ok(())
            }
            ExactOrbit::Plm(it) => it.step(),
        }
    }
}

/// True when [`ExactOrbit`] supports this map.
pub fn has_exact_orbits(map: &MapDescriptor) -> bool {
    match &map.kind {
        MapKind::Identity
        | MapKind::Doubling
        | MapKind::Rotation { .. }
        | MapKind::SkewShift2D => true,
        MapKind::PlManneville { z, a } => {
            PlmParams::new(z, a).map(|p| p.is_rational()).unwrap_or(false)
        }
        MapKind::SmoothManneville { .. } => false,
    }
}

/// Materialized orbit of `n` steps at guaranteed accuracy 2^-m.
pub fn iterate(map: &MapDescriptor, x0: &[BigRational], n: u64, m: u32) -> Result<Orbit> {
    let mut stream = orbit_stream(map, x0, n, m)?;
    let mut points = Vec::with_capacity(n as usize + 1);
    while let Some(p) = stream.next_point()? {
        points.push(p);
    }
    Ok(Orbit { map: map.clone(), points, error_exponent: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{parse_ratio, ratio_from_u64, ratio_to_f64};
    use crate::seeding;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn q(n: u64, d: u64) -> BigRational {
        ratio_from_u64(n, d)
    }

    fn plm2() -> MapDescriptor {
        MapDescriptor::pl_manneville_u64(2, 1, 1, 2).unwrap()
    }

    #[test]
    fn eval_examples() {
        let d = eval(&MapDescriptor::doubling(), &[parse_ratio("0.3").unwrap()]).unwrap();
        assert_eq!(d[0], parse_ratio("0.6").unwrap());

        // period-2 orbit of the piecewise-linear map at z=2, a=1/2
        let m = plm2();
        let y = eval(&m, &[q(1, 3)]).unwrap();
        assert_eq!(y[0], q(2, 3));
        let y2 = eval(&m, &[y[0].clone()]).unwrap();
        assert_eq!(y2[0], q(1, 3));

        let i = eval(&MapDescriptor::identity(), &[parse_ratio("0.42").unwrap()]).unwrap();
        assert_eq!(i[0], parse_ratio("0.42").unwrap());
    }

    #[test]
    fn eval_domain_error() {
        let r = eval(&MapDescriptor::doubling(), &[q(3, 2)]);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn iterate_exact_examples() {
        let orb = iterate_exact(&MapDescriptor::doubling(), &[q(1, 7)], 6).unwrap();
        let expect = [(1u64, 7u64), (2, 7), (4, 7), (1, 7), (2, 7), (4, 7), (1, 7)];
        for (p, (n, d)) in orb.iter().zip(expect.iter()) {
            assert_eq!(p[0], q(*n, *d));
        }

        let orb = iterate_exact(&plm2(), &[q(1, 3)], 2).unwrap();
        assert_eq!(orb[0][0], q(1, 3));
        assert_eq!(orb[1][0], q(2, 3));
        assert_eq!(orb[2][0], q(1, 3));

        let orb = iterate_exact(&MapDescriptor::identity(), &[q(5, 8)], 3).unwrap();
        assert_eq!(orb.len(), 4);
        assert!(orb.iter().all(|p| p[0] == q(5, 8)));

        assert!(matches!(
            iterate_exact(&MapDescriptor::rotation_golden(), &[q(1, 3)], 3),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn iterate_plm_matches_exact_oracle() {
        let orb = iterate(&plm2(), &[q(1, 3)], 4, 30).unwrap();
        assert_eq!(orb.points.len(), 5);
        let expect = [q(1, 3), q(2, 3), q(1, 3), q(2, 3), q(1, 3)];
        let tol = 2f64.powi(-30);
        for (p, e) in orb.points.iter().zip(expect.iter()) {
            let x = match p {
                OrbitPoint::One(d) => d.to_ratio(),
                _ => unreachable!(),
            };
            assert!(ratio_to_f64(&(&x - e)).abs() <= tol);
        }
    }

    #[test]
    fn iterate_identity_constant() {
        let orb = iterate(&MapDescriptor::identity(), &[q(3, 7)], 100, 20).unwrap();
        assert_eq!(orb.points.len(), 101);
        let first = orb.points[0].clone();
        assert!(orb.points.iter().all(|p| *p == first));
    }

    #[test]
    fn iterate_doubling_one_seventh() {
        let orb = iterate(&MapDescriptor::doubling(), &[q(1, 7)], 3, 20).unwrap();
        let expect = [q(1, 7), q(2, 7), q(4, 7), q(1, 7)];
        let tol = 2f64.powi(-20);
        for (p, e) in orb.points.iter().zip(expect.iter()) {
            let x = match p {
                OrbitPoint::One(d) => d.to_ratio(),
                _ => unreachable!(),
            };
            assert!(ratio_to_f64(&(&x - e)).abs() <= tol, "point {x} vs {e}");
        }
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(modulus(&MapDescriptor::doubling()).shift, 1);
        assert_eq!(modulus(&MapDescriptor::identity()).shift, 0);
        assert_eq!(modulus(&MapDescriptor::rotation_golden()).shift, 0);
        // max branch slope at z=2, a=1/2 is 3 (the k=2 branch), so shift 2
        assert_eq!(modulus(&plm2()).shift, 2);
        assert_eq!(modulus(&MapDescriptor::skew_shift()).shift, 1);
    }

    #[test]
    fn shadowing_iterate_vs_exact() {
        // random rational starts, n ≤ 1000, m ≤ 60: the dyadic path stays
        // within 2^-m of the exact oracle at every step (map metric).
        let maps = [MapDescriptor::doubling(), plm2(), MapDescriptor::identity()];
        for (mi, map) in maps.iter().enumerate() {
            let mut rng = seeding::stream(900 + mi as u64, "shadowing");
            for (n, m) in [(1000u64, 40u32), (300, 60), (100, 20)] {
                let x0 = seeding::dyadic_point(&mut rng, 50);
                let exact = iterate_exact(map, &[x0.clone()], n).unwrap();
                let approx = iterate(map, &[x0], n, m).unwrap();
                let tol = q(1, 1) / BigRational::from_integer(BigInt::one() << m);
                for (pe, pa) in exact.iter().zip(approx.points.iter()) {
                    let d = crate::map::rational_distance(
                        map.metric(),
                        &BigRational::one(),
                        pe,
                        &pa.to_ratios(),
                    );
                    assert!(d <= tol, "{}: drift {} at n={n},m={m}", map.kind_name(), d);
                }
            }
        }
    }

    #[test]
    fn shadowing_skew_shift() {
        let map = MapDescriptor::skew_shift();
        let mut rng = seeding::stream(77, "shadow-skew");
        let u = seeding::dyadic_point(&mut rng, 40);
        let v = seeding::dyadic_point(&mut rng, 40);
        let x0 = [&u * q(2, 1) - BigRational::one(), &v * q(2, 1) - BigRational::one()];
        let n = 500;
        let exact = iterate_exact(&map, &x0, n).unwrap();
        let approx = iterate(&map, &x0, n, 40).unwrap();
        let tol = q(1, 1) / BigRational::from_integer(BigInt::one() << 40);
        for (pe, pa) in exact.iter().zip(approx.points.iter()) {
            let pr = pa.to_ratios();
            let d0 = (&pe[0] - &pr[0]).abs();
            let d1 = (&pe[1] - &pr[1]).abs();
            assert!(d0 <= tol && d1 <= tol);
        }
    }

    #[test]
    fn plm_branch_images_and_monotonicity() {
        // eval maps A_k = [ξ_k, ξ_{k-1}) onto A_{k-1}, monotonically.
        let m = plm2();
        let params = PlmParams::new(&q(2, 1), &q(1, 2)).unwrap();
        for k in 1..40u64 {
            let lo = params.xi_rational(k);
            let hi = params.xi_rational_above(k);
            let img_lo = eval(&m, &[lo.clone()]).unwrap();
            assert_eq!(img_lo[0], hi, "T(ξ_k) = ξ_(k-1)");
            // near the right end of the branch the image approaches ξ_(k-2)
            let above = params.xi_rational_above(k.saturating_sub(1).max(0));
            let eps = q(1, 1_000_000_000);
            let x = &hi - &eps;
            if x > lo {
                let img = eval(&m, &[x]).unwrap();
                assert!(img[0] < above && img[0] >= hi);
            }
            // monotone increasing on the branch
            let step = (&hi - &lo) / q(5, 1);
            let mut prev: Option<BigRational> = None;
            for j in 0..5 {
                let x = &lo + &step * BigRational::from_integer(j.into());
                let y = eval(&m, &[x]).unwrap()[0].clone();
                if let Some(p) = prev {
                    assert!(y > p);
                }
                prev = Some(y);
            }
        }
    }

    #[test]
    fn fundamental_domain_closure() {
        // doubling and skew-shift land in the half-open fundamental domain
        let mut rng = seeding::stream(5, "domain");
        for _ in 0..50 {
            let x = seeding::dyadic_point(&mut rng, 40);
            let y = eval(&MapDescriptor::doubling(), &[x]).unwrap();
            assert!(y[0] >= BigRational::zero() && y[0] < BigRational::one());
        }
        for _ in 0..50 {
            let u = seeding::dyadic_point(&mut rng, 40);
            let v = seeding::dyadic_point(&mut rng, 40);
            let p = [&u * q(2, 1) - BigRational::one(), &v * q(2, 1) - BigRational::one()];
            let y = eval(&MapDescriptor::skew_shift(), &p).unwrap();
            assert!(y[0] >= -BigRational::one() && y[0] < BigRational::one());
        }
    }

    #[test]
    fn eval_maps_domain_into_domain_sampled() {
        let maps = [
            MapDescriptor::identity(),
            MapDescriptor::doubling(),
            MapDescriptor::rotation_golden(),
            plm2(),
        ];
        let mut rng = seeding::stream(6, "into-domain");
        for map in &maps {
            for _ in 0..40 {
                let x = seeding::dyadic_point(&mut rng, 40);
                let y = eval(map, &[x]).unwrap();
                assert!(map.contains(&y), "{} left the domain", map.kind_name());
            }
        }
        // irrational-breakpoint kind via the error-bounded path
        let m3 = MapDescriptor::pl_manneville_u64(3, 1, 1, 2).unwrap();
        for _ in 0..20 {
            let x = seeding::dyadic_point(&mut rng, 40);
            let orb = iterate(&m3, &[x], 1, 40).unwrap();
            let y = orb.points[1].to_ratios();
            assert!(
                y[0] >= -q(1, 1 << 30) && y[0] <= BigRational::one() + q(1, 1 << 30),
                "z=3 step left the domain: {}",
                y[0]
            );
        }
    }

    #[test]
    fn plm_z3_long_orbit_stays_guaranteed() {
        // irrational breakpoints: the dyadic excursion path over 20k steps
        let m3 = MapDescriptor::pl_manneville_u64(3, 1, 1, 2).unwrap();
        let mut rng = seeding::stream(41, "plm3");
        let x0 = seeding::dyadic_point(&mut rng, 60);
        let orb = iterate(&m3, &[x0], 20_000, 24).unwrap();
        assert_eq!(orb.points.len(), 20_001);
        for p in &orb.points {
            let v = p.to_f64s()[0];
            assert!((-1e-6..=1.0 + 1e-6).contains(&v));
        }
    }

    #[test]
    fn iterate_guards() {
        assert!(matches!(
            iterate(&MapDescriptor::identity(), &[q(1, 2)], 0, 10),
            Err(Error::Usage(_))
        ));
        // precision hard cap → resource error
        let r = iterate(&MapDescriptor::doubling(), &[q(1, 3)], (1 << 23) as u64, 10);
        assert!(matches!(r, Err(Error::Resource(_))));
    }

    #[test]
    fn smooth_manneville_short_orbit() {
        let m = MapDescriptor::smooth_manneville(q(2, 1)).unwrap();
        let orb = iterate(&m, &[q(1, 3)], 50, 30).unwrap();
        // x + x^2 mod 1 from 1/3: 1/3 + 1/9 = 4/9, then 4/9 + 16/81 = 52/81 …
        let expect1 = q(4, 9);
        let expect2 = q(52, 81);
        let tol = 2f64.powi(-28);
        let x1 = orb.points[1].to_ratios()[0].clone();
        let x2 = orb.points[2].to_ratios()[0].clone();
        assert!(ratio_to_f64(&(&x1 - &expect1)).abs() < tol);
        assert!(ratio_to_f64(&(&x2 - &expect2)).abs() < tol);
        assert!(matches!(modulus(&m), Modulus { shift: 2 }));
    }
}
