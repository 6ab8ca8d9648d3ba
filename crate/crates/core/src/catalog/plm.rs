//! Piecewise-linear intermittent map: breakpoints, branch lookup and the
//! excursion-structured orbit engine.
//!
//! The map has countably many affine branches A_k = [ξ_k, ξ_{k-1}) with
//! ξ_k = a/(k+1)^(1/(z-1)) and ξ_{-1} := 1, each mapped onto A_{k-1}; the
//! rightmost branch [a,1] maps affinely onto [0,1]. A point is represented by
//! its branch index and its relative coordinate u inside the branch. The
//! relative coordinate is invariant during the descent A_k → A_{k-1} → …,
//! and one reinjection step maps (0, u) to the branch/coordinate pair of u
//! itself, so the only arithmetic happens once per excursion.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::num::{inv_root_mantissa, ratio_to_f64, Dyadic, UpBound};

/// Branch indices past this cap raise a precision error: the region
/// [0, ξ_cap) is treated as absorbing rather than silently mis-branched.
pub const BRANCH_TRUNCATION_CAP: u64 = 1 << 53;

/// Working precision above this cap raises a resource error.
pub const PRECISION_HARD_CAP: u32 = 1 << 22;

#[derive(Debug, Clone)]
pub struct PlmParams {
    pub a: BigRational,
    pub z: BigRational,
    /// β = 1/(z-1) = q/(p-q) for z = p/q in lowest terms.
    pub beta_num: u32, // q
    pub beta_den: u32, // p - q
}

impl PlmParams {
    pub fn new(z: &BigRational, a: &BigRational) -> Result<Self> {
        let z = z.reduced();
        let p = z.numer();
        let q = z.denom();
        let (p, q) = (
            p.to_u64().ok_or_else(|| Error::Capability("z numerator too large".into()))?,
            q.to_u64().ok_or_else(|| Error::Capability("z denominator too large".into()))?,
        );
        if q > 64 || p > 1024 {
            return Err(Error::Capability(
                "PLManneville guaranteed-precision path needs z = p/q with p ≤ 1024, q ≤ 64"
                    .into(),
            ));
        }
        if p < 2 * q {
            return Err(Error::Domain("PLManneville requires z ≥ 2".into()));
        }
        Ok(PlmParams {
            a: a.clone(),
            z: z.clone(),
            beta_num: q as u32,
            beta_den: (p - q) as u32,
        })
    }

    /// True exactly when the breakpoints are rational (β = 1, i.e. z = 2).
    pub fn is_rational(&self) -> bool {
        self.beta_num == self.beta_den
    }

    /// ξ_k as an exact rational; only valid when `is_rational()`.
    pub fn xi_rational(&self, k: u64) -> BigRational {
        debug_assert!(self.is_rational());
        let mut kp = BigUint::from(k) + BigUint::one();
        if self.beta_num > 1 {
            kp = kp.pow(self.beta_num);
            kp = kp.nth_root(self.beta_den);
        }
        &self.a / BigRational::from_integer(BigInt::from(kp))
    }

    /// ξ_{k-1} with the ξ_{-1} := 1 convention.
    pub fn xi_rational_above(&self, k: u64) -> BigRational {
        if k == 0 {
            BigRational::one()
        } else {
            self.xi_rational(k - 1)
        }
    }

    /// ξ_k ≈ mant·2^-prec with |error| ≤ 3·2^-prec, for any rational z ≥ 2.
    pub fn xi_dyadic(&self, k: u64, prec: u32) -> Dyadic {
        if k == 0 {
            // ξ_0 = a exactly (k+1 = 1).
            return Dyadic::from_ratio(&self.a, prec);
        }
        let kp = BigUint::from(k) + BigUint::one();
        let base = kp.pow(self.beta_num);
        let root = inv_root_mantissa(&base, self.beta_den, prec);
        // multiply by a = c/d, flooring at prec bits
        let c = self.a.numer().magnitude();
        let d = self.a.denom().magnitude();
        let mant = root * c / d;
        Dyadic::new(BigInt::from(mant), -(prec as i64))
    }

    /// ξ_{k-1} at dyadic precision, honoring ξ_{-1} := 1.
    pub fn xi_dyadic_above(&self, k: u64, prec: u32) -> Dyadic {
        if k == 0 {
            Dyadic::one()
        } else {
            self.xi_dyadic(k - 1, prec)
        }
    }

    /// f64 approximation of ξ_k (for guesses and prepasses only).
    pub fn xi_f64(&self, k: f64) -> f64 {
        let a = ratio_to_f64(&self.a);
        let beta = self.beta_num as f64 / self.beta_den as f64;
        a * (k + 1.0).powf(-beta)
    }

    /// Branch index guess for value u (f64 only; must be verified).
    pub fn branch_guess_f64(&self, u: f64) -> u64 {
        let a = ratio_to_f64(&self.a);
        if u >= a {
            return 0;
        }
        if u <= 0.0 {
            return BRANCH_TRUNCATION_CAP;
        }
        let inv_beta = self.beta_den as f64 / self.beta_num as f64;
        let k = (a / u).powf(inv_beta) - 1.0;
        if k >= BRANCH_TRUNCATION_CAP as f64 {
            BRANCH_TRUNCATION_CAP
        } else {
            k.max(0.0).floor() as u64
        }
    }

    /// Exact branch index of a rational u ∈ (0, 1]: the k with ξ_k ≤ u < ξ_{k-1}.
    pub fn branch_rational(&self, u: &BigRational) -> Result<u64> {
        debug_assert!(self.is_rational());
        if u >= &self.a {
            return Ok(0);
        }
        if u.is_zero() || u.is_negative() {
            return Err(Error::Domain("branch lookup needs u ∈ (0, 1]".into()));
        }
        // ξ_k ≤ u  ⟺  k+1 ≥ a/u; the smallest such k is ceil(a/u) - 1.
        let q = (&self.a / u).ceil().to_integer();
        let k = (&q - BigInt::one())
            .to_u64()
            .ok_or_else(|| Error::Precision("branch index overflow".into()))?;
        if k > BRANCH_TRUNCATION_CAP {
            return Err(Error::Precision(format!(
                "point in truncated branch region (branch {k} beyond cap)"
            )));
        }
        Ok(k)
    }

    /// Largest branch slope over all branches, as an f64 upper estimate.
    /// Slopes decrease toward 1 as the branch index grows, so sampling the
    /// low branches plus the rightmost branch covers the supremum.
    pub fn max_slope_f64(&self) -> f64 {
        let a = ratio_to_f64(&self.a);
        let mut best = 1.0 / (1.0 - a); // rightmost branch
        let mut prev = self.xi_f64(0.0); // ξ_0
        let mut above = 1.0; // ξ_{-1}
        for k in 1..4096u64 {
            let cur = self.xi_f64(k as f64); // ξ_k
            let slope = (above - prev) / (prev - cur);
            if slope > best {
                best = slope;
            }
            above = prev;
            prev = cur;
        }
        best
    }
}

/// One verified branch decision for a dyadic value.
pub enum BranchLookup {
    /// u lies in branch k with margin; ξ_k and ξ_{k-1} at the working precision.
    Ok { k: u64, xi_lo: Dyadic, xi_hi: Dyadic },
    /// u is within the error budget of a breakpoint: the caller must escalate.
    Ambiguous,
}

/// Locate the branch of `u` (dyadic, error ≤ err) using precision-`prec`
/// breakpoints. Detects decisions that the error budget cannot support.
pub fn branch_dyadic(
    params: &PlmParams,
    u: &Dyadic,
    err: &UpBound,
    prec: u32,
) -> Result<BranchLookup> {
    let margin = err.add(&UpBound::pow2(3 - prec as i64));
    let guess = params.branch_guess_f64(u.to_f64());
    if guess >= BRANCH_TRUNCATION_CAP {
        return Err(Error::Precision(
            "point in truncated branch region (beyond branch cap)".into(),
        ));
    }
    let mut k = guess;
    // Walk to the true bracket; the f64 guess is off by at most a few indices.
    for _ in 0..128 {
        let xi_lo = params.xi_dyadic(k, prec);
        let xi_hi = params.xi_dyadic_above(k, prec);
        let below = u.cmp_val(&xi_lo);
        let above = u.cmp_val(&xi_hi);
        if below != std::cmp::Ordering::Less && above == std::cmp::Ordering::Less {
            // Inside [ξ_k, ξ_{k-1}); check the margin against both endpoints.
            let d_lo = u.sub(&xi_lo).to_f64().abs();
            let d_hi = xi_hi.sub(u).to_f64().abs();
            let m = margin.to_f64();
            if d_lo < m || d_hi < m {
                return Ok(BranchLookup::Ambiguous);
            }
            return Ok(BranchLookup::Ok { k, xi_lo, xi_hi });
        }
        if below == std::cmp::Ordering::Less {
            k += 1;
            if k > BRANCH_TRUNCATION_CAP {
                return Err(Error::Precision(
                    "point in truncated branch region (beyond branch cap)".into(),
                ));
            }
        } else {
            if k == 0 {
                return Err(Error::Domain("branch lookup above domain".into()));
            }
            k -= 1;
        }
    }
    Ok(BranchLookup::Ambiguous)
}

/// floor((a/b)·2^prec)·2^-prec for positive dyadics a ≤ b.
pub fn div_dyadic_floor(a: &Dyadic, b: &Dyadic, prec: u32) -> Dyadic {
    debug_assert!(!a.is_negative() && !b.is_negative() && !b.is_zero());
    // a = am·2^ae, b = bm·2^be: a/b·2^prec = am·2^(ae-be+prec)/bm
    let shift = a.exp - b.exp + prec as i64;
    let (num, den) = if shift >= 0 {
        (a.mant.clone() << shift as u64, b.mant.clone())
    } else {
        (a.mant.clone(), b.mant.clone() << (-shift) as u64)
    };
    Dyadic::new(num / den, -(prec as i64))
}

/// Exact-rational excursion state for the z = 2 map.
pub struct PlmExactIter {
    params: PlmParams,
    /// Current branch (None: at the fixed point 0 or 1).
    state: ExactState,
}

enum ExactState {
    Fixed(BigRational),
    Branch { k: u64, u: BigRational },
}

impl PlmExactIter {
    pub fn start(params: PlmParams, x0: &BigRational) -> Result<Self> {
        if x0 < &BigRational::zero() || x0 > &BigRational::one() {
            return Err(Error::Domain("PLManneville point outside [0,1]".into()));
        }
        if x0.is_zero() || x0.is_one() {
            return Ok(PlmExactIter { params, state: ExactState::Fixed(x0.clone()) });
        }
        let k = params.branch_rational(x0)?;
        let xi_lo = params.xi_rational(k);
        let xi_hi = params.xi_rational_above(k);
        let u = (x0 - &xi_lo) / (&xi_hi - &xi_lo);
        Ok(PlmExactIter { params, state: ExactState::Branch { k, u } })
    }

    /// Current point as an exact rational.
    pub fn point(&self) -> BigRational {
        match &self.state {
            ExactState::Fixed(x) => x.clone(),
            ExactState::Branch { k, u } => {
                let xi_lo = self.params.xi_rational(*k);
                let xi_hi = self.params.xi_rational_above(*k);
                &xi_lo + u * (&xi_hi - &xi_lo)
            }
        }
    }

    /// Advance one step of the map.
    pub fn step(&mut self) -> Result<()> {
        match &mut self.state {
            ExactState::Fixed(_) => Ok(()),
            ExactState::Branch { k, u } => {
                if *k > 0 {
                    *k -= 1;
                    return Ok(());
                }
                // Reinjection: the image of (0, u) is the point u itself.
                let y = u.clone();
                if y.is_zero() || y.is_one() {
                    self.state = ExactState::Fixed(y);
                    return Ok(());
                }
                let k2 = self.params.branch_rational(&y)?;
                let xi_lo = self.params.xi_rational(k2);
                let xi_hi = self.params.xi_rational_above(k2);
                let u2 = (&y - &xi_lo) / (&xi_hi - &xi_lo);
                self.state = ExactState::Branch { k: k2, u: u2 };
                Ok(())
            }
        }
    }
}

/// Dyadic excursion state with an explicit error ledger, for irrational
/// breakpoints (z ≠ 2). Working precision is fixed per instance; the caller
/// escalates and retries when a step reports ledger exhaustion.
pub struct PlmDyadicIter {
    pub params: PlmParams,
    prec: u32,
    state: DyadicState,
    /// Upper bound on |u_stored - u_true|.
    pub err: UpBound,
}

enum DyadicState {
    Fixed(Dyadic),
    Branch { k: u64, u: Dyadic },
}

impl PlmDyadicIter {
    pub fn start(params: PlmParams, x0: &BigRational, prec: u32) -> Result<Self> {
        if prec > PRECISION_HARD_CAP {
            return Err(Error::Resource(format!(
                "requested working precision {prec} exceeds hard cap {PRECISION_HARD_CAP}"
            )));
        }
        if x0 < &BigRational::zero() || x0 > &BigRational::one() {
            return Err(Error::Domain("PLManneville point outside [0,1]".into()));
        }
        if x0.is_zero() || x0.is_one() {
            let x = Dyadic::from_ratio(x0, prec);
            return Ok(PlmDyadicIter {
                params,
                prec,
                state: DyadicState::Fixed(x),
                err: UpBound::zero(),
            });
        }
        let x = Dyadic::from_ratio(x0, prec);
        let err = UpBound::pow2(-(prec as i64) - 1);
        match branch_dyadic(&params, &x, &err, prec)? {
            BranchLookup::Ambiguous => Err(Error::Precision(
                "start point too close to a branch boundary at this precision".into(),
            )),
            BranchLookup::Ok { k, xi_lo, xi_hi } => {
                let width = xi_hi.sub(&xi_lo);
                let u = div_dyadic_floor(&x.sub(&xi_lo), &width, prec);
                // |Δu| ≤ (err_x + err_ξ)/w + rounding
                let inv_w = UpBound::from_f64(1.0 / width.to_f64());
                let e = err
                    .add(&UpBound::pow2(3 - prec as i64))
                    .mul(&inv_w)
                    .add(&UpBound::pow2(-(prec as i64)));
                Ok(PlmDyadicIter { params, prec, state: DyadicState::Branch { k, u }, err: e })
            }
        }
    }

    /// Relative coordinate in the current branch (or the fixed-point value).
    pub fn u_value(&self) -> Dyadic {
        match &self.state {
            DyadicState::Fixed(x) => x.clone(),
            DyadicState::Branch { u, .. } => u.clone(),
        }
    }

    pub fn branch(&self) -> Option<u64> {
        match &self.state {
            DyadicState::Fixed(_) => None,
            DyadicState::Branch { k, .. } => Some(*k),
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Advance one step. Descent costs nothing: the relative coordinate is
    /// invariant. `Ok(false)` means the error ledger can no longer support a
    /// branch decision: retry the whole orbit at higher precision.
    pub fn step(&mut self) -> Result<bool> {
        let prec = self.prec;
        match &mut self.state {
            DyadicState::Fixed(_) => Ok(true),
            DyadicState::Branch { k, u } => {
                if *k > 0 {
                    *k -= 1;
                    return Ok(true);
                }
                // Reinjection from the rightmost branch: image is u itself.
                let y = u.clone();
                let y_err = self.err;
                if y.is_zero() {
                    self.state = DyadicState::Fixed(y);
                    return Ok(true);
                }
                match branch_dyadic(&self.params, &y, &y_err, prec)? {
                    BranchLookup::Ambiguous => Ok(false),
                    BranchLookup::Ok { k: k2, xi_lo: lo2, xi_hi: hi2 } => {
                        let width = hi2.sub(&lo2);
                        let u2 = div_dyadic_floor(&y.sub(&lo2), &width, prec);
                        let inv_w = UpBound::from_f64(1.0 / width.to_f64());
                        self.err = y_err
                            .add(&UpBound::pow2(3 - prec as i64))
                            .mul(&inv_w)
                            .add(&UpBound::pow2(-(prec as i64)));
                        self.state = DyadicState::Branch { k: k2, u: u2 };
                        Ok(true)
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::ratio_from_u64;

    fn plm2() -> PlmParams {
        PlmParams::new(&ratio_from_u64(2, 1), &ratio_from_u64(1, 2)).unwrap()
    }

    #[test]
    fn breakpoints_z2() {
        let p = plm2();
        assert!(p.is_rational());
        assert_eq!(p.xi_rational(0), ratio_from_u64(1, 2));
        assert_eq!(p.xi_rational(1), ratio_from_u64(1, 4));
        assert_eq!(p.xi_rational(9), ratio_from_u64(1, 20));
        assert_eq!(p.xi_rational_above(0), BigRational::one());
    }

    #[test]
    fn breakpoints_decrease_to_zero() {
        let p = PlmParams::new(&ratio_from_u64(3, 1), &ratio_from_u64(1, 2)).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..200 {
            let xi = p.xi_dyadic(k, 80).to_f64();
            assert!(xi < prev, "ξ must be strictly decreasing");
            let expect = 0.5 / ((k + 1) as f64).sqrt();
            assert!((xi - expect).abs() < 1e-12, "k={k}: {xi} vs {expect}");
            prev = xi;
        }
    }

    #[test]
    fn exact_period_two_orbit() {
        // x = 1/3 maps to 2/3 and back.
        let p = plm2();
        let mut it = PlmExactIter::start(p, &ratio_from_u64(1, 3)).unwrap();
        assert_eq!(it.point(), ratio_from_u64(1, 3));
        it.step().unwrap();
        assert_eq!(it.point(), ratio_from_u64(2, 3));
        it.step().unwrap();
        assert_eq!(it.point(), ratio_from_u64(1, 3));
    }

    #[test]
    fn branch_lookup_matches_rational() {
        let p3 = PlmParams::new(&ratio_from_u64(3, 1), &ratio_from_u64(1, 2)).unwrap();
        for num in 1..100u64 {
            let u = ratio_from_u64(num, 101);
            let ud = Dyadic::from_ratio(&u, 90);
            match branch_dyadic(&p3, &ud, &UpBound::pow2(-88), 90).unwrap() {
                BranchLookup::Ok { k, xi_lo, xi_hi } => {
                    let uf = ratio_to_f64(&u);
                    assert!(xi_lo.to_f64() <= uf && uf < xi_hi.to_f64() + 1e-15);
                    let expect = p3.branch_guess_f64(uf);
                    assert!(k.abs_diff(expect) <= 1, "guess {expect} vs verified {k}");
                }
                BranchLookup::Ambiguous => panic!("unexpected ambiguity for {u}"),
            }
        }
    }

    #[test]
    fn dyadic_iter_tracks_exact_for_z2() {
        // z = 2 admits both paths; they must agree within the ledger.
        let p = plm2();
        let mut exact = PlmExactIter::start(p.clone(), &ratio_from_u64(13, 97)).unwrap();
        let mut dy = PlmDyadicIter::start(p.clone(), &ratio_from_u64(13, 97), 2048).unwrap();
        for _ in 0..400 {
            let xd = match dy.branch() {
                None => dy.u_value(),
                Some(k) => {
                    let lo = p.xi_dyadic(k, 2048);
                    let hi = p.xi_dyadic_above(k, 2048);
                    lo.add(&dy.u_value().mul(&hi.sub(&lo)))
                }
            };
            let xe = exact.point();
            let diff = (xd.to_ratio() - &xe).abs();
            let bound = (dy.err.to_f64() + 2.0 * f64_guard()).max(1e-40);
            assert!(
                ratio_to_f64(&diff) <= bound,
                "dyadic drifted beyond ledger: {} > {}",
                ratio_to_f64(&diff),
                bound
            );
            exact.step().unwrap();
            assert!(dy.step().unwrap());
        }
    }

    fn f64_guard() -> f64 {
        2f64.powi(-150)
    }
}
