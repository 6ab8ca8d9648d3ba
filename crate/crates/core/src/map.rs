//! Map descriptors: the example dynamical systems, their domains and metrics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::num::{parse_ratio, ratio_from_u64};

/// Numerator of the default rotation angle: floor(((√5-1)/2) · 2^60).
/// The angle is meant to stand in for an irrational rotation; at 60 dyadic
/// bits no orbit of the lengths used here can see the difference.
pub const GOLDEN_T_NUM: u64 = 712_544_676_207_699_905;
pub const GOLDEN_T_EXP: u32 = 60;

/// Distance used on a map's domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    /// |x - y| on an interval.
    Interval,
    /// min(|x-y|, period - |x-y|): translation-invariant distance for maps
    /// that act modulo the period.
    Circle,
    /// max over coordinates of the per-coordinate interval distance.
    MaxCoord,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    Identity,
    Rotation { t: BigRational },
    Doubling,
    PlManneville { z: BigRational, a: BigRational },
    SmoothManneville { z: BigRational },
    SkewShift2D,
}

/// A closed description of one dynamical system.
#[derive(Debug, Clone, PartialEq)]
pub struct MapDescriptor {
    pub kind: MapKind,
}

impl MapDescriptor {
    pub fn identity() -> Self {
        MapDescriptor { kind: MapKind::Identity }
    }

    pub fn doubling() -> Self {
        MapDescriptor { kind: MapKind::Doubling }
    }

    pub fn rotation_golden() -> Self {
        MapDescriptor {
            kind: MapKind::Rotation {
                t: BigRational::new(BigInt::from(GOLDEN_T_NUM), BigInt::one() << GOLDEN_T_EXP),
            },
        }
    }

    pub fn rotation(t: BigRational) -> Result<Self> {
        if t <= BigRational::zero() || t >= BigRational::one() {
            return Err(Error::Domain("rotation angle t must satisfy 0 < t < 1".into()));
        }
        Ok(MapDescriptor { kind: MapKind::Rotation { t } })
    }

    pub fn pl_manneville(z: BigRational, a: BigRational) -> Result<Self> {
        if z < BigRational::from_integer(2.into()) {
            return Err(Error::Domain("PLManneville requires z ≥ 2".into()));
        }
        if a <= BigRational::zero() || a >= BigRational::one() {
            return Err(Error::Domain("PLManneville requires a ∈ (0,1)".into()));
        }
        Ok(MapDescriptor { kind: MapKind::PlManneville { z, a } })
    }

    pub fn pl_manneville_u64(z_num: u64, z_den: u64, a_num: u64, a_den: u64) -> Result<Self> {
        Self::pl_manneville(ratio_from_u64(z_num, z_den), ratio_from_u64(a_num, a_den))
    }

    pub fn smooth_manneville(z: BigRational) -> Result<Self> {
        if z < BigRational::from_integer(2.into()) {
            return Err(Error::Domain("SmoothManneville requires z ≥ 2".into()));
        }
        Ok(MapDescriptor { kind: MapKind::SmoothManneville { z } })
    }

    pub fn skew_shift() -> Self {
        MapDescriptor { kind: MapKind::SkewShift2D }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            MapKind::SkewShift2D => 2,
            _ => 1,
        }
    }

    /// Lower corner of the domain (0 in 1D, -1 per axis in 2D).
    pub fn domain_lo(&self) -> BigRational {
        match self.kind {
            MapKind::SkewShift2D => -BigRational::one(),
            _ => BigRational::zero(),
        }
    }

    /// Upper corner of the domain.
    pub fn domain_hi(&self) -> BigRational {
        BigRational::one()
    }

    /// Side length of the domain per axis.
    pub fn domain_width(&self) -> BigRational {
        self.domain_hi() - self.domain_lo()
    }

    /// Diameter under the map's metric.
    pub fn diameter(&self) -> BigRational {
        match self.metric() {
            Metric::Circle => self.domain_width() / BigRational::from_integer(2.into()),
            _ => self.domain_width(),
        }
    }

    pub fn metric(&self) -> Metric {
        match self.kind {
            MapKind::Identity | MapKind::PlManneville { .. } | MapKind::SmoothManneville { .. } => {
                Metric::Interval
            }
            // Doubling and the rotation act modulo 1; the translation-invariant
            // distance is the one under which the rotation is an isometry.
            MapKind::Doubling | MapKind::Rotation { .. } => Metric::Circle,
            MapKind::SkewShift2D => Metric::MaxCoord,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            MapKind::Identity => "Identity",
            MapKind::Rotation { .. } => "Rotation",
            MapKind::Doubling => "Doubling",
            MapKind::PlManneville { .. } => "PLManneville",
            MapKind::SmoothManneville { .. } => "SmoothManneville",
            MapKind::SkewShift2D => "SkewShift2D",
        }
    }

    pub fn contains(&self, p: &[BigRational]) -> bool {
        if p.len() != self.dimension() {
            return false;
        }
        let lo = self.domain_lo();
        let hi = self.domain_hi();
        p.iter().all(|c| *c >= lo && *c <= hi)
    }
}

fn ratio_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for MapDescriptor {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde_json::{json, Value};
        let params: Value = match &self.kind {
            MapKind::Identity | MapKind::Doubling | MapKind::SkewShift2D => json!({}),
            MapKind::Rotation { t } => json!({ "t": ratio_to_string(t) }),
            MapKind::PlManneville { z, a } => {
                json!({ "z": ratio_to_string(z), "a": ratio_to_string(a) })
            }
            MapKind::SmoothManneville { z } => json!({ "z": ratio_to_string(z) }),
        };
        let doc = json!({ "kind": self.kind_name(), "params": params });
        doc.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MapDescriptor {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let doc = serde_json::Value::deserialize(de)?;
        map_from_value(&doc).map_err(D::Error::custom)
    }
}

fn param_ratio(params: &serde_json::Value, name: &str) -> Result<Option<BigRational>> {
    match params.get(name) {
        None | Some(serde_json::Value::Null) => Ok(None),
        Some(serde_json::Value::String(s)) => Ok(Some(parse_ratio(s)?)),
        Some(serde_json::Value::Number(n)) => {
            let f = n.as_f64().ok_or_else(|| Error::Usage(format!("bad number for {name}")))?;
            BigRational::from_float(f)
                .map(Some)
                .ok_or_else(|| Error::Usage(format!("non-finite number for {name}")))
        }
        Some(v) => Err(Error::Usage(format!("parameter {name} has unsupported type: {v}"))),
    }
}

pub fn map_from_value(doc: &serde_json::Value) -> Result<MapDescriptor> {
    let kind = doc
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::Usage("map descriptor needs a \"kind\" string".into()))?;
    let empty = serde_json::json!({});
    let params = doc.get("params").unwrap_or(&empty);
    match kind {
        "Identity" => Ok(MapDescriptor::identity()),
        "Doubling" => Ok(MapDescriptor::doubling()),
        "SkewShift2D" => Ok(MapDescriptor::skew_shift()),
        "Rotation" => match param_ratio(params, "t")? {
            Some(t) => MapDescriptor::rotation(t),
            None => Ok(MapDescriptor::rotation_golden()),
        },
        "PLManneville" => {
            let z = param_ratio(params, "z")?
                .ok_or_else(|| Error::Usage("PLManneville needs parameter z (z ≥ 2)".into()))?;
            let a = param_ratio(params, "a")?.unwrap_or_else(|| ratio_from_u64(1, 2));
            MapDescriptor::pl_manneville(z, a)
        }
        "SmoothManneville" => {
            let z = param_ratio(params, "z")?
                .ok_or_else(|| Error::Usage("SmoothManneville needs parameter z (z ≥ 2)".into()))?;
            MapDescriptor::smooth_manneville(z)
        }
        other => Err(Error::Usage(format!("unknown map kind {other:?}"))),
    }
}

/// Distance between two points under a metric, in exact rational arithmetic.
/// `period` is the domain width (1 in 1D, 2 per axis in 2D).
pub fn rational_distance(
    metric: Metric,
    period: &BigRational,
    x: &[BigRational],
    y: &[BigRational],
) -> BigRational {
    match metric {
        Metric::Interval => (&x[0] - &y[0]).abs(),
        Metric::Circle => {
            let d = (&x[0] - &y[0]).abs();
            let wrap = period - &d;
            if d < wrap {
                d
            } else {
                wrap
            }
        }
        Metric::MaxCoord => {
            let dx = (&x[0] - &y[0]).abs();
            let dy = (&x[1] - &y[1]).abs();
            if dx > dy {
                dx
            } else {
                dy
            }
        }
    }
}

/// f64 distance for the coarse-scale modules (dimension estimation).
pub fn f64_distance(metric: Metric, period: f64, x: &[f64], y: &[f64]) -> f64 {
    match metric {
        Metric::Interval => (x[0] - y[0]).abs(),
        Metric::Circle => {
            let d = (x[0] - y[0]).abs();
            d.min(period - d)
        }
        Metric::MaxCoord => (x[0] - y[0]).abs().max((x[1] - y[1]).abs()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;


    #[test]
    fn golden_angle_is_sqrt5_truncation() {
        // floor(((√5-1)/2)·2^60) = isqrt(5·2^118) - 2^59
        let v: BigUint = BigUint::from(5u32) << 118;
        let s = v.sqrt();
        let expect = s - (BigUint::from(1u32) << 59);
        assert_eq!(expect, BigUint::from(GOLDEN_T_NUM));
    }

    #[test]
    fn serde_roundtrip() {
        let m = MapDescriptor::pl_manneville_u64(3, 1, 1, 2).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"kind\":\"PLManneville\""));
        let back: MapDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);

        let r = MapDescriptor::rotation_golden();
        let s = serde_json::to_string(&r).unwrap();
        let back: MapDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(r, back);
    }

    #[test]
    fn z_constraint_enforced() {
        let err = MapDescriptor::pl_manneville(ratio_from_u64(3, 2), ratio_from_u64(1, 2));
        match err {
            Err(Error::Domain(msg)) => assert!(msg.contains("z ≥ 2")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn metric_values() {
        let p1 = BigRational::from_integer(1.into());
        let a = [ratio_from_u64(1, 10)];
        let b = [ratio_from_u64(9, 10)];
        assert_eq!(rational_distance(Metric::Interval, &p1, &a, &b), ratio_from_u64(8, 10));
        assert_eq!(rational_distance(Metric::Circle, &p1, &a, &b), ratio_from_u64(2, 10));
        assert_eq!(f64_distance(Metric::MaxCoord, 2.0, &[0.0, 0.5], &[0.25, -0.25]), 0.75);
        let _ = crate::num::ratio_to_f64(&ratio_from_u64(1, 3));
    }
}
