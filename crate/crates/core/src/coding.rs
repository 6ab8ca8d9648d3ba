//! Orbit → symbol string codings: open-cover coding and ε-grid quantization.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::catalog::{Orbit, OrbitPoint};
use crate::error::{Error, Result};
use crate::map::{rational_distance, MapDescriptor, Metric};

/// An open ball of the cover (center, rational radius).
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<BigRational>,
    pub radius: BigRational,
}

/// A finite ordered open cover of a map's domain.
#[derive(Debug, Clone)]
pub struct Cover {
    pub elements: Vec<Ball>,
    pub metric: Metric,
    pub dim: usize,
    pub domain_lo: BigRational,
    pub domain_hi: BigRational,
}

impl Cover {
    pub fn alphabet_size(&self) -> u32 {
        self.elements.len() as u32
    }

    /// Cover made of the given 1D balls over [0,1] with the map's metric.
    pub fn new_1d(map: &MapDescriptor, balls: Vec<(BigRational, BigRational)>) -> Cover {
        Cover {
            elements: balls
                .into_iter()
                .map(|(c, r)| Ball { center: vec![c], radius: r })
                .collect(),
            metric: map.metric(),
            dim: 1,
            domain_lo: map.domain_lo(),
            domain_hi: map.domain_hi(),
        }
    }

    /// The two-ball cover realizing the binary partition {[0,1/2), [1/2,1)}.
    pub fn binary_partition(map: &MapDescriptor) -> Cover {
        let q = |n: u64, d: u64| crate::num::ratio_from_u64(n, d);
        Cover::new_1d(map, vec![(q(1, 4), q(1, 4)), (q(3, 4), q(1, 4))])
    }

    /// Check that the union of elements covers the domain, on a dense grid of
    /// spacing min-radius/4. Exact membership; intended for test-sized covers.
    pub fn verify(&self) -> bool {
        let min_r = match self.elements.iter().map(|b| &b.radius).min() {
            Some(r) => r.clone(),
            None => return false,
        };
        let step = min_r / BigRational::from_integer(4.into());
        let width = &self.domain_hi - &self.domain_lo;
        let steps = (width / &step).ceil().to_integer().to_u64().unwrap_or(0);
        let grid = |j: u64| &self.domain_lo + BigRational::from_integer(j.into()) * &step;
        let period = BigRational::one();
        if self.dim == 1 {
            for j in 0..=steps {
                let p = [grid(j).min(self.domain_hi.clone())];
                let covered = self.elements.iter().any(|b| {
                    rational_distance(self.metric, &period, &p, &b.center) < b.radius
                });
                if !covered {
                    return false;
                }
            }
            true
        } else {
            for j in 0..=steps {
                for l in 0..=steps {
                    let p = [
                        grid(j).min(self.domain_hi.clone()),
                        grid(l).min(self.domain_hi.clone()),
                    ];
                    let covered = self.elements.iter().any(|b| {
                        rational_distance(self.metric, &period, &p, &b.center) < b.radius
                    });
                    if !covered {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Where a symbol string came from (kept for reproducibility of outputs).
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Cover { elements: usize },
    Quantization { epsilon: String },
    External,
}

/// Finite string over {0..alphabet_size-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolSequence {
    pub symbols: Vec<u32>,
    pub alphabet_size: u32,
    pub provenance: Provenance,
}

impl SymbolSequence {
    pub fn from_symbols(symbols: Vec<u32>, alphabet_size: u32) -> SymbolSequence {
        debug_assert!(symbols.iter().all(|&s| s < alphabet_size));
        SymbolSequence { symbols, alphabet_size, provenance: Provenance::External }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn prefix(&self, n: usize) -> SymbolSequence {
        SymbolSequence {
            symbols: self.symbols[..n.min(self.symbols.len())].to_vec(),
            alphabet_size: self.alphabet_size,
            provenance: self.provenance.clone(),
        }
    }

    /// One-line text form: digit string for alphabets ≤ 10, else
    /// comma-separated integers.
    pub fn to_text(&self) -> String {
        if self.alphabet_size <= 10 {
            self.symbols.iter().map(|s| char::from(b'0' + *s as u8)).collect()
        } else {
            self.symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
        }
    }

    pub fn parse_text(line: &str, alphabet_size: u32) -> Result<SymbolSequence> {
        let line = line.trim();
        let symbols: Vec<u32> = if line.contains(',') {
            line.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Usage(format!("bad symbol: {e}")))?
        } else {
            line.bytes()
                .map(|b| {
                    if b.is_ascii_digit() {
                        Ok((b - b'0') as u32)
                    } else {
                        Err(Error::Usage(format!("bad symbol char {:?}", b as char)))
                    }
                })
                .collect::<Result<_>>()?
        };
        if let Some(&bad) = symbols.iter().find(|&&s| s >= alphabet_size) {
            return Err(Error::Usage(format!("symbol {bad} ≥ alphabet {alphabet_size}")));
        }
        Ok(SymbolSequence { symbols, alphabet_size, provenance: Provenance::External })
    }
}

/// Code an orbit through an open cover: lowest index whose ball contains the
/// point with the orbit's error budget subtracted from the radius.
pub fn symbolic_orbit(orbit: &Orbit, cover: &Cover) -> Result<SymbolSequence> {
    let err = BigRational::new(BigInt::one(), BigInt::one() << orbit.error_exponent as u64);
    let period = BigRational::one();
    let mut symbols = Vec::with_capacity(orbit.points.len());
    for (step, p) in orbit.points.iter().enumerate() {
        let coords = p.to_ratios();
        let mut found = None;
        for (i, ball) in cover.elements.iter().enumerate() {
            let margin = &ball.radius - &err;
            if margin <= BigRational::zero() {
                continue;
            }
            if rational_distance(cover.metric, &period, &coords, &ball.center) < margin {
                found = Some(i as u32);
                break;
            }
        }
        match found {
            Some(i) => symbols.push(i),
            None => {
                return Err(Error::Coding(format!(
                    "orbit point at step {step} lies in no cover element \
                     (cover unverified or orbit error too large)"
                )));
            }
        }
    }
    Ok(SymbolSequence {
        symbols,
        alphabet_size: cover.alphabet_size(),
        provenance: Provenance::Cover { elements: cover.elements.len() },
    })
}

/// Cell counts per axis for the uniform ε-grid over a domain of this width.
pub fn grid_cells(width: &BigRational, epsilon: &BigRational) -> u64 {
    (width / epsilon).ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(1)
}

/// Cell index of a single coordinate on the half-open grid [lo + iε, lo + (i+1)ε);
/// the domain's top point joins the last cell.
pub fn cell_index(x: &BigRational, lo: &BigRational, epsilon: &BigRational, cells: u64) -> u64 {
    let idx = ((x - lo) / epsilon).floor().to_integer();
    if idx.is_negative() {
        return 0;
    }
    idx.to_u64().unwrap_or(cells - 1).min(cells - 1)
}

/// Quantize one orbit point to its grid symbol (row-major in 2D: first
/// coordinate major).
pub fn quantize_point(
    point: &OrbitPoint,
    lo: &BigRational,
    epsilon: &BigRational,
    cells: u64,
) -> u32 {
    match point {
        OrbitPoint::One(x) => cell_index(&x.to_ratio(), lo, epsilon, cells) as u32,
        OrbitPoint::Two(x, y) => {
            let ix = cell_index(&x.to_ratio(), lo, epsilon, cells);
            let iy = cell_index(&y.to_ratio(), lo, epsilon, cells);
            (ix * cells + iy) as u32
        }
    }
}

/// ε-grid quantization of a whole orbit.
pub fn quantized_orbit(orbit: &Orbit, epsilon: &BigRational) -> Result<SymbolSequence> {
    if epsilon <= &BigRational::zero() {
        return Err(Error::Usage("epsilon must be positive".into()));
    }
    let m = orbit.error_exponent;
    let floor = BigRational::new(BigInt::from(4), BigInt::one() << m as u64);
    if *epsilon <= floor {
        return Err(Error::Precision(format!(
            "epsilon {epsilon} is at or below the precision floor 2^-{} of this orbit",
            m as i64 - 2
        )));
    }
    let lo = orbit.map.domain_lo();
    let width = orbit.map.domain_width();
    let cells = grid_cells(&width, epsilon);
    let dim = orbit.map.dimension();
    let alphabet = if dim == 1 { cells } else { cells * cells };
    if alphabet > u32::MAX as u64 {
        return Err(Error::Usage("quantization alphabet exceeds u32".into()));
    }
    let symbols = orbit
        .points
        .iter()
        .map(|p| quantize_point(p, &lo, epsilon, cells))
        .collect();
    Ok(SymbolSequence {
        symbols,
        alphabet_size: alphabet as u32,
        provenance: Provenance::Quantization { epsilon: epsilon.to_string() },
    })
}

/// Uniform ε-ball cover of the input cover's domain: per axis, balls of
/// radius ε centered every ε, ceil(width/ε)+1 per dimension.
pub fn refine(cover: &Cover, epsilon: &BigRational) -> Result<Cover> {
    if epsilon <= &BigRational::zero() {
        return Err(Error::Usage("epsilon must be positive".into()));
    }
    let width = &cover.domain_hi - &cover.domain_lo;
    let per_axis = (&width / epsilon).ceil().to_integer().to_u64().unwrap_or(0) + 1;
    let center = |j: u64| {
        (&cover.domain_lo + BigRational::from_integer(j.into()) * epsilon)
            .min(cover.domain_hi.clone())
    };
    let mut elements = Vec::new();
    if cover.dim == 1 {
        for j in 0..per_axis {
            elements.push(Ball { center: vec![center(j)], radius: epsilon.clone() });
        }
    } else {
        for j in 0..per_axis {
            for l in 0..per_axis {
                elements.push(Ball {
                    center: vec![center(j), center(l)],
                    radius: epsilon.clone(),
                });
            }
        }
    }
    Ok(Cover {
        elements,
        metric: cover.metric,
        dim: cover.dim,
        domain_lo: cover.domain_lo.clone(),
        domain_hi: cover.domain_hi.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::iterate;
    use crate::num::{parse_ratio, ratio_from_u64};

    fn q(n: u64, d: u64) -> BigRational {
        ratio_from_u64(n, d)
    }

    #[test]
    fn doubling_third_alternates() {
        let map = MapDescriptor::doubling();
        let orbit = iterate(&map, &[q(1, 3)], 5, 40).unwrap();
        let cover = Cover::binary_partition(&map);
        let s = symbolic_orbit(&orbit, &cover).unwrap();
        assert_eq!(s.to_text(), "010101");
    }

    #[test]
    fn identity_constant_coding() {
        let map = MapDescriptor::identity();
        let orbit = iterate(&map, &[parse_ratio("0.3").unwrap()], 4, 40).unwrap();
        let cover = Cover::binary_partition(&map);
        let s = symbolic_orbit(&orbit, &cover).unwrap();
        assert_eq!(s.to_text(), "00000");
    }

    #[test]
    fn doubling_seventh_coding() {
        // orbit 1/7, 2/7, 4/7, 1/7, 2/7, 4/7
        let map = MapDescriptor::doubling();
        let orbit = iterate(&map, &[q(1, 7)], 5, 40).unwrap();
        let cover = Cover::binary_partition(&map);
        let s = symbolic_orbit(&orbit, &cover).unwrap();
        assert_eq!(s.to_text(), "001001");
    }

    #[test]
    fn quantize_simple_cells() {
        // (0.1, 0.6, 0.2) at ε=1/4 → cells (0, 2, 0)
        let map = MapDescriptor::identity();
        let eps = q(1, 4);
        let cells = grid_cells(&map.domain_width(), &eps);
        assert_eq!(cells, 4);
        let vals = ["0.1", "0.6", "0.2"];
        let idx: Vec<u64> = vals
            .iter()
            .map(|v| cell_index(&parse_ratio(v).unwrap(), &map.domain_lo(), &eps, cells))
            .collect();
        assert_eq!(idx, vec![0, 2, 0]);
    }

    #[test]
    fn quantized_identity_constant() {
        let map = MapDescriptor::identity();
        let orbit = iterate(&map, &[parse_ratio("0.3").unwrap()], 10, 40).unwrap();
        let s = quantized_orbit(&orbit, &q(1, 8)).unwrap();
        assert_eq!(s.symbols, vec![2u32; 11]);
        assert_eq!(s.alphabet_size, 8);
    }

    #[test]
    fn quantized_doubling_seventh() {
        let map = MapDescriptor::doubling();
        let orbit = iterate(&map, &[q(1, 7)], 3, 40).unwrap();
        let s = quantized_orbit(&orbit, &q(1, 4)).unwrap();
        assert_eq!(s.symbols, vec![0, 1, 2, 0]);
    }

    #[test]
    fn quantization_precision_floor() {
        let map = MapDescriptor::identity();
        let orbit = iterate(&map, &[q(1, 3)], 2, 6).unwrap();
        let res = quantized_orbit(&orbit, &q(1, 32));
        assert!(matches!(res, Err(Error::Precision(_))));
    }

    #[test]
    fn refine_counts() {
        let map = MapDescriptor::identity();
        let base = Cover::binary_partition(&map);
        let r = refine(&base, &q(1, 4)).unwrap();
        assert_eq!(r.elements.len(), 5);
        assert!(r.verify());
        let r1 = refine(&base, &BigRational::one()).unwrap();
        assert_eq!(r1.elements.len(), 2);

        let skew = MapDescriptor::skew_shift();
        let base2 = Cover {
            elements: vec![Ball {
                center: vec![BigRational::zero(), BigRational::zero()],
                radius: q(2, 1),
            }],
            metric: skew.metric(),
            dim: 2,
            domain_lo: skew.domain_lo(),
            domain_hi: skew.domain_hi(),
        };
        let r2 = refine(&base2, &q(1, 2)).unwrap();
        assert_eq!(r2.elements.len(), 25);
    }

    #[test]
    fn coding_determinism_and_refinement_relation() {
        let map = MapDescriptor::doubling();
        let orbit = iterate(&map, &[q(5, 11)], 50, 40).unwrap();
        let cover = Cover::binary_partition(&map);
        let s1 = symbolic_orbit(&orbit, &cover).unwrap();
        let s2 = symbolic_orbit(&orbit, &cover).unwrap();
        assert_eq!(s1, s2);

        // ε-cell of each point contains its ε/2-cell
        let e = q(1, 8);
        let e2 = q(1, 16);
        let c1 = quantized_orbit(&orbit, &e).unwrap();
        let c2 = quantized_orbit(&orbit, &e2).unwrap();
        for (a, b) in c1.symbols.iter().zip(c2.symbols.iter()) {
            assert_eq!(*a, b / 2, "halving ε refines cells two-into-one");
        }
    }

    #[test]
    fn precision_consistency_off_boundaries() {
        // Raising orbit precision only moves symbols of points near a cell
        // boundary at the coarser error budget.
        let map = MapDescriptor::doubling();
        let eps = q(1, 4);
        let x0 = q(173, 1024);
        let coarse = iterate(&map, &[x0.clone()], 200, 12).unwrap();
        let fine = iterate(&map, &[x0], 200, 48).unwrap();
        let sc = quantized_orbit(&coarse, &eps).unwrap();
        let sf = quantized_orbit(&fine, &eps).unwrap();
        let boundary_tol = q(1, 1 << 11); // 2^-(m-1) for m=12
        for i in 0..sc.symbols.len() {
            if sc.symbols[i] != sf.symbols[i] {
                let x = match &fine.points[i] {
                    OrbitPoint::One(d) => d.to_ratio(),
                    _ => unreachable!(),
                };
                let cell = (&x / &eps).floor() * &eps;
                let d_lo = (&x - &cell).abs();
                let d_hi = (&cell + &eps - &x).abs();
                assert!(
                    d_lo < boundary_tol || d_hi < boundary_tol,
                    "symbol change away from a boundary at step {i}"
                );
            }
        }
    }

    #[test]
    fn text_roundtrip() {
        let s = SymbolSequence::from_symbols(vec![0, 1, 2, 1], 3);
        assert_eq!(s.to_text(), "0121");
        let back = SymbolSequence::parse_text("0121", 3).unwrap();
        assert_eq!(back.symbols, s.symbols);
        let wide = SymbolSequence::from_symbols(vec![0, 11, 3], 12);
        assert_eq!(wide.to_text(), "0,11,3");
        let back = SymbolSequence::parse_text("0,11,3", 12).unwrap();
        assert_eq!(back.symbols, wide.symbols);
    }
}
