//! Deterministic seeded inputs. One 64-bit seed plus a purpose label derive a
//! named ChaCha8 stream; every random choice in the toolkit flows through
//! here so runs are reproducible byte-for-byte.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Open the named substream of a seed. Streams are independent for distinct
/// labels; the label is hashed (FNV-1a) into the key.
pub fn stream(seed: u64, purpose: &str) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in purpose.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    key[8..16].copy_from_slice(&h.to_le_bytes());
    key[16..24].copy_from_slice(&(seed ^ 0x9e37_79b9_7f4a_7c15).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Random dyadic point in (0,1) with `bits` fractional bits. The top bit is
/// forced so the value stays well away from 0.
pub fn dyadic_point(rng: &mut ChaCha8Rng, bits: u64) -> BigRational {
    let n_bytes = bits.div_ceil(8) as usize;
    let mut bytes = vec![0u8; n_bytes];
    rng.fill_bytes(&mut bytes);
    let mut mant = BigUint::from_bytes_le(&bytes);
    let mask = (BigUint::one() << bits) - BigUint::one();
    mant &= mask;
    mant |= BigUint::one() << (bits - 2); // keep x ≥ 1/4
    BigRational::new(BigInt::from(mant), BigInt::one() << bits)
}

/// Random point in (lo, hi) at `bits` dyadic resolution.
pub fn dyadic_point_in(
    rng: &mut ChaCha8Rng,
    lo: &BigRational,
    hi: &BigRational,
    bits: u64,
) -> BigRational {
    let u = dyadic_point(rng, bits);
    lo + (hi - lo) * u
}

/// Uniform random symbol string over {0..alphabet-1}.
pub fn random_symbols(rng: &mut ChaCha8Rng, n: usize, alphabet: u16) -> Vec<u16> {
    (0..n).map(|_| (rng.next_u32() % alphabet as u32) as u16).collect()
}
