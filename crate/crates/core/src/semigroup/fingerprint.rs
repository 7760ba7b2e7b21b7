//! Evaluation of composition words modulo a large prime.
//!
//! Used only to discard candidate identities cheaply; every positive answer
//! is confirmed by exact composition before it becomes a certificate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::poly::{Poly, Rat};

/// 2^61 − 1.
const PRIME: u64 = (1 << 61) - 1;
const SEED: u64 = 0x5eed_7177;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn int_mod(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(PRIME))
        .to_u64()
        .expect("residue fits")
}

fn rat_mod(x: &Rat) -> Option<u64> {
    let den = int_mod(x.denom());
    if den.is_zero() {
        return None;
    }
    Some(mul_mod(int_mod(x.numer()), pow_mod(den, PRIME - 2)))
}

/// A polynomial reduced modulo the prime.
#[derive(Clone, Debug)]
pub struct ModPoly(Vec<u64>);

impl ModPoly {
    /// `None` if some denominator vanishes modulo the prime.
    pub fn reduce(p: &Poly) -> Option<Self> {
        p.coeffs()
            .iter()
            .map(rat_mod)
            .collect::<Option<_>>()
            .map(ModPoly)
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x), c))
    }

    pub fn eval_iter(&self, mut x: u64, k: usize) -> u64 {
        for _ in 0..k {
            x = self.eval(x);
        }
        x
    }
}

/// Fixed pseudo-random evaluation points.
pub fn sample_points(count: usize) -> Vec<u64> {
    let mut rng = StdRng::seed_from_u64(SEED);
    (0..count).map(|_| rng.random_range(2..PRIME)).collect()
}

/// Reduction of a pair, or `None` when either side cannot be reduced.
pub fn reduce_pair(a: &Poly, b: &Poly) -> Option<(ModPoly, ModPoly)> {
    Some((ModPoly::reduce(a)?, ModPoly::reduce(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn modular_evaluation_matches_exact() {
        let p = Poly::new(vec![rat(1, 3), rat(-2, 5), rat(7, 2)]);
        let m = ModPoly::reduce(&p).unwrap();
        let x = Rat::from_integer(11.into());
        let exact = p.evaluate(&x);
        assert_eq!(m.eval(11), rat_mod(&exact).unwrap());
        let twice = p.evaluate(&exact);
        assert_eq!(m.eval_iter(11, 2), rat_mod(&twice).unwrap());
    }

    #[test]
    fn points_are_deterministic() {
        assert_eq!(sample_points(3), sample_points(3));
    }
}
