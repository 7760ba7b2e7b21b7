//! Reference computations that avoid the library's own algorithms.

#![allow(dead_code)]

use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use ritt_lab::{int, rat, AffineMap, Poly, Rat};

pub fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

pub fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `T_n = (n/2) Σ_k (−1)^k (n−k−1)!/(k!(n−2k)!) (2z)^{n−2k}`.
pub fn chebyshev_closed_form(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let mut c = vec![Rat::zero(); n + 1];
    for k in 0..=n / 2 {
        // n/(n−k) · C(n−k, k) · 2^{n−2k−1}
        let mag = Rat::new(
            (binom((n - k) as u64, k as u64) * n as u64).into(),
            ((n - k) as u64).into(),
        ) * Rat::new(BigUint::from(2u8).pow((n - 2 * k) as u32).into(), 2.into());
        c[n - 2 * k] = if k % 2 == 0 { mag } else { -mag };
    }
    Poly::new(c)
}

pub fn small_rat(rng: &mut StdRng, bound: i64) -> Rat {
    let q = rng.random_range(1..=3);
    rat(rng.random_range(-bound * q..=bound * q), q)
}

pub fn nonzero_rat(rng: &mut StdRng, bound: i64) -> Rat {
    loop {
        let x = small_rat(rng, bound);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_poly(rng: &mut StdRng, degree: usize, bound: i64) -> Poly {
    let mut c: Vec<Rat> = (0..degree).map(|_| small_rat(rng, bound)).collect();
    c.push(nonzero_rat(rng, bound));
    Poly::new(c)
}

pub fn random_affine(rng: &mut StdRng) -> AffineMap {
    AffineMap::new(nonzero_rat(rng, 5), small_rat(rng, 5)).unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Power,
    /// `true` for `+T_n`.
    Chebyshev(bool),
}

fn power_oracle(q: &Poly) -> bool {
    let n = q.degree().unwrap();
    // the (n−1)-th derivative is linear; its root is the only critical point
    let mut d = q.clone();
    for _ in 0..n - 1 {
        d = d.derivative();
    }
    let b = -d.coeff(0) / d.coeff(1);
    let crit = Poly::new(vec![-b.clone(), Rat::one()]).pow(n - 1);
    q.derivative() == crit.scale(&(q.coeff(n) * int(n as i64))) && q.evaluate(&b) == b
}

/// Solves `(A − (z−β)²)·q'² = n²·(A − (q−β)²)` for a constant `A ≠ 0`.
fn chebyshev_oracle(q: &Poly) -> Option<bool> {
    let n = q.degree().unwrap();
    let beta = -q.coeff(n - 1) / (q.coeff(n) * int(n as i64));
    let nn = Poly::constant(int((n * n) as i64));
    let dq2 = &q.derivative() * &q.derivative();
    let zb = Poly::new(vec![-beta.clone(), Rat::one()]);
    let qb = q - &Poly::constant(beta.clone());
    let lhs = &dq2 - &nn;
    let rhs = &(&(&zb * &zb) * &dq2) - &(&nn * &(&qb * &qb));
    let lead = lhs.degree()?;
    let a = rhs.coeff(lead) / lhs.coeff(lead);
    if a.is_zero() || lhs.scale(&a) != rhs {
        return None;
    }
    if n.is_multiple_of(2) {
        return Some(true);
    }
    // leading coefficient of the normalized polynomial is c_n·A^{(n−1)/2} = ±2^{n−1}
    let lc = q.coeff(n) * ritt_lab::rat_pow(&a, ((n - 1) / 2) as i64);
    Some(lc.is_positive())
}

pub fn special_oracle(q: &Poly) -> Option<OracleKind> {
    if power_oracle(q) {
        Some(OracleKind::Power)
    } else {
        chebyshev_oracle(q).map(OracleKind::Chebyshev)
    }
}

/// Arithmetic in `ℚ[a]/Φ_L(a)`.
pub struct Cyclotomic {
    l: usize,
    modulus: Poly,
}

impl Cyclotomic {
    pub fn new(l: usize) -> Self {
        let mut m = &Poly::monomial(Rat::one(), l) - &Poly::one();
        for d in 1..l {
            if l.is_multiple_of(d) {
                m = m.div_rem(&Cyclotomic::new(d).modulus).0;
            }
        }
        Cyclotomic { l, modulus: m }
    }

    fn red(&self, x: &Poly) -> Poly {
        x.div_rem(&self.modulus).1
    }

    fn a_pow(&self, e: i64) -> Poly {
        let l = self.l as i64;
        self.red(&Poly::monomial(Rat::one(), e.rem_euclid(l) as usize))
    }

    fn mul_poly(&self, x: &[Poly], y: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); x.len() + y.len() - 1];
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                out[i + j] = self.red(&(&out[i + j] + &(xi * yj)));
            }
        }
        out
    }

    /// `q(a·z + b)` with coefficients in the field.
    fn compose_affine(&self, q: &Poly, a: &Poly, b: &Poly) -> Vec<Poly> {
        let inner = vec![b.clone(), a.clone()];
        let mut acc = vec![Poly::constant(q.coeff(q.degree().unwrap()))];
        for k in (0..q.degree().unwrap()).rev() {
            acc = self.mul_poly(&acc, &inner);
            acc[0] = &acc[0] + &Poly::constant(q.coeff(k));
        }
        acc
    }

    fn lift(&self, q: &Poly, scale: &Poly, shift: &Poly) -> Vec<Poly> {
        let mut out: Vec<Poly> = q
            .coeffs()
            .iter()
            .map(|c| self.red(&scale.scale(c)))
            .collect();
        out[0] = &out[0] + shift;
        out
    }

    /// Is there `b` with `q(a z + b) = a q(z) + b`, `a` a primitive `L`-th root?
    pub fn commuting_map_exists(&self, q: &Poly) -> bool {
        let n = q.degree().unwrap() as i64;
        let c = q.coeff(n as usize - 1) / (q.coeff(n as usize) * int(n));
        // matching z^{n−1}: b = c·(a^{2−n} − 1)
        let b = self.red(&(&self.a_pow(2 - n) - &Poly::one()).scale(&c));
        let a = self.a_pow(1);
        self.compose_affine(q, &a, &b) == self.lift(q, &a, &b)
    }

    /// Is there `b, β` with `q(a z + b) = a^n q(z) + β`?
    pub fn twisting_map_exists(&self, q: &Poly) -> bool {
        let n = q.degree().unwrap() as i64;
        let c = q.coeff(n as usize - 1) / (q.coeff(n as usize) * int(n));
        let b = self.red(&(&self.a_pow(1) - &Poly::one()).scale(&c));
        let a = self.a_pow(1);
        let alpha = self.a_pow(n);
        let left = self.compose_affine(q, &a, &b);
        let beta = &left[0] - &self.red(&alpha.scale(&q.coeff(0)));
        left == self.lift(q, &alpha, &beta)
    }
}

/// Orders `L ≤ max` of rotations found by coefficient matching.
pub fn brute_symmetry_orders(q: &Poly, max: usize) -> (Vec<usize>, Vec<usize>) {
    let mut aut = Vec::new();
    let mut g = Vec::new();
    for l in 1..=max {
        let k = Cyclotomic::new(l);
        if k.commuting_map_exists(q) {
            aut.push(l);
        }
        if k.twisting_map_exists(q) {
            g.push(l);
        }
    }
    (aut, g)
}

/// `n^a = m^b` for some `1 ≤ a, b ≤ bound`.
pub fn powers_meet(n: usize, m: usize, bound: u32) -> bool {
    (1..=bound).any(|a| {
        let na = BigUint::from(n).pow(a);
        (1..=bound).any(|b| BigUint::from(m).pow(b) == na)
    })
}

/// Leading coefficient of `q^{∘k}` via `lc(q ∘ X) = lc(q)·lc(X)^n`.
pub fn iterate_leading(q: &Poly, k: usize) -> Rat {
    let n = q.degree().unwrap() as i64;
    let lc = q.leading().unwrap().clone();
    (0..k).fold(Rat::one(), |acc, _| &lc * ritt_lab::rat_pow(&acc, n))
}

pub fn iterate_naive(q: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::z(), |acc, _| {
        q.coeffs()
            .iter()
            .enumerate()
            .fold(Poly::zero(), |s, (i, c)| &s + &acc.pow(i).scale(c))
    })
}

pub mod strategies {
    use proptest::collection::vec;
    use proptest::prelude::*;
    use ritt_lab::{rat, AffineMap, Poly, Rat};

    pub fn arb_rat() -> impl Strategy<Value = Rat> {
        (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
    }

    pub fn arb_nonzero_rat() -> impl Strategy<Value = Rat> {
        (1i64..=6, 1i64..=4, any::<bool>()).prop_map(|(n, d, neg)| rat(if neg { -n } else { n }, d))
    }

    pub fn arb_poly(min_deg: usize, max_deg: usize) -> impl Strategy<Value = Poly> {
        (min_deg..=max_deg)
            .prop_flat_map(|d| (vec(arb_rat(), d), arb_nonzero_rat()))
            .prop_map(|(mut c, lead)| {
                c.push(lead);
                Poly::new(c)
            })
    }

    pub fn arb_affine() -> impl Strategy<Value = AffineMap> {
        (arb_nonzero_rat(), arb_rat()).prop_map(|(a, b)| AffineMap::new(a, b).unwrap())
    }
}
