//! Exact univariate polynomials over the rationals.
//!
//! Coefficients are stored densely in ascending order of degree, so
//! `coeffs[i]` is the coefficient of `z^i`. The zero polynomial is the empty
//! vector; every other polynomial has a nonzero last coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduced rational number with positive denominator.
pub type Rat = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Exact integer power of a rational, allowing negative exponents for nonzero bases.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Real `k`-th roots of `x` that are rational: zero, one or two values.
pub fn rational_roots_of(x: &Rat, k: u32) -> Vec<Rat> {
    assert!(k >= 1);
    if x.is_zero() {
        return vec![Rat::zero()];
    }
    if k.is_multiple_of(2) && x.is_negative() {
        return Vec::new();
    }
    let num = x.numer().abs();
    let den = x.denom().clone();
    let (rn, rd) = match (exact_nth_root(&num, k), exact_nth_root(&den, k)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Vec::new(),
    };
    let root = Rat::new(rn, rd);
    if k % 2 == 1 {
        if x.is_negative() {
            vec![-root]
        } else {
            vec![root]
        }
    } else {
        vec![root.clone(), -root]
    }
}

fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    (num_traits::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Exact polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Polynomial from integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rat, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, _)| k)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(z))`, by Horner's rule.
    pub fn compose(&self, inner: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            acc.add_constant(c);
        }
        acc
    }

    /// k-fold self-composition; `iterate(0)` is `z`.
    pub fn iterate(&self, k: usize) -> Poly {
        let mut acc = Poly::z();
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `λ ∘ self ∘ λ⁻¹`.
    pub fn conjugate(&self, lambda: &AffineMap) -> Poly {
        lambda
            .to_poly()
            .compose(&self.compose(&lambda.inverse().to_poly()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rat::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &q * d;
                }
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `self(z + t)`: Taylor shift.
    pub fn shift(&self, t: &Rat) -> Poly {
        self.compose(&AffineMap::translation(t.clone()).to_poly())
    }

    fn add_constant(&mut self, c: &Rat) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
            if self.coeffs.len() == 1 && self.coeffs[0].is_zero() {
                self.coeffs.clear();
            }
        }
    }

    /// Integer numerators over a common positive denominator.
    fn cleared(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (nums, den)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) | (None, Some(a)) => a.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        // Multiply integer numerators, divide by the common denominator once.
        let (a, da) = self.cleared();
        let (b, db) = rhs.cleared();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = da * db;
        Poly::new(out.into_iter().map(|n| Rat::new(n, den.clone())).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Renders in the input grammar, e.g. `4*z^3 - 3*z` or `-2/3*z^3 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = c.abs();
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Invertible degree-one polynomial `z ↦ a·z + b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    a: Rat,
    b: Rat,
}

impl AffineMap {
    pub fn new(a: Rat, b: Rat) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroSlope);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity() -> Self {
        AffineMap {
            a: Rat::one(),
            b: Rat::zero(),
        }
    }

    pub fn translation(b: Rat) -> Self {
        AffineMap { a: Rat::one(), b }
    }

    /// `z ↦ a·z`. Panics if `a == 0`.
    pub fn scaling(a: Rat) -> Self {
        assert!(!a.is_zero(), "scaling by zero");
        AffineMap { a, b: Rat::zero() }
    }

    /// Reads an affine map back from a degree-one polynomial.
    pub fn from_poly(p: &Poly) -> Option<Self> {
        (p.degree() == Some(1)).then(|| AffineMap {
            a: p.coeff(1),
            b: p.coeff(0),
        })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn inverse(&self) -> Self {
        let inv = self.a.recip();
        AffineMap {
            b: -(&self.b * &inv),
            a: inv,
        }
    }

    /// `self ∘ inner`.
    pub fn then_after(&self, inner: &AffineMap) -> Self {
        AffineMap {
            a: &self.a * &inner.a,
            b: &self.a * &inner.b + &self.b,
        }
    }

    pub fn apply(&self, x: &Rat) -> Rat {
        &self.a * x + &self.b
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(vec![self.b.clone(), self.a.clone()])
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Affine({self})")
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}
