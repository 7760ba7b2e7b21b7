//! The semigroup `S_{Γ,R}` generated by a rotation subgroup `Γ ⊆ G(R)` and `R`.
//!
//! An element `(j, s)` stands for `δ_j ∘ R^{∘s}` where `δ_j` is the rotation
//! by `ζ_d^j`. Since `R ∘ δ_j = δ_{r·j} ∘ R`, multiplication is
//! `(j₁, s₁)·(j₂, s₂) = (j₁ + r^{s₁}·j₂, s₁ + s₂)`.

use std::collections::HashSet;

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::symmetry::{g_group, GroupOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemidirectElement {
    /// Rotation exponent modulo `d`.
    pub j: u64,
    /// Power of `R`.
    pub s: u64,
}

impl SemidirectElement {
    pub fn new(j: u64, s: u64) -> Self {
        SemidirectElement { j, s }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectContext {
    /// Order of `G(R)`.
    pub ell: u64,
    /// Twist residue modulo `ell`.
    pub r: u64,
    /// Order of the subgroup `Γ`.
    pub d: u64,
    /// Centered `R`, when the context comes from a polynomial.
    #[serde(skip)]
    pub base: Option<Poly>,
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl SemidirectContext {
    /// Context from raw twist data, without a realizing polynomial.
    pub fn abstract_group(ell: u64, r: u64, d: u64) -> Result<Self> {
        if ell == 0 || d == 0 || !ell.is_multiple_of(d) {
            return Err(Error::BadSubgroup(format!(
                "order {d} does not divide {ell}"
            )));
        }
        Ok(SemidirectContext {
            ell,
            r: r % ell,
            d,
            base: None,
        })
    }

    /// Context for the order-`d` subgroup of `G(R)`.
    ///
    /// Requires `γ_R(Γ) ⊆ Γ`: the maps `ν_j` must be rotations, which holds
    /// when the centered constant term vanishes or `γ` kills `Γ`.
    pub fn from_poly(r_poly: &Poly, d: u64) -> Result<Self> {
        let g = g_group(r_poly)?;
        let GroupOrder::Finite(ell) = g.order else {
            return Err(Error::InfiniteGroup);
        };
        let mut ctx = Self::abstract_group(ell, g.twist, d)?;
        if !g.translation.is_zero() && ctx.r % d != 0 {
            return Err(Error::BadSubgroup(
                "γ moves the subgroup off the rotations (nonzero centered constant term)".into(),
            ));
        }
        ctx.base = Some(g.frame.centered);
        Ok(ctx)
    }

    fn check(&self, x: &SemidirectElement) -> Result<()> {
        if x.j >= self.d {
            return Err(Error::BadParams(format!(
                "exponent {} not reduced mod {}",
                x.j, self.d
            )));
        }
        Ok(())
    }

    pub fn mul(&self, x: &SemidirectElement, y: &SemidirectElement) -> Result<SemidirectElement> {
        self.check(x)?;
        self.check(y)?;
        let twisted = pow_mod(self.r, x.s, self.d) * y.j % self.d;
        Ok(SemidirectElement {
            j: (x.j + twisted) % self.d,
            s: x.s + y.s,
        })
    }

    /// `δ_j ∘ R^{∘s}` in centered coordinates; only `δ ∈ {z, −z}` is rational.
    pub fn realize(&self, x: &SemidirectElement) -> Result<Poly> {
        self.check(x)?;
        let base = self
            .base
            .as_ref()
            .ok_or_else(|| Error::BadParams("context has no polynomial".into()))?;
        if self.d > 2 {
            return Err(Error::NotRational(self.d));
        }
        let power = base.iterate(x.s as usize);
        Ok(if x.j == 1 {
            power.scale(&Rat::from_integer((-1).into()))
        } else {
            power
        })
    }

    /// `S_{Γ,R}` is left amenable iff `γ` maps `Γ` onto itself.
    pub fn left_amenable(&self) -> bool {
        self.r.gcd(&self.d) == 1
    }

    /// `|F_N \ X·F_N| / |F_N|` with `F_N = {(i, p) : i < d, p ≤ N}`.
    pub fn folner_ratio(&self, x: &SemidirectElement, n: u64) -> Result<Rat> {
        self.check(x)?;
        let mut image = HashSet::new();
        for i in 0..self.d {
            for p in 0..=n {
                image.insert(self.mul(x, &SemidirectElement::new(i, p))?);
            }
        }
        let total = self.d * (n + 1);
        let missing = (0..self.d)
            .flat_map(|i| (0..=n).map(move |p| SemidirectElement::new(i, p)))
            .filter(|f| !image.contains(f))
            .count() as u64;
        Ok(Rat::new(missing.into(), total.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn e(j: u64, s: u64) -> SemidirectElement {
        SemidirectElement::new(j, s)
    }

    fn even_ctx() -> SemidirectContext {
        SemidirectContext::from_poly(&Poly::from_ints(&[0, 0, 1, 0, 1]), 2).unwrap()
    }

    #[test]
    fn mul_examples() {
        let ctx = even_ctx();
        assert_eq!(ctx.r, 0);
        assert_eq!(ctx.mul(&e(1, 1), &e(1, 0)).unwrap(), e(1, 1));
        let odd = SemidirectContext::from_poly(&Poly::from_ints(&[0, 1, 0, 1]), 2).unwrap();
        assert_eq!(odd.mul(&e(1, 1), &e(1, 1)).unwrap(), e(0, 2));
        assert_eq!(ctx.mul(&e(0, 2), &e(0, 3)).unwrap(), e(0, 5));
    }

    #[test]
    fn realize_examples() {
        let ctx = even_ctx();
        let r = Poly::from_ints(&[0, 0, 1, 0, 1]);
        assert_eq!(ctx.realize(&e(1, 1)).unwrap(), -&r);
        assert_eq!(ctx.realize(&e(0, 2)).unwrap(), r.iterate(2));
        let big =
            SemidirectContext::from_poly(&Poly::from_ints(&[0, 1, 0, 0, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(big.realize(&e(1, 1)), Err(Error::NotRational(3)));
    }

    #[test]
    fn left_amenability_examples() {
        assert!(!even_ctx().left_amenable());
        assert!(
            SemidirectContext::from_poly(&Poly::from_ints(&[0, 1, 0, 1]), 2)
                .unwrap()
                .left_amenable()
        );
        assert!(SemidirectContext::abstract_group(6, 0, 1)
            .unwrap()
            .left_amenable());
    }

    #[test]
    fn bad_subgroups() {
        assert!(matches!(
            SemidirectContext::abstract_group(4, 1, 3),
            Err(Error::BadSubgroup(_))
        ));
        // z^3 + z + 1: z ↦ −z sends R to −R + 2, not a rotation of R
        assert!(matches!(
            SemidirectContext::from_poly(&Poly::from_ints(&[1, 1, 0, 1]), 2),
            Err(Error::BadSubgroup(_))
        ));
        assert_eq!(
            SemidirectContext::from_poly(&Poly::from_ints(&[0, 0, 0, 1]), 1),
            Err(Error::InfiniteGroup)
        );
    }

    #[test]
    fn folner_examples() {
        let ctx = SemidirectContext::abstract_group(2, 1, 2).unwrap();
        assert_eq!(ctx.folner_ratio(&e(0, 1), 9).unwrap(), rat(1, 10));
        assert_eq!(ctx.folner_ratio(&e(1, 0), 9).unwrap(), rat(0, 1));
        assert_eq!(ctx.folner_ratio(&e(0, 3), 9).unwrap(), rat(3, 10));
        // γ collapsing Γ: left translates never become invariant
        let collapsing = SemidirectContext::abstract_group(2, 0, 2).unwrap();
        assert_eq!(collapsing.folner_ratio(&e(0, 1), 9).unwrap(), rat(11, 20));
    }
}
