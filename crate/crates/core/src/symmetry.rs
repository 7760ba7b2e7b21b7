//! Affine symmetries of polynomials: `Aut(P)`, `G(P)` and the twist `γ_P`.
//!
//! Everything is computed in centered coordinates, where every symmetry is a
//! rotation `z ↦ ζ^j·z` by a root of unity. Group elements are kept as
//! exponents `j ∈ ℤ/ℓ`; identities are checked in `ℚ[a]/(a^ℓ − 1)`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{require_degree, Error, Result};
use crate::forms::{center, is_special, CenteredForm};
use crate::io::ser_rat;
use crate::poly::{Poly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value")]
pub enum GroupOrder {
    Finite(u64),
    Infinite,
}

/// Cyclic symmetry group of order `ℓ` with twist `j ↦ r·j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicTwist {
    pub order: GroupOrder,
    /// Residue `r mod ℓ`; zero for infinite groups.
    pub twist: u64,
    pub frame: CenteredForm,
    /// Constant term `c₀` of the centered polynomial: `ν_j = α·z + c₀(1 − α)`.
    #[serde(serialize_with = "ser_rat")]
    pub translation: Rat,
}

impl CyclicTwist {
    pub fn finite_order(&self) -> Option<u64> {
        match self.order {
            GroupOrder::Finite(l) => Some(l),
            GroupOrder::Infinite => None,
        }
    }
}

/// `a^e mod (a^ℓ − 1)` reduces to `a^{e mod ℓ}`; compare exponents there.
fn quotient_ring_zero(coeff_pairs: impl Iterator<Item = (u64, u64)>, ell: u64) -> bool {
    let modulus = {
        let mut c = vec![Rat::zero(); ell as usize + 1];
        c[0] = Rat::from_integer((-1).into());
        c[ell as usize] = Rat::from_integer(1.into());
        Poly::new(c)
    };
    coeff_pairs.into_iter().all(|(e1, e2)| {
        let diff = &Poly::monomial(Rat::from_integer(1.into()), e1 as usize)
            - &Poly::monomial(Rat::from_integer(1.into()), e2 as usize);
        diff.div_rem(&modulus).1.is_zero()
    })
}

/// Affine maps commuting with `p`.
pub fn aut_group(p: &Poly) -> Result<CyclicTwist> {
    require_degree(p, 2)?;
    let frame = center(p)?;
    let q = &frame.centered;
    // σ = a·z commutes iff a^{k−1} = 1 for every k in the support.
    let ell = q
        .support()
        .fold(0u64, |g, k| g.gcd(&(k as i64 - 1).unsigned_abs()));
    let translation = q.coeff(0);
    Ok(CyclicTwist {
        order: GroupOrder::Finite(ell),
        twist: 1 % ell,
        frame,
        translation,
    })
}

/// Affine `σ` with `p ∘ σ = ν ∘ p` for some affine `ν`, and the twist `σ ↦ ν`.
pub fn g_group(p: &Poly) -> Result<CyclicTwist> {
    let n = require_degree(p, 2)?;
    let frame = center(p)?;
    let q = &frame.centered;
    let translation = q.coeff(0);
    let ell = q
        .support()
        .filter(|&k| k >= 1)
        .fold(0u64, |g, k| g.gcd(&((n - k) as u64)));
    if ell == 0 {
        // centered polynomial is c·z^n + c₀: every rotation works
        return Ok(CyclicTwist {
            order: GroupOrder::Infinite,
            twist: 0,
            frame,
            translation,
        });
    }
    Ok(CyclicTwist {
        order: GroupOrder::Finite(ell),
        twist: n as u64 % ell,
        frame,
        translation,
    })
}

/// Checks `q(a·z) = a^r·q(z) + c₀(1 − a^r)` in `ℚ[a]/(a^ℓ − 1)` for the centered `q`.
///
/// For `Aut` the twist is 1 and the constant must satisfy `c₀ = a·c₀`.
pub fn verify_twist(g: &CyclicTwist) -> bool {
    let Some(ell) = g.finite_order() else {
        let q = &g.frame.centered;
        let n = q.degree().unwrap_or(0);
        return q.support().all(|k| k == 0 || k == n);
    };
    let q = &g.frame.centered;
    let r = g.twist;
    // Positive-degree coefficients: a^k ≡ a^r.
    quotient_ring_zero(q.support().filter(|&k| k >= 1).map(|k| (k as u64, r)), ell)
}

/// Same as [`verify_twist`] with the stricter constant condition of `Aut`.
pub fn verify_aut(g: &CyclicTwist) -> bool {
    let Some(ell) = g.finite_order() else {
        return false;
    };
    // q(a z) − a·q(z) has coefficients q_k (a^k − a); k = 0 gives q_0 (1 − a).
    quotient_ring_zero(g.frame.centered.support().map(|k| (k as u64, 1)), ell)
}

/// `γ(σ_j) = σ_{r·j}`.
pub fn gamma_apply(g: &CyclicTwist, j: u64) -> Result<u64> {
    let ell = g.finite_order().ok_or(Error::InfiniteGroup)?;
    Ok(((g.twist as u128 * j as u128) % ell as u128) as u64)
}

/// Aut orders of the first `kmax` iterates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    /// `(k, |Aut(P^{∘k})|)` for `k = 1..=kmax`.
    pub orders: Vec<(usize, u64)>,
    /// Smallest `k` after which every observed order is equal. Says nothing past `kmax`.
    pub observed_from: usize,
}

pub fn aut_stabilization(p: &Poly, kmax: usize) -> Result<Stabilization> {
    require_degree(p, 2)?;
    if kmax == 0 {
        return Err(Error::BadParams("kmax must be at least 1".into()));
    }
    if is_special(p)?.is_special() {
        return Err(Error::SpecialInput);
    }
    let mut orders = Vec::with_capacity(kmax);
    let mut iter = p.clone();
    for k in 1..=kmax {
        if k > 1 {
            iter = p.compose(&iter);
        }
        let ell = aut_group(&iter)?.finite_order().expect("Aut is finite");
        orders.push((k, ell));
    }
    let last = orders.last().expect("kmax ≥ 1").1;
    let observed_from = orders
        .iter()
        .rev()
        .take_while(|(_, l)| *l == last)
        .last()
        .map(|(k, _)| *k)
        .expect("nonempty");
    Ok(Stabilization {
        orders,
        observed_from,
    })
}
