//! Normal forms and detection of special polynomials.
//!
//! A polynomial is *special* when it is conjugate by an affine map to `z^n`
//! or to `±T_n`. Detection never materializes irrational conjugators: the
//! unknown scaling factor is constrained by binomial equations over ℚ and
//! existence is settled by a gcd (see [`crate::constraint`]).

use num_traits::{One, Zero};
use serde::Serialize;

use crate::constraint::{BinomialSystem, Solvability};
use crate::error::{require_degree, Result};
use crate::io::{ser_affine, ser_affine_opt, ser_poly, ser_rat, ser_rat_opt};
use crate::poly::{int, AffineMap, Poly, Rat};

/// Conjugate of a polynomial with vanishing `z^{n-1}` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenteredForm {
    /// Pure translation `z + b₀` with `centered = shift ∘ original ∘ shift⁻¹`.
    #[serde(serialize_with = "ser_affine")]
    pub shift: AffineMap,
    #[serde(serialize_with = "ser_poly")]
    pub centered: Poly,
}

pub fn center(p: &Poly) -> Result<CenteredForm> {
    let n = require_degree(p, 2)?;
    let b0 = p.coeff(n - 1) / (p.coeff(n) * int(n as i64));
    let shift = AffineMap::translation(b0);
    let centered = p.conjugate(&shift);
    debug_assert!(centered.coeff(n - 1).is_zero());
    Ok(CenteredForm { shift, centered })
}

/// Chebyshev polynomial `T_n` from `T_{k+1} = 2z·T_k − T_{k−1}`.
pub fn chebyshev(n: usize) -> Poly {
    let two_z = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::one(), Poly::z());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&two_z * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Monic centered model `2·T_n(z/2)`; integer coefficients.
fn chebyshev_monic_model(n: usize) -> Poly {
    let half = AffineMap::scaling(Rat::new(1.into(), 2.into())).to_poly();
    chebyshev(n).compose(&half).scale(&int(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    fn factor(self) -> Rat {
        match self {
            Sign::Plus => Rat::one(),
            Sign::Minus => -Rat::one(),
        }
    }
}

/// Evidence that a polynomial is conjugate to `±T_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChebyshevWitness {
    /// Centering used before the scaling search.
    pub frame: CenteredForm,
    /// Constraints on the scaling `a` in `centered(z) = a⁻¹·(±M)(a·z)`, `M = 2·T_n(z/2)`.
    pub constraint: Solvability,
    #[serde(serialize_with = "ser_rat_opt")]
    pub scale: Option<Rat>,
    /// `λ` with `p = λ ∘ (±T_n) ∘ λ⁻¹`, when it is rational.
    #[serde(serialize_with = "ser_affine_opt")]
    pub conjugator: Option<AffineMap>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SpecialKind {
    /// `p(z) − b = c·(z − b)^n`, i.e. conjugate to `z^n` by a map sending 0 to `b`.
    PowerConjugate {
        degree: usize,
        #[serde(serialize_with = "ser_rat")]
        center: Rat,
    },
    ChebyshevConjugate {
        degree: usize,
        sign: Sign,
        witness: Box<ChebyshevWitness>,
    },
    NotSpecial,
}

impl SpecialKind {
    pub fn is_special(&self) -> bool {
        !matches!(self, SpecialKind::NotSpecial)
    }
}

pub fn is_conjugate_to_power(p: &Poly) -> Result<SpecialKind> {
    let n = require_degree(p, 2)?;
    let lc = p.coeff(n);
    let b = -(p.coeff(n - 1) / (&lc * int(n as i64)));
    let model = Poly::new(vec![-b.clone(), Rat::one()]).pow(n).scale(&lc);
    let lhs = p - &Poly::constant(b.clone());
    Ok(if lhs == model {
        SpecialKind::PowerConjugate {
            degree: n,
            center: b,
        }
    } else {
        SpecialKind::NotSpecial
    })
}

pub fn is_conjugate_to_chebyshev(p: &Poly) -> Result<SpecialKind> {
    let n = require_degree(p, 2)?;
    let frame = center(p)?;
    let model = chebyshev_monic_model(n);
    for sign in [Sign::Plus, Sign::Minus] {
        if let Some(witness) = chebyshev_scaling(&frame, &model, sign) {
            return Ok(SpecialKind::ChebyshevConjugate {
                degree: n,
                sign,
                witness: Box::new(witness),
            });
        }
    }
    Ok(SpecialKind::NotSpecial)
}

fn chebyshev_scaling(frame: &CenteredForm, model: &Poly, sign: Sign) -> Option<ChebyshevWitness> {
    let q = &frame.centered;
    let s = sign.factor();
    let mut system = BinomialSystem::new();
    // q_k = s·m_k·a^{k−1} for k ≥ 1, and q_0·a = s·m_0.
    system.push(q.coeff(0), 1, &s * model.coeff(0));
    for k in 1..model.coeffs().len() {
        system.push(&s * model.coeff(k), k - 1, q.coeff(k));
    }
    let constraint = system.solve();
    if !constraint.is_solvable() {
        return None;
    }
    let scale = constraint.rational_witness();
    let conjugator = scale.as_ref().map(|a| {
        let mu = AffineMap::scaling(int(2) / a);
        frame.shift.inverse().then_after(&mu)
    });
    Some(ChebyshevWitness {
        frame: frame.clone(),
        constraint,
        scale,
        conjugator,
    })
}

/// Power test first, then `+T_n`, then `−T_n`.
pub fn is_special(p: &Poly) -> Result<SpecialKind> {
    match is_conjugate_to_power(p)? {
        SpecialKind::NotSpecial => is_conjugate_to_chebyshev(p),
        found => Ok(found),
    }
}

/// Result of a successful linear-equivalence test `p = σ ∘ q ∘ ν`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearEquivalence {
    /// Constraint on the inner scaling after both sides are normalized.
    pub constraint: Solvability,
    #[serde(serialize_with = "ser_affine_opt")]
    pub sigma: Option<AffineMap>,
    #[serde(serialize_with = "ser_affine_opt")]
    pub nu: Option<AffineMap>,
}

struct Normalized {
    /// `p(z + shift)` is centered.
    shift: Rat,
    /// Constant term of the centered polynomial.
    offset: Rat,
    /// `p(z + shift) − offset`.
    poly: Poly,
}

fn normalize(p: &Poly, n: usize) -> Normalized {
    let shift = -(p.coeff(n - 1) / (p.coeff(n) * int(n as i64)));
    let shifted = p.shift(&shift);
    let offset = shifted.coeff(0);
    let poly = &shifted - &Poly::constant(offset.clone());
    Normalized {
        shift,
        offset,
        poly,
    }
}

/// Decides whether `p = σ ∘ q ∘ ν` for complex affine `σ`, `ν`.
pub fn linear_equivalence(p: &Poly, q: &Poly) -> Result<Option<LinearEquivalence>> {
    let n = require_degree(p, 2)?;
    let m = require_degree(q, 2)?;
    if n != m {
        return Ok(None);
    }
    let np = normalize(p, n);
    let nq = normalize(q, n);
    let (pn, qn) = (np.poly.coeff(n), nq.poly.coeff(n));
    // p̂_k = s·t^k·q̂_k with s = p̂_n / (q̂_n·t^n)  ⇒  p̂_k·q̂_n·t^{n−k} = p̂_n·q̂_k.
    let mut system = BinomialSystem::new();
    for k in 1..n - 1 {
        system.push(np.poly.coeff(k) * &qn, n - k, &pn * nq.poly.coeff(k));
    }
    let constraint = system.solve();
    if !constraint.is_solvable() {
        return Ok(None);
    }
    let (sigma, nu) = match constraint.rational_witness() {
        Some(t) => {
            let s = &pn / (&qn * num_traits::pow(t.clone(), n));
            let sigma =
                AffineMap::new(s.clone(), &np.offset - &s * &nq.offset).expect("nonzero scale");
            let nu = AffineMap::new(t.clone(), &nq.shift - &t * &np.shift).expect("nonzero scale");
            (Some(sigma), Some(nu))
        }
        None => (None, None),
    };
    Ok(Some(LinearEquivalence {
        constraint,
        sigma,
        nu,
    }))
}
