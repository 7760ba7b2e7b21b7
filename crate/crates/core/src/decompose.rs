//! Functional decomposition `f = G ∘ H` and the Ritt theorem machinery.

use num_integer::Integer;
use serde::Serialize;

use crate::constraint::{BinomialSystem, Solvability};
use crate::error::{require_degree, Error, Result};
use crate::forms::chebyshev;
use crate::io::ser_poly;
use crate::poly::{int, AffineMap, Poly, Rat};

/// `original = left ∘ right`, with `right` monic and `right(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "ser_poly")]
    pub left: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub right: Poly,
}

impl Decomposition {
    pub fn recompose(&self) -> Poly {
        self.left.compose(&self.right)
    }
}

/// Normalized right factor of degree `m`, assuming `deg f ≥ 1` and `m | deg f`.
fn split(f: &Poly, m: usize) -> Option<Decomposition> {
    let n = f.degree()?;
    let lc = f.coeff(n);
    if m == 1 {
        return Some(Decomposition {
            left: f.clone(),
            right: Poly::z(),
        });
    }
    if m == n {
        let f0 = f.coeff(0);
        return Some(Decomposition {
            left: Poly::new(vec![f0.clone(), lc.clone()]),
            right: (f - &Poly::constant(f0)).scale(&lc.recip()),
        });
    }
    let r = n / m;
    let target = f.scale(&lc.recip());
    // Top coefficients of H^r agree with f/lc; solve for h_{m-1}, …, h_1 in turn.
    let mut h = Poly::monomial(Rat::from_integer(1.into()), m);
    let r_inv = int(r as i64).recip();
    for j in 1..m {
        let current = h.pow(r).coeff(n - j);
        let hj = (target.coeff(n - j) - current) * &r_inv;
        let mut c = h.into_coeffs();
        c[m - j] = hj;
        h = Poly::new(c);
    }
    let left = right_divide(f, &h)?;
    Some(Decomposition { left, right: h })
}

/// `X` with `X ∘ d = w`, via the expansion of `w` in powers of `d`.
pub fn right_divide(w: &Poly, d: &Poly) -> Option<Poly> {
    let dd = d.degree().filter(|&k| k >= 1)?;
    let Some(wd) = w.degree() else {
        return Some(Poly::zero());
    };
    if wd % dd != 0 {
        return None;
    }
    let mut digits = Vec::with_capacity(wd / dd + 1);
    let mut rest = w.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(d);
        if r.degree().is_some_and(|k| k > 0) {
            return None;
        }
        digits.push(r.coeff(0));
        rest = q;
    }
    Some(Poly::new(digits))
}

/// Normalized decomposition with `deg right = m`, or `None` if none exists.
///
/// Trivial degrees `m = 1` and `m = deg f` always succeed.
pub fn right_factor(f: &Poly, m: usize) -> Result<Option<Decomposition>> {
    let n = require_degree(f, 2)?;
    if m == 0 || n % m != 0 {
        return Err(Error::BadDegree(format!("{m} does not divide {n}")));
    }
    Ok(split(f, m))
}

/// Outcome of solving `u ∘ X = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum LeftSolve {
    Solution {
        #[serde(serialize_with = "ser_poly")]
        x: Poly,
    },
    /// A solution exists over ℂ but not over ℚ.
    NoRationalWitness {
        constraint: Solvability,
    },
    NoSolution,
}

pub fn left_compose_solve(u: &Poly, b: &Poly) -> Result<LeftSolve> {
    let d = require_degree(u, 1)?;
    let nb = b
        .degree()
        .filter(|&k| k >= d && k % d == 0)
        .ok_or_else(|| Error::BadDegree(format!("deg u = {d} does not divide deg b")))?;
    if d == 1 {
        let x = (b - &Poly::constant(u.coeff(0))).scale(&u.coeff(1).recip());
        return Ok(LeftSolve::Solution { x });
    }
    let Some(Decomposition { left: g, right: h }) = split(b, nb / d) else {
        return Ok(LeftSolve::NoSolution);
    };
    // u ∘ λ = g for affine λ. After right-centering both sides, λ is a pure
    // scaling α with ũ_k·α^k = g̃_k.
    let dd = int(d as i64);
    let tu = -(u.coeff(d - 1) / (u.coeff(d) * &dd));
    let tg = -(g.coeff(d - 1) / (g.coeff(d) * &dd));
    let (uc, gc) = (u.shift(&tu), g.shift(&tg));
    let mut system = BinomialSystem::new();
    for k in 0..=d {
        system.push(uc.coeff(k), k, gc.coeff(k));
    }
    let constraint = system.solve();
    if !constraint.is_solvable() {
        return Ok(LeftSolve::NoSolution);
    }
    match constraint.rational_witness() {
        Some(alpha) => {
            let lambda = AffineMap::new(alpha.clone(), &tu - &alpha * &tg).expect("α ≠ 0");
            Ok(LeftSolve::Solution {
                x: lambda.to_poly().compose(&h),
            })
        }
        None => Ok(LeftSolve::NoRationalWitness { constraint }),
    }
}

/// One normalized decomposition per divisor `m` of `deg f` (including 1 and `deg f`).
pub fn all_decompositions(f: &Poly) -> Result<Vec<Decomposition>> {
    let n = require_degree(f, 2)?;
    Ok((1..=n)
        .filter(|m| n % m == 0)
        .filter_map(|m| split(f, m))
        .collect())
}

/// The six polynomials relating the two sides of `A ∘ C = B ∘ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RittFactorization {
    #[serde(serialize_with = "ser_poly")]
    pub u: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub a_tilde: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub b_tilde: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub v: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub c_tilde: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub d_tilde: Poly,
}

impl RittFactorization {
    /// Checks all five defining identities against the original quadruple.
    pub fn verify(&self, a: &Poly, c: &Poly, b: &Poly, d: &Poly) -> bool {
        self.u.compose(&self.a_tilde) == *a
            && self.u.compose(&self.b_tilde) == *b
            && self.c_tilde.compose(&self.v) == *c
            && self.d_tilde.compose(&self.v) == *d
            && self.a_tilde.compose(&self.c_tilde) == self.b_tilde.compose(&self.d_tilde)
    }
}

/// Factors a solution of `a ∘ c = b ∘ d` through common outer and inner parts.
pub fn ritt_first(a: &Poly, c: &Poly, b: &Poly, d: &Poly) -> Result<RittFactorization> {
    let [da, dc, db, dd] = [a, c, b, d].map(|p| require_degree(p, 1));
    let (da, dc, db, dd) = (da?, dc?, db?, dd?);
    if a.compose(c) != b.compose(d) {
        return Err(Error::NotAnIdentity);
    }
    let inconsistent = |what: &str| Error::InternalInconsistency(what.to_string());

    let gu = da.gcd(&db);
    let left = split(a, da / gu).ok_or_else(|| inconsistent("no left factor of a"))?;
    let gv = dc.gcd(&dd);
    let right_c = split(c, gv).ok_or_else(|| inconsistent("no right factor of c"))?;
    let right_d = split(d, gv).ok_or_else(|| inconsistent("no right factor of d"))?;
    if right_c.right != right_d.right {
        return Err(inconsistent("c and d have different inner factors"));
    }
    let (u, a_tilde) = (left.left, left.right);
    let (c_tilde, v) = (right_c.left, right_c.right);
    let d_tilde = right_d.left;
    // B̃ is pinned down by Ã ∘ C̃ = B̃ ∘ D̃; right division is unique.
    let b_tilde = right_divide(&a_tilde.compose(&c_tilde), &d_tilde)
        .ok_or_else(|| inconsistent("Ã∘C̃ is not divisible by D̃"))?;
    let out = RittFactorization {
        u,
        a_tilde,
        b_tilde,
        v,
        c_tilde,
        d_tilde,
    };
    if !out.verify(a, c, b, d) {
        return Err(inconsistent("factorization does not reproduce the inputs"));
    }
    Ok(out)
}

/// Affine dressings `ν, σ₁, σ₂, μ` of a second-theorem quadruple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dressing {
    pub nu: AffineMap,
    pub sigma1: AffineMap,
    pub sigma2: AffineMap,
    pub mu: AffineMap,
}

impl Default for Dressing {
    fn default() -> Self {
        Dressing {
            nu: AffineMap::identity(),
            sigma1: AffineMap::identity(),
            sigma2: AffineMap::identity(),
            mu: AffineMap::identity(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RittSecondFamily {
    /// `A = z^s R(z)^n`, `C = z^n`, `B = z^n`, `D = z^s R(z^n)`.
    Power { r: Poly, n: usize, s: usize },
    /// `A = T_m`, `C = T_n`, `B = T_n`, `D = T_m`.
    Chebyshev { m: usize, n: usize },
}

/// Quadruple with `a ∘ c = b ∘ d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RittQuadruple {
    #[serde(serialize_with = "ser_poly")]
    pub a: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub c: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub b: Poly,
    #[serde(serialize_with = "ser_poly")]
    pub d: Poly,
}

impl RittQuadruple {
    pub fn holds(&self) -> bool {
        self.a.compose(&self.c) == self.b.compose(&self.d)
    }
}

pub fn ritt_second_family(family: &RittSecondFamily, dressing: &Dressing) -> Result<RittQuadruple> {
    let (core_a, core_c, core_b, core_d) = match family {
        RittSecondFamily::Power { r, n, s } => {
            if *n == 0 || s.gcd(n) != 1 {
                return Err(Error::BadParams(format!(
                    "need n ≥ 1 and gcd(s, n) = 1, got s = {s}, n = {n}"
                )));
            }
            if r.is_zero() {
                return Err(Error::BadParams("R must be nonzero".into()));
            }
            let one = Rat::from_integer(1.into());
            let zs = Poly::monomial(one.clone(), *s);
            let zn = Poly::monomial(one, *n);
            (
                &zs * &r.pow(*n),
                zn.clone(),
                zn.clone(),
                &zs * &r.compose(&zn),
            )
        }
        RittSecondFamily::Chebyshev { m, n } => {
            if *m == 0 || *n == 0 || m.gcd(n) != 1 {
                return Err(Error::BadParams(format!(
                    "need gcd(m, n) = 1, got m = {m}, n = {n}"
                )));
            }
            (chebyshev(*m), chebyshev(*n), chebyshev(*n), chebyshev(*m))
        }
    };
    let Dressing {
        nu,
        sigma1,
        sigma2,
        mu,
    } = dressing;
    let wrap = |outer: &AffineMap, p: &Poly, inner: &AffineMap| {
        outer.to_poly().compose(&p.compose(&inner.to_poly()))
    };
    Ok(RittQuadruple {
        a: wrap(nu, &core_a, &sigma1.inverse()),
        c: wrap(sigma1, &core_c, mu),
        b: wrap(nu, &core_b, &sigma2.inverse()),
        d: wrap(sigma2, &core_d, mu),
    })
}
