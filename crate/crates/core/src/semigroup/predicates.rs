//! Pairwise dynamical predicates: shared iterates, twisted pairs, commutation.
//!
//! The underlying existence questions are unbounded, so every search runs
//! under [`SearchBounds`]. A `No` is only returned with a proof object.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::fingerprint::{reduce_pair, sample_points, ModPoly};
use crate::error::{require_degree, Error, Result};
use crate::io::ser_rat;
use crate::poly::{rat_pow, Poly, Rat};

const PROBES: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    /// Largest multiplier `t` tried on the minimal exponent pair.
    pub tmax: usize,
    /// Largest iterate tried by [`commutes_with_iterate`].
    pub lmax: usize,
    /// Longest word tried by [`free_collision_search`].
    pub wordmax: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            tmax: 6,
            lmax: 6,
            wordmax: 8,
        }
    }
}

impl SearchBounds {
    pub fn new(tmax: usize, lmax: usize, wordmax: usize) -> Result<Self> {
        if tmax == 0 || lmax == 0 || wordmax == 0 {
            return Err(Error::BadParams("search bounds must be at least 1".into()));
        }
        Ok(SearchBounds {
            tmax,
            lmax,
            wordmax,
        })
    }
}

/// Why the leading coefficients of `A^{∘k}` and `B^{∘l}` can never agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LeadingCoeffReason {
    /// `|lc A|^{m−1} ≠ |lc B|^{n−1}`.
    Magnitude,
    /// The signs differ for every admissible exponent pair.
    Sign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    /// `A^{∘k} = B^{∘l}`.
    CommonIterate {
        k: usize,
        l: usize,
    },
    /// `A^{∘2k} = A^{∘k} ∘ B^{∘l}` and `B^{∘2l} = B^{∘l} ∘ A^{∘k}`.
    TwistedPair {
        k: usize,
        l: usize,
    },
    /// No `d, p, q` with `n = d^p`, `m = d^q`.
    DegreeObstruction {
        n: usize,
        m: usize,
    },
    /// `lc(A)^{(n^k−1)/(n−1)} ≠ lc(B)^{(m^l−1)/(m−1)}` whenever `n^k = m^l`.
    LeadingCoeffObstruction {
        n: usize,
        m: usize,
        #[serde(serialize_with = "ser_rat")]
        lc_a: Rat,
        #[serde(serialize_with = "ser_rat")]
        lc_b: Rat,
        reason: LeadingCoeffReason,
    },
    /// `A ∘ B^{∘l} = B^{∘l} ∘ A`.
    CommutesWithIterate {
        l: usize,
    },
    BoundExhausted {
        bounds: SearchBounds,
    },
}

impl Certificate {
    /// Re-checks the certificate for the pair `(a, b)` from scratch.
    pub fn verify(&self, a: &Poly, b: &Poly) -> bool {
        match self {
            Certificate::CommonIterate { k, l } => a.iterate(*k) == b.iterate(*l),
            Certificate::TwistedPair { k, l } => {
                let (ak, bl) = (a.iterate(*k), b.iterate(*l));
                ak.compose(&ak) == ak.compose(&bl) && bl.compose(&bl) == bl.compose(&ak)
            }
            Certificate::DegreeObstruction { n, m } => {
                a.degree() == Some(*n)
                    && b.degree() == Some(*m)
                    && multiplicatively_dependent(*n as u64, *m as u64).is_none()
            }
            Certificate::LeadingCoeffObstruction { .. } => {
                matches!(leading_coeff_obstruction(a, b), Some(c) if c == *self)
            }
            Certificate::CommutesWithIterate { l } => {
                let bl = b.iterate(*l);
                a.compose(&bl) == bl.compose(a)
            }
            Certificate::BoundExhausted { .. } => true,
        }
    }
}

/// Three-valued answer carrying its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Certificate),
    No(Certificate),
    Unknown(Certificate),
}

impl Decision {
    pub fn status(&self) -> Status {
        match self {
            Decision::Yes(_) => Status::Yes,
            Decision::No(_) => Status::No,
            Decision::Unknown(_) => Status::Unknown,
        }
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            Decision::Yes(c) | Decision::No(c) | Decision::Unknown(c) => c,
        }
    }
}

impl Serialize for Decision {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            verdict: Status,
            certificate: &'a Certificate,
        }
        Repr {
            verdict: self.status(),
            certificate: self.certificate(),
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest `d ≥ 2` with `n = d^p`, `m = d^q`, returned as `(d, p, q)`.
pub fn multiplicatively_dependent(n: u64, m: u64) -> Option<(u64, u32, u32)> {
    if n < 2 || m < 2 {
        return None;
    }
    let (fnn, fm) = (factorize(n), factorize(m));
    if fnn.len() != fm.len() || fnn.iter().zip(&fm).any(|(a, b)| a.0 != b.0) {
        return None;
    }
    let p = fnn.iter().fold(0, |g, &(_, e)| g.gcd(&e));
    let q = fm.iter().fold(0, |g, &(_, e)| g.gcd(&e));
    // exponent vectors must be parallel
    if fnn.iter().zip(&fm).any(|(a, b)| a.1 / p != b.1 / q) {
        return None;
    }
    let d = fnn.iter().map(|&(prime, e)| prime.pow(e / p)).product();
    Some((d, p, q))
}

/// Minimal `(k₀, l₀)` with `n^{k₀} = m^{l₀}`; every solution is a multiple.
fn minimal_exponents(n: usize, m: usize) -> Option<(usize, usize)> {
    let (_, p, q) = multiplicatively_dependent(n as u64, m as u64)?;
    let g = p.gcd(&q);
    Some(((q / g) as usize, (p / g) as usize))
}

/// Sign of `lc^{(deg^k − 1)/(deg − 1)}` is negative.
fn iterate_lc_negative(lc: &Rat, deg: usize, k: usize) -> bool {
    // (deg^k − 1)/(deg − 1) = 1 + deg + … + deg^{k−1}: odd when deg is even, ≡ k otherwise
    lc.is_negative() && (deg.is_multiple_of(2) || k % 2 == 1)
}

/// Shows `lc(A^{∘k}) ≠ lc(B^{∘l})` for every admissible `(k, l)`, if possible.
///
/// Along `n^k = m^l = N` the exponents are `(N−1)/(n−1)` and `(N−1)/(m−1)`,
/// so the magnitudes agree iff `|lc A|^{m−1} = |lc B|^{n−1}`, independent
/// of `N`. Signs depend only on the parity of the multiplier.
fn leading_coeff_obstruction(a: &Poly, b: &Poly) -> Option<Certificate> {
    let (n, m) = (a.degree()?, b.degree()?);
    let (k0, l0) = minimal_exponents(n, m)?;
    let (lc_a, lc_b) = (a.leading()?.clone(), b.leading()?.clone());
    let cert = |reason| Certificate::LeadingCoeffObstruction {
        n,
        m,
        lc_a: lc_a.clone(),
        lc_b: lc_b.clone(),
        reason,
    };
    if rat_pow(&lc_a.abs(), m as i64 - 1) != rat_pow(&lc_b.abs(), n as i64 - 1) {
        return Some(cert(LeadingCoeffReason::Magnitude));
    }
    let sign_differs =
        |t: usize| iterate_lc_negative(&lc_a, n, k0 * t) != iterate_lc_negative(&lc_b, m, l0 * t);
    if sign_differs(1) && sign_differs(2) {
        return Some(cert(LeadingCoeffReason::Sign));
    }
    None
}

fn pair_degrees(a: &Poly, b: &Poly) -> Result<(usize, usize)> {
    Ok((require_degree(a, 2)?, require_degree(b, 2)?))
}

/// Modular screen for `lhs(x) == rhs(x)`; `true` means "possibly equal".
fn screen(a: &Poly, b: &Poly, check: impl Fn(&ModPoly, &ModPoly, u64) -> bool) -> bool {
    match reduce_pair(a, b) {
        Some((ma, mb)) => sample_points(PROBES)
            .into_iter()
            .all(|x| check(&ma, &mb, x)),
        None => true,
    }
}

/// Searches for `A^{∘k} = B^{∘l}`.
pub fn common_iterate(a: &Poly, b: &Poly, bounds: &SearchBounds) -> Result<Decision> {
    let (n, m) = pair_degrees(a, b)?;
    let Some((k0, l0)) = minimal_exponents(n, m) else {
        return Ok(Decision::No(Certificate::DegreeObstruction { n, m }));
    };
    if let Some(cert) = leading_coeff_obstruction(a, b) {
        return Ok(Decision::No(cert));
    }
    let (lc_a, lc_b) = (a.leading().expect("nonzero"), b.leading().expect("nonzero"));
    for t in 1..=bounds.tmax {
        let (k, l) = (k0 * t, l0 * t);
        if iterate_lc_negative(lc_a, n, k) != iterate_lc_negative(lc_b, m, l) {
            continue;
        }
        if !screen(a, b, |ma, mb, x| ma.eval_iter(x, k) == mb.eval_iter(x, l)) {
            continue;
        }
        if a.iterate(k) == b.iterate(l) {
            return Ok(Decision::Yes(Certificate::CommonIterate { k, l }));
        }
    }
    Ok(Decision::Unknown(Certificate::BoundExhausted {
        bounds: *bounds,
    }))
}

/// Searches for `A^{∘2k} = A^{∘k} ∘ B^{∘l}` together with `B^{∘2l} = B^{∘l} ∘ A^{∘k}`.
pub fn twisted_pair(a: &Poly, b: &Poly, bounds: &SearchBounds) -> Result<Decision> {
    let (n, m) = pair_degrees(a, b)?;
    let Some((k0, l0)) = minimal_exponents(n, m) else {
        return Ok(Decision::No(Certificate::DegreeObstruction { n, m }));
    };
    for t in 1..=bounds.tmax {
        let (k, l) = (k0 * t, l0 * t);
        let plausible = screen(a, b, |ma, mb, x| {
            let (ak, bl) = (ma.eval_iter(x, k), mb.eval_iter(x, l));
            ma.eval_iter(ak, k) == ma.eval_iter(bl, k) && mb.eval_iter(bl, l) == mb.eval_iter(ak, l)
        });
        if !plausible {
            continue;
        }
        let (ak, bl) = (a.iterate(k), b.iterate(l));
        if ak.compose(&ak) == ak.compose(&bl) && bl.compose(&bl) == bl.compose(&ak) {
            return Ok(Decision::Yes(Certificate::TwistedPair { k, l }));
        }
    }
    Ok(Decision::Unknown(Certificate::BoundExhausted {
        bounds: *bounds,
    }))
}

/// Smallest `l ≤ lmax` with `A ∘ B^{∘l} = B^{∘l} ∘ A`.
pub fn commutes_with_iterate(a: &Poly, b: &Poly, bounds: &SearchBounds) -> Result<Option<usize>> {
    pair_degrees(a, b)?;
    for l in 1..=bounds.lmax {
        if !screen(a, b, |ma, mb, x| {
            ma.eval(mb.eval_iter(x, l)) == mb.eval_iter(ma.eval(x), l)
        }) {
            continue;
        }
        let bl = b.iterate(l);
        if a.compose(&bl) == bl.compose(a) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Letter {
    A,
    B,
}

/// Composition word; `[x₁, …, x_k]` denotes `x₁ ∘ … ∘ x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn realize(&self, a: &Poly, b: &Poly) -> Poly {
        self.0
            .iter()
            .rev()
            .fold(Poly::z(), |acc, letter| match letter {
                Letter::A => a.compose(&acc),
                Letter::B => b.compose(&acc),
            })
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "A",
                Letter::B => "B",
            })?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// First pair of distinct words (by length, then `A < B`) with equal compositions.
///
/// A `None` is evidence of freeness up to `wordmax`, never a proof.
pub fn free_collision_search(
    a: &Poly,
    b: &Poly,
    bounds: &SearchBounds,
) -> Result<Option<(Word, Word)>> {
    let (n, m) = pair_degrees(a, b)?;
    let points = sample_points(PROBES);
    let reduced = reduce_pair(a, b);
    let eval = |w: &Word| -> Vec<u64> {
        match &reduced {
            Some((ma, mb)) => points
                .iter()
                .map(|&x| {
                    w.0.iter().rev().fold(x, |acc, l| match l {
                        Letter::A => ma.eval(acc),
                        Letter::B => mb.eval(acc),
                    })
                })
                .collect(),
            None => Vec::new(),
        }
    };
    let degree = |w: &Word| -> BigUint {
        w.0.iter().fold(BigUint::one(), |acc, l| {
            acc * match l {
                Letter::A => n,
                Letter::B => m,
            }
        })
    };
    let mut seen: HashMap<(BigUint, Vec<u64>), Vec<Word>> = HashMap::new();
    let mut layer = vec![Word(Vec::new())];
    for _ in 0..bounds.wordmax {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for w in &layer {
            for letter in [Letter::A, Letter::B] {
                let mut v = w.0.clone();
                v.push(letter);
                next.push(Word(v));
            }
        }
        for w in &next {
            let key = (degree(w), eval(w));
            let bucket = seen.entry(key).or_default();
            if !bucket.is_empty() {
                let poly = w.realize(a, b);
                if let Some(prev) = bucket.iter().find(|u| u.realize(a, b) == poly) {
                    return Ok(Some((prev.clone(), w.clone())));
                }
            }
            bucket.push(w.clone());
        }
        layer = next;
    }
    Ok(None)
}
