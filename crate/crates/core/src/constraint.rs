//! Existence of a nonzero common root for binomial constraints `c·t^e = r`.
//!
//! The detectors in `forms` and `decompose` reduce "is there a complex
//! scaling factor with property X" to a finite set of such equations. A
//! common root exists iff the gcd of the nontrivial ones is nonconstant, so
//! the question is settled without leaving ℚ.

use num_traits::Zero;
use serde::Serialize;

use crate::poly::{rational_roots_of, Poly, Rat};

#[derive(Clone, Debug, Default)]
pub struct BinomialSystem {
    polys: Vec<Poly>,
    /// (exponent, value) pairs for `t^e = value`, used to enumerate rational roots.
    pure: Vec<(usize, Rat)>,
    inconsistent: bool,
}

/// Outcome of solving a [`BinomialSystem`] for `t ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Solvability {
    /// Every nonzero `t` satisfies the system.
    Any,
    /// Solutions are exactly the roots of `gcd`; `rational` lists those in ℚ.
    Roots {
        #[serde(serialize_with = "crate::io::ser_poly")]
        gcd: Poly,
        #[serde(serialize_with = "crate::io::ser_rats")]
        rational: Vec<Rat>,
    },
    NoSolution,
}

impl Solvability {
    pub fn is_solvable(&self) -> bool {
        !matches!(self, Solvability::NoSolution)
    }

    /// A rational solution, if one exists (`1` when any value works).
    pub fn rational_witness(&self) -> Option<Rat> {
        match self {
            Solvability::Any => Some(Rat::from_integer(1.into())),
            Solvability::Roots { rational, .. } => rational.first().cloned(),
            Solvability::NoSolution => None,
        }
    }
}

impl BinomialSystem {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `coef · t^exp = rhs`.
    pub fn push(&mut self, coef: Rat, exp: usize, rhs: Rat) {
        match (coef.is_zero(), rhs.is_zero()) {
            (true, true) => {}
            (true, false) => self.inconsistent = true,
            // t^e = 0 has no nonzero solution
            (false, true) if exp > 0 => self.inconsistent = true,
            _ if exp == 0 => {
                if coef != rhs {
                    self.inconsistent = true;
                }
            }
            _ => {
                let value = &rhs / &coef;
                let mut c = vec![-value.clone()];
                c.resize(exp, Rat::zero());
                c.push(Rat::from_integer(1.into()));
                self.polys.push(Poly::new(c));
                self.pure.push((exp, value));
            }
        }
    }

    pub fn solve(&self) -> Solvability {
        if self.inconsistent {
            return Solvability::NoSolution;
        }
        let Some(first) = self.polys.first() else {
            return Solvability::Any;
        };
        let gcd = self.polys[1..].iter().fold(first.clone(), |g, p| g.gcd(p));
        if gcd.degree() == Some(0) {
            return Solvability::NoSolution;
        }
        // Any rational root is a root of the lowest-degree binomial.
        let (e, v) = self.pure.iter().min_by_key(|(e, _)| *e).expect("nonempty");
        let rational = rational_roots_of(v, *e as u32)
            .into_iter()
            .filter(|t| gcd.evaluate(t).is_zero())
            .collect();
        Solvability::Roots { gcd, rational }
    }
}
