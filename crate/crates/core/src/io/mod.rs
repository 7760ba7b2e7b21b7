//! Parsing, JSON reports and serde helpers.
//!
//! Rationals are always written as strings `"p"` or `"p/q"`.

mod parse;
pub mod report;

use serde::ser::SerializeSeq;
use serde::Serializer;

use crate::poly::{AffineMap, Poly, Rat};

pub use parse::parse_poly;

pub(crate) fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ser_rat_opt<S: Serializer>(x: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_rat(x, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn ser_rats<S: Serializer>(xs: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

pub(crate) fn ser_poly<S: Serializer>(p: &Poly, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(p)
}

pub(crate) fn ser_affine<S: Serializer>(m: &AffineMap, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(m)
}

pub(crate) fn ser_affine_opt<S: Serializer>(
    m: &Option<AffineMap>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match m {
        Some(m) => ser_affine(m, s),
        None => s.serialize_none(),
    }
}
