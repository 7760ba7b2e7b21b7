//! Left/right amenability of a finitely generated polynomial semigroup.
//!
//! Every generator is compared with one non-special pivot: sharing an
//! iterate with it on the left side, forming a twisted pair on the right.

use rayon::prelude::*;
use serde::Serialize;

use super::predicates::{
    common_iterate, commutes_with_iterate, twisted_pair, Certificate, Decision, SearchBounds,
    Status,
};
use crate::error::{require_degree, Error, Result};
use crate::forms::is_special;
use crate::poly::Poly;

pub const NOTE_POWER_JOINED: &str =
    "every generator shares an iterate with the non-special pivot: the semigroup is power joined, hence left amenable";
pub const NOTE_NOT_POWER_JOINED: &str =
    "a generator shares no iterate with the non-special pivot: the semigroup is not power joined, hence not left amenable";
pub const NOTE_POWER_TWISTED: &str =
    "every generator forms a twisted pair with the non-special pivot: the semigroup is power twisted, hence right amenable";
pub const NOTE_NOT_POWER_TWISTED: &str =
    "a generator forms no twisted pair with the non-special pivot: the semigroup is not power twisted, hence not right amenable";
pub const NOTE_FREE: &str =
    "multiplicatively independent degrees: the pair generates a free subsemigroup of rank two, which is neither left nor right amenable";
pub const NOTE_BOUNDS: &str = "search bounds exhausted before a certificate was found";
pub const NOTE_ALL_SPECIAL: &str =
    "all generators are special: the characterization does not apply; only commutativity is tested";
pub const NOTE_ABELIAN: &str = "the generators commute pairwise: abelian semigroups are amenable";

/// Certificate for one generator against the pivot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    pub generator: usize,
    pub pivot: usize,
    #[serde(flatten)]
    pub decision: Decision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SideVerdict {
    pub status: Status,
    pub certificates: Vec<PairCertificate>,
}

impl SideVerdict {
    fn from_pairs(certificates: Vec<PairCertificate>) -> Self {
        let statuses: Vec<_> = certificates.iter().map(|c| c.decision.status()).collect();
        let status = if statuses.contains(&Status::No) {
            Status::No
        } else if statuses.iter().all(|s| *s == Status::Yes) {
            Status::Yes
        } else {
            Status::Unknown
        };
        SideVerdict {
            status,
            certificates,
        }
    }

    fn unknown() -> Self {
        SideVerdict {
            status: Status::Unknown,
            certificates: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub left_amenable: SideVerdict,
    pub right_amenable: SideVerdict,
    pub amenable: Status,
    /// Index of the non-special generator every other one is compared with.
    pub pivot: Option<usize>,
    pub all_special: bool,
    pub notes: Vec<String>,
}

fn both(left: Status, right: Status) -> Status {
    match (left, right) {
        (Status::Yes, Status::Yes) => Status::Yes,
        (Status::No, _) | (_, Status::No) => Status::No,
        _ => Status::Unknown,
    }
}

fn left_pair(q: &Poly, pivot: &Poly, bounds: &SearchBounds) -> Result<Decision> {
    let d = common_iterate(q, pivot, bounds)?;
    if let Decision::Unknown(_) = d {
        if let Some(l) = commutes_with_iterate(q, pivot, bounds)? {
            return Ok(Decision::Yes(Certificate::CommutesWithIterate { l }));
        }
    }
    Ok(d)
}

pub fn classify(generators: &[Poly], bounds: &SearchBounds) -> Result<Verdict> {
    if generators.is_empty() {
        return Err(Error::EmptyInput);
    }
    for g in generators {
        require_degree(g, 2)?;
    }
    let special = generators
        .par_iter()
        .map(|g| is_special(g).map(|k| k.is_special()))
        .collect::<Result<Vec<_>>>()?;
    let Some(pivot) = special.iter().position(|s| !s) else {
        return classify_all_special(generators, bounds);
    };
    let pv = &generators[pivot];

    let pairs = generators
        .par_iter()
        .enumerate()
        .map(|(i, q)| -> Result<(PairCertificate, PairCertificate)> {
            let left = left_pair(q, pv, bounds)?;
            let right = twisted_pair(q, pv, bounds)?;
            Ok((
                PairCertificate {
                    generator: i,
                    pivot,
                    decision: left,
                },
                PairCertificate {
                    generator: i,
                    pivot,
                    decision: right,
                },
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let (left, right): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let (left, right) = (
        SideVerdict::from_pairs(left),
        SideVerdict::from_pairs(right),
    );

    let mut notes = Vec::new();
    let any_free = left.certificates.iter().any(|c| {
        matches!(
            c.decision,
            Decision::No(Certificate::DegreeObstruction { .. })
        )
    });
    match left.status {
        Status::Yes => notes.push(NOTE_POWER_JOINED),
        Status::No => notes.push(NOTE_NOT_POWER_JOINED),
        Status::Unknown => {}
    }
    match right.status {
        Status::Yes => notes.push(NOTE_POWER_TWISTED),
        Status::No => notes.push(NOTE_NOT_POWER_TWISTED),
        Status::Unknown => {}
    }
    if any_free {
        notes.push(NOTE_FREE);
    }
    if left.status == Status::Unknown || right.status == Status::Unknown {
        notes.push(NOTE_BOUNDS);
    }
    Ok(Verdict {
        amenable: both(left.status, right.status),
        left_amenable: left,
        right_amenable: right,
        pivot: Some(pivot),
        all_special: false,
        notes: notes.into_iter().map(String::from).collect(),
    })
}

/// Without a non-special generator only commutativity decides anything.
/// Shared iterates and twisted pairs with generator 0 are attached as
/// supporting certificates; obstructions are not, since they prove nothing here.
fn classify_all_special(generators: &[Poly], bounds: &SearchBounds) -> Result<Verdict> {
    let pairs: Vec<(usize, usize)> = (0..generators.len())
        .flat_map(|i| (i + 1..generators.len()).map(move |j| (i, j)))
        .collect();
    let commuting = pairs.par_iter().all(|&(i, j)| {
        generators[i].compose(&generators[j]) == generators[j].compose(&generators[i])
    });
    let mut notes = vec![NOTE_ALL_SPECIAL.to_string()];
    if !commuting {
        notes.push(NOTE_BOUNDS.to_string());
        return Ok(Verdict {
            left_amenable: SideVerdict::unknown(),
            right_amenable: SideVerdict::unknown(),
            amenable: Status::Unknown,
            pivot: None,
            all_special: true,
            notes,
        });
    }
    notes.push(NOTE_ABELIAN.to_string());
    let reference = &generators[0];
    let supporting = generators
        .par_iter()
        .map(|q| -> Result<(Decision, Decision)> {
            Ok((
                common_iterate(q, reference, bounds)?,
                twisted_pair(q, reference, bounds)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let commute_cert = |i| PairCertificate {
        generator: i,
        pivot: 0,
        decision: Decision::Yes(Certificate::CommutesWithIterate { l: 1 }),
    };
    let side = |pick: fn(&(Decision, Decision)) -> &Decision| SideVerdict {
        status: Status::Yes,
        certificates: supporting
            .iter()
            .enumerate()
            .map(|(i, ds)| match pick(ds) {
                d @ Decision::Yes(_) => PairCertificate {
                    generator: i,
                    pivot: 0,
                    decision: d.clone(),
                },
                _ => commute_cert(i),
            })
            .collect(),
    };
    Ok(Verdict {
        left_amenable: side(|ds| &ds.0),
        right_amenable: side(|ds| &ds.1),
        amenable: Status::Yes,
        pivot: None,
        all_special: true,
        notes,
    })
}
