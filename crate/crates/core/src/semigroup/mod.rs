//! Semigroups of polynomials under composition.

mod classify;
mod fingerprint;
mod predicates;
mod semidirect;

pub use classify::{
    classify, PairCertificate, SideVerdict, Verdict, NOTE_ABELIAN, NOTE_ALL_SPECIAL, NOTE_BOUNDS,
    NOTE_FREE, NOTE_NOT_POWER_JOINED, NOTE_NOT_POWER_TWISTED, NOTE_POWER_JOINED,
    NOTE_POWER_TWISTED,
};
pub use predicates::{
    common_iterate, commutes_with_iterate, free_collision_search, multiplicatively_dependent,
    twisted_pair, Certificate, Decision, LeadingCoeffReason, Letter, SearchBounds, Status, Word,
};
pub use semidirect::{SemidirectContext, SemidirectElement};
