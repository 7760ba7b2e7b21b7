//! Exact polynomial dynamics over ℚ: composition, decomposition, normal
//! forms, affine symmetries and amenability of polynomial semigroups.

mod constraint;
mod decompose;
mod error;
mod forms;
pub mod io;
mod poly;
mod symmetry;

pub mod semigroup;

pub use constraint::{BinomialSystem, Solvability};
pub use decompose::{
    all_decompositions, left_compose_solve, right_divide, right_factor, ritt_first,
    ritt_second_family, Decomposition, Dressing, LeftSolve, RittFactorization, RittQuadruple,
    RittSecondFamily,
};
pub use error::{Error, Result};
pub use forms::{
    center, chebyshev, is_conjugate_to_chebyshev, is_conjugate_to_power, is_special,
    linear_equivalence, CenteredForm, ChebyshevWitness, LinearEquivalence, Sign, SpecialKind,
};
pub use poly::{int, rat, rat_pow, rat_to_string, rational_roots_of, AffineMap, Poly, Rat};
pub use symmetry::{
    aut_group, aut_stabilization, g_group, gamma_apply, verify_aut, verify_twist, CyclicTwist,
    GroupOrder, Stabilization,
};
