use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree too low: need at least {required}, got {found:?}")]
    DegreeTooLow {
        required: usize,
        found: Option<usize>,
    },

    #[error("bad degree: {0}")]
    BadDegree(String),

    #[error("inputs do not satisfy a∘c = b∘d")]
    NotAnIdentity,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("operation needs a finite symmetry group")]
    InfiniteGroup,

    #[error("input polynomial is special (conjugate to z^n or ±T_n)")]
    SpecialInput,

    #[error("bad subgroup: {0}")]
    BadSubgroup(String),

    #[error("symmetry elements of order {0} are not rational")]
    NotRational(u64),

    #[error("empty generator list")]
    EmptyInput,

    #[error("affine map needs a nonzero linear coefficient")]
    ZeroSlope,

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("not a polynomial at offset {offset}: negative exponent")]
    NonPolynomial { offset: usize },

    #[error("unsupported variable '{name}' at offset {offset}; polynomials use 'z'")]
    UnsupportedVariable { offset: usize, name: char },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_degree(p: &crate::Poly, required: usize) -> Result<usize> {
    match p.degree() {
        Some(n) if n >= required => Ok(n),
        found => Err(Error::DegreeTooLow { required, found }),
    }
}
