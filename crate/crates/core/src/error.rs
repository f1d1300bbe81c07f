use thiserror::Error;

use crate::descent::EquivarianceViolation;
use crate::poly::PolynomialF;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("absolute degree {degree} exceeds the configured cap {cap}")]
    CapacityExceeded { degree: usize, cap: usize },

    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("modules are over different algebras")]
    AlgebraMismatch,

    #[error("matrix is singular (rank {rank})")]
    Singular { rank: usize },

    #[error("matrix is not invertible")]
    NotInvertible,

    #[error("Moore determinant identity violated for q = {q}, r = {r}")]
    IdentityViolated { q: u64, r: usize },

    #[error("module is not equivariant: {0}")]
    NotEquivariant(EquivarianceViolation),

    #[error("ideal is not Frobenius-stable in degree {degree}: {witness} lies outside")]
    NotStable { degree: u32, witness: PolynomialF },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency check failed: {0}")]
    Verification(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
