use thiserror::Error;

use crate::scalar::FieldSpec;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    InvalidPrime(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{n}! is not invertible in GF({p})")]
    NonInvertibleFactorial { n: usize, p: u32 },
    #[error("characteristic guard: degree {degree} needs characteristic 0 or > {needed} and != 2, got {characteristic}")]
    CharacteristicGuard {
        degree: usize,
        needed: usize,
        characteristic: u32,
    },
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("structures do not match: {0}")]
    StructureMismatch(String),
    #[error("not a non-abelian 2-cocycle: failing {0}")]
    CocycleInvalid(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("search needs {needed} candidates, budget is {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u64 },
    #[error("automorphism does not preserve the image of C")]
    NotCPreserving,
    #[error("membership violated: {0}")]
    MembershipViolation(String),
    #[error("module coalgebra is not abelian")]
    NonAbelianModule,
    #[error("map is not invertible")]
    NotInvertible,
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("index {index} out of range 1..={n}")]
    OutOfRange { index: usize, n: usize },
}
