use thiserror::Error;

use crate::semigroup::{Degree, Index};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("theta is not a bijection: {0}")]
    NotABijection(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("flip needs m = n, got m = {m}, n = {n}")]
    FlipRequiresSquare { m: Index, n: Index },
    #[error("m and n must be positive")]
    EmptyAlphabet,
    #[error("degree {requested} exceeds word degree {available}")]
    DegreeTooLarge { requested: Degree, available: Degree },
    #[error("elements live over different theta")]
    ThetaMismatch,
    #[error("not of unit modulus: {0}")]
    NotUnitModulus(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("not unitary: {0}")]
    NotUnitary(String),
    #[error("pair is not twisted: {0}")]
    NotTwisted(String),
    #[error("generator images violate the commutation relations: {0}")]
    RelationsViolated(String),
    #[error("gallery example needs a different theta: {0}")]
    WrongTheta(String),
    #[error("outside the evaluation window: {0}")]
    OutOfWindow(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
