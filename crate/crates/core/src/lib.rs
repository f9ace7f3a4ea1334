pub mod algebra;
pub mod endomorphism;
pub mod error;
pub mod expr;
pub mod modular;
pub mod oracle;
pub mod random;
pub mod scalar;
pub mod semigroup;
pub mod verify;

pub use algebra::{Element, FloatElement, GenTerm, Subalgebra};
pub use endomorphism::{Endomorphism, UnitaryPair};
pub use error::{Error, Result};
pub use expr::parse_expression;
pub use modular::{KmsWitness, ModularContext};
pub use oracle::GradedActionModel;
pub use random::Sampler;
pub use scalar::{ExactScalar, Exponent, Gaussian, Rational};
pub use semigroup::{Degree, Index, Letter, Permutation2D, RewriteOrder, Word};
