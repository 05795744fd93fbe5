use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MiopError {
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("not a polynomial in eta: {0}")]
    NotInEta(String),
    #[error("non-exact division")]
    NonExactDivision,
    #[error("unrepresentable shift: {0}")]
    UnrepresentableShift(String),
    #[error("coordinate models differ")]
    ModelMismatch,
    #[error("missing square-root witness: {0}")]
    MissingWitness(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, MiopError>;
