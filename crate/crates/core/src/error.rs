use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VilenkinError {
    #[error("value {value} out of range (limit {limit})")]
    Range { value: usize, limit: usize },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("resolution too small: need depth {required}, structure has N = {available}")]
    Resolution { required: usize, available: usize },

    #[error(
        "capacity exceeded: construction needs resolution N = {required_n}, have N = {available_n}"
    )]
    Capacity {
        required_n: usize,
        available_n: usize,
    },

    #[error("undefined for argument: {0}")]
    Undefined(String),

    #[error("operands live on different Vilenkin structures")]
    StructureMismatch,

    #[error("exponent p = {0} outside the admissible range")]
    Exponent(f64),
}

pub type Result<T, E = VilenkinError> = std::result::Result<T, E>;
