use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid hull: {0}")]
    InvalidHull(String),
    #[error("exponent fit needs at least two usable grid cells, have {0}")]
    NotEnoughCells(usize),
}
