use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero rational function")]
    DivisionByZero,
    #[error("unknown variable {0} in derivative")]
    UnknownVariable(String),
    #[error("essential singularity: no Laurent expansion of {0} at {1} = 0")]
    EssentialSingularity(String, String),
    #[error("tower too short: need {needed} levels, have {have}")]
    TowerTooShort { needed: usize, have: usize },
    #[error("constant derivation failed: {0}")]
    Derivation(String),
    #[error("lowering composition mismatch at level {level}: defect {defect}")]
    LoweringMismatch { level: usize, defect: String },
}
