use serde::Serialize;

use crate::ratfun::RatFun;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    #[serde(rename = "exact-zero")]
    ExactZero,
    #[serde(rename = "defect")]
    Defect,
}

/// One line of a verification report; `defect` is the canonical string of
/// the nonzero difference when a check fails.
#[derive(Serialize, Clone, Debug)]
pub struct CheckRecord {
    pub level: usize,
    pub check: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
}

impl CheckRecord {
    pub fn from_defect(level: usize, check: impl Into<String>, defect: &RatFun) -> Self {
        if defect.is_zero() {
            CheckRecord {
                level,
                check: check.into(),
                status: CheckStatus::ExactZero,
                defect: None,
            }
        } else {
            CheckRecord {
                level,
                check: check.into(),
                status: CheckStatus::Defect,
                defect: Some(defect.to_string()),
            }
        }
    }

    pub fn exact(level: usize, check: impl Into<String>) -> Self {
        CheckRecord {
            level,
            check: check.into(),
            status: CheckStatus::ExactZero,
            defect: None,
        }
    }

    pub fn failed(level: usize, check: impl Into<String>, defect: impl Into<String>) -> Self {
        CheckRecord {
            level,
            check: check.into(),
            status: CheckStatus::Defect,
            defect: Some(defect.into()),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::ExactZero
    }
}

pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.passed())
}
