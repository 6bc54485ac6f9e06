use foliation_core::dynamics::DynError;
use foliation_core::groupcoh::GroupCohError;
use foliation_core::liealg::LieError;
use foliation_core::qform::QFormError;
use foliation_core::suspension::SuspensionError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("did not converge: {0}")]
    NonConvergence(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::NonConvergence(_) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        match e {
            LieError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<DynError> for CliError {
    fn from(e: DynError) -> Self {
        match e {
            DynError::BudgetExceeded { .. } | DynError::HarmonicBudget { .. } => CliError::Budget(e.to_string()),
            DynError::NotConverged { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<GroupCohError> for CliError {
    fn from(e: GroupCohError) -> Self {
        match e {
            GroupCohError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            GroupCohError::Dynamics(inner) => inner.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<QFormError> for CliError {
    fn from(e: QFormError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SuspensionError> for CliError {
    fn from(e: SuspensionError) -> Self {
        CliError::Validation(e.to_string())
    }
}
