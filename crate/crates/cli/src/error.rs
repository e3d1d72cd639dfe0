use lrc_forge::{CodeError, FieldError, LrcError, PolyError, RepairError};

/// Everything a subcommand can fail with, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lrc(#[from] LrcError),
    #[error(transparent)]
    Repair(#[from] RepairError),
    #[error("{0}")]
    BadInput(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Capability(String),
    #[error("{0}")]
    Internal(String),
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        CliError::Lrc(LrcError::Code(e))
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        CliError::Lrc(LrcError::Poly(e))
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Lrc(LrcError::Field(e))
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

fn field_code(e: &FieldError) -> i32 {
    match e {
        FieldError::SizeOverflow { .. } => EXIT_BUDGET,
        FieldError::NonPrimeCharacteristic(_)
        | FieldError::ZeroDegree
        | FieldError::NotCoprime { .. }
        | FieldError::InvalidElement { .. }
        | FieldError::Malformed(_) => EXIT_INPUT,
        _ => EXIT_INTERNAL,
    }
}

fn poly_code(e: &PolyError) -> i32 {
    match e {
        PolyError::NonMonicGenerator | PolyError::CoefficientNotInBaseField { .. } => EXIT_INPUT,
        PolyError::Field(f) => field_code(f),
        _ => EXIT_INTERNAL,
    }
}

fn code_code(e: &CodeError) -> i32 {
    match e {
        CodeError::InfeasibleBudget { .. } | CodeError::EnumerationTooLarge { .. } => EXIT_BUDGET,
        CodeError::NotADivisor { .. }
        | CodeError::NotCoprime { .. }
        | CodeError::LengthMismatch { .. }
        | CodeError::RepeatedRoot
        | CodeError::TrivialCode => EXIT_INPUT,
        CodeError::Field(f) => field_code(f),
        CodeError::Poly(p) => poly_code(p),
        CodeError::OracleDisagreement { .. } => EXIT_INTERNAL,
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lrc(e) => match e {
                LrcError::PreconditionFailed(_) | LrcError::InvalidParams(_) => EXIT_INPUT,
                LrcError::RootCollision { .. } => EXIT_INTERNAL,
                LrcError::Code(c) => code_code(c),
                LrcError::Field(f) => field_code(f),
                LrcError::Poly(p) => poly_code(p),
            },
            CliError::Repair(e) => match e {
                RepairError::InvalidParams(_)
                | RepairError::IndexOutOfRange { .. }
                | RepairError::LengthMismatch { .. }
                | RepairError::EmptyLocalDual { .. } => EXIT_INPUT,
                RepairError::AmbiguousErasure { .. }
                | RepairError::LocalRepairInfeasible { .. } => EXIT_BUDGET,
                RepairError::Inconsistent => EXIT_INTERNAL,
            },
            CliError::BadInput(_) | CliError::Mismatch(_) => EXIT_INPUT,
            CliError::Capability(_) => EXIT_BUDGET,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping() {
        let budget = CliError::from(CodeError::InfeasibleBudget {
            weight: 5,
            subsets: 10,
            cap: 1,
        });
        assert_eq!(budget.exit_code(), EXIT_BUDGET);
        let pre = CliError::Lrc(LrcError::PreconditionFailed("δ = 3".into()));
        assert_eq!(pre.exit_code(), EXIT_INPUT);
        assert!(pre.to_string().contains("δ = 3"));
        assert_eq!(
            CliError::from(CodeError::NotADivisor { n: 5 }).exit_code(),
            EXIT_INPUT
        );
        assert_eq!(
            CliError::from(FieldError::SizeOverflow { p: 2, m: 40 }).exit_code(),
            EXIT_BUDGET
        );
        assert_eq!(
            CliError::Repair(RepairError::Inconsistent).exit_code(),
            EXIT_INTERNAL
        );
        assert_eq!(
            CliError::Repair(RepairError::AmbiguousErasure { erased: 9 }).exit_code(),
            EXIT_BUDGET
        );
        assert_eq!(
            CliError::Lrc(LrcError::RootCollision { exponent: 0 }).exit_code(),
            EXIT_INTERNAL
        );
    }
}
