use bousslab_core::params::ParamsError;
use bousslab_core::solver::SolverError;
use bousslab_core::symbol::SymbolError;
use bousslab_core::GridError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Symbol(#[from] SymbolError),
    #[error("boundary contamination: {0}")]
    Contamination(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for bad input, 3 for failures during a run.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Params(_) | CliError::Grid(_) => 2,
            CliError::Solver(SolverError::InvalidConfig(_)) => 2,
            _ => 3,
        }
    }
}
