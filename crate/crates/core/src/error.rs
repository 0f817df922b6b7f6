use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate geometry: AP at z={ap_z} is not above UE at z={ue_z}")]
    DegenerateGeometry { ap_z: f64, ue_z: f64 },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("unknown AP id {0}")]
    UnknownAp(usize),

    #[error("a cell must hold at least one UE")]
    EmptyCell,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("joint action space of {size} exceeds the cap of {cap}")]
    ActionSpaceTooLarge { size: u128, cap: u64 },

    #[error("action set is empty")]
    EmptyActionSet,

    #[error("config error: {0}")]
    Config(String),

    #[error("non-finite {what} at slot {slot}")]
    NonFinite { what: &'static str, slot: usize },

    #[error("malformed Q-table at line {line}: {reason}")]
    QTableFormat { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonFinite { .. } => 3,
            Error::Io(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
